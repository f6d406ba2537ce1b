//! Separation geometry and the conflict predicate.
//!
//! A pair is in conflict when it is simultaneously closer than the larger of
//! the two horizontal separations and closer than the larger of the two
//! vertical separations. Both inequalities are strict, so a pair sitting
//! exactly at a separation minimum is legal.

use std::collections::BTreeSet;

use crate::bounds::FLIGHT_LEVELS_FT;
use crate::error::{Error, Result};
use crate::vehicle::{Vehicle, VehicleId};

/// Anything with a position and separation requirements.
pub trait Separated {
    fn id(&self) -> VehicleId;
    fn position(&self) -> (f64, f64);
    fn altitude(&self) -> f64;
    fn hsep(&self) -> f64;
    fn vsep(&self) -> f64;
}

impl Separated for Vehicle {
    fn id(&self) -> VehicleId {
        self.id
    }
    fn position(&self) -> (f64, f64) {
        (self.x, self.y)
    }
    fn altitude(&self) -> f64 {
        self.z
    }
    fn hsep(&self) -> f64 {
        Vehicle::hsep(self)
    }
    fn vsep(&self) -> f64 {
        Vehicle::vsep(self)
    }
}

impl<T: Separated> Separated for &T {
    fn id(&self) -> VehicleId {
        (**self).id()
    }
    fn position(&self) -> (f64, f64) {
        (**self).position()
    }
    fn altitude(&self) -> f64 {
        (**self).altitude()
    }
    fn hsep(&self) -> f64 {
        (**self).hsep()
    }
    fn vsep(&self) -> f64 {
        (**self).vsep()
    }
}

pub fn euclidean_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Horizontal distance minus the more restrictive horizontal separation.
/// Negative when the pair is inside the joint separation disc.
pub fn separation_adjusted_distance<A: Separated, B: Separated>(a: &A, b: &B) -> Result<f64> {
    if a.id() == b.id() {
        return Err(Error::SelfComparison(a.id()));
    }
    Ok(euclidean_distance(a.position(), b.position()) - a.hsep().max(b.hsep()))
}

/// The conflict predicate. A vehicle never conflicts with itself.
pub fn in_conflict<A: Separated, B: Separated>(a: &A, b: &B) -> bool {
    if a.id() == b.id() {
        return false;
    }
    let vertical = (a.altitude() - b.altitude()).abs();
    if vertical >= a.vsep().max(b.vsep()) {
        return false;
    }
    euclidean_distance(a.position(), b.position()) < a.hsep().max(b.hsep())
}

/// Ids of every other active vehicle in conflict with `subject`.
pub fn check_conflicts_for<'a>(
    subject: &Vehicle,
    all: impl IntoIterator<Item = &'a Vehicle>,
) -> BTreeSet<VehicleId> {
    all.into_iter()
        .filter(|v| v.id != subject.id && v.is_active())
        .filter(|v| in_conflict(subject, *v))
        .map(|v| v.id)
        .collect()
}

/// Horizontal distance to the nearest other active vehicle.
pub fn closest_aircraft_distance<'a>(
    subject: &Vehicle,
    all: impl IntoIterator<Item = &'a Vehicle>,
) -> Option<f64> {
    all.into_iter()
        .filter(|v| v.id != subject.id && v.is_active())
        .map(|v| euclidean_distance(subject.position(), v.position()))
        .min_by(f64::total_cmp)
}

/// Active vehicles within `radius` NM (inclusive) of `center`.
pub fn vehicles_in_region<'a>(
    all: impl IntoIterator<Item = &'a Vehicle>,
    center: (f64, f64),
    radius: f64,
) -> Result<Vec<&'a Vehicle>> {
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::NegativeRadius(radius));
    }
    Ok(all
        .into_iter()
        .filter(|v| v.is_active() && euclidean_distance(v.position(), center) <= radius)
        .collect())
}

/// Flight levels permitted for a heading: 1000/1400 ft below 180°, 1200/1600
/// ft from 180° up.
pub fn flight_levels_for_heading(hdg: f64) -> Result<[f64; 2]> {
    if !(0.0..360.0).contains(&hdg) {
        return Err(Error::HeadingOutOfRange(hdg));
    }
    let [l1, l2, l3, l4] = FLIGHT_LEVELS_FT;
    Ok(if hdg < 180.0 { [l1, l3] } else { [l2, l4] })
}

/// All-pairs conflict scan over a set of states, pairs reported as
/// `(lower id, higher id)` in ascending order.
pub fn conflicting_pairs<T: Separated>(states: &[T]) -> Vec<(VehicleId, VehicleId)> {
    let mut pairs = Vec::new();
    for (i, a) in states.iter().enumerate() {
        for b in &states[i + 1..] {
            if in_conflict(a, b) {
                let (lo, hi) = if a.id() < b.id() {
                    (a.id(), b.id())
                } else {
                    (b.id(), a.id())
                };
                pairs.push((lo, hi));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}
