//! Test tooling for the simulator: seeded random fleets and a conflict
//! oracle that re-derives every conflict from the movement log alone.
//!
//! The `acceptance` test target in this crate is the release gate. It prints
//! one PASS/FAIL line per criterion and exits non-zero on any failure.

#[cfg(test)]
mod properties;

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use uamsim_core::{
    Airspace, FlightPhase, LoggedPhase, MovementRecord, Vehicle, VehicleType, Waypoint,
};

pub const LEVELS: [f64; 4] = [1000.0, 1200.0, 1400.0, 1600.0];

/// A random fleet of 2-10 vehicles packed into a small corner of the city
/// so that conflicts are common.
pub fn random_airspace(rng: &mut ChaCha8Rng, max_ticks: u64) -> Airspace {
    random_airspace_inset(rng, max_ticks, 0.0)
}

/// Same as [`random_airspace`] but every coordinate is at least `inset` NM
/// from the lower-left edges.
pub fn random_airspace_inset(rng: &mut ChaCha8Rng, max_ticks: u64, inset: f64) -> Airspace {
    let n = rng.gen_range(2..=10);
    let area: f64 = rng.gen_range(4.0..10.0);
    let mut airspace = Airspace::default().with_max_ticks(max_ticks);
    for id in 0..n {
        let kind = VehicleType::ALL[rng.gen_range(0..3)];
        let origin = (
            inset + rng.gen_range(0.0..area),
            inset + rng.gen_range(0.0..area),
        );
        let dest = loop {
            let d = (
                inset + rng.gen_range(0.0..area),
                inset + rng.gen_range(0.0..area),
            );
            if (d.0 - origin.0).hypot(d.1 - origin.1) > 1.0 {
                break d;
            }
        };
        let mut v = Vehicle::new(id + 1, kind, origin, dest).with_timestamp(rng.gen_range(0..120));
        for _ in 0..rng.gen_range(0..=2) {
            v.add_obj_point(Waypoint::new(
                inset + rng.gen_range(0.0..area),
                inset + rng.gen_range(0.0..area),
                LEVELS[rng.gen_range(0..4)],
                rng.gen_range(130.0..=170.0),
            ));
        }
        airspace.add_vehicle(v).expect("generated vehicle is valid");
    }
    airspace
}

/// Per-tick conflict pairs recomputed from the movement log alone.
///
/// Written independently of the library's separation module: horizontal
/// minima come from the type column, the vertical minimum is 200 ft, both
/// comparisons strict.
pub fn brute_force_conflicts(log: &[MovementRecord]) -> BTreeMap<u64, BTreeSet<(u32, u32)>> {
    let mut by_tick: BTreeMap<u64, Vec<&MovementRecord>> = BTreeMap::new();
    for r in log {
        let airborne = matches!(
            r.phase,
            LoggedPhase::Flight(FlightPhase::TakeoffClimb)
                | LoggedPhase::Flight(FlightPhase::Cruise)
                | LoggedPhase::Flight(FlightPhase::LandingSpiral)
        );
        if airborne {
            by_tick.entry(r.tick).or_default().push(r);
        }
    }
    let hsep = |k: VehicleType| -> f64 {
        match k {
            VehicleType::Piloted => 0.25,
            _ => 0.5,
        }
    };
    let mut out = BTreeMap::new();
    for (tick, recs) in by_tick {
        let mut pairs = BTreeSet::new();
        for i in 0..recs.len() {
            for j in 0..recs.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (recs[i], recs[j]);
                let dx = a.x - b.x;
                let dy = a.y - b.y;
                let horizontal = (dx * dx + dy * dy).sqrt();
                let min_h = hsep(a.kind).max(hsep(b.kind));
                if horizontal < min_h && (a.z - b.z).abs() < 200.0 {
                    pairs.insert((a.id.0.min(b.id.0), a.id.0.max(b.id.0)));
                }
            }
        }
        if !pairs.is_empty() {
            out.insert(tick, pairs);
        }
    }
    out
}

/// Steps without halting on conflicts until every vehicle is delivered or
/// the cap runs out, returning the engine's per-tick conflict sets.
pub fn run_unhalted(airspace: &mut Airspace) -> BTreeMap<u64, BTreeSet<(u32, u32)>> {
    let mut out = BTreeMap::new();
    while !airspace.all_delivered() && airspace.tick() < airspace.max_ticks() {
        let step = airspace.step().expect("not halted");
        if !step.conflicts.is_empty() {
            out.insert(
                step.tick,
                step.conflicts.iter().map(|(a, b)| (a.0, b.0)).collect(),
            );
        }
    }
    out
}
