//! One-tick motion integration for a single vehicle.
//!
//! A tick is one second. Within a tick the vehicle turns toward its next
//! waypoint (at most `max_turn_rate` degrees), moves its speed toward the
//! waypoint's commanded speed, moves its altitude toward the waypoint's
//! altitude at the vertical rate limit, then translates along the new heading
//! by `speed * kt_to_nm_per_s` NM.
//!
//! The flight itself is a small phase machine:
//!
//! ```text
//! Scheduled -> TakeoffClimb -> Cruise -> LandingSpiral -> Delivered
//! ```
//!
//! The take-off climb is purely vertical over the origin skyport up to the
//! lowest flight level allowed for the first leg. Cruise follows the
//! trajectory; its last waypoint is the landing fix above the destination.
//! The spiral circles the destination at the minimum turn radius while
//! descending to the skyport.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::WorldBounds;
use crate::error::{Error, Result};
use crate::separation::euclidean_distance;
use crate::vehicle::{Vehicle, Waypoint, MAX_SPEED_KTS, MIN_SPEED_KTS};

/// NM flown per second at 1 kt, fixed at the rounded value so that
/// 150 kts gives exactly 0.0417 NM per tick.
pub const KT_TO_NM_PER_S: f64 = 0.000278;

/// Slack for float comparisons against per-tick step sizes.
const STEP_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlightPhase {
    Scheduled,
    TakeoffClimb,
    Cruise,
    LandingSpiral,
    Delivered,
}

impl FlightPhase {
    pub fn is_airborne(self) -> bool {
        matches!(
            self,
            FlightPhase::TakeoffClimb | FlightPhase::Cruise | FlightPhase::LandingSpiral
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FlightPhase::Scheduled => "scheduled",
            FlightPhase::TakeoffClimb => "takeoff_climb",
            FlightPhase::Cruise => "cruise",
            FlightPhase::LandingSpiral => "landing_spiral",
            FlightPhase::Delivered => "delivered",
        }
    }
}

impl fmt::Display for FlightPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FlightPhase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "scheduled" => FlightPhase::Scheduled,
            "takeoff_climb" => FlightPhase::TakeoffClimb,
            "cruise" => FlightPhase::Cruise,
            "landing_spiral" => FlightPhase::LandingSpiral,
            "delivered" => FlightPhase::Delivered,
            other => return Err(format!("unknown flight phase `{other}`")),
        })
    }
}

/// Performance envelope shared by the fleet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicLimits {
    /// deg/s
    pub max_turn_rate: f64,
    /// ft/min
    pub max_climb: f64,
    /// ft/min
    pub max_descent: f64,
    /// kt/s
    pub accel: f64,
    /// kt/s
    pub decel: f64,
    pub kt_to_nm_per_s: f64,
    /// Landing spiral radius, NM. `None` uses the minimum turn radius at the
    /// vehicle's current speed.
    pub spiral_radius: Option<f64>,
}

impl Default for KinematicLimits {
    fn default() -> Self {
        KinematicLimits {
            max_turn_rate: 7.2,
            max_climb: 500.0,
            max_descent: 500.0,
            accel: 1.0,
            decel: 2.0,
            kt_to_nm_per_s: KT_TO_NM_PER_S,
            spiral_radius: None,
        }
    }
}

impl KinematicLimits {
    pub fn is_valid(&self) -> bool {
        [
            self.max_turn_rate,
            self.max_climb,
            self.max_descent,
            self.accel,
            self.decel,
            self.kt_to_nm_per_s,
        ]
        .iter()
        .all(|v| v.is_finite() && *v > 0.0)
            && self.spiral_radius.is_none_or(|r| r.is_finite() && r > 0.0)
    }

    /// ft per tick
    pub fn climb_per_tick(&self) -> f64 {
        self.max_climb / 60.0
    }

    /// ft per tick
    pub fn descent_per_tick(&self) -> f64 {
        self.max_descent / 60.0
    }

    pub fn nm_per_tick(&self, speed: f64) -> f64 {
        speed * self.kt_to_nm_per_s
    }

    /// Radius of a turn flown at `speed` with the turn rate saturated.
    pub fn min_turn_radius(&self, speed: f64) -> f64 {
        self.nm_per_tick(speed) / self.max_turn_rate.to_radians()
    }

    pub fn spiral_radius_at(&self, speed: f64) -> f64 {
        self.spiral_radius
            .unwrap_or_else(|| self.min_turn_radius(speed))
    }

    /// Limits narrowed to a vehicle's own vertical rates.
    pub fn for_vehicle(&self, v: &Vehicle) -> KinematicLimits {
        KinematicLimits {
            max_climb: self.max_climb.min(v.rate_of_climb),
            max_descent: self.max_descent.min(v.rate_of_descent),
            ..*self
        }
    }
}

/// NM flown in one tick at `speed` kts.
pub fn distance_per_tick(speed: f64) -> Result<f64> {
    if !(MIN_SPEED_KTS..=MAX_SPEED_KTS).contains(&speed) {
        return Err(Error::SpeedOutOfEnvelope(speed));
    }
    Ok(speed * KT_TO_NM_PER_S)
}

pub fn normalize_heading(hdg: f64) -> f64 {
    let h = hdg.rem_euclid(360.0);
    // rem_euclid of a tiny negative value rounds up to exactly 360
    if h >= 360.0 {
        0.0
    } else {
        h
    }
}

/// Signed shortest-arc difference `desired - current`, in (-180, 180].
pub fn heading_difference(current: f64, desired: f64) -> f64 {
    let d = (desired - current).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

pub fn apply_movement_based_on_heading(v: &mut Vehicle, distance: f64) {
    let rad = v.hdg.to_radians();
    v.x += rad.cos() * distance;
    v.y += rad.sin() * distance;
}

/// Heading from `from` to `to`, in [0, 360).
pub fn calc_angle_to_position(from: (f64, f64), to: (f64, f64)) -> Result<f64> {
    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
    if dx == 0.0 && dy == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(normalize_heading(dy.atan2(dx).to_degrees()))
}

/// Turns `current` toward `desired` along the shorter arc by at most
/// `max_turn` degrees, snapping when the remaining arc fits in one tick.
pub fn adjust_heading(current: f64, desired: f64, max_turn: f64) -> f64 {
    let diff = heading_difference(current, desired);
    if diff.abs() <= max_turn {
        normalize_heading(desired)
    } else {
        normalize_heading(current + max_turn.copysign(diff))
    }
}

pub fn adjust_speed(current: f64, commanded: f64, limits: &KinematicLimits) -> f64 {
    let diff = commanded - current;
    if diff > limits.accel {
        current + limits.accel
    } else if -diff > limits.decel {
        current - limits.decel
    } else {
        commanded
    }
}

pub fn adjust_altitude(current: f64, target: f64, limits: &KinematicLimits) -> f64 {
    let diff = target - current;
    let (up, down) = (limits.climb_per_tick(), limits.descent_per_tick());
    if diff > up + STEP_EPS {
        current + up
    } else if -diff > down + STEP_EPS {
        current - down
    } else {
        target
    }
}

/// Whether `wp` can be intercepted within this tick: horizontally within one
/// tick of travel and vertically within one tick of climb or descent.
pub fn waypoint_reached(v: &Vehicle, wp: &Waypoint, limits: &KinematicLimits) -> bool {
    let horizontal = euclidean_distance(v.position(), wp.xy());
    let vertical = (v.z - wp.z).abs();
    let vertical_step = limits.climb_per_tick().max(limits.descent_per_tick());
    horizontal <= limits.nm_per_tick(v.speed) + STEP_EPS * 1e-3
        && vertical <= vertical_step + STEP_EPS
}

/// One cruise tick toward the front of the trajectory. Returns `true` when
/// the waypoint was intercepted (and removed) this tick.
pub fn follow(v: &mut Vehicle, limits: &KinematicLimits) -> Result<bool> {
    let wp = *v
        .objective_list
        .front()
        .ok_or(Error::EmptyTrajectory(v.id))?;

    if let Ok(desired) = calc_angle_to_position(v.position(), wp.xy()) {
        v.hdg = adjust_heading(v.hdg, desired, limits.max_turn_rate);
    }
    v.speed = adjust_speed(v.speed, wp.s, limits);

    if waypoint_reached(v, &wp, limits) {
        v.x = wp.x;
        v.y = wp.y;
        v.z = wp.z;
        v.objective_list.pop_front();
        return Ok(true);
    }

    v.z = adjust_altitude(v.z, wp.z, limits);
    let d = limits.nm_per_tick(v.speed);
    apply_movement_based_on_heading(v, d);
    Ok(false)
}

/// Advances an entered vehicle by one tick according to its phase.
/// Scheduled and delivered vehicles do not move.
pub fn step_phase(v: &mut Vehicle, world: &WorldBounds, limits: &KinematicLimits) {
    let limits = limits.for_vehicle(v);
    match v.phase {
        FlightPhase::Scheduled | FlightPhase::Delivered => {}
        FlightPhase::TakeoffClimb => {
            let fix = v.takeoff_fix_altitude(world);
            v.hdg = adjust_heading(v.hdg, v.first_leg_heading(), limits.max_turn_rate);
            v.z = adjust_altitude(v.z, fix, &limits);
            if v.z == fix {
                v.phase = FlightPhase::Cruise;
            }
        }
        FlightPhase::Cruise => {
            if v.objective_list.is_empty() {
                v.phase = FlightPhase::LandingSpiral;
                return;
            }
            // the trajectory is non-empty here, so follow cannot fail
            let reached = follow(v, &limits).unwrap_or(false);
            if reached && v.objective_list.is_empty() {
                v.phase = FlightPhase::LandingSpiral;
            }
        }
        FlightPhase::LandingSpiral => spiral_tick(v, &limits),
    }
}

fn spiral_tick(v: &mut Vehicle, limits: &KinematicLimits) {
    let d = limits.nm_per_tick(v.speed);
    let radius = limits.spiral_radius_at(v.speed);
    let turn = (d / radius).to_degrees().min(limits.max_turn_rate);
    v.hdg = normalize_heading(v.hdg + turn);

    // counter-clockwise around the destination: the radial is 90° behind the heading
    let radial = (v.hdg - 90.0).to_radians();
    v.x = v.target_x + radius * radial.cos();
    v.y = v.target_y + radius * radial.sin();
    v.z = adjust_altitude(v.z, v.target_z, limits);

    if v.z <= v.target_z {
        v.x = v.target_x;
        v.y = v.target_y;
        v.z = v.target_z;
        v.phase = FlightPhase::Delivered;
    }
}
