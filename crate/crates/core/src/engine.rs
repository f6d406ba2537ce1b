//! The airspace manager: fleet, clock, conflict detection and movement log.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::WorldBounds;
use crate::error::{Error, Result};
use crate::kinematics::{self, FlightPhase, KinematicLimits};
use crate::separation::{self, Separated};
use crate::vehicle::{Vehicle, VehicleId, VehicleType, Waypoint, MAX_SPEED_KTS, MIN_SPEED_KTS};

/// Ten simulated hours.
pub const DEFAULT_MAX_TICKS: u64 = 36_000;

/// Phase column of a movement record. Externally logged vehicles are not
/// part of the fleet and are tagged separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoggedPhase {
    Flight(FlightPhase),
    External,
}

impl LoggedPhase {
    pub fn as_str(self) -> &'static str {
        match self {
            LoggedPhase::Flight(p) => p.as_str(),
            LoggedPhase::External => "external",
        }
    }
}

impl fmt::Display for LoggedPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LoggedPhase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "external" {
            Ok(LoggedPhase::External)
        } else {
            s.parse().map(LoggedPhase::Flight)
        }
    }
}

/// State of one vehicle at the end of one tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovementRecord {
    pub tick: u64,
    pub id: VehicleId,
    pub kind: VehicleType,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub hdg: f64,
    pub speed: f64,
    pub phase: LoggedPhase,
    pub delivered: bool,
}

impl MovementRecord {
    fn of(v: &Vehicle, tick: u64, phase: LoggedPhase) -> Self {
        MovementRecord {
            tick,
            id: v.id,
            kind: v.kind,
            x: v.x,
            y: v.y,
            z: v.z,
            hdg: v.hdg,
            speed: v.speed,
            phase,
            delivered: v.delivered(),
        }
    }

    /// Whether the record describes an airborne fleet vehicle, i.e. one that
    /// takes part in conflict detection at this tick.
    pub fn is_active_fleet_member(&self) -> bool {
        matches!(self.phase, LoggedPhase::Flight(p) if p.is_airborne())
    }
}

impl Separated for MovementRecord {
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
        self.kind.horizontal_separation()
    }
    fn vsep(&self) -> f64 {
        crate::vehicle::VERTICAL_SEPARATION_FT
    }
}

/// An unordered conflicting pair (`a < b`) and the tick it was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConflictPair {
    pub a: VehicleId,
    pub b: VehicleId,
    pub tick: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HaltReason {
    AllDelivered,
    Conflict,
    /// The tick cap ran out before every vehicle was delivered. Inconclusive.
    MaxTicks,
}

impl HaltReason {
    pub fn as_str(self) -> &'static str {
        match self {
            HaltReason::AllDelivered => "all_delivered",
            HaltReason::Conflict => "conflict",
            HaltReason::MaxTicks => "max_ticks",
        }
    }
}

impl fmt::Display for HaltReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of [`Airspace::simulate`].
///
/// An unsafe run keeps the halt tick in `total_ticks`; the delivery duration
/// of an unsafe trajectory set is unbounded and `safe == false` says so.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub safe: bool,
    pub halt_reason: HaltReason,
    pub total_ticks: u64,
    pub conflicts: Vec<ConflictPair>,
    pub delivery_ticks: BTreeMap<VehicleId, u64>,
    pub undelivered: BTreeSet<VehicleId>,
}

impl SimulationReport {
    pub fn conflicting_ids(&self) -> BTreeSet<VehicleId> {
        self.conflicts.iter().flat_map(|c| [c.a, c.b]).collect()
    }
}

/// What happened during one [`Airspace::step`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StepOutcome {
    /// Tick stamped on this step's records.
    pub tick: u64,
    pub activated: BTreeSet<VehicleId>,
    pub delivered: BTreeSet<VehicleId>,
    pub conflicts: Vec<(VehicleId, VehicleId)>,
}

#[derive(Debug, Clone)]
pub struct Airspace {
    vehicles: BTreeMap<VehicleId, Vehicle>,
    tick: u64,
    bounds: WorldBounds,
    limits: KinematicLimits,
    movement_log: Vec<MovementRecord>,
    max_ticks: u64,
    parallel: bool,
    conflicts: Vec<ConflictPair>,
    delivery_ticks: BTreeMap<VehicleId, u64>,
    halted: Option<HaltReason>,
}

impl Default for Airspace {
    fn default() -> Self {
        Airspace::new(WorldBounds::default())
    }
}

impl Airspace {
    pub fn new(bounds: WorldBounds) -> Self {
        Airspace {
            vehicles: BTreeMap::new(),
            tick: 0,
            bounds,
            limits: KinematicLimits::default(),
            movement_log: Vec::new(),
            max_ticks: DEFAULT_MAX_TICKS,
            parallel: false,
            conflicts: Vec::new(),
            delivery_ticks: BTreeMap::new(),
            halted: None,
        }
    }

    pub fn with_limits(mut self, limits: KinematicLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_max_ticks(mut self, max_ticks: u64) -> Self {
        self.max_ticks = max_ticks;
        self
    }

    /// Step vehicles on the rayon pool. Output is identical to sequential
    /// stepping.
    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn bounds(&self) -> &WorldBounds {
        &self.bounds
    }

    pub fn limits(&self) -> &KinematicLimits {
        &self.limits
    }

    pub fn max_ticks(&self) -> u64 {
        self.max_ticks
    }

    pub fn movement_log(&self) -> &[MovementRecord] {
        &self.movement_log
    }

    pub fn len(&self) -> usize {
        self.vehicles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vehicles.is_empty()
    }

    pub fn vehicle(&self, id: VehicleId) -> Option<&Vehicle> {
        self.vehicles.get(&id)
    }

    /// Vehicles in ascending id order.
    pub fn vehicles(&self) -> impl Iterator<Item = &Vehicle> {
        self.vehicles.values()
    }

    pub fn is_terminated(&self) -> bool {
        self.halted.is_some()
    }

    pub fn all_delivered(&self) -> bool {
        self.vehicles.values().all(Vehicle::delivered)
    }

    /// Registers a vehicle in the Scheduled phase at its origin skyport.
    /// A vehicle without a trajectory gets the direct-flight default; a
    /// trajectory that stops short of the destination gets the landing fix
    /// appended.
    pub fn add_vehicle(&mut self, mut v: Vehicle) -> Result<()> {
        if self.vehicles.contains_key(&v.id) {
            return Err(Error::DuplicateId(v.id));
        }
        self.check_endpoints(&v)?;
        self.check_waypoints(v.id, v.objective_list.iter())?;
        v.complete_trajectory(&self.bounds);
        v.x = v.origin_x;
        v.y = v.origin_y;
        v.z = self.bounds.skyport_altitude;
        v.target_z = self.bounds.skyport_altitude;
        v.phase = FlightPhase::Scheduled;
        v.conflict_list.clear();
        self.vehicles.insert(v.id, v);
        Ok(())
    }

    pub fn add_vehicles(&mut self, fleet: impl IntoIterator<Item = Vehicle>) -> Result<()> {
        fleet.into_iter().try_for_each(|v| self.add_vehicle(v))
    }

    /// Replaces a scheduled vehicle's whole trajectory.
    pub fn set_trajectory(
        &mut self,
        id: VehicleId,
        waypoints: impl IntoIterator<Item = Waypoint>,
    ) -> Result<()> {
        let waypoints: Vec<Waypoint> = waypoints.into_iter().collect();
        let v = self.vehicles.get(&id).ok_or(Error::UnknownId(id))?;
        if v.phase != FlightPhase::Scheduled {
            return Err(Error::AlreadyEntered(id));
        }
        if waypoints.is_empty() {
            return Err(Error::EmptyTrajectory(id));
        }
        self.check_waypoints(id, waypoints.iter())?;
        let bounds = self.bounds.clone();
        let v = self.vehicles.get_mut(&id).expect("checked above");
        v.objective_list = waypoints.into();
        v.complete_trajectory(&bounds);
        Ok(())
    }

    /// Pins every vehicle's cruise and take-off fix to a single flight level.
    pub fn force_shared_level(&mut self, level: f64) -> Result<()> {
        if !self.bounds.is_flight_level(level) {
            return Err(Error::NotAFlightLevel(level));
        }
        for v in self.vehicles.values_mut() {
            v.takeoff_level = Some(level);
            for wp in v.objective_list.iter_mut() {
                wp.z = level;
            }
        }
        Ok(())
    }

    fn check_endpoints(&self, v: &Vehicle) -> Result<()> {
        let b = &self.bounds;
        let coords = [
            ("origin x", v.origin_x, b.x_min, b.x_max),
            ("origin y", v.origin_y, b.y_min, b.y_max),
            ("destination x", v.target_x, b.x_min, b.x_max),
            ("destination y", v.target_y, b.y_min, b.y_max),
        ];
        for (what, value, lo, hi) in coords {
            if !(lo..=hi).contains(&value) {
                return Err(Error::OutOfBounds {
                    id: v.id,
                    what,
                    value,
                });
            }
        }
        Ok(())
    }

    fn check_waypoints<'a>(
        &self,
        id: VehicleId,
        waypoints: impl Iterator<Item = &'a Waypoint>,
    ) -> Result<()> {
        let b = &self.bounds;
        for wp in waypoints {
            if !(b.x_min..=b.x_max).contains(&wp.x) {
                return Err(Error::OutOfBounds {
                    id,
                    what: "waypoint x",
                    value: wp.x,
                });
            }
            if !(b.y_min..=b.y_max).contains(&wp.y) {
                return Err(Error::OutOfBounds {
                    id,
                    what: "waypoint y",
                    value: wp.y,
                });
            }
            if !(b.skyport_altitude..=b.highest_level()).contains(&wp.z) {
                return Err(Error::OutOfBounds {
                    id,
                    what: "waypoint z",
                    value: wp.z,
                });
            }
            if !(MIN_SPEED_KTS..=MAX_SPEED_KTS).contains(&wp.s) {
                return Err(Error::SpeedOutOfEnvelope(wp.s));
            }
        }
        Ok(())
    }

    /// Moves every scheduled vehicle whose timestamp has come into the
    /// take-off climb.
    pub fn check_schedule(&mut self) -> BTreeSet<VehicleId> {
        let tick = self.tick;
        self.vehicles
            .values_mut()
            .filter(|v| v.phase == FlightPhase::Scheduled && v.timestamp <= tick)
            .map(|v| {
                v.phase = FlightPhase::TakeoffClimb;
                v.id
            })
            .collect()
    }

    /// Advances the simulation by one tick.
    ///
    /// Activates due vehicles, moves every airborne vehicle, advances the
    /// clock, runs all-pairs conflict detection over the vehicles still
    /// airborne, then logs one record per vehicle that flew this tick.
    pub fn step(&mut self) -> Result<StepOutcome> {
        if self.halted.is_some() {
            return Err(Error::Terminated);
        }
        let activated = self.check_schedule();
        let flying: Vec<VehicleId> = self
            .vehicles
            .values()
            .filter(|v| v.is_active())
            .map(|v| v.id)
            .collect();

        let (bounds, limits) = (&self.bounds, &self.limits);
        let advance = |v: &mut Vehicle| {
            if v.is_active() {
                kinematics::step_phase(v, bounds, limits);
            }
        };
        if self.parallel {
            self.vehicles.par_iter_mut().for_each(|(_, v)| advance(v));
        } else {
            self.vehicles.values_mut().for_each(advance);
        }

        self.tick += 1;
        let tick = self.tick;

        let airborne: Vec<&Vehicle> = self.vehicles.values().filter(|v| v.is_active()).collect();
        let conflicts = separation::conflicting_pairs(&airborne);
        for &(a, b) in &conflicts {
            self.conflicts.push(ConflictPair { a, b, tick });
        }
        for &(a, b) in &conflicts {
            if let Some(v) = self.vehicles.get_mut(&a) {
                v.conflict_list.insert(b);
            }
            if let Some(v) = self.vehicles.get_mut(&b) {
                v.conflict_list.insert(a);
            }
        }

        let mut delivered = BTreeSet::new();
        for id in flying {
            let v = &self.vehicles[&id];
            if v.delivered() {
                delivered.insert(id);
                self.delivery_ticks.insert(id, tick);
            }
            self.movement_log
                .push(MovementRecord::of(v, tick, LoggedPhase::Flight(v.phase)));
        }

        Ok(StepOutcome {
            tick,
            activated,
            delivered,
            conflicts,
        })
    }

    /// Steps until every vehicle is delivered, a conflict is detected, or
    /// the tick cap is reached. A conflict halts the run at the end of the
    /// tick it was detected in, with every pair found in that tick reported.
    pub fn simulate(&mut self) -> Result<SimulationReport> {
        if self.vehicles.is_empty() {
            return Err(Error::EmptyFleet);
        }
        if self.halted.is_some() {
            return Err(Error::Terminated);
        }
        let reason = loop {
            if self.all_delivered() {
                break HaltReason::AllDelivered;
            }
            if self.tick >= self.max_ticks {
                break HaltReason::MaxTicks;
            }
            let outcome = self.step()?;
            if !outcome.conflicts.is_empty() {
                break HaltReason::Conflict;
            }
        };
        self.halted = Some(reason);
        Ok(self.report(reason))
    }

    fn report(&self, halt_reason: HaltReason) -> SimulationReport {
        SimulationReport {
            safe: self.conflicts.is_empty(),
            halt_reason,
            total_ticks: self.tick,
            conflicts: self.conflicts.clone(),
            delivery_ticks: self.delivery_ticks.clone(),
            undelivered: self
                .vehicles
                .values()
                .filter(|v| !v.delivered())
                .map(|v| v.id)
                .collect(),
        }
    }

    /// Appends a record for a vehicle outside the fleet (for instance a
    /// candidate trajectory being planned) at the current tick, without
    /// stepping it.
    pub fn log_external_vehicle(&mut self, v: &Vehicle) {
        self.movement_log
            .push(MovementRecord::of(v, self.tick, LoggedPhase::External));
    }

    /// Conflicts of one fleet vehicle against the rest, recorded into its
    /// conflict list.
    pub fn check_conflict(&mut self, id: VehicleId) -> Result<BTreeSet<VehicleId>> {
        let subject = self.vehicles.get(&id).ok_or(Error::UnknownId(id))?;
        let found = if subject.is_active() {
            separation::check_conflicts_for(subject, self.vehicles.values())
        } else {
            BTreeSet::new()
        };
        let v = self.vehicles.get_mut(&id).expect("checked above");
        v.conflict_list.extend(found.iter().copied());
        Ok(found)
    }

    pub fn closest_aircraft_distance(&self, id: VehicleId) -> Result<Option<f64>> {
        let subject = self.vehicles.get(&id).ok_or(Error::UnknownId(id))?;
        Ok(separation::closest_aircraft_distance(
            subject,
            self.vehicles.values(),
        ))
    }

    pub fn vehicles_in_region(&self, center: (f64, f64), radius: f64) -> Result<Vec<&Vehicle>> {
        separation::vehicles_in_region(self.vehicles.values(), center, radius)
    }

    /// Vehicle counts per phase.
    pub fn phase_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = BTreeMap::new();
        for v in self.vehicles.values() {
            *counts.entry(v.phase.as_str()).or_insert(0) += 1;
        }
        counts
    }
}
