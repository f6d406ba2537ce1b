//! Tick-based simulation of eVTOL fleets flying pre-planned 4D trajectories
//! over a flat urban grid.
//!
//! The crate is split along the simulation pipeline:
//!
//! * [`vehicle`] and [`bounds`] hold the domain types and unit conventions.
//! * [`separation`] is the safety kernel: distances, the conflict predicate
//!   and region queries.
//! * [`kinematics`] advances one vehicle by one tick (turn, climb, translate,
//!   take-off / cruise / spiral-landing phases).
//! * [`engine`] owns the fleet and the clock, runs conflict detection every
//!   tick and produces a [`SimulationReport`].
//! * [`scenario`], [`movement_log`] and [`report`] are the file formats.
//!
//! Units everywhere: NM for x/y, ft for altitude, kts for speed, degrees for
//! heading (0° = +x axis, counter-clockwise positive), one tick = one second.

pub mod bounds;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod kinematics;
pub mod movement_log;
pub mod report;
pub mod scenario;
pub mod separation;
pub mod vehicle;

pub use bounds::WorldBounds;
pub use engine::{
    Airspace, ConflictPair, HaltReason, LoggedPhase, MovementRecord, SimulationReport, StepOutcome,
};
pub use error::{Error, Result};
pub use kinematics::{FlightPhase, KinematicLimits};
pub use vehicle::{Vehicle, VehicleId, VehicleType, Waypoint};
