use thiserror::Error;

use crate::vehicle::VehicleId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vehicle {0} cannot be compared against itself")]
    SelfComparison(VehicleId),
    #[error("search radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("heading {0} is outside [0, 360)")]
    HeadingOutOfRange(f64),
    #[error("speed {0} kts is outside the 130-170 kts envelope")]
    SpeedOutOfEnvelope(f64),
    #[error("heading between coincident points is undefined")]
    CoincidentPoints,
    #[error("vehicle {0} is already registered")]
    DuplicateId(VehicleId),
    #[error("no vehicle with id {0}")]
    UnknownId(VehicleId),
    #[error("vehicle {0} has already entered the simulation")]
    AlreadyEntered(VehicleId),
    #[error("empty trajectory for vehicle {0}")]
    EmptyTrajectory(VehicleId),
    #[error("vehicle {id}: {what} ({value}) is outside the world bounds")]
    OutOfBounds {
        id: VehicleId,
        what: &'static str,
        value: f64,
    },
    #[error("{0} ft is not a flight level")]
    NotAFlightLevel(f64),
    #[error("cannot simulate an empty fleet")]
    EmptyFleet,
    #[error("simulation has already terminated")]
    Terminated,
}
