//! Vehicle state and trajectory elements.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::WorldBounds;
use crate::kinematics::{self, FlightPhase};
use crate::separation;

/// Default commanded cruise speed, kts.
pub const DEFAULT_SPEED_KTS: f64 = 150.0;
/// Speed envelope for en-route operations, kts.
pub const MIN_SPEED_KTS: f64 = 130.0;
pub const MAX_SPEED_KTS: f64 = 170.0;
/// Vertical separation shared by every vehicle type, ft.
pub const VERTICAL_SEPARATION_FT: f64 = 200.0;
pub const DEFAULT_VERTICAL_RATE_FPM: f64 = 500.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VehicleId(pub u32);

impl fmt::Display for VehicleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for VehicleId {
    fn from(id: u32) -> Self {
        VehicleId(id)
    }
}

/// Piloting classification. Drives the horizontal separation requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VehicleType {
    #[serde(rename = "piloted")]
    Piloted,
    #[serde(rename = "rpas")]
    RemotelyPiloted,
    #[serde(rename = "uas")]
    SelfPiloted,
}

impl VehicleType {
    pub const ALL: [VehicleType; 3] = [
        VehicleType::Piloted,
        VehicleType::RemotelyPiloted,
        VehicleType::SelfPiloted,
    ];

    /// Minimum horizontal separation, NM.
    pub fn horizontal_separation(self) -> f64 {
        match self {
            VehicleType::Piloted => 0.25,
            VehicleType::RemotelyPiloted | VehicleType::SelfPiloted => 0.5,
        }
    }

    /// Interchange name used in scenario files and movement logs.
    pub fn as_str(self) -> &'static str {
        match self {
            VehicleType::Piloted => "piloted",
            VehicleType::RemotelyPiloted => "rpas",
            VehicleType::SelfPiloted => "uas",
        }
    }
}

impl fmt::Display for VehicleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VehicleType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "piloted" => Ok(VehicleType::Piloted),
            "rpas" => Ok(VehicleType::RemotelyPiloted),
            "uas" => Ok(VehicleType::SelfPiloted),
            other => Err(format!(
                "unknown vehicle type `{other}`, expected one of piloted, rpas, uas"
            )),
        }
    }
}

/// One 4D trajectory element: position (NM, NM, ft) and the speed (kts) the
/// vehicle should hold when intercepting it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub s: f64,
}

impl Waypoint {
    pub fn new(x: f64, y: f64, z: f64, s: f64) -> Self {
        Waypoint { x, y, z, s }
    }

    /// Waypoint at the default cruise speed.
    pub fn at(x: f64, y: f64, z: f64) -> Self {
        Waypoint::new(x, y, z, DEFAULT_SPEED_KTS)
    }

    pub fn xy(&self) -> (f64, f64) {
        (self.x, self.y)
    }
}

/// Full kinematic and separation state of one eVTOL.
#[derive(Debug, Clone, PartialEq)]
pub struct Vehicle {
    pub id: VehicleId,
    pub kind: VehicleType,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Origin skyport; the vehicle sits here until it enters.
    pub origin_x: f64,
    pub origin_y: f64,
    pub target_x: f64,
    pub target_y: f64,
    pub target_z: f64,
    pub hdg: f64,
    pub speed: f64,
    /// ft/min
    pub rate_of_climb: f64,
    /// ft/min
    pub rate_of_descent: f64,
    /// Tick at which the vehicle enters the simulation.
    pub timestamp: u64,
    pub objective_list: VecDeque<Waypoint>,
    pub conflict_list: BTreeSet<VehicleId>,
    pub phase: FlightPhase,
    /// Overrides the heading-derived take-off fix altitude.
    pub takeoff_level: Option<f64>,
}

impl Vehicle {
    /// A vehicle parked at the `origin` skyport, bound for `destination`,
    /// pointed along the direct heading.
    pub fn new(
        id: impl Into<VehicleId>,
        kind: VehicleType,
        origin: (f64, f64),
        destination: (f64, f64),
    ) -> Self {
        let skyport = WorldBounds::default().skyport_altitude;
        let hdg = kinematics::calc_angle_to_position(origin, destination).unwrap_or(0.0);
        Vehicle {
            id: id.into(),
            kind,
            x: origin.0,
            y: origin.1,
            z: skyport,
            origin_x: origin.0,
            origin_y: origin.1,
            target_x: destination.0,
            target_y: destination.1,
            target_z: skyport,
            hdg,
            speed: DEFAULT_SPEED_KTS,
            rate_of_climb: DEFAULT_VERTICAL_RATE_FPM,
            rate_of_descent: DEFAULT_VERTICAL_RATE_FPM,
            timestamp: 0,
            objective_list: VecDeque::new(),
            conflict_list: BTreeSet::new(),
            phase: FlightPhase::Scheduled,
            takeoff_level: None,
        }
    }

    pub fn with_timestamp(mut self, tick: u64) -> Self {
        self.timestamp = tick;
        self
    }

    pub fn with_heading(mut self, hdg: f64) -> Self {
        self.hdg = hdg;
        self
    }

    pub fn with_trajectory(mut self, waypoints: impl IntoIterator<Item = Waypoint>) -> Self {
        self.objective_list = waypoints.into_iter().collect();
        self
    }

    /// Appends one position to the trajectory.
    pub fn add_obj_point(&mut self, wp: Waypoint) {
        self.objective_list.push_back(wp);
    }

    pub fn hsep(&self) -> f64 {
        self.kind.horizontal_separation()
    }

    pub fn vsep(&self) -> f64 {
        VERTICAL_SEPARATION_FT
    }

    pub fn position(&self) -> (f64, f64) {
        (self.x, self.y)
    }

    pub fn origin(&self) -> (f64, f64) {
        (self.origin_x, self.origin_y)
    }

    pub fn destination(&self) -> (f64, f64) {
        (self.target_x, self.target_y)
    }

    pub fn delivered(&self) -> bool {
        self.phase == FlightPhase::Delivered
    }

    /// Entered and not yet delivered. Only active vehicles take part in
    /// conflict and region queries.
    pub fn is_active(&self) -> bool {
        self.phase.is_airborne()
    }

    /// Ensures the trajectory ends with the landing fix over the destination.
    ///
    /// An empty trajectory becomes a direct flight at the lowest level the
    /// direct heading permits. Otherwise the fix is appended at the last
    /// waypoint's altitude and speed when the trajectory does not already end
    /// over the destination.
    pub fn complete_trajectory(&mut self, bounds: &WorldBounds) {
        let dest = self.destination();
        match self.objective_list.back().copied() {
            None => {
                let hdg =
                    kinematics::calc_angle_to_position(self.origin(), dest).unwrap_or(self.hdg);
                let level = bounds.lowest_level_for_heading(hdg);
                self.objective_list
                    .push_back(Waypoint::at(dest.0, dest.1, level));
            }
            Some(last) => {
                if separation::euclidean_distance(last.xy(), dest) > 0.0 {
                    self.objective_list
                        .push_back(Waypoint::new(dest.0, dest.1, last.z, last.s));
                }
            }
        }
    }

    /// Altitude of the take-off fix above the origin skyport.
    pub fn takeoff_fix_altitude(&self, bounds: &WorldBounds) -> f64 {
        if let Some(level) = self.takeoff_level {
            return level;
        }
        bounds.lowest_level_for_heading(self.first_leg_heading())
    }

    /// Heading from the origin to the first horizontally distinct waypoint.
    pub fn first_leg_heading(&self) -> f64 {
        let origin = self.origin();
        self.objective_list
            .iter()
            .find_map(|wp| kinematics::calc_angle_to_position(origin, wp.xy()).ok())
            .unwrap_or(self.hdg)
    }
}
