//! Built-in demonstration fleets.

use crate::bounds::WorldBounds;
use crate::engine::Airspace;
use crate::vehicle::{Vehicle, VehicleType, Waypoint};

/// Five direct 10 NM flights on parallel tracks, 5 NM apart, over the
/// 30 NM × 30 NM city. Three eastbound, two westbound.
pub fn experiment_one() -> Airspace {
    use VehicleType::*;
    let fleet = [
        Vehicle::new(1, RemotelyPiloted, (10.0, 5.0), (20.0, 5.0)),
        Vehicle::new(2, SelfPiloted, (10.0, 15.0), (20.0, 15.0)),
        Vehicle::new(3, Piloted, (10.0, 25.0), (20.0, 25.0)),
        Vehicle::new(4, Piloted, (20.0, 10.0), (10.0, 10.0)),
        Vehicle::new(5, Piloted, (20.0, 20.0), (10.0, 20.0)),
    ];
    let mut airspace = Airspace::default();
    airspace.add_vehicles(fleet).expect("fleet is valid");
    airspace
}

fn crossing_pair() -> [Vehicle; 2] {
    [
        Vehicle::new(1, VehicleType::RemotelyPiloted, (4.0, 4.0), (2.0, 2.0)),
        Vehicle::new(2, VehicleType::SelfPiloted, (4.0, 2.0), (2.0, 4.0)),
    ]
}

/// Two direct flights over a 5 NM × 5 NM area whose tracks cross at (3, 3).
/// Each flies the level its own heading permits (1200 ft and 1000 ft).
pub fn experiment_two_direct() -> Airspace {
    let mut airspace = Airspace::new(WorldBounds::square(5.0));
    airspace
        .add_vehicles(crossing_pair())
        .expect("fleet is valid");
    airspace
}

/// The crossing pair pinned to one shared level, which puts both vehicles
/// over (3, 3) at the same altitude at the same time.
pub fn experiment_two_shared_level(level: f64) -> Airspace {
    let mut airspace = experiment_two_direct();
    airspace
        .force_shared_level(level)
        .expect("level comes from the flight level table");
    airspace
}

/// The crossing pair with vehicle 1 routed through (4, 2) at 1200 ft.
pub fn experiment_two_detour() -> Airspace {
    let [mut first, second] = crossing_pair();
    first.add_obj_point(Waypoint::at(4.0, 2.0, 1200.0));
    let mut airspace = Airspace::new(WorldBounds::square(5.0));
    airspace
        .add_vehicles([first, second])
        .expect("fleet is valid");
    airspace
}
