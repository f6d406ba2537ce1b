use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uamsim_core::kinematics::KT_TO_NM_PER_S;
use uamsim_core::vehicle::MAX_SPEED_KTS;
use uamsim_core::{
    Airspace, FlightPhase, KinematicLimits, LoggedPhase, Vehicle, VehicleId, VehicleType,
    WorldBounds,
};

fn airspace(seed: u64) -> Airspace {
    crate::random_airspace(&mut ChaCha8Rng::seed_from_u64(seed), 3_000)
}

fn max_turn_radius() -> f64 {
    KinematicLimits::default().min_turn_radius(MAX_SPEED_KTS)
}

fn ticks_for(feet: f64) -> u64 {
    (feet / (500.0 / 60.0)).ceil() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fleet_is_conserved(seed in any::<u64>()) {
        let mut a = airspace(seed);
        let n = a.len();
        while !a.all_delivered() && a.tick() < a.max_ticks() {
            a.step().unwrap();
            prop_assert_eq!(a.phase_counts().values().sum::<usize>(), n);
        }
    }

    #[test]
    fn log_ticks_are_monotonic_and_contiguous(seed in any::<u64>()) {
        let mut a = airspace(seed);
        crate::run_unhalted(&mut a);
        let log = a.movement_log();
        prop_assert!(log.windows(2).all(|w| w[0].tick <= w[1].tick));

        let mut per_vehicle: BTreeMap<VehicleId, Vec<u64>> = BTreeMap::new();
        for r in log {
            per_vehicle.entry(r.id).or_default().push(r.tick);
        }
        for v in a.vehicles() {
            let ticks = &per_vehicle[&v.id];
            let first = v.timestamp + 1;
            let expected: Vec<u64> = (first..first + ticks.len() as u64).collect();
            prop_assert_eq!(ticks, &expected, "vehicle {}", v.id);
            let last = log.iter().rfind(|r| r.id == v.id).unwrap();
            if last.delivered {
                prop_assert_eq!(last.phase, LoggedPhase::Flight(FlightPhase::Delivered));
            } else {
                // an unreachable waypoint keeps the vehicle flying until the cap
                prop_assert_eq!(last.tick, a.max_ticks());
            }
        }
    }

    #[test]
    fn cruise_stays_in_bounds_with_edge_clearance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = crate::random_airspace_inset(&mut rng, 3_000, 2.0 * max_turn_radius());
        crate::run_unhalted(&mut a);
        let bounds = a.bounds().clone();
        for r in a.movement_log() {
            prop_assert!(bounds.contains(r.x, r.y), "{:?}", r);
            prop_assert!((100.0..=1600.0).contains(&r.z), "{:?}", r);
        }
    }

    #[test]
    fn flight_stays_within_a_turn_diameter_of_the_world(seed in any::<u64>()) {
        let mut a = airspace(seed);
        crate::run_unhalted(&mut a);
        let bounds = a.bounds().clone();
        let margin = 2.0 * max_turn_radius();
        for r in a.movement_log() {
            prop_assert!(bounds.contains_with_margin(r.x, r.y, margin), "{:?}", r);
            prop_assert!((100.0..=1600.0).contains(&r.z), "{:?}", r);
        }
    }

    #[test]
    fn vehicle_motion_ignores_the_rest_of_the_fleet(seed in any::<u64>()) {
        let mut fleet = airspace(seed);
        let solos: Vec<Vehicle> = fleet.vehicles().cloned().collect();
        crate::run_unhalted(&mut fleet);
        for v in solos {
            let id = v.id;
            let mut alone = Airspace::default().with_max_ticks(fleet.max_ticks());
            alone.add_vehicle(v).unwrap();
            crate::run_unhalted(&mut alone);
            let together: Vec<_> = fleet.movement_log().iter().filter(|r| r.id == id).copied().collect();
            prop_assert_eq!(alone.movement_log(), &together[..]);
        }
    }

    #[test]
    fn straight_leg_duration_is_analytic(
        ox in 1.0..29.0f64, oy in 1.0..29.0f64,
        dx in 1.0..29.0f64, dy in 1.0..29.0f64,
        start in 0u64..200,
        k in 0usize..3,
    ) {
        let leg = (dx - ox).hypot(dy - oy);
        let step = 150.0 * KT_TO_NM_PER_S;
        prop_assume!(leg > 1.0);
        prop_assume!((leg / step).fract() > 1e-6 && (leg / step).fract() < 1.0 - 1e-6);

        let v = Vehicle::new(1, VehicleType::ALL[k], (ox, oy), (dx, dy)).with_timestamp(start);
        let level = WorldBounds::default().lowest_level_for_heading(v.hdg);
        let mut a = Airspace::default();
        a.add_vehicle(v).unwrap();
        let report = a.simulate().unwrap();
        prop_assert!(report.safe);

        let climb = ticks_for(level - 100.0);
        let cruise = (leg / step).ceil() as u64;
        prop_assert_eq!(report.total_ticks, start + climb + cruise + climb);
        prop_assert_eq!(report.delivery_ticks[&VehicleId(1)], report.total_ticks);
    }
}

#[test]
fn step_records_every_vehicle_airborne_at_step_start() {
    let mut a = airspace(7);
    while !a.all_delivered() && a.tick() < a.max_ticks() {
        let flying: BTreeSet<VehicleId> = {
            let tick = a.tick();
            a.vehicles()
                .filter(|v| {
                    v.phase.is_airborne()
                        || (v.phase == FlightPhase::Scheduled && v.timestamp <= tick)
                })
                .map(|v| v.id)
                .collect()
        };
        let before = a.movement_log().len();
        let outcome = a
            .step()
            .unwrap_or_else(|_| panic!("halted at {}", a.tick()));
        let logged: BTreeSet<VehicleId> = a.movement_log()[before..]
            .iter()
            .inspect(|r| assert_eq!(r.tick, outcome.tick))
            .map(|r| r.id)
            .collect();
        assert_eq!(logged, flying, "tick {}", outcome.tick);
        assert_eq!(a.movement_log().len() - before, flying.len());
    }
}
