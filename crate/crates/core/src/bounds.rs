use serde::{Deserialize, Serialize};

use crate::vehicle::VERTICAL_SEPARATION_FT;

/// Cruise flight levels, ft AGL. Alternate entries belong to the two heading
/// half-planes: 1000/1400 for headings below 180°, 1200/1600 otherwise.
pub const FLIGHT_LEVELS_FT: [f64; 4] = [1000.0, 1200.0, 1400.0, 1600.0];
pub const SKYPORT_ALTITUDE_FT: f64 = 100.0;

/// The flat square the simulation runs in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldBounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Sorted ascending.
    pub flight_levels: Vec<f64>,
    pub skyport_altitude: f64,
}

impl Default for WorldBounds {
    fn default() -> Self {
        WorldBounds {
            x_min: 0.0,
            x_max: 30.0,
            y_min: 0.0,
            y_max: 30.0,
            flight_levels: FLIGHT_LEVELS_FT.to_vec(),
            skyport_altitude: SKYPORT_ALTITUDE_FT,
        }
    }
}

impl WorldBounds {
    /// Square world of side `size` NM with the default levels.
    pub fn square(size: f64) -> Self {
        WorldBounds {
            x_max: size,
            y_max: size,
            ..WorldBounds::default()
        }
    }

    pub fn is_valid(&self) -> bool {
        self.x_min < self.x_max
            && self.y_min < self.y_max
            && !self.flight_levels.is_empty()
            && self
                .flight_levels
                .windows(2)
                .all(|w| w[1] - w[0] >= VERTICAL_SEPARATION_FT)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.contains_with_margin(x, y, 0.0)
    }

    pub fn contains_with_margin(&self, x: f64, y: f64, margin: f64) -> bool {
        x >= self.x_min - margin
            && x <= self.x_max + margin
            && y >= self.y_min - margin
            && y <= self.y_max + margin
    }

    pub fn highest_level(&self) -> f64 {
        self.flight_levels
            .last()
            .copied()
            .unwrap_or(self.skyport_altitude)
    }

    pub fn is_flight_level(&self, z: f64) -> bool {
        self.flight_levels.contains(&z)
    }

    /// Levels available to a vehicle holding `hdg` (assumed in [0, 360)).
    pub fn levels_for_heading(&self, hdg: f64) -> Vec<f64> {
        let offset = usize::from(hdg >= 180.0);
        self.flight_levels
            .iter()
            .skip(offset)
            .step_by(2)
            .copied()
            .collect()
    }

    pub fn lowest_level_for_heading(&self, hdg: f64) -> f64 {
        self.levels_for_heading(hdg)
            .first()
            .copied()
            .unwrap_or_else(|| self.flight_levels[0])
    }
}
