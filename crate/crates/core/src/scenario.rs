//! Scenario files: a JSON array of vehicle entries.
//!
//! ```json
//! [
//!   {
//!     "eVTOLid": 1,
//!     "initial_position": [10.0, 5.0],
//!     "final_position": [20.0, 5.0],
//!     "hdg": 0.0,
//!     "eVTOL_type": "rpas",
//!     "objectiveList": [[20.0, 5.0, 1000.0, 150.0]],
//!     "timestamp": 0
//!   }
//! ]
//! ```
//!
//! Waypoints are `[x, y, z]` or `[x, y, z, s]`; a missing speed means
//! 150 kts. An empty `objectiveList` means a direct flight.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;
use thiserror::Error;

use crate::bounds::WorldBounds;
use crate::engine::Airspace;
use crate::error::Error as SimError;
use crate::vehicle::{
    Vehicle, VehicleType, Waypoint, DEFAULT_SPEED_KTS, MAX_SPEED_KTS, MIN_SPEED_KTS,
};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed scenario JSON: {0}")]
    Syntax(String),
    #[error("entry {index}: field `{field}`: {message}")]
    Entry {
        index: usize,
        field: String,
        message: String,
    },
}

impl ScenarioError {
    fn entry(index: usize, field: impl Into<String>, message: impl Into<String>) -> Self {
        ScenarioError::Entry {
            index,
            field: field.into(),
            message: message.into(),
        }
    }
}

/// One vehicle as stored on disk. Field order is the on-disk key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioEntry {
    #[serde(rename = "eVTOLid")]
    pub id: u32,
    pub initial_position: [f64; 2],
    pub final_position: [f64; 2],
    #[serde(default)]
    pub hdg: Option<f64>,
    #[serde(rename = "eVTOL_type")]
    pub kind: VehicleType,
    #[serde(rename = "objectiveList", default)]
    pub objective_list: Vec<Vec<f64>>,
    #[serde(default)]
    pub timestamp: u64,
}

impl ScenarioEntry {
    pub fn from_vehicle(v: &Vehicle) -> Self {
        ScenarioEntry {
            id: v.id.0,
            initial_position: [v.origin_x, v.origin_y],
            final_position: [v.target_x, v.target_y],
            hdg: Some(v.hdg),
            kind: v.kind,
            objective_list: v
                .objective_list
                .iter()
                .map(|w| vec![w.x, w.y, w.z, w.s])
                .collect(),
            timestamp: v.timestamp,
        }
    }

    fn to_vehicle(&self, index: usize, bounds: &WorldBounds) -> Result<Vehicle, ScenarioError> {
        let [ox, oy] = self.initial_position;
        let [dx, dy] = self.final_position;
        if !bounds.contains(ox, oy) {
            return Err(ScenarioError::entry(
                index,
                "initial_position",
                format!("[{ox}, {oy}] is outside the world bounds"),
            ));
        }
        if !bounds.contains(dx, dy) {
            return Err(ScenarioError::entry(
                index,
                "final_position",
                format!("[{dx}, {dy}] is outside the world bounds"),
            ));
        }
        let mut v =
            Vehicle::new(self.id, self.kind, (ox, oy), (dx, dy)).with_timestamp(self.timestamp);
        if let Some(hdg) = self.hdg {
            if !(0.0..360.0).contains(&hdg) {
                return Err(ScenarioError::entry(
                    index,
                    "hdg",
                    format!("{hdg} is outside [0, 360)"),
                ));
            }
            v.hdg = hdg;
        }
        for (j, raw) in self.objective_list.iter().enumerate() {
            let field = format!("objectiveList[{j}]");
            let wp = match *raw.as_slice() {
                [x, y, z] => Waypoint::new(x, y, z, DEFAULT_SPEED_KTS),
                [x, y, z, s] => Waypoint::new(x, y, z, s),
                _ => {
                    return Err(ScenarioError::entry(
                        index,
                        field,
                        format!(
                            "expected [x, y, z] or [x, y, z, s], got {} numbers",
                            raw.len()
                        ),
                    ))
                }
            };
            if !bounds.contains(wp.x, wp.y) {
                return Err(ScenarioError::entry(
                    index,
                    field,
                    format!("[{}, {}] is outside the world bounds", wp.x, wp.y),
                ));
            }
            if !(bounds.skyport_altitude..=bounds.highest_level()).contains(&wp.z) {
                return Err(ScenarioError::entry(
                    index,
                    field,
                    format!(
                        "altitude {} ft is outside [{}, {}]",
                        wp.z,
                        bounds.skyport_altitude,
                        bounds.highest_level()
                    ),
                ));
            }
            if !(MIN_SPEED_KTS..=MAX_SPEED_KTS).contains(&wp.s) {
                return Err(ScenarioError::entry(
                    index,
                    field,
                    format!(
                        "speed {} kts is outside [{MIN_SPEED_KTS}, {MAX_SPEED_KTS}]",
                        wp.s
                    ),
                ));
            }
            v.add_obj_point(wp);
        }
        Ok(v)
    }
}

pub fn entries_from_airspace(airspace: &Airspace) -> Vec<ScenarioEntry> {
    airspace
        .vehicles()
        .map(ScenarioEntry::from_vehicle)
        .collect()
}

/// Pretty-printed scenario document with a trailing newline.
pub fn to_json_string(airspace: &Airspace) -> String {
    let mut s = serde_json::to_string_pretty(&entries_from_airspace(airspace))
        .expect("scenario entries always serialize");
    s.push('\n');
    s
}

pub fn save_scenario(airspace: &Airspace, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let path = path.as_ref();
    fs::write(path, to_json_string(airspace)).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses and validates a scenario document without building an airspace.
pub fn parse_entries(json: &str) -> Result<Vec<ScenarioEntry>, ScenarioError> {
    let de = &mut serde_json::Deserializer::from_str(json);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let mut segments = err.path().iter();
        let index = match segments.next() {
            Some(Segment::Seq { index }) => *index,
            _ => return ScenarioError::Syntax(err.inner().to_string()),
        };
        let mut field = String::new();
        for seg in segments {
            match seg {
                Segment::Map { key } => {
                    if !field.is_empty() {
                        field.push('.');
                    }
                    field.push_str(key);
                }
                Segment::Seq { index } => field.push_str(&format!("[{index}]")),
                Segment::Enum { variant } => field.push_str(variant),
                Segment::Unknown => field.push('?'),
            }
        }
        let message = err.inner().to_string();
        if field.is_empty() {
            // missing fields are reported against the entry itself
            field = message
                .strip_prefix("missing field `")
                .and_then(|rest| rest.split('`').next())
                .unwrap_or("?")
                .to_string();
        }
        ScenarioError::entry(index, field, message)
    })
}

pub fn parse_scenario(json: &str) -> Result<Airspace, ScenarioError> {
    parse_scenario_with(json, WorldBounds::default())
}

pub fn parse_scenario_with(json: &str, bounds: WorldBounds) -> Result<Airspace, ScenarioError> {
    let entries = parse_entries(json)?;
    let mut airspace = Airspace::new(bounds.clone());
    for (index, entry) in entries.iter().enumerate() {
        let v = entry.to_vehicle(index, &bounds)?;
        airspace.add_vehicle(v).map_err(|e| match e {
            SimError::DuplicateId(id) => {
                ScenarioError::entry(index, "eVTOLid", format!("duplicate id {id}"))
            }
            other => ScenarioError::entry(index, "?", other.to_string()),
        })?;
    }
    Ok(airspace)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Airspace, ScenarioError> {
    let path = path.as_ref();
    let json = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments;
    use crate::vehicle::VehicleId;

    #[test]
    fn empty_airspace_saves_empty_list() {
        assert_eq!(to_json_string(&Airspace::default()), "[]\n");
        assert!(parse_scenario("[]").unwrap().is_empty());
    }

    #[test]
    fn experiment_fleet_entry_shape() {
        let json = to_json_string(&experiments::experiment_one());
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        let list = doc.as_array().unwrap();
        assert_eq!(list.len(), 5);
        let first = &list[0];
        assert_eq!(first["eVTOLid"], 1);
        assert_eq!(first["eVTOL_type"], "rpas");
        assert_eq!(first["initial_position"], serde_json::json!([10.0, 5.0]));
        assert_eq!(first["final_position"], serde_json::json!([20.0, 5.0]));
        let order = [
            "eVTOLid",
            "initial_position",
            "final_position",
            "hdg",
            "eVTOL_type",
            "objectiveList",
            "timestamp",
        ];
        let positions: Vec<usize> = order
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn direct_flight_default_on_load() {
        let json = r#"[{"eVTOLid": 1, "initial_position": [10, 5], "final_position": [20, 5],
                        "hdg": 0, "eVTOL_type": "piloted", "objectiveList": [], "timestamp": 0}]"#;
        let a = parse_scenario(json).unwrap();
        let v = a.vehicle(VehicleId(1)).unwrap();
        assert_eq!(
            v.objective_list.iter().copied().collect::<Vec<_>>(),
            vec![Waypoint::new(20.0, 5.0, 1000.0, 150.0)]
        );
    }

    #[test]
    fn three_element_waypoints_default_speed() {
        let json = r#"[{"eVTOLid": 1, "initial_position": [4, 4], "final_position": [2, 2],
                        "eVTOL_type": "rpas", "objectiveList": [[4, 2, 1200]]}]"#;
        let a = parse_scenario(json).unwrap();
        let v = a.vehicle(VehicleId(1)).unwrap();
        assert_eq!(v.objective_list[0], Waypoint::new(4.0, 2.0, 1200.0, 150.0));
        assert_eq!(v.objective_list[1], Waypoint::new(2.0, 2.0, 1200.0, 150.0));
        assert_eq!(v.hdg, 225.0);
    }

    fn entry_error(json: &str) -> (usize, String) {
        match parse_scenario(json).unwrap_err() {
            ScenarioError::Entry { index, field, .. } => (index, field),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation_errors_name_entry_and_field() {
        let ok = r#"{"eVTOLid": 1, "initial_position": [1, 1], "final_position": [2, 2], "hdg": 45, "eVTOL_type": "uas", "objectiveList": [], "timestamp": 0}"#;

        let glider = format!(
            r#"[{ok}, {{"eVTOLid": 2, "initial_position": [1, 1], "final_position": [2, 2], "hdg": 45, "eVTOL_type": "glider", "objectiveList": [], "timestamp": 0}}]"#
        );
        assert_eq!(entry_error(&glider), (1, "eVTOL_type".into()));

        let dup = format!("[{ok}, {ok}]");
        assert_eq!(entry_error(&dup), (1, "eVTOLid".into()));

        let oob = r#"[{"eVTOLid": 1, "initial_position": [31, 1], "final_position": [2, 2], "eVTOL_type": "uas"}]"#;
        assert_eq!(entry_error(oob), (0, "initial_position".into()));

        let bad_wp = r#"[{"eVTOLid": 1, "initial_position": [1, 1], "final_position": [2, 2], "eVTOL_type": "uas", "objectiveList": [[1, 2]]}]"#;
        assert_eq!(entry_error(bad_wp), (0, "objectiveList[0]".into()));

        let high = r#"[{"eVTOLid": 1, "initial_position": [1, 1], "final_position": [2, 2], "eVTOL_type": "uas", "objectiveList": [[1, 2, 3000]]}]"#;
        assert_eq!(entry_error(high), (0, "objectiveList[0]".into()));

        let missing = r#"[{"eVTOLid": 1, "final_position": [2, 2], "eVTOL_type": "uas"}]"#;
        assert_eq!(entry_error(missing), (0, "initial_position".into()));

        let wrong_type = r#"[{"eVTOLid": 1, "initial_position": [1, 1], "final_position": [2, 2], "hdg": "north", "eVTOL_type": "uas"}]"#;
        assert_eq!(entry_error(wrong_type), (0, "hdg".into()));

        let bad_hdg = r#"[{"eVTOLid": 1, "initial_position": [1, 1], "final_position": [2, 2], "hdg": 400, "eVTOL_type": "uas"}]"#;
        assert_eq!(entry_error(bad_hdg), (0, "hdg".into()));

        assert!(matches!(
            parse_scenario("{not json"),
            Err(ScenarioError::Syntax(_))
        ));
        assert!(matches!(
            parse_scenario("{}"),
            Err(ScenarioError::Syntax(_))
        ));
    }

    #[test]
    fn round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        for airspace in [
            experiments::experiment_one(),
            experiments::experiment_two_direct(),
        ] {
            let path = dir.path().join("s.json");
            save_scenario(&airspace, &path).unwrap();
            let loaded = load_scenario(&path).unwrap();
            assert_eq!(
                loaded.vehicles().cloned().collect::<Vec<_>>(),
                airspace.vehicles().cloned().collect::<Vec<_>>()
            );
            assert_eq!(to_json_string(&loaded), fs::read_to_string(&path).unwrap());
        }
        assert!(matches!(
            load_scenario(dir.path().join("missing.json")),
            Err(ScenarioError::Io { .. })
        ));
    }
}
