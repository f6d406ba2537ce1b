//! Report JSON: a flat document for easy diffing.
//!
//! ```json
//! {
//!   "safe": false,
//!   "total_ticks": 150,
//!   "halt_reason": "conflict",
//!   "delivery_ticks": {},
//!   "conflicts": [{ "a": 1, "b": 2, "tick": 150 }]
//! }
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::SimulationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictEntry {
    pub a: u32,
    pub b: u32,
    pub tick: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub safe: bool,
    pub total_ticks: u64,
    pub halt_reason: String,
    pub delivery_ticks: BTreeMap<u32, u64>,
    pub conflicts: Vec<ConflictEntry>,
}

impl From<&SimulationReport> for ReportDocument {
    fn from(r: &SimulationReport) -> Self {
        ReportDocument {
            safe: r.safe,
            total_ticks: r.total_ticks,
            halt_reason: r.halt_reason.to_string(),
            delivery_ticks: r.delivery_ticks.iter().map(|(id, t)| (id.0, *t)).collect(),
            conflicts: r
                .conflicts
                .iter()
                .map(|c| ConflictEntry {
                    a: c.a.0,
                    b: c.b.0,
                    tick: c.tick,
                })
                .collect(),
        }
    }
}

pub fn report_json(report: &SimulationReport) -> String {
    let mut s = serde_json::to_string_pretty(&ReportDocument::from(report))
        .expect("report always serializes");
    s.push('\n');
    s
}

pub fn write_report(report: &SimulationReport, path: impl AsRef<Path>) -> io::Result<()> {
    fs::write(path, report_json(report))
}
