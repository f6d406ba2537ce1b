//! Movement log CSV.
//!
//! Header and column order are fixed:
//!
//! ```text
//! tick,id,type,x_nm,y_nm,z_ft,hdg_deg,speed_kts,phase,delivered
//! ```
//!
//! Rows are sorted by `(tick, id)`; floats carry six decimals.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::engine::MovementRecord;
use crate::vehicle::VehicleId;

pub const HEADER: [&str; 10] = [
    "tick",
    "id",
    "type",
    "x_nm",
    "y_nm",
    "z_ft",
    "hdg_deg",
    "speed_kts",
    "phase",
    "delivered",
];

#[derive(Debug, Error)]
pub enum LogError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: column `{column}`: {message}")]
    Field {
        row: usize,
        column: &'static str,
        message: String,
    },
}

/// Records in `(tick, id)` order; ties keep log order.
pub fn sorted(log: &[MovementRecord]) -> Vec<MovementRecord> {
    let mut rows = log.to_vec();
    rows.sort_by_key(|r| (r.tick, r.id));
    rows
}

pub fn write_movement_csv<W: Write>(log: &[MovementRecord], out: W) -> Result<(), LogError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for r in sorted(log) {
        w.write_record([
            r.tick.to_string(),
            r.id.to_string(),
            r.kind.to_string(),
            format!("{:.6}", r.x),
            format!("{:.6}", r.y),
            format!("{:.6}", r.z),
            format!("{:.6}", r.hdg),
            format!("{:.6}", r.speed),
            r.phase.to_string(),
            r.delivered.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn movement_csv_string(log: &[MovementRecord]) -> String {
    let mut buf = Vec::new();
    write_movement_csv(log, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is ascii")
}

pub fn write_movement_log(log: &[MovementRecord], path: impl AsRef<Path>) -> Result<(), LogError> {
    let file = File::create(path)?;
    write_movement_csv(log, io::BufWriter::new(file))
}

pub fn read_movement_csv<R: Read>(input: R) -> Result<Vec<MovementRecord>, LogError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(LogError::Header(header));
    }
    let mut out = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        fn parse<T: std::str::FromStr>(
            row: usize,
            column: &'static str,
            raw: &str,
        ) -> Result<T, LogError>
        where
            T::Err: std::fmt::Display,
        {
            raw.parse().map_err(|e: T::Err| LogError::Field {
                row,
                column,
                message: e.to_string(),
            })
        }
        out.push(MovementRecord {
            tick: parse(row, "tick", field(0))?,
            id: VehicleId(parse(row, "id", field(1))?),
            kind: parse(row, "type", field(2))?,
            x: parse(row, "x_nm", field(3))?,
            y: parse(row, "y_nm", field(4))?,
            z: parse(row, "z_ft", field(5))?,
            hdg: parse(row, "hdg_deg", field(6))?,
            speed: parse(row, "speed_kts", field(7))?,
            phase: parse(row, "phase", field(8))?,
            delivered: parse(row, "delivered", field(9))?,
        });
    }
    Ok(out)
}

pub fn read_movement_log(path: impl AsRef<Path>) -> Result<Vec<MovementRecord>, LogError> {
    read_movement_csv(io::BufReader::new(File::open(path)?))
}
