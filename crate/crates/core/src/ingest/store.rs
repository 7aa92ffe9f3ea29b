//! The on-disk snapshot store: one columnar text file per date.
//!
//! Layout under the store root:
//!
//! ```text
//! <root>/states/YYYY-MM-DD.csv
//! ```
//!
//! Columns, in order: `norad_id, epoch, incl_deg, raan_deg, ecc, argp_deg,
//! mean_anom_deg, mean_motion_revday, alt_km, apogee_km, u_deg, x_km, y_km,
//! z_km, age_h`. Plain text with fixed numeric precision so external tools
//! can read it and re-runs are byte-identical. Files support concurrent
//! readers with a single writer per date.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, NaiveDate, Utc};

use super::{DailyRow, DailyStateTable, IngestError};
use crate::orbital::derive_state;

const HEADER: &str = "norad_id,epoch,incl_deg,raan_deg,ecc,argp_deg,mean_anom_deg,mean_motion_revday,alt_km,apogee_km,u_deg,x_km,y_km,z_km,age_h";

#[derive(Debug, Clone)]
pub struct SnapshotStore {
    root: PathBuf,
}

impl SnapshotStore {
    /// Opens (creating if needed) a store rooted at `root`.
    pub fn open(root: impl AsRef<Path>) -> Result<Self, IngestError> {
        let root = root.as_ref().to_path_buf();
        let states = root.join("states");
        if states.exists() && !states.is_dir() {
            return Err(IngestError::NotADirectory(states.display().to_string()));
        }
        fs::create_dir_all(&states)?;
        Ok(Self { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn state_path(&self, date: NaiveDate) -> PathBuf {
        self.root.join("states").join(format!("{date}.csv"))
    }

    /// Writes one date file, replacing any previous content atomically.
    pub fn write_table(&self, table: &DailyStateTable) -> Result<(), IngestError> {
        let path = self.state_path(table.date);
        let tmp = path.with_extension("csv.tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{HEADER}")?;
            for row in &table.rows {
                let s = &row.state;
                writeln!(
                    f,
                    "{},{},{:.6},{:.6},{:.7},{:.6},{:.6},{:.8},{:.3},{:.3},{:.6},{:.3},{:.3},{:.3},{:.3}",
                    row.norad_id,
                    row.source_epoch.format("%Y-%m-%dT%H:%M:%S%.3fZ"),
                    s.inclination_deg,
                    s.raan_deg,
                    s.eccentricity,
                    s.arg_perigee_deg,
                    s.mean_anomaly_deg,
                    s.mean_motion_rev_day,
                    s.mean_altitude_km,
                    s.apogee_altitude_km,
                    s.phase_deg,
                    s.position_km[0],
                    s.position_km[1],
                    s.position_km[2],
                    row.age_hours,
                )?;
            }
            f.flush()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Reads the table for one date; `None` when the date has no file.
    ///
    /// Derived quantities are rebuilt from the element columns so in-memory
    /// values stay mutually consistent at full precision.
    pub fn read_table(&self, date: NaiveDate) -> Result<Option<DailyStateTable>, IngestError> {
        let path = self.state_path(date);
        if !path.exists() {
            return Ok(None);
        }
        let content = fs::read_to_string(&path)?;
        let mut rows = Vec::new();
        let t = DailyStateTable::reference_instant(date);
        for (i, line) in content.lines().enumerate() {
            if i == 0 {
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let err = |reason: String| IngestError::MalformedSnapshot {
                file: path.display().to_string(),
                reason: format!("line {}: {reason}", i + 1),
            };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 15 {
                return Err(err(format!("{} fields, expected 15", fields.len())));
            }
            let norad_id: u32 = fields[0].parse().map_err(|_| err("bad norad_id".into()))?;
            let source_epoch: DateTime<Utc> = fields[1]
                .parse()
                .map_err(|_| err(format!("bad epoch '{}'", fields[1])))?;
            let f = |idx: usize| -> Result<f64, IngestError> {
                fields[idx]
                    .parse()
                    .map_err(|_| err(format!("bad numeric field {idx} '{}'", fields[idx])))
            };
            let state = derive_state(norad_id, t, f(2)?, f(3)?, f(4)?, f(5)?, f(6)?, f(7)?)
                .map_err(|e| err(e.to_string()))?;
            rows.push(DailyRow {
                norad_id,
                source_epoch,
                age_hours: f(14)?,
                state,
            });
        }
        rows.sort_by_key(|r| r.norad_id);
        Ok(Some(DailyStateTable { date, rows }))
    }

    /// All dates with a state file, ascending.
    pub fn dates(&self) -> Result<Vec<NaiveDate>, IngestError> {
        let mut dates = Vec::new();
        for entry in fs::read_dir(self.root.join("states"))? {
            let entry = entry?;
            let name = entry.file_name();
            let name = name.to_string_lossy();
            if let Some(stem) = name.strip_suffix(".csv") {
                if let Ok(d) = stem.parse::<NaiveDate>() {
                    dates.push(d);
                }
            }
        }
        dates.sort();
        Ok(dates)
    }

    /// Reads every stored table in the inclusive date range, skipping
    /// missing dates.
    pub fn read_range(&self, from: NaiveDate, to: NaiveDate) -> Result<Vec<DailyStateTable>, IngestError> {
        let mut out = Vec::new();
        for date in self.dates()? {
            if date >= from && date <= to {
                if let Some(t) = self.read_table(date)? {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }
}
