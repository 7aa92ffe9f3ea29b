//! Delimiter-separated catalog tables: satellite catalog metadata and
//! conjunction reports. Column names are configurable since providers
//! rename headers between export formats.

use std::io::Read;

use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};
use serde::{Deserialize, Serialize};

use super::{Diagnostic, IngestError, ParseReport};

/// Launch/decay metadata for one catalog object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatCatEntry {
    pub norad_id: u32,
    /// Object name; carries the generation token (e.g. a version label).
    pub object_name: String,
    pub launch_date: NaiveDate,
    pub decay_date: Option<NaiveDate>,
}

/// A predicted close approach between two objects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjunctionEvent {
    pub sat1_id: u32,
    pub sat2_id: u32,
    /// Time of closest approach.
    pub tca: DateTime<Utc>,
    pub max_probability: f64,
    pub miss_distance_km: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SatCatColumns {
    pub norad_id: String,
    pub object_name: String,
    pub launch_date: String,
    pub decay_date: String,
}

impl Default for SatCatColumns {
    fn default() -> Self {
        Self {
            norad_id: "NORAD_CAT_ID".into(),
            object_name: "OBJECT_NAME".into(),
            launch_date: "LAUNCH_DATE".into(),
            decay_date: "DECAY_DATE".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ConjunctionColumns {
    pub sat1_id: String,
    pub sat2_id: String,
    pub tca: String,
    pub max_probability: String,
    pub miss_distance_km: String,
}

impl Default for ConjunctionColumns {
    fn default() -> Self {
        Self {
            sat1_id: "NORAD_CAT_ID_1".into(),
            sat2_id: "NORAD_CAT_ID_2".into(),
            tca: "TCA".into(),
            max_probability: "MAX_PROB".into(),
            miss_distance_km: "TCA_RANGE".into(),
        }
    }
}

fn column_index(headers: &csv::StringRecord, name: &str) -> Result<usize, IngestError> {
    headers
        .iter()
        .position(|h| h.trim().eq_ignore_ascii_case(name))
        .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
}

fn parse_date(s: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d").ok()
}

fn parse_timestamp(s: &str) -> Option<DateTime<Utc>> {
    let s = s.trim();
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.with_timezone(&Utc));
    }
    for fmt in ["%Y-%m-%d %H:%M:%S%.f", "%Y-%m-%dT%H:%M:%S%.f"] {
        if let Ok(t) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(t.and_utc());
        }
    }
    None
}

/// Parses satellite-catalog rows. Rows with an empty decay column yield
/// entries without a decay date; a decay before launch rejects the row.
pub fn parse_satcat<R: Read>(
    reader: R,
    columns: &SatCatColumns,
) -> Result<ParseReport<SatCatEntry>, IngestError> {
    let mut csv = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = csv.headers()?.clone();
    let idx_id = column_index(&headers, &columns.norad_id)?;
    let idx_name = column_index(&headers, &columns.object_name)?;
    let idx_launch = column_index(&headers, &columns.launch_date)?;
    let idx_decay = column_index(&headers, &columns.decay_date)?;

    let mut report = ParseReport::default();
    for (i, row) in csv.records().enumerate() {
        let line = i + 2; // 1-based, after the header
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                report.diagnostics.push(Diagnostic::reject(line, format!("unreadable row: {e}")));
                continue;
            }
        };
        let field = |idx: usize| row.get(idx).unwrap_or("").trim();
        let Ok(norad_id) = field(idx_id).parse::<u32>() else {
            report
                .diagnostics
                .push(Diagnostic::reject(line, format!("bad catalog id '{}'", field(idx_id))));
            continue;
        };
        let Some(launch_date) = parse_date(field(idx_launch)) else {
            report
                .diagnostics
                .push(Diagnostic::reject(line, format!("bad launch date '{}'", field(idx_launch))));
            continue;
        };
        let decay_date = match field(idx_decay) {
            "" => None,
            s => match parse_date(s) {
                Some(d) => Some(d),
                None => {
                    report
                        .diagnostics
                        .push(Diagnostic::reject(line, format!("bad decay date '{s}'")));
                    continue;
                }
            },
        };
        if let Some(d) = decay_date {
            if d < launch_date {
                report.diagnostics.push(Diagnostic::reject(
                    line,
                    format!("decay {d} precedes launch {launch_date}"),
                ));
                continue;
            }
        }
        report.items.push(SatCatEntry {
            norad_id,
            object_name: field(idx_name).to_string(),
            launch_date,
            decay_date,
        });
    }
    Ok(report)
}

/// Parses conjunction-report rows; output is sorted by time of closest
/// approach. Probabilities outside [0, 1] reject the row.
pub fn parse_conjunctions<R: Read>(
    reader: R,
    columns: &ConjunctionColumns,
) -> Result<ParseReport<ConjunctionEvent>, IngestError> {
    let mut csv = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = csv.headers()?.clone();
    let idx_s1 = column_index(&headers, &columns.sat1_id)?;
    let idx_s2 = column_index(&headers, &columns.sat2_id)?;
    let idx_tca = column_index(&headers, &columns.tca)?;
    let idx_p = column_index(&headers, &columns.max_probability)?;
    let idx_miss = headers
        .iter()
        .position(|h| h.trim().eq_ignore_ascii_case(&columns.miss_distance_km));

    let mut report = ParseReport::default();
    if idx_miss.is_none() {
        report.diagnostics.push(Diagnostic::warn(
            1,
            format!(
                "no '{}' column; miss distances default to 0",
                columns.miss_distance_km
            ),
        ));
    }
    for (i, row) in csv.records().enumerate() {
        let line = i + 2;
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                report.diagnostics.push(Diagnostic::reject(line, format!("unreadable row: {e}")));
                continue;
            }
        };
        let field = |idx: usize| row.get(idx).unwrap_or("").trim();
        let ids = (field(idx_s1).parse::<u32>(), field(idx_s2).parse::<u32>());
        let (Ok(sat1_id), Ok(sat2_id)) = ids else {
            report.diagnostics.push(Diagnostic::reject(line, "bad object id"));
            continue;
        };
        if sat1_id == sat2_id {
            report
                .diagnostics
                .push(Diagnostic::reject(line, format!("identical object ids {sat1_id}")));
            continue;
        }
        let Some(tca) = parse_timestamp(field(idx_tca)) else {
            report
                .diagnostics
                .push(Diagnostic::reject(line, format!("bad TCA '{}'", field(idx_tca))));
            continue;
        };
        let Ok(max_probability) = field(idx_p).parse::<f64>() else {
            report
                .diagnostics
                .push(Diagnostic::reject(line, format!("bad probability '{}'", field(idx_p))));
            continue;
        };
        if !(0.0..=1.0).contains(&max_probability) {
            report.diagnostics.push(Diagnostic::reject(
                line,
                format!("probability {max_probability} outside [0, 1]"),
            ));
            continue;
        }
        let miss_distance_km = idx_miss
            .and_then(|idx| field(idx).parse::<f64>().ok())
            .unwrap_or(0.0);
        report.items.push(ConjunctionEvent {
            sat1_id,
            sat2_id,
            tca,
            max_probability,
            miss_distance_km,
        });
    }
    report
        .items
        .sort_by(|a, b| (a.tca, a.sat1_id, a.sat2_id).cmp(&(b.tca, b.sat1_id, b.sat2_id)));
    Ok(report)
}
