//! Two-line element set parsing and formatting.
//!
//! Standard 69-column lines with modulo-10 checksums. Sets may be bare
//! pairs or name + pair triples. Rejections are per-set; the stream keeps
//! going.

use chrono::{DateTime, Duration, TimeZone, Utc};
use serde::{Deserialize, Serialize};

use super::{Diagnostic, ParseReport, LEO_MEAN_MOTION_REV_DAY};
use crate::orbital::MeanElements;

/// One parsed element set. Numeric fields carry the format's printed
/// precision, so formatting and re-parsing a record reproduces it
/// field-for-field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TleRecord {
    pub norad_id: u32,
    pub classification: char,
    pub intl_designator: String,
    /// Full calendar year resolved from the 2-digit epoch year.
    pub epoch_year: i32,
    /// Fractional day of year; 1.0 is January 1st 00:00 UTC.
    pub epoch_day: f64,
    /// First derivative of mean motion over two, rev/day^2 (as printed).
    pub mean_motion_dot: f64,
    /// Second derivative of mean motion over six, rev/day^3 (as printed).
    pub mean_motion_ddot: f64,
    /// Drag term, inverse Earth radii.
    pub bstar: f64,
    pub element_set_number: u32,
    pub inclination_deg: f64,
    pub raan_deg: f64,
    pub eccentricity: f64,
    pub arg_perigee_deg: f64,
    pub mean_anomaly_deg: f64,
    pub mean_motion_rev_day: f64,
    pub rev_number: u32,
    pub line1_checksum: u8,
    pub line2_checksum: u8,
}

impl TleRecord {
    /// Epoch as a UTC timestamp.
    pub fn epoch(&self) -> DateTime<Utc> {
        let year_start = Utc.with_ymd_and_hms(self.epoch_year, 1, 1, 0, 0, 0).unwrap();
        year_start + Duration::nanoseconds(((self.epoch_day - 1.0) * 86_400.0 * 1e9).round() as i64)
    }

    /// Mean elements for the propagation backends.
    pub fn elements(&self) -> MeanElements {
        MeanElements {
            norad_id: self.norad_id,
            epoch: self.epoch(),
            inclination_deg: self.inclination_deg,
            raan_deg: self.raan_deg,
            eccentricity: self.eccentricity,
            arg_perigee_deg: self.arg_perigee_deg,
            mean_anomaly_deg: self.mean_anomaly_deg,
            mean_motion_rev_day: self.mean_motion_rev_day,
            bstar: self.bstar,
        }
    }

    /// Renders the record back to its two 69-column lines, checksums
    /// included.
    pub fn format_lines(&self) -> (String, String) {
        let mut l1 = format!(
            "1 {:>5}{} {:<8} {:02}{:012.8} {} {} {} 0 {:>4}",
            self.norad_id,
            self.classification,
            self.intl_designator,
            self.epoch_year.rem_euclid(100),
            self.epoch_day,
            format_dot(self.mean_motion_dot),
            format_exp(self.mean_motion_ddot),
            format_exp(self.bstar),
            self.element_set_number,
        );
        l1.push(char::from_digit(checksum(&l1) as u32, 10).unwrap());
        let mut l2 = format!(
            "2 {:>5} {:8.4} {:8.4} {:07} {:8.4} {:8.4} {:11.8}{:>5}",
            self.norad_id,
            self.inclination_deg,
            self.raan_deg,
            (self.eccentricity * 1e7).round() as u32,
            self.arg_perigee_deg,
            self.mean_anomaly_deg,
            self.mean_motion_rev_day,
            self.rev_number,
        );
        l2.push(char::from_digit(checksum(&l2) as u32, 10).unwrap());
        (l1, l2)
    }
}

/// Modulo-10 sum of the digits of a line; minus signs count as 1. Only the
/// first 68 columns participate.
pub fn checksum(line: &str) -> u8 {
    line.bytes()
        .take(68)
        .map(|b| match b {
            b'0'..=b'9' => (b - b'0') as u32,
            b'-' => 1,
            _ => 0,
        })
        .sum::<u32>() as u8
        % 10
}

/// Signed 8-fraction-digit field with an implied leading zero, e.g.
/// ` .00012345` or `-.00012345`.
fn format_dot(value: f64) -> String {
    let sign = if value < 0.0 { '-' } else { ' ' };
    format!("{}.{:08}", sign, (value.abs() * 1e8).round() as u64)
}

/// Implied-decimal exponent field, e.g. ` 34123-4` for 0.34123e-4.
fn format_exp(value: f64) -> String {
    if value == 0.0 {
        return " 00000+0".to_string();
    }
    let sign = if value < 0.0 { '-' } else { ' ' };
    let mut exp = value.abs().log10().floor() as i32 + 1;
    let mut mantissa = (value.abs() / 10f64.powi(exp) * 1e5).round() as u64;
    if mantissa >= 100_000 {
        mantissa /= 10;
        exp += 1;
    }
    let exp_sign = if exp < 0 { '-' } else { '+' };
    format!("{}{:05}{}{}", sign, mantissa, exp_sign, exp.abs())
}

fn parse_exp(field: &str) -> Option<f64> {
    let field = field.trim();
    if field.is_empty() {
        return Some(0.0);
    }
    let (sign, rest) = match field.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, field.strip_prefix('+').unwrap_or(field)),
    };
    // Mantissa digits followed by a signed single-digit exponent.
    let split = rest.rfind(['+', '-'])?;
    let (mant, exp) = rest.split_at(split);
    let mant: f64 = format!("0.{}", mant.trim()).parse().ok()?;
    let exp: i32 = exp.parse().ok()?;
    Some(sign * mant * 10f64.powi(exp))
}

fn parse_dot(field: &str) -> Option<f64> {
    let field = field.trim();
    let (sign, rest) = match field.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, field.strip_prefix('+').unwrap_or(field)),
    };
    let rest = rest.strip_prefix('.').unwrap_or(rest);
    let frac: u64 = rest.parse().ok()?;
    Some(sign * frac as f64 / 1e8)
}

fn slice(line: &str, start_col: usize, end_col: usize) -> &str {
    // 1-based inclusive columns.
    &line[start_col - 1..end_col]
}

fn num<T: std::str::FromStr>(line: &str, start: usize, end: usize, what: &str) -> Result<T, String> {
    slice(line, start, end)
        .trim()
        .parse()
        .map_err(|_| format!("non-numeric {what} field '{}'", slice(line, start, end)))
}

struct Pending<'a> {
    line_no: usize,
    line1: &'a str,
}

/// Parses a stream of 2-line (or name + 2-line) element sets.
///
/// Malformed sets produce per-set diagnostics without aborting the stream.
/// Records with a mean motion outside the accepted LEO band are kept and
/// flagged.
pub fn parse_tle(text: &str) -> ParseReport<TleRecord> {
    let mut report = ParseReport::default();
    let mut pending: Option<Pending> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let is_l1 = line.starts_with("1 ");
        let is_l2 = line.starts_with("2 ");

        match (&pending, is_l1, is_l2) {
            (Some(p), _, true) => {
                let first = Pending {
                    line_no: p.line_no,
                    line1: p.line1,
                };
                pending = None;
                match parse_pair(first.line1, line) {
                    Ok(record) => {
                        let (lo, hi) = LEO_MEAN_MOTION_REV_DAY;
                        if record.mean_motion_rev_day <= lo || record.mean_motion_rev_day >= hi {
                            report.diagnostics.push(Diagnostic::warn(
                                line_no,
                                format!(
                                    "satellite {}: mean motion {} rev/day outside LEO band ({lo}, {hi})",
                                    record.norad_id, record.mean_motion_rev_day
                                ),
                            ));
                        }
                        report.items.push(record);
                    }
                    Err(reason) => report.diagnostics.push(Diagnostic::reject(line_no, reason)),
                }
            }
            (Some(p), true, _) => {
                report
                    .diagnostics
                    .push(Diagnostic::reject(p.line_no, "line 1 without a matching line 2"));
                pending = Some(Pending { line_no, line1: line });
            }
            (Some(p), false, false) => {
                report
                    .diagnostics
                    .push(Diagnostic::reject(p.line_no, "line 1 without a matching line 2"));
                pending = None;
            }
            (None, true, _) => {
                pending = Some(Pending { line_no, line1: line });
            }
            (None, _, true) => {
                report
                    .diagnostics
                    .push(Diagnostic::reject(line_no, "line 2 without a preceding line 1"));
            }
            // Anything else is a name line; the next line should open a set.
            (None, false, false) => {}
        }
    }
    if let Some(p) = pending {
        report
            .diagnostics
            .push(Diagnostic::reject(p.line_no, "line 1 without a matching line 2"));
    }
    report
}

fn parse_pair(line1: &str, line2: &str) -> Result<TleRecord, String> {
    for (name, line) in [("line 1", line1), ("line 2", line2)] {
        if !line.is_ascii() {
            return Err(format!("{name} contains non-ASCII characters"));
        }
        if line.len() != 69 {
            return Err(format!("truncated {name}: {} characters, expected 69", line.len()));
        }
        let expected = checksum(line);
        let got = line.as_bytes()[68];
        if !got.is_ascii_digit() {
            return Err(format!("{name} checksum column is not a digit"));
        }
        if got - b'0' != expected {
            return Err(format!(
                "checksum mismatch on {name}: line says {}, digits sum to {}",
                got - b'0',
                expected
            ));
        }
    }

    let norad1: u32 = num(line1, 3, 7, "catalog number")?;
    let norad2: u32 = num(line2, 3, 7, "catalog number")?;
    if norad1 != norad2 {
        return Err(format!("catalog number mismatch: {norad1} vs {norad2}"));
    }

    let yy: i32 = num(line1, 19, 20, "epoch year")?;
    let epoch_year = if yy >= 57 { 1900 + yy } else { 2000 + yy };
    let epoch_day: f64 = num(line1, 21, 32, "epoch day")?;
    if !(1.0..367.0).contains(&epoch_day) {
        return Err(format!("epoch day {epoch_day} out of range"));
    }

    let mean_motion_dot =
        parse_dot(slice(line1, 34, 43)).ok_or("non-numeric mean motion derivative field")?;
    let mean_motion_ddot =
        parse_exp(slice(line1, 45, 52)).ok_or("non-numeric mean motion second derivative field")?;
    let bstar = parse_exp(slice(line1, 54, 61)).ok_or("non-numeric B* field")?;

    let eccentricity: f64 = format!("0.{}", slice(line2, 27, 33).trim())
        .parse()
        .map_err(|_| "non-numeric eccentricity field".to_string())?;
    if eccentricity >= 1.0 {
        return Err(format!("eccentricity {eccentricity} not below 1"));
    }
    let mean_motion_rev_day: f64 = num(line2, 53, 63, "mean motion")?;
    if mean_motion_rev_day <= 0.0 {
        return Err(format!("mean motion {mean_motion_rev_day} not positive"));
    }

    Ok(TleRecord {
        norad_id: norad1,
        classification: line1.as_bytes()[7] as char,
        intl_designator: slice(line1, 10, 17).trim().to_string(),
        epoch_year,
        epoch_day,
        mean_motion_dot,
        mean_motion_ddot,
        bstar,
        element_set_number: num(line1, 65, 68, "element set number")?,
        inclination_deg: num(line2, 9, 16, "inclination")?,
        raan_deg: num(line2, 18, 25, "RAAN")?,
        eccentricity,
        arg_perigee_deg: num(line2, 35, 42, "argument of perigee")?,
        mean_anomaly_deg: num(line2, 44, 51, "mean anomaly")?,
        mean_motion_rev_day,
        rev_number: num(line2, 64, 68, "revolution number")?,
        line1_checksum: line1.as_bytes()[68] - b'0',
        line2_checksum: line2.as_bytes()[68] - b'0',
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Checksums of these two lines were summed by hand: line 1 digits total
    // 91 -> 1, line 2 digits total 72 -> 2.
    const L1: &str = "1 44713U 19074A   25213.50000000  .00000000  00000+0  10000-3 0  9991";
    const L2: &str = "2 44713  53.0000 120.0000 0001000  90.0000 270.0000 15.05000000 12342";

    #[test]
    fn parses_hand_checked_pair() {
        let report = parse_tle(&format!("{L1}\n{L2}\n"));
        assert_eq!(report.diagnostics.len(), 0, "{:?}", report.diagnostics);
        assert_eq!(report.items.len(), 1);
        let r = &report.items[0];
        assert_eq!(r.norad_id, 44713);
        assert_eq!(r.intl_designator, "19074A");
        assert_eq!(r.epoch_year, 2025);
        assert_eq!(r.epoch_day, 213.5);
        assert_eq!(r.inclination_deg, 53.0);
        assert_eq!(r.raan_deg, 120.0);
        assert_eq!(r.eccentricity, 0.0001);
        assert_eq!(r.arg_perigee_deg, 90.0);
        assert_eq!(r.mean_anomaly_deg, 270.0);
        assert_eq!(r.mean_motion_rev_day, 15.05);
        assert_eq!(r.bstar, 1e-4);
        assert_eq!((r.line1_checksum, r.line2_checksum), (1, 2));
        // Epoch: day 213.5 of 2025 is 2025-08-01 12:00 UTC.
        assert_eq!(r.epoch().to_rfc3339(), "2025-08-01T12:00:00+00:00");
    }

    #[test]
    fn perturbed_checksum_rejects() {
        let mut bad = L2.to_string();
        bad.pop();
        bad.push('3');
        let report = parse_tle(&format!("{L1}\n{bad}\n"));
        assert!(report.items.is_empty());
        assert_eq!(report.diagnostics.len(), 1);
        assert!(report.diagnostics[0].reason.contains("checksum"), "{}", report.diagnostics[0].reason);
    }

    #[test]
    fn empty_input_is_empty() {
        let report = parse_tle("");
        assert!(report.items.is_empty());
        assert!(report.diagnostics.is_empty());
    }

    #[test]
    fn name_lines_are_skipped() {
        let report = parse_tle(&format!("SOMESAT-1234\n{L1}\n{L2}\n"));
        assert_eq!(report.items.len(), 1);
        assert!(report.diagnostics.is_empty());
    }

    #[test]
    fn truncated_line_rejects() {
        let report = parse_tle(&format!("{L1}\n{}\n", &L2[..60]));
        assert!(report.items.is_empty());
        assert!(report.diagnostics[0].reason.contains("truncated"));
    }

    #[test]
    fn non_numeric_field_rejects() {
        let mut bad = L2.to_string();
        // Clobber the inclination field, then fix the checksum so the
        // numeric validation is what fires.
        bad.replace_range(8..16, " 53.00xx");
        bad.pop();
        let cs = checksum(&bad);
        bad.push(char::from_digit(cs as u32, 10).unwrap());
        let report = parse_tle(&format!("{L1}\n{bad}\n"));
        assert!(report.items.is_empty());
        assert!(report.diagnostics[0].reason.contains("inclination"));
    }

    #[test]
    fn orphan_lines_produce_diagnostics() {
        let report = parse_tle(&format!("{L1}\n{L1}\n{L2}\n"));
        assert_eq!(report.items.len(), 1);
        assert_eq!(report.rejected_count(), 1);
    }

    #[test]
    fn out_of_band_mean_motion_is_flagged_not_dropped() {
        // A geosynchronous-style mean motion stays in the output with a
        // warning diagnostic.
        let rec = TleRecord {
            mean_motion_rev_day: 1.0027,
            ..sample_record()
        };
        let (l1, l2) = rec.format_lines();
        let report = parse_tle(&format!("{l1}\n{l2}\n"));
        assert_eq!(report.items.len(), 1);
        assert_eq!(report.rejected_count(), 0);
        assert_eq!(report.diagnostics.len(), 1);
        assert!(report.diagnostics[0].reason.contains("LEO band"));
    }

    fn sample_record() -> TleRecord {
        parse_tle(&format!("{L1}\n{L2}\n")).items.pop().unwrap()
    }

    #[test]
    fn format_reproduces_hand_checked_lines() {
        let (l1, l2) = sample_record().format_lines();
        assert_eq!(l1, L1);
        assert_eq!(l2, L2);
    }

    #[test]
    fn exp_field_roundtrip() {
        for v in [0.0, 1e-4, -3.4123e-5, 9.9999e-5, 2.5e-2] {
            let s = format_exp(v);
            assert_eq!(s.len(), 8, "'{s}'");
            let back = parse_exp(&s).unwrap();
            assert!((back - v).abs() <= v.abs() * 1e-5 + 1e-12, "{v} -> '{s}' -> {back}");
        }
    }
}
