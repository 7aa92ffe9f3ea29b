//! Daily state materialization: one propagated state per satellite per day.
//!
//! The daily reference instant is 12:00 UTC. For each satellite and date,
//! the record whose epoch is nearest to that instant (within the fallback
//! window) is propagated there; satellites with no record in the window
//! are simply absent for that date.

use std::collections::BTreeMap;

use chrono::{DateTime, Duration, NaiveDate, Utc};
use rayon::prelude::*;

use super::{Diagnostic, TleRecord};
use crate::orbital::{OrbitalState, Propagator};

pub const DEFAULT_FALLBACK_WINDOW_HOURS: f64 = 72.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DailyRow {
    pub norad_id: u32,
    pub source_epoch: DateTime<Utc>,
    /// |reference instant - source epoch| in hours.
    pub age_hours: f64,
    pub state: OrbitalState,
}

/// All satellite states for one calendar date, at 12:00 UTC.
#[derive(Debug, Clone, PartialEq)]
pub struct DailyStateTable {
    pub date: NaiveDate,
    pub rows: Vec<DailyRow>,
}

impl DailyStateTable {
    pub fn reference_instant(date: NaiveDate) -> DateTime<Utc> {
        date.and_hms_opt(12, 0, 0).unwrap().and_utc()
    }

    pub fn get(&self, norad_id: u32) -> Option<&DailyRow> {
        self.rows
            .binary_search_by_key(&norad_id, |r| r.norad_id)
            .ok()
            .map(|i| &self.rows[i])
    }
}

/// Materializes one [`DailyStateTable`] per date in the inclusive range.
///
/// Deterministic and independent of input record order: records are grouped
/// by catalog id and sorted by epoch before selection, and nearest-epoch
/// ties resolve to the earlier record.
pub fn build_daily_states(
    records: &[TleRecord],
    from: NaiveDate,
    to: NaiveDate,
    fallback_window_hours: f64,
    propagator: &dyn Propagator,
) -> (Vec<DailyStateTable>, Vec<Diagnostic>) {
    assert!(fallback_window_hours > 0.0, "fallback window must be positive");
    let mut by_sat: BTreeMap<u32, Vec<&TleRecord>> = BTreeMap::new();
    for r in records {
        by_sat.entry(r.norad_id).or_default().push(r);
    }
    for recs in by_sat.values_mut() {
        recs.sort_by(|a, b| {
            a.epoch()
                .cmp(&b.epoch())
                .then_with(|| a.element_set_number.cmp(&b.element_set_number))
                .then_with(|| a.rev_number.cmp(&b.rev_number))
        });
        recs.dedup_by(|a, b| a == b);
    }

    let dates: Vec<NaiveDate> = from.iter_days().take_while(|d| *d <= to).collect();
    let window = Duration::nanoseconds((fallback_window_hours * 3600.0 * 1e9) as i64);

    let per_date: Vec<(DailyStateTable, Vec<Diagnostic>)> = dates
        .par_iter()
        .map(|&date| {
            let target = DailyStateTable::reference_instant(date);
            let mut rows = Vec::new();
            let mut diagnostics = Vec::new();
            for (&norad_id, recs) in &by_sat {
                let Some(best) = nearest_record(recs, target, window) else {
                    continue;
                };
                match propagator.propagate(&best.elements(), target) {
                    Ok(state) => {
                        let age = target - best.epoch();
                        rows.push(DailyRow {
                            norad_id,
                            source_epoch: best.epoch(),
                            age_hours: age.num_milliseconds().abs() as f64 / 3_600_000.0,
                            state,
                        });
                    }
                    Err(e) => diagnostics.push(Diagnostic::warn(
                        0,
                        format!("satellite {norad_id} omitted on {date}: {e}"),
                    )),
                }
            }
            (DailyStateTable { date, rows }, diagnostics)
        })
        .collect();

    let mut tables = Vec::with_capacity(per_date.len());
    let mut diagnostics = Vec::new();
    for (t, d) in per_date {
        tables.push(t);
        diagnostics.extend(d);
    }
    (tables, diagnostics)
}

fn nearest_record<'a>(
    sorted: &[&'a TleRecord],
    target: DateTime<Utc>,
    window: Duration,
) -> Option<&'a TleRecord> {
    let idx = sorted.partition_point(|r| r.epoch() <= target);
    let mut best: Option<(&TleRecord, Duration)> = None;
    // Candidates are the last record at/before the target and the first
    // after; earlier epoch wins distance ties.
    for cand in [idx.checked_sub(1).map(|i| sorted[i]), sorted.get(idx).copied()]
        .into_iter()
        .flatten()
    {
        let dist = (target - cand.epoch()).abs();
        let better = match best {
            None => true,
            Some((_, d)) => dist < d,
        };
        if better {
            best = Some((cand, dist));
        }
    }
    best.filter(|(_, d)| *d <= window).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbital::KeplerPropagator;

    fn record(norad: u32, epoch_year: i32, epoch_day: f64) -> TleRecord {
        TleRecord {
            norad_id: norad,
            classification: 'U',
            intl_designator: "19074A".into(),
            epoch_year,
            epoch_day,
            mean_motion_dot: 0.0,
            mean_motion_ddot: 0.0,
            bstar: 0.0,
            element_set_number: 1,
            inclination_deg: 53.0,
            raan_deg: 100.0,
            eccentricity: 0.0001,
            arg_perigee_deg: 90.0,
            mean_anomaly_deg: 10.0,
            mean_motion_rev_day: 15.05,
            rev_number: 1,
            line1_checksum: 0,
            line2_checksum: 0,
        }
    }

    fn date(s: &str) -> NaiveDate {
        s.parse().unwrap()
    }

    #[test]
    fn nearest_epoch_wins_within_window() {
        // Epochs at d-1 06:00 (day 212.25) and d+2 00:00 (day 216.0) around
        // d = 2025-08-01 (day 213). The d-1 record is 30 h away, the later
        // one 60 h: the earlier one must be chosen.
        let records = vec![record(1, 2025, 212.25), record(1, 2025, 216.0)];
        let prop = KeplerPropagator::two_body();
        let (tables, diags) =
            build_daily_states(&records, date("2025-08-01"), date("2025-08-01"), 72.0, &prop);
        assert!(diags.is_empty());
        assert_eq!(tables.len(), 1);
        assert_eq!(tables[0].rows.len(), 1);
        assert!((tables[0].rows[0].age_hours - 30.0).abs() < 1e-9);
    }

    #[test]
    fn no_record_in_window_means_absent() {
        let records = vec![record(1, 2025, 205.0)]; // 8 days before
        let prop = KeplerPropagator::two_body();
        let (tables, _) =
            build_daily_states(&records, date("2025-08-01"), date("2025-08-01"), 72.0, &prop);
        assert!(tables[0].rows.is_empty());
    }

    #[test]
    fn independent_of_input_order() {
        let mut records = vec![
            record(2, 2025, 213.1),
            record(1, 2025, 213.4),
            record(1, 2025, 212.9),
            record(3, 2025, 213.5),
        ];
        let prop = KeplerPropagator::two_body();
        let (a, _) = build_daily_states(&records, date("2025-08-01"), date("2025-08-02"), 72.0, &prop);
        records.reverse();
        let (b, _) = build_daily_states(&records, date("2025-08-01"), date("2025-08-02"), 72.0, &prop);
        assert_eq!(a, b);
    }

    #[test]
    fn row_count_bounded_by_distinct_ids() {
        let records = vec![record(1, 2025, 213.0), record(1, 2025, 213.2), record(2, 2025, 213.0)];
        let prop = KeplerPropagator::two_body();
        let (tables, _) =
            build_daily_states(&records, date("2025-08-01"), date("2025-08-03"), 72.0, &prop);
        for t in &tables {
            assert!(t.rows.len() <= 2);
        }
    }
}
