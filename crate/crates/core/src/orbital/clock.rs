//! Phase-aligned daily reference clocks.
//!
//! Comparing satellite states across days at a fixed wall-clock time mixes
//! orbital phase into every difference. Advancing the comparison instant by
//! an integer number of orbital periods per day keeps satellites of a shell
//! at (nearly) the same phase on every tick.

use chrono::{DateTime, Duration, Utc};

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceClock {
    pub shell_period_s: f64,
    pub start: DateTime<Utc>,
    pub ticks: Vec<DateTime<Utc>>,
}

/// Builds `n_days` reference ticks starting at `start`, each subsequent tick
/// advanced by the integer multiple of `shell_period_s` closest to 24 h.
pub fn aligned_ticks(shell_period_s: f64, start: DateTime<Utc>, n_days: usize) -> ReferenceClock {
    assert!(shell_period_s > 0.0, "period must be positive");
    assert!(n_days >= 1, "need at least one tick");
    let m = best_multiple(shell_period_s);
    let gap_ns = (m as f64 * shell_period_s * 1e9).round() as i64;
    let mut ticks = Vec::with_capacity(n_days);
    let mut t = start;
    for _ in 0..n_days {
        ticks.push(t);
        t += Duration::nanoseconds(gap_ns);
    }
    ReferenceClock {
        shell_period_s,
        start,
        ticks,
    }
}

/// The positive integer m minimizing |m * period - 86400 s|; ties resolve to
/// the smaller m.
fn best_multiple(period_s: f64) -> u32 {
    let lo = (86_400.0 / period_s).floor().max(1.0) as u32;
    let hi = lo + 1;
    let err = |m: u32| (m as f64 * period_s - 86_400.0).abs();
    if err(lo) <= err(hi) {
        lo
    } else {
        hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    fn start() -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2025, 8, 1, 12, 0, 0).unwrap()
    }

    #[test]
    fn period_dividing_day_gives_exact_day_gaps() {
        // 5760 s is exactly 15 rev/day.
        let clock = aligned_ticks(5760.0, start(), 4);
        for w in clock.ticks.windows(2) {
            assert_eq!(w[1] - w[0], Duration::seconds(86_400));
        }
    }

    #[test]
    fn multiple_minimizes_against_exhaustive_search() {
        for period in [4801.0, 5700.0, 5755.2, 6123.4, 7999.0] {
            let m = best_multiple(period);
            let best = (1..=20u32)
                .min_by(|a, b| {
                    let ea = (*a as f64 * period - 86_400.0).abs();
                    let eb = (*b as f64 * period - 86_400.0).abs();
                    ea.partial_cmp(&eb).unwrap()
                })
                .unwrap();
            assert_eq!(m, best, "period {period}");
        }
        // 5700 s: m = 15 and the daily gap is 85 500 s.
        let clock = aligned_ticks(5700.0, start(), 3);
        assert_eq!(clock.ticks[1] - clock.ticks[0], Duration::seconds(85_500));
    }

    #[test]
    fn tick_count_matches_days() {
        assert_eq!(aligned_ticks(5760.0, start(), 2).ticks.len(), 2);
    }
}
