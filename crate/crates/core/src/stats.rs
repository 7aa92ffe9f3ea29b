//! Small statistics helpers (median, spread, histogram modes).

/// Median of a slice. Returns `None` on empty input; averages the middle
/// pair for even lengths.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v: Vec<f64> = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        Some(v[n / 2])
    } else {
        Some((v[n / 2 - 1] + v[n / 2]) / 2.0)
    }
}

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(values.iter().sum::<f64>() / values.len() as f64)
}

/// Sample standard deviation (n-1 denominator). Zero for fewer than two
/// samples.
pub fn sample_std(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (n - 1) as f64).sqrt()
}

/// Median absolute deviation scaled to be consistent with the standard
/// deviation of a normal distribution (factor 1.4826).
pub fn mad_std(values: &[f64]) -> f64 {
    let Some(med) = median(values) else {
        return 0.0;
    };
    let devs: Vec<f64> = values.iter().map(|v| (v - med).abs()).collect();
    median(&devs).map(|m| 1.4826 * m).unwrap_or(0.0)
}

/// Center of the highest-mass bin of a fixed-width histogram over `values`.
///
/// Bins are aligned at multiples of `bin_width` starting from zero; ties go
/// to the lowest bin so the result does not depend on input order. Returns
/// `None` on empty input.
pub fn mode_bin_center(values: &[f64], bin_width: f64) -> Option<f64> {
    if values.is_empty() || bin_width <= 0.0 {
        return None;
    }
    use std::collections::BTreeMap;
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in values {
        let idx = (v / bin_width).floor() as i64;
        *counts.entry(idx).or_insert(0) += 1;
    }
    let (&best, _) = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))?;
    Some((best as f64 + 0.5) * bin_width)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn std_of_constant_is_zero() {
        assert_eq!(sample_std(&[5.0, 5.0, 5.0]), 0.0);
        assert_eq!(sample_std(&[5.0]), 0.0);
    }

    #[test]
    fn mode_picks_heaviest_bin() {
        let vals = [20.0, 20.1, 19.9, 20.2, 5.0, 15.0];
        let m = mode_bin_center(&vals, 0.5).unwrap();
        assert!((19.5..=20.5).contains(&m), "mode {m}");
    }

    #[test]
    fn mode_tie_breaks_low() {
        // One value in [1.0, 1.5), one in [2.0, 2.5): tie resolves to the
        // lower bin regardless of input order.
        assert_eq!(mode_bin_center(&[2.2, 1.2], 0.5), Some(1.25));
        assert_eq!(mode_bin_center(&[1.2, 2.2], 0.5), Some(1.25));
    }
}
