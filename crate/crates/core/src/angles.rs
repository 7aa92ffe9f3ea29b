//! Circular-angle helpers shared across the analysis modules.
//!
//! Orbital phase, RAAN, and anomalies all live on the circle; naive
//! subtraction across the 0/360 seam produces bogus statistics. Every
//! module routes angle arithmetic through these functions.

/// Normalizes an angle in degrees to `[0, 360)`.
pub fn norm360(deg: f64) -> f64 {
    let mut r = deg % 360.0;
    if r < 0.0 {
        r += 360.0;
    }
    // `-1e-17 % 360 + 360` rounds to 360.0 exactly.
    if r >= 360.0 {
        r = 0.0;
    }
    r
}

/// Folds an angle in degrees to `[-180, 180)`.
pub fn fold180(deg: f64) -> f64 {
    norm360(deg + 180.0) - 180.0
}

/// Signed smallest rotation from `b` to `a`, in `[-180, 180)`.
pub fn circ_diff(a: f64, b: f64) -> f64 {
    fold180(a - b)
}

/// Unsigned circular distance between two angles, in `[0, 180]`.
pub fn circ_dist(a: f64, b: f64) -> f64 {
    circ_diff(a, b).abs()
}

/// Folds a value into `[0, modulus)`. Used for phase offsets that are only
/// observable modulo the slot spacing.
pub fn fold_mod(value: f64, modulus: f64) -> f64 {
    let mut r = value % modulus;
    if r < 0.0 {
        r += modulus;
    }
    if r >= modulus {
        r = 0.0;
    }
    r
}

/// Distance between two values on a circle of the given period.
pub fn circ_dist_mod(a: f64, b: f64, period: f64) -> f64 {
    let d = fold_mod(a - b, period);
    d.min(period - d)
}

/// Circular mean of angles in degrees, in `[0, 360)`.
///
/// Returns `None` for an empty slice or when the mean resultant vector is
/// numerically zero (antipodal inputs have no meaningful mean).
pub fn circ_mean(degs: &[f64]) -> Option<f64> {
    if degs.is_empty() {
        return None;
    }
    let (mut s, mut c) = (0.0, 0.0);
    for &d in degs {
        let r = d.to_radians();
        s += r.sin();
        c += r.cos();
    }
    let norm = (s * s + c * c).sqrt() / degs.len() as f64;
    if norm < 1e-12 {
        return None;
    }
    Some(norm360(s.atan2(c).to_degrees()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm360_covers_seam() {
        assert_eq!(norm360(0.0), 0.0);
        assert_eq!(norm360(360.0), 0.0);
        assert_eq!(norm360(-90.0), 270.0);
        assert_eq!(norm360(725.0), 5.0);
        let v = norm360(-1e-17);
        assert!((0.0..360.0).contains(&v));
    }

    #[test]
    fn circ_diff_wraps() {
        assert_eq!(circ_diff(359.5, -0.5), 0.0);
        assert!((circ_diff(0.1, 359.9) - 0.2).abs() < 1e-9);
        assert!((circ_diff(10.0, 350.0) - 20.0).abs() < 1e-12);
        assert!((circ_diff(350.0, 10.0) + 20.0).abs() < 1e-12);
    }

    #[test]
    fn fold_mod_stays_in_range() {
        assert!((fold_mod(-7.5, 20.0) - 12.5).abs() < 1e-12);
        assert!((fold_mod(45.1, 20.0) - 5.1).abs() < 1e-12);
        assert_eq!(fold_mod(0.0, 20.0), 0.0);
    }

    #[test]
    fn circ_mean_basic() {
        let m = circ_mean(&[359.0, 1.0]).unwrap();
        assert!(m < 1e-9 || (360.0 - m) < 1e-9);
        assert!(circ_mean(&[]).is_none());
    }
}
