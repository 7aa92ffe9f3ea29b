//! Kepler's equation and the anomaly conversions built on it.

use super::PropagationError;
use crate::angles::norm360;

const MAX_ITER: usize = 60;
const TOL_RAD: f64 = 1e-13;

/// Solves Kepler's equation M = E - e*sin(E) for the eccentric anomaly, in
/// radians. Newton iteration from E0 = M converges in a handful of steps
/// throughout the near-circular regime this toolkit works in.
pub fn solve_eccentric_anomaly(mean_anomaly_rad: f64, eccentricity: f64) -> Result<f64, PropagationError> {
    let m = mean_anomaly_rad;
    let e = eccentricity;
    let mut big_e = if e < 0.8 { m } else { std::f64::consts::PI };
    for _ in 0..MAX_ITER {
        let f = big_e - e * big_e.sin() - m;
        let fp = 1.0 - e * big_e.cos();
        let step = f / fp;
        big_e -= step;
        if step.abs() < TOL_RAD {
            return Ok(big_e);
        }
    }
    Err(PropagationError::NoConvergence {
        mean_anomaly_deg: m.to_degrees(),
        eccentricity: e,
    })
}

/// True anomaly in degrees `[0, 360)` for the given mean anomaly (degrees)
/// and eccentricity.
pub fn solve_true_anomaly(mean_anomaly_deg: f64, eccentricity: f64) -> Result<f64, PropagationError> {
    if eccentricity == 0.0 {
        return Ok(norm360(mean_anomaly_deg));
    }
    let e_anom = solve_eccentric_anomaly(norm360(mean_anomaly_deg).to_radians(), eccentricity)?;
    let half = e_anom / 2.0;
    let nu = 2.0 * ((1.0 + eccentricity).sqrt() * half.sin()).atan2((1.0 - eccentricity).sqrt() * half.cos());
    Ok(norm360(nu.to_degrees()))
}
