//! Mean orbital elements and the quantities derived from them.
//!
//! Everything downstream — shell clustering, intra-plane phase analysis,
//! movement detection, topology building — consumes [`OrbitalState`]
//! values produced here. A single constant set (`MU_EARTH_KM3_S2`,
//! `EARTH_RADIUS_KM`) is used everywhere so altitude thresholds stay
//! consistent between modules.

mod clock;
mod kepler;
mod propagator;

pub use clock::{aligned_ticks, ReferenceClock};
pub use kepler::{solve_eccentric_anomaly, solve_true_anomaly};
pub use propagator::{
    j2_rates_deg_day, propagator_by_name, KeplerPropagator, Propagator, Sgp4Propagator,
};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::norm360;

/// Geocentric gravitational parameter, km^3/s^2.
pub const MU_EARTH_KM3_S2: f64 = 398_600.4418;
/// Equatorial Earth radius, km.
pub const EARTH_RADIUS_KM: f64 = 6_378.137;
/// Speed of light, km/s. Link delays are geometric range over this value.
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;
/// Second zonal harmonic of the geopotential (used by the secular rates of
/// the `kepler-j2` propagator).
pub const J2: f64 = 1.082_626_68e-3;

pub const SECONDS_PER_DAY: f64 = 86_400.0;

#[derive(Debug, Error)]
pub enum PropagationError {
    #[error("satellite {norad_id} decayed: altitude {altitude_km:.1} km below 100 km at {t}")]
    Decayed {
        norad_id: u32,
        altitude_km: f64,
        t: DateTime<Utc>,
    },
    #[error("eccentricity {eccentricity} out of the elliptic range during propagation")]
    Divergent { eccentricity: f64 },
    #[error("Kepler solver did not converge for M={mean_anomaly_deg} deg, e={eccentricity}")]
    NoConvergence {
        mean_anomaly_deg: f64,
        eccentricity: f64,
    },
    #[error("sgp4 initialization failed: {0}")]
    Sgp4(String),
}

/// Mean orbital elements at an epoch, the common currency between the
/// catalog parsers and the propagators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanElements {
    pub norad_id: u32,
    pub epoch: DateTime<Utc>,
    pub inclination_deg: f64,
    pub raan_deg: f64,
    pub eccentricity: f64,
    pub arg_perigee_deg: f64,
    pub mean_anomaly_deg: f64,
    pub mean_motion_rev_day: f64,
    /// Drag term in inverse Earth radii; only the sgp4 backend uses it.
    pub bstar: f64,
}

/// A satellite's state at an instant: the elements plus every derived
/// quantity the analyses need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitalState {
    pub norad_id: u32,
    pub t: DateTime<Utc>,
    pub inclination_deg: f64,
    pub raan_deg: f64,
    pub eccentricity: f64,
    pub arg_perigee_deg: f64,
    pub mean_anomaly_deg: f64,
    pub mean_motion_rev_day: f64,
    pub semi_major_axis_km: f64,
    /// a - R_E; feeds shell clustering.
    pub mean_altitude_km: f64,
    /// a(1+e) - R_E; feeds movement detection.
    pub apogee_altitude_km: f64,
    /// Argument of latitude u = arg_perigee + true anomaly, in [0, 360).
    pub phase_deg: f64,
    pub period_s: f64,
    /// Inertial position, km.
    pub position_km: [f64; 3],
}

/// Semi-major axis from mean motion via Kepler's third law.
pub fn semi_major_axis_km(mean_motion_rev_day: f64) -> f64 {
    let period_s = SECONDS_PER_DAY / mean_motion_rev_day;
    (MU_EARTH_KM3_S2 * (period_s / std::f64::consts::TAU).powi(2)).cbrt()
}

/// Orbital period from semi-major axis, seconds.
pub fn period_from_sma_s(a_km: f64) -> f64 {
    std::f64::consts::TAU * (a_km.powi(3) / MU_EARTH_KM3_S2).sqrt()
}

/// Mean motion in rev/day for a circular orbit at the given mean altitude.
pub fn mean_motion_for_altitude(altitude_km: f64) -> f64 {
    SECONDS_PER_DAY / period_from_sma_s(EARTH_RADIUS_KM + altitude_km)
}

/// Inertial position for a satellite at radius `r_km` with the given
/// orientation angles (all degrees).
pub fn position_from_angles(raan_deg: f64, inclination_deg: f64, u_deg: f64, r_km: f64) -> [f64; 3] {
    let om = raan_deg.to_radians();
    let inc = inclination_deg.to_radians();
    let u = u_deg.to_radians();
    let (sin_u, cos_u) = u.sin_cos();
    let (sin_om, cos_om) = om.sin_cos();
    let (sin_i, cos_i) = inc.sin_cos();
    [
        r_km * (cos_om * cos_u - sin_om * sin_u * cos_i),
        r_km * (sin_om * cos_u + cos_om * sin_u * cos_i),
        r_km * (sin_u * sin_i),
    ]
}

/// Fills in every derived field of [`OrbitalState`] from a set of mean
/// elements at time `t`.
pub fn derive_state(
    norad_id: u32,
    t: DateTime<Utc>,
    inclination_deg: f64,
    raan_deg: f64,
    eccentricity: f64,
    arg_perigee_deg: f64,
    mean_anomaly_deg: f64,
    mean_motion_rev_day: f64,
) -> Result<OrbitalState, PropagationError> {
    if !(0.0..1.0).contains(&eccentricity) {
        return Err(PropagationError::Divergent { eccentricity });
    }
    let a = semi_major_axis_km(mean_motion_rev_day);
    let mean_altitude_km = a - EARTH_RADIUS_KM;
    let apogee_altitude_km = a * (1.0 + eccentricity) - EARTH_RADIUS_KM;
    let m = norm360(mean_anomaly_deg);
    let nu = solve_true_anomaly(m, eccentricity)?;
    let u = norm360(arg_perigee_deg + nu);
    let e_anom = solve_eccentric_anomaly(m.to_radians(), eccentricity)?;
    let r = a * (1.0 - eccentricity * e_anom.cos());
    Ok(OrbitalState {
        norad_id,
        t,
        inclination_deg,
        raan_deg: norm360(raan_deg),
        eccentricity,
        arg_perigee_deg: norm360(arg_perigee_deg),
        mean_anomaly_deg: m,
        mean_motion_rev_day,
        semi_major_axis_km: a,
        mean_altitude_km,
        apogee_altitude_km,
        phase_deg: u,
        period_s: SECONDS_PER_DAY / mean_motion_rev_day,
        position_km: position_from_angles(norm360(raan_deg), inclination_deg, u, r),
    })
}

impl OrbitalState {
    /// Advances this state to time `t` with a two-body mean-anomaly advance.
    ///
    /// Used to evaluate states at phase-aligned reference ticks, which sit
    /// up to half an orbital period away from the stored snapshot instant.
    pub fn advance_two_body(&self, t: DateTime<Utc>) -> Result<OrbitalState, PropagationError> {
        let dt_days = (t - self.t).num_milliseconds() as f64 / 86_400_000.0;
        let m = self.mean_anomaly_deg + self.mean_motion_rev_day * dt_days * 360.0;
        derive_state(
            self.norad_id,
            t,
            self.inclination_deg,
            self.raan_deg,
            self.eccentricity,
            self.arg_perigee_deg,
            m,
            self.mean_motion_rev_day,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    #[test]
    fn sma_closed_form_matches_hand_value() {
        // n = 15 rev/day, e = 0: altitude from the closed form evaluated by
        // hand is about 566.9 km.
        let a = semi_major_axis_km(15.0);
        assert!((a - EARTH_RADIUS_KM - 566.9).abs() < 0.1, "alt {}", a - EARTH_RADIUS_KM);
    }

    #[test]
    fn sma_decreases_with_mean_motion() {
        let mut prev = semi_major_axis_km(10.0);
        for i in 1..=70 {
            let n = 10.0 + 0.1 * i as f64;
            let a = semi_major_axis_km(n);
            assert!(a < prev, "a not strictly decreasing at n={n}");
            prev = a;
        }
    }

    #[test]
    fn derive_zero_ecc_phase_is_argp_plus_m() {
        let t = Utc.with_ymd_and_hms(2025, 8, 1, 12, 0, 0).unwrap();
        let st = derive_state(1, t, 53.0, 120.0, 0.0, 40.0, 300.0, 15.0).unwrap();
        assert!((st.phase_deg - norm360(40.0 + 300.0)).abs() < 1e-9);
        assert_eq!(st.mean_altitude_km, st.apogee_altitude_km);
    }

    #[test]
    fn position_radius_matches_altitude() {
        let t = Utc.with_ymd_and_hms(2025, 8, 1, 12, 0, 0).unwrap();
        for m in [0.0, 45.0, 123.4, 270.0] {
            let st = derive_state(1, t, 53.0, 10.0, 0.0, 0.0, m, 15.0).unwrap();
            let r = (st.position_km[0].powi(2) + st.position_km[1].powi(2) + st.position_km[2].powi(2)).sqrt();
            let expected = EARTH_RADIUS_KM + st.mean_altitude_km;
            assert!((r - expected).abs() / expected < 5e-3);
        }
    }

    #[test]
    fn derive_rejects_hyperbolic() {
        let t = Utc.with_ymd_and_hms(2025, 8, 1, 12, 0, 0).unwrap();
        assert!(derive_state(1, t, 53.0, 0.0, 1.0, 0.0, 0.0, 15.0).is_err());
    }
}
