//! The truth log emitted alongside synthetic snapshots.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruthShell {
    pub index: usize,
    pub inclination_deg: f64,
    pub altitude_km: f64,
    pub planes: u32,
    pub sats_per_plane: u32,
    pub phasing: u32,
    pub total: u32,
    pub regular_spacing_deg: f64,
    pub delta_phi_deg: f64,
    pub period_s: f64,
    /// True when per-satellite expected classes are exact by construction
    /// (centered clusters, jitter well below the classification tolerance).
    pub classes_exact: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruthSat {
    pub norad_id: u32,
    pub name: String,
    pub shell: usize,
    pub plane: u32,
    pub slot: u32,
    /// Cluster id within the shell for twin/triad members (slot holder
    /// included); `None` for plain slot holders and launched batches.
    pub cluster: Option<u32>,
    /// "REGULAR" / "TWIN_TRIAD" when the shell's classes are exact.
    pub expected_class: Option<String>,
    pub u0_deg: f64,
    pub raan0_deg: f64,
    /// First day present in the catalog (0 for initially deployed).
    pub first_day: u32,
    /// Last day present.
    pub last_day: u32,
    /// First/last day with altitude within 10 km of the shell altitude,
    /// evaluated on the scripted profile.
    pub band_enter_day: Option<u32>,
    pub band_exit_day: Option<u32>,
    /// Day the satellite disappears, when scripted; `None` if it survives
    /// the dataset.
    pub removal_day: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruthManeuver {
    pub norad_id: u32,
    pub start_day: u32,
    /// Inclusive last maneuver day.
    pub end_day: u32,
    pub dh_km_per_day: f64,
    pub du_deg_per_day: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruthLog {
    pub epoch: NaiveDate,
    pub days: u32,
    pub seed: u64,
    pub shells: Vec<TruthShell>,
    pub satellites: Vec<TruthSat>,
    pub maneuvers: Vec<TruthManeuver>,
}

impl TruthLog {
    pub fn date_of(&self, day: u32) -> NaiveDate {
        self.epoch + chrono::Duration::days(day as i64)
    }

    pub fn satellite(&self, norad_id: u32) -> Option<&TruthSat> {
        self.satellites.iter().find(|s| s.norad_id == norad_id)
    }
}
