//! Synthetic-constellation configuration.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("shell {0}: phasing F={1} must be below the plane count {2}")]
    InvalidPhasing(usize, u32, u32),
    #[error("shell {0}: needs at least one plane and one satellite per plane")]
    EmptyShell(usize),
    #[error("satellite reference {shell}/{plane}/{slot} does not exist")]
    UnknownSatRef { shell: usize, plane: u32, slot: u32 },
    #[error("satellite {norad_id}: overlapping or contradictory scripted events")]
    OverlappingEvents { norad_id: u32 },
    #[error("launch {0}: needs either a plane index or an explicit RAAN")]
    LaunchNeedsLocation(usize),
    #[error("config needs at least one day")]
    NoDays,
    #[error("could not read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("could not parse config: {0}")]
    Parse(String),
}

/// Per-parameter daily Gaussian noise, applied as random-walk increments.
///
/// Defaults are calibrated so 5-sigma movement detection produces
/// essentially zero false positives on quiet shells.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseConfig {
    pub sigma_u_deg: f64,
    pub sigma_h_km: f64,
    pub sigma_raan_deg: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            sigma_u_deg: 0.02,
            sigma_h_km: 0.05,
            sigma_raan_deg: 0.005,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaneSelector {
    /// Applies to every plane of the shell.
    #[serde(with = "all_literal")]
    All,
    Index(u32),
}

mod all_literal {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("all")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let tag = String::deserialize(d)?;
        if tag == "all" {
            Ok(())
        } else {
            Err(de::Error::custom("expected \"all\""))
        }
    }
}

/// Extra satellites clustered next to a slot holder (twins and triads).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompanionConfig {
    pub plane: PlaneSelector,
    pub slot: u32,
    /// Companion phase offsets from the slot holder, degrees. One offset
    /// makes a twin, two make a triad.
    pub offsets_deg: Vec<f64>,
    /// When set, the whole cluster is shifted so its phase centroid sits on
    /// the grid slot, leaving neighboring gaps on the regular pattern.
    #[serde(default = "default_true")]
    pub centered: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShellConfig {
    pub inclination_deg: f64,
    pub altitude_km: f64,
    pub planes: u32,
    pub sats_per_plane: u32,
    /// Walker phasing parameter F; inter-plane phase offset is 360 F / T.
    pub phasing: u32,
    #[serde(default)]
    pub raan_offset_deg: f64,
    /// Static per-satellite phase jitter, uniform in [-j, +j].
    #[serde(default)]
    pub phase_jitter_deg: f64,
    /// Static per-satellite RAAN jitter, uniform in [-j, +j].
    #[serde(default)]
    pub raan_jitter_deg: f64,
    #[serde(default)]
    pub companions: Vec<CompanionConfig>,
    /// Generation token embedded in catalog names.
    #[serde(default = "default_generation")]
    pub generation: String,
}

fn default_generation() -> String {
    "V2MINI".to_string()
}

impl ShellConfig {
    pub fn total(&self) -> u32 {
        self.planes * self.sats_per_plane
    }

    /// Nominal intra-plane spacing 360 / (satellites per plane).
    pub fn regular_spacing_deg(&self) -> f64 {
        360.0 / self.sats_per_plane as f64
    }

    /// Nominal inter-plane phase offset 360 F / T.
    pub fn delta_phi_deg(&self) -> f64 {
        360.0 * self.phasing as f64 / self.total() as f64
    }
}

/// Addresses the slot holder of (shell, plane, slot).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatRef {
    pub shell: usize,
    pub plane: u32,
    pub slot: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManeuverConfig {
    pub sat: SatRef,
    pub start_day: u32,
    pub duration_days: u32,
    /// Apogee-altitude change applied on each maneuver day, km. Persists
    /// after the maneuver and feeds back into the phase drift through the
    /// changed period.
    #[serde(default)]
    pub dh_km_per_day: f64,
    /// In-plane phase change applied on each maneuver day, degrees.
    #[serde(default)]
    pub du_deg_per_day: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeorbitConfig {
    pub sat: SatRef,
    pub start_day: u32,
    /// Days of descent before the satellite disappears from the catalog.
    /// Zero removes it outright on `start_day`.
    pub descent_days: u32,
    #[serde(default = "default_descent_rate")]
    pub descent_km_per_day: f64,
}

fn default_descent_rate() -> f64 {
    2.5
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaunchConfig {
    pub shell: usize,
    pub day: u32,
    pub count: u32,
    /// Target plane of the shell; mutually optional with `raan_deg`.
    #[serde(default)]
    pub plane: Option<u32>,
    /// Explicit RAAN for batches inserted between nominal planes.
    #[serde(default)]
    pub raan_deg: Option<f64>,
    #[serde(default)]
    pub base_phase_deg: f64,
    #[serde(default = "default_batch_spacing")]
    pub spacing_deg: f64,
    /// Insertion altitude; defaults to the shell altitude (no ascent).
    #[serde(default)]
    pub insertion_altitude_km: Option<f64>,
    #[serde(default = "default_climb_rate")]
    pub climb_km_per_day: f64,
}

fn default_batch_spacing() -> f64 {
    1.0
}

fn default_climb_rate() -> f64 {
    4.0
}

/// A scripted conjunction-report row for classification scenarios.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjunctionConfig {
    pub sat: SatRef,
    /// Catalog id of the other object (typically debris outside the
    /// constellation).
    pub other_id: u32,
    /// Time of closest approach, days after the epoch (fractional).
    pub day_offset: f64,
    pub max_probability: f64,
    #[serde(default = "default_miss")]
    pub miss_km: f64,
}

fn default_miss() -> f64 {
    1.0
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct EventsConfig {
    pub maneuvers: Vec<ManeuverConfig>,
    pub deorbits: Vec<DeorbitConfig>,
    pub launches: Vec<LaunchConfig>,
    pub conjunctions: Vec<ConjunctionConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthConfig {
    /// Calendar date of day 0.
    pub epoch: NaiveDate,
    pub days: u32,
    pub seed: u64,
    #[serde(default = "default_base_norad")]
    pub base_norad_id: u32,
    #[serde(default)]
    pub noise: NoiseConfig,
    pub shells: Vec<ShellConfig>,
    #[serde(default)]
    pub events: EventsConfig,
}

fn default_base_norad() -> u32 {
    50_000
}

impl SynthConfig {
    /// Loads a config from a YAML or JSON file, decided by extension.
    pub fn from_path(path: impl AsRef<std::path::Path>) -> Result<Self, SynthError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let is_json = path.extension().is_some_and(|e| e == "json");
        if is_json {
            serde_json::from_str(&text).map_err(|e| SynthError::Parse(e.to_string()))
        } else {
            serde_yaml::from_str(&text).map_err(|e| SynthError::Parse(e.to_string()))
        }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.days == 0 {
            return Err(SynthError::NoDays);
        }
        for (i, shell) in self.shells.iter().enumerate() {
            if shell.planes == 0 || shell.sats_per_plane == 0 {
                return Err(SynthError::EmptyShell(i));
            }
            if shell.phasing >= shell.planes {
                return Err(SynthError::InvalidPhasing(i, shell.phasing, shell.planes));
            }
        }
        for (i, launch) in self.events.launches.iter().enumerate() {
            if launch.plane.is_none() && launch.raan_deg.is_none() {
                return Err(SynthError::LaunchNeedsLocation(i));
            }
        }
        Ok(())
    }
}
