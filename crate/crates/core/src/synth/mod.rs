//! Ground-truth synthetic constellations.
//!
//! Walker-Delta shells plus scripted maneuvers, deorbits, launches, and
//! conjunctions, generated with analytically known dynamics (Kepler phase
//! advance plus shell-common drift, not a full force model). Every analysis
//! module is verified against the emitted truth log.

mod config;
mod generate;
mod truth;

pub use config::{
    CompanionConfig, ConjunctionConfig, DeorbitConfig, EventsConfig, LaunchConfig, ManeuverConfig,
    NoiseConfig, PlaneSelector, SatRef, ShellConfig, SynthConfig, SynthError,
};
pub use generate::{generate, tle_records_from_tables, SynthOutput};
pub use truth::{TruthLog, TruthManeuver, TruthSat, TruthShell};
