//! leoscope-core: reconstructs the deployed structure and dynamics of a LEO
//! mega-constellation from orbital-element catalogs.
//!
//! The crate is organized as a pipeline over a daily snapshot store:
//!
//! | Module | Responsibility |
//! |--------|----------------|
//! | [`ingest`] | Catalog parsers (TLE, satellite catalog, conjunctions) and the daily snapshot store |
//! | [`orbital`] | Element conversions, propagation backends, phase-aligned reference clocks |
//! | [`shells`] | Shell and orbital-plane detection, population time series, filed-spec comparison |
//! | [`structure`] | Intra-plane spacing, regular/twin-triad classification, Walker parameter estimation |
//! | [`lifecycle`] | Lifecycle phase segmentation and Kaplan-Meier survival analysis |
//! | [`movement`] | Shell-relative maneuver detection, streak grouping, cause classification |
//! | [`netsim`] | Visibility grids, grid/pGrid topologies, routing metrics, link churn |
//! | [`synth`] | Ground-truth synthetic constellations used as the verification oracle |

pub mod angles;
pub mod cluster;
pub mod ingest;
pub mod orbital;
pub mod stats;
pub mod synth;
