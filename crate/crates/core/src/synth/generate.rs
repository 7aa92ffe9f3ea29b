//! Walker-Delta constellation generation with scripted events.
//!
//! Dynamics are Kepler phase advance plus shell-common RAAN drift, with
//! per-satellite Gaussian random-walk noise. An analytically known
//! trajectory keeps the truth log exact; the analyses only ever consume
//! relative in-shell behavior.

use std::collections::BTreeMap;
use std::io::Write;

use chrono::{Duration, NaiveDate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use super::config::*;
use super::truth::*;
use crate::angles::norm360;
use crate::ingest::{ConjunctionEvent, DailyRow, DailyStateTable, SatCatEntry, SnapshotStore, TleRecord};
use crate::orbital::{
    derive_state, j2_rates_deg_day, mean_motion_for_altitude, period_from_sma_s, semi_major_axis_km,
    EARTH_RADIUS_KM,
};

/// Altitude band (km) around the shell altitude used for the truth log's
/// operational-phase days; matches the lifecycle segmentation margin.
const BAND_KM: f64 = 10.0;
/// Descent altitude floor; satellites stop descending here until removal.
const DESCENT_FLOOR_KM: f64 = 160.0;

#[derive(Debug, Clone)]
pub struct SynthOutput {
    pub tables: Vec<DailyStateTable>,
    pub satcat: Vec<SatCatEntry>,
    pub conjunctions: Vec<ConjunctionEvent>,
    pub truth: TruthLog,
}

#[derive(Debug, Clone)]
struct ResolvedManeuver {
    start_day: u32,
    duration_days: u32,
    dh_km_per_day: f64,
    du_deg_per_day: f64,
}

impl ResolvedManeuver {
    fn active_on(&self, day: u32) -> bool {
        day >= self.start_day && day < self.start_day + self.duration_days
    }

    /// Number of maneuver days executed up to and including `day`.
    fn days_applied(&self, day: u32) -> u32 {
        if day < self.start_day {
            0
        } else {
            (day - self.start_day + 1).min(self.duration_days)
        }
    }
}

#[derive(Debug, Clone)]
struct SatModel {
    norad: u32,
    name: String,
    shell: usize,
    plane: Option<u32>,
    slot: Option<u32>,
    cluster: Option<u32>,
    u0: f64,
    raan0: f64,
    first_day: u32,
    /// First absent day, when scripted.
    removal_day: Option<u32>,
    ascent: Option<(f64, f64)>, // (insertion altitude, climb rate km/day)
    descent: Option<(u32, f64)>, // (start day, rate km/day)
    maneuvers: Vec<ResolvedManeuver>,
}

impl SatModel {
    fn last_day(&self, days: u32) -> Option<u32> {
        let natural_last = days - 1;
        match self.removal_day {
            Some(r) if r <= self.first_day => None,
            Some(r) => Some((r - 1).min(natural_last)),
            None => Some(natural_last),
        }
    }

    /// Scripted altitude on `day`, noise excluded.
    fn profile_alt(&self, shell_alt: f64, day: u32) -> f64 {
        let mut alt = match self.ascent {
            Some((insertion, rate)) => {
                (insertion + rate * (day - self.first_day) as f64).min(shell_alt)
            }
            None => shell_alt,
        };
        if let Some((start, rate)) = self.descent {
            if day >= start {
                alt = (shell_alt - rate * (day - start + 1) as f64).max(DESCENT_FLOOR_KM);
            }
        }
        for m in &self.maneuvers {
            alt += m.dh_km_per_day * m.days_applied(day) as f64;
        }
        alt
    }

    /// Scripted phase increment applied on the transition into `day`.
    fn du_script(&self, day: u32) -> f64 {
        self.maneuvers
            .iter()
            .filter(|m| m.active_on(day))
            .map(|m| m.du_deg_per_day)
            .sum()
    }

    fn maneuver_on(&self, day: u32, altitude: bool) -> bool {
        self.maneuvers.iter().any(|m| {
            m.active_on(day)
                && if altitude {
                    m.dh_km_per_day != 0.0
                } else {
                    m.du_deg_per_day != 0.0
                }
        })
    }
}

fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn uniform_jitter(rng: &mut ChaCha12Rng, magnitude: f64) -> f64 {
    let x: f64 = rng.gen();
    magnitude * (2.0 * x - 1.0)
}

/// Generates the daily snapshot tables, catalog metadata, conjunction rows,
/// and the truth log for a config.
pub fn generate(config: &SynthConfig) -> Result<SynthOutput, SynthError> {
    config.validate()?;

    let mut sats: Vec<SatModel> = Vec::new();
    let mut norad = config.base_norad_id;
    // (shell, plane, slot) -> index into `sats`, for event resolution.
    let mut slot_index: BTreeMap<(usize, u32, u32), usize> = BTreeMap::new();
    // Jittered slot positions recorded during placement for companions.
    let mut slot_positions: BTreeMap<(usize, u32, u32), (f64, f64)> = BTreeMap::new();

    for (si, shell) in config.shells.iter().enumerate() {
        let mut placement_rng = ChaCha12Rng::seed_from_u64(mix(config.seed, 1_000 + si as u64));
        let delta_phi = shell.delta_phi_deg();
        for p in 0..shell.planes {
            let raan_plane = norm360(360.0 * p as f64 / shell.planes as f64 + shell.raan_offset_deg);
            for k in 0..shell.sats_per_plane {
                let u_slot = norm360(
                    360.0 * k as f64 / shell.sats_per_plane as f64 + delta_phi * p as f64,
                );
                let u_jit = uniform_jitter(&mut placement_rng, shell.phase_jitter_deg);
                let raan_jit = uniform_jitter(&mut placement_rng, shell.raan_jitter_deg);
                let u_pos = norm360(u_slot + u_jit);
                let raan_pos = norm360(raan_plane + raan_jit);
                slot_positions.insert((si, p, k), (u_pos, raan_pos));
                slot_index.insert((si, p, k), sats.len());
                sats.push(SatModel {
                    norad,
                    name: format!("SYN-{norad} {}", shell.generation),
                    shell: si,
                    plane: Some(p),
                    slot: Some(k),
                    cluster: None,
                    u0: u_pos,
                    raan0: raan_pos,
                    first_day: 0,
                    removal_day: None,
                    ascent: None,
                    descent: None,
                    maneuvers: Vec::new(),
                });
                norad += 1;
            }
        }
    }

    // Companion clusters. Offsets from every config targeting a slot merge
    // into one cluster around that slot; centered clusters shift so the
    // member centroid lands on the slot position.
    let mut cluster_members: BTreeMap<(usize, u32, u32), (Vec<f64>, bool)> = BTreeMap::new();
    for (si, shell) in config.shells.iter().enumerate() {
        for comp in &shell.companions {
            let planes: Vec<u32> = match comp.plane {
                PlaneSelector::All => (0..shell.planes).collect(),
                PlaneSelector::Index(p) => vec![p],
            };
            for p in planes {
                let key = (si, p, comp.slot);
                if !slot_index.contains_key(&key) {
                    return Err(SynthError::UnknownSatRef {
                        shell: si,
                        plane: p,
                        slot: comp.slot,
                    });
                }
                let entry = cluster_members.entry(key).or_insert_with(|| (Vec::new(), true));
                entry.0.extend_from_slice(&comp.offsets_deg);
                entry.1 &= comp.centered;
            }
        }
    }
    let mut next_cluster: BTreeMap<usize, u32> = BTreeMap::new();
    for (&(si, p, k), (offsets, centered)) in &cluster_members {
        let cluster_id = {
            let c = next_cluster.entry(si).or_insert(0);
            let id = *c;
            *c += 1;
            id
        };
        let (u_pos, raan_pos) = slot_positions[&(si, p, k)];
        let shift = if *centered {
            let sum: f64 = offsets.iter().sum();
            -sum / (offsets.len() + 1) as f64
        } else {
            0.0
        };
        let host_idx = slot_index[&(si, p, k)];
        sats[host_idx].cluster = Some(cluster_id);
        sats[host_idx].u0 = norm360(u_pos + shift);
        for &off in offsets.iter() {
            sats.push(SatModel {
                norad,
                name: format!("SYN-{norad} {}", config.shells[si].generation),
                shell: si,
                plane: Some(p),
                slot: Some(k),
                cluster: Some(cluster_id),
                u0: norm360(u_pos + shift + off),
                raan0: raan_pos,
                first_day: 0,
                removal_day: None,
                ascent: None,
                descent: None,
                maneuvers: Vec::new(),
            });
            norad += 1;
        }
    }

    // Launched batches.
    for launch in &config.events.launches {
        let shell = &config.shells[launch.shell];
        let raan = match (launch.raan_deg, launch.plane) {
            (Some(r), _) => norm360(r),
            (None, Some(p)) => {
                norm360(360.0 * p as f64 / shell.planes as f64 + shell.raan_offset_deg)
            }
            (None, None) => unreachable!("validated"),
        };
        for i in 0..launch.count {
            sats.push(SatModel {
                norad,
                name: format!("SYN-{norad} {}", shell.generation),
                shell: launch.shell,
                plane: launch.plane,
                slot: None,
                cluster: None,
                u0: norm360(launch.base_phase_deg + i as f64 * launch.spacing_deg),
                raan0: raan,
                first_day: launch.day,
                removal_day: None,
                ascent: launch
                    .insertion_altitude_km
                    .map(|alt| (alt, launch.climb_km_per_day)),
                descent: None,
                maneuvers: Vec::new(),
            });
            norad += 1;
        }
    }

    // Scripted per-satellite events.
    let resolve = |sat: &SatRef| -> Result<usize, SynthError> {
        slot_index
            .get(&(sat.shell, sat.plane, sat.slot))
            .copied()
            .ok_or(SynthError::UnknownSatRef {
                shell: sat.shell,
                plane: sat.plane,
                slot: sat.slot,
            })
    };
    let mut truth_maneuvers = Vec::new();
    for m in &config.events.maneuvers {
        let idx = resolve(&m.sat)?;
        sats[idx].maneuvers.push(ResolvedManeuver {
            start_day: m.start_day,
            duration_days: m.duration_days,
            dh_km_per_day: m.dh_km_per_day,
            du_deg_per_day: m.du_deg_per_day,
        });
        truth_maneuvers.push(TruthManeuver {
            norad_id: sats[idx].norad,
            start_day: m.start_day,
            end_day: m.start_day + m.duration_days.saturating_sub(1),
            dh_km_per_day: m.dh_km_per_day,
            du_deg_per_day: m.du_deg_per_day,
        });
    }
    for d in &config.events.deorbits {
        let idx = resolve(&d.sat)?;
        sats[idx].removal_day = Some(d.start_day + d.descent_days);
        if d.descent_days > 0 {
            sats[idx].descent = Some((d.start_day, d.descent_km_per_day));
        }
    }
    for sat in &sats {
        let mut intervals: Vec<(u32, u32)> = sat
            .maneuvers
            .iter()
            .map(|m| (m.start_day, m.start_day + m.duration_days))
            .collect();
        if let Some((start, _)) = sat.descent {
            intervals.push((start, u32::MAX));
        }
        intervals.sort();
        if intervals.windows(2).any(|w| w[1].0 < w[0].1) {
            return Err(SynthError::OverlappingEvents { norad_id: sat.norad });
        }
    }

    // Daily state tables, one satellite trajectory at a time.
    let days = config.days;
    let mut rows_per_day: Vec<Vec<DailyRow>> = vec![Vec::new(); days as usize];
    let shell_raan_rate: Vec<f64> = config
        .shells
        .iter()
        .map(|s| {
            let a = EARTH_RADIUS_KM + s.altitude_km;
            let n = mean_motion_for_altitude(s.altitude_km);
            j2_rates_deg_day(a, 0.0, s.inclination_deg, n).0
        })
        .collect();

    for sat in &sats {
        let Some(last) = sat.last_day(days) else {
            continue;
        };
        if sat.first_day >= days {
            continue;
        }
        let shell = &config.shells[sat.shell];
        let mut rng = ChaCha12Rng::seed_from_u64(mix(config.seed, sat.norad as u64));
        let mut u = sat.u0;
        let mut raan = sat.raan0;
        let mut walk_h = 0.0;
        for day in sat.first_day..=last.min(days - 1) {
            if day > sat.first_day {
                let eu: f64 = rng.sample(StandardNormal);
                let eh: f64 = rng.sample(StandardNormal);
                let eo: f64 = rng.sample(StandardNormal);
                let prev_alt = sat.profile_alt(shell.altitude_km, day - 1);
                let mut du = 360.0 * mean_motion_for_altitude(prev_alt) + sat.du_script(day);
                // A burn dominates that day's estimation noise.
                if !sat.maneuver_on(day, false) {
                    du += eu * config.noise.sigma_u_deg;
                }
                if !sat.maneuver_on(day, true) {
                    walk_h += eh * config.noise.sigma_h_km;
                }
                u = norm360(u + du);
                raan = norm360(raan + shell_raan_rate[sat.shell] + eo * config.noise.sigma_raan_deg);
            }
            let alt = sat.profile_alt(shell.altitude_km, day) + walk_h;
            let n = mean_motion_for_altitude(alt);
            let t = DailyStateTable::reference_instant(config.epoch + Duration::days(day as i64));
            let state = derive_state(sat.norad, t, shell.inclination_deg, raan, 0.0, 0.0, u, n)
                .expect("synthetic elements are always elliptic");
            rows_per_day[day as usize].push(DailyRow {
                norad_id: sat.norad,
                source_epoch: t,
                age_hours: 0.0,
                state,
            });
        }
    }

    let tables: Vec<DailyStateTable> = rows_per_day
        .into_iter()
        .enumerate()
        .map(|(d, mut rows)| {
            rows.sort_by_key(|r| r.norad_id);
            DailyStateTable {
                date: config.epoch + Duration::days(d as i64),
                rows,
            }
        })
        .collect();

    // Catalog metadata.
    let satcat: Vec<SatCatEntry> = sats
        .iter()
        .filter(|s| s.first_day < days && s.last_day(days).is_some())
        .map(|s| SatCatEntry {
            norad_id: s.norad,
            object_name: s.name.clone(),
            launch_date: config.epoch + Duration::days(s.first_day as i64),
            decay_date: s
                .removal_day
                .filter(|&r| r <= days - 1)
                .map(|r| config.epoch + Duration::days(r as i64)),
        })
        .collect();

    // Scripted conjunction rows, sorted by TCA.
    let mut conjunctions = Vec::new();
    for c in &config.events.conjunctions {
        let idx = resolve(&c.sat)?;
        let tca = config.epoch.and_hms_opt(0, 0, 0).unwrap().and_utc()
            + Duration::nanoseconds((c.day_offset * 86_400.0 * 1e9).round() as i64);
        conjunctions.push(ConjunctionEvent {
            sat1_id: sats[idx].norad,
            sat2_id: c.other_id,
            tca,
            max_probability: c.max_probability,
            miss_distance_km: c.miss_km,
        });
    }
    conjunctions.sort_by(|a, b| (a.tca, a.sat1_id, a.sat2_id).cmp(&(b.tca, b.sat1_id, b.sat2_id)));

    // Truth log.
    let truth_shells: Vec<TruthShell> = config
        .shells
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let centered_ok = cluster_members
                .iter()
                .filter(|((si, _, _), _)| *si == i)
                .all(|(_, (offsets, centered))| *centered && offsets.len() <= 2);
            TruthShell {
                index: i,
                inclination_deg: s.inclination_deg,
                altitude_km: s.altitude_km,
                planes: s.planes,
                sats_per_plane: s.sats_per_plane,
                phasing: s.phasing,
                total: s.total(),
                regular_spacing_deg: s.regular_spacing_deg(),
                delta_phi_deg: s.delta_phi_deg(),
                period_s: period_from_sma_s(semi_major_axis_km(mean_motion_for_altitude(
                    s.altitude_km,
                ))),
                classes_exact: centered_ok && s.phase_jitter_deg <= 0.5,
            }
        })
        .collect();

    let truth_sats: Vec<TruthSat> = sats
        .iter()
        .filter(|s| s.first_day < days && s.last_day(days).is_some())
        .map(|s| {
            let shell = &config.shells[s.shell];
            let last = s.last_day(days).unwrap();
            let mut band_enter = None;
            let mut band_exit = None;
            for day in s.first_day..=last {
                if (s.profile_alt(shell.altitude_km, day) - shell.altitude_km).abs() <= BAND_KM {
                    band_enter.get_or_insert(day);
                    band_exit = Some(day);
                }
            }
            let expected_class = if truth_shells[s.shell].classes_exact && s.slot.is_some() {
                Some(match s.cluster {
                    Some(_) => "TWIN_TRIAD".to_string(),
                    None => "REGULAR".to_string(),
                })
            } else {
                None
            };
            TruthSat {
                norad_id: s.norad,
                name: s.name.clone(),
                shell: s.shell,
                plane: s.plane,
                slot: s.slot,
                cluster: s.cluster,
                expected_class,
                u0_deg: s.u0,
                raan0_deg: s.raan0,
                first_day: s.first_day,
                last_day: last,
                band_enter_day: band_enter,
                band_exit_day: band_exit,
                removal_day: s.removal_day.filter(|&r| r <= days - 1),
            }
        })
        .collect();

    Ok(SynthOutput {
        tables,
        satcat,
        conjunctions,
        truth: TruthLog {
            epoch: config.epoch,
            days,
            seed: config.seed,
            shells: truth_shells,
            satellites: truth_sats,
            maneuvers: truth_maneuvers,
        },
    })
}

impl SynthOutput {
    /// Writes snapshots, catalog files, and the truth log under `root`.
    ///
    /// Layout: `states/*.csv` (snapshot store), `satcat.csv`,
    /// `conjunctions.csv`, `truth.json`.
    pub fn write_to(&self, root: impl AsRef<std::path::Path>) -> std::io::Result<()> {
        let root = root.as_ref();
        let store = SnapshotStore::open(root).map_err(std::io::Error::other)?;
        for table in &self.tables {
            store.write_table(table).map_err(std::io::Error::other)?;
        }

        let mut satcat = std::fs::File::create(root.join("satcat.csv"))?;
        writeln!(satcat, "NORAD_CAT_ID,OBJECT_NAME,LAUNCH_DATE,DECAY_DATE")?;
        for e in &self.satcat {
            writeln!(
                satcat,
                "{},{},{},{}",
                e.norad_id,
                e.object_name,
                e.launch_date,
                e.decay_date.map(|d| d.to_string()).unwrap_or_default()
            )?;
        }

        let mut conj = std::fs::File::create(root.join("conjunctions.csv"))?;
        writeln!(conj, "NORAD_CAT_ID_1,NORAD_CAT_ID_2,TCA,MAX_PROB,TCA_RANGE")?;
        for c in &self.conjunctions {
            writeln!(
                conj,
                "{},{},{},{:e},{}",
                c.sat1_id,
                c.sat2_id,
                c.tca.format("%Y-%m-%dT%H:%M:%S%.3fZ"),
                c.max_probability,
                c.miss_distance_km
            )?;
        }

        let truth = serde_json::to_string_pretty(&self.truth)?;
        std::fs::write(root.join("truth.json"), truth)?;
        Ok(())
    }
}

/// Synthetic TLE records derived from daily tables, one per satellite per
/// day with epochs at 06:00 UTC. Field values are rounded to the TLE
/// format's printed precision.
pub fn tle_records_from_tables(tables: &[DailyStateTable]) -> Vec<TleRecord> {
    let mut out = Vec::new();
    for table in tables {
        let doy = ordinal(table.date);
        for row in &table.rows {
            let s = &row.state;
            // Back the mean anomaly up from the noon state to 06:00.
            let m = norm360(s.mean_anomaly_deg - s.mean_motion_rev_day * 0.25 * 360.0);
            out.push(TleRecord {
                norad_id: row.norad_id,
                classification: 'U',
                intl_designator: "24001A".into(),
                epoch_year: chrono::Datelike::year(&table.date),
                epoch_day: doy as f64 + 0.25,
                mean_motion_dot: 0.0,
                mean_motion_ddot: 0.0,
                bstar: 0.0,
                element_set_number: 1,
                inclination_deg: round_to(s.inclination_deg, 1e4),
                raan_deg: round_to(s.raan_deg, 1e4),
                eccentricity: round_to(s.eccentricity, 1e7),
                arg_perigee_deg: round_to(s.arg_perigee_deg, 1e4),
                mean_anomaly_deg: round_to(m, 1e4),
                mean_motion_rev_day: round_to(s.mean_motion_rev_day, 1e8),
                rev_number: 1,
                line1_checksum: 0,
                line2_checksum: 0,
            });
        }
    }
    // Checksums consistent with the canonical formatting.
    for rec in &mut out {
        let (l1, l2) = rec.format_lines();
        rec.line1_checksum = l1.as_bytes()[68] - b'0';
        rec.line2_checksum = l2.as_bytes()[68] - b'0';
    }
    out
}

fn round_to(v: f64, scale: f64) -> f64 {
    (v * scale).round() / scale
}

fn ordinal(date: NaiveDate) -> u32 {
    chrono::Datelike::ordinal(&date)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SynthConfig {
        SynthConfig {
            epoch: "2025-08-01".parse().unwrap(),
            days: 5,
            seed: 7,
            base_norad_id: 50_000,
            noise: NoiseConfig::default(),
            shells: vec![ShellConfig {
                inclination_deg: 53.0,
                altitude_km: 552.0,
                planes: 6,
                sats_per_plane: 6,
                phasing: 2,
                raan_offset_deg: 0.0,
                phase_jitter_deg: 0.0,
                raan_jitter_deg: 0.0,
                companions: vec![],
                generation: "V2MINI".into(),
            }],
            events: EventsConfig::default(),
        }
    }

    #[test]
    fn fixed_seed_is_deterministic_on_disk() {
        let cfg = small_config();
        let a = generate(&cfg).unwrap();
        let b = generate(&cfg).unwrap();
        assert_eq!(a.tables, b.tables);

        let (da, db) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        a.write_to(da.path()).unwrap();
        b.write_to(db.path()).unwrap();
        for name in ["states/2025-08-03.csv", "satcat.csv", "truth.json"] {
            let fa = std::fs::read(da.path().join(name)).unwrap();
            let fb = std::fs::read(db.path().join(name)).unwrap();
            assert_eq!(fa, fb, "{name} differs between runs");
        }
    }

    #[test]
    fn walker_placement_formula() {
        let mut cfg = small_config();
        cfg.noise = NoiseConfig {
            sigma_u_deg: 0.0,
            sigma_h_km: 0.0,
            sigma_raan_deg: 0.0,
        };
        let out = generate(&cfg).unwrap();
        // u(p, s) = 360 s / Sp + 360 F p / T with Sp = 6, F = 2, T = 36.
        for t in &out.truth.satellites {
            let expect = norm360(
                360.0 * t.slot.unwrap() as f64 / 6.0 + 360.0 * 2.0 * t.plane.unwrap() as f64 / 36.0,
            );
            assert!((t.u0_deg - expect).abs() < 1e-9);
        }
        assert_eq!(out.tables[0].rows.len(), 36);
        assert_eq!(out.satcat.len(), 36);
    }

    #[test]
    fn deorbit_removes_satellite() {
        let mut cfg = small_config();
        cfg.events.deorbits.push(DeorbitConfig {
            sat: SatRef { shell: 0, plane: 0, slot: 0 },
            start_day: 2,
            descent_days: 0,
            descent_km_per_day: 2.5,
        });
        let out = generate(&cfg).unwrap();
        assert_eq!(out.tables[1].rows.len(), 36);
        assert_eq!(out.tables[2].rows.len(), 35);
        let gone = out.truth.satellites.iter().find(|s| s.norad_id == 50_000).unwrap();
        assert_eq!(gone.last_day, 1);
        let entry = out.satcat.iter().find(|e| e.norad_id == 50_000).unwrap();
        assert_eq!(entry.decay_date, Some("2025-08-03".parse().unwrap()));
    }

    #[test]
    fn overlapping_maneuvers_are_rejected() {
        let mut cfg = small_config();
        let sat = SatRef { shell: 0, plane: 0, slot: 0 };
        for start in [1, 2] {
            cfg.events.maneuvers.push(ManeuverConfig {
                sat,
                start_day: start,
                duration_days: 2,
                dh_km_per_day: 1.0,
                du_deg_per_day: 0.0,
            });
        }
        assert!(matches!(
            generate(&cfg),
            Err(SynthError::OverlappingEvents { .. })
        ));
    }

    #[test]
    fn centered_twin_keeps_centroid_on_slot() {
        let mut cfg = small_config();
        cfg.shells[0].companions.push(CompanionConfig {
            plane: PlaneSelector::Index(1),
            slot: 2,
            offsets_deg: vec![5.2],
            centered: true,
        });
        let out = generate(&cfg).unwrap();
        let members: Vec<&TruthSat> = out
            .truth
            .satellites
            .iter()
            .filter(|s| s.cluster.is_some())
            .collect();
        assert_eq!(members.len(), 2);
        let gap = crate::angles::circ_dist(members[0].u0_deg, members[1].u0_deg);
        assert!((gap - 5.2).abs() < 1e-9);
        let centroid = crate::angles::circ_mean(&[members[0].u0_deg, members[1].u0_deg]).unwrap();
        let slot_u = norm360(360.0 * 2.0 / 6.0 + 360.0 * 2.0 / 36.0);
        assert!(crate::angles::circ_dist(centroid, slot_u) < 1e-9);
        assert_eq!(members[0].expected_class.as_deref(), Some("TWIN_TRIAD"));
    }

    #[test]
    fn tle_emission_parses_back() {
        let out = generate(&small_config()).unwrap();
        let recs = tle_records_from_tables(&out.tables);
        assert_eq!(recs.len(), 36 * 5);
        let mut text = String::new();
        for r in &recs[..40] {
            let (l1, l2) = r.format_lines();
            text.push_str(&l1);
            text.push('\n');
            text.push_str(&l2);
            text.push('\n');
        }
        let report = crate::ingest::parse_tle(&text);
        assert_eq!(report.items.len(), 40);
        assert_eq!(report.rejected_count(), 0);
        assert_eq!(report.items[0], recs[0]);
    }
}
