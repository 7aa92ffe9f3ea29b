//! Density-based clustering (DBSCAN) with pluggable region queries.
//!
//! Shell detection queries a scaled 2-d Chebyshev neighborhood; plane
//! detection queries a circular 1-d neighborhood. Both share the label
//! expansion here. Callers present points in a canonical order (catalog id)
//! so the resulting partition does not depend on input order.

use std::collections::HashMap;

/// Cluster label for one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Cluster(usize),
    Noise,
}

impl Label {
    pub fn cluster(self) -> Option<usize> {
        match self {
            Label::Cluster(c) => Some(c),
            Label::Noise => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Unvisited,
    Noise,
    Cluster(usize),
}

/// Runs DBSCAN over `n` points.
///
/// `neighbors_of(i)` must return every point within the neighborhood radius
/// of point `i`, including `i` itself; a point is core when that count
/// reaches `min_samples`. Cluster ids are assigned in first-encounter order
/// over the point indices, so the labeling is deterministic for a fixed
/// point sequence.
pub fn dbscan<F>(n: usize, min_samples: usize, neighbors_of: F) -> Vec<Label>
where
    F: Fn(usize) -> Vec<usize>,
{
    let mut states = vec![State::Unvisited; n];
    let mut next_cluster = 0usize;
    let mut queue: Vec<usize> = Vec::new();

    for i in 0..n {
        if states[i] != State::Unvisited {
            continue;
        }
        let neigh = neighbors_of(i);
        if neigh.len() < min_samples {
            states[i] = State::Noise;
            continue;
        }
        let cid = next_cluster;
        next_cluster += 1;
        states[i] = State::Cluster(cid);
        queue.clear();
        queue.extend(neigh);
        while let Some(j) = queue.pop() {
            match states[j] {
                State::Cluster(_) => continue,
                State::Noise => {
                    // Border point reachable from this cluster.
                    states[j] = State::Cluster(cid);
                    continue;
                }
                State::Unvisited => {
                    states[j] = State::Cluster(cid);
                    let jn = neighbors_of(j);
                    if jn.len() >= min_samples {
                        queue.extend(jn.into_iter().filter(|&k| states[k] == State::Unvisited || states[k] == State::Noise));
                    }
                }
            }
        }
    }

    states
        .into_iter()
        .map(|s| match s {
            State::Cluster(c) => Label::Cluster(c),
            State::Noise => Label::Noise,
            State::Unvisited => unreachable!("every point is visited"),
        })
        .collect()
}

/// Bucketed index answering Chebyshev-radius-1 queries over scaled 2-d
/// points: neighbors are points with |dx| <= 1 and |dy| <= 1 in scaled
/// units.
pub struct ChebyshevGrid {
    points: Vec<(f64, f64)>,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl ChebyshevGrid {
    pub fn new(points: Vec<(f64, f64)>) -> Self {
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            cells.entry((x.floor() as i64, y.floor() as i64)).or_default().push(i);
        }
        Self { points, cells }
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let (x, y) = self.points[i];
        let (cx, cy) = (x.floor() as i64, y.floor() as i64);
        let mut out = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = self.cells.get(&(cx + dx, cy + dy)) {
                    for &j in bucket {
                        let (px, py) = self.points[j];
                        if (px - x).abs() <= 1.0 && (py - y).abs() <= 1.0 {
                            out.push(j);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Sorted index answering circular-distance queries over angles in degrees
/// (period 360).
pub struct CircularIndex {
    /// (angle, original index), sorted by angle.
    sorted: Vec<(f64, usize)>,
}

impl CircularIndex {
    pub fn new(angles_deg: &[f64]) -> Self {
        let mut sorted: Vec<(f64, usize)> = angles_deg
            .iter()
            .map(|a| crate::angles::norm360(*a))
            .zip(0..)
            .collect();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        Self { sorted }
    }

    /// Indices of all angles within circular distance `eps` of the i-th
    /// original angle (inclusive), including itself.
    pub fn neighbors(&self, angle_deg: f64, eps: f64) -> Vec<usize> {
        let a = crate::angles::norm360(angle_deg);
        let mut out = Vec::new();
        for (lo, hi) in wrap_intervals(a - eps, a + eps) {
            let start = self.sorted.partition_point(|&(v, _)| v < lo);
            for &(v, idx) in self.sorted[start..].iter() {
                if v > hi {
                    break;
                }
                out.push(idx);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Splits [lo, hi] on the 0/360 circle into plain intervals inside [0, 360).
fn wrap_intervals(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    if hi - lo >= 360.0 {
        return vec![(0.0, 360.0)];
    }
    let lo_n = crate::angles::norm360(lo);
    let hi_n = lo_n + (hi - lo);
    if hi_n <= 360.0 {
        vec![(lo_n, hi_n)]
    } else {
        vec![(lo_n, 360.0), (0.0, hi_n - 360.0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separates_two_blobs_and_noise() {
        let pts = vec![
            (1.5, 2.2),
            (1.0, 1.1),
            (1.2, 1.4),
            (0.8, 1.0),
            (13.7, 14.0),
            (13.9, 13.9),
            (13.6, 14.1),
            (100.0, 100.0),
        ];
        let grid = ChebyshevGrid::new(pts);
        let labels = dbscan(8, 3, |i| grid.neighbors(i));
        assert_eq!(labels[0].cluster(), Some(0));
        assert_eq!(labels[0], labels[1]);
        assert_eq!(labels[1], labels[2]);
        assert_eq!(labels[4].cluster(), Some(1));
        assert_eq!(labels[4], labels[5]);
        assert_eq!(labels[7], Label::Noise);
    }

    #[test]
    fn below_min_samples_is_all_noise() {
        let pts: Vec<(f64, f64)> = (0..24).map(|_| (5.0, 5.0)).collect();
        let grid = ChebyshevGrid::new(pts);
        let labels = dbscan(24, 25, |i| grid.neighbors(i));
        assert!(labels.iter().all(|l| *l == Label::Noise));
    }

    #[test]
    fn circular_index_wraps_the_seam() {
        let angles = [359.9_f64, 0.1, 180.0];
        let idx = CircularIndex::new(&angles);
        let n = idx.neighbors(359.9, 1.0);
        assert_eq!(n, vec![0, 1]);
        let n = idx.neighbors(0.1, 1.0);
        assert_eq!(n, vec![0, 1]);
        assert_eq!(idx.neighbors(180.0, 1.0), vec![2]);
    }

    #[test]
    fn partition_ignores_input_permutation() {
        // Same point set in two different orders produces the same grouping,
        // compared via sorted cluster member sets.
        let base: Vec<(f64, f64)> = (0..40)
            .map(|i| if i < 20 { (0.0 + 0.01 * i as f64, 0.0) } else { (50.0, 0.01 * i as f64) })
            .collect();
        let mut shuffled = base.clone();
        shuffled.reverse();
        let canon = |pts: &[(f64, f64)]| -> Vec<Vec<(i64, i64)>> {
            let grid = ChebyshevGrid::new(pts.to_vec());
            let labels = dbscan(pts.len(), 3, |i| grid.neighbors(i));
            let mut clusters: std::collections::BTreeMap<usize, Vec<(i64, i64)>> = Default::default();
            for (i, l) in labels.iter().enumerate() {
                if let Some(c) = l.cluster() {
                    clusters.entry(c).or_default().push((
                        (pts[i].0 * 1000.0) as i64,
                        (pts[i].1 * 1000.0) as i64,
                    ));
                }
            }
            let mut sets: Vec<Vec<(i64, i64)>> = clusters.into_values().collect();
            for s in &mut sets {
                s.sort();
            }
            sets.sort();
            sets
        };
        assert_eq!(canon(&base), canon(&shuffled));
    }
}
