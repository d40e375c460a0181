use serde::{Deserialize, Serialize};

use super::SpectrumRecord;

/// One level followed through consecutive grid points, as `(g, E)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelCurve {
    pub points: Vec<(f64, f64)>,
}

/// Largest accepted jump, in units of the local level spacing.
pub const MAX_JUMP_SPACINGS: f64 = 3.0;

fn nearest(xs: &[f64], x: f64) -> Option<usize> {
    let i = xs.partition_point(|v| *v < x);
    match (i.checked_sub(1), (i < xs.len()).then_some(i)) {
        (Some(a), Some(b)) => Some(if x - xs[a] <= xs[b] - x { a } else { b }),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    }
}

fn spacing(xs: &[f64], i: usize, fallback: f64) -> f64 {
    let left = i.checked_sub(1).map(|j| xs[i] - xs[j]);
    let right = xs.get(i + 1).map(|v| v - xs[i]);
    match (left, right) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => fallback,
    }
}

/// Links levels of adjacent records by mutual nearest energy.
///
/// A link is made only when each level is the other's nearest neighbour and
/// the jump stays within three local spacings; anything else starts a new curve.
pub fn connect_levels(records: &[SpectrumRecord]) -> Vec<LevelCurve> {
    let mut done: Vec<LevelCurve> = Vec::new();
    let Some(first) = records.first() else {
        return done;
    };
    // open[i] is the curve ending at level i of the previous record
    let mut open: Vec<LevelCurve> =
        first.energies.iter().map(|e| LevelCurve { points: vec![(first.g, *e)] }).collect();
    for w in records.windows(2) {
        let (prev, next) = (&w[0], &w[1]);
        let fallback = (prev.window.1 - prev.window.0).abs();
        let mut taken: Vec<Option<LevelCurve>> = vec![None; next.energies.len()];
        for (i, curve) in open.drain(..).enumerate() {
            let e = prev.energies[i];
            let link = nearest(&next.energies, e).filter(|&j| {
                nearest(&prev.energies, next.energies[j]) == Some(i)
                    && (next.energies[j] - e).abs() <= MAX_JUMP_SPACINGS * spacing(&prev.energies, i, fallback)
            });
            match link {
                Some(j) => taken[j] = Some(curve),
                None => done.push(curve),
            }
        }
        open = taken
            .into_iter()
            .zip(&next.energies)
            .map(|(c, e)| {
                let mut c = c.unwrap_or(LevelCurve { points: Vec::new() });
                c.points.push((next.g, *e));
                c
            })
            .collect();
    }
    done.extend(open);
    done.sort_by(|a, b| {
        let (ga, ea) = a.points[0];
        let (gb, eb) = b.points[0];
        ga.total_cmp(&gb).then(ea.total_cmp(&eb))
    });
    done
}

/// Narrowest spacing between adjacent levels in a region of the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub g: f64,
    pub lower: f64,
    pub upper: f64,
    pub gap: f64,
}

/// Minimum adjacent-level gap over records with `g` in `g_range` and the gap
/// midpoint in `e_range`; the size of an avoided crossing.
pub fn min_adjacent_gap(records: &[SpectrumRecord], g_range: (f64, f64), e_range: (f64, f64)) -> Option<GapReport> {
    let mut best: Option<GapReport> = None;
    for r in records.iter().filter(|r| r.g >= g_range.0 && r.g <= g_range.1) {
        for w in r.energies.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            if mid < e_range.0 || mid > e_range.1 {
                continue;
            }
            let gap = w[1] - w[0];
            if best.map_or(true, |b| gap < b.gap) {
                best = Some(GapReport { g: r.g, lower: w[0], upper: w[1], gap });
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(g: f64, energies: Vec<f64>) -> SpectrumRecord {
        SpectrumRecord { g, epsilon: 0.0, energies, special: Vec::new(), gaps: Vec::new(), window: (-1.0, 5.0) }
    }

    #[test]
    fn parallel_levels_connect() {
        let recs: Vec<_> = (0..5).map(|i| rec(i as f64 * 0.1, vec![0.0 + 0.01 * i as f64, 1.0, 2.0 - 0.01 * i as f64])).collect();
        let curves = connect_levels(&recs);
        assert_eq!(curves.len(), 3);
        assert!(curves.iter().all(|c| c.points.len() == 5));
    }

    #[test]
    fn vanishing_level_breaks_curve() {
        let recs = vec![rec(0.0, vec![0.0, 1.0]), rec(0.1, vec![0.0]), rec(0.2, vec![0.0, 1.0])];
        let curves = connect_levels(&recs);
        assert_eq!(curves.len(), 3);
        assert_eq!(curves[0].points.len(), 3);
    }

    #[test]
    fn large_jump_left_open() {
        let recs = vec![rec(0.0, vec![0.0, 0.1]), rec(0.1, vec![0.9, 1.0])];
        let curves = connect_levels(&recs);
        // 0.1 -> 0.9 is 8 spacings away; 0.0's nearest is 0.9 but not mutual
        assert_eq!(curves.len(), 4);
    }

    #[test]
    fn gap_minimum() {
        let recs = vec![rec(0.0, vec![0.0, 0.5]), rec(0.1, vec![0.2, 0.21]), rec(0.2, vec![0.0, 0.5])];
        let r = min_adjacent_gap(&recs, (0.0, 1.0), (-1.0, 1.0)).unwrap();
        assert_eq!(r.g, 0.1);
        assert!((r.gap - 0.01).abs() < 1e-12);
        assert!(min_adjacent_gap(&recs, (0.3, 1.0), (-1.0, 1.0)).is_none());
    }
}
