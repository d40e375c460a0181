use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{BargmannIndex, Model};
use crate::{one_photon, two_photon, DegeneratePoint1p, DegeneratePoint2p};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CrossingPoint {
    OnePhoton(DegeneratePoint1p),
    TwoPhoton(DegeneratePoint2p),
}

impl CrossingPoint {
    pub fn n(&self) -> usize {
        match self {
            CrossingPoint::OnePhoton(p) => p.n,
            CrossingPoint::TwoPhoton(p) => p.n,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            CrossingPoint::OnePhoton(p) => p.m,
            CrossingPoint::TwoPhoton(p) => p.m,
        }
    }

    pub fn g(&self) -> f64 {
        match self {
            CrossingPoint::OnePhoton(p) => p.g,
            CrossingPoint::TwoPhoton(p) => p.g,
        }
    }

    pub fn epsilon(&self) -> f64 {
        match self {
            CrossingPoint::OnePhoton(p) => p.epsilon,
            CrossingPoint::TwoPhoton(p) => p.epsilon,
        }
    }

    pub fn energy(&self) -> f64 {
        match self {
            CrossingPoint::OnePhoton(p) => p.energy,
            CrossingPoint::TwoPhoton(p) => p.energy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub n: usize,
    pub m: usize,
    pub count: usize,
}

/// A pair the solver could not settle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub n: usize,
    pub m: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingCensus {
    pub model: Model,
    pub q: Option<BargmannIndex>,
    pub omega: f64,
    pub delta: f64,
    pub n_range: (usize, usize),
    pub m_range: (usize, usize),
    /// Ordered by `(N, M, g)`.
    pub points: Vec<CrossingPoint>,
    pub total: usize,
    /// Every pair with `M > N`, lexicographic.
    pub per_pair: Vec<PairCount>,
    pub anomalies: Vec<Anomaly>,
}

/// Runs the degenerate-point solver over every `(N, M)` with `M > N`.
///
/// Failing pairs land in `anomalies` with a zero count; the run continues.
pub fn enumerate_crossings(
    model: Model,
    q: Option<BargmannIndex>,
    delta: f64,
    omega: f64,
    n_range: RangeInclusive<usize>,
    m_range: RangeInclusive<usize>,
) -> Result<CrossingCensus> {
    if model == Model::TwoPhoton && q.is_none() {
        return Err(Error::domain("a two-photon census needs q"));
    }
    if *n_range.start() == 0 {
        return Err(Error::domain("N starts at 1"));
    }
    crate::ModelParams::new(omega, delta, 0.0, 0.0)?;
    let pairs: Vec<(usize, usize)> = n_range
        .clone()
        .flat_map(|n| m_range.clone().filter(move |m| *m > n).map(move |m| (n, m)))
        .collect();
    let results: Vec<Result<Vec<CrossingPoint>>> = pairs
        .par_iter()
        .map(|&(n, m)| match model {
            Model::OnePhoton => one_photon::find_degenerate_1p(n, m, delta, omega, None)
                .map(|v| v.into_iter().map(CrossingPoint::OnePhoton).collect()),
            Model::TwoPhoton => two_photon::find_degenerate_2p(q.unwrap(), n, m, delta, omega, None)
                .map(|v| v.into_iter().map(CrossingPoint::TwoPhoton).collect()),
        })
        .collect();
    let mut points = Vec::new();
    let mut per_pair = Vec::with_capacity(pairs.len());
    let mut anomalies = Vec::new();
    for (&(n, m), r) in pairs.iter().zip(results) {
        match r {
            Ok(mut pts) => {
                pts.sort_by(|a, b| a.g().total_cmp(&b.g()));
                per_pair.push(PairCount { n, m, count: pts.len() });
                points.extend(pts);
            }
            Err(e) => {
                per_pair.push(PairCount { n, m, count: 0 });
                anomalies.push(Anomaly { n, m, message: e.to_string() });
            }
        }
    }
    Ok(CrossingCensus {
        model,
        q,
        omega,
        delta,
        n_range: (*n_range.start(), *n_range.end()),
        m_range: (*m_range.start(), *m_range.end()),
        total: points.len(),
        points,
        per_pair,
        anomalies,
    })
}

/// Same totals, same pair-by-pair counts, and neither run anomalous.
pub fn census_totals_agree(a: &CrossingCensus, b: &CrossingCensus) -> bool {
    a.total == b.total && a.per_pair == b.per_pair && a.anomalies.is_empty() && b.anomalies.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_crossing_above_threshold() {
        let c = enumerate_crossings(Model::OnePhoton, None, 3.0, 1.0, 1..=1, 2..=2).unwrap();
        assert_eq!(c.total, 0);
        assert_eq!(c.per_pair, vec![PairCount { n: 1, m: 2, count: 0 }]);
        assert!(c.anomalies.is_empty());
    }

    #[test]
    fn small_census_counts_match_n() {
        let a = enumerate_crossings(Model::OnePhoton, None, 2.0, 1.0, 1..=3, 2..=5).unwrap();
        let b = enumerate_crossings(Model::TwoPhoton, Some(BargmannIndex::Quarter), 2.0, 1.0, 1..=3, 2..=5).unwrap();
        assert!(census_totals_agree(&a, &b));
        for pc in &a.per_pair {
            assert_eq!(pc.count, pc.n, "{pc:?}");
        }
        assert_eq!(a.total, a.points.len());
    }
}
