//! Matching numbers, fractional matchings, and the maximum-degree bound for
//! intersecting multi-hypergraphs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{is_admissible_order, verify_plane_axioms, IncidenceStructure, PlaneAxiomReport};
use crate::hypergraph::Hypergraph;
use crate::simplex;
use crate::Rational;

/// A weight per distinct edge, with every vertex load at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalMatching {
    pub weights: BTreeMap<usize, Rational>,
    pub value: Rational,
}

impl FractionalMatching {
    /// Exact feasibility check against `h`.
    pub fn is_feasible(&self, h: &Hypergraph) -> bool {
        let mut load = vec![Rational::zero(); h.n()];
        for (&i, w) in &self.weights {
            if *w < Rational::zero() || *w > Rational::one() || i >= h.num_edges() {
                return false;
            }
            for &v in &h.edges()[i] {
                load[v as usize] += w;
            }
        }
        let total: Rational = self.weights.values().sum();
        total == self.value && load.iter().all(|l| *l <= Rational::one())
    }
}

/// Vertex weights covering every edge (sum over each edge at least one).
/// Its total bounds every fractional matching from above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalCover {
    pub weights: Vec<Rational>,
    pub value: Rational,
}

impl FractionalCover {
    pub fn is_feasible(&self, h: &Hypergraph) -> bool {
        self.weights.len() == h.n()
            && self.weights.iter().all(|w| *w >= Rational::zero())
            && h.edges().iter().all(|e| {
                e.iter().map(|&v| &self.weights[v as usize]).sum::<Rational>() >= Rational::one()
            })
            && self.weights.iter().sum::<Rational>() == self.value
    }
}

fn search_matching(
    edges: &[Vec<u32>],
    i: usize,
    used: &mut [bool],
    free: usize,
    k: usize,
    current: usize,
    best: &mut usize,
) {
    if current > *best {
        *best = current;
    }
    if i == edges.len() || current + (edges.len() - i).min(free / k) <= *best {
        return;
    }
    let e = &edges[i];
    if e.iter().all(|&v| !used[v as usize]) {
        for &v in e {
            used[v as usize] = true;
        }
        search_matching(edges, i + 1, used, free - k, k, current + 1, best);
        for &v in e {
            used[v as usize] = false;
        }
    }
    search_matching(edges, i + 1, used, free, k, current, best);
}

/// Maximum number of pairwise disjoint edges, by branch and bound.
pub fn matching_number(h: &Hypergraph) -> usize {
    let mut used = vec![false; h.n()];
    let mut best = 0;
    search_matching(h.edges(), 0, &mut used, h.n(), h.k(), 0, &mut best);
    best
}

/// Optimal fractional matching and a matching-value fractional cover,
/// solved exactly over the distinct edges.
pub fn fractional_matching_with_cover(h: &Hypergraph) -> (FractionalMatching, FractionalCover) {
    let m = h.num_edges();
    if m == 0 {
        return (
            FractionalMatching {
                weights: BTreeMap::new(),
                value: Rational::zero(),
            },
            FractionalCover {
                weights: vec![Rational::zero(); h.n()],
                value: Rational::zero(),
            },
        );
    }
    let mut a = vec![vec![Rational::zero(); m]; h.n()];
    for (j, e) in h.edges().iter().enumerate() {
        for &v in e {
            a[v as usize][j] = Rational::one();
        }
    }
    let c = vec![Rational::one(); m];
    let b = vec![Rational::one(); h.n()];
    let sol = simplex::maximize(&c, &a, &b).expect("packing LP with nonempty edges is bounded");
    let weights = sol
        .primal
        .into_iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .collect();
    (
        FractionalMatching {
            weights,
            value: sol.value.clone(),
        },
        FractionalCover {
            weights: sol.dual,
            value: sol.value,
        },
    )
}

/// ν*(H) together with an optimal witness.
pub fn fractional_matching_number(h: &Hypergraph) -> (Rational, FractionalMatching) {
    let (fm, _) = fractional_matching_with_cover(h);
    (fm.value.clone(), fm)
}

pub fn is_intersecting(h: &Hypergraph) -> bool {
    let edges = h.edges();
    edges.iter().enumerate().all(|(i, e)| {
        edges[i + 1..]
            .iter()
            .all(|f| e.iter().any(|v| f.binary_search(v).is_ok()))
    })
}

/// Δ1(H), counting multiplicity.
pub fn max_degree(h: &Hypergraph) -> u64 {
    let mut deg = vec![0u64; h.n()];
    for (e, &c) in h.edges().iter().zip(h.multiplicities()) {
        for &v in e {
            deg[v as usize] += c as u64;
        }
    }
    deg.into_iter().max().unwrap_or(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneCheck {
    pub passed: bool,
    pub report: PlaneAxiomReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub k: usize,
    pub e: u64,
    pub delta1: u64,
    pub p: u32,
    /// e / (k - 1 + p/k), as "a/b".
    pub bound: String,
    pub passed: bool,
    /// Present when k >= 3 and Δ1 < e / (k - 1).
    pub plane_check: Option<PlaneCheck>,
    pub warning: Option<String>,
}

/// 1 when a plane of order k - 1 is constructed here, 0 otherwise.
pub fn plane_indicator(k: usize) -> u32 {
    u32::from(is_admissible_order(k as u64 - 1))
}

/// The underlying simple hypergraph restricted to covered vertices.
fn covered_incidence(h: &Hypergraph) -> IncidenceStructure {
    let mut index = vec![usize::MAX; h.n()];
    let mut next = 0;
    for e in h.edges() {
        for &v in e {
            if index[v as usize] == usize::MAX {
                index[v as usize] = next;
                next += 1;
            }
        }
    }
    IncidenceStructure {
        num_points: next,
        lines: h
            .edges()
            .iter()
            .map(|e| {
                let mut l: Vec<usize> = e.iter().map(|&v| index[v as usize]).collect();
                l.sort_unstable();
                l
            })
            .collect(),
    }
}

/// Checks Δ1 >= e / (k - 1 + p/k) on an intersecting k-uniform multi-hypergraph,
/// and that the underlying simple hypergraph is a projective plane whenever
/// k >= 3 and Δ1 < e / (k - 1).
pub fn check_intersecting_corollary(h: &Hypergraph) -> Result<CorollaryReport> {
    if !is_intersecting(h) {
        return Err(Error::NotIntersecting);
    }
    let k = h.k();
    let e = h.total_edges();
    let delta1 = max_degree(h);
    let p = plane_indicator(k);
    let big = |x: u64| Rational::from_integer(BigInt::from(x));
    let denom = big(k as u64 - 1) + Rational::new(BigInt::from(p), BigInt::from(k));
    let bound = big(e) / denom;
    let mut passed = big(delta1) >= bound;

    let warning = (p == 0).then(|| {
        format!(
            "no plane of order {} is constructed here; using p = 0",
            k - 1
        )
    });

    let plane_check = (k >= 3 && big(delta1) < big(e) / big(k as u64 - 1)).then(|| {
        let report = verify_plane_axioms(&covered_incidence(h));
        PlaneCheck {
            passed: report.passed(),
            report,
        }
    });
    if let Some(pc) = &plane_check {
        passed &= pc.passed;
    }

    Ok(CorollaryReport {
        k,
        e,
        delta1,
        p,
        bound: bound.to_string(),
        passed,
        plane_check,
        warning,
    })
}
