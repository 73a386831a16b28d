//! Generators for the extremal families: the three-part 3-graph, the split-W
//! k-graph, disjoint cliques for graphs, and the projective-plane colouring.

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{is_admissible_order, ProjectivePlane};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::Rational;

/// Near-equal contiguous parts, larger parts first.
pub fn balanced_parts(n: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let base = n / parts;
    let extra = n % parts;
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let len = base + usize::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Three near-equal parts V0, V1, V2 with every triple inside a part and
/// every triple with two vertices in V_i and one in V_{i+1}.
pub fn three_part(n: usize) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("three_part needs n >= 3, got {n}")));
    }
    let parts = balanced_parts(n, 3);
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    for i in 0..3 {
        let part = parts[i].clone();
        let next = parts[(i + 1) % 3].clone();
        for t in part.clone().combinations(3) {
            edges.push(t.into_iter().map(|v| v as Vertex).collect());
        }
        for pair in part.combinations(2) {
            for w in next.clone() {
                edges.push(vec![pair[0] as Vertex, pair[1] as Vertex, w as Vertex]);
            }
        }
    }
    Hypergraph::new(3, n, edges)
}

/// The k-subsets meeting W = {0, ..., floor((n-k)/2)} in other than exactly one vertex.
pub fn split_w(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 2 || n < k {
        return Err(Error::InvalidParameter(format!(
            "split_w needs n >= k >= 2, got n = {n}, k = {k}"
        )));
    }
    let w = (n - k) / 2 + 1;
    let edges = (0..n as Vertex)
        .combinations(k)
        .filter(|e| e.iter().filter(|&&v| (v as usize) < w).count() != 1);
    Hypergraph::new(k, n, edges)
}

/// Disjoint cliques on `m` near-equal parts (a 2-graph).
pub fn f2_extremal(n: usize, m: usize) -> Result<Hypergraph> {
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "f2_extremal needs 1 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    let edges = balanced_parts(n, m)
        .into_iter()
        .flat_map(|p| p.map(|v| v as Vertex).combinations(2));
    Hypergraph::new(2, n, edges)
}

/// Round-robin (circle method) factorisation of K_m: m - 1 perfect matchings
/// for even m, m near-perfect matchings of size (m - 1) / 2 for odd m.
pub fn near_one_factorization(m: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "factorisation needs m >= 2, got {m}"
        )));
    }
    let even = m + m % 2;
    let ring = even - 1;
    let fixed = even - 1;
    let rounds = (0..ring)
        .map(|r| {
            let mut matching = Vec::with_capacity(even / 2);
            if fixed < m {
                matching.push((r.min(fixed), r.max(fixed)));
            }
            for i in 1..even / 2 {
                let a = (r + i) % ring;
                let b = (r + ring - i) % ring;
                if a < m && b < m {
                    matching.push((a.min(b), a.max(b)));
                }
            }
            matching.sort_unstable();
            matching
        })
        .collect();
    Ok(rounds)
}

/// Edge colouring of K_n driven by a projective plane: vertex classes map to
/// plane points, colours are plane lines.
#[derive(Clone, Debug)]
pub struct ColoredCompleteGraph {
    n: usize,
    color: Vec<u32>,
    class_of: Vec<usize>,
    classes: Vec<std::ops::Range<usize>>,
}

impl ColoredCompleteGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> usize {
        assert_ne!(u, v, "loops are not coloured");
        self.color[u * self.n + v] as usize
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn classes(&self) -> &[std::ops::Range<usize>] {
        &self.classes
    }

    /// "u,v,color" rows with u < v, under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,color\n");
        for u in 0..self.n {
            for v in u + 1..self.n {
                out.push_str(&format!("{u},{v},{}\n", self.color(u, v)));
            }
        }
        out
    }
}

/// r^2 - 3r + 3, the number of points (and lines) of a plane of order r - 2.
pub fn plane_size(r: usize) -> usize {
    r * r - 3 * r + 3
}

fn check_construction_params(n: usize, r: usize) -> Result<()> {
    if r < 3 || !is_admissible_order((r - 2) as u64) {
        return Err(Error::InvalidParameter(format!(
            "r = {r} needs r >= 3 with r - 2 equal to 1 or a prime power"
        )));
    }
    if n < plane_size(r) {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is below r^2 - 3r + 3 = {}",
            plane_size(r)
        )));
    }
    Ok(())
}

/// Monochromatic triangles of the plane-driven colouring of K_n.
///
/// Classes are contiguous with the larger ones first. A cross-class pair gets
/// the line through the two class points; inside class i, matching t of the
/// round-robin factorisation gets the (t mod (r-1))-th line through point i.
pub fn projective_construction(n: usize, r: usize) -> Result<(Hypergraph, ColoredCompleteGraph)> {
    check_construction_params(n, r)?;
    let plane = ProjectivePlane::new((r - 2) as u64)?;
    let points = plane.num_points();
    let classes = balanced_parts(n, points);
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for v in c.clone() {
            class_of[v] = i;
        }
    }

    let mut line_of = vec![u32::MAX; points * points];
    for (l, pts) in plane.lines().iter().enumerate() {
        for &a in pts {
            for &b in pts {
                if a != b {
                    line_of[a * points + b] = l as u32;
                }
            }
        }
    }

    let mut color = vec![u32::MAX; n * n];
    for u in 0..n {
        for v in 0..n {
            let (cu, cv) = (class_of[u], class_of[v]);
            if cu != cv {
                color[u * n + v] = line_of[cu * points + cv];
            }
        }
    }
    for (i, c) in classes.iter().enumerate() {
        if c.len() < 2 {
            continue;
        }
        let through = plane.lines_through(i);
        for (t, matching) in near_one_factorization(c.len())?.iter().enumerate() {
            let line = through[t % through.len()] as u32;
            for &(a, b) in matching {
                let (u, v) = (c.start + a, c.start + b);
                color[u * n + v] = line;
                color[v * n + u] = line;
            }
        }
    }

    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let ab = color[a * n + b];
            for c in b + 1..n {
                if color[a * n + c] == ab && color[b * n + c] == ab {
                    edges.push([a as Vertex, b as Vertex, c as Vertex]);
                }
            }
        }
    }
    let h = Hypergraph::new(3, n, edges)?;
    Ok((
        h,
        ColoredCompleteGraph {
            n,
            color,
            class_of,
            classes,
        },
    ))
}

/// Measurements of one projective construction against its predicted values.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub n: usize,
    pub r: usize,
    pub classes: usize,
    pub num_edges: usize,
    pub min_codegree: usize,
    /// (r - 3 + 2/(r-1)) n / (r^2 - 3r + 3), as "p/q".
    pub predicted_codegree: String,
    /// predicted_codegree - min_codegree, as "p/q".
    pub codegree_deficit: String,
    pub tc: usize,
    /// (r - 1) n / (r^2 - 3r + 3), as "p/q".
    pub predicted_tc: String,
    pub num_components: usize,
    /// Number of tight components of each colour, indexed by line.
    pub components_per_color: Vec<usize>,
    pub all_components_monochromatic: bool,
    /// Classes met by each component.
    pub classes_spanned: Vec<usize>,
    /// Every component stays inside the classes of its colour's line.
    pub spans_within_line: bool,
    pub max_within_class_discrepancy: usize,
    /// n is a multiple of r^2 - 3r + 3 and each colour forms one component.
    pub exact_regime: bool,
    /// In the exact regime, tc equals the predicted value.
    pub tc_exact: Option<bool>,
}

impl ConstructionReport {
    /// Structural claims: monochromatic components inside their line's classes,
    /// discrepancy at most 2, and tc exact whenever the exact regime applies.
    pub fn passed(&self) -> bool {
        self.all_components_monochromatic
            && self.spans_within_line
            && self.max_within_class_discrepancy <= 2
            && self.tc_exact != Some(false)
    }
}

pub fn predicted_codegree(n: usize, r: usize) -> Rational {
    let r_ = Rational::from_integer(BigInt::from(r));
    let q = (r_.clone() - Rational::from_integer(3.into())
        + Rational::new(2.into(), BigInt::from(r - 1)))
        / Rational::from_integer(BigInt::from(plane_size(r)));
    q * Rational::from_integer(BigInt::from(n))
}

pub fn predicted_tc(n: usize, r: usize) -> Rational {
    Rational::new(BigInt::from((r - 1) * n), BigInt::from(plane_size(r)))
}

/// Largest difference, over vertices and pairs of lines through the vertex's
/// class point, between the numbers of within-class edges of the two colours.
pub fn within_class_discrepancy(coloring: &ColoredCompleteGraph, plane: &ProjectivePlane) -> usize {
    let mut worst = 0;
    for (i, c) in coloring.classes().iter().enumerate() {
        let through = plane.lines_through(i);
        for x in c.clone() {
            let counts: Vec<usize> = through
                .iter()
                .map(|&l| c.clone().filter(|&y| y != x && coloring.color(x, y) == l).count())
                .collect();
            let spread = counts.iter().max().unwrap() - counts.iter().min().unwrap();
            worst = worst.max(spread);
        }
    }
    worst
}

pub fn verify_construction(n: usize, r: usize) -> Result<ConstructionReport> {
    let (h, coloring) = projective_construction(n, r)?;
    let plane = ProjectivePlane::new((r - 2) as u64)?;
    let points = plane.num_points();
    let decomposition = h.tight_components();

    let edge_color = |e: &[Vertex]| coloring.color(e[0] as usize, e[1] as usize);
    let mut components_per_color = vec![0; points];
    let mut monochromatic = true;
    let mut within_line = true;
    let mut classes_spanned = Vec::with_capacity(decomposition.len());
    for comp in &decomposition.components {
        let c = edge_color(&h.edges()[comp.edge_indices[0]]);
        monochromatic &= comp
            .edge_indices
            .iter()
            .all(|&i| {
                let e = &h.edges()[i];
                edge_color(e) == c
                    && coloring.color(e[0] as usize, e[2] as usize) == c
                    && coloring.color(e[1] as usize, e[2] as usize) == c
            });
        components_per_color[c] += 1;
        let mut met: Vec<usize> = comp
            .vertex_set
            .iter()
            .map(|&v| coloring.class_of(v as usize))
            .collect();
        met.dedup();
        within_line &= met
            .iter()
            .all(|class| plane.lines()[c].binary_search(class).is_ok());
        classes_spanned.push(met.len());
    }

    let min_codegree = h.min_codegree()?;
    let tc = decomposition.largest();
    let pred_cod = predicted_codegree(n, r);
    let pred_tc = predicted_tc(n, r);
    let exact_regime =
        n.is_multiple_of(points) && components_per_color.iter().all(|&c| c == 1);
    let tc_exact = exact_regime.then(|| Rational::from_integer(BigInt::from(tc)) == pred_tc);

    Ok(ConstructionReport {
        n,
        r,
        classes: points,
        num_edges: h.num_edges(),
        min_codegree,
        codegree_deficit: (pred_cod.clone() - Rational::from_integer(BigInt::from(min_codegree)))
            .to_string(),
        predicted_codegree: pred_cod.to_string(),
        tc,
        predicted_tc: pred_tc.to_string(),
        num_components: decomposition.len(),
        components_per_color,
        all_components_monochromatic: monochromatic,
        classes_spanned,
        spans_within_line: within_line,
        max_within_class_discrepancy: within_class_discrepancy(&coloring, &plane),
        exact_regime,
        tc_exact,
    })
}
