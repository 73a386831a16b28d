//! k-uniform hypergraphs on the vertex range `0..n`.
//!
//! Edges are stored canonically: each edge sorted ascending, the edge list
//! sorted lexicographically and free of repeats. Multi-hypergraphs keep one
//! entry per distinct edge together with a positive multiplicity.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

pub type Vertex = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
    multiplicity: Vec<u32>,
}

/// One tight component: the edges it contains and the vertices they meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub edge_indices: Vec<usize>,
    pub vertex_set: Vec<Vertex>,
    pub vertex_count: usize,
}

/// Partition of the edge set into tight components.
///
/// Component ids follow the smallest edge index they contain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightDecomposition {
    pub component_of: Vec<usize>,
    pub components: Vec<Component>,
}

impl TightDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Vertex count of the largest component, 0 when there are none.
    pub fn largest(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.vertex_count)
            .max()
            .unwrap_or(0)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn canonical_edge(k: usize, n: usize, edge: &[Vertex]) -> Result<Vec<Vertex>> {
    if edge.len() != k {
        return Err(Error::WrongSetSize {
            expected: k,
            got: edge.len(),
        });
    }
    let mut e = edge.to_vec();
    e.sort_unstable();
    if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
        return Err(Error::VertexOutOfRange {
            vertex: v as usize,
            n,
        });
    }
    if e.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex(e));
    }
    Ok(e)
}

impl Hypergraph {
    /// Simple hypergraph; a repeated edge is an error.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        Self::with_multiplicities(k, n, edges.into_iter().map(|e| (e, 1)))
    }

    /// Multi-hypergraph from `(edge, count)` pairs. Repeats of the same edge
    /// are rejected; express them through the count instead.
    pub fn with_multiplicities<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, u32)>,
        E: AsRef<[Vertex]>,
    {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "uniformity must be at least 2, got {k}"
            )));
        }
        if n > Vertex::MAX as usize {
            return Err(Error::InvalidParameter(format!("too many vertices: {n}")));
        }
        let mut list = Vec::new();
        for (e, c) in edges {
            if c == 0 {
                return Err(Error::InvalidParameter("multiplicity must be positive".into()));
            }
            list.push((canonical_edge(k, n, e.as_ref())?, c));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateEdge(w[0].0.clone()));
        }
        let (edges, multiplicity) = list.into_iter().unzip();
        Ok(Self {
            k,
            n,
            edges,
            multiplicity,
        })
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Self::new::<_, Vec<Vertex>>(k, n, Vec::new())
    }

    /// All k-subsets of `0..n`.
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, (0..n as Vertex).combinations(k))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicity
    }

    /// Number of distinct edges.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges counted with multiplicity, e(H).
    pub fn total_edges(&self) -> u64 {
        self.multiplicity.iter().map(|&c| c as u64).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity.iter().all(|&c| c == 1)
    }

    /// Same edge set with every multiplicity reset to one.
    pub fn underlying_simple(&self) -> Hypergraph {
        Hypergraph {
            k: self.k,
            n: self.n,
            edges: self.edges.clone(),
            multiplicity: vec![1; self.edges.len()],
        }
    }

    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// Vertex degree counted with multiplicity.
    pub fn degree(&self, v: Vertex) -> u64 {
        self.edges
            .iter()
            .zip(&self.multiplicity)
            .filter(|(e, _)| e.contains(&v))
            .map(|(_, &c)| c as u64)
            .sum()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Number of vertices extending the (k-1)-set `set` to an edge.
    pub fn codegree(&self, set: &[Vertex]) -> Result<usize> {
        if set.len() + 1 != self.k {
            return Err(Error::WrongSetSize {
                expected: self.k - 1,
                got: set.len(),
            });
        }
        for &v in set {
            self.check_vertex(v as usize)?;
        }
        let mut s = set.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(s));
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| {
                let mut i = 0;
                for &v in e.iter() {
                    if i < s.len() && s[i] == v {
                        i += 1;
                    }
                }
                i == s.len()
            })
            .count())
    }

    /// Codegrees of every (k-1)-set lying in at least one edge.
    pub fn codegree_table(&self) -> HashMap<Vec<Vertex>, usize> {
        let mut table: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for e in &self.edges {
            for sub in e.iter().copied().combinations(self.k - 1) {
                *table.entry(sub).or_insert(0) += 1;
            }
        }
        table
    }

    /// δ_{k-1}(H) over all (k-1)-subsets; uncovered ones contribute 0.
    pub fn min_codegree(&self) -> Result<usize> {
        if self.n < self.k {
            return Err(Error::InvalidParameter(format!(
                "minimum codegree needs n >= k (n = {}, k = {})",
                self.n, self.k
            )));
        }
        let table = self.codegree_table();
        if (table.len() as u128) < binomial(self.n, self.k - 1) {
            return Ok(0);
        }
        Ok(table.values().copied().min().unwrap_or(0))
    }

    /// Tight components: edges are unioned whenever they share a (k-1)-set.
    pub fn tight_components(&self) -> TightDecomposition {
        let m = self.edges.len();
        let mut uf = UnionFind::new(m);
        let mut first_owner: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for sub in e.iter().copied().combinations(self.k - 1) {
                match first_owner.get(&sub) {
                    Some(&j) => {
                        uf.union(i, j);
                    }
                    None => {
                        first_owner.insert(sub, i);
                    }
                }
            }
        }

        let mut id_of_root: HashMap<usize, usize> = HashMap::new();
        let mut component_of = Vec::with_capacity(m);
        let mut members: Vec<Vec<usize>> = Vec::new();
        for i in 0..m {
            let root = uf.find(i);
            let id = *id_of_root.entry(root).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[id].push(i);
            component_of.push(id);
        }

        let components = members
            .into_iter()
            .map(|edge_indices| {
                let mut seen = vec![false; self.n];
                for &i in &edge_indices {
                    for &v in &self.edges[i] {
                        seen[v as usize] = true;
                    }
                }
                let vertex_set: Vec<Vertex> = (0..self.n as Vertex)
                    .filter(|&v| seen[v as usize])
                    .collect();
                Component {
                    vertex_count: vertex_set.len(),
                    edge_indices,
                    vertex_set,
                }
            })
            .collect();

        TightDecomposition {
            component_of,
            components,
        }
    }

    /// Number of vertices met by the largest tight component.
    pub fn tc(&self) -> usize {
        self.tight_components().largest()
    }

    /// Every (k-1)-set is covered and all edges form one tight component.
    pub fn is_hypergraph_connected(&self) -> Result<bool> {
        if self.min_codegree()? == 0 {
            return Ok(false);
        }
        Ok(self.tight_components().len() == 1)
    }

    /// Link (k-1)-graph of `v`, relabelled order-preservingly onto `0..n-1`.
    pub fn link(&self, v: Vertex) -> Result<Hypergraph> {
        if self.k < 3 {
            return Err(Error::InvalidParameter(
                "link needs uniformity at least 3".into(),
            ));
        }
        self.check_vertex(v as usize)?;
        let relabel = |u: Vertex| if u < v { u } else { u - 1 };
        let edges = self
            .edges
            .iter()
            .zip(&self.multiplicity)
            .filter(|(e, _)| e.contains(&v))
            .map(|(e, &c)| {
                let rest: Vec<Vertex> = e.iter().filter(|&&u| u != v).map(|&u| relabel(u)).collect();
                (rest, c)
            });
        Hypergraph::with_multiplicities(self.k - 1, self.n - 1, edges)
    }

    /// Parse the text format: `#` comments, a `k n m` header, then m edge
    /// lines of k vertex indices with an optional `:c` multiplicity suffix.
    pub fn parse(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header \"k n m\"".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let nums: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
        let (k, n, m) = match nums.as_deref() {
            Some(&[k, n, m]) => (k, n, m),
            _ => {
                return Err(parse_err(
                    hline,
                    format!("malformed header {header:?}, expected \"k n m\""),
                ))
            }
        };
        if k < 2 {
            return Err(parse_err(hline, format!("uniformity must be at least 2, got {k}")));
        }

        let mut body: Vec<(usize, Vec<Vertex>, Option<u32>)> = Vec::with_capacity(m);
        let mut last_line = hline;
        for (lineno, line) in lines {
            last_line = lineno;
            if body.len() == m {
                return Err(parse_err(lineno, format!("more than {m} edge lines")));
            }
            let (verts, mult) = match line.split_once(':') {
                Some((v, c)) => {
                    let c: u32 = c
                        .trim()
                        .parse()
                        .ok()
                        .filter(|&c| c >= 1)
                        .ok_or_else(|| parse_err(lineno, format!("bad multiplicity {:?}", c.trim())))?;
                    (v, Some(c))
                }
                None => (line, None),
            };
            let mut edge = Vec::with_capacity(k);
            for tok in verts.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad vertex index {tok:?}")))?;
                if v >= n {
                    return Err(parse_err(lineno, format!("vertex {v} out of range (n = {n})")));
                }
                edge.push(v as Vertex);
            }
            if edge.len() != k {
                return Err(parse_err(
                    lineno,
                    format!("expected {k} vertices, found {}", edge.len()),
                ));
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(parse_err(lineno, format!("edge {edge:?} repeats a vertex")));
            }
            body.push((lineno, edge, mult));
        }
        if body.len() < m {
            return Err(parse_err(
                last_line + 1,
                format!("expected {m} edge lines, found {}", body.len()),
            ));
        }

        let multi_mode = body.iter().any(|(_, _, c)| c.is_some());
        let mut merged: Vec<(Vec<Vertex>, u32)> = Vec::with_capacity(m);
        let mut index: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for (lineno, edge, c) in body {
            let c = c.unwrap_or(1);
            match index.get(&edge) {
                Some(&i) if multi_mode => merged[i].1 += c,
                Some(_) => {
                    return Err(parse_err(lineno, format!("duplicate edge {edge:?}")));
                }
                None => {
                    index.insert(edge.clone(), merged.len());
                    merged.push((edge, c));
                }
            }
        }
        Hypergraph::with_multiplicities(k, n, merged)
    }

    /// Canonical text form; multiplicities other than one are written as `:c`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.k, self.n, self.edges.len())?;
        for (e, &c) in self.edges.iter().zip(&self.multiplicity) {
            write!(f, "{}", e.iter().join(" "))?;
            if c != 1 {
                write!(f, ":{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3(n: usize, edges: &[[Vertex; 3]]) -> Hypergraph {
        Hypergraph::new(3, n, edges.iter()).unwrap()
    }

    #[test]
    fn codegree_counts_extensions() {
        let k5 = Hypergraph::complete(3, 5).unwrap();
        assert_eq!(k5.codegree(&[0, 1]).unwrap(), 3);
        let h = h3(4, &[[0, 1, 2], [0, 1, 3]]);
        assert_eq!(h.codegree(&[1, 0]).unwrap(), 2);
        assert_eq!(h.codegree(&[2, 3]).unwrap(), 0);
    }

    #[test]
    fn codegree_rejects_bad_sets() {
        let h = h3(4, &[[0, 1, 2]]);
        assert!(matches!(h.codegree(&[0]), Err(Error::WrongSetSize { .. })));
        assert!(matches!(h.codegree(&[0, 7]), Err(Error::VertexOutOfRange { vertex: 7, .. })));
        assert!(matches!(h.codegree(&[1, 1]), Err(Error::RepeatedVertex(_))));
    }

    #[test]
    fn min_codegree_includes_uncovered_pairs() {
        assert_eq!(Hypergraph::complete(3, 6).unwrap().min_codegree().unwrap(), 4);
        assert_eq!(h3(4, &[[0, 1, 2]]).min_codegree().unwrap(), 0);
        assert!(h3(2, &[]).min_codegree().is_err());
    }

    #[test]
    fn components_of_small_examples() {
        let h = h3(6, &[[0, 1, 2], [1, 2, 3], [3, 4, 5]]);
        let d = h.tight_components();
        assert_eq!(d.len(), 2);
        assert_eq!(d.components[0].edge_indices, vec![0, 1]);
        assert_eq!(d.components[0].vertex_set, vec![0, 1, 2, 3]);
        assert_eq!(d.components[1].edge_indices, vec![2]);
        assert_eq!(d.component_of, vec![0, 0, 1]);
        assert_eq!(h.tc(), 4);

        let k4 = Hypergraph::complete(3, 4).unwrap();
        let d = k4.tight_components();
        assert_eq!(d.len(), 1);
        assert_eq!(d.components[0].edge_indices.len(), 4);
    }

    #[test]
    fn empty_hypergraph_has_nothing() {
        let h = Hypergraph::empty(3, 10).unwrap();
        assert!(h.tight_components().is_empty());
        assert_eq!(h.tc(), 0);
        assert!(!h.is_hypergraph_connected().unwrap());
    }

    #[test]
    fn connectivity_of_complete_graph() {
        assert!(Hypergraph::complete(3, 5).unwrap().is_hypergraph_connected().unwrap());
        assert!(Hypergraph::complete(4, 7).unwrap().is_hypergraph_connected().unwrap());
        assert!(h3(2, &[]).is_hypergraph_connected().is_err());
    }

    #[test]
    fn links() {
        let l = Hypergraph::complete(3, 5).unwrap().link(0).unwrap();
        assert_eq!(l, Hypergraph::complete(2, 4).unwrap());

        let l = h3(4, &[[0, 1, 2], [0, 1, 3]]).link(0).unwrap();
        assert_eq!(l.edges(), &[vec![0, 1], vec![0, 2]]);
        assert_eq!(l.n(), 3);

        let l = h3(4, &[[0, 1, 2], [1, 2, 3]]).link(2).unwrap();
        assert_eq!(l.edges(), &[vec![0, 1], vec![1, 2]]);

        let g = Hypergraph::complete(2, 4).unwrap();
        assert!(g.link(0).is_err());
        assert!(h3(4, &[]).link(4).is_err());
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            Hypergraph::new(3, 4, [[0u32, 1, 2], [2, 1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, 4, [[0u32, 1, 1]]),
            Err(Error::RepeatedVertex(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, 4, [[0u32, 1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 4, [vec![0u32, 1]]),
            Err(Error::WrongSetSize { .. })
        ));
        let h = Hypergraph::new(3, 5, [[4u32, 0, 2], [1, 0, 2]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![0, 2, 4]]);
    }

    #[test]
    fn parse_basic_and_serialize() {
        let h = Hypergraph::parse("3 4 1\n0 1 2\n").unwrap();
        assert_eq!((h.k(), h.n(), h.num_edges()), (3, 4, 1));
        assert_eq!(h.to_text(), "3 4 1\n0 1 2\n");

        let h = Hypergraph::parse("# comment\n3 5 2\n4 3 2\n\n2 1 0 : 3\n").unwrap();
        assert_eq!(h.to_text(), "3 5 2\n0 1 2:3\n2 3 4\n");
        assert_eq!(h.total_edges(), 4);
        assert!(!h.is_simple());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Hypergraph::parse("3 4 1\n0 1 5\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "vertex 5 out of range (n = 4)".into()
            }
        );
        assert!(err.to_string().contains("vertex 5 out of range"));

        let line_of = |t: &str| match Hypergraph::parse(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("3 4\n"), 1);
        assert_eq!(line_of("#x\n3 4 two\n"), 2);
        assert_eq!(line_of("3 4 2\n0 1 2\n2 1 0\n"), 3);
        assert_eq!(line_of("3 4 1\n0 1\n"), 2);
        assert_eq!(line_of("3 4 1\n0 1 2\n1 2 3\n"), 3);
        assert_eq!(line_of("3 4 2\n0 1 2\n"), 3);
        assert_eq!(line_of("3 4 1\n0 1 2:0\n"), 2);
        assert_eq!(line_of("3 4 1\n0 0 2\n"), 2);
    }

    #[test]
    fn multi_mode_merges_repeats() {
        let h = Hypergraph::parse("3 4 2\n0 1 2:2\n2 1 0\n").unwrap();
        assert_eq!(h.multiplicities(), &[3]);
    }
}
