//! Small finite fields and the Desarguesian projective planes PG(2, q).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

/// Largest field order supported by [`FiniteField::new`].
pub const FIELD_CAP: u64 = 32;

/// Returns `(p, d)` with `q = p^d` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut d = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// Orders for which a projective plane is built here: 0 (the degenerate
/// r = 2 entry), 1 (the triangle), and every prime power.
pub fn is_admissible_order(m: u64) -> bool {
    m <= 1 || is_prime_power(m)
}

/// GF(p^d) with elements `0..q`; element `a` encodes the polynomial whose
/// coefficients are the base-p digits of `a` (least significant first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    d: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
}

fn digits(mut a: u64, p: u64, d: u32) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let r = a % p;
            a /= p;
            r
        })
        .collect()
}

fn undigits(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * mc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for deg in 1..=d / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut g = digits(low, p, deg as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `d`, ordering candidates by their
/// coefficient vectors from the x^(d-1) term down to the constant term.
fn least_irreducible(p: u64, d: u32) -> Vec<u64> {
    (0..p.pow(d))
        .map(|low| {
            let mut f = digits(low, p, d);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > FIELD_CAP {
            return Err(Error::ExceedsCap {
                what: "field order",
                value: q,
                cap: FIELD_CAP,
            });
        }
        let modulus = if d == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, d)
        };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a, p, d);
            for b in 0..q {
                let db = digits(b, p, d);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p) as u16;

                let mut prod = vec![0u64; 2 * d as usize - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let red = if d == 1 { prod } else { poly_rem(&prod, &modulus, p) };
                mul[(a * q + b) as usize] = undigits(&red, p) as u16;
            }
        }
        Ok(Self {
            p,
            d,
            q: qs,
            modulus,
            add,
            mul,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }
}

/// Points `0..num_points` and lines given as point lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    pub num_points: usize,
    pub lines: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Swap the roles of points and lines.
    pub fn dual(&self) -> IncidenceStructure {
        let mut lines = vec![Vec::new(); self.num_points];
        for (l, pts) in self.lines.iter().enumerate() {
            for &p in pts {
                lines[p].push(l);
            }
        }
        IncidenceStructure {
            num_points: self.lines.len(),
            lines,
        }
    }

    /// Lines become edges; all lines must share one size.
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        IncidenceStructure {
            num_points: h.n(),
            lines: h
                .edges()
                .iter()
                .map(|e| e.iter().map(|&v| v as usize).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneAxiomReport {
    /// Order implied by the size of the first line.
    pub order: Option<usize>,
    pub checks: Vec<AxiomCheck>,
}

impl PlaneAxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self, axiom: &str) -> bool {
        self.checks.iter().any(|c| c.axiom == axiom && !c.passed)
    }
}

pub const AXIOM_LINE_SIZES: &str = "line sizes";
pub const AXIOM_POINT_DEGREES: &str = "point degrees";
pub const AXIOM_POINT_PAIRS: &str = "pair of points on unique line";
pub const AXIOM_LINE_PAIRS: &str = "pair of lines meet in unique point";

fn check(axiom: &'static str, counterexample: Option<String>) -> AxiomCheck {
    AxiomCheck {
        axiom,
        passed: counterexample.is_none(),
        counterexample,
    }
}

/// Checks the four projective-plane axioms, reporting the first
/// counterexample for each one that fails.
pub fn verify_plane_axioms(structure: &IncidenceStructure) -> PlaneAxiomReport {
    let v = structure.num_points;
    let lines = &structure.lines;
    let line_size = lines.first().map(|l| l.len());
    let order = line_size.filter(|&s| s >= 2).map(|s| s - 1);

    let sizes = match line_size {
        None => Some("structure has no lines".to_string()),
        Some(s) if s < 2 => Some(format!("line 0 has {s} points")),
        Some(s) => lines
            .iter()
            .position(|l| l.len() != s)
            .map(|i| format!("line {i} has {} points, line 0 has {s}", lines[i].len())),
    };

    let mut degree = vec![0usize; v];
    let mut bad_point = None;
    for (i, l) in lines.iter().enumerate() {
        for &p in l {
            if p >= v {
                bad_point.get_or_insert(format!("line {i} contains invalid point {p}"));
            } else {
                degree[p] += 1;
            }
        }
    }
    let degrees = bad_point.clone().or_else(|| match line_size {
        None => Some("structure has no lines".to_string()),
        Some(s) => degree
            .iter()
            .position(|&d| d != s)
            .map(|p| format!("point {p} lies on {} lines, expected {s}", degree[p])),
    });

    let point_pairs = if bad_point.is_some() {
        bad_point.clone()
    } else {
        let mut count = vec![0u32; v * v];
        for l in lines {
            for (a, &x) in l.iter().enumerate() {
                for &y in &l[a + 1..] {
                    count[x * v + y] += 1;
                    count[y * v + x] += 1;
                }
            }
        }
        (0..v)
            .flat_map(|x| (x + 1..v).map(move |y| (x, y)))
            .find(|&(x, y)| count[x * v + y] != 1)
            .map(|(x, y)| format!("points {x} and {y} lie on {} common lines", count[x * v + y]))
    };

    let line_pairs = if bad_point.is_some() {
        bad_point
    } else {
        let b = lines.len();
        let mut through = vec![Vec::new(); v];
        for (i, l) in lines.iter().enumerate() {
            for &p in l {
                through[p].push(i);
            }
        }
        let mut count = vec![0u32; b * b];
        for t in &through {
            for (a, &x) in t.iter().enumerate() {
                for &y in &t[a + 1..] {
                    count[x * b + y] += 1;
                    count[y * b + x] += 1;
                }
            }
        }
        (0..b)
            .flat_map(|x| (x + 1..b).map(move |y| (x, y)))
            .find(|&(x, y)| count[x * b + y] != 1)
            .map(|(x, y)| format!("lines {x} and {y} share {} points", count[x * b + y]))
    };

    PlaneAxiomReport {
        order,
        checks: vec![
            check(AXIOM_LINE_SIZES, sizes),
            check(AXIOM_POINT_DEGREES, degrees),
            check(AXIOM_POINT_PAIRS, point_pairs),
            check(AXIOM_LINE_PAIRS, line_pairs),
        ],
    }
}

/// A projective plane of order `s` on points `0..s^2+s+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePlane {
    order: usize,
    lines: Vec<Vec<usize>>,
    lines_through: Vec<Vec<usize>>,
}

/// Representatives of the projective points of GF(q)^3 whose first nonzero
/// coordinate is 1, in lexicographic order.
fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let t = [a, b, c];
                if t.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(t);
                }
            }
        }
    }
    out
}

impl ProjectivePlane {
    /// Order 1 gives the triangle; prime powers up to [`FIELD_CAP`] give PG(2, s).
    pub fn new(s: u64) -> Result<Self> {
        let lines = match s {
            1 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
            _ if s >= 2 && is_prime_power(s) => {
                let f = FiniteField::new(s)?;
                let triples = normalized_triples(f.order());
                let dot = |a: &[usize; 3], b: &[usize; 3]| {
                    (0..3).fold(0, |acc, i| f.add(acc, f.mul(a[i], b[i])))
                };
                triples
                    .iter()
                    .map(|l| {
                        (0..triples.len())
                            .filter(|&p| dot(l, &triples[p]) == 0)
                            .collect()
                    })
                    .collect()
            }
            _ => return Err(Error::UnsupportedOrder(s)),
        };
        let points = (s * s + s + 1) as usize;
        let mut lines_through = vec![Vec::new(); points];
        for (i, l) in lines.iter().enumerate() {
            for &p in l {
                lines_through[p].push(i);
            }
        }
        Ok(Self {
            order: s as usize,
            lines,
            lines_through,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_points(&self) -> usize {
        self.lines_through.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Lines through `point`, ascending.
    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.lines_through[point]
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.lines_through[a]
            .iter()
            .copied()
            .find(|&l| self.lines[l].binary_search(&b).is_ok())
    }

    pub fn incidence(&self) -> IncidenceStructure {
        IncidenceStructure {
            num_points: self.num_points(),
            lines: self.lines.clone(),
        }
    }

    /// Lines as edges of an (s+1)-uniform hypergraph.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(
            self.order + 1,
            self.num_points(),
            self.lines
                .iter()
                .map(|l| l.iter().map(|&p| p as Vertex).collect::<Vec<_>>()),
        )
        .expect("plane lines are distinct sets of equal size")
    }
}

impl fmt::Display for ProjectivePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hypergraph())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms(f: &FiniteField) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    fn multiplicative_order(f: &FiniteField, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = f.mul(x, g);
            k += 1;
        }
        k
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(31), Some((31, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn admissible_orders() {
        assert!(is_admissible_order(0));
        assert!(is_admissible_order(1));
        assert!(is_admissible_order(8));
        assert!(!is_admissible_order(6));
        assert!(!is_admissible_order(10));
    }

    #[test]
    fn all_fields_up_to_cap_satisfy_axioms() {
        for q in 2..=FIELD_CAP {
            if !is_prime_power(q) {
                continue;
            }
            let f = FiniteField::new(q).unwrap();
            check_field_axioms(&f);
            let has_generator = (1..f.order()).any(|g| multiplicative_order(&f, g) == f.order() - 1);
            assert!(has_generator, "GF({q}) multiplicative group not cyclic");
        }
    }

    #[test]
    fn small_fields() {
        let f5 = FiniteField::new(5).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f5.add(a, b), (a + b) % 5);
                assert_eq!(f5.mul(a, b), (a * b) % 5);
            }
        }
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        for a in 1..4 {
            assert_eq!(f4.mul(a, f4.mul(a, a)), 1);
        }
        assert_eq!(FiniteField::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_errors() {
        assert_eq!(FiniteField::new(6), Err(Error::NotPrimePower(6)));
        assert!(FiniteField::new(6).unwrap_err().to_string().contains("not a prime power"));
        assert!(matches!(FiniteField::new(37), Err(Error::ExceedsCap { .. })));
    }

    #[test]
    fn degenerate_plane() {
        let p = ProjectivePlane::new(1).unwrap();
        assert_eq!(p.lines(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(verify_plane_axioms(&p.incidence()).passed());
    }

    #[test]
    fn fano_plane() {
        let p = ProjectivePlane::new(2).unwrap();
        assert_eq!(p.num_points(), 7);
        assert_eq!(p.lines().len(), 7);
        assert!(p.lines().iter().all(|l| l.len() == 3));
        assert!((0..7).all(|x| p.lines_through(x).len() == 3));
        let report = verify_plane_axioms(&p.incidence());
        assert!(report.passed());
        assert_eq!(report.order, Some(2));
        assert_eq!(p.line_through(0, 0), None);
    }

    #[test]
    fn fano_without_a_line_fails() {
        let mut s = ProjectivePlane::new(2).unwrap().incidence();
        s.lines.pop();
        let report = verify_plane_axioms(&s);
        assert!(report.failed(AXIOM_POINT_PAIRS));
        assert!(!report.passed());
    }

    #[test]
    fn complete_triple_system_is_not_a_plane() {
        let k7 = Hypergraph::complete(3, 7).unwrap();
        let report = verify_plane_axioms(&IncidenceStructure::from_hypergraph(&k7));
        assert!(report.failed(AXIOM_POINT_PAIRS));
        let c = report.checks.iter().find(|c| c.axiom == AXIOM_POINT_PAIRS).unwrap();
        assert!(c.counterexample.as_ref().unwrap().contains("5 common lines"));
    }

    #[test]
    fn planes_of_every_supported_order() {
        for s in 1..=FIELD_CAP {
            match ProjectivePlane::new(s) {
                Ok(p) => {
                    let n = (s * s + s + 1) as usize;
                    assert_eq!(p.num_points(), n);
                    assert_eq!(p.lines().len(), n);
                    let inc = p.incidence();
                    assert!(verify_plane_axioms(&inc).passed(), "order {s}");
                    assert!(verify_plane_axioms(&inc.dual()).passed(), "dual of order {s}");
                }
                Err(e) => {
                    assert!(!is_admissible_order(s));
                    assert_eq!(e, Error::UnsupportedOrder(s));
                }
            }
        }
    }

    #[test]
    fn unsupported_orders() {
        for s in [0, 6, 10] {
            assert_eq!(ProjectivePlane::new(s), Err(Error::UnsupportedOrder(s)));
        }
        assert!(ProjectivePlane::new(37).is_err());
    }

    #[test]
    fn order_three_plane() {
        let p = ProjectivePlane::new(3).unwrap();
        assert_eq!(p.num_points(), 13);
        assert!(p.lines().iter().all(|l| l.len() == 4));
        assert_eq!(p.to_hypergraph().k(), 4);
    }
}
