//! Exact-rational bound curves for the largest tight component forced by a
//! minimum codegree of `x n`.
//!
//! Nothing in this module uses floating point; floats appear only when the
//! [`crate::plot`] module renders curves.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::is_admissible_order;
use crate::Rational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn int(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Iterator over r >= 2 with r - 2 an admissible plane order.
pub fn admissible_rs() -> impl Iterator<Item = u64> {
    (2u64..).filter(|r| is_admissible_order(r - 2))
}

/// The first `count` admissible values of r: 2, 3, 4, 5, 6, 7, 9, ...
pub fn r_sequence(count: usize) -> Vec<u64> {
    admissible_rs().take(count).collect()
}

/// (r - 3 + 2/(r-1)) / (r^2 - 3r + 3): the codegree fraction of the
/// projective construction for this r.
pub fn q_value(r: u64) -> Result<Rational> {
    if r < 2 {
        return Err(Error::Domain(format!("q_value needs r >= 2, got {r}")));
    }
    let r_ = int(r);
    let num = r_.clone() - int(3) + Rational::new(2.into(), BigInt::from(r - 1));
    Ok(num / int(r * r + 3 - 3 * r))
}

/// (r - 1) / (r^2 - 3r + 3): the tight-component fraction of the construction.
pub fn upper_value(r: u64) -> Rational {
    Rational::new(BigInt::from(r - 1), BigInt::from(r * r + 3 - 3 * r))
}

/// Upper bound on f_3: (r_i - 1)/(r_i^2 - 3 r_i + 3) on (q_{i+1}, q_i].
pub fn f3_upper(x: &Rational) -> Result<Rational> {
    if !x.is_positive() || *x > Rational::one() {
        return Err(Error::Domain(format!("f3_upper needs 0 < x <= 1, got {x}")));
    }
    let mut rs = admissible_rs();
    let mut current = rs.next().unwrap();
    for next in rs {
        if q_value(next)? < *x {
            break;
        }
        current = next;
    }
    Ok(upper_value(current))
}

/// (3r - 4) / ((3r - 3) r): where the plateau 1/(r-1) meets the affine piece.
pub fn lower_breakpoint(r: u64) -> Rational {
    Rational::new(BigInt::from(3 * r - 4), BigInt::from((3 * r - 3) * r))
}

/// Value of every lower-bound case that applies at `x`.
fn lower_cases(x: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let third = rat(1, 3);
    if *x > third {
        out.push(Rational::one());
    }
    if rat(8, 27) <= *x && *x <= third {
        out.push(rat(2, 3));
    }
    if rat(5, 18) <= *x && *x <= rat(8, 27) {
        out.push(int(9) * x - int(2));
    }
    if x.is_positive() {
        // Cases 4 and 5 only apply for r with 1/(r+1) <= x <= 1/r.
        let inv = x.recip().floor().to_integer().to_u64().unwrap_or(u64::MAX);
        let lo = inv.saturating_sub(1).max(3);
        for r in lo..=inv.saturating_add(1) {
            let b = lower_breakpoint(r);
            if rat(1, r as i64 + 1) <= *x && *x <= b {
                out.push(Rational::new(BigInt::one(), BigInt::from(r - 1)));
            }
            if r >= 4 && b <= *x && *x <= rat(1, r as i64) {
                out.push((int(3 * r) * x - int(2)) / int(r - 2));
            }
        }
    }
    out
}

/// Lower bound on f_3: the largest applicable case of the five-case formula,
/// and 0 at x = 0.
pub fn f3_lower(x: &Rational) -> Result<Rational> {
    if x.is_negative() || *x > Rational::one() {
        return Err(Error::Domain(format!("f3_lower needs 0 <= x <= 1, got {x}")));
    }
    Ok(lower_cases(x).into_iter().max().unwrap_or_else(Rational::zero))
}

/// f_2(x) = 1 / floor(1/x).
pub fn f2(x: &Rational) -> Result<Rational> {
    if !x.is_positive() || *x > Rational::one() {
        return Err(Error::Domain(format!("f2 needs 0 < x <= 1, got {x}")));
    }
    Ok(Rational::from_integer(x.recip().floor().to_integer()).recip())
}

/// Component bound for codegree at least (1 - eps) n / r, with 0 <= eps < 1/(r+1):
/// min{1 - 3 eps, 2/3} n for r = 3 and (1 - 3 eps) n / (r - 2) otherwise.
pub fn tc_lower_bound(n: u64, r: u64, eps: &Rational) -> Result<Rational> {
    if r < 3 {
        return Err(Error::Domain(format!("tc_lower_bound needs r >= 3, got {r}")));
    }
    if eps.is_negative() || *eps >= rat(1, r as i64 + 1) {
        return Err(Error::Domain(format!(
            "eps = {eps} outside [0, 1/{})",
            r + 1
        )));
    }
    let base = Rational::one() - int(3) * eps;
    let frac = if r == 3 {
        base.min(rat(2, 3))
    } else {
        base / int(r - 2)
    };
    Ok(frac * int(n))
}

/// Best component bound from the family above for a graph with n vertices
/// and minimum codegree `delta2`.
///
/// For each r the slack is eps_r = max(0, 1 - r delta2 / n); the hypothesis
/// only bounds the codegree from below, so a negative slack is clipped to
/// zero, which is how the r + 1 reading takes over once eps > 1/(3r - 3).
pub fn best_tc_lower(n: u64, delta2: u64) -> Result<Rational> {
    if n == 0 || delta2 > n {
        return Err(Error::Domain(format!(
            "best_tc_lower needs 0 <= delta2 <= n, n > 0 (n = {n}, delta2 = {delta2})"
        )));
    }
    if delta2 == 0 {
        return Ok(Rational::zero());
    }
    let x = Rational::new(BigInt::from(delta2), BigInt::from(n));
    // Beyond ceil(n/delta2) + 1 the slack is zero and n/(r-2) only shrinks.
    let top = n.div_ceil(delta2) + 1;
    let mut best = Rational::zero();
    for r in 3..=top.max(3) {
        let eps = (Rational::one() - int(r) * &x).max(Rational::zero());
        if let Ok(v) = tc_lower_bound(n, r, &eps) {
            best = best.max(v);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    Constant(Rational),
    /// slope * x + intercept
    Affine { slope: Rational, intercept: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub kind: SegmentKind,
}

impl Segment {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    pub fn value_at(&self, x: &Rational) -> Rational {
        match &self.kind {
            SegmentKind::Constant(c) => c.clone(),
            SegmentKind::Affine { slope, intercept } => slope * x + intercept,
        }
    }
}

/// Piecewise constant/affine curve over rationals; segments sorted by `lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseBound {
    pub segments: Vec<Segment>,
}

impl PiecewiseBound {
    /// Steps of [`f3_upper`] on right-closed intervals, covering `[xmin, 1]`.
    pub fn f3_upper(xmin: &Rational) -> Result<Self> {
        if !xmin.is_positive() || *xmin > Rational::one() {
            return Err(Error::Domain(format!("xmin must lie in (0, 1], got {xmin}")));
        }
        let mut segments = Vec::new();
        let mut rs = admissible_rs();
        let mut current = rs.next().unwrap();
        for next in rs {
            let lo = q_value(next)?;
            segments.push(Segment {
                lo: lo.clone(),
                hi: q_value(current)?,
                lo_closed: false,
                hi_closed: true,
                kind: SegmentKind::Constant(upper_value(current)),
            });
            if lo < *xmin {
                break;
            }
            current = next;
        }
        segments.reverse();
        Ok(Self { segments })
    }

    /// Pieces of [`f3_lower`], covering `[xmin, 1]`.
    pub fn f3_lower(xmin: &Rational) -> Result<Self> {
        if !xmin.is_positive() || *xmin > Rational::one() {
            return Err(Error::Domain(format!("xmin must lie in (0, 1], got {xmin}")));
        }
        let closed = |lo: Rational, hi: Rational, kind| Segment {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
            kind,
        };
        let mut segments = vec![
            Segment {
                lo: rat(1, 3),
                hi: Rational::one(),
                lo_closed: false,
                hi_closed: true,
                kind: SegmentKind::Constant(Rational::one()),
            },
            closed(rat(8, 27), rat(1, 3), SegmentKind::Constant(rat(2, 3))),
            closed(
                rat(5, 18),
                rat(8, 27),
                SegmentKind::Affine {
                    slope: int(9),
                    intercept: -int(2),
                },
            ),
            closed(rat(1, 4), lower_breakpoint(3), SegmentKind::Constant(rat(1, 2))),
        ];
        let mut r = 4u64;
        while rat(1, r as i64) >= *xmin {
            let b = lower_breakpoint(r);
            segments.push(closed(
                b.clone(),
                rat(1, r as i64),
                SegmentKind::Affine {
                    slope: Rational::new(BigInt::from(3 * r), BigInt::from(r - 2)),
                    intercept: Rational::new(BigInt::from(-2), BigInt::from(r - 2)),
                },
            ));
            segments.push(closed(
                rat(1, r as i64 + 1),
                b,
                SegmentKind::Constant(Rational::new(BigInt::one(), BigInt::from(r - 1))),
            ));
            r += 1;
        }
        segments.reverse();
        Ok(Self { segments })
    }

    /// Largest value among the segments containing `x`.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        self.segments
            .iter()
            .filter(|s| s.contains(x))
            .map(|s| s.value_at(x))
            .max()
    }

    /// Consecutive segments touch, and any shared closed endpoint carries one value.
    pub fn is_contiguous(&self) -> bool {
        self.segments.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            a.hi == b.lo
                && (a.hi_closed || b.lo_closed)
                && (!(a.hi_closed && b.lo_closed) || a.value_at(&a.hi) == b.value_at(&b.lo))
        })
    }

    /// No affine piece decreases and no step goes down.
    pub fn is_nondecreasing(&self) -> bool {
        let slopes_ok = self.segments.iter().all(|s| match &s.kind {
            SegmentKind::Constant(_) => true,
            SegmentKind::Affine { slope, .. } => !slope.is_negative(),
        });
        slopes_ok
            && self
                .segments
                .windows(2)
                .all(|w| w[0].value_at(&w[0].hi) <= w[1].value_at(&w[1].lo))
    }
}

/// Sample points xmin + j (xmax - xmin) / (samples - 1), j = 0..samples.
pub fn sample_grid(xmin: &Rational, xmax: &Rational, samples: usize) -> Result<Vec<Rational>> {
    if !xmin.is_positive() || xmin >= xmax || *xmax > Rational::one() || samples < 2 {
        return Err(Error::Domain(format!(
            "need 0 < xmin < xmax <= 1 and samples >= 2 (xmin = {xmin}, xmax = {xmax}, samples = {samples})"
        )));
    }
    let step = (xmax - xmin) / int(samples as u64 - 1);
    Ok((0..samples)
        .map(|j| xmin + &step * int(j as u64))
        .collect())
}

/// floor(x) for nonnegative rationals, saturating at u64::MAX.
pub fn floor_u64(x: &Rational) -> u64 {
    x.floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Result of comparing both f_3 curves on the grid x = i / (3 points),
/// i = 1..=points, plus the isolated coincidence point 5/21.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CurveSweep {
    pub points: u64,
    pub dominance_violations: u64,
    pub first_violation: Option<String>,
    /// Grid points below 8/27 where the curves touch.
    pub unexpected_equalities: Vec<String>,
    /// Grid points in [8/27, 1/3] where they differ.
    pub missing_equalities: Vec<String>,
    pub equal_at_5_21: bool,
    pub passed: bool,
}

pub fn sweep_curves(points: u64) -> Result<CurveSweep> {
    if points == 0 {
        return Err(Error::Domain("sweep needs at least one point".into()));
    }
    let mut report = CurveSweep {
        points,
        dominance_violations: 0,
        first_violation: None,
        unexpected_equalities: Vec::new(),
        missing_equalities: Vec::new(),
        equal_at_5_21: false,
        passed: false,
    };
    let plateau = rat(8, 27);
    for i in 1..=points {
        let x = Rational::new(BigInt::from(i), BigInt::from(3 * points));
        let lo = f3_lower(&x)?;
        let hi = f3_upper(&x)?;
        if lo > hi {
            report.dominance_violations += 1;
            report.first_violation.get_or_insert_with(|| format!("x = {x}: {lo} > {hi}"));
        }
        match (lo == hi, x >= plateau) {
            (true, false) => report.unexpected_equalities.push(x.to_string()),
            (false, true) => report.missing_equalities.push(x.to_string()),
            _ => {}
        }
    }
    let x = rat(5, 21);
    report.equal_at_5_21 = f3_lower(&x)? == f3_upper(&x)?;
    report.passed = report.dominance_violations == 0
        && report.unexpected_equalities.is_empty()
        && report.missing_equalities.is_empty()
        && report.equal_at_5_21;
    Ok(report)
}
