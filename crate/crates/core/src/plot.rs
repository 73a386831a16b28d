//! CSV and SVG rendering of the f_3 bound curves.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bounds::{f3_lower, f3_upper, sample_grid, PiecewiseBound};
use crate::error::Result;
use crate::Rational;

/// Digits kept when rendering rationals for CSV output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Decimal rendering of `x` rounded (half away from zero) to `sig`
/// significant digits.
pub fn to_decimal(x: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".into();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let ten = BigInt::from(10);

    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rational::new(BigInt::from(1), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    // exponent of the leading digit: 10^e <= a < 10^(e+1)
    let mut e = a.to_f64().map(|f| f.log10().floor() as i64).unwrap_or(0);
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let round = |e: i64| -> BigInt {
        let scaled = &a * pow10(sig as i64 - 1 - e);
        let (q, r) = scaled.numer().div_rem(scaled.denom());
        if r * 2 >= *scaled.denom() {
            q + 1
        } else {
            q
        }
    };
    let mut m = round(e);
    if m >= num_traits::pow(ten.clone(), sig) {
        e += 1;
        m = round(e);
    }
    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);

    let body = if e < 0 {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    } else if (e as usize) + 1 >= sig {
        format!("{}{}", digits, "0".repeat(e as usize + 1 - sig))
    } else {
        let (int_part, frac) = digits.split_at(e as usize + 1);
        format!("{int_part}.{frac}")
    };
    format!("{sign}{body}")
}

/// One sample of both curves, kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRow {
    pub x: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

pub fn curve_rows(xmin: &Rational, xmax: &Rational, samples: usize) -> Result<Vec<CurveRow>> {
    sample_grid(xmin, xmax, samples)?
        .into_iter()
        .map(|x| {
            Ok(CurveRow {
                lower: f3_lower(&x)?,
                upper: f3_upper(&x)?,
                x,
            })
        })
        .collect()
}

/// Header `x,lower,upper` and one row per sample point.
pub fn emit_curve_csv(xmin: &Rational, xmax: &Rational, samples: usize) -> Result<String> {
    let mut out = String::from("x,lower,upper\n");
    for row in curve_rows(xmin, xmax, samples)? {
        let _ = writeln!(
            out,
            "{},{},{}",
            to_decimal(&row.x, SIGNIFICANT_DIGITS),
            to_decimal(&row.lower, SIGNIFICANT_DIGITS),
            to_decimal(&row.upper, SIGNIFICANT_DIGITS)
        );
    }
    Ok(out)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;

struct Frame {
    xmin: f64,
    xmax: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.xmin) / (self.xmax - self.xmin) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - y * (HEIGHT - 2.0 * MARGIN)
    }
}

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Static SVG: red piecewise-linear lower bound, blue right-closed steps for
/// the upper bound, axes with tick labels over `[xmin, xmax] x [0, 1]`.
pub fn emit_curve_svg(xmin: &Rational, xmax: &Rational, samples: usize) -> Result<String> {
    let rows = curve_rows(xmin, xmax, samples)?;
    let frame = Frame {
        xmin: f(xmin),
        xmax: f(xmax),
    };
    let lower = PiecewiseBound::f3_lower(xmin)?;
    let upper = PiecewiseBound::f3_upper(xmin)?;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
    );
    let _ = writeln!(s, "<!-- f3 bounds: xmin={xmin} xmax={xmax} samples={samples} -->");
    let _ = writeln!(
        s,
        "<!-- lower: {} pieces; upper: {} steps; {} sampled rows -->",
        lower.segments.len(),
        upper.segments.len(),
        rows.len()
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);

    let (x0, y0) = (frame.px(frame.xmin), frame.py(0.0));
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}"/><line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{:.2}"/></g>"#,
        frame.px(frame.xmax),
        frame.py(1.0)
    );
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="12" fill="black">"#);
    for i in 0..=10 {
        let xv = frame.xmin + (frame.xmax - frame.xmin) * i as f64 / 10.0;
        let px = frame.px(xv);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{xv:.3}</text>"#,
            y0 + 5.0,
            y0 + 20.0
        );
        let yv = i as f64 / 10.0;
        let py = frame.py(yv);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.1}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="400" y="590" text-anchor="middle">x (minimum codegree / n)</text></g>"#
    );

    let clip = |a: &Rational, b: &Rational| -> Option<(Rational, Rational)> {
        let lo = a.max(xmin);
        let hi = b.min(xmax);
        (lo <= hi).then(|| (lo.clone(), hi.clone()))
    };

    let mut pts = Vec::new();
    for seg in &lower.segments {
        if let Some((lo, hi)) = clip(&seg.lo, &seg.hi) {
            for xv in [lo, hi] {
                let yv = f(&seg.value_at(&xv));
                pts.push(format!("{:.2},{:.2}", frame.px(f(&xv)), frame.py(yv)));
            }
        }
    }
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="red" stroke-width="2" points="{}"/>"#,
        pts.join(" ")
    );

    let mut path = String::new();
    for seg in &upper.segments {
        if let Some((lo, hi)) = clip(&seg.lo, &seg.hi) {
            let yv = f(&seg.value_at(&seg.hi));
            let cmd = if path.is_empty() { 'M' } else { 'L' };
            let _ = write!(
                path,
                "{cmd}{:.2},{:.2} L{:.2},{:.2} ",
                frame.px(f(&lo)),
                frame.py(yv),
                frame.px(f(&hi)),
                frame.py(yv)
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<path fill="none" stroke="blue" stroke-width="2" d="{}"/>"#,
        path.trim_end()
    );
    s.push_str("</svg>\n");
    Ok(s)
}
