//! Dense exact-rational simplex for packing LPs: maximize c.x subject to
//! A x <= b, x >= 0, with b >= 0 so the slack basis is feasible from the start.
//! Bland's rule picks both the entering and the leaving variable.

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Clone, Debug)]
pub(crate) struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// Optimal dual multipliers, one per constraint row.
    pub dual: Vec<Rational>,
}

/// Returns `None` when the LP is unbounded.
pub(crate) fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Option<LpSolution> {
    let rows = a.len();
    let vars = c.len();
    let cols = vars + rows;
    debug_assert!(b.iter().all(|x| !x.is_negative()));

    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows + 1);
    for (i, row) in a.iter().enumerate() {
        let mut r = row.clone();
        r.extend((0..rows).map(|j| {
            if i == j {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        r.push(b[i].clone());
        t.push(r);
    }
    let mut obj: Vec<Rational> = c.iter().map(|x| -x.clone()).collect();
    obj.resize(cols + 1, Rational::zero());
    t.push(obj);
    let mut basis: Vec<usize> = (vars..cols).collect();

    while let Some(enter) = (0..cols).find(|&j| t[rows][j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pr, _) = leave?;

        let pivot = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pr || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        basis[pr] = enter;
    }

    let mut primal = vec![Rational::zero(); vars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < vars {
            primal[bv] = t[i][cols].clone();
        }
    }
    let dual = (0..rows).map(|i| t[rows][vars + i].clone()).collect();
    Some(LpSolution {
        value: t[rows][cols].clone(),
        primal,
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::rat;

    #[test]
    fn textbook_lp() {
        // max 3x + 5y : x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let c = vec![rat(3, 1), rat(5, 1)];
        let a = vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(2, 1)],
            vec![rat(3, 1), rat(2, 1)],
        ];
        let b = vec![rat(4, 1), rat(12, 1), rat(18, 1)];
        let s = maximize(&c, &a, &b).unwrap();
        assert_eq!(s.value, rat(36, 1));
        assert_eq!(s.primal, vec![rat(2, 1), rat(6, 1)]);
        assert_eq!(s.dual, vec![rat(0, 1), rat(3, 2), rat(1, 1)]);
    }

    #[test]
    fn unbounded_is_detected() {
        let c = vec![rat(1, 1), rat(1, 1)];
        let a = vec![vec![rat(1, 1), rat(0, 1)]];
        assert!(maximize(&c, &a, &[rat(1, 1)]).is_none());
    }

    #[test]
    fn degenerate_lp_terminates() {
        // Degenerate vertex at the origin; Bland's rule must not cycle.
        let c = vec![rat(10, 1), rat(-57, 1), rat(-9, 1), rat(-24, 1)];
        let a = vec![
            vec![rat(1, 2), rat(-11, 2), rat(-5, 2), rat(9, 1)],
            vec![rat(1, 2), rat(-3, 2), rat(-1, 2), rat(1, 1)],
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        ];
        let b = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
        let s = maximize(&c, &a, &b).unwrap();
        assert_eq!(s.value, rat(1, 1));
    }
}
