//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c·x  s.t.  A x = b, x >= 0`. When phase one ends with a
//! positive artificial sum, the phase-one duals form a Farkas certificate
//! `y` with `yᵀA <= 0` and `yᵀb > 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    /// `y` over the original rows: `yᵀA <= 0` componentwise and `yᵀb > 0`.
    Infeasible { farkas: Vec<Q> },
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    obj: Vec<Q>,
    obj_value: Q,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        self.rhs[r] /= &p;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, pv) in self.obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.obj_value -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the allowed columns. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

pub fn solve(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|r| r.len() == n));

    // flip rows so b >= 0, then append one artificial per row
    let signs: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Q> = a[i]
            .iter()
            .map(|v| if signs[i] { -v } else { v.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        rows.push(row);
        rhs.push(if signs[i] { -&b[i] } else { b[i].clone() });
    }
    let mut obj = vec![Q::zero(); n + m];
    for j in 0..n {
        obj[j] = -rows.iter().fold(Q::zero(), |s, r| s + &r[j]);
    }
    let obj_value = -rhs.iter().fold(Q::zero(), |s, v| s + v);
    let mut t = Tableau {
        rows,
        rhs,
        obj,
        obj_value,
        basis: (n..n + m).collect(),
    };
    t.optimize(n + m);

    // obj_value holds minus the artificial sum
    if t.obj_value.is_negative() {
        let farkas = (0..m)
            .map(|i| {
                let y = Q::one() - &t.obj[n + i];
                if signs[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // drive zero-level artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // phase two
    let mut obj = vec![Q::zero(); n + m];
    obj[..n].clone_from_slice(c);
    let mut obj_value = Q::zero();
    for (r, &bj) in t.basis.iter().enumerate() {
        let cb = c[bj].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..n + m {
            if !t.rows[r][j].is_zero() {
                obj[j] -= &cb * &t.rows[r][j];
            }
        }
        obj_value -= &cb * &t.rhs[r];
    }
    t.obj = obj;
    t.obj_value = obj_value;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &bj) in t.basis.iter().enumerate() {
        x[bj] = t.rhs[r].clone();
    }
    LpOutcome::Optimal {
        value: -t.obj_value,
        x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn qi(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![qi(&[1, 2, 1, 0]), qi(&[3, 1, 0, 1])];
        let b = qi(&[4, 6]);
        let c = qi(&[-1, -1, 0, 0]);
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(-14, 5));
                assert_eq!(x[0], q(8, 5));
                assert_eq!(x[1], q(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x + y = 1, x + y = 2
        let a = vec![qi(&[1, 1]), qi(&[1, 1])];
        let b = qi(&[1, 2]);
        match solve(&a, &b, &qi(&[0, 0])) {
            LpOutcome::Infeasible { farkas } => {
                for j in 0..2 {
                    let col: Q = (0..2).map(|i| &farkas[i] * &a[i][j]).sum();
                    assert!(!col.is_positive());
                }
                let yb: Q = (0..2).map(|i| &farkas[i] * &b[i]).sum();
                assert!(yb.is_positive());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_certificate() {
        // x = -1 with x >= 0
        let a = vec![qi(&[1])];
        let b = qi(&[-1]);
        match solve(&a, &b, &qi(&[0])) {
            LpOutcome::Infeasible { farkas } => {
                assert!(!(&farkas[0] * &a[0][0]).is_positive());
                assert!((&farkas[0] * &b[0]).is_positive());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded() {
        // min -x s.t. x - y = 0
        let a = vec![qi(&[1, -1])];
        assert_eq!(solve(&a, &qi(&[0]), &qi(&[-1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = vec![qi(&[1, 1]), qi(&[2, 2])];
        let b = qi(&[1, 2]);
        match solve(&a, &b, &qi(&[1, 0])) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(0, 1));
                assert_eq!(x, vec![q(0, 1), q(1, 1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling example; Bland's rule must terminate.
        let a = vec![
            vec![q(1, 4), q(-8, 1), q(-1, 1), q(9, 1), q(1, 1), q(0, 1), q(0, 1)],
            vec![q(1, 2), q(-12, 1), q(-1, 2), q(3, 1), q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)],
        ];
        let b = qi(&[0, 0, 1]);
        let c = vec![q(-3, 4), q(20, 1), q(-1, 2), q(6, 1), q(0, 1), q(0, 1), q(0, 1)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-5, 4)),
            other => panic!("{other:?}"),
        }
    }
}
