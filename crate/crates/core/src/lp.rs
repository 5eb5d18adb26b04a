//! Two-phase dense simplex for `min c·x  s.t.  A x = b, x >= 0`.
//!
//! Bland's rule throughout, so degenerate problems terminate. Sized for the few dozen
//! variables that arise from 1-Laplacian quotients at desk scale.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

const EPS: f64 = 1e-10;

struct Tableau {
    // m rows of [coefficients | rhs]
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for x in self.t[row].iter_mut() {
            *x /= p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let f = line[col];
            if f != 0.0 {
                for (x, y) in line.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut rc = cost.to_vec();
        rc.resize(self.width, 0.0);
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost.get(b).copied().unwrap_or(0.0);
            if cb != 0.0 {
                for j in 0..self.width {
                    rc[j] -= cb * self.t[r][j];
                }
            }
        }
        rc
    }

    /// Runs simplex iterations restricted to columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> bool {
        loop {
            let rc = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&j| rc[j] < -EPS) else {
                return true;
            };
            let rhs = self.width;
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.t.len() {
                let a = self.t[r][enter];
                if a > EPS {
                    let ratio = self.t[r][rhs] / a;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, best)) => {
                            if ratio < best - EPS
                                || (ratio <= best + EPS && self.basis[r] < self.basis[lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, enter);
        }
    }
}

/// Minimizes `cost · x` subject to `a x = b`, `x >= 0`. `a` is given row by row.
pub fn minimize(cost: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let m = a.len();
    let n = cost.len();
    let width = n + m;
    let mut t = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "constraint row has wrong length");
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut line = vec![0.0; width + 1];
        for j in 0..n {
            line[j] = sign * row[j];
        }
        line[n + i] = 1.0;
        line[width] = sign * b[i];
        t.push(line);
    }
    let mut tab = Tableau { t, basis: (n..n + m).collect(), width };

    // phase one: minimize the sum of artificials
    let mut phase1 = vec![0.0; width];
    for c in phase1.iter_mut().skip(n) {
        *c = 1.0;
    }
    tab.optimize(&phase1, width);
    let infeasibility: f64 = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bv)| bv >= n)
        .map(|(r, _)| tab.t[r][width])
        .sum();
    let scale = b.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    if infeasibility > 1e-8 * scale {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| tab.t[r][j].abs() > 1e-9) {
                tab.pivot(r, col);
                r += 1;
            } else {
                tab.t.remove(r);
                tab.basis.remove(r);
            }
        } else {
            r += 1;
        }
    }

    let mut phase2 = cost.to_vec();
    phase2.resize(width, 0.0);
    if !tab.optimize(&phase2, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[r][width];
        }
    }
    let value = cost.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_transport_problem() {
        // min x + 2y  s.t. x + y = 1 (slack form)
        let out = minimize(&[1.0, 2.0], &[vec![1.0, 1.0]], &[1.0]);
        match out {
            LpOutcome::Optimal { value, x } => {
                assert!((value - 1.0).abs() < 1e-12);
                assert!((x[0] - 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        assert_eq!(minimize(&[1.0], &[vec![1.0]], &[-1.0]), LpOutcome::Infeasible);
        // min -x s.t. x - y = 0
        assert_eq!(minimize(&[-1.0, 0.0], &[vec![1.0, -1.0]], &[0.0]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let a = [vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0], vec![0.0, 1.0, 1.0]];
        let out = minimize(&[1.0, 1.0, 1.0], &a, &[2.0, 4.0, 1.0]);
        let LpOutcome::Optimal { value, .. } = out else { panic!("{out:?}") };
        assert!((value - 2.0).abs() < 1e-12);
    }
}
