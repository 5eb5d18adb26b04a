//! Set functions, Lovász extensions, and `p`-Laplacian eigenvalues.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, IntMatrix, Matrix};
use crate::lp::{minimize, LpOutcome};
use crate::spectral::normalized_up_spectrum;
use crate::{rational_to_f64, Rational};

/// A function on all subsets of `{0, …, n−1}`, indexed by bitmask, with `F(∅) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    n: usize,
    values: Vec<Rational>,
}

pub const MAX_GROUND_SET: usize = 20;

impl SetFunction {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::BudgetExceeded { what: "set function ground set", size: n, budget: MAX_GROUND_SET });
        }
        if values.len() != 1 << n {
            return Err(Error::Precondition(alloc::format!(
                "a set function on {n} elements needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::Precondition("F(∅) must be 0".into()));
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> Rational) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::BudgetExceeded { what: "set function ground set", size: n, budget: MAX_GROUND_SET });
        }
        Self::new(n, (0..1u32 << n).map(&mut f).collect())
    }

    /// Weighted cut `F(A) = Σ_{u∈A, v∉A} w_uv`.
    pub fn cut(n: usize, edges: &[(usize, usize, Rational)]) -> Result<Self> {
        Self::from_fn(n, |a| {
            edges
                .iter()
                .filter(|(u, v, _)| (a >> u & 1) != (a >> v & 1))
                .map(|(_, _, w)| *w)
                .sum()
        })
    }

    /// Modular function `F(A) = Σ_{i∈A} w_i`.
    pub fn modular(weights: &[Rational]) -> Result<Self> {
        Self::from_fn(weights.len(), |a| {
            weights.iter().enumerate().filter(|(i, _)| a >> i & 1 == 1).map(|(_, w)| *w).sum()
        })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn get(&self, mask: u32) -> Rational {
        self.values[mask as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn negated(&self) -> Self {
        Self { n: self.n, values: self.values.iter().map(|v| -v).collect() }
    }
}

/// `F^L(x) = Σ_i (x_(i) − x_(i+1)) F(top i) + x_(n) F(V)` with `x` sorted decreasingly.
pub fn lovasz_extension(f: &SetFunction, x: &[f64]) -> Result<f64> {
    if x.len() != f.n {
        return Err(Error::Precondition("vector length differs from the ground set".into()));
    }
    if f.n == 0 {
        return Ok(0.0);
    }
    let mut order: Vec<usize> = (0..f.n).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]));
    let mut mask = 0u32;
    let mut total = 0.0;
    for w in 0..f.n {
        mask |= 1 << order[w];
        let next = if w + 1 < f.n { x[order[w + 1]] } else { 0.0 };
        let gap = if w + 1 < f.n { x[order[w]] - next } else { x[order[w]] };
        total += gap * rational_to_f64(&f.get(mask));
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubmodularityVerdict {
    pub submodular: bool,
    /// `(A, B)` with `F(A) + F(B) < F(A ∪ B) + F(A ∩ B)`.
    pub violation: Option<(u32, u32)>,
    pub convex_on_samples: bool,
    /// Endpoints of a segment whose midpoint lies above the chord.
    pub convexity_violation: Option<(Vec<f64>, Vec<f64>)>,
    pub subset_minimum: Rational,
    pub subset_minimizer: u32,
    /// Smallest sampled value of `F^L` on the unit cube; never below the subset minimum.
    pub sampled_relaxation_minimum: f64,
}

pub const SUBMODULARITY_BUDGET: usize = 12;

/// Exhaustive pair check plus randomized midpoint convexity on `[-1, 1]^n`.
pub fn submodularity_and_convexity(f: &SetFunction, samples: usize, seed: u64) -> Result<SubmodularityVerdict> {
    if f.n > SUBMODULARITY_BUDGET {
        return Err(Error::BudgetExceeded { what: "submodularity check", size: f.n, budget: SUBMODULARITY_BUDGET });
    }
    let full = f.full();
    let mut violation = None;
    'outer: for a in 0..=full {
        for b in 0..=full {
            if f.get(a) + f.get(b) < f.get(a | b) + f.get(a & b) {
                violation = Some((a, b));
                break 'outer;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut convexity_violation = None;
    let n = f.n;
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.random_range(-1.0..1.0)).collect() };
    for _ in 0..samples {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let mid: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
        let lhs = lovasz_extension(f, &mid)?;
        let rhs = 0.5 * (lovasz_extension(f, &x)? + lovasz_extension(f, &y)?);
        if lhs > rhs + 1e-9 {
            convexity_violation = Some((x, y));
            break;
        }
    }
    let (subset_minimizer, subset_minimum) =
        (0..=full).map(|a| (a, f.get(a))).min_by(|a, b| a.1.cmp(&b.1)).expect("nonempty");
    let mut sampled = f64::INFINITY;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        sampled = sampled.min(lovasz_extension(f, &x)?);
    }
    for a in 0..=full {
        let x: Vec<f64> = (0..n).map(|i| f64::from((a >> i & 1) as u8)).collect();
        sampled = sampled.min(lovasz_extension(f, &x)?);
    }
    Ok(SubmodularityVerdict {
        submodular: violation.is_none(),
        violation,
        convex_on_samples: convexity_violation.is_none(),
        convexity_violation,
        subset_minimum,
        subset_minimizer,
        sampled_relaxation_minimum: sampled,
    })
}

/// `h(F1, F2) = min_{A ≠ ∅, V} F1(A) / min(F2(A), F2(V∖A))`, first minimizer by bitmask.
pub fn f1f2_constant(f1: &SetFunction, f2: &SetFunction) -> Result<(Rational, u32)> {
    if f1.n != f2.n {
        return Err(Error::Precondition("F1 and F2 live on different ground sets".into()));
    }
    let full = f1.full();
    if f2.values.iter().any(|v| *v < Rational::zero()) {
        return Err(Error::Precondition("F2 must be non-negative".into()));
    }
    let mut best: Option<(Rational, u32)> = None;
    for a in 1..full {
        let den = f2.get(a).min(f2.get(full & !a));
        if den <= Rational::zero() {
            return Err(Error::Precondition(alloc::format!("F2 vanishes on a proper subset (mask {a})")));
        }
        let r = f1.get(a) / den;
        if best.is_none_or(|(b, _)| r < b) {
            best = Some((r, a));
        }
    }
    best.ok_or(Error::Undefined("(F1, F2)-constant on fewer than two elements"))
}

/// `min_t F^L(|x − t·1|)`, attained at some `x_i` or some midpoint `(x_i + x_j)/2`.
pub fn min_over_shifts(f: &SetFunction, x: &[f64]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for i in 0..x.len() {
        for j in i..x.len() {
            let t = 0.5 * (x[i] + x[j]);
            let shifted: Vec<f64> = x.iter().map(|v| (v - t).abs()).collect();
            best = best.min(lovasz_extension(f, &shifted)?);
        }
    }
    Ok(best)
}

/// The continuous quotient `F1^L(x) / min_t F2^L(|x − t·1|)`.
pub fn f1f2_quotient(f1: &SetFunction, f2: &SetFunction, x: &[f64]) -> Result<f64> {
    Ok(lovasz_extension(f1, x)? / min_over_shifts(f2, x)?)
}

/// Outcome of an `ℓ¹` ratio minimization.
#[derive(Clone, Debug, PartialEq)]
pub struct L1Ratio {
    pub value: f64,
    pub witness: Vec<f64>,
    /// Number of dual vertices examined.
    pub vertices: usize,
}

pub const L1_VERTEX_BUDGET: usize = 1 << 20;

/// `min_x ‖D x‖₁ / min_{z ∈ span K} ‖x + z‖_{1,w}` over `x` with `D x ≠ 0`.
///
/// The denominator is the LP dual `max ⟨y, x⟩` over `P = {y ⊥ K, |y_σ| ≤ w_σ}`, so the value is
/// the minimum over vertices `y` of `P` of `min {‖D x‖₁ : ⟨y, x⟩ = 1}`. Vertices are found by
/// fixing `dim P` tight coordinates with signs and solving.
pub fn min_ratio_l1(d: &IntMatrix, w: &[f64], kernel: &[Vec<i64>]) -> Result<L1Ratio> {
    let n = d.cols();
    if w.len() != n {
        return Err(Error::Precondition("weight vector has the wrong length".into()));
    }
    let mut kmat = IntMatrix::zeros(kernel.len(), n);
    for (i, v) in kernel.iter().enumerate() {
        for j in 0..n {
            kmat[(i, j)] = v[j];
        }
    }
    let basis: Vec<Vec<i64>> = if kernel.is_empty() {
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    } else {
        nullspace(&kmat)
    };
    let r = basis.len();
    if r == 0 {
        return Err(Error::Undefined("ℓ¹ ratio with trivial complement"));
    }
    let count = binomial(n, r).saturating_mul(1usize << (r - 1).min(40));
    if count > L1_VERTEX_BUDGET {
        return Err(Error::BudgetExceeded { what: "dual vertex enumeration", size: count, budget: L1_VERTEX_BUDGET });
    }
    let b = Matrix::from_fn(n, r, |i, j| basis[j][i] as f64);
    let df = d.to_f64();
    let mut seen: Vec<Vec<f64>> = Vec::new();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut vertices = 0;
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        for signs in 0..(1u64 << (r - 1)) {
            let sys = Matrix::from_fn(r, r, |a, c| b[(subset[a], c)]);
            let rhs: Vec<f64> = (0..r)
                .map(|a| {
                    let s = if a == 0 || signs >> (a - 1) & 1 == 0 { 1.0 } else { -1.0 };
                    s * w[subset[a]]
                })
                .collect();
            let Some(c) = solve(&sys, &rhs) else { continue };
            let y = b.mul_vec(&c);
            if y.iter().zip(w).any(|(v, wi)| v.abs() > wi * (1.0 + 1e-9) + 1e-12) {
                continue;
            }
            let dup = seen.iter().any(|z| {
                let same = z.iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-9);
                let opposite = z.iter().zip(&y).all(|(a, b)| (a + b).abs() < 1e-9);
                same || opposite
            });
            if dup {
                continue;
            }
            seen.push(y.clone());
            vertices += 1;
            if let Some((value, x)) = l1_subproblem(&df, &y) {
                if best.as_ref().is_none_or(|(v, _)| value < *v - 1e-12) {
                    best = Some((value, x));
                }
            }
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    let (value, witness) = best.ok_or(Error::Undefined("ℓ¹ ratio (every candidate is degenerate)"))?;
    Ok(L1Ratio { value, witness, vertices })
}

/// `min ‖D x‖₁ s.t. ⟨y, x⟩ = 1`, as an LP in `x = x⁺ − x⁻`, `Dx = u − v`.
fn l1_subproblem(d: &Matrix, y: &[f64]) -> Option<(f64, Vec<f64>)> {
    let (m, n) = (d.rows(), d.cols());
    let vars = 2 * n + 2 * m;
    let mut cost = vec![0.0; vars];
    for c in cost.iter_mut().skip(2 * n) {
        *c = 1.0;
    }
    let mut rows = Vec::with_capacity(m + 1);
    for t in 0..m {
        let mut row = vec![0.0; vars];
        for s in 0..n {
            row[s] = d[(t, s)];
            row[n + s] = -d[(t, s)];
        }
        row[2 * n + t] = -1.0;
        row[2 * n + m + t] = 1.0;
        rows.push(row);
    }
    let mut last = vec![0.0; vars];
    for s in 0..n {
        last[s] = y[s];
        last[n + s] = -y[s];
    }
    rows.push(last);
    let mut rhs = vec![0.0; m];
    rhs.push(1.0);
    match minimize(&cost, &rows, &rhs) {
        LpOutcome::Optimal { value, x } => Some((value, (0..n).map(|s| x[s] - x[n + s]).collect())),
        _ => None,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let mut acc: usize = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in (i + 1)..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PMethod {
    /// The eigenvalue is zero with an explicit kernel vector.
    Kernel,
    /// Linear eigensolver (`p = 2`).
    Linear,
    /// Exact `ℓ¹` ratio by linear programming (`p = 1`).
    LinearProgram,
    /// Gradient descent with random restarts; not certified.
    Descent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PEigenpair {
    pub p: f64,
    pub k: usize,
    pub eigenvalue: f64,
    pub eigenfunction: Vec<f64>,
    /// Max componentwise defect of `L f − λ a_p(f)` (`p > 1`); zero when the `p = 1`
    /// inclusion is certified, infinite when it is not.
    pub residual: f64,
    pub certified: bool,
    pub method: PMethod,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DescentOptions {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self { restarts: 64, iterations: 10_000, seed: 0 }
    }
}

fn a_p(t: f64, p: f64) -> f64 {
    if t == 0.0 { 0.0 } else { t.signum() * libm::pow(t.abs(), p - 1.0) }
}

fn pow_abs(t: f64, p: f64) -> f64 {
    libm::pow(t.abs(), p)
}

struct PProblem<'a> {
    d: &'a Matrix,
    w: &'a [f64],
    p: f64,
    /// Minimize the denominator over constant shifts (second eigenvalue on vertices).
    shift: bool,
}

impl PProblem<'_> {
    fn best_shift(&self, f: &[f64]) -> f64 {
        if !self.shift {
            return 0.0;
        }
        // Σ w a_p(f − c) is non-increasing in c
        let (mut lo, mut hi) = f.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(*x), b.max(*x)));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let g: f64 = f.iter().zip(self.w).map(|(x, w)| w * a_p(x - mid, self.p)).sum();
            if g > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Quotient, its gradient, and the shifted vector `f − c`.
    fn eval(&self, f: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
        let c = self.best_shift(f);
        let g: Vec<f64> = f.iter().map(|x| x - c).collect();
        let df = self.d.mul_vec(&g);
        let num: f64 = df.iter().map(|x| pow_abs(*x, self.p)).sum();
        let den: f64 = g.iter().zip(self.w).map(|(x, w)| w * pow_abs(*x, self.p)).sum();
        let r = num / den;
        let ap: Vec<f64> = df.iter().map(|x| a_p(*x, self.p)).collect();
        let grad_num = self.d.transpose().mul_vec(&ap);
        let grad: Vec<f64> = (0..f.len())
            .map(|s| self.p * (grad_num[s] - r * self.w[s] * a_p(g[s], self.p)) / den)
            .collect();
        (r, grad, g)
    }

    fn normalize(&self, f: &mut [f64]) {
        let c = self.best_shift(f);
        for x in f.iter_mut() {
            *x -= c;
        }
        let den: f64 = f.iter().zip(self.w).map(|(x, w)| w * pow_abs(*x, self.p)).sum();
        let s = libm::pow(den, -1.0 / self.p);
        for x in f.iter_mut() {
            *x *= s;
        }
    }

    fn residual(&self, u: &[f64], lambda: f64) -> f64 {
        let ap: Vec<f64> = self.d.mul_vec(u).iter().map(|x| a_p(*x, self.p)).collect();
        let lu = self.d.transpose().mul_vec(&ap);
        let scale = u.iter().fold(0.0f64, |m, x| m.max(pow_abs(*x, self.p - 1.0))).max(1e-300);
        (0..u.len())
            .map(|s| (lu[s] / self.w[s] - lambda * a_p(u[s], self.p)).abs() / scale)
            .fold(0.0, f64::max)
    }

    fn descend(&self, opts: &DescentOptions) -> Option<(f64, Vec<f64>)> {
        let n = self.w.len();
        let mut best: Option<(f64, Vec<f64>)> = None;
        for restart in 0..opts.restarts {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(restart as u64));
            let mut f: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            if self.d.mul_vec(&f).iter().all(|x| x.abs() < 1e-12) {
                continue;
            }
            self.normalize(&mut f);
            let (mut r, mut grad, _) = self.eval(&f);
            let mut step = 1.0;
            for _ in 0..opts.iterations {
                let gg: f64 = grad.iter().map(|x| x * x).sum();
                if gg < 1e-28 {
                    break;
                }
                let mut accepted = false;
                while step > 1e-16 {
                    let mut cand: Vec<f64> = f.iter().zip(&grad).map(|(x, g)| x - step * g).collect();
                    self.normalize(&mut cand);
                    let (rc, gc, _) = self.eval(&cand);
                    if rc.is_finite() && rc <= r - 1e-4 * step * gg {
                        let gain = r - rc;
                        f = cand;
                        r = rc;
                        grad = gc;
                        step *= 2.0;
                        accepted = true;
                        if gain <= 1e-15 * r.max(1e-300) {
                            step = 0.0;
                        }
                        break;
                    }
                    step *= 0.5;
                }
                if !accepted || step == 0.0 {
                    break;
                }
            }
            let (_, _, g) = self.eval(&f);
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, g));
            }
        }
        best
    }
}

/// Gradient descent for `λ_k` (`k ∈ {1, 2}`), also used to cross-check the exact methods.
pub fn p_descent(
    complex: &SimplicialComplex,
    d: usize,
    p: f64,
    k: usize,
    opts: &DescentOptions,
) -> Result<PEigenpair> {
    check_p_args(complex, d, p, k)?;
    let (dm, w) = p_setup(complex, d);
    let problem = PProblem { d: &dm, w: &w, p, shift: k == 2 };
    let (eigenvalue, u) = problem.descend(opts).ok_or(Error::NoConvergence("p-Laplacian descent"))?;
    let residual = if p > 1.0 { problem.residual(&u, eigenvalue) } else { f64::INFINITY };
    Ok(PEigenpair { p, k, eigenvalue, eigenfunction: u, residual, certified: false, method: PMethod::Descent })
}

fn check_p_args(complex: &SimplicialComplex, d: usize, p: f64, k: usize) -> Result<()> {
    if !(1.0..=8.0).contains(&p) {
        return Err(Error::Precondition("p must lie in [1, 8]".into()));
    }
    if k == 0 || k > 2 {
        return Err(Error::Precondition("only λ_1 and λ_2 are supported".into()));
    }
    if d >= complex.dim() {
        return Err(Error::LevelOutOfRange { level: d, dim: complex.dim() });
    }
    if k == 2 && d > 0 && p != 2.0 {
        return Err(Error::Precondition("λ_2 for p ≠ 2 is only available on vertices".into()));
    }
    Ok(())
}

fn p_setup(complex: &SimplicialComplex, d: usize) -> (Matrix, Vec<f64>) {
    let dm = complex.coboundary_matrix(d).to_f64();
    let w: Vec<f64> = complex.degrees(d).iter().map(|x| (*x).max(1) as f64).collect();
    (dm, w)
}

/// `λ_k` of the up `p`-Laplacian on level `d`, for the quotient
/// `Σ_τ |δf(τ)|^p / Σ_σ deg σ |f(σ)|^p` (second eigenvalue: denominator minimized over shifts).
pub fn p_laplacian_eigen(
    complex: &SimplicialComplex,
    d: usize,
    p: f64,
    k: usize,
    opts: &DescentOptions,
) -> Result<PEigenpair> {
    check_p_args(complex, d, p, k)?;
    let delta = complex.coboundary_matrix(d);
    let (dm, w) = p_setup(complex, d);
    let n = w.len();
    if k == 1 {
        let kernel = nullspace(&delta);
        if let Some(v) = kernel.first() {
            let u: Vec<f64> = v.iter().map(|x| *x as f64).collect();
            return Ok(PEigenpair { p, k, eigenvalue: 0.0, eigenfunction: u, residual: 0.0, certified: true, method: PMethod::Kernel });
        }
    }
    if p == 2.0 {
        let spec = normalized_up_spectrum(complex, d)?;
        let u = spec.eigenvector(k - 1);
        let eigenvalue = spec.eigenvalues[k - 1];
        let residual = PProblem { d: &dm, w: &w, p, shift: false }.residual(&u, eigenvalue);
        return Ok(PEigenpair { p, k, eigenvalue, eigenfunction: u, residual, certified: true, method: PMethod::Linear });
    }
    if p == 1.0 {
        let kernel: Vec<Vec<i64>> = if k == 2 { vec![vec![1; n]] } else { Vec::new() };
        let sol = min_ratio_l1(&delta, &w, &kernel)?;
        let problem = PProblem { d: &dm, w: &w, p, shift: k == 2 };
        let c = problem.best_shift(&sol.witness);
        let u: Vec<f64> = sol.witness.iter().map(|x| x - c).collect();
        let inclusion = one_laplacian_inclusion(&dm, &w, &u, sol.value);
        return Ok(PEigenpair {
            p,
            k,
            eigenvalue: sol.value,
            eigenfunction: u,
            residual: if inclusion { 0.0 } else { f64::INFINITY },
            certified: true,
            method: PMethod::LinearProgram,
        });
    }
    p_descent(complex, d, p, k, opts)
}

/// Whether `0 ∈ W⁻¹ Dᵀ Sgn(D u) − λ Sgn(u)`, decided by an LP over the free selections.
pub fn one_laplacian_inclusion(d: &Matrix, w: &[f64], u: &[f64], lambda: f64) -> bool {
    let (m, n) = (d.rows(), d.cols());
    let du = d.mul_vec(u);
    let scale = u.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1e-300);
    let zero = |x: f64| x.abs() <= 1e-9 * scale;
    let free_xi: Vec<usize> = (0..m).filter(|&t| zero(du[t])).collect();
    let free_eta: Vec<usize> = (0..n).filter(|&s| zero(u[s])).collect();
    // ξ = 2a − 1 and η = 2b − 1 with a, b ∈ [0, 1] via slacks
    let nv = 2 * (free_xi.len() + free_eta.len());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for s in 0..n {
        let mut row = vec![0.0; nv];
        let mut constant = 0.0;
        for t in 0..m {
            if d[(t, s)] == 0.0 {
                continue;
            }
            match free_xi.iter().position(|&x| x == t) {
                Some(i) => {
                    row[i] += 2.0 * d[(t, s)];
                    constant -= d[(t, s)];
                }
                None => constant += d[(t, s)] * du[t].signum(),
            }
        }
        match free_eta.iter().position(|&x| x == s) {
            Some(i) => {
                row[free_xi.len() + i] -= 2.0 * lambda * w[s];
                constant += lambda * w[s];
            }
            None => constant -= lambda * w[s] * u[s].signum(),
        }
        rows.push(row);
        rhs.push(-constant);
    }
    let half = free_xi.len() + free_eta.len();
    for i in 0..half {
        let mut row = vec![0.0; nv];
        row[i] = 1.0;
        row[half + i] = 1.0;
        rows.push(row);
        rhs.push(1.0);
    }
    // tolerate rounding in λ by relaxing each equation with a small box
    let tol = 1e-7 * (1.0 + lambda);
    let mut relaxed_rows = Vec::new();
    let mut relaxed_rhs = Vec::new();
    let extra = 2 * n;
    for (r, (row, b)) in rows.iter().zip(&rhs).enumerate() {
        let mut row = row.clone();
        row.resize(nv + extra, 0.0);
        if r < n {
            row[nv + 2 * r] = 1.0;
            row[nv + 2 * r + 1] = -1.0;
        }
        relaxed_rows.push(row);
        relaxed_rhs.push(*b);
    }
    let mut cost = vec![0.0; nv + extra];
    for c in cost.iter_mut().skip(nv) {
        *c = 1.0;
    }
    match minimize(&cost, &relaxed_rows, &relaxed_rhs) {
        LpOutcome::Optimal { value, .. } => value <= tol * n as f64,
        _ => false,
    }
}

/// `p ↦ p (2λ_2/D)^{1/p}` should increase and `p ↦ 2^{−p} λ_2` decrease.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub ps: Vec<f64>,
    pub lambda: Vec<f64>,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    pub first_increasing: bool,
    pub second_decreasing: bool,
}

pub fn p_monotonicity(graph: &SimplicialComplex, ps: &[f64], opts: &DescentOptions, tol: f64) -> Result<MonotonicityReport> {
    let max_deg = graph.degrees(0).into_iter().max().unwrap_or(0).max(1) as f64;
    let mut lambda = Vec::with_capacity(ps.len());
    for &p in ps {
        lambda.push(p_laplacian_eigen(graph, 0, p, 2, opts)?.eigenvalue);
    }
    let first: Vec<f64> = ps.iter().zip(&lambda).map(|(p, l)| p * libm::pow(2.0 * l / max_deg, 1.0 / p)).collect();
    let second: Vec<f64> = ps.iter().zip(&lambda).map(|(p, l)| libm::pow(2.0, -p) * l).collect();
    let first_increasing = first.windows(2).all(|w| w[1] >= w[0] - tol);
    let second_decreasing = second.windows(2).all(|w| w[1] <= w[0] + tol);
    Ok(MonotonicityReport { ps: ps.to_vec(), lambda, first, second, first_increasing, second_decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn k3_cut() -> SetFunction {
        let one = Rational::one();
        SetFunction::cut(3, &[(0, 1, one), (1, 2, one), (0, 2, one)]).unwrap()
    }

    fn graph(edges: &[(usize, usize)]) -> SimplicialComplex {
        let t: Vec<Vec<usize>> = edges.iter().map(|&(u, v)| vec![u, v]).collect();
        SimplicialComplex::from_maximal_simplices(&t, &[]).unwrap()
    }

    #[test]
    fn lovasz_basics() {
        let cut = SetFunction::cut(2, &[(0, 1, Rational::one())]).unwrap();
        for (a, b) in [(0.3, -1.2), (2.0, 2.0), (-0.5, 4.0)] {
            assert!((lovasz_extension(&cut, &[a, b]).unwrap() - (a - b).abs()).abs() < 1e-12);
        }
        let f = SetFunction::from_fn(3, |m| Rational::from_integer(i64::from(m * m % 7))).unwrap();
        for m in 0..8u32 {
            let x: Vec<f64> = (0..3).map(|i| f64::from((m >> i & 1) as u8)).collect();
            assert!((lovasz_extension(&f, &x).unwrap() - rational_to_f64(&f.get(m))).abs() < 1e-12);
        }
        let x = [0.2, -0.7, 1.1];
        let shifted: Vec<f64> = x.iter().map(|v| v + 0.9).collect();
        let lhs = lovasz_extension(&f, &shifted).unwrap();
        let rhs = lovasz_extension(&f, &x).unwrap() + 0.9 * rational_to_f64(&f.get(7));
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn cut_is_submodular_and_negation_is_not() {
        let v = submodularity_and_convexity(&k3_cut(), 500, 1).unwrap();
        assert!(v.submodular && v.convex_on_samples);
        assert_eq!(v.subset_minimum, Rational::zero());
        assert!(v.sampled_relaxation_minimum >= -1e-12);
        let neg = submodularity_and_convexity(&k3_cut().negated(), 500, 1).unwrap();
        assert!(!neg.submodular && !neg.convex_on_samples);
    }

    #[test]
    fn f1f2_graph_cheeger() {
        let one = Rational::one();
        let vol3 = SetFunction::modular(&[Rational::from_integer(2); 3]).unwrap();
        assert_eq!(f1f2_constant(&k3_cut(), &vol3).unwrap().0, one);
        let p3 = SetFunction::cut(3, &[(0, 1, one), (1, 2, one)]).unwrap();
        let vol = SetFunction::modular(&[one, Rational::from_integer(2), one]).unwrap();
        let (h, a) = f1f2_constant(&p3, &vol).unwrap();
        assert_eq!(h, one);
        let x: Vec<f64> = (0..3).map(|i| f64::from((a >> i & 1) as u8)).collect();
        assert!((f1f2_quotient(&p3, &vol, &x).unwrap() - 1.0).abs() < 1e-12);
        let zero = SetFunction::new(3, vec![Rational::zero(); 8]).unwrap();
        assert!(f1f2_constant(&p3, &zero).is_err());
    }

    #[test]
    fn l1_ratio_on_k3() {
        let k3 = graph(&[(0, 1), (1, 2), (0, 2)]);
        let d = k3.coboundary_matrix(0);
        let r = min_ratio_l1(&d, &[2.0; 3], &[vec![1, 1, 1]]).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn p_eigen_k3() {
        let k3 = graph(&[(0, 1), (1, 2), (0, 2)]);
        let opts = DescentOptions { restarts: 8, iterations: 5000, seed: 7 };
        let one = p_laplacian_eigen(&k3, 0, 1.0, 2, &opts).unwrap();
        assert!((one.eigenvalue - 1.0).abs() < 1e-9);
        assert!(one.certified && one.residual == 0.0, "{one:?}");
        let two = p_laplacian_eigen(&k3, 0, 2.0, 2, &opts).unwrap();
        assert!((two.eigenvalue - 1.5).abs() < 1e-12);
        let gd = p_descent(&k3, 0, 2.0, 2, &opts).unwrap();
        assert!((gd.eigenvalue - 1.5).abs() < 1e-8);
        let first = p_laplacian_eigen(&k3, 0, 3.0, 1, &opts).unwrap();
        assert_eq!(first.eigenvalue, 0.0);
        assert!(p_laplacian_eigen(&k3, 0, 0.5, 2, &opts).is_err());
    }

    #[test]
    fn monotonicity_on_k3() {
        let k3 = graph(&[(0, 1), (1, 2), (0, 2)]);
        let opts = DescentOptions { restarts: 16, iterations: 5000, seed: 3 };
        let r = p_monotonicity(&k3, &[1.0, 1.5, 2.0, 3.0], &opts, 1e-4).unwrap();
        assert!((r.first[0] - 1.0).abs() < 1e-9);
        assert!((r.first[2] - 2.0 * libm::sqrt(1.5)).abs() < 1e-9);
        assert!(r.first_increasing && r.second_decreasing, "{r:?}");
    }
}
