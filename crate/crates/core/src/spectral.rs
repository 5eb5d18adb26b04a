//! Eckmann Laplacians on weighted cochains and their spectra.
//!
//! Every operator is returned as a matrix acting on coefficient vectors in the order of
//! [`SimplicialComplex::simplices`]. With the diagonal inner product `W_k` on level `k` the
//! adjoint of `δ_k` is `W_k⁻¹ Dᵀ W_{k+1}`, so the Laplacians are self-adjoint for `W_k` but
//! generally not symmetric as plain matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{dot, symmetric_eigen, Matrix};
use crate::{rational_to_f64, Rational};

/// Diagonal inner product on `C^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    level: usize,
    weights: Vec<f64>,
}

impl InnerProduct {
    pub fn new(level: usize, weights: Vec<f64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::NonPositiveWeight(vec![i]));
        }
        Ok(Self { level, weights })
    }

    pub fn unit(level: usize, size: usize) -> Self {
        Self { level, weights: vec![1.0; size] }
    }

    /// The weights stored on the complex (user-supplied or the degree defaults).
    pub fn stored(complex: &SimplicialComplex, k: usize) -> Self {
        let weights = complex.weights(k).iter().map(rational_to_f64).collect();
        Self { level: k, weights }
    }

    /// `deg σ`, falling back to 1 on simplices without cofaces.
    pub fn degree(complex: &SimplicialComplex, k: usize) -> Self {
        let weights = complex.degrees(k).into_iter().map(|d| d.max(1) as f64).collect();
        Self { level: k, weights }
    }

    /// Stored weights on every level of the complex.
    pub fn stored_all(complex: &SimplicialComplex) -> Vec<Self> {
        (0..=complex.dim()).map(|k| Self::stored(complex, k)).collect()
    }

    pub fn unit_all(complex: &SimplicialComplex) -> Vec<Self> {
        (0..=complex.dim()).map(|k| Self::unit(k, complex.count(k))).collect()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Up,
    Down,
    Full,
}

/// Eigenpairs of a self-adjoint operator, ascending.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors, orthonormal in the supplied inner product.
    pub eigenvectors: Matrix,
    pub zero_multiplicity: usize,
    /// Largest `‖Lv − λv‖` over all pairs.
    pub max_residual: f64,
    /// Largest absolute entry of the operator, used as its scale.
    pub scale: f64,
}

impl SpectrumReport {
    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// Eigenvalues above the zero tolerance.
    pub fn nonzero(&self) -> &[f64] {
        &self.eigenvalues[self.zero_multiplicity..]
    }

    pub fn residual_ok(&self) -> bool {
        self.max_residual <= 1e-9 * self.scale.max(1.0)
    }
}

/// `|λ| ≤ 1e-8 · max(1, λ_max)`.
pub fn zero_tolerance(eigenvalues: &[f64]) -> f64 {
    let top = eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    1e-8 * top.max(1.0)
}

fn check_level(complex: &SimplicialComplex, k: usize) -> Result<()> {
    if k > complex.dim() {
        return Err(Error::LevelOutOfRange { level: k, dim: complex.dim() });
    }
    Ok(())
}

fn scale_rows(m: &mut Matrix, w: &[f64]) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            m[(i, j)] *= w[i];
        }
    }
}

fn scale_cols(m: &mut Matrix, w: &[f64]) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            m[(i, j)] *= w[j];
        }
    }
}

fn inverse(w: &[f64]) -> Vec<f64> {
    w.iter().map(|x| 1.0 / x).collect()
}

/// `δ* δ` for a coboundary matrix `d` (rows level `k+1`) with weights `wk`, `wk1`.
fn up_part(d: &Matrix, wk: &[f64], wk1: &[f64]) -> Matrix {
    let mut wd = d.clone();
    scale_rows(&mut wd, wk1);
    let mut m = d.transpose().mul(&wd);
    scale_rows(&mut m, &inverse(wk));
    m
}

/// `δ δ*` for a coboundary matrix `d` (rows level `k`) with weights `wkm1`, `wk`.
fn down_part(d: &Matrix, wkm1: &[f64], wk: &[f64]) -> Matrix {
    let mut dt = d.transpose();
    scale_rows(&mut dt, &inverse(wkm1));
    let mut m = d.mul(&dt);
    scale_cols(&mut m, wk);
    m
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] + b[(i, j)])
}

fn weights_for(ips: &[InnerProduct], level: usize, size: usize) -> Result<&[f64]> {
    let ip = ips
        .iter()
        .find(|ip| ip.level == level)
        .ok_or_else(|| Error::Precondition(alloc::format!("no inner product for level {level}")))?;
    if ip.len() != size {
        return Err(Error::Precondition(alloc::format!(
            "inner product on level {level} has {} weights, expected {size}",
            ip.len()
        )));
    }
    Ok(&ip.weights)
}

/// `L_k^up = δ_k*δ_k`, `L_k^down = δ_{k-1}δ_{k-1}*`, or their sum, adjoints taken in `ips`
/// (one inner product per level; only levels `k-1..=k+1` are read).
pub fn laplacian(
    complex: &SimplicialComplex,
    k: usize,
    variant: Variant,
    ips: &[InnerProduct],
) -> Result<Matrix> {
    check_level(complex, k)?;
    let nk = complex.count(k);
    let wk = weights_for(ips, k, nk)?;
    let up = || -> Result<Matrix> {
        if k == complex.dim() {
            return Ok(Matrix::zeros(nk, nk));
        }
        let d = complex.coboundary_matrix(k).to_f64();
        Ok(up_part(&d, wk, weights_for(ips, k + 1, complex.count(k + 1))?))
    };
    let down = || -> Result<Matrix> {
        if k == 0 {
            return Ok(Matrix::zeros(nk, nk));
        }
        let d = complex.coboundary_matrix(k - 1).to_f64();
        Ok(down_part(&d, weights_for(ips, k - 1, complex.count(k - 1))?, wk))
    };
    match variant {
        Variant::Up => up(),
        Variant::Down => down(),
        Variant::Full => Ok(add(&up()?, &down()?)),
    }
}

/// Exact entries of the normalized up-Laplacian: `deg σ` on level `k`, unit weights above.
/// Entry `(σ, σ')` is `(1/deg σ) Σ_τ [σ:τ][σ':τ]`; zero-degree rows vanish.
pub fn normalized_up_laplacian_exact(
    complex: &SimplicialComplex,
    k: usize,
) -> Result<Vec<Vec<Rational>>> {
    check_level(complex, k)?;
    let n = complex.count(k);
    let mut m = vec![vec![Rational::from_integer(0); n]; n];
    if k == complex.dim() {
        return Ok(m);
    }
    let d = complex.coboundary_matrix(k);
    let deg = complex.degrees(k);
    for t in 0..d.rows() {
        let row = d.row(t);
        let support: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        for &i in &support {
            for &j in &support {
                m[i][j] += Rational::new(row[i] * row[j], deg[i] as i64);
            }
        }
    }
    Ok(m)
}

/// Normalized up-Laplacian as a floating-point operator.
pub fn normalized_up_laplacian(complex: &SimplicialComplex, k: usize) -> Result<Matrix> {
    let exact = normalized_up_laplacian_exact(complex, k)?;
    let n = exact.len();
    Ok(Matrix::from_fn(n, n, |i, j| rational_to_f64(&exact[i][j])))
}

/// Inner products under which the normalized up-Laplacian is self-adjoint.
pub fn normalized_inner_products(complex: &SimplicialComplex, k: usize) -> Vec<InnerProduct> {
    let mut out = vec![InnerProduct::degree(complex, k)];
    if k < complex.dim() {
        out.push(InnerProduct::unit(k + 1, complex.count(k + 1)));
    }
    out
}

/// `(Lf)(v) = deg v · f(v) − Σ_u w_uv f(u)` with `deg v = Σ_u w_uv`, from the level-1 weights.
pub fn algebraic_graph_laplacian(graph: &SimplicialComplex) -> Matrix {
    let n = graph.count(0);
    let mut m = Matrix::zeros(n, n);
    let weights = graph.weights(1);
    for (e, edge) in graph.simplices(1).iter().enumerate() {
        let w = rational_to_f64(&weights[e]);
        let (u, v) = (edge.vertices()[0], edge.vertices()[1]);
        let iu = graph.index_of(&crate::Simplex::new(vec![u]).expect("vertex")).expect("face");
        let iv = graph.index_of(&crate::Simplex::new(vec![v]).expect("vertex")).expect("face");
        m[(iu, iu)] += w;
        m[(iv, iv)] += w;
        m[(iu, iv)] -= w;
        m[(iv, iu)] -= w;
    }
    m
}

/// Spectrum of an operator self-adjoint for `ip`, via the symmetric form `W^½ L W^-½`.
pub fn eigendecomposition(l: &Matrix, ip: &InnerProduct) -> Result<SpectrumReport> {
    let n = l.rows();
    if l.cols() != n || ip.len() != n {
        return Err(Error::Precondition("operator and inner product sizes differ".into()));
    }
    let w = ip.weights();
    let scale = l.max_abs();
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            asym = asym.max((w[i] * l[(i, j)] - w[j] * l[(j, i)]).abs());
        }
    }
    let wscale = w.iter().fold(0.0f64, |m, x| m.max(*x));
    if asym > 1e-12 * (scale * wscale).max(f64::MIN_POSITIVE) && asym > 0.0 {
        return Err(Error::NotSelfAdjoint { deviation: asym / (scale * wscale) });
    }
    let sq: Vec<f64> = w.iter().map(|x| libm::sqrt(*x)).collect();
    let s = Matrix::from_fn(n, n, |i, j| {
        let a = sq[i] * l[(i, j)] / sq[j];
        let b = sq[j] * l[(j, i)] / sq[i];
        0.5 * (a + b)
    });
    let (eigenvalues, y) = symmetric_eigen(&s);
    let eigenvectors = Matrix::from_fn(n, n, |i, j| y[(i, j)] / sq[i]);
    let mut max_residual = 0.0f64;
    for (c, lambda) in eigenvalues.iter().enumerate() {
        let v = eigenvectors.column(c);
        let lv = l.mul_vec(&v);
        let r: f64 = lv.iter().zip(&v).map(|(a, b)| (a - lambda * b) * (a - lambda * b)).sum();
        max_residual = max_residual.max(libm::sqrt(r));
    }
    let tol = zero_tolerance(&eigenvalues);
    let zero_multiplicity = eigenvalues.iter().filter(|x| x.abs() <= tol).count();
    Ok(SpectrumReport { eigenvalues, eigenvectors, zero_multiplicity, max_residual, scale })
}

/// `(f, Lf)_W / (f, f)_W`.
pub fn rayleigh_quotient(l: &Matrix, ip: &InnerProduct, f: &[f64]) -> f64 {
    ip.inner(f, &l.mul_vec(f)) / ip.inner(f, f)
}

/// Spectrum of the Laplacian built from `ips`, with the inner product of level `k`.
pub fn laplacian_spectrum(
    complex: &SimplicialComplex,
    k: usize,
    variant: Variant,
    ips: &[InnerProduct],
) -> Result<SpectrumReport> {
    let l = laplacian(complex, k, variant, ips)?;
    let ip = ips.iter().find(|ip| ip.level == k).expect("checked by laplacian");
    eigendecomposition(&l, ip)
}

pub fn normalized_up_spectrum(complex: &SimplicialComplex, k: usize) -> Result<SpectrumReport> {
    let l = normalized_up_laplacian(complex, k)?;
    eigendecomposition(&l, &InnerProduct::degree(complex, k))
}

/// The exponential weights stay representable while `t · max|f| ≤ 300`.
fn witten_guard(f: &[Vec<f64>], t: f64) -> Result<()> {
    let m = f.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if t * m > 300.0 || !(t * m).is_finite() {
        return Err(Error::WittenOverflow { exponent: t * m });
    }
    Ok(())
}

/// `δ_t = E(−t) δ E(t)` on level `k`, with `E(t) = diag e^{t f}`.
fn deformed_coboundary(complex: &SimplicialComplex, k: usize, f: &[Vec<f64>], t: f64) -> Matrix {
    let mut d = complex.coboundary_matrix(k).to_f64();
    let lower: Vec<f64> = f[k].iter().map(|x| libm::exp(t * x)).collect();
    let upper: Vec<f64> = f[k + 1].iter().map(|x| libm::exp(-t * x)).collect();
    scale_cols(&mut d, &lower);
    scale_rows(&mut d, &upper);
    d
}

/// Witten-deformed Laplacian `H_t = δ_t*δ_t + δ_{t,k-1}δ_{t,k-1}*`.
///
/// `f[j][i]` is the value on the `i`-th `j`-simplex.
pub fn witten_deformed_laplacian(
    complex: &SimplicialComplex,
    k: usize,
    f: &[Vec<f64>],
    t: f64,
    ips: &[InnerProduct],
) -> Result<Matrix> {
    check_level(complex, k)?;
    if f.len() != complex.dim() + 1
        || f.iter().enumerate().any(|(j, v)| v.len() != complex.count(j))
    {
        return Err(Error::Precondition("cell function must cover every simplex".into()));
    }
    witten_guard(f, t)?;
    let nk = complex.count(k);
    let wk = weights_for(ips, k, nk)?;
    let mut h = Matrix::zeros(nk, nk);
    if k < complex.dim() {
        let d = deformed_coboundary(complex, k, f, t);
        h = add(&h, &up_part(&d, wk, weights_for(ips, k + 1, complex.count(k + 1))?));
    }
    if k > 0 {
        let d = deformed_coboundary(complex, k - 1, f, t);
        h = add(&h, &down_part(&d, weights_for(ips, k - 1, complex.count(k - 1))?, wk));
    }
    Ok(h)
}

/// One row of the Witten diagnostic: eigenvalues of `H_t` split at half the smallest
/// eigenvalue that is at least 1 (every eigenvalue counts as small when none is).
#[derive(Clone, Debug, PartialEq)]
pub struct WittenRow {
    pub t: f64,
    pub eigenvalues: Vec<f64>,
    pub threshold: f64,
    pub small: usize,
    pub kernel: usize,
}

pub const WITTEN_T_GRID: [f64; 5] = [0.0, 1.0, 2.0, 4.0, 8.0];

pub fn witten_diagnostic(
    complex: &SimplicialComplex,
    k: usize,
    f: &[Vec<f64>],
    ts: &[f64],
    ips: &[InnerProduct],
) -> Result<Vec<WittenRow>> {
    let ip = ips
        .iter()
        .find(|ip| ip.level == k)
        .ok_or_else(|| Error::Precondition("missing inner product".into()))?;
    ts.iter()
        .map(|&t| {
            let h = witten_deformed_laplacian(complex, k, f, t, ips)?;
            let spec = eigendecomposition(&h, ip)?;
            let large = spec.eigenvalues.iter().copied().find(|&x| x >= 1.0);
            let threshold = large.map_or(f64::INFINITY, |x| 0.5 * x);
            let small = spec.eigenvalues.iter().filter(|&&x| x < threshold).count();
            Ok(WittenRow {
                t,
                threshold,
                small,
                kernel: spec.zero_multiplicity,
                eigenvalues: spec.eigenvalues,
            })
        })
        .collect()
}

/// Dimensions of the three Hodge summands of `C^k` and the largest normalized cross inner
/// product between them.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeReport {
    pub exact: usize,
    pub coexact: usize,
    pub harmonic: usize,
    pub total: usize,
    pub max_cross: f64,
}

impl HodgeReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.exact + self.coexact + self.harmonic == self.total && self.max_cross <= tol
    }
}

/// `C^k = im δ_{k-1} ⊕ im δ_k* ⊕ ker L_k`, orthogonal in `ips`.
pub fn hodge_decomposition(
    complex: &SimplicialComplex,
    k: usize,
    ips: &[InnerProduct],
) -> Result<HodgeReport> {
    check_level(complex, k)?;
    let nk = complex.count(k);
    let wk = weights_for(ips, k, nk)?;
    let ip = InnerProduct { level: k, weights: wk.to_vec() };
    let mut exact_vecs: Vec<Vec<f64>> = Vec::new();
    let mut exact = 0;
    if k > 0 {
        let d = complex.coboundary_matrix(k - 1);
        exact = d.rank();
        let df = d.to_f64();
        exact_vecs = (0..df.cols()).map(|j| df.column(j)).collect();
    }
    let mut coexact_vecs: Vec<Vec<f64>> = Vec::new();
    let mut coexact = 0;
    if k < complex.dim() {
        let d = complex.coboundary_matrix(k);
        coexact = d.rank();
        let mut adj = d.to_f64().transpose();
        scale_cols(&mut adj, weights_for(ips, k + 1, complex.count(k + 1))?);
        scale_rows(&mut adj, &inverse(wk));
        coexact_vecs = (0..adj.cols()).map(|j| adj.column(j)).collect();
    }
    let spec = laplacian_spectrum(complex, k, Variant::Full, ips)?;
    let harmonic_vecs: Vec<Vec<f64>> =
        (0..spec.zero_multiplicity).map(|i| spec.eigenvector(i)).collect();
    let unit = |v: &Vec<f64>| {
        let n = libm::sqrt(ip.inner(v, v));
        if n > 0.0 { v.iter().map(|x| x / n).collect() } else { v.clone() }
    };
    let groups: [Vec<Vec<f64>>; 3] = [
        exact_vecs.iter().map(unit).collect(),
        coexact_vecs.iter().map(unit).collect(),
        harmonic_vecs.iter().map(unit).collect(),
    ];
    let mut max_cross = 0.0f64;
    for a in 0..3 {
        for b in (a + 1)..3 {
            for x in &groups[a] {
                for y in &groups[b] {
                    max_cross = max_cross.max(ip.inner(x, y).abs());
                }
            }
        }
    }
    Ok(HodgeReport { exact, coexact, harmonic: spec.zero_multiplicity, total: nk, max_cross })
}

/// Nonzero spectra of `L_k^up` and `L_{k+1}^down`, ascending, and their largest difference
/// (infinite when the counts disagree).
pub fn up_down_nonzero_spectra(
    complex: &SimplicialComplex,
    k: usize,
    ips: &[InnerProduct],
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    if k >= complex.dim() {
        return Err(Error::LevelOutOfRange { level: k + 1, dim: complex.dim() });
    }
    let up = laplacian_spectrum(complex, k, Variant::Up, ips)?;
    let down = laplacian_spectrum(complex, k + 1, Variant::Down, ips)?;
    let a = up.nonzero().to_vec();
    let b = down.nonzero().to_vec();
    let diff = if a.len() == b.len() {
        a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    } else {
        f64::INFINITY
    };
    Ok((a, b, diff))
}

/// `Σ_v deg v · u(v)`, the weighted mean condition on nonconstant graph eigenfunctions.
pub fn weighted_sum(ip: &InnerProduct, u: &[f64]) -> f64 {
    dot(ip.weights(), u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cx(tuples: &[&[usize]]) -> SimplicialComplex {
        let t: Vec<Vec<usize>> = tuples.iter().map(|t| t.to_vec()).collect();
        SimplicialComplex::from_maximal_simplices(&t, &[]).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn triangle_edge_spectrum() {
        let tri = cx(&[&[0, 1, 2]]);
        let spec = normalized_up_spectrum(&tri, 1).unwrap();
        assert!(close(&spec.eigenvalues, &[0.0, 0.0, 3.0], 1e-12));
        assert!(spec.residual_ok());
        let full = laplacian_spectrum(&tri, 1, Variant::Up, &normalized_inner_products(&tri, 1))
            .unwrap();
        assert!(close(&full.eigenvalues, &spec.eigenvalues, 1e-12));
    }

    #[test]
    fn cycle_and_path_spectra() {
        let c3 = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let spec = normalized_up_spectrum(&c3, 0).unwrap();
        assert!(close(&spec.eigenvalues, &[0.0, 1.5, 1.5], 1e-12));
        let ip = InnerProduct::degree(&c3, 0);
        for i in 1..3 {
            assert!(weighted_sum(&ip, &spec.eigenvector(i)).abs() < 1e-12);
        }
        let p3 = cx(&[&[0, 1], &[1, 2]]);
        let spec = normalized_up_spectrum(&p3, 0).unwrap();
        assert!(close(&spec.eigenvalues, &[0.0, 1.0, 2.0], 1e-12));
    }

    #[test]
    fn up_equals_full_on_vertices() {
        let c = cx(&[&[0, 1, 2], &[2, 3]]);
        let ips = InnerProduct::stored_all(&c);
        let up = laplacian(&c, 0, Variant::Up, &ips).unwrap();
        let full = laplacian(&c, 0, Variant::Full, &ips).unwrap();
        assert_eq!(up, full);
    }

    #[test]
    fn graph_laplacian_k2() {
        let k2 = cx(&[&[0, 1]]);
        let l = algebraic_graph_laplacian(&k2);
        assert_eq!(l, Matrix::from_fn(2, 2, |i, j| if i == j { 1.0 } else { -1.0 }));
        let spec = eigendecomposition(&l, &InnerProduct::unit(0, 2)).unwrap();
        assert!(close(&spec.eigenvalues, &[0.0, 2.0], 1e-12));
        let lonely = cx(&[&[0], &[1]]);
        assert_eq!(algebraic_graph_laplacian(&lonely).max_abs(), 0.0);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let m = Matrix::from_fn(2, 2, |i, j| (i + 2 * j) as f64);
        let err = eigendecomposition(&m, &InnerProduct::unit(0, 2)).unwrap_err();
        assert!(matches!(err, Error::NotSelfAdjoint { .. }));
    }

    #[test]
    fn eckmann_on_small_complexes() {
        for c in [
            cx(&[&[0, 1], &[1, 2], &[0, 2]]),
            cx(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]),
            cx(&[&[0, 1, 2], &[2, 3], &[3, 4], &[4, 2], &[5]]),
        ] {
            let b = c.betti_numbers();
            let ips = InnerProduct::stored_all(&c);
            for k in 0..=c.dim() {
                let s = laplacian_spectrum(&c, k, Variant::Full, &ips).unwrap();
                assert_eq!(s.zero_multiplicity, b[k]);
                let h = hodge_decomposition(&c, k, &ips).unwrap();
                assert!(h.holds(1e-9), "{h:?}");
            }
        }
    }

    #[test]
    fn rayleigh_stationarity() {
        let c = cx(&[&[0, 1, 2], &[1, 2, 3], &[3, 4]]);
        let ips = InnerProduct::stored_all(&c);
        let l = laplacian(&c, 1, Variant::Full, &ips).unwrap();
        let s = eigendecomposition(&l, &ips[1]).unwrap();
        for (i, lambda) in s.eigenvalues.iter().enumerate() {
            assert!((rayleigh_quotient(&l, &ips[1], &s.eigenvector(i)) - lambda).abs() < 1e-9);
        }
    }

    #[test]
    fn witten_kernel_and_overflow() {
        let c = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let f = vec![vec![0.0, 2.0, 2.0], vec![1.0, 1.0, 3.0]];
        let ips = InnerProduct::stored_all(&c);
        let h0 = witten_deformed_laplacian(&c, 0, &f, 0.0, &ips).unwrap();
        assert_eq!(h0, laplacian(&c, 0, Variant::Full, &ips).unwrap());
        for t in WITTEN_T_GRID {
            for k in 0..=1 {
                let h = witten_deformed_laplacian(&c, k, &f, t, &ips).unwrap();
                assert_eq!(eigendecomposition(&h, &ips[k]).unwrap().zero_multiplicity, 1);
            }
        }
        assert!(matches!(
            witten_deformed_laplacian(&c, 0, &f, 200.0, &ips),
            Err(Error::WittenOverflow { .. })
        ));
    }
}
