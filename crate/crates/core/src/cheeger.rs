//! Cheeger constants on the `k`-simplices of a complex.
//!
//! The combinatorial constants `h1`, `h2`, `h4` are exact minima over integer cochains with
//! entries in `[−M, M]`; `h3` is the smallest positive eigenvalue of the up 1-Laplacian, found
//! exactly by linear programming. Degree zero uses the reduced convention: constants count as
//! coboundaries.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{big_rational, nullspace, row_space, rref, BigRational, IntMatrix};
use crate::signed::{signed_cheeger_with_volume, signed_spectrum, SignedEdge, SignedGraph, SubBipartition};
use crate::spectral::{normalized_up_laplacian_exact, normalized_up_spectrum};
use crate::variational::{min_ratio_l1, L1Ratio};
use crate::{rational_to_f64, Rational};

/// Sign of the edge joining two facets of a common coface `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// `−[σ:τ][σ':τ]`, the sign under which the normalized up-Laplacian is a signed graph
    /// Laplacian.
    Smallest,
    /// `+[σ:τ][σ':τ]`, used for the largest eigenvalue.
    Largest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedSignedGraph {
    pub k: usize,
    pub convention: SignConvention,
    /// Vertex `i` is the `i`-th `k`-simplex.
    pub graph: SignedGraph,
}

/// `Γ_k`: `k`-simplices joined when they share a `(k+1)`-coface.
pub fn derived_signed_graph(
    complex: &SimplicialComplex,
    k: usize,
    convention: SignConvention,
) -> Result<DerivedSignedGraph> {
    if k >= complex.dim() {
        return Err(Error::LevelOutOfRange { level: k, dim: complex.dim() });
    }
    let d = complex.coboundary_matrix(k);
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for t in 0..d.rows() {
        let row = d.row(t);
        let support: Vec<usize> = (0..row.len()).filter(|&j| row[j] != 0).collect();
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                if let Some(prev) = seen.insert((i, j), t) {
                    panic!("simplices {i} and {j} share two cofaces ({prev}, {t})");
                }
                let product = row[i] * row[j];
                let sign = match convention {
                    SignConvention::Smallest => -product,
                    SignConvention::Largest => product,
                };
                edges.push(SignedEdge { u: i, v: j, weight: Rational::one(), sign: sign as i8 });
            }
        }
    }
    Ok(DerivedSignedGraph { k, convention, graph: SignedGraph::new(complex.count(k), edges)? })
}

/// Rows (by index) where `Δ_k^up = (k+1)Δ_Γ − k·Id` fails exactly; rows of degree-zero
/// simplices are skipped because `Δ_Γ` is undefined there.
pub fn derived_identity_violations(complex: &SimplicialComplex, k: usize) -> Result<Vec<usize>> {
    let g = derived_signed_graph(complex, k, SignConvention::Smallest)?;
    let up = normalized_up_laplacian_exact(complex, k)?;
    let n = complex.count(k);
    let deg = complex.degrees(k);
    let kk = Rational::from_integer(k as i64);
    let k1 = Rational::from_integer(k as i64 + 1);
    let mut gamma = vec![vec![Rational::zero(); n]; n];
    for (i, row) in gamma.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    for e in g.graph.edges() {
        let s = Rational::from_integer(i64::from(e.sign));
        if deg[e.u] > 0 {
            gamma[e.u][e.v] -= s / (k1 * Rational::from_integer(deg[e.u] as i64));
        }
        if deg[e.v] > 0 {
            gamma[e.v][e.u] -= s / (k1 * Rational::from_integer(deg[e.v] as i64));
        }
    }
    let mut bad = Vec::new();
    for i in (0..n).filter(|&i| deg[i] > 0) {
        let ok = (0..n).all(|j| {
            let id = if i == j { kk } else { Rational::zero() };
            up[i][j] == k1 * gamma[i][j] - id
        });
        if !ok {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// The spectrum of `Δ_k^up` next to the images of the two signed graph spectra under
/// `λ ↦ (k+1)λ − k` and `λ⁻ ↦ k+2 − (k+1)λ⁻`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueMaps {
    pub up: Vec<f64>,
    pub from_smallest: Vec<f64>,
    pub from_largest: Vec<f64>,
    pub max_deviation: f64,
}

pub fn derived_eigenvalue_maps(complex: &SimplicialComplex, k: usize) -> Result<EigenvalueMaps> {
    if let Some(i) = complex.degrees(k).iter().position(|d| *d == 0) {
        return Err(Error::ZeroDegree(i));
    }
    let up = normalized_up_spectrum(complex, k)?.eigenvalues;
    let kf = k as f64;
    let s = signed_spectrum(&derived_signed_graph(complex, k, SignConvention::Smallest)?.graph)?;
    let mut from_smallest: Vec<f64> = s.eigenvalues.iter().map(|l| (kf + 1.0) * l - kf).collect();
    let m = signed_spectrum(&derived_signed_graph(complex, k, SignConvention::Largest)?.graph)?;
    let mut from_largest: Vec<f64> = m.eigenvalues.iter().map(|l| kf + 2.0 - (kf + 1.0) * l).collect();
    from_smallest.sort_by(f64::total_cmp);
    from_largest.sort_by(f64::total_cmp);
    let dev = |a: &[f64]| a.iter().zip(&up).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let max_deviation = dev(&from_smallest).max(dev(&from_largest));
    Ok(EigenvalueMaps { up, from_smallest, from_largest, max_deviation })
}

/// Exhaustive-search limits for the combinatorial constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheegerOptions {
    /// Largest `|Σ_k|` searched.
    pub budget: usize,
    /// Multiplicity bound `M`.
    pub m: i64,
}

impl Default for CheegerOptions {
    fn default() -> Self {
        Self { budget: 8, m: 2 }
    }
}

/// Largest number of box points visited.
pub const BOX_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct CheegerValue {
    pub value: Rational,
    /// Minimizing multiset (or cochain), multiplicities per `k`-simplex.
    pub witness: Vec<i64>,
    pub warning: Option<&'static str>,
}

const TOP_LEVEL_WARNING: &str = "no (k+1)-simplices: the numerator vanishes identically";

/// Basis of the annihilator of `im δ_{k−1}`; for `k = 0` the annihilator of the constants.
fn coboundary_annihilator(complex: &SimplicialComplex, k: usize) -> Vec<Vec<i64>> {
    let n = complex.count(k);
    if k == 0 {
        return (1..n)
            .map(|i| (0..n).map(|j| if j == i { 1 } else if j == 0 { -1 } else { 0 }).collect())
            .collect();
    }
    nullspace(&complex.coboundary_matrix(k - 1).transpose())
}

/// Weighted ℓ¹ distance to a rational subspace `U`, as the maximum of `⟨y, x⟩` over the vertices
/// of `{y ∈ U^⊥ : |y_σ| ≤ w_σ}`. Only one of each `±y` pair is stored.
struct L1Distance {
    vertices: Vec<Vec<Rational>>,
}

impl L1Distance {
    /// `complement` spans `U^⊥`.
    fn new(complement: &[Vec<i64>], w: &[i64]) -> Self {
        let r = complement.len();
        let n = w.len();
        let mut vertices: Vec<Vec<Rational>> = Vec::new();
        if r == 0 {
            return Self { vertices };
        }
        let mut subset: Vec<usize> = (0..r).collect();
        loop {
            for signs in 0..(1u64 << (r - 1)) {
                let mut sys: Vec<Vec<BigRational>> = (0..r)
                    .map(|a| {
                        let s = if a == 0 || signs >> (a - 1) & 1 == 0 { 1 } else { -1 };
                        let mut row: Vec<BigRational> =
                            complement.iter().map(|b| big_rational(b[subset[a]], 1)).collect();
                        row.push(big_rational(s * w[subset[a]], 1));
                        row
                    })
                    .collect();
                if rref(&mut sys).len() < r || sys.iter().any(|row| row[..r].iter().all(Zero::is_zero)) {
                    continue;
                }
                let c: Vec<BigRational> = sys.iter().map(|row| row[r].clone()).collect();
                let y: Vec<Rational> = (0..n)
                    .map(|i| {
                        let v: BigRational =
                            complement.iter().zip(&c).map(|(b, ci)| ci * big_rational(b[i], 1)).sum();
                        let num = i64::try_from(v.numer()).expect("dual vertex overflows i64");
                        let den = i64::try_from(v.denom()).expect("dual vertex overflows i64");
                        Rational::new(num, den)
                    })
                    .collect();
                if y.iter().zip(w).any(|(v, wi)| v.abs() > Rational::from_integer(*wi)) {
                    continue;
                }
                let neg: Vec<Rational> = y.iter().map(|v| -v).collect();
                if !vertices.contains(&y) && !vertices.contains(&neg) {
                    vertices.push(y);
                }
            }
            if !next_subset(&mut subset, n) {
                break;
            }
        }
        Self { vertices }
    }

    fn distance(&self, x: &[i64]) -> Rational {
        self.vertices
            .iter()
            .map(|y| y.iter().zip(x).map(|(a, b)| a * Rational::from_integer(*b)).sum::<Rational>().abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn next_subset(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Per-box bookkeeping shared by the combinatorial constants.
struct BoxSearch {
    n: usize,
    m: i64,
    cob: Vec<Vec<(usize, i64)>>,
    annihilator: Vec<Vec<i64>>,
    deg: Vec<i64>,
    delta: IntMatrix,
}

impl BoxSearch {
    fn new(complex: &SimplicialComplex, k: usize, opts: &CheegerOptions) -> Result<Self> {
        let n = complex.count(k);
        if n > opts.budget {
            return Err(Error::BudgetExceeded { what: "multiset enumeration on Σ_k", size: n, budget: opts.budget });
        }
        if opts.m < 1 {
            return Err(Error::Precondition("the multiplicity bound must be at least 1".into()));
        }
        let side = (2 * opts.m + 1) as usize;
        let points = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(side)).unwrap_or(usize::MAX);
        if points > BOX_BUDGET {
            return Err(Error::BudgetExceeded { what: "multiset box points", size: points, budget: BOX_BUDGET });
        }
        let deg: Vec<i64> = complex.degrees(k).iter().map(|d| *d as i64).collect();
        if let Some(i) = deg.iter().position(|d| *d == 0) {
            return Err(Error::ZeroDegree(i));
        }
        let delta = complex.coboundary_matrix(k);
        let cob = (0..delta.rows())
            .map(|t| delta.row(t).iter().enumerate().filter(|(_, v)| **v != 0).map(|(j, v)| (j, *v)).collect())
            .collect();
        Ok(Self { n, m: opts.m, cob, annihilator: coboundary_annihilator(complex, k), deg, delta })
    }

    /// Visits every point of `[−M, M]^n` in lexicographic order.
    fn for_each(&self, mut f: impl FnMut(&[i64])) {
        let mut x = vec![-self.m; self.n];
        loop {
            f(&x);
            let mut i = self.n;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if x[i] < self.m {
                    x[i] += 1;
                    break;
                }
                x[i] = -self.m;
            }
        }
    }

    fn coboundary_norm(&self, x: &[i64]) -> i64 {
        self.cob.iter().map(|row| row.iter().map(|(j, s)| s * x[*j]).sum::<i64>().abs()).sum()
    }

    fn is_coboundary(&self, x: &[i64]) -> bool {
        self.annihilator.iter().all(|a| a.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() == 0)
    }

    /// Distance to `ker δ_k`, i.e. the least volume of a rational multiset with coboundary `δx`.
    fn filling(&self) -> L1Distance {
        L1Distance::new(&row_space(&self.delta), &self.deg)
    }

    /// Distance to `im δ_{k−1}`.
    fn quotient(&self) -> L1Distance {
        L1Distance::new(&self.annihilator, &self.deg)
    }

    /// Lexicographically first minimizer of `‖δx‖₁ / dist(x)` over admissible box points;
    /// `None` from `ratio` marks an inadmissible point.
    fn minimize(&self, what: &'static str, ratio: impl Fn(&[i64], i64) -> Option<Rational>) -> Result<CheegerValue> {
        let mut best: Option<(Rational, Vec<i64>)> = None;
        self.for_each(|x| {
            if let Some(r) = ratio(x, self.coboundary_norm(x)) {
                if best.as_ref().is_none_or(|(b, _)| r < *b) {
                    best = Some((r, x.to_vec()));
                }
            }
        });
        let (value, witness) = best.ok_or(Error::Undefined(what))?;
        Ok(CheegerValue { value, witness, warning: None })
    }
}

fn top_level(complex: &SimplicialComplex, k: usize) -> Result<Option<CheegerValue>> {
    if k > complex.dim() {
        return Err(Error::LevelOutOfRange { level: k, dim: complex.dim() });
    }
    if k == complex.dim() {
        return Ok(Some(CheegerValue {
            value: Rational::zero(),
            witness: Vec::new(),
            warning: Some(TOP_LEVEL_WARNING),
        }));
    }
    Ok(None)
}

/// `h1`: multisets `S` in the box that are not coboundaries, against the least volume of a
/// nonzero multiset with the same coboundary. The inner minimum is taken without the box bound,
/// which is its large-`M` value.
pub fn cheeger_h1(complex: &SimplicialComplex, k: usize, opts: &CheegerOptions) -> Result<CheegerValue> {
    if let Some(v) = top_level(complex, k)? {
        return Ok(v);
    }
    let search = BoxSearch::new(complex, k, opts)?;
    let filling = search.filling();
    search.minimize("h1 (every multiset is a coboundary)", |x, num| {
        if search.is_coboundary(x) {
            None
        } else if num == 0 {
            // a cocycle that is no coboundary; any nonzero S' has positive volume
            Some(Rational::zero())
        } else {
            Some(Rational::from_integer(num) / filling.distance(x))
        }
    })
}

/// `h2`: integer cochains outside `im δ`, against the weighted ℓ¹ distance to `im δ`.
pub fn cheeger_h2(complex: &SimplicialComplex, k: usize, opts: &CheegerOptions) -> Result<CheegerValue> {
    if let Some(v) = top_level(complex, k)? {
        return Ok(v);
    }
    let search = BoxSearch::new(complex, k, opts)?;
    let quotient = search.quotient();
    search.minimize("h2 (every cochain is a coboundary)", |x, num| {
        (!search.is_coboundary(x)).then(|| Rational::from_integer(num) / quotient.distance(x))
    })
}

/// `h4`: the filling profile `min ‖y‖₁ / ‖y‖_fil` over `y ∈ im δ_k` when the reduced
/// cohomology vanishes, and the quotient-norm form otherwise.
pub fn cheeger_h4(complex: &SimplicialComplex, k: usize, opts: &CheegerOptions) -> Result<CheegerValue> {
    if top_level(complex, k)?.is_some() || complex.reduced_betti(k) > 0 {
        return cheeger_h2(complex, k, opts);
    }
    let search = BoxSearch::new(complex, k, opts)?;
    let filling = search.filling();
    search.minimize("h4 (δ_k vanishes)", |x, num| {
        (num != 0).then(|| Rational::from_integer(num) / filling.distance(x))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct H3Value {
    pub value: f64,
    pub witness: Vec<f64>,
    pub warning: Option<&'static str>,
}

/// `h3 = λ_min>0` of the up 1-Laplacian:
/// `min_{x ∉ ker δ} ‖δx‖₁ / min_{z ∈ ker δ} ‖x + z‖_{1,deg}`.
pub fn cheeger_h3(complex: &SimplicialComplex, k: usize) -> Result<H3Value> {
    if top_level(complex, k)?.is_some() {
        return Ok(H3Value { value: 0.0, witness: Vec::new(), warning: Some(TOP_LEVEL_WARNING) });
    }
    let d = complex.coboundary_matrix(k);
    let w: Vec<f64> = complex.degrees(k).iter().map(|x| (*x).max(1) as f64).collect();
    let L1Ratio { value, witness, .. } = min_ratio_l1(&d, &w, &nullspace(&d))?;
    Ok(H3Value { value, witness, warning: None })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheegerEstimate {
    pub h: Rational,
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// `h² / |Σ_{k+1}| ≤ λ_min>0(Δ_k^up) ≤ Vol(Σ_k) · h`.
pub fn cheeger_estimate_check(complex: &SimplicialComplex, k: usize, opts: &CheegerOptions) -> Result<CheegerEstimate> {
    if let Some(i) = complex.degrees(k).iter().position(|d| *d == 0) {
        return Err(Error::ZeroDegree(i));
    }
    let h = cheeger_h1(complex, k, opts)?.value;
    let spec = normalized_up_spectrum(complex, k)?;
    let lambda = *spec.nonzero().first().ok_or(Error::Undefined("smallest positive eigenvalue"))?;
    let hf = rational_to_f64(&h);
    let vol: usize = complex.degrees(k).iter().sum();
    let lower = hf * hf / complex.count(k + 1) as f64;
    let upper = vol as f64 * hf;
    let holds = lower <= lambda + 1e-9 && lambda <= upper + 1e-9;
    Ok(CheegerEstimate { h, lambda, lower, upper, holds })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TopSpectrumReport {
    pub j: usize,
    pub h: Rational,
    pub witness: Vec<SubBipartition>,
    /// `λ_{M+1−j}` of `Δ_k^up`.
    pub lambda: f64,
    /// `k + 2 − λ_{M+1−j} ≤ 2 h_j`.
    pub upper_holds: bool,
    /// `h_1² / (2(k+1)) ≤ k + 2 − λ_M`; only asserted for `j = 1`.
    pub lower_holds: Option<bool>,
    /// `h_j² / ((k+1) j⁶ (k+2−λ))`, reported because the general constant is unknown.
    pub empirical_ratio: f64,
    pub balanced_components: usize,
}

/// `h_j(Σ_k)` from the signed graph with the `Largest` convention and volumes `deg σ`.
pub fn cheeger_hj_and_top_spectrum(
    complex: &SimplicialComplex,
    k: usize,
    j: usize,
    budget: usize,
) -> Result<TopSpectrumReport> {
    let g = derived_signed_graph(complex, k, SignConvention::Largest)?.graph;
    let volume: Vec<Rational> = complex.degrees(k).iter().map(|d| Rational::from_integer(*d as i64)).collect();
    let hj = signed_cheeger_with_volume(&g, j, &volume, budget)?;
    let spec = normalized_up_spectrum(complex, k)?;
    let m = spec.eigenvalues.len();
    if j > m {
        return Err(Error::Precondition("j exceeds the number of eigenvalues".into()));
    }
    let lambda = spec.eigenvalues[m - j];
    let kf = k as f64;
    let gap = kf + 2.0 - lambda;
    let hf = rational_to_f64(&hj.value);
    let upper_holds = gap <= 2.0 * hf + 1e-9;
    let lower_holds = (j == 1).then(|| hf * hf / (2.0 * (kf + 1.0)) <= gap + 1e-9);
    let empirical_ratio = hf * hf / ((kf + 1.0) * libm::pow(j as f64, 6.0) * gap);
    Ok(TopSpectrumReport {
        j,
        h: hj.value,
        witness: hj.witness,
        lambda,
        upper_holds,
        lower_holds,
        empirical_ratio,
        balanced_components: g.balanced_components_with_edges(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Disorientability {
    pub disorientable: bool,
    /// Sign per top simplex making all induced facet orientations agree.
    pub orientation: Option<Vec<i8>>,
    /// Two top simplices and a shared facet that close an inconsistent cycle.
    pub obstruction: Option<(usize, usize)>,
    pub pure: bool,
    pub lambda_max: f64,
    /// Multiplicity of the eigenvalue `n + 1` of `Δ_{n−1}^up`.
    pub top_multiplicity: usize,
    /// Components of `Γ_{n−1}` that contain edges.
    pub edge_components: usize,
    pub spectral_verdict: bool,
}

/// Orientation search on top simplices (parity colouring) against the spectral test.
pub fn is_disorientable(complex: &SimplicialComplex) -> Result<Disorientability> {
    let n = complex.dim();
    let pure = complex.maximal_simplices().iter().all(|s| s.dim() == n);
    let tops = complex.count(n);
    if n == 0 {
        return Ok(Disorientability {
            disorientable: true,
            orientation: Some(vec![1; tops]),
            obstruction: None,
            pure,
            lambda_max: 0.0,
            top_multiplicity: 0,
            edge_components: 0,
            spectral_verdict: true,
        });
    }
    let d = complex.coboundary_matrix(n - 1);
    let mut constraints = Vec::new();
    let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    for s in 0..d.cols() {
        let cof: Vec<usize> = (0..d.rows()).filter(|&t| d[(t, s)] != 0).collect();
        for (a, &t1) in cof.iter().enumerate() {
            for &t2 in &cof[a + 1..] {
                if seen.insert((t1, t2), ()).is_none() {
                    let sign = (d[(t1, s)] * d[(t2, s)]) as i8;
                    constraints.push(SignedEdge { u: t1, v: t2, weight: Rational::one(), sign });
                }
            }
        }
    }
    let graph = SignedGraph::new(tops, constraints.clone())?;
    let switch = graph.balancing_switch();
    let orientation = switch.as_ref().map(|set| {
        let mut o = vec![1i8; tops];
        for &t in set {
            o[t] = -1;
        }
        o
    });
    let obstruction = if switch.is_none() {
        constraints.iter().find(|e| {
            let mut without = constraints.clone();
            without.retain(|x| x != *e);
            SignedGraph::new(tops, without).map(|g| g.is_balanced()).unwrap_or(false)
        })
        .map(|e| (e.u, e.v))
    } else {
        None
    };
    let spec = normalized_up_spectrum(complex, n - 1)?;
    let target = n as f64 + 1.0;
    let top_multiplicity = spec.eigenvalues.iter().filter(|x| (*x - target).abs() <= 1e-8).count();
    let lambda_max = spec.eigenvalues.last().copied().unwrap_or(0.0);
    let edge_components = derived_signed_graph(complex, n - 1, SignConvention::Largest)?.graph.components_with_edges();
    Ok(Disorientability {
        disorientable: switch.is_some(),
        orientation,
        obstruction,
        pure,
        lambda_max,
        top_multiplicity,
        edge_components,
        spectral_verdict: top_multiplicity == edge_components,
    })
}
