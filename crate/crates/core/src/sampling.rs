//! Point clouds on the circle, the round sphere and the flat torus, neighbourhood graphs on them,
//! and the comparison of graph spectra with the closed-form Laplace–Beltrami spectra.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, symmetric_eigen, tridiagonal_eigen, Matrix};
use crate::signed::SandwichCheck;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Manifold {
    Circle,
    /// Unit sphere in ℝ³.
    Sphere,
    /// `ℝ²/(2πℤ)²`, embedded isometrically in ℝ⁴ as `(cos a, sin a, cos b, sin b)`.
    Torus,
}

impl Manifold {
    pub fn intrinsic_dim(self) -> usize {
        match self {
            Manifold::Circle => 1,
            _ => 2,
        }
    }

    /// Sizes of the first two nontrivial eigenvalue clusters and the ratio of their values.
    pub fn cluster_targets(self) -> ([usize; 2], f64) {
        match self {
            Manifold::Circle => ([2, 2], 4.0),
            Manifold::Sphere => ([3, 5], 3.0),
            Manifold::Torus => ([4, 4], 2.0),
        }
    }

    /// Ball radius used when none is given: large enough for the lowest clusters to separate
    /// at a couple of thousand points, small enough to stay local.
    pub fn default_epsilon(self) -> f64 {
        match self {
            Manifold::Circle => 0.15,
            Manifold::Sphere => 0.3,
            Manifold::Torus => 0.5,
        }
    }

    /// Smallest nontrivial Laplace–Beltrami eigenvalue.
    pub fn first_eigenvalue(self) -> f64 {
        match self {
            Manifold::Sphere => 2.0,
            _ => 1.0,
        }
    }

    /// Isoperimetric constant `inf |∂A| / min(|A|, |M∖A|)`.
    pub fn cheeger_constant(self) -> f64 {
        match self {
            Manifold::Sphere => 1.0,
            _ => 2.0 / PI,
        }
    }

    /// Lowest eigenvalues with multiplicity, `count` of them.
    pub fn spectrum(self, count: usize) -> Vec<f64> {
        let mut out = Vec::new();
        let mut level = 0i64;
        while out.len() < count {
            match self {
                Manifold::Circle => {
                    let mult = if level == 0 { 1 } else { 2 };
                    out.extend(core::iter::repeat_n((level * level) as f64, mult));
                }
                Manifold::Sphere => {
                    out.extend(core::iter::repeat_n((level * (level + 1)) as f64, (2 * level + 1) as usize));
                }
                Manifold::Torus => {
                    let mult = (-level..=level)
                        .flat_map(|a| (-level..=level).map(move |b| (a, b)))
                        .filter(|(a, b)| a * a + b * b == level)
                        .count();
                    out.extend(core::iter::repeat_n(level as f64, mult));
                }
            }
            level += 1;
        }
        out.truncate(count);
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleCloud {
    pub manifold: Manifold,
    pub seed: u64,
    pub points: Vec<Vec<f64>>,
}

/// `n` points drawn uniformly with respect to the volume measure.
pub fn sample(manifold: Manifold, n: usize, seed: u64) -> Result<SampleCloud> {
    if n == 0 {
        return Err(Error::Precondition("at least one point is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angle = |rng: &mut ChaCha8Rng| rng.random_range(0.0..2.0 * PI);
    let points = (0..n)
        .map(|_| match manifold {
            Manifold::Circle => {
                let t = angle(&mut rng);
                vec![libm::cos(t), libm::sin(t)]
            }
            Manifold::Sphere => loop {
                let v: Vec<f64> = (0..3).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                let r = norm(&v);
                if r > 1e-12 {
                    break v.iter().map(|x| x / r).collect();
                }
            },
            Manifold::Torus => {
                let (a, b) = (angle(&mut rng), angle(&mut rng));
                vec![libm::cos(a), libm::sin(a), libm::cos(b), libm::sin(b)]
            }
        })
        .collect();
    Ok(SampleCloud { manifold, seed, points })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rule {
    /// Join points at distance at most `ε`.
    Epsilon(f64),
    /// Join `u, v` when either is among the other's `k` nearest neighbours.
    Knn(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weighting {
    Unit,
    /// `exp(−d² / (2σ²))`.
    Gaussian(f64),
}

/// Undirected graph with positive edge weights, stored as adjacency lists.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Precondition(alloc::format!("bad edge ({u}, {v})")));
            }
            if w <= 0.0 || !w.is_finite() {
                return Err(Error::Precondition(alloc::format!("edge ({u}, {v}) needs a positive weight")));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Ok(Self { adjacency })
    }

    /// The 1-skeleton with unit weights.
    pub fn from_skeleton(c: &crate::SimplicialComplex) -> Self {
        let edges: Vec<(usize, usize, f64)> = if c.dim() == 0 {
            Vec::new()
        } else {
            c.simplices(1).iter().map(|e| (e.vertices()[0], e.vertices()[1], 1.0)).collect()
        };
        Self::new(c.count(0), &edges).expect("skeleton edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.adjacency.iter().map(|a| a.iter().map(|(_, w)| w).sum()).collect()
    }

    pub fn components(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// Reweights `w_uv ↦ w_uv / (d_u d_v)`, cancelling the sampling density from the
    /// limiting operator to first order.
    pub fn density_corrected(&self) -> Self {
        let deg = self.degrees();
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(u, nb)| nb.iter().map(|&(v, w)| (v, w / (deg[u] * deg[v]))).collect())
            .collect();
        Self { adjacency }
    }

    /// `D^{-1/2} W D^{-1/2} x`.
    fn normalized_adjacency_apply(&self, inv_sqrt_deg: &[f64], x: &[f64]) -> Vec<f64> {
        self.adjacency
            .iter()
            .enumerate()
            .map(|(u, nb)| inv_sqrt_deg[u] * nb.iter().map(|&(v, w)| w * inv_sqrt_deg[v] * x[v]).sum::<f64>())
            .collect()
    }

    /// Dense `I − D^{-1/2} W D^{-1/2}`.
    pub fn normalized_laplacian(&self) -> Result<Matrix> {
        let n = self.vertex_count();
        let deg = self.degrees();
        if let Some(v) = deg.iter().position(|d| *d <= 0.0) {
            return Err(Error::ZeroDegree(v));
        }
        let mut m = Matrix::identity(n);
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &(v, w) in nb {
                m[(u, v)] -= w / libm::sqrt(deg[u] * deg[v]);
            }
        }
        Ok(m)
    }

    /// `|E(S, S̄)| / min(vol S, vol S̄)`; infinite for `S = ∅` or `S = V`.
    pub fn expansion(&self, in_set: &[bool]) -> f64 {
        let deg = self.degrees();
        let mut cut = 0.0;
        let mut vol = 0.0;
        for (u, nb) in self.adjacency.iter().enumerate() {
            if in_set[u] {
                vol += deg[u];
                cut += nb.iter().filter(|(v, _)| !in_set[*v]).map(|(_, w)| w).sum::<f64>();
            }
        }
        let total: f64 = deg.iter().sum();
        let smaller = vol.min(total - vol);
        if smaller <= 0.0 {
            f64::INFINITY
        } else {
            cut / smaller
        }
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Symmetric neighbourhood graph; disconnected results are refused.
pub fn build_graph(cloud: &SampleCloud, rule: Rule, weighting: Weighting) -> Result<WeightedGraph> {
    let n = cloud.points.len();
    let p = &cloud.points;
    let weight = |d: f64| match weighting {
        Weighting::Unit => 1.0,
        Weighting::Gaussian(s) => libm::exp(-d * d / (2.0 * s * s)),
    };
    if let Weighting::Gaussian(s) = weighting {
        if s <= 0.0 {
            return Err(Error::Precondition("the Gaussian width must be positive".into()));
        }
    }
    let mut edges = Vec::new();
    match rule {
        Rule::Epsilon(eps) => {
            if eps <= 0.0 {
                return Err(Error::Precondition("ε must be positive".into()));
            }
            for u in 0..n {
                for v in u + 1..n {
                    let d = distance(&p[u], &p[v]);
                    if d <= eps {
                        edges.push((u, v, weight(d)));
                    }
                }
            }
        }
        Rule::Knn(k) => {
            if k == 0 || k >= n {
                return Err(Error::Precondition("k must lie in 1..n".into()));
            }
            let mut adjacent = vec![vec![false; n]; n];
            for u in 0..n {
                let mut order: Vec<(f64, usize)> =
                    (0..n).filter(|&v| v != u).map(|v| (distance(&p[u], &p[v]), v)).collect();
                order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                for &(_, v) in order.iter().take(k) {
                    adjacent[u][v] = true;
                    adjacent[v][u] = true;
                }
            }
            for u in 0..n {
                for v in u + 1..n {
                    if adjacent[u][v] {
                        edges.push((u, v, weight(distance(&p[u], &p[v]))));
                    }
                }
            }
        }
    }
    let g = WeightedGraph::new(n, &edges)?;
    let components = g.components();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(g)
}

/// Lowest eigenpairs of the normalized Laplacian.
#[derive(Clone, Debug, PartialEq)]
pub struct LowSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors of the symmetric form, one per eigenvalue.
    pub eigenvectors: Vec<Vec<f64>>,
    pub max_residual: f64,
    pub krylov_dim: usize,
}

/// The `count` smallest eigenvalues of `I − D^{-1/2} W D^{-1/2}` by Lanczos with full
/// reorthogonalization, growing the Krylov space until every wanted Ritz residual is below
/// `1e−9` (or the space is the whole vector space).
pub fn lanczos_smallest(g: &WeightedGraph, count: usize, seed: u64) -> Result<LowSpectrum> {
    let n = g.vertex_count();
    if count == 0 || count > n {
        return Err(Error::Precondition("eigenvalue count must lie in 1..=n".into()));
    }
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(|d| *d <= 0.0) {
        return Err(Error::ZeroDegree(v));
    }
    let inv_sqrt: Vec<f64> = deg.iter().map(|d| 1.0 / libm::sqrt(*d)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let s = norm(&start);
    let mut basis: Vec<Vec<f64>> = vec![start.iter().map(|x| x / s).collect()];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut target = (4 * count + 60).min(n);
    loop {
        while alpha.len() < target {
            let j = alpha.len();
            let mut w = g.normalized_adjacency_apply(&inv_sqrt, &basis[j]);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&w, q);
                    for (wi, qi) in w.iter_mut().zip(q) {
                        *wi -= c * qi;
                    }
                }
            }
            let b = norm(&w);
            if alpha.len() == n || b < 1e-12 {
                // invariant subspace: restart with a fresh orthogonal direction if needed
                if alpha.len() < n && b < 1e-12 {
                    let mut fresh: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                    for q in &basis {
                        let c = dot(&fresh, q);
                        for (fi, qi) in fresh.iter_mut().zip(q) {
                            *fi -= c * qi;
                        }
                    }
                    let f = norm(&fresh);
                    beta.push(0.0);
                    basis.push(fresh.iter().map(|x| x / f).collect());
                    continue;
                }
                beta.push(0.0);
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
        let m = alpha.len();
        // the largest eigenvalues of the normalized adjacency are the smallest of the Laplacian
        let neg: Vec<f64> = alpha.iter().map(|a| -a).collect();
        let off: Vec<f64> = beta[..m - 1].iter().map(|b| -b).collect();
        let (vals, vecs) = tridiagonal_eigen(&neg, &off);
        let tail = beta[m - 1];
        let residuals: Vec<f64> = (0..count).map(|i| (tail * vecs[(m - 1, i)]).abs()).collect();
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        if max_residual <= 1e-9 || m == n {
            let eigenvalues = vals[..count].iter().map(|v| 1.0 + v).collect();
            let eigenvectors = (0..count)
                .map(|i| {
                    let mut y = vec![0.0; n];
                    for (j, q) in basis.iter().take(m).enumerate() {
                        let c = vecs[(j, i)];
                        for (yi, qi) in y.iter_mut().zip(q) {
                            *yi += c * qi;
                        }
                    }
                    y
                })
                .collect();
            return Ok(LowSpectrum { eigenvalues, eigenvectors, max_residual, krylov_dim: m });
        }
        target = (m + m / 2).min(n);
    }
}

/// Splits sorted values wherever `(b − a) / a ≥ rel_gap`.
pub fn cluster_by_gap(values: &[f64], rel_gap: f64) -> Vec<Vec<f64>> {
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for &v in values {
        match clusters.last_mut() {
            Some(c) if (v - c[c.len() - 1]) / c[c.len() - 1].abs().max(f64::MIN_POSITIVE) < rel_gap => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    clusters
}

/// Relative gap separating eigenvalue clusters.
pub const CLUSTER_GAP: f64 = 0.15;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub manifold: Manifold,
    pub n: usize,
    pub seed: u64,
    pub edges: usize,
    pub eigenvalues: Vec<f64>,
    /// Spectrum scaled so the first nontrivial cluster has the closed-form mean.
    pub rescaled: Vec<f64>,
    pub target: Vec<f64>,
    pub cluster_sizes: Vec<usize>,
    pub target_sizes: [usize; 2],
    /// Mean of the second nontrivial cluster over the mean of the first.
    pub cluster_ratio: f64,
    /// Same ratio with clusters taken by index at the closed-form multiplicities.
    pub index_ratio: f64,
    pub target_ratio: f64,
    pub max_residual: f64,
    /// Best sweep cut along the first nontrivial eigenvector.
    pub sweep_expansion: f64,
    /// Sweep expansion times the ε-ball rescaling, for unit-weight ε-graphs.
    pub cheeger_estimate: Option<f64>,
    pub cheeger_target: f64,
}

/// Factor turning the expansion of a unit-weight ε-graph on a uniform sample into the
/// isoperimetric ratio: crossing pairs per boundary measure over pairs per volume.
pub fn sweep_rescaling(manifold: Manifold, eps: f64) -> f64 {
    match manifold.intrinsic_dim() {
        1 => 4.0 / eps,
        _ => 3.0 * PI / (2.0 * eps),
    }
}

/// Spectral comparison for one sample. With `density_correction` the graph is reweighted by
/// [`WeightedGraph::density_corrected`], which keeps random density fluctuations from splitting
/// degenerate eigenvalues.
pub fn convergence_report(
    manifold: Manifold,
    n: usize,
    rule: Rule,
    weighting: Weighting,
    density_correction: bool,
    seed: u64,
) -> Result<ConvergenceReport> {
    let (sizes, target_ratio) = manifold.cluster_targets();
    if n < 2 + 2 * (sizes[0] + sizes[1]) {
        return Err(Error::Precondition("too few points for the lowest two clusters".into()));
    }
    let cloud = sample(manifold, n, seed)?;
    let g = build_graph(&cloud, rule, weighting)?;
    let g = if density_correction { g.density_corrected() } else { g };
    let count = 1 + sizes[0] + 2 * sizes[1] + 2;
    let low = lanczos_smallest(&g, count, seed)?;
    let clusters = cluster_by_gap(&low.eigenvalues[1..], CLUSTER_GAP);
    if clusters.len() < 2 {
        return Err(Error::Undefined("two nontrivial eigenvalue clusters"));
    }
    let mean = |c: &[f64]| c.iter().sum::<f64>() / c.len() as f64;
    let first = mean(&clusters[0]);
    let cluster_ratio = mean(&clusters[1]) / first;
    let e = &low.eigenvalues;
    let index_ratio = mean(&e[1 + sizes[0]..1 + sizes[0] + sizes[1]]) / mean(&e[1..1 + sizes[0]]);
    let scale = manifold.first_eigenvalue() / first;
    let rescaled = low.eigenvalues.iter().map(|v| v * scale).collect();
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|d| 1.0 / libm::sqrt(*d)).collect();
    let fiedler: Vec<f64> = low.eigenvectors[1].iter().zip(&inv_sqrt).map(|(v, s)| v * s).collect();
    let (sweep_expansion, _) = sweep_cut(&g, &fiedler);
    let cheeger_estimate = match (rule, weighting) {
        (Rule::Epsilon(eps), Weighting::Unit) => Some(sweep_expansion * sweep_rescaling(manifold, eps)),
        _ => None,
    };
    Ok(ConvergenceReport {
        manifold,
        n,
        seed,
        edges: g.edge_count(),
        target: manifold.spectrum(count),
        eigenvalues: low.eigenvalues,
        rescaled,
        cluster_sizes: clusters.iter().map(Vec::len).collect(),
        target_sizes: sizes,
        cluster_ratio,
        index_ratio,
        target_ratio,
        max_residual: low.max_residual,
        sweep_expansion,
        cheeger_estimate,
        cheeger_target: manifold.cheeger_constant(),
    })
}

/// Best expansion among the threshold sets `{v : f(v) > t}`, with the minimizing set.
pub fn sweep_cut(g: &WeightedGraph, f: &[f64]) -> (f64, Vec<usize>) {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f[b].total_cmp(&f[a]).then(a.cmp(&b)));
    let deg = g.degrees();
    let total: f64 = deg.iter().sum();
    let mut in_set = vec![false; n];
    let (mut cut, mut vol) = (0.0, 0.0);
    let mut best = (f64::INFINITY, 0);
    for (i, &v) in order.iter().enumerate().take(n.saturating_sub(1)) {
        in_set[v] = true;
        vol += deg[v];
        for &(u, w) in g.neighbours(v) {
            cut += if in_set[u] { -w } else { w };
        }
        let eta = cut / vol.min(total - vol);
        if eta < best.0 {
            best = (eta, i + 1);
        }
    }
    let mut set: Vec<usize> = order[..best.1].to_vec();
    set.sort_unstable();
    (best.0, set)
}

/// Largest vertex count accepted by [`graph_cheeger`].
pub const GRAPH_CHEEGER_BUDGET: usize = 20;

/// `h = min_S η(S)` by enumerating all proper nonempty subsets containing vertex 0's complement
/// class representatives (each `S, S̄` pair once).
pub fn graph_cheeger(g: &WeightedGraph) -> Result<(f64, Vec<usize>)> {
    let n = g.vertex_count();
    if n > GRAPH_CHEEGER_BUDGET {
        return Err(Error::BudgetExceeded { what: "graph Cheeger enumeration", size: n, budget: GRAPH_CHEEGER_BUDGET });
    }
    if n < 2 {
        return Err(Error::Undefined("Cheeger constant of a graph with fewer than two vertices"));
    }
    let mut best = (f64::INFINITY, 0u32);
    // vertex n−1 stays outside S, so every unordered pair {S, S̄} is seen once
    for mask in 1u32..(1 << (n - 1)) {
        let in_set: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let eta = g.expansion(&in_set);
        if eta < best.0 {
            best = (eta, mask);
        }
    }
    Ok((best.0, (0..n).filter(|v| best.1 >> v & 1 == 1).collect()))
}

/// `1 − √(1 − h²) ≤ λ_2 ≤ 2h` for a connected graph.
pub fn graph_cheeger_inequality(g: &WeightedGraph) -> Result<SandwichCheck> {
    if g.components() > 1 {
        return Err(Error::Disconnected { components: g.components() });
    }
    let (h, _) = graph_cheeger(g)?;
    let (vals, _) = symmetric_eigen(&g.normalized_laplacian()?);
    let lambda = vals[1];
    let lower = 1.0 - libm::sqrt((1.0 - h * h).max(0.0));
    let upper = 2.0 * h;
    let tol = 1e-9;
    Ok(SandwichCheck { lower, value: lambda, upper, holds: lower <= lambda + tol && lambda <= upper + tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_lie_on_manifolds() {
        let c = sample(Manifold::Circle, 4, 1).unwrap();
        assert_eq!(c.points.len(), 4);
        assert!(c.points.iter().all(|p| p.len() == 2 && (norm(p) - 1.0).abs() < 1e-12));
        let t = sample(Manifold::Torus, 50, 2).unwrap();
        assert!(t.points.iter().all(|p| (p[0] * p[0] + p[1] * p[1] - 1.0).abs() < 1e-12));
        assert_eq!(sample(Manifold::Sphere, 20, 9).unwrap(), sample(Manifold::Sphere, 20, 9).unwrap());
        let s = sample(Manifold::Sphere, 100_000, 3).unwrap();
        let mean: Vec<f64> = (0..3).map(|i| s.points.iter().map(|p| p[i]).sum::<f64>() / 1e5).collect();
        assert!(norm(&mean) <= 0.02);
    }

    #[test]
    fn closed_form_spectra() {
        assert_eq!(Manifold::Circle.spectrum(5), vec![0.0, 1.0, 1.0, 4.0, 4.0]);
        assert_eq!(Manifold::Sphere.spectrum(9), vec![0.0, 2.0, 2.0, 2.0, 6.0, 6.0, 6.0, 6.0, 6.0]);
        assert_eq!(Manifold::Torus.spectrum(10), vec![0.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0, 4.0]);
    }

    #[test]
    fn graph_rules() {
        let c = sample(Manifold::Circle, 12, 5).unwrap();
        let full = build_graph(&c, Rule::Epsilon(3.0), Weighting::Unit).unwrap();
        assert_eq!(full.edge_count(), 66);
        assert!(matches!(build_graph(&c, Rule::Epsilon(1e-6), Weighting::Unit), Err(Error::Disconnected { .. })));
        let pts = SampleCloud {
            manifold: Manifold::Circle,
            seed: 0,
            points: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.1, 0.0], vec![3.3, 0.0], vec![10.0, 0.0]],
        };
        let g = build_graph(&pts, Rule::Knn(1), Weighting::Unit).unwrap();
        let mut edges: Vec<(usize, usize)> =
            (0..5).flat_map(|u| g.neighbours(u).iter().map(move |(v, _)| (u, *v))).filter(|(u, v)| u < v).collect();
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn lanczos_matches_dense() {
        let c = sample(Manifold::Sphere, 150, 4).unwrap();
        let g = build_graph(&c, Rule::Epsilon(0.6), Weighting::Unit).unwrap();
        let low = lanczos_smallest(&g, 9, 1).unwrap();
        let (dense, _) = symmetric_eigen(&g.normalized_laplacian().unwrap());
        for (a, b) in low.eigenvalues.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        assert!(low.eigenvalues[0].abs() < 1e-9);
    }

    #[test]
    fn cheeger_on_small_graphs() {
        let path = WeightedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let (h, set) = graph_cheeger(&path).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
        assert_eq!(set, vec![0]);
        let k3 = WeightedGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let s = graph_cheeger_inequality(&k3).unwrap();
        assert!(s.holds && (s.value - 1.5).abs() < 1e-12 && (s.upper - 2.0).abs() < 1e-12);
        let (eta, _) = sweep_cut(&k3, &[1.0, 0.0, -1.0]);
        assert!(eta >= graph_cheeger(&k3).unwrap().0);
    }

    #[test]
    fn small_sphere_report() {
        let r = convergence_report(Manifold::Sphere, 600, Rule::Epsilon(0.45), Weighting::Unit, true, 3).unwrap();
        assert_eq!(r.cluster_sizes[..2], [3, 5]);
        assert!((r.cluster_ratio - 3.0).abs() < 0.6);
        assert!(r.max_residual < 1e-8);
        assert!(matches!(
            convergence_report(Manifold::Sphere, 10, Rule::Epsilon(1.0), Weighting::Unit, true, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cluster_split() {
        let c = cluster_by_gap(&[1.0, 1.05, 3.0, 3.1, 3.2, 9.0], 0.15);
        assert_eq!(c.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 3, 1]);
    }
}
