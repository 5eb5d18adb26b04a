//! Signed graphs, switching, and exhaustive signed Cheeger constants.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::spectral::{eigendecomposition, InnerProduct, SpectrumReport};
use crate::{rational_to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
    pub sign: i8,
}

/// A loop-free graph with positive edge weights and signs in `{−1, +1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<SignedEdge>,
}

impl SignedGraph {
    pub fn new(n: usize, edges: Vec<SignedEdge>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.u == e.v {
                return Err(Error::Precondition(alloc::format!("loop at vertex {}", e.u)));
            }
            if e.u >= n || e.v >= n {
                return Err(Error::Precondition(alloc::format!(
                    "edge {}-{} uses a vertex outside 0..{n}",
                    e.u,
                    e.v
                )));
            }
            if e.weight <= Rational::zero() {
                return Err(Error::NonPositiveWeight(vec![e.u, e.v]));
            }
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::Precondition(alloc::format!("sign {} is not ±1", e.sign)));
            }
            if e.u > e.v {
                core::mem::swap(&mut e.u, &mut e.v);
            }
            out.push(e);
        }
        out.sort();
        if out.windows(2).any(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::Precondition("repeated edge".into()));
        }
        Ok(Self { n, edges: out })
    }

    /// Unit weights, every sign `+1`.
    pub fn unsigned(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            edges
                .iter()
                .map(|&(u, v)| SignedEdge { u, v, weight: Rational::one(), sign: 1 })
                .collect(),
        )
    }

    /// Unit weights with the given signs.
    pub fn with_signs(n: usize, edges: &[(usize, usize, i8)]) -> Result<Self> {
        Self::new(
            n,
            edges
                .iter()
                .map(|&(u, v, sign)| SignedEdge { u, v, weight: Rational::one(), sign })
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.n];
        for e in &self.edges {
            d[e.u] += e.weight;
            d[e.v] += e.weight;
        }
        d
    }

    /// Flips the sign of every edge with exactly one endpoint in `set`.
    pub fn switch(&self, set: &[usize]) -> Self {
        let mut inside = vec![false; self.n];
        for &v in set {
            if v < self.n {
                inside[v] = true;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut e = e.clone();
                if inside[e.u] != inside[e.v] {
                    e.sign = -e.sign;
                }
                e
            })
            .collect();
        Self { n: self.n, edges }
    }

    /// Every sign flipped.
    pub fn negated(&self) -> Self {
        let edges = self.edges.iter().map(|e| SignedEdge { sign: -e.sign, ..e.clone() }).collect();
        Self { n: self.n, edges }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, i8)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.sign));
            adj[e.v].push((e.u, e.sign));
        }
        adj
    }

    /// Component label of every vertex, numbered in order of first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        label
    }

    pub fn components(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.u] != usize::MAX && pos[e.v] != usize::MAX)
            .map(|e| {
                let (u, v) = (pos[e.u].min(pos[e.v]), pos[e.u].max(pos[e.v]));
                SignedEdge { u, v, ..e.clone() }
            })
            .collect();
        Self { n: vertices.len(), edges }
    }

    /// Components that contain at least one edge and are balanced.
    pub fn balanced_components_with_edges(&self) -> usize {
        let label = self.component_labels();
        let count = self.components();
        (0..count)
            .filter(|&c| {
                let members: Vec<usize> = (0..self.n).filter(|&v| label[v] == c).collect();
                let sub = self.induced(&members);
                !sub.edges.is_empty() && sub.is_balanced()
            })
            .count()
    }

    /// Components that contain at least one edge.
    pub fn components_with_edges(&self) -> usize {
        let label = self.component_labels();
        let mut has = vec![false; self.components()];
        for e in &self.edges {
            has[label[e.u]] = true;
        }
        has.into_iter().filter(|x| *x).count()
    }

    /// A switching set making every sign `+1`, if one exists.
    pub fn balancing_switch(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].expect("coloured");
                for &(v, sign) in &adj[u] {
                    let want = if sign > 0 { cu } else { !cu };
                    match colour[v] {
                        None => {
                            colour[v] = Some(want);
                            queue.push_back(v);
                        }
                        Some(c) if c != want => return None,
                        _ => {}
                    }
                }
            }
        }
        Some((0..self.n).filter(|&v| colour[v] == Some(true)).collect())
    }

    pub fn is_balanced(&self) -> bool {
        self.balancing_switch().is_some()
    }

    pub fn is_antibalanced(&self) -> bool {
        self.negated().is_balanced()
    }
}

fn require_positive_degrees(g: &SignedGraph) -> Result<Vec<Rational>> {
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(Rational::is_zero) {
        return Err(Error::ZeroDegree(v));
    }
    Ok(deg)
}

/// `Δ_s = I − D⁻¹ A_s`, self-adjoint for the degree inner product.
pub fn signed_laplacian(g: &SignedGraph) -> Result<Matrix> {
    let deg = require_positive_degrees(g)?;
    let mut m = Matrix::identity(g.n);
    for e in &g.edges {
        let w = rational_to_f64(&e.weight) * f64::from(e.sign);
        m[(e.u, e.v)] -= w / rational_to_f64(&deg[e.u]);
        m[(e.v, e.u)] -= w / rational_to_f64(&deg[e.v]);
    }
    Ok(m)
}

pub fn signed_spectrum(g: &SignedGraph) -> Result<SpectrumReport> {
    let l = signed_laplacian(g)?;
    let ip = InnerProduct::new(0, g.degrees().iter().map(rational_to_f64).collect())?;
    eigendecomposition(&l, &ip)
}

/// Disjoint vertex sets, not necessarily covering the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBipartition {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

impl SubBipartition {
    fn from_masks(a: u32, b: u32, n: usize) -> Self {
        Self { v1: bits(a, n), v2: bits(b, n) }
    }
}

fn bits(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Exact `h_j^s` with one witness pair per index.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedCheeger {
    pub j: usize,
    pub value: Rational,
    pub witness: Vec<SubBipartition>,
}

/// Ratio evaluation on bitmasks; `volume[v]` is the denominator weight of `v`.
struct Ratio<'a> {
    g: &'a SignedGraph,
    volume: &'a [Rational],
}

impl Ratio<'_> {
    /// `β^s(V1, V2)`, or `None` when `Vol(V1 ⊔ V2) = 0`.
    fn beta(&self, a: u32, b: u32) -> Option<Rational> {
        let s = a | b;
        let vol: Rational = bits(s, self.g.n).iter().map(|&v| self.volume[v]).sum();
        if vol.is_zero() {
            return None;
        }
        let mut num = Rational::zero();
        let two = Rational::from_integer(2);
        for e in &self.g.edges {
            let (u, v) = (1u32 << e.u, 1u32 << e.v);
            let u_in = s & u != 0;
            let v_in = s & v != 0;
            if u_in && v_in {
                let same = (a & u != 0) == (a & v != 0);
                if (same && e.sign < 0) || (!same && e.sign > 0) {
                    num += two * e.weight;
                }
            } else if u_in || v_in {
                num += e.weight;
            }
        }
        Some(num / vol)
    }
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if n > budget || n > 20 {
        return Err(Error::BudgetExceeded { what: "exhaustive sub-bipartition search", size: n, budget });
    }
    Ok(())
}

/// `h_j^s` using the graph degrees as volumes.
pub fn signed_cheeger(g: &SignedGraph, j: usize, budget: usize) -> Result<SignedCheeger> {
    let vol = require_positive_degrees(g)?;
    signed_cheeger_with_volume(g, j, &vol, budget)
}

/// `h_j^s` with explicit volume weights. `j = 1` enumerates `{unused, V1, V2}^V` in
/// lexicographic order (vertex 0 most significant) and keeps the first minimizer; `j ≥ 2`
/// minimizes over supports with a subset recursion.
pub fn signed_cheeger_with_volume(
    g: &SignedGraph,
    j: usize,
    volume: &[Rational],
    budget: usize,
) -> Result<SignedCheeger> {
    let n = g.n;
    check_budget(n, budget)?;
    if j == 0 || j > 3 {
        return Err(Error::Precondition("j must lie in 1..=3".into()));
    }
    if volume.len() != n {
        return Err(Error::Precondition("volume vector has the wrong length".into()));
    }
    let ratio = Ratio { g, volume };
    if j == 1 {
        let mut best: Option<(Rational, u32, u32)> = None;
        let mut digits = vec![0u8; n];
        let total = 3usize.pow(n as u32);
        for _ in 0..total {
            let (mut a, mut b) = (0u32, 0u32);
            for (v, &d) in digits.iter().enumerate() {
                match d {
                    1 => a |= 1 << v,
                    2 => b |= 1 << v,
                    _ => {}
                }
            }
            if let Some(x) = ratio.beta(a, b) {
                if best.as_ref().is_none_or(|(y, _, _)| x < *y) {
                    best = Some((x, a, b));
                }
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < 3 {
                    break;
                }
                *d = 0;
            }
        }
        let (value, a, b) = best.ok_or(Error::Undefined("signed Cheeger constant"))?;
        return Ok(SignedCheeger { j, value, witness: vec![SubBipartition::from_masks(a, b, n)] });
    }

    let full = (1u32 << n) - 1;
    // best split of each support
    let mut split: Vec<Option<(Rational, u32)>> = vec![None; 1 << n];
    for s in 1..=full {
        let mut a = s;
        loop {
            if let Some(x) = ratio.beta(a, s & !a) {
                if split[s as usize].as_ref().is_none_or(|(y, _)| x < *y) {
                    split[s as usize] = Some((x, a));
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & s;
        }
    }
    // level[i][U]: best max-ratio of i+1 disjoint supports inside U, with the chosen support
    let mut level: Vec<Vec<Option<(Rational, u32)>>> = Vec::with_capacity(j);
    let mut first = vec![None; 1 << n];
    for u in 1..=full {
        let mut cur: Option<(Rational, u32)> = split[u as usize].map(|(x, _)| (x, u));
        let mut sub = (u - 1) & u;
        while sub > 0 {
            if let Some((x, _)) = first[sub as usize] {
                if cur.as_ref().is_none_or(|(y, _)| x < *y) {
                    cur = first[sub as usize];
                }
            }
            sub = (sub - 1) & u;
        }
        first[u as usize] = cur;
    }
    level.push(first);
    for i in 1..j {
        let prev = &level[i - 1];
        let mut next = vec![None; 1 << n];
        for u in 1..=full {
            let mut cur: Option<(Rational, u32)> = None;
            let mut s = u;
            while s > 0 {
                if let (Some((x, _)), Some((y, _))) = (split[s as usize], prev[(u & !s) as usize]) {
                    let m = if x > y { x } else { y };
                    if cur.as_ref().is_none_or(|(c, _)| m < *c) {
                        cur = Some((m, s));
                    }
                }
                s = (s - 1) & u;
            }
            next[u as usize] = cur;
        }
        level.push(next);
    }
    let (value, _) = level[j - 1][full as usize].ok_or(Error::Undefined("j-way signed Cheeger constant"))?;
    let mut witness = Vec::with_capacity(j);
    let mut u = full;
    for i in (0..j).rev() {
        let (_, s) = level[i][u as usize].expect("reachable");
        let (_, a) = split[s as usize].expect("defined support");
        witness.push(SubBipartition::from_masks(a, s & !a, n));
        u &= !s;
    }
    Ok(SignedCheeger { j, value, witness })
}

/// `β^s(V1, V2)` with degree volumes.
pub fn signed_bipartiteness_ratio(g: &SignedGraph, part: &SubBipartition) -> Result<Rational> {
    let vol = require_positive_degrees(g)?;
    let mask = |vs: &[usize]| vs.iter().fold(0u32, |m, &v| m | 1 << v);
    if mask(&part.v1) & mask(&part.v2) != 0 {
        return Err(Error::Precondition("V1 and V2 must be disjoint".into()));
    }
    Ratio { g, volume: &vol }
        .beta(mask(&part.v1), mask(&part.v2))
        .ok_or(Error::Undefined("bipartiteness ratio of empty sets"))
}

/// Dual Cheeger constant of an unsigned graph with the bipartiteness ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCheeger {
    pub h_bar: Rational,
    pub beta: Rational,
    pub witness: SubBipartition,
}

/// `h̄ = max 2|E(V1,V2)| / (vol V1 + vol V2)`; `β` is computed independently as the signed
/// constant of the all-negative signing and `β = 1 − h̄` is enforced.
pub fn dual_cheeger(g: &SignedGraph, budget: usize) -> Result<DualCheeger> {
    let n = g.n;
    check_budget(n, budget)?;
    let comps = g.components();
    if comps > 1 {
        return Err(Error::Disconnected { components: comps });
    }
    let deg = require_positive_degrees(g)?;
    let mut best: Option<(Rational, u32, u32)> = None;
    let mut digits = vec![0u8; n];
    for _ in 0..3usize.pow(n as u32) {
        let (mut a, mut b) = (0u32, 0u32);
        for (v, &d) in digits.iter().enumerate() {
            match d {
                1 => a |= 1 << v,
                2 => b |= 1 << v,
                _ => {}
            }
        }
        let vol: Rational = bits(a | b, n).iter().map(|&v| deg[v]).sum();
        if !vol.is_zero() {
            let cross: Rational = g
                .edges
                .iter()
                .filter(|e| {
                    let (u, v) = (1u32 << e.u, 1u32 << e.v);
                    (a & u != 0 && b & v != 0) || (a & v != 0 && b & u != 0)
                })
                .map(|e| e.weight)
                .sum();
            let x = Rational::from_integer(2) * cross / vol;
            if best.as_ref().is_none_or(|(y, _, _)| x > *y) {
                best = Some((x, a, b));
            }
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < 3 {
                break;
            }
            *d = 0;
        }
    }
    let (h_bar, a, b) = best.ok_or(Error::Undefined("dual Cheeger constant"))?;
    let all_negative = SignedGraph {
        n,
        edges: g.edges.iter().map(|e| SignedEdge { sign: -1, ..e.clone() }).collect(),
    };
    let beta = signed_cheeger(&all_negative, 1, budget)?.value;
    assert_eq!(beta, Rational::one() - h_bar, "bipartiteness ratio must equal 1 - h̄");
    Ok(DualCheeger { h_bar, beta, witness: SubBipartition::from_masks(a, b, n) })
}

/// `1 − √(1 − h²) ≤ λ_1 ≤ 2h`.
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichCheck {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
}

pub fn signed_cheeger_inequality(g: &SignedGraph, budget: usize) -> Result<SandwichCheck> {
    let h = rational_to_f64(&signed_cheeger(g, 1, budget)?.value);
    let lambda = signed_spectrum(g)?.eigenvalues[0];
    let lower = 1.0 - libm::sqrt((1.0 - h * h).max(0.0));
    let upper = 2.0 * h;
    let holds = lower <= lambda + 1e-9 && lambda <= upper + 1e-9;
    Ok(SandwichCheck { lower, value: lambda, upper, holds })
}

/// `2h̄ ≤ λ_N ≤ 1 + √(1 − (1 − h̄)²)`.
pub fn dual_cheeger_inequality(g: &SignedGraph, budget: usize) -> Result<SandwichCheck> {
    let h = rational_to_f64(&dual_cheeger(g, budget)?.h_bar);
    let spec = signed_spectrum(g)?;
    let lambda = *spec.eigenvalues.last().expect("nonempty graph");
    let lower = 2.0 * h;
    let upper = 1.0 + libm::sqrt((1.0 - (1.0 - h) * (1.0 - h)).max(0.0));
    let holds = lower <= lambda + 1e-9 && lambda <= upper + 1e-9;
    Ok(SandwichCheck { lower, value: lambda, upper, holds })
}

/// Upper bound `λ_j ≤ 2 h_j^s` and monotonicity in `j`; the lower bound's constant is
/// unspecified, so only the ratio `h_j² / (j⁶ λ_j)` is reported.
#[derive(Clone, Debug, PartialEq)]
pub struct HigherOrderCheck {
    pub h: Vec<Rational>,
    pub lambda: Vec<f64>,
    pub upper_holds: bool,
    pub monotone: bool,
    pub empirical_ratio: Vec<f64>,
}

pub fn higher_order_check(g: &SignedGraph, jmax: usize, budget: usize) -> Result<HigherOrderCheck> {
    let spec = signed_spectrum(g)?;
    let jmax = jmax.min(g.n);
    let mut h = Vec::with_capacity(jmax);
    for j in 1..=jmax {
        h.push(signed_cheeger(g, j, budget)?.value);
    }
    let lambda: Vec<f64> = spec.eigenvalues[..jmax].to_vec();
    let upper_holds = h.iter().zip(&lambda).all(|(h, l)| *l <= 2.0 * rational_to_f64(h) + 1e-9);
    let monotone = h.windows(2).all(|w| w[0] <= w[1]);
    let empirical_ratio = h
        .iter()
        .zip(&lambda)
        .enumerate()
        .map(|(i, (h, l))| {
            let hj = rational_to_f64(h);
            hj * hj / (libm::pow((i + 1) as f64, 6.0) * l)
        })
        .collect();
    Ok(HigherOrderCheck { h, lambda, upper_holds, monotone, empirical_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(signs: [i8; 3]) -> SignedGraph {
        SignedGraph::with_signs(3, &[(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])]).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-10)
    }

    #[test]
    fn k3_spectra() {
        let pos = signed_spectrum(&k3([1, 1, 1])).unwrap();
        assert!(close(&pos.eigenvalues, &[0.0, 1.5, 1.5]));
        let neg = signed_spectrum(&k3([-1, -1, -1])).unwrap();
        assert!(close(&neg.eigenvalues, &[0.5, 0.5, 2.0]));
        let one = signed_spectrum(&k3([1, -1, 1])).unwrap();
        assert!(close(&one.eigenvalues, &neg.eigenvalues));
    }

    #[test]
    fn isolated_vertex_is_rejected() {
        let g = SignedGraph::unsigned(3, &[(0, 1)]).unwrap();
        assert_eq!(signed_laplacian(&g).unwrap_err(), Error::ZeroDegree(2));
    }

    #[test]
    fn switching() {
        let g = k3([1, -1, 1]);
        assert_eq!(g.switch(&[]), g);
        assert_eq!(g.switch(&[0, 2]).switch(&[0, 2]), g);
        assert_eq!(g.switch(&[1]).edges().iter().map(|e| e.sign).collect::<Vec<_>>(), [-1, 1, 1]);
    }

    #[test]
    fn balance() {
        let c4 = SignedGraph::unsigned(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.is_balanced() && c4.is_antibalanced());
        assert!(k3([1, 1, 1]).is_balanced());
        assert!(!k3([1, 1, 1]).is_antibalanced());
        assert!(!k3([1, 1, -1]).is_balanced());
        assert!(k3([-1, -1, -1]).is_antibalanced());
    }

    #[test]
    fn signed_cheeger_examples() {
        let h = signed_cheeger(&k3([1, 1, 1]), 1, 12).unwrap();
        assert_eq!(h.value, Rational::zero());
        let h = signed_cheeger(&k3([-1, -1, -1]), 1, 12).unwrap();
        assert_eq!(h.value, Rational::new(1, 3));
        assert_eq!(h.witness[0], SubBipartition { v1: vec![0, 1], v2: vec![2] });
        let single = SubBipartition { v1: vec![0], v2: vec![1, 2] };
        assert_eq!(signed_bipartiteness_ratio(&k3([-1, -1, -1]), &single).unwrap(), h.value);
        let ring: Vec<(usize, usize)> = (0..13).map(|i| (i, (i + 1) % 13)).collect();
        let err = signed_cheeger(&SignedGraph::unsigned(13, &ring).unwrap(), 1, 12);
        assert!(matches!(err, Err(Error::BudgetExceeded { size: 13, budget: 12, .. })));
    }

    #[test]
    fn dual_examples() {
        let k3 = SignedGraph::unsigned(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = dual_cheeger(&k3, 12).unwrap();
        assert_eq!(d.h_bar, Rational::new(2, 3));
        let check = dual_cheeger_inequality(&k3, 12).unwrap();
        assert!(check.holds);
        assert!((check.value - 1.5).abs() < 1e-12);
        let edge = SignedGraph::unsigned(2, &[(0, 1)]).unwrap();
        assert_eq!(dual_cheeger(&edge, 12).unwrap().h_bar, Rational::one());
        let c4 = SignedGraph::unsigned(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(dual_cheeger(&c4, 12).unwrap().h_bar, Rational::one());
    }

    #[test]
    fn j_way_is_monotone() {
        let g = SignedGraph::with_signs(5, &[(0, 1, 1), (1, 2, -1), (2, 3, 1), (3, 4, 1), (4, 0, -1), (1, 3, 1)])
            .unwrap();
        let check = higher_order_check(&g, 3, 12).unwrap();
        assert!(check.upper_holds && check.monotone, "{check:?}");
        let h1 = signed_cheeger(&g, 1, 12).unwrap().value;
        assert_eq!(check.h[0], h1);
        // the j = 1 recursion agrees with direct enumeration
        let vol = g.degrees();
        let full = Ratio { g: &g, volume: &vol };
        let w = &signed_cheeger(&g, 2, 12).unwrap().witness;
        let mask = |v: &[usize]| v.iter().fold(0u32, |m, &x| m | 1 << x);
        for p in w {
            assert!(full.beta(mask(&p.v1), mask(&p.v2)).unwrap() <= check.h[1]);
        }
    }
}
