//! Discrete Morse functions on simplicial complexes: validation, the gradient pairing, the
//! Morse boundary operator on critical simplices, and the Morse inequalities.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::Rational;

/// A validated discrete Morse function with its gradient pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct MorseData {
    complex: SimplicialComplex,
    values: Vec<Vec<Rational>>,
    /// `up[k][i]`: index of the `(k+1)`-simplex paired with the `i`-th `k`-simplex.
    up: Vec<Vec<Option<usize>>>,
    down: Vec<Vec<Option<usize>>>,
    critical: Vec<Vec<usize>>,
    /// Per level, the upward-paired simplices ordered along gradient paths.
    flow_order: Vec<Vec<usize>>,
}

/// Indices of the facets of every simplex, with incidence signs.
fn facet_table(c: &SimplicialComplex) -> Vec<Vec<Vec<(usize, i64)>>> {
    (0..=c.dim())
        .map(|k| {
            c.simplices(k)
                .iter()
                .map(|s| {
                    if k == 0 {
                        return Vec::new();
                    }
                    s.facets().map(|(f, sign)| (c.index_of(&f).expect("closed under faces"), sign)).collect()
                })
                .collect()
        })
        .collect()
}

/// Kahn's algorithm; on a cycle, returns one of the nodes left on it.
fn topological_order(n: usize, edges: &[(usize, usize)]) -> core::result::Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(a, b) in edges {
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(a) = queue.pop_front() {
        order.push(a);
        for &b in &out[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                queue.push_back(b);
            }
        }
    }
    if order.len() < n {
        return Err((0..n).find(|&i| indeg[i] > 0).unwrap_or(0));
    }
    Ok(order)
}

/// Value table for `f(σ) = dim σ`, under which every simplex is critical.
pub fn dimension_function(c: &SimplicialComplex) -> Vec<Vec<Rational>> {
    (0..=c.dim()).map(|k| vec![Rational::from_integer(k as i64); c.count(k)]).collect()
}

/// Value table from a simplex map; every simplex of the complex needs a value.
pub fn values_from_map(c: &SimplicialComplex, map: &BTreeMap<Simplex, Rational>) -> Result<Vec<Vec<Rational>>> {
    for s in map.keys() {
        if !c.contains(s) {
            return Err(Error::NotInComplex(s.vertices().to_vec()));
        }
    }
    (0..=c.dim())
        .map(|k| {
            c.simplices(k)
                .iter()
                .map(|s| map.get(s).copied().ok_or_else(|| Error::Precondition(alloc::format!("no value for {s:?}"))))
                .collect()
        })
        .collect()
}

/// Checks both Morse rules and the "not both" consequence, derives the arrows and rejects
/// closed gradient paths.
pub fn validate_morse(c: &SimplicialComplex, values: Vec<Vec<Rational>>) -> Result<MorseData> {
    let n = c.dim();
    if values.len() != n + 1 || (0..=n).any(|k| values[k].len() != c.count(k)) {
        return Err(Error::Precondition("value table does not match the complex".into()));
    }
    let facets = facet_table(c);
    let violation = |k: usize, i: usize, l: usize, j: usize, rule| Error::MorseViolation {
        simplex: c.simplices(k)[i].vertices().to_vec(),
        other: c.simplices(l)[j].vertices().to_vec(),
        rule,
    };
    let mut up = vec![Vec::new(); n + 1];
    let mut down = vec![Vec::new(); n + 1];
    for k in 0..=n {
        for i in 0..c.count(k) {
            let f = values[k][i];
            let mut ups = c.coface_indices(k, i).iter().filter(|&&j| values[k + 1][j] <= f).copied();
            let u = ups.next();
            if let Some(j) = ups.next() {
                return Err(violation(k, i, k + 1, j, "two cofaces with value at most the simplex"));
            }
            let mut downs = facets[k][i].iter().map(|(j, _)| *j).filter(|&j| values[k - 1][j] >= f);
            let d = downs.next();
            if let Some(j) = downs.next() {
                return Err(violation(k, i, k - 1, j, "two facets with value at least the simplex"));
            }
            if let (Some(a), Some(_)) = (u, d) {
                return Err(violation(k, i, k + 1, a, "paired both upward and downward"));
            }
            up[k].push(u);
            down[k].push(d);
        }
    }
    let mut flow_order = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut edges = Vec::new();
        for i in 0..c.count(k) {
            if let Some(j) = up[k][i] {
                for &(r, _) in &facets[k + 1][j] {
                    if r != i && up[k][r].is_some() {
                        edges.push((i, r));
                    }
                }
            }
        }
        let order = topological_order(c.count(k), &edges)
            .map_err(|i| Error::GradientCycle(c.simplices(k)[i].vertices().to_vec()))?;
        flow_order.push(order.into_iter().filter(|&i| up[k][i].is_some()).collect());
    }
    let critical = (0..=n)
        .map(|k| (0..c.count(k)).filter(|&i| up[k][i].is_none() && down[k][i].is_none()).collect())
        .collect();
    Ok(MorseData { complex: c.clone(), values, up, down, critical, flow_order })
}

impl MorseData {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn values(&self, k: usize) -> &[Rational] {
        &self.values[k]
    }

    /// Indices of the critical `k`-simplices.
    pub fn critical(&self, k: usize) -> &[usize] {
        &self.critical[k]
    }

    pub fn critical_simplices(&self, k: usize) -> Vec<Simplex> {
        self.critical[k].iter().map(|&i| self.complex.simplices(k)[i].clone()).collect()
    }

    /// `m_k` for every `k`.
    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical.iter().map(Vec::len).collect()
    }

    /// Arrows `σ → ρ` with `σ ⊂ ρ` and `f(ρ) ≤ f(σ)`.
    pub fn arrows(&self) -> Vec<(Simplex, Simplex)> {
        let c = &self.complex;
        (0..=c.dim())
            .flat_map(|k| {
                self.up[k].iter().enumerate().filter_map(move |(i, j)| {
                    j.map(|j| (c.simplices(k)[i].clone(), c.simplices(k + 1)[j].clone()))
                })
            })
            .collect()
    }

    pub fn up_partner(&self, k: usize, i: usize) -> Option<usize> {
        self.up[k][i]
    }

    pub fn down_partner(&self, k: usize, i: usize) -> Option<usize> {
        self.down[k][i]
    }
}

/// The Morse chain complex: critical simplices per dimension and the boundary between them.
#[derive(Clone, Debug, PartialEq)]
pub struct MorseComplex {
    pub critical: Vec<Vec<Simplex>>,
    /// `boundary[k]`: rows are critical `(k−1)`-simplices, columns critical `k`-simplices;
    /// empty for `k = 0`.
    pub boundary: Vec<IntMatrix>,
}

impl MorseComplex {
    /// Whether `∂∂ = 0` over ℤ and over ℤ/2.
    pub fn squares_to_zero(&self) -> (bool, bool) {
        let mut integral = true;
        let mut mod2 = true;
        for k in 2..self.boundary.len() {
            let p = self.boundary[k - 1].mul(&self.boundary[k]);
            integral &= p.is_zero();
            mod2 &= (0..p.rows()).all(|i| p.row(i).iter().all(|x| x % 2 == 0));
        }
        (integral, mod2)
    }

    /// Betti numbers over ℚ.
    pub fn homology(&self) -> Vec<usize> {
        self.betti(IntMatrix::rank)
    }

    pub fn homology_mod2(&self) -> Vec<usize> {
        self.betti(IntMatrix::rank_mod2)
    }

    fn betti(&self, rank: impl Fn(&IntMatrix) -> usize) -> Vec<usize> {
        let n = self.critical.len();
        let ranks: Vec<usize> = (0..=n).map(|k| if k == 0 || k >= n { 0 } else { rank(&self.boundary[k]) }).collect();
        (0..n).map(|k| self.critical[k].len() - ranks[k] - ranks[k + 1]).collect()
    }
}

/// `∂_F` on every critical simplex.
///
/// Starting from `∂σ`, each coefficient on an upward-paired `ρ` is pushed through its partner
/// `σ' = V(ρ)` by subtracting `c_ρ [ρ:σ'] ∂σ'`, in gradient-path order; downward-paired
/// facets are then dropped. A path `ρ_0, σ'_0, ρ_1, …` therefore carries the sign
/// `∏ −[ρ_i:σ'_i][ρ_{i+1}:σ'_i]`, and `∂_F σ` differs from `∂σ` by a boundary.
pub fn forman_boundary(data: &MorseData) -> MorseComplex {
    let c = &data.complex;
    let n = c.dim();
    let facets = facet_table(c);
    let critical: Vec<Vec<Simplex>> = (0..=n).map(|k| data.critical_simplices(k)).collect();
    let mut boundary = vec![IntMatrix::zeros(0, data.critical[0].len())];
    for k in 1..=n {
        let rows = &data.critical[k - 1];
        let mut m = IntMatrix::zeros(rows.len(), data.critical[k].len());
        for (col, &s) in data.critical[k].iter().enumerate() {
            let mut chain = vec![0i64; c.count(k - 1)];
            for &(r, sign) in &facets[k][s] {
                chain[r] += sign;
            }
            for &r in &data.flow_order[k - 1] {
                let coef = chain[r];
                if coef == 0 {
                    continue;
                }
                let partner = data.up[k - 1][r].expect("flow order lists paired simplices");
                let pivot = facets[k][partner].iter().find(|(f, _)| *f == r).expect("partner contains ρ").1;
                for &(f, sign) in &facets[k][partner] {
                    chain[f] -= coef * pivot * sign;
                }
            }
            for (row, &r) in rows.iter().enumerate() {
                m[(row, col)] = chain[r];
            }
        }
        boundary.push(m);
    }
    MorseComplex { critical, boundary }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseInequalities {
    pub m: Vec<usize>,
    pub b: Vec<usize>,
    /// `m_k ≥ b_k` per dimension.
    pub weak: Vec<bool>,
    /// Alternating partial sums `Σ_{i≤k} (−1)^{k−i}(m_i − b_i) ≥ 0` per dimension.
    pub strong: Vec<bool>,
    pub euler_equal: bool,
    /// Quotient `q` of `Σ(m_k − b_k)t^k` by `1 + t`, if the division is exact.
    pub q: Option<Vec<i64>>,
}

impl MorseInequalities {
    pub fn holds(&self) -> bool {
        self.weak.iter().all(|x| *x)
            && self.strong.iter().all(|x| *x)
            && self.euler_equal
            && self.q.as_ref().is_some_and(|q| q.iter().all(|x| *x >= 0))
    }
}

/// Synthetic division by `1 + t`; `None` when the remainder is nonzero.
pub fn divide_by_one_plus_t(p: &[i64]) -> Option<Vec<i64>> {
    let Some((&last, init)) = p.split_last() else {
        return Some(Vec::new());
    };
    let mut q = Vec::with_capacity(init.len());
    let mut prev = 0;
    for &a in init {
        prev = a - prev;
        q.push(prev);
    }
    (last == prev).then_some(q)
}

pub fn morse_inequalities(data: &MorseData) -> MorseInequalities {
    let m = data.critical_counts();
    let b = data.complex.betti_numbers();
    let p: Vec<i64> = m.iter().zip(&b).map(|(x, y)| *x as i64 - *y as i64).collect();
    let weak = p.iter().map(|x| *x >= 0).collect();
    let mut partial = 0;
    let strong = p
        .iter()
        .map(|x| {
            partial = x - partial;
            partial >= 0
        })
        .collect();
    let euler: i64 = p.iter().enumerate().map(|(k, x)| if k % 2 == 0 { *x } else { -x }).sum();
    MorseInequalities { m, b, weak, strong, euler_equal: euler == 0, q: divide_by_one_plus_t(&p) }
}

/// Pairs `(σ, τ)` breaking `f(σ) ≤ f(τ)` for a simplex `σ` with two or more cofaces `τ`.
pub fn forman_witten_violations(data: &MorseData) -> Vec<(Simplex, Simplex)> {
    let c = &data.complex;
    let mut out = Vec::new();
    for k in 0..c.dim() {
        for i in 0..c.count(k) {
            let cof = c.coface_indices(k, i);
            if cof.len() < 2 {
                continue;
            }
            for &j in cof {
                if data.values[k][i] > data.values[k + 1][j] {
                    out.push((c.simplices(k)[i].clone(), c.simplices(k + 1)[j].clone()));
                }
            }
        }
    }
    out
}

pub fn forman_witten_condition(data: &MorseData) -> bool {
    forman_witten_violations(data).is_empty()
}

/// A random discrete Morse function: a greedy random acyclic matching on the Hasse diagram,
/// then values from a topological order of the modified Hasse digraph.
pub fn random_morse_function(c: &SimplicialComplex, seed: u64) -> Vec<Vec<Rational>> {
    let n = c.dim();
    let offsets: Vec<usize> = (0..=n).scan(0, |acc, k| {
        let o = *acc;
        *acc += c.count(k);
        Some(o)
    })
    .collect();
    let total = c.total_simplices();
    let facets = facet_table(c);
    let mut hasse: Vec<(usize, usize)> = Vec::new();
    for k in 1..=n {
        for (i, fs) in facets[k].iter().enumerate() {
            for &(f, _) in fs {
                hasse.push((offsets[k - 1] + f, offsets[k] + i));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = hasse.clone();
    candidates.shuffle(&mut rng);
    let mut matched = vec![false; total];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let digraph = |pairs: &[(usize, usize)]| -> Vec<(usize, usize)> {
        hasse.iter().map(|&(lo, hi)| if pairs.contains(&(lo, hi)) { (hi, lo) } else { (lo, hi) }).collect()
    };
    for (lo, hi) in candidates {
        if matched[lo] || matched[hi] {
            continue;
        }
        pairs.push((lo, hi));
        if topological_order(total, &digraph(&pairs)).is_ok() {
            matched[lo] = true;
            matched[hi] = true;
        } else {
            pairs.pop();
        }
    }
    let order = topological_order(total, &digraph(&pairs)).expect("matching kept acyclic");
    let mut value = vec![0i64; total];
    for (pos, &v) in order.iter().enumerate() {
        value[v] = pos as i64;
    }
    (0..=n)
        .map(|k| (0..c.count(k)).map(|i| Rational::from_integer(value[offsets[k] + i])).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(tuples: &[&[usize]]) -> SimplicialComplex {
        let t: Vec<Vec<usize>> = tuples.iter().map(|t| t.to_vec()).collect();
        SimplicialComplex::from_maximal_simplices(&t, &[]).unwrap()
    }

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    /// Hollow triangle: bottom vertex 0 valued 0, top vertices 1, 2 valued 2, the two slanted
    /// edges valued 1 and the top edge valued 3.
    fn hollow_triangle() -> MorseData {
        let c = cx(&[&[0, 1], &[0, 2], &[1, 2]]);
        let mut map = BTreeMap::new();
        for (s, v) in [(&[0][..], 0), (&[1], 2), (&[2], 2), (&[0, 1], 1), (&[0, 2], 1), (&[1, 2], 3)] {
            map.insert(Simplex::new(s).unwrap(), r(v));
        }
        validate_morse(&c, values_from_map(&c, &map).unwrap()).unwrap()
    }

    #[test]
    fn hollow_triangle_critical_cells() {
        let d = hollow_triangle();
        assert_eq!(d.critical_simplices(0), vec![Simplex::new([0]).unwrap()]);
        assert_eq!(d.critical_simplices(1), vec![Simplex::new([1, 2]).unwrap()]);
        assert_eq!(d.critical_counts(), vec![1, 1]);
        assert_eq!(d.arrows().len(), 2);
        let mc = forman_boundary(&d);
        assert!(mc.boundary[1].is_zero());
        assert_eq!(mc.homology(), vec![1, 1]);
        let ineq = morse_inequalities(&d);
        assert!(ineq.holds());
        assert_eq!(ineq.q, Some(vec![0]));
        let bad = forman_witten_violations(&d);
        assert_eq!(bad.len(), 2);
        assert!(bad.contains(&(Simplex::new([1]).unwrap(), Simplex::new([0, 1]).unwrap())));
    }

    #[test]
    fn dimension_function_is_simplicial() {
        let c = cx(&[&[0, 1, 2], &[2, 3], &[3, 4], &[2, 4]]);
        let d = validate_morse(&c, dimension_function(&c)).unwrap();
        assert_eq!(d.critical_counts(), c.counts());
        let mc = forman_boundary(&d);
        for k in 1..=c.dim() {
            assert_eq!(mc.boundary[k], c.boundary_matrix(k));
        }
        assert_eq!(mc.homology(), c.betti_numbers());
        assert!(forman_witten_condition(&d));
    }

    #[test]
    fn full_triangle_inequalities() {
        let c = cx(&[&[0, 1, 2]]);
        let ineq = morse_inequalities(&validate_morse(&c, dimension_function(&c)).unwrap());
        assert_eq!((ineq.m.clone(), ineq.b.clone()), (vec![3, 3, 1], vec![1, 0, 0]));
        assert_eq!(ineq.q, Some(vec![2, 1]));
        assert!(ineq.holds());
    }

    #[test]
    fn rejections() {
        let c = cx(&[&[0, 1], &[1, 2]]);
        // vertex 1 above both edges
        let values = vec![vec![r(0), r(5), r(0)], vec![r(1), r(1)]];
        let e = validate_morse(&c, values).unwrap_err();
        assert!(matches!(e, Error::MorseViolation { rule: "two cofaces with value at most the simplex", .. }));
        let values = vec![vec![r(3), r(3), r(0)], vec![r(1), r(4)]];
        let e = validate_morse(&c, values).unwrap_err();
        assert!(matches!(e, Error::MorseViolation { rule: "two facets with value at least the simplex", .. }));
    }

    #[test]
    fn witten_condition_failure() {
        let c = cx(&[&[0, 1, 2], &[0, 1, 3]]);
        let mut values = dimension_function(&c);
        let e01 = c.index_of(&Simplex::new([0, 1]).unwrap()).unwrap();
        let t012 = c.index_of(&Simplex::new([0, 1, 2]).unwrap()).unwrap();
        let t013 = c.index_of(&Simplex::new([0, 1, 3]).unwrap()).unwrap();
        values[1][e01] = r(3);
        values[2][t013] = r(4);
        let d = validate_morse(&c, values).unwrap();
        assert_eq!(d.up_partner(1, e01), Some(t012));
        assert!(!forman_witten_condition(&d));
    }

    #[test]
    fn random_functions_are_morse() {
        let c = cx(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[0, 4], &[4, 5]]);
        for seed in 0..20 {
            let d = validate_morse(&c, random_morse_function(&c, seed)).unwrap();
            let mc = forman_boundary(&d);
            assert_eq!(mc.squares_to_zero(), (true, true));
            assert_eq!(mc.homology(), c.betti_numbers());
            assert!(morse_inequalities(&d).holds());
        }
    }

    #[test]
    fn division() {
        assert_eq!(divide_by_one_plus_t(&[1, 2, 1]), Some(vec![1, 1]));
        assert_eq!(divide_by_one_plus_t(&[1, 1]), Some(vec![1]));
        assert_eq!(divide_by_one_plus_t(&[1]), None);
        assert_eq!(divide_by_one_plus_t(&[0]), Some(vec![]));
    }
}
