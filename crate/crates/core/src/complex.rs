//! Finite abstract simplicial complexes.
//!
//! Simplices are stored with their vertices in increasing order, which fixes the positive
//! orientation; any other ordering of the same vertex set is an [`OrientedSimplex`] whose sign
//! records the parity of the sorting permutation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::Rational;

/// A simplex given by its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from a vertex set in any order. Orientation is discarded; use
    /// [`OrientedSimplex::from_ordering`] to keep it.
    pub fn new(vertices: impl Into<Vec<usize>>) -> Result<Self> {
        let mut v = vertices.into();
        if v.is_empty() {
            return Err(Error::MalformedSimplex(v));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(v));
        }
        Ok(Simplex(v))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Facets with the sign `(-1)^j` of the deleted position `j`.
    pub fn facets(&self) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |j| {
            let mut v = self.0.clone();
            v.remove(j);
            (Simplex(v), if j % 2 == 0 { 1 } else { -1 })
        })
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A simplex together with one of its two orientation classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedSimplex {
    pub simplex: Simplex,
    /// `+1` for the class of the increasing ordering, `-1` for the other one.
    pub sign: i64,
}

impl OrientedSimplex {
    pub fn positive(simplex: Simplex) -> Self {
        Self { simplex, sign: 1 }
    }

    /// Orientation class of an arbitrary vertex ordering.
    pub fn from_ordering(ordering: &[usize]) -> Result<Self> {
        let simplex = Simplex::new(ordering.to_vec())?;
        let mut inversions = 0usize;
        for i in 0..ordering.len() {
            for j in (i + 1)..ordering.len() {
                if ordering[i] > ordering[j] {
                    inversions += 1;
                }
            }
        }
        Ok(Self { simplex, sign: if inversions.is_multiple_of(2) { 1 } else { -1 } })
    }
}

impl Neg for OrientedSimplex {
    type Output = OrientedSimplex;
    fn neg(self) -> Self {
        Self { simplex: self.simplex, sign: -self.sign }
    }
}

/// Coefficients on the positively oriented simplices of one level, extended to negative
/// orientations by alternation. Chains use the same container.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<T> {
    level: usize,
    values: BTreeMap<Simplex, T>,
}

pub type Chain<T> = Cochain<T>;

impl<T> Cochain<T>
where
    T: Clone + Zero + Neg<Output = T>,
{
    pub fn zero(level: usize) -> Self {
        Self { level, values: BTreeMap::new() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, s: &Simplex) -> T {
        self.values.get(s).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, s: &OrientedSimplex) -> T {
        let v = self.get(&s.simplex);
        if s.sign < 0 { -v } else { v }
    }

    /// Sets the value on an oriented simplex; the opposite orientation gets the negation.
    pub fn set(&mut self, s: &OrientedSimplex, value: T) {
        let v = if s.sign < 0 { -value } else { value };
        if v.is_zero() {
            self.values.remove(&s.simplex);
        } else {
            self.values.insert(s.simplex.clone(), v);
        }
    }

    pub fn add(&mut self, s: &OrientedSimplex, value: T) {
        let cur = self.eval(s);
        self.set(s, cur + value);
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(T::is_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &T)> {
        self.values.iter()
    }
}

/// A finite, face-closed family of simplices with positive weights.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Simplex>>,
    index: Vec<BTreeMap<Simplex, usize>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    weights: Vec<Vec<Rational>>,
    user_weights: BTreeMap<Simplex, Rational>,
    maximal: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Face closure of the given simplices. `user_given` weights override the default `deg σ` (below the
    /// top dimension; 1 where the degree vanishes) and `1` (top dimension).
    pub fn from_maximal_simplices(
        tuples: &[Vec<usize>],
        user_given: &[(Vec<usize>, Rational)],
    ) -> Result<Self> {
        if tuples.is_empty() {
            return Err(Error::Precondition("at least one simplex is required".into()));
        }
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        let mut generators = Vec::with_capacity(tuples.len());
        for t in tuples {
            let s = Simplex::new(t.clone())?;
            if s.0.len() > 20 {
                return Err(Error::Precondition("simplices above dimension 19 are not supported".into()));
            }
            for face in s.faces() {
                all.insert(face);
            }
            generators.push(s);
        }
        let n = all.iter().map(Simplex::dim).max().unwrap_or(0);
        let mut levels = vec![Vec::new(); n + 1];
        for s in all {
            let d = s.dim();
            levels[d].push(s);
        }
        for level in levels.iter_mut() {
            level.sort();
        }
        let index: Vec<BTreeMap<Simplex, usize>> = levels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut cofaces = vec![Vec::new(); n + 1];
        for k in 0..=n {
            cofaces[k] = vec![Vec::new(); levels[k].len()];
        }
        for k in 1..=n {
            for (ti, tau) in levels[k].iter().enumerate() {
                for (facet, _) in tau.facets() {
                    let fi = index[k - 1][&facet];
                    cofaces[k - 1][fi].push(ti);
                }
            }
        }
        let mut maximal: Vec<Simplex> = generators
            .iter()
            .filter(|s| !generators.iter().any(|o| o.0.len() > s.0.len() && s.is_face_of(o)))
            .cloned()
            .collect();
        maximal.sort();
        maximal.dedup();

        let mut weights: Vec<Vec<Rational>> = (0..=n)
            .map(|k| {
                cofaces[k]
                    .iter()
                    .map(|c| {
                        if k == n || c.is_empty() {
                            Rational::one()
                        } else {
                            Rational::from_integer(c.len() as i64)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut user_weights = BTreeMap::new();
        for (verts, w) in user_given {
            let s = Simplex::new(verts.clone())?;
            let Some(&i) = index.get(s.dim()).and_then(|m| m.get(&s)) else {
                return Err(Error::NotInComplex(s.0));
            };
            if *w <= Rational::zero() {
                return Err(Error::NonPositiveWeight(s.0));
            }
            weights[s.dim()][i] = *w;
            user_weights.insert(s, *w);
        }
        Ok(Self { levels, index, cofaces, weights, user_weights, maximal })
    }

    /// Dimension: the largest nonempty level.
    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.levels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.levels.iter().flatten()
    }

    fn require(&self, s: &Simplex) -> Result<usize> {
        self.index_of(s).ok_or_else(|| Error::NotInComplex(s.0.clone()))
    }

    /// Indices (into level `k + 1`) of the cofaces of the `i`-th `k`-simplex.
    pub fn coface_indices(&self, k: usize, i: usize) -> &[usize] {
        &self.cofaces[k][i]
    }

    /// Number of `(k+1)`-cofaces.
    pub fn degree(&self, s: &Simplex) -> Result<usize> {
        let i = self.require(s)?;
        Ok(self.cofaces[s.dim()][i].len())
    }

    pub fn degrees(&self, k: usize) -> Vec<usize> {
        self.cofaces.get(k).map_or_else(Vec::new, |c| c.iter().map(Vec::len).collect())
    }

    /// `k`-simplices with no coface, where the normalized inner product falls back to weight 1.
    pub fn zero_degree_simplices(&self, k: usize) -> Vec<Simplex> {
        if k >= self.dim() {
            return Vec::new();
        }
        self.simplices(k)
            .iter()
            .zip(&self.cofaces[k])
            .filter(|(_, c)| c.is_empty())
            .map(|(s, _)| s.clone())
            .collect()
    }

    pub fn weight(&self, s: &Simplex) -> Result<Rational> {
        let i = self.require(s)?;
        Ok(self.weights[s.dim()][i])
    }

    pub fn weights(&self, k: usize) -> &[Rational] {
        self.weights.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn user_weights(&self) -> &BTreeMap<Simplex, Rational> {
        &self.user_weights
    }

    /// Alternating facet chain of an oriented simplex; the zero chain in dimension 0.
    pub fn boundary(&self, s: &OrientedSimplex) -> Result<Chain<i64>> {
        self.require(&s.simplex)?;
        let k = s.simplex.dim();
        let mut out = Chain::zero(k.saturating_sub(1));
        for (facet, sign) in s.simplex.facets() {
            out.add(&OrientedSimplex::positive(facet), sign * s.sign);
        }
        Ok(out)
    }

    /// Coefficient of `sigma` in the boundary of `tau`, both positively oriented.
    pub fn incidence_sign(&self, sigma: &Simplex, tau: &Simplex) -> i64 {
        incidence(sigma, tau)
    }

    /// Matrix of `δ_k`: rows indexed by `Σ_{k+1}`, columns by `Σ_k`.
    pub fn coboundary_matrix(&self, k: usize) -> IntMatrix {
        let rows = self.count(k + 1);
        let cols = self.count(k);
        let mut m = IntMatrix::zeros(rows, cols);
        for (ti, tau) in self.simplices(k + 1).iter().enumerate() {
            for (facet, sign) in tau.facets() {
                m[(ti, self.index[k][&facet])] = sign;
            }
        }
        m
    }

    /// Matrix of `∂_k`: rows `Σ_{k-1}`, columns `Σ_k`. Zero rows for `k = 0`.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        if k == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        self.coboundary_matrix(k - 1).transpose()
    }

    /// Betti numbers from exact ranks: `b_k = dim C_k - rank ∂_k - rank ∂_{k+1}`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let n = self.dim();
        let ranks: Vec<usize> = (0..=n + 1)
            .map(|k| if k == 0 || k > n { 0 } else { self.boundary_matrix(k).rank() })
            .collect();
        (0..=n).map(|k| self.count(k) - ranks[k] - ranks[k + 1]).collect()
    }

    /// Reduced Betti number: `b_0 - 1` in degree zero.
    pub fn reduced_betti(&self, k: usize) -> usize {
        let b = self.betti_numbers();
        match (k, b.get(k)) {
            (0, Some(&b0)) => b0 - 1,
            (_, Some(&bk)) => bk,
            _ => 0,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Subcomplex spanned by the given simplices (closure taken).
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<Self> {
        let tuples: Vec<Vec<usize>> = generators.iter().map(|s| s.0.clone()).collect();
        Self::from_maximal_simplices(&tuples, &[])
    }
}

pub(crate) fn incidence(sigma: &Simplex, tau: &Simplex) -> i64 {
    if sigma.0.len() + 1 != tau.0.len() {
        return 0;
    }
    let mut skipped = None;
    let mut si = 0;
    for (j, &v) in tau.0.iter().enumerate() {
        if si < sigma.0.len() && sigma.0[si] == v {
            si += 1;
        } else if skipped.is_none() {
            skipped = Some(j);
        } else {
            return 0;
        }
    }
    match skipped {
        Some(j) if si == sigma.0.len() => {
            if j % 2 == 0 { 1 } else { -1 }
        }
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cx(tuples: &[&[usize]]) -> SimplicialComplex {
        let t: Vec<Vec<usize>> = tuples.iter().map(|t| t.to_vec()).collect();
        SimplicialComplex::from_maximal_simplices(&t, &[]).unwrap()
    }

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closure_counts() {
        assert_eq!(cx(&[&[0, 1, 2]]).counts(), vec![3, 3, 1]);
        assert_eq!(cx(&[&[0, 1], &[1, 2], &[0, 2]]).counts(), vec![3, 3]);
        let tetra = cx(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(tetra.counts(), vec![4, 6, 4]);
    }

    #[test]
    fn malformed_simplex_rejected() {
        let err = SimplicialComplex::from_maximal_simplices(&[vec![0, 1, 1]], &[]).unwrap_err();
        assert!(matches!(err, Error::MalformedSimplex(_)));
    }

    #[test]
    fn face_closure_holds() {
        let c = cx(&[&[0, 1, 2, 3], &[3, 4], &[4, 5, 6]]);
        for k in 1..=c.dim() {
            for sigma in c.simplices(k) {
                for (f, _) in sigma.facets() {
                    assert!(c.contains(&f));
                }
            }
        }
    }

    #[test]
    fn boundary_formula() {
        let c = cx(&[&[0, 1, 2]]);
        let b = c.boundary(&OrientedSimplex::positive(s(&[0, 1, 2]))).unwrap();
        assert_eq!(b.get(&s(&[1, 2])), 1);
        assert_eq!(b.get(&s(&[0, 2])), -1);
        assert_eq!(b.get(&s(&[0, 1])), 1);
        let e = c.boundary(&OrientedSimplex::positive(s(&[0, 1]))).unwrap();
        assert_eq!(e.get(&s(&[1])), 1);
        assert_eq!(e.get(&s(&[0])), -1);
        let v = c.boundary(&OrientedSimplex::positive(s(&[0]))).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let c = cx(&[&[0, 1, 2]]);
        let b = c.boundary(&OrientedSimplex::positive(s(&[0, 1, 2]))).unwrap();
        let mut bb = Chain::<i64>::zero(0);
        for (face, coeff) in b.iter() {
            let inner = c.boundary(&OrientedSimplex::positive(face.clone())).unwrap();
            for (v, c2) in inner.iter() {
                bb.add(&OrientedSimplex::positive(v.clone()), coeff * c2);
            }
        }
        assert!(bb.is_zero());
    }

    #[test]
    fn orientation_parity() {
        let even = OrientedSimplex::from_ordering(&[1, 2, 0]).unwrap();
        let odd = OrientedSimplex::from_ordering(&[1, 0, 2]).unwrap();
        assert_eq!(even.sign, 1);
        assert_eq!(odd.sign, -1);
        let mut phi = Cochain::<i64>::zero(2);
        phi.set(&even, 5);
        assert_eq!(phi.eval(&odd), -5);
        assert_eq!(phi.eval(&-odd.clone()), 5);
    }

    #[test]
    fn incidence_signs() {
        let c = cx(&[&[0, 1, 2]]);
        assert_eq!(c.incidence_sign(&s(&[0, 2]), &s(&[0, 1, 2])), -1);
        assert_eq!(c.incidence_sign(&s(&[0, 1]), &s(&[0, 1, 2])), 1);
        assert_eq!(c.incidence_sign(&s(&[0, 3]), &s(&[0, 1, 2])), 0);
    }

    #[test]
    fn degrees() {
        assert_eq!(cx(&[&[0, 1, 2]]).degree(&s(&[0, 1])).unwrap(), 1);
        let tetra = cx(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        for e in tetra.simplices(1) {
            let by_enumeration =
                tetra.simplices(2).iter().filter(|t| e.is_face_of(t)).count();
            assert_eq!(tetra.degree(e).unwrap(), by_enumeration);
            assert_eq!(by_enumeration, 2);
        }
        let c3 = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(c3.degree(&s(&[0])).unwrap(), 2);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(cx(&[&[0, 1], &[1, 2], &[0, 2]]).betti_numbers(), vec![1, 1]);
        assert_eq!(
            cx(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]).betti_numbers(),
            vec![1, 0, 1]
        );
        assert_eq!(cx(&[&[0, 1, 2]]).betti_numbers(), vec![1, 0, 0]);
    }

    #[test]
    fn default_and_user_weights() {
        let c = SimplicialComplex::from_maximal_simplices(
            &[vec![0, 1, 2], vec![2, 3]],
            &[(vec![3], Rational::new(5, 2))],
        )
        .unwrap();
        assert_eq!(c.weight(&s(&[0, 1])).unwrap(), Rational::from_integer(1));
        assert_eq!(c.weight(&s(&[2])).unwrap(), Rational::from_integer(3));
        assert_eq!(c.weight(&s(&[3])).unwrap(), Rational::new(5, 2));
        assert_eq!(c.weight(&s(&[0, 1, 2])).unwrap(), Rational::from_integer(1));
        // (2,3) is an edge below the top dimension without cofaces
        assert_eq!(c.zero_degree_simplices(1), vec![s(&[2, 3])]);
        let bad = SimplicialComplex::from_maximal_simplices(&[vec![0, 1]], &[(vec![0], Rational::zero())]);
        assert!(matches!(bad, Err(Error::NonPositiveWeight(_))));
    }
}
