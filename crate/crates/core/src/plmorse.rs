//! Order complexes, the Lovász extension of a simplex function on the realization of the order
//! complex, and PL criticality of its vertices.

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::morse::MorseData;
use crate::{rational_to_f64, Rational};

/// Chains of simplices of `base` ordered by inclusion. Vertex `i` of `complex` is `labels[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderComplex {
    pub complex: SimplicialComplex,
    pub labels: Vec<Simplex>,
}

impl OrderComplex {
    pub fn vertex_of(&self, s: &Simplex) -> Option<usize> {
        self.labels.binary_search_by(|l| (l.dim(), l).cmp(&(s.dim(), s))).ok()
    }
}

/// The labels of `base` in level order, so the label of a global index is one lookup.
fn labels(base: &SimplicialComplex) -> Vec<Simplex> {
    (0..=base.dim()).flat_map(|k| base.simplices(k).iter().cloned()).collect()
}

/// Maximal chains in `{0, …, n−1}` under `below(a, b)` (a strict order), extended greedily
/// from every minimal element.
fn maximal_chains(n: usize, below: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn extend(chain: &mut Vec<usize>, n: usize, below: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().expect("nonempty chain");
        let mut grew = false;
        for next in 0..n {
            // only immediate successors, so every maximal chain is produced exactly once
            if below(last, next) && !(0..n).any(|m| below(last, m) && below(m, next)) {
                grew = true;
                chain.push(next);
                extend(chain, n, below, out);
                chain.pop();
            }
        }
        if !grew {
            out.push(chain.clone());
        }
    }
    let mut out = Vec::new();
    for start in (0..n).filter(|&s| !(0..n).any(|m| below(m, s))) {
        extend(&mut vec![start], n, &below, &mut out);
    }
    out
}

pub fn order_complex(base: &SimplicialComplex) -> Result<OrderComplex> {
    let labels = labels(base);
    let chains = maximal_chains(labels.len(), |a, b| labels[a].dim() < labels[b].dim() && labels[a].is_face_of(&labels[b]));
    Ok(OrderComplex { complex: SimplicialComplex::from_maximal_simplices(&chains, &[])?, labels })
}

/// Indicator vector `1_σ` in `ℝ^V`, with `V = {0, …, n−1}`.
pub fn realize(s: &Simplex, n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for &v in s.vertices() {
        x[v] = 1.0;
    }
    x
}

/// `f^L(x) = Σ_j (x_j − x_{j+1}) f({x ≥ x_j})` over the distinct positive levels of `x`.
/// `x` must lie in the realization of the order complex, i.e. every level set is a simplex.
pub fn lovasz_on_realization(base: &SimplicialComplex, values: &[Vec<Rational>], x: &[f64]) -> Result<f64> {
    if x.iter().any(|v| *v < 0.0 || !v.is_finite()) {
        return Err(Error::Precondition("coordinates must be finite and non-negative".into()));
    }
    let mut levels: Vec<f64> = x.iter().copied().filter(|v| *v > 0.0).collect();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup();
    let mut total = 0.0;
    for (j, &level) in levels.iter().enumerate() {
        let next = levels.get(j + 1).copied().unwrap_or(0.0);
        let set: Vec<usize> = (0..x.len()).filter(|&i| x[i] >= level).collect();
        let s = Simplex::new(set.clone())?;
        let i = base
            .index_of(&s)
            .ok_or_else(|| Error::Precondition(alloc::format!("level set {set:?} is not a simplex")))?;
        total += (level - next) * rational_to_f64(&values[s.dim()][i]);
    }
    Ok(total)
}

/// PL multiplicities of one vertex `1_σ` of the order complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlCritical {
    pub simplex: Simplex,
    /// `m[k] = rank H̃_{k−1}(link_−)`.
    pub multiplicities: Vec<usize>,
}

impl PlCritical {
    pub fn is_critical(&self) -> bool {
        self.multiplicities.iter().any(|m| *m > 0)
    }

    /// `Σ m_k = 1`.
    pub fn is_nondegenerate(&self) -> bool {
        self.multiplicities.iter().sum::<usize>() == 1
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.multiplicities.len()).filter(|&k| self.multiplicities[k] > 0).collect()
    }
}

/// Reduced Betti numbers `b̃_{−1}, b̃_0, …` of the complex spanned by `chains` (empty allowed).
fn reduced_betti_from(chains: &[Vec<usize>], len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    if chains.is_empty() {
        out[0] = 1;
        return out;
    }
    let c = SimplicialComplex::from_maximal_simplices(chains, &[]).expect("chains are simplices");
    for (k, b) in c.betti_numbers().into_iter().enumerate() {
        out[k + 1] = if k == 0 { b - 1 } else { b };
    }
    out
}

/// PL criticality of `F(1_σ) = f(σ)` at every vertex of the order complex. The lower link of
/// `1_σ` is the order complex of the simplices comparable with `σ` and of smaller value; values
/// must differ on comparable simplices.
pub fn pl_critical_points(base: &SimplicialComplex, values: &[Vec<Rational>]) -> Result<Vec<PlCritical>> {
    let labels = labels(base);
    let value = |s: &Simplex| values[s.dim()][base.index_of(s).expect("label of base")];
    let comparable = |a: &Simplex, b: &Simplex| a.is_face_of(b) || b.is_face_of(a);
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if comparable(&labels[a], &labels[b]) && value(&labels[a]) == value(&labels[b]) {
                return Err(Error::Precondition(alloc::format!(
                    "equal values on comparable simplices {:?} and {:?}",
                    labels[a],
                    labels[b]
                )));
            }
        }
    }
    let len = base.dim() + 2;
    Ok(labels
        .iter()
        .map(|s| {
            let fs = value(s);
            let lower: Vec<usize> =
                (0..n).filter(|&i| labels[i] != *s && comparable(&labels[i], s) && value(&labels[i]) < fs).collect();
            let chains: Vec<Vec<usize>> = maximal_chains(lower.len(), |a, b| {
                let (x, y) = (&labels[lower[a]], &labels[lower[b]]);
                x.dim() < y.dim() && x.is_face_of(y)
            })
            .into_iter()
            .map(|c| c.into_iter().map(|i| lower[i]).collect())
            .collect();
            PlCritical { simplex: s.clone(), multiplicities: reduced_betti_from(&chains, len) }
        })
        .collect())
}

/// Discrete critical cells against PL critical vertices of the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlComparison {
    pub discrete: Vec<usize>,
    pub pl: Vec<usize>,
    /// Simplices where "critical of dimension k" and "PL critical of index k only" disagree.
    pub mismatches: Vec<Simplex>,
    pub degenerate: Vec<Simplex>,
}

impl PlComparison {
    pub fn agree(&self) -> bool {
        self.discrete == self.pl && self.mismatches.is_empty()
    }
}

pub fn compare_discrete_pl(data: &MorseData) -> Result<PlComparison> {
    let base = data.complex();
    let values: Vec<Vec<Rational>> = (0..=base.dim()).map(|k| data.values(k).to_vec()).collect();
    let points = pl_critical_points(base, &values)?;
    let mut pl = vec![0; base.dim() + 2];
    let mut mismatches = Vec::new();
    let mut degenerate = Vec::new();
    for p in &points {
        for (k, m) in p.multiplicities.iter().enumerate() {
            pl[k] += m;
        }
        if p.is_critical() && !p.is_nondegenerate() {
            degenerate.push(p.simplex.clone());
        }
        let k = p.simplex.dim();
        let i = base.index_of(&p.simplex).expect("label of base");
        let discrete = data.critical(k).contains(&i);
        let expected: Vec<usize> = (0..pl.len()).map(|j| usize::from(discrete && j == k)).collect();
        if p.multiplicities != expected {
            mismatches.push(p.simplex.clone());
        }
    }
    while pl.len() > base.dim() + 1 && pl.last() == Some(&0) {
        pl.pop();
    }
    Ok(PlComparison { discrete: data.critical_counts(), pl, mismatches, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::{dimension_function, random_morse_function, validate_morse};

    fn cx(tuples: &[&[usize]]) -> SimplicialComplex {
        let t: Vec<Vec<usize>> = tuples.iter().map(|t| t.to_vec()).collect();
        SimplicialComplex::from_maximal_simplices(&t, &[]).unwrap()
    }

    #[test]
    fn order_complex_counts() {
        let e = order_complex(&cx(&[&[0, 1]])).unwrap();
        assert_eq!(e.complex.counts(), vec![3, 2]);
        let t = order_complex(&cx(&[&[0, 1, 2]])).unwrap();
        assert_eq!(t.complex.counts(), vec![7, 12, 6]);
        let c = cx(&[&[0, 1, 2], &[2, 3], &[3, 4], &[2, 4]]);
        assert_eq!(order_complex(&c).unwrap().complex.betti_numbers(), c.betti_numbers());
        assert_eq!(t.vertex_of(&Simplex::new([0, 1, 2]).unwrap()), Some(6));
    }

    #[test]
    fn extension_values() {
        let c = cx(&[&[0, 1, 2]]);
        let values = random_morse_function(&c, 3);
        for v in 0..3 {
            let s = Simplex::new([v]).unwrap();
            let f = lovasz_on_realization(&c, &values, &realize(&s, 3)).unwrap();
            assert_eq!(f, rational_to_f64(&values[0][v]));
        }
        // midpoint of the subdivision edge from 1_{0} to 1_{012}
        let a = realize(&Simplex::new([0]).unwrap(), 3);
        let b = realize(&Simplex::new([0, 1, 2]).unwrap(), 3);
        let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (x + y) / 2.0).collect();
        let fa = lovasz_on_realization(&c, &values, &a).unwrap();
        let fb = lovasz_on_realization(&c, &values, &b).unwrap();
        assert!((lovasz_on_realization(&c, &values, &mid).unwrap() - (fa + fb) / 2.0).abs() < 1e-12);
        assert!(lovasz_on_realization(&cx(&[&[0, 1], &[1, 2]]), &[vec![Rational::from_integer(0); 3], vec![Rational::from_integer(1); 2]], &[1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn hollow_triangle_vectors() {
        let c = cx(&[&[0, 1], &[0, 2], &[1, 2]]);
        let r = Rational::from_integer;
        let values = vec![vec![r(0), r(2), r(2)], vec![r(1), r(1), r(3)]];
        let d = validate_morse(&c, values).unwrap();
        let cmp = compare_discrete_pl(&d).unwrap();
        assert_eq!(cmp.discrete, vec![1, 1]);
        assert_eq!(cmp.pl, vec![1, 1]);
        assert!(cmp.agree());
    }

    #[test]
    fn minimum_has_index_zero() {
        let c = cx(&[&[0, 1, 2], &[2, 3]]);
        let values = random_morse_function(&c, 1);
        let points = pl_critical_points(&c, &values).unwrap();
        let min = points
            .iter()
            .min_by_key(|p| values[p.simplex.dim()][c.index_of(&p.simplex).unwrap()])
            .unwrap();
        assert_eq!(min.multiplicities, vec![1, 0, 0, 0]);
    }

    #[test]
    fn random_functions_agree() {
        let c = cx(&[&[0, 1, 2], &[1, 2, 3], &[3, 4], &[0, 4]]);
        for seed in 0..10 {
            let d = validate_morse(&c, random_morse_function(&c, seed)).unwrap();
            let cmp = compare_discrete_pl(&d).unwrap();
            assert!(cmp.agree(), "seed {seed}: {cmp:?}");
        }
        assert!(pl_critical_points(&c, &dimension_function(&c)).is_ok());
    }
}
