//! Floer-type chain complexes for flows with rest points, periodic orbits and homoclinic orbits,
//! counted modulo 2.
//!
//! A rest point of index `k` is one generator of dimension `k`. An orbit of index `k` carries two
//! generators, `O^1` in dimension `k + 1` and `O^0` in dimension `k`. Connections contribute to
//! the boundary only in the following patterns:
//!
//! | connection        | contributes                                   |
//! |-------------------|-----------------------------------------------|
//! | `p_k → p_{k−1}`   | `p_{k−1}` to `∂p_k`                           |
//! | `p_k → O_{k−2}`   | `O^1_{k−2}` to `∂p_k`                         |
//! | `O_k → p_{k−1}`   | `p_{k−1}` to `∂O^0_k`                         |
//! | `O_k → O'_{k−1}`  | `O'^0_{k−1}` to `∂O^0_k`, `O'^1_{k−1}` to `∂O^1_k` |
//!
//! where `O` stands for a periodic or a homoclinic orbit.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::rank_gf2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectKind {
    Point,
    Orbit,
    Homoclinic,
}

impl ObjectKind {
    fn is_orbit(self) -> bool {
        self != ObjectKind::Point
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerObject {
    pub name: String,
    pub kind: ObjectKind,
    pub index: usize,
}

/// Objects and connection counts `α(β_i, β_j)`; parity is what enters the boundary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FloerComplex {
    objects: Vec<FloerObject>,
    connections: BTreeMap<(usize, usize), u32>,
}

/// One graded generator: an object and, for orbits, which of its two elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub object: usize,
    pub upper: bool,
    pub dim: usize,
}

impl FloerComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, kind: ObjectKind, index: usize, name: &str) -> Result<usize> {
        if self.find(name).is_some() {
            return Err(Error::Precondition(format!("duplicate object name {name}")));
        }
        self.objects.push(FloerObject { name: name.into(), kind, index });
        Ok(self.objects.len() - 1)
    }

    /// Adds `count` flow lines from `from` to `to`.
    pub fn connect(&mut self, from: &str, to: &str, count: u32) -> Result<()> {
        let a = self.lookup(from)?;
        let b = self.lookup(to)?;
        *self.connections.entry((a, b)).or_insert(0) += count;
        Ok(())
    }

    pub fn objects(&self) -> &[FloerObject] {
        &self.objects
    }

    /// Connections as `(from, to, count)` with nonzero count.
    pub fn connections(&self) -> impl Iterator<Item = (&str, &str, u32)> + '_ {
        self.connections
            .iter()
            .filter(|(_, c)| **c > 0)
            .map(|(&(a, b), &c)| (self.objects[a].name.as_str(), self.objects[b].name.as_str(), c))
    }

    pub fn count(&self, from: &str, to: &str) -> Result<u32> {
        let key = (self.lookup(from)?, self.lookup(to)?);
        Ok(self.connections.get(&key).copied().unwrap_or(0))
    }

    fn find(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        self.find(name).ok_or_else(|| Error::UnknownObject(name.into()))
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for (i, o) in self.objects.iter().enumerate() {
            if o.kind.is_orbit() {
                out.push(Generator { object: i, upper: false, dim: o.index });
                out.push(Generator { object: i, upper: true, dim: o.index + 1 });
            } else {
                out.push(Generator { object: i, upper: false, dim: o.index });
            }
        }
        out
    }

    pub fn generator_name(&self, g: &Generator) -> String {
        let o = &self.objects[g.object];
        if o.kind.is_orbit() {
            format!("{}^{}", o.name, u8::from(g.upper))
        } else {
            o.name.clone()
        }
    }

    /// Boundary terms `(source, target)` as `(object, upper)` pairs produced by one connection.
    fn terms(&self, a: usize, b: usize) -> Result<Vec<((usize, bool), (usize, bool))>> {
        let (x, y) = (&self.objects[a], &self.objects[b]);
        let unsupported = || Error::UnsupportedConnection { from: x.name.clone(), to: y.name.clone() };
        if x.index == y.index {
            return Err(Error::SameIndexConnection { from: x.name.clone(), to: y.name.clone() });
        }
        match (x.kind.is_orbit(), y.kind.is_orbit()) {
            (false, false) if x.index == y.index + 1 => Ok(vec![((a, false), (b, false))]),
            (false, true) if x.index == y.index + 2 => Ok(vec![((a, false), (b, true))]),
            (true, false) if x.index == y.index + 1 => Ok(vec![((a, false), (b, false))]),
            (true, true) if x.index == y.index + 1 => Ok(vec![((a, false), (b, false)), ((a, true), (b, true))]),
            _ => Err(unsupported()),
        }
    }

    /// Rejects same-index connections and connection kinds outside the boundary formulas.
    pub fn validate(&self) -> Result<()> {
        for (&(a, b), &c) in &self.connections {
            if c > 0 {
                self.terms(a, b)?;
            }
        }
        Ok(())
    }
}

/// The mod-2 boundary: `image[g]` lists the generators in `∂g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerBoundary {
    pub generators: Vec<Generator>,
    pub names: Vec<String>,
    pub image: Vec<Vec<usize>>,
}

impl FloerBoundary {
    fn top(&self) -> usize {
        self.generators.iter().map(|g| g.dim + 1).max().unwrap_or(0)
    }

    /// Incidence rows of `∂_k : C_k → C_{k−1}` over ℤ/2, one row per generator in `C_k`.
    fn matrix(&self, k: usize) -> (Vec<Vec<bool>>, usize) {
        let targets: Vec<usize> = (0..self.generators.len()).filter(|&j| k > 0 && self.generators[j].dim == k - 1).collect();
        let rows = (0..self.generators.len())
            .filter(|&i| self.generators[i].dim == k)
            .map(|i| targets.iter().map(|t| self.image[i].contains(t)).collect())
            .collect();
        (rows, targets.len())
    }

    /// Mod-2 Betti numbers in dimensions `0..=top`.
    pub fn homology(&self) -> Vec<usize> {
        let top = self.top();
        let ranks: Vec<usize> = (0..=top + 1)
            .map(|k| {
                let (rows, cols) = self.matrix(k);
                rank_gf2(&rows, cols)
            })
            .collect();
        (0..top)
            .map(|k| self.generators.iter().filter(|g| g.dim == k).count() - ranks[k] - ranks[k + 1])
            .collect()
    }

    /// Dimension where `∂∂` has an odd coefficient, if any.
    pub fn square_defect(&self) -> Option<usize> {
        for (i, targets) in self.image.iter().enumerate() {
            let mut parity: BTreeMap<usize, bool> = BTreeMap::new();
            for &t in targets {
                for &u in &self.image[t] {
                    *parity.entry(u).or_insert(false) ^= true;
                }
            }
            if parity.values().any(|odd| *odd) {
                return Some(self.generators[i].dim);
            }
        }
        None
    }

    pub fn boundary_of(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.names.iter().position(|n| n == name)?;
        Some(self.image[i].iter().map(|&j| self.names[j].as_str()).collect())
    }
}

/// The boundary operator of a validated complex, with `∂² = 0` enforced.
pub fn floer_boundary(c: &FloerComplex) -> Result<FloerBoundary> {
    c.validate()?;
    let generators = c.generators();
    let position = |key: (usize, bool)| generators.iter().position(|g| (g.object, g.upper) == key).expect("generator exists");
    let mut image = vec![Vec::new(); generators.len()];
    for (&(a, b), &count) in &c.connections {
        if count % 2 == 0 {
            continue;
        }
        for (src, dst) in c.terms(a, b)? {
            let (i, j) = (position(src), position(dst));
            match image[i].iter().position(|&t| t == j) {
                Some(at) => {
                    image[i].remove(at);
                }
                None => image[i].push(j),
            }
        }
    }
    for targets in &mut image {
        targets.sort_unstable();
    }
    let names = generators.iter().map(|g| c.generator_name(g)).collect();
    let out = FloerBoundary { generators, names, image };
    if let Some(degree) = out.square_defect() {
        return Err(Error::BoundaryNotNilpotent { degree });
    }
    Ok(out)
}

/// Replaces the periodic orbit `orbit` of index `k` by rest points `upper` (index `k + 1`) and
/// `lower` (index `k`) joined by two flow lines. Connections into the orbit from `p_{k+2}` move to
/// `upper`, connections from the orbit to `p_{k−1}` move to `lower`; any other neighbour would
/// need a connection kind the boundary formulas do not have, and is refused.
pub fn franks_replacement(c: &FloerComplex, orbit: &str, upper: &str, lower: &str) -> Result<FloerComplex> {
    let o = c.lookup(orbit)?;
    let FloerObject { kind, index, .. } = c.objects[o].clone();
    if kind != ObjectKind::Orbit {
        return Err(Error::Precondition(format!("{orbit} is not a periodic orbit")));
    }
    let mut out = FloerComplex::new();
    for (i, obj) in c.objects.iter().enumerate() {
        if i != o {
            out.add_object(obj.kind, obj.index, &obj.name)?;
        }
    }
    out.add_object(ObjectKind::Point, index + 1, upper)?;
    out.add_object(ObjectKind::Point, index, lower)?;
    out.connect(upper, lower, 2)?;
    for (&(a, b), &count) in &c.connections {
        if count == 0 {
            continue;
        }
        let (x, y) = (&c.objects[a], &c.objects[b]);
        let refuse = || Error::UnsupportedConnection { from: x.name.clone(), to: y.name.clone() };
        if b == o {
            if x.kind.is_orbit() || x.index != index + 2 {
                return Err(refuse());
            }
            out.connect(&x.name, upper, count)?;
        } else if a == o {
            if y.kind.is_orbit() || y.index + 1 != index {
                return Err(refuse());
            }
            out.connect(lower, &y.name, count)?;
        } else {
            out.connect(&x.name, &y.name, count)?;
        }
    }
    Ok(out)
}

/// Cancels rest points `upper` (index `k`) and `lower` (index `k − 1`) joined by exactly one
/// flow line: every `X → lower` is rerouted along `X → lower ← upper → Y` as an extra `X → Y`
/// (mod 2), then both points are removed. The input need not be valid; a same-index connection
/// into `upper` disappears with it.
pub fn cancel_pair(c: &FloerComplex, upper: &str, lower: &str) -> Result<FloerComplex> {
    let a = c.lookup(upper)?;
    let b = c.lookup(lower)?;
    let (pa, pb) = (&c.objects[a], &c.objects[b]);
    if pa.kind != ObjectKind::Point || pb.kind != ObjectKind::Point || pa.index != pb.index + 1 {
        return Err(Error::Precondition("cancellation needs rest points of indices k and k−1".into()));
    }
    if c.connections.get(&(a, b)).copied() != Some(1) {
        return Err(Error::NotUniquelyConnected { upper: upper.into(), lower: lower.into() });
    }
    let odd = |x: usize, y: usize| c.connections.get(&(x, y)).is_some_and(|n| n % 2 == 1);
    let mut counts = c.connections.clone();
    for x in (0..c.objects.len()).filter(|&x| x != a && odd(x, b)) {
        for y in (0..c.objects.len()).filter(|&y| y != b && odd(a, y)) {
            *counts.entry((x, y)).or_insert(0) += 1;
        }
    }
    let mut out = FloerComplex::new();
    for (i, obj) in c.objects.iter().enumerate() {
        if i != a && i != b {
            out.add_object(obj.kind, obj.index, &obj.name)?;
        }
    }
    for ((x, y), n) in counts {
        if n > 0 && ![x, y].iter().any(|v| *v == a || *v == b) {
            out.connect(&c.objects[x].name, &c.objects[y].name, n)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(objects: &[(ObjectKind, usize, &str)], conns: &[(&str, &str, u32)]) -> FloerComplex {
        let mut c = FloerComplex::new();
        for (k, i, n) in objects {
            c.add_object(*k, *i, n).unwrap();
        }
        for (a, b, n) in conns {
            c.connect(a, b, *n).unwrap();
        }
        c
    }

    use ObjectKind::{Orbit, Point};

    /// Maximum, saddle and two minima on the sphere.
    fn saddle_sphere() -> FloerComplex {
        build(
            &[(Point, 2, "t1"), (Point, 1, "s1"), (Point, 0, "q1"), (Point, 0, "q2")],
            &[("t1", "s1", 2), ("s1", "q1", 1), ("s1", "q2", 1)],
        )
    }

    fn orbit_sphere() -> FloerComplex {
        build(&[(Orbit, 1, "O"), (Point, 0, "q1"), (Point, 0, "q2")], &[("O", "q1", 1), ("O", "q2", 1)])
    }

    #[test]
    fn saddle_sphere_boundary() {
        let d = floer_boundary(&saddle_sphere()).unwrap();
        assert_eq!(d.boundary_of("t1"), Some(vec![]));
        assert_eq!(d.boundary_of("s1"), Some(vec!["q1", "q2"]));
        assert_eq!(d.homology(), vec![1, 0, 1]);
    }

    #[test]
    fn orbit_sphere_boundary() {
        let d = floer_boundary(&orbit_sphere()).unwrap();
        assert_eq!(d.boundary_of("O^1"), Some(vec![]));
        assert_eq!(d.boundary_of("O^0"), Some(vec!["q1", "q2"]));
        assert_eq!(d.homology(), vec![1, 0, 1]);
    }

    #[test]
    fn empty_complex() {
        assert!(floer_boundary(&FloerComplex::new()).unwrap().homology().is_empty());
    }

    #[test]
    fn franks_gives_saddle_picture() {
        let r = franks_replacement(&orbit_sphere(), "O", "t1", "s1").unwrap();
        assert_eq!(r.count("t1", "s1").unwrap(), 2);
        let d = floer_boundary(&r).unwrap();
        assert_eq!(d.boundary_of("t1"), Some(vec![]));
        assert_eq!(d.boundary_of("s1"), Some(vec!["q1", "q2"]));
        assert_eq!(d.homology(), vec![1, 0, 1]);
        let lonely = build(&[(Orbit, 0, "O")], &[]);
        let d0 = floer_boundary(&lonely).unwrap().homology();
        let d1 = floer_boundary(&franks_replacement(&lonely, "O", "a", "b").unwrap()).unwrap().homology();
        assert_eq!((d0.clone(), d1), (vec![1, 1], vec![1, 1]));
    }

    #[test]
    fn franks_refuses_orbit_neighbours() {
        let c = build(&[(Orbit, 1, "O"), (Orbit, 0, "P")], &[("O", "P", 1)]);
        assert!(floer_boundary(&c).is_ok());
        let e = franks_replacement(&c, "O", "a", "b").unwrap_err();
        assert_eq!(e, Error::UnsupportedConnection { from: "O".into(), to: "P".into() });
    }

    #[test]
    fn validator() {
        let c = build(&[(Orbit, 1, "O"), (Point, 1, "s1")], &[("O", "s1", 2)]);
        assert_eq!(floer_boundary(&c).unwrap_err(), Error::SameIndexConnection { from: "O".into(), to: "s1".into() });
        let c = build(&[(Point, 3, "a"), (Point, 0, "b")], &[("a", "b", 1)]);
        assert!(matches!(floer_boundary(&c).unwrap_err(), Error::UnsupportedConnection { .. }));
        let c = build(&[(Point, 2, "a"), (Point, 1, "b"), (Point, 0, "c")], &[("a", "b", 1), ("b", "c", 1)]);
        assert_eq!(floer_boundary(&c).unwrap_err(), Error::BoundaryNotNilpotent { degree: 2 });
    }

    #[test]
    fn cancellation() {
        let fig = build(
            &[(Orbit, 1, "O"), (Point, 1, "s1"), (Point, 0, "q1"), (Point, 0, "q2"), (Point, 0, "q3")],
            &[("O", "s1", 2), ("s1", "q1", 1), ("s1", "q2", 1), ("O", "q1", 1), ("O", "q3", 1)],
        );
        assert!(floer_boundary(&fig).is_err());
        let c = cancel_pair(&fig, "s1", "q1").unwrap();
        let d = floer_boundary(&c).unwrap();
        assert_eq!(d.boundary_of("O^0"), Some(vec!["q2", "q3"]));
        assert_eq!(d.homology(), vec![1, 0, 1]);
        let c = cancel_pair(&saddle_sphere(), "s1", "q1").unwrap();
        assert_eq!(floer_boundary(&c).unwrap().homology(), vec![1, 0, 1]);
        assert_eq!(
            cancel_pair(&saddle_sphere(), "t1", "s1").unwrap_err(),
            Error::NotUniquelyConnected { upper: "t1".into(), lower: "s1".into() }
        );
    }
}
