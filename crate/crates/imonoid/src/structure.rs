//! Congruences, quotients, subalgebras, products and homomorphisms.

use crate::algebra::IMonoid;
use crate::theory::{require_mccarthy, McCarthyError};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Largest algebra [`all_congruences`] accepts by default.
pub const DEFAULT_CONGRUENCE_CAP: usize = 12;

/// Search nodes [`homomorphisms`] may visit by default.
pub const DEFAULT_HOM_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("algebra of size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("partition is not compatible with the operations at ({0},{1})")]
    Incompatible(usize, usize),
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("homomorphism search exceeded {0} nodes")]
    NodeCap(u64),
    #[error(transparent)]
    NotMcCarthy(#[from] McCarthyError),
}

/// A partition of `{0, ..., n-1}` given by block ids, numbered in order of
/// first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Builds a partition from arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Congruence {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let blocks = labels
            .iter()
            .map(|l| match seen.iter().find(|(k, _)| k == l) {
                Some(&(_, id)) => id,
                None => {
                    let id = seen.len();
                    seen.push((*l, id));
                    id
                }
            })
            .collect();
        Congruence { blocks }
    }

    /// The identity relation Δ.
    pub fn identity(n: usize) -> Congruence {
        Congruence {
            blocks: (0..n).collect(),
        }
    }

    /// The total relation ∇.
    pub fn total(n: usize) -> Congruence {
        Congruence { blocks: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// Block id of each element.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// The blocks as sorted element lists, in block-id order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (a, &b) in self.blocks.iter().enumerate() {
            out[b].push(a);
        }
        out
    }

    /// Whether `self ⊆ other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..a).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let labels: Vec<usize> = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&x, &y)| x * self.size() + y)
            .collect();
        Congruence::from_labels(&labels)
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for c in [self, other] {
            let mut first = vec![usize::MAX; c.block_count()];
            for (a, &b) in c.blocks.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = a;
                } else {
                    uf.union(first[b], a);
                }
            }
        }
        uf.congruence()
    }

    /// First pair of related elements whose images under some operation are
    /// not related.
    pub fn incompatibility(&self, alg: &IMonoid) -> Option<(usize, usize)> {
        let n = alg.size();
        for a in 0..n {
            for b in 0..a {
                if !self.related(a, b) {
                    continue;
                }
                if !self.related(alg.inv(a), alg.inv(b)) {
                    return Some((b, a));
                }
                for c in 0..n {
                    if !self.related(alg.mul(a, c), alg.mul(b, c))
                        || !self.related(alg.mul(c, a), alg.mul(c, b))
                    {
                        return Some((b, a));
                    }
                }
            }
        }
        None
    }

    pub fn is_congruence_of(&self, alg: &IMonoid) -> bool {
        self.size() == alg.size() && self.incompatibility(alg).is_none()
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes()
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns true when the classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn congruence(&mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|a| self.find(a)).collect();
        Congruence::from_labels(&labels)
    }
}

/// The least congruence containing `pairs`, closing under the translations
/// `z ↦ z'`, `z ↦ c*z` and `z ↦ z*c`.
pub fn congruence_generated(
    alg: &IMonoid,
    pairs: &[(usize, usize)],
) -> Result<Congruence, StructureError> {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let mut work = Vec::new();
    for &(a, b) in pairs {
        for x in [a, b] {
            if x >= n {
                return Err(StructureError::OutOfRange(x));
            }
        }
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    while let Some((a, b)) = work.pop() {
        let mut push = |x: usize, y: usize, uf: &mut UnionFind| {
            if uf.union(x, y) {
                work.push((x, y));
            }
        };
        push(alg.inv(a), alg.inv(b), &mut uf);
        for c in 0..n {
            push(alg.mul(c, a), alg.mul(c, b), &mut uf);
            push(alg.mul(a, c), alg.mul(b, c), &mut uf);
        }
    }
    Ok(uf.congruence())
}

/// The kernel of `z ↦ a*z` in a McCarthy algebra, which is the congruence
/// generated by `(a, 1)`.
pub fn principal_tilde(alg: &IMonoid, a: usize) -> Result<Congruence, StructureError> {
    if a >= alg.size() {
        return Err(StructureError::OutOfRange(a));
    }
    require_mccarthy(alg)?;
    let labels: Vec<usize> = (0..alg.size()).map(|z| alg.mul(a, z)).collect();
    Ok(Congruence::from_labels(&labels))
}

/// Every congruence of an algebra, ordered by decreasing number of blocks
/// and then by block vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
}

impl CongruenceLattice {
    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.congruences.contains(c)
    }

    pub fn bottom(&self) -> &Congruence {
        &self.congruences[0]
    }

    pub fn top(&self) -> &Congruence {
        self.congruences.last().expect("lattice is nonempty")
    }

    /// Congruences other than Δ.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Congruence> {
        self.congruences.iter().filter(|c| !c.is_identity())
    }
}

pub fn all_congruences(alg: &IMonoid) -> Result<CongruenceLattice, StructureError> {
    all_congruences_capped(alg, DEFAULT_CONGRUENCE_CAP)
}

pub fn all_congruences_capped(
    alg: &IMonoid,
    cap: usize,
) -> Result<CongruenceLattice, StructureError> {
    let n = alg.size();
    if n > cap {
        return Err(StructureError::TooLarge { size: n, cap });
    }
    let principals = principal_congruences(alg);
    let mut set: BTreeSet<Congruence> = principals.iter().cloned().collect();
    set.insert(Congruence::identity(n));
    let mut frontier: Vec<Congruence> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = c.join(p);
                if set.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut congruences: Vec<Congruence> = set.into_iter().collect();
    congruences.sort_by(|a, b| {
        b.block_count()
            .cmp(&a.block_count())
            .then_with(|| a.blocks.cmp(&b.blocks))
    });
    Ok(CongruenceLattice { congruences })
}

fn principal_congruences(alg: &IMonoid) -> Vec<Congruence> {
    let n = alg.size();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..a).map(move |b| (b, a))).collect();
    let mut out: Vec<Congruence> = pairs
        .par_iter()
        .map(|&p| congruence_generated(alg, &[p]).expect("pair in range"))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The monolith, when `alg` is subdirectly irreducible. Trivial algebras
/// are not subdirectly irreducible.
pub fn is_subdirectly_irreducible(alg: &IMonoid) -> Result<Option<Congruence>, StructureError> {
    let n = alg.size();
    if n > DEFAULT_CONGRUENCE_CAP {
        return Err(StructureError::TooLarge {
            size: n,
            cap: DEFAULT_CONGRUENCE_CAP,
        });
    }
    if n == 1 {
        return Ok(None);
    }
    let monolith = principal_congruences(alg)
        .into_iter()
        .fold(Congruence::total(n), |acc, c| acc.meet(&c));
    Ok((!monolith.is_identity()).then_some(monolith))
}

/// The quotient algebra, whose elements are the block ids, and the
/// projection.
pub fn quotient(alg: &IMonoid, cong: &Congruence) -> Result<(IMonoid, Vec<usize>), StructureError> {
    if cong.size() != alg.size() {
        return Err(StructureError::TooLarge {
            size: cong.size(),
            cap: alg.size(),
        });
    }
    if let Some((a, b)) = cong.incompatibility(alg) {
        return Err(StructureError::Incompatible(a, b));
    }
    let k = cong.block_count();
    let rep: Vec<usize> = cong.classes().iter().map(|c| c[0]).collect();
    let proj = cong.blocks().to_vec();
    let inv: Vec<usize> = rep.iter().map(|&r| proj[alg.inv(r)]).collect();
    let mut mul = Vec::with_capacity(k * k);
    for &a in &rep {
        for &b in &rep {
            mul.push(proj[alg.mul(a, b)]);
        }
    }
    let q = IMonoid::from_parts(k, proj[alg.unit()], inv, mul);
    Ok((q, proj))
}

/// The subalgebra generated by `subset` (together with the constants),
/// relabeled in increasing order of the original elements, and the
/// inclusion map.
pub fn subalgebra_generated(
    alg: &IMonoid,
    subset: &[usize],
) -> Result<(IMonoid, Vec<usize>), StructureError> {
    let n = alg.size();
    let mut member = vec![false; n];
    let mut elems = Vec::new();
    for &x in subset.iter().chain([alg.unit(), alg.zero()].iter()) {
        if x >= n {
            return Err(StructureError::OutOfRange(x));
        }
        if !member[x] {
            member[x] = true;
            elems.push(x);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        let mut news = vec![alg.inv(a)];
        for j in 0..=i {
            let b = elems[j];
            news.extend([alg.mul(a, b), alg.mul(b, a)]);
        }
        for x in news {
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        }
        i += 1;
    }
    let incl: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &x) in incl.iter().enumerate() {
        index[x] = i;
    }
    let k = incl.len();
    let inv: Vec<usize> = incl.iter().map(|&x| index[alg.inv(x)]).collect();
    let mut mul = Vec::with_capacity(k * k);
    for &a in &incl {
        for &b in &incl {
            mul.push(index[alg.mul(a, b)]);
        }
    }
    let mut sub = IMonoid::from_parts(k, index[alg.unit()], inv, mul);
    if let Some(names) = alg.element_names() {
        sub.set_element_names(Some(incl.iter().map(|&x| names[x].clone()).collect()));
    }
    Ok((sub, incl))
}

/// Componentwise product; the pair `(i, j)` is element `i*|b| + j`.
pub fn direct_product(a: &IMonoid, b: &IMonoid) -> IMonoid {
    let (n, m) = (a.size(), b.size());
    let pair = |i: usize, j: usize| i * m + j;
    let mut inv = Vec::with_capacity(n * m);
    let mut mul = Vec::with_capacity(n * m * n * m);
    for i in 0..n {
        for j in 0..m {
            inv.push(pair(a.inv(i), b.inv(j)));
        }
    }
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for l in 0..m {
                    mul.push(pair(a.mul(i, k), b.mul(j, l)));
                }
            }
        }
    }
    let mut p = IMonoid::from_parts(n * m, pair(a.unit(), b.unit()), inv, mul);
    if let (Some(na), Some(nb)) = (a.element_names(), b.element_names()) {
        let names = (0..n * m)
            .map(|x| format!("({},{})", na[x / m], nb[x % m]))
            .collect();
        p.set_element_names(Some(names));
    }
    if let (Some(x), Some(y)) = (a.name(), b.name()) {
        p.set_name(format!("{x}x{y}"));
    }
    p
}

/// Whether `f` preserves the unit, the involution and the product.
pub fn is_homomorphism(a: &IMonoid, b: &IMonoid, f: &[usize]) -> bool {
    let n = a.size();
    f.len() == n
        && f.iter().all(|&x| x < b.size())
        && f[a.unit()] == b.unit()
        && (0..n).all(|x| f[a.inv(x)] == b.inv(f[x]))
        && (0..n).all(|x| (0..n).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
}

/// Every homomorphism `a -> b`, in lexicographic order of the map vector.
pub fn homomorphisms(a: &IMonoid, b: &IMonoid) -> Result<Vec<Vec<usize>>, StructureError> {
    homomorphisms_capped(a, b, DEFAULT_HOM_NODE_CAP)
}

pub fn homomorphisms_capped(
    a: &IMonoid,
    b: &IMonoid,
    node_cap: u64,
) -> Result<Vec<Vec<usize>>, StructureError> {
    let mut s = HomSearch {
        a,
        b,
        f: vec![usize::MAX; a.size()],
        out: Vec::new(),
        nodes: 0,
        cap: node_cap,
    };
    let mut trail = Vec::new();
    if s.set(a.unit(), b.unit(), &mut trail) {
        s.go(0)?;
    }
    s.out.sort();
    Ok(s.out)
}

struct HomSearch<'a> {
    a: &'a IMonoid,
    b: &'a IMonoid,
    f: Vec<usize>,
    out: Vec<Vec<usize>>,
    nodes: u64,
    cap: u64,
}

impl HomSearch<'_> {
    /// Sets `f(x) = v` and everything it forces. Records newly set elements
    /// in `trail`; returns false on a conflict.
    fn set(&mut self, x: usize, v: usize, trail: &mut Vec<usize>) -> bool {
        let mut work = vec![(x, v)];
        while let Some((x, v)) = work.pop() {
            if self.f[x] != usize::MAX {
                if self.f[x] != v {
                    return false;
                }
                continue;
            }
            self.f[x] = v;
            trail.push(x);
            work.push((self.a.inv(x), self.b.inv(v)));
            for y in 0..self.a.size() {
                let w = self.f[y];
                if w == usize::MAX {
                    continue;
                }
                work.push((self.a.mul(x, y), self.b.mul(v, w)));
                work.push((self.a.mul(y, x), self.b.mul(w, v)));
            }
        }
        true
    }

    fn go(&mut self, from: usize) -> Result<(), StructureError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(StructureError::NodeCap(self.cap));
        }
        let n = self.a.size();
        let Some(x) = (from..n).find(|&x| self.f[x] == usize::MAX) else {
            self.out.push(self.f.clone());
            return Ok(());
        };
        for v in 0..self.b.size() {
            let mut trail = Vec::new();
            if self.set(x, v, &mut trail) {
                self.go(x + 1)?;
            }
            for y in trail {
                self.f[y] = usize::MAX;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::enumerate::isomorphic;

    const ONE: usize = 0;
    const ZERO: usize = 1;
    const EPS: usize = 2;

    fn b(name: &str) -> IMonoid {
        builtin(name).unwrap()
    }

    #[test]
    fn m3_generated_congruences() {
        let m3 = b("M3");
        assert!(congruence_generated(&m3, &[(EPS, ONE)]).unwrap().is_total());
        assert!(congruence_generated(&m3, &[]).unwrap().is_identity());
    }

    #[test]
    fn wk_congruences() {
        let wk = b("WK");
        // 1 ≡ ε forces 0 = 1' ≡ ε' = ε, so everything collapses.
        assert!(congruence_generated(&wk, &[(ONE, EPS)]).unwrap().is_total());
        let c = congruence_generated(&wk, &[(ZERO, ONE)]).unwrap();
        assert_eq!(c.classes(), vec![vec![ONE, ZERO], vec![EPS]]);
        let (q, proj) = quotient(&wk, &c).unwrap();
        assert!(isomorphic(&q, &b("C2")));
        assert!(is_homomorphism(&wk, &q, &proj));
    }

    #[test]
    fn m3_principal_tilde() {
        let m3 = b("M3");
        assert!(principal_tilde(&m3, EPS).unwrap().is_total());
        assert!(principal_tilde(&m3, ONE).unwrap().is_identity());
        assert!(principal_tilde(&m3, ZERO).unwrap().is_total());
        assert!(principal_tilde(&b("WK"), EPS).is_err());
    }

    #[test]
    fn simple_algebras() {
        for name in ["M3", "2"] {
            let l = all_congruences(&b(name)).unwrap();
            assert_eq!(l.len(), 2, "{name}");
            assert!(l.bottom().is_identity() && l.top().is_total());
        }
        assert_eq!(all_congruences(&b("TRIVIAL")).unwrap().len(), 1);
    }

    #[test]
    fn subdirect_irreducibility() {
        assert!(is_subdirectly_irreducible(&b("M3")).unwrap().unwrap().is_total());
        let two = b("2");
        assert!(is_subdirectly_irreducible(&direct_product(&two, &two)).unwrap().is_none());
        assert!(is_subdirectly_irreducible(&b("TRIVIAL")).unwrap().is_none());
    }

    #[test]
    fn quotient_by_extremes() {
        let m3 = b("M3");
        let (q, _) = quotient(&m3, &Congruence::total(3)).unwrap();
        assert_eq!(q.size(), 1);
        let (q, _) = quotient(&m3, &Congruence::identity(3)).unwrap();
        assert!(isomorphic(&q, &m3));
        assert!(matches!(
            quotient(&m3, &Congruence::from_labels(&[0, 0, 1])),
            Err(StructureError::Incompatible(..))
        ));
    }

    #[test]
    fn generated_subalgebras() {
        let m3 = b("M3");
        let (s, incl) = subalgebra_generated(&m3, &[ZERO, ONE]).unwrap();
        assert!(isomorphic(&s, &b("2")));
        assert_eq!(incl, vec![ONE, ZERO]);
        let (s, _) = subalgebra_generated(&m3, &[]).unwrap();
        assert_eq!(s.size(), 2);
        let l3s = b("L3S");
        let sq = direct_product(&l3s, &l3s);
        let (a, bb) = (1, 2);
        let (s, _) = subalgebra_generated(&sq, &[a * 3 + a, a * 3 + bb]).unwrap();
        assert_eq!(s.size(), 5);
    }

    #[test]
    fn homomorphism_counts() {
        let (two, m3) = (b("2"), b("M3"));
        assert_eq!(homomorphisms(&two, &m3).unwrap(), vec![vec![0, 1]]);
        assert!(homomorphisms(&m3, &two).unwrap().is_empty());
        assert_eq!(homomorphisms(&m3, &m3).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn four_element_boolean_algebra() {
        let two = b("2");
        let p = direct_product(&two, &two);
        assert_eq!(p.size(), 4);
        assert!(crate::theory::is_boolean(&p).unwrap());
        assert_eq!(all_congruences(&p).unwrap().len(), 4);
    }

    #[test]
    fn lattice_operations() {
        let a = Congruence::from_labels(&[0, 0, 1, 1]);
        let c = Congruence::from_labels(&[0, 1, 0, 1]);
        assert!(a.meet(&c).is_identity());
        assert!(a.join(&c).is_total());
        assert!(Congruence::identity(4).refines(&a));
        assert!(!a.refines(&c));
        assert_eq!(a.to_string(), "{0,1} {2,3}");
    }
}
