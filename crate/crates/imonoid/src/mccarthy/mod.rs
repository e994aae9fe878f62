//! Structure of McCarthy algebras: induced order, semilattice skeleton,
//! Boolean fibers, the direct-system decomposition, decorated posets and
//! the I[2] construction.

mod poset;
mod semilattice;

pub use poset::{
    decorated_isomorphic, decorated_isomorphism, order_isomorphic, reconstruct, DecoratedPoset,
    PosetError, PosetOps, ReconstructError, Step,
};
pub use semilattice::{
    construct_i2, construct_i2_eps, semilattice_isomorphism, BotSemilattice, SemilatticeError,
};

use crate::algebra::{builtin, IMonoid};
use crate::enumerate::{enumerate_models_with, EnumConfig, EnumError};
use crate::structure::{is_homomorphism, Congruence};
use crate::theory::{is_boolean, require_mccarthy, Bundle, McCarthyError, TheorySpec};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("not a partial order: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("not a partial order: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructError {
    #[error(transparent)]
    NotMcCarthy(#[from] McCarthyError),
    #[error("{0} is not in the skeleton")]
    NotSkeleton(usize),
    #[error("the fiber of 0 has {0} elements, so it is not the two-element algebra")]
    BottomFiberNotTwo(usize),
    /// A structural fact guaranteed for McCarthy algebras failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// The relation `a <= b` iff `a + b = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedOrder {
    n: usize,
    leq: Vec<bool>,
}

impl InducedOrder {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

/// The induced order; fails unless it is a partial order, which is the
/// case exactly for left-regular algebras.
pub fn induced_order(alg: &IMonoid) -> Result<InducedOrder, OrderError> {
    let n = alg.size();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = alg.join(a, b) == b;
        }
    }
    let ord = InducedOrder { n, leq };
    for a in 0..n {
        for b in a + 1..n {
            if ord.le(a, b) && ord.le(b, a) {
                return Err(OrderError::NotAntisymmetric(a, b));
            }
        }
        for b in 0..n {
            if !ord.le(a, b) {
                continue;
            }
            if let Some(c) = (0..n).find(|&c| ord.le(b, c) && !ord.le(a, c)) {
                return Err(OrderError::NotTransitive(a, b, c));
            }
        }
    }
    Ok(ord)
}

/// The elements fixed by `z ↦ z*0`, which form a join-semilattice under `+`
/// with least element `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    elements: Vec<usize>,
    /// Join of `elements[p]` and `elements[q]`, as an element.
    join: Vec<usize>,
    bottom: usize,
}

impl Skeleton {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    fn pos(&self, a: usize) -> usize {
        self.elements.binary_search(&a).expect("skeleton element")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let k = self.elements.len();
        self.join[self.pos(i) * k + self.pos(j)]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.join(i, j) == j
    }

    /// The skeleton as an abstract semilattice on `0..k`, numbered in the
    /// order of [`Skeleton::elements`].
    pub fn to_semilattice(&self) -> BotSemilattice {
        let k = self.elements.len();
        let join = (0..k)
            .map(|p| (0..k).map(|q| self.pos(self.join[p * k + q])).collect())
            .collect();
        BotSemilattice::new(join, self.pos(self.bottom)).expect("skeleton is a semilattice")
    }
}

pub fn skeleton(alg: &IMonoid) -> Result<Skeleton, StructError> {
    require_mccarthy(alg)?;
    Ok(skeleton_unchecked(alg))
}

fn skeleton_unchecked(alg: &IMonoid) -> Skeleton {
    let zero = alg.zero();
    let elements: Vec<usize> = (0..alg.size()).filter(|&a| alg.mul(a, zero) == a).collect();
    let join = elements
        .iter()
        .flat_map(|&i| elements.iter().map(move |&j| alg.join(i, j)))
        .collect();
    Skeleton {
        elements,
        join,
        bottom: zero,
    }
}

/// The Boolean fiber `B_i = {a : a*0 = i}` over a skeleton element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    /// The skeleton element `i`, which is also the fiber's bottom.
    pub index: usize,
    /// Members in increasing order.
    pub elements: Vec<usize>,
    /// `i + 1`.
    pub top: usize,
}

impl Fiber {
    pub fn bottom(&self) -> usize {
        self.index
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// The fiber as an algebra with `*` restricted, top as unit, numbered
    /// in the order of [`Fiber::elements`].
    pub fn to_algebra(&self, alg: &IMonoid) -> IMonoid {
        let pos = |a: usize| self.elements.binary_search(&a).expect("fiber is closed");
        let inv = self.elements.iter().map(|&a| pos(alg.inv(a))).collect();
        let mul = self
            .elements
            .iter()
            .flat_map(|&a| self.elements.iter().map(move |&b| (a, b)))
            .map(|(a, b)| pos(alg.mul(a, b)))
            .collect();
        IMonoid::from_parts(self.elements.len(), pos(self.top), inv, mul)
    }
}

pub fn fibers(alg: &IMonoid) -> Result<Vec<Fiber>, StructError> {
    require_mccarthy(alg)?;
    Ok(fibers_unchecked(alg))
}

fn fibers_unchecked(alg: &IMonoid) -> Vec<Fiber> {
    let zero = alg.zero();
    skeleton_unchecked(alg)
        .elements
        .iter()
        .map(|&i| Fiber {
            index: i,
            elements: (0..alg.size()).filter(|&a| alg.mul(a, zero) == i).collect(),
            top: alg.join(i, alg.unit()),
        })
        .collect()
}

/// `a ⋆ j = a * j` for a skeleton element `j`.
pub fn action(alg: &IMonoid, a: usize, j: usize) -> usize {
    alg.mul(a, j)
}

/// The kernel of `z ↦ i + z`.
pub fn kernel_theta(alg: &IMonoid, i: usize) -> Result<Congruence, StructError> {
    let sk = skeleton(alg)?;
    if !sk.contains(i) {
        return Err(StructError::NotSkeleton(i));
    }
    let labels: Vec<usize> = (0..alg.size()).map(|z| alg.join(i, z)).collect();
    Ok(Congruence::from_labels(&labels))
}

/// A semilattice-indexed family of Boolean fibers with transition maps
/// `p_ij(x) = j + x` for `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSystem {
    pub skeleton: Skeleton,
    pub fibers: Vec<Fiber>,
    /// `(i, j) ↦` images of the elements of `B_i`, in fiber order.
    pub transitions: BTreeMap<(usize, usize), Vec<usize>>,
}

impl DirectSystem {
    pub fn fiber(&self, i: usize) -> Option<&Fiber> {
        self.fibers.iter().find(|f| f.index == i)
    }

    pub fn transition(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.transitions.get(&(i, j)).map(Vec::as_slice)
    }

    /// Applies `p_ij` to `x ∈ B_i`.
    pub fn apply(&self, i: usize, j: usize, x: usize) -> Option<usize> {
        let f = self.fiber(i)?;
        let pos = f.elements.binary_search(&x).ok()?;
        Some(self.transition(i, j)?[pos])
    }
}

/// Decomposes a McCarthy algebra into its direct system of Boolean
/// algebras, checking every invariant of the result.
pub fn decompose(alg: &IMonoid) -> Result<DirectSystem, StructError> {
    require_mccarthy(alg)?;
    let skeleton = skeleton_unchecked(alg);
    let fibers = fibers_unchecked(alg);
    let internal = |m: String| Err(StructError::Internal(m));
    let n = alg.size();
    let total: usize = fibers.iter().map(|f| f.elements.len()).sum();
    if total != n {
        return internal(format!("fibers cover {total} of {n} elements"));
    }
    for f in &fibers {
        if !is_boolean(&f.to_algebra(alg))? {
            return internal(format!("fiber over {} is not Boolean", f.index));
        }
        let ord = induced_order(alg).map_err(|e| StructError::Internal(e.to_string()))?;
        let interval: Vec<usize> = (0..n)
            .filter(|&x| ord.le(f.index, x) && ord.le(x, f.top))
            .collect();
        if interval != f.elements {
            return internal(format!("fiber over {} is not an interval", f.index));
        }
    }
    let mut transitions = BTreeMap::new();
    for fi in &fibers {
        for fj in &fibers {
            let (i, j) = (fi.index, fj.index);
            if !skeleton.le(i, j) {
                continue;
            }
            let map: Vec<usize> = fi.elements.iter().map(|&x| alg.join(j, x)).collect();
            if map.iter().any(|&y| !fj.contains(y)) {
                return internal(format!("p_{i},{j} leaves the fiber"));
            }
            for (p, &x) in fi.elements.iter().enumerate() {
                let img = |z: usize| map[fi.elements.binary_search(&z).expect("closed")];
                if img(alg.inv(x)) != alg.inv(map[p]) {
                    return internal(format!("p_{i},{j} does not preserve ' at {x}"));
                }
                for &y in &fi.elements {
                    if img(alg.mul(x, y)) != alg.mul(map[p], img(y)) {
                        return internal(format!("p_{i},{j} does not preserve * at ({x},{y})"));
                    }
                }
            }
            if map[fi.elements.binary_search(&fi.top).expect("top")] != fj.top {
                return internal(format!("p_{i},{j} does not preserve the top"));
            }
            if i == j && map != fi.elements {
                return internal(format!("p_{i},{i} is not the identity"));
            }
            transitions.insert((i, j), map);
        }
    }
    let sys = DirectSystem {
        skeleton,
        fibers,
        transitions,
    };
    for &(i, j) in sys.transitions.keys() {
        for &k in sys.skeleton.elements() {
            if !sys.skeleton.le(j, k) {
                continue;
            }
            for &x in &sys.fiber(i).expect("fiber").elements {
                let via = sys.apply(i, j, x).and_then(|y| sys.apply(j, k, y));
                if via != sys.apply(i, k, x) {
                    return internal(format!("p_{j},{k} ∘ p_{i},{j} ≠ p_{i},{k} at {x}"));
                }
            }
        }
    }
    Ok(sys)
}

/// The induced order together with the skeleton.
pub fn decorated_poset(alg: &IMonoid) -> Result<DecoratedPoset, StructError> {
    require_mccarthy(alg)?;
    let ord = induced_order(alg).map_err(|e| StructError::Internal(e.to_string()))?;
    let zero = alg.zero();
    let marks = (0..alg.size()).map(|a| alg.mul(a, zero) == a).collect();
    let mut dp =
        DecoratedPoset::new(ord.rows(), marks).map_err(|e| StructError::Internal(e.to_string()))?;
    if let Some(name) = alg.name() {
        dp.set_name(name);
    }
    if let Some(names) = alg.element_names() {
        dp = dp.with_labels(names.to_vec());
    }
    Ok(dp)
}

/// Indices of the elements of the builtin M3.
pub mod m3 {
    pub const ONE: usize = 0;
    pub const ZERO: usize = 1;
    pub const EPS: usize = 2;
}

/// The homomorphism into M3 fixing `0` and `1` and sending everything else
/// to `ε`. Requires the fiber of `0` to be `{0, 1}`.
pub fn collapse_to_m3(alg: &IMonoid) -> Result<Vec<usize>, StructError> {
    require_mccarthy(alg)?;
    let zero = alg.zero();
    let b0: Vec<usize> = (0..alg.size()).filter(|&a| alg.mul(a, zero) == zero).collect();
    if b0.len() != 2 {
        return Err(StructError::BottomFiberNotTwo(b0.len()));
    }
    let f: Vec<usize> = (0..alg.size())
        .map(|a| {
            if a == alg.unit() {
                m3::ONE
            } else if a == zero {
                m3::ZERO
            } else {
                m3::EPS
            }
        })
        .collect();
    let target = builtin("M3").expect("builtin");
    if !is_homomorphism(alg, &target, &f) {
        return Err(StructError::Internal("collapse map is not a homomorphism".into()));
    }
    Ok(f)
}

/// Pairs of non-isomorphic McCarthy algebras of the same size with
/// isomorphic induced orders, for sizes up to `max_n`.
pub fn scan_order_conjecture(
    max_n: usize,
    config: &EnumConfig,
) -> Result<Vec<(IMonoid, IMonoid)>, EnumError> {
    let theory = TheorySpec::bundle(Bundle::McCarthyA);
    let mut out = Vec::new();
    for n in 1..=max_n {
        let models = enumerate_models_with(n, &theory, config)?;
        let posets: Vec<DecoratedPoset> = models
            .par_iter()
            .map(|m| decorated_poset(m).expect("enumerated models are McCarthy").undecorated())
            .collect();
        for a in 0..models.len() {
            for b in a + 1..models.len() {
                if decorated_isomorphic(&posets[a], &posets[b]) {
                    out.push((models[a].clone(), models[b].clone()));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::m3::{EPS, ONE, ZERO};
    use super::*;
    use crate::enumerate::isomorphic;
    use crate::structure::congruence_generated;

    fn b(name: &str) -> IMonoid {
        builtin(name).unwrap()
    }

    #[test]
    fn m3_order() {
        let o = induced_order(&b("M3")).unwrap();
        assert!(o.le(ZERO, ONE) && o.le(ZERO, EPS));
        assert!(!o.le(ONE, EPS) && !o.le(EPS, ONE));
    }

    #[test]
    fn sk_order_is_a_chain() {
        let o = induced_order(&b("SK")).unwrap();
        assert!(o.le(ZERO, EPS) && o.le(EPS, ONE));
    }

    #[test]
    fn r3_order_is_not_partial() {
        assert!(induced_order(&b("R3")).is_err());
        assert!(induced_order(&b("L3")).is_ok());
    }

    #[test]
    fn m3_skeleton_and_fibers() {
        let m = b("M3");
        let sk = skeleton(&m).unwrap();
        assert_eq!(sk.elements(), &[ZERO, EPS]);
        assert!(sk.le(ZERO, EPS));
        let fs = fibers(&m).unwrap();
        assert_eq!(fs[0].elements, vec![ONE, ZERO]);
        assert_eq!(fs[1].elements, vec![EPS]);
        let two = fibers(&b("2")).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].elements.len(), 2);
    }

    #[test]
    fn m3_kernels() {
        let m = b("M3");
        assert!(kernel_theta(&m, ZERO).unwrap().is_identity());
        assert!(kernel_theta(&m, EPS).unwrap().is_total());
        assert!(matches!(kernel_theta(&m, ONE), Err(StructError::NotSkeleton(_))));
        for i in [ZERO, EPS] {
            let top = m.join(i, m.unit());
            assert_eq!(
                kernel_theta(&m, i).unwrap(),
                congruence_generated(&m, &[(top, m.unit())]).unwrap()
            );
        }
    }

    #[test]
    fn m3_decomposition() {
        let d = decompose(&b("M3")).unwrap();
        assert_eq!(d.transition(ZERO, EPS), Some(&[EPS, EPS][..]));
        assert_eq!(d.transition(ZERO, ZERO), Some(&[ONE, ZERO][..]));
        let d = decompose(&b("2")).unwrap();
        assert_eq!(d.transitions.len(), 1);
    }

    #[test]
    fn m3_round_trip() {
        let m = b("M3");
        let dp = decorated_poset(&m).unwrap();
        assert_eq!(dp.skeleton(), vec![ZERO, EPS]);
        let r = reconstruct(&dp).unwrap();
        assert!(isomorphic(&r, &m));
    }

    #[test]
    fn collapse() {
        assert_eq!(collapse_to_m3(&b("M3")).unwrap(), vec![ONE, ZERO, EPS]);
        assert_eq!(collapse_to_m3(&b("2")).unwrap(), vec![ONE, ZERO]);
        let e = construct_i2_eps(&BotSemilattice::chain(2));
        let f = collapse_to_m3(&e).unwrap();
        assert!(f.contains(&EPS));
        let p = crate::structure::direct_product(&b("2"), &b("2"));
        assert!(matches!(collapse_to_m3(&p), Err(StructError::BottomFiberNotTwo(4))));
    }

    #[test]
    fn i2_skeleton_matches_input() {
        let sl = BotSemilattice::chain(3);
        let a = construct_i2(&sl);
        let sk = skeleton(&a).unwrap().to_semilattice();
        assert!(semilattice_isomorphism(&sk, &sl).is_some());
        let d = decompose(&a).unwrap();
        assert_eq!(d.fibers.len(), 3);
        assert!(d.fibers.iter().all(|f| f.elements.len() == 2));
    }
}
