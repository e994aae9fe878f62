//! Decorated posets: the induced order of a McCarthy algebra with its
//! skeleton marked, and the reconstruction of the algebra from it.

use crate::algebra::IMonoid;
use crate::theory::{models, Bundle, TheorySpec};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("order relation must be {0}x{0} with a matching skeleton vector")]
    Shape(usize),
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive at ({0},{1},{2})")]
    NotTransitive(usize, usize, usize),
    #[error("no least element")]
    NoLeastElement,
    #[error("least element {0} is not in the skeleton")]
    BottomNotInSkeleton(usize),
    #[error("skeleton is not convex: {0} <= {1} <= {2} with {1} unmarked")]
    SkeletonNotConvex(usize, usize, usize),
}

/// A partial order on `{0, ..., n-1}` with a marked subset.
#[derive(Debug, Clone)]
pub struct DecoratedPoset {
    n: usize,
    le: Vec<bool>,
    skeleton: Vec<bool>,
    name: Option<String>,
    labels: Option<Vec<String>>,
}

impl PartialEq for DecoratedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.le == other.le && self.skeleton == other.skeleton
    }
}

impl Eq for DecoratedPoset {}

fn check_partial_order(n: usize, le: &[bool]) -> Result<(), PosetError> {
    let at = |a: usize, b: usize| le[a * n + b];
    for a in 0..n {
        if !at(a, a) {
            return Err(PosetError::NotReflexive(a));
        }
        for b in 0..n {
            if a < b && at(a, b) && at(b, a) {
                return Err(PosetError::NotAntisymmetric(a, b));
            }
            if !at(a, b) {
                continue;
            }
            for c in 0..n {
                if at(b, c) && !at(a, c) {
                    return Err(PosetError::NotTransitive(a, b, c));
                }
            }
        }
    }
    Ok(())
}

impl DecoratedPoset {
    /// Checks that `le` is a partial order with a least element, and that
    /// the skeleton contains it and is convex.
    pub fn new(le: Vec<Vec<bool>>, skeleton: Vec<bool>) -> Result<DecoratedPoset, PosetError> {
        let n = le.len();
        if n == 0 || skeleton.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(PosetError::Shape(n));
        }
        let le: Vec<bool> = le.into_iter().flatten().collect();
        check_partial_order(n, &le)?;
        let dp = DecoratedPoset {
            n,
            le,
            skeleton,
            name: None,
            labels: None,
        };
        let bottom = dp.least().ok_or(PosetError::NoLeastElement)?;
        if !dp.skeleton[bottom] {
            return Err(PosetError::BottomNotInSkeleton(bottom));
        }
        for a in dp.skeleton() {
            for c in dp.skeleton() {
                if let Some(b) = (0..n).find(|&b| !dp.skeleton[b] && dp.le(a, b) && dp.le(b, c)) {
                    return Err(PosetError::SkeletonNotConvex(a, b, c));
                }
            }
        }
        Ok(dp)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn in_skeleton(&self, a: usize) -> bool {
        self.skeleton[a]
    }

    /// Marked elements in increasing order.
    pub fn skeleton(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.skeleton[a]).collect()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> DecoratedPoset {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.n).find(|&a| (0..self.n).all(|b| self.le(a, b)))
    }

    /// The greatest element of `xs`, if there is one.
    pub fn max_of(&self, xs: &[usize]) -> Option<usize> {
        xs.iter().copied().find(|&m| xs.iter().all(|&x| self.le(x, m)))
    }

    /// The least element of `xs`, if there is one.
    pub fn min_of(&self, xs: &[usize]) -> Option<usize> {
        xs.iter().copied().find(|&m| xs.iter().all(|&x| self.le(m, x)))
    }

    pub fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let ub: Vec<usize> = (0..self.n).filter(|&c| self.le(a, c) && self.le(b, c)).collect();
        self.min_of(&ub)
    }

    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let lb: Vec<usize> = (0..self.n).filter(|&c| self.le(c, a) && self.le(c, b)).collect();
        self.max_of(&lb)
    }

    /// Pairs `(a, b)` with `b` covering `a`, in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The same order with the skeleton forgotten (every element marked).
    pub fn undecorated(&self) -> DecoratedPoset {
        DecoratedPoset {
            skeleton: vec![true; self.n],
            ..self.clone()
        }
    }

    /// Graphviz rendering of the Hasse diagram. Skeleton elements are drawn
    /// as open circles, the others filled.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let name = self.name.as_deref().unwrap_or("poset");
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        s.push_str("  rankdir=BT;\n");
        s.push_str("  node [shape=circle, width=0.3, fixedsize=true];\n");
        for a in 0..self.n {
            let style = if self.skeleton[a] {
                "style=solid"
            } else {
                "style=filled, fillcolor=black, fontcolor=white"
            };
            let _ = writeln!(s, "  n{a} [label=\"{}\", {style}];", self.label(a).replace('"', "'"));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b} [arrowhead=none];");
        }
        s.push_str("}\n");
        s
    }
}

/// An order isomorphism `a -> b` preserving skeleton membership.
pub fn decorated_isomorphism(a: &DecoratedPoset, b: &DecoratedPoset) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    let n = a.n;
    let sig = |p: &DecoratedPoset, x: usize| {
        let below = (0..n).filter(|&y| p.le(y, x)).count();
        let above = (0..n).filter(|&y| p.le(x, y)).count();
        (p.skeleton[x], below, above)
    };
    let sa: Vec<_> = (0..n).map(|x| sig(a, x)).collect();
    let sb: Vec<_> = (0..n).map(|x| sig(b, x)).collect();
    let (mut ka, mut kb) = (sa.clone(), sb.clone());
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (sa.iter().filter(|s| **s == sa[x]).count(), x));
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: &DecoratedPoset,
        b: &DecoratedPoset,
        sa: &[(bool, usize, usize)],
        sb: &[(bool, usize, usize)],
        order: &[usize],
        k: usize,
        f: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(k) else {
            return true;
        };
        for v in 0..a.n {
            if used[v] || sa[x] != sb[v] {
                continue;
            }
            let ok = order[..k]
                .iter()
                .all(|&y| a.le(x, y) == b.le(v, f[y]) && a.le(y, x) == b.le(f[y], v));
            if !ok {
                continue;
            }
            f[x] = v;
            used[v] = true;
            if go(a, b, sa, sb, order, k + 1, f, used) {
                return true;
            }
            used[v] = false;
            f[x] = usize::MAX;
        }
        false
    }
    go(a, b, &sa, &sb, &order, 0, &mut f, &mut used).then_some(f)
}

pub fn decorated_isomorphic(a: &DecoratedPoset, b: &DecoratedPoset) -> bool {
    decorated_isomorphism(a, b).is_some()
}

/// Whether the underlying orders are isomorphic, ignoring the skeleton.
pub fn order_isomorphic(a: &DecoratedPoset, b: &DecoratedPoset) -> bool {
    decorated_isomorphic(&a.undecorated(), &b.undecorated())
}

/// The stage of reconstruction at which a decorated poset was found not to
/// come from a McCarthy algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// The fiber bottom `max{i ∈ SL : i ≤ x}`.
    FiberBottom,
    /// The fiber top `max{y : 0̂_y = 0̂_x}`.
    FiberTop,
    /// Each fiber must be a Boolean lattice, and the fiber of `0` must
    /// contain a distinct `1` unless the poset is a single point.
    FiberBoolean,
    /// The complement `max{y ∈ B : x ∧ y = 0̂_x}`.
    Complement,
    /// The join of two skeleton elements.
    SkeletonJoin,
    /// The action `a ⋆ j`.
    Action,
    /// `a·1̂_j` as the complement of `a' ∨ 0̂_{a⋆j}`.
    RightLocalUnit,
    /// `1̂_i·b = b·1̂_i ∨ 0̂_{i∨j}`.
    LeftLocalUnit,
    /// `a·b` as the meet of `a·1̂_j` and `1̂_i·b`.
    Meet,
    /// The assembled tables are not a McCarthy algebra.
    Result,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a McCarthy decorated poset: {step:?} step fails at {at:?}")]
pub struct ReconstructError {
    pub step: Step,
    pub at: Vec<usize>,
}

fn fail<T>(step: Step, at: &[usize]) -> Result<T, ReconstructError> {
    Err(ReconstructError {
        step,
        at: at.to_vec(),
    })
}

/// Operations of a McCarthy algebra recovered from its decorated poset.
#[derive(Debug, Clone)]
pub struct PosetOps<'a> {
    dp: &'a DecoratedPoset,
    zero_hat: Vec<usize>,
    one_hat: Vec<usize>,
    inv: Vec<usize>,
}

impl<'a> PosetOps<'a> {
    /// Locates fibers, their bounds and complements.
    pub fn new(dp: &'a DecoratedPoset) -> Result<PosetOps<'a>, ReconstructError> {
        let n = dp.size();
        let skel = dp.skeleton();
        let mut zero_hat = vec![0; n];
        for x in 0..n {
            let below: Vec<usize> = skel.iter().copied().filter(|&i| dp.le(i, x)).collect();
            zero_hat[x] = match dp.max_of(&below) {
                Some(i) => i,
                None => return fail(Step::FiberBottom, &[x]),
            };
        }
        let mut one_hat = vec![0; n];
        for x in 0..n {
            let fiber: Vec<usize> = (0..n).filter(|&y| zero_hat[y] == zero_hat[x]).collect();
            one_hat[x] = match dp.max_of(&fiber) {
                Some(t) => t,
                None => return fail(Step::FiberTop, &[x]),
            };
        }
        let bottom = dp.least().expect("validated posets have a least element");
        if n > 1 && one_hat[bottom] == bottom {
            return fail(Step::FiberBoolean, &[bottom]);
        }
        for &i in &skel {
            let fiber: Vec<usize> = (0..n).filter(|&y| zero_hat[y] == i).collect();
            if !fiber.len().is_power_of_two() {
                return fail(Step::FiberBoolean, &[i]);
            }
            for &x in &fiber {
                for &y in &fiber {
                    let closed = |z: Option<usize>| z.is_some_and(|z| zero_hat[z] == i);
                    if !closed(dp.glb(x, y)) || !closed(dp.lub(x, y)) {
                        return fail(Step::FiberBoolean, &[x, y]);
                    }
                }
            }
        }
        let mut inv = vec![0; n];
        for x in 0..n {
            let i = zero_hat[x];
            let cands: Vec<usize> = (0..n)
                .filter(|&y| zero_hat[y] == i && dp.glb(x, y) == Some(i))
                .collect();
            inv[x] = match dp.max_of(&cands) {
                Some(y) if dp.lub(x, y) == Some(one_hat[x]) => y,
                _ => return fail(Step::Complement, &[x]),
            };
        }
        Ok(PosetOps {
            dp,
            zero_hat,
            one_hat,
            inv,
        })
    }

    pub fn zero(&self) -> usize {
        self.dp.least().expect("validated posets have a least element")
    }

    pub fn unit(&self) -> usize {
        self.one_hat[self.zero()]
    }

    pub fn zero_hat(&self, x: usize) -> usize {
        self.zero_hat[x]
    }

    pub fn one_hat(&self, x: usize) -> usize {
        self.one_hat[x]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `a ⋆ j = max{k ∈ SL : i ≤ k ≤ i ∨ j, a' ≤ 1̂_k}` where `i = 0̂_a`.
    pub fn action(&self, a: usize, j: usize) -> Result<usize, ReconstructError> {
        let dp = self.dp;
        let i = self.zero_hat[a];
        let Some(ij) = dp.lub(i, j).filter(|&k| dp.in_skeleton(k)) else {
            return fail(Step::SkeletonJoin, &[i, j]);
        };
        let cands: Vec<usize> = dp
            .skeleton()
            .into_iter()
            .filter(|&k| dp.le(i, k) && dp.le(k, ij) && dp.le(self.inv[a], self.one_hat[k]))
            .collect();
        match dp.max_of(&cands) {
            Some(k) => Ok(k),
            None => fail(Step::Action, &[a, j]),
        }
    }

    /// `a·1̂_j`, the complement of `a' ∨ 0̂_{a⋆j}`.
    pub fn times_local_unit(&self, a: usize, j: usize) -> Result<usize, ReconstructError> {
        let k = self.action(a, j)?;
        match self.dp.lub(self.inv[a], k) {
            Some(z) if self.zero_hat[z] == k => Ok(self.inv[z]),
            _ => fail(Step::RightLocalUnit, &[a, j]),
        }
    }

    /// `a·b` located through the six steps.
    pub fn mul(&self, a: usize, b: usize) -> Result<usize, ReconstructError> {
        let dp = self.dp;
        let (i, j) = (self.zero_hat[a], self.zero_hat[b]);
        let Some(ij) = dp.lub(i, j).filter(|&k| dp.in_skeleton(k)) else {
            return fail(Step::SkeletonJoin, &[i, j]);
        };
        let a1j = self.times_local_unit(a, j)?;
        let b1i = self.times_local_unit(b, i)?;
        let i1b = match dp.lub(b1i, ij) {
            Some(z) if self.zero_hat[z] == ij => z,
            _ => return fail(Step::LeftLocalUnit, &[a, b]),
        };
        match dp.glb(a1j, i1b) {
            Some(z) => Ok(z),
            None => fail(Step::Meet, &[a, b]),
        }
    }
}

/// Rebuilds the McCarthy algebra with the given decorated poset.
pub fn reconstruct(dp: &DecoratedPoset) -> Result<IMonoid, ReconstructError> {
    let ops = PosetOps::new(dp)?;
    let n = dp.size();
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(ops.mul(a, b)?);
        }
    }
    let rows: Vec<Vec<usize>> = mul.chunks(n).map(|r| r.to_vec()).collect();
    let Ok(mut alg) = crate::algebra::validate(n, ops.unit(), &ops.inv, &rows) else {
        return fail(Step::Result, &[]);
    };
    if !models(&alg, &TheorySpec::bundle(Bundle::McCarthyA)) {
        return fail(Step::Result, &[]);
    }
    if let Some(name) = dp.name() {
        alg.set_name(name);
    }
    if let Some(labels) = dp.labels() {
        alg.set_element_names(Some(labels.to_vec()));
    }
    Ok(alg)
}
