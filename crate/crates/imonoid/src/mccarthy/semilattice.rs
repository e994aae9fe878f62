//! ⊥-semilattices and the I[2] construction.

use crate::algebra::IMonoid;
use crate::structure::{quotient, Congruence};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilatticeError {
    #[error("join table must be {0}x{0}")]
    Shape(usize),
    #[error("entry {0} out of range")]
    OutOfRange(usize),
    #[error("join is not idempotent at {0}")]
    NotIdempotent(usize),
    #[error("join is not commutative at ({0},{1})")]
    NotCommutative(usize, usize),
    #[error("join is not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("{bottom} is not a unit for join at {at}")]
    BottomNotUnit { bottom: usize, at: usize },
}

/// A finite join-semilattice with least element.
#[derive(Debug, Clone)]
pub struct BotSemilattice {
    n: usize,
    join: Vec<usize>,
    bottom: usize,
    name: Option<String>,
}

impl PartialEq for BotSemilattice {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.join == other.join && self.bottom == other.bottom
    }
}

impl Eq for BotSemilattice {}

impl BotSemilattice {
    pub fn new(join: Vec<Vec<usize>>, bottom: usize) -> Result<BotSemilattice, SemilatticeError> {
        let n = join.len();
        if n == 0 || join.iter().any(|r| r.len() != n) {
            return Err(SemilatticeError::Shape(n));
        }
        if bottom >= n {
            return Err(SemilatticeError::OutOfRange(bottom));
        }
        if let Some(&x) = join.iter().flatten().find(|&&x| x >= n) {
            return Err(SemilatticeError::OutOfRange(x));
        }
        let sl = BotSemilattice {
            n,
            join: join.into_iter().flatten().collect(),
            bottom,
            name: None,
        };
        sl.check()?;
        Ok(sl)
    }

    fn check(&self) -> Result<(), SemilatticeError> {
        let n = self.n;
        for a in 0..n {
            if self.join(a, a) != a {
                return Err(SemilatticeError::NotIdempotent(a));
            }
            if self.join(self.bottom, a) != a {
                return Err(SemilatticeError::BottomNotUnit {
                    bottom: self.bottom,
                    at: a,
                });
            }
            for b in 0..n {
                if self.join(a, b) != self.join(b, a) {
                    return Err(SemilatticeError::NotCommutative(a, b));
                }
                for c in 0..n {
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c)) {
                        return Err(SemilatticeError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> BotSemilattice {
        let join = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        BotSemilattice::new(join, 0).expect("chains are semilattices")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    /// The semilattice with a new greatest element `n` adjoined.
    pub fn with_top(&self) -> BotSemilattice {
        let n = self.n;
        let top = n;
        let join = (0..=n)
            .map(|a| {
                (0..=n)
                    .map(|b| if a == top || b == top { top } else { self.join(a, b) })
                    .collect()
            })
            .collect();
        BotSemilattice::new(join, self.bottom).expect("adjoining a top preserves the axioms")
    }

    /// The image of this semilattice under the bijection `perm`.
    pub fn relabel(&self, perm: &[usize]) -> BotSemilattice {
        let n = self.n;
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                join[perm[a]][perm[b]] = perm[self.join(a, b)];
            }
        }
        BotSemilattice::new(join, perm[self.bottom]).expect("relabeling preserves the axioms")
    }
}

/// An isomorphism `a -> b`, if one exists.
pub fn semilattice_isomorphism(a: &BotSemilattice, b: &BotSemilattice) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[a.bottom] = b.bottom;
    used[b.bottom] = true;
    fn go(a: &BotSemilattice, b: &BotSemilattice, f: &mut [usize], used: &mut [bool], x: usize) -> bool {
        let n = a.size();
        if x == n {
            return true;
        }
        if f[x] != usize::MAX {
            return go(a, b, f, used, x + 1);
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            f[x] = v;
            let ok = (0..n).all(|y| {
                f[y] == usize::MAX
                    || f[a.join(x, y)] == usize::MAX
                    || f[a.join(x, y)] == b.join(v, f[y])
            });
            if ok {
                used[v] = true;
                if go(a, b, f, used, x + 1) {
                    return true;
                }
                used[v] = false;
            }
            f[x] = usize::MAX;
        }
        false
    }
    if !go(a, b, &mut f, &mut used, 0) {
        return None;
    }
    let full = (0..n).all(|x| (0..n).all(|y| f[a.join(x, y)] == b.join(f[x], f[y])));
    full.then_some(f)
}

/// The McCarthy algebra whose fibers are all two-element, built over `sl`.
///
/// Element `2i + x` is `x_i` for `x ∈ {0, 1}`. The product `x_i * y_j` is
/// `0_i` when `x = 0` and `y_{i ∨ j}` when `x = 1`; the involution flips
/// `x`; the unit is `1_⊥`.
pub fn construct_i2(sl: &BotSemilattice) -> IMonoid {
    let k = sl.size();
    let n = 2 * k;
    let elem = |x: usize, i: usize| 2 * i + x;
    let mut inv = Vec::with_capacity(n);
    for a in 0..n {
        inv.push(a ^ 1);
    }
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        let (i, x) = (a / 2, a % 2);
        for b in 0..n {
            let (j, y) = (b / 2, b % 2);
            mul.push(if x == 0 { a } else { elem(y, sl.join(i, j)) });
        }
    }
    let names = (0..n).map(|a| format!("{}_{}", a % 2, a / 2)).collect();
    let mut alg = IMonoid::from_parts(n, elem(1, sl.bottom()), inv, mul).with_element_names(names);
    alg.set_name(format!("I2({})", sl.name().unwrap_or("sl")));
    alg
}

/// `construct_i2` over `sl` with a top adjoined, with the top fiber
/// collapsed to a single fixed point `ε`.
pub fn construct_i2_eps(sl: &BotSemilattice) -> IMonoid {
    let top_sl = sl.with_top();
    let big = construct_i2(&top_sl);
    let top = sl.size();
    let labels: Vec<usize> = (0..big.size())
        .map(|a| if a / 2 == top { 2 * top } else { a })
        .collect();
    let cong = Congruence::from_labels(&labels);
    let (mut q, proj) = quotient(&big, &cong).expect("the top fiber is a congruence class");
    let big_names = big.element_names().expect("I2 names its elements");
    let mut names = vec![String::new(); q.size()];
    for (a, &b) in proj.iter().enumerate() {
        names[b] = if a / 2 == top { "ε".to_string() } else { big_names[a].clone() };
    }
    q.set_element_names(Some(names));
    q.set_name(format!("I2eps({})", sl.name().unwrap_or("sl")));
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::enumerate::isomorphic;
    use crate::theory::{models, Bundle, TheorySpec};

    #[test]
    fn validation_rejects_non_semilattices() {
        assert!(matches!(
            BotSemilattice::new(vec![vec![0, 0], vec![0, 1]], 0),
            Err(SemilatticeError::BottomNotUnit { .. })
        ));
        assert!(matches!(
            BotSemilattice::new(vec![vec![0, 1], vec![0, 1]], 0),
            Err(SemilatticeError::NotCommutative(0, 1))
        ));
        assert!(BotSemilattice::new(vec![vec![0, 1], vec![1, 1]], 0).is_ok());
    }

    #[test]
    fn point_gives_two() {
        let two = construct_i2(&BotSemilattice::chain(1));
        assert!(isomorphic(&two, &builtin("2").unwrap()));
    }

    #[test]
    fn point_with_eps_gives_m3() {
        let m = construct_i2_eps(&BotSemilattice::chain(1));
        assert_eq!(m.size(), 3);
        assert!(isomorphic(&m, &builtin("M3").unwrap()));
    }

    #[test]
    fn chains_give_mccarthy_algebras() {
        let mc = TheorySpec::bundle(Bundle::McCarthyA);
        for k in 1..=4 {
            let a = construct_i2(&BotSemilattice::chain(k));
            assert!(a.check_axioms().is_ok());
            assert!(models(&a, &mc), "chain {k}");
            let e = construct_i2_eps(&BotSemilattice::chain(k));
            assert!(e.check_axioms().is_ok());
            assert!(models(&e, &mc), "chain {k} with eps");
        }
    }

    #[test]
    fn isomorphism_of_semilattices() {
        let diamond = BotSemilattice::new(
            vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]],
            0,
        )
        .unwrap();
        let swapped = diamond.relabel(&[0, 2, 1, 3]);
        assert!(semilattice_isomorphism(&diamond, &swapped).is_some());
        assert!(semilattice_isomorphism(&diamond, &BotSemilattice::chain(4)).is_none());
    }
}
