//! Enumeration of finite models up to isomorphism, canonical forms and the
//! fine spectrum.

mod canon;
mod search;

use crate::algebra::IMonoid;
use crate::theory::{models, TheorySpec};
use canon::{canonical_labeling, Shape};
use search::{sort_laws, PartialLaw, Problem};
use std::collections::BTreeSet;
use std::sync::atomic::AtomicBool;
use std::time::{Duration, Instant};
use thiserror::Error;

/// Default time budget for one `(n, theory)` enumeration.
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(30 * 60);

/// Byte encoding `[n, inv.., mul..]` of the canonical representative of an
/// isomorphism class. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn of_normal(alg: &IMonoid) -> CanonicalForm {
        let mut bytes = Vec::with_capacity(1 + alg.size() * (alg.size() + 1));
        bytes.push(alg.size() as u8);
        bytes.extend(alg.inv_table().iter().map(|&x| x as u8));
        bytes.extend(alg.mul_table().iter().map(|&x| x as u8));
        CanonicalForm(bytes)
    }
}

/// The canonical representative of the isomorphism class of `alg`: unit at
/// 0, involution in normal form, least multiplication table.
pub fn canonical(alg: &IMonoid) -> IMonoid {
    assert!(alg.size() < u8::MAX as usize, "algebra too large");
    alg.relabel(&canonical_labeling(alg))
}

pub fn canonical_form(alg: &IMonoid) -> CanonicalForm {
    CanonicalForm::of_normal(&canonical(alg))
}

/// An isomorphism `a -> b` as the image of each element, if one exists.
pub fn isomorphism(a: &IMonoid, b: &IMonoid) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let la = canonical_labeling(a);
    let lb = canonical_labeling(b);
    if a.relabel(&la) != b.relabel(&lb) {
        return None;
    }
    let mut lb_inv = vec![0; b.size()];
    for (x, &c) in lb.iter().enumerate() {
        lb_inv[c] = x;
    }
    Some(la.iter().map(|&c| lb_inv[c]).collect())
}

pub fn isomorphic(a: &IMonoid, b: &IMonoid) -> bool {
    isomorphism(a, b).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("theory `{0}` contains a quasi-identity; only varieties can be enumerated")]
    NotAVariety(String),
    #[error("size must be at least 1")]
    EmptyUniverse,
    #[error("size {0} is too large to enumerate")]
    TooLarge(usize),
    #[error("time budget of {budget:?} exceeded at size {n}")]
    TimeBudget { n: usize, budget: Duration },
}

/// Search settings.
#[derive(Debug, Clone)]
pub struct EnumConfig {
    /// Reject non-canonical partial tables during the search. When off,
    /// every model is generated and duplicates are removed afterwards.
    pub orderly: bool,
    /// `None` means unlimited.
    pub time_budget: Option<Duration>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            orderly: true,
            time_budget: Some(DEFAULT_TIME_BUDGET),
        }
    }
}

/// One representative of each isomorphism class of size-`n` models of
/// `theory`, sorted by canonical form.
pub fn enumerate_models(n: usize, theory: &TheorySpec) -> Result<Vec<IMonoid>, EnumError> {
    enumerate_models_with(n, theory, &EnumConfig::default())
}

pub fn enumerate_models_with(
    n: usize,
    theory: &TheorySpec,
    config: &EnumConfig,
) -> Result<Vec<IMonoid>, EnumError> {
    if !theory.is_identity_only() {
        return Err(EnumError::NotAVariety(theory.name().to_string()));
    }
    if n == 0 {
        return Err(EnumError::EmptyUniverse);
    }
    if n > 64 {
        return Err(EnumError::TooLarge(n));
    }
    let mut laws: Vec<PartialLaw> = theory.identities().into_iter().map(PartialLaw::new).collect();
    sort_laws(&mut laws, n);
    let deadline = config.time_budget.map(|b| Instant::now() + b);
    let aborted = AtomicBool::new(false);
    let mut found: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut reps = Vec::new();
    for shape in Shape::all(n) {
        let inv: Vec<usize> = shape.inv.iter().map(|&x| x as usize).collect();
        let problem = Problem::new(shape, &laws, config.orderly, deadline, &aborted);
        let Some(tables) = search::run(&problem) else {
            return Err(EnumError::TimeBudget {
                n,
                budget: config.time_budget.unwrap_or_default(),
            });
        };
        for t in tables {
            let mul: Vec<usize> = t.iter().map(|&x| x as usize).collect();
            let alg = IMonoid::from_parts(n, 0, inv.clone(), mul);
            debug_assert!(alg.check_axioms().is_ok());
            if !models(&alg, theory) {
                continue;
            }
            let alg = if config.orderly { alg } else { canonical(&alg) };
            if found.insert(CanonicalForm::of_normal(&alg)) {
                reps.push(alg);
            }
        }
    }
    reps.sort_by_cached_key(CanonicalForm::of_normal);
    Ok(reps)
}

/// Model counts for every size up to a limit.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// `(n, count, seconds)` for each completed size.
    pub rows: Vec<(usize, usize, f64)>,
    /// Set when a size did not finish within the budget.
    pub incomplete: Option<usize>,
}

impl Spectrum {
    pub fn counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.1).collect()
    }
}

/// Counts of models of sizes `1..=max_n`. Stops at the first size that
/// exceeds the time budget.
pub fn fine_spectrum(max_n: usize, theory: &TheorySpec) -> Result<Spectrum, EnumError> {
    fine_spectrum_with(max_n, theory, &EnumConfig::default(), |_| {})
}

/// As [`fine_spectrum`], calling `on_row` as each size completes.
pub fn fine_spectrum_with(
    max_n: usize,
    theory: &TheorySpec,
    config: &EnumConfig,
    mut on_row: impl FnMut((usize, usize, f64)),
) -> Result<Spectrum, EnumError> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let start = Instant::now();
        match enumerate_models_with(n, theory, config) {
            Ok(ms) => {
                let row = (n, ms.len(), start.elapsed().as_secs_f64());
                on_row(row);
                rows.push(row);
            }
            Err(EnumError::TimeBudget { .. }) => {
                return Ok(Spectrum {
                    rows,
                    incomplete: Some(n),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Spectrum {
        rows,
        incomplete: None,
    })
}

/// Number of size-`n` i-monoids whose unit is not an involution fixed point.
pub fn count_subclassical(n: usize) -> Result<usize, EnumError> {
    let all = enumerate_models(n, &TheorySpec::bundle(crate::theory::Bundle::UBand))?;
    Ok(all.iter().filter(|a| a.is_subclassical()).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::theory::Bundle;

    fn uband() -> TheorySpec {
        TheorySpec::bundle(Bundle::UBand)
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let m3 = builtin("M3").unwrap();
        let f = canonical_form(&m3);
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert_eq!(canonical_form(&m3.relabel(&perm)), f);
        }
        assert_ne!(f, canonical_form(&builtin("M3OP").unwrap()));
    }

    #[test]
    fn canonical_two_has_unit_first() {
        let two = builtin("2").unwrap().relabel(&[1, 0]);
        let c = canonical(&two);
        assert_eq!(c.unit(), 0);
        assert_eq!(c.zero(), 1);
    }

    #[test]
    fn isomorphism_witness_is_a_homomorphism() {
        let a = builtin("L3S").unwrap();
        let b = a.relabel(&[2, 0, 1]);
        let f = isomorphism(&a, &b).unwrap();
        for x in 0..3 {
            assert_eq!(f[a.inv(x)], b.inv(f[x]));
            for y in 0..3 {
                assert_eq!(f[a.mul(x, y)], b.mul(f[x], f[y]));
            }
        }
        assert_eq!(isomorphism(&a, &a), Some(vec![0, 1, 2]));
        assert!(!isomorphic(&builtin("M3").unwrap(), &builtin("M3OP").unwrap()));
    }

    #[test]
    fn three_element_ubands_with_trivial_involution() {
        let t = TheorySpec::from_keys("t", &["trivinv"]).unwrap();
        let ms = enumerate_models(3, &t).unwrap();
        assert_eq!(ms.len(), 3);
        for name in ["C3", "L3", "R3"] {
            let b = builtin(name).unwrap();
            assert!(ms.iter().any(|m| isomorphic(m, &b)), "{name}");
        }
    }

    #[test]
    fn three_element_counts() {
        let ms = enumerate_models(3, &uband()).unwrap();
        assert_eq!(ms.len(), 10);
        assert_eq!(ms.iter().filter(|m| m.is_subclassical()).count(), 4);
        assert_eq!(count_subclassical(1).unwrap(), 0);
        assert_eq!(count_subclassical(2).unwrap(), 1);
        assert_eq!(count_subclassical(3).unwrap(), 4);
    }

    #[test]
    fn small_mccarthy_spectrum() {
        let spec = fine_spectrum(6, &TheorySpec::bundle(Bundle::McCarthyA)).unwrap();
        assert_eq!(spec.counts(), vec![1, 1, 1, 2, 1, 3]);
        let m3 = &enumerate_models(3, &TheorySpec::bundle(Bundle::McCarthyA)).unwrap()[0];
        assert!(isomorphic(m3, &builtin("M3").unwrap()));
    }

    #[test]
    fn splitting_theory_has_only_the_trivial_model() {
        let t = TheorySpec::from_keys("split", &["splitting"]).unwrap();
        assert_eq!(enumerate_models(1, &t).unwrap().len(), 1);
    }

    #[test]
    fn orderly_and_posthoc_agree() {
        let post = EnumConfig {
            orderly: false,
            time_budget: None,
        };
        for n in 1..=4 {
            let a = enumerate_models(n, &uband()).unwrap();
            let b = enumerate_models_with(n, &uband(), &post).unwrap();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn emitted_models_are_canonical() {
        for m in enumerate_models(4, &uband()).unwrap() {
            assert_eq!(canonical(&m), m);
        }
    }

    #[test]
    fn quasi_identities_are_refused() {
        let t = TheorySpec::from_keys("sub", &["subclassical"]).unwrap();
        assert!(matches!(enumerate_models(3, &t), Err(EnumError::NotAVariety(_))));
    }
}
