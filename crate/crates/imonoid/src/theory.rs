//! Theories as lists of catalog keys, and membership tests.

use crate::algebra::IMonoid;
use crate::catalog::{self, lookup};
use crate::eval::{check_law, CheckError, Verdict, DEFAULT_BUDGET};
use crate::parse::{parse_law, ParseError};
use crate::term::{Identity, Law};
use std::fmt;
use thiserror::Error;

/// Predefined theories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bundle {
    /// No extra laws: all i-monoids.
    UBand,
    /// Left-distributivity, left-decomposition, left-bounded, local-unit
    /// commutativity.
    McCarthyA,
    /// Left-divisibility, right-orthodistributivity, left-absorption, local
    /// commutativity.
    McCarthyB,
    /// Right-paradistributivity, left-bounded, wk-commutativity.
    McCarthyC,
    /// Konikowska's postulates.
    Konikowska,
    Boolean,
    /// Involutive bisemilattices.
    Ibsl,
    Kleene,
    /// Mirror image of [`Bundle::McCarthyA`], axiomatizing the opposites of
    /// McCarthy algebras.
    McCarthyOp,
}

impl Bundle {
    pub const ALL: [Bundle; 9] = [
        Bundle::UBand,
        Bundle::McCarthyA,
        Bundle::McCarthyB,
        Bundle::McCarthyC,
        Bundle::Konikowska,
        Bundle::Boolean,
        Bundle::Ibsl,
        Bundle::Kleene,
        Bundle::McCarthyOp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bundle::UBand => "uband",
            Bundle::McCarthyA => "mccarthy",
            Bundle::McCarthyB => "mccarthy-b",
            Bundle::McCarthyC => "mccarthy-c",
            Bundle::Konikowska => "konikowska",
            Bundle::Boolean => "boolean",
            Bundle::Ibsl => "ibsl",
            Bundle::Kleene => "kleene",
            Bundle::McCarthyOp => "mccarthy-op",
        }
    }

    pub fn from_name(s: &str) -> Option<Bundle> {
        let s = s.to_ascii_lowercase();
        if s == "mccarthy-a" {
            return Some(Bundle::McCarthyA);
        }
        Bundle::ALL.into_iter().find(|b| b.name() == s)
    }

    pub fn keys(self) -> Vec<&'static str> {
        match self {
            Bundle::UBand => vec![],
            Bundle::McCarthyA => vec!["leftdist", "localdecomp", "leftbounded", "comlocalunits"],
            Bundle::McCarthyB => vec!["divis", "orthodist", "leftabs", "localcomm"],
            Bundle::McCarthyC => vec!["paradist", "leftbounded", "wkcomm"],
            Bundle::Konikowska => catalog::konikowska_keys(),
            Bundle::Boolean => vec!["comm", "leftabs", "leftdist", "orthocomp"],
            Bundle::Ibsl => vec!["comm", "divis"],
            Bundle::Kleene => vec!["comm", "leftdist", "leftbounded", "kleene"],
            Bundle::McCarthyOp => vec![
                "leftdist-op",
                "localdecomp-op",
                "leftbounded-op",
                "comlocalunits-op",
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("cannot parse law `{src}`: {err}")]
    Parse { src: String, err: ParseError },
}

/// A named list of laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheorySpec {
    name: String,
    laws: Vec<(String, Law)>,
}

impl TheorySpec {
    pub fn bundle(b: Bundle) -> TheorySpec {
        TheorySpec::from_keys(b.name(), &b.keys()).expect("bundle keys resolve")
    }

    pub fn from_keys(name: &str, keys: &[&str]) -> Result<TheorySpec, TheoryError> {
        let mut laws = Vec::new();
        for key in keys {
            let entry = lookup(key).ok_or_else(|| TheoryError::UnknownKey(key.to_string()))?;
            laws.push((entry.key.clone(), entry.law.clone()));
        }
        Ok(TheorySpec {
            name: name.to_string(),
            laws,
        })
    }

    /// Resolves a bundle name, or a comma-separated list of catalog keys
    /// and literal laws (anything containing `=`).
    pub fn resolve(spec: &str) -> Result<TheorySpec, TheoryError> {
        if let Some(b) = Bundle::from_name(spec.trim()) {
            return Ok(TheorySpec::bundle(b));
        }
        let mut theory = TheorySpec {
            name: spec.trim().to_string(),
            laws: Vec::new(),
        };
        for part in split_top_level(spec) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            if let Some(b) = Bundle::from_name(part) {
                theory.laws.extend(TheorySpec::bundle(b).laws);
            } else if part.contains('=') {
                let law = parse_law(part).map_err(|err| TheoryError::Parse {
                    src: part.to_string(),
                    err,
                })?;
                theory.laws.push((part.to_string(), law));
            } else {
                let entry = lookup(part).ok_or_else(|| TheoryError::UnknownKey(part.to_string()))?;
                theory.laws.push((entry.key.clone(), entry.law.clone()));
            }
        }
        Ok(theory)
    }

    /// Adds a law under the given key.
    pub fn with_law(mut self, key: &str, law: Law) -> TheorySpec {
        self.laws.push((key.to_string(), law));
        self
    }

    /// Adds a catalog entry.
    pub fn with_key(self, key: &str) -> Result<TheorySpec, TheoryError> {
        let entry = lookup(key).ok_or_else(|| TheoryError::UnknownKey(key.to_string()))?;
        Ok(self.with_law(&entry.key, entry.law.clone()))
    }

    pub fn named(mut self, name: &str) -> TheorySpec {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn keys(&self) -> Vec<&str> {
        self.laws.iter().map(|(k, _)| k.as_str()).collect()
    }

    pub fn laws(&self) -> &[(String, Law)] {
        &self.laws
    }

    /// True when every law is an identity, so the class is a variety.
    pub fn is_identity_only(&self) -> bool {
        self.laws.iter().all(|(_, l)| matches!(l, Law::Identity(_)))
    }

    pub fn identities(&self) -> Vec<&Identity> {
        self.laws.iter().filter_map(|(_, l)| l.as_identity()).collect()
    }
}

impl fmt::Display for TheorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Splits on commas that are not part of a quasi-identity's premise list.
fn split_top_level(spec: &str) -> Vec<String> {
    // Quasi-identities use commas between premises, so they must be given
    // on their own.
    if spec.contains("=>") {
        return vec![spec.to_string()];
    }
    spec.split(';')
        .flat_map(|s| s.split(','))
        .map(str::to_string)
        .collect()
}

/// Result of checking a whole theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoryVerdict {
    Holds,
    Fails { key: String, witness: Vec<usize> },
}

impl TheoryVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, TheoryVerdict::Holds)
    }
}

/// Checks every law of `theory`, cheapest first, and stops at the first
/// failure.
pub fn satisfies_theory(alg: &IMonoid, theory: &TheorySpec) -> Result<TheoryVerdict, CheckError> {
    satisfies_theory_with_budget(alg, theory, DEFAULT_BUDGET)
}

pub fn satisfies_theory_with_budget(
    alg: &IMonoid,
    theory: &TheorySpec,
    budget: u64,
) -> Result<TheoryVerdict, CheckError> {
    let mut order: Vec<&(String, Law)> = theory.laws.iter().collect();
    order.sort_by_key(|(_, law)| law.var_count());
    for (key, law) in order {
        if let Verdict::Fails(witness) = check_law(alg, law, budget)? {
            return Ok(TheoryVerdict::Fails {
                key: key.clone(),
                witness,
            });
        }
    }
    Ok(TheoryVerdict::Holds)
}

/// Convenience wrapper for sizes where the budget cannot be hit.
pub fn models(alg: &IMonoid, theory: &TheorySpec) -> bool {
    satisfies_theory(alg, theory)
        .expect("theory check within budget")
        .holds()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McCarthyError {
    #[error("not a McCarthy algebra: fails {key}")]
    NotMcCarthy { key: String, witness: Vec<usize> },
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Errors unless `alg` is a McCarthy algebra.
pub fn require_mccarthy(alg: &IMonoid) -> Result<(), McCarthyError> {
    match satisfies_theory(alg, &TheorySpec::bundle(Bundle::McCarthyA))? {
        TheoryVerdict::Holds => Ok(()),
        TheoryVerdict::Fails { key, witness } => Err(McCarthyError::NotMcCarthy { key, witness }),
    }
}

/// Whether a McCarthy algebra is Boolean, decided by right-boundedness
/// `x*0 = 0`.
pub fn is_boolean(alg: &IMonoid) -> Result<bool, McCarthyError> {
    require_mccarthy(alg)?;
    let zero = alg.zero();
    Ok((0..alg.size()).all(|x| alg.mul(x, zero) == zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    fn theory(b: Bundle) -> TheorySpec {
        TheorySpec::bundle(b)
    }

    #[test]
    fn bundles_are_varieties() {
        for b in Bundle::ALL {
            assert!(theory(b).is_identity_only(), "{}", b.name());
            assert_eq!(Bundle::from_name(b.name()), Some(b));
        }
    }

    #[test]
    fn m3_is_mccarthy_under_every_basis() {
        let m3 = builtin("M3").unwrap();
        for b in [Bundle::McCarthyA, Bundle::McCarthyB, Bundle::McCarthyC, Bundle::Konikowska] {
            assert!(models(&m3, &theory(b)), "{}", b.name());
        }
        assert!(!models(&m3, &theory(Bundle::McCarthyOp)));
        assert!(models(&builtin("M3OP").unwrap(), &theory(Bundle::McCarthyOp)));
    }

    #[test]
    fn wk_fails_left_absorption() {
        let wk = builtin("WK").unwrap();
        let v = satisfies_theory(&wk, &theory(Bundle::McCarthyA)).unwrap();
        assert!(!v.holds());
        let abs = TheorySpec::from_keys("abs", &["leftabs"]).unwrap();
        assert!(!models(&wk, &abs));
    }

    #[test]
    fn two_is_boolean() {
        let two = builtin("2").unwrap();
        assert!(models(&two, &theory(Bundle::Boolean)));
        assert!(is_boolean(&two).unwrap());
        assert!(!is_boolean(&builtin("M3").unwrap()).unwrap());
        assert!(matches!(
            is_boolean(&builtin("WK").unwrap()),
            Err(McCarthyError::NotMcCarthy { .. })
        ));
    }

    #[test]
    fn cheapest_laws_are_checked_first() {
        let wk = builtin("WK").unwrap();
        let t = TheorySpec::from_keys("t", &["leftabs", "splitting"]).unwrap();
        match satisfies_theory(&wk, &t).unwrap() {
            TheoryVerdict::Fails { key, .. } => assert_eq!(key, "splitting"),
            TheoryVerdict::Holds => panic!("WK is not split"),
        }
    }

    #[test]
    fn resolve_accepts_names_keys_and_literals() {
        assert_eq!(TheorySpec::resolve("mccarthy").unwrap(), theory(Bundle::McCarthyA));
        let t = TheorySpec::resolve("comm, leftabs").unwrap();
        assert_eq!(t.keys(), vec!["comm", "leftabs"]);
        let t = TheorySpec::resolve("uband, x = x'").unwrap();
        assert_eq!(t.laws().len(), 1);
        let t = TheorySpec::resolve("1 = 0 => x = y").unwrap();
        assert!(!t.is_identity_only());
        assert!(matches!(
            TheorySpec::resolve("nosuchkey"),
            Err(TheoryError::UnknownKey(_))
        ));
    }

    #[test]
    fn named_three_element_facts() {
        let id = |k: &str| TheorySpec::from_keys(k, &[k]).unwrap();
        let l3s = builtin("L3S").unwrap();
        let r3s = builtin("R3S").unwrap();
        let c3s = builtin("C3S").unwrap();
        assert!(models(&l3s, &id("leftdist")));
        assert!(models(&l3s, &id("joinmeet")));
        assert!(models(&r3s, &id("rightdist")));
        assert!(models(&r3s, &id("joinmeet")));
        assert!(!models(&c3s, &id("joinmeet")));
        for a in [&c3s, &l3s, &r3s] {
            assert!(models(a, &id("orthodist")));
            assert!(models(a, &id("leftorthodist")));
            assert!(!(models(a, &id("leftdist")) && models(a, &id("rightdist"))));
        }
        for k in ["cs3a", "cs3a-b", "cs3a-c", "cs3b", "cs3c"] {
            assert!(models(&c3s, &id(k)), "{k}");
        }
    }
}
