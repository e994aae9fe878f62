//! Finite involutive idempotent monoids.

use std::fmt;
use thiserror::Error;

/// A finite i-monoid over the universe `{0, ..., n-1}`.
///
/// Only `*`, `'` and the unit are stored. The constant `0` is `inv[unit]` and
/// `x + y` is `(x' * y')'`.
#[derive(Clone, Debug)]
pub struct IMonoid {
    n: usize,
    unit: usize,
    inv: Vec<usize>,
    mul: Vec<usize>,
    name: Option<String>,
    elem_names: Option<Vec<String>>,
}

impl PartialEq for IMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.unit == other.unit && self.inv == other.inv && self.mul == other.mul
    }
}

impl Eq for IMonoid {}

/// One violated axiom, with the first witness found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("entry out of range: {0}")]
    OutOfRange(String),
    #[error("involution fails at {0}")]
    Involution(usize),
    #[error("unit law fails at {0}")]
    Unit(usize),
    #[error("not idempotent at {0}")]
    Idempotency(usize),
    #[error("not associative at ({0},{1},{2})")]
    Associativity(usize, usize, usize),
}

/// Every axiom that failed validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl ValidationReport {
    pub fn first(&self) -> &Violation {
        &self.violations[0]
    }
}

/// Checks the i-monoid axioms on raw tables.
///
/// All axioms are checked; the report lists each violated one with its
/// first witness in lexicographic order.
pub fn validate(
    n: usize,
    unit: usize,
    inv: &[usize],
    mul: &[Vec<usize>],
) -> Result<IMonoid, ValidationReport> {
    let fail = |v: Violation| ValidationReport { violations: vec![v] };
    if n == 0 {
        return Err(fail(Violation::Shape("size must be at least 1".into())));
    }
    if inv.len() != n {
        return Err(fail(Violation::Shape(format!(
            "involution table has {} entries, expected {n}",
            inv.len()
        ))));
    }
    if mul.len() != n || mul.iter().any(|r| r.len() != n) {
        return Err(fail(Violation::Shape(format!(
            "multiplication table must be {n}x{n}"
        ))));
    }
    if unit >= n {
        return Err(fail(Violation::OutOfRange(format!("unit {unit}"))));
    }
    if let Some(a) = inv.iter().position(|&x| x >= n) {
        return Err(fail(Violation::OutOfRange(format!("inv[{a}] = {}", inv[a]))));
    }
    for (a, row) in mul.iter().enumerate() {
        if let Some(b) = row.iter().position(|&x| x >= n) {
            return Err(fail(Violation::OutOfRange(format!(
                "mul[{a}][{b}] = {}",
                row[b]
            ))));
        }
    }
    let flat: Vec<usize> = mul.iter().flatten().copied().collect();
    let alg = IMonoid {
        n,
        unit,
        inv: inv.to_vec(),
        mul: flat,
        name: None,
        elem_names: None,
    };
    let violations = alg.violations();
    if violations.is_empty() {
        Ok(alg)
    } else {
        Err(ValidationReport { violations })
    }
}

impl IMonoid {
    /// Builds an algebra from trusted tables. Callers guarantee the axioms.
    pub(crate) fn from_parts(n: usize, unit: usize, inv: Vec<usize>, mul: Vec<usize>) -> IMonoid {
        debug_assert_eq!(inv.len(), n);
        debug_assert_eq!(mul.len(), n * n);
        IMonoid {
            n,
            unit,
            inv,
            mul,
            name: None,
            elem_names: None,
        }
    }

    fn violations(&self) -> Vec<Violation> {
        let n = self.n;
        let mut out = Vec::new();
        if let Some(a) = (0..n).find(|&a| self.inv(self.inv(a)) != a) {
            out.push(Violation::Involution(a));
        }
        if let Some(a) = (0..n).find(|&a| self.mul(self.unit, a) != a || self.mul(a, self.unit) != a) {
            out.push(Violation::Unit(a));
        }
        if let Some(a) = (0..n).find(|&a| self.mul(a, a) != a) {
            out.push(Violation::Idempotency(a));
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        out.push(Violation::Associativity(a, b, c));
                        break 'assoc;
                    }
                }
            }
        }
        out
    }

    /// Re-runs every axiom check.
    pub fn check_axioms(&self) -> Result<(), ValidationReport> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// The derived constant `0 = 1'`.
    pub fn zero(&self) -> usize {
        self.inv[self.unit]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// The derived join `(a' * b')'`.
    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.inv[self.mul(self.inv[a], self.inv[b])]
    }

    pub fn inv_table(&self) -> &[usize] {
        &self.inv
    }

    /// Row-major multiplication table.
    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> IMonoid {
        self.name = Some(name.into());
        self
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.elem_names.as_deref()
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> IMonoid {
        assert_eq!(names.len(), self.n);
        self.elem_names = Some(names);
        self
    }

    pub(crate) fn set_element_names(&mut self, names: Option<Vec<String>>) {
        self.elem_names = names;
    }

    /// Display name of an element: its given name, or its index.
    pub fn element_name(&self, a: usize) -> String {
        match &self.elem_names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Index of the element with the given display name, or a parsed index.
    pub fn element_by_name(&self, s: &str) -> Option<usize> {
        if let Some(names) = &self.elem_names {
            if let Some(i) = names.iter().position(|n| n == s) {
                return Some(i);
            }
        }
        s.parse::<usize>().ok().filter(|&i| i < self.n)
    }

    /// The image of this algebra under the bijection `perm`, so that
    /// `perm[a]` is the new label of old element `a`.
    pub fn relabel(&self, perm: &[usize]) -> IMonoid {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            inv[perm[a]] = perm[self.inv[a]];
            for b in 0..n {
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        let elem_names = self.elem_names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for a in 0..n {
                out[perm[a]] = names[a].clone();
            }
            out
        });
        IMonoid {
            n,
            unit: perm[self.unit],
            inv,
            mul,
            name: self.name.clone(),
            elem_names,
        }
    }

    /// The mirror algebra with `a *op b = b * a`.
    pub fn opposite(&self) -> IMonoid {
        let n = self.n;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul(b, a);
            }
        }
        IMonoid {
            n,
            unit: self.unit,
            inv: self.inv.clone(),
            mul,
            name: self.name.as_ref().map(|s| format!("{s}^op")),
            elem_names: self.elem_names.clone(),
        }
    }

    /// The De Morgan dual `<M, +, ', 0>` with `+` as the primitive product.
    pub fn dual_algebra(&self) -> IMonoid {
        let n = self.n;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.join(a, b);
            }
        }
        IMonoid {
            n,
            unit: self.zero(),
            inv: self.inv.clone(),
            mul,
            name: self.name.as_ref().map(|s| format!("{s}^dual")),
            elem_names: self.elem_names.clone(),
        }
    }

    /// True when the unit is not an involution fixed point.
    pub fn is_subclassical(&self) -> bool {
        self.unit != self.zero()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Display for IMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::write_algebra(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown builtin algebra `{0}`")]
pub struct UnknownBuiltin(pub String);

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 13] = [
    "TRIVIAL", "2", "C2", "C3", "L3", "R3", "C3S", "L3S", "R3S", "WK", "SK", "M3", "M3OP",
];

/// The small named algebras.
///
/// The two-valued and three-valued logical algebras list their elements as
/// `1, 0, ε` (unit first); the three-element bands use `𝟙, a, b`.
pub fn builtin(name: &str) -> Result<IMonoid, UnknownBuiltin> {
    let logic3 = || vec!["1".to_string(), "0".into(), "ε".into()];
    let band3 = || vec!["𝟙".to_string(), "a".into(), "b".into()];
    let (inv, mul, names): (Vec<usize>, Vec<Vec<usize>>, Vec<String>) =
        match name.to_ascii_uppercase().as_str() {
            "TRIVIAL" => (vec![0], vec![vec![0]], vec!["1".into()]),
            "2" => (
                vec![1, 0],
                vec![vec![0, 1], vec![1, 1]],
                vec!["1".into(), "0".into()],
            ),
            "C2" => (
                vec![0, 1],
                vec![vec![0, 1], vec![1, 1]],
                vec!["𝟙".into(), "a".into()],
            ),
            "C3" => (vec![0, 1, 2], band_c(), band3()),
            "L3" => (vec![0, 1, 2], band_l(), band3()),
            "R3" => (vec![0, 1, 2], band_r(), band3()),
            "C3S" => (vec![0, 2, 1], band_c(), band3()),
            "L3S" => (vec![0, 2, 1], band_l(), band3()),
            "R3S" => (vec![0, 2, 1], band_r(), band3()),
            "WK" => (
                vec![1, 0, 2],
                vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
                logic3(),
            ),
            "SK" => (
                vec![1, 0, 2],
                vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]],
                logic3(),
            ),
            "M3" => (
                vec![1, 0, 2],
                vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
                logic3(),
            ),
            "M3OP" => (
                vec![1, 0, 2],
                vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]],
                logic3(),
            ),
            _ => return Err(UnknownBuiltin(name.to_string())),
        };
    let canonical = BUILTIN_NAMES
        .iter()
        .find(|b| b.eq_ignore_ascii_case(name))
        .copied()
        .unwrap_or(name);
    let alg = validate(inv.len(), 0, &inv, &mul).expect("builtin tables are i-monoids");
    Ok(alg.with_name(canonical).with_element_names(names))
}

fn band_c() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]]
}

fn band_l() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]
}

fn band_r() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3_rows() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]
    }

    #[test]
    fn m3_validates() {
        let a = validate(3, 0, &[1, 0, 2], &m3_rows()).unwrap();
        assert_eq!(a.zero(), 1);
        assert_eq!(a.mul(2, 1), 2);
    }

    #[test]
    fn broken_m3_is_rejected_with_witness() {
        let mut rows = m3_rows();
        rows[1][2] = 0;
        let report = validate(3, 0, &[1, 0, 2], &rows).unwrap_err();
        let Violation::Associativity(a, b, c) = report.violations[0] else {
            panic!("expected associativity failure, got {report}");
        };
        let ab = rows[a][b];
        assert_ne!(rows[ab][c], rows[a][rows[b][c]]);
    }

    #[test]
    fn lowering_eps_times_zero_gives_sk() {
        let mut rows = m3_rows();
        rows[2][1] = 1;
        let a = validate(3, 0, &[1, 0, 2], &rows).unwrap();
        assert_eq!(a, builtin("SK").unwrap());
        let mut rows = m3_rows();
        rows[2][0] = 1;
        let report = validate(3, 0, &[1, 0, 2], &rows).unwrap_err();
        assert_eq!(report.first(), &Violation::Unit(2));
    }


    #[test]
    fn trivial_validates() {
        let t = validate(1, 0, &[0], &[vec![0]]).unwrap();
        assert_eq!(t.zero(), t.unit());
    }

    #[test]
    fn each_axiom_is_reported() {
        let r = validate(2, 0, &[1, 1], &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(r.violations, vec![Violation::Involution(0)]);
        let r = validate(2, 0, &[0, 1], &[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(r.first(), &Violation::Unit(1));
        let r = validate(2, 0, &[0, 1], &[vec![0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(r.violations[0], Violation::Idempotency(1));
        assert!(validate(2, 0, &[0, 1], &[vec![0, 1]]).is_err());
        assert!(validate(2, 0, &[0, 2], &[vec![0, 1], vec![1, 1]]).is_err());
        assert_eq!(
            Violation::Associativity(1, 2, 3).to_string(),
            "not associative at (1,2,3)"
        );
    }

    #[test]
    fn builtins_are_valid_and_named() {
        for name in BUILTIN_NAMES {
            let a = builtin(name).unwrap();
            assert_eq!(a.name(), Some(name));
            assert_eq!(a.unit(), 0);
        }
        assert!(builtin("nope").is_err());
        let m3 = builtin("M3").unwrap();
        for x in 0..3 {
            assert_eq!(m3.mul(2, x), 2);
        }
        let wk = builtin("WK").unwrap();
        assert_eq!(wk.mul(1, 2), 2);
        let two = builtin("2").unwrap();
        assert_eq!(two.size(), 2);
        assert!(two.is_subclassical());
    }

    #[test]
    fn opposite_of_m3_is_m3op() {
        let m3 = builtin("M3").unwrap();
        assert_eq!(m3.opposite(), builtin("M3OP").unwrap());
        assert_eq!(m3.opposite().opposite(), m3);
    }

    #[test]
    fn dual_algebra_is_image_under_involution() {
        for name in BUILTIN_NAMES {
            let a = builtin(name).unwrap();
            let d = a.dual_algebra();
            assert!(d.check_axioms().is_ok());
            assert_eq!(a.relabel(a.inv_table()), d, "{name}");
        }
    }
}
