//! Named identities and quasi-identities.

use crate::parse::parse_law;
use crate::term::Law;
use std::sync::OnceLock;

/// A catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedIdentity {
    /// Stable lookup key.
    pub key: String,
    /// Human-readable name of the law.
    pub label: String,
    pub law: Law,
}

/// `(key, label, formula)`. Duals and mirrors are derived from these.
const BASE: &[(&str, &str, &str)] = &[
    ("idem", "idempotency", "x*x = x"),
    ("leftreg", "left-regularity", "x*y*x = x*y"),
    ("rightreg", "right-regularity", "x*y*x = y*x"),
    ("comm", "commutativity", "x*y = y*x"),
    ("leftdist", "left-distributivity", "x*(y + z) = x*y + x*z"),
    ("rightdist", "right-distributivity", "(x + y)*z = x*z + y*z"),
    ("orthodist", "right-orthodistributivity", "(x + x')*y = x*y + x'*y"),
    ("leftorthodist", "left-orthodistributivity", "x*(y + y') = x*y + x*y'"),
    ("localunits", "local units", "(x + 1)*x = x"),
    ("localunits-r", "local units (right)", "x*(x + 1) = x"),
    ("localcomp", "locally-complemented", "x + 1 = x + x'"),
    ("divis", "left-divisibility", "x*y = x*(x' + y)"),
    ("localdecomp", "left-decomposition", "(x + 1)*y = x*y + x'*y"),
    ("wkterms", "weak Kleene terms", "(x + 1)*y*x = x*y + y*x"),
    ("paradist", "right-paradistributivity", "(x + y)*z = x*z + x'*y*z"),
    ("comlocalunits", "local-unit commutativity", "(x + 1)*(y + 1) = (y + 1)*(x + 1)"),
    ("localcomm", "local commutativity", "(y + 1)*(x*y) = (x + 1)*(y*x)"),
    ("wkcomm", "wk-commutativity", "x*y + y*x = y*x + x*y"),
    ("leftbounded", "left-bounded", "0*x = 0"),
    ("rightbounded", "right-bounded", "x*0 = 0"),
    ("leftabs", "left-absorption", "x*(x + y) = x"),
    ("rightabs", "right-absorption", "(x + y)*x = x"),
    ("orthocomp", "orthocomplemented", "x*x' = 0"),
    ("unitcoh", "unit-coherence", "x + 1 = (x*0)'"),
    ("unitcoh-b", "unit-coherence", "x + 1 = x' + 1"),
    ("dramcon", "dramatic conjugation", "x*y*x' = x*y*0"),
    ("coherence", "left-coherence", "x*0 + y = (x + 1)*y"),
    ("paracomm", "left-paracommutativity", "x*y = (x' + y)*x"),
    ("orthocoher", "left-orthocoherence", "x*y + x'*z = (x' + y)*(x + z)"),
    ("orthocom", "left-orthocommutativity", "x*y + x'*z = x'*z + x*y"),
    ("kleene", "Kleene axiom", "x*x' + (y + y') = y + y'"),
    ("joinmeet", "product equals sum", "x*y = x + y"),
    ("splitting", "splitting equation", "1 = 0"),
    ("trivinv", "trivial involution", "x = x'"),
    ("cs3a", "local extrema coincide", "x*x' = x'*x''"),
    ("cs3a-b", "local extrema coincide", "x*x' = (x' + x'')'"),
    ("cs3a-c", "local extrema coincide", "x*x' = (x + x')'"),
    ("cs3b", "local top absorbs", "(x + x')*x = x"),
    ("cs3c", "local bottom absorbs", "x*x'*x = x*x'"),
];

const QUASI: &[(&str, &str, &str)] = &[
    ("subclassical", "subclassical", "1 = 0 => x = y"),
    ("fixedpoint", "fixed points are local zeros", "x = x' => x = x*0"),
];

/// Konikowska's postulates with `t(x) = x + x'` and `f(x) = x*x'` expanded.
/// Chained equations are split into separate keys.
const KONIKOWSKA: &[(&str, &str)] = &[
    ("A1", "x'' = x"),
    ("A2", "1' = 0"),
    ("A3", "y*y' + x + y = x*x' + y + x"),
    ("A3'", "(y + y')*(x*y) = (x + x')*(y*x)"),
    ("A4", "x + y = x + x'*y"),
    ("A4b", "x + y = x'*y + x"),
    ("A4'", "x*y = x*(x' + y)"),
    ("A4'b", "x*y = (x' + y)*x"),
    ("A5", "x + y + x = x + y"),
    ("A5'", "x*y*x = x*y"),
    ("A6", "x = x + x*y"),
    ("A6'", "x = x*(x + y)"),
    ("A7", "x + x = x"),
    ("A7'", "x*x = x"),
    ("A8", "1 + x = 1"),
    ("A8'", "0*x = 0"),
    ("A9", "0 + x = x"),
    ("A9b", "x + 0 = x"),
    ("A9'", "1*x = x"),
    ("A9'b", "x*1 = x"),
    ("A10", "x + x' = x' + x"),
    ("A10'", "x*x' = x'*x"),
    ("A11", "x + x' + 1 = x + x'"),
    ("A11'", "x*x'*0 = x*x'"),
    ("A12", "x = (x + x')*x"),
    ("A12'", "x = x*x' + x"),
    ("A13", "(x + y)' = x'*y'"),
    ("A13'", "(x*y)' = x' + y'"),
    ("A14", "x + (y + z) = x + y + z"),
    ("A14'", "x*(y*z) = x*y*z"),
    ("A15", "x + y*z = (x + y)*(x + z)"),
    ("A15'", "x*(y + z) = x*y + x*z"),
    ("A16", "x*y + z = (x + z)*(x' + y + z)"),
    ("A16'", "(x + y)*z = x*z + x'*y*z"),
];

/// Keys of the Konikowska postulates, in order.
pub fn konikowska_keys() -> Vec<&'static str> {
    KONIKOWSKA.iter().map(|(k, _)| *k).collect()
}

/// Keys whose mirror images are also catalogued, under `<key>-op`.
pub const MIRRORED: [&str; 4] = ["leftdist", "localdecomp", "leftbounded", "comlocalunits"];

fn build() -> Vec<NamedIdentity> {
    let mut out = Vec::new();
    let parse = |src: &str| parse_law(src).unwrap_or_else(|e| panic!("catalog entry `{src}`: {e}"));
    for (key, label, src) in BASE {
        out.push(NamedIdentity {
            key: key.to_string(),
            label: label.to_string(),
            law: parse(src),
        });
    }
    for (key, label, src) in QUASI {
        out.push(NamedIdentity {
            key: key.to_string(),
            label: label.to_string(),
            law: parse(src),
        });
    }
    for (key, src) in KONIKOWSKA {
        out.push(NamedIdentity {
            key: key.to_string(),
            label: format!("Konikowska ({key})"),
            law: parse(src),
        });
    }
    for (key, label, src) in BASE {
        let Law::Identity(id) = parse(src) else { unreachable!() };
        let dual = id.dualize();
        if !dual.same_equation(&id) {
            out.push(NamedIdentity {
                key: format!("{key}-dual"),
                label: format!("{label} (dual)"),
                law: Law::Identity(dual),
            });
        }
    }
    for key in MIRRORED {
        let entry = out.iter().find(|e| e.key == key).expect("mirrored key exists");
        let Law::Identity(id) = &entry.law else { unreachable!() };
        let mirrored = NamedIdentity {
            key: format!("{key}-op"),
            label: format!("{} (mirror)", entry.label),
            law: Law::Identity(id.mirror()),
        };
        out.push(mirrored);
    }
    out
}

/// Every catalogued law.
pub fn catalog() -> &'static [NamedIdentity] {
    static CATALOG: OnceLock<Vec<NamedIdentity>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn lookup(key: &str) -> Option<&'static NamedIdentity> {
    catalog().iter().find(|e| e.key == key)
}
