//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use common::*;
use imonoid::catalog::lookup;
use imonoid::enumerate::{enumerate_models, isomorphic, EnumConfig};
use imonoid::mccarthy::m3::{EPS, ONE, ZERO};
use imonoid::mccarthy::{
    construct_i2, construct_i2_eps, decompose, decorated_poset, reconstruct, scan_order_conjecture,
    semilattice_isomorphism, skeleton, BotSemilattice,
};
use imonoid::structure::is_subdirectly_irreducible;
use imonoid::theory::models;
use imonoid::{builtin, check_identity, eval, Bundle, IMonoid, Law, TheorySpec, Verdict};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const SPECTRUM_LIMIT: Duration = Duration::from_secs(600);
const BASIS_LIMIT: Duration = Duration::from_secs(300);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(600);

const FINE_SPECTRUM: [usize; 11] = [1, 1, 1, 2, 1, 3, 2, 6, 6, 12, 16];
/// Sum of the first ten entries of [`FINE_SPECTRUM`].
const MODELS_UP_TO_10: usize = 35;

type Outcome = Result<String, String>;

fn mccarthy() -> TheorySpec {
    TheorySpec::bundle(Bundle::McCarthyA)
}

fn holds(alg: &IMonoid, key: &str) -> bool {
    let Law::Identity(id) = &lookup(key).unwrap().law else {
        panic!("{key} is not an identity")
    };
    check_identity(alg, id).unwrap().holds()
}

fn fine_spectrum() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_imonoid"))
        .args(["spectrum", "--theory", "mccarthy", "--max", "11"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("exit status {}", out.status));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    let counts: Vec<usize> = text
        .lines()
        .skip(1)
        .filter_map(|l| l.split(',').nth(1)?.parse().ok())
        .collect();
    if counts != FINE_SPECTRUM {
        return Err(format!("counts {counts:?}"));
    }
    if elapsed > SPECTRUM_LIMIT {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("{counts:?} in {elapsed:.2?}"))
}

fn three_elements() -> Outcome {
    let all = enumerate_models(3, &TheorySpec::bundle(Bundle::UBand)).map_err(|e| e.to_string())?;
    let sub: Vec<&IMonoid> = all.iter().filter(|a| a.is_subclassical()).collect();
    let mc: Vec<&&IMonoid> = sub.iter().filter(|a| models(a, &mccarthy())).collect();
    let naive = naive_count(3, &TheorySpec::bundle(Bundle::UBand));
    let m3 = builtin("M3").unwrap();
    let ok = all.len() == 10
        && naive == 10
        && sub.len() == 4
        && mc.len() == 1
        && isomorphic(mc[0], &m3)
        && brute_isomorphic(mc[0], &m3);
    let msg = format!(
        "{} classes (oracle {naive}), {} subclassical, {} McCarthy",
        all.len(),
        sub.len(),
        mc.len()
    );
    if ok {
        Ok(format!("{msg}, isomorphic to M3"))
    } else {
        Err(msg)
    }
}

fn basis_equivalence() -> Outcome {
    let start = Instant::now();
    let bundles = [Bundle::McCarthyA, Bundle::McCarthyB, Bundle::McCarthyC, Bundle::Konikowska]
        .map(TheorySpec::bundle);
    let all = imonoids_upto(6);
    let mut agree = 0;
    let mut disagreements = 0;
    for a in &all {
        let v: Vec<bool> = bundles.iter().map(|t| models(a, t)).collect();
        if v.iter().all(|&b| b == v[0]) {
            agree += usize::from(v[0]);
        } else {
            disagreements += 1;
        }
    }
    let elapsed = start.elapsed();
    let msg = format!(
        "{} i-monoids, {agree} McCarthy, {disagreements} disagreements in {elapsed:.2?}",
        all.len()
    );
    if disagreements == 0 && agree == 9 && elapsed <= BASIS_LIMIT {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn si_classification() -> Outcome {
    let (two, m3) = (builtin("2").unwrap(), builtin("M3").unwrap());
    let mut si = 0;
    for a in mccarthy_upto(8) {
        let is_si = is_subdirectly_irreducible(a).map_err(|e| e.to_string())?.is_some();
        let expected = isomorphic(a, &two) || isomorphic(a, &m3);
        if is_si != expected {
            return Err(format!("size {} model: si={is_si}", a.size()));
        }
        si += usize::from(is_si);
    }
    if si == 2 {
        Ok(format!("{} models, SI exactly 2 and M3", mccarthy_upto(8).count()))
    } else {
        Err(format!("{si} SI models"))
    }
}

fn decomposition_round_trip() -> Outcome {
    let start = Instant::now();
    let ms: Vec<&IMonoid> = mccarthy_upto(10).collect();
    for a in &ms {
        decompose(a).map_err(|e| format!("decompose: {e}"))?;
        let dp = decorated_poset(a).map_err(|e| e.to_string())?;
        let b = reconstruct(&dp).map_err(|e| format!("reconstruct: {e}"))?;
        if !isomorphic(a, &b) {
            return Err(format!("round trip changed a size-{} model", a.size()));
        }
    }
    let elapsed = start.elapsed();
    let msg = format!("{} models in {elapsed:.2?}", ms.len());
    if ms.len() == MODELS_UP_TO_10 && elapsed <= ROUND_TRIP_LIMIT {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn i2_realization() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for t in brute_semilattices(n) {
            let sl = BotSemilattice::new(t, 0).map_err(|e| e.to_string())?;
            let a = construct_i2(&sl);
            a.check_axioms().map_err(|e| e.to_string())?;
            if !models(&a, &mccarthy()) {
                return Err(format!("I[2] over a size-{n} semilattice is not McCarthy"));
            }
            let sk = skeleton(&a).map_err(|e| e.to_string())?.to_semilattice();
            if semilattice_isomorphism(&sk, &sl).is_none() {
                return Err(format!("skeleton mismatch at size {n}"));
            }
            checked += 1;
        }
    }
    let eps = construct_i2_eps(&BotSemilattice::chain(1));
    if !isomorphic(&eps, &builtin("M3").unwrap()) {
        return Err("ε-construction over a point is not M3".into());
    }
    Ok(format!("{checked} semilattices; point with ε is M3"))
}

fn boolean_equivalence() -> Outcome {
    let boolean = TheorySpec::bundle(Bundle::Boolean);
    let mut booleans = 0;
    for a in mccarthy_upto(8) {
        let v = [
            holds(a, "comm"),
            holds(a, "rightdist"),
            holds(a, "rightbounded"),
            holds(a, "orthocomp"),
            holds(a, "rightabs"),
            models(a, &boolean),
        ];
        if v.iter().any(|&b| b != v[0]) {
            return Err(format!("size-{} model gives {v:?}", a.size()));
        }
        booleans += usize::from(v[0]);
    }
    Ok(format!("{booleans} Boolean models, conditions agree"))
}

fn order_scan() -> Outcome {
    let pairs = scan_order_conjecture(10, &EnumConfig::default()).map_err(|e| e.to_string())?;
    if pairs.is_empty() {
        Ok("no shared induced orders up to size 10".into())
    } else {
        Err(format!("{} pairs share an order", pairs.len()))
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rows = Vec::new();
    for b in [Bundle::UBand, Bundle::McCarthyA, Bundle::Boolean] {
        let t = TheorySpec::bundle(b);
        for n in 1..=4 {
            let fast = enumerate_models(n, &t).map_err(|e| e.to_string())?.len();
            let slow = naive_count(n, &t);
            if fast != slow {
                return Err(format!("{} n={n}: {fast} vs {slow}", b.name()));
            }
            rows.push(fast);
        }
    }
    Ok(format!("counts {rows:?}"))
}

fn identity_witness() -> Outcome {
    let m3 = builtin("M3").unwrap();
    let Law::Identity(id) = &lookup("rightdist").unwrap().law else {
        return Err("rightdist missing".into());
    };
    let Verdict::Fails(w) = check_identity(&m3, id).map_err(|e| e.to_string())? else {
        return Err("right-distributivity holds in M3".into());
    };
    if w != [ONE, EPS, ZERO] {
        return Err(format!("witness {w:?}"));
    }
    let Law::Identity(sum) = imonoid::parse_law("x + y = x").unwrap() else { unreachable!() };
    let s = eval(&sum.lhs, &m3, &w[..2]).unwrap();
    let l = eval(&id.lhs, &m3, &w).unwrap();
    let r = eval(&id.rhs, &m3, &w).unwrap();
    if s == ONE && l == ZERO && r == EPS {
        Ok("(1+ε)0 = 1·0 = 0, 1·0 + ε·0 = ε".into())
    } else {
        Err(format!("trace 1+ε={s}, lhs={l}, rhs={r}"))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("fine spectrum to 11", fine_spectrum),
        ("three-element classification", three_elements),
        ("basis equivalence to 6", basis_equivalence),
        ("SI classification to 8", si_classification),
        ("decomposition and round trip to 10", decomposition_round_trip),
        ("I[2] realization", i2_realization),
        ("Boolean equivalence to 8", boolean_equivalence),
        ("induced order scan to 10", order_scan),
        ("oracle equivalence to 4", oracle_equivalence),
        ("identity witness", identity_witness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
