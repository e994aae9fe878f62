mod common;

use common::*;
use imonoid::enumerate::{enumerate_models, isomorphic};
use imonoid::mccarthy::BotSemilattice;
use imonoid::structure::{all_congruences, homomorphisms, Congruence};
use imonoid::{builtin, Bundle, TheorySpec};

#[test]
fn naive_generator_matches_enumeration() {
    for b in [Bundle::UBand, Bundle::McCarthyA, Bundle::Boolean, Bundle::Kleene, Bundle::Ibsl] {
        let t = TheorySpec::bundle(b);
        for n in 1..=4 {
            let fast = enumerate_models(n, &t).unwrap().len();
            assert_eq!(fast, naive_count(n, &t), "{} n={n}", b.name());
        }
    }
}

#[test]
fn naive_three_element_counts() {
    let all = naive_imonoids(3);
    let classes: Vec<_> = {
        let mut v: Vec<_> = all.iter().map(brute_canon).collect();
        v.sort();
        v.dedup();
        v
    };
    assert_eq!(classes.len(), 10);
}

#[test]
fn isomorphic_agrees_with_brute_force() {
    let ms: Vec<_> = (1..=4).flat_map(naive_imonoids).collect();
    for a in ms.iter().step_by(7) {
        for b in ms.iter().step_by(5) {
            assert_eq!(isomorphic(a, b), brute_isomorphic(a, b));
        }
    }
}

#[test]
fn congruences_match_brute_force() {
    let mut algs: Vec<_> = ["2", "C3", "L3S", "WK", "SK", "M3", "M3OP"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect();
    algs.extend(mccarthy_upto(6).cloned());
    algs.extend(imonoids_upto(4));
    for a in &algs {
        let mut want: Vec<Congruence> = partitions(a.size())
            .into_iter()
            .filter(|p| brute_is_congruence(a, p))
            .map(|p| Congruence::from_labels(&p))
            .collect();
        want.sort();
        let mut got = all_congruences(a).unwrap().congruences().to_vec();
        got.sort();
        assert_eq!(got, want, "{:?}", a);
    }
}

#[test]
fn homomorphisms_match_brute_force() {
    let algs: Vec<_> = ["2", "C3", "L3", "WK", "SK", "M3", "M3OP"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .chain(mccarthy_upto(5).cloned())
        .collect();
    for a in &algs {
        for b in &algs {
            assert_eq!(homomorphisms(a, b).unwrap(), brute_homomorphisms(a, b));
        }
    }
}

#[test]
fn brute_semilattice_counts() {
    // A finite ⊥-semilattice is a lattice; these are the lattice counts.
    let counts: Vec<usize> = (1..=5).map(|n| brute_semilattices(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 5]);
    for n in 1..=5 {
        for t in brute_semilattices(n) {
            BotSemilattice::new(t, 0).unwrap();
        }
    }
}
