//! Brute-force oracles shared by the integration tests. Nothing here uses the
//! crate's search or canonical-form code.
#![allow(dead_code)]

use imonoid::enumerate::enumerate_models;
use imonoid::theory::models;
use imonoid::{validate, Bundle, IMonoid, TheorySpec};
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// Tables of `(unit, inv, mul)` relabeled by `p` (new label of `a` is `p[a]`).
fn image(n: usize, unit: usize, inv: &[usize], mul: &[usize], p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; n];
    for a in 0..n {
        q[p[a]] = a;
    }
    let mut out = vec![p[unit]];
    out.extend((0..n).map(|a| p[inv[q[a]]]));
    for a in 0..n {
        for b in 0..n {
            out.push(p[mul[q[a] * n + q[b]]]);
        }
    }
    out
}

/// Least relabeled table over all `n!` relabelings.
pub fn brute_canon(alg: &IMonoid) -> Vec<usize> {
    let n = alg.size();
    permutations(n)
        .iter()
        .map(|p| image(n, alg.unit(), alg.inv_table(), alg.mul_table(), p))
        .min()
        .unwrap()
}

pub fn brute_isomorphic(a: &IMonoid, b: &IMonoid) -> bool {
    a.size() == b.size() && brute_canon(a) == brute_canon(b)
}

/// Every involution of `0..n`.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, inv: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = inv.len();
        if k == n {
            out.push(inv.clone());
            return;
        }
        if inv[k] != usize::MAX {
            return go(k + 1, inv, out);
        }
        inv[k] = k;
        go(k + 1, inv, out);
        for j in k + 1..n {
            if inv[j] == usize::MAX {
                inv[k] = j;
                inv[j] = k;
                go(k + 1, inv, out);
                inv[j] = usize::MAX;
            }
        }
        inv[k] = usize::MAX;
    }
    let mut out = Vec::new();
    go(0, &mut vec![usize::MAX; n], &mut out);
    out
}

/// Every i-monoid on `0..n` with unit 0, by generate-and-test: all
/// involutions times all multiplication tables whose unit row and column
/// and diagonal are forced, filtered by validation.
pub fn naive_imonoids(n: usize) -> Vec<IMonoid> {
    let free: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let mut out = Vec::new();
    for inv in involutions(n) {
        let mut vals = vec![0usize; free.len()];
        loop {
            let mut rows: Vec<Vec<usize>> = (0..n)
                .map(|i| (0..n).map(|j| if i == 0 { j } else if j == 0 || i == j { i } else { 0 }).collect())
                .collect();
            for (k, &(i, j)) in free.iter().enumerate() {
                rows[i][j] = vals[k];
            }
            if let Ok(a) = validate(n, 0, &inv, &rows) {
                out.push(a);
            }
            let mut k = 0;
            loop {
                if k == vals.len() {
                    break;
                }
                vals[k] += 1;
                if vals[k] < n {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
            if k == vals.len() {
                break;
            }
        }
    }
    out
}

/// Number of isomorphism classes of size-`n` models of `theory`, by brute
/// force.
pub fn naive_count(n: usize, theory: &TheorySpec) -> usize {
    naive_imonoids(n)
        .iter()
        .filter(|a| models(a, theory))
        .map(brute_canon)
        .collect::<BTreeSet<_>>()
        .len()
}

/// Every partition of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[k] = b;
            go(k + 1, cur, max.max(b), out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    go(1, &mut cur, 0, &mut out);
    out
}

/// Whether the partition with block ids `p` is compatible with the
/// operations of `alg`.
pub fn brute_is_congruence(alg: &IMonoid, p: &[usize]) -> bool {
    let n = alg.size();
    for a in 0..n {
        for b in 0..n {
            if p[a] != p[b] {
                continue;
            }
            if p[alg.inv(a)] != p[alg.inv(b)] {
                return false;
            }
            for c in 0..n {
                for d in 0..n {
                    if p[c] == p[d] && p[alg.mul(a, c)] != p[alg.mul(b, d)] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every map `a -> b` preserving `*`, `'` and `1`, in lexicographic order.
pub fn brute_homomorphisms(a: &IMonoid, b: &IMonoid) -> Vec<Vec<usize>> {
    let (m, n) = (a.size(), b.size());
    let mut out = Vec::new();
    let mut f = vec![0; m];
    loop {
        let ok = f[a.unit()] == b.unit()
            && (0..m).all(|x| f[a.inv(x)] == b.inv(f[x]))
            && (0..m).all(|x| (0..m).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])));
        if ok {
            out.push(f.clone());
        }
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            f[k] += 1;
            if f[k] < n {
                break;
            }
            f[k] = 0;
        }
    }
}

/// Join tables of every ⊥-semilattice on `0..n` with bottom 0, one per
/// isomorphism class.
pub fn brute_semilattices(n: usize) -> Vec<Vec<Vec<usize>>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut vals = vec![1usize; pairs.len()];
    loop {
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            t[a][a] = a;
            t[0][a] = a;
            t[a][0] = a;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            t[i][j] = vals[k];
            t[j][i] = vals[k];
        }
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
        if assoc {
            let key = permutations(n)
                .into_iter()
                .filter(|p| p[0] == 0)
                .map(|p| {
                    let mut q = vec![0; n];
                    for a in 0..n {
                        q[p[a]] = a;
                    }
                    (0..n)
                        .flat_map(|a| (0..n).map(move |b| (a, b)))
                        .map(|(a, b)| p[t[q[a]][q[b]]])
                        .collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            if seen.insert(key) {
                out.push(t);
            }
        }
        let mut k = 0;
        loop {
            if k == vals.len() {
                return out;
            }
            vals[k] += 1;
            if vals[k] < n {
                break;
            }
            vals[k] = 1;
            k += 1;
        }
    }
}

/// McCarthy models of every size up to 10, indexed by size.
pub fn mccarthy_models() -> &'static Vec<Vec<IMonoid>> {
    static MODELS: OnceLock<Vec<Vec<IMonoid>>> = OnceLock::new();
    MODELS.get_or_init(|| {
        let t = TheorySpec::bundle(Bundle::McCarthyA);
        (0..=10)
            .map(|n| if n == 0 { Vec::new() } else { enumerate_models(n, &t).unwrap() })
            .collect()
    })
}

/// McCarthy models of size at most `max`.
pub fn mccarthy_upto(max: usize) -> impl Iterator<Item = &'static IMonoid> {
    mccarthy_models()[..=max].iter().flatten()
}

/// All i-monoids of size at most `max` (at most 6).
pub fn imonoids_upto(max: usize) -> Vec<IMonoid> {
    let t = TheorySpec::bundle(Bundle::UBand);
    (1..=max).flat_map(|n| enumerate_models(n, &t).unwrap()).collect()
}
