//! Canonical labelings under unit-fixing relabelings.
//!
//! An algebra is first relabeled so its involution takes the lexicographically
//! least shape: unit at 0, then (if the unit is not fixed) the zero at 1, then
//! the remaining fixed points, then the remaining pairs as consecutive labels.
//! The relabelings preserving that shape form the centralizer of the
//! involution; the canonical form is the least multiplication table in the
//! orbit of that group.

use crate::algebra::IMonoid;

pub(crate) const UNDEF: u8 = u8::MAX;
const UNSET: u8 = u8::MAX;

/// The involution in normal form, with the element classes the
/// centralizer must respect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Shape {
    pub n: usize,
    pub inv: Vec<u8>,
    /// Elements every centralizing relabeling fixes: the unit and, when it is
    /// paired, the zero.
    pub pinned: usize,
}

impl Shape {
    /// `unit_fixed` selects `inv[0] = 0`; `fixed` counts the other fixed
    /// points.
    pub fn new(n: usize, unit_fixed: bool, fixed: usize) -> Shape {
        let mut inv: Vec<u8> = Vec::with_capacity(n);
        let pinned = if unit_fixed {
            inv.push(0);
            1
        } else {
            inv.extend([1, 0]);
            2
        };
        for _ in 0..fixed {
            let k = inv.len() as u8;
            inv.push(k);
        }
        while inv.len() < n {
            let k = inv.len() as u8;
            inv.extend([k + 1, k]);
        }
        assert_eq!(inv.len(), n, "shape does not fit");
        Shape { n, inv, pinned }
    }

    /// Every normal-form involution on `n` elements.
    pub fn all(n: usize) -> Vec<Shape> {
        let mut out = Vec::new();
        for f in (0..n).rev() {
            if (n - 1 - f).is_multiple_of(2) {
                out.push(Shape::new(n, true, f));
            }
        }
        if n >= 2 {
            for f in (0..n - 1).rev() {
                if (n - 2 - f).is_multiple_of(2) {
                    out.push(Shape::new(n, false, f));
                }
            }
        }
        out
    }

    fn is_fixed_point(&self, a: usize) -> bool {
        self.inv[a] as usize == a
    }
}

/// Off-diagonal cells outside the unit row and column, in row-major order.
/// These are the only cells a unit-fixing relabeling can move.
pub(crate) fn free_cells(n: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if i != j {
                cells.push((i, j));
            }
        }
    }
    cells
}

/// Partial relabeling `g` together with its inverse `h`.
struct Partial<'a> {
    shape: &'a Shape,
    g: Vec<u8>,
    h: Vec<u8>,
}

impl<'a> Partial<'a> {
    fn new(shape: &'a Shape) -> Partial<'a> {
        let n = shape.n;
        let mut p = Partial {
            shape,
            g: vec![UNSET; n],
            h: vec![UNSET; n],
        };
        for a in 0..shape.pinned {
            p.g[a] = a as u8;
            p.h[a] = a as u8;
        }
        p
    }

    /// Whether `g(v) = w` can be added.
    fn can_map(&self, v: usize, w: usize) -> bool {
        self.g[v] == UNSET
            && self.h[w] == UNSET
            && w >= self.shape.pinned
            && self.shape.is_fixed_point(v) == self.shape.is_fixed_point(w)
    }

    fn map(&mut self, v: usize, w: usize) {
        let (vi, wi) = (self.shape.inv[v] as usize, self.shape.inv[w] as usize);
        self.g[v] = w as u8;
        self.h[w] = v as u8;
        self.g[vi] = wi as u8;
        self.h[wi] = vi as u8;
    }

    fn unmap(&mut self, v: usize, w: usize) {
        let (vi, wi) = (self.shape.inv[v] as usize, self.shape.inv[w] as usize);
        self.g[v] = UNSET;
        self.h[w] = UNSET;
        self.g[vi] = UNSET;
        self.h[wi] = UNSET;
    }
}

/// Whether some centralizing relabeling maps `t` to a table that is
/// lexicographically smaller on the cells where both are known.
///
/// `t` is a row-major table with [`UNDEF`] for unknown cells. The
/// comparison stops at the first cell whose value is unknown in either
/// table, so a `true` answer holds for every completion of `t`.
pub(crate) fn has_smaller_image(shape: &Shape, cells: &[(usize, usize)], t: &[u8]) -> bool {
    let mut p = Partial::new(shape);
    smaller(&mut p, cells, t, 0)
}

fn smaller(p: &mut Partial, cells: &[(usize, usize)], t: &[u8], k: usize) -> bool {
    let n = p.shape.n;
    let Some(&(i, j)) = cells.get(k) else {
        return false;
    };
    let tv = t[i * n + j];
    if tv == UNDEF {
        return false;
    }
    for r in [i, j] {
        if p.h[r] == UNSET {
            for x in p.shape.pinned..n {
                if p.can_map(x, r) {
                    p.map(x, r);
                    let found = smaller(p, cells, t, k);
                    p.unmap(x, r);
                    if found {
                        return true;
                    }
                }
            }
            return false;
        }
    }
    let (x, y) = (p.h[i] as usize, p.h[j] as usize);
    let v = t[x * n + y];
    if v == UNDEF {
        return false;
    }
    let v = v as usize;
    let tv = tv as usize;
    if p.g[v] != UNSET {
        let w = p.g[v] as usize;
        return match w.cmp(&tv) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => smaller(p, cells, t, k + 1),
        };
    }
    if (p.shape.pinned..tv).any(|w| p.can_map(v, w)) {
        return true;
    }
    if p.can_map(v, tv) {
        p.map(v, tv);
        let found = smaller(p, cells, t, k + 1);
        p.unmap(v, tv);
        return found;
    }
    false
}

/// Search state for the least image of a complete table.
struct Minimizer<'a> {
    p: Partial<'a>,
    cells: &'a [(usize, usize)],
    t: &'a [u8],
    img: Vec<u8>,
    best: Option<Vec<u8>>,
    best_g: Vec<u8>,
}

impl Minimizer<'_> {
    /// `g` extended to elements not reached by any free cell.
    fn completed_g(&self) -> Vec<u8> {
        let n = self.p.shape.n;
        let mut p = Partial {
            shape: self.p.shape,
            g: self.p.g.clone(),
            h: self.p.h.clone(),
        };
        for v in 0..n {
            if p.g[v] == UNSET {
                let w = (0..n).find(|&w| p.can_map(v, w)).expect("free label");
                p.map(v, w);
            }
        }
        p.g
    }

    /// Returns whether `best` was replaced inside this subtree.
    fn run(&mut self, k: usize, mut less: bool) -> bool {
        let n = self.p.shape.n;
        if k == self.cells.len() {
            if less || self.best.is_none() {
                self.best = Some(self.img.clone());
                self.best_g = self.completed_g();
                return true;
            }
            return false;
        }
        let (i, j) = self.cells[k];
        for r in [i, j] {
            if self.p.h[r] == UNSET {
                let mut updated = false;
                for x in self.p.shape.pinned..n {
                    if self.p.can_map(x, r) {
                        self.p.map(x, r);
                        if self.run(k, less) {
                            updated = true;
                            less = false;
                        }
                        self.p.unmap(x, r);
                    }
                }
                return updated;
            }
        }
        let (x, y) = (self.p.h[i] as usize, self.p.h[j] as usize);
        let v = self.t[x * n + y] as usize;
        let bound = match (&self.best, less) {
            (Some(b), false) => Some(b[k] as usize),
            _ => None,
        };
        if self.p.g[v] != UNSET {
            let w = self.p.g[v] as usize;
            if bound.is_some_and(|b| w > b) {
                return false;
            }
            self.img[k] = w as u8;
            return self.run(k + 1, less || bound.is_some_and(|b| w < b));
        }
        let mut updated = false;
        for w in self.p.shape.pinned..n {
            if !self.p.can_map(v, w) {
                continue;
            }
            let bound = match (&self.best, less) {
                (Some(b), false) => Some(b[k] as usize),
                _ => None,
            };
            if bound.is_some_and(|b| w > b) {
                break;
            }
            self.p.map(v, w);
            self.img[k] = w as u8;
            if self.run(k + 1, less || bound.is_some_and(|b| w < b)) {
                updated = true;
                less = false;
            }
            self.p.unmap(v, w);
        }
        updated
    }
}

/// The relabeling putting the involution of `alg` into normal form, and
/// the resulting shape.
pub(crate) fn normalize_involution(alg: &IMonoid) -> (Vec<usize>, Shape) {
    let n = alg.size();
    let unit = alg.unit();
    let zero = alg.zero();
    let mut perm = vec![usize::MAX; n];
    let mut next = 0;
    perm[unit] = next;
    next += 1;
    if zero != unit {
        perm[zero] = next;
        next += 1;
    }
    let mut fixed = 0;
    for a in 0..n {
        if perm[a] == usize::MAX && alg.inv(a) == a {
            perm[a] = next;
            next += 1;
            fixed += 1;
        }
    }
    for a in 0..n {
        if perm[a] == usize::MAX {
            perm[a] = next;
            perm[alg.inv(a)] = next + 1;
            next += 2;
        }
    }
    (perm, Shape::new(n, unit == zero, fixed))
}

/// Relabeling sending `alg` to its canonical representative: `perm[a]` is
/// the canonical label of `a`.
pub(crate) fn canonical_labeling(alg: &IMonoid) -> Vec<usize> {
    let n = alg.size();
    let (perm, shape) = normalize_involution(alg);
    let normal = alg.relabel(&perm);
    let t: Vec<u8> = normal.mul_table().iter().map(|&x| x as u8).collect();
    let cells = free_cells(n);
    let mut m = Minimizer {
        p: Partial::new(&shape),
        cells: &cells,
        t: &t,
        img: vec![0; cells.len()],
        best: None,
        best_g: Vec::new(),
    };
    m.run(0, false);
    let g = m.best_g;
    (0..n).map(|a| g[perm[a]] as usize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_of_three() {
        let shapes: Vec<Vec<u8>> = Shape::all(3).into_iter().map(|s| s.inv).collect();
        assert_eq!(shapes, vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2]]);
    }

    #[test]
    fn shape_counts() {
        assert_eq!(Shape::all(1).len(), 1);
        assert_eq!(Shape::all(2).len(), 2);
        assert_eq!(Shape::all(4).len(), 4);
    }

    #[test]
    fn partial_tables_never_prune_on_unknown_cells() {
        let shape = Shape::new(3, true, 2);
        let cells = free_cells(3);
        let t = vec![0, 1, 2, 1, 1, UNDEF, 2, UNDEF, 2];
        assert!(!has_smaller_image(&shape, &cells, &t));
    }

    #[test]
    fn swapping_fixed_points_finds_smaller_table() {
        // Right-zero band on {a, b}: a*b = b, b*a = a. Its image under the swap
        // is itself, so nothing is smaller; the left-zero band is smaller.
        let shape = Shape::new(3, true, 2);
        let cells = free_cells(3);
        let right_zero = vec![0, 1, 2, 1, 1, 2, 2, 1, 2];
        let left_zero = vec![0, 1, 2, 1, 1, 1, 2, 2, 2];
        assert!(!has_smaller_image(&shape, &cells, &right_zero));
        assert!(!has_smaller_image(&shape, &cells, &left_zero));
        let skew = vec![0, 1, 2, 1, 1, 2, 2, 2, 2];
        let skew_image = vec![0, 1, 2, 1, 1, 1, 2, 1, 2];
        assert!(has_smaller_image(&shape, &cells, &skew));
        assert!(!has_smaller_image(&shape, &cells, &skew_image));
    }
}
