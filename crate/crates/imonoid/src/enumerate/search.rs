//! Backtracking search for multiplication tables.
//!
//! The involution is fixed first (one normal-form shape per search). Cells
//! are then filled in row-major order. Every assignment is propagated through
//! associativity and through the theory's identities; an identity instance
//! whose two sides are known must agree, and one whose unknown side is
//! missing only its outermost product determines that product.

use super::canon::{free_cells, has_smaller_image, Shape, UNDEF};
use crate::eval::{Op, Program};
use crate::term::Identity;
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

/// An identity compiled for evaluation on partial tables.
#[derive(Debug, Clone)]
pub(crate) struct PartialLaw {
    lhs: Vec<Op>,
    rhs: Vec<Op>,
    vars: usize,
}

impl PartialLaw {
    pub fn new(id: &Identity) -> PartialLaw {
        PartialLaw {
            lhs: Program::compile(&id.lhs).ops,
            rhs: Program::compile(&id.rhs).ops,
            vars: id.var_count,
        }
    }

    fn cost(&self, n: usize) -> usize {
        n.pow(self.vars as u32) * (self.lhs.len() + self.rhs.len())
    }
}

/// Static data shared by every node of one search.
pub(crate) struct Problem<'a> {
    pub shape: Shape,
    pub laws: &'a [PartialLaw],
    pub orderly: bool,
    pub deadline: Option<Instant>,
    pub aborted: &'a AtomicBool,
    cells: Vec<(usize, usize)>,
}

impl<'a> Problem<'a> {
    pub fn new(
        shape: Shape,
        laws: &'a [PartialLaw],
        orderly: bool,
        deadline: Option<Instant>,
        aborted: &'a AtomicBool,
    ) -> Problem<'a> {
        let cells = free_cells(shape.n);
        Problem {
            shape,
            laws,
            orderly,
            deadline,
            aborted,
            cells,
        }
    }

    fn out_of_time(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

#[derive(Clone)]
struct State {
    n: usize,
    t: Vec<u8>,
    /// Cells currently holding each value.
    by_value: Vec<Vec<u16>>,
    trail: Vec<u16>,
    queue: Vec<u16>,
}

impl State {
    fn new(shape: &Shape) -> State {
        let n = shape.n;
        let mut t = vec![UNDEF; n * n];
        for a in 0..n {
            t[a] = a as u8;
            t[a * n] = a as u8;
            t[a * n + a] = a as u8;
        }
        let mut by_value = vec![Vec::new(); n];
        for (c, &v) in t.iter().enumerate() {
            if v != UNDEF {
                by_value[v as usize].push(c as u16);
            }
        }
        State {
            n,
            t,
            by_value,
            trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, a: u8, b: u8) -> u8 {
        self.t[a as usize * self.n + b as usize]
    }

    /// Records `a*b = v`. Returns false on a contradiction.
    #[inline]
    fn assign(&mut self, a: u8, b: u8, v: u8) -> bool {
        let c = a as usize * self.n + b as usize;
        let cur = self.t[c];
        if cur != UNDEF {
            return cur == v;
        }
        // In a band a*b = 1 forces a = b = 1.
        if v == 0 {
            return false;
        }
        self.t[c] = v;
        self.by_value[v as usize].push(c as u16);
        self.trail.push(c as u16);
        self.queue.push(c as u16);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().unwrap() as usize;
            let v = self.t[c] as usize;
            let popped = self.by_value[v].pop();
            debug_assert_eq!(popped, Some(c as u16));
            self.t[c] = UNDEF;
        }
        self.queue.clear();
    }

    /// Makes `p*q` equal `r*s`, filling in whichever product is unknown.
    #[inline]
    fn equate(&mut self, p: u8, q: u8, r: u8, s: u8) -> bool {
        let l = self.get(p, q);
        let m = self.get(r, s);
        match (l == UNDEF, m == UNDEF) {
            (false, false) => l == m,
            (false, true) => self.assign(r, s, l),
            (true, false) => self.assign(p, q, m),
            (true, true) => true,
        }
    }

    /// Every associativity instance using the cell `c`.
    fn associativity(&mut self, c: usize) -> bool {
        let n = self.n;
        let (a, b) = ((c / n) as u8, (c % n) as u8);
        let v = self.t[c];
        for z in 0..n as u8 {
            // (a*b)*z = a*(b*z)
            let w = self.get(b, z);
            if w != UNDEF && !self.equate(v, z, a, w) {
                return false;
            }
            // z*(a*b) = (z*a)*b
            let u = self.get(z, a);
            if u != UNDEF && !self.equate(z, v, u, b) {
                return false;
            }
        }
        // (x*y)*b = x*(y*b) where x*y = a
        let mut k = 0;
        while k < self.by_value[a as usize].len() {
            let d = self.by_value[a as usize][k] as usize;
            let (x, y) = ((d / n) as u8, (d % n) as u8);
            let w = self.get(y, b);
            if w != UNDEF && !self.equate(a, b, x, w) {
                return false;
            }
            k += 1;
        }
        // a*(y*z) = (a*y)*z where y*z = b
        let mut k = 0;
        while k < self.by_value[b as usize].len() {
            let d = self.by_value[b as usize][k] as usize;
            let (y, z) = ((d / n) as u8, (d % n) as u8);
            let u = self.get(a, y);
            if u != UNDEF && !self.equate(a, b, u, z) {
                return false;
            }
            k += 1;
        }
        true
    }

    /// Evaluates `ops` on the partial table; unknown results are [`UNDEF`].
    #[inline]
    fn run(&self, ops: &[Op], asg: &[u8], inv: &[u8], slots: &mut [u8]) -> u8 {
        for (i, op) in ops.iter().enumerate() {
            slots[i] = match *op {
                Op::Var(v) => asg[v],
                Op::One => 0,
                Op::Zero => inv[0],
                Op::Inv(a) => {
                    let x = slots[a];
                    if x == UNDEF {
                        UNDEF
                    } else {
                        inv[x as usize]
                    }
                }
                Op::Mul(a, b) => {
                    let (x, y) = (slots[a], slots[b]);
                    if x == UNDEF || y == UNDEF {
                        UNDEF
                    } else {
                        self.get(x, y)
                    }
                }
            };
        }
        slots[ops.len() - 1]
    }

    /// If the unknown value of `ops` hinges only on its outermost product,
    /// returns that product's operands and the value it must take for the
    /// whole term to equal `target`.
    fn solve(ops: &[Op], slots: &[u8], inv: &[u8], target: u8) -> Option<(u8, u8, u8)> {
        let mut idx = ops.len() - 1;
        let mut want = target;
        loop {
            match ops[idx] {
                Op::Inv(a) => {
                    want = inv[want as usize];
                    idx = a;
                }
                Op::Mul(a, b) => {
                    let (x, y) = (slots[a], slots[b]);
                    return (x != UNDEF && y != UNDEF).then_some((x, y, want));
                }
                _ => return None,
            }
        }
    }

    /// Runs every instance of every law. Returns `None` on a contradiction,
    /// otherwise whether new cells were deduced.
    fn scan(&mut self, laws: &[PartialLaw], inv: &[u8]) -> Option<bool> {
        let n = self.n as u8;
        let mut deduced = false;
        let mut ls = [0u8; 128];
        let mut rs = [0u8; 128];
        for law in laws {
            let k = law.vars;
            let mut asg = [0u8; 16];
            'instances: loop {
                let l = self.run(&law.lhs, &asg[..k], inv, &mut ls);
                let r = self.run(&law.rhs, &asg[..k], inv, &mut rs);
                match (l == UNDEF, r == UNDEF) {
                    (false, false) => {
                        if l != r {
                            return None;
                        }
                    }
                    (true, false) => {
                        if let Some((x, y, v)) = State::solve(&law.lhs, &ls, inv, r) {
                            if !self.assign(x, y, v) {
                                return None;
                            }
                            deduced = true;
                        }
                    }
                    (false, true) => {
                        if let Some((x, y, v)) = State::solve(&law.rhs, &rs, inv, l) {
                            if !self.assign(x, y, v) {
                                return None;
                            }
                            deduced = true;
                        }
                    }
                    (true, true) => {}
                }
                let mut i = k;
                loop {
                    if i == 0 {
                        break 'instances;
                    }
                    i -= 1;
                    asg[i] += 1;
                    if asg[i] < n {
                        continue 'instances;
                    }
                    asg[i] = 0;
                }
            }
        }
        Some(deduced)
    }

    /// Propagates pending assignments to a fixpoint.
    fn propagate(&mut self, laws: &[PartialLaw], inv: &[u8]) -> bool {
        loop {
            while let Some(c) = self.queue.pop() {
                if !self.associativity(c as usize) {
                    return false;
                }
            }
            match self.scan(laws, inv) {
                None => return false,
                Some(true) => continue,
                Some(false) => return true,
            }
        }
    }

    fn first_open(&self, cells: &[(usize, usize)]) -> Option<(usize, usize)> {
        cells
            .iter()
            .copied()
            .find(|&(i, j)| self.t[i * self.n + j] == UNDEF)
    }
}

/// Orders laws so the cheapest are scanned first.
pub(crate) fn sort_laws(laws: &mut [PartialLaw], n: usize) {
    laws.sort_by_key(|l| l.cost(n));
}

/// Depth up to which children are explored in parallel.
const SPLIT_DEPTH: usize = 3;

/// Complete tables found below the root for one involution shape. Returns
/// `None` if the deadline passed.
pub(crate) fn run(problem: &Problem) -> Option<Vec<Vec<u8>>> {
    let mut state = State::new(&problem.shape);
    let inv = problem.shape.inv.clone();
    if !state.propagate(problem.laws, &inv) {
        return Some(Vec::new());
    }
    let out = explore(problem, &mut state, 0);
    if problem.aborted.load(Ordering::Relaxed) {
        None
    } else {
        Some(out)
    }
}

fn explore(problem: &Problem, state: &mut State, depth: usize) -> Vec<Vec<u8>> {
    if problem.out_of_time() {
        return Vec::new();
    }
    if problem.orderly && has_smaller_image(&problem.shape, &problem.cells, &state.t) {
        return Vec::new();
    }
    let Some((i, j)) = state.first_open(&problem.cells) else {
        return vec![state.t.clone()];
    };
    let n = state.n;
    let inv = &problem.shape.inv;
    if depth < SPLIT_DEPTH {
        let children: Vec<State> = (1..n as u8)
            .filter_map(|v| {
                let mut child = state.clone();
                let ok = child.assign(i as u8, j as u8, v) && child.propagate(problem.laws, inv);
                ok.then_some(child)
            })
            .collect();
        return children
            .into_par_iter()
            .flat_map_iter(|mut child| explore(problem, &mut child, depth + 1))
            .collect();
    }
    let mut out = Vec::new();
    for v in 1..n as u8 {
        let mark = state.trail.len();
        if state.assign(i as u8, j as u8, v) && state.propagate(problem.laws, inv) {
            out.extend(explore(problem, state, depth + 1));
        }
        state.undo_to(mark);
    }
    out
}
