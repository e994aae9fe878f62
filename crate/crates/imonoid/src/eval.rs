//! Evaluation of terms and exhaustive checking of identities.

use crate::algebra::IMonoid;
use crate::term::{Identity, Law, QuasiIdentity, Term};
use rayon::prelude::*;
use thiserror::Error;

/// Default cap on the number of assignments a single check may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const PARALLEL_THRESHOLD: u128 = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment has {given} values but the term uses {needed} variables")]
    MissingVariable { needed: usize, given: usize },
    #[error("element {element} is out of range for an algebra of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("budget exceeded: {needed} assignments needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

/// Outcome of an exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The first failing assignment, indexed by variable number.
    Fails(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Evaluates `t` under `assignment`. `+` and `0` are expanded through their
/// definitions.
pub fn eval(t: &Term, alg: &IMonoid, assignment: &[usize]) -> Result<usize, EvalError> {
    let needed = t.var_count();
    if assignment.len() < needed {
        return Err(EvalError::MissingVariable {
            needed,
            given: assignment.len(),
        });
    }
    if let Some(&element) = assignment.iter().find(|&&a| a >= alg.size()) {
        return Err(EvalError::ElementOutOfRange {
            element,
            size: alg.size(),
        });
    }
    Ok(eval_unchecked(t, alg, assignment))
}

fn eval_unchecked(t: &Term, alg: &IMonoid, asg: &[usize]) -> usize {
    match t {
        Term::Var(i) => asg[*i],
        Term::Const0 => alg.zero(),
        Term::Const1 => alg.unit(),
        Term::Mul(a, b) => alg.mul(eval_unchecked(a, alg, asg), eval_unchecked(b, alg, asg)),
        Term::Join(a, b) => alg.join(eval_unchecked(a, alg, asg), eval_unchecked(b, alg, asg)),
        Term::Inv(a) => alg.inv(eval_unchecked(a, alg, asg)),
    }
}

/// One step of a flattened term. Operands refer to earlier slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Op {
    Var(usize),
    One,
    Zero,
    Mul(usize, usize),
    Inv(usize),
}

/// A term flattened into straight-line code over `*`, `'` and constants.
/// The value is in the last slot.
#[derive(Debug, Clone)]
pub(crate) struct Program {
    pub ops: Vec<Op>,
}

impl Program {
    pub fn compile(t: &Term) -> Program {
        let mut ops = Vec::new();
        emit(t, &mut ops);
        Program { ops }
    }

    #[inline]
    pub fn run(&self, alg: &IMonoid, asg: &[usize], slots: &mut [usize]) -> usize {
        for (i, op) in self.ops.iter().enumerate() {
            slots[i] = match *op {
                Op::Var(v) => asg[v],
                Op::One => alg.unit(),
                Op::Zero => alg.zero(),
                Op::Mul(a, b) => alg.mul(slots[a], slots[b]),
                Op::Inv(a) => alg.inv(slots[a]),
            };
        }
        slots[self.ops.len() - 1]
    }
}

fn emit(t: &Term, ops: &mut Vec<Op>) -> usize {
    let op = match t {
        Term::Var(i) => Op::Var(*i),
        Term::Const0 => Op::Zero,
        Term::Const1 => Op::One,
        Term::Mul(a, b) => {
            let x = emit(a, ops);
            let y = emit(b, ops);
            Op::Mul(x, y)
        }
        Term::Join(a, b) => {
            let x = emit(a, ops);
            ops.push(Op::Inv(x));
            let xi = ops.len() - 1;
            let y = emit(b, ops);
            ops.push(Op::Inv(y));
            let yi = ops.len() - 1;
            ops.push(Op::Mul(xi, yi));
            Op::Inv(ops.len() - 1)
        }
        Term::Inv(a) => {
            let x = emit(a, ops);
            Op::Inv(x)
        }
    };
    ops.push(op);
    ops.len() - 1
}

/// Equations whose truth is tested together: all premises imply the
/// conclusion. An identity has no premises.
struct Compiled {
    premises: Vec<(Program, Program)>,
    conclusion: (Program, Program),
    var_count: usize,
    slots: usize,
}

impl Compiled {
    fn from_identity(id: &Identity) -> Compiled {
        Compiled::build(&[], id, id.var_count)
    }

    fn from_quasi(q: &QuasiIdentity) -> Compiled {
        Compiled::build(&q.premises, &q.conclusion, q.var_count)
    }

    fn build(premises: &[Identity], conclusion: &Identity, var_count: usize) -> Compiled {
        let pair = |id: &Identity| (Program::compile(&id.lhs), Program::compile(&id.rhs));
        let premises: Vec<_> = premises.iter().map(pair).collect();
        let conclusion = pair(conclusion);
        let slots = premises
            .iter()
            .chain(std::iter::once(&conclusion))
            .map(|(l, r)| l.ops.len().max(r.ops.len()))
            .max()
            .unwrap_or(1);
        Compiled {
            premises,
            conclusion,
            var_count,
            slots,
        }
    }

    #[inline]
    fn satisfied(&self, alg: &IMonoid, asg: &[usize], slots: &mut [usize]) -> bool {
        for (l, r) in &self.premises {
            if l.run(alg, asg, slots) != r.run(alg, asg, slots) {
                return true;
            }
        }
        let (l, r) = &self.conclusion;
        l.run(alg, asg, slots) == r.run(alg, asg, slots)
    }

    /// Scans assignments in lexicographic order, with variable 0 fixed to
    /// `lead` when given, and returns the first failure.
    fn scan(&self, alg: &IMonoid, lead: Option<usize>) -> Option<Vec<usize>> {
        let n = alg.size();
        let k = self.var_count;
        let mut asg = vec![0usize; k];
        let first_free = match lead {
            Some(v) => {
                asg[0] = v;
                1
            }
            None => 0,
        };
        let mut slots = vec![0usize; self.slots];
        loop {
            if !self.satisfied(alg, &asg, &mut slots) {
                return Some(asg);
            }
            let mut i = k;
            loop {
                if i == first_free {
                    return None;
                }
                i -= 1;
                asg[i] += 1;
                if asg[i] < n {
                    break;
                }
                asg[i] = 0;
            }
        }
    }

    fn check(&self, alg: &IMonoid, budget: u64) -> Result<Verdict, CheckError> {
        let n = alg.size() as u128;
        let needed = n.checked_pow(self.var_count as u32).unwrap_or(u128::MAX);
        if needed > budget as u128 {
            return Err(CheckError::BudgetExceeded { needed, budget });
        }
        let found = if needed >= PARALLEL_THRESHOLD && self.var_count > 0 {
            (0..alg.size())
                .into_par_iter()
                .find_map_first(|v| self.scan(alg, Some(v)))
        } else {
            self.scan(alg, None)
        };
        Ok(match found {
            Some(w) => Verdict::Fails(w),
            None => Verdict::Holds,
        })
    }
}

/// Checks `id` on every assignment; on failure returns the lexicographically
/// first failing assignment (the last variable varies fastest).
pub fn check_identity(alg: &IMonoid, id: &Identity) -> Result<Verdict, CheckError> {
    check_identity_with_budget(alg, id, DEFAULT_BUDGET)
}

pub fn check_identity_with_budget(
    alg: &IMonoid,
    id: &Identity,
    budget: u64,
) -> Result<Verdict, CheckError> {
    Compiled::from_identity(id).check(alg, budget)
}

/// Checks that every assignment satisfying all premises satisfies the
/// conclusion.
pub fn check_quasi_identity(alg: &IMonoid, q: &QuasiIdentity) -> Result<Verdict, CheckError> {
    check_quasi_identity_with_budget(alg, q, DEFAULT_BUDGET)
}

pub fn check_quasi_identity_with_budget(
    alg: &IMonoid,
    q: &QuasiIdentity,
    budget: u64,
) -> Result<Verdict, CheckError> {
    Compiled::from_quasi(q).check(alg, budget)
}

pub fn check_law(alg: &IMonoid, law: &Law, budget: u64) -> Result<Verdict, CheckError> {
    match law {
        Law::Identity(id) => check_identity_with_budget(alg, id, budget),
        Law::Quasi(q) => check_quasi_identity_with_budget(alg, q, budget),
    }
}
