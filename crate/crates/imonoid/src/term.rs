//! Terms over the signature `{*, ', 1}` with the derived `+` and `0`.

use std::fmt;

/// A term tree.
///
/// `Join` and `Const0` are derived symbols: `x + y` means `(x' * y')'` and
/// `0` means `1'`. They are kept as nodes so that printing and dualization
/// stay faithful to the source text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const0,
    Const1,
    Mul(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    /// One more than the largest variable index, or 0 for a ground term.
    pub fn var_count(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Const0 | Term::Const1 => 0,
            Term::Mul(a, b) | Term::Join(a, b) => a.var_count().max(b.var_count()),
            Term::Inv(a) => a.var_count(),
        }
    }

    /// De Morgan dual: swaps `*` with `+` and `0` with `1`.
    pub fn dualize(&self) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::Const0 => Term::Const1,
            Term::Const1 => Term::Const0,
            Term::Mul(a, b) => Term::join(a.dualize(), b.dualize()),
            Term::Join(a, b) => Term::mul(a.dualize(), b.dualize()),
            Term::Inv(a) => Term::inv(a.dualize()),
        }
    }

    /// Mirror image: reverses the operands of every `*` and `+`.
    ///
    /// A term holds in the opposite algebra exactly when its mirror holds in
    /// the original one.
    pub fn mirror(&self) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::Const0 => Term::Const0,
            Term::Const1 => Term::Const1,
            Term::Mul(a, b) => Term::mul(b.mirror(), a.mirror()),
            Term::Join(a, b) => Term::join(b.mirror(), a.mirror()),
            Term::Inv(a) => Term::inv(a.mirror()),
        }
    }

    /// Replaces `+` and `0` by their definitions in the primitive signature.
    pub fn expand(&self) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::Const0 => Term::inv(Term::Const1),
            Term::Const1 => Term::Const1,
            Term::Mul(a, b) => Term::mul(a.expand(), b.expand()),
            Term::Join(a, b) => Term::inv(Term::mul(
                Term::inv(a.expand()),
                Term::inv(b.expand()),
            )),
            Term::Inv(a) => Term::inv(a.expand()),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => {
                if !out.contains(i) {
                    out.push(*i);
                }
            }
            Term::Const0 | Term::Const1 => {}
            Term::Mul(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Inv(a) => a.collect_vars(out),
        }
    }

    fn rename(&self, map: &[usize]) -> Term {
        match self {
            Term::Var(i) => Term::Var(map[*i]),
            Term::Const0 => Term::Const0,
            Term::Const1 => Term::Const1,
            Term::Mul(a, b) => Term::mul(a.rename(map), b.rename(map)),
            Term::Join(a, b) => Term::join(a.rename(map), b.rename(map)),
            Term::Inv(a) => Term::inv(a.rename(map)),
        }
    }

    /// Renders the term with the given variable names, using as few
    /// parentheses as the grammar allows.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> TermDisplay<'a> {
        TermDisplay { term: self, names }
    }

    fn prec(&self) -> u8 {
        match self {
            Term::Join(..) => 1,
            Term::Mul(..) => 2,
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        match self {
            Term::Var(i) => match names.get(*i) {
                Some(name) => f.write_str(name),
                None => write!(f, "x{i}"),
            },
            Term::Const0 => f.write_str("0"),
            Term::Const1 => f.write_str("1"),
            Term::Mul(a, b) => {
                write_operand(f, a, names, a.prec() < 2)?;
                f.write_str("*")?;
                write_operand(f, b, names, b.prec() <= 2)
            }
            Term::Join(a, b) => {
                write_operand(f, a, names, a.prec() < 1)?;
                f.write_str(" + ")?;
                write_operand(f, b, names, b.prec() <= 1)
            }
            Term::Inv(a) => {
                write_operand(f, a, names, a.prec() < 3)?;
                f.write_str("'")
            }
        }
    }
}

fn write_operand(
    f: &mut fmt::Formatter<'_>,
    t: &Term,
    names: &[String],
    parens: bool,
) -> fmt::Result {
    if parens {
        f.write_str("(")?;
        t.write(f, names)?;
        f.write_str(")")
    } else {
        t.write(f, names)
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.term.write(f, self.names)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, &default_names(self.var_count()))
    }
}

/// `x, y, z, u, v, w` and then `x6, x7, ...`.
pub fn default_names(k: usize) -> Vec<String> {
    const BASE: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    (0..k)
        .map(|i| match BASE.get(i) {
            Some(s) => s.to_string(),
            None => format!("x{i}"),
        })
        .collect()
}

/// An equation `lhs = rhs`, universally quantified over its variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub var_count: usize,
    /// Display names, one per variable index.
    pub names: Vec<String>,
}

impl Identity {
    /// Builds an identity, renumbering variables densely by first occurrence.
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let mut order = Vec::new();
        lhs.collect_vars(&mut order);
        rhs.collect_vars(&mut order);
        let map = dense_map(&order);
        let names = default_names(order.len());
        Identity {
            lhs: lhs.rename(&map),
            rhs: rhs.rename(&map),
            var_count: order.len(),
            names,
        }
    }

    pub(crate) fn with_names(lhs: Term, rhs: Term, var_count: usize, names: Vec<String>) -> Self {
        Identity {
            lhs,
            rhs,
            var_count,
            names,
        }
    }

    pub fn dualize(&self) -> Identity {
        Identity {
            lhs: self.lhs.dualize(),
            rhs: self.rhs.dualize(),
            var_count: self.var_count,
            names: self.names.clone(),
        }
    }

    /// The left-right mirror image, renumbered by first occurrence.
    pub fn mirror(&self) -> Identity {
        Identity::new(self.lhs.mirror(), self.rhs.mirror())
    }

    /// Same equation with the two sides exchanged.
    pub fn flip(&self) -> Identity {
        Identity {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            var_count: self.var_count,
            names: self.names.clone(),
        }
    }

    /// Structural equality up to swapping sides, ignoring display names.
    pub fn same_equation(&self, other: &Identity) -> bool {
        (self.lhs == other.lhs && self.rhs == other.rhs)
            || (self.lhs == other.rhs && self.rhs == other.lhs)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}",
            self.lhs.display_with(&self.names),
            self.rhs.display_with(&self.names)
        )
    }
}

/// `p1, ..., pk => c`; every part shares one variable numbering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiIdentity {
    pub premises: Vec<Identity>,
    pub conclusion: Identity,
    pub var_count: usize,
    pub names: Vec<String>,
}

impl QuasiIdentity {
    pub fn new(premises: Vec<(Term, Term)>, conclusion: (Term, Term)) -> QuasiIdentity {
        let mut order = Vec::new();
        for (l, r) in &premises {
            l.collect_vars(&mut order);
            r.collect_vars(&mut order);
        }
        conclusion.0.collect_vars(&mut order);
        conclusion.1.collect_vars(&mut order);
        let map = dense_map(&order);
        let names = default_names(order.len());
        let k = order.len();
        let mk = |l: &Term, r: &Term| Identity::with_names(l.rename(&map), r.rename(&map), k, names.clone());
        QuasiIdentity {
            premises: premises.iter().map(|(l, r)| mk(l, r)).collect(),
            conclusion: mk(&conclusion.0, &conclusion.1),
            var_count: k,
            names,
        }
    }

    pub(crate) fn with_names(
        premises: Vec<Identity>,
        conclusion: Identity,
        var_count: usize,
        names: Vec<String>,
    ) -> Self {
        QuasiIdentity {
            premises,
            conclusion,
            var_count,
            names,
        }
    }

    pub fn dualize(&self) -> QuasiIdentity {
        QuasiIdentity {
            premises: self.premises.iter().map(Identity::dualize).collect(),
            conclusion: self.conclusion.dualize(),
            var_count: self.var_count,
            names: self.names.clone(),
        }
    }
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, " => {}", self.conclusion)
    }
}

/// Either kind of law; the catalog stores both under one interface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Identity(Identity),
    Quasi(QuasiIdentity),
}

impl Law {
    pub fn var_count(&self) -> usize {
        match self {
            Law::Identity(id) => id.var_count,
            Law::Quasi(q) => q.var_count,
        }
    }

    pub fn as_identity(&self) -> Option<&Identity> {
        match self {
            Law::Identity(id) => Some(id),
            Law::Quasi(_) => None,
        }
    }

    pub fn names(&self) -> &[String] {
        match self {
            Law::Identity(id) => &id.names,
            Law::Quasi(q) => &q.names,
        }
    }

    pub fn dualize(&self) -> Law {
        match self {
            Law::Identity(id) => Law::Identity(id.dualize()),
            Law::Quasi(q) => Law::Quasi(q.dualize()),
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Identity(id) => id.fmt(f),
            Law::Quasi(q) => q.fmt(f),
        }
    }
}

fn dense_map(order: &[usize]) -> Vec<usize> {
    let max = order.iter().copied().max().map_or(0, |m| m + 1);
    let mut map = vec![usize::MAX; max];
    for (new, &old) in order.iter().enumerate() {
        map[old] = new;
    }
    map
}
