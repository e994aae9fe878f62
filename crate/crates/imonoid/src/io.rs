//! Text formats for algebras, decorated posets, semilattices and
//! congruences.
//!
//! Algebra files:
//!
//! ```text
//! algebra M3
//! size 3
//! unit 0
//! inv 1 0 2
//! mul
//! 0 1 2
//! 1 1 1
//! 2 2 2
//! ```
//!
//! Lines starting with `#` are comments. A comment of the form
//! `# elements 1 0 ε` supplies display names.

use crate::algebra::{validate, IMonoid, ValidationReport};
use crate::mccarthy::{BotSemilattice, DecoratedPoset, PosetError, SemilatticeError};
use crate::structure::Congruence;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("invalid algebra: {0}")]
    Invalid(#[from] ValidationReport),
    #[error("invalid poset: {0}")]
    Poset(#[from] PosetError),
    #[error("invalid semilattice: {0}")]
    Semilattice(#[from] SemilatticeError),
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
}

fn join_nums(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Renders an algebra in the text format.
pub fn write_algebra(alg: &IMonoid) -> String {
    let n = alg.size();
    let mut s = String::new();
    if let Some(names) = alg.element_names() {
        let _ = writeln!(s, "# elements {}", names.join(" "));
    }
    let _ = writeln!(s, "algebra {}", alg.name().unwrap_or("unnamed"));
    let _ = writeln!(s, "size {n}");
    let _ = writeln!(s, "unit {}", alg.unit());
    let _ = writeln!(s, "inv {}", join_nums(alg.inv_table().iter().copied()));
    s.push_str("mul\n");
    for row in alg.mul_table().chunks(n) {
        let _ = writeln!(s, "{}", join_nums(row.iter().copied()));
    }
    s
}

/// Non-comment lines with their 1-based line numbers, plus the contents of
/// `# key ...` comments.
struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(src: &'a str) -> Lines<'a> {
        let lines: Vec<(usize, &str)> = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let last = src.lines().count();
        Lines { lines, pos: 0, last }
    }

    fn err<T>(&self, line: usize, message: impl Into<String>) -> Result<T, IoError> {
        Err(IoError::Format {
            line,
            message: message.into(),
        })
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), IoError> {
        match self.lines.get(self.pos) {
            Some(&l) => {
                self.pos += 1;
                Ok(l)
            }
            None => self.err(self.last + 1, format!("unexpected end of input, expected {what}")),
        }
    }

    /// Reads `keyword rest` and returns `rest`.
    fn keyword(&mut self, kw: &str) -> Result<(usize, &'a str), IoError> {
        let (no, line) = self.next(&format!("`{kw}`"))?;
        match line.strip_prefix(kw) {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
                Ok((no, rest.trim()))
            }
            _ => self.err(no, format!("expected `{kw}`, found `{line}`")),
        }
    }

    fn numbers(&self, no: usize, text: &str, expect: usize) -> Result<Vec<usize>, IoError> {
        let nums: Result<Vec<usize>, _> = text.split_whitespace().map(str::parse).collect();
        let nums = match nums {
            Ok(v) => v,
            Err(_) => return self.err(no, format!("expected integers, found `{text}`")),
        };
        if nums.len() != expect {
            return self.err(no, format!("expected {expect} entries, found {}", nums.len()));
        }
        Ok(nums)
    }

    fn size(&mut self) -> Result<usize, IoError> {
        let (no, rest) = self.keyword("size")?;
        match rest.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => self.err(no, format!("bad size `{rest}`")),
        }
    }

    fn finish(&self) -> Result<(), IoError> {
        match self.lines.get(self.pos) {
            Some(&(no, l)) => self.err(no, format!("trailing content `{l}`")),
            None => Ok(()),
        }
    }
}

fn element_names_hint(src: &str, n: usize) -> Option<Vec<String>> {
    src.lines().find_map(|l| {
        let rest = l.trim().strip_prefix('#')?.trim().strip_prefix("elements")?;
        let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        (names.len() == n).then_some(names)
    })
}

/// Parses and validates an algebra file.
pub fn read_algebra(src: &str) -> Result<IMonoid, IoError> {
    let mut lines = Lines::new(src);
    let (_, name) = lines.keyword("algebra")?;
    let n = lines.size()?;
    let (no, rest) = lines.keyword("unit")?;
    let unit = lines.numbers(no, rest, 1)?[0];
    let (no, rest) = lines.keyword("inv")?;
    let inv = lines.numbers(no, rest, n)?;
    lines.keyword("mul")?;
    let mut mul = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, row) = lines.next("a table row")?;
        mul.push(lines.numbers(no, row, n)?);
    }
    lines.finish()?;
    let mut alg = validate(n, unit, &inv, &mul)?;
    if !name.is_empty() && name != "unnamed" {
        alg.set_name(name);
    }
    if let Some(names) = element_names_hint(src, n) {
        alg.set_element_names(Some(names));
    }
    Ok(alg)
}

fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_algebra(path: &Path) -> Result<IMonoid, IoError> {
    read_algebra(&read_file(path)?)
}

/// Renders a decorated poset:
///
/// ```text
/// poset M3
/// size 3
/// skeleton 1 2
/// le
/// 1 0 0
/// 1 1 0
/// 1 0 1
/// ```
pub fn write_poset(dp: &DecoratedPoset) -> String {
    let n = dp.size();
    let mut s = String::new();
    let _ = writeln!(s, "poset {}", dp.name().unwrap_or("unnamed"));
    let _ = writeln!(s, "size {n}");
    let _ = writeln!(s, "skeleton {}", join_nums(dp.skeleton()));
    s.push_str("le\n");
    for a in 0..n {
        let _ = writeln!(s, "{}", join_nums((0..n).map(|b| dp.le(a, b) as usize)));
    }
    s
}

pub fn read_poset(src: &str) -> Result<DecoratedPoset, IoError> {
    let mut lines = Lines::new(src);
    let (_, name) = lines.keyword("poset")?;
    let n = lines.size()?;
    let (no, rest) = lines.keyword("skeleton")?;
    let skel: Vec<usize> = {
        let k = rest.split_whitespace().count();
        lines.numbers(no, rest, k)?
    };
    let mut marks = vec![false; n];
    for &i in &skel {
        if i >= n {
            return lines.err(no, format!("skeleton element {i} out of range"));
        }
        marks[i] = true;
    }
    lines.keyword("le")?;
    let mut le = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, row) = lines.next("an order row")?;
        let bits: Vec<usize> = if row.contains(char::is_whitespace) {
            lines.numbers(no, row, n)?
        } else {
            let packed: String = row.chars().flat_map(|c| [c, ' ']).collect();
            lines.numbers(no, &packed, n)?
        };
        if bits.iter().any(|&b| b > 1) {
            return lines.err(no, "order rows must contain only 0 and 1");
        }
        le.push(bits.into_iter().map(|b| b == 1).collect());
    }
    lines.finish()?;
    let mut dp = DecoratedPoset::new(le, marks)?;
    if !name.is_empty() && name != "unnamed" {
        dp.set_name(name);
    }
    Ok(dp)
}

pub fn load_poset(path: &Path) -> Result<DecoratedPoset, IoError> {
    read_poset(&read_file(path)?)
}

/// Renders a ⊥-semilattice:
///
/// ```text
/// semilattice chain2
/// size 2
/// bottom 0
/// join
/// 0 1
/// 1 1
/// ```
pub fn write_semilattice(sl: &BotSemilattice) -> String {
    let n = sl.size();
    let mut s = String::new();
    let _ = writeln!(s, "semilattice {}", sl.name().unwrap_or("unnamed"));
    let _ = writeln!(s, "size {n}");
    let _ = writeln!(s, "bottom {}", sl.bottom());
    s.push_str("join\n");
    for a in 0..n {
        let _ = writeln!(s, "{}", join_nums((0..n).map(|b| sl.join(a, b))));
    }
    s
}

pub fn read_semilattice(src: &str) -> Result<BotSemilattice, IoError> {
    let mut lines = Lines::new(src);
    let (_, name) = lines.keyword("semilattice")?;
    let n = lines.size()?;
    let (no, rest) = lines.keyword("bottom")?;
    let bottom = lines.numbers(no, rest, 1)?[0];
    lines.keyword("join")?;
    let mut join = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, row) = lines.next("a table row")?;
        join.push(lines.numbers(no, row, n)?);
    }
    lines.finish()?;
    let mut sl = BotSemilattice::new(join, bottom)?;
    if !name.is_empty() && name != "unnamed" {
        sl.set_name(name);
    }
    Ok(sl)
}

pub fn load_semilattice(path: &Path) -> Result<BotSemilattice, IoError> {
    read_semilattice(&read_file(path)?)
}

/// Congruences as CSV, one block-id vector per row, with header
/// `e0,e1,...`.
pub fn write_congruences_csv(n: usize, congs: &[Congruence]) -> String {
    let mut s = (0..n).map(|i| format!("e{i}")).collect::<Vec<_>>().join(",");
    s.push('\n');
    for c in congs {
        let row: Vec<String> = c.blocks().iter().map(|b| b.to_string()).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Spectrum rows as CSV with header `n,count,seconds`.
pub fn write_spectrum_csv(rows: &[(usize, usize, f64)]) -> String {
    let mut s = String::from("n,count,seconds\n");
    for (n, count, secs) in rows {
        let _ = writeln!(s, "{n},{count},{secs:.3}");
    }
    s
}
