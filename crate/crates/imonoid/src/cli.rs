//! The `imonoid` command line.

use crate::algebra::{builtin, IMonoid};
use crate::enumerate::{
    enumerate_models_with, fine_spectrum_with, isomorphism, EnumConfig, EnumError,
};
use crate::eval::{check_law, eval, CheckError, Verdict, DEFAULT_BUDGET};
use crate::io::{self, IoError};
use crate::mccarthy::{
    construct_i2, construct_i2_eps, decompose, decorated_poset, reconstruct, scan_order_conjecture,
    StructError,
};
use crate::parse::parse_law;
use crate::structure::{all_congruences, is_subdirectly_irreducible, Congruence, StructureError};
use crate::term::Law;
use crate::theory::{satisfies_theory, TheoryVerdict, TheorySpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "imonoid", version, about = "Finite i-monoids and McCarthy algebras")]
pub struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Where an algebra comes from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// A builtin algebra (M3, WK, 2, ...).
    #[arg(long)]
    pub builtin: Option<String>,
    /// An algebra file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PosetFormat {
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count models of each size as CSV.
    Spectrum {
        #[arg(long, default_value = "mccarthy")]
        theory: String,
        #[arg(long)]
        max: usize,
        /// Seconds allowed per size.
        #[arg(long)]
        budget: Option<u64>,
        /// Skip isomorph rejection during search and deduplicate afterwards.
        #[arg(long)]
        posthoc: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an identity or a theory.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "id", required_unless_present = "id")]
        theory: Option<String>,
        #[arg(long)]
        id: Option<String>,
    },
    /// Write one file per model of the given size.
    Enumerate {
        #[arg(long, default_value = "mccarthy")]
        theory: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the skeleton, fibers and transition maps.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Emit the decorated poset.
    Poset {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "dot")]
        format: PosetFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild an algebra from a decorated poset file.
    Reconstruct {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the McCarthy algebra with two-element fibers over a semilattice.
    BuildSl2 {
        #[arg(long)]
        semilattice: PathBuf,
        /// Adjoin a top and merge its fiber into one element.
        #[arg(long)]
        adjoin_top: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide subdirect irreducibility and print the monolith.
    Si {
        #[command(flatten)]
        input: Input,
    },
    /// List all congruences as CSV.
    Congruences {
        #[command(flatten)]
        input: Input,
    },
    /// Decide isomorphism with another algebra.
    Iso {
        #[command(flatten)]
        input: Input,
        /// A builtin name or an algebra file.
        #[arg(long)]
        with: String,
    },
    /// Look for McCarthy algebras sharing an induced order.
    ScanOrder {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Budget(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::TimeBudget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<StructError> for CliError {
    fn from(e: StructError) -> Self {
        match e {
            StructError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Whether the command's property held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

fn load(input: &Input) -> Result<IMonoid, CliError> {
    match (&input.builtin, &input.file) {
        (Some(name), _) => builtin(name).map_err(|e| CliError::Usage(e.to_string())),
        (None, Some(path)) => Ok(io::load_algebra(path)?),
        (None, None) => Err(CliError::Usage("no input algebra".into())),
    }
}

fn load_named(spec: &str) -> Result<IMonoid, CliError> {
    match builtin(spec) {
        Ok(a) => Ok(a),
        Err(_) if Path::new(spec).exists() => Ok(io::load_algebra(Path::new(spec))?),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn theory(spec: &str) -> Result<TheorySpec, CliError> {
    TheorySpec::resolve(spec).map_err(|e| CliError::Usage(e.to_string()))
}

fn config(budget: Option<u64>, orderly: bool) -> EnumConfig {
    EnumConfig {
        orderly,
        time_budget: match budget {
            Some(s) => Some(Duration::from_secs(s)),
            None => EnumConfig::default().time_budget,
        },
    }
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => io::write_file(p, text)?,
        None => write_out(out, text)?,
    }
    Ok(())
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Usage(format!("stdout: {e}")))
}

fn witness_line(alg: &IMonoid, names: &[String], w: &[usize]) -> String {
    names
        .iter()
        .zip(w)
        .map(|(v, &a)| format!("{v}={}", alg.element_name(a)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `FAIL` line for a failing law, with both sides evaluated when it is an
/// identity.
fn fail_line(alg: &IMonoid, law: &Law, w: &[usize]) -> String {
    match law {
        Law::Identity(id) => {
            let l = eval(&id.lhs, alg, w).expect("witness in range");
            let r = eval(&id.rhs, alg, w).expect("witness in range");
            format!(
                "{}: {} = {} but {} = {}",
                witness_line(alg, &id.names, w),
                id.lhs.display_with(&id.names),
                alg.element_name(l),
                id.rhs.display_with(&id.names),
                alg.element_name(r)
            )
        }
        Law::Quasi(q) => witness_line(alg, &q.names, w),
    }
}

fn blocks_line(alg: &IMonoid, c: &Congruence) -> String {
    c.classes()
        .iter()
        .map(|b| {
            let names: Vec<String> = b.iter().map(|&a| alg.element_name(a)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

/// Runs a parsed command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Spectrum {
            theory: t,
            max,
            budget,
            posthoc,
            out: path,
        } => {
            let th = theory(t)?;
            let cfg = config(*budget, !posthoc);
            if path.is_none() {
                write_out(out, "n,count,seconds\n")?;
            }
            let mut stream_err = None;
            let spec = fine_spectrum_with(*max, &th, &cfg, |(n, c, s)| {
                if path.is_none() {
                    if let Err(e) = write_out(out, &format!("{n},{c},{s:.3}\n")) {
                        stream_err.get_or_insert(e);
                    }
                }
            })?;
            if let Some(e) = stream_err {
                return Err(e);
            }
            if let Some(p) = path {
                io::write_file(p, &io::write_spectrum_csv(&spec.rows))?;
            }
            if let Some(n) = spec.incomplete {
                return Err(CliError::Budget(format!("time budget exhausted at n={n}")));
            }
            Ok(Outcome::Pass)
        }
        Command::Check { input, theory: t, id } => {
            let alg = load(input)?;
            if let Some(src) = id {
                let law = parse_law(src).map_err(|e| CliError::Usage(e.to_string()))?;
                return match check_law(&alg, &law, DEFAULT_BUDGET)? {
                    Verdict::Holds => {
                        write_out(out, "PASS\n")?;
                        Ok(Outcome::Pass)
                    }
                    Verdict::Fails(w) => {
                        write_out(out, &format!("FAIL {}\n", fail_line(&alg, &law, &w)))?;
                        Ok(Outcome::Fail)
                    }
                };
            }
            let th = theory(t.as_deref().unwrap_or_default())?;
            match satisfies_theory(&alg, &th)? {
                TheoryVerdict::Holds => {
                    write_out(out, "PASS\n")?;
                    Ok(Outcome::Pass)
                }
                TheoryVerdict::Fails { key, witness } => {
                    let law = &th.laws().iter().find(|(k, _)| *k == key).expect("failing key").1;
                    let line = fail_line(&alg, law, &witness);
                    write_out(out, &format!("FAIL {key} {line}\n"))?;
                    Ok(Outcome::Fail)
                }
            }
        }
        Command::Enumerate {
            theory: t,
            size,
            out_dir,
            budget,
        } => {
            let th = theory(t)?;
            let models = enumerate_models_with(*size, &th, &config(*budget, true))?;
            std::fs::create_dir_all(out_dir).map_err(|source| IoError::File {
                path: out_dir.display().to_string(),
                source,
            })?;
            let stem = file_stem(th.name());
            for (k, m) in models.iter().enumerate() {
                let name = format!("{stem}_{size}_{k}");
                let path = out_dir.join(format!("{name}.alg"));
                io::write_file(&path, &io::write_algebra(&m.clone().with_name(name)))?;
                write_out(out, &format!("{}\n", path.display()))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Decompose { input } => {
            let alg = load(input)?;
            let sys = decompose(&alg)?;
            let nm = |a: usize| alg.element_name(a);
            let sk = &sys.skeleton;
            let mut text = String::new();
            let covers: Vec<String> = sk
                .elements()
                .iter()
                .flat_map(|&i| sk.elements().iter().map(move |&j| (i, j)))
                .filter(|&(i, j)| {
                    i != j
                        && sk.le(i, j)
                        && !sk.elements().iter().any(|&k| k != i && k != j && sk.le(i, k) && sk.le(k, j))
                })
                .map(|(i, j)| format!("{} < {}", nm(i), nm(j)))
                .collect();
            if covers.is_empty() {
                text.push_str(&format!("skeleton {}\n", nm(sk.bottom())));
            } else {
                text.push_str(&format!("skeleton {}\n", covers.join(", ")));
            }
            for f in &sys.fibers {
                let mut sorted = f.elements.clone();
                sorted.sort_by_key(|&a| f.elements.iter().filter(|&&b| alg.join(b, a) == a).count());
                let els: Vec<String> = sorted.iter().map(|&a| nm(a)).collect();
                text.push_str(&format!(
                    "fiber {} {{{}}} bottom {} top {}\n",
                    nm(f.index),
                    els.join(","),
                    nm(f.bottom()),
                    nm(f.top)
                ));
            }
            for (&(i, j), img) in &sys.transitions {
                if i == j {
                    continue;
                }
                let src = &sys.fiber(i).expect("fiber").elements;
                let maps: Vec<String> =
                    src.iter().zip(img).map(|(&x, &y)| format!("{}->{}", nm(x), nm(y))).collect();
                text.push_str(&format!("p {} {}: {}\n", nm(i), nm(j), maps.join(" ")));
            }
            write_out(out, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Poset {
            input,
            format,
            out: path,
        } => {
            let alg = load(input)?;
            let dp = decorated_poset(&alg)?;
            let text = match format {
                PosetFormat::Dot => dp.to_dot(),
                PosetFormat::Text => io::write_poset(&dp),
            };
            emit(out, path, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Reconstruct { poset, out: path } => {
            let dp = io::load_poset(poset)?;
            let alg = reconstruct(&dp).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(out, path, &io::write_algebra(&alg))?;
            Ok(Outcome::Pass)
        }
        Command::BuildSl2 {
            semilattice,
            adjoin_top,
            out: path,
        } => {
            let sl = io::load_semilattice(semilattice)?;
            let alg = if *adjoin_top {
                construct_i2_eps(&sl)
            } else {
                construct_i2(&sl)
            };
            emit(out, path, &io::write_algebra(&alg))?;
            Ok(Outcome::Pass)
        }
        Command::Si { input } => {
            let alg = load(input)?;
            match is_subdirectly_irreducible(&alg)? {
                Some(mono) => {
                    write_out(out, &format!("SI monolith {}\n", blocks_line(&alg, &mono)))?;
                    Ok(Outcome::Pass)
                }
                None => {
                    write_out(out, "NOT SI\n")?;
                    Ok(Outcome::Fail)
                }
            }
        }
        Command::Congruences { input } => {
            let alg = load(input)?;
            let lat = all_congruences(&alg)?;
            write_out(out, &io::write_congruences_csv(alg.size(), lat.congruences()))?;
            Ok(Outcome::Pass)
        }
        Command::Iso { input, with } => {
            let a = load(input)?;
            let b = load_named(with)?;
            match isomorphism(&a, &b) {
                Some(f) => {
                    let maps: Vec<String> = f
                        .iter()
                        .enumerate()
                        .map(|(x, &y)| format!("{}->{}", a.element_name(x), b.element_name(y)))
                        .collect();
                    write_out(out, &format!("ISOMORPHIC {}\n", maps.join(" ")))?;
                    Ok(Outcome::Pass)
                }
                None => {
                    write_out(out, "NOT ISOMORPHIC\n")?;
                    Ok(Outcome::Fail)
                }
            }
        }
        Command::ScanOrder { max, budget } => {
            let pairs = scan_order_conjecture(*max, &config(*budget, true))?;
            if pairs.is_empty() {
                write_out(out, &format!("no shared induced orders up to size {max}\n"))?;
                return Ok(Outcome::Pass);
            }
            let mut text = String::new();
            for (a, b) in &pairs {
                text.push_str(&format!("shared order at size {}\n", a.size()));
                text.push_str(&io::write_algebra(a));
                text.push_str(&io::write_algebra(b));
            }
            write_out(out, &text)?;
            Ok(Outcome::Fail)
        }
    }
}
