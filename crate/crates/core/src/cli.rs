//! Command-line driver behind the `dtors` binary.
//!
//! Exit codes: 0 success, 1 input error, 2 inconsistent input data,
//! 3 resource cap.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closure::{check_torsion_class, generate_minimal, ModuleSet};
use crate::combinatorics::{Context, OsTuple, TupleUniverse};
use crate::enumerate::{enumerate_ainf, enumerate_incremental, enumerate_paper, EnumConfig};
use crate::error::{Error, Result};
use crate::homext::{ext_dim, ext_middle_terms, hom_dim};
use crate::io::{hasse_to_dot, to_canonical_json, DotLabels, PropertiesReport, ResultDocument};
use crate::lattice::{
    build_hasse_with, check_hasse_regular, check_semidistributive_with, TorsionLattice,
    DEFAULT_SD_NODE_CAP,
};

#[derive(Debug, Parser)]
#[command(name = "dtors", version, about = "d-torsion classes of higher Auslander and higher Nakayama algebras of type A")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate every d-torsion class of a context.
    Enumerate(EnumerateArgs),
    /// Least d-torsion class containing a set of generators.
    Closure(ClosureArgs),
    /// Decide whether a set is a d-torsion class.
    Check(CheckArgs),
    /// Hasse diagram of an enumerated collection.
    Hasse(HasseArgs),
    /// Lattice properties of an enumerated collection.
    Props(PropsArgs),
    /// dim Hom(M_x, M_y).
    Hom(PairArgs),
    /// dim Ext^d(M_y, M_x) and the middle terms of the extension.
    Ext(PairArgs),
}

#[derive(Debug, Args)]
pub struct ContextArgs {
    /// Number of vertices of the higher Auslander algebra.
    #[arg(long, conflicts_with = "kupisch")]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: usize,
    /// Kupisch series, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub kupisch: Option<Vec<u32>>,
    /// Read the Kupisch series as a finite A-infinity-infinity series.
    #[arg(long, requires = "kupisch")]
    pub ainf: bool,
    /// Position of the first listed entry of an A-infinity-infinity series.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true, requires = "ainf")]
    pub offset: i64,
}

impl ContextArgs {
    pub fn context(&self) -> Result<Context> {
        match (&self.n, &self.kupisch) {
            (Some(n), None) => Context::auslander(*n, self.d),
            (None, Some(k)) if self.ainf => Context::nakayama_ainf(k.clone(), self.offset, self.d),
            (None, Some(k)) => Context::nakayama_a(k.clone(), self.d),
            _ => Err(Error::Usage(
                "give exactly one of --n or --kupisch together with --d".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Paper,
    Incremental,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    #[arg(long, value_enum, default_value_t = Algorithm::Incremental)]
    pub algorithm: Algorithm,
    /// Print only the number of classes.
    #[arg(long)]
    pub count_only: bool,
    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Write the result document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = EnumConfig::default().max_classes)]
    pub max_classes: usize,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Generators as `t1;t2;...`, each tuple comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub gens: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// JSON array of tuples.
    #[arg(long, conflicts_with = "members")]
    pub class_file: Option<PathBuf>,
    /// Members as `t1;t2;...`.
    #[arg(long, allow_hyphen_values = true)]
    pub members: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Labels {
    Cardinality,
    Full,
}

#[derive(Debug, Args)]
pub struct HasseArgs {
    /// Result document written by `enumerate`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Labels::Cardinality)]
    pub labels: Labels,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Run the semidistributivity scan above the node cap.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = DEFAULT_SD_NODE_CAP)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => 2,
        Error::Resource(_) => 3,
        _ => 1,
    }
}

/// Parses `t1;t2;...`; blank input is the empty list.
pub fn parse_tuple_list(s: &str) -> Result<Vec<OsTuple>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(OsTuple::parse)
        .collect()
}

fn universe(args: &ContextArgs) -> Result<TupleUniverse> {
    crate::combinatorics::build_universe(&args.context()?)
}

fn read_lattice(path: &PathBuf, workers: usize) -> Result<TorsionLattice> {
    let text = std::fs::read_to_string(path)?;
    let doc = ResultDocument::from_json(&text)?;
    let coll = doc.to_collection()?;
    coll.check_invariants(false)?;
    build_hasse_with(coll, workers)
}

/// Runs one parsed command, writing its output to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Enumerate(a) => {
            let ctx = a.context.context()?;
            let cfg = EnumConfig {
                max_classes: a.max_classes,
                workers: a.workers,
                ..EnumConfig::default()
            };
            let doc = if let Context::NakayamaAInfFinite { .. } = ctx {
                if a.algorithm == Algorithm::Paper {
                    return Err(Error::Usage(
                        "--algorithm paper does not apply to A-infinity-infinity series".into(),
                    ));
                }
                let e = enumerate_ainf(&ctx, &cfg)?;
                if a.count_only {
                    writeln!(out, "{}", e.total)?;
                    return Ok(());
                }
                ResultDocument::from_ainf(&ctx, &e)
            } else {
                let coll = match a.algorithm {
                    Algorithm::Paper => enumerate_paper(&ctx, &cfg)?,
                    Algorithm::Incremental => enumerate_incremental(&ctx, &cfg)?,
                };
                if a.count_only {
                    writeln!(out, "{}", coll.len())?;
                    return Ok(());
                }
                ResultDocument::from_collection(&coll)
            };
            let json = doc.to_json()?;
            match a.out {
                Some(path) => std::fs::write(path, json)?,
                None => out.write_all(json.as_bytes())?,
            }
        }
        Command::Closure(a) => {
            let u = universe(&a.context)?;
            let gens = parse_tuple_list(&a.gens)?;
            let class = generate_minimal(&gens, &u)?;
            out.write_all(to_canonical_json(&class.to_tuples(&u))?.as_bytes())?;
        }
        Command::Check(a) => {
            let u = universe(&a.context)?;
            let members: Vec<OsTuple> = match (&a.class_file, &a.members) {
                (Some(path), None) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
                (None, Some(m)) => parse_tuple_list(m)?,
                _ => {
                    return Err(Error::Usage(
                        "give exactly one of --class-file or --members".into(),
                    ))
                }
            };
            let set = ModuleSet::from_tuples(&u, &members)?;
            match check_torsion_class(&set, &u) {
                Ok(()) => writeln!(out, "true")?,
                Err(v) => {
                    writeln!(out, "false")?;
                    out.write_all(to_canonical_json(&v.tuples(&u))?.as_bytes())?;
                }
            }
        }
        Command::Hasse(a) => {
            let lat = read_lattice(&a.input, a.workers)?;
            let text = match a.format {
                Format::Dot => hasse_to_dot(
                    &lat,
                    match a.labels {
                        Labels::Cardinality => DotLabels::Cardinality,
                        Labels::Full => DotLabels::Full,
                    },
                ),
                Format::Json => ResultDocument::from_lattice(&lat).to_json()?,
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Props(a) => {
            let lat = read_lattice(&a.input, a.workers)?;
            let cap = (!a.force).then_some(a.max_nodes);
            let sd = check_semidistributive_with(&lat, cap, a.workers)?;
            let reg = check_hasse_regular(&lat);
            let report = PropertiesReport::new(&lat, &sd, &reg);
            out.write_all(to_canonical_json(&report)?.as_bytes())?;
        }
        Command::Hom(a) => {
            let u = universe(&a.context)?;
            let (x, y) = (OsTuple::parse(&a.x)?, OsTuple::parse(&a.y)?);
            writeln!(out, "{}", hom_dim(&x, &y, &u)?)?;
        }
        Command::Ext(a) => {
            let u = universe(&a.context)?;
            let (x, y) = (OsTuple::parse(&a.x)?, OsTuple::parse(&a.y)?);
            let dim = ext_dim(&y, &x, &u)?;
            let layers = if dim == 0 {
                Vec::new()
            } else {
                ext_middle_terms(&x, &y, &u)?.layers
            };
            let doc = serde_json::json!({ "dim": dim, "layers": layers });
            out.write_all(to_canonical_json(&doc)?.as_bytes())?;
        }
    }
    Ok(())
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli, &mut lock).and_then(|()| Ok(lock.flush()?)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("dtors: {e}");
            exit_code(&e)
        }
    }
}
