//! The `lcm-lattice` command line. [`run`] returns the text a command would
//! print, so everything here is testable without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{
    betti_table, classify_ideal, is_rigid, BettiEntry, ClassifyError, HomologyCache,
};
use crate::corpus;
use crate::explorer::{
    check_betti_monotonicity, check_concentrated_iff_lattice_linear, check_cover_invariance,
    check_cross_validation, check_face_rigidity, check_scaling_uniqueness, check_transfers,
    enumerate_ln, stratify, verify_rigid_up_closure, CheckReport, TransferError, DEFAULT_BUDGET,
};
use crate::field::FieldSpec;
use crate::lattice::{
    augmented_face_lattice, coordinatize, lcm_lattice, to_dot, LatticeError, LatticeFile,
    SimplicialComplexRep,
};
use crate::monomial::{MonomialError, MonomialIdeal};
use crate::resolution::{
    format_betti_grid, lattice_linear_support, minimalize, taylor_complex, verify_resolution,
    ResolutionDump, ResolutionError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

/// Theorem sweeps available to `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    RigidUpClosure,
    ConcentratedIffLatticeLinear,
    BettiMonotonicity,
    ResolutionTransfer,
    CoverInvariance,
    FaceRigidity,
    CrossValidation,
    ScalingUniqueness,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "lcm-lattice",
    version,
    about = "lcm-lattices, Betti numbers and resolutions of monomial ideals"
)]
pub struct CommandConfig {
    /// Coefficient field: Q, or Fp / GFp for a prime p.
    #[arg(long, global = true, default_value = "Q")]
    pub field: FieldSpec,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Worker threads for parallel sweeps; output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Multigraded Betti numbers from the homology of lattice intervals.
    Betti { input: PathBuf },
    /// Rigid, concentrated and lattice-linear flags with witnesses.
    Classify { input: PathBuf },
    /// Taylor complex, minimalized unless --taylor is given.
    Resolve {
        input: PathBuf,
        #[arg(long)]
        taylor: bool,
    },
    /// The lcm-lattice itself; --format dot gives a Hasse diagram.
    Lattice { input: PathBuf },
    /// Enumerates L(n), optionally with its Betti strata.
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        stratify: bool,
        /// Directory for the atlas and edge files; without it the atlas
        /// goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Runs a theorem sweep; exits 1 on any violation.
    Verify {
        #[arg(value_enum)]
        check: CheckName,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        rigid_only: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample size for the randomized checks.
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

/// What a command printed and whether a `verify` check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub check_failed: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            check_failed: false,
        }
    }
}

/// Reads an input file as an ideal. Lattice JSON (starting with `{`) and
/// complex files (starting with `vertices:`) are coordinatized; ideal files
/// are reduced to their minimal generators.
pub fn load_ideal(path: &Path) -> Result<MonomialIdeal, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parse = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with('{') {
        let lattice = LatticeFile::parse(&text).map_err(|e| parse(e.to_string()))?;
        Ok(coordinatize(&lattice))
    } else if first.starts_with("vertices:") {
        let complex = SimplicialComplexRep::parse(&text).map_err(|e| parse(e.to_string()))?;
        let lattice = augmented_face_lattice(&complex).map_err(|e| parse(e.to_string()))?;
        Ok(coordinatize(&lattice))
    } else {
        let ideal: MonomialIdeal = text
            .parse()
            .map_err(|e: MonomialError| parse(e.to_string()))?;
        if ideal.ngens() == 0 {
            return Err(parse("line 2: the ideal has no generators".into()));
        }
        Ok(ideal.minimalize_generators())
    }
}

fn no_dot(format: OutputFormat, command: &str) -> Result<(), CliError> {
    if format == OutputFormat::Dot {
        Err(CliError::Usage(format!(
            "--format dot is only available for `lattice`, not `{command}`"
        )))
    } else {
        Ok(())
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct BettiReport {
    ideal: String,
    field: FieldSpec,
    totals: Vec<u64>,
    betti: Vec<BettiEntry>,
}

#[derive(Serialize)]
struct ResolveReport {
    ranks: Vec<usize>,
    minimal: bool,
    lattice_linear: bool,
    verified: bool,
    resolution: ResolutionDump,
}

/// Runs one command, inside a dedicated thread pool when `--workers` is set.
pub fn run(config: &CommandConfig) -> Result<Output, CliError> {
    match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(config)),
        None => dispatch(config),
    }
}

fn dispatch(config: &CommandConfig) -> Result<Output, CliError> {
    let field = config.field;
    let format = config.format;
    match &config.command {
        Command::Betti { input } => {
            no_dot(format, "betti")?;
            let ideal = load_ideal(input)?;
            let lcm = lcm_lattice(&ideal)?;
            let table = betti_table(lcm.lattice(), field)?;
            Ok(Output::ok(match format {
                OutputFormat::Json => {
                    let report = BettiReport {
                        ideal: ideal.to_string(),
                        field,
                        totals: table.totals(),
                        betti: table
                            .entries()
                            .map(|((degree, s), value)| BettiEntry {
                                degree,
                                support: s.atom_list(),
                                multidegree: lcm.format_label(s),
                                value,
                            })
                            .collect(),
                    };
                    serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
                }
                _ => format!(
                    "field: {field}\n{}totals: {}\n",
                    format_betti_grid(&table.graded(&lcm)),
                    join(&table.totals())
                ),
            }))
        }
        Command::Classify { input } => {
            no_dot(format, "classify")?;
            let report = classify_ideal(&load_ideal(input)?, field)?;
            Ok(Output::ok(match format {
                OutputFormat::Json => report.to_json() + "\n",
                _ => report.to_string(),
            }))
        }
        Command::Resolve { input, taylor } => {
            no_dot(format, "resolve")?;
            let ideal = load_ideal(input)?;
            let lcm = lcm_lattice(&ideal)?;
            let full = taylor_complex(&ideal, field)?;
            let res = if *taylor { full } else { minimalize(&full) };
            let verification = verify_resolution(&res, &ideal)?;
            let linear = lattice_linear_support(&res, &lcm)?;
            let dump = ResolutionDump::new(&res, ideal.vars());
            Ok(Output::ok(match format {
                OutputFormat::Json => {
                    let report = ResolveReport {
                        ranks: res.ranks(),
                        minimal: res.is_minimal(),
                        lattice_linear: linear.linear,
                        verified: verification.is_ok(),
                        resolution: dump,
                    };
                    serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
                }
                _ => {
                    let yes_no = |b: bool| if b { "yes" } else { "no" };
                    let mut out = format!(
                        "ideal: {ideal}\nfield: {field}\nranks: {}\n",
                        join(&res.ranks())
                    );
                    let _ = writeln!(out, "minimal: {}", yes_no(res.is_minimal()));
                    let _ = writeln!(out, "lattice-linear: {}", yes_no(linear.linear));
                    match &verification.violation {
                        None => out.push_str("verified: yes\n"),
                        Some(v) => {
                            let _ = writeln!(out, "verified: no ({})", v.describe(ideal.vars()));
                        }
                    }
                    out.push_str(&res.betti_grid());
                    out
                }
            }))
        }
        Command::Lattice { input } => {
            let ideal = load_ideal(input)?;
            let lcm = lcm_lattice(&ideal)?;
            let lattice = lcm.lattice();
            Ok(Output::ok(match format {
                OutputFormat::Dot => to_dot(lattice, Some(&lcm)),
                OutputFormat::Json => LatticeFile::from_lattice(lattice).to_json() + "\n",
                OutputFormat::Text => {
                    let mut out = format!("{} atoms, {} elements\n", lattice.n(), lattice.len());
                    for &s in lattice.elements() {
                        let _ = writeln!(out, "{s} {}", lcm.format_label(s));
                    }
                    out
                }
            }))
        }
        Command::Explore {
            n,
            stratify: strata,
            out,
            budget,
        } => {
            no_dot(format, "explore")?;
            let enumeration = enumerate_ln(*n, *budget)?;
            if enumeration.truncated {
                eprintln!(
                    "warning: stopped at the budget of {budget} lattices; L({n}) is incomplete"
                );
            }
            if !strata {
                let mut text = String::new();
                for key in &enumeration.keys {
                    let _ = writeln!(text, "{key}");
                }
                return Ok(Output::ok(text));
            }
            let atlas = stratify(&enumeration.keys, field, &HomologyCache::new())?;
            match out {
                None => Ok(Output::ok(atlas.to_jsonl())),
                Some(dir) => {
                    let io = |path: PathBuf| move |source| CliError::Io { path, source };
                    fs::create_dir_all(dir).map_err(io(dir.clone()))?;
                    let atlas_path = dir.join(format!("L{n}.{field}.atlas.jsonl"));
                    let edges_path = dir.join(format!("L{n}.{field}.edges.jsonl"));
                    fs::write(&atlas_path, atlas.to_jsonl()).map_err(io(atlas_path.clone()))?;
                    fs::write(&edges_path, atlas.edges_jsonl()).map_err(io(edges_path.clone()))?;
                    Ok(Output::ok(format!(
                        "{}wrote {} and {}\n",
                        atlas.summary(),
                        atlas_path.display(),
                        edges_path.display()
                    )))
                }
            }
        }
        Command::Verify {
            check,
            n,
            rigid_only,
            seed,
            count,
        } => {
            no_dot(format, "verify")?;
            let report = run_check(*check, *n, *rigid_only, *seed, *count, field)?;
            let stdout = match format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
                }
                _ => format!(
                    "{report}\n{}\n",
                    if report.passed() { "PASS" } else { "FAIL" }
                ),
            };
            Ok(Output {
                stdout,
                check_failed: !report.passed(),
            })
        }
    }
}

fn run_check(
    check: CheckName,
    n: usize,
    rigid_only: bool,
    seed: u64,
    count: Option<usize>,
    field: FieldSpec,
) -> Result<CheckReport, CliError> {
    let cache = HomologyCache::new();
    let sweep = |cache: &HomologyCache| -> Result<_, CliError> {
        let enumeration = enumerate_ln(n, DEFAULT_BUDGET)?;
        if enumeration.truncated {
            eprintln!("warning: L({n}) truncated at {DEFAULT_BUDGET} lattices");
        }
        let atlas = stratify(&enumeration.keys, field, cache)?;
        Ok((enumeration.keys, atlas))
    };
    Ok(match check {
        CheckName::RigidUpClosure => {
            let (_, atlas) = sweep(&cache)?;
            let mut report = CheckReport::new("rigid-up-closure");
            atlas
                .strata
                .values()
                .for_each(|s| report.absorb(verify_rigid_up_closure(s)));
            report
        }
        CheckName::ConcentratedIffLatticeLinear => {
            check_concentrated_iff_lattice_linear(&sweep(&cache)?.1, rigid_only)?
        }
        CheckName::BettiMonotonicity => check_betti_monotonicity(&sweep(&cache)?.1),
        CheckName::ResolutionTransfer => check_transfers(&sweep(&cache)?.1, &cache)?,
        CheckName::CoverInvariance => check_cover_invariance(&sweep(&cache)?.0, field, &cache)?,
        CheckName::FaceRigidity => {
            check_face_rigidity(seed, count.unwrap_or(50), 6, field, &cache)?
        }
        CheckName::CrossValidation => {
            let fields = if field == FieldSpec::Rationals {
                vec![FieldSpec::Rationals, FieldSpec::Prime(2)]
            } else {
                vec![field]
            };
            check_cross_validation(seed, count.unwrap_or(100), &fields)?
        }
        CheckName::ScalingUniqueness => {
            let mut rigid = Vec::new();
            for (_, ideal) in corpus::all() {
                let lcm = lcm_lattice(&ideal)?;
                if is_rigid(&betti_table(lcm.lattice(), field)?).rigid {
                    rigid.push(ideal);
                }
            }
            check_scaling_uniqueness(&rigid, field, count.unwrap_or(10), seed)?
        }
    })
}

/// Parses `args`, runs the command and prints its output. Exit codes: 0 on
/// success, 1 when a `verify` check finds violations, 2 on usage, parse or
/// input errors.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CommandConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&config) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            if out.check_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
