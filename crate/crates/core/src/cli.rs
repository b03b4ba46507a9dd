//! Command-line front end.
//!
//! Exit codes: `0` success, `1` unreadable file or malformed input, `2` no
//! applicable algorithm, `3` SDP solver failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::experiment::{rows_to_csv, run_experiment, ExperimentSpec};
use crate::format::parse_instance;
use crate::gaps::{
    build_gamma5_gap_limited, gamma5_auto_length, three_lin_gap_instance, verify_gap, GapCertificate,
};
use crate::instance::{Instance, DEFAULT_BRUTE_CAP};
use crate::poly::{check_up_to, separating_hyperplane, weighted_hyperplane_cover, FamilyKind, Separation, Verdict};
use crate::predicate::{tuple_of, tuple_string, PredicatePair};
use crate::round::{robust_solve, Algorithm};
use crate::sdp::DEFAULT_TOL;

/// Environment variable overriding the brute-force variable cap.
pub const BRUTE_CAP_ENV: &str = "PCSP_BRUTE_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_ALGORITHM: i32 = 2;
pub const EXIT_SDP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pcsp", version, about = "Robust algorithms and SDP gaps for Boolean folded promise CSPs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce, relax and round an instance.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        sdp_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a threshold family against every pair of a template.
    Check {
        #[arg(long)]
        template: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 7)]
        max_arity: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify an integrality gap certificate.
    Gap {
        #[command(subcommand)]
        kind: GapKind,
    },
    /// Run a sweep described by a TOML spec and write CSV.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GapKind {
    /// The chain construction for `(Ham_k{1,k}, all ∖ Ham_k{b})`.
    Gamma5 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
        /// Chain length, or `auto` to measure it from a configuration path.
        #[arg(long = "L", visible_alias = "length", default_value = "auto")]
        length: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The two-constraint 3-LIN instance.
    ThreeLin {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Any instance document.
    Instance {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Maj,
    At,
    Or,
    Parity,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Maj => FamilyKind::Maj,
            Family::At => FamilyKind::At,
            Family::Or => FamilyKind::Or,
            Family::Parity => FamilyKind::Parity,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoAlgorithm(_) => EXIT_NO_ALGORITHM,
        Error::Sdp { .. } => EXIT_SDP,
        _ => EXIT_INPUT,
    }
}

/// Cap from [`BRUTE_CAP_ENV`], falling back to the default.
pub fn brute_cap() -> Result<usize> {
    match std::env::var(BRUTE_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Invalid(format!("{BRUTE_CAP_ENV} must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BRUTE_CAP),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Error::Invalid(e.to_string()))
}

fn verdict_json(l: usize, v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({ "arity": l, "holds": true }),
        Verdict::Fails(c) => json!({
            "arity": l,
            "holds": false,
            "rows": c.rows.iter().map(|r| tuple_string(r)).collect::<Vec<_>>(),
            "output": tuple_string(&c.output),
        }),
    }
}

fn separation_json(s: &Separation) -> Value {
    match s {
        Separation::Weight(w) => json!({
            "weight": w.w.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "margin": w.margin.to_string(),
        }),
        Separation::Witness(w) => json!({
            "witness": w.multiplicities.iter().map(|(t, m)| json!({ "tuple": tuple_string(t), "count": m })).collect::<Vec<_>>(),
            "extra": tuple_string(&w.extra),
            "majority": tuple_string(&w.majority()),
        }),
    }
}

/// Per-pair report for one family.
pub fn check_report(pairs: &[PredicatePair], family: Family, max_arity: usize) -> Result<Value> {
    let mut out = Vec::new();
    for (i, pair) in pairs.iter().enumerate() {
        let verdicts = check_up_to(pair, family.into(), max_arity)?;
        let holds = verdicts.iter().all(|(_, v)| v.holds());
        let mut entry = json!({
            "pair": i + 1,
            "holds": holds,
            "arities": verdicts.iter().map(|(l, v)| verdict_json(*l, v)).collect::<Vec<_>>(),
        });
        match family {
            Family::Maj => {
                // MAJ of every odd arity exists iff each negated child keeps all-minus out of its closure.
                let k = pair.arity();
                let mut seps = Vec::new();
                for x in pair.weak().missing_codes() {
                    let flip: Vec<i8> = tuple_of(x, k).iter().map(|s| -s).collect();
                    let child = pair.strong().flip(&flip);
                    if child.is_empty() {
                        continue;
                    }
                    seps.push(json!({ "excluded": tuple_string(&tuple_of(x, k)), "separation": separation_json(&separating_hyperplane(&child)?) }));
                }
                entry["separations"] = Value::Array(seps);
            }
            Family::At => {
                entry["cover"] = match weighted_hyperplane_cover(pair) {
                    Ok(cover) => Value::Array(
                        cover
                            .iter()
                            .map(|h| json!({ "weight": h.w.iter().map(ToString::to_string).collect::<Vec<_>>(), "offset": h.b.to_string() }))
                            .collect(),
                    ),
                    Err(e) => json!({ "error": e.to_string() }),
                };
            }
            Family::Or | Family::Parity => {}
        }
        out.push(entry);
    }
    Ok(json!({ "family": format!("{family:?}").to_lowercase(), "max_arity": max_arity, "pairs": out }))
}

fn gap_certificate(kind: &GapKind) -> Result<GapCertificate> {
    let cap = brute_cap()?;
    match kind {
        GapKind::Gamma5 { k, b, length, tol, .. } => {
            let l = if length == "auto" {
                gamma5_auto_length(*k)?
            } else {
                length.parse().map_err(|_| Error::Invalid(format!("--L must be `auto` or an integer, got `{length}`")))?
            };
            let gap = build_gamma5_gap_limited(*k, *b, l, cap)?;
            let mut cert = verify_gap(&gap.instance, *tol, cap)?;
            cert.note = Some(gap.describe());
            Ok(cert)
        }
        GapKind::ThreeLin { tol, .. } => verify_gap(&three_lin_gap_instance(), *tol, cap),
        GapKind::Instance { instance, tol, .. } => verify_gap(&read_instance(instance)?, *tol, cap),
    }
}

fn run_command(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Solve { instance, algorithm, trials, seed, sdp_tol, out } => {
            let inst = read_instance(instance)?;
            let report = robust_solve(&inst, *algorithm, *trials, *seed, *sdp_tol)?;
            emit(out.as_deref(), &to_json(&report)?)
        }
        Command::Check { template, family, max_arity, out } => {
            let inst = read_instance(template)?;
            let report = check_report(inst.template().pairs(), *family, *max_arity)?;
            emit(out.as_deref(), &to_json(&report)?)
        }
        Command::Gap { kind } => {
            let out = match kind {
                GapKind::Gamma5 { out, .. } | GapKind::ThreeLin { out, .. } | GapKind::Instance { out, .. } => out,
            };
            let cert = gap_certificate(kind)?;
            emit(out.as_deref(), &to_json(&cert)?)
        }
        Command::Experiment { spec, out } => {
            let parsed = ExperimentSpec::parse(&read(spec)?)?;
            let base = spec.parent().unwrap_or(Path::new("."));
            let template = parsed.resolve_template(base)?;
            let rows = run_experiment(&parsed, &template)?;
            emit(out.as_deref(), &rows_to_csv(&rows)?)
        }
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run_command(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
