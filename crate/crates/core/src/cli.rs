//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog;
use crate::checker::{self, Verdict};
use crate::entropy::{
    default_sizes, entropy_finite_size, entropy_logdet, entropy_logdet_budget, mahler_measure, EntropyEstimate,
    LaurentPoly2, DEFAULT_LOGDET_TOL, DEFAULT_MAHLER_TOL, DEFAULT_MAX_N, LOGDET_MAX_EVALS,
};
use crate::error::Error;
use crate::hyperbolic::bipyramid_volume;
use crate::invariants::{
    black_weight_log, isoradial_entropy, right_angled_volume, validate_angles, HalfAngleAssignment,
};
use crate::lattice_file::{AngleRecord, LatticeFile};
use crate::map::validate;
use crate::planar::{planar_patch, PlanarGraph};
use crate::report::{self, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lattice-entropy", version, about = "Volume bounds and spanning tree entropy of biperiodic lattices")]
pub struct Cli {
    /// Worker threads for parallel work (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Md,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Md => Format::Markdown,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EntropyMethod {
    Logdet,
    FiniteSize,
}

#[derive(Debug, Args)]
pub struct TolArg {
    /// Absolute tolerance on the entropy per fundamental domain.
    #[arg(long, default_value_t = DEFAULT_LOGDET_TOL)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog lattices.
    List,
    /// Print the structure and validation checks of a lattice.
    Show { lattice: String },
    /// Geometric invariants, optionally with a half-angle assignment.
    Invariants {
        lattice: String,
        /// JSON file holding an array of angle records.
        #[arg(long)]
        angles: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Spanning tree entropy.
    Entropy {
        lattice: String,
        #[arg(long, value_enum, default_value = "logdet")]
        method: EntropyMethod,
        #[command(flatten)]
        tol: TolArg,
        /// Largest cover size for the finite-size method.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        /// Cap on symbol evaluations for the logdet method.
        #[arg(long, default_value_t = LOGDET_MAX_EVALS)]
        max_evals: usize,
        #[arg(long)]
        json: bool,
    },
    /// Mahler measure of a two-variable Laurent polynomial file.
    Mahler {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAHLER_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Check both volume bounds for one lattice.
    Check {
        lattice: String,
        #[command(flatten)]
        tol: TolArg,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the full table of catalog lattices.
    Table1 {
        #[arg(long, value_enum, default_value = "md")]
        format: OutputFormat,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Verify a construction that makes the bounds strict.
    Family {
        #[arg(value_enum)]
        kind: FamilyKind,
        /// Base lattice (hexagonal by default).
        #[arg(default_value = "hexagonal")]
        lattice: String,
        /// Edge multiplicity for `gs`.
        #[arg(long, default_value_t = 2)]
        s: usize,
        /// Number of iterations.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum, default_value = "md")]
        format: OutputFormat,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Finite plane graphs.
    Planar {
        #[command(subcommand)]
        command: PlanarCommand,
    },
    /// Volume of the ideal bipyramid over an n-gon.
    Bipyramid { n: u64 },
    /// Write a catalog lattice as a lattice file.
    Export {
        lattice: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyKind {
    Gs,
    Truncate,
    Medial,
}

#[derive(Debug, Subcommand)]
pub enum PlanarCommand {
    /// Spanning tree count and bounds for a planar graph file.
    Tau {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cut an n-by-n patch of fundamental domains out of a lattice.
    Patch {
        lattice: String,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also print the bound check for the patch.
        #[arg(long)]
        check: bool,
    },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_NON_CONVERGENCE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` and runs the command, writing to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // A global pool can only be installed once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = std::result::Result<i32, Error>;

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes())
        .and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") })
        .map_err(|e| Error::io("<stdout>", e))?;
    Ok(EXIT_OK)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("value serializes")
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::List => {
            let mut text = String::new();
            for e in catalog::all()? {
                let row = e.expected.map(|x| x.row.to_string()).unwrap_or_else(|| "-".into());
                text.push_str(&format!(
                    "{:>2}  {:<14} |V|={:<2} |E|={:<2} {}\n",
                    row,
                    e.name,
                    e.map.vertex_count(),
                    e.map.edge_count(),
                    e.aliases.join(", ")
                ));
            }
            emit(out, &text)
        }
        Command::Show { lattice } => {
            let (map, _) = catalog::resolve(&lattice)?;
            let mut text = format!(
                "{}: |V| = {}, |E| = {}, |F| = {}\nvertex degrees: {:?}\nface degrees: {:?}\n",
                map.name().unwrap_or(&lattice),
                map.vertex_count(),
                map.edge_count(),
                map.face_count(),
                map.vertex_degrees(),
                map.face_degrees()
            );
            text.push_str(&validate(&map).to_string());
            emit(out, &text)
        }
        Command::Invariants { lattice, angles, json } => {
            let (map, _) = catalog::resolve(&lattice)?;
            let report = checker::geometric_report(map.name().unwrap_or(&lattice), &map);
            if json && angles.is_none() {
                return emit(out, &to_json(&report));
            }
            let mut text = report::render_invariants(&report);
            if let Some(path) = angles {
                let raw = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                let records: Vec<AngleRecord> = serde_json::from_str(&raw)?;
                let theta = HalfAngleAssignment::from_records(&map, &records)?;
                let diag = validate_angles(&map, &theta)?;
                text.push_str(&diag.to_string());
                if !diag.failures().any(|_| true) {
                    let vol = right_angled_volume(&map, &theta)?;
                    let iso = isoradial_entropy(&map, &theta)?;
                    let black = black_weight_log(&map, &theta)?;
                    text.push_str(&format!(
                        "vol_perp = {vol:.5}\nisoradial m(p) = {iso:.5}\nblack weight log = {black:.5}\nz_fd = {:.5}\n",
                        iso - black
                    ));
                }
            }
            emit(out, &text)
        }
        Command::Entropy { lattice, method, tol, max_n, max_evals, json } => {
            let (map, _) = catalog::resolve(&lattice)?;
            let est = match method {
                EntropyMethod::Logdet => entropy_logdet_budget(&map, tol.tol, max_evals)?,
                EntropyMethod::FiniteSize => entropy_finite_size(&map, &default_sizes(max_n))?,
            };
            if json {
                return emit(out, &to_json(&est));
            }
            emit(out, &render_estimate(&est, map.vertex_count()))
        }
        Command::Mahler { file, tol, json } => {
            let p = LaurentPoly2::load(&file)?;
            let est = mahler_measure(&p, tol)?;
            if json {
                return emit(out, &to_json(&est));
            }
            emit(
                out,
                &format!(
                    "m(p) = {:.8} (+/- {:.1e}, {} evaluations)\n2pi m(p) = {:.5}\n",
                    est.value,
                    est.error,
                    est.samples,
                    2.0 * std::f64::consts::PI * est.value
                ),
            )
        }
        Command::Check { lattice, tol, json } => {
            let (map, refs) = catalog::resolve(&lattice)?;
            let report = match catalog::get(&lattice) {
                Ok(entry) => checker::check_entry(&entry, tol.tol)?,
                Err(_) => checker::check_bounds(map.name().unwrap_or(&lattice), &map, &refs, tol.tol)?,
            };
            let code = if report.any_failure() { EXIT_BOUND_FAILURE } else { EXIT_OK };
            let text = if json { to_json(&report) } else { report::render_invariants(&report) };
            emit(out, &text)?;
            Ok(code)
        }
        Command::Table1 { format, tol } => {
            let reports = checker::table1(tol.tol);
            emit(out, &report::render_table(&reports, format.into()))?;
            if reports.iter().any(|r| r.error.is_some()) {
                Ok(EXIT_NON_CONVERGENCE)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Family { kind, lattice, s, steps, format, tol } => {
            run_family(kind, &lattice, s, steps, format.into(), tol.tol, out)
        }
        Command::Planar { command } => match command {
            PlanarCommand::Tau { file, json } => {
                let g = PlanarGraph::load(&file)?;
                let r = checker::check_planar(&g)?;
                let code = if r.any_failure() { EXIT_BOUND_FAILURE } else { EXIT_OK };
                emit(out, &if json { to_json(&r) } else { report::render_planar(&r) })?;
                Ok(code)
            }
            PlanarCommand::Patch { lattice, n, output, check } => {
                let (map, _) = catalog::resolve(&lattice)?;
                let g = planar_patch(&map, n)?;
                match output {
                    Some(path) => {
                        std::fs::write(&path, g.to_json()).map_err(|e| Error::io(&path, e))?;
                    }
                    None if !check => return emit(out, &g.to_json()),
                    None => {}
                }
                if check {
                    let r = checker::check_planar(&g)?;
                    emit(out, &report::render_planar(&r))?;
                    if r.any_failure() {
                        return Ok(EXIT_BOUND_FAILURE);
                    }
                }
                Ok(EXIT_OK)
            }
        },
        Command::Bipyramid { n } => {
            let v = bipyramid_volume(n)?;
            emit(out, &format!("{v:.10}\n"))
        }
        Command::Export { lattice, output } => {
            let file = match catalog::get(&lattice) {
                Ok(entry) => catalog::export(&entry),
                Err(_) => LatticeFile::from_map(&catalog::resolve(&lattice)?.0),
            };
            let text = file.to_json();
            match output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
                    Ok(EXIT_OK)
                }
                None => emit(out, &text),
            }
        }
    }
}

fn render_estimate(est: &EntropyEstimate, vertices: usize) -> String {
    let mut text = format!(
        "method = {}\nz_fd = {:.8} (+/- {:.1e})\nz = {:.8}\nsamples = {}\n",
        est.method,
        est.value,
        est.error,
        est.value / vertices as f64,
        est.samples
    );
    for (n, v) in &est.sequence {
        text.push_str(&format!("  n = {n:>3}: {v:.8}\n"));
    }
    text
}

fn run_family(
    kind: FamilyKind,
    lattice: &str,
    s: usize,
    steps: usize,
    format: Format,
    tol: f64,
    out: &mut dyn Write,
) -> CmdResult {
    let (map, _) = catalog::resolve(lattice)?;
    let name = map.name().unwrap_or(lattice).to_string();
    let mut reports = Vec::new();
    match kind {
        FamilyKind::Gs => {
            if s < 2 {
                return Err(Error::InvalidInput("edge multiplicity must be at least 2".into()));
            }
            reports.push(checker::verify_parallel(&name, &map, s, tol)?);
        }
        FamilyKind::Truncate => {
            let mut g = map;
            let mut label = name;
            for _ in 0..steps.max(1) {
                let r = checker::verify_truncate(&label, &g, tol)?;
                g = crate::map::truncate(&g)?;
                label = r.name.clone();
                reports.push(r);
            }
        }
        FamilyKind::Medial => {
            let z_fd = entropy_logdet(&map, tol)?.value;
            let nv = map.vertex_count() as f64;
            let members = checker::medial_truncation_family_from(&map, z_fd, steps, |n| {
                let p = 3f64.powi(n as i32);
                z_fd + nv * (p - 1.0) / 4.0 * 15f64.ln() + nv * p / 2.0 * 6f64.ln()
            })?;
            let failed = members
                .iter()
                .any(|m| !m.identity.passed || m.upper.verdict != Verdict::Holds);
            let mut text = report::render_family(&members, format);
            if format != Format::Json {
                text.push_str(&report::render_verdicts(&checker::proof_constants()));
            }
            emit(out, &text)?;
            return Ok(if failed { EXIT_BOUND_FAILURE } else { EXIT_OK });
        }
    }
    let failed = reports.iter().any(|r| !r.all_passed());
    let text = if format == Format::Json {
        to_json(&reports)
    } else {
        reports.iter().map(report::render_theorem).collect::<Vec<_>>().join("\n")
    };
    emit(out, &text)?;
    Ok(if failed { EXIT_BOUND_FAILURE } else { EXIT_OK })
}
