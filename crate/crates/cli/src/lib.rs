//! Command-line front end for `dgtime`: convergence studies, system
//! validation and a projection demo.

pub mod config;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dgtime::systems::{build_heat_1d, load_system_file, stokes3, validate_system, HeatSolution};
use dgtime::{
    project_broken, run_study, ConstrainedSystem, DVector, DgError, NormSelection, ProjectionSpec, StudySpec, TimeMesh,
};

use config::{Format, NormName, ProjectionMode, ResolvedConfig, StudyConfig};

/// Spatial elements of the built-in heat problem.
pub const HEAT_ELEMENTS: usize = 4;

/// Error carrying the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn solver(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl From<DgError> for CliError {
    fn from(e: DgError) -> Self {
        let runtime = match &e {
            DgError::Study { source, .. } => !matches!(**source, DgError::InvalidArgument(_)),
            DgError::InvalidArgument(_) | DgError::OutOfDomain { .. } => false,
            _ => true,
        };
        if runtime {
            Self::solver(e.to_string())
        } else {
            Self::config(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dgtime", version, about = "Discontinuous Galerkin time stepping with constraints")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a temporal convergence study and write EOC tables.
    Study(StudyArgs),
    /// Check the structural assumptions of a system.
    Validate {
        /// `heat1d`, `stokes3` or a path to a JSON system file.
        problem: String,
    },
    /// Print the slab coefficients of the projection of a preset function.
    Project(ProjectArgs),
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    /// `heat1d`, `stokes3` or a path to a JSON system file.
    #[arg(long)]
    pub problem: Option<String>,
    /// Number of temporal degrees of freedom per slab (polynomial degree + 1).
    #[arg(long)]
    pub q: Option<usize>,
    /// Comma-separated, strictly increasing slab counts.
    #[arg(long = "Ns", value_delimiter = ',')]
    pub ns: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    pub projection: Option<ProjectionMode>,
    /// Comma-separated subset of energy, nodal, multiplier.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub norms: Option<Vec<NormName>>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; with `--projection both` the variants get `-proj` and
    /// `-noproj` suffixes. Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Final time.
    #[arg(long = "T")]
    pub t_end: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// One of `tsq` (t²), `t`, `const1`.
    #[arg(long)]
    pub preset: String,
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    #[arg(long = "T", default_value_t = 1.0)]
    pub t_end: f64,
}

/// Resolve a problem reference to a system.
pub fn load_problem(name: &str) -> Result<ConstrainedSystem, CliError> {
    match name {
        "heat1d" => Ok(build_heat_1d(HEAT_ELEMENTS, &HeatSolution::sin4t())?),
        "stokes3" => Ok(stokes3()),
        path => load_system_file(Path::new(path)).map_err(|e| CliError::config(e.to_string())),
    }
}

/// `DGTIME_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("DGTIME_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::config(format!("DGTIME_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

fn variant_path(base: &Path, proj: bool) -> PathBuf {
    let suffix = if proj { "-proj" } else { "-noproj" };
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}{suffix}"),
    };
    base.with_file_name(name)
}

/// Render every requested variant; returns `(use_projection, text)` pairs.
pub fn render_study(cfg: &ResolvedConfig) -> Result<Vec<(bool, String)>, CliError> {
    let system = load_problem(&cfg.problem)?;
    for w in &system.warnings {
        eprintln!("warning: {w}");
    }
    let norms = NormSelection {
        energy: cfg.norms.contains(&NormName::Energy),
        nodal: cfg.norms.contains(&NormName::Nodal),
        multiplier: cfg.norms.contains(&NormName::Multiplier),
    };
    let threads = thread_cap()?;
    let mut out = Vec::new();
    for &proj in cfg.projection.variants() {
        let spec = StudySpec {
            problem: cfg.problem.clone(),
            system: system.clone(),
            q: cfg.q,
            ns: cfg.ns.clone(),
            use_projection: proj,
            norms,
            t_end: cfg.t_end,
            threads,
        };
        let table = run_study(&spec)?;
        let text = match cfg.format {
            Format::Csv => table::to_csv(&table)?,
            Format::Md => table::to_markdown(&table, &cfg.norms),
        };
        out.push((proj, text));
    }
    Ok(out)
}

fn cmd_study(args: StudyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let file = match &args.config {
        Some(path) => StudyConfig::load(path)?,
        None => StudyConfig::default(),
    };
    let flags = StudyConfig {
        problem: args.problem,
        q: args.q,
        ns: args.ns,
        projection: args.projection,
        norms: args.norms,
        format: args.format,
        output: args.output,
        seed: args.seed,
        t_end: args.t_end,
    };
    let cfg = file.merge(flags).resolve()?;
    let tables = render_study(&cfg)?;
    let several = tables.len() > 1;
    match &cfg.output {
        Some(base) => {
            for (proj, text) in &tables {
                let path = if several { variant_path(base, *proj) } else { base.clone() };
                std::fs::write(&path, text)
                    .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
            }
        }
        None => {
            for (i, (_, text)) in tables.iter().enumerate() {
                if i > 0 {
                    writeln!(stdout).map_err(|e| CliError::io(e.to_string()))?;
                }
                write!(stdout, "{text}").map_err(|e| CliError::io(e.to_string()))?;
            }
        }
    }
    Ok(())
}

fn cmd_validate(problem: &str, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let sys = load_problem(problem)?;
    let report = validate_system(&sys);
    write!(stdout, "{report}").map_err(|e| CliError::io(e.to_string()))?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn preset(name: &str) -> Result<fn(f64) -> f64, CliError> {
    match name {
        "tsq" => Ok(|t| t * t),
        "t" => Ok(|t| t),
        "const1" => Ok(|_| 1.0),
        other => Err(CliError::config(format!("unknown preset {other:?}; expected tsq, t or const1"))),
    }
}

fn cmd_project(args: ProjectArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let f = preset(&args.preset)?;
    let mesh = TimeMesh::uniform(args.t_end, args.n)?;
    let spec = ProjectionSpec::with_default_quadrature(args.q)?;
    let p = project_broken(&|t| DVector::from_element(1, f(t)), &mesh, 1, &spec)?;
    let io = |e: std::io::Error| CliError::io(e.to_string());
    writeln!(
        stdout,
        "# {} projected with q = {} on {} slab(s), modal (shifted Legendre) coefficients",
        args.preset, args.q, args.n
    )
    .map_err(io)?;
    for (i, slab) in p.slabs().iter().enumerate() {
        let (a, b) = mesh.slab(i);
        // adding 0.0 turns -0.0 into 0.0
        let coeffs: Vec<String> = slab.coeffs().column(0).iter().map(|c| format!("{:.12e}", c + 0.0)).collect();
        writeln!(stdout, "slab {} ({a}, {b}]: {}", i + 1, coeffs.join(" ")).map_err(io)?;
    }
    Ok(())
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Study(a) => cmd_study(a, stdout).map(|_| 0),
        Command::Validate { problem } => cmd_validate(&problem, stdout),
        Command::Project(a) => cmd_project(a, stdout).map(|_| 0),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_paths() {
        assert_eq!(variant_path(Path::new("out/t.csv"), true), PathBuf::from("out/t-proj.csv"));
        assert_eq!(variant_path(Path::new("t"), false), PathBuf::from("t-noproj"));
    }

    #[test]
    fn error_codes() {
        let solver = DgError::Study { n_slabs: 8, source: Box::new(DgError::SolverFailure { slab: 3 }) };
        assert_eq!(CliError::from(solver).code, 3);
        let bad = DgError::Study { n_slabs: 8, source: Box::new(DgError::InvalidArgument("x".into())) };
        assert_eq!(CliError::from(bad).code, 2);
    }
}
