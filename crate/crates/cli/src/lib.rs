//! Command-line front end. `run` does all the work so that tests can drive it
//! without spawning a process.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use projatlas::atlas::{analyze, build_atlas, fmt_num, line_string, render_svg, write_report_json, SvgOptions};
use projatlas::flow::IntegratorConfig;
use projatlas::poly::format_rat;
use projatlas::projective::{projective_type, reduce_system, ReducedSystem, Transformation};
use projatlas::structure::{
    axis_contact_points, classify_cycle_candidate, equatorial_contact_points, finite_equilibria,
    find_invariant_lines, infinite_equilibria, symmetry_report, verify_invariant_curve, Axis, ContactPoint,
    Equilibrium, LineFamily, Location, Side, StructureError, ROOT_TOL,
};
use projatlas::{parse_polynomial, PlaneSystem, Rat};

/// Environment variable naming an optional `key = value` integrator config file.
pub const CONFIG_ENV: &str = "PROJATLAS_CONFIG";

#[derive(Parser, Debug)]
#[command(
    name = "projatlas",
    version,
    about = "Projective phase portraits of planar polynomial vector fields",
    after_help = "Systems are written x' = <poly>; y' = <poly>, also with xi, theta or eta, zeta.\n\
                  Exit codes: 0 success, 1 input or parse error, 2 analysis error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// System given inline, e.g. "x' = -y; y' = x"
    #[arg(short, long, value_name = "SYSTEM")]
    system: Option<String>,
    /// File holding the system; '#' starts a comment, newlines separate equations
    #[arg(short, long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the projective type and W_n
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Print the projectively reduced systems and their exponents m
    Reduce {
        #[command(flatten)]
        source: Source,
        /// Only the reduction by the first (1) or second (2) transformation
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        chart: Option<u8>,
    },
    /// List finite and infinite equilibria with their linear classification
    Equilibria {
        #[command(flatten)]
        source: Source,
        /// Root isolation width
        #[arg(long, default_value_t = ROOT_TOL)]
        tol: f64,
    },
    /// List contact points on the axes and on the line at infinity
    Contacts {
        #[command(flatten)]
        source: Source,
    },
    /// Report symmetries about the axes, the origin and the diagonals, and the divergence
    Symmetry {
        #[command(flatten)]
        source: Source,
    },
    /// List invariant straight lines and line families
    Lines {
        #[command(flatten)]
        source: Source,
    },
    /// Check that a curve f = 0 is invariant and print its cofactor
    VerifyCurve {
        #[command(flatten)]
        source: Source,
        /// The polynomial f, in the system's variables
        #[arg(long, value_name = "POLY")]
        curve: String,
    },
    /// Write the three-disc SVG atlas and a sibling JSON report
    Atlas {
        #[command(flatten)]
        source: Source,
        /// Output SVG path; the report goes next to it with extension .json
        #[arg(short, long, value_name = "PATH")]
        out: PathBuf,
        /// Seed grid density per chart
        #[arg(long, default_value_t = 8)]
        density: usize,
        /// Integrator relative tolerance (overrides the config file)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the JSON analysis report, or write it with -o
    Report {
        #[command(flatten)]
        source: Source,
        #[arg(short, long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Analysis(String),
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure::Analysis(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

/// Run with `argv` (including the program name). Returns the exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Input(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            1
        }
        Err(Failure::Analysis(m)) => {
            let _ = writeln!(stderr, "analysis error: {m}");
            2
        }
    }
}

fn load(src: &Source) -> Res<PlaneSystem> {
    let text = match (&src.system, &src.file) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => {
            let raw = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            raw.lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join("; ")
        }
        (None, None) => return Err(Failure::Input("no system given".into())),
    };
    PlaneSystem::parse(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Res<()> {
    match cmd {
        Command::Classify { source } => {
            let sys = load(&source)?;
            let t = projective_type(&sys);
            let [u, v] = sys.var_names();
            writeln!(out, "{}; W_{} = {}", t.kind, t.n, t.w_n.to_string_vars(u, v))?;
        }
        Command::Reduce { source, chart } => {
            let sys = load(&source)?;
            let which = match chart {
                Some(1) => vec![Transformation::First],
                Some(_) => vec![Transformation::Second],
                None => vec![Transformation::First, Transformation::Second],
            };
            for t in which {
                writeln!(out, "{}", reduced_line(&reduce_system(&sys, t)))?;
            }
        }
        Command::Equilibria { source, tol } => {
            let sys = load(&source)?;
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Failure::Input(format!("--tol must be positive, got {tol}")));
            }
            let names = sys.var_names();
            for e in finite_equilibria(&sys, tol)?.iter().chain(&infinite_equilibria(&sys, tol)?) {
                writeln!(out, "{}", equilibrium_line(e, names))?;
            }
        }
        Command::Contacts { source } => {
            let sys = load(&source)?;
            let names = sys.var_names();
            for (label, axis) in [("Ox", Axis::Ox), ("Oy", Axis::Oy)] {
                let other = if axis == Axis::Ox { names[1] } else { names[0] };
                let cs = axis_contact_points(&sys, axis)?;
                if cs.is_empty() {
                    writeln!(out, "{label}: none")?;
                }
                for c in &cs {
                    writeln!(out, "{label} {}: {}", contact_text(c), side_text(c, other))?;
                }
            }
            let eq = equatorial_contact_points(&sys)?;
            if eq.is_empty() {
                writeln!(out, "equatorial: none")?;
            }
            for c in &eq {
                let [a, b] = c.chart.var_names();
                let transverse = if c.chart == sys.chart.next() { b } else { a };
                let dir = c.direction.as_ref().map(|d| format!("{} ", d.describe(names))).unwrap_or_default();
                writeln!(
                    out,
                    "equatorial {dir}at ({a}, {b}) = {}: {}",
                    contact_text(c),
                    side_text(c, transverse)
                )?;
            }
        }
        Command::Symmetry { source } => {
            let sys = load(&source)?;
            let s = symmetry_report(&sys);
            let [u, v] = sys.var_names();
            let yn = |b: bool| if b { "yes" } else { "no" };
            writeln!(out, "O{u} axis: {}", yn(s.ox))?;
            writeln!(out, "O{v} axis: {}", yn(s.oy))?;
            writeln!(out, "origin: {}", yn(s.origin))?;
            writeln!(out, "{v} = {u}: {}", yn(s.diagonal))?;
            writeln!(out, "{v} = -{u}: {}", yn(s.antidiagonal))?;
            writeln!(out, "divergence = {}", sys.divergence().to_string_vars(u, v))?;
        }
        Command::Lines { source } => {
            let sys = load(&source)?;
            let names = sys.var_names();
            let found = find_invariant_lines(&sys)?;
            if found.lines.is_empty() && found.families.is_empty() {
                writeln!(out, "none")?;
            }
            for l in &found.lines {
                let kind = match &l.curve {
                    Some(c) => format!(" ({:?})", classify_cycle_candidate(&sys, &c.f)?),
                    None => String::new(),
                };
                writeln!(out, "{} = 0{kind}", line_string(l, names))?;
            }
            for f in &found.families {
                let [u, v] = names;
                match f {
                    LineFamily::Slanted { constraint } if constraint.is_zero() => {
                        writeln!(out, "family: {u} + b*{v} + c = 0 for all b, c")?
                    }
                    LineFamily::Slanted { constraint } => writeln!(
                        out,
                        "family: {u} + b*{v} + c = 0 with {} = 0",
                        constraint.to_string_vars("b", "c")
                    )?,
                    LineFamily::Horizontal => writeln!(out, "family: {v} + c = 0 for all c")?,
                }
            }
        }
        Command::VerifyCurve { source, curve } => {
            let sys = load(&source)?;
            let [u, v] = sys.var_names();
            let f = parse_polynomial(&curve, [u, v]).map_err(|e| Failure::Input(format!("in --curve: {e}")))?;
            match verify_invariant_curve(&sys, &f) {
                Ok(c) => {
                    let kind = classify_cycle_candidate(&sys, &f)?;
                    writeln!(out, "invariant; cofactor K = {}; {kind:?}", c.cofactor.to_string_vars(u, v))?;
                }
                Err(StructureError::Degenerate(m)) => return Err(Failure::Input(m)),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Atlas { source, out: path, density, tol } => {
            let sys = load(&source)?;
            let mut cfg = config_from_env()?;
            if let Some(t) = tol {
                cfg.rel_tol = t;
            }
            cfg.validate().map_err(|e| Failure::Input(e.to_string()))?;
            if density == 0 {
                return Err(Failure::Input("--density must be at least 1".into()));
            }
            let doc = build_atlas(&sys, &cfg, density)?;
            let json_path = path.with_extension("json");
            write_file(&path, render_svg(&doc, &SvgOptions::default()).as_bytes())?;
            write_file(&json_path, write_report_json(&doc.analysis).as_bytes())?;
            let curves: usize = doc.scenes.iter().map(|s| s.curves.len()).sum();
            writeln!(out, "wrote {} and {} ({curves} curves)", path.display(), json_path.display())?;
            for issue in &doc.issues {
                writeln!(out, "warning: {issue}")?;
            }
        }
        Command::Report { source, out: path } => {
            let sys = load(&source)?;
            let json = write_report_json(&analyze(&sys)?);
            match path {
                Some(p) => write_file(&p, json.as_bytes())?,
                None => write!(out, "{json}")?,
            }
        }
    }
    Ok(())
}

fn config_from_env() -> Res<IntegratorConfig> {
    let mut cfg = IntegratorConfig::default();
    if let Some(p) = std::env::var_os(CONFIG_ENV) {
        let p = PathBuf::from(p);
        let text = std::fs::read_to_string(&p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        cfg.apply_overrides(&text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(cfg)
}

fn write_file(p: &Path, bytes: &[u8]) -> Res<()> {
    std::fs::write(p, bytes).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn reduced_line(r: &ReducedSystem) -> String {
    format!("{}; m = {}", r.system, r.m)
}

fn point_text(p: (f64, f64), exact: Option<&(Rat, Rat)>) -> String {
    match exact {
        Some((a, b)) => format!("({}, {})", format_rat(a), format_rat(b)),
        None => format!("({}, {})", fmt_num(p.0), fmt_num(p.1)),
    }
}

fn contact_text(c: &ContactPoint) -> String {
    let coord = |v: f64| match &c.exact {
        _ if v == 0.0 => "0".to_string(),
        Some(r) => format_rat(r),
        None => fmt_num(v),
    };
    format!("({}, {})", coord(c.point.0), coord(c.point.1))
}

fn side_text(c: &ContactPoint, coord: &str) -> String {
    match c.side {
        Side::Positive => format!("side {coord} >= 0"),
        Side::Negative => format!("side {coord} <= 0"),
        Side::Both => "both sides".into(),
        Side::Undetermined => "side undetermined".into(),
    }
}

fn equilibrium_line(e: &Equilibrium, names: [&str; 2]) -> String {
    let [a, b] = e.chart.var_names();
    let mut s = match &e.location {
        Location::Finite => format!("finite {}", point_text(e.point, e.exact.as_ref())),
        Location::Infinite { direction } => format!(
            "infinite {} at ({a}, {b}) = {}",
            direction.describe(names),
            point_text(e.point, e.exact.as_ref())
        ),
    };
    s.push_str(&format!(": {}", e.kind));
    if e.modulo_direction {
        s.push_str(" (up to time reversal)");
    }
    s.push_str(&format!("; trace = {}; det = {}", fmt_num(e.trace), fmt_num(e.det)));
    if e.multiplicity > 1 {
        s.push_str(&format!("; multiplicity {}", e.multiplicity));
    }
    s
}
