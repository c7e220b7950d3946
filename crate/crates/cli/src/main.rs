use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use afront::catalog::{catalog_build, catalog_list, parse_complex_list, Params};
use afront::ends::{classify_all, osserman_report};
use afront::grid::{GridKind, GridSpec};
use afront::io;
use afront::mesh::{export, sample_mesh, to_csv, ExportFormat, MeshOptions, DEFAULT_EXCLUSION};
use afront::surface::{total_curvature, validate, Surface, SurfaceOptions};
use afront::{genus1, DomainKind, Error, WeierstrassData};
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "afront", version, about = "Improper affine fronts from Weierstrass data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Named examples from the classification
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Validate a spec and check its period condition
    Check { spec: PathBuf },
    /// Classify the ends and evaluate the Osserman inequality
    Classify { spec: PathBuf },
    /// Degree of the Gauss map and total curvature
    Curvature { spec: PathBuf },
    /// Sample the front on a grid and write a mesh
    Mesh {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Resolution as NxM
        #[arg(long, default_value = "128x128", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long, default_value_t = 0.2)]
        rmin: f64,
        #[arg(long, default_value_t = 2.0)]
        rmax: f64,
        /// Rectangle `x0,y0,x1,y1` instead of an annulus
        #[arg(long, value_parser = parse_rect, conflicts_with_all = ["rmin", "rmax"])]
        rect: Option<(Complex64, Complex64)>,
        #[arg(long, default_value_t = DEFAULT_EXCLUSION)]
        exclude: f64,
        /// obj or csv; defaults to the output extension
        #[arg(long)]
        format: Option<String>,
        /// Scale the third coordinate in CSV output
        #[arg(long)]
        z_view_factor: Option<f64>,
        /// Mesh even when the period condition fails
        #[arg(long)]
        force: bool,
    },
    /// Find the modulus closing the periods of the genus-one -8 pi family
    SolveGenus1 {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Follow the solution set of the period equation off the unit circle
    ContinueGenus1 {
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Build an entry and run its checks
    Build {
        id: String,
        /// Parameter override `name=value`; lists are comma separated
        #[arg(long = "param", short = 'p')]
        params: Vec<String>,
        /// Write the surface spec here
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (n, m) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got '{s}'"))?;
    let n = n.trim().parse().map_err(|_| format!("bad grid size '{s}'"))?;
    let m = m.trim().parse().map_err(|_| format!("bad grid size '{s}'"))?;
    Ok((n, m))
}

fn parse_rect(s: &str) -> Result<(Complex64, Complex64), String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad rectangle '{s}'"))?;
    match v[..] {
        [x0, y0, x1, y1] => Ok((Complex64::new(x0, y0), Complex64::new(x1, y1))),
        _ => Err(format!("expected x0,y0,x1,y1, got '{s}'")),
    }
}

fn parse_params(items: &[String]) -> Result<Params, Error> {
    let mut out = Params::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("expected name=value, got '{item}'")))?;
        out.insert(k.trim().to_string(), parse_complex_list(v)?);
    }
    Ok(out)
}

fn strict_from_env() -> bool {
    std::env::var("AFRONT_STRICT").map(|v| v.trim() != "0").unwrap_or(true)
}

fn load(path: &Path) -> Result<WeierstrassData, Error> {
    io::parse_spec(&fs::read_to_string(path)?)
}

// A closed pipe (`afront catalog list | head`) is not an error.
fn print_line(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn print(v: &Value) {
    print_line(&serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

/// Outcome of a verb: `Ok(true)` when every requested check passed.
type Outcome = Result<bool, Error>;

fn catalog(action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            for e in catalog_list() {
                let exp = e.expected(&e.default_args());
                print_line(&format!("{:<16} {}  [{}]", e.id, e.family, exp));
                let mut detail = format!("{:<16} on {}: {}", "", e.domain, e.data);
                if !e.constraints.is_empty() {
                    detail.push_str(&format!(", {}", e.constraint_text()));
                }
                print_line(&detail);
            }
            Ok(true)
        }
        CatalogAction::Build { id, params, output } => {
            let b = catalog_build(&id, &parse_params(&params)?)?;
            if let Some(path) = output {
                fs::write(&path, serde_json::to_string_pretty(&io::data_to_json(&b.data))?)?;
            }
            let args: serde_json::Map<String, Value> = b
                .args
                .iter()
                .map(|(k, v)| (k.clone(), Value::Array(v.iter().map(|&z| io::complex_to_json(z)).collect())))
                .collect();
            print(&json!({
                "id": b.id,
                "params": args,
                "expected": {
                    "genus": b.expected.genus,
                    "n_ends": b.expected.n_ends,
                    "deg": b.expected.deg_rho,
                    "all_embedded": b.expected.all_embedded,
                },
                "period": io::period_report_to_json(&b.period),
                "classification": io::classification_to_json(&b.ends, &b.ledger),
            }));
            Ok(true)
        }
    }
}

fn check(spec: &Path) -> Outcome {
    let data = load(spec)?;
    if let Err(e) = validate(&data) {
        print(&json!({"valid": false, "error": e.to_string()}));
        return Ok(false);
    }
    let surface = Surface::new(data)?;
    let report = surface.period_report();
    print(&json!({"valid": true, "period": io::period_report_to_json(report)}));
    Ok(report.passed)
}

fn classify(spec: &Path) -> Outcome {
    let data = load(spec)?;
    validate(&data)?;
    let ends = classify_all(&data)?;
    match osserman_report(&data) {
        Ok(ledger) => {
            print(&io::classification_to_json(&ends, &ledger));
            Ok(true)
        }
        Err(e @ Error::InequalityViolated { .. }) => {
            eprintln!("{e}");
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

fn curvature(spec: &Path) -> Outcome {
    let data = load(spec)?;
    validate(&data)?;
    let (deg, total) = total_curvature(&data)?;
    print(&json!({"deg_rho": deg, "total_curvature": total, "over_pi": total / std::f64::consts::PI}));
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn mesh(
    spec: &Path,
    output: &Path,
    (n, m): (usize, usize),
    rmin: f64,
    rmax: f64,
    rect: Option<(Complex64, Complex64)>,
    exclude: f64,
    format: Option<String>,
    z_view_factor: Option<f64>,
    force: bool,
) -> Outcome {
    let data = load(spec)?;
    let format: ExportFormat = match format {
        Some(f) => f.parse()?,
        None => match output.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => ExportFormat::Csv,
            _ => ExportFormat::Obj,
        },
    };
    if z_view_factor.is_some() && format != ExportFormat::Csv {
        return Err(Error::InvalidInput("a view factor is only recorded in CSV output".into()));
    }
    let strict = strict_from_env() && !force;
    let kind = match (data.domain.kind(), rect) {
        (_, Some((min, max))) => GridKind::Rect { min, max },
        (DomainKind::Torus, None) => GridKind::Fpp,
        _ => GridKind::Annulus {
            center: Complex64::new(0.0, 0.0),
            rmin,
            rmax,
        },
    };
    let options = SurfaceOptions {
        strict,
        ..Default::default()
    };
    let surface = Surface::with_options(data, options)?;
    if !surface.period_report().passed {
        eprintln!("warning: the period condition fails; the mesh depends on the integration path");
    }
    let mesh = sample_mesh(&surface, &GridSpec { kind, n, m }, MeshOptions { exclusion: exclude, ..Default::default() })?;
    let text = match format {
        ExportFormat::Csv => to_csv(&mesh, z_view_factor),
        ExportFormat::Obj => export(&mesh, format),
    };
    fs::write(output, text)?;
    let flagged = mesh.singular_flags.iter().filter(|&&f| f).count();
    print(&json!({
        "vertices": mesh.vertices.len(),
        "faces": mesh.faces.len(),
        "singular": flagged,
        "output": output.display().to_string(),
    }));
    Ok(true)
}

fn solve(tol: f64) -> Outcome {
    let s = genus1::solve_alpha0(tol)?;
    print(&io::genus1_to_json(&s));
    let scale = s.p1.norm() * s.p2.norm();
    Ok(s.residual.abs() <= 1e-6 * scale)
}

fn continue_family(steps: usize, step: f64) -> Outcome {
    let s = genus1::solve_alpha0(1e-13)?;
    let points = genus1::continue_genus1(s.tau, steps, step)?;
    print(&io::continuation_to_json(&points));
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Catalog { action } => catalog(action),
        Command::Check { spec } => check(&spec),
        Command::Classify { spec } => classify(&spec),
        Command::Curvature { spec } => curvature(&spec),
        Command::Mesh {
            spec,
            output,
            grid,
            rmin,
            rmax,
            rect,
            exclude,
            format,
            z_view_factor,
            force,
        } => mesh(&spec, &output, grid, rmin, rmax, rect, exclude, format, z_view_factor, force),
        Command::SolveGenus1 { tol } => solve(tol),
        Command::ContinueGenus1 { steps, step } => continue_family(steps, step),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
