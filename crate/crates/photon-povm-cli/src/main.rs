//! Command-line interface: every figure/table quantity as machine-readable
//! CSV or JSON, plus the acceptance suite as `verify`.
//!
//! Output is deterministic for a fixed configuration: grid points are
//! evaluated in parallel (capped by PHOTON_POVM_THREADS) but rows are
//! always emitted in ascending-a order.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use photon_povm::linalg::{CVec3, Vec3, C64};
use photon_povm::povm::{self, MomentumRegion};
use photon_povm::quadrature::QuadratureSpec;
use photon_povm::specfun::WidthParam;
use photon_povm::states::{
    make_pol_state, project_spin_state, GaussianPolState, GaussianSpinState,
};
use photon_povm::{closedform, extremize, verify};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "photon-povm",
    about = "Single-photon observables as POVMs: closed forms vs quadrature",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uncertainty products ΔX_iΔP_i over an a-grid, closed form vs quadrature
    ScanUncertainty(ScanArgs),
    /// S_z probability distribution over an a-grid
    SpinDist(ScanArgs),
    /// Helicity probability distribution over an a-grid
    HelicityDist(ScanArgs),
    /// Position-spin density along an axis through the state centroid
    PositionDensity(DensityArgs),
    /// Extremal uncertainty products over the spin coefficient vector
    Extremize(ScanArgs),
    /// Run the acceptance suite; exit code 0 iff all criteria pass
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Polarization,
    Spin,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    X,
    Y,
    Z,
    All,
}

impl Axis {
    fn indices(self) -> Vec<usize> {
        match self {
            Axis::X => vec![0],
            Axis::Y => vec![1],
            Axis::Z => vec![2],
            Axis::All => vec![0, 1, 2],
        }
    }

    fn name(idx: usize) -> &'static str {
        ["x", "y", "z"][idx]
    }
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// State family
    #[arg(long, value_enum, default_value = "polarization")]
    family: Family,
    /// Polarization coefficients as re,im,re,im
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    gamma: Option<Vec<f64>>,
    /// Spin coefficients as re,im,re,im,re,im
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    h: Option<Vec<f64>>,
    /// Frame reference vector as x,y,z
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m_vector: Option<Vec<f64>>,
    /// Quadrature radial node count
    #[arg(long)]
    radial_nodes: Option<usize>,
    #[arg(long)]
    theta_nodes: Option<usize>,
    #[arg(long)]
    phi_nodes: Option<usize>,
    /// Quadrature relative tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// JSON config file; its values override the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ScanArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 1e-3)]
    a_min: f64,
    #[arg(long, default_value_t = 1e3)]
    a_max: f64,
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// Logarithmic a-grid
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    log: bool,
    #[arg(long, value_enum, default_value = "all")]
    axis: Axis,
    /// Skip the quadrature column (closed forms only)
    #[arg(long, default_value_t = false)]
    no_quadrature: bool,
}

#[derive(Args, Clone)]
struct DensityArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Width parameter a
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long, value_enum, default_value = "z")]
    axis: Axis,
    #[arg(long, default_value_t = 6.0)]
    x_max: f64,
    #[arg(long, default_value_t = 25)]
    points: usize,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    /// Run only criteria exercising this module
    #[arg(long)]
    only: Option<String>,
    /// Print every check line, not just failures
    #[arg(long, short, default_value_t = false)]
    verbose: bool,
    #[arg(long)]
    radial_nodes: Option<usize>,
    #[arg(long)]
    theta_nodes: Option<usize>,
    #[arg(long)]
    phi_nodes: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

/// Config-file schema; every field optional, overriding the flags.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    family: Option<String>,
    gamma: Option<Vec<f64>>,
    h: Option<Vec<f64>>,
    m_vector: Option<Vec<f64>>,
    a_min: Option<f64>,
    a_max: Option<f64>,
    points: Option<usize>,
    log: Option<bool>,
    axis: Option<String>,
    radial_nodes: Option<usize>,
    theta_nodes: Option<usize>,
    phi_nodes: Option<usize>,
    tol: Option<f64>,
    output: Option<PathBuf>,
    format: Option<String>,
}

#[derive(Serialize)]
struct Row {
    a: f64,
    quantity: String,
    axis: String,
    closed_form: f64,
    quadrature: Option<f64>,
    abs_diff: Option<f64>,
    units: &'static str,
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    init_threads()?;
    let cli = Cli::parse();
    match cli.command {
        Command::ScanUncertainty(args) => scan_uncertainty(args),
        Command::SpinDist(args) => spin_dist(args),
        Command::HelicityDist(args) => helicity_dist(args),
        Command::PositionDensity(args) => position_density(args),
        Command::Extremize(args) => extremize_cmd(args),
        Command::Verify(args) => verify_cmd(args),
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("PHOTON_POVM_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow!("PHOTON_POVM_THREADS must be a positive integer"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("thread pool init")?;
    }
    Ok(())
}

/// Merge a config file over the common flags (config wins where present).
fn apply_config(mut scan: ScanArgs) -> Result<ScanArgs> {
    let Some(path) = scan.common.config.clone() else {
        return Ok(scan);
    };
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let cfg: FileConfig = serde_json::from_str(&text).context("parsing config")?;
    if let Some(f) = cfg.family {
        scan.common.family = match f.as_str() {
            "polarization" => Family::Polarization,
            "spin" => Family::Spin,
            other => bail!("unknown family in config: {other}"),
        };
    }
    if cfg.gamma.is_some() {
        scan.common.gamma = cfg.gamma;
    }
    if cfg.h.is_some() {
        scan.common.h = cfg.h;
    }
    if cfg.m_vector.is_some() {
        scan.common.m_vector = cfg.m_vector;
    }
    if let Some(v) = cfg.a_min {
        scan.a_min = v;
    }
    if let Some(v) = cfg.a_max {
        scan.a_max = v;
    }
    if let Some(v) = cfg.points {
        scan.points = v;
    }
    if let Some(v) = cfg.log {
        scan.log = v;
    }
    if let Some(ax) = cfg.axis {
        scan.axis = match ax.as_str() {
            "x" => Axis::X,
            "y" => Axis::Y,
            "z" => Axis::Z,
            "all" => Axis::All,
            other => bail!("unknown axis in config: {other}"),
        };
    }
    if cfg.radial_nodes.is_some() {
        scan.common.radial_nodes = cfg.radial_nodes;
    }
    if cfg.theta_nodes.is_some() {
        scan.common.theta_nodes = cfg.theta_nodes;
    }
    if cfg.phi_nodes.is_some() {
        scan.common.phi_nodes = cfg.phi_nodes;
    }
    if cfg.tol.is_some() {
        scan.common.tol = cfg.tol;
    }
    if cfg.output.is_some() {
        scan.common.output = cfg.output;
    }
    if let Some(f) = cfg.format {
        scan.common.format = match f.as_str() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => bail!("unknown format in config: {other}"),
        };
    }
    Ok(scan)
}

fn quad_spec(c: &CommonArgs) -> QuadratureSpec {
    let d = QuadratureSpec::default();
    QuadratureSpec {
        radial_nodes: c.radial_nodes.unwrap_or(d.radial_nodes),
        theta_nodes: c.theta_nodes.unwrap_or(d.theta_nodes),
        phi_nodes: c.phi_nodes.unwrap_or(d.phi_nodes),
        target_rel_tol: c.tol.unwrap_or(d.target_rel_tol),
        ..d
    }
}

fn gamma_of(c: &CommonArgs) -> Result<[C64; 2]> {
    match &c.gamma {
        Some(v) if v.len() == 4 => Ok([C64::new(v[0], v[1]), C64::new(v[2], v[3])]),
        Some(v) => bail!("--gamma needs 4 numbers re,im,re,im (got {})", v.len()),
        None => Ok([C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
    }
}

fn h_of(c: &CommonArgs) -> Result<CVec3> {
    match &c.h {
        Some(v) if v.len() == 6 => Ok(CVec3::new(
            C64::new(v[0], v[1]),
            C64::new(v[2], v[3]),
            C64::new(v[4], v[5]),
        )),
        Some(v) => bail!("--h needs 6 numbers re,im,... (got {})", v.len()),
        None => Ok(CVec3::new(1.0.into(), 0.0.into(), 0.0.into())),
    }
}

fn m_of(c: &CommonArgs) -> Result<Vec3> {
    match &c.m_vector {
        Some(v) if v.len() == 3 => Ok(Vec3::new(v[0], v[1], v[2]).normalized()),
        Some(v) => bail!("--m-vector needs 3 numbers x,y,z (got {})", v.len()),
        None => Ok(Vec3::EX),
    }
}

fn a_grid(args: &ScanArgs) -> Result<Vec<f64>> {
    if !(args.a_min < args.a_max) || args.points < 2 {
        bail!("grid requires a_min < a_max and points >= 2");
    }
    let n = args.points;
    Ok((0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if args.log {
                (args.a_min.ln() * (1.0 - t) + args.a_max.ln() * t).exp()
            } else {
                args.a_min * (1.0 - t) + args.a_max * t
            }
        })
        .collect())
}

fn emit(rows: &[Row], c: &CommonArgs) -> Result<()> {
    let text = match c.format {
        Format::Csv => {
            let mut s = String::from("a,quantity,axis,closed_form,quadrature,abs_diff,units\n");
            for r in rows {
                s.push_str(&format!(
                    "{:.9e},{},{},{:.12e},{},{},{}\n",
                    r.a,
                    r.quantity,
                    r.axis,
                    r.closed_form,
                    r.quadrature.map_or(String::new(), |v| format!("{v:.12e}")),
                    r.abs_diff.map_or(String::new(), |v| format!("{v:.3e}")),
                    r.units
                ));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(rows)? + "\n",
    };
    match &c.output {
        Some(path) => {
            let mut f = fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            f.write_all(text.as_bytes())?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn make_state(
    family: Family,
    a: f64,
    c: &CommonArgs,
) -> Result<photon_povm::states::PhotonState> {
    let aw = WidthParam::new(a)?;
    Ok(match family {
        Family::Polarization => {
            let params = GaussianPolState::new(aw, gamma_of(c)?)?.with_m(m_of(c)?);
            make_pol_state(&params)?
        }
        Family::Spin => {
            let mut params = GaussianSpinState::new(aw, h_of(c)?)?;
            params.m = m_of(c)?;
            project_spin_state(&params)?.0
        }
    })
}

fn scan_uncertainty(args: ScanArgs) -> Result<()> {
    let args = apply_config(args)?;
    let grid = a_grid(&args)?;
    let spec = quad_spec(&args.common);
    let axes = args.axis.indices();

    let per_a: Vec<Result<Vec<Row>>> = grid
        .par_iter()
        .map(|&a| -> Result<Vec<Row>> {
            let aw = WidthParam::new(a)?;
            let closed: [f64; 3] = match args.common.family {
                Family::Polarization => {
                    let u = closedform::pol_uncertainty(aw);
                    [u.x, u.x, u.z]
                }
                Family::Spin => closedform::spin_uncertainty(aw, h_of(&args.common)?)?.product,
            };
            let quad = if args.no_quadrature {
                None
            } else {
                let st = make_state(args.common.family, a, &args.common)?;
                Some(
                    povm::moments_and_uncertainty(&st, &spec)
                        .map_err(|e| anyhow!("at a = {a}: {e}"))?,
                )
            };
            let mut rows = Vec::new();
            for &j in &axes {
                let q = quad.as_ref().map(|m| m.product[j]);
                rows.push(Row {
                    a,
                    quantity: "uncertainty_product".into(),
                    axis: Axis::name(j).into(),
                    closed_form: closed[j],
                    quadrature: q,
                    abs_diff: q.map(|v| (v - closed[j]).abs()),
                    units: "hbar",
                });
            }
            Ok(rows)
        })
        .collect();

    let mut rows = Vec::new();
    for r in per_a {
        rows.extend(r?);
    }
    emit(&rows, &args.common)
}

fn spin_dist(args: ScanArgs) -> Result<()> {
    let args = apply_config(args)?;
    let grid = a_grid(&args)?;
    let mut rows = Vec::new();
    for &a in &grid {
        let aw = WidthParam::new(a)?;
        let p = match args.common.family {
            Family::Polarization => closedform::pol_sz_distribution(aw, gamma_of(&args.common)?)?,
            Family::Spin => closedform::spin_sz_distribution(aw, h_of(&args.common)?)?,
        };
        for (i, ms) in ["+1", "0", "-1"].iter().enumerate() {
            rows.push(Row {
                a,
                quantity: format!("p(Sz={ms})"),
                axis: "z".into(),
                closed_form: p[i],
                quadrature: None,
                abs_diff: None,
                units: "probability",
            });
        }
        rows.push(Row {
            a,
            quantity: "sum".into(),
            axis: "z".into(),
            closed_form: p.iter().sum(),
            quadrature: None,
            abs_diff: None,
            units: "probability",
        });
    }
    emit(&rows, &args.common)
}

fn helicity_dist(args: ScanArgs) -> Result<()> {
    let args = apply_config(args)?;
    let grid = a_grid(&args)?;
    let spec = quad_spec(&args.common);
    let region = MomentumRegion::all();

    let per_a: Vec<Result<Vec<Row>>> = grid
        .par_iter()
        .map(|&a| -> Result<Vec<Row>> {
            let st = make_state(args.common.family, a, &args.common)?;
            let pp = povm::prob_helicity(&st, &region, 1, &spec)?;
            let pm = povm::prob_helicity(&st, &region, -1, &spec)?;
            let mk = |name: &str, v: f64| Row {
                a,
                quantity: name.into(),
                axis: "p".into(),
                closed_form: v,
                quadrature: None,
                abs_diff: None,
                units: "probability",
            };
            Ok(vec![
                mk("p(eps=+1)", pp),
                mk("p(eps=-1)", pm),
                mk("sum", pp + pm),
            ])
        })
        .collect();

    let mut rows = Vec::new();
    for r in per_a {
        rows.extend(r?);
    }
    emit(&rows, &args.common)
}

fn position_density(args: DensityArgs) -> Result<()> {
    let spec = quad_spec(&args.common);
    let st = make_state(args.common.family, args.a, &args.common)?;
    let axes = match args.axis {
        Axis::All => bail!("position-density needs a single axis"),
        ax => ax.indices(),
    };
    let j = axes[0];
    let n = args.points.max(2);
    let xs: Vec<f64> = (0..n)
        .map(|i| -args.x_max + 2.0 * args.x_max * i as f64 / (n - 1) as f64)
        .collect();

    let per_x: Vec<Result<Vec<Row>>> = xs
        .par_iter()
        .map(|&xv| -> Result<Vec<Row>> {
            let x = Vec3::basis(j) * xv;
            let mut rows = Vec::new();
            for ms in [1, 0, -1] {
                let d = povm::position_spin_density(&st, x, ms, &spec)?;
                rows.push(Row {
                    a: args.a,
                    quantity: format!("density(m_s={ms}) at x={xv:.6}"),
                    axis: Axis::name(j).into(),
                    closed_form: d,
                    quadrature: None,
                    abs_diff: None,
                    units: "p0^3/hbar^3",
                });
            }
            Ok(rows)
        })
        .collect();

    let mut rows = Vec::new();
    for r in per_x {
        rows.extend(r?);
    }
    emit(&rows, &args.common)
}

fn extremize_cmd(args: ScanArgs) -> Result<()> {
    let args = apply_config(args)?;
    let grid = a_grid(&args)?;
    let mut rows = Vec::new();
    for &a in &grid {
        let aw = WidthParam::new(a)?;
        let ze = extremize::z_axis_extremes(aw);
        let xe = extremize::x_axis_extremes(aw);
        for (axis, min, max, amin, amax) in [
            ("z", ze.min, ze.max, ze.rho_min, ze.rho_max),
            ("x", xe.min, xe.max, xe.lambda_min, xe.xi_max),
        ] {
            rows.push(Row {
                a,
                quantity: format!("min(argmin={amin:.6})"),
                axis: axis.into(),
                closed_form: min,
                quadrature: None,
                abs_diff: None,
                units: "hbar",
            });
            rows.push(Row {
                a,
                quantity: format!("max(argmax={amax:.6})"),
                axis: axis.into(),
                closed_form: max,
                quadrature: None,
                abs_diff: None,
                units: "hbar",
            });
        }
    }
    emit(&rows, &args.common)
}

fn verify_cmd(args: VerifyArgs) -> Result<()> {
    let d = QuadratureSpec::default();
    let spec = QuadratureSpec {
        radial_nodes: args.radial_nodes.unwrap_or(d.radial_nodes),
        theta_nodes: args.theta_nodes.unwrap_or(d.theta_nodes),
        phi_nodes: args.phi_nodes.unwrap_or(d.phi_nodes),
        target_rel_tol: args.tol.unwrap_or(d.target_rel_tol),
        ..d
    };
    let results = verify::run_filtered(&spec, args.only.as_deref());
    if results.is_empty() {
        bail!("no criteria match --only {:?}", args.only);
    }
    print!("{}", verify::format_report(&results, args.verbose));
    let all_pass = results.iter().all(|r| r.passed);
    if !all_pass {
        std::process::exit(1);
    }
    Ok(())
}
