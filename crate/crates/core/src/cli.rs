//! `planar-srt` command-line front end.
//!
//! Subcommands: `coeffs`, `forward`, `reconstruct`, `verify`. Every option is
//! validated before any computation, and outputs are written to a temporary
//! file and renamed, so a failed run leaves no partial file behind.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 a numerical check
//! failed, 3 I/O error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coeff_tables::{build_tables, parse_rational, polynomial_set, POLYNOMIAL_CSV_HEADER};
use crate::error::{Error, Result};
use crate::io_util::write_atomic;
use crate::moment_data::{sample_moments, GridSpec, MomentGrid};
use crate::phantom::{parse_phantom, ScalarField3D};
use crate::quadrature::SphericalQuadratureRule;
use crate::reconstructor::{reconstruct_slice, Mode, ReconstructionRequest, SlicePlane, SliceSpec};
use crate::verifier::{self, CheckKind, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "planar-srt",
    version,
    about = "Two-data spherical Radon transform over plane-centred spheres: coefficient tables, forward moments, reconstruction and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export exact recurrence coefficients and filter polynomials.
    Coeffs(CoeffsArgs),
    /// Sample Mf and a01 of a phantom on a plane grid times radii.
    Forward(ForwardArgs),
    /// Reconstruct a phantom on a slice from its moments.
    Reconstruct(ReconstructArgs),
    /// Run the identity checks over the fixed lattice.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Largest partial-sum order n.
    #[arg(long)]
    pub max_n: usize,
    /// Coefficient CSV (`parity,k,two_i,m,value`).
    #[arg(long)]
    pub out: PathBuf,
    /// Polynomial CSV (`parity,n,two_i,m,value`); defaults to
    /// `<out stem>.polynomials.csv` next to `--out`.
    #[arg(long)]
    pub poly_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ForwardArgs {
    /// Phantom, e.g. `rho2z3`, `zsq`, `const:3`, `gauss:0,0,1,0.5,0.5,0.4`, `bump`.
    #[arg(long)]
    pub phantom: String,
    /// Grid origin `P0,Q0`.
    #[arg(long, allow_hyphen_values = true)]
    pub origin: String,
    /// Grid spacing in p and q.
    #[arg(long)]
    pub h: f64,
    #[arg(long)]
    pub np: usize,
    #[arg(long)]
    pub nq: usize,
    /// Largest radius; radii are `umax·j/nu` for `j = 1..=nu`.
    #[arg(long)]
    pub umax: f64,
    #[arg(long)]
    pub nu: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Use exact moments when the phantom has them.
    #[arg(long)]
    pub analytic: bool,
    #[arg(long, default_value_t = SphericalQuadratureRule::DEFAULT_N_THETA)]
    pub n_theta: usize,
    #[arg(long, default_value_t = SphericalQuadratureRule::DEFAULT_N_PHI)]
    pub n_phi: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    TwoData,
    EvenMirror,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Phantom whose moments are evaluated on demand.
    #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
    pub phantom: Option<String>,
    /// Moment grid CSV written by `forward`.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[arg(long)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::TwoData)]
    pub mode: ModeArg,
    /// `y=V` or `z=V`.
    #[arg(long, allow_hyphen_values = true)]
    pub slice: String,
    /// `A,B` range of x.
    #[arg(long, allow_hyphen_values = true)]
    pub xrange: String,
    /// `A,B` range of z (for `y=V` slices).
    #[arg(long, allow_hyphen_values = true)]
    pub zrange: Option<String>,
    /// `A,B` range of y (for `z=V` slices).
    #[arg(long, allow_hyphen_values = true)]
    pub yrange: Option<String>,
    #[arg(long)]
    pub step: f64,
    #[arg(long, default_value_t = crate::reconstructor::DEFAULT_MIN_ABS_Z)]
    pub min_abs_z: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Optional 8-bit PGM rendering of the slice.
    #[arg(long)]
    pub pgm: Option<PathBuf>,
    /// Gauss–Legendre nodes on (0, |z|); default max(8, order + 4).
    #[arg(long)]
    pub radial_nodes: Option<usize>,
    #[arg(long, default_value_t = SphericalQuadratureRule::DEFAULT_N_THETA)]
    pub n_theta: usize,
    #[arg(long, default_value_t = SphericalQuadratureRule::DEFAULT_N_PHI)]
    pub n_phi: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = verifier::DEFAULT_FD_STEP)]
    pub fd_step: f64,
    /// Seed of the random polynomial phantoms.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of random degree-5 polynomial phantoms.
    #[arg(long, default_value_t = 3)]
    pub random_polys: usize,
    /// Comma-separated checks (empty for none); default all.
    #[arg(long)]
    pub checks: Option<String>,
    /// Comma-separated phantom names (`bump`, `poly`, ...) restricting the
    /// catalog; default all.
    #[arg(long)]
    pub phantoms: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
    /// Test hook: `DEGREE,TWO_I,M,FACTOR` scales one coefficient.
    #[arg(long, hide = true)]
    pub perturb_coefficient: Option<String>,
}

fn pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let v: Vec<&str> = s.split(',').collect();
    let bad = || Error::Parse(format!("{what} must look like A,B, got `{s}`"));
    if v.len() != 2 {
        return Err(bad());
    }
    let a: f64 = v[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = v[1].trim().parse().map_err(|_| bad())?;
    if !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok((a, b))
}

fn positive(v: f64, what: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what} must be positive, got {v}")))
    }
}

fn default_poly_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "coeffs".into());
    out.with_file_name(format!("{stem}.polynomials.csv"))
}

pub fn cmd_coeffs(args: &CoeffsArgs) -> Result<String> {
    let table = build_tables(args.max_n);
    let mut poly = String::from(POLYNOMIAL_CSV_HEADER);
    poly.push('\n');
    poly.push_str("# zero coefficients are omitted; C_{0,0} and C_{1,0} are identically zero\n");
    for n in 0..=args.max_n {
        for row in polynomial_set(&table, n)?.csv_rows() {
            poly.push_str(&row);
            poly.push('\n');
        }
    }
    let poly_path = args.poly_out.clone().unwrap_or_else(|| default_poly_path(&args.out));
    write_atomic(&args.out, table.to_csv().as_bytes())?;
    write_atomic(&poly_path, poly.as_bytes())?;
    Ok(format!(
        "wrote {} and {}",
        args.out.display(),
        poly_path.display()
    ))
}

pub fn cmd_forward(args: &ForwardArgs) -> Result<String> {
    let field = parse_phantom(&args.phantom)?;
    let (p0, q0) = pair(&args.origin, "--origin")?;
    positive(args.h, "--h")?;
    positive(args.umax, "--umax")?;
    if args.np == 0 || args.nq == 0 || args.nu == 0 {
        return Err(Error::InvalidArgument("--np, --nq and --nu must be positive".into()));
    }
    let rule = SphericalQuadratureRule::new(args.n_theta, args.n_phi)?;
    let du = args.umax / args.nu as f64;
    let spec = GridSpec { p0, q0, h: args.h, np: args.np, nq: args.nq, u0: du, du, nu: args.nu };
    spec.validate()?;
    let grid = sample_moments(field.as_ref(), spec, &rule, args.analytic)?;
    grid.write(&args.out)?;
    Ok(format!("wrote {} ({} samples)", args.out.display(), spec.len()))
}

pub fn cmd_reconstruct(args: &ReconstructArgs) -> Result<String> {
    let plane = SlicePlane::parse(&args.slice)?;
    let cols = pair(&args.xrange, "--xrange")?;
    let rows = match plane {
        SlicePlane::Y(_) => pair(
            args.zrange.as_deref().ok_or_else(|| Error::InvalidArgument("y=V slices need --zrange".into()))?,
            "--zrange",
        )?,
        SlicePlane::Z(_) => pair(
            args.yrange.as_deref().ok_or_else(|| Error::InvalidArgument("z=V slices need --yrange".into()))?,
            "--yrange",
        )?,
    };
    positive(args.step, "--step")?;
    positive(args.min_abs_z, "--min-abs-z")?;
    if args.radial_nodes == Some(0) {
        return Err(Error::InvalidArgument("--radial-nodes must be positive".into()));
    }
    let slice = SliceSpec { plane, cols, rows, step: args.step };
    slice.shape()?;
    let rule = SphericalQuadratureRule::new(args.n_theta, args.n_phi)?;
    let table = build_tables(args.order);
    let mode = match args.mode {
        ModeArg::TwoData => Mode::TwoData,
        ModeArg::EvenMirror => Mode::EvenMirror,
    };

    let field: Option<Arc<dyn ScalarField3D>> = args.phantom.as_deref().map(parse_phantom).transpose()?;
    let grid = args.grid.as_deref().map(MomentGrid::read).transpose()?;
    let mut req = match (&field, &grid) {
        (Some(f), _) => ReconstructionRequest::from_field(f.as_ref(), args.order),
        (None, Some(g)) => ReconstructionRequest::from_grid(g, args.order),
        (None, None) => return Err(Error::InvalidArgument("need --phantom or --grid".into())),
    }
    .with_mode(mode)
    .with_min_abs_z(args.min_abs_z)
    .with_sphere_rule(rule);
    req.radial_nodes = args.radial_nodes;

    let result = reconstruct_slice(&req, &table, &slice)?;
    result.write_csv(&args.out)?;
    if let Some(pgm) = &args.pgm {
        result.write_pgm(pgm)?;
    }
    let missing = result.values.iter().filter(|v| v.is_nan()).count();
    Ok(format!(
        "wrote {} ({}x{} samples, {missing} within min-abs-z of the plane)",
        args.out.display(),
        result.rows,
        result.cols
    ))
}

/// Runs the lattice checks; `Ok(false)` when a gating check failed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(bool, String)> {
    positive(args.fd_step, "--fd-step")?;
    let checks = match args.checks.as_deref() {
        None => CheckKind::all(),
        Some(s) => s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(CheckKind::parse)
            .collect::<Result<Vec<_>>>()?,
    };
    let mut table = build_tables(2);
    if let Some(spec) = &args.perturb_coefficient {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse("--perturb-coefficient needs DEGREE,TWO_I,M,FACTOR".into()));
        }
        let idx = |s: &str| s.trim().parse::<usize>().map_err(|e| Error::Parse(format!("`{s}`: {e}")));
        table = table.with_scaled_c(idx(parts[0])?, idx(parts[1])?, idx(parts[2])?, &parse_rational(parts[3].trim())?)?;
    }
    let config = VerifyConfig {
        fd_step: args.fd_step,
        seed: args.seed,
        random_polynomials: args.random_polys,
        checks,
        ..VerifyConfig::default()
    };
    let mut catalog = verifier::verification_catalog(config.seed, config.random_polynomials);
    if let Some(list) = &args.phantoms {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
        catalog.retain(|e| {
            let d = e.field.descriptor();
            let base = d.split(':').next().unwrap_or(&d).to_string();
            names.iter().any(|n| *n == base || *n == d)
        });
    }
    let reports = verifier::run_on_catalog(&config, &table, &catalog)?;
    write_atomic(&args.out, verifier::reports_to_csv(&reports).as_bytes())?;
    let failed = verifier::failures(&reports);
    let mut summary = format!(
        "wrote {} ({} rows, {} failed)",
        args.out.display(),
        reports.len(),
        failed.len()
    );
    for r in failed.iter().take(20) {
        summary.push_str(&format!(
            "\nFAIL {}[{}] at ({}, {}, {}) n={} rel={:.3e} tol={:.0e}",
            r.identity, r.phantom, r.point[0], r.point[1], r.point[2], r.n, r.rel, r.tol
        ));
    }
    Ok((failed.is_empty(), summary))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
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
    let outcome = match &cli.command {
        Command::Coeffs(a) => cmd_coeffs(a).map(|s| (true, s)),
        Command::Forward(a) => cmd_forward(a).map(|s| (true, s)),
        Command::Reconstruct(a) => cmd_reconstruct(a).map(|s| (true, s)),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok((true, msg)) => {
            println!("{msg}");
            EXIT_OK
        }
        Ok((false, msg)) => {
            eprintln!("{msg}");
            EXIT_CHECK_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
