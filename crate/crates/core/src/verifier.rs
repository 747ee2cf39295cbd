//! Brute-force residual checks of the identities behind the inversion.
//!
//! Every check computes both sides independently: harmonic coefficients by
//! sphere quadrature, moment Laplacians exactly or by quadrature of the
//! field's planar Laplacians, and derivatives in `p`, `q`, `t` or the centre
//! height by central differences.
//!
//! Identities:
//!
//! * `representation_even` (order `k`):
//!   `a_{0(2k)} = (4k+1) Mf + ∫_0^t Σ_{i=0}^{k} t^{2i-1} Σ_m c_m(2k,2i) (u/t)^{2m} Δ^i Mf du`.
//! * `representation_odd` (order `k`):
//!   `a_{0(2k-1)} = (4k-1)/3 a01 + ∫_0^t Σ_{i=0}^{k-1} t^{2i-1} Σ_m c_m(2k-1,2i) (u/t)^{2m+1} Δ^i a01 du`.
//! * `normal_derivative`: `t² ∂_n(3 Mf) = ∂_t(t² a01)`, with `∂_n` the
//!   derivative as the sphere centre leaves the plane along `+z`. The row
//!   `normal_derivative_alt` moves the factor 3 inside `∂_t` on the right and
//!   is informational only.
//! * `ode_cos_p`, `ode_sin_q`, `ode_zonal`, `ode_div`: the first-order
//!   consistency relations between the zonal coefficients `a_{0n}` and the
//!   `m = 1` coefficients `a_{1n}`, `b_{1n}` (see [`OdeIdentity`]).

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coeff_tables::{rational_to_f64, CoefficientTable};
use crate::error::{Error, Result};
use crate::forward::{moment_laplacians, sample_restriction, sample_restriction_at_height, HarmonicKind, SphereCenter};
use crate::io_util::fmt_f64;
use crate::phantom::{self, ScalarField3D};
use crate::quadrature::{IntervalRule, SphericalQuadratureRule};

pub const REPORT_CSV_HEADER: &str = "identity,p,q,t,n,left,right,abs_residual,rel_residual,pass";

pub const REPRESENTATION_TOL: f64 = 1e-8;
pub const NORMAL_DERIVATIVE_TOL: f64 = 1e-5;
pub const ODE_TOL: f64 = 1e-5;
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// One evaluated identity.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub identity: String,
    pub phantom: String,
    pub point: [f64; 3],
    pub n: usize,
    pub left: f64,
    pub right: f64,
    pub abs: f64,
    /// `|left − right| / max(1, |left|, |right|)`.
    pub rel: f64,
    pub tol: f64,
    pub pass: bool,
    /// Informational rows never fail a run.
    pub gating: bool,
}

impl ResidualReport {
    pub fn new(identity: &str, phantom: String, point: [f64; 3], n: usize, left: f64, right: f64, tol: f64) -> Self {
        let abs = (left - right).abs();
        let rel = abs / 1f64.max(left.abs()).max(right.abs());
        ResidualReport {
            identity: identity.to_string(),
            phantom,
            point,
            n,
            left,
            right,
            abs,
            rel,
            tol,
            pass: rel <= tol,
            gating: true,
        }
    }

    fn informational(mut self) -> Self {
        self.gating = false;
        self
    }

    /// `identity,p,q,t,n,left,right,abs_residual,rel_residual,pass`; the
    /// identity column is `name[phantom]`.
    pub fn csv_row(&self) -> String {
        let pass = if !self.gating {
            "info"
        } else if self.pass {
            "true"
        } else {
            "false"
        };
        format!(
            "{}[{}],{},{},{},{},{},{},{},{},{}",
            self.identity,
            self.phantom,
            fmt_f64(self.point[0]),
            fmt_f64(self.point[1]),
            fmt_f64(self.point[2]),
            self.n,
            fmt_f64(self.left),
            fmt_f64(self.right),
            fmt_f64(self.abs),
            fmt_f64(self.rel),
            pass
        )
    }
}

pub fn reports_to_csv(reports: &[ResidualReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

/// Quadrature sizes for one phantom.
#[derive(Clone, Debug)]
pub struct OracleSettings {
    pub rule: SphericalQuadratureRule,
    pub radial_nodes: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            rule: SphericalQuadratureRule::new(16, 32).expect("positive sizes"),
            radial_nodes: 24,
        }
    }
}

fn centre(p: f64, q: f64, t: f64) -> Result<SphereCenter> {
    SphereCenter::new(p, q, t)
}

/// `∫_0^t Σ_i t^{2i-1} P_i(u/t) Δ^i g(u) du` where `g` is `Mf` (`odd = false`)
/// or `a01`, and `P_i` is supplied as a closure over the power index.
fn representation_integral(
    f: &dyn ScalarField3D,
    p: f64,
    q: f64,
    t: f64,
    levels: usize,
    odd: bool,
    poly: impl Fn(usize, f64) -> f64,
    settings: &OracleSettings,
) -> Result<f64> {
    if levels == 0 {
        return Ok(0.0);
    }
    let rule = IntervalRule::gauss_legendre(settings.radial_nodes, 0.0, t);
    let mut buf = vec![(0.0, 0.0); levels];
    let mut total = 0.0;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        moment_laplacians(f, &settings.rule, p, q, u, &mut buf)?;
        let r = u / t;
        for (i, &(mf, a01)) in buf.iter().enumerate() {
            let g = if odd { a01 } else { mf };
            total += w * t.powi(2 * i as i32 - 1) * poly(i, r) * g;
        }
    }
    Ok(total)
}

/// Even-order representation of `a_{0(2k)}` for `k ≥ 1`.
pub fn check_representation_even(
    f: &dyn ScalarField3D,
    p: f64,
    q: f64,
    t: f64,
    k: usize,
    table: &CoefficientTable,
    settings: &OracleSettings,
) -> Result<ResidualReport> {
    if k == 0 || k > table.order_n() {
        return Err(Error::InvalidArgument(format!(
            "even representation needs 1 <= k <= {}, got {k}",
            table.order_n()
        )));
    }
    let c = centre(p, q, t)?;
    let s = sample_restriction(f, c, &settings.rule)?;
    let left = s.harmonic(2 * k, 0, HarmonicKind::A)?;
    let coeffs: Vec<Vec<f64>> = (0..=k)
        .map(|i| (1..=k + i).map(|m| rational_to_f64(&table.c(2 * k, 2 * i, m))).collect())
        .collect();
    let integral = representation_integral(
        f,
        p,
        q,
        t,
        k + 1,
        false,
        |i, r| {
            coeffs[i]
                .iter()
                .enumerate()
                .map(|(j, cm)| cm * r.powi(2 * (j as i32 + 1)))
                .sum()
        },
        settings,
    )?;
    let right = (4 * k + 1) as f64 * s.mean() + integral;
    Ok(ResidualReport::new("representation_even", f.descriptor(), [p, q, t], k, left, right, REPRESENTATION_TOL))
}

/// Odd-order representation of `a_{0(2k-1)}` for `k ≥ 1`.
pub fn check_representation_odd(
    f: &dyn ScalarField3D,
    p: f64,
    q: f64,
    t: f64,
    k: usize,
    table: &CoefficientTable,
    settings: &OracleSettings,
) -> Result<ResidualReport> {
    if k == 0 || k > table.order_n() + 1 {
        return Err(Error::InvalidArgument(format!(
            "odd representation needs 1 <= k <= {}, got {k}",
            table.order_n() + 1
        )));
    }
    let c = centre(p, q, t)?;
    let s = sample_restriction(f, c, &settings.rule)?;
    let left = s.harmonic(2 * k - 1, 0, HarmonicKind::A)?;
    let coeffs: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (1..(k + i).max(1))
                .map(|m| rational_to_f64(&table.c(2 * k - 1, 2 * i, m)))
                .collect()
        })
        .collect();
    let integral = if k == 1 {
        0.0
    } else {
        representation_integral(
            f,
            p,
            q,
            t,
            k,
            true,
            |i, r| {
                coeffs[i]
                    .iter()
                    .enumerate()
                    .map(|(j, cm)| cm * r.powi(2 * (j as i32 + 1) + 1))
                    .sum()
            },
            settings,
        )?
    };
    let right = (4 * k - 1) as f64 / 3.0 * s.first_cosine() + integral;
    Ok(ResidualReport::new("representation_odd", f.descriptor(), [p, q, t], k, left, right, REPRESENTATION_TOL))
}

/// The normal-derivative relation `t² ∂_n(3 Mf) = ∂_t(t² a01)` and its
/// informational variant `t² ∂_n Mf = ∂_t(3 t² a01)`.
pub fn check_normal_derivative(
    f: &dyn ScalarField3D,
    p: f64,
    q: f64,
    t: f64,
    fd_step: f64,
    settings: &OracleSettings,
) -> Result<[ResidualReport; 2]> {
    if !(fd_step > 0.0) || fd_step >= t / 4.0 {
        return Err(Error::InvalidArgument(format!(
            "fd_step must satisfy 0 < fd_step < t/4 (t = {t}, fd_step = {fd_step})"
        )));
    }
    let h = fd_step;
    let c = centre(p, q, t)?;
    let up = sample_restriction_at_height(f, c, h, &settings.rule)?.mean();
    let down = sample_restriction_at_height(f, c, -h, &settings.rule)?.mean();
    let dn = (up - down) / (2.0 * h);
    let g = |tt: f64| -> Result<f64> {
        Ok(tt * tt * sample_restriction(f, centre(p, q, tt)?, &settings.rule)?.first_cosine())
    };
    let dt = (g(t + h)? - g(t - h)?) / (2.0 * h);
    let stated = ResidualReport::new(
        "normal_derivative",
        f.descriptor(),
        [p, q, t],
        0,
        t * t * 3.0 * dn,
        dt,
        NORMAL_DERIVATIVE_TOL,
    );
    let variant = ResidualReport::new(
        "normal_derivative_alt",
        f.descriptor(),
        [p, q, t],
        0,
        t * t * dn,
        3.0 * dt,
        NORMAL_DERIVATIVE_TOL,
    )
    .informational();
    Ok([stated, variant])
}

/// First-order consistency relations between harmonic coefficients.
///
/// With `a_{1(-1)} = a_{1(0)} = b_{1(-1)} = b_{1(0)} = 0`:
///
/// * `CosP` (`n ≥ 0`): `(n+1)(n+2)/(2n+3) ∂_t a_{1(n+1)} + (n+1)(n+2)²/(t(2n+3)) a_{1(n+1)}
///   − n(n−1)/(2n−1) ∂_t a_{1(n−1)} + n(n−1)²/(t(2n−1)) a_{1(n−1)} − 2 ∂_p a_{0n} = 0`.
/// * `SinQ` (`n ≥ 0`): the same with `b_{1·}` and `∂_q`.
/// * `Zonal` (`n ≥ 1`): `2/(2n+3) ∂_t a_{0(n+1)} + 2(n+2)/(t(2n+3)) a_{0(n+1)}
///   − 2/(2n−1) ∂_t a_{0(n−1)} + 2(n−1)/(t(2n−1)) a_{0(n−1)} + ∂_p a_{1n} + ∂_q b_{1n} = 0`.
/// * `Div` (`n ≥ 0`): `CosP` differentiated in `p` plus `SinQ` differentiated
///   in `q`, i.e. the `CosP` form with `D_k = ∂_p a_{1k} + ∂_q b_{1k}` in place of
///   `a_{1k}` and `−2 Δ a_{0n}` as the last term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdeIdentity {
    CosP,
    SinQ,
    Zonal,
    Div,
}

impl OdeIdentity {
    pub const ALL: [OdeIdentity; 4] = [OdeIdentity::CosP, OdeIdentity::SinQ, OdeIdentity::Zonal, OdeIdentity::Div];

    pub fn label(self) -> &'static str {
        match self {
            OdeIdentity::CosP => "ode_cos_p",
            OdeIdentity::SinQ => "ode_sin_q",
            OdeIdentity::Zonal => "ode_zonal",
            OdeIdentity::Div => "ode_div",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            OdeIdentity::Zonal => 1,
            _ => 0,
        }
    }
}

/// Harmonic coefficients with the convention that `a_{1n}`, `b_{1n}` vanish for `n < 1`.
struct Coeffs<'a> {
    f: &'a dyn ScalarField3D,
    rule: &'a SphericalQuadratureRule,
}

impl Coeffs<'_> {
    fn get(&self, p: f64, q: f64, t: f64, n: isize, m: usize, kind: HarmonicKind) -> Result<f64> {
        if n < m as isize || n < 0 {
            return Ok(0.0);
        }
        sample_restriction(self.f, centre(p, q, t)?, self.rule)?.harmonic(n as usize, m, kind)
    }
}

/// Left side of a consistency relation (the right side is 0).
pub fn check_ode_residual(
    f: &dyn ScalarField3D,
    which: OdeIdentity,
    p: f64,
    q: f64,
    t: f64,
    n: usize,
    fd_step: f64,
    settings: &OracleSettings,
) -> Result<ResidualReport> {
    if n < which.min_n() {
        return Err(Error::InvalidArgument(format!(
            "{} needs n >= {}, got {n}",
            which.label(),
            which.min_n()
        )));
    }
    if !(fd_step > 0.0) || fd_step >= t / 4.0 {
        return Err(Error::InvalidArgument(format!(
            "fd_step must satisfy 0 < fd_step < t/4 (t = {t}, fd_step = {fd_step})"
        )));
    }
    let h = fd_step;
    let cf = Coeffs { f, rule: &settings.rule };
    let nf = n as f64;
    let ni = n as isize;
    let (a, b) = (HarmonicKind::A, HarmonicKind::B);
    let d_t = |g: &dyn Fn(f64) -> Result<f64>| -> Result<f64> { Ok((g(t + h)? - g(t - h)?) / (2.0 * h)) };
    // Weights of the m = 1 chain.
    let up = (nf + 1.0) * (nf + 2.0) / (2.0 * nf + 3.0);
    let up0 = (nf + 1.0) * (nf + 2.0) * (nf + 2.0) / (t * (2.0 * nf + 3.0));
    let (dn, dn0) = if n >= 1 {
        (nf * (nf - 1.0) / (2.0 * nf - 1.0), nf * (nf - 1.0) * (nf - 1.0) / (t * (2.0 * nf - 1.0)))
    } else {
        (0.0, 0.0)
    };
    let left = match which {
        OdeIdentity::CosP | OdeIdentity::SinQ => {
            let kind = if which == OdeIdentity::CosP { a } else { b };
            let c_up = |tt: f64| cf.get(p, q, tt, ni + 1, 1, kind);
            let c_dn = |tt: f64| cf.get(p, q, tt, ni - 1, 1, kind);
            let d_zonal = if which == OdeIdentity::CosP {
                (cf.get(p + h, q, t, ni, 0, a)? - cf.get(p - h, q, t, ni, 0, a)?) / (2.0 * h)
            } else {
                (cf.get(p, q + h, t, ni, 0, a)? - cf.get(p, q - h, t, ni, 0, a)?) / (2.0 * h)
            };
            up * d_t(&c_up)? + up0 * c_up(t)? - dn * d_t(&c_dn)? + dn0 * c_dn(t)? - 2.0 * d_zonal
        }
        OdeIdentity::Zonal => {
            let z_up = |tt: f64| cf.get(p, q, tt, ni + 1, 0, a);
            let z_dn = |tt: f64| cf.get(p, q, tt, ni - 1, 0, a);
            let div = (cf.get(p + h, q, t, ni, 1, a)? - cf.get(p - h, q, t, ni, 1, a)?) / (2.0 * h)
                + (cf.get(p, q + h, t, ni, 1, b)? - cf.get(p, q - h, t, ni, 1, b)?) / (2.0 * h);
            2.0 / (2.0 * nf + 3.0) * d_t(&z_up)? + 2.0 * (nf + 2.0) / (t * (2.0 * nf + 3.0)) * z_up(t)?
                - 2.0 / (2.0 * nf - 1.0) * d_t(&z_dn)?
                + 2.0 * (nf - 1.0) / (t * (2.0 * nf - 1.0)) * z_dn(t)?
                + div
        }
        OdeIdentity::Div => {
            let div = |k: isize, tt: f64| -> Result<f64> {
                Ok((cf.get(p + h, q, tt, k, 1, a)? - cf.get(p - h, q, tt, k, 1, a)?) / (2.0 * h)
                    + (cf.get(p, q + h, tt, k, 1, b)? - cf.get(p, q - h, tt, k, 1, b)?) / (2.0 * h))
            };
            let d_up = |tt: f64| div(ni + 1, tt);
            let d_dn = |tt: f64| div(ni - 1, tt);
            let zon = |pp: f64, qq: f64| cf.get(pp, qq, t, ni, 0, a);
            let lap = (zon(p + h, q)? + zon(p - h, q)? + zon(p, q + h)? + zon(p, q - h)? - 4.0 * zon(p, q)?)
                / (h * h);
            up * d_t(&d_up)? + up0 * d_up(t)? - dn * d_t(&d_dn)? + dn0 * d_dn(t)? - 2.0 * lap
        }
    };
    Ok(ResidualReport::new(which.label(), f.descriptor(), [p, q, t], n, left, 0.0, ODE_TOL))
}

/// Which families of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    RepresentationEven,
    RepresentationOdd,
    NormalDerivative,
    Ode(OdeIdentity),
}

impl CheckKind {
    pub fn all() -> Vec<CheckKind> {
        let mut v = vec![CheckKind::RepresentationEven, CheckKind::RepresentationOdd, CheckKind::NormalDerivative];
        v.extend(OdeIdentity::ALL.iter().map(|&o| CheckKind::Ode(o)));
        v
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckKind::RepresentationEven => "representation_even",
            CheckKind::RepresentationOdd => "representation_odd",
            CheckKind::NormalDerivative => "normal_derivative",
            CheckKind::Ode(o) => o.label(),
        }
    }

    pub fn parse(s: &str) -> Result<CheckKind> {
        CheckKind::all()
            .into_iter()
            .find(|c| c.label() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

/// A phantom with the quadrature sizes used to check it.
#[derive(Clone)]
pub struct CatalogEntry {
    pub field: Arc<dyn ScalarField3D>,
    pub settings: OracleSettings,
    /// Whether the finite-difference checks apply. Off for the random
    /// polynomials, whose third derivatives make the O(h²) truncation error
    /// exceed the tolerance at the default step.
    pub finite_difference: bool,
}

/// The shipped phantoms plus `random_count` seeded random polynomials of
/// degree 5, which enter the representation checks only. The bump's steep
/// cutoff needs a much finer rule than the Gaussian.
pub fn verification_catalog(seed: u64, random_count: usize) -> Vec<CatalogEntry> {
    let poly = || OracleSettings {
        rule: SphericalQuadratureRule::new(12, 24).expect("positive sizes"),
        radial_nodes: 16,
    };
    let smooth = || OracleSettings {
        rule: SphericalQuadratureRule::new(48, 96).expect("positive sizes"),
        radial_nodes: 48,
    };
    let steep = || OracleSettings {
        rule: SphericalQuadratureRule::new(288, 576).expect("positive sizes"),
        radial_nodes: 128,
    };
    let entry = |field: Arc<dyn ScalarField3D>, settings| CatalogEntry { field, settings, finite_difference: true };
    let g = phantom::DEFAULT_GAUSS;
    let mut out: Vec<CatalogEntry> = vec![
        entry(Arc::new(phantom::rho2_z3()), poly()),
        entry(Arc::new(phantom::linear_z()), poly()),
        entry(Arc::new(phantom::z_squared()), poly()),
        entry(Arc::new(phantom::constant(2.0)), poly()),
        entry(Arc::new(phantom::anisotropic_gaussian([g[0], g[1], g[2]], [g[3], g[4], g[5]])), smooth()),
        entry(Arc::new(phantom::bump(0.0, 0.0, 1.0)), steep()),
    ];
    for j in 0..random_count {
        out.push(CatalogEntry {
            field: Arc::new(phantom::random_polynomial(seed.wrapping_add(j as u64), 5)),
            settings: poly(),
            finite_difference: false,
        });
    }
    out
}

/// Centres `(p, q) ∈ {−1, 0, 1}²` and radii `t ∈ {0.5, 1, 2}`.
pub fn lattice() -> Vec<[f64; 3]> {
    let mut pts = Vec::with_capacity(27);
    for p in [-1.0, 0.0, 1.0] {
        for q in [-1.0, 0.0, 1.0] {
            for t in [0.5, 1.0, 2.0] {
                pts.push([p, q, t]);
            }
        }
    }
    pts
}

/// Options for a full lattice run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub fd_step: f64,
    pub seed: u64,
    pub random_polynomials: usize,
    pub checks: Vec<CheckKind>,
    /// Orders `k` for the representation checks.
    pub representation_orders: Vec<usize>,
    /// Orders `n` for the consistency relations.
    pub ode_orders: Vec<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            fd_step: DEFAULT_FD_STEP,
            seed: 1,
            random_polynomials: 3,
            checks: CheckKind::all(),
            representation_orders: vec![1, 2],
            ode_orders: vec![0, 1, 2],
        }
    }
}

/// Runs every requested check for every catalog phantom at every lattice point.
pub fn run_verification(config: &VerifyConfig, table: &CoefficientTable) -> Result<Vec<ResidualReport>> {
    run_on_catalog(config, table, &verification_catalog(config.seed, config.random_polynomials))
}

pub fn run_on_catalog(
    config: &VerifyConfig,
    table: &CoefficientTable,
    catalog: &[CatalogEntry],
) -> Result<Vec<ResidualReport>> {
    let mut jobs: Vec<(usize, [f64; 3], CheckKind, usize)> = Vec::new();
    for (e, entry) in catalog.iter().enumerate() {
        for pt in lattice() {
            for &check in &config.checks {
                let fd = matches!(check, CheckKind::NormalDerivative | CheckKind::Ode(_));
                if fd && !entry.finite_difference {
                    continue;
                }
                match check {
                    CheckKind::RepresentationEven | CheckKind::RepresentationOdd => {
                        for &k in &config.representation_orders {
                            jobs.push((e, pt, check, k));
                        }
                    }
                    CheckKind::NormalDerivative => jobs.push((e, pt, check, 0)),
                    CheckKind::Ode(o) => {
                        for &n in config.ode_orders.iter().filter(|&&n| n >= o.min_n()) {
                            jobs.push((e, pt, check, n));
                        }
                    }
                }
            }
        }
    }
    let nested: Vec<Vec<ResidualReport>> = jobs
        .par_iter()
        .map(|&(e, [p, q, t], check, n)| {
            let entry = &catalog[e];
            let f = entry.field.as_ref();
            let s = &entry.settings;
            Ok(match check {
                CheckKind::RepresentationEven => vec![check_representation_even(f, p, q, t, n, table, s)?],
                CheckKind::RepresentationOdd => vec![check_representation_odd(f, p, q, t, n, table, s)?],
                CheckKind::NormalDerivative => check_normal_derivative(f, p, q, t, config.fd_step, s)?.to_vec(),
                CheckKind::Ode(o) => vec![check_ode_residual(f, o, p, q, t, n, config.fd_step, s)?],
            })
        })
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Gating rows that failed.
pub fn failures(reports: &[ResidualReport]) -> Vec<&ResidualReport> {
    reports.iter().filter(|r| r.gating && !r.pass).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_tables::build_tables;
    use crate::phantom::{constant, linear_z, random_polynomial, rho2_z3, z_squared, zero_field};

    fn poly_settings() -> OracleSettings {
        OracleSettings { rule: SphericalQuadratureRule::new(12, 24).unwrap(), radial_nodes: 16 }
    }

    #[test]
    fn even_representation_examples() {
        let t = build_tables(2);
        let s = poly_settings();
        let r = check_representation_even(&z_squared(), 0.3, -0.4, 1.0, 1, &t, &s).unwrap();
        assert!((r.left - 2.0 / 3.0).abs() < 1e-13);
        assert!(r.rel <= 1e-10, "{r:?}");
        for k in 1..=2 {
            let r = check_representation_even(&constant(3.0), 1.0, 1.0, 2.0, k, &t, &s).unwrap();
            assert!(r.left.abs() < 1e-12 && r.rel <= 1e-12, "{r:?}");
        }
        let f = random_polynomial(4, 5);
        for k in 1..=2 {
            let r = check_representation_even(&f, -1.0, 0.0, 1.0, k, &t, &s).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn odd_representation_examples() {
        let t = build_tables(2);
        let s = poly_settings();
        let r = check_representation_odd(&rho2_z3(), 1.0, 3.0, 1.0, 2, &t, &s).unwrap();
        assert!(r.rel <= 1e-8, "{r:?}");
        let r = check_representation_odd(&linear_z(), 0.0, 0.0, 1.7, 1, &t, &s).unwrap();
        assert!((r.left - 1.7).abs() < 1e-13 && r.rel <= 1e-12);
        for k in 1..=3 {
            let r = check_representation_odd(&z_squared(), 0.5, 0.5, 1.0, k, &t, &s).unwrap();
            assert!(r.left.abs() < 1e-12 && r.right.abs() < 1e-12);
        }
        assert!(check_representation_odd(&z_squared(), 0.0, 0.0, 1.0, 0, &t, &s).is_err());
        assert!(check_representation_even(&z_squared(), 0.0, 0.0, 1.0, 3, &t, &s).is_err());
    }

    #[test]
    fn perturbed_coefficient_is_visible() {
        let t = build_tables(2);
        let bad = t.with_scaled_c(4, 0, 2, &crate::coeff_tables::parse_rational("11/10").unwrap()).unwrap();
        let s = poly_settings();
        let f = random_polynomial(9, 5);
        let good = check_representation_even(&f, 1.0, 1.0, 2.0, 2, &t, &s).unwrap();
        let off = check_representation_even(&f, 1.0, 1.0, 2.0, 2, &bad, &s).unwrap();
        assert!(good.pass && !off.pass);
    }

    #[test]
    fn normal_derivative_examples() {
        let s = poly_settings();
        let [r, _] = check_normal_derivative(&constant(4.0), 0.0, 0.0, 1.0, 1e-3, &s).unwrap();
        assert!(r.abs <= 1e-12);
        // The central difference of t³ is off by exactly h², so a small step.
        let [r, alt] = check_normal_derivative(&linear_z(), 0.2, 0.1, 1.5, 1e-5, &s).unwrap();
        assert!((r.left - 3.0 * 2.25).abs() < 1e-9 && r.rel <= 1e-10, "{r:?}");
        assert!(!alt.gating);
        let [r, _] = check_normal_derivative(&rho2_z3(), 1.0, 3.0, 1.0, 1e-3, &s).unwrap();
        assert!(r.rel <= 1e-5, "{r:?}");
        assert!(check_normal_derivative(&linear_z(), 0.0, 0.0, 1.0, 0.3, &s).is_err());
    }

    #[test]
    fn ode_examples() {
        let s = poly_settings();
        for o in OdeIdentity::ALL {
            let r = check_ode_residual(&zero_field(), o, 0.0, 0.0, 1.0, 1, 1e-3, &s).unwrap();
            assert_eq!(r.left, 0.0);
        }
        let r = check_ode_residual(&z_squared(), OdeIdentity::Zonal, 0.0, 0.0, 1.0, 1, 1e-3, &s).unwrap();
        assert!(r.rel <= 1e-6, "{r:?}");
        let r = check_ode_residual(&rho2_z3(), OdeIdentity::Div, 1.0, 3.0, 1.0, 1, 1e-3, &s).unwrap();
        assert!(r.rel <= 1e-5, "{r:?}");
        assert!(check_ode_residual(&z_squared(), OdeIdentity::Zonal, 0.0, 0.0, 1.0, 0, 1e-3, &s).is_err());
        let f = random_polynomial(21, 4);
        for o in OdeIdentity::ALL {
            for n in o.min_n()..3 {
                let r = check_ode_residual(&f, o, 0.5, -0.5, 1.0, n, 1e-3, &s).unwrap();
                assert!(r.rel <= 1e-5, "{r:?}");
            }
        }
    }

    #[test]
    fn report_rows() {
        let r = ResidualReport::new("x", "zsq".into(), [1.0, 2.0, 3.0], 1, 2.0, 2.5, 0.1);
        assert!((r.rel - 0.2).abs() < 1e-15 && !r.pass);
        assert!(r.csv_row().starts_with("x[zsq],"));
        assert!(r.csv_row().ends_with(",false"));
        let csv = reports_to_csv(&[r]);
        assert!(csv.starts_with(REPORT_CSV_HEADER));
        assert_eq!(CheckKind::parse("ode_div").unwrap(), CheckKind::Ode(OdeIdentity::Div));
        assert!(CheckKind::parse("nope").is_err());
        assert_eq!(lattice().len(), 27);
    }
}
