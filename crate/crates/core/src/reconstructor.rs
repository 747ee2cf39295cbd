//! Pointwise inversion by the order-`n` partial sums
//!
//! ```text
//! S_n = (n+1)[(2n+1) Mf(x,y,Z) + sgn(z) (2n+3)/3 a01(x,y,Z)]
//!     + Σ_{i=0}^{n} ∫_0^Z Z^{2i-1} [C_{2n,2i}(u/Z) Δ^i Mf(x,y,u)
//!                                  + sgn(z) C_{2n+1,2i}(u/Z) Δ^i a01(x,y,u)] du
//! ```
//!
//! with `Z = |z|`. `S_n → f(x, y, z)` for `z ≠ 0`, and only spheres of radius
//! at most `Z` centred near `(x, y)` are used.
//!
//! Two sources are supported. A phantom source uses exact moment Laplacians
//! when the phantom has them, and otherwise averages its planar Laplacians
//! over spheres (the planar Laplacian commutes with the moments), with a
//! Gauss–Legendre rule on `(0, Z)`. A grid source uses stencil Laplacians,
//! bilinear interpolation in `(p, q)` and the composite trapezoid rule over
//! the stored radii up to `Z`.
//!
//! `|S_n − S_{n−1}|` is reported as a convergence indicator only; nothing here
//! chooses `n` automatically.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::coeff_tables::{horner, polynomial_set, CoefficientTable, FilterPolynomials};
use crate::error::{Error, Result};
use crate::forward::moment_laplacians;
use crate::io_util::{fmt_f64, write_atomic};
use crate::moment_data::{MomentField, MomentGrid};
use crate::phantom::{EvenMirror, ScalarField3D};
use crate::quadrature::{IntervalRule, SphericalQuadratureRule};

pub const DEFAULT_MIN_ABS_Z: f64 = 1e-3;

/// `TwoData` uses both moments; `EvenMirror` forces `a01 ≡ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    TwoData,
    EvenMirror,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::TwoData => "two-data",
            Mode::EvenMirror => "even-mirror",
        }
    }
}

/// Where the moments come from.
#[derive(Clone, Copy)]
pub enum MomentSource<'a> {
    Field(&'a dyn ScalarField3D),
    Grid(&'a MomentGrid),
}

/// Reconstruction settings shared by every target point.
#[derive(Clone)]
pub struct ReconstructionRequest<'a> {
    pub source: MomentSource<'a>,
    pub order_n: usize,
    pub mode: Mode,
    pub min_abs_z: f64,
    /// Gauss–Legendre size on `(0, |z|)` for phantom sources; `None` means
    /// `max(8, n + 4)`.
    pub radial_nodes: Option<usize>,
    /// Sphere rule for phantoms without exact moment Laplacians.
    pub sphere_rule: SphericalQuadratureRule,
}

impl<'a> ReconstructionRequest<'a> {
    pub fn new(source: MomentSource<'a>, order_n: usize) -> Self {
        ReconstructionRequest {
            source,
            order_n,
            mode: Mode::TwoData,
            min_abs_z: DEFAULT_MIN_ABS_Z,
            radial_nodes: None,
            sphere_rule: SphericalQuadratureRule::default(),
        }
    }

    pub fn from_field(field: &'a dyn ScalarField3D, order_n: usize) -> Self {
        Self::new(MomentSource::Field(field), order_n)
    }

    pub fn from_grid(grid: &'a MomentGrid, order_n: usize) -> Self {
        Self::new(MomentSource::Grid(grid), order_n)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_min_abs_z(mut self, min_abs_z: f64) -> Self {
        self.min_abs_z = min_abs_z;
        self
    }

    pub fn with_radial_nodes(mut self, n: usize) -> Self {
        self.radial_nodes = Some(n);
        self
    }

    pub fn with_sphere_rule(mut self, rule: SphericalQuadratureRule) -> Self {
        self.sphere_rule = rule;
        self
    }

    pub fn radial_rule_size(&self) -> usize {
        self.radial_nodes.unwrap_or_else(|| (self.order_n + 4).max(8))
    }

    fn validate(&self, table: &CoefficientTable) -> Result<()> {
        if self.order_n > table.order_n() {
            return Err(Error::OrderExceedsTable {
                requested: self.order_n,
                available: table.order_n(),
            });
        }
        if !(self.min_abs_z > 0.0) || !self.min_abs_z.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "min_abs_z must be positive, got {}",
                self.min_abs_z
            )));
        }
        if self.radial_rule_size() == 0 {
            return Err(Error::InvalidArgument("radial rule needs at least one node".into()));
        }
        Ok(())
    }
}

/// Result at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionResult {
    pub point: [f64; 3],
    /// `S_n` for the requested order.
    pub value: f64,
    /// `S_0, …, S_n`.
    pub partial_sums: Vec<f64>,
    /// `|S_n − S_{n−1}|`, absent for `n = 0`.
    pub last_increment: Option<f64>,
}

/// Filter polynomials for every order `0..=n`, in floating point.
struct Filters {
    by_order: Vec<FilterPolynomials>,
}

impl Filters {
    fn new(table: &CoefficientTable, n: usize) -> Result<Self> {
        let by_order = (0..=n)
            .map(|k| polynomial_set(table, k).map(|s| s.to_f64()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Filters { by_order })
    }
}

/// `Δ^i Mf` and `Δ^i a01` at a set of radii, plus both moments at `Z`.
struct RadialData {
    /// Quadrature nodes in `(0, Z]` and their weights.
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `lap_mf[i][j] = Δ^i Mf(x, y, nodes[j])`.
    lap_mf: Vec<Vec<f64>>,
    lap_a01: Vec<Vec<f64>>,
    mf_z: f64,
    a01_z: f64,
}

fn partial_sums(filters: &Filters, data: &RadialData, z_abs: f64, sign: f64) -> Vec<f64> {
    let n = filters.by_order.len() - 1;
    // Z^{2i-1} for i = 0..=n.
    let zpow: Vec<f64> = (0..=n).map(|i| z_abs.powi(2 * i as i32 - 1)).collect();
    let ratios: Vec<f64> = data.nodes.iter().map(|u| (u / z_abs).min(1.0)).collect();
    (0..=n)
        .map(|k| {
            let fp = &filters.by_order[k];
            let kf = k as f64;
            let mut s = (kf + 1.0)
                * ((2.0 * kf + 1.0) * data.mf_z + sign * (2.0 * kf + 3.0) / 3.0 * data.a01_z);
            for i in 0..=k {
                let mut integral = 0.0;
                for (j, (&r, &w)) in ratios.iter().zip(&data.weights).enumerate() {
                    let even = horner(&fp.even[i], r) * data.lap_mf[i][j];
                    let odd = horner(&fp.odd[i], r) * data.lap_a01[i][j];
                    integral += w * (even + sign * odd);
                }
                s += zpow[i] * integral;
            }
            s
        })
        .collect()
}

fn field_radial_data(
    field: &dyn ScalarField3D,
    req: &ReconstructionRequest<'_>,
    x: f64,
    y: f64,
    z_abs: f64,
) -> Result<RadialData> {
    let n = req.order_n;
    let rule = IntervalRule::gauss_legendre(req.radial_rule_size(), 0.0, z_abs);
    let mut lap_mf = vec![vec![0.0; rule.len()]; n + 1];
    let mut lap_a01 = vec![vec![0.0; rule.len()]; n + 1];
    let mut buf = vec![(0.0, 0.0); n + 1];
    let mut all = rule.nodes.clone();
    all.push(z_abs);
    let mut at_z = (0.0, 0.0);
    for (j, &u) in all.iter().enumerate() {
        let levels = if j < rule.len() { n + 1 } else { 1 };
        moment_laplacians(field, &req.sphere_rule, x, y, u, &mut buf[..levels])?;
        if j < rule.len() {
            for i in 0..=n {
                lap_mf[i][j] = buf[i].0;
                lap_a01[i][j] = buf[i].1;
            }
        } else {
            at_z = buf[0];
        }
    }
    Ok(RadialData {
        nodes: rule.nodes,
        weights: rule.weights,
        lap_mf,
        lap_a01,
        mf_z: at_z.0,
        a01_z: at_z.1,
    })
}

/// Lagrange weights for evaluating at `x` from the given abscissae.
fn lagrange_weights(xs: &[f64], x: f64) -> Vec<f64> {
    (0..xs.len())
        .map(|a| {
            (0..xs.len())
                .filter(|&b| b != a)
                .map(|b| (x - xs[b]) / (xs[a] - xs[b]))
                .product()
        })
        .collect()
}

fn grid_radial_data(
    grid: &MomentGrid,
    req: &ReconstructionRequest<'_>,
    x: f64,
    y: f64,
    z_abs: f64,
) -> Result<RadialData> {
    let spec = grid.spec();
    let n = req.order_n;
    // Radial samples with u ≤ Z (tolerance for round-off at an exact sample).
    let tol = 1e-9 * spec.du;
    if spec.u0 > z_abs + tol {
        return Err(Error::InvalidArgument(format!(
            "grid radii start at {} above |z| = {z_abs}",
            spec.u0
        )));
    }
    let last = spec.u(spec.nu - 1);
    if z_abs > last + tol {
        return Err(Error::InvalidArgument(format!(
            "grid radii end at {last} below |z| = {z_abs}"
        )));
    }
    let count = (((z_abs - spec.u0 + tol) / spec.du).floor() as usize + 1).min(spec.nu);
    let on_sample = (spec.u(count - 1) - z_abs).abs() <= tol;

    // Trapezoid over 0, u_0, …, u_{count-1} [, Z]; the integrand vanishes at 0.
    let mut nodes: Vec<f64> = (0..count).map(|j| spec.u(j)).collect();
    if on_sample {
        *nodes.last_mut().expect("count >= 1") = z_abs;
    } else {
        nodes.push(z_abs);
    }
    let mut weights = vec![0.0; nodes.len()];
    let mut prev = 0.0;
    for j in 0..nodes.len() {
        let width = nodes[j] - prev;
        weights[j] += 0.5 * width;
        if j > 0 {
            weights[j - 1] += 0.5 * width;
        }
        prev = nodes[j];
    }

    // Value at Z from the last (up to three) samples at or below Z.
    let tail: Vec<usize> = (count.saturating_sub(3)..count).collect();
    let tail_u: Vec<f64> = tail.iter().map(|&j| spec.u(j)).collect();
    let extrap = if on_sample { None } else { Some(lagrange_weights(&tail_u, z_abs)) };

    // Bilinear corners in the plane.
    let fx = (x - spec.p0) / spec.h;
    let fy = (y - spec.q0) / spec.h;
    let corners = bilinear_corners(fx, fy);

    let mut lap_mf = vec![vec![0.0; nodes.len()]; n + 1];
    let mut lap_a01 = vec![vec![0.0; nodes.len()]; n + 1];
    let mut mf_z = 0.0;
    let mut a01_z = 0.0;
    for &(ip, iq, wgt) in &corners {
        for i in 0..=n {
            for (field, dest) in [(MomentField::Mf, &mut lap_mf), (MomentField::A01, &mut lap_a01)] {
                let profile = if req.mode == Mode::EvenMirror && field == MomentField::A01 {
                    vec![0.0; spec.nu]
                } else {
                    grid.laplacian_profile(field, i, ip, iq)?
                };
                for j in 0..count {
                    dest[i][j] += wgt * profile[j];
                }
                let at_z = match &extrap {
                    Some(lw) => tail.iter().zip(lw).map(|(&j, w)| w * profile[j]).sum(),
                    None => profile[count - 1],
                };
                if !on_sample {
                    dest[i][count] += wgt * at_z;
                }
                if i == 0 {
                    match field {
                        MomentField::Mf => mf_z += wgt * at_z,
                        MomentField::A01 => a01_z += wgt * at_z,
                    }
                }
            }
        }
    }
    Ok(RadialData { nodes, weights, lap_mf, lap_a01, mf_z, a01_z })
}

/// Grid cells and weights for bilinear interpolation at fractional indices;
/// a coordinate that hits a grid line uses that line alone.
fn bilinear_corners(fx: f64, fy: f64) -> Vec<(isize, isize, f64)> {
    let axis = |f: f64| -> Vec<(isize, f64)> {
        let r = f.round();
        if (f - r).abs() < 1e-9 {
            vec![(r as isize, 1.0)]
        } else {
            let i0 = f.floor();
            let t = f - i0;
            vec![(i0 as isize, 1.0 - t), (i0 as isize + 1, t)]
        }
    };
    let mut out = Vec::with_capacity(4);
    for (ip, wp) in axis(fx) {
        for &(iq, wq) in &axis(fy) {
            out.push((ip, iq, wp * wq));
        }
    }
    out
}

/// Partial sums `S_0..S_n` at one point.
pub fn reconstruct_point(
    req: &ReconstructionRequest<'_>,
    table: &CoefficientTable,
    point: [f64; 3],
) -> Result<ReconstructionResult> {
    req.validate(table)?;
    let filters = Filters::new(table, req.order_n)?;
    reconstruct_with(req, &filters, point)
}

fn reconstruct_with(
    req: &ReconstructionRequest<'_>,
    filters: &Filters,
    point: [f64; 3],
) -> Result<ReconstructionResult> {
    let [x, y, z] = point;
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite point {point:?}")));
    }
    let z_abs = z.abs();
    if z_abs < req.min_abs_z {
        return Err(Error::OnPlanePoint { abs_z: z_abs, min_abs_z: req.min_abs_z });
    }
    let sign = z.signum();
    let mut data = match req.source {
        MomentSource::Field(f) => field_radial_data(f, req, x, y, z_abs)?,
        MomentSource::Grid(g) => grid_radial_data(g, req, x, y, z_abs)?,
    };
    if req.mode == Mode::EvenMirror {
        data.a01_z = 0.0;
        for row in &mut data.lap_a01 {
            row.fill(0.0);
        }
    }
    let sums = partial_sums(filters, &data, z_abs, sign);
    let n = req.order_n;
    Ok(ReconstructionResult {
        point,
        value: sums[n],
        last_increment: (n > 0).then(|| (sums[n] - sums[n - 1]).abs()),
        partial_sums: sums,
    })
}

/// Reconstructs every point in parallel; the first error aborts.
pub fn reconstruct_points(
    req: &ReconstructionRequest<'_>,
    table: &CoefficientTable,
    points: &[[f64; 3]],
) -> Result<Vec<ReconstructionResult>> {
    req.validate(table)?;
    let filters = Filters::new(table, req.order_n)?;
    points.par_iter().map(|&p| reconstruct_with(req, &filters, p)).collect()
}

/// Even extension of `f_c` (supported in `z > 0`) reconstructed from its
/// spherical means alone. The target must satisfy `z > 0`.
pub fn mirror_even_reconstruct<F: ScalarField3D>(
    f_c: &F,
    template: &ReconstructionRequest<'_>,
    table: &CoefficientTable,
    point: [f64; 3],
) -> Result<ReconstructionResult> {
    if !(point[2] > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mirror reconstruction targets z > 0, got z = {}",
            point[2]
        )));
    }
    if let Some(bad) = lower_half_sample(f_c, point) {
        log::warn!(
            "field `{}` is nonzero for z <= 0 (f = {} at {:?}); the mirror assumes support in z > 0",
            f_c.descriptor(),
            bad.1,
            bad.0
        );
    }
    let mirror = EvenMirror::new(f_c);
    let req = ReconstructionRequest {
        source: MomentSource::Field(&mirror),
        mode: Mode::EvenMirror,
        ..template.clone()
    };
    reconstruct_point(&req, table, point)
}

fn lower_half_sample<F: ScalarField3D>(f: &F, point: [f64; 3]) -> Option<([f64; 3], f64)> {
    let reach = point[2].abs().max(1.0);
    for a in -2..=2 {
        for b in -2..=2 {
            for c in 0..=4 {
                let p = [
                    point[0] + 0.5 * a as f64 * reach,
                    point[1] + 0.5 * b as f64 * reach,
                    -0.25 * c as f64 * reach,
                ];
                let v = f.evaluate(p[0], p[1], p[2]);
                if v.abs() > 1e-12 {
                    return Some((p, v));
                }
            }
        }
    }
    None
}

/// Plane of a rectangular slice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SlicePlane {
    /// `y = v`; columns run over `x`, rows over `z`.
    Y(f64),
    /// `z = v`; columns run over `x`, rows over `y`.
    Z(f64),
}

impl SlicePlane {
    pub fn parse(s: &str) -> Result<Self> {
        let (axis, v) = s
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("slice `{s}` should look like y=3 or z=0.5")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("slice value `{v}`: {e}")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("slice value must be finite, got {v}")));
        }
        match axis.trim() {
            "y" => Ok(SlicePlane::Y(v)),
            "z" => Ok(SlicePlane::Z(v)),
            other => Err(Error::Parse(format!("slice axis must be y or z, got `{other}`"))),
        }
    }
}

/// Rectangle `[a0, a1] × [b0, b1]` in a slice plane sampled with `step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceSpec {
    pub plane: SlicePlane,
    /// Range of `x`.
    pub cols: (f64, f64),
    /// Range of `z` (for `y = v`) or `y` (for `z = v`).
    pub rows: (f64, f64),
    pub step: f64,
}

impl SliceSpec {
    fn count(range: (f64, f64), step: f64) -> Result<usize> {
        let span = range.1 - range.0;
        if !(span >= 0.0) || !span.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "range {}..{} must be finite and increasing",
                range.0, range.1
            )));
        }
        Ok((span / step + 1e-9).floor() as usize + 1)
    }

    pub fn shape(&self) -> Result<(usize, usize)> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidArgument(format!("step must be positive, got {}", self.step)));
        }
        Ok((Self::count(self.rows, self.step)?, Self::count(self.cols, self.step)?))
    }

    /// Points in row-major order (rows ascending, then columns ascending).
    pub fn points(&self) -> Result<Vec<[f64; 3]>> {
        let (nr, nc) = self.shape()?;
        let mut pts = Vec::with_capacity(nr * nc);
        for r in 0..nr {
            let b = self.rows.0 + r as f64 * self.step;
            for c in 0..nc {
                let a = self.cols.0 + c as f64 * self.step;
                pts.push(match self.plane {
                    SlicePlane::Y(v) => [a, v, b],
                    SlicePlane::Z(v) => [a, b, v],
                });
            }
        }
        Ok(pts)
    }
}

/// Reconstructed values on a slice; points too close to the plane are NaN.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceResult {
    pub spec: SliceSpec,
    pub rows: usize,
    pub cols: usize,
    pub order_n: usize,
    pub mode: Mode,
    pub points: Vec<[f64; 3]>,
    pub values: Vec<f64>,
}

pub fn reconstruct_slice(
    req: &ReconstructionRequest<'_>,
    table: &CoefficientTable,
    slice: &SliceSpec,
) -> Result<SliceResult> {
    req.validate(table)?;
    let (rows, cols) = slice.shape()?;
    let points = slice.points()?;
    let filters = Filters::new(table, req.order_n)?;
    let values = points
        .par_iter()
        .map(|&p| match reconstruct_with(req, &filters, p) {
            Ok(r) => Ok(r.value),
            Err(Error::OnPlanePoint { .. }) => Ok(f64::NAN),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SliceResult {
        spec: *slice,
        rows,
        cols,
        order_n: req.order_n,
        mode: req.mode,
        points,
        values,
    })
}

impl SliceResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(80 * self.values.len() + 64);
        let _ = writeln!(out, "# order={} mode={}", self.order_n, self.mode.label());
        out.push_str("x,y,z,f_rec\n");
        for (p, v) in self.points.iter().zip(&self.values) {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_f64(p[0]),
                fmt_f64(p[1]),
                fmt_f64(p[2]),
                fmt_f64(*v)
            );
        }
        out
    }

    /// 8-bit binary PGM, top row = largest row coordinate, linear min–max
    /// scaling; missing values are black.
    pub fn to_pgm(&self) -> Vec<u8> {
        let finite = self.values.iter().copied().filter(|v| v.is_finite());
        let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
        let mut out = format!(
            "P5\n# min={} max={} order={} mode={}\n{} {}\n255\n",
            fmt_f64(lo),
            fmt_f64(hi),
            self.order_n,
            self.mode.label(),
            self.cols,
            self.rows
        )
        .into_bytes();
        for r in (0..self.rows).rev() {
            for c in 0..self.cols {
                let v = self.values[r * self.cols + c];
                let px = if !v.is_finite() {
                    0
                } else if hi > lo {
                    ((v - lo) / (hi - lo) * 255.0).round().clamp(0.0, 255.0) as u8
                } else {
                    128
                };
                out.push(px);
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }

    pub fn write_pgm(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_pgm())
    }

    /// Largest `|f_rec − f|` over non-missing samples.
    pub fn max_abs_error(&self, exact: impl Fn(f64, f64, f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| v.is_finite())
            .map(|(p, v)| (v - exact(p[0], p[1], p[2])).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_tables::build_tables;
    use crate::phantom::{rho2_z3, z_squared, zero_field};

    #[test]
    fn rho2_z3_point_values() {
        let t = build_tables(2);
        let f = rho2_z3();
        let req = ReconstructionRequest::from_field(&f, 2);
        let r = reconstruct_point(&req, &t, [1.0, 3.0, 1.0]).unwrap();
        assert!((r.value - 10.0).abs() < 1e-10, "{}", r.value);
        assert_eq!(r.partial_sums.len(), 3);
        let r = reconstruct_point(&req, &t, [1.0, 3.0, -1.0]).unwrap();
        assert!((r.value + 10.0).abs() < 1e-10);
    }

    #[test]
    fn z_squared_hand_value() {
        let t = build_tables(2);
        let f = z_squared();
        let req = ReconstructionRequest::from_field(&f, 2);
        let r = reconstruct_point(&req, &t, [0.0, 0.0, 2.0]).unwrap();
        assert!((r.value - 4.0).abs() < 1e-12);
        // S_0 is Mf alone.
        assert!((r.partial_sums[0] - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_contract_requests() {
        let t = build_tables(2);
        let f = z_squared();
        let req = ReconstructionRequest::from_field(&f, 2);
        assert!(matches!(
            reconstruct_point(&req, &t, [0.0, 0.0, 0.0]),
            Err(Error::OnPlanePoint { .. })
        ));
        let req3 = ReconstructionRequest::from_field(&f, 3);
        assert!(matches!(
            reconstruct_point(&req3, &t, [0.0, 0.0, 1.0]),
            Err(Error::OrderExceedsTable { .. })
        ));
        let bad = ReconstructionRequest::from_field(&f, 1).with_min_abs_z(0.0);
        assert!(reconstruct_point(&bad, &t, [0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn zero_slice_is_zero_and_near_plane_is_missing() {
        let t = build_tables(1);
        let f = zero_field();
        let req = ReconstructionRequest::from_field(&f, 1).with_min_abs_z(0.25);
        let s = SliceSpec { plane: SlicePlane::Y(0.0), cols: (-1.0, 1.0), rows: (-1.0, 1.0), step: 0.5 };
        let out = reconstruct_slice(&req, &t, &s).unwrap();
        assert_eq!((out.rows, out.cols), (5, 5));
        for (p, v) in out.points.iter().zip(&out.values) {
            if p[2].abs() < 0.25 {
                assert!(v.is_nan());
            } else {
                assert_eq!(*v, 0.0);
            }
        }
        let csv = out.to_csv();
        assert!(csv.starts_with("# order=1 mode=two-data\nx,y,z,f_rec\n"));
        let pgm = out.to_pgm();
        assert!(pgm.starts_with(b"P5\n"));
        assert!(pgm.ends_with(&[128u8; 5]));
    }

    #[test]
    fn slice_shapes_and_parsing() {
        let s = SliceSpec { plane: SlicePlane::Y(3.0), cols: (-3.0, 3.0), rows: (-2.0, 2.0), step: 0.1 };
        assert_eq!(s.shape().unwrap(), (41, 61));
        let pts = s.points().unwrap();
        assert_eq!(pts[0], [-3.0, 3.0, -2.0]);
        assert_eq!(SlicePlane::parse("z=0.5").unwrap(), SlicePlane::Z(0.5));
        assert!(SlicePlane::parse("x=1").is_err());
        assert!(SlicePlane::parse("y").is_err());
        assert!(SliceSpec { step: 0.0, ..s }.shape().is_err());
        assert!(SliceSpec { cols: (1.0, -1.0), ..s }.shape().is_err());
    }

    #[test]
    fn bilinear_corner_weights() {
        assert_eq!(bilinear_corners(2.0, 3.0), vec![(2, 3, 1.0)]);
        let c = bilinear_corners(2.25, 3.0);
        assert_eq!(c.len(), 2);
        assert!((c[0].2 - 0.75).abs() < 1e-15 && (c[1].2 - 0.25).abs() < 1e-15);
        let w: f64 = bilinear_corners(0.3, 0.6).iter().map(|c| c.2).sum();
        assert!((w - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lagrange_extrapolation_is_exact_on_quadratics() {
        let xs = [1.0, 1.5, 2.0];
        let w = lagrange_weights(&xs, 2.3);
        let v: f64 = xs.iter().zip(&w).map(|(x, w)| w * (x * x - x + 2.0)).sum();
        assert!((v - (2.3 * 2.3 - 2.3 + 2.0)).abs() < 1e-13);
    }
}
