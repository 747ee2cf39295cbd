//! Forward operators on plane-centred spheres.
//!
//! All integrals use a [`SphericalQuadratureRule`] in the polar map
//! `(x, y, z) = (p + t sinθ cosφ, q + t sinθ sinφ, t cosθ)`, so `θ = 0` is the
//! upper pole of the sphere.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::legendre::{expansion_legendre, factorial_ratio, legendre};
use crate::phantom::ScalarField3D;
use crate::quadrature::SphericalQuadratureRule;

/// Sphere with centre `(p, q, 0)` and radius `t > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereCenter {
    pub p: f64,
    pub q: f64,
    pub t: f64,
}

impl SphereCenter {
    pub fn new(p: f64, q: f64, t: f64) -> Result<Self> {
        let c = SphereCenter { p, q, t };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::NonPositiveRadius(self.t));
        }
        if !self.p.is_finite() || !self.q.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "sphere centre ({}, {}) is not finite",
                self.p, self.q
            )));
        }
        Ok(())
    }
}

/// Value of the two-data transform: `re = Mf`, `im = a01 / 3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoData {
    pub re: f64,
    pub im: f64,
}

/// Cosine (`A`) or sine (`B`) harmonic coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicKind {
    A,
    B,
}

/// Values of a field at the nodes of a rule on one sphere.
///
/// Sampling once and projecting many times is the cheap way to get several
/// harmonic coefficients of the same restriction.
#[derive(Clone, Debug)]
pub struct RestrictionSamples<'r> {
    rule: &'r SphericalQuadratureRule,
    values: Vec<f64>,
}

/// Samples `f` on the sphere whose centre sits at height `z0` above the plane.
pub fn sample_restriction_at_height<'r, F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    z0: f64,
    rule: &'r SphericalQuadratureRule,
) -> Result<RestrictionSamples<'r>> {
    c.validate()?;
    let values = rule
        .nodes()
        .iter()
        .map(|nd| {
            f.evaluate(
                c.p + c.t * nd.sin_theta * nd.cos_phi,
                c.q + c.t * nd.sin_theta * nd.sin_phi,
                z0 + c.t * nd.cos_theta,
            )
        })
        .collect();
    Ok(RestrictionSamples { rule, values })
}

pub fn sample_restriction<'r, F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    rule: &'r SphericalQuadratureRule,
) -> Result<RestrictionSamples<'r>> {
    sample_restriction_at_height(f, c, 0.0, rule)
}

impl RestrictionSamples<'_> {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn integrate(&self, g: impl Fn(usize) -> f64) -> f64 {
        self.rule
            .nodes()
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(|(j, (nd, v))| nd.weight * v * g(j))
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.integrate(|_| 1.0) / (4.0 * PI)
    }

    pub fn first_cosine(&self) -> f64 {
        let nodes = self.rule.nodes();
        3.0 * self.integrate(|j| nodes[j].cos_theta) / (4.0 * PI)
    }

    pub fn harmonic(&self, n: usize, m: usize, kind: HarmonicKind) -> Result<f64> {
        validate_harmonic(n, m, kind)?;
        let nodes = self.rule.nodes();
        if m == 0 {
            let s = self.integrate(|j| legendre(n, nodes[j].cos_theta));
            return Ok((2 * n + 1) as f64 * s / (4.0 * PI));
        }
        let s = self.integrate(|j| {
            let nd = &nodes[j];
            let ang = m as f64 * nd.phi;
            let trig = match kind {
                HarmonicKind::A => ang.cos(),
                HarmonicKind::B => ang.sin(),
            };
            expansion_legendre(n, m, nd.cos_theta) * trig
        });
        Ok((2 * n + 1) as f64 / (2.0 * PI) * factorial_ratio(n, m) * s)
    }
}

fn validate_harmonic(n: usize, m: usize, kind: HarmonicKind) -> Result<()> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "harmonic order m = {m} exceeds degree n = {n}"
        )));
    }
    if kind == HarmonicKind::B && m == 0 {
        return Err(Error::InvalidArgument(
            "sine coefficient b_{0n} is not defined (needs m >= 1)".into(),
        ));
    }
    Ok(())
}

/// `Mf(p, q, t)`: the average of `f` over the sphere.
pub fn spherical_mean<F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    rule: &SphericalQuadratureRule,
) -> Result<f64> {
    Ok(sample_restriction(f, c, rule)?.mean())
}

/// Mean over the sphere of radius `t` centred at `(p, q, z0)`.
pub fn spherical_mean_at_height<F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    z0: f64,
    rule: &SphericalQuadratureRule,
) -> Result<f64> {
    Ok(sample_restriction_at_height(f, c, z0, rule)?.mean())
}

/// `a01(p, q, t) = (3/4π) ∫ f cosθ dω`.
pub fn first_cosine_coefficient<F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    rule: &SphericalQuadratureRule,
) -> Result<f64> {
    Ok(sample_restriction(f, c, rule)?.first_cosine())
}

/// `Tf = Mf + i·a01/3`.
pub fn two_data_transform<F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    rule: &SphericalQuadratureRule,
) -> Result<TwoData> {
    let s = sample_restriction(f, c, rule)?;
    Ok(TwoData {
        re: s.mean(),
        im: s.first_cosine() / 3.0,
    })
}

/// `a_{mn}` (kind `A`) or `b_{mn}` (kind `B`) of the restriction of `f`.
pub fn harmonic_coefficient<F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    n: usize,
    m: usize,
    kind: HarmonicKind,
    rule: &SphericalQuadratureRule,
) -> Result<f64> {
    validate_harmonic(n, m, kind)?;
    sample_restriction(f, c, rule)?.harmonic(n, m, kind)
}

/// `(Δ^i Mf, Δ^i a01)` for `i = 0..out.len()` at one sphere: exact when the
/// field has them, otherwise sphere averages of its planar Laplacians.
pub fn moment_laplacians(
    field: &dyn ScalarField3D,
    rule: &SphericalQuadratureRule,
    p: f64,
    q: f64,
    u: f64,
    out: &mut [(f64, f64)],
) -> Result<()> {
    if field.analytic_moment_laplacians(p, q, u, out) {
        return Ok(());
    }
    if out.len() == 1 {
        let s = sample_restriction(field, SphereCenter::new(p, q, u)?, rule)?;
        out[0] = (s.mean(), s.first_cosine());
        return Ok(());
    }
    let mut acc = vec![(0.0, 0.0); out.len()];
    let mut vals = vec![0.0; out.len()];
    for nd in rule.nodes() {
        let (x, y, z) = (
            p + u * nd.sin_theta * nd.cos_phi,
            q + u * nd.sin_theta * nd.sin_phi,
            u * nd.cos_theta,
        );
        if !field.planar_laplacians(x, y, z, &mut vals) {
            return Err(Error::MissingCapability {
                phantom: field.descriptor(),
                what: format!("planar Laplacians up to order {}", out.len() - 1),
            });
        }
        for (a, &v) in acc.iter_mut().zip(&vals) {
            a.0 += nd.weight * v;
            a.1 += nd.weight * v * nd.cos_theta;
        }
    }
    let norm = 4.0 * PI;
    for (o, a) in out.iter_mut().zip(acc) {
        *o = (a.0 / norm, 3.0 * a.1 / norm);
    }
    Ok(())
}

/// Truncated harmonic expansion of the restriction, evaluated at a point of
/// the sphere. At the poles this is `Mf + Σ_{n=1..N} (sgn z)^n a_{0n}`.
pub fn restriction_partial_sum<F: ScalarField3D + ?Sized>(
    f: &F,
    c: SphereCenter,
    point: [f64; 3],
    order: usize,
    rule: &SphericalQuadratureRule,
) -> Result<f64> {
    c.validate()?;
    let [x, y, z] = point;
    let (dx, dy) = (x - c.p, y - c.q);
    let r = (dx * dx + dy * dy + z * z).sqrt();
    if (r - c.t).abs() > 1e-10 * c.t {
        return Err(Error::OffSphere { x, y, z, p: c.p, q: c.q, t: c.t });
    }
    let cos_theta = (z / r).clamp(-1.0, 1.0);
    let phi = dy.atan2(dx);
    let s = sample_restriction(f, c, rule)?;
    let mut total = 0.0;
    for n in 0..=order {
        total += s.harmonic(n, 0, HarmonicKind::A)? * legendre(n, cos_theta);
        for m in 1..=n {
            let plm = expansion_legendre(n, m, cos_theta);
            if plm == 0.0 {
                continue;
            }
            let a = s.harmonic(n, m, HarmonicKind::A)?;
            let b = s.harmonic(n, m, HarmonicKind::B)?;
            let ang = m as f64 * phi;
            total += (a * ang.cos() + b * ang.sin()) * plm;
        }
    }
    Ok(total)
}
