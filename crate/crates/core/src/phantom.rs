//! Test fields ("phantoms") with analytic ground truth.
//!
//! Polynomial phantoms know their moments exactly: the restriction of a
//! polynomial to a plane-centred sphere is a polynomial in the unit vector,
//! and sphere averages of monomials have a closed form. Separable phantoms
//! (Gaussians, cutoff bumps) expose exact planar Laplacians of the field
//! itself; their moments come from quadrature, which commutes with the planar
//! Laplacian because the spheres move rigidly with `(p, q)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jet::Jet;

/// A real field on R³ as seen by the forward and inverse operators.
pub trait ScalarField3D: Send + Sync {
    fn evaluate(&self, x: f64, y: f64, z: f64) -> f64;

    /// Writes `Δ^i f(x, y, z)` (planar Laplacian in `x, y`) for
    /// `i = 0..out.len()`. Returns `false` if the field cannot supply them.
    fn planar_laplacians(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> bool {
        match out {
            [] => true,
            [v] => {
                *v = self.evaluate(x, y, z);
                true
            }
            _ => false,
        }
    }

    /// Exact `(Mf, a01)` at centre `(p, q, 0)` and radius `u`, when known.
    fn analytic_moments(&self, _p: f64, _q: f64, _u: f64) -> Option<(f64, f64)> {
        None
    }

    /// Exact `(Δ^i Mf, Δ^i a01)` for `i = 0..out.len()`, when known.
    fn analytic_moment_laplacians(&self, _p: f64, _q: f64, _u: f64, _out: &mut [(f64, f64)]) -> bool {
        false
    }

    /// Name and parameters, e.g. `gauss:0,0,1,0.5,0.6,0.4`.
    fn descriptor(&self) -> String;
}

impl<T: ScalarField3D + ?Sized> ScalarField3D for Arc<T> {
    fn evaluate(&self, x: f64, y: f64, z: f64) -> f64 {
        (**self).evaluate(x, y, z)
    }
    fn planar_laplacians(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> bool {
        (**self).planar_laplacians(x, y, z, out)
    }
    fn analytic_moments(&self, p: f64, q: f64, u: f64) -> Option<(f64, f64)> {
        (**self).analytic_moments(p, q, u)
    }
    fn analytic_moment_laplacians(&self, p: f64, q: f64, u: f64, out: &mut [(f64, f64)]) -> bool {
        (**self).analytic_moment_laplacians(p, q, u, out)
    }
    fn descriptor(&self) -> String {
        (**self).descriptor()
    }
}

impl<T: ScalarField3D + ?Sized> ScalarField3D for &T {
    fn evaluate(&self, x: f64, y: f64, z: f64) -> f64 {
        (**self).evaluate(x, y, z)
    }
    fn planar_laplacians(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> bool {
        (**self).planar_laplacians(x, y, z, out)
    }
    fn analytic_moments(&self, p: f64, q: f64, u: f64) -> Option<(f64, f64)> {
        (**self).analytic_moments(p, q, u)
    }
    fn analytic_moment_laplacians(&self, p: f64, q: f64, u: f64, out: &mut [(f64, f64)]) -> bool {
        (**self).analytic_moment_laplacians(p, q, u, out)
    }
    fn descriptor(&self) -> String {
        (**self).descriptor()
    }
}

impl<T: ScalarField3D + ?Sized> ScalarField3D for Box<T> {
    fn evaluate(&self, x: f64, y: f64, z: f64) -> f64 {
        (**self).evaluate(x, y, z)
    }
    fn planar_laplacians(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> bool {
        (**self).planar_laplacians(x, y, z, out)
    }
    fn analytic_moments(&self, p: f64, q: f64, u: f64) -> Option<(f64, f64)> {
        (**self).analytic_moments(p, q, u)
    }
    fn analytic_moment_laplacians(&self, p: f64, q: f64, u: f64, out: &mut [(f64, f64)]) -> bool {
        (**self).analytic_moment_laplacians(p, q, u, out)
    }
    fn descriptor(&self) -> String {
        (**self).descriptor()
    }
}

/// Polynomial in three variables, stored as exponent triple → coefficient.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly3 {
    terms: BTreeMap<(u32, u32, u32), f64>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32, u32), f64)>) -> Self {
        let mut p = Poly3::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: (u32, u32, u32), coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(0.0);
        *slot += coeff;
        if *slot == 0.0 {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &f64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b, c)| a + b + c).max().unwrap_or(0)
    }

    pub fn eval(&self, a: f64, b: f64, c: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j, k), &co)| co * a.powi(i as i32) * b.powi(j as i32) * c.powi(k as i32))
            .sum()
    }

    /// Laplacian in the first two variables.
    pub fn planar_laplacian(&self) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(i, j, k), &c) in &self.terms {
            if i >= 2 {
                out.add_term((i - 2, j, k), c * (i * (i - 1)) as f64);
            }
            if j >= 2 {
                out.add_term((i, j - 2, k), c * (j * (j - 1)) as f64);
            }
        }
        out
    }

    /// Partial derivative in the first (0), second (1) or third (2) variable.
    pub fn derivative(&self, var: usize) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(i, j, k), &c) in &self.terms {
            let e = [i, j, k];
            if e[var] == 0 {
                continue;
            }
            let mut d = e;
            d[var] -= 1;
            out.add_term((d[0], d[1], d[2]), c * e[var] as f64);
        }
        out
    }

    /// `Δ^0, Δ^1, …` up to and including the last nonzero power.
    pub fn laplacian_powers(&self) -> Vec<Poly3> {
        let mut out = vec![self.clone()];
        loop {
            let next = out.last().expect("non-empty").planar_laplacian();
            if next.is_zero() {
                break;
            }
            out.push(next);
        }
        out
    }

    /// `E_ω[ f(p + u ωx, q + u ωy, u ωz) · W(ω) ]` over the uniform unit sphere,
    /// returned as a polynomial in `(p, q, u)`. `weight` is a polynomial in
    /// `(ωx, ωy, ωz)`.
    pub fn restriction_moment(&self, weight: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(a, b, c), &co) in &self.terms {
            for j in 0..=a {
                for l in 0..=b {
                    let bin = binomial(a, j) * binomial(b, l);
                    for (&(wa, wb, wc), &wco) in &weight.terms {
                        let m = sphere_monomial_mean(j + wa, l + wb, c + wc);
                        if m == 0.0 {
                            continue;
                        }
                        out.add_term((a - j, b - l, j + l + c), co * bin * wco * m);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j, k), c)| format!("{c}*x^{i}*y^{j}*z^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn double_factorial(n: i64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// Mean of `ωx^a ωy^b ωz^c` over the unit sphere.
pub fn sphere_monomial_mean(a: u32, b: u32, c: u32) -> f64 {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return 0.0;
    }
    let (a, b, c) = (a as i64, b as i64, c as i64);
    double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1)
        / double_factorial(a + b + c + 1)
}

/// `P_n(w)` as a polynomial in `ωz` (third variable).
fn legendre_in_wz(n: u32) -> Poly3 {
    // Coefficients from the three-term recurrence on coefficient vectors.
    let mut p0 = vec![1.0];
    let mut p1 = vec![0.0, 1.0];
    if n == 0 {
        return Poly3::from_terms([((0, 0, 0), 1.0)]);
    }
    for k in 1..n as usize {
        let mut p2 = vec![0.0; k + 2];
        for (i, c) in p1.iter().enumerate() {
            p2[i + 1] += (2 * k + 1) as f64 * c / (k + 1) as f64;
        }
        for (i, c) in p0.iter().enumerate() {
            p2[i] -= k as f64 * c / (k + 1) as f64;
        }
        p0 = p1;
        p1 = p2;
    }
    Poly3::from_terms(p1.into_iter().enumerate().map(|(i, c)| ((0, 0, i as u32), c)))
}

/// Polynomial phantom with exact moments and moment Laplacians.
#[derive(Clone, Debug)]
pub struct PolynomialField {
    name: String,
    poly: Poly3,
    planar: Vec<Poly3>,
    mean: Vec<Poly3>,
    a01: Vec<Poly3>,
}

impl PolynomialField {
    pub fn new(name: impl Into<String>, poly: Poly3) -> Self {
        let planar = poly.laplacian_powers();
        let mean_poly = poly.restriction_moment(&Poly3::from_terms([((0, 0, 0), 1.0)]));
        let a01_poly = poly.restriction_moment(&Poly3::from_terms([((0, 0, 1), 3.0)]));
        PolynomialField {
            name: name.into(),
            poly,
            planar,
            mean: mean_poly.laplacian_powers(),
            a01: a01_poly.laplacian_powers(),
        }
    }

    pub fn poly(&self) -> &Poly3 {
        &self.poly
    }

    /// Exact `a_{0n}(p, q, u)` as a polynomial in `(p, q, u)`.
    pub fn harmonic_a0n(&self, n: u32) -> Poly3 {
        let mut w = legendre_in_wz(n);
        for c in w.terms.values_mut() {
            *c *= (2 * n + 1) as f64;
        }
        self.poly.restriction_moment(&w)
    }

    pub fn mean_polynomial(&self) -> &Poly3 {
        &self.mean[0]
    }

    pub fn a01_polynomial(&self) -> &Poly3 {
        &self.a01[0]
    }
}

fn nth_or_zero(v: &[Poly3], i: usize, a: f64, b: f64, c: f64) -> f64 {
    v.get(i).map_or(0.0, |p| p.eval(a, b, c))
}

impl ScalarField3D for PolynomialField {
    fn evaluate(&self, x: f64, y: f64, z: f64) -> f64 {
        self.poly.eval(x, y, z)
    }

    fn planar_laplacians(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> bool {
        for (i, o) in out.iter_mut().enumerate() {
            *o = nth_or_zero(&self.planar, i, x, y, z);
        }
        true
    }

    fn analytic_moments(&self, p: f64, q: f64, u: f64) -> Option<(f64, f64)> {
        Some((self.mean[0].eval(p, q, u), self.a01[0].eval(p, q, u)))
    }

    fn analytic_moment_laplacians(&self, p: f64, q: f64, u: f64, out: &mut [(f64, f64)]) -> bool {
        for (i, o) in out.iter_mut().enumerate() {
            *o = (nth_or_zero(&self.mean, i, p, q, u), nth_or_zero(&self.a01, i, p, q, u));
        }
        true
    }

    fn descriptor(&self) -> String {
        self.name.clone()
    }
}

/// The odd test field `(x² + y²) z³`.
pub fn rho2_z3() -> PolynomialField {
    PolynomialField::new(
        "rho2z3",
        Poly3::from_terms([((2, 0, 3), 1.0), ((0, 2, 3), 1.0)]),
    )
}

pub fn linear_z() -> PolynomialField {
    PolynomialField::new("z", Poly3::from_terms([((0, 0, 1), 1.0)]))
}

pub fn z_squared() -> PolynomialField {
    PolynomialField::new("zsq", Poly3::from_terms([((0, 0, 2), 1.0)]))
}

pub fn constant(c: f64) -> PolynomialField {
    PolynomialField::new(format!("const:{c}"), Poly3::from_terms([((0, 0, 0), c)]))
}

pub fn zero_field() -> PolynomialField {
    PolynomialField::new("zero", Poly3::zero())
}

/// Polynomial of total degree ≤ `degree` with every coefficient uniform in
/// `[-1, 1]`, drawn from a seeded ChaCha stream.
pub fn random_polynomial(seed: u64, degree: u32) -> PolynomialField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut poly = Poly3::zero();
    for a in 0..=degree {
        for b in 0..=degree - a {
            for c in 0..=degree - a - b {
                poly.add_term((a, b, c), rng.gen_range(-1.0..=1.0));
            }
        }
    }
    PolynomialField::new(format!("poly:{seed},{degree}"), poly)
}

/// One-dimensional factor of a separable field.
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    /// `exp(-((x - center)/sigma)²)`.
    Gaussian { center: f64, sigma: f64 },
    /// Gaussian times a C^∞ cutoff equal to 1 for `|x - center| ≤ flat` and 0
    /// for `|x - center| ≥ support`.
    CutoffGaussian {
        center: f64,
        sigma: f64,
        flat: f64,
        support: f64,
    },
}

impl Profile {
    pub fn value(&self, x: f64) -> f64 {
        self.derivatives(x, 0)[0]
    }

    /// `f^{(k)}(x)` for `k = 0..=order`.
    pub fn derivatives(&self, x: f64, order: usize) -> Vec<f64> {
        match *self {
            Profile::Gaussian { center, sigma } => gaussian_derivatives(x, center, sigma, order),
            Profile::CutoffGaussian {
                center,
                sigma,
                flat,
                support,
            } => {
                let s = x - center;
                if s.abs() >= support {
                    return vec![0.0; order + 1];
                }
                let g = gaussian_derivatives(x, center, sigma, order);
                if s.abs() <= flat {
                    return g;
                }
                let cut = cutoff_jet(s, flat, support, order).derivatives();
                // Leibniz rule.
                (0..=order)
                    .map(|k| {
                        let mut acc = 0.0;
                        let mut bin = 1.0;
                        for j in 0..=k {
                            acc += bin * g[j] * cut[k - j];
                            bin = bin * (k - j) as f64 / (j + 1) as f64;
                        }
                        acc
                    })
                    .collect()
            }
        }
    }
}

fn gaussian_derivatives(x: f64, center: f64, sigma: f64, order: usize) -> Vec<f64> {
    // d^k/dx^k exp(-s²) = (-1)^k H_k(s) exp(-s²) / sigma^k, s = (x - c)/sigma.
    let s = (x - center) / sigma;
    let e = (-s * s).exp();
    let mut h_prev = 1.0;
    let mut h = 2.0 * s;
    let mut out = Vec::with_capacity(order + 1);
    out.push(e);
    let mut scale = 1.0;
    for k in 1..=order {
        scale /= -sigma;
        out.push(h * e * scale);
        let next = 2.0 * s * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = next;
    }
    out
}

/// Smooth step `σ(τ) = e^{-1/τ} / (e^{-1/τ} + e^{-1/(1-τ)})` with
/// `τ = (support - |s|) / (support - flat)`, expanded as a jet in `s`.
fn cutoff_jet(s: f64, flat: f64, support: f64, order: usize) -> Jet {
    let width = support - flat;
    let sign = if s >= 0.0 { -1.0 } else { 1.0 };
    let tau0 = (support - s.abs()) / width;
    // τ(s0 + h) = τ0 + sign·h/width
    let tau = Jet::variable(0.0, order).scale(sign / width).add_scalar(tau0);
    let one = Jet::constant(1.0, order);
    let a = (-&tau.recip()).exp();
    let b = (-&(&one - &tau).recip()).exp();
    a.div(&(&a + &b))
}

/// Product field `fx(x) · fy(y) · fz(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparableField {
    name: String,
    pub fx: Profile,
    pub fy: Profile,
    pub fz: Profile,
}

impl SeparableField {
    pub fn new(name: impl Into<String>, fx: Profile, fy: Profile, fz: Profile) -> Self {
        SeparableField {
            name: name.into(),
            fx,
            fy,
            fz,
        }
    }
}

impl ScalarField3D for SeparableField {
    fn evaluate(&self, x: f64, y: f64, z: f64) -> f64 {
        let vz = self.fz.value(z);
        if vz == 0.0 {
            return 0.0;
        }
        self.fx.value(x) * self.fy.value(y) * vz
    }

    fn planar_laplacians(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> bool {
        if out.is_empty() {
            return true;
        }
        let vz = self.fz.value(z);
        if vz == 0.0 {
            out.fill(0.0);
            return true;
        }
        let top = 2 * (out.len() - 1);
        let dx = self.fx.derivatives(x, top);
        let dy = self.fy.derivatives(y, top);
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            let mut bin = 1.0;
            for j in 0..=i {
                acc += bin * dx[2 * j] * dy[2 * (i - j)];
                bin = bin * (i - j) as f64 / (j + 1) as f64;
            }
            *o = acc * vz;
        }
        true
    }

    fn descriptor(&self) -> String {
        self.name.clone()
    }
}

/// Anisotropic Gaussian `exp(-(x-x0)²/sx² - (y-y0)²/sy² - (z-z0)²/sz²)`.
pub fn anisotropic_gaussian(center: [f64; 3], sigma: [f64; 3]) -> SeparableField {
    SeparableField::new(
        format!(
            "gauss:{},{},{},{},{},{}",
            center[0], center[1], center[2], sigma[0], sigma[1], sigma[2]
        ),
        Profile::Gaussian { center: center[0], sigma: sigma[0] },
        Profile::Gaussian { center: center[1], sigma: sigma[1] },
        Profile::Gaussian { center: center[2], sigma: sigma[2] },
    )
}

/// Compactly supported C^∞ bump centred at `(x0, y0, z0)` with `z0 > 0.95`.
///
/// Gaussian profile (σ = 1 across, 0.35 vertically) under smooth cutoffs, so
/// the support is `|x - x0|, |y - y0| < 5` and `|z - z0| < 0.95`, strictly
/// inside the upper half-space.
pub fn bump(x0: f64, y0: f64, z0: f64) -> SeparableField {
    let across = |c: f64| Profile::CutoffGaussian {
        center: c,
        sigma: 1.0,
        flat: 3.5,
        support: 5.0,
    };
    SeparableField::new(
        format!("bump:{x0},{y0},{z0}"),
        across(x0),
        across(y0),
        Profile::CutoffGaussian {
            center: z0,
            sigma: 0.35,
            flat: 0.6,
            support: 0.95,
        },
    )
}

/// Even extension `f(x, y, z) = f_c(x, y, |z|)` of a field supported in `z > 0`.
#[derive(Clone, Debug)]
pub struct EvenMirror<F> {
    inner: F,
}

impl<F: ScalarField3D> EvenMirror<F> {
    pub fn new(inner: F) -> Self {
        EvenMirror { inner }
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: ScalarField3D> ScalarField3D for EvenMirror<F> {
    fn evaluate(&self, x: f64, y: f64, z: f64) -> f64 {
        self.inner.evaluate(x, y, z.abs())
    }

    fn planar_laplacians(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> bool {
        self.inner.planar_laplacians(x, y, z.abs(), out)
    }

    fn descriptor(&self) -> String {
        format!("even({})", self.inner.descriptor())
    }
}

/// Builds a phantom from `NAME[:params]`.
///
/// Names: `rho2z3`, `z`, `zsq`, `zero`, `const:C`, `poly:SEED,DEGREE`,
/// `gauss[:x0,y0,z0,sx,sy,sz]`, `bump[:x0,y0,z0]`, `bump-even[:x0,y0,z0]`.
pub fn parse_phantom(spec: &str) -> Result<Arc<dyn ScalarField3D>> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p)),
        None => (spec.trim(), None),
    };
    let nums = |expected: usize| -> Result<Option<Vec<f64>>> {
        let Some(p) = params else { return Ok(None) };
        let v: Vec<f64> = p
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("phantom `{spec}`: {e}")))?;
        if v.len() != expected || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse(format!(
                "phantom `{name}` expects {expected} finite parameters, got `{p}`"
            )));
        }
        Ok(Some(v))
    };
    let no_params = || -> Result<()> {
        if params.is_some() {
            Err(Error::Parse(format!("phantom `{name}` takes no parameters")))
        } else {
            Ok(())
        }
    };
    let field: Arc<dyn ScalarField3D> = match name {
        "rho2z3" => {
            no_params()?;
            Arc::new(rho2_z3())
        }
        "z" => {
            no_params()?;
            Arc::new(linear_z())
        }
        "zsq" => {
            no_params()?;
            Arc::new(z_squared())
        }
        "zero" => {
            no_params()?;
            Arc::new(zero_field())
        }
        "const" => {
            let v = nums(1)?.ok_or_else(|| Error::Parse("const needs a value, e.g. const:3".into()))?;
            Arc::new(constant(v[0]))
        }
        "poly" => {
            let v = nums(2)?.ok_or_else(|| Error::Parse("poly needs SEED,DEGREE".into()))?;
            if v[0] < 0.0 || v[1] < 0.0 || v[0].fract() != 0.0 || v[1].fract() != 0.0 || v[1] > 12.0 {
                return Err(Error::Parse("poly needs integer SEED ≥ 0 and DEGREE in 0..=12".into()));
            }
            Arc::new(random_polynomial(v[0] as u64, v[1] as u32))
        }
        "gauss" => {
            let v = nums(6)?.unwrap_or_else(|| DEFAULT_GAUSS.to_vec());
            if v[3..].iter().any(|&s| s <= 0.0) {
                return Err(Error::Parse("gauss widths must be positive".into()));
            }
            Arc::new(anisotropic_gaussian([v[0], v[1], v[2]], [v[3], v[4], v[5]]))
        }
        "bump" | "bump-even" => {
            let v = nums(3)?.unwrap_or_else(|| vec![0.0, 0.0, 1.0]);
            if v[2] <= 0.95 {
                return Err(Error::Parse("bump centre needs z0 > 0.95 to stay in z > 0".into()));
            }
            let b = bump(v[0], v[1], v[2]);
            if name == "bump" {
                Arc::new(b)
            } else {
                Arc::new(EvenMirror::new(b))
            }
        }
        other => {
            return Err(Error::Parse(format!("unknown phantom `{other}`")));
        }
    };
    Ok(field)
}

/// Default anisotropic Gaussian: centre `(0.2, -0.1, 0.6)`, widths `(0.6, 0.8, 0.5)`.
pub const DEFAULT_GAUSS: [f64; 6] = [0.2, -0.1, 0.6, 0.6, 0.8, 0.5];
