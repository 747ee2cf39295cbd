//! Gauss–Legendre rules on intervals and the product rule on the unit sphere.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
///
/// Newton iteration on `P_n` from the Chebyshev-like initial guesses; nodes
/// are accurate to a few ulps for the sizes used here (n ≲ 500).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * z * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        let (mut p0, mut p1) = (1.0, z);
        for k in 1..n {
            let p2 = ((2 * k + 1) as f64 * z * p1 - k as f64 * p0) / (k + 1) as f64;
            p0 = p1;
            p1 = p2;
        }
        let pm = if n == 1 { 1.0 } else { p0 };
        if n > 0 {
            dp = n as f64 * (z * p1 - pm) / (z * z - 1.0);
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// A Gauss–Legendre rule mapped to `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl IntervalRule {
    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Self {
        let (x, w) = gauss_legendre(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        IntervalRule {
            nodes: x.iter().map(|&xi| mid + half * xi).collect(),
            weights: w.iter().map(|&wi| half * wi).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// One node of a spherical rule with its trigonometric values cached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereNode {
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub cos_phi: f64,
    pub sin_phi: f64,
}

/// Product rule: Gauss–Legendre in `cos θ` times the uniform trapezoid in `φ`.
///
/// Weights sum to `4π`; the rule is exact for spherical polynomials of degree
/// up to `min(2 n_theta - 1, n_phi - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalQuadratureRule {
    n_theta: usize,
    n_phi: usize,
    nodes: Vec<SphereNode>,
}

impl SphericalQuadratureRule {
    pub const DEFAULT_N_THETA: usize = 24;
    pub const DEFAULT_N_PHI: usize = 48;

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::InvalidArgument(format!(
                "spherical rule needs positive sizes, got n_theta = {n_theta}, n_phi = {n_phi}"
            )));
        }
        let (x, w) = gauss_legendre(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (&ct, &wt) in x.iter().zip(&w) {
            let st = (1.0 - ct * ct).max(0.0).sqrt();
            let theta = ct.acos();
            for j in 0..n_phi {
                let phi = j as f64 * dphi;
                nodes.push(SphereNode {
                    theta,
                    phi,
                    weight: wt * dphi,
                    cos_theta: ct,
                    sin_theta: st,
                    cos_phi: phi.cos(),
                    sin_phi: phi.sin(),
                });
            }
        }
        Ok(SphericalQuadratureRule { n_theta, n_phi, nodes })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// Degree of spherical polynomials integrated exactly.
    pub fn exact_degree(&self) -> usize {
        (2 * self.n_theta - 1).min(self.n_phi - 1)
    }

    pub fn nodes(&self) -> &[SphereNode] {
        &self.nodes
    }

    /// `∫_{S²} g dω` for a function of the unit vector.
    pub fn integrate(&self, g: impl Fn(&SphereNode) -> f64) -> f64 {
        self.nodes.iter().map(|nd| nd.weight * g(nd)).sum()
    }
}

impl Default for SphericalQuadratureRule {
    fn default() -> Self {
        SphericalQuadratureRule::new(Self::DEFAULT_N_THETA, Self::DEFAULT_N_PHI)
            .expect("default sizes are positive")
    }
}
