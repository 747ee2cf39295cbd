//! Truncated Taylor series in one variable.
//!
//! A `Jet` holds the Taylor coefficients `f(x0 + h) = Σ_k a_k h^k` up to a
//! fixed order. Arithmetic on jets propagates exact derivatives, which is how
//! phantoms with cutoff functions supply high-order planar Laplacians.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Jet { coeffs }
    }

    /// The identity `x` expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut j = Jet::constant(x0, order);
        if order >= 1 {
            j.coeffs[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Derivatives `f^{(k)}(x0)` for `k = 0..=order`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                if k > 0 {
                    fact *= k as f64;
                }
                a * fact
            })
            .collect()
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += s;
        out
    }

    pub fn recip(&self) -> Jet {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b = vec![0.0; n];
        b[0] = 1.0 / a[0];
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
            b[k] = -s / a[0];
        }
        Jet { coeffs: b }
    }

    pub fn div(&self, other: &Jet) -> Jet {
        self * &other.recip()
    }

    pub fn exp(&self) -> Jet {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b = vec![0.0; n];
        b[0] = a[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * b[k - j]).sum();
            b[k] = s / k as f64;
        }
        Jet { coeffs: b }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut c = vec![0.0; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(n - i) {
                c[i + j] += a * b;
            }
        }
        Jet { coeffs: c }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_quadratic_matches_hermite() {
        // d^k/dx^k exp(-x²) at x0 equals (-1)^k H_k(x0) exp(-x0²).
        let x0 = 0.37;
        let x = Jet::variable(x0, 8);
        let g = (&(&x * &x)).scale(-1.0).exp();
        let d = g.derivatives();
        let mut h = vec![1.0, 2.0 * x0];
        for k in 1..8 {
            h.push(2.0 * x0 * h[k] - 2.0 * k as f64 * h[k - 1]);
        }
        for k in 0..=8 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let want = sign * h[k] * (-x0 * x0).exp();
            assert!((d[k] - want).abs() < 1e-11 * want.abs().max(1.0), "k={k}");
        }
    }

    #[test]
    fn reciprocal_of_linear() {
        // 1/(1 - x) at 0 has all Taylor coefficients 1.
        let x = Jet::variable(0.0, 10);
        let r = (&Jet::constant(1.0, 10) - &x).recip();
        assert!(r.coeffs().iter().all(|&c| (c - 1.0).abs() < 1e-15));
        let q = Jet::constant(3.0, 10).div(&(&Jet::constant(1.0, 10) - &x));
        assert!(q.coeffs().iter().all(|&c| (c - 3.0).abs() < 1e-14));
    }

    #[test]
    fn product_rule() {
        let x = Jet::variable(2.0, 3);
        let p = &(&x * &x) * &x;
        assert_eq!(p.derivatives(), vec![8.0, 12.0, 12.0, 6.0]);
        assert_eq!(x.add_scalar(1.0).value(), 3.0);
        assert_eq!((-&x).value(), -2.0);
    }
}
