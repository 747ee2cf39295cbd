//! Legendre and associated Legendre functions.

/// `P_n(x)` by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `P_0(x) ..= P_n(x)` written into `out` (length `n + 1`).
pub fn legendre_all(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = x;
    }
    for k in 1..out.len().saturating_sub(1) {
        out[k + 1] = ((2 * k + 1) as f64 * x * out[k] - k as f64 * out[k - 1]) / (k + 1) as f64;
    }
}

/// Associated Legendre function `P_n^m(x)` with the Condon–Shortley phase,
/// so `P_1^1(x) = -sqrt(1 - x²)`.
///
/// Upward recurrence in degree at fixed order, seeded with
/// `P_m^m = (-1)^m (2m-1)!! (1-x²)^{m/2}`.
pub fn assoc_legendre(n: usize, m: usize, x: f64) -> f64 {
    if m > n {
        return 0.0;
    }
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 0..m {
        pmm *= -((2 * k + 1) as f64) * s;
    }
    if n == m {
        return pmm;
    }
    let mut p0 = pmm;
    let mut p1 = x * (2 * m + 1) as f64 * pmm;
    for l in m + 1..n {
        let p2 = ((2 * l + 1) as f64 * x * p1 - (l + m) as f64 * p0) / (l + 1 - m) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// The sign-adjusted `P_{nm} = (-1)^m P_n^m` used in the harmonic expansion of
/// restrictions; `P_{11}(cos θ) = sin θ`.
pub fn expansion_legendre(n: usize, m: usize, x: f64) -> f64 {
    let v = assoc_legendre(n, m, x);
    if m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `(n - m)! / (n + m)!` as a float.
pub fn factorial_ratio(n: usize, m: usize) -> f64 {
    ((n - m + 1)..=(n + m)).fold(1.0, |acc, k| acc / k as f64)
}
