//! Exact recurrence coefficients `c_m`, `s_m` and the filter polynomials
//! `C_{2n,2i}`, `C_{2n+1,2i}` assembled from them.
//!
//! Two independent chains are built. The odd chain produces `c_m(2k+1, 2i)`
//! together with the auxiliary `s_m(2k, 2(i-1))`; it represents the odd
//! harmonic coefficients `a_{0(2k+1)}` through `a01`. The even chain produces
//! `c_m(2k, 2i)` and `s_m(2k+1, 2(i-1))`; it represents `a_{0(2k)}` through the
//! spherical mean. All arithmetic is exact, so tables are bitwise
//! reproducible and comparisons against published rationals are exact.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats a rational as `numerator/denominator`, including `/1` for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `numerator/denominator` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Triangular storage: `rows[k - k_min][j][m - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Triangle {
    k_min: usize,
    rows: Vec<Vec<Vec<Rational>>>,
}

impl Triangle {
    fn new(k_min: usize) -> Self {
        Triangle { k_min, rows: Vec::new() }
    }

    fn get(&self, k: i64, j: usize, m: usize) -> Option<&Rational> {
        if k < self.k_min as i64 || m == 0 {
            return None;
        }
        self.rows
            .get(k as usize - self.k_min)?
            .get(j)?
            .get(m - 1)
    }

    fn value(&self, k: i64, j: usize, m: usize) -> Rational {
        self.get(k, j, m).cloned().unwrap_or_else(Rational::zero)
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.rows.iter().enumerate().flat_map(move |(dk, row)| {
            row.iter().enumerate().flat_map(move |(j, ms)| {
                ms.iter()
                    .enumerate()
                    .map(move |(mi, v)| (dk + self.k_min, j, mi + 1, v))
            })
        })
    }
}

/// Which of the four coefficient families an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `c_m(2k, 2i)`, `k ≥ 1`, `0 ≤ i ≤ k`, `1 ≤ m ≤ k+i`.
    CEven,
    /// `c_m(2k+1, 2i)`, `k ≥ 1`, `0 ≤ i ≤ k`, `1 ≤ m ≤ k+i`.
    COdd,
    /// `s_m(2k, 2j)`, `k ≥ 1`, `0 ≤ j ≤ k-1`, `1 ≤ m ≤ k+j`.
    SEven,
    /// `s_m(2k+1, 2j)`, `k ≥ 0`, `0 ≤ j ≤ k`, `1 ≤ m ≤ k+j+1`.
    SOdd,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::CEven => "even",
            Family::COdd => "odd",
            Family::SEven => "s_even",
            Family::SOdd => "s_odd",
        }
    }
}

/// Immutable table of all recurrence coefficients up to a partial-sum order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    order_n: usize,
    c_even: Triangle,
    c_odd: Triangle,
    s_even: Triangle,
    s_odd: Triangle,
}

impl CoefficientTable {
    /// Largest partial-sum order `n` the table supports.
    pub fn order_n(&self) -> usize {
        self.order_n
    }

    fn family(&self, family: Family) -> &Triangle {
        match family {
            Family::CEven => &self.c_even,
            Family::COdd => &self.c_odd,
            Family::SEven => &self.s_even,
            Family::SOdd => &self.s_odd,
        }
    }

    /// `c_m(degree, two_i)`; exactly zero outside the stored ranges.
    pub fn c(&self, degree: usize, two_i: usize, m: usize) -> Rational {
        if two_i % 2 == 1 {
            return Rational::zero();
        }
        let k = (degree / 2) as i64;
        if degree % 2 == 0 {
            self.c_even.value(k, two_i / 2, m)
        } else {
            self.c_odd.value(k, two_i / 2, m)
        }
    }

    /// `s_m(degree, two_j)`; exactly zero outside the stored ranges.
    pub fn s(&self, degree: usize, two_j: usize, m: usize) -> Rational {
        if two_j % 2 == 1 {
            return Rational::zero();
        }
        let k = (degree / 2) as i64;
        if degree % 2 == 0 {
            self.s_even.value(k, two_j / 2, m)
        } else {
            self.s_odd.value(k, two_j / 2, m)
        }
    }

    /// Every stored entry as `(family, k, two_i, m, value)` in table order.
    pub fn entries(&self) -> impl Iterator<Item = (Family, usize, usize, usize, &Rational)> {
        [Family::CEven, Family::COdd, Family::SEven, Family::SOdd]
            .into_iter()
            .flat_map(move |fam| {
                self.family(fam)
                    .entries()
                    .map(move |(k, j, m, v)| (fam, k, 2 * j, m, v))
            })
    }

    /// Copy of the table with one `c` entry multiplied by `factor`.
    ///
    /// Used to demonstrate that the representation checks detect coefficient
    /// errors. Returns an error when the entry is not stored.
    pub fn with_scaled_c(
        &self,
        degree: usize,
        two_i: usize,
        m: usize,
        factor: &Rational,
    ) -> Result<CoefficientTable> {
        let mut out = self.clone();
        let k = degree / 2;
        let tri = if degree % 2 == 0 {
            &mut out.c_even
        } else {
            &mut out.c_odd
        };
        let missing = || {
            Error::InvalidArgument(format!(
                "c_{m}({degree},{two_i}) is not a stored coefficient"
            ))
        };
        if two_i % 2 == 1 || m == 0 || k < tri.k_min {
            return Err(missing());
        }
        let slot = tri
            .rows
            .get_mut(k - tri.k_min)
            .and_then(|row| row.get_mut(two_i / 2))
            .and_then(|ms| ms.get_mut(m - 1))
            .ok_or_else(missing)?;
        *slot = &*slot * factor;
        Ok(out)
    }

    /// CSV `parity,k,two_i,m,value` with exact `num/den` values.
    ///
    /// `parity` is `even`/`odd` for `c_m(2k, 2i)`/`c_m(2k+1, 2i)` and
    /// `s_even`/`s_odd` for the auxiliary `s_m(2k, 2i)`/`s_m(2k+1, 2i)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("parity,k,two_i,m,value\n");
        for (fam, k, two_i, m, v) in self.entries() {
            let _ = writeln!(out, "{},{k},{two_i},{m},{}", fam.label(), format_rational(v));
        }
        out
    }
}

/// Runs the odd and even recurrences up to partial-sum order `order_n`.
///
/// Empty sums (upper limit below lower limit) are zero, and every lookup
/// outside the stored ranges is zero, so the recurrences evaluated at `k = 0`
/// reproduce the seeds `c_1(2,0) = -15`, `c_2(2,0) = 0` and `s_1(1,0) = 3`.
pub fn build_tables(order_n: usize) -> CoefficientTable {
    let mut t = CoefficientTable {
        order_n,
        c_even: Triangle::new(1),
        c_odd: Triangle::new(1),
        s_even: Triangle::new(1),
        s_odd: Triangle::new(0),
    };

    for k in 0..=order_n as i64 {
        if k >= 1 {
            let s_row = odd_chain_s(&t, k);
            t.s_even.rows.push(s_row);
            let c_row = odd_chain_c(&t, k);
            t.c_odd.rows.push(c_row);
        }
        let s_row = even_chain_s(&t, k);
        t.s_odd.rows.push(s_row);
        if k < order_n as i64 {
            let c_row = even_chain_c(&t, k);
            t.c_even.rows.push(c_row);
        }
    }
    t
}

/// `s_m(2k, 2(i-1))` for `1 ≤ i ≤ k` from `s(2k-2, ·)` and `c(2k-1, ·)`.
fn odd_chain_s(t: &CoefficientTable, k: i64) -> Vec<Vec<Rational>> {
    let pre = rat(4 * k + 1, 2 * k * (2 * k + 1));
    let carry = rat((2 * k - 1) * (2 * k - 2), 4 * k - 3);
    let w = rat((2 * k - 1) * (k - 1) * (4 * k - 1), 4 * k - 3);
    let s_prev = |j: usize, m: usize| t.s_even.value(k - 1, j, m);
    let c_prev = |j: usize, m: usize| t.c_odd.value(k - 1, j, m);
    // c_m(2k-1, 2j)/d - w s_m(2k-2, 2j)/d
    let bracket = |j: usize, m: usize, d: i64| (c_prev(j, m) - &w * s_prev(j, m)) / int(d);

    let mut rows = Vec::with_capacity(k as usize);
    for i in 1..=k {
        let j = (i - 1) as usize;
        let top = (k + i - 1) as usize;
        let mut ms = Vec::with_capacity(top);
        for m in 1..top {
            let d = k + i - m as i64 - 1;
            ms.push(&pre * (&carry * s_prev(j, m) + bracket(j, m, d)));
        }
        let sum: Rational = (1..top)
            .map(|m| bracket(j, m, k + i - m as i64 - 1))
            .fold(Rational::zero(), |a, b| a + b);
        let last = if i == 1 {
            &pre * (rat(8 * k - 2, 3) - sum)
        } else {
            -(&pre * sum)
        };
        ms.push(last);
        rows.push(ms);
    }
    rows
}

/// `c_m(2k+1, 2i)` for `0 ≤ i ≤ k` from `c(2k-1, ·)` and `s(2k, ·)`.
fn odd_chain_c(t: &CoefficientTable, k: i64) -> Vec<Vec<Rational>> {
    let lead = int(4 * k + 3);
    let c_prev = |i: usize, m: usize| t.c_odd.value(k - 1, i, m);
    let s_cur = |j: usize, m: usize| t.s_even.value(k, j, m);
    let damp = |i: usize, m: usize, d: i64| c_prev(i, m) * rat(4 * k + 1, (8 * k - 2) * d);

    let mut rows = Vec::with_capacity(k as usize + 1);

    // i = 0
    let mut ms = Vec::with_capacity(k as usize);
    for m in 1..k as usize {
        let d = k - m as i64;
        ms.push(-(&lead * (damp(0, m, d) - c_prev(0, m) / int(4 * k - 1))));
    }
    let sum: Rational = (1..k as usize)
        .map(|m| damp(0, m, k - m as i64))
        .fold(Rational::zero(), |a, b| a + b);
    ms.push(-(&lead * (rat(4 * k + 1, 3) - sum)));
    rows.push(ms);

    for i in 1..=k {
        let iu = i as usize;
        let top = (k + i) as usize;
        let s_term = |m: usize, d: i64| s_cur(iu - 1, m) / int(4 * d);
        let mut ms = Vec::with_capacity(top);
        for m in 1..top {
            let d = k + i - m as i64;
            ms.push(
                &lead * (c_prev(iu, m) / int(4 * k - 1) - s_term(m, d) - damp(iu, m, d)),
            );
        }
        let sum: Rational = (1..top)
            .map(|m| {
                let d = k + i - m as i64;
                damp(iu, m, d) + s_term(m, d)
            })
            .fold(Rational::zero(), |a, b| a + b);
        ms.push(&lead * sum);
        rows.push(ms);
    }
    rows
}

/// `s_m(2k+1, 2(i-1))` for `1 ≤ i ≤ k+1` from `s(2k-1, ·)` and `c(2k, ·)`.
fn even_chain_s(t: &CoefficientTable, k: i64) -> Vec<Vec<Rational>> {
    let pre = rat(4 * k + 3, (2 * k + 2) * (2 * k + 1));
    let carry = rat(2 * k * (2 * k - 1), 4 * k - 1);
    let w = rat(k * (2 * k - 1) * (4 * k + 1), 4 * k - 1);
    let s_prev = |j: usize, m: usize| t.s_odd.value(k - 1, j, m);
    let c_cur = |j: usize, m: usize| t.c_even.value(k, j, m);
    let bracket = |j: usize, m: usize, d: i64| (c_cur(j, m) - &w * s_prev(j, m)) / int(d);

    let mut rows = Vec::with_capacity(k as usize + 1);
    for i in 1..=k + 1 {
        let j = (i - 1) as usize;
        let top = (k + i) as usize;
        let mut ms = Vec::with_capacity(top);
        for m in 1..top {
            let d = k + i - m as i64;
            ms.push(&pre * (&carry * s_prev(j, m) + bracket(j, m, d)));
        }
        let sum: Rational = (1..top)
            .map(|m| bracket(j, m, k + i - m as i64))
            .fold(Rational::zero(), |a, b| a + b);
        let last = if i == 1 {
            &pre * (int(8 * k + 2) - sum)
        } else {
            -(&pre * sum)
        };
        ms.push(last);
        rows.push(ms);
    }
    rows
}

/// `c_m(2k+2, 2i)` for `0 ≤ i ≤ k+1` from `c(2k, ·)` and `s(2k+1, ·)`.
fn even_chain_c(t: &CoefficientTable, k: i64) -> Vec<Vec<Rational>> {
    let lead = int(4 * k + 5);
    let c_prev = |i: usize, m: usize| t.c_even.value(k, i, m);
    let s_cur = |j: usize, m: usize| t.s_odd.value(k, j, m);
    let damp = |i: usize, m: usize, d: i64| c_prev(i, m) * rat(4 * k + 3, (8 * k + 2) * d);

    let mut rows = Vec::with_capacity(k as usize + 2);

    // i = 0
    let mut ms = Vec::with_capacity(k as usize + 1);
    for m in 1..=k as usize {
        let d = k - m as i64 + 1;
        ms.push(&lead * (c_prev(0, m) / int(4 * k + 1) - damp(0, m, d)));
    }
    let sum: Rational = (1..=k as usize)
        .map(|m| damp(0, m, k - m as i64 + 1))
        .fold(Rational::zero(), |a, b| a + b);
    ms.push(&lead * (sum - int(4 * k + 3)));
    rows.push(ms);

    for i in 1..=k + 1 {
        let iu = i as usize;
        let top = (k + i + 1) as usize;
        let s_term = |m: usize, d: i64| s_cur(iu - 1, m) / int(4 * d);
        let mut ms = Vec::with_capacity(top);
        for m in 1..top {
            let d = k + i - m as i64 + 1;
            ms.push(&lead * (-damp(iu, m, d) - s_term(m, d) + c_prev(iu, m) / int(4 * k + 1)));
        }
        let sum: Rational = (1..top)
            .map(|m| {
                let d = k + i - m as i64 + 1;
                damp(iu, m, d) + s_term(m, d)
            })
            .fold(Rational::zero(), |a, b| a + b);
        ms.push(&lead * sum);
        rows.push(ms);
    }
    rows
}

/// Filter polynomials of one partial-sum order, as dense coefficient vectors
/// indexed by power of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSet {
    n: usize,
    even: Vec<Vec<Rational>>,
    odd: Vec<Vec<Rational>>,
}

impl PolynomialSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients of `C_{2n,2i}`; only even powers are nonzero.
    pub fn even(&self, i: usize) -> &[Rational] {
        &self.even[i]
    }

    /// Coefficients of `C_{2n+1,2i}`; only odd powers are nonzero.
    pub fn odd(&self, i: usize) -> &[Rational] {
        &self.odd[i]
    }

    pub fn to_f64(&self) -> FilterPolynomials {
        let conv = |v: &Vec<Vec<Rational>>| {
            v.iter()
                .map(|p| p.iter().map(rational_to_f64).collect())
                .collect()
        };
        FilterPolynomials {
            n: self.n,
            even: conv(&self.even),
            odd: conv(&self.odd),
        }
    }

    /// Rows `parity,n,two_i,m,value` for nonzero coefficients; `m` is the index
    /// of the power `t^{2m}` (even) or `t^{2m+1}` (odd).
    pub fn csv_rows(&self) -> Vec<String> {
        let mut rows = Vec::new();
        for (label, polys, offset) in [("even", &self.even, 0), ("odd", &self.odd, 1)] {
            for (i, poly) in polys.iter().enumerate() {
                for (power, v) in poly.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let m = (power - offset) / 2;
                    rows.push(format!(
                        "{label},{},{},{m},{}",
                        self.n,
                        2 * i,
                        format_rational(v)
                    ));
                }
            }
        }
        rows
    }
}

/// Header of the polynomial export.
pub const POLYNOMIAL_CSV_HEADER: &str = "parity,n,two_i,m,value";

/// Floating-point copy of a [`PolynomialSet`] for evaluation in inner loops.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterPolynomials {
    pub n: usize,
    pub even: Vec<Vec<f64>>,
    pub odd: Vec<Vec<f64>>,
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Sums the table into `C_{2n,2i}(t) = Σ_{k=i}^{n} Σ_m c_m(2k,2i) t^{2m}` and
/// `C_{2n+1,2i}(t) = Σ_{k=i}^{n} Σ_m c_m(2k+1,2i) t^{2m+1}` for `0 ≤ i ≤ n`.
pub fn polynomial_set(table: &CoefficientTable, n: usize) -> Result<PolynomialSet> {
    if n > table.order_n {
        return Err(Error::OrderExceedsTable {
            requested: n,
            available: table.order_n,
        });
    }
    let mut even = Vec::with_capacity(n + 1);
    let mut odd = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut pe = vec![Rational::zero(); 2 * n + 2 * i + 1];
        let mut po = vec![Rational::zero(); 2 * n + 2 * i + 2];
        for k in i.max(1)..=n {
            for m in 1..=k + i {
                pe[2 * m] += table.c(2 * k, 2 * i, m);
                po[2 * m + 1] += table.c(2 * k + 1, 2 * i, m);
            }
        }
        even.push(pe);
        odd.push(po);
    }
    Ok(PolynomialSet { n, even, odd })
}

/// Horner evaluation on `[0, 1]` after conversion to `f64`.
pub fn eval_polynomial(poly: &[Rational], t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "filter polynomials are defined on [0, 1], got t = {t}"
        )));
    }
    let coeffs: Vec<f64> = poly.iter().map(rational_to_f64).collect();
    Ok(horner(&coeffs, t))
}

#[inline]
pub(crate) fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// Index of the highest nonzero coefficient, if any.
pub fn degree(poly: &[Rational]) -> Option<usize> {
    poly.iter().rposition(|c| !c.is_zero())
}

impl Default for CoefficientTable {
    fn default() -> Self {
        build_tables(0)
    }
}
