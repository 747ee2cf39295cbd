//! Sampled moment data on a plane grid times uniform radii.
//!
//! A [`MomentGrid`] stores `Mf(p, q, u)` and `a01(p, q, u)` at centres
//! `(p0 + ip·h, q0 + iq·h)` and radii `u0 + iu·du`. Planar Laplacians come
//! from the 5-point stencil iterated `i` times, which reaches `i` cells in
//! every direction.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward::{sample_restriction, SphereCenter};
use crate::io_util::{fmt_f64, write_atomic};
use crate::phantom::ScalarField3D;
use crate::quadrature::SphericalQuadratureRule;

pub const GRID_CSV_HEADER: &str = "p,q,u,Mf,a01";

/// Which moment a query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentField {
    Mf,
    A01,
}

/// Grid geometry: plane lattice and uniform radial samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub p0: f64,
    pub q0: f64,
    pub h: f64,
    pub np: usize,
    pub nq: usize,
    pub u0: f64,
    pub du: f64,
    pub nu: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.p0, self.q0, self.h, self.u0, self.du].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidArgument("grid parameters must be finite".into()));
        }
        if self.h <= 0.0 || self.du <= 0.0 || self.u0 <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "grid needs h > 0, du > 0, u0 > 0 (got h = {}, du = {}, u0 = {})",
                self.h, self.du, self.u0
            )));
        }
        if self.np == 0 || self.nq == 0 || self.nu == 0 {
            return Err(Error::InvalidArgument(format!(
                "grid extents must be positive (got {} x {} x {})",
                self.np, self.nq, self.nu
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.np * self.nq * self.nu
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn p(&self, ip: usize) -> f64 {
        self.p0 + ip as f64 * self.h
    }

    pub fn q(&self, iq: usize) -> f64 {
        self.q0 + iq as f64 * self.h
    }

    pub fn u(&self, iu: usize) -> f64 {
        self.u0 + iu as f64 * self.du
    }

    pub fn radial_nodes(&self) -> Vec<f64> {
        (0..self.nu).map(|j| self.u(j)).collect()
    }

    pub fn index(&self, ip: usize, iq: usize, iu: usize) -> usize {
        (ip * self.nq + iq) * self.nu + iu
    }
}

/// Sampled `Mf` and `a01`, indexed `(ip, iq, iu)` with `iu` fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentGrid {
    spec: GridSpec,
    mf: Vec<f64>,
    a01: Vec<f64>,
}

impl MomentGrid {
    pub fn from_values(spec: GridSpec, mf: Vec<f64>, a01: Vec<f64>) -> Result<Self> {
        spec.validate()?;
        if mf.len() != spec.len() || a01.len() != spec.len() {
            return Err(Error::LengthMismatch(format!(
                "grid {}x{}x{} needs {} values, got Mf {} and a01 {}",
                spec.np,
                spec.nq,
                spec.nu,
                spec.len(),
                mf.len(),
                a01.len()
            )));
        }
        Ok(MomentGrid { spec, mf, a01 })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self, field: MomentField) -> &[f64] {
        match field {
            MomentField::Mf => &self.mf,
            MomentField::A01 => &self.a01,
        }
    }

    pub fn into_values(self) -> (GridSpec, Vec<f64>, Vec<f64>) {
        (self.spec, self.mf, self.a01)
    }

    pub fn get(&self, field: MomentField, ip: usize, iq: usize, iu: usize) -> f64 {
        self.values(field)[self.spec.index(ip, iq, iu)]
    }

    fn check_margin(&self, i: usize, ip: isize, iq: isize) -> Result<()> {
        let (np, nq) = (self.spec.np as isize, self.spec.nq as isize);
        let r = i as isize;
        if ip - r < 0 || iq - r < 0 || ip + r >= np || iq + r >= nq {
            return Err(Error::InsufficientMargin {
                order: i,
                ip,
                iq,
                np: self.spec.np,
                nq: self.spec.nq,
            });
        }
        Ok(())
    }

    /// `Δ^i` of one field at `(ip, iq, iu)` by the iterated 5-point stencil.
    pub fn laplacian_power(&self, field: MomentField, i: usize, ip: isize, iq: isize, iu: usize) -> Result<f64> {
        if iu >= self.spec.nu {
            return Err(Error::InvalidArgument(format!(
                "radial index {iu} out of range 0..{}",
                self.spec.nu
            )));
        }
        self.check_margin(i, ip, iq)?;
        let kernel = StencilKernel::new(i);
        let vals = self.values(field);
        Ok(kernel.apply(self.spec.h, |a, b| {
            vals[self.spec.index((ip + a) as usize, (iq + b) as usize, iu)]
        }))
    }

    /// `Δ^i` of one field at `(ip, iq)` for every radial sample.
    pub fn laplacian_profile(&self, field: MomentField, i: usize, ip: isize, iq: isize) -> Result<Vec<f64>> {
        self.check_margin(i, ip, iq)?;
        let kernel = StencilKernel::new(i);
        let vals = self.values(field);
        Ok((0..self.spec.nu)
            .map(|iu| {
                kernel.apply(self.spec.h, |a, b| {
                    vals[self.spec.index((ip + a) as usize, (iq + b) as usize, iu)]
                })
            })
            .collect())
    }

    pub fn to_csv(&self) -> String {
        let s = &self.spec;
        let mut out = String::with_capacity(96 * s.len() + 128);
        let _ = writeln!(
            out,
            "# h={} Np={} Nq={} u0={} du={} Nu={}",
            fmt_f64(s.h),
            s.np,
            s.nq,
            fmt_f64(s.u0),
            fmt_f64(s.du),
            s.nu
        );
        let _ = writeln!(out, "# p0={} q0={}", fmt_f64(s.p0), fmt_f64(s.q0));
        out.push_str(GRID_CSV_HEADER);
        out.push('\n');
        for ip in 0..s.np {
            for iq in 0..s.nq {
                for iu in 0..s.nu {
                    let k = s.index(ip, iq, iu);
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        fmt_f64(s.p(ip)),
                        fmt_f64(s.q(iq)),
                        fmt_f64(s.u(iu)),
                        fmt_f64(self.mf[k]),
                        fmt_f64(self.a01[k])
                    );
                }
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut keys: Vec<(String, String)> = Vec::new();
        let mut mf = Vec::new();
        let mut a01 = Vec::new();
        let mut seen_header = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                for tok in rest.split_whitespace() {
                    if let Some((k, v)) = tok.split_once('=') {
                        keys.push((k.to_string(), v.to_string()));
                    }
                }
                continue;
            }
            if !seen_header {
                if line != GRID_CSV_HEADER {
                    return Err(Error::Parse(format!(
                        "line {}: expected header `{GRID_CSV_HEADER}`, got `{line}`",
                        lineno + 1
                    )));
                }
                seen_header = true;
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(Error::Parse(format!("line {}: expected 5 columns", lineno + 1)));
            }
            let num = |s: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: `{s}`: {e}", lineno + 1)))
            };
            mf.push(num(cols[3])?);
            a01.push(num(cols[4])?);
        }
        if !seen_header {
            return Err(Error::Parse("missing header line".into()));
        }
        let get = |k: &str| -> Result<&str> {
            keys.iter()
                .find(|(kk, _)| kk == k)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::Parse(format!("missing `{k}=` in header comments")))
        };
        let f = |k: &str| -> Result<f64> {
            get(k)?.parse::<f64>().map_err(|e| Error::Parse(format!("{k}: {e}")))
        };
        let n = |k: &str| -> Result<usize> {
            get(k)?.parse::<usize>().map_err(|e| Error::Parse(format!("{k}: {e}")))
        };
        let spec = GridSpec {
            p0: f("p0")?,
            q0: f("q0")?,
            h: f("h")?,
            np: n("Np")?,
            nq: n("Nq")?,
            u0: f("u0")?,
            du: f("du")?,
            nu: n("Nu")?,
        };
        MomentGrid::from_values(spec, mf, a01)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }

    pub fn read(path: &Path) -> Result<Self> {
        MomentGrid::from_csv(&std::fs::read_to_string(path)?)
    }
}

/// The 5-point Laplacian convolved with itself `i` times, as integer
/// weights on a `(2i+1)²` patch (divide by `h^{2i}`).
#[derive(Clone, Debug, PartialEq)]
pub struct StencilKernel {
    order: usize,
    weights: Vec<f64>,
}

impl StencilKernel {
    pub fn new(order: usize) -> Self {
        let mut w = vec![1.0];
        let mut r = 0usize;
        for _ in 0..order {
            let (side, nside) = (2 * r + 1, 2 * r + 3);
            let mut next = vec![0.0; nside * nside];
            for a in 0..side {
                for b in 0..side {
                    let c = w[a * side + b];
                    if c == 0.0 {
                        continue;
                    }
                    let (a1, b1) = (a + 1, b + 1);
                    next[a1 * nside + b1] -= 4.0 * c;
                    next[(a1 - 1) * nside + b1] += c;
                    next[(a1 + 1) * nside + b1] += c;
                    next[a1 * nside + b1 - 1] += c;
                    next[a1 * nside + b1 + 1] += c;
                }
            }
            w = next;
            r += 1;
        }
        StencilKernel { order, weights: w }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `Σ w_ab v(a, b) / h^{2i}` with offsets `a, b ∈ [-i, i]`.
    pub fn apply(&self, h: f64, v: impl Fn(isize, isize) -> f64) -> f64 {
        let r = self.order as isize;
        let side = 2 * self.order + 1;
        let mut acc = 0.0;
        for a in -r..=r {
            for b in -r..=r {
                let w = self.weights[(a + r) as usize * side + (b + r) as usize];
                if w != 0.0 {
                    acc += w * v(a, b);
                }
            }
        }
        acc / h.powi(2 * self.order as i32)
    }
}

/// Fills a grid from a phantom. With `prefer_analytic`, exact moments are
/// used when the phantom has them; otherwise each sphere is integrated with
/// `rule`. Centres are processed in parallel.
pub fn sample_moments<F: ScalarField3D + ?Sized>(
    f: &F,
    spec: GridSpec,
    rule: &SphericalQuadratureRule,
    prefer_analytic: bool,
) -> Result<MomentGrid> {
    spec.validate()?;
    let centres: Vec<(usize, usize)> = (0..spec.np)
        .flat_map(|ip| (0..spec.nq).map(move |iq| (ip, iq)))
        .collect();
    let blocks: Vec<Vec<(f64, f64)>> = centres
        .par_iter()
        .map(|&(ip, iq)| {
            let (p, q) = (spec.p(ip), spec.q(iq));
            (0..spec.nu)
                .map(|iu| {
                    let u = spec.u(iu);
                    if prefer_analytic {
                        if let Some(v) = f.analytic_moments(p, q, u) {
                            return Ok(v);
                        }
                    }
                    let s = sample_restriction(f, SphereCenter::new(p, q, u)?, rule)?;
                    Ok((s.mean(), s.first_cosine()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mf = Vec::with_capacity(spec.len());
    let mut a01 = Vec::with_capacity(spec.len());
    for (m, a) in blocks.into_iter().flatten() {
        mf.push(m);
        a01.push(a);
    }
    MomentGrid::from_values(spec, mf, a01)
}

/// `Σ w_j v_j`.
pub fn radial_integral(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.len() != weights.len() {
        return Err(Error::LengthMismatch(format!(
            "{} radial values vs {} weights",
            values.len(),
            weights.len()
        )));
    }
    Ok(values.iter().zip(weights).map(|(v, w)| v * w).sum())
}
