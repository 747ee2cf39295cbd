//! Sampled-grid reconstruction of `(x² + y²) z³` on the `y = 3` slice at two
//! grid spacings. The stencil and radial rules are second order, so halving
//! `h` should cut the error by about four.

use planar_srt::moment_data::{sample_moments, GridSpec};
use planar_srt::phantom::rho2_z3;
use planar_srt::reconstructor::{reconstruct_slice, SlicePlane, SliceSpec};
use planar_srt::{build_tables, ReconstructionRequest, Result, SphericalQuadratureRule};

const ORDER: usize = 2;

pub struct Convergence {
    pub coarse: (f64, f64),
    pub fine: (f64, f64),
}

impl Convergence {
    pub fn ratio(&self) -> f64 {
        self.coarse.1 / self.fine.1
    }
}

fn slice() -> SliceSpec {
    SliceSpec { plane: SlicePlane::Y(3.0), cols: (-3.0, 3.0), rows: (-2.0, 2.0), step: 0.1 }
}

/// Max slice error for moments sampled with spacing `h` (and `du = h`).
pub fn slice_error(h: f64) -> Result<f64> {
    let f = rho2_z3();
    let margin = (ORDER + 2) as f64 * h;
    let s = slice();
    let np = ((s.cols.1 - s.cols.0 + 2.0 * margin) / h).round() as usize + 1;
    let nq = (2.0 * margin / h).round() as usize + 1;
    let nu = (s.rows.1 / h).round() as usize;
    let spec = GridSpec {
        p0: s.cols.0 - margin,
        q0: 3.0 - margin,
        h,
        np,
        nq,
        u0: h,
        du: h,
        nu,
    };
    let grid = sample_moments(&f, spec, &SphericalQuadratureRule::default(), true)?;
    let req = ReconstructionRequest::from_grid(&grid, ORDER).with_min_abs_z(0.25);
    let out = reconstruct_slice(&req, &build_tables(ORDER), &s)?;
    Ok(out.max_abs_error(|x, y, z| (x * x + y * y) * z.powi(3)))
}

pub fn run_example() -> Result<Convergence> {
    let coarse = (0.05, slice_error(0.05)?);
    let fine = (0.025, slice_error(0.025)?);
    Ok(Convergence { coarse, fine })
}

fn main() -> Result<()> {
    let c = run_example()?;
    for (h, e) in [c.coarse, c.fine] {
        println!("h = {h:<6} max |f_rec - f| = {e:.4e}");
    }
    println!("error ratio = {:.3}", c.ratio());
    Ok(())
}
