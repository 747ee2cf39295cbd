//! A bump supported in `z > 0` reconstructed from its spherical means alone:
//! the field is mirrored to an even one, whose first cosine moment vanishes.
//! The increments `|S_n − S_{n−1}|` shrink steadily at the bump centre.

use planar_srt::phantom::{bump, z_squared};
use planar_srt::reconstructor::mirror_even_reconstruct;
use planar_srt::{build_tables, ReconstructionRequest, Result, ScalarField3D, SphericalQuadratureRule};

pub const MAX_ORDER: usize = 8;

pub struct MirrorRun {
    pub exact: f64,
    /// `S_0..S_8` at the bump centre.
    pub partial_sums: Vec<f64>,
    /// `z²` reconstructed at `n = 1` from its means, with its exact value.
    pub z_squared: (f64, f64),
}

impl MirrorRun {
    pub fn increments(&self) -> Vec<f64> {
        self.partial_sums.windows(2).map(|w| (w[1] - w[0]).abs()).collect()
    }

    pub fn relative_error(&self) -> f64 {
        (self.partial_sums[MAX_ORDER] - self.exact).abs() / self.exact.abs()
    }
}

pub fn run_example() -> Result<MirrorRun> {
    let table = build_tables(MAX_ORDER);
    let f = bump(0.0, 0.0, 1.0);
    let centre = [0.0, 0.0, 1.0];
    let placeholder = z_squared();
    let template = ReconstructionRequest::from_field(&placeholder, MAX_ORDER)
        .with_radial_nodes(64)
        .with_sphere_rule(SphericalQuadratureRule::new(64, 128)?);
    let r = mirror_even_reconstruct(&f, &template, &table, centre)?;

    let zsq = z_squared();
    let low = ReconstructionRequest::from_field(&placeholder, 1);
    let point = [0.4, -0.7, 1.3];
    let s = mirror_even_reconstruct(&zsq, &low, &table, point)?;
    Ok(MirrorRun {
        exact: f.evaluate(centre[0], centre[1], centre[2]),
        partial_sums: r.partial_sums,
        z_squared: (s.value, zsq.evaluate(point[0], point[1], point[2])),
    })
}

fn main() -> Result<()> {
    let run = run_example()?;
    println!("bump centre value {:.6}", run.exact);
    let inc = run.increments();
    for (n, s) in run.partial_sums.iter().enumerate() {
        let d = if n == 0 { String::new() } else { format!("  |S_n - S_n-1| = {:.3e}", inc[n - 1]) };
        println!("S_{n} = {s:+.6}{d}");
    }
    println!("relative error at n = {MAX_ORDER}: {:.3}%", 100.0 * run.relative_error());
    println!("z^2 at n = 1: {:.12} (exact {:.12})", run.z_squared.0, run.z_squared.1);
    Ok(())
}
