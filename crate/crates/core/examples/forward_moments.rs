//! Forward data for a few spheres centred on `z = 0`: the spherical mean, the
//! first cosine moment and a higher harmonic coefficient, by quadrature and
//! (where available) in closed form.

use planar_srt::forward::{harmonic_coefficient, two_data_transform, HarmonicKind};
use planar_srt::phantom::{anisotropic_gaussian, rho2_z3, DEFAULT_GAUSS};
use planar_srt::{Result, ScalarField3D, SphereCenter, SphericalQuadratureRule};

pub struct MomentRow {
    pub phantom: String,
    pub centre: [f64; 3],
    /// `(Mf, a01)` by quadrature.
    pub quadrature: (f64, f64),
    /// `(Mf, a01)` in closed form, when the phantom provides it.
    pub analytic: Option<(f64, f64)>,
    /// `a_{1,3}` of the restriction.
    pub a13: f64,
}

pub fn run_example() -> Result<Vec<MomentRow>> {
    let rule = SphericalQuadratureRule::new(32, 64)?;
    let g = DEFAULT_GAUSS;
    let fields: Vec<Box<dyn ScalarField3D>> = vec![
        Box::new(rho2_z3()),
        Box::new(anisotropic_gaussian([g[0], g[1], g[2]], [g[3], g[4], g[5]])),
    ];
    let mut rows = Vec::new();
    for f in &fields {
        for [p, q, t] in [[0.0, 0.0, 1.0], [1.0, 3.0, 1.0], [0.5, -0.2, 0.7]] {
            let c = SphereCenter::new(p, q, t)?;
            let two = two_data_transform(f.as_ref(), c, &rule)?;
            rows.push(MomentRow {
                phantom: f.descriptor(),
                centre: [p, q, t],
                quadrature: (two.re, 3.0 * two.im),
                analytic: f.analytic_moments(p, q, t),
                a13: harmonic_coefficient(f.as_ref(), c, 3, 1, HarmonicKind::A, &rule)?,
            });
        }
    }
    Ok(rows)
}

fn main() -> Result<()> {
    println!("{:<34} {:>16} {:>14} {:>14} {:>14}", "phantom", "(p, q, t)", "Mf", "a01", "a13");
    for r in run_example()? {
        let [p, q, t] = r.centre;
        println!(
            "{:<34} {:>16} {:>14.8} {:>14.8} {:>14.8}",
            r.phantom,
            format!("({p}, {q}, {t})"),
            r.quadrature.0,
            r.quadrature.1,
            r.a13
        );
        if let Some((m, a)) = r.analytic {
            println!("{:<34} {:>16} {:>14.8} {:>14.8}", "  closed form", "", m, a);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_matches_closed_form() {
        let rows = run_example().unwrap();
        let mut checked = 0;
        for r in &rows {
            if let Some((m, a)) = r.analytic {
                assert!((r.quadrature.0 - m).abs() < 1e-12 && (r.quadrature.1 - a).abs() < 1e-12);
                checked += 1;
            }
        }
        assert_eq!(checked, 3);
        // f = (x² + y²) z³ has zero mean over every plane-centred sphere.
        assert!(rows[0].quadrature.0.abs() < 1e-13);
    }
}
