use planar_srt::forward::{
    first_cosine_coefficient, harmonic_coefficient, spherical_mean, two_data_transform, HarmonicKind,
};
use planar_srt::phantom::{anisotropic_gaussian, PolynomialField, Poly3};
use planar_srt::{SphereCenter, SphericalQuadratureRule};
use proptest::prelude::*;

/// Polynomial of total degree ≤ 5 keeping only monomials whose `z` power has
/// the given parity.
fn parity_poly(coeffs: &[f64], odd: bool) -> PolynomialField {
    let mut p = Poly3::zero();
    let mut k = 0;
    for a in 0..=5u32 {
        for b in 0..=5 - a {
            for c in 0..=5 - a - b {
                if (c % 2 == 1) == odd {
                    p.add_term((a, b, c), coeffs[k % coeffs.len()]);
                }
                k += 1;
            }
        }
    }
    PolynomialField::new("parity", p)
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 56)
}

fn centre() -> impl Strategy<Value = (f64, f64, f64)> {
    (-2.0f64..2.0, -2.0f64..2.0, 0.1f64..2.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn odd_fields_have_zero_mean(c in coeffs(), (p, q, t) in centre()) {
        let f = parity_poly(&c, true);
        let rule = SphericalQuadratureRule::default();
        let m = spherical_mean(&f, SphereCenter::new(p, q, t).unwrap(), &rule).unwrap();
        let scale = 1.0 + (p.abs() + q.abs() + t).powi(5);
        prop_assert!(m.abs() <= 1e-14 * scale, "mean {m}");
    }

    #[test]
    fn even_fields_have_zero_first_cosine(c in coeffs(), (p, q, t) in centre()) {
        let f = parity_poly(&c, false);
        let rule = SphericalQuadratureRule::default();
        let a = first_cosine_coefficient(&f, SphereCenter::new(p, q, t).unwrap(), &rule).unwrap();
        let scale = 1.0 + (p.abs() + q.abs() + t).powi(5);
        prop_assert!(a.abs() <= 1e-14 * scale, "a01 {a}");
    }

    #[test]
    fn two_data_splits_into_mean_and_cosine(c in coeffs(), (p, q, t) in centre()) {
        let f = parity_poly(&c, true);
        let rule = SphericalQuadratureRule::new(8, 16).unwrap();
        let s = SphereCenter::new(p, q, t).unwrap();
        let two = two_data_transform(&f, s, &rule).unwrap();
        prop_assert_eq!(two.re, spherical_mean(&f, s, &rule).unwrap());
        prop_assert_eq!(two.im, first_cosine_coefficient(&f, s, &rule).unwrap() / 3.0);
    }

    #[test]
    fn zonal_coefficients_match_closed_form(
        c in coeffs(), (p, q, t) in centre(), n in 0u32..=5, odd in any::<bool>()
    ) {
        let f = parity_poly(&c, odd);
        // Degree-5 restrictions times P_n (n ≤ 5) have degree ≤ 10.
        let rule = SphericalQuadratureRule::new(6, 12).unwrap();
        let got = harmonic_coefficient(&f, SphereCenter::new(p, q, t).unwrap(), n as usize, 0, HarmonicKind::A, &rule).unwrap();
        let want = f.harmonic_a0n(n).eval(p, q, t);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{got} vs {want}");
    }
}

#[test]
fn higher_coefficients_vanish_with_radius() {
    let f = anisotropic_gaussian([0.2, -0.1, 0.3], [0.6, 0.8, 0.5]);
    let rule = SphericalQuadratureRule::default();
    for t in [1e-3, 5e-4] {
        let c = SphereCenter::new(0.1, 0.2, t).unwrap();
        for n in 1..=4 {
            for m in 0..=n {
                let a = harmonic_coefficient(&f, c, n, m, HarmonicKind::A, &rule).unwrap();
                assert!(a.abs() <= 10.0 * t, "a_{m}{n}({t}) = {a}");
                if m > 0 {
                    let b = harmonic_coefficient(&f, c, n, m, HarmonicKind::B, &rule).unwrap();
                    assert!(b.abs() <= 10.0 * t, "b_{m}{n}({t}) = {b}");
                }
            }
        }
    }
}
