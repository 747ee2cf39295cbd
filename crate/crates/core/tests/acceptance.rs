//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances are fixed here and never relaxed.

use std::time::{Duration, Instant};

use planar_srt::coeff_tables::{parse_rational, polynomial_set, Rational};
use planar_srt::moment_data::{sample_moments, GridSpec};
use planar_srt::phantom::{bump, random_polynomial, rho2_z3, z_squared};
use planar_srt::reconstructor::{mirror_even_reconstruct, reconstruct_point, reconstruct_slice, SlicePlane, SliceSpec};
use planar_srt::verifier::{
    check_normal_derivative, run_on_catalog, verification_catalog, CheckKind, ResidualReport, VerifyConfig,
};
use planar_srt::{build_tables, ReconstructionRequest, ScalarField3D, SphericalQuadratureRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const REPRESENTATION_TOL: f64 = 1e-8;
const SENSITIVITY_MIN: f64 = 1e-3;
const FD_TOL: f64 = 1e-5;
const FD_STEP: f64 = 1e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn dense(terms: &[(usize, &str)], len: usize) -> Vec<Rational> {
    let mut v = vec![rat("0"); len];
    for &(p, c) in terms {
        v[p] = rat(c);
    }
    v
}

fn coefficient_anchor() -> Outcome {
    let start = Instant::now();
    let table = build_tables(2);
    let set = polynomial_set(&table, 2).unwrap();
    let seeds = table.c(2, 0, 1) == rat("-15") && table.c(2, 0, 2) == rat("0") && table.s(1, 0, 1) == rat("3");
    let c50 = set.odd(0) == dense(&[(3, "105/2"), (5, "-231/2")], set.odd(0).len()).as_slice();
    let c52 = set.odd(1) == dense(&[(3, "375/16"), (5, "219/16"), (7, "-363/16")], set.odd(1).len()).as_slice();
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(1);
    let got52: Vec<String> = set
        .odd(1)
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != rat("0"))
        .map(|(p, c)| format!("{c} t^{p}"))
        .collect();
    outcome(
        seeds && c50 && c52 && fast,
        format!(
            "seeds {seeds}, C_5,0 {c50}, C_5,2 {c52} (computed {}), {:.1} ms",
            got52.join(" + "),
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn slice_reproduction() -> Outcome {
    let start = Instant::now();
    let f = rho2_z3();
    let slice = SliceSpec { plane: SlicePlane::Y(3.0), cols: (-3.0, 3.0), rows: (-2.0, 2.0), step: 0.1 };
    let req = ReconstructionRequest::from_field(&f, 2).with_min_abs_z(0.25);
    let result = reconstruct_slice(&req, &build_tables(2), &slice).unwrap();
    let err = result.max_abs_error(|x, y, z| (x * x + y * y) * z.powi(3));
    let elapsed = start.elapsed();
    let evaluated = result.values.iter().filter(|v| !v.is_nan()).count();
    outcome(
        err <= 1e-8 && elapsed < Duration::from_secs(10) && evaluated == 61 * 36,
        format!("max error {err:.3e} over {evaluated} points, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn polynomial_termination() -> Outcome {
    let table = build_tables(4);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for k in 0..20u64 {
        let f = random_polynomial(1000 + k, 5);
        for _ in 0..10 {
            let z = rng.gen_range(0.3..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let pt = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), z];
            let s = reconstruct_point(&ReconstructionRequest::from_field(&f, 4), &table, pt).unwrap().partial_sums;
            let scale = s[2].abs().max(1.0);
            worst = worst.max((s[3] - s[2]).abs() / scale).max((s[4] - s[2]).abs() / scale);
        }
    }
    outcome(worst <= 1e-8, format!("worst relative |S_3 - S_2|, |S_4 - S_2| = {worst:.3e} over 200 points"))
}

fn worst_by(reports: &[ResidualReport], pred: impl Fn(&ResidualReport) -> bool) -> (f64, usize, usize) {
    let rows: Vec<&ResidualReport> = reports.iter().filter(|r| pred(r)).collect();
    let worst = rows.iter().map(|r| r.rel).fold(0.0, f64::max);
    (worst, rows.len(), rows.iter().filter(|r| !r.pass).count())
}

fn representation(reports: &[ResidualReport]) -> Outcome {
    let (worst, rows, failed) = worst_by(reports, |r| r.identity.starts_with("representation"));
    let table = build_tables(2).with_scaled_c(4, 2, 2, &rat("1000001/1000000")).unwrap();
    let catalog: Vec<_> = verification_catalog(1, 3)
        .into_iter()
        .filter(|e| !e.field.descriptor().starts_with("bump"))
        .collect();
    let config = VerifyConfig {
        checks: vec![CheckKind::RepresentationEven, CheckKind::RepresentationOdd],
        ..VerifyConfig::default()
    };
    let perturbed = run_on_catalog(&config, &table, &catalog).unwrap();
    let detected = perturbed.iter().map(|r| r.rel).fold(0.0, f64::max);
    outcome(
        rows > 0 && failed == 0 && worst <= REPRESENTATION_TOL && detected >= SENSITIVITY_MIN,
        format!(
            "{rows} rows, worst rel {worst:.3e}, {failed} failed; c_2(4,2) x (1 + 1e-6) gives rel {detected:.3e}"
        ),
    )
}

fn normal_derivative(reports: &[ResidualReport]) -> Outcome {
    let (worst, rows, failed) = worst_by(reports, |r| r.identity == "normal_derivative");
    // Step-halving ratio of the worst absolute residual, for phantoms whose
    // residual is truncation dominated (not already at round-off).
    let mut ratios = Vec::new();
    for e in verification_catalog(1, 0) {
        let f = e.field.as_ref();
        let worst_abs = |h: f64| {
            planar_srt::verifier::lattice()
                .iter()
                .map(|&[p, q, t]| check_normal_derivative(f, p, q, t, h, &e.settings).unwrap()[0].abs)
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (worst_abs(FD_STEP), worst_abs(FD_STEP / 2.0));
        if coarse > 1e-10 {
            ratios.push((f.descriptor(), coarse / fine));
        }
    }
    let ratios_ok = !ratios.is_empty() && ratios.iter().all(|(_, r)| (3.0..=5.0).contains(r));
    let listed: Vec<String> = ratios.iter().map(|(n, r)| format!("{n} {r:.3}")).collect();
    outcome(
        rows > 0 && failed == 0 && worst <= FD_TOL && ratios_ok,
        format!("{rows} rows, worst rel {worst:.3e}, {failed} failed; halving ratios: {}", listed.join(", ")),
    )
}

fn consistency_odes(reports: &[ResidualReport]) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for id in ["ode_cos_p", "ode_sin_q", "ode_zonal", "ode_div"] {
        let (worst, rows, failed) = worst_by(reports, |r| r.identity == id);
        pass &= rows > 0 && failed == 0 && worst <= FD_TOL;
        parts.push(format!("{id} {worst:.2e} ({failed}/{rows} failed)"));
    }
    outcome(pass, parts.join(", "))
}

fn even_mirror() -> Outcome {
    let table = build_tables(8);
    let zsq = z_squared();
    let mut zsq_err = 0.0f64;
    for n in 1..=3 {
        let template = ReconstructionRequest::from_field(&zsq, n);
        for pt in [[0.0, 0.0, 0.5], [0.4, -0.7, 1.3], [-1.0, 1.0, 2.0]] {
            let r = mirror_even_reconstruct(&zsq, &template, &table, pt).unwrap();
            zsq_err = zsq_err.max((r.value - pt[2] * pt[2]).abs());
        }
    }
    let f = bump(0.0, 0.0, 1.0);
    let template = ReconstructionRequest::from_field(&zsq, 8)
        .with_radial_nodes(64)
        .with_sphere_rule(SphericalQuadratureRule::new(64, 128).unwrap());
    let r = mirror_even_reconstruct(&f, &template, &table, [0.0, 0.0, 1.0]).unwrap();
    let s = &r.partial_sums;
    let inc: Vec<f64> = (2..=8).map(|n| (s[n] - s[n - 1]).abs()).collect();
    let monotone = inc.windows(2).all(|w| w[1] < w[0]);
    let exact = f.evaluate(0.0, 0.0, 1.0);
    let rel = (s[8] - exact).abs() / exact.abs();
    outcome(
        zsq_err <= 1e-10 && monotone && rel <= 0.05,
        format!(
            "z^2 max error {zsq_err:.2e}; bump increments n=2..8 {} ({}), error at n=8 {:.3}%",
            if monotone { "decreasing" } else { "NOT decreasing" },
            inc.iter().map(|v| format!("{v:.2e}")).collect::<Vec<_>>().join(" "),
            100.0 * rel
        ),
    )
}

fn grid_slice_error(h: f64) -> f64 {
    let order = 2;
    let margin = (order + 2) as f64 * h;
    let slice = SliceSpec { plane: SlicePlane::Y(3.0), cols: (-3.0, 3.0), rows: (-2.0, 2.0), step: 0.1 };
    let spec = GridSpec {
        p0: -3.0 - margin,
        q0: 3.0 - margin,
        h,
        np: ((6.0 + 2.0 * margin) / h).round() as usize + 1,
        nq: (2.0 * margin / h).round() as usize + 1,
        u0: h,
        du: h,
        nu: (2.0 / h).round() as usize,
    };
    let grid = sample_moments(&rho2_z3(), spec, &SphericalQuadratureRule::default(), true).unwrap();
    let req = ReconstructionRequest::from_grid(&grid, order).with_min_abs_z(0.25);
    reconstruct_slice(&req, &build_tables(order), &slice)
        .unwrap()
        .max_abs_error(|x, y, z| (x * x + y * y) * z.powi(3))
}

fn grid_convergence() -> Outcome {
    let (coarse, fine) = (grid_slice_error(0.05), grid_slice_error(0.025));
    let ratio = coarse / fine;
    outcome(
        (3.0..=5.0).contains(&ratio),
        format!("error {coarse:.3e} at h = 0.05, {fine:.3e} at h = 0.025, ratio {ratio:.3}"),
    )
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "coefficient anchor", coefficient_anchor()),
        (2, "slice reproduction", slice_reproduction()),
        (3, "polynomial termination", polynomial_termination()),
    ];
    let lattice = run_on_catalog(
        &VerifyConfig { fd_step: FD_STEP, ..VerifyConfig::default() },
        &build_tables(2),
        &verification_catalog(1, 3),
    )
    .unwrap();
    results.push((4, "representation oracles", representation(&lattice)));
    results.push((5, "normal derivative", normal_derivative(&lattice)));
    results.push((6, "consistency relations", consistency_odes(&lattice)));
    results.push((7, "even mirror", even_mirror()));
    results.push((8, "grid convergence", grid_convergence()));

    let mut failed = 0;
    for (k, name, o) in &results {
        println!("criterion {k} {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed in {:.0} s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
