//! Brute-force residuals of the identities behind the inversion, on the
//! polynomial and Gaussian phantoms. Scaling a single table entry by
//! `1 + 1e-6` makes the representation checks fail loudly.

use planar_srt::coeff_tables::parse_rational;
use planar_srt::verifier::{failures, run_on_catalog, verification_catalog, CheckKind, ResidualReport, VerifyConfig};
use planar_srt::{build_tables, Result};

pub struct Summary {
    pub rows: usize,
    pub failed: usize,
    pub worst_rel: f64,
}

fn summarize(reports: &[ResidualReport]) -> Summary {
    Summary {
        rows: reports.len(),
        failed: failures(reports).len(),
        worst_rel: reports.iter().filter(|r| r.gating).map(|r| r.rel).fold(0.0, f64::max),
    }
}

/// Clean run on every check, then a representation-only run with the entry
/// `c_2(4, 2)` perturbed.
pub fn run_example() -> Result<(Summary, Summary)> {
    let table = build_tables(2);
    let catalog: Vec<_> = verification_catalog(7, 1)
        .into_iter()
        .filter(|e| !e.field.descriptor().starts_with("bump"))
        .collect();
    let clean = run_on_catalog(&VerifyConfig::default(), &table, &catalog)?;
    let bad = table.with_scaled_c(4, 2, 2, &parse_rational("1000001/1000000")?)?;
    let config = VerifyConfig {
        checks: vec![CheckKind::RepresentationEven, CheckKind::RepresentationOdd],
        ..VerifyConfig::default()
    };
    let perturbed = run_on_catalog(&config, &bad, &catalog)?;
    Ok((summarize(&clean), summarize(&perturbed)))
}

fn main() -> Result<()> {
    let (clean, perturbed) = run_example()?;
    for (label, s) in [("exact table", clean), ("c_2(4,2) x (1 + 1e-6)", perturbed)] {
        println!("{label:<24} rows {:>5}  failed {:>4}  worst rel {:.3e}", s.rows, s.failed, s.worst_rel);
    }
    Ok(())
}
