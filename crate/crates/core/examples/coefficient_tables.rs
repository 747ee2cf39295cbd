//! Builds the exact coefficient tables and prints the filter polynomials
//! `C_{2n,2i}` and `C_{2n+1,2i}` for small orders.

use planar_srt::coeff_tables::{format_rational, Family};
use planar_srt::{build_tables, polynomial_set, PolynomialSet, Rational, Result};

pub const MAX_ORDER: usize = 3;

fn render(poly: &[Rational]) -> String {
    let terms: Vec<String> = poly
        .iter()
        .enumerate()
        .filter(|(_, c)| *c != &Rational::from_integer(0.into()))
        .map(|(p, c)| format!("({}) t^{p}", format_rational(c)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn run_example() -> Result<Vec<PolynomialSet>> {
    let table = build_tables(MAX_ORDER);
    (0..=MAX_ORDER).map(|n| polynomial_set(&table, n)).collect()
}

fn main() -> Result<()> {
    let table = build_tables(MAX_ORDER);
    for fam in [Family::CEven, Family::COdd, Family::SEven, Family::SOdd] {
        let count = table.entries().filter(|e| e.0 == fam).count();
        println!("{:<7} {count} entries", fam.label());
    }
    for set in run_example()? {
        let n = set.n();
        println!("\norder {n}");
        for i in 0..=n {
            println!("  C_{{{},{}}}(t) = {}", 2 * n, 2 * i, render(set.even(i)));
            println!("  C_{{{},{}}}(t) = {}", 2 * n + 1, 2 * i, render(set.odd(i)));
        }
    }
    Ok(())
}
