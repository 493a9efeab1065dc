//! Runs the seeded identity suite and the finite-difference cross-check.

use diffops::symcalc3::{finite_difference_check, verify_identities};

fn main() -> diffops::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(7, |s| s.parse().expect("seed"));
    let report = verify_identities(25, 4, seed)?;
    print!("{}", report.to_text());

    let fd = finite_difference_check(20, seed);
    println!(
        "finite differences: {} cases, h = {}, max relative error {:.2e}",
        fd.cases, fd.step, fd.max_relative_error
    );
    Ok(())
}
