//! Characteristic polynomials from the matrices and from the closed forms, side by side.

use diffops::closedform::{check_bridge_identity, check_charpoly_recurrence, closed_form_result};
use diffops::opgraph::Family;

fn main() -> diffops::Result<()> {
    for family in [Family::A, Family::B] {
        println!("family {family}");
        for n in 3..=12 {
            let r = closed_form_result(family, n)?;
            let mark = if r.matched_computed {
                "match"
            } else {
                "MISMATCH"
            };
            println!("  n = {n:<2} {}  [{mark}]", r.computed);
        }
        let ok = (7..=20).all(|n| check_charpoly_recurrence(n, family).unwrap_or(false));
        println!("  P_n = λ²(P_(n-2) - P_(n-4)) for n = 7..20: {ok}");
    }
    let bridge = (5..=20).all(|n| check_bridge_identity(n).unwrap_or(false));
    println!("Q_n = λ²P_(n-2) - λP_n for n = 5..20: {bridge}");
    Ok(())
}
