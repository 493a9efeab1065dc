//! Counts meaningful compositions by matrix power and by vector iteration.
//!
//! `cargo run --example count_compositions -- 5 12`

use diffops::enumerate::per_start_counts;
use diffops::exactalg::CountQuery;
use diffops::opgraph::{build_space, Family};

fn main() -> diffops::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(3, |s| s.parse().expect("dimension"));
    let upto: usize = args.next().map_or(10, |s| s.parse().expect("order"));

    for family in [Family::A, Family::B] {
        let space = build_space(n, family)?;
        println!("family {family}, n = {n}");
        for k in 1..=upto {
            let query = CountQuery::new(&space, k)?;
            let total = query.by_matrix_power();
            let columns: num_bigint::BigInt = query.by_vector_iteration().iter().sum();
            assert_eq!(total, columns);
            println!("  {}({k}) = {total}", family.count_symbol());
        }
        let split = per_start_counts(&space, upto)?;
        let parts: Vec<String> = split
            .counts
            .iter()
            .map(|(op, c)| format!("{op}: {c}"))
            .collect();
        println!("  order {upto} by leftmost operation: {}", parts.join(", "));
    }
    Ok(())
}
