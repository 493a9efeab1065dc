//! Lists every meaningful composition of a given order, marking those that vanish.

use diffops::enumerate::{chain_name, enumerate_chains};
use diffops::opgraph::{build_space, Family};
use diffops::symcalc3::annotate_vanishing;

fn main() -> diffops::Result<()> {
    for (family, k) in [
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::B, 3),
    ] {
        let space = build_space(3, family)?;
        let mut chains = enumerate_chains(&space, k)?;
        annotate_vanishing(&mut chains, 10, 1)?;
        println!("family {family}, order {k}: {} chains", chains.len());
        for c in &chains {
            let mark = if c.vanishes_identically == Some(true) {
                "= 0"
            } else {
                ""
            };
            println!("  {:<24} {:?} {mark}", chain_name(c, 3), c.indices());
        }
    }

    let space = build_space(6, Family::A)?;
    println!("\nfamily A, n = 6, order 2:");
    for c in enumerate_chains(&space, 2)? {
        println!("  {}", chain_name(&c, 6));
    }
    Ok(())
}
