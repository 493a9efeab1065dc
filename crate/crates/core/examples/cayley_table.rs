//! Prints the composition relation and adjacency matrix for one space.

use diffops::opgraph::{adjacency_matrix, build_space, cayley_table, Family};

fn main() -> diffops::Result<()> {
    let n = std::env::args()
        .nth(1)
        .map_or(3, |s| s.parse().expect("dimension"));
    let space = build_space(n, Family::B)?;

    println!("signatures (A_r is the space of r-forms):");
    for (op, sig) in space.signatures() {
        println!("  {op}: A_{} -> A_{}", sig.domain, sig.codomain);
    }
    println!("\n{}", cayley_table(&space.relation()));
    println!("adjacency matrix:\n{}", adjacency_matrix(&space).matrix());
    Ok(())
}
