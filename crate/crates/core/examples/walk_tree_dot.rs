//! Writes the walk tree as Graphviz DOT.
//!
//! `cargo run --example walk_tree_dot -- b 3 3 | dot -Tsvg > tree.svg`

use diffops::enumerate::export_tree_dot;
use diffops::opgraph::{build_space, Family};

fn main() -> diffops::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args
        .first()
        .map_or(Ok(Family::A), |s| s.parse())
        .expect("family a or b");
    let n = args.get(1).map_or(3, |s| s.parse().expect("dimension"));
    let depth = args.get(2).map_or(3, |s| s.parse().expect("depth"));

    print!("{}", export_tree_dot(&build_space(n, family)?, depth)?);
    Ok(())
}
