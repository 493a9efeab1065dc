//! Compares computed counts with the sequence database.
//!
//! Uses bundled fixtures by default. Pass `--online` to fetch b-files, falling back
//! to the fixtures when the network is unreachable.

use diffops::opgraph::Family;
use diffops::sequences::{oeis_compare, SequenceMode, SequenceRecord};

fn main() -> diffops::Result<()> {
    let mode = if std::env::args().any(|a| a == "--online") {
        SequenceMode::Online
    } else {
        SequenceMode::Offline
    };
    for family in [Family::A, Family::B] {
        for n in 3..=10 {
            let record = SequenceRecord::build(family, n, 30)?;
            let r = oeis_compare(&record, mode)?;
            println!(
                "{family} n = {n:<2} {}  matched {:>2} at offset {:+}  {}  ({})",
                r.id,
                r.matched_terms,
                r.offset,
                if r.passed { "ok" } else { "FAIL" },
                r.source.as_str()
            );
        }
    }
    Ok(())
}
