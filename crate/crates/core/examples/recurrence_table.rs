//! Derives the count recurrences and checks them against the published rows.

use diffops::opgraph::Family;
use diffops::sequences::{compare_recurrence, known_recurrence, SequenceRecord};

fn main() -> diffops::Result<()> {
    for family in [Family::A, Family::B] {
        for n in 3..=12 {
            let record = SequenceRecord::build(family, n, 40)?;
            let status = match known_recurrence(family, n) {
                Some(known) => format!(
                    "{:?}",
                    compare_recurrence(&record.recurrence, &known, &record.terms)
                ),
                None => "no published row".into(),
            };
            println!(
                "{family} n = {n:<2} {:<60} {status}",
                record.recurrence.display_with(family.count_symbol())
            );
        }
    }
    Ok(())
}
