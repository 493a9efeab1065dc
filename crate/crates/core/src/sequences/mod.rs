//! Linear recurrences for the composition counts, read off the characteristic
//! polynomial and checked against the computed terms.

mod oeis;

pub use oeis::{
    expected_sequence_id, generate_fixture, oeis_compare, oeis_compare_with, parse_bfile,
    parse_fixture, sequence_ids, sources, FixtureSet, OeisClient, OeisReport, ReportSource,
    SequenceMode, FIXTURE_DIR_ENV,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{char_poly, count_terms};
use crate::opgraph::{adjacency_matrix, build_space, Family, OperationSpace};

/// `term(k) = c_1·term(k−1) + … + c_order·term(k−order)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceSpec {
    #[serde(serialize_with = "crate::report::bigint_vec")]
    pub coefficients: Vec<BigInt>,
}

impl RecurrenceSpec {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| c.into()).collect())
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Next term from the most recent `order` terms (oldest first).
    pub fn step(&self, window: &[BigInt]) -> BigInt {
        debug_assert_eq!(window.len(), self.order());
        self.coefficients
            .iter()
            .zip(window.iter().rev())
            .map(|(c, t)| c * t)
            .sum()
    }

    /// Whether `terms[k]` follows from the preceding terms for every `k` with
    /// `order < k <= terms.len()` (1-based).
    pub fn annihilates(&self, terms: &[BigInt]) -> bool {
        let d = self.order();
        (d..terms.len()).all(|i| self.step(&terms[i - d..i]) == terms[i])
    }

    /// Extends `seed` (the first `order` terms) to `len` terms.
    pub fn generate(&self, seed: &[BigInt], len: usize) -> Vec<BigInt> {
        let d = self.order();
        let mut out: Vec<BigInt> = seed.to_vec();
        while out.len() < len {
            let next = self.step(&out[out.len() - d..]);
            out.push(next);
        }
        out.truncate(len);
        out
    }

    /// Renders with the given function symbol, e.g. `f(k) = f(k-1) + f(k-2)`.
    pub fn display_with(&self, sym: &str) -> String {
        let mut s = format!("{sym}(k) =");
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let neg = c.is_negative();
            if first {
                s.push_str(if neg { " -" } else { " " });
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            if abs != BigInt::from(1) {
                s.push_str(&abs.to_string());
            }
            s.push_str(&format!("{sym}(k-{})", i + 1));
        }
        if first {
            s.push_str(" 0");
        }
        s
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

/// Counts for one family and dimension, with the recurrence they satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub family: Family,
    pub n: usize,
    /// `terms[0]` is the count for `k = 1`.
    pub terms: Vec<BigInt>,
    pub recurrence: RecurrenceSpec,
    pub oeis_id: Option<String>,
}

impl SequenceRecord {
    pub fn build(family: Family, n: usize, len: usize) -> Result<Self> {
        let space = build_space(n, family)?;
        Ok(Self {
            family,
            n,
            terms: count_terms(&space, len),
            recurrence: derive_recurrence(&space)?,
            oeis_id: expected_sequence_id(family, n).map(str::to_owned),
        })
    }
}

/// Recurrence read off the monic characteristic polynomial, with trailing zero
/// coefficients (factors of `λ`) dropped as long as the result still holds.
pub fn derive_recurrence(space: &OperationSpace) -> Result<RecurrenceSpec> {
    let p = char_poly(adjacency_matrix(space).matrix())?;
    let d = p.degree().unwrap_or(0);
    // λ^d + a_1 λ^{d−1} + … + a_d  →  c_i = −a_i
    let mut coefficients: Vec<BigInt> = (1..=d).map(|i| -p.coeff(d - i)).collect();
    let terms = count_terms(space, 2 * d + 20);
    while coefficients.last().is_some_and(Zero::is_zero) {
        let mut trimmed = coefficients.clone();
        trimmed.pop();
        if !RecurrenceSpec::new(trimmed.clone()).annihilates(&terms) {
            break;
        }
        coefficients = trimmed;
    }
    Ok(RecurrenceSpec::new(coefficients))
}

/// Checks the record's recurrence for every `k` in `(order, upto_k]`.
pub fn verify_recurrence(record: &SequenceRecord, upto_k: usize) -> Result<bool> {
    if record.terms.len() < upto_k {
        return Err(Error::InsufficientTerms {
            have: record.terms.len(),
            need: upto_k,
        });
    }
    Ok(record.recurrence.annihilates(&record.terms[..upto_k]))
}

/// Derived recurrences for `n_from..=n_to`.
pub fn recurrence_table(family: Family, n_from: usize, n_to: usize) -> Result<Vec<RecurrenceSpec>> {
    if n_from < 3 {
        return Err(Error::InvalidDimension(n_from));
    }
    (n_from..=n_to)
        .map(|n| derive_recurrence(&build_space(n, family)?))
        .collect()
}

/// Published recurrences for `n = 3..=10`, both families.
pub fn known_recurrence(family: Family, n: usize) -> Option<RecurrenceSpec> {
    let row: &[i64] = match (family, n) {
        (Family::A, 3) => &[1, 1],
        (Family::A, 4) => &[0, 2],
        (Family::A, 5) => &[1, 2, -1],
        (Family::A, 6) => &[0, 3, 0, -1],
        (Family::A, 7) => &[1, 3, -2, -1],
        (Family::A, 8) => &[0, 4, 0, -3],
        (Family::A, 9) => &[1, 4, -3, -3, 1],
        (Family::A, 10) => &[0, 5, 0, -6, 0, 1],
        (Family::B, 3) => &[2],
        (Family::B, 4) => &[1, 2, -1],
        (Family::B, 5) => &[2, 1, -2],
        (Family::B, 6) => &[1, 3, -2, -1],
        (Family::B, 7) => &[2, 2, -4],
        (Family::B, 8) => &[1, 4, -3, -3, 1],
        (Family::B, 9) => &[2, 3, -6, -1, 2],
        (Family::B, 10) => &[1, 5, -4, -6, 3, 1],
        _ => return None,
    };
    Some(RecurrenceSpec::from_i64(row))
}

/// Outcome of comparing a derived recurrence to a reference one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RecurrenceMatch {
    /// Same coefficients.
    Exact,
    /// Different shape, but the reference recurrence holds on the computed terms.
    AnnihilatesTerms,
    Mismatch,
}

/// Compares after normalization; `terms` are the computed counts from `k = 1`.
pub fn compare_recurrence(
    derived: &RecurrenceSpec,
    reference: &RecurrenceSpec,
    terms: &[BigInt],
) -> RecurrenceMatch {
    let trim = |r: &RecurrenceSpec| {
        let mut c = r.coefficients.clone();
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        c
    };
    if trim(derived) == trim(reference) {
        return RecurrenceMatch::Exact;
    }
    let window = reference.order() + 20;
    if terms.len() >= window && reference.annihilates(&terms[..window]) {
        RecurrenceMatch::AnnihilatesTerms
    } else {
        RecurrenceMatch::Mismatch
    }
}
