//! Operation sets, their type signatures and the "to be in composition" relation.
//!
//! Operations are indexed the way they are written: `∇_1 .. ∇_n` for the plain
//! family and `∇_0 .. ∇_n` once the Gateaux derivative `∇_0` is added. The sets the
//! operations act on are only modeled by their index `s` in `A_s`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

/// Which operation set is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// grad/curl/div and their higher-dimensional analogues `∇_1 .. ∇_n`.
    A,
    /// Family `A` extended with the Gateaux directional derivative `∇_0`.
    B,
}

impl Family {
    /// Smallest operation index of the family.
    pub fn first_index(self) -> i32 {
        match self {
            Family::A => 1,
            Family::B => 0,
        }
    }

    /// Name of the counting function used for this family (`f` or `g`).
    pub fn count_symbol(self) -> &'static str {
        match self {
            Family::A => "f",
            Family::B => "g",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => f.write_str("A"),
            Family::B => f.write_str("B"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(Family::A),
            "b" | "B" => Ok(Family::B),
            other => Err(format!("unknown family {other:?} (expected a or b)")),
        }
    }
}

/// Index of a differential operation `∇_i`.
///
/// `-1` is the nowhere-defined root used only when exporting the walk tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OperationId(pub i32);

impl OperationId {
    pub const ROOT: OperationId = OperationId(-1);
    pub const GATEAUX: OperationId = OperationId(0);

    pub fn index(self) -> i32 {
        self.0
    }
}

impl fmt::Display for OperationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∇_{}", self.0)
    }
}

/// Domain and codomain of an operation, as indices `s` of the sets `A_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub domain: usize,
    pub codomain: usize,
}

/// The operation set of one family in dimension `n`, with every signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationSpace {
    family: Family,
    n: usize,
    signatures: BTreeMap<OperationId, Signature>,
}

impl OperationSpace {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `⌊n/2⌋`, the highest set index reached.
    pub fn m(&self) -> usize {
        self.n / 2
    }

    /// Number of operations: `n` for family A, `n + 1` for family B.
    pub fn order(&self) -> usize {
        self.signatures.len()
    }

    pub fn signatures(&self) -> &BTreeMap<OperationId, Signature> {
        &self.signatures
    }

    pub fn signature(&self, op: OperationId) -> Option<Signature> {
        self.signatures.get(&op).copied()
    }

    /// All operation ids in increasing index order.
    pub fn operations(&self) -> impl Iterator<Item = OperationId> + '_ {
        self.signatures.keys().copied()
    }

    pub fn relation(&self) -> CompositionRelation {
        CompositionRelation {
            family: self.family,
            n: self.n,
        }
    }

    /// Position of `op` in adjacency-matrix row/column order.
    pub fn position(&self, op: OperationId) -> Option<usize> {
        let offset = op.0 - self.family.first_index();
        (offset >= 0 && (offset as usize) < self.order()).then_some(offset as usize)
    }

    pub fn op_at(&self, position: usize) -> OperationId {
        OperationId(position as i32 + self.family.first_index())
    }

    /// `∇_j ∘ ∇_i` type-checks (`∇_i` applied first).
    pub fn signatures_compose(&self, first: OperationId, then: OperationId) -> bool {
        match (self.signature(first), self.signature(then)) {
            (Some(a), Some(b)) => a.codomain == b.domain,
            _ => false,
        }
    }
}

/// Builds the operation space for dimension `n`.
///
/// The signature table and the closed-form relation predicate are two independent
/// descriptions of the same graph; the build fails if they ever disagree.
pub fn build_space(n: usize, family: Family) -> Result<OperationSpace> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let m = n / 2;
    let mut signatures = BTreeMap::new();
    if family == Family::B {
        signatures.insert(
            OperationId(0),
            Signature {
                domain: 0,
                codomain: 0,
            },
        );
    }
    for r in 1..=n {
        let sig = if r <= m {
            Signature {
                domain: r - 1,
                codomain: r,
            }
        } else if n % 2 == 1 && r == m + 1 {
            Signature {
                domain: m,
                codomain: m,
            }
        } else {
            Signature {
                domain: n - r + 1,
                codomain: n - r,
            }
        };
        signatures.insert(OperationId(r as i32), sig);
    }
    let space = OperationSpace {
        family,
        n,
        signatures,
    };

    let rel = space.relation();
    for i in space.operations() {
        for j in space.operations() {
            let by_sig = space.signatures_compose(i, j);
            let by_rel = rel.holds(i, j)?;
            if by_sig != by_rel {
                return Err(Error::Inconsistent(format!(
                    "{family} n={n}: signatures say {by_sig} but relation says {by_rel} for ({i}, {j})"
                )));
            }
        }
    }
    Ok(space)
}

/// The "to be in composition" predicate: `i` relates to `j` iff `∇_j ∘ ∇_i` is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositionRelation {
    pub family: Family,
    pub n: usize,
}

impl CompositionRelation {
    pub fn new(family: Family, n: usize) -> Self {
        Self { family, n }
    }

    fn check(&self, op: OperationId) -> Result<()> {
        if op.0 < self.family.first_index() || op.0 > self.n as i32 {
            return Err(Error::InvalidOperation {
                index: op.0,
                family: self.family,
            });
        }
        Ok(())
    }

    pub fn holds(&self, i: OperationId, j: OperationId) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        let (i, j, n) = (i.0, j.0, self.n as i32);
        let base = j == i + 1 || i + j == n + 1;
        Ok(match self.family {
            Family::A => base,
            Family::B => base || (i == 0 && j == 0) || (i == n && j == 0),
        })
    }

    /// Operation ids the relation ranges over.
    pub fn operations(&self) -> impl Iterator<Item = OperationId> {
        (self.family.first_index()..=self.n as i32).map(OperationId)
    }
}

/// Evaluates the relation for one ordered pair (`i` applied first, then `j`).
pub fn in_composition(rel: &CompositionRelation, i: OperationId, j: OperationId) -> Result<bool> {
    rel.holds(i, j)
}

/// Full truth table of the relation, rows and columns in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    pub family: Family,
    pub n: usize,
    pub ops: Vec<OperationId>,
    pub cells: Vec<Vec<bool>>,
}

impl CayleyTable {
    pub fn get(&self, i: OperationId, j: OperationId) -> Option<bool> {
        let r = self.ops.iter().position(|&o| o == i)?;
        let c = self.ops.iter().position(|&o| o == j)?;
        Some(self.cells[r][c])
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.family {
            Family::A => "ρ",
            Family::B => "σ",
        };
        write!(f, "{rel:>5}")?;
        for op in &self.ops {
            write!(f, " {:>5}", op.to_string())?;
        }
        writeln!(f)?;
        for (op, row) in self.ops.iter().zip(&self.cells) {
            write!(f, "{:>5}", op.to_string())?;
            for &cell in row {
                write!(f, " {:>5}", if cell { "⊤" } else { "⊥" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn cayley_table(rel: &CompositionRelation) -> CayleyTable {
    let ops: Vec<_> = rel.operations().collect();
    let cells = ops
        .iter()
        .map(|&i| {
            ops.iter()
                .map(|&j| rel.holds(i, j).expect("ids come from the relation itself"))
                .collect()
        })
        .collect();
    CayleyTable {
        family: rel.family,
        n: rel.n,
        ops,
        cells,
    }
}

/// 0/1 adjacency matrix of the composition graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    family: Family,
    matrix: IntMatrix,
}

impl AdjacencyMatrix {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    /// Operation index of the first row/column (1 for A, 0 for B).
    pub fn first_index(&self) -> i32 {
        self.family.first_index()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    /// Entry addressed by operation ids.
    pub fn entry(&self, i: OperationId, j: OperationId) -> Option<&BigInt> {
        let r = i.0 - self.first_index();
        let c = j.0 - self.first_index();
        let order = self.order() as i32;
        if r < 0 || c < 0 || r >= order || c >= order {
            return None;
        }
        Some(self.matrix.get(r as usize, c as usize))
    }
}

pub fn adjacency_matrix(space: &OperationSpace) -> AdjacencyMatrix {
    let order = space.order();
    let rel = space.relation();
    let mut matrix = IntMatrix::zeros(order);
    for r in 0..order {
        for c in 0..order {
            let holds = rel
                .holds(space.op_at(r), space.op_at(c))
                .expect("positions map onto valid ids");
            matrix.set(r, c, if holds { BigInt::one() } else { BigInt::zero() });
        }
    }
    AdjacencyMatrix {
        family: space.family(),
        matrix,
    }
}
