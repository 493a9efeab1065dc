//! Explicit enumeration of meaningful composition chains, their names, per-start
//! counts and the walk tree rooted at the nowhere-defined operation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{count_order_k, CountQuery};
use crate::opgraph::{OperationId, OperationSpace, Signature};

pub const DEFAULT_CAP: usize = 1_000_000;

/// A meaningful composition `∇_{i_1} ∘ ∇_{i_2} ∘ … ∘ ∇_{i_k}`.
///
/// `ops` is stored as written: `ops[0]` is applied last and `ops[k−1]` first, so
/// `div grad` is `[3, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionChain {
    pub ops: Vec<OperationId>,
    pub signature: Signature,
    /// Whether the composition is identically zero; only known in ℝ³.
    pub vanishes_identically: Option<bool>,
}

impl CompositionChain {
    /// Validates and wraps a leftmost-first index sequence.
    pub fn new(space: &OperationSpace, ops: Vec<OperationId>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidOrder(0));
        }
        let signature = chain_signature(space, &ops)?.ok_or_else(|| {
            let ix: Vec<String> = ops.iter().map(ToString::to_string).collect();
            Error::NotMeaningful(ix.join(" ∘ "))
        })?;
        Ok(Self {
            ops,
            signature,
            vanishes_identically: None,
        })
    }

    pub fn from_indices(space: &OperationSpace, indices: &[i32]) -> Result<Self> {
        Self::new(space, indices.iter().copied().map(OperationId).collect())
    }

    pub fn indices(&self) -> Vec<i32> {
        self.ops.iter().map(|o| o.0).collect()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Operation applied first (rightmost).
    pub fn first_applied(&self) -> OperationId {
        *self.ops.last().expect("chains are nonempty")
    }

    /// Operation applied last (leftmost).
    pub fn last_applied(&self) -> OperationId {
        self.ops[0]
    }
}

/// Checks an index sequence right to left. `Ok(None)` if the sequence is empty or
/// some adjacent pair does not compose; ids outside the family are an error.
fn chain_signature(space: &OperationSpace, ops: &[OperationId]) -> Result<Option<Signature>> {
    let rel = space.relation();
    let Some(&first) = ops.last() else {
        return Ok(None);
    };
    let first_sig = space.signature(first).ok_or(Error::InvalidOperation {
        index: first.0,
        family: space.family(),
    })?;
    for pair in ops.windows(2).rev() {
        let (then, earlier) = (pair[0], pair[1]);
        if !rel.holds(earlier, then)? {
            return Ok(None);
        }
    }
    let last_sig = space.signature(ops[0]).expect("validated above");
    Ok(Some(Signature {
        domain: first_sig.domain,
        codomain: last_sig.codomain,
    }))
}

/// Whether a leftmost-first index sequence is a meaningful composition.
pub fn is_meaningful(space: &OperationSpace, ops: &[OperationId]) -> Result<bool> {
    Ok(chain_signature(space, ops)?.is_some())
}

/// All meaningful chains of order `k`, lexicographic in leftmost-first order.
pub fn enumerate_chains(space: &OperationSpace, k: usize) -> Result<Vec<CompositionChain>> {
    enumerate_chains_capped(space, k, DEFAULT_CAP)
}

pub fn enumerate_chains_capped(
    space: &OperationSpace,
    k: usize,
    cap: usize,
) -> Result<Vec<CompositionChain>> {
    let count = count_order_k(space, k)?;
    if count > BigInt::from(cap) {
        return Err(Error::EnumerationTooLarge {
            count: count.to_string(),
            cap,
        });
    }
    let rel = space.relation();
    let ops: Vec<OperationId> = space.operations().collect();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);

    // Extends to the right: each new op is applied before the previous one.
    fn extend(
        space: &OperationSpace,
        rel: &crate::opgraph::CompositionRelation,
        ops: &[OperationId],
        k: usize,
        stack: &mut Vec<OperationId>,
        out: &mut Vec<CompositionChain>,
    ) -> Result<()> {
        if stack.len() == k {
            out.push(CompositionChain::new(space, stack.clone())?);
            return Ok(());
        }
        for &op in ops {
            let fits = match stack.last() {
                None => true,
                Some(&then) => rel.holds(op, then)?,
            };
            if fits {
                stack.push(op);
                extend(space, rel, ops, k, stack, out)?;
                stack.pop();
            }
        }
        Ok(())
    }

    extend(space, &rel, &ops, k, &mut stack, &mut out)?;
    Ok(out)
}

/// Vector-calculus name in ℝ³ (`div grad f`), numeric form otherwise.
pub fn chain_name(chain: &CompositionChain, n: usize) -> String {
    if n != 3 {
        return chain
            .ops
            .iter()
            .map(|op| format!("∇_{}", op.0))
            .collect::<Vec<_>>()
            .join(" ∘ ");
    }
    let mut words: Vec<&str> = chain
        .ops
        .iter()
        .map(|op| match op.0 {
            0 => "D_e",
            1 => "grad",
            2 => "curl",
            3 => "div",
            _ => "?",
        })
        .collect();
    words.push(if chain.signature.domain == 0 {
        "f"
    } else {
        "f\u{20d7}"
    });
    words.join(" ")
}

/// Number of order-`k` chains headed (leftmost) by each operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerStartCounts {
    pub k: usize,
    pub counts: BTreeMap<OperationId, BigInt>,
}

impl PerStartCounts {
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn get(&self, op: OperationId) -> BigInt {
        self.counts.get(&op).cloned().unwrap_or_default()
    }
}

pub fn per_start_counts(space: &OperationSpace, k: usize) -> Result<PerStartCounts> {
    let columns = CountQuery::new(space, k)?.by_vector_iteration();
    let counts = columns
        .into_iter()
        .enumerate()
        .map(|(pos, c)| (space.op_at(pos), c))
        .collect();
    Ok(PerStartCounts { k, counts })
}

/// Walk tree rooted at `∇_{−1}` as a DOT digraph.
///
/// A node's children are the operations that may be applied after it; the node at
/// depth `d` along a path therefore stands for one chain of order `d`.
pub fn export_tree_dot(space: &OperationSpace, depth: usize) -> Result<String> {
    export_tree_dot_capped(space, depth, DEFAULT_CAP)
}

pub fn export_tree_dot_capped(space: &OperationSpace, depth: usize, cap: usize) -> Result<String> {
    if depth < 1 {
        return Err(Error::InvalidOrder(depth));
    }
    let mut levels = Vec::with_capacity(depth);
    let mut total = BigInt::from(1);
    for d in 1..=depth {
        let c = count_order_k(space, d)?;
        total += &c;
        levels.push(c);
    }
    if total > BigInt::from(cap) {
        return Err(Error::EnumerationTooLarge {
            count: total.to_string(),
            cap,
        });
    }

    let sym = space.family().count_symbol();
    let rel = space.relation();
    let mut dot = String::new();
    writeln!(dot, "digraph walks {{").unwrap();
    writeln!(
        dot,
        "  // family {} n={} depth={}",
        space.family(),
        space.n(),
        depth
    )
    .unwrap();
    writeln!(dot, "  // {sym}(0) = 1").unwrap();
    for (d, c) in levels.iter().enumerate() {
        writeln!(dot, "  // {sym}({}) = {c}", d + 1).unwrap();
    }
    writeln!(dot, "  \"nabla_-1\" [label=\"∇_-1\"];").unwrap();

    // Breadth-first so nodes appear level by level; path ids list ops in application order.
    let mut frontier: Vec<(String, OperationId)> =
        vec![("nabla_-1".to_string(), OperationId::ROOT)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (id, op) in &frontier {
            for child in space.operations() {
                if *op != OperationId::ROOT && !rel.holds(*op, child)? {
                    continue;
                }
                let child_id = if *op == OperationId::ROOT {
                    format!("p_{}", child.0)
                } else {
                    format!("{id}_{}", child.0)
                };
                writeln!(dot, "  \"{child_id}\" [label=\"∇_{}\"];", child.0).unwrap();
                writeln!(dot, "  \"{id}\" -> \"{child_id}\";").unwrap();
                next.push((child_id, child));
            }
        }
        frontier = next;
    }
    writeln!(dot, "}}").unwrap();
    Ok(dot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opgraph::{build_space, Family};

    fn index_sets(chains: &[CompositionChain]) -> Vec<Vec<i32>> {
        let mut v: Vec<_> = chains.iter().map(CompositionChain::indices).collect();
        v.sort();
        v
    }

    fn sorted(mut v: Vec<Vec<i32>>) -> Vec<Vec<i32>> {
        v.sort();
        v
    }

    #[test]
    fn second_order_r3() {
        let a = build_space(3, Family::A).unwrap();
        let chains = enumerate_chains(&a, 2).unwrap();
        assert_eq!(
            index_sets(&chains),
            sorted(vec![
                vec![3, 1],
                vec![2, 2],
                vec![1, 3],
                vec![2, 1],
                vec![3, 2]
            ])
        );
        // lexicographic
        assert_eq!(
            chains.iter().map(|c| c.indices()).collect::<Vec<_>>(),
            index_sets(&chains)
        );
    }

    #[test]
    fn second_order_with_gateaux() {
        let b = build_space(3, Family::B).unwrap();
        let chains = enumerate_chains(&b, 2).unwrap();
        assert_eq!(
            index_sets(&chains),
            sorted(vec![
                vec![0, 0],
                vec![1, 0],
                vec![3, 1],
                vec![2, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 1],
                vec![3, 2]
            ])
        );
    }

    #[test]
    fn cap_is_enforced() {
        let b = build_space(3, Family::B).unwrap();
        let err = enumerate_chains_capped(&b, 3, 10).unwrap_err();
        match err {
            Error::EnumerationTooLarge { count, cap } => {
                assert_eq!(count, "16");
                assert_eq!(cap, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(enumerate_chains(&b, 25).is_err());
    }

    #[test]
    fn names() {
        let b = build_space(3, Family::B).unwrap();
        let name = |ix: &[i32]| chain_name(&CompositionChain::from_indices(&b, ix).unwrap(), 3);
        assert_eq!(name(&[3, 1]), "div grad f");
        assert_eq!(name(&[0, 3, 2]), "D_e div curl f\u{20d7}");
        assert_eq!(name(&[2, 1, 3]), "curl grad div f\u{20d7}");
        assert_eq!(name(&[0, 0]), "D_e D_e f");

        let a5 = build_space(5, Family::A).unwrap();
        let c = CompositionChain::from_indices(&a5, &[5, 1]).unwrap();
        assert_eq!(chain_name(&c, 5), "∇_5 ∘ ∇_1");
    }

    #[test]
    fn chain_signature_and_validity() {
        let b = build_space(3, Family::B).unwrap();
        let c = CompositionChain::from_indices(&b, &[0, 3, 2]).unwrap();
        assert_eq!(
            c.signature,
            Signature {
                domain: 1,
                codomain: 0
            }
        );
        assert_eq!(c.first_applied(), OperationId(2));
        assert_eq!(c.last_applied(), OperationId(0));
        assert!(CompositionChain::from_indices(&b, &[1, 1]).is_err());
        assert!(CompositionChain::from_indices(&b, &[7]).is_err());
        assert!(!is_meaningful(&b, &[OperationId(2), OperationId(0)]).unwrap());
    }

    #[test]
    fn per_start_examples() {
        let b = build_space(3, Family::B).unwrap();
        let k2 = per_start_counts(&b, 2).unwrap();
        for i in 0..4 {
            assert_eq!(k2.get(OperationId(i)), 2.into());
        }
        let k1 = per_start_counts(&b, 1).unwrap();
        assert!(k1.counts.values().all(|c| *c == 1.into()));
        assert_eq!(per_start_counts(&b, 5).unwrap().total(), 64.into());
    }

    #[test]
    fn per_start_matches_enumeration_heads() {
        for family in [Family::A, Family::B] {
            for n in 3..=6 {
                let space = build_space(n, family).unwrap();
                for k in 1..=6 {
                    let chains = enumerate_chains(&space, k).unwrap();
                    let ps = per_start_counts(&space, k).unwrap();
                    for op in space.operations() {
                        let heads = chains.iter().filter(|c| c.last_applied() == op).count();
                        assert_eq!(ps.get(op), heads.into());
                    }
                }
            }
        }
    }

    fn node_count(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("[label=")).count()
    }

    #[test]
    fn dot_tree_sizes() {
        let b = build_space(3, Family::B).unwrap();
        let d1 = export_tree_dot(&b, 1).unwrap();
        assert_eq!(node_count(&d1), 5);
        assert_eq!(
            d1.lines().filter(|l| l.contains("\"nabla_-1\" ->")).count(),
            4
        );
        let d3 = export_tree_dot(&b, 3).unwrap();
        assert_eq!(node_count(&d3), 29);
        assert!(d3.contains("// g(3) = 16"));
        assert!(d3.starts_with("digraph"));

        let a = build_space(3, Family::A).unwrap();
        let d2 = export_tree_dot(&a, 2).unwrap();
        assert!(d2.contains("// f(1) = 3") && d2.contains("// f(2) = 5"));
        assert_eq!(node_count(&d2), 1 + 3 + 5);
        assert!(matches!(
            export_tree_dot_capped(&b, 3, 20),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }
}
