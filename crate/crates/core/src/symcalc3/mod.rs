//! Exact vector calculus on ℝ³ over polynomial fields.
//!
//! Polynomials are closed under grad, curl, div and the Gateaux derivative, and a
//! polynomial is zero exactly when it has no terms, so every identity below is
//! checked symbolically rather than within a tolerance.

mod identities;
mod poly;

pub use identities::{
    annotate_vanishing, finite_difference_check, nonzero_compositions, random_direction,
    random_poly, random_vec_field, verify_identities, zero_identities, FiniteDifferenceReport,
    IdentityOutcome, IdentityReport, WitnessOutcome,
};
pub use poly::{rational, Direction, Exponents, Field, Poly3, Rational, VecField3};

use crate::enumerate::CompositionChain;
use crate::error::{Error, Result};
use crate::opgraph::OperationId;

/// `(∂f/∂x1, ∂f/∂x2, ∂f/∂x3)`.
pub fn grad(f: &Poly3) -> VecField3 {
    VecField3::new(f.partial(0), f.partial(1), f.partial(2))
}

/// `(∂f3/∂x2 − ∂f2/∂x3, ∂f1/∂x3 − ∂f3/∂x1, ∂f2/∂x1 − ∂f1/∂x2)`.
pub fn curl(field: &VecField3) -> VecField3 {
    let [f1, f2, f3] = &field.components;
    VecField3::new(
        &f3.partial(1) - &f2.partial(2),
        &f1.partial(2) - &f3.partial(0),
        &f2.partial(0) - &f1.partial(1),
    )
}

/// `∂f1/∂x1 + ∂f2/∂x2 + ∂f3/∂x3`.
pub fn div(field: &VecField3) -> Poly3 {
    let [f1, f2, f3] = &field.components;
    &(&f1.partial(0) + &f2.partial(1)) + &f3.partial(2)
}

/// `Σ_k (∂f/∂x_k)·e_k`, computed term by term without forming the gradient.
pub fn gateaux(f: &Poly3, e: &Direction) -> Poly3 {
    let mut out = Poly3::zero();
    for (k, ek) in e.e.iter().enumerate() {
        for (exps, c) in f.terms() {
            if exps[k] == 0 {
                continue;
            }
            let mut d = *exps;
            d[k] -= 1;
            out.add_term(d, c * Rational::from_integer(exps[k].into()) * ek);
        }
    }
    out
}

/// Strict variant of [`gateaux`]: the direction must be unit-checked.
pub fn gateaux_strict(f: &Poly3, e: &Direction) -> Result<Poly3> {
    if !e.unit_checked {
        return Err(Error::InvalidDirection(e.to_string()));
    }
    Ok(gateaux(f, e))
}

/// `F · e`.
pub fn dot(field: &VecField3, e: &Direction) -> Poly3 {
    let mut out = Poly3::zero();
    for (c, ek) in field.components.iter().zip(&e.e) {
        out = &out + &c.scale(ek);
    }
    out
}

fn op_name(op: OperationId) -> String {
    match op.0 {
        0 => "D_e".into(),
        1 => "grad".into(),
        2 => "curl".into(),
        3 => "div".into(),
        i => format!("∇_{i}"),
    }
}

/// Applies a single operation, checking the field kind against its signature.
pub fn apply_op(op: OperationId, input: &Field, e: &Direction) -> Result<Field> {
    let mismatch = |expected| Error::KindMismatch {
        op: op_name(op),
        expected,
        found: input.kind(),
    };
    match (op.0, input) {
        (0, Field::Scalar(f)) => Ok(Field::Scalar(gateaux(f, e))),
        (1, Field::Scalar(f)) => Ok(Field::Vector(grad(f))),
        (2, Field::Vector(v)) => Ok(Field::Vector(curl(v))),
        (3, Field::Vector(v)) => Ok(Field::Scalar(div(v))),
        (0 | 1, _) => Err(mismatch("scalar")),
        (2 | 3, _) => Err(mismatch("vector")),
        (i, _) => Err(Error::InvalidOperation {
            index: i,
            family: crate::opgraph::Family::B,
        }),
    }
}

/// Applies a leftmost-first operation sequence right to left.
pub fn apply_sequence(ops: &[OperationId], input: Field, e: &Direction) -> Result<Field> {
    ops.iter()
        .rev()
        .try_fold(input, |field, &op| apply_op(op, &field, e))
}

/// Evaluates a composition chain on a field.
pub fn compose_and_check(chain: &CompositionChain, input: Field, e: &Direction) -> Result<Field> {
    let expected = if chain.signature.domain == 0 {
        "scalar"
    } else {
        "vector"
    };
    if input.kind() != expected {
        return Err(Error::KindMismatch {
            op: op_name(chain.first_applied()),
            expected,
            found: input.kind(),
        });
    }
    apply_sequence(&chain.ops, input, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::is_meaningful;
    use crate::opgraph::{build_space, Family};

    fn p(terms: &[(i64, Exponents)]) -> Poly3 {
        Poly3::from_terms(terms)
    }

    #[test]
    fn grad_examples() {
        let f = p(&[(1, [2, 0, 0]), (1, [0, 1, 1])]);
        assert_eq!(
            grad(&f),
            VecField3::new(p(&[(2, [1, 0, 0])]), Poly3::var(2), Poly3::var(1))
        );
        assert!(grad(&Poly3::constant(rational(5, 2))).is_zero());
        let xyz = p(&[(1, [1, 1, 1])]);
        assert_eq!(
            grad(&xyz),
            VecField3::new(
                p(&[(1, [0, 1, 1])]),
                p(&[(1, [1, 0, 1])]),
                p(&[(1, [1, 1, 0])])
            )
        );
    }

    #[test]
    fn curl_examples() {
        let f = VecField3::new(Poly3::var(1), Poly3::zero(), Poly3::zero());
        assert_eq!(
            curl(&f),
            VecField3::new(Poly3::zero(), Poly3::zero(), p(&[(-1, [0, 0, 0])]))
        );
        assert!(curl(&grad(&p(&[(1, [1, 1, 1])]))).is_zero());
        let g = VecField3::new(Poly3::zero(), Poly3::zero(), p(&[(1, [1, 1, 0])]));
        assert_eq!(
            curl(&g),
            VecField3::new(Poly3::var(0), p(&[(-1, [0, 1, 0])]), Poly3::zero())
        );
    }

    #[test]
    fn div_examples() {
        let id = VecField3::new(Poly3::var(0), Poly3::var(1), Poly3::var(2));
        assert_eq!(div(&id), p(&[(3, [0, 0, 0])]));
        let f = VecField3::new(
            p(&[(1, [0, 1, 1])]),
            p(&[(1, [1, 0, 1])]),
            p(&[(1, [1, 1, 0])]),
        );
        assert!(div(&curl(&f)).is_zero());
        let sq = VecField3::new(p(&[(1, [2, 0, 0])]), Poly3::zero(), Poly3::zero());
        assert_eq!(div(&sq), p(&[(2, [1, 0, 0])]));
    }

    #[test]
    fn gateaux_examples() {
        let f = p(&[(3, [2, 1, 0]), (1, [0, 0, 5])]);
        assert_eq!(gateaux(&f, &Direction::axis(0)), f.partial(0));
        let lin = p(&[(1, [1, 0, 0]), (1, [0, 1, 0])]);
        let e = Direction::unit([rational(3, 5), rational(4, 5), rational(0, 1)]).unwrap();
        assert_eq!(gateaux(&lin, &e), Poly3::constant(rational(7, 5)));
        assert_eq!(gateaux(&f, &e), dot(&grad(&f), &e));

        let loose = Direction::relaxed([rational(1, 1), rational(1, 1), rational(0, 1)]).unwrap();
        assert!(gateaux_strict(&f, &loose).is_err());
        assert!(gateaux_strict(&f, &e).is_ok());
    }

    #[test]
    fn compose_examples() {
        let b = build_space(3, Family::B).unwrap();
        let e = Direction::axis(0);
        let chain = |ix: &[i32]| CompositionChain::from_indices(&b, ix).unwrap();

        let r2 = p(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])]);
        let lap = compose_and_check(&chain(&[3, 1]), Field::Scalar(r2), &e).unwrap();
        assert_eq!(lap, Field::Scalar(p(&[(6, [0, 0, 0])])));

        let v = VecField3::new(
            p(&[(2, [3, 1, 0])]),
            p(&[(1, [1, 2, 2])]),
            p(&[(-1, [0, 4, 1])]),
        );
        let out = compose_and_check(&chain(&[2, 1, 3]), Field::Vector(v.clone()), &e).unwrap();
        assert!(out.is_zero());

        let f = p(&[(1, [4, 1, 0]), (1, [1, 1, 1])]);
        let dd = compose_and_check(&chain(&[0, 0]), Field::Scalar(f.clone()), &e).unwrap();
        assert_eq!(dd, Field::Scalar(f.partial(0).partial(0)));

        assert!(matches!(
            compose_and_check(&chain(&[3, 1]), Field::Vector(v), &e),
            Err(Error::KindMismatch { .. })
        ));
    }

    /// A sequence evaluates on its natural input kind iff it is meaningful.
    #[test]
    fn typing_agrees_with_relation() {
        let b = build_space(3, Family::B).unwrap();
        let e = Direction::axis(2);
        let scalar = Field::Scalar(p(&[(1, [2, 2, 2])]));
        let vector = Field::Vector(VecField3::new(Poly3::var(1), Poly3::var(2), Poly3::var(0)));
        for k in 1..=3u32 {
            for code in 0..4usize.pow(k) {
                let ops: Vec<OperationId> = (0..k)
                    .map(|d| OperationId(((code / 4usize.pow(d)) % 4) as i32))
                    .collect();
                let meaningful = is_meaningful(&b, &ops).unwrap();
                let input = if b.signature(*ops.last().unwrap()).unwrap().domain == 0 {
                    scalar.clone()
                } else {
                    vector.clone()
                };
                let evaluates = apply_sequence(&ops, input, &e).is_ok();
                assert_eq!(meaningful, evaluates, "{ops:?}");
            }
        }
    }
}
