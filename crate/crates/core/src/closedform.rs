//! Closed forms for the characteristic polynomials and the ℝ³ counts, and checks
//! of the polynomial identities that relate them.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{char_poly, IntPolynomial};
use crate::opgraph::{adjacency_matrix, build_space, Family};

/// `C(top, bottom)`, zero whenever `bottom` is negative or exceeds `top`.
pub fn binomial(top: i64, bottom: i64) -> BigInt {
    if bottom < 0 || top < 0 || bottom > top {
        return BigInt::zero();
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigInt::one();
    for i in 0..bottom {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

/// Accumulates `c · λ^e` terms; a nonzero coefficient on a negative power is a
/// mistake in the formula, not something to drop silently.
struct TermSum {
    coeffs: Vec<BigInt>,
}

impl TermSum {
    fn new(max_degree: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); max_degree + 1],
        }
    }

    fn add(&mut self, c: BigInt, exponent: i64) {
        if c.is_zero() {
            return;
        }
        assert!(
            exponent >= 0,
            "closed form produced λ^{exponent} with coefficient {c}"
        );
        let e = exponent as usize;
        if e >= self.coeffs.len() {
            self.coeffs.resize(e + 1, BigInt::zero());
        }
        self.coeffs[e] += c;
    }

    fn finish(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs)
    }
}

fn alternating(k: i64) -> BigInt {
    if (k - 1) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Explicit binomial-sum form of the characteristic polynomial of family A.
pub fn charpoly_a_closed(n: usize) -> Result<IntPolynomial> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let ni = n as i64;
    let mut sum = TermSum::new(n);
    if n.is_multiple_of(2) {
        for k in 1..=(ni + 2) / 4 + 1 {
            let c = alternating(k) * binomial(ni / 2 - k + 2, k - 1);
            sum.add(c, ni - 2 * k + 2);
        }
    } else {
        let half = (ni + 3) / 2;
        for k in 1..=(ni + 2) / 4 + 2 {
            let sign = alternating(k);
            sum.add(&sign * binomial(half - k, k - 1), ni - 2 * k + 2);
            sum.add(sign * binomial(half - k, k - 2), ni - 2 * k + 3);
        }
    }
    Ok(sum.finish())
}

/// Explicit binomial-sum form of the characteristic polynomial of family B.
pub fn charpoly_b_closed(n: usize) -> Result<IntPolynomial> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let ni = n as i64;
    let mut sum = TermSum::new(n + 1);
    if n % 2 == 1 {
        let half = (ni + 1) / 2;
        for k in 1..=ni / 4 + 1 {
            let c = alternating(k) * binomial(half - k, k - 1);
            sum.add(c, ni - 2 * k + 2);
        }
        let lambda_minus_two = IntPolynomial::from_i64(&[-2, 1]);
        return Ok(&lambda_minus_two * &sum.finish());
    }
    let half = ni / 2 + 2;
    for k in 1..=(ni + 3) / 4 + 2 {
        let sign = alternating(k);
        sum.add(&sign * binomial(half - k, k - 1), ni - 2 * k + 3);
        sum.add(sign * binomial(half - k, k - 2), ni - 2 * k + 4);
    }
    Ok(sum.finish())
}

/// Closed form for one family, compared against the computed characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormResult {
    pub n: usize,
    pub family: Family,
    pub polynomial: IntPolynomial,
    pub computed: IntPolynomial,
    pub matched_computed: bool,
}

pub fn closed_form_result(family: Family, n: usize) -> Result<ClosedFormResult> {
    let polynomial = match family {
        Family::A => charpoly_a_closed(n)?,
        Family::B => charpoly_b_closed(n)?,
    };
    let computed = computed_charpoly(family, n)?;
    Ok(ClosedFormResult {
        n,
        family,
        matched_computed: polynomial == computed,
        polynomial,
        computed,
    })
}

/// `det(λI − M)` for the adjacency matrix of the given family and dimension.
pub fn computed_charpoly(family: Family, n: usize) -> Result<IntPolynomial> {
    let space = build_space(n, family)?;
    char_poly(adjacency_matrix(&space).matrix())
}

/// `p_n = λ²(p_{n−2} − p_{n−4})` for three concrete polynomials.
pub fn two_step_recurrence_holds(
    p_n: &IntPolynomial,
    p_n_minus_2: &IntPolynomial,
    p_n_minus_4: &IntPolynomial,
) -> bool {
    *p_n == (p_n_minus_2 - p_n_minus_4).shift(2)
}

/// Checks the two-step recurrence on computed characteristic polynomials.
pub fn check_charpoly_recurrence(n: usize, family: Family) -> Result<bool> {
    if n < 7 {
        return Err(Error::InsufficientBaseCases { n, min: 7 });
    }
    let p = |d| computed_charpoly(family, d);
    Ok(two_step_recurrence_holds(&p(n)?, &p(n - 2)?, &p(n - 4)?))
}

/// Converts a monic `det(λI − M)` of the given order into `det(M − λI)`.
pub fn to_det_m_minus_lambda(p: &IntPolynomial, order: usize) -> IntPolynomial {
    if order.is_multiple_of(2) {
        p.clone()
    } else {
        -p
    }
}

/// Bridge between the two families, `Q_n = λ²P_{n−2} − λP_n`.
///
/// The identity is stated for `det(M − λI)`; all three polynomials are converted to
/// that convention before comparing. In monic form it reads `Q_n = λP_n − λ²P_{n−2}`.
pub fn check_bridge_identity(n: usize) -> Result<bool> {
    if n < 5 {
        return Err(Error::InsufficientBaseCases { n, min: 5 });
    }
    let q = to_det_m_minus_lambda(&computed_charpoly(Family::B, n)?, n + 1);
    let p = to_det_m_minus_lambda(&computed_charpoly(Family::A, n)?, n);
    let p2 = to_det_m_minus_lambda(&computed_charpoly(Family::A, n - 2)?, n - 2);
    Ok(q == &p2.shift(2) - &p.shift(1))
}

/// Fibonacci number with `F_1 = F_2 = 1`.
pub fn fibonacci(k: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Counts in ℝ³: `F_{k+3}` without the Gateaux derivative, `2^{k+1}` with it.
pub fn count_closed_form_r3(k: u64, family: Family) -> BigInt {
    match family {
        Family::A => fibonacci(k + 3).into(),
        Family::B => BigInt::one() << (k + 1),
    }
}
