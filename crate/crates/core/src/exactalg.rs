//! Exact big-integer matrices and polynomials: matrix powers, walk counts and
//! characteristic polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::opgraph::{adjacency_matrix, OperationSpace};

/// Square matrix of big integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![BigInt::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are not square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            assert_eq!(row.len(), order, "matrix must be square");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.order + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.order + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.order..(r + 1) * self.order]
    }

    pub fn trace(&self) -> BigInt {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    /// Adds `k` to every diagonal entry.
    pub fn add_diagonal(&mut self, k: &BigInt) {
        for i in 0..self.order {
            self.entries[i * self.order + i] += k;
        }
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.order);
        let mut out = vec![BigInt::zero(); self.order];
        for (r, vr) in v.iter().enumerate() {
            if vr.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += vr * a;
                }
            }
        }
        out
    }

    /// Sum of all entries, i.e. `v · M · vᵀ` with `v` all ones.
    pub fn total(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// Simultaneous row/column permutation: entry `(i, j)` moves to `(p[i], p[j])`.
    pub fn permuted(&self, p: &[usize]) -> Self {
        assert_eq!(p.len(), self.order);
        let mut out = Self::zeros(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                out.set(p[i], p[j], self.get(i, j).clone());
            }
        }
        out
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.order, rhs.order, "order mismatch");
        let n = self.order;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.order, rhs.order, "order mismatch");
        IntMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.order {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `Mᵉ` by binary exponentiation; `M⁰` is the identity.
pub fn mat_pow(m: &IntMatrix, mut e: u64) -> IntMatrix {
    let mut result = IntMatrix::identity(m.order());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Dense univariate polynomial with integer coefficients, lowest degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c · λ^degree`.
    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by `λ^s`.
    pub fn shift(&self, s: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Substitutes a square matrix for `λ` (Horner form).
    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let mut acc = IntMatrix::zeros(m.order());
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            acc.add_diagonal(c);
        }
        acc
    }

    /// Highest power of `λ` dividing the polynomial.
    pub fn lambda_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Renders as e.g. `λ^4 - 2λ^3 + λ - 7`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = if abs.is_one() && deg > 0 {
                String::new()
            } else {
                abs.to_string()
            };
            match deg {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}λ")?,
                _ => write!(f, "{coeff}λ^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Monic characteristic polynomial `det(λI − M)`.
///
/// Faddeev–LeVerrier over the integers: `M_1 = I`, `c_{n−k} = −tr(M·M_k)/k`,
/// `M_{k+1} = M·M_k + c_{n−k}·I`. Each division is exact in theory; a nonzero
/// remainder means a bug and is reported rather than rounded away.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    let n = m.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::identity(n);
    for k in 1..=n {
        let am = m * &mk;
        let (q, r) = (-am.trace()).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::NonIntegralCoefficient { step: k });
        }
        coeffs[n - k] = q.clone();
        mk = am;
        mk.add_diagonal(&q);
    }
    Ok(IntPolynomial::new(coeffs))
}

/// A walk-count query: `v · M^{k−1} · vᵀ` over the space's adjacency matrix.
#[derive(Debug, Clone)]
pub struct CountQuery<'a> {
    space: &'a OperationSpace,
    k: usize,
}

impl<'a> CountQuery<'a> {
    pub fn new(space: &'a OperationSpace, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidOrder(k));
        }
        Ok(Self { space, k })
    }

    pub fn all_ones(&self) -> Vec<BigInt> {
        vec![BigInt::one(); self.space.order()]
    }

    /// Via the `(k−1)`-th matrix power.
    pub fn by_matrix_power(&self) -> BigInt {
        let a = adjacency_matrix(self.space);
        mat_pow(a.matrix(), (self.k - 1) as u64).total()
    }

    /// Via `k−1` vector-matrix products; returns the per-column counts.
    pub fn by_vector_iteration(&self) -> Vec<BigInt> {
        let a = adjacency_matrix(self.space);
        let mut v = self.all_ones();
        for _ in 1..self.k {
            v = a.matrix().left_mul_vec(&v);
        }
        v
    }
}

/// Number of meaningful compositions of order `k`.
pub fn count_order_k(space: &OperationSpace, k: usize) -> Result<BigInt> {
    Ok(CountQuery::new(space, k)?.by_matrix_power())
}

/// Counts for `k = 1..=upto` in one pass of vector iteration.
pub fn count_terms(space: &OperationSpace, upto: usize) -> Vec<BigInt> {
    let a = adjacency_matrix(space);
    let mut v = vec![BigInt::one(); space.order()];
    let mut out = Vec::with_capacity(upto);
    for k in 1..=upto {
        if k > 1 {
            v = a.matrix().left_mul_vec(&v);
        }
        out.push(v.iter().sum());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opgraph::{build_space, Family};

    fn a3() -> IntMatrix {
        adjacency_matrix(&build_space(3, Family::A).unwrap()).into_matrix()
    }

    fn b3() -> IntMatrix {
        adjacency_matrix(&build_space(3, Family::B).unwrap()).into_matrix()
    }

    #[test]
    fn power_zero_and_one() {
        assert_eq!(mat_pow(&a3(), 0), IntMatrix::identity(3));
        assert_eq!(mat_pow(&b3(), 1), b3());
    }

    #[test]
    fn square_counts_two_step_walks() {
        let m = a3();
        let sq = mat_pow(&m, 2);
        // brute force: walks i -> x -> j
        for i in 0..3 {
            for j in 0..3 {
                let walks = (0..3)
                    .filter(|&x| m.get(i, x).is_one() && m.get(x, j).is_one())
                    .count();
                assert_eq!(sq.get(i, j), &BigInt::from(walks));
            }
        }
    }

    #[test]
    fn counts_in_r3() {
        let a = build_space(3, Family::A).unwrap();
        let b = build_space(3, Family::B).unwrap();
        assert_eq!(count_order_k(&a, 2).unwrap(), 5.into());
        assert_eq!(count_order_k(&a, 3).unwrap(), 8.into());
        assert_eq!(count_order_k(&b, 3).unwrap(), 16.into());
        assert_eq!(count_order_k(&b, 1).unwrap(), 4.into());
        assert!(matches!(count_order_k(&a, 0), Err(Error::InvalidOrder(0))));
    }

    #[test]
    fn vector_iteration_matches_matrix_power() {
        for family in [Family::A, Family::B] {
            for n in 3..=9 {
                let space = build_space(n, family).unwrap();
                let terms = count_terms(&space, 40);
                for k in 1..=40 {
                    let q = CountQuery::new(&space, k).unwrap();
                    let by_power = q.by_matrix_power();
                    assert_eq!(by_power, q.by_vector_iteration().iter().sum::<BigInt>());
                    assert_eq!(by_power, terms[k - 1]);
                }
            }
        }
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&a3()).unwrap(),
            IntPolynomial::from_i64(&[0, -1, -1, 1])
        );
        assert_eq!(
            char_poly(&b3()).unwrap(),
            IntPolynomial::from_i64(&[0, 0, 0, -2, 1])
        );
        assert_eq!(
            char_poly(&IntMatrix::identity(2)).unwrap(),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
        assert_eq!(
            char_poly(&IntMatrix::zeros(0)).unwrap(),
            IntPolynomial::one()
        );
    }

    #[test]
    fn char_poly_is_monic() {
        for family in [Family::A, Family::B] {
            for n in 3..=12 {
                let m = adjacency_matrix(&build_space(n, family).unwrap()).into_matrix();
                let p = char_poly(&m).unwrap();
                assert_eq!(p.degree(), Some(m.order()));
                assert!(p.leading().unwrap().is_one());
            }
        }
    }

    #[test]
    fn cayley_hamilton() {
        for family in [Family::A, Family::B] {
            for n in 3..=10 {
                let m = adjacency_matrix(&build_space(n, family).unwrap()).into_matrix();
                let p = char_poly(&m).unwrap();
                assert!(p.eval_matrix(&m).is_zero(), "{family} n={n}");
            }
        }
    }

    #[test]
    fn counts_positive_and_nondecreasing() {
        let b = build_space(3, Family::B).unwrap();
        let terms = count_terms(&b, 60);
        assert!(terms.windows(2).all(|w| w[0] <= w[1]));
        for family in [Family::A, Family::B] {
            for n in 3..=10 {
                let space = build_space(n, family).unwrap();
                assert!(count_terms(&space, 30).iter().all(Signed::is_positive));
            }
        }
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(
            IntPolynomial::from_i64(&[0, 0, 0, -2, 1]).to_string(),
            "λ^4 - 2λ^3"
        );
        assert_eq!(
            IntPolynomial::from_i64(&[0, -1, -1, 1]).to_string(),
            "λ^3 - λ^2 - λ"
        );
        assert_eq!(IntPolynomial::from_i64(&[-7, 1]).to_string(), "λ - 7");
        assert_eq!(IntPolynomial::from_i64(&[3]).to_string(), "3");
        assert_eq!(IntPolynomial::from_i64(&[0, 0, -1]).to_string(), "-λ^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn polynomial_arithmetic() {
        let p = IntPolynomial::from_i64(&[1, 1]);
        let q = IntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(&p * &q, IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(&p - &p, IntPolynomial::zero());
        assert_eq!(p.shift(2), IntPolynomial::from_i64(&[0, 0, 1, 1]));
        assert_eq!(p.eval(&BigInt::from(5)), 6.into());
        assert_eq!(IntPolynomial::from_i64(&[0, 0, 3, 1]).lambda_valuation(), 2);
    }
}
