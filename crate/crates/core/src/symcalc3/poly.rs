use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Exponents = [u32; 3];

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sparse polynomial in `x1, x2, x3` with exact rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms and
/// structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly3 {
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, [0, 0, 0])
    }

    /// The coordinate `x_{i+1}` (`i` is 0-based).
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::term(Rational::one(), e)
    }

    pub fn term(c: Rational, exponents: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, c);
        p
    }

    /// Integer-coefficient polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms(terms: &[(i64, Exponents)]) -> Self {
        let mut p = Self::zero();
        for &(c, e) in terms {
            p.add_term(e, Rational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, exponents: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponents).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// `∂/∂x_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &p) in point.iter().zip(e) {
                for _ in 0..p {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                c * point[0].powi(e[0] as i32)
                    * point[1].powi(e[1] as i32)
                    * point[2].powi(e[2] as i32)
            })
            .sum()
    }
}

impl Add for &Poly3 {
    type Output = Poly3;

    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;

    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;

    fn neg(self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;

    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = e.iter().all(|&p| p == 0);
            if constant || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "x{}", i + 1)?,
                    _ => write!(f, "x{}^{p}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Vector field `(f1, f2, f3)` with polynomial components.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct VecField3 {
    pub components: [Poly3; 3],
}

impl VecField3 {
    pub fn new(f1: Poly3, f2: Poly3, f3: Poly3) -> Self {
        Self {
            components: [f1, f2, f3],
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly3::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            components: self.components.clone().map(|c| c.scale(k)),
        }
    }

    pub fn component(&self, i: usize) -> &Poly3 {
        &self.components[i]
    }
}

impl Add for &VecField3 {
    type Output = VecField3;

    fn add(self, rhs: &VecField3) -> VecField3 {
        VecField3::new(
            &self.components[0] + &rhs.components[0],
            &self.components[1] + &rhs.components[1],
            &self.components[2] + &rhs.components[2],
        )
    }
}

impl fmt::Display for VecField3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "({a}, {b}, {c})")
    }
}

/// Direction `e` of the Gateaux derivative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction {
    pub e: [Rational; 3],
    pub unit_checked: bool,
}

impl Direction {
    /// Requires `e1² + e2² + e3² = 1` exactly.
    pub fn unit(e: [Rational; 3]) -> Result<Self> {
        let norm: Rational = e.iter().map(|x| x * x).sum();
        if !norm.is_one() {
            return Err(Error::InvalidDirection(format_triple(&e)));
        }
        Ok(Self {
            e,
            unit_checked: true,
        })
    }

    /// Any nonzero vector; every identity checked here is homogeneous in `e`.
    pub fn relaxed(e: [Rational; 3]) -> Result<Self> {
        if e.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            e,
            unit_checked: false,
        })
    }

    pub fn axis(i: usize) -> Self {
        let mut e = [Rational::zero(), Rational::zero(), Rational::zero()];
        e[i] = Rational::one();
        Self {
            e,
            unit_checked: true,
        }
    }

    /// Parses `"3/5,4/5,0"`.
    pub fn parse(s: &str, strict: bool) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidDirection(s.to_owned()));
        }
        let mut e = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (slot, p) in e.iter_mut().zip(&parts) {
            *slot = p
                .parse::<Rational>()
                .map_err(|_| Error::InvalidDirection(s.to_owned()))?;
        }
        if strict {
            Self::unit(e)
        } else {
            Self::relaxed(e)
        }
    }
}

fn format_triple(e: &[Rational; 3]) -> String {
    format!("({}, {}, {})", e[0], e[1], e[2])
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_triple(&self.e))
    }
}

/// Either kind of field an operation can act on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Field {
    Scalar(Poly3),
    Vector(VecField3),
}

impl Field {
    pub fn kind(&self) -> &'static str {
        match self {
            Field::Scalar(_) => "scalar",
            Field::Vector(_) => "vector",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Field::Scalar(p) => p.is_zero(),
            Field::Vector(v) => v.is_zero(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Scalar(p) => p.fmt(f),
            Field::Vector(v) => v.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut p = Poly3::from_terms(&[(2, [1, 0, 0]), (-2, [1, 0, 0])]);
        assert!(p.is_zero());
        p.add_term([0, 1, 0], rational(0, 1));
        assert_eq!(p.num_terms(), 0);
        let x = Poly3::var(0);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = Poly3::var(0);
        let y = Poly3::var(1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, Poly3::from_terms(&[(1, [2, 0, 0]), (-1, [0, 2, 0])]));
        let pt = [rational(1, 2), rational(3, 1), rational(7, 1)];
        assert_eq!(p.eval(&pt), rational(1, 4) - rational(9, 1));
        assert!((p.eval_f64([0.5, 3.0, 7.0]) - (-8.75)).abs() < 1e-12);
    }

    #[test]
    fn partials() {
        let p = Poly3::from_terms(&[(3, [2, 1, 0]), (1, [0, 0, 4]), (5, [0, 0, 0])]);
        assert_eq!(p.partial(0), Poly3::from_terms(&[(6, [1, 1, 0])]));
        assert_eq!(p.partial(1), Poly3::from_terms(&[(3, [2, 0, 0])]));
        assert_eq!(p.partial(2), Poly3::from_terms(&[(4, [0, 0, 3])]));
        assert!(Poly3::constant(rational(7, 3)).partial(1).is_zero());
    }

    #[test]
    fn display() {
        let p = Poly3::from_terms(&[(2, [2, 0, 0]), (-1, [0, 1, 1]), (1, [0, 0, 0])]);
        assert_eq!(p.to_string(), "2x1^2 - x2x3 + 1");
        assert_eq!(
            Poly3::term(rational(-1, 2), [0, 0, 1]).to_string(),
            "-1/2x3"
        );
        assert_eq!(Poly3::zero().to_string(), "0");
    }

    #[test]
    fn directions() {
        assert!(Direction::unit([rational(3, 5), rational(4, 5), rational(0, 1)]).is_ok());
        assert!(matches!(
            Direction::unit([rational(1, 1), rational(1, 1), rational(0, 1)]),
            Err(Error::InvalidDirection(_))
        ));
        let relaxed = Direction::relaxed([rational(1, 1), rational(1, 1), rational(0, 1)]).unwrap();
        assert!(!relaxed.unit_checked);
        assert!(matches!(
            Direction::relaxed(Direction::axis(0).e.map(|_| rational(0, 1))),
            Err(Error::ZeroDirection)
        ));
        let d = Direction::parse("2/3, 2/3, 1/3", true).unwrap();
        assert_eq!(d.e[2], rational(1, 3));
        assert!(Direction::parse("1,1", false).is_err());
        assert!(Direction::parse("1,1,1", true).is_err());
        assert!(Direction::parse("1,1,1", false).is_ok());
    }
}
