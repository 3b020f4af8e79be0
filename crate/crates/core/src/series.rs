//! Exact rationals and truncated univariate power series over them.
//!
//! A [`PowerSeries`] of order `D` stores the coefficients of `q^0..=q^D`.
//! Binary operations return the smaller of the two orders; the unary analytic
//! operations (`invert`, `log_unit`, `exp_nilconst`, ...) preserve the order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least q^0");
        Self { coeffs }
    }

    /// Coefficients `q^0..` padded with zeros (or truncated) to `order`.
    pub fn from_coeffs(coeffs: &[Rational], order: usize) -> Self {
        let mut v: Vec<Rational> = coeffs.iter().take(order + 1).cloned().collect();
        v.resize(order + 1, Rational::zero());
        Self { coeffs: v }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        let v: Vec<Rational> = coeffs.iter().map(|&c| int(c)).collect();
        Self::from_coeffs(&v, order)
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c q^degree`, or zero when `degree > order`.
    pub fn monomial(c: Rational, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The series `q`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `q^d`; zero for `d` beyond the order.
    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn set_coeff(&mut self, d: usize, c: Rational) {
        self.coeffs[d] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(&self.coeffs, order)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for d in k..=order {
            out.coeffs[d] = self.coeffs[d - k].clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|d| &self.coeffs[d] + &other.coeffs[d])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|d| &self.coeffs[d] - &other.coeffs[d])
                .collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, exponent: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, `mul(a, invert(a)) = 1` to truncation.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut out = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for d in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=d {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out[d - k];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// `q d/dq`: the coefficient of `q^d` becomes `d c_d`.
    pub fn qddq(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| c * int(d as i64))
                .collect(),
        }
    }

    /// `∫_0^q a(x)/x dx` for zero-constant `a`; inverse of [`qddq`](Self::qddq).
    pub fn integrate_over_x(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant(self.coeffs[0].to_string()));
        }
        let mut out = self.coeffs.clone();
        for (d, c) in out.iter_mut().enumerate().skip(1) {
            *c = &*c / int(d as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// `log a` for a series with constant term 1; computed as the primitive of
    /// `qddq(a) / a`.
    pub fn log_unit(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotUnitOne(self.coeffs[0].to_string()));
        }
        let quotient = self.qddq().mul(&self.invert()?);
        quotient.integrate_over_x()
    }

    /// `exp a` for a series with zero constant term.
    pub fn exp_nilconst(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant(self.coeffs[0].to_string()));
        }
        // d e_d = sum_{k=1}^{d} k a_k e_{d-k}
        let order = self.order();
        let mut out = Vec::with_capacity(order + 1);
        out.push(Rational::one());
        for d in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=d {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * int(k as i64) * &out[d - k];
                }
            }
            out.push(acc / int(d as i64));
        }
        Ok(Self { coeffs: out })
    }

    /// `a^alpha := exp(alpha log a)` for a series with constant term 1.
    pub fn pow_rational(&self, alpha: &Rational) -> Result<Self> {
        self.log_unit()?.scale(alpha).exp_nilconst()
    }

    /// `a(inner(q))` for `inner` with zero constant term, truncated at the
    /// smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant(inner.coeffs[0].to_string()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeff(order), order);
        for d in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[d];
        }
        Ok(acc)
    }

    /// `sum_d c_d q^d e^{d g(q)}`, i.e. `a` evaluated at `q e^{g(q)}`.
    pub fn substitute_qexp(&self, g: &Self) -> Result<Self> {
        let argument = g.exp_nilconst()?.shift(1);
        self.compose(&argument)
    }

    /// Compositional inverse `b` with `a(b(Q)) = Q`, by Lagrange inversion:
    /// `b_k = (1/k) [x^{k-1}] (x / a(x))^k`.
    pub fn reversion(&self) -> Result<Self> {
        let order = self.order();
        if order < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotReversible);
        }
        // a(x)/x, known to order - 1
        let reduced = Self::new(self.coeffs[1..].to_vec());
        let phi = reduced.invert()?;
        let mut out = Self::zero(order);
        let mut power = Self::one(order - 1);
        for k in 1..=order {
            power = power.mul(&phi);
            out.coeffs[k] = power.coeffs[k - 1].clone() / int(k as i64);
        }
        Ok(out)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if d == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{d}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&PowerSeries> for &PowerSeries {
            type Output = PowerSeries;
            fn $method(self, rhs: &PowerSeries) -> PowerSeries {
                PowerSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[Rational]) -> PowerSeries {
        PowerSeries::new(c.to_vec())
    }

    #[test]
    fn add_examples() {
        let a = PowerSeries::from_i64s(&[1, 1], 3);
        let b = PowerSeries::from_i64s(&[1, -1], 3);
        assert_eq!(&a + &b, PowerSeries::from_i64s(&[2], 3));
        let f = PowerSeries::from_i64s(&[0, 4, 18], 2);
        assert_eq!(&PowerSeries::zero(2) + &f, f);
        let g = PowerSeries::from_i64s(&[0, 0, 1], 2);
        assert_eq!(&f + &g, PowerSeries::from_i64s(&[0, 4, 19], 2));
    }

    #[test]
    fn binary_ops_take_min_order() {
        let a = PowerSeries::from_i64s(&[1, 2, 3, 4], 3);
        let b = PowerSeries::from_i64s(&[1, 1], 1);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!((&a * &b).order(), 1);
    }

    #[test]
    fn mul_examples() {
        let a = PowerSeries::from_i64s(&[1, 1], 4);
        let b = PowerSeries::from_i64s(&[1, -1], 4);
        assert_eq!(&a * &b, PowerSeries::from_i64s(&[1, 0, -1], 4));
        let q = PowerSeries::variable(4);
        assert_eq!(&q * &q, PowerSeries::from_i64s(&[0, 0, 1], 4));
        assert_eq!(&PowerSeries::one(4) * &a, a);
    }

    #[test]
    fn invert_examples() {
        let a = PowerSeries::from_i64s(&[1, -1], 4);
        assert_eq!(
            a.invert().unwrap(),
            PowerSeries::from_i64s(&[1, 1, 1, 1, 1], 4)
        );
        assert_eq!(PowerSeries::one(3).invert().unwrap(), PowerSeries::one(3));
        assert_eq!(
            PowerSeries::from_i64s(&[2], 3).invert().unwrap(),
            PowerSeries::constant(rat(1, 2), 3)
        );
        assert_eq!(
            PowerSeries::variable(3).invert(),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn log_examples() {
        assert!(PowerSeries::one(5).log_unit().unwrap().is_zero());
        let c1 = PowerSeries::from_i64s(&[1, 4, 36, 400], 3);
        assert_eq!(
            c1.log_unit().unwrap(),
            s(&[int(0), int(4), int(28), rat(832, 3)])
        );
        let disc = PowerSeries::from_i64s(&[1, -16], 3);
        assert_eq!(
            disc.log_unit().unwrap(),
            s(&[int(0), int(-16), int(-128), rat(-4096, 3)])
        );
        assert!(matches!(
            PowerSeries::from_i64s(&[2, 1], 3).log_unit(),
            Err(Error::NotUnitOne(_))
        ));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            PowerSeries::zero(4).exp_nilconst().unwrap(),
            PowerSeries::one(4)
        );
        // q^3: 400/3 + (2*4*18)/2 + 4^3/6 = 216
        let i1 = s(&[int(0), int(4), int(18), rat(400, 3)]);
        assert_eq!(
            i1.exp_nilconst().unwrap(),
            PowerSeries::from_i64s(&[1, 4, 26, 216], 3)
        );
        let disc = PowerSeries::from_i64s(&[1, -16], 6);
        assert_eq!(disc.log_unit().unwrap().exp_nilconst().unwrap(), disc);
        assert!(matches!(
            PowerSeries::one(2).exp_nilconst(),
            Err(Error::NonzeroConstant(_))
        ));
    }

    #[test]
    fn qddq_examples() {
        assert_eq!(PowerSeries::variable(3).qddq(), PowerSeries::variable(3));
        assert!(PowerSeries::constant(int(7), 3).qddq().is_zero());
        let i1 = s(&[int(0), int(4), int(18), rat(400, 3)]);
        assert_eq!(i1.qddq(), PowerSeries::from_i64s(&[0, 4, 36, 400], 3));
    }

    #[test]
    fn integrate_examples() {
        let f = PowerSeries::from_i64s(&[0, 2], 3);
        assert_eq!(f.integrate_over_x().unwrap(), f);
        assert!(PowerSeries::zero(3).integrate_over_x().unwrap().is_zero());
        let g = PowerSeries::from_i64s(&[5, 3, -7, 11], 3);
        let back = g.qddq().integrate_over_x().unwrap();
        assert_eq!(back, PowerSeries::from_i64s(&[0, 3, -7, 11], 3));
        assert!(g.integrate_over_x().is_err());
    }

    #[test]
    fn substitute_examples() {
        let a = PowerSeries::from_i64s(&[0, 1, 3, -2], 3);
        assert_eq!(a.substitute_qexp(&PowerSeries::zero(3)).unwrap(), a);
        let i1 = s(&[int(0), int(4), int(18), rat(400, 3)]);
        let q = PowerSeries::variable(3);
        let mapped = q.substitute_qexp(&i1).unwrap();
        assert_eq!(mapped, PowerSeries::from_i64s(&[0, 1, 4, 26], 3));
        let q2 = PowerSeries::monomial(int(1), 2, 3);
        assert_eq!(
            q2.substitute_qexp(&i1).unwrap(),
            PowerSeries::from_i64s(&[0, 0, 1, 8], 3)
        );
        assert!(q.substitute_qexp(&PowerSeries::one(3)).is_err());
    }

    #[test]
    fn reversion_examples() {
        let q = PowerSeries::variable(5);
        assert_eq!(q.reversion().unwrap(), q);
        let mirror = PowerSeries::from_i64s(&[0, 1, 4, 26], 3);
        let inv = mirror.reversion().unwrap();
        assert_eq!(inv, PowerSeries::from_i64s(&[0, 1, -4, 6], 3));
        assert_eq!(mirror.compose(&inv).unwrap(), PowerSeries::variable(3));
        let two_q = PowerSeries::from_i64s(&[0, 2], 4);
        assert_eq!(
            two_q.reversion().unwrap(),
            PowerSeries::monomial(rat(1, 2), 1, 4)
        );
        assert_eq!(
            PowerSeries::from_i64s(&[0, 0, 1], 3).reversion(),
            Err(Error::NotReversible)
        );
        assert_eq!(
            PowerSeries::from_i64s(&[1, 1], 3).reversion(),
            Err(Error::NotReversible)
        );
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(2, 2), int(1));
        assert_eq!(binomial(1, 2), int(0));
        assert_eq!(binomial(16, 8), int(12870));
    }

    #[test]
    fn display_is_readable() {
        let f = s(&[int(0), rat(-2, 3), int(1), rat(5, 2)]);
        assert_eq!(f.to_string(), "-2/3*q + q^2 + 5/2*q^3 + O(q^4)");
    }
}
