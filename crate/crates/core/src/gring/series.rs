//! Truncated Laurent series with coefficients in a ring.
//!
//! A series stores the coefficients of `t^min_power, ..., t^trunc`. Every
//! operation tracks how far its result is known and shrinks `trunc`
//! accordingly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Element, RingError};

/// What a series needs from its coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn sub_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
    fn scale_c(&self, q: &BigRational) -> Result<Self, RingError>;
    fn unit_inverse(&self) -> Result<Self, RingError>;
    fn to_text(&self) -> String;
}

impl Coefficient for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_c(&self, q: &BigRational) -> Result<Self, RingError> {
        Ok(self * q)
    }
    fn unit_inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            Err(RingError::NonUnitConstantTerm)
        } else {
            Ok(self.recip())
        }
    }
    fn to_text(&self) -> String {
        super::fmt_rational(self)
    }
}

impl Coefficient for Element {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_c(&self, q: &BigRational) -> Result<Self, RingError> {
        self.scale(q).map_err(|_| RingError::NonRationalCoefficients)
    }
    fn unit_inverse(&self) -> Result<Self, RingError> {
        self.inverse()
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Series<C: Coefficient> {
    pub var: String,
    min_power: i64,
    coeffs: Vec<C>,
    trunc: i64,
    zero: C,
}

pub type RationalSeries = Series<BigRational>;
pub type FormalSeries = Series<Element>;

impl<C: Coefficient> Series<C> {
    /// Series with `coeffs[i]` at `t^(min_power + i)`, known up to `t^trunc`.
    pub fn new(var: &str, min_power: i64, coeffs: Vec<C>, trunc: i64, zero: C) -> Self {
        let mut s = Series { var: var.to_string(), min_power, coeffs, trunc, zero };
        s.coeffs.truncate((trunc - min_power + 1).max(0) as usize);
        s
    }

    /// Power series `sum coeffs[i] t^i`.
    pub fn power(var: &str, coeffs: Vec<C>, trunc: i64, zero: C) -> Self {
        Self::new(var, 0, coeffs, trunc, zero)
    }

    /// The monomial `c t^k`.
    pub fn monomial(var: &str, k: i64, c: C, trunc: i64) -> Self {
        let zero = c.zero_like();
        Self::new(var, k, vec![c], trunc, zero)
    }

    pub fn min_power(&self) -> i64 {
        self.min_power
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    /// Coefficient of `t^k`; zero outside the stored window.
    pub fn coeff(&self, k: i64) -> C {
        let i = k - self.min_power;
        if i < 0 || k > self.trunc {
            return self.zero.clone();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn with_trunc(&self, trunc: i64) -> Self {
        let mut s = self.clone();
        s.trunc = s.trunc.min(trunc);
        s.coeffs.truncate((s.trunc - s.min_power + 1).max(0) as usize);
        s
    }

    /// Drops leading zero coefficients, raising `min_power`.
    fn stripped(&self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero_coeff()).count();
        let mut s = self.clone();
        s.coeffs.drain(..lead);
        s.min_power += lead as i64;
        if s.coeffs.is_empty() {
            s.min_power = s.trunc + 1;
        }
        s
    }

    /// Lowest power with a non-zero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        let s = self.stripped();
        (!s.coeffs.is_empty()).then_some(s.min_power)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a.add_c(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a.sub_c(b))
    }

    fn combine(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let lo = self.min_power.min(o.min_power);
        let hi = self.trunc.min(o.trunc);
        let coeffs = (lo..=hi).map(|k| f(&self.coeff(k), &o.coeff(k))).collect();
        Series::new(&self.var, lo, coeffs, hi, self.zero.clone())
    }

    pub fn scale(&self, q: &BigRational) -> Result<Self, RingError> {
        let coeffs = self.coeffs.iter().map(|c| c.scale_c(q)).collect::<Result<_, _>>()?;
        Ok(Series { coeffs, ..self.clone() })
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.mul_c(c)).collect();
        Series { coeffs, ..self.clone() }
    }

    pub fn shift(&self, k: i64) -> Self {
        Series { min_power: self.min_power + k, trunc: self.trunc + k, ..self.clone() }
    }

    /// Cauchy product.
    pub fn mul(&self, o: &Self) -> Self {
        let a = self.stripped();
        let b = o.stripped();
        let lo = a.min_power + b.min_power;
        let hi = (a.trunc + b.min_power).min(b.trunc + a.min_power);
        let n = (hi - lo + 1).max(0) as usize;
        let mut out = vec![self.zero.clone(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero_coeff() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] = out[i + j].add_c(&x.mul_c(y));
            }
        }
        Series::new(&self.var, lo, out, hi, self.zero.clone())
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn invert(&self) -> Result<Self, RingError> {
        let s = self.stripped();
        let Some(lead) = s.coeffs.first() else {
            return Err(RingError::NonUnitConstantTerm);
        };
        let inv0 = lead.unit_inverse()?;
        let n = (s.trunc - s.min_power + 1).max(0) as usize;
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = self.zero.clone();
            for i in 1..=k.min(s.coeffs.len() - 1) {
                acc = acc.add_c(&s.coeffs[i].mul_c(&out[k - i]));
            }
            out.push(inv0.mul_c(&self.zero.sub_c(&acc)));
        }
        let p = s.min_power;
        Ok(Series::new(&self.var, -p, out, s.trunc - 2 * p, self.zero.clone()))
    }

    /// Exponential of a series with vanishing non-positive part.
    pub fn exp(&self) -> Result<Self, RingError> {
        if (self.min_power..=0.min(self.trunc)).any(|k| !self.coeff(k).is_zero_coeff()) {
            return Err(RingError::NonNilpotentArgument);
        }
        let one = self.zero.one_like();
        let mut acc = Series::new(&self.var, 0, vec![one.clone()], self.trunc, self.zero.clone());
        let mut term = acc.clone();
        for k in 1..=self.trunc.max(0) {
            term = term.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)))?;
            acc = acc.add(&term);
        }
        Ok(acc.with_trunc(self.trunc))
    }

    /// Logarithm of a series with constant term one.
    pub fn log(&self) -> Result<Self, RingError> {
        let one = self.zero.one_like();
        if self.valuation().is_some_and(|v| v < 0) || self.coeff(0) != one {
            return Err(RingError::NonUnitConstantTerm);
        }
        let u = self.sub(&Series::new(&self.var, 0, vec![one], self.trunc, self.zero.clone()));
        let mut acc = Series::new(&self.var, 0, vec![], self.trunc, self.zero.clone());
        let mut term = Series::new(&self.var, 0, vec![self.zero.one_like()], self.trunc, self.zero.clone());
        for k in 1..=self.trunc.max(0) {
            term = term.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&term.scale(&BigRational::new(BigInt::from(sign), BigInt::from(k)))?);
        }
        Ok(acc.with_trunc(self.trunc))
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, n: i64) -> Result<Self, RingError> {
        let base = if n < 0 { self.invert()? } else { self.stripped() };
        let mut e = n.unsigned_abs();
        let one = self.zero.one_like();
        let mut acc = Series::new(&self.var, 0, vec![one], i64::MAX / 4, self.zero.clone());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        if acc.trunc >= i64::MAX / 8 {
            acc.trunc = self.trunc;
            acc.coeffs.truncate((acc.trunc - acc.min_power + 1).max(0) as usize);
        }
        Ok(acc)
    }

    /// Replaces `t` by `c t` for a rational `c`.
    pub fn dilate(&self, c: &BigRational) -> Result<Self, RingError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, x) in self.coeffs.iter().enumerate() {
            let k = self.min_power + i as i64;
            coeffs.push(x.scale_c(&rational_pow(c, k))?);
        }
        Ok(Series { coeffs, ..self.clone() })
    }

    pub fn map<D: Coefficient>(&self, zero: D, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            var: self.var.clone(),
            min_power: self.min_power,
            coeffs: self.coeffs.iter().map(f).collect(),
            trunc: self.trunc,
            zero,
        }
    }
}

pub(crate) fn rational_pow(c: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(c.clone(), k as usize)
    } else {
        num_traits::pow(c.recip(), (-k) as usize)
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_coeff() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}){}^{}", c.to_text(), self.var, self.min_power + i as i64)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.trunc + 1)
    }
}

impl RationalSeries {
    pub fn rational(var: &str, min_power: i64, coeffs: Vec<BigRational>, trunc: i64) -> Self {
        Series::new(var, min_power, coeffs, trunc, BigRational::zero())
    }

    /// `exp(c t)` up to `t^trunc`.
    pub fn exp_linear(var: &str, c: &BigRational, trunc: i64) -> Self {
        let mut coeffs = Vec::new();
        let mut term = BigRational::one();
        for k in 0..=trunc.max(0) {
            if k > 0 {
                term = term * c / BigRational::from_integer(BigInt::from(k));
            }
            coeffs.push(term.clone());
        }
        Self::rational(var, 0, coeffs, trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::{rat, CoeffRing, Ring};

    fn r(n: i64) -> BigRational {
        rat(n, 1)
    }

    #[test]
    fn geometric_inverse() {
        let s = RationalSeries::rational("t", 0, vec![r(1), r(-1)], 6);
        let inv = s.invert().unwrap();
        for k in 0..=6 {
            assert_eq!(inv.coeff(k), r(1));
        }
        assert_eq!(inv.trunc(), 6);
    }

    #[test]
    fn laurent_inverse() {
        let s = RationalSeries::rational("y", 1, vec![r(2), r(4)], 5);
        let inv = s.invert().unwrap();
        assert_eq!(inv.min_power(), -1);
        assert_eq!(inv.coeff(-1), rat(1, 2));
        assert_eq!(inv.coeff(0), r(-1));
        let prod = s.mul(&inv);
        assert_eq!(prod.coeff(0), r(1));
        for k in 1..=prod.trunc() {
            assert_eq!(prod.coeff(k), r(0));
        }
    }

    #[test]
    fn exp_log_inverse() {
        let x = RationalSeries::rational("t", 1, vec![r(1), rat(1, 3), r(-2)], 7);
        let back = x.exp().unwrap().log().unwrap();
        for k in 0..=7 {
            assert_eq!(back.coeff(k), x.coeff(k));
        }
        assert!(RationalSeries::rational("t", 0, vec![r(1)], 4).exp().is_err());
    }

    #[test]
    fn element_series_inverse() {
        let ring = Ring::free(CoeffRing::Integers, &[("c1", 2)], 12).unwrap();
        let c1 = ring.gen("c1").unwrap();
        let s = FormalSeries::power("t", vec![ring.one(), c1.clone()], 3, ring.zero());
        let inv = s.invert().unwrap();
        assert_eq!(inv.coeff(1), -&c1);
        assert_eq!(inv.coeff(2), c1.pow(2));
        assert_eq!(inv.coeff(3), -&c1.pow(3));
    }

    #[test]
    fn powers() {
        let s = RationalSeries::rational("t", 0, vec![r(1), r(1)], 5);
        let sq = s.powi(2).unwrap();
        assert_eq!((0..=3).map(|k| sq.coeff(k)).collect::<Vec<_>>(), vec![r(1), r(2), r(1), r(0)]);
        let inv2 = s.powi(-2).unwrap();
        assert_eq!(inv2.coeff(3), r(-4));
        assert_eq!(s.powi(0).unwrap().coeff(0), r(1));
    }
}
