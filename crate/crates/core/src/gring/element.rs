use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CoeffRing, Monomial, Ring, RingError, Terms};

/// An element of a [`Ring`] in normal form.
///
/// The arithmetic operators panic when the operands live in different rings;
/// the `try_*` methods report [`RingError::RingMismatch`] instead.
#[derive(Clone)]
pub struct Element {
    ring: Ring,
    pub(crate) terms: Terms,
}

impl Element {
    pub(crate) fn from_terms(ring: Ring, terms: Terms) -> Self {
        Element { ring, terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.ring.ngens()])
    }

    /// Degree shared by all terms, `None` for zero or mixed-degree elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| self.ring.degree_of(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// True when the element is zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| i64::from(self.ring.degree_of(m)) == d)
    }

    pub fn graded_part(&self, d: u32) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.ring.degree_of(m) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Element::from_terms(self.ring.clone(), terms)
    }

    /// Coefficient of the designated top monomial.
    pub fn top_coefficient(&self) -> Result<BigRational, RingError> {
        let top = self.ring.top_monomial().ok_or(RingError::NoTopMonomial)?;
        Ok(self.coefficient(top))
    }

    fn check(&self, other: &Element) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, RingError> {
        self.check(other)?;
        let mut t = self.terms.clone();
        for (m, c) in &other.terms {
            self.ring.add_raw(&mut t, m.clone(), c.clone());
        }
        Ok(Element::from_terms(self.ring.clone(), t))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, RingError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element, RingError> {
        self.check(other)?;
        let ring = &self.ring;
        let mut t = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = ring.mul_raw(ma, mb) {
                    let mut c = ca * cb;
                    if neg {
                        c = -c;
                    }
                    ring.reduce_into(m, c, &mut t);
                }
            }
        }
        Ok(Element::from_terms(ring.clone(), t))
    }

    /// Multiplies by a rational scalar, which must lie in the coefficient ring.
    pub fn scale(&self, q: &BigRational) -> Result<Element, RingError> {
        let coeff = self.ring.coeff();
        let mut t = Terms::new();
        for (m, c) in &self.terms {
            let v = coeff.normalize(c * q)?;
            self.ring.add_raw(&mut t, m.clone(), v);
        }
        Ok(Element::from_terms(self.ring.clone(), t))
    }

    pub fn scale_int(&self, n: i64) -> Element {
        self.scale(&BigRational::from_integer(BigInt::from(n))).expect("integers lie in every coefficient ring")
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of an element whose constant term is a unit.
    pub fn inverse(&self) -> Result<Element, RingError> {
        let c0 = self.constant_term();
        if !self.ring.coeff().is_unit(&c0) {
            return Err(RingError::NonUnitConstantTerm);
        }
        let inv0 = self.ring.scalar(&c0.recip())?;
        let nil = &self.ring.one() - &(self * &inv0);
        // u^{-1} = inv0 * (1 + n + n^2 + ...) where u * inv0 = 1 - n.
        let mut acc = self.ring.one();
        let mut p = self.ring.one();
        loop {
            p = &p * &nil;
            if p.is_zero() {
                break;
            }
            acc = &acc + &p;
        }
        Ok(&acc * &inv0)
    }

    /// Exponential of an element with vanishing constant term.
    pub fn exp(&self) -> Result<Element, RingError> {
        if self.ring.coeff() != CoeffRing::Rationals {
            return Err(RingError::NonRationalCoefficients);
        }
        if !self.constant_term().is_zero() {
            return Err(RingError::NonNilpotentArgument);
        }
        let mut acc = self.ring.one();
        let mut p = self.ring.one();
        let mut k = 0i64;
        loop {
            k += 1;
            p = (&p * self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)))?;
            if p.is_zero() {
                break;
            }
            acc = &acc + &p;
        }
        Ok(acc)
    }

    /// Largest degree occurring, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.degree_of(m)).max()
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.generator_names();
        let sep = if names.iter().all(|n| n.len() == 1) { "" } else { "*" };
        let mut order: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        order.sort_by(|(a, _), (b, _)| {
            self.ring.degree_of(a).cmp(&self.ring.degree_of(b)).then_with(|| b.cmp(a))
        });
        for (i, (m, c)) in order.into_iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { "-" } else { "+" })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            let mono: Vec<String> = m
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono.join(sep))?;
            } else {
                write!(f, "{a}*{}", mono.join(sep))?;
            }
        }
        Ok(())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let ring = self.ring.clone();
        let mod2 = ring.coeff() == CoeffRing::Mod2;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), if mod2 { c.clone() } else { -c }))
            .collect();
        Element::from_terms(ring, terms)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$try(rhs).expect("operands live in different rings")
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$try(&rhs).expect("operands live in different rings")
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$try(rhs).expect("operands live in different rings")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
