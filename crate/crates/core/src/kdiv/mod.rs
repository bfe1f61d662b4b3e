//! K-theoretic Seiberg-Witten invariants through their Chern characters, and
//! the divisibility they force on the ordinary invariants.
//!
//! The coefficients `a_{p,l}` of `log(1-y)^p = sum_l a_{p,l} y^{p+l}` carry
//! the arithmetic: over a point, or on the top cell of an even sphere, the
//! K-theoretic invariants are integers, and the difference operator turns
//! that into divisibility of `SW` by the denominators of `a_{p,l}`.

mod kclass;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::binom::binom;
use crate::charclass::{todd_series, ClassError};
use crate::gring::{fmt_rational, RationalSeries, RingError};
use crate::steenrod::SteenrodError;

pub use kclass::{
    ch_swk, k_wall_difference, s_m_class, s_m_class_untwisted, sym_series, verify_sym_pushforward, KClass, SymPushReport,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KdivError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Ledger(#[from] SteenrodError),
    #[error("K-theory classes need a rational ring")]
    NonRationalRing,
    #[error("n({d},{m},{p}): closed form {closed} but residue {residue}")]
    RouteDisagreement { d: i64, m: i64, p: i64, closed: String, residue: String },
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `log(1-y)^p` from `y^p` up to `y^{p+count-1}`; `p` may be negative.
pub fn a_coeffs(p: i64, count: usize) -> Result<RationalSeries, KdivError> {
    if count == 0 {
        return Err(KdivError::BadRange("count must be positive".into()));
    }
    let n = count as i64 - 1;
    // log(1-y) / y = -sum y^k / (k+1)
    let g = RationalSeries::rational("y", 0, (0..=n).map(|k| -BigRational::new(BigInt::one(), BigInt::from(k + 1))).collect(), n);
    Ok(g.powi(p)?.shift(p))
}

/// `a_{p,l}`.
pub fn a_coeff(p: i64, l: usize) -> Result<BigRational, KdivError> {
    Ok(a_coeffs(p, l + 1)?.coeff(p + l as i64))
}

/// `c_{j,d}`, the coefficient of `x^j` in `(x / (1 - e^{-x}))^d`.
pub fn todd_coeff(d: i64, j: i64) -> Result<BigRational, KdivError> {
    if j < 0 {
        return Err(KdivError::BadRange(format!("j = {j} is negative")));
    }
    Ok(todd_series(j).powi(d)?.coeff(j))
}

/// `(-1)^p sum_{l=0}^{d-p-1} a_{p,l} binom(m+d-p-l-1, m)`.
pub fn n_dmp_closed(d: i64, m: i64, p: i64) -> Result<BigRational, KdivError> {
    check_ndmp(d, m, p)?;
    let n = d - p - 1;
    let a = a_coeffs(p, (n + 1) as usize)?;
    let mut acc = BigRational::zero();
    for l in 0..=n {
        acc += a.coeff(p + l) * BigRational::from_integer(binom(m + n - l, m));
    }
    Ok(if p % 2 == 0 { acc } else { -acc })
}

/// Residue at `x = 0` of `x^p e^{mx} / (1 - e^{-x})^d`.
pub fn n_dmp_residue(d: i64, m: i64, p: i64) -> Result<BigRational, KdivError> {
    check_ndmp(d, m, p)?;
    let t = d + 2;
    let mut fact = BigInt::one();
    let mut coeffs = vec![BigRational::zero()];
    for k in 1..=t {
        fact *= BigInt::from(k);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        coeffs.push(BigRational::new(BigInt::from(sign), fact.clone()));
    }
    let one_minus = RationalSeries::rational("x", 0, coeffs, t);
    let f = one_minus.powi(-d)?.shift(p).mul(&RationalSeries::exp_linear("x", &q(m), t));
    debug_assert!(f.trunc() >= -1);
    Ok(f.coeff(-1))
}

fn check_ndmp(d: i64, m: i64, p: i64) -> Result<(), KdivError> {
    if d < 1 || p < 0 || p >= d || m < 0 {
        return Err(KdivError::BadRange(format!("need d >= 1, 0 <= p < d, m >= 0; got d={d}, m={m}, p={p}")));
    }
    Ok(())
}

/// `n(d, m, p)` by both routes; they must agree.
pub fn n_dmp(d: i64, m: i64, p: i64) -> Result<BigRational, KdivError> {
    let closed = n_dmp_closed(d, m, p)?;
    let residue = n_dmp_residue(d, m, p)?;
    if closed != residue {
        return Err(KdivError::RouteDisagreement {
            d,
            m,
            p,
            closed: fmt_rational(&closed),
            residue: fmt_rational(&residue),
        });
    }
    Ok(closed)
}

/// Denominators of `a_{p,l}` for `l = 0..=n`, `n = d - p - 1`, and the
/// finite-difference table of `q(m) = (-1)^p sum_l a_{p,n-l} binom(m+l, l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityLedger {
    /// Sphere `S^{2r}`; `None` for a point.
    pub r: Option<i64>,
    pub d: i64,
    pub p: i64,
    /// `p - r` on a sphere, `p` on a point.
    pub p_eff: i64,
    pub n: i64,
    pub coefficients: Vec<BigRational>,
    pub denominators: Vec<BigInt>,
    pub lcm: BigInt,
    /// Row `k` holds `Delta^k q(m)` for `m = 0..=n+1-k`.
    pub delta_table: Vec<Vec<BigRational>>,
}

impl DivisibilityLedger {
    /// `Delta^{n+1} q = 0` and `Delta^n q = (-1)^p a_{p,0}`.
    pub fn certificate_holds(&self) -> bool {
        let n = self.n as usize;
        let sign = if self.p_eff % 2 == 0 { 1 } else { -1 };
        let top = &self.coefficients[0] * q(sign);
        self.delta_table[n + 1].iter().all(Zero::is_zero) && self.delta_table[n].iter().all(|x| *x == top)
    }

    /// True when `sw` is divisible by every denominator.
    pub fn admits(&self, sw: &BigInt) -> bool {
        (sw % &self.lcm).is_zero()
    }

    pub fn to_json(&self) -> Value {
        let r = |x: &BigRational| fmt_rational(x);
        let i = |x: &BigInt| fmt_rational(&BigRational::from_integer(x.clone()));
        let mut v = json!({
            "d": self.d,
            "p": self.p,
            "n": self.n,
            "coefficients": self.coefficients.iter().map(r).collect::<Vec<_>>(),
            "denominators": self.denominators.iter().map(i).collect::<Vec<_>>(),
            "lcm": i(&self.lcm),
            "delta_table": self.delta_table.iter().map(|row| row.iter().map(r).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "certificate": self.certificate_holds(),
        });
        if let Some(rr) = self.r {
            v["r"] = json!(rr);
            v["p_eff"] = json!(self.p_eff);
        }
        v
    }
}

fn build_ledger(r: Option<i64>, d: i64, p: i64, p_eff: i64) -> Result<DivisibilityLedger, KdivError> {
    let n = d - p_eff - 1;
    if n < 0 {
        return Err(KdivError::BadRange(format!("n = {n} is negative")));
    }
    let a = a_coeffs(p_eff, (n + 1) as usize)?;
    let coefficients: Vec<BigRational> = (0..=n).map(|l| a.coeff(p_eff + l)).collect();
    let denominators: Vec<BigInt> = coefficients.iter().map(|c| c.denom().clone()).collect();
    let lcm = denominators.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    let sign = if p_eff % 2 == 0 { q(1) } else { q(-1) };
    let qm = |m: i64| -> BigRational {
        let s: BigRational = (0..=n)
            .map(|l| &coefficients[(n - l) as usize] * BigRational::from_integer(binom(m + l, l)))
            .sum();
        s * &sign
    };
    let mut table = vec![(0..=n + 1).map(qm).collect::<Vec<_>>()];
    for _ in 0..=n {
        let prev = table.last().expect("nonempty");
        let next = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
        table.push(next);
    }
    Ok(DivisibilityLedger { r, d, p, p_eff, n, coefficients, denominators, lcm, delta_table: table })
}

/// Point base, `b+ = 2p + 1`, `n = d - p - 1 >= 0`.
pub fn divisibility_ledger(d: i64, p: i64) -> Result<DivisibilityLedger, KdivError> {
    build_ledger(None, d, p, p)
}

/// Base `S^{2r}`: `SW_n` with `n = r + d - p - 1` against `a_{p-r,l}`.
pub fn divisibility_ledger_sphere(r: i64, d: i64, p: i64) -> Result<DivisibilityLedger, KdivError> {
    if r < 0 {
        return Err(KdivError::BadRange(format!("r = {r} is negative")));
    }
    build_ledger(Some(r), d, p, p - r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::rat;

    #[test]
    fn a_small() {
        let a1 = a_coeffs(1, 3).unwrap();
        assert_eq!((a1.coeff(1), a1.coeff(2), a1.coeff(3)), (rat(-1, 1), rat(-1, 2), rat(-1, 3)));
        let a2 = a_coeffs(2, 3).unwrap();
        assert_eq!((a2.coeff(2), a2.coeff(3), a2.coeff(4)), (rat(1, 1), rat(1, 1), rat(11, 12)));
        let a0 = a_coeffs(0, 4).unwrap();
        assert_eq!((0..4).map(|k| a0.coeff(k)).collect::<Vec<_>>(), vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(a_coeff(-1, 0).unwrap(), rat(-1, 1));
        assert!(a_coeffs(1, 0).is_err());
    }

    #[test]
    fn todd_coefficients() {
        assert_eq!(todd_coeff(1, 1).unwrap(), rat(1, 2));
        assert_eq!(todd_coeff(1, 2).unwrap(), rat(1, 12));
        assert_eq!(todd_coeff(5, 0).unwrap(), rat(1, 1));
    }

    #[test]
    fn ndmp_values() {
        assert_eq!(n_dmp(3, 2, 1).unwrap(), rat(7, 2));
        assert_eq!(n_dmp(1, 7, 0).unwrap(), rat(1, 1));
        assert_eq!(n_dmp(4, 3, 0).unwrap(), rat(20, 1));
        assert!(matches!(n_dmp(2, 0, 2), Err(KdivError::BadRange(_))));
        assert!(matches!(n_dmp(2, -1, 0), Err(KdivError::BadRange(_))));
    }

    #[test]
    fn ledgers() {
        let l = divisibility_ledger(3, 1).unwrap();
        assert_eq!(l.denominators, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(l.lcm, BigInt::from(2));
        assert!(l.certificate_holds());
        assert!(l.admits(&BigInt::from(4)) && !l.admits(&BigInt::from(3)));
        let l = divisibility_ledger(4, 1).unwrap();
        assert!(l.denominators.contains(&BigInt::from(3)));
        let l = divisibility_ledger(3, 0).unwrap();
        assert!(l.denominators.iter().all(|x| x.is_one()));
        for (m, v) in l.delta_table[0].iter().enumerate() {
            assert_eq!(*v, BigRational::from_integer(binom(m as i64 + 2, m as i64)));
        }
        assert!(l.delta_table[3].iter().all(Zero::is_zero));
        let s = divisibility_ledger_sphere(5, 2, 3).unwrap();
        assert_eq!((s.p_eff, s.n), (-2, 3));
        assert!(s.certificate_holds());
        assert_eq!(s.to_json()["r"], json!(5));
        assert!(divisibility_ledger(1, 1).is_err());
    }
}
