//! Characteristic classes of (virtual) bundles with values in a [`Ring`].
//!
//! Multiplicative classes are evaluated through formal roots: the logarithm
//! of the defining one-variable series is paired with power sums, which come
//! from the elementary classes by Newton's identities.

mod equivariant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::gring::{CoeffRing, Element, RationalSeries, Ring, RingError};

pub use equivariant::{
    equivariant_chern, equivariant_euler, equivariant_todd, projective_pushforward, EquivariantPoly,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("rank {rank} is too small for a class in degree {index}")]
    RankTooSmall { rank: i64, index: usize },
    #[error("negative rank {0}")]
    NegativeRank(i64),
    #[error("invalid bundle data: {0}")]
    InvalidBundle(String),
}

fn same_ring(ring: &Ring, xs: &[Element]) -> Result<(), ClassError> {
    if xs.iter().all(|x| x.ring() == ring) {
        Ok(())
    } else {
        Err(RingError::RingMismatch.into())
    }
}

/// Checks that `xs[i]` is zero or homogeneous of degree `step * (i + first)`.
pub(crate) fn check_graded(xs: &[Element], step: i64, first: i64, what: &str) -> Result<(), ClassError> {
    for (i, x) in xs.iter().enumerate() {
        let want = step * (i as i64 + first);
        if !x.is_homogeneous_of(want) {
            return Err(ClassError::DegreeMismatch(format!("{what}[{}] is not of degree {want}", i as i64 + first)));
        }
    }
    Ok(())
}

/// Total Chern class data of a complex, possibly virtual, bundle.
///
/// `chern[j - 1]` is `c_j`, of degree `2j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBundleClass {
    ring: Ring,
    pub rank: i64,
    pub chern: Vec<Element>,
}

impl ComplexBundleClass {
    pub fn new(ring: &Ring, rank: i64, mut chern: Vec<Element>) -> Result<Self, ClassError> {
        same_ring(ring, &chern)?;
        while chern.last().is_some_and(|c| c.is_zero()) {
            chern.pop();
        }
        check_graded(&chern, 2, 1, "c")?;
        Ok(ComplexBundleClass { ring: ring.clone(), rank, chern })
    }

    pub fn trivial(ring: &Ring, rank: i64) -> Self {
        ComplexBundleClass { ring: ring.clone(), rank, chern: Vec::new() }
    }

    /// The bundle whose Segre classes are `segre` (`segre[0] = 1`).
    pub fn from_segre(ring: &Ring, rank: i64, segre: &[Element]) -> Result<Self, ClassError> {
        same_ring(ring, segre)?;
        check_graded(segre, 2, 0, "s")?;
        let total = segre.iter().fold(ring.zero(), |a, b| &a + b);
        let c = total.inverse()?;
        let chern = (1..=ring.trunc() / 2).map(|j| c.graded_part(2 * j)).collect();
        Self::new(ring, rank, chern)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `c_j`, with `c_0 = 1` and zero beyond the stored list.
    pub fn c(&self, j: usize) -> Element {
        match j {
            0 => self.ring.one(),
            _ => self.chern.get(j - 1).cloned().unwrap_or_else(|| self.ring.zero()),
        }
    }

    pub fn total_chern(&self) -> Element {
        self.chern.iter().fold(self.ring.one(), |a, b| &a + b)
    }

    /// `[1, c_1, c_2, ...]` up to the truncation.
    pub fn total_chern_list(&self) -> Vec<Element> {
        (0..=self.ring.trunc() as usize / 2).map(|j| self.c(j)).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ClassError> {
        let total = self.total_chern().try_mul(&other.total_chern())?;
        Ok(Self::from_total(&self.ring, self.rank + other.rank, &total))
    }

    /// `self - other` in K-theory.
    pub fn difference(&self, other: &Self) -> Result<Self, ClassError> {
        let total = self.total_chern().try_mul(&other.total_chern().inverse()?)?;
        Ok(Self::from_total(&self.ring, self.rank - other.rank, &total))
    }

    pub fn dual(&self) -> Self {
        let chern = self
            .chern
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { -c } else { c.clone() })
            .collect();
        ComplexBundleClass { ring: self.ring.clone(), rank: self.rank, chern }
    }

    fn from_total(ring: &Ring, rank: i64, total: &Element) -> Self {
        let chern = (1..=ring.trunc() / 2).map(|j| total.graded_part(2 * j)).collect();
        Self::new(ring, rank, chern).expect("graded parts have the right degrees")
    }
}

/// Stiefel-Whitney, Pontryagin and spin^c data of a real bundle.
///
/// `sw[j - 1]` is `w_j` (mod-2 ring, degree `j`), `pontryagin[j - 1]` is
/// `p_j` (degree `4j`), and `kappa` is an integral or rational degree-2 class.
#[derive(Debug, Clone, PartialEq)]
pub struct RealBundleClass {
    pub rank: i64,
    pub sw: Vec<Element>,
    pub pontryagin: Vec<Element>,
    pub kappa: Option<Element>,
}

impl RealBundleClass {
    pub fn new(rank: i64, sw: Vec<Element>, pontryagin: Vec<Element>, kappa: Option<Element>) -> Result<Self, ClassError> {
        if rank < 0 {
            return Err(ClassError::NegativeRank(rank));
        }
        if let Some(r) = sw.first().map(|w| w.ring().clone()) {
            if r.coeff() != CoeffRing::Mod2 {
                return Err(ClassError::InvalidBundle("Stiefel-Whitney classes need Z2 coefficients".into()));
            }
            same_ring(&r, &sw)?;
        }
        check_graded(&sw, 1, 1, "w")?;
        if let Some(r) = pontryagin.first().map(|p| p.ring().clone()) {
            same_ring(&r, &pontryagin)?;
        }
        check_graded(&pontryagin, 4, 1, "p")?;
        if sw.iter().enumerate().any(|(i, w)| i as i64 >= rank && !w.is_zero()) {
            return Err(ClassError::InvalidBundle(format!("w_j must vanish above the rank {rank}")));
        }
        if let Some(k) = &kappa {
            if !k.is_homogeneous_of(2) {
                return Err(ClassError::DegreeMismatch("kappa must have degree 2".into()));
            }
        }
        Ok(RealBundleClass { rank, sw, pontryagin, kappa })
    }

    /// Real line bundle with first Stiefel-Whitney class `w1`.
    pub fn line(w1: Element) -> Result<Self, ClassError> {
        Self::new(1, vec![w1], Vec::new(), None)
    }

    /// `w_j` in `ring`, with `w_0 = 1`.
    pub fn w(&self, ring: &Ring, j: usize) -> Element {
        match j {
            0 => ring.one(),
            _ => self.sw.get(j - 1).cloned().unwrap_or_else(|| ring.zero()),
        }
    }

    pub fn total_sw(&self, ring: &Ring) -> Element {
        self.sw.iter().fold(ring.one(), |a, b| a + b)
    }

    /// Whitney sum; Pontryagin and spin^c data are dropped.
    pub fn direct_sum(&self, other: &Self, ring: &Ring) -> Result<Self, ClassError> {
        let total = self.total_sw(ring).try_mul(&other.total_sw(ring))?;
        let rank = self.rank + other.rank;
        let sw = (1..=rank.min(i64::from(ring.trunc()))).map(|j| total.graded_part(j as u32)).collect();
        Self::new(rank, sw, Vec::new(), None)
    }

    /// Soft consistency checks that do not make the data invalid.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let (Some(k), Some(w2)) = (&self.kappa, self.sw.get(1)) {
            if let Ok(k2) = w2.ring().convert(k) {
                if &k2 != w2 {
                    out.push(format!("kappa reduces to {k2} mod 2 but w2 = {w2}"));
                }
            }
        }
        out
    }
}

/// Segre classes `[s_0 = 1, s_1, ...]` with `c(V) s(V) = 1`.
pub fn segre(v: &ComplexBundleClass) -> Result<Vec<Element>, ClassError> {
    let s = v.total_chern().inverse()?;
    Ok((0..=v.ring.trunc() / 2).map(|j| s.graded_part(2 * j)).collect())
}

/// Power sums `[p_1, ..., p_n]` of formal roots with elementary classes `e`.
///
/// `e[i - 1]` is `e_i`; missing entries count as zero.
pub fn power_sums(ring: &Ring, e: &[Element], n: usize) -> Vec<Element> {
    let ei = |i: usize| e.get(i - 1).cloned().unwrap_or_else(|| ring.zero());
    let mut p: Vec<Element> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = ei(k).scale_int(k as i64);
        if k % 2 == 0 {
            acc = -acc;
        }
        for i in 1..k {
            let term = &ei(i) * &p[k - i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        p.push(acc);
    }
    p
}

fn require_rationals(ring: &Ring) -> Result<(), ClassError> {
    if ring.coeff() == CoeffRing::Rationals {
        Ok(())
    } else {
        Err(RingError::NonRationalCoefficients.into())
    }
}

/// Total Chern character `rank + ch_1 + ch_2 + ...`.
pub fn chern_character(v: &ComplexBundleClass) -> Result<Element, ClassError> {
    require_rationals(&v.ring)?;
    let n = v.ring.trunc() as usize / 2;
    let p = power_sums(&v.ring, &v.chern, n);
    let mut acc = v.ring.int(v.rank);
    let mut fact = BigInt::one();
    for (k, pk) in p.iter().enumerate() {
        fact *= BigInt::from(k + 1);
        acc = &acc + &pk.scale(&BigRational::new(BigInt::one(), fact.clone()))?;
    }
    Ok(acc)
}

/// Inverse of [`chern_character`]: recovers rank and Chern classes.
pub fn chern_from_character(ch: &Element) -> Result<ComplexBundleClass, ClassError> {
    let ring = ch.ring();
    require_rationals(ring)?;
    let c0 = ch.constant_term();
    if !c0.is_integer() {
        return Err(ClassError::InvalidBundle(format!("rank {c0} is not an integer")));
    }
    let rank: i64 = c0.to_integer().try_into().map_err(|_| ClassError::InvalidBundle("rank overflow".into()))?;
    let n = ring.trunc() as usize / 2;
    // p_k = k! ch_k, then k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i.
    let mut fact = BigInt::one();
    let mut p = Vec::with_capacity(n);
    for k in 1..=n {
        fact *= BigInt::from(k);
        p.push(ch.graded_part(2 * k as u32).scale(&BigRational::from_integer(fact.clone()))?);
    }
    let mut e: Vec<Element> = vec![ring.one()];
    for k in 1..=n {
        let mut acc = ring.zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))?);
    }
    ComplexBundleClass::new(ring, rank, e.split_off(1))
}

/// `z / (1 - e^{-z})` up to `z^n`.
pub fn todd_series(n: i64) -> RationalSeries {
    let mut coeffs = Vec::new();
    let mut fact = BigInt::one();
    for k in 0..=n {
        fact *= BigInt::from(k + 1);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs.push(BigRational::new(BigInt::from(sign), fact.clone()));
    }
    RationalSeries::rational("z", 0, coeffs, n).invert().expect("constant term is one")
}

/// `(sqrt(z)/2) / sinh(sqrt(z)/2)` up to `z^n`.
pub fn ahat_series(n: i64) -> RationalSeries {
    let mut coeffs = Vec::new();
    let mut fact = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            fact *= BigInt::from(2 * k) * BigInt::from(2 * k + 1);
        }
        let four_k = num_traits::pow(BigInt::from(4), k as usize);
        coeffs.push(BigRational::new(BigInt::one(), fact.clone() * four_k));
    }
    RationalSeries::rational("z", 0, coeffs, n).invert().expect("constant term is one")
}

/// `prod_i f(z_i)` over roots `z_i` of degree `root_degree` whose elementary
/// symmetric functions are `e`, for `f` with `f(0) = 1`.
pub fn multiplicative_class(ring: &Ring, f: &RationalSeries, e: &[Element], root_degree: u32) -> Result<Element, ClassError> {
    require_rationals(ring)?;
    let n = (ring.trunc() / root_degree) as usize;
    let logf = f.with_trunc(n as i64).log()?;
    let p = power_sums(ring, e, n);
    let mut acc = ring.zero();
    for (k, pk) in p.iter().enumerate() {
        let l = logf.coeff(k as i64 + 1);
        if !l.is_zero() {
            acc = &acc + &pk.scale(&l)?;
        }
    }
    Ok(acc.exp()?)
}

pub fn todd_class(v: &ComplexBundleClass) -> Result<Element, ClassError> {
    let n = i64::from(v.ring.trunc() / 2);
    multiplicative_class(&v.ring, &todd_series(n), &v.chern, 2)
}

/// Â class from Pontryagin classes in `ring`.
pub fn ahat_class(ring: &Ring, w: &RealBundleClass) -> Result<Element, ClassError> {
    same_ring(ring, &w.pontryagin)?;
    let n = i64::from(ring.trunc() / 4);
    multiplicative_class(ring, &ahat_series(n), &w.pontryagin, 4)
}

fn graded_offset(xs: &[Element], what: &str) -> Result<Option<i64>, ClassError> {
    let mut off = None;
    for (j, x) in xs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let d = x
            .homogeneous_degree()
            .ok_or_else(|| ClassError::DegreeMismatch(format!("{what}[{j}] is not homogeneous")))?;
        let o = 2 * j as i64 - i64::from(d);
        if *off.get_or_insert(o) != o {
            return Err(ClassError::DegreeMismatch(format!("{what}[{j}] breaks the grading")));
        }
    }
    Ok(off)
}

fn cauchy(a: &[Element], b: &[Element], ring: &Ring) -> Vec<Element> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    let mut out = vec![ring.zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `sum SW_m t^m = (sum mu_j t^j)(sum s_n t^n)`; `segre[0] = 1`.
pub fn mu_to_sw(mu: &[Element], segre: &[Element]) -> Result<Vec<Element>, ClassError> {
    let Some(ring) = mu.first().or(segre.first()).map(|e| e.ring().clone()) else {
        return Ok(Vec::new());
    };
    same_ring(&ring, mu)?;
    same_ring(&ring, segre)?;
    graded_offset(mu, "mu")?;
    check_graded(segre, 2, 0, "s")?;
    Ok(cauchy(mu, segre, &ring))
}

/// `sum mu_j t^j = (sum SW_m t^m)(sum c_n t^n)`; `chern[0] = 1`.
pub fn sw_to_mu(sw: &[Element], chern: &[Element]) -> Result<Vec<Element>, ClassError> {
    let Some(ring) = sw.first().or(chern.first()).map(|e| e.ring().clone()) else {
        return Ok(Vec::new());
    };
    same_ring(&ring, sw)?;
    same_ring(&ring, chern)?;
    graded_offset(sw, "SW")?;
    check_graded(chern, 2, 0, "c")?;
    Ok(cauchy(sw, chern, &ring))
}
