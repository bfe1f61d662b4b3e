use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{q, KdivError};
use crate::charclass::{chern_character, equivariant_todd, projective_pushforward, segre, ComplexBundleClass};
use crate::gring::{CoeffRing, Element, FormalSeries, RationalSeries, Ring};
use crate::steenrod::SWLedger;

fn require_q(ring: &Ring) -> Result<(), KdivError> {
    if ring.coeff() == CoeffRing::Rationals {
        Ok(())
    } else {
        Err(KdivError::NonRationalRing)
    }
}

/// A K-theory class, stored as its Chern character.
#[derive(Debug, Clone, PartialEq)]
pub struct KClass {
    pub ch: Element,
}

impl KClass {
    pub fn new(ch: Element) -> Result<Self, KdivError> {
        require_q(ch.ring())?;
        if ch.terms().any(|(m, _)| ch.ring().degree_of(m) % 2 == 1) {
            return Err(KdivError::DegreeMismatch("Chern characters live in even degrees".into()));
        }
        Ok(KClass { ch })
    }

    pub fn zero(ring: &Ring) -> Self {
        KClass { ch: ring.zero() }
    }

    pub fn from_bundle(v: &ComplexBundleClass) -> Result<Self, KdivError> {
        Self::new(chern_character(v)?)
    }

    pub fn ring(&self) -> &Ring {
        self.ch.ring()
    }

    pub fn rank(&self) -> BigRational {
        self.ch.constant_term()
    }

    pub fn add(&self, o: &Self) -> Result<Self, KdivError> {
        Ok(KClass { ch: self.ch.try_add(&o.ch)? })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, KdivError> {
        Ok(KClass { ch: self.ch.try_mul(&o.ch)? })
    }

    pub fn scale_int(&self, n: i64) -> Self {
        KClass { ch: self.ch.scale_int(n) }
    }

    /// `psi^k`: multiplies `ch_i` by `k^i`.
    pub fn adams(&self, k: i64) -> Self {
        let ring = self.ring();
        let mut out = ring.zero();
        let mut w = BigInt::one();
        for i in 0..=ring.trunc() / 2 {
            let part = self.ch.graded_part(2 * i);
            if !part.is_zero() {
                out = &out + &part.scale(&BigRational::from_integer(w.clone())).expect("rational ring");
            }
            w *= k;
        }
        KClass { ch: out }
    }

    pub fn dual(&self) -> Self {
        self.adams(-1)
    }
}

/// `[Ch Sym^0 W, ..., Ch Sym^trunc_t W]` from
/// `sum_m Sym^m(W) t^m = exp(sum_k psi^k(W) t^k / k)`.
pub fn sym_series(w: &KClass, trunc_t: usize) -> Result<Vec<KClass>, KdivError> {
    let ring = w.ring();
    require_q(ring)?;
    let t = trunc_t as i64;
    let mut coeffs = vec![ring.zero()];
    for k in 1..=t {
        coeffs.push(w.adams(k).ch.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))?);
    }
    let s = FormalSeries::power("t", coeffs, t, ring.zero()).exp()?;
    (0..=t).map(|m| KClass::new(s.coeff(m))).collect()
}

/// `S_m(D)`: `Sym^m(D^*)` for `m >= 0` plus
/// `(-1)^{d-1} Sym^{-m-d}(D) (x) det D` for `m <= -d`, with `d` the rank of
/// `D`.
///
/// The determinant comes from the relative canonical bundle
/// `O(-a) (x) det V^*` of `P(V)` under Serre duality; it is invisible when
/// `c_1(D) = 0`.
pub fn s_m_class(d_bundle: &ComplexBundleClass, m: i64) -> Result<KClass, KdivError> {
    s_m_branches(d_bundle, m, true)
}

/// [`s_m_class`] without the determinant twist on the dual branch.
pub fn s_m_class_untwisted(d_bundle: &ComplexBundleClass, m: i64) -> Result<KClass, KdivError> {
    s_m_branches(d_bundle, m, false)
}

fn s_m_branches(d_bundle: &ComplexBundleClass, m: i64, twist: bool) -> Result<KClass, KdivError> {
    let ring = d_bundle.ring();
    require_q(ring)?;
    let d = d_bundle.rank;
    let dk = KClass::from_bundle(d_bundle)?;
    let mut out = KClass::zero(ring);
    if m >= 0 {
        out = out.add(&sym_series(&dk.dual(), m as usize)?[m as usize])?;
    }
    if m <= -d {
        let k = (-m - d) as usize;
        let sign = if (d - 1) % 2 == 0 { 1 } else { -1 };
        let mut neg = sym_series(&dk, k)?[k].scale_int(sign);
        if twist {
            neg = neg.mul(&KClass::new(d_bundle.c(1).exp()?)?)?;
        }
        out = out.add(&neg)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymPushReport {
    /// `Ch pi_*(xi^m (1 - xi^{-1})^{a'})` by Grothendieck-Riemann-Roch.
    pub lhs: Element,
    /// `Ch S_m(V - C^{a'})`.
    pub rhs: Element,
    pub mismatched_degrees: Vec<u32>,
}

impl SymPushReport {
    pub fn pass(&self) -> bool {
        self.mismatched_degrees.is_empty()
    }
}

/// Compares `pi_*(e^{mx} (1 - e^{-x})^{a'} Td^{S^1}(V))` on `P(V)` with
/// `Ch S_m(V - C^{a'})`.
pub fn verify_sym_pushforward(v: &ComplexBundleClass, aprime: i64, m: i64) -> Result<SymPushReport, KdivError> {
    let ring = v.ring();
    require_q(ring)?;
    let a = v.rank;
    if a < 1 || aprime < 0 {
        return Err(KdivError::BadRange(format!("need rank >= 1 and a' >= 0; got {a}, {aprime}")));
    }
    let jmax = (a - 1) as usize + ring.trunc() as usize / 2;
    let td = equivariant_todd(v, jmax)?;
    let j = jmax as i64;
    let mut one_minus = vec![BigRational::zero()];
    let mut fact = BigInt::one();
    for k in 1..=j {
        fact *= BigInt::from(k);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        one_minus.push(BigRational::new(BigInt::from(sign), fact.clone()));
    }
    let r = RationalSeries::exp_linear("x", &q(m), j).mul(&RationalSeries::rational("x", 0, one_minus, j).powi(aprime)?);
    let sv = segre(v)?;
    let mut lhs = ring.zero();
    for jj in 0..=jmax {
        let mut coeff = ring.zero();
        for (k, t) in td.iter().enumerate().take(jj + 1) {
            let c = r.coeff((jj - k) as i64);
            if !c.is_zero() {
                coeff = &coeff + &t.scale(&c)?;
            }
        }
        if !coeff.is_zero() {
            lhs = &lhs + &(&coeff * &projective_pushforward(a, &sv, jj as i64)?);
        }
    }
    let d_bundle = ComplexBundleClass::new(ring, a - aprime, v.chern.clone())?;
    let rhs = s_m_class(&d_bundle, m)?.ch;
    let mismatched_degrees = (0..=ring.trunc()).filter(|&k| lhs.graded_part(k) != rhs.graded_part(k)).collect();
    Ok(SymPushReport { lhs, rhs, mismatched_degrees })
}

fn prefactor(kappa: &Element, ahat_hplus: &Element) -> Result<Element, KdivError> {
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    Ok(kappa.scale(&half)?.exp()?.try_mul(&ahat_hplus.inverse()?)?)
}

/// `Ch(SW^K_m) = e^{-kappa/2} Ahat(H^+)^{-1} sum_j Td_j(D) sum_k (m^k/k!) SW_{j+k}`.
pub fn ch_swk(ledger: &SWLedger, kappa: &Element, ahat_hplus: &Element, td_list: &[Element], m: i64) -> Result<Element, KdivError> {
    let ring = ledger.ring();
    require_q(ring)?;
    let mut sum = ring.zero();
    for (&n, sw) in &ledger.sw {
        if sw.is_zero() {
            continue;
        }
        let mut weight = ring.zero();
        let mut fact = BigInt::one();
        let mut mk = BigInt::one();
        // k = n - j runs upward as j runs down from n.
        for k in 0..=n {
            if k > 0 {
                fact *= BigInt::from(k);
                mk *= BigInt::from(m);
            }
            if let Some(td) = td_list.get((n - k) as usize) {
                weight = &weight + &td.scale(&BigRational::new(mk.clone(), fact.clone()))?;
            }
        }
        sum = &sum + &(&weight * sw);
    }
    Ok(prefactor(kappa, ahat_hplus)?.try_mul(&sum)?)
}

/// `Ch(SW^K_m(phi) - SW^K_m(psi)) = e^{-kappa/2} Ahat(H^+)^{-1} Obs Ch S_m(D)`.
pub fn k_wall_difference(
    m: i64,
    d_bundle: &ComplexBundleClass,
    obs: &Element,
    kappa: &Element,
    ahat_hplus: &Element,
) -> Result<Element, KdivError> {
    require_q(obs.ring())?;
    let s = s_m_class(d_bundle, m)?;
    Ok(prefactor(kappa, ahat_hplus)?.try_mul(&obs.try_mul(&s.ch)?)?)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::charclass::RealBundleClass;
    use crate::gring::rat;
    use crate::kdiv::n_dmp;
    use crate::wallcross::wall_difference;

    fn ring() -> Ring {
        Ring::free(CoeffRing::Rationals, &[("c1", 2), ("c2", 4), ("c3", 6)], 6).unwrap()
    }

    #[test]
    fn sym_of_simple_classes() {
        let r = ring();
        let one = KClass::new(r.one()).unwrap();
        assert!(sym_series(&one, 5).unwrap().iter().all(|s| s.ch == r.one()));
        let two = KClass::new(r.int(2)).unwrap();
        for (m, s) in sym_series(&two, 5).unwrap().iter().enumerate() {
            assert_eq!(s.ch, r.int(m as i64 + 1));
        }
        let l = KClass::new(r.gen("c1").unwrap().exp().unwrap()).unwrap();
        for (m, s) in sym_series(&l, 4).unwrap().iter().enumerate() {
            assert_eq!(s.ch, r.gen("c1").unwrap().scale_int(m as i64).exp().unwrap());
        }
    }

    #[test]
    fn s_m_windows() {
        let r = ring();
        let d = ComplexBundleClass::new(&r, 3, vec![r.gen("c1").unwrap()]).unwrap();
        assert!(s_m_class(&d, -1).unwrap().ch.is_zero());
        assert!(s_m_class(&d, -2).unwrap().ch.is_zero());
        assert_eq!(s_m_class(&d, -3).unwrap().ch, r.gen("c1").unwrap().exp().unwrap());
        assert_eq!(s_m_class_untwisted(&d, -3).unwrap().ch, r.one());
        assert_eq!(s_m_class(&d, 0).unwrap().ch, r.one());
        assert_eq!(s_m_class(&d, 1).unwrap(), KClass::from_bundle(&d).unwrap().dual());
    }

    #[test]
    fn sym_pushforward_samples() {
        let r = ring();
        let chern = [r.gen("c1").unwrap(), r.gen("c2").unwrap(), r.gen("c3").unwrap()];
        for (a, ap, m) in [(2, 0, 0), (3, 1, 2), (3, 0, -2), (4, 2, -5), (2, 1, -1), (2, 0, -2)] {
            let v = ComplexBundleClass::new(&r, a, chern[..a.min(3) as usize].to_vec()).unwrap();
            let rep = verify_sym_pushforward(&v, ap, m).unwrap();
            assert!(rep.pass(), "a={a} a'={ap} m={m}: {} vs {}", rep.lhs, rep.rhs);
        }
    }

    #[test]
    fn untwisted_dual_branch_needs_trivial_determinant() {
        let r = ring();
        let v = ComplexBundleClass::new(&r, 2, vec![r.gen("c1").unwrap()]).unwrap();
        let rep = verify_sym_pushforward(&v, 0, -2).unwrap();
        assert_eq!(rep.lhs, -r.gen("c1").unwrap().exp().unwrap());
        assert_ne!(rep.lhs, s_m_class_untwisted(&ComplexBundleClass::new(&r, 2, v.chern.clone()).unwrap(), -2).unwrap().ch);
        let w = ComplexBundleClass::new(&r, 2, vec![r.zero(), r.gen("c2").unwrap()]).unwrap();
        let d = ComplexBundleClass::new(&r, 2, w.chern.clone()).unwrap();
        for m in -6..=-2 {
            assert_eq!(verify_sym_pushforward(&w, 0, m).unwrap().lhs, s_m_class_untwisted(&d, m).unwrap().ch);
        }
    }

    #[test]
    fn point_base_index() {
        let r = Ring::free(CoeffRing::Rationals, &[("u", 2)], 0).unwrap();
        let (d, p) = (4, 1);
        let hplus = RealBundleClass::new(2 * p + 1, vec![], vec![], None).unwrap();
        let sw = BTreeMap::from([(d - p - 1, r.int(3))]);
        let ledger = SWLedger::new(&r, d, 2 * p + 1, vec![], sw, hplus).unwrap();
        let td: Vec<Element> = (0..=d).map(|j| r.scalar(&super::super::todd_coeff(d, j).unwrap()).unwrap()).collect();
        for m in 0..5 {
            let v = ch_swk(&ledger, &r.zero(), &r.one(), &td, m).unwrap();
            assert_eq!(v.constant_term(), n_dmp(d, m, p).unwrap() * rat(3, 1));
        }
    }

    #[test]
    fn k_wall_matches_cohomological_jump() {
        let r = ring();
        let dbundle = ComplexBundleClass::new(&r, 2, vec![r.parse("c1").unwrap(), r.parse("c2").unwrap()]).unwrap();
        let obs = r.parse("2 + c1").unwrap();
        let kappa = r.parse("c1").unwrap();
        let ahat = r.parse("1 - 1/24*c2").unwrap();
        let s = segre(&dbundle).unwrap();
        let nmax = 1 + 3;
        let sw = (0..=nmax).map(|n| (n, wall_difference(n, 2, &obs, &s).unwrap())).collect::<BTreeMap<_, _>>();
        // b+ = 1: the jump classes are not homogeneous here, so skip ledger validation.
        let hplus = RealBundleClass::new(1, vec![], vec![], None).unwrap();
        let mut ledger = SWLedger::new(&r, 2, 1, s.clone(), BTreeMap::new(), hplus).unwrap();
        ledger.sw = sw;
        let td = equivariant_todd(&dbundle, nmax as usize).unwrap();
        for m in -5..=4 {
            let a = ch_swk(&ledger, &kappa, &ahat, &td, m).unwrap();
            let b = k_wall_difference(m, &dbundle, &obs, &kappa, &ahat).unwrap();
            assert_eq!(a, b, "m = {m}");
        }
    }
}
