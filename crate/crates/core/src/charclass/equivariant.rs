//! Circle-equivariant classes as polynomials in the generator `x` of
//! `H*(BS^1)`, and pushforward from a projectivisation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{check_graded, same_ring, todd_series, power_sums, ClassError, ComplexBundleClass};
use crate::binom::binom;
use crate::gring::{Element, FormalSeries, Ring};

/// `sum_k coeffs[k] x^k` with coefficients in a base ring; `x` has degree 2.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantPoly {
    ring: Ring,
    pub coeffs: Vec<Element>,
}

impl EquivariantPoly {
    pub fn new(ring: &Ring, coeffs: Vec<Element>) -> Self {
        let mut p = EquivariantPoly { ring: ring.clone(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeff(&self, k: usize) -> Element {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        EquivariantPoly::new(&self.ring, (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return EquivariantPoly::new(&self.ring, Vec::new());
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        EquivariantPoly::new(&self.ring, out)
    }
}

impl fmt::Display for EquivariantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `x^a + c_1 x^{a-1} + ... + c_a`.
pub fn equivariant_euler(a: i64, v: &ComplexBundleClass) -> Result<EquivariantPoly, ClassError> {
    if a < 0 {
        return Err(ClassError::NegativeRank(a));
    }
    if let Some(j) = v.chern.iter().rposition(|c| !c.is_zero()) {
        if j as i64 + 1 > a {
            return Err(ClassError::RankTooSmall { rank: a, index: j + 1 });
        }
    }
    let a = a as usize;
    let coeffs = (0..=a).map(|k| v.c(a - k)).collect();
    Ok(EquivariantPoly::new(v.ring(), coeffs))
}

/// `c_{S^1, j}` of the rank-`a'` bundle whose Chern classes are `segre_d`:
/// `sum_l x^{j-l} binom(a'-l, j-l) s_l`, with `s_l = 0` for `l > a'`.
pub fn equivariant_chern(aprime: i64, segre_d: &[Element], j: usize) -> Result<EquivariantPoly, ClassError> {
    if aprime < 0 {
        return Err(ClassError::NegativeRank(aprime));
    }
    let ring = segre_d
        .first()
        .map(|e| e.ring().clone())
        .ok_or_else(|| ClassError::InvalidBundle("empty Segre list".into()))?;
    same_ring(&ring, segre_d)?;
    check_graded(segre_d, 2, 0, "s")?;
    let mut coeffs = vec![ring.zero(); j + 1];
    for l in 0..=j.min(aprime as usize) {
        let Some(s) = segre_d.get(l) else { break };
        let b = binom(aprime - l as i64, (j - l) as i64);
        coeffs[j - l] = s.scale(&BigRational::from_integer(b))?;
    }
    Ok(EquivariantPoly::new(&ring, coeffs))
}

/// `pi_*(x^j)` from the projectivisation of a rank-`a` bundle:
/// zero for `j < a - 1`, else `s_{j-a+1}(V)`.
pub fn projective_pushforward(a: i64, segre_v: &[Element], j: i64) -> Result<Element, ClassError> {
    if a < 1 {
        return Err(ClassError::RankTooSmall { rank: a, index: 1 });
    }
    let ring = segre_v
        .first()
        .map(|e| e.ring().clone())
        .ok_or_else(|| ClassError::InvalidBundle("empty Segre list".into()))?;
    let k = j - (a - 1);
    if k < 0 {
        return Ok(ring.zero());
    }
    Ok(segre_v.get(k as usize).cloned().unwrap_or_else(|| ring.zero()))
}

/// `[Td_0, ..., Td_max_j]` with `Td^{S^1}(V) = prod_i (x+y_i)/(1-e^{-(x+y_i)}) = sum_j Td_j x^j`.
pub fn equivariant_todd(v: &ComplexBundleClass, max_j: usize) -> Result<Vec<Element>, ClassError> {
    let ring = v.ring();
    let nroot = ring.trunc() as usize / 2;
    let nmax = max_j + nroot;
    let logf = todd_series(nmax as i64).log()?;
    let mut p = vec![ring.int(v.rank)];
    p.extend(power_sums(ring, &v.chern, nroot));
    // log Td = sum_e x^e sum_k l_{e+k} binom(e+k, k) p_k.
    let mut a = Vec::with_capacity(max_j + 1);
    for e in 0..=max_j {
        let mut acc = ring.zero();
        for (k, pk) in p.iter().enumerate() {
            let l = logf.coeff((e + k) as i64);
            if l == BigRational::from_integer(BigInt::from(0)) || pk.is_zero() {
                continue;
            }
            let b = BigRational::from_integer(binom((e + k) as i64, k as i64));
            acc = &acc + &pk.scale(&(l * b))?;
        }
        a.push(acc);
    }
    let base = a[0].exp()?;
    let mut tail = a.clone();
    tail[0] = ring.zero();
    let series = FormalSeries::power("x", tail, max_j as i64, ring.zero()).exp()?;
    Ok((0..=max_j).map(|j| &base * &series.coeff(j as i64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::{segre, todd_class};
    use crate::gring::{rat, CoeffRing};

    #[test]
    fn euler_and_rank_check() {
        let r = Ring::free(CoeffRing::Integers, &[("c1", 2), ("c2", 4)], 8).unwrap();
        let v = ComplexBundleClass::new(&r, 2, vec![r.gen("c1").unwrap(), r.gen("c2").unwrap()]).unwrap();
        let e = equivariant_euler(2, &v).unwrap();
        assert_eq!(e.coeffs, vec![r.gen("c2").unwrap(), r.gen("c1").unwrap(), r.one()]);
        assert_eq!(equivariant_euler(1, &v), Err(ClassError::RankTooSmall { rank: 1, index: 2 }));
    }

    #[test]
    fn chern_small_cases() {
        let r = Ring::free(CoeffRing::Integers, &[("s1", 2), ("s2", 4)], 8).unwrap();
        let s = vec![r.one(), r.gen("s1").unwrap(), r.gen("s2").unwrap()];
        let c1 = equivariant_chern(2, &s, 1).unwrap();
        assert_eq!(c1.coeffs, vec![r.gen("s1").unwrap(), r.int(2)]);
        let c3 = equivariant_chern(2, &s, 3).unwrap();
        assert!(c3.is_zero());
        assert!(equivariant_chern(-1, &s, 1).is_err());
    }

    #[test]
    fn pushforward_shifts_segre() {
        let r = Ring::free(CoeffRing::Integers, &[("c1", 2)], 6).unwrap();
        let v = ComplexBundleClass::new(&r, 2, vec![r.gen("c1").unwrap()]).unwrap();
        let s = segre(&v).unwrap();
        assert!(projective_pushforward(2, &s, 0).unwrap().is_zero());
        assert_eq!(projective_pushforward(2, &s, 1).unwrap(), r.one());
        assert_eq!(projective_pushforward(2, &s, 3).unwrap(), r.parse("c1^2").unwrap());
    }

    #[test]
    fn todd_trivial_and_base() {
        let r = Ring::free(CoeffRing::Rationals, &[("c1", 2), ("c2", 4)], 8).unwrap();
        let triv = ComplexBundleClass::trivial(&r, 3);
        let td = equivariant_todd(&triv, 4).unwrap();
        let pow = todd_series(4).powi(3).unwrap();
        for (j, t) in td.iter().enumerate() {
            assert_eq!(*t, r.scalar(&pow.coeff(j as i64)).unwrap());
        }
        assert_eq!(td[1], r.scalar(&rat(3, 2)).unwrap());
        let v = ComplexBundleClass::new(&r, 2, vec![r.gen("c1").unwrap(), r.gen("c2").unwrap()]).unwrap();
        let td = equivariant_todd(&v, 2).unwrap();
        assert_eq!(td[0], todd_class(&v).unwrap());
    }
}
