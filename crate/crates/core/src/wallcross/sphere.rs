//! Cohomology of the unit sphere bundle `S(H^+)` as a free module over the
//! base with basis `{1, tau}`, where `tau = tau_phi` has degree `b+ - 1`.
//!
//! Relations: `tau a = (-1)^{(b+ - 1) deg a} a tau`,
//! `tau^2 = (-1)^{b+} e_phi tau`, `pi_*(alpha + beta tau) = beta`, and the
//! antipodal map pushes `alpha + beta tau` to
//! `(-1)^{b+} alpha + beta e_phi + beta tau`.

use std::sync::Arc;

use super::WallError;
use crate::gring::{Element, Ring, RingError};

#[derive(Debug, Clone, PartialEq)]
pub struct SphereContext {
    ring: Ring,
    pub b_plus: i64,
    pub e_phi: Element,
    pub e_psi: Element,
    /// `tau_psi = tau_phi - lambda`.
    pub lambda: Element,
}

impl SphereContext {
    pub fn new(b_plus: i64, e_phi: Element, e_psi: Element, lambda: Element) -> Result<Self, WallError> {
        if b_plus < 1 {
            return Err(WallError::BadInput(format!("b+ = {b_plus} must be positive")));
        }
        let ring = e_phi.ring().clone();
        for (name, e) in [("e_phi", &e_phi), ("e_psi", &e_psi), ("lambda", &lambda)] {
            if e.ring() != &ring {
                return Err(RingError::RingMismatch.into());
            }
            if !e.is_homogeneous_of(b_plus - 1) {
                return Err(WallError::DegreeMismatch(format!("{name} must have degree {}", b_plus - 1)));
            }
        }
        Ok(SphereContext { ring, b_plus, e_phi, e_psi, lambda })
    }

    /// Free generators `ephi`, `epsi`, `lambda` of degree `b+ - 1`; needs `b+ >= 2`.
    pub fn symbolic(b_plus: i64) -> Result<Self, WallError> {
        use crate::gring::CoeffRing;
        let deg = u32::try_from(b_plus - 1)
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| WallError::BadInput("symbolic context needs b+ >= 2".into()))?;
        let ring = Ring::free(CoeffRing::Integers, &[("ephi", deg), ("epsi", deg), ("lambda", deg)], 3 * deg)?;
        Self::new(b_plus, ring.gen("ephi")?, ring.gen("epsi")?, ring.gen("lambda")?)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn sign(&self) -> i64 {
        if self.b_plus % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `a` with its odd-degree parts negated when `tau` has odd degree.
    fn twist(&self, a: &Element) -> Element {
        if self.b_plus % 2 == 1 {
            return a.clone();
        }
        let mut out = self.ring.zero();
        for k in 0..=self.ring.trunc() {
            let part = a.graded_part(k);
            out = if k % 2 == 0 { &out + &part } else { &out - &part };
        }
        out
    }
}

/// `alpha + beta tau_phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereBundleElement {
    ctx: Arc<SphereContext>,
    pub alpha: Element,
    pub beta: Element,
}

impl SphereBundleElement {
    pub fn new(ctx: &Arc<SphereContext>, alpha: Element, beta: Element) -> Result<Self, WallError> {
        if alpha.ring() != ctx.ring() || beta.ring() != ctx.ring() {
            return Err(RingError::RingMismatch.into());
        }
        Ok(SphereBundleElement { ctx: ctx.clone(), alpha, beta })
    }

    /// Pullback `pi^*(a)`.
    pub fn base(ctx: &Arc<SphereContext>, a: Element) -> Result<Self, WallError> {
        let zero = ctx.ring().zero();
        Self::new(ctx, a, zero)
    }

    pub fn tau_phi(ctx: &Arc<SphereContext>) -> Self {
        SphereBundleElement { ctx: ctx.clone(), alpha: ctx.ring().zero(), beta: ctx.ring().one() }
    }

    pub fn tau_psi(ctx: &Arc<SphereContext>) -> Self {
        SphereBundleElement { ctx: ctx.clone(), alpha: -&ctx.lambda, beta: ctx.ring().one() }
    }

    /// `phi_*(1) = tau_phi + e_phi`.
    pub fn phi_section(ctx: &Arc<SphereContext>) -> Self {
        SphereBundleElement { ctx: ctx.clone(), alpha: ctx.e_phi.clone(), beta: ctx.ring().one() }
    }

    /// `psi_*(1) = tau_psi + e_psi`.
    pub fn psi_section(ctx: &Arc<SphereContext>) -> Self {
        let t = Self::tau_psi(ctx);
        SphereBundleElement { alpha: &t.alpha + &ctx.e_psi, ..t }
    }

    pub fn context(&self) -> &SphereContext {
        &self.ctx
    }

    pub fn add(&self, o: &Self) -> Result<Self, WallError> {
        self.same(o)?;
        Ok(SphereBundleElement { ctx: self.ctx.clone(), alpha: &self.alpha + &o.alpha, beta: &self.beta + &o.beta })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, WallError> {
        self.same(o)?;
        let c = &self.ctx;
        let alpha = &self.alpha * &o.alpha;
        let mut beta = &(&self.alpha * &o.beta) + &(&self.beta * &c.twist(&o.alpha));
        let sq = &(&self.beta * &c.twist(&o.beta)) * &c.e_phi;
        beta = &beta + &sq.scale_int(c.sign());
        Ok(SphereBundleElement { ctx: c.clone(), alpha, beta })
    }

    /// `pi_*`, the coefficient of `tau_phi`.
    pub fn pushforward(&self) -> Element {
        self.beta.clone()
    }

    /// Pushforward along the fibrewise antipodal map.
    pub fn antipodal(&self) -> Self {
        let c = &self.ctx;
        let alpha = &self.alpha.scale_int(c.sign()) + &(&self.beta * &c.e_phi);
        SphereBundleElement { ctx: c.clone(), alpha, beta: self.beta.clone() }
    }

    fn same(&self, o: &Self) -> Result<(), WallError> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx {
            Ok(())
        } else {
            Err(WallError::ContextMismatch)
        }
    }
}

/// `Obs(phi, psi) = pi_*(phi_*(1) (-psi)_*(1))`.
pub fn obs_from_algebra(ctx: &SphereContext) -> Result<Element, WallError> {
    let ctx = Arc::new(ctx.clone());
    let phi = SphereBundleElement::phi_section(&ctx);
    let minus_psi = SphereBundleElement::psi_section(&ctx).antipodal();
    Ok(phi.mul(&minus_psi)?.pushforward())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParityReport {
    pub b_plus: i64,
    pub obs: Element,
    pub checks: Vec<(String, bool)>,
}

impl ParityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Even `b+`: `e_phi = e_psi` and `Obs = lambda`. Odd `b+`:
/// `2 lambda + e_phi - e_psi = 0` and `2 Obs = e_phi - e_psi`.
pub fn parity_check(ctx: &SphereContext) -> Result<ParityReport, WallError> {
    let obs = obs_from_algebra(ctx)?;
    let de = &ctx.e_phi - &ctx.e_psi;
    let checks = if ctx.b_plus % 2 == 0 {
        vec![("e_phi - e_psi = 0".to_string(), de.is_zero()), ("Obs = lambda".to_string(), obs == ctx.lambda)]
    } else {
        vec![
            ("2 lambda + e_phi - e_psi = 0".to_string(), (&ctx.lambda.scale_int(2) + &de).is_zero()),
            ("2 Obs = e_phi - e_psi".to_string(), obs.scale_int(2) == de),
        ]
    };
    Ok(ParityReport { b_plus: ctx.b_plus, obs, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::CoeffRing;

    #[test]
    fn symbolic_obs() {
        for b in 2..=5 {
            let ctx = SphereContext::symbolic(b).unwrap();
            let r = ctx.ring().clone();
            assert_eq!(obs_from_algebra(&ctx).unwrap(), r.parse("lambda + ephi - epsi").unwrap());
        }
    }

    #[test]
    fn module_relations() {
        for b in 2..=5 {
            let ctx = Arc::new(SphereContext::symbolic(b).unwrap());
            let r = ctx.ring().clone();
            let t = SphereBundleElement::tau_phi(&ctx);
            assert_eq!(t.pushforward(), r.one());
            let tt = t.mul(&t).unwrap();
            assert!(tt.alpha.is_zero());
            assert_eq!(tt.beta, ctx.e_phi.scale_int(if b % 2 == 0 { 1 } else { -1 }));
            let phi = SphereBundleElement::phi_section(&ctx);
            assert_eq!(phi.mul(&phi).unwrap().pushforward(), ctx.e_phi);
            assert!(phi.mul(&phi.antipodal()).unwrap().pushforward().is_zero());
            let base = SphereBundleElement::base(&ctx, r.gen("lambda").unwrap()).unwrap();
            assert!(base.pushforward().is_zero());
        }
    }

    #[test]
    fn parity_controls() {
        let r = Ring::free(CoeffRing::Integers, &[("a", 2), ("l", 2)], 4).unwrap();
        let a = r.gen("a").unwrap();
        let l = r.gen("l").unwrap();
        let even = SphereContext::new(3, a.clone(), a.clone(), l.clone()).unwrap();
        // b+ = 3 is odd: 2 lambda = e_psi - e_phi is needed.
        assert!(!parity_check(&even).unwrap().pass());
        let ok = SphereContext::new(3, a.clone(), &a + &l.scale_int(2), l.clone()).unwrap();
        assert!(parity_check(&ok).unwrap().pass());
        let r1 = Ring::free(CoeffRing::Integers, &[("a", 1), ("l", 1)], 2).unwrap();
        let (a, l) = (r1.gen("a").unwrap(), r1.gen("l").unwrap());
        assert!(parity_check(&SphereContext::new(2, a.clone(), a.clone(), l.clone()).unwrap()).unwrap().pass());
        assert!(!parity_check(&SphereContext::new(2, a.clone(), l.clone(), l).unwrap()).unwrap().pass());
    }

    #[test]
    fn context_mismatch() {
        let a = Arc::new(SphereContext::symbolic(2).unwrap());
        let b = Arc::new(SphereContext::symbolic(3).unwrap());
        let x = SphereBundleElement::tau_phi(&a);
        let y = SphereBundleElement::tau_phi(&b);
        assert_eq!(x.mul(&y), Err(WallError::ContextMismatch));
    }
}
