//! Mod-2 binomial arithmetic and Steenrod squares of families Seiberg-Witten
//! classes.
//!
//! [`sq`] evaluates the closed double-sum formula directly. The relations
//! derived from it are returned as evaluated elements: a ledger that comes
//! from a genuine family makes every one of them vanish, so a nonzero entry
//! rules such a family out.

mod ledger;
mod sweep;

use num_bigint::BigInt;
use thiserror::Error;

use crate::charclass::ClassError;
use crate::gring::{CoeffRing, Element, RingError};

pub use crate::binom::binom_mod2;
pub use ledger::{LedgerJson, SWLedger};
pub use sweep::{verify_recur3, verify_recur5, verify_vzero, SweepRow, VerificationRange, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SteenrodError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("binomial with negative lower index {0}")]
    NegativeK(i64),
    #[error("ledger must have Z2 coefficients")]
    NotMod2Ring,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("b+ = {0} is not 3 mod 4")]
    WrongBPlusResidue(i64),
    #[error("bad range: {0}")]
    BadRange(String),
}

/// `n (n-1) ... (n-k+1) / k!` for any integer `n`.
pub fn binom_int(n: i64, k: i64) -> Result<BigInt, SteenrodError> {
    if k < 0 {
        return Err(SteenrodError::NegativeK(k));
    }
    Ok(crate::binom::binom(n, k))
}

fn require_mod2(ledger: &SWLedger) -> Result<(), SteenrodError> {
    if ledger.ring().coeff() == CoeffRing::Mod2 {
        Ok(())
    } else {
        Err(SteenrodError::NotMod2Ring)
    }
}

/// `Sq^i(SW_m)`: with `i = 2j + e`, the sum over `l <= j`, `k <= j - l` of
/// `binom(d-1-m+l+k, l) s_k(D) w_{2j-2l-2k+e}(H^+) SW_{m+l}`.
pub fn sq(ledger: &SWLedger, i: u32, m: i64) -> Result<Element, SteenrodError> {
    require_mod2(ledger)?;
    if m < 0 {
        return Err(SteenrodError::PreconditionViolated(format!("m = {m} is negative")));
    }
    let (j, e) = (i64::from(i / 2), i64::from(i % 2));
    let d = ledger.d;
    let mut acc = ledger.ring().zero();
    for l in 0..=j {
        let swl = ledger.sw_at(m + l);
        if swl.is_zero() {
            continue;
        }
        for k in 0..=j - l {
            if !binom_mod2(d - 1 - m + l + k, l) {
                continue;
            }
            let w = ledger.w((2 * (j - l - k) + e) as usize);
            acc = &acc + &(&(&ledger.s(k as usize) * &w) * &swl);
        }
    }
    Ok(acc)
}

/// An evaluated relation; it holds when `value` is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub description: String,
    pub value: Element,
}

impl Relation {
    pub fn holds(&self) -> bool {
        self.value.is_zero()
    }
}

/// `Sq^{2j}(SW_m)` and `Sq^{2j+1}(SW_m)` for every `m >= 0`, `j` with
/// `2j > deg SW_m` whose value lands in a degree the base can carry.
pub fn realizability_relations(ledger: &SWLedger) -> Result<Vec<Relation>, SteenrodError> {
    require_mod2(ledger)?;
    let trunc = i64::from(ledger.ring().trunc());
    let e = 2 * ledger.d - ledger.b_plus - 1;
    let mut out = Vec::new();
    let mut m = 0;
    while ledger.sw_degree(m) <= trunc {
        let deg = ledger.sw_degree(m);
        for j in 0..=trunc.max(0) {
            if 2 * j <= deg {
                continue;
            }
            for parity in 0..2 {
                let i = 2 * j + parity;
                if !(0..=trunc).contains(&(deg + i)) {
                    continue;
                }
                out.push(Relation {
                    description: format!("Sq^{i} SW_{m} (2j = {} > {deg} = 2m - {e})", 2 * j),
                    value: sq(ledger, i as u32, m)?,
                });
            }
        }
        m += 1;
    }
    Ok(out)
}

/// For `b+ = 2p + 1`, trivial `w(H^+)` and `p = 2^a p'` with `p'` odd, at
/// `m = d - p - 1`: `SW_{m+2^b} + s_{2^b}(D) SW_m` for `0 <= b < a`, then
/// `s_{2^a}(D) SW_m`.
pub fn power_of_two_relations(ledger: &SWLedger, a: u32, pprime: i64) -> Result<Vec<Relation>, SteenrodError> {
    require_mod2(ledger)?;
    let pre = |msg: String| Err(SteenrodError::PreconditionViolated(msg));
    if ledger.b_plus % 2 == 0 {
        return pre(format!("b+ = {} is even", ledger.b_plus));
    }
    let p = (ledger.b_plus - 1) / 2;
    if pprime % 2 == 0 || pprime.checked_shl(a).is_none_or(|q| q != p) {
        return pre(format!("p = {p} is not 2^{a} times the odd number {pprime}"));
    }
    if ledger.hplus.sw.iter().any(|w| !w.is_zero()) {
        return pre("w(H+) is not 1".into());
    }
    let m = ledger.d - p - 1;
    if m < 0 {
        return pre(format!("m = d - p - 1 = {m} is negative"));
    }
    let swm = ledger.sw_at(m);
    let mut out = Vec::new();
    for b in 0..a {
        let t = 1i64 << b;
        out.push(Relation {
            description: format!("SW_{} = s_{t}(D) SW_{m}", m + t),
            value: &ledger.sw_at(m + t) + &(&ledger.s(t as usize) * &swm),
        });
    }
    let t = 1usize << a;
    out.push(Relation { description: format!("s_{t}(D) SW_{m} = 0"), value: &ledger.s(t) * &swm });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct W2Diagnostic {
    /// `c_1(D) + w_2(H^+)` mod 2.
    pub class: Element,
    pub obstructed: bool,
}

/// For `b+ = 2p + 1` with `p` odd and odd Seiberg-Witten invariant, any
/// family has `c_1(D) = w_2(H^+)` mod 2.
pub fn w2_obstruction(ledger: &SWLedger, sw_parity: bool) -> Result<W2Diagnostic, SteenrodError> {
    require_mod2(ledger)?;
    if ledger.b_plus % 4 != 3 {
        return Err(SteenrodError::WrongBPlusResidue(ledger.b_plus));
    }
    let class = &ledger.c1() + &ledger.w(2);
    let obstructed = sw_parity && !class.is_zero();
    Ok(W2Diagnostic { class, obstructed })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChernCheck {
    /// `w(H^+) s(D)`.
    pub product: Element,
    /// Lowest positive degree where the product is nonzero.
    pub first_failure: Option<u32>,
}

impl ChernCheck {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// With `2d - b+ - 1 = 0`, `SW_0` odd and `SW_j` even for `j > 0`, checks
/// `w(H^+) s(D) = 1` mod 2, which is `w(H^+) = c(D)`.
pub fn sw_equals_chern_check(ledger: &SWLedger) -> Result<ChernCheck, SteenrodError> {
    require_mod2(ledger)?;
    let ring = ledger.ring();
    if 2 * ledger.d - ledger.b_plus - 1 != 0 {
        return Err(SteenrodError::PreconditionViolated("2d - b+ - 1 must vanish".into()));
    }
    if ledger.sw_at(0) != ring.one() {
        return Err(SteenrodError::PreconditionViolated("SW_0 must be odd".into()));
    }
    if ledger.sw.iter().any(|(&j, x)| j > 0 && !x.is_zero()) {
        return Err(SteenrodError::PreconditionViolated("SW_j must be even for j > 0".into()));
    }
    let s = ledger.segre_d.iter().fold(ring.zero(), |a, b| a + b);
    let product = &ledger.hplus.total_sw(ring) * &s;
    let first_failure = (1..=ring.trunc()).find(|&k| !product.graded_part(k).is_zero());
    Ok(ChernCheck { product, first_failure })
}
