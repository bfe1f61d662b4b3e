use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SteenrodError;
use crate::charclass::{check_graded, ClassError, RealBundleClass};
use crate::gring::json::{ElementInput, RingJson};
use crate::gring::{CoeffRing, Element, Ring, RingError};

/// Families Seiberg-Witten data over a base `B`.
///
/// `SW_m` has degree `2m - (2d - b_plus - 1)`; classes not listed are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SWLedger {
    ring: Ring,
    pub d: i64,
    pub b_plus: i64,
    /// `[s_0 = 1, s_1(D), ...]`.
    pub segre_d: Vec<Element>,
    pub sw: BTreeMap<i64, Element>,
    /// `H^+`; its Stiefel-Whitney classes are only read over `Z2`.
    pub hplus: RealBundleClass,
}

impl SWLedger {
    pub fn new(
        ring: &Ring,
        d: i64,
        b_plus: i64,
        mut segre_d: Vec<Element>,
        sw: BTreeMap<i64, Element>,
        hplus: RealBundleClass,
    ) -> Result<Self, SteenrodError> {
        if b_plus < 1 {
            return Err(SteenrodError::PreconditionViolated(format!("b+ must be positive, got {b_plus}")));
        }
        if segre_d.is_empty() {
            segre_d.push(ring.one());
        }
        if segre_d[0] != ring.one() {
            return Err(ClassError::InvalidBundle("s_0(D) must be 1".into()).into());
        }
        let foreign = |e: &Element| e.ring() != ring;
        if segre_d.iter().any(foreign) || sw.values().any(foreign) {
            return Err(RingError::RingMismatch.into());
        }
        if ring.coeff() == CoeffRing::Mod2 && hplus.sw.iter().any(foreign) {
            return Err(RingError::RingMismatch.into());
        }
        check_graded(&segre_d, 2, 0, "s")?;
        let ledger = SWLedger { ring: ring.clone(), d, b_plus, segre_d, sw, hplus };
        for (&m, x) in &ledger.sw {
            if m < 0 {
                return Err(SteenrodError::PreconditionViolated(format!("SW_{m} has negative index")));
            }
            if !x.is_homogeneous_of(ledger.sw_degree(m)) {
                return Err(ClassError::DegreeMismatch(format!("SW_{m} must have degree {}", ledger.sw_degree(m))).into());
            }
        }
        Ok(ledger)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `2m - (2d - b_plus - 1)`.
    pub fn sw_degree(&self, m: i64) -> i64 {
        2 * m - (2 * self.d - self.b_plus - 1)
    }

    pub fn s(&self, k: usize) -> Element {
        self.segre_d.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn w(&self, j: usize) -> Element {
        if self.ring.coeff() != CoeffRing::Mod2 {
            return if j == 0 { self.ring.one() } else { self.ring.zero() };
        }
        self.hplus.w(&self.ring, j)
    }

    pub fn sw_at(&self, m: i64) -> Element {
        self.sw.get(&m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// `c_1(D) = -s_1(D)`.
    pub fn c1(&self) -> Element {
        -self.s(1)
    }
}

/// JSON form: `{"ring":{..},"d":2,"b_plus":3,"segre":[..],"sw":[[0,"1"],..],"hplus_sw":[..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LedgerJson {
    pub ring: RingJson,
    pub d: i64,
    pub b_plus: i64,
    #[serde(default)]
    pub segre: Vec<ElementInput>,
    #[serde(default)]
    pub sw: Vec<(i64, ElementInput)>,
    #[serde(default)]
    pub hplus_sw: Vec<ElementInput>,
}

impl LedgerJson {
    pub fn into_ledger(self) -> Result<SWLedger, SteenrodError> {
        let ring = self.ring.into_ring()?;
        let segre = self.segre.iter().map(|e| e.resolve(&ring)).collect::<Result<Vec<_>, _>>()?;
        let sw = self.sw.iter().map(|(m, e)| Ok((*m, e.resolve(&ring)?))).collect::<Result<BTreeMap<_, _>, RingError>>()?;
        let w = self.hplus_sw.iter().map(|e| e.resolve(&ring)).collect::<Result<Vec<_>, _>>()?;
        let hplus = RealBundleClass::new(self.b_plus, w, Vec::new(), None)?;
        SWLedger::new(&ring, self.d, self.b_plus, segre, sw, hplus)
    }
}
