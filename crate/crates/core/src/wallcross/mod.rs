//! Chamber differences of families Seiberg-Witten invariants.
//!
//! The jump across a wall is `Obs(phi, psi) s_{m-d+1}(D)`. The obstruction
//! class itself is derived in two situations only: symbolically inside the
//! cohomology of the sphere bundle of `H^+`, and for trivialised `H^+`.
//! [`unparam_wall_crossing`] specialises everything to the `b+ = 1` wall on
//! the Jacobian torus of a four-manifold.

mod sphere;
mod torus;

use thiserror::Error;

use crate::charclass::ClassError;
use crate::gring::{Element, RingError};

pub use sphere::{obs_from_algebra, parity_check, ParityReport, SphereBundleElement, SphereContext};
pub use torus::{chern_character_d_torus, unparam_wall_crossing, TorusContext, TorusWallInput, TorusWallResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WallError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("sphere-bundle elements have different contexts")]
    ContextMismatch,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("b1 = {0} must be positive and even")]
    OddB1(i64),
    #[error("M is not an antisymmetric b1 x b1 matrix: {0}")]
    NonAntisymmetricM(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

/// `SW_m(phi) - SW_m(psi)`: zero for `m < d - 1`, else `obs s_{m-d+1}(D)`.
pub fn wall_difference(m: i64, d: i64, obs: &Element, segre_d: &[Element]) -> Result<Element, WallError> {
    if m < 0 {
        return Err(WallError::BadInput(format!("m = {m} is negative")));
    }
    let ring = obs.ring();
    let k = m - (d - 1);
    if k < 0 {
        return Ok(ring.zero());
    }
    let s = match segre_d.get(k as usize) {
        Some(s) => s.clone(),
        None if k == 0 => ring.one(),
        None => ring.zero(),
    };
    Ok(obs.try_mul(&s)?)
}

/// `(-1)^{b+ - 1} (phi^* nu - psi^* nu)` for trivialised `H^+`.
pub fn obs_trivialized(b_plus: i64, phi_pull: &Element, psi_pull: &Element) -> Result<Element, WallError> {
    for (name, e) in [("phi^*(nu)", phi_pull), ("psi^*(nu)", psi_pull)] {
        if !e.is_homogeneous_of(b_plus - 1) {
            return Err(WallError::DegreeMismatch(format!("{name} must have degree {}", b_plus - 1)));
        }
    }
    let diff = phi_pull.try_sub(psi_pull)?;
    Ok(if (b_plus - 1) % 2 == 0 { diff } else { -diff })
}
