//! The `b+ = 1` wall over the Jacobian torus `T` of a four-manifold `X`.
//!
//! Torus classes `x_i` pair with classes `y_i` on `X` through
//! `Omega = sum_i x_i y_i`. An element of `H*(T) (x) H*(X)` is written with
//! its torus factor on the left, and `T` is oriented by `x_1 ... x_{b1}`.
//! Fibre integration sends `c y_i y_j` to `M[i][j]`; any product of four
//! `y` classes vanishes on `X`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::WallError;
use crate::charclass::{chern_from_character, segre};
use crate::gring::{Element, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusWallInput {
    pub b1: i64,
    pub d: i64,
    #[serde(rename = "M")]
    pub m: Vec<Vec<i64>>,
}

impl TorusWallInput {
    pub fn validate(&self) -> Result<(), WallError> {
        if self.b1 <= 0 || self.b1 % 2 != 0 {
            return Err(WallError::OddB1(self.b1));
        }
        let n = self.b1 as usize;
        if self.m.len() != n || self.m.iter().any(|r| r.len() != n) {
            return Err(WallError::NonAntisymmetricM(format!("expected {n} x {n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if self.m[i][j] != -self.m[j][i] {
                    return Err(WallError::NonAntisymmetricM(format!("M[{i}][{j}] != -M[{j}][{i}]")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorusWallResult {
    /// `int_X (c/2) (Omega^2/2)`, a degree-2 class on `T`.
    pub alpha: Element,
    /// `Ch(D) = d + alpha`.
    pub ch: Element,
    /// `SW^+ - SW^- = int_T s_{b1/2}(D)`.
    pub jump: BigRational,
}

/// Rings and `Omega^2 / 2` for a fixed `b1`, reusable across matrices.
#[derive(Debug, Clone)]
pub struct TorusContext {
    b1: usize,
    torus: Ring,
    /// `(i, j, class)` with `int_X (c/2)(Omega^2/2) = sum M[i][j] class`.
    pairs: Vec<(usize, usize, Element)>,
}

impl TorusContext {
    pub fn new(b1: i64) -> Result<Self, WallError> {
        if b1 <= 0 || b1 % 2 != 0 {
            return Err(WallError::OddB1(b1));
        }
        let n = b1 as usize;
        let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
        let torus = Ring::exterior(&xs)?;
        let both = Ring::exterior(&[xs, ys].concat())?;
        let omega = (0..n).fold(both.zero(), |acc, i| &acc + &(&both.gen_at(i) * &both.gen_at(n + i)));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let omega2 = (&omega * &omega).scale(&half)?;
        let mut pairs = Vec::new();
        for (mono, c) in omega2.terms() {
            let y: Vec<usize> = (0..n).filter(|&i| mono[n + i] > 0).collect();
            let [i, j] = y[..] else { continue };
            let x = torus.monomial(mono[..n].to_vec(), c * &half);
            pairs.push((i, j, x));
        }
        Ok(TorusContext { b1: n, torus, pairs })
    }

    pub fn torus_ring(&self) -> &Ring {
        &self.torus
    }

    pub fn alpha(&self, input: &TorusWallInput) -> Result<Element, WallError> {
        input.validate()?;
        if input.b1 as usize != self.b1 {
            return Err(WallError::BadInput(format!("context is for b1 = {}", self.b1)));
        }
        Ok(self.pairs.iter().fold(self.torus.zero(), |acc, (i, j, x)| &acc + &x.scale_int(input.m[*i][*j])))
    }

    pub fn evaluate(&self, input: &TorusWallInput) -> Result<TorusWallResult, WallError> {
        let alpha = self.alpha(input)?;
        let ch = &self.torus.int(input.d) + &alpha;
        let s = segre(&chern_from_character(&ch)?)?;
        let top = s.get(self.b1 / 2).cloned().unwrap_or_else(|| self.torus.zero());
        let jump = top.top_coefficient()?;
        Ok(TorusWallResult { alpha, ch, jump })
    }
}

/// `SW^+ - SW^-` across the `b+ = 1` wall, via the general wall-crossing
/// formula with `Obs = 1` on the torus.
pub fn unparam_wall_crossing(input: &TorusWallInput) -> Result<TorusWallResult, WallError> {
    TorusContext::new(input.b1)?.evaluate(input)
}

/// `Ch(D) = d + (1/4) int_X c Omega^2` on the torus.
pub fn chern_character_d_torus(input: &TorusWallInput) -> Result<Element, WallError> {
    Ok(unparam_wall_crossing(input)?.ch)
}
