//! Exhaustive mod-2 checks of the binomial identities behind the Steenrod
//! square formulas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{binom_mod2, SteenrodError};
use crate::exec::Exec;

/// Inclusive integer bounds per parameter name.
///
/// For `recur3` the key `aprime` is an offset above the smallest admissible
/// `a' = max(k, -d + 1 + m + l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRange {
    bounds: BTreeMap<String, (i64, i64)>,
}

impl VerificationRange {
    pub fn new(bounds: &[(&str, i64, i64)]) -> Result<Self, SteenrodError> {
        let mut r = VerificationRange { bounds: BTreeMap::new() };
        for &(k, lo, hi) in bounds {
            r.set(k, lo, hi)?;
        }
        Ok(r)
    }

    pub fn vzero_default() -> Self {
        Self::new(&[("u", -20, 20), ("j", 0, 12)]).expect("valid default")
    }

    pub fn recur5_default() -> Self {
        Self::new(&[("u", -15, 15), ("v", -15, 15), ("j", 0, 10)]).expect("valid default")
    }

    pub fn recur3_default() -> Self {
        Self::new(&[("k", 0, 6), ("l", 0, 6), ("m", 0, 6), ("d", -3, 8), ("aprime", 0, 6)]).expect("valid default")
    }

    pub fn set(&mut self, key: &str, lo: i64, hi: i64) -> Result<(), SteenrodError> {
        if lo > hi {
            return Err(SteenrodError::BadRange(format!("{key}: empty interval {lo}..{hi}")));
        }
        self.bounds.insert(key.to_string(), (lo, hi));
        Ok(())
    }

    /// Parses `key=lo..hi` (or `key=n`) and overrides that bound.
    pub fn apply(&mut self, spec: &str) -> Result<(), SteenrodError> {
        let bad = || SteenrodError::BadRange(format!("expected key=lo..hi, got {spec:?}"));
        let (key, val) = spec.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = match val.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let n = val.trim().parse().map_err(|_| bad())?;
                (n, n)
            }
        };
        self.set(key.trim(), lo, hi)
    }

    pub fn get(&self, key: &str) -> Result<(i64, i64), SteenrodError> {
        self.bounds.get(key).copied().ok_or_else(|| SteenrodError::BadRange(format!("missing bound for {key}")))
    }

    fn nonneg(&self, key: &str) -> Result<(i64, i64), SteenrodError> {
        let (lo, hi) = self.get(key)?;
        if lo < 0 {
            return Err(SteenrodError::BadRange(format!("{key} must be non-negative")));
        }
        Ok((lo, hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub params: Vec<(&'static str, i64)>,
    pub lhs: bool,
    pub rhs: bool,
}

impl SweepRow {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: &'static str,
    pub rows: Vec<SweepRow>,
}

impl VerificationReport {
    pub fn checked(&self) -> usize {
        self.rows.len()
    }

    pub fn counterexamples(&self) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| !r.pass()).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(SweepRow::pass)
    }

    /// Header plus one row per checked point.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let Some(first) = self.rows.first() else { return out };
        let names: Vec<&str> = first.params.iter().map(|(k, _)| *k).collect();
        let _ = writeln!(out, "identity\t{}\tlhs\trhs\tpass", names.join("\t"));
        for r in &self.rows {
            let vals: Vec<String> = r.params.iter().map(|(_, v)| v.to_string()).collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                self.identity,
                vals.join("\t"),
                u8::from(r.lhs),
                u8::from(r.rhs),
                if r.pass() { "pass" } else { "FAIL" }
            );
        }
        out
    }
}

fn lattice(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for &(lo, hi) in ranges {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

/// `sum_l binom(u+l, j-l) binom(2l-1, l) = binom(u+1, j)` mod 2.
pub fn verify_vzero(range: &VerificationRange, exec: Exec) -> Result<VerificationReport, SteenrodError> {
    let pts = lattice(&[range.get("u")?, range.nonneg("j")?]);
    let rows = exec.map(&pts, |p| {
        let (u, j) = (p[0], p[1]);
        let lhs = (0..=j).filter(|&l| binom_mod2(u + l, j - l) && binom_mod2(2 * l - 1, l)).count() % 2 == 1;
        SweepRow { params: vec![("u", u), ("j", j)], lhs, rhs: binom_mod2(u + 1, j) }
    });
    Ok(VerificationReport { identity: "vzero", rows })
}

/// `sum_l binom(u+l, j-l) binom(v-l, l) = binom(v+u+1, j)` mod 2.
pub fn verify_recur5(range: &VerificationRange, exec: Exec) -> Result<VerificationReport, SteenrodError> {
    let pts = lattice(&[range.get("u")?, range.get("v")?, range.nonneg("j")?]);
    let rows = exec.map(&pts, |p| {
        let (u, v, j) = (p[0], p[1], p[2]);
        let lhs = (0..=j).filter(|&l| binom_mod2(u + l, j - l) && binom_mod2(v - l, l)).count() % 2 == 1;
        SweepRow { params: vec![("u", u), ("v", v), ("j", j)], lhs, rhs: binom_mod2(v + u + 1, j) }
    });
    Ok(VerificationReport { identity: "recur5", rows })
}

/// With `f(m, k, l) = binom(d-1-m+l+k, l)`:
/// `sum_{l'} f(m+l', k, l-l') binom(a'+d-1-m-l', l') = binom(a'-k, l)` mod 2.
pub fn verify_recur3(range: &VerificationRange, exec: Exec) -> Result<VerificationReport, SteenrodError> {
    let base = lattice(&[range.nonneg("k")?, range.nonneg("l")?, range.nonneg("m")?, range.get("d")?]);
    let (alo, ahi) = range.nonneg("aprime")?;
    let pts: Vec<Vec<i64>> = base
        .into_iter()
        .flat_map(|p| {
            let floor = p[0].max(-p[3] + 1 + p[2] + p[1]);
            (alo..=ahi).map(move |off| {
                let mut q = p.clone();
                q.push(floor + off);
                q
            })
        })
        .collect();
    let rows = exec.map(&pts, |p| {
        let (k, l, m, d, ap) = (p[0], p[1], p[2], p[3], p[4]);
        let f = |m: i64, k: i64, l: i64| binom_mod2(d - 1 - m + l + k, l);
        let lhs = (0..=l).filter(|&lp| f(m + lp, k, l - lp) && binom_mod2(ap + d - 1 - m - lp, lp)).count() % 2 == 1;
        SweepRow {
            params: vec![("k", k), ("l", l), ("m", m), ("d", d), ("aprime", ap)],
            lhs,
            rhs: binom_mod2(ap - k, l),
        }
    });
    Ok(VerificationReport { identity: "recur3", rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_points() {
        let r = VerificationRange::new(&[("u", 3, 3), ("j", 2, 2)]).unwrap();
        let rep = verify_vzero(&r, Exec::Sequential).unwrap();
        assert_eq!(rep.checked(), 1);
        assert!(rep.all_pass());
        let r = VerificationRange::new(&[("u", -4, 4), ("v", -1, -1), ("j", 0, 6)]).unwrap();
        assert!(verify_recur5(&r, Exec::Sequential).unwrap().all_pass());
    }

    #[test]
    fn range_parsing() {
        let mut r = VerificationRange::vzero_default();
        r.apply("u=-2..5").unwrap();
        assert_eq!(r.get("u").unwrap(), (-2, 5));
        r.apply("j=3").unwrap();
        assert_eq!(r.get("j").unwrap(), (3, 3));
        assert!(r.apply("j=5..1").is_err());
        assert!(r.apply("nonsense").is_err());
        r.set("j", -1, 2).unwrap();
        assert!(verify_vzero(&r, Exec::Sequential).is_err());
    }

    #[test]
    fn recur3_counts_and_tsv() {
        let r = VerificationRange::new(&[("k", 0, 1), ("l", 0, 1), ("m", 0, 0), ("d", 1, 1), ("aprime", 0, 2)]).unwrap();
        let rep = verify_recur3(&r, Exec::Sequential).unwrap();
        assert_eq!(rep.checked(), 12);
        assert!(rep.all_pass());
        let tsv = rep.to_tsv();
        assert!(tsv.starts_with("identity\tk\tl\tm\td\taprime\tlhs\trhs\tpass\n"));
        assert_eq!(tsv.lines().count(), 13);
    }
}
