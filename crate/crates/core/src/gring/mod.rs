//! Finitely presented graded-commutative rings with exact coefficients.
//!
//! A ring is given by homogeneous generators, rewrite rules of the form
//! `g^k -> replacement` and a hard truncation degree. Elements are kept in
//! normal form: every monomial is irreducible, sorted in generator order, and
//! of total degree at most the truncation.

mod element;
pub mod expr;
pub mod json;
pub mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use element::Element;
pub use series::{Coefficient, FormalSeries, RationalSeries, Series};

/// Exponent vector indexed by generator position.
pub type Monomial = Vec<u32>;

pub(crate) type Terms = BTreeMap<Monomial, BigRational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("rewrite rules are not confluent: {0}")]
    NonConfluent(String),
    #[error("rule for {generator}^{power} is not homogeneous")]
    InhomogeneousRule { generator: String, power: u32 },
    #[error("rule for {generator}^{power} does not decrease in monomial order")]
    UnorderedRule { generator: String, power: u32 },
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("ring has no top monomial")]
    NoTopMonomial,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("operation needs rational coefficients")]
    NonRationalCoefficients,
    #[error("argument is not nilpotent")]
    NonNilpotentArgument,
    #[error("{0} is not in the coefficient ring")]
    NotInCoefficientRing(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("parse error at {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}

/// Coefficient ring of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffRing {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Z2")]
    Mod2,
}

impl CoeffRing {
    pub fn tag(self) -> &'static str {
        match self {
            CoeffRing::Integers => "Z",
            CoeffRing::Rationals => "Q",
            CoeffRing::Mod2 => "Z2",
        }
    }

    /// Brings a rational into canonical form for this ring.
    pub fn normalize(self, q: BigRational) -> Result<BigRational, RingError> {
        match self {
            CoeffRing::Rationals => Ok(q),
            CoeffRing::Integers => {
                if q.is_integer() {
                    Ok(q)
                } else {
                    Err(RingError::NotInCoefficientRing(q.to_string()))
                }
            }
            CoeffRing::Mod2 => {
                if q.denom().is_even() {
                    return Err(RingError::NotInCoefficientRing(q.to_string()));
                }
                Ok(if q.numer().is_odd() { BigRational::one() } else { BigRational::zero() })
            }
        }
    }

    fn is_unit(self, q: &BigRational) -> bool {
        match self {
            CoeffRing::Rationals => !q.is_zero(),
            CoeffRing::Integers => q.is_integer() && q.abs().is_one(),
            CoeffRing::Mod2 => q.is_one(),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Right-hand side of a rewrite rule before the ring exists.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleRhs {
    Expr(String),
    Terms(Vec<(Monomial, BigRational)>),
}

impl From<&str> for RuleRhs {
    fn from(s: &str) -> Self {
        RuleRhs::Expr(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub generator: String,
    pub power: u32,
    pub replacement: RuleRhs,
}

/// Unvalidated ring data. Call [`RingPresentation::build`] to get a [`Ring`].
#[derive(Debug, Clone, PartialEq)]
pub struct RingPresentation {
    pub coeff: CoeffRing,
    pub generators: Vec<Generator>,
    pub rules: Vec<RewriteRule>,
    pub trunc: u32,
    pub top: Option<Monomial>,
}

impl RingPresentation {
    pub fn new(coeff: CoeffRing, gens: &[(&str, u32)], trunc: u32) -> Self {
        RingPresentation {
            coeff,
            generators: gens
                .iter()
                .map(|(n, d)| Generator { name: n.to_string(), degree: *d })
                .collect(),
            rules: Vec::new(),
            trunc,
            top: None,
        }
    }

    pub fn with_rule(mut self, generator: &str, power: u32, rhs: impl Into<RuleRhs>) -> Self {
        self.rules.push(RewriteRule {
            generator: generator.to_string(),
            power,
            replacement: rhs.into(),
        });
        self
    }

    pub fn with_top(mut self, top: Monomial) -> Self {
        self.top = Some(top);
        self
    }

    pub fn build(self) -> Result<Ring, RingError> {
        Ring::new(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Rule {
    gen: usize,
    power: u32,
    rhs: Terms,
}

#[derive(Debug, PartialEq)]
pub(crate) struct RingData {
    coeff: CoeffRing,
    names: Vec<String>,
    degrees: Vec<u32>,
    odd: Vec<bool>,
    rules: Vec<Rule>,
    trunc: u32,
    top: Option<Monomial>,
}

/// A validated presentation. Cloning is cheap.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("coeff", &self.0.coeff)
            .field("gens", &self.0.names)
            .field("trunc", &self.0.trunc)
            .finish()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(p: RingPresentation) -> Result<Ring, RingError> {
        let n = p.generators.len();
        let mut names: Vec<String> = Vec::with_capacity(n);
        for g in &p.generators {
            if !is_identifier(&g.name) {
                return Err(RingError::InvalidPresentation(format!("bad generator name {:?}", g.name)));
            }
            if names.contains(&g.name) {
                return Err(RingError::InvalidPresentation(format!("duplicate generator {}", g.name)));
            }
            if g.degree == 0 {
                return Err(RingError::BadDegree(format!("generator {} has degree 0", g.name)));
            }
            names.push(g.name.clone());
        }
        let degrees: Vec<u32> = p.generators.iter().map(|g| g.degree).collect();
        let odd = degrees.iter().map(|d| d % 2 == 1).collect();
        let free = Ring(Arc::new(RingData {
            coeff: p.coeff,
            names: names.clone(),
            degrees: degrees.clone(),
            odd,
            rules: Vec::new(),
            trunc: p.trunc,
            top: None,
        }));

        let mut rules = Vec::with_capacity(p.rules.len());
        for r in &p.rules {
            let gen = free.index_of(&r.generator)?;
            if r.power == 0 {
                return Err(RingError::InvalidPresentation(format!("rule {}^0", r.generator)));
            }
            let rhs = match &r.replacement {
                RuleRhs::Expr(s) => expr::parse_element(&free, s)?.terms,
                RuleRhs::Terms(ts) => {
                    let mut out = Terms::new();
                    for (m, c) in ts {
                        if m.len() != n {
                            return Err(RingError::InvalidPresentation(format!(
                                "monomial {m:?} has wrong length"
                            )));
                        }
                        free.add_raw(&mut out, m.clone(), free.coeff().normalize(c.clone())?);
                    }
                    out
                }
            };
            let lhs_deg = r.power * degrees[gen];
            let bad = || RingError::InhomogeneousRule { generator: r.generator.clone(), power: r.power };
            let mut lhs = vec![0u32; n];
            lhs[gen] = r.power;
            for m in rhs.keys() {
                if free.degree_of(m) != lhs_deg {
                    return Err(bad());
                }
                if m.iter().zip(&lhs).find(|(a, b)| a != b).map(|(a, b)| a < b) != Some(true) {
                    return Err(RingError::UnorderedRule { generator: r.generator.clone(), power: r.power });
                }
            }
            rules.push(Rule { gen, power: r.power, rhs });
        }

        let mut data = RingData {
            coeff: p.coeff,
            names,
            degrees,
            odd: free.0.odd.clone(),
            rules,
            trunc: p.trunc,
            top: None,
        };
        // Replacements may themselves be reducible by other rules.
        let staged = Ring(Arc::new(RingData { rules: data.rules.clone(), ..clone_shallow(&data) }));
        for rule in &mut data.rules {
            let mut out = Terms::new();
            for (m, c) in &rule.rhs {
                staged.reduce_into(m.clone(), c.clone(), &mut out);
            }
            rule.rhs = out;
        }
        let ring = Ring(Arc::new(RingData { rules: data.rules.clone(), ..clone_shallow(&data) }));
        ring.check_confluence()?;

        let top = match p.top {
            Some(t) => {
                if t.len() != n || ring.degree_of(&t) > p.trunc || ring.find_rule(&t).is_some() {
                    return Err(RingError::InvalidPresentation(format!("bad top monomial {t:?}")));
                }
                Some(t)
            }
            None => ring.default_top(),
        };
        data.top = top;
        Ok(Ring(Arc::new(data)))
    }

    /// Free graded-commutative ring on the given generators.
    pub fn free(coeff: CoeffRing, gens: &[(&str, u32)], trunc: u32) -> Result<Ring, RingError> {
        RingPresentation::new(coeff, gens, trunc).build()
    }

    /// Exterior algebra on degree-one generators over `Q`.
    pub fn exterior(names: &[String]) -> Result<Ring, RingError> {
        let gens: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
        Ring::free(CoeffRing::Rationals, &gens, names.len() as u32)
    }

    pub fn coeff(&self) -> CoeffRing {
        self.0.coeff
    }

    pub fn trunc(&self) -> u32 {
        self.0.trunc
    }

    pub fn ngens(&self) -> usize {
        self.0.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn generator_degree(&self, i: usize) -> u32 {
        self.0.degrees[i]
    }

    pub fn top_monomial(&self) -> Option<&Monomial> {
        self.0.top.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, RingError> {
        self.0
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| RingError::UnknownGenerator(name.to_string()))
    }

    pub fn degree_of(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.0.degrees).map(|(e, d)| e * d).sum()
    }

    /// The same presentation with a different truncation degree.
    pub fn with_trunc(&self, trunc: u32) -> Result<Ring, RingError> {
        self.to_presentation().map(|mut p| {
            p.trunc = trunc;
            p.top = p.top.filter(|t| self.degree_of(t) <= trunc);
            p
        })?
        .build()
    }

    /// The same generators and rules over another coefficient ring.
    pub fn with_coeff(&self, coeff: CoeffRing) -> Result<Ring, RingError> {
        let mut p = self.to_presentation()?;
        p.coeff = coeff;
        p.build()
    }

    pub fn to_presentation(&self) -> Result<RingPresentation, RingError> {
        Ok(RingPresentation {
            coeff: self.0.coeff,
            generators: self
                .0
                .names
                .iter()
                .zip(&self.0.degrees)
                .map(|(n, d)| Generator { name: n.clone(), degree: *d })
                .collect(),
            rules: self
                .0
                .rules
                .iter()
                .map(|r| RewriteRule {
                    generator: self.0.names[r.gen].clone(),
                    power: r.power,
                    replacement: RuleRhs::Terms(r.rhs.iter().map(|(m, c)| (m.clone(), c.clone())).collect()),
                })
                .collect(),
            trunc: self.0.trunc,
            top: self.0.top.clone(),
        })
    }

    pub fn zero(&self) -> Element {
        Element::from_terms(self.clone(), Terms::new())
    }

    pub fn one(&self) -> Element {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Element {
        self.scalar(&BigRational::from_integer(BigInt::from(n))).expect("integers lie in every coefficient ring")
    }

    pub fn scalar(&self, q: &BigRational) -> Result<Element, RingError> {
        let mut t = Terms::new();
        self.add_raw(&mut t, vec![0; self.ngens()], self.coeff().normalize(q.clone())?);
        Ok(Element::from_terms(self.clone(), t))
    }

    pub fn gen(&self, name: &str) -> Result<Element, RingError> {
        let i = self.index_of(name)?;
        Ok(self.gen_at(i))
    }

    pub fn gen_at(&self, i: usize) -> Element {
        let mut m = vec![0; self.ngens()];
        m[i] = 1;
        self.monomial(m, BigRational::one())
    }

    /// Normal form of `c * m`.
    pub fn monomial(&self, m: Monomial, c: BigRational) -> Element {
        let mut t = Terms::new();
        if let Some(m) = self.admissible(m) {
            let c = self.coeff().normalize(c).expect("coefficient outside ring");
            self.reduce_into(m, c, &mut t);
        }
        Element::from_terms(self.clone(), t)
    }

    /// Parses an expression in this ring's generators.
    pub fn parse(&self, src: &str) -> Result<Element, RingError> {
        expr::parse_element(self, src)
    }

    /// Re-expresses an element of a ring with the same generators in this ring.
    pub fn convert(&self, e: &Element) -> Result<Element, RingError> {
        let src = e.ring();
        if src.0.names != self.0.names || src.0.degrees != self.0.degrees {
            return Err(RingError::RingMismatch);
        }
        let mut t = Terms::new();
        for (m, c) in e.terms() {
            if let Some(m) = self.admissible(m.clone()) {
                let c = self.coeff().normalize(c.clone())?;
                self.reduce_into(m, c, &mut t);
            }
        }
        Ok(Element::from_terms(self.clone(), t))
    }

    fn admissible(&self, m: Monomial) -> Option<Monomial> {
        if self.degree_of(&m) > self.0.trunc {
            return None;
        }
        if self.kills_squares() && m.iter().zip(&self.0.odd).any(|(e, o)| *o && *e >= 2) {
            return None;
        }
        Some(m)
    }

    fn kills_squares(&self) -> bool {
        self.0.coeff != CoeffRing::Mod2
    }

    pub(crate) fn add_raw(&self, t: &mut Terms, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match t.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                let s = if self.0.coeff == CoeffRing::Mod2 {
                    self.0.coeff.normalize(s).expect("mod 2 sums stay integral")
                } else {
                    s
                };
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Product of two normal monomials before rewriting: sign flag and exponent sum.
    pub(crate) fn mul_raw(&self, a: &[u32], b: &[u32]) -> Option<(bool, Monomial)> {
        let d = &self.0;
        if self.degree_of(a) + self.degree_of(b) > d.trunc {
            return None;
        }
        let mut neg = false;
        if self.kills_squares() {
            let mut odd_after = 0u32;
            for j in (0..a.len()).rev() {
                if d.odd[j] && b[j] % 2 == 1 && odd_after % 2 == 1 {
                    neg = !neg;
                }
                if d.odd[j] {
                    odd_after += a[j];
                    if a[j] + b[j] >= 2 {
                        return None;
                    }
                }
            }
        }
        Some((neg, a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }

    fn find_rule(&self, m: &[u32]) -> Option<&Rule> {
        self.0.rules.iter().find(|r| m[r.gen] >= r.power)
    }

    /// Sign of pulling `g^k` to the front of a normal monomial.
    fn extraction_negates(&self, m: &[u32], gen: usize, power: u32) -> bool {
        if !self.kills_squares() || (power * self.0.degrees[gen]).is_multiple_of(2) {
            return false;
        }
        let before: u32 = (0..gen).filter(|&i| self.0.odd[i]).map(|i| m[i]).sum();
        before % 2 == 1
    }

    /// Rewrites `c * m` to normal form and accumulates into `out`.
    pub(crate) fn reduce_into(&self, m: Monomial, c: BigRational, out: &mut Terms) {
        let Some(rule) = self.find_rule(&m) else {
            self.add_raw(out, m, c);
            return;
        };
        self.apply_rule(&m, rule, c, out);
    }

    fn apply_rule(&self, m: &[u32], rule: &Rule, c: BigRational, out: &mut Terms) {
        let neg = self.extraction_negates(m, rule.gen, rule.power);
        let mut rest = m.to_vec();
        rest[rule.gen] -= rule.power;
        for (rm, rc) in &rule.rhs {
            if let Some((neg2, prod)) = self.mul_raw(rm, &rest) {
                let mut coef = &c * rc;
                if neg != neg2 {
                    coef = -coef;
                }
                let coef = self.0.coeff.normalize(coef).expect("products stay in the coefficient ring");
                self.reduce_into(prod, coef, out);
            }
        }
    }

    fn check_confluence(&self) -> Result<(), RingError> {
        let rules = &self.0.rules;
        let n = self.ngens();
        for (i, r1) in rules.iter().enumerate() {
            if self.kills_squares() && self.0.odd[r1.gen] {
                // g^2 = 0 holds automatically and must agree with the rule.
                let mut lcm = vec![0; n];
                lcm[r1.gen] = r1.power.max(2);
                if self.degree_of(&lcm) <= self.0.trunc {
                    let mut via_rule = Terms::new();
                    self.apply_rule(&lcm, r1, BigRational::one(), &mut via_rule);
                    if !via_rule.is_empty() {
                        return Err(RingError::NonConfluent(format!(
                            "{}^{} rule conflicts with odd-square vanishing",
                            self.0.names[r1.gen], r1.power
                        )));
                    }
                }
            }
            for r2 in &rules[i + 1..] {
                let mut lcm = vec![0; n];
                lcm[r1.gen] = r1.power;
                lcm[r2.gen] = lcm[r2.gen].max(r2.power);
                if self.degree_of(&lcm) > self.0.trunc {
                    continue;
                }
                if self.admissible(lcm.clone()).is_none() {
                    continue;
                }
                let mut a = Terms::new();
                let mut b = Terms::new();
                self.apply_rule(&lcm, r1, BigRational::one(), &mut a);
                self.apply_rule(&lcm, r2, BigRational::one(), &mut b);
                if a != b {
                    return Err(RingError::NonConfluent(format!(
                        "overlap of {}^{} and {}^{}",
                        self.0.names[r1.gen], r1.power, self.0.names[r2.gen], r2.power
                    )));
                }
            }
        }
        Ok(())
    }

    fn default_top(&self) -> Option<Monomial> {
        let n = self.ngens();
        let mut top = vec![0; n];
        for (g, t) in top.iter_mut().enumerate() {
            let nil = self
                .0
                .rules
                .iter()
                .filter(|r| r.gen == g && r.rhs.is_empty())
                .map(|r| r.power)
                .min();
            let bound = match (nil, self.kills_squares() && self.0.odd[g]) {
                (Some(k), true) => k.min(2),
                (Some(k), false) => k,
                (None, true) => 2,
                (None, false) => return None,
            };
            *t = bound - 1;
        }
        (self.degree_of(&top) <= self.0.trunc && self.find_rule(&top).is_none()).then_some(top)
    }
}

fn clone_shallow(d: &RingData) -> RingData {
    RingData {
        coeff: d.coeff,
        names: d.names.clone(),
        degrees: d.degrees.clone(),
        odd: d.odd.clone(),
        rules: Vec::new(),
        trunc: d.trunc,
        top: None,
    }
}

/// Formats a rational as `num/den`.
pub fn fmt_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<BigRational, RingError> {
    let bad = || RingError::ParseError { pos: 0, msg: format!("not a rational: {s:?}") };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
