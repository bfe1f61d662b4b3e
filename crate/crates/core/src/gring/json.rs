//! JSON wire formats for rings and elements.
//!
//! Ring: `{"coeff":"Z|Q|Z2","gens":[["x",1],...],"rules":[["x",2,{"terms":[]}],...],"trunc":N}`
//! with an optional `"top"` exponent vector. Element:
//! `{"terms":[[[e1,e2,...],"num/den"],...]}`. Elements may also be given as an
//! expression string wherever an element is read.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{fmt_rational, parse_rational, CoeffRing, Element, Monomial, Ring, RingError, RingPresentation, RuleRhs};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    pub terms: Vec<(Monomial, String)>,
}

/// An element as read from input: explicit terms or an expression.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ElementInput {
    Terms(ElementJson),
    Expr(String),
}

impl ElementInput {
    pub fn resolve(&self, ring: &Ring) -> Result<Element, RingError> {
        match self {
            ElementInput::Expr(s) => ring.parse(s),
            ElementInput::Terms(t) => element_from_json(ring, t),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RingJson {
    pub coeff: CoeffRing,
    pub gens: Vec<(String, u32)>,
    #[serde(default)]
    pub rules: Vec<(String, u32, ElementInput)>,
    pub trunc: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<Monomial>,
}

fn terms_of(t: &ElementJson) -> Result<Vec<(Monomial, BigRational)>, RingError> {
    t.terms.iter().map(|(m, c)| Ok((m.clone(), parse_rational(c)?))).collect()
}

pub fn element_to_json(e: &Element) -> ElementJson {
    ElementJson { terms: e.terms().map(|(m, c)| (m.clone(), fmt_rational(c))).collect() }
}

pub fn element_from_json(ring: &Ring, t: &ElementJson) -> Result<Element, RingError> {
    let mut acc = ring.zero();
    for (m, c) in terms_of(t)? {
        if m.len() != ring.ngens() {
            return Err(RingError::InvalidPresentation(format!("monomial {m:?} has wrong length")));
        }
        let c = ring.coeff().normalize(c)?;
        acc = &acc + &ring.monomial(m, c);
    }
    Ok(acc)
}

impl RingJson {
    pub fn into_ring(self) -> Result<Ring, RingError> {
        let gens: Vec<(&str, u32)> = self.gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        let mut p = RingPresentation::new(self.coeff, &gens, self.trunc);
        p.top = self.top.clone();
        for (g, k, rhs) in &self.rules {
            let rhs = match rhs {
                ElementInput::Expr(s) => RuleRhs::Expr(s.clone()),
                ElementInput::Terms(t) => RuleRhs::Terms(terms_of(t)?),
            };
            p = p.with_rule(g, *k, rhs);
        }
        p.build()
    }

    pub fn from_ring(ring: &Ring) -> RingJson {
        let p = ring.to_presentation().expect("presentation of a built ring");
        RingJson {
            coeff: p.coeff,
            gens: p.generators.iter().map(|g| (g.name.clone(), g.degree)).collect(),
            rules: p
                .rules
                .iter()
                .map(|r| {
                    let terms = match &r.replacement {
                        RuleRhs::Terms(ts) => ts.iter().map(|(m, c)| (m.clone(), fmt_rational(c))).collect(),
                        RuleRhs::Expr(_) => unreachable!("built rings store terms"),
                    };
                    (r.generator.clone(), r.power, ElementInput::Terms(ElementJson { terms }))
                })
                .collect(),
            trunc: p.trunc,
            top: p.top,
        }
    }
}

pub fn ring_from_str(s: &str) -> Result<Ring, RingError> {
    let j: RingJson = serde_json::from_str(s).map_err(|e| RingError::InvalidPresentation(e.to_string()))?;
    j.into_ring()
}

pub fn ring_to_value(ring: &Ring) -> Value {
    serde_json::to_value(RingJson::from_ring(ring)).expect("ring serializes")
}

/// Element as JSON terms plus its display string.
pub fn element_value(e: &Element) -> Value {
    json!({ "terms": element_to_json(e).terms, "text": e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_round_trip() {
        let src = r#"{"coeff":"Z2","gens":[["x",1],["y",1]],"rules":[["x",2,{"terms":[]}],["y",2,"0"]],"trunc":2}"#;
        let ring = ring_from_str(src).unwrap();
        let back = serde_json::to_string(&RingJson::from_ring(&ring)).unwrap();
        let again = ring_from_str(&back).unwrap();
        assert_eq!(ring, again);
        assert_eq!(ring.top_monomial(), Some(&vec![1, 1]));
    }

    #[test]
    fn element_round_trip() {
        let ring = Ring::free(CoeffRing::Rationals, &[("a", 2), ("b", 4)], 8).unwrap();
        let e = ring.parse("1/2*a^2 - 3*b + 7").unwrap();
        let j = element_to_json(&e);
        assert_eq!(element_from_json(&ring, &j).unwrap(), e);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"terms":[[[0,0],"7/1"],[[0,1],"-3/1"],[[2,0],"1/2"]]}"#);
    }

    #[test]
    fn rejects_bad_rules() {
        let bad = r#"{"coeff":"Q","gens":[["x",2]],"rules":[["x",2,"x"]],"trunc":4}"#;
        assert!(matches!(ring_from_str(bad), Err(RingError::InhomogeneousRule { .. })));
        let unknown = r#"{"coeff":"Q","gens":[["x",2]],"rules":[["z",2,"0"]],"trunc":4}"#;
        assert!(matches!(ring_from_str(unknown), Err(RingError::UnknownGenerator(_))));
    }
}
