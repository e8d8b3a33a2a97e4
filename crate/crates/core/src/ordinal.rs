//! Countable ordinals below ε₀ in Cantor normal form.
//!
//! Only comparison, addition, successor/limit classification and parity are
//! provided; nothing in the engine multiplies ordinals.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default nesting cap enforced by [`Ordinal::validate`].
pub const DEFAULT_DEPTH_CAP: usize = 8;

/// `ω^e₁·c₁ + ω^e₂·c₂ + …` with `e₁ > e₂ > …` and every `cᵢ ≥ 1`.
/// The empty term list is 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Class {
    Zero,
    Successor(Ordinal),
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of(n: u64) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Ordinal {
        Ordinal::from(1)
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Ordinal {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// `ω·j + m`, the shape of every sequence length and position.
    pub fn omega_times_plus(j: u64, m: u64) -> Ordinal {
        let mut terms = Vec::new();
        if j > 0 {
            terms.push((Ordinal::one(), j));
        }
        if m > 0 {
            terms.push((Ordinal::zero(), m));
        }
        Ordinal { terms }
    }

    /// Builds from raw terms, rejecting anything not in normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Ordinal> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::Validation(
                    "ordinal exponents must strictly decrease".into(),
                ));
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(Error::Validation("ordinal coefficients must be ≥ 1".into()));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// The `n` in `γ + n` with `γ` zero or a limit.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    /// Strips the finite part, leaving zero or a limit.
    pub fn limit_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if matches!(terms.last(), Some((e, _)) if e.is_zero()) {
            terms.pop();
        }
        Ordinal { terms }
    }

    /// Decomposes `self` as `ω·j + m`, if it has that shape.
    pub fn as_omega_linear(&self) -> Option<(u64, u64)> {
        let mut j = 0;
        let mut m = 0;
        for (e, c) in &self.terms {
            match e.as_finite() {
                Some(1) => j = *c,
                Some(0) => m = *c,
                _ => return None,
            }
        }
        Some((j, m))
    }

    /// Nesting depth of exponents; finite ordinals have depth 1, 0 has depth 0.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| 1 + e.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn validate(&self, cap: usize) -> Result<()> {
        if self.depth() > cap {
            return Err(Error::Validation(format!(
                "ordinal nesting depth {} exceeds cap {cap}",
                self.depth()
            )));
        }
        Ok(())
    }

    pub fn classify(&self) -> Class {
        match self.terms.last() {
            None => Class::Zero,
            Some((e, c)) if e.is_zero() => {
                let mut terms = self.terms.clone();
                if *c == 1 {
                    terms.pop();
                } else {
                    terms.last_mut().unwrap().1 = c - 1;
                }
                Class::Successor(Ordinal { terms })
            }
            Some(_) => Class::Limit,
        }
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.finite_part())
    }

    pub fn predecessor(&self) -> Option<Ordinal> {
        match self.classify() {
            Class::Successor(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == Class::Limit
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Ordinal sum `self + rhs`: every term of `self` whose exponent is below
    /// the leading exponent of `rhs` is absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((lead, lead_coeff)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e >= lead)
            .cloned()
            .collect();
        match terms.last_mut() {
            Some((e, c)) if e == lead => *c += lead_coeff,
            _ => terms.push((lead.clone(), *lead_coeff)),
        }
        terms.extend(rhs.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    pub fn add_finite(&self, n: u64) -> Ordinal {
        self.add(&Ordinal::from(n))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Ordinal {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match e.as_finite() {
                Some(0) => write!(f, "{c}")?,
                Some(1) => write!(f, "ω")?,
                Some(n) => write!(f, "ω^{n}")?,
                None => write!(f, "ω^({e})")?,
            }
            if *c > 1 && !e.is_zero() {
                write!(f, "·{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

/// One `[exponent, coefficient]` pair; finite exponents are plain integers.
struct Term<'a>(&'a Ordinal, u64);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        match self.0.as_finite() {
            Some(n) => seq.serialize_element(&n)?,
            None => seq.serialize_element(self.0)?,
        }
        seq.serialize_element(&self.1)?;
        seq.end()
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term(e, *c))?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawExponent {
    Finite(u64),
    Nested(Ordinal),
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ordinal, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Ordinal;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of [exponent, coefficient] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Ordinal, A::Error> {
                let mut terms = Vec::new();
                while let Some((e, c)) = seq.next_element::<(RawExponent, u64)>()? {
                    let e = match e {
                        RawExponent::Finite(n) => Ordinal::from(n),
                        RawExponent::Nested(o) => o,
                    };
                    terms.push((e, c));
                }
                let o = Ordinal::from_terms(terms).map_err(de::Error::custom)?;
                o.validate(DEFAULT_DEPTH_CAP).map_err(de::Error::custom)?;
                Ok(o)
            }
        }
        d.deserialize_seq(V)
    }
}

/// The CNF text form, e.g. `[[1,1],[0,3]]` for ω+3.
pub fn to_text(o: &Ordinal) -> String {
    serde_json::to_string(o).expect("ordinal serializes")
}

/// Serializes an ordinal as its text form inside a JSON string.
pub fn serde_text<S: Serializer>(o: &Ordinal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_text(o))
}

pub fn serde_text_opt<S: Serializer>(o: &Option<Ordinal>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match o {
        Some(o) => s.serialize_str(&to_text(o)),
        None => s.serialize_none(),
    }
}

pub fn from_text(s: &str) -> Result<Ordinal> {
    serde_json::from_str(s).map_err(|e| Error::Validation(format!("bad ordinal {s:?}: {e}")))
}
