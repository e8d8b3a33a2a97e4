//! Finitely presented bounded functions on the ordinal space `[0, ω^k]`.
//!
//! A level-`j` block is a function on `[0, ω^j)`. Level 0 is a single value;
//! level `j ≥ 1` is a list of level-`j-1` blocks followed by one block that
//! repeats forever. Position `ω^(j-1)·i + ρ` reads block `i` at `ρ`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Value(Q),
    Seq { prefix: Vec<Block>, rep: Box<Block> },
}

/// A point of `[0, ω^k]`: Cantor normal form coefficients below `ω^k`, most
/// significant first, or the top point `ω^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pt {
    Below(Vec<u64>),
    Top,
}

impl PartialOrd for Pt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Pt::Top, Pt::Top) => Ordering::Equal,
            (Pt::Top, _) => Ordering::Greater,
            (_, Pt::Top) => Ordering::Less,
            (Pt::Below(a), Pt::Below(b)) => a.cmp(b),
        }
    }
}

impl Pt {
    pub fn zero(k: u32) -> Pt {
        Pt::Below(vec![0; k as usize])
    }

    pub fn from_ordinal(k: u32, x: &Ordinal) -> Result<Pt> {
        let top = Ordinal::omega_pow(Ordinal::from(k as u64));
        if *x == top {
            return Ok(Pt::Top);
        }
        let oor = || Error::IndexOutOfRange {
            index: x.clone(),
            length: top.add_finite(1),
        };
        let mut coeffs = vec![0u64; k as usize];
        for (e, c) in x.terms() {
            let e = e.as_finite().filter(|e| *e < k as u64).ok_or_else(oor)?;
            coeffs[(k as u64 - 1 - e) as usize] = *c;
        }
        Ok(Pt::Below(coeffs))
    }

    pub fn to_ordinal(&self, k: u32) -> Ordinal {
        match self {
            Pt::Top => Ordinal::omega_pow(Ordinal::from(k as u64)),
            Pt::Below(c) => {
                let terms = c
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c > 0)
                    .map(|(i, c)| (Ordinal::from(k as u64 - 1 - i as u64), *c))
                    .collect();
                Ordinal::from_terms(terms).expect("coefficients give a CNF")
            }
        }
    }

    /// True for 0 and successors.
    pub fn is_isolated(&self) -> bool {
        match self {
            Pt::Top => false,
            Pt::Below(c) => c.last().is_none_or(|l| *l > 0) || c.iter().all(|x| *x == 0),
        }
    }
}

impl Block {
    pub fn level(&self) -> u32 {
        match self {
            Block::Value(_) => 0,
            Block::Seq { rep, .. } => 1 + rep.level(),
        }
    }

    pub fn constant(level: u32, v: Q) -> Block {
        let mut b = Block::Value(v);
        for _ in 0..level {
            b = Block::Seq {
                prefix: Vec::new(),
                rep: Box::new(b),
            };
        }
        b
    }

    fn check_level(&self, level: u32) -> Result<()> {
        match self {
            Block::Value(_) if level == 0 => Ok(()),
            Block::Seq { prefix, rep } if level > 0 => {
                prefix.iter().try_for_each(|b| b.check_level(level - 1))?;
                rep.check_level(level - 1)
            }
            _ => Err(Error::Validation(format!("block nesting does not match level {level}"))),
        }
    }

    /// Block `i` of a level ≥ 1 block.
    pub fn sub(&self, i: u64) -> &Block {
        match self {
            Block::Seq { prefix, rep } => prefix.get(i as usize).unwrap_or(rep),
            Block::Value(_) => panic!("level-0 block has no sub-blocks"),
        }
    }

    pub fn eval(&self, coeffs: &[u64]) -> &Q {
        match self {
            Block::Value(v) => v,
            Block::Seq { .. } => self.sub(coeffs[0]).eval(&coeffs[1..]),
        }
    }

    pub fn sup(&self) -> &Q {
        match self {
            Block::Value(v) => v,
            Block::Seq { prefix, rep } => prefix.iter().map(Block::sup).fold(rep.sup(), Ord::max),
        }
    }

    pub fn min(&self) -> &Q {
        match self {
            Block::Value(v) => v,
            Block::Seq { prefix, rep } => prefix.iter().map(Block::min).fold(rep.min(), Ord::min),
        }
    }

    /// `limsup` approaching the right end of the block's domain.
    pub fn tail_limsup(&self) -> &Q {
        match self {
            Block::Seq { rep, .. } => rep.sup(),
            Block::Value(_) => panic!("level-0 block has no right end limit"),
        }
    }

    /// Sup over coefficient positions in `[lo, hi)`; `None` bounds mean the
    /// start resp. the end of the block. `None` result for an empty range.
    pub fn sup_range(&self, lo: Option<&[u64]>, hi: Option<&[u64]>) -> Option<Q> {
        match self {
            Block::Value(v) => match hi {
                Some(_) => None,
                None => Some(v.clone()),
            },
            Block::Seq { prefix, rep } => {
                let (li, lo_rest) = match lo {
                    Some(c) => (c[0], Some(&c[1..])),
                    None => (0, None),
                };
                let full = |from: u64, to: Option<u64>| -> Option<Q> {
                    // Blocks with indices in [from, to).
                    let mut best: Option<Q> = None;
                    let end = to.unwrap_or(u64::MAX);
                    for i in from..end.min(prefix.len() as u64) {
                        best = max_opt(best, Some(prefix[i as usize].sup().clone()));
                    }
                    if end > from.max(prefix.len() as u64) {
                        best = max_opt(best, Some(rep.sup().clone()));
                    }
                    best
                };
                match hi {
                    None => max_opt(self.sub(li).sup_range(lo_rest, None), full(li + 1, None)),
                    Some(h) => {
                        let (hi_i, hi_rest) = (h[0], &h[1..]);
                        match li.cmp(&hi_i) {
                            Ordering::Greater => None,
                            Ordering::Equal => self.sub(li).sup_range(lo_rest, Some(hi_rest)),
                            Ordering::Less => max_opt(
                                max_opt(self.sub(li).sup_range(lo_rest, None), full(li + 1, Some(hi_i))),
                                self.sub(hi_i).sup_range(None, Some(hi_rest)),
                            ),
                        }
                    }
                }
            }
        }
    }

    /// Raises the value at position 0 to at least `v`.
    fn raise_first(&self, v: &Q) -> Block {
        match self {
            Block::Value(x) => Block::Value(x.max(v).clone()),
            Block::Seq { prefix, rep } => {
                let mut prefix = prefix.clone();
                if prefix.is_empty() {
                    prefix.push(rep.raise_first(v));
                } else {
                    prefix[0] = prefix[0].raise_first(v);
                }
                Block::Seq {
                    prefix,
                    rep: rep.clone(),
                }
            }
        }
    }

    /// Upper semicontinuous envelope of the block on its half-open domain.
    pub fn envelope(&self) -> Block {
        let Block::Seq { prefix, rep } = self else {
            return self.clone();
        };
        if rep.level() == 0 {
            // Every point of [0, ω) is isolated.
            return self.clone();
        }
        let er = rep.envelope();
        let mut np = Vec::with_capacity(prefix.len() + 1);
        if prefix.is_empty() {
            np.push(er.clone());
        } else {
            for (i, b) in prefix.iter().enumerate() {
                let e = b.envelope();
                np.push(if i == 0 {
                    e
                } else {
                    e.raise_first(prefix[i - 1].tail_limsup())
                });
            }
            np.push(er.raise_first(prefix.last().unwrap().tail_limsup()));
        }
        Block::Seq {
            prefix: np,
            rep: Box::new(er.raise_first(rep.tail_limsup())),
        }
    }

    pub fn combine(&self, other: &Block, op: &dyn Fn(&Q, &Q) -> Q) -> Block {
        match (self, other) {
            (Block::Value(a), Block::Value(b)) => Block::Value(op(a, b)),
            (Block::Seq { prefix: pa, rep: ra }, Block::Seq { prefix: pb, rep: rb }) => {
                let n = pa.len().max(pb.len());
                let prefix = (0..n)
                    .map(|i| {
                        let a = pa.get(i).unwrap_or(ra);
                        let b = pb.get(i).unwrap_or(rb);
                        a.combine(b, op)
                    })
                    .collect();
                Block::Seq {
                    prefix,
                    rep: Box::new(ra.combine(rb, op)),
                }
            }
            _ => panic!("combining blocks of different levels"),
        }
    }

    pub fn map(&self, op: &dyn Fn(&Q) -> Q) -> Block {
        match self {
            Block::Value(v) => Block::Value(op(v)),
            Block::Seq { prefix, rep } => Block::Seq {
                prefix: prefix.iter().map(|b| b.map(op)).collect(),
                rep: Box::new(rep.map(op)),
            },
        }
    }

    /// Trailing prefix blocks equal to the repeated block are dropped,
    /// recursively; equal functions have equal canonical blocks.
    pub fn canonical(&self) -> Block {
        match self {
            Block::Value(_) => self.clone(),
            Block::Seq { prefix, rep } => {
                let rep = rep.canonical();
                let mut prefix: Vec<Block> = prefix.iter().map(Block::canonical).collect();
                while prefix.last() == Some(&rep) {
                    prefix.pop();
                }
                Block::Seq {
                    prefix,
                    rep: Box::new(rep),
                }
            }
        }
    }

    /// Some position with a positive value.
    pub fn find_positive(&self) -> Option<Vec<u64>> {
        match self {
            Block::Value(v) => v.is_positive().then(Vec::new),
            Block::Seq { prefix, rep } => {
                for (i, b) in prefix.iter().enumerate() {
                    if let Some(mut rest) = b.find_positive() {
                        rest.insert(0, i as u64);
                        return Some(rest);
                    }
                }
                rep.find_positive().map(|mut rest| {
                    rest.insert(0, prefix.len() as u64);
                    rest
                })
            }
        }
    }

    /// Number of leaf values in the presentation.
    pub fn size(&self) -> usize {
        match self {
            Block::Value(_) => 1,
            Block::Seq { prefix, rep } => prefix.iter().map(Block::size).sum::<usize>() + rep.size(),
        }
    }
}

fn max_opt(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// A function on `[0, ω^k]`: `body` covers `[0, ω^k)`, `top` is the value at `ω^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitaryFunction {
    k: u32,
    body: Block,
    top: Q,
}

/// Pointwise operations available to [`FinitaryFunction::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    Max,
    Min,
}

impl CombineOp {
    fn apply(self, a: &Q, b: &Q) -> Q {
        match self {
            CombineOp::Add => a + b,
            CombineOp::Sub => a - b,
            CombineOp::Max => a.max(b).clone(),
            CombineOp::Min => a.min(b).clone(),
        }
    }
}

impl FinitaryFunction {
    pub fn new(k: u32, body: Block, top: Q) -> Result<FinitaryFunction> {
        if k == 0 {
            return Err(Error::Validation("the space [0, ω^k] needs k ≥ 1".into()));
        }
        body.check_level(k)?;
        Ok(FinitaryFunction { k, body, top })
    }

    /// Level-1 function from its value list, repeated value and top value.
    pub fn level1(prefix: Vec<Q>, rep: Q, top: Q) -> FinitaryFunction {
        FinitaryFunction {
            k: 1,
            body: Block::Seq {
                prefix: prefix.into_iter().map(Block::Value).collect(),
                rep: Box::new(Block::Value(rep)),
            },
            top,
        }
    }

    pub fn constant(k: u32, v: Q) -> FinitaryFunction {
        FinitaryFunction {
            k,
            body: Block::constant(k, v.clone()),
            top: v,
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn body(&self) -> &Block {
        &self.body
    }

    pub fn top(&self) -> &Q {
        &self.top
    }

    pub fn at(&self, x: &Pt) -> &Q {
        match x {
            Pt::Top => &self.top,
            Pt::Below(c) => self.body.eval(c),
        }
    }

    pub fn eval(&self, x: &Ordinal) -> Result<Q> {
        Ok(self.at(&Pt::from_ordinal(self.k, x)?).clone())
    }

    pub fn sup(&self) -> Q {
        self.body.sup().max(&self.top).clone()
    }

    pub fn min(&self) -> Q {
        self.body.min().min(&self.top).clone()
    }

    pub fn limsup_pt(&self, x: &Pt) -> Option<Q> {
        match x {
            Pt::Top => Some(self.body.tail_limsup().clone()),
            Pt::Below(c) => {
                if x.is_isolated() {
                    return None;
                }
                let p = c.iter().rposition(|v| *v > 0).unwrap();
                let mut b = &self.body;
                for ci in &c[..p] {
                    b = b.sub(*ci);
                }
                Some(b.sub(c[p] - 1).tail_limsup().clone())
            }
        }
    }

    /// `limsup_{y → λ} f(y)` at a limit point.
    pub fn limsup_at(&self, x: &Ordinal) -> Result<Q> {
        let p = Pt::from_ordinal(self.k, x)?;
        self.limsup_pt(&p).ok_or_else(|| Error::NotALimitPoint(x.clone()))
    }

    /// Sup of `f` over `lo ≤ x ≤ hi`; `None` if the interval is empty.
    pub fn sup_between(&self, lo: &Pt, hi: &Pt) -> Option<Q> {
        if lo > hi {
            return None;
        }
        let Pt::Below(l) = lo else {
            return Some(self.top.clone());
        };
        let inner = match hi {
            Pt::Top => self.body.sup_range(Some(l), None),
            Pt::Below(h) => self.body.sup_range(Some(l), Some(h)),
        };
        max_opt(inner, Some(self.at(hi).clone()))
    }

    pub fn envelope(&self) -> FinitaryFunction {
        FinitaryFunction {
            k: self.k,
            body: self.body.envelope(),
            top: self.top.clone().max(self.body.tail_limsup().clone()),
        }
    }

    pub fn is_usc(&self) -> bool {
        self.envelope().equals(self)
    }

    fn same_space(&self, other: &FinitaryFunction) -> Result<()> {
        if self.k != other.k {
            return Err(Error::Validation(format!(
                "functions live on [0, ω^{}] and [0, ω^{}]",
                self.k, other.k
            )));
        }
        Ok(())
    }

    pub fn combine(&self, other: &FinitaryFunction, op: CombineOp) -> Result<FinitaryFunction> {
        self.same_space(other)?;
        let f = |a: &Q, b: &Q| op.apply(a, b);
        Ok(FinitaryFunction {
            k: self.k,
            body: self.body.combine(&other.body, &f),
            top: op.apply(&self.top, &other.top),
        })
    }

    /// `self − other`, rejecting negative results.
    pub fn sub_nonneg(&self, other: &FinitaryFunction) -> Result<FinitaryFunction> {
        let d = self.combine(other, CombineOp::Sub)?;
        if d.min().is_negative() {
            return Err(Error::NegativeResult(format!("difference reaches {}", rational::format(&d.min()))));
        }
        Ok(d)
    }

    pub fn map(&self, op: &dyn Fn(&Q) -> Q) -> FinitaryFunction {
        FinitaryFunction {
            k: self.k,
            body: self.body.map(op),
            top: op(&self.top),
        }
    }

    pub fn scale(&self, c: &Q) -> FinitaryFunction {
        self.map(&|v| v * c)
    }

    pub fn canonical(&self) -> FinitaryFunction {
        FinitaryFunction {
            k: self.k,
            body: self.body.canonical(),
            top: self.top.clone(),
        }
    }

    /// Denotational equality.
    pub fn equals(&self, other: &FinitaryFunction) -> bool {
        self.k == other.k && self.canonical() == other.canonical()
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&FinitaryFunction::constant(self.k, Q::zero()))
    }

    /// `self ≤ other` pointwise.
    pub fn le(&self, other: &FinitaryFunction) -> Result<bool> {
        Ok(!other.combine(self, CombineOp::Sub)?.min().is_negative())
    }

    /// `self <_p other`: pointwise `≤` and not equal.
    pub fn lt(&self, other: &FinitaryFunction) -> Result<bool> {
        Ok(self.le(other)? && !self.equals(other))
    }

    /// Some point with a positive value.
    pub fn find_positive(&self) -> Option<Pt> {
        self.body
            .find_positive()
            .map(Pt::Below)
            .or_else(|| self.top.is_positive().then_some(Pt::Top))
    }

    pub fn size(&self) -> usize {
        self.body.size() + 1
    }

    fn block_json(b: &Block, level: u32) -> Value {
        match b {
            Block::Value(v) => json!(rational::format(v)),
            Block::Seq { prefix, rep } => {
                let mut m = Map::new();
                m.insert("k".into(), json!(level));
                m.insert(
                    "prefix".into(),
                    Value::Array(prefix.iter().map(|p| Self::block_json(p, level - 1)).collect()),
                );
                m.insert("rep".into(), Self::block_json(rep, level - 1));
                m.insert("top".into(), json!("0"));
                Value::Object(m)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = Self::block_json(&self.body, self.k);
        v["top"] = json!(rational::format(&self.top));
        v
    }

    fn block_from_json(v: &Value, level: u32) -> Result<Block> {
        let bad = |m: &str| Error::Validation(format!("function JSON: {m}"));
        if level == 0 {
            let s = v.as_str().ok_or_else(|| bad("a value must be a rational string"))?;
            return rational::parse(s).map(Block::Value).map_err(Error::Validation);
        }
        let obj = v.as_object().ok_or_else(|| bad("a block must be an object"))?;
        if let Some(k) = obj.get("k") {
            if k.as_u64() != Some(level as u64) {
                return Err(bad(&format!("nested block declares k={k}, expected {level}")));
            }
        }
        let prefix = match obj.get("prefix") {
            None => Vec::new(),
            Some(p) => p
                .as_array()
                .ok_or_else(|| bad("prefix must be a list"))?
                .iter()
                .map(|b| Self::block_from_json(b, level - 1))
                .collect::<Result<_>>()?,
        };
        let rep = obj.get("rep").ok_or_else(|| bad("missing rep"))?;
        Ok(Block::Seq {
            prefix,
            rep: Box::new(Self::block_from_json(rep, level - 1)?),
        })
    }

    pub fn from_json(v: &Value) -> Result<FinitaryFunction> {
        let bad = |m: &str| Error::Validation(format!("function JSON: {m}"));
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| bad("missing k"))?;
        if k == 0 || k > 8 {
            return Err(bad("k must be between 1 and 8"));
        }
        let top = v
            .get("top")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing top"))?;
        let top = rational::parse(top).map_err(Error::Validation)?;
        let body = Self::block_from_json(v, k as u32)?;
        FinitaryFunction::new(k as u32, body, top)
    }
}

impl Serialize for FinitaryFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitaryFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        FinitaryFunction::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{q, qi};

    /// `χ_{[0,ω)}` on `[0,ω]`.
    pub fn chi_below_omega() -> FinitaryFunction {
        FinitaryFunction::level1(vec![qi(1), qi(1)], qi(1), qi(0))
    }

    /// `χ_{{ω}}` on `[0,ω]`.
    pub fn chi_omega() -> FinitaryFunction {
        FinitaryFunction::level1(vec![], qi(0), qi(1))
    }

    #[test]
    fn eval_examples() {
        let f = chi_below_omega();
        assert_eq!(f.eval(&Ordinal::from(5)).unwrap(), qi(1));
        assert_eq!(f.eval(&Ordinal::omega()).unwrap(), qi(0));
        let g = FinitaryFunction::new(
            2,
            Block::Seq {
                prefix: vec![],
                rep: Box::new(chi_below_omega().body),
            },
            qi(0),
        )
        .unwrap();
        assert_eq!(g.eval(&Ordinal::omega_times_plus(3, 2)).unwrap(), qi(1));
        assert!(f.eval(&Ordinal::omega_times_plus(1, 1)).is_err());
    }

    #[test]
    fn limsup_examples() {
        assert_eq!(chi_below_omega().limsup_at(&Ordinal::omega()).unwrap(), qi(1));
        assert_eq!(chi_omega().limsup_at(&Ordinal::omega()).unwrap(), qi(0));
        assert_eq!(FinitaryFunction::constant(1, qi(1)).sup(), qi(1));
        assert!(matches!(
            chi_omega().limsup_at(&Ordinal::from(3)),
            Err(Error::NotALimitPoint(_))
        ));
    }

    #[test]
    fn envelope_examples() {
        assert!(chi_below_omega().envelope().equals(&FinitaryFunction::constant(1, qi(1))));
        assert!(chi_omega().envelope().equals(&chi_omega()));
        let z = FinitaryFunction::constant(2, qi(0));
        assert!(z.envelope().equals(&z));
        // On [0, ω²]: 1 on the successors of every block, 0 elsewhere.
        let b = Block::Seq {
            prefix: vec![Block::Value(qi(0))],
            rep: Box::new(Block::Value(qi(1))),
        };
        let f = FinitaryFunction::new(
            2,
            Block::Seq {
                prefix: vec![],
                rep: Box::new(b),
            },
            qi(0),
        )
        .unwrap();
        let e = f.envelope();
        assert_eq!(e.eval(&Ordinal::omega()).unwrap(), qi(1));
        assert_eq!(e.eval(&Ordinal::zero()).unwrap(), qi(0));
        assert_eq!(e.eval(&Ordinal::omega_pow(Ordinal::from(2))).unwrap(), qi(1));
        assert!(e.is_usc());
    }

    #[test]
    fn combine_and_equal() {
        let one = FinitaryFunction::constant(1, qi(1));
        let d = one.combine(&chi_omega(), CombineOp::Sub).unwrap();
        assert!(d.equals(&chi_below_omega()));
        let padded = FinitaryFunction::level1(vec![qi(1); 5], qi(1), qi(0));
        assert!(padded.equals(&chi_below_omega()));
        assert!(!chi_below_omega().is_usc());
        assert!(chi_omega().is_usc());
        assert!(matches!(chi_omega().sub_nonneg(&one), Err(Error::NegativeResult(_))));
        assert!(chi_omega().lt(&one).unwrap());
        assert!(!chi_omega().lt(&chi_below_omega()).unwrap());
    }

    #[test]
    fn sup_between_intervals() {
        let f = FinitaryFunction::level1(vec![q(1, 2), qi(3), q(1, 4)], qi(1), qi(0));
        let p = |n| Pt::Below(vec![n]);
        assert_eq!(f.sup_between(&p(0), &p(0)), Some(q(1, 2)));
        assert_eq!(f.sup_between(&p(0), &p(2)), Some(qi(3)));
        assert_eq!(f.sup_between(&p(2), &p(2)), Some(q(1, 4)));
        assert_eq!(f.sup_between(&p(2), &p(9)), Some(qi(1)));
        assert_eq!(f.sup_between(&p(5), &Pt::Top), Some(qi(1)));
        assert_eq!(f.sup_between(&Pt::Top, &Pt::Top), Some(qi(0)));
        assert_eq!(f.sup_between(&p(3), &p(2)), None);
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str(r#"{"k":1,"prefix":["1","1"],"rep":"1","top":"0"}"#).unwrap();
        let f = FinitaryFunction::from_json(&v).unwrap();
        assert!(f.equals(&chi_below_omega()));
        assert_eq!(f.to_json(), v);
        let nested: FinitaryFunction = serde_json::from_str(
            r#"{"k":2,"prefix":[{"k":1,"prefix":["1"],"rep":"0"}],"rep":{"k":1,"rep":"1","top":"0"},"top":"1/2"}"#,
        )
        .unwrap();
        assert_eq!(nested.eval(&Ordinal::from(0)).unwrap(), qi(1));
        assert_eq!(nested.eval(&Ordinal::from(1)).unwrap(), qi(0));
        let back: FinitaryFunction = serde_json::from_value(nested.to_json()).unwrap();
        assert_eq!(back, nested);
        assert!(serde_json::from_str::<FinitaryFunction>(r#"{"k":2,"rep":"1","top":"0"}"#).is_err());
    }

    #[test]
    fn points_and_ordinals() {
        let x = Ordinal::omega_times_plus(3, 2);
        let p = Pt::from_ordinal(2, &x).unwrap();
        assert_eq!(p, Pt::Below(vec![3, 2]));
        assert_eq!(p.to_ordinal(2), x);
        assert!(Pt::Below(vec![3, 0]).to_ordinal(2).is_limit());
        assert!(!Pt::Below(vec![3, 0]).is_isolated());
        assert!(Pt::Below(vec![0, 0]).is_isolated());
        assert_eq!(Pt::from_ordinal(2, &Ordinal::omega_pow(Ordinal::from(2))).unwrap(), Pt::Top);
    }
}
