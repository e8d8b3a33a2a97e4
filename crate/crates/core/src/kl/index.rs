//! Real index of nonnegative USC functions through a fixed enumeration of
//! basic boxes `U × (c, d]`, and exact order certificates.
//!
//! Box `n = ⟨o, q⟩` (Cantor pairing). The ordinal part `o = 0` is `{0}`, and
//! `o = 1 + ⟨i, j⟩` is `(p_i, p_j]` where point code 0 is `ω^k` and code
//! `m + 1` is the `k`-tuple of Cantor coefficients unpaired from `m`. The
//! value part `q = ⟨l, ⟨i, j⟩⟩` is `(i/2^l, j/2^l]`. Boxes with an empty
//! side are empty. The index of `f` is `1 − Σ 2^(−n−1)` over the boxes that
//! miss `{(x, r) : 0 < r ≤ f(x)}`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kl::function::{CombineOp, FinitaryFunction, Pt};
use crate::rational::{self, dyadic_between, pow2_neg, Q};

pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn unpair(n: &BigUint) -> (BigUint, BigUint) {
    let w = ((n * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = n - t;
    let a = w - &b;
    (a, b)
}

fn encode_tuple(c: &[u64]) -> BigUint {
    match c {
        [] => BigUint::zero(),
        [x] => BigUint::from(*x),
        [x, rest @ ..] => pair(&BigUint::from(*x), &encode_tuple(rest)),
    }
}

fn decode_tuple(n: &BigUint, k: usize) -> Option<Vec<u64>> {
    match k {
        0 => Some(Vec::new()),
        1 => n.to_u64().map(|x| vec![x]),
        _ => {
            let (a, rest) = unpair(n);
            let mut out = vec![a.to_u64()?];
            out.extend(decode_tuple(&rest, k - 1)?);
            Some(out)
        }
    }
}

pub fn point_code(p: &Pt) -> BigUint {
    match p {
        Pt::Top => BigUint::zero(),
        Pt::Below(c) => encode_tuple(c) + 1u32,
    }
}

pub fn decode_point(code: &BigUint, k: u32) -> Option<Pt> {
    if code.is_zero() {
        Some(Pt::Top)
    } else {
        decode_tuple(&(code - 1u32), k as usize).map(Pt::Below)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrdSet {
    /// `{0}`.
    Zero,
    /// `(a, b]`.
    Interval { a: String, b: String },
}

/// A decoded nonempty basic box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicBox {
    pub lower: Option<Pt>,
    pub upper: Pt,
    pub c: Q,
    pub d: Q,
}

impl BasicBox {
    pub fn describe(&self, k: u32) -> BoxReport {
        BoxReport {
            x: match &self.lower {
                None => OrdSet::Zero,
                Some(a) => OrdSet::Interval {
                    a: a.to_ordinal(k).to_string(),
                    b: self.upper.to_ordinal(k).to_string(),
                },
            },
            y_open: rational::format(&self.c),
            y_closed: rational::format(&self.d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxReport {
    pub x: OrdSet,
    /// Excluded lower end of the value interval.
    pub y_open: String,
    /// Included upper end of the value interval.
    pub y_closed: String,
}

/// Largest dyadic level accepted when decoding.
const MAX_LEVEL: u64 = 1 << 12;

/// Box `n` on `[0, ω^k]`, or `None` when it is empty.
pub fn decode_box(k: u32, n: &BigUint) -> Option<BasicBox> {
    let (o, qc) = unpair(n);
    let (lower, upper) = if o.is_zero() {
        (None, Pt::zero(k))
    } else {
        let (i, j) = unpair(&(o - 1u32));
        let a = decode_point(&i, k)?;
        let b = decode_point(&j, k)?;
        if a >= b {
            return None;
        }
        (Some(a), b)
    };
    let (l, ij) = unpair(&qc);
    let (i, j) = unpair(&ij);
    if i >= j {
        return None;
    }
    let l = l.to_u64().filter(|l| *l <= MAX_LEVEL)?;
    let den = BigInt::one() << l as usize;
    Some(BasicBox {
        lower,
        upper,
        c: Q::new(BigInt::from(i), den.clone()),
        d: Q::new(BigInt::from(j), den),
    })
}

pub fn encode_box(lower: Option<&Pt>, upper: &Pt, level: u64, i: &BigUint, j: &BigUint) -> BigUint {
    let o = match lower {
        None => BigUint::zero(),
        Some(a) => pair(&point_code(a), &point_code(upper)) + 1u32,
    };
    pair(&o, &pair(&BigUint::from(level), &pair(i, j)))
}

fn successor(p: &Pt) -> Option<Pt> {
    match p {
        Pt::Top => None,
        Pt::Below(c) => {
            let mut c = c.clone();
            *c.last_mut().unwrap() += 1;
            Some(Pt::Below(c))
        }
    }
}

/// `sup_U f`.
pub fn sup_on(f: &FinitaryFunction, b: &BasicBox) -> Q {
    match &b.lower {
        None => f.at(&Pt::zero(f.k())).clone(),
        Some(a) => {
            let lo = successor(a).expect("lower end below upper end");
            f.sup_between(&lo, &b.upper).expect("nonempty interval")
        }
    }
}

/// Whether the box meets `{(x, r) : 0 < r ≤ f(x)}`.
pub fn meets_subgraph(f: &FinitaryFunction, b: &BasicBox) -> bool {
    sup_on(f, b) > b.c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: BigUint,
    pub basic_box: BasicBox,
}

impl Certificate {
    /// Re-derives the box from its code and tests both subgraph relations.
    pub fn verify(&self, below: &FinitaryFunction, above: &FinitaryFunction) -> bool {
        decode_box(below.k(), &self.n).as_ref() == Some(&self.basic_box)
            && !meets_subgraph(below, &self.basic_box)
            && meets_subgraph(above, &self.basic_box)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UscOrder {
    Equal,
    /// `f <_p g`; the box misses `f` and meets `g`.
    Less(Certificate),
    /// `g <_p f`; the box misses `g` and meets `f`.
    Greater(Certificate),
    /// Neither dominates; `order` follows from the first box in the
    /// enumeration on which the two differ.
    Incomparable { n: BigUint, order: Ordering },
}

impl UscOrder {
    pub fn ordering(&self) -> Ordering {
        match self {
            UscOrder::Equal => Ordering::Equal,
            UscOrder::Less(_) => Ordering::Less,
            UscOrder::Greater(_) => Ordering::Greater,
            UscOrder::Incomparable { order, .. } => *order,
        }
    }
}

/// A box missing `f`'s subgraph and meeting `g`'s, for USC `f ≤ g`, `f ≠ g`.
pub fn certificate_below(f: &FinitaryFunction, g: &FinitaryFunction) -> Result<Certificate> {
    let h = g.combine(f, CombineOp::Sub)?;
    let x = h
        .find_positive()
        .ok_or_else(|| Error::Precondition("functions are not strictly ordered".into()))?;
    let (fx, gx) = (f.at(&x).clone(), g.at(&x).clone());
    let (level, i) = dyadic_between(&fx, &gx);
    let i = i.to_biguint().expect("positive dyadic numerator");
    let j = &i + 1u32;
    let k = f.k();
    let lower = if x.is_isolated() {
        match &x {
            Pt::Below(c) if c.iter().all(|v| *v == 0) => None,
            Pt::Below(c) => {
                let mut p = c.clone();
                *p.last_mut().unwrap() -= 1;
                Some(Pt::Below(p))
            }
            Pt::Top => unreachable!(),
        }
    } else {
        // Start past the prefix of the block whose end is x, so that only
        // repeated values, bounded by the limsup at x, remain.
        let mut a = vec![0u64; k as usize];
        match &x {
            Pt::Top => {
                let Some(block_len) = prefix_len(f.body()) else { unreachable!() };
                a[0] = block_len;
            }
            Pt::Below(c) => {
                let p = c.iter().rposition(|v| *v > 0).unwrap();
                let mut b = f.body();
                for ci in &c[..p] {
                    b = b.sub(*ci);
                }
                let blk = b.sub(c[p] - 1);
                a[..p].copy_from_slice(&c[..p]);
                a[p] = c[p] - 1;
                a[p + 1] = prefix_len(blk).unwrap();
            }
        }
        Some(Pt::Below(a))
    };
    let n = encode_box(lower.as_ref(), &x, level, &i, &j);
    let basic_box = decode_box(k, &n).expect("constructed box is nonempty");
    let cert = Certificate { n, basic_box };
    if !cert.verify(f, g) {
        return Err(Error::Precondition("lower function is not upper semicontinuous".into()));
    }
    Ok(cert)
}

fn prefix_len(b: &crate::kl::function::Block) -> Option<u64> {
    match b {
        crate::kl::function::Block::Seq { prefix, .. } => Some(prefix.len() as u64),
        _ => None,
    }
}

/// Boxes searched for an incomparable pair.
pub const SEARCH_CAP: u64 = 200_000;

pub fn usc_order_certificate(f: &FinitaryFunction, g: &FinitaryFunction) -> Result<UscOrder> {
    if f.equals(g) {
        return Ok(UscOrder::Equal);
    }
    if f.le(g)? {
        return certificate_below(f, g).map(UscOrder::Less);
    }
    if g.le(f)? {
        return certificate_below(g, f).map(UscOrder::Greater);
    }
    for n in 0..SEARCH_CAP {
        let n = BigUint::from(n);
        let Some(b) = decode_box(f.k(), &n) else { continue };
        match (meets_subgraph(f, &b), meets_subgraph(g, &b)) {
            (false, true) => return Ok(UscOrder::Incomparable { n, order: Ordering::Less }),
            (true, false) => return Ok(UscOrder::Incomparable { n, order: Ordering::Greater }),
            _ => {}
        }
    }
    Err(Error::Precondition(format!("no separating box among the first {SEARCH_CAP}")))
}

/// Lower `precision`-term truncation of the index; within `2^-precision`
/// below the exact value, and exactly 0 for the zero function.
pub fn usc_index_approx(f: &FinitaryFunction, precision: u32) -> Q {
    let mut r = Q::one() - pow2_neg(precision as u64);
    for n in 0..precision as u64 {
        let misses = match decode_box(f.k(), &BigUint::from(n)) {
            None => true,
            Some(b) => !meets_subgraph(f, &b),
        };
        if misses {
            r -= pow2_neg(n + 1);
        }
    }
    r
}
