//! Finitely presented strictly decreasing transfinite sequences of rationals
//! and the alternating lexicographic order on them.
//!
//! A sequence is a list of segments. A finite segment lists its values; an
//! ω-tail `(start, limit)` denotes `limit + (start - limit)·2^-n` for
//! `n = 0, 1, 2, …`. Every expressible length has the form `ω·j + m`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, Parity};
use crate::rational::{self, in_unit, q, qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Segment {
    Finite(#[serde(with = "rational::serde_q_vec")] Vec<Q>),
    Tail {
        #[serde(with = "rational::serde_q")]
        start: Q,
        #[serde(with = "rational::serde_q")]
        limit: Q,
    },
}

impl Segment {
    pub fn tail(start: Q, limit: Q) -> Segment {
        Segment::Tail { start, limit }
    }

    fn first(&self) -> &Q {
        match self {
            Segment::Finite(v) => &v[0],
            Segment::Tail { start, .. } => start,
        }
    }

    fn order_type(&self) -> Pos {
        match self {
            Segment::Finite(v) => Pos::finite(v.len() as u64),
            Segment::Tail { .. } => Pos { omegas: 1, fin: 0 },
        }
    }
}

/// `n`-th value of the tail `(start, limit)`.
pub fn tail_value(start: &Q, limit: &Q, n: u64) -> Q {
    rational::geometric_term(start, limit, n)
}

/// A position `ω·omegas + fin`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub(crate) struct Pos {
    pub omegas: u64,
    pub fin: u64,
}

impl Pos {
    fn finite(n: u64) -> Pos {
        Pos { omegas: 0, fin: n }
    }

    fn plus(self, len: Pos) -> Pos {
        if len.omegas > 0 {
            Pos {
                omegas: self.omegas + len.omegas,
                fin: len.fin,
            }
        } else {
            Pos {
                omegas: self.omegas,
                fin: self.fin + len.fin,
            }
        }
    }

    pub(crate) fn to_ordinal(self) -> Ordinal {
        Ordinal::omega_times_plus(self.omegas, self.fin)
    }

    pub(crate) fn from_ordinal(o: &Ordinal) -> Option<Pos> {
        o.as_omega_linear().map(|(omegas, fin)| Pos { omegas, fin })
    }
}

/// An element of σ*[0,1] given by a nonempty list of segments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeq")]
pub struct TransfiniteSeq {
    segments: Vec<Segment>,
}

#[derive(Deserialize)]
struct RawSeq {
    segments: Vec<Segment>,
}

impl TryFrom<RawSeq> for TransfiniteSeq {
    type Error = Error;
    fn try_from(raw: RawSeq) -> Result<Self> {
        TransfiniteSeq::new(raw.segments)
    }
}

/// Checks every presentation invariant; `universal` additionally demands a
/// last element equal to 0.
pub fn validate_segments(segments: &[Segment], universal: bool) -> Result<()> {
    let bad = |m: String| Err(Error::Validation(m));
    if segments.is_empty() {
        return bad("sequence has no segments".into());
    }
    for (i, seg) in segments.iter().enumerate() {
        match seg {
            Segment::Finite(v) => {
                if v.is_empty() {
                    return bad(format!("segment {i} is empty"));
                }
                if let Some(x) = v.iter().find(|x| !in_unit(x)) {
                    return bad(format!("segment {i}: value {} outside [0,1]", rational::format(x)));
                }
                if let Some(w) = v.windows(2).find(|w| rational::cmp(&w[0], &w[1]).is_le()) {
                    return bad(format!(
                        "segment {i} not decreasing: {} then {}",
                        rational::format(&w[0]),
                        rational::format(&w[1])
                    ));
                }
            }
            Segment::Tail { start, limit } => {
                if limit.is_negative() || limit >= start || *start > Q::one() {
                    return bad(format!(
                        "segment {i}: tail needs 0 <= limit < start <= 1, got ({}, {})",
                        rational::format(start),
                        rational::format(limit)
                    ));
                }
            }
        }
    }
    for (i, w) in segments.windows(2).enumerate() {
        let next = w[1].first();
        match &w[0] {
            Segment::Finite(v) => {
                let last = v.last().unwrap();
                if last <= next {
                    return bad(format!(
                        "boundary {i}: {} then {} is not decreasing",
                        rational::format(last),
                        rational::format(next)
                    ));
                }
            }
            Segment::Tail { limit, .. } => {
                if next > limit {
                    return bad(format!(
                        "boundary {i}: {} > tail limit {}",
                        rational::format(next),
                        rational::format(limit)
                    ));
                }
            }
        }
    }
    if universal {
        match segments.last().unwrap() {
            Segment::Finite(v) if v.last().unwrap().is_zero() => {}
            _ => return bad("sequence does not end with the value 0".into()),
        }
    }
    Ok(())
}

impl TransfiniteSeq {
    pub fn new(segments: Vec<Segment>) -> Result<TransfiniteSeq> {
        validate_segments(&segments, false)?;
        Ok(TransfiniteSeq { segments })
    }

    /// A member of the universal order: validated and ending in 0.
    pub fn universal(segments: Vec<Segment>) -> Result<TransfiniteSeq> {
        validate_segments(&segments, true)?;
        Ok(TransfiniteSeq { segments })
    }

    pub fn finite(values: Vec<Q>) -> Result<TransfiniteSeq> {
        TransfiniteSeq::new(vec![Segment::Finite(values)])
    }

    /// The one-element sequence `(0)`.
    pub fn zero() -> TransfiniteSeq {
        TransfiniteSeq {
            segments: vec![Segment::Finite(vec![Q::zero()])],
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_universal(&self) -> bool {
        matches!(self.segments.last(), Some(Segment::Finite(v)) if v.last().unwrap().is_zero())
    }

    pub(crate) fn pos_length(&self) -> Pos {
        self.segments
            .iter()
            .fold(Pos::default(), |acc, s| acc.plus(s.order_type()))
    }

    /// Domain ordinal: one past the last index when a last element exists.
    pub fn length(&self) -> Ordinal {
        self.pos_length().to_ordinal()
    }

    pub fn first(&self) -> &Q {
        self.segments[0].first()
    }

    /// The last value, or `None` when the sequence ends in a tail.
    pub fn last(&self) -> Option<&Q> {
        match self.segments.last().unwrap() {
            Segment::Finite(v) => v.last(),
            Segment::Tail { .. } => None,
        }
    }

    /// Infimum of all values: the last value or the final tail's limit.
    pub fn infimum(&self) -> &Q {
        match self.segments.last().unwrap() {
            Segment::Finite(v) => v.last().unwrap(),
            Segment::Tail { limit, .. } => limit,
        }
    }

    /// `x_α`.
    pub fn get(&self, index: &Ordinal) -> Result<Q> {
        let oor = || Error::IndexOutOfRange {
            index: index.clone(),
            length: self.length(),
        };
        let target = Pos::from_ordinal(index).ok_or_else(oor)?;
        self.get_pos(target).ok_or_else(oor)
    }

    pub(crate) fn get_pos(&self, target: Pos) -> Option<Q> {
        let mut at = Pos::default();
        for seg in &self.segments {
            let end = at.plus(seg.order_type());
            if target < end {
                let n = target.fin - if target.omegas == at.omegas { at.fin } else { 0 };
                return Some(match seg {
                    Segment::Finite(v) => v[n as usize].clone(),
                    Segment::Tail { start, limit } => {
                        if target.omegas != at.omegas {
                            // A tail starting mid-block never spans a later block.
                            return None;
                        }
                        tail_value(start, limit, n)
                    }
                });
            }
            at = end;
        }
        None
    }

    /// The unique presentation with adjacent finite segments merged and
    /// every tail extended backwards as far as its geometric pattern allows.
    pub fn canonical(&self) -> TransfiniteSeq {
        let mut segs: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for seg in &self.segments {
            match (segs.last_mut(), seg) {
                (Some(Segment::Finite(prev)), Segment::Finite(v)) => prev.extend(v.iter().cloned()),
                _ => segs.push(seg.clone()),
            }
        }
        let mut i = 0;
        while i + 1 < segs.len() {
            if let (Segment::Finite(_), Segment::Tail { .. }) = (&segs[i], &segs[i + 1]) {
                let (head, rest) = segs.split_at_mut(i + 1);
                let (Segment::Finite(vals), Segment::Tail { start, limit }) = (&mut head[i], &mut rest[0])
                else {
                    unreachable!()
                };
                while let Some(v) = vals.last() {
                    if *v == qi(2) * &*start - &*limit {
                        *start = vals.pop().unwrap();
                    } else {
                        break;
                    }
                }
                if vals.is_empty() {
                    segs.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        TransfiniteSeq { segments: segs }
    }

    /// The first `n` values as a segment list: the restriction `x|_n`.
    pub fn prefix_segments(&self, n: &Ordinal) -> Result<Vec<Segment>> {
        let target = Pos::from_ordinal(n).ok_or_else(|| Error::IndexOutOfRange {
            index: n.clone(),
            length: self.length(),
        })?;
        if target > self.pos_length() {
            return Err(Error::IndexOutOfRange {
                index: n.clone(),
                length: self.length(),
            });
        }
        let mut out = Vec::new();
        let mut at = Pos::default();
        for seg in &self.segments {
            if at >= target {
                break;
            }
            let end = at.plus(seg.order_type());
            if end <= target {
                out.push(seg.clone());
            } else {
                // target falls inside this segment, within the same block.
                let k = (target.fin - if target.omegas == at.omegas { at.fin } else { 0 }) as usize;
                match seg {
                    Segment::Finite(v) => out.push(Segment::Finite(v[..k].to_vec())),
                    Segment::Tail { start, limit } => out.push(Segment::Finite(
                        (0..k as u64).map(|j| tail_value(start, limit, j)).collect(),
                    )),
                }
            }
            at = end;
        }
        out.retain(|s| !matches!(s, Segment::Finite(v) if v.is_empty()));
        Ok(out)
    }

    /// `inf{x_β : β < δ}`; `None` for δ = 0.
    pub fn inf_before(&self, delta: &Ordinal) -> Result<Option<Q>> {
        let oor = || Error::IndexOutOfRange {
            index: delta.clone(),
            length: self.length(),
        };
        let target = Pos::from_ordinal(delta).ok_or_else(oor)?;
        if target > self.pos_length() {
            return Err(oor());
        }
        let mut inf = None;
        let mut at = Pos::default();
        for seg in &self.segments {
            if at >= target {
                break;
            }
            let end = at.plus(seg.order_type());
            if end <= target {
                inf = Some(match seg {
                    Segment::Finite(v) => v.last().unwrap().clone(),
                    Segment::Tail { limit, .. } => limit.clone(),
                });
            } else {
                let k = target.fin - if target.omegas == at.omegas { at.fin } else { 0 };
                if k > 0 {
                    inf = Some(match seg {
                        Segment::Finite(v) => v[k as usize - 1].clone(),
                        Segment::Tail { start, limit } => tail_value(start, limit, k - 1),
                    });
                }
            }
            at = end;
        }
        Ok(inf)
    }

    /// `(a·x_α + b)_α`.
    pub fn affine(&self, a: &Q, b: &Q) -> Result<TransfiniteSeq> {
        if !a.is_positive() {
            return Err(Error::Range(format!("scale {} is not positive", rational::format(a))));
        }
        let map = |v: &Q| a * v + b;
        let mut segs = Vec::with_capacity(self.segments.len());
        for seg in &self.segments {
            segs.push(match seg {
                Segment::Finite(v) => Segment::Finite(v.iter().map(map).collect()),
                Segment::Tail { start, limit } => Segment::tail(map(start), map(limit)),
            });
        }
        let out_of_range = |v: &Q| !in_unit(v);
        let top = segs[0].first();
        let bottom = match segs.last().unwrap() {
            Segment::Finite(v) => v.last().unwrap(),
            Segment::Tail { limit, .. } => limit,
        };
        if out_of_range(top) || out_of_range(bottom) {
            return Err(Error::Range(format!(
                "image spans [{}, {}]",
                rational::format(bottom),
                rational::format(top)
            )));
        }
        TransfiniteSeq::new(segs)
    }

    pub fn concat(&self, other: &TransfiniteSeq) -> Result<TransfiniteSeq> {
        let next = other.first();
        match self.segments.last().unwrap() {
            Segment::Finite(v) => {
                let last = v.last().unwrap();
                if last <= next {
                    return Err(Error::NotDecreasingAcrossJoin(format!(
                        "{} then {}",
                        rational::format(last),
                        rational::format(next)
                    )));
                }
            }
            Segment::Tail { limit, .. } => {
                if next > limit {
                    return Err(Error::NotDecreasingAcrossJoin(format!(
                        "{} above tail limit {}",
                        rational::format(next),
                        rational::format(limit)
                    )));
                }
            }
        }
        let mut segments = self.segments.clone();
        let mut rest = other.segments.iter().cloned();
        if let (Some(Segment::Finite(a)), Some(Segment::Finite(b))) = (segments.last_mut(), other.segments.first()) {
            a.extend(b.iter().cloned());
            rest.next();
        }
        segments.extend(rest);
        Ok(TransfiniteSeq { segments })
    }

    pub fn push_value(&self, v: Q) -> Result<TransfiniteSeq> {
        self.concat(&TransfiniteSeq::finite(vec![v])?)
    }

    /// Even-length re-embedding: `(x/2 + 1/2)⌢0` for odd length,
    /// `(x/2 + 1/2)⌢1/4⌢0` for even length.
    pub fn evenize(&self) -> TransfiniteSeq {
        let lifted = self.affine(&q(1, 2), &q(1, 2)).expect("affine image stays in [1/2,1]");
        let tail = match self.length().parity() {
            Parity::Odd => vec![Q::zero()],
            Parity::Even => vec![q(1, 4), Q::zero()],
        };
        lifted
            .concat(&TransfiniteSeq::finite(tail).unwrap())
            .expect("lifted values stay above 1/2")
    }
}

impl fmt::Display for TransfiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, "⌢")?;
            }
            match seg {
                Segment::Finite(v) => {
                    let parts: Vec<_> = v.iter().map(rational::format).collect();
                    write!(f, "{}", parts.join(", "))?;
                }
                Segment::Tail { start, limit } => write!(
                    f,
                    "tail[{}→{}]",
                    rational::format(start),
                    rational::format(limit)
                )?,
            }
        }
        write!(f, ")")
    }
}

enum Run<'a> {
    Value(&'a Q),
    Tail(Q, Q),
}

/// Simultaneous walk state inside one sequence.
struct Walker<'a> {
    segs: &'a [Segment],
    seg: usize,
    off: usize,
    rebased: Option<(Q, Q)>,
}

impl<'a> Walker<'a> {
    fn new(x: &'a TransfiniteSeq) -> Self {
        Walker {
            segs: &x.segments,
            seg: 0,
            off: 0,
            rebased: None,
        }
    }

    fn peek(&self) -> Option<Run<'a>> {
        if let Some((s, b)) = &self.rebased {
            return Some(Run::Tail(s.clone(), b.clone()));
        }
        match self.segs.get(self.seg)? {
            Segment::Finite(v) => Some(Run::Value(&v[self.off])),
            Segment::Tail { start, limit } => Some(Run::Tail(start.clone(), limit.clone())),
        }
    }

    fn step(&mut self) {
        match &self.segs[self.seg] {
            Segment::Finite(v) => {
                self.off += 1;
                if self.off == v.len() {
                    self.seg += 1;
                    self.off = 0;
                }
            }
            Segment::Tail { start, limit } => {
                let (s, b) = self.rebased.take().unwrap_or((start.clone(), limit.clone()));
                self.rebased = Some((rational::midpoint(&s, &b), b));
            }
        }
    }

    fn skip_tail(&mut self) {
        self.rebased = None;
        self.seg += 1;
        self.off = 0;
    }
}

/// Least ordinal at which the two sequences differ.
pub fn delta_first_difference(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Result<Ordinal> {
    delta_pos(x, y).map(Pos::to_ordinal)
}

pub(crate) fn delta_pos(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Result<Pos> {
    let mut wx = Walker::new(x);
    let mut wy = Walker::new(y);
    let mut pos = Pos::default();
    loop {
        match (wx.peek(), wy.peek()) {
            (None, None) => return Err(Error::EqualSequences),
            (None, _) | (_, None) => return Err(Error::ProperPrefix),
            (Some(Run::Tail(s1, b1)), Some(Run::Tail(s2, b2))) => {
                if !rational::eq(&s1, &s2) {
                    return Ok(pos);
                }
                if !rational::eq(&b1, &b2) {
                    return Ok(Pos {
                        omegas: pos.omegas,
                        fin: pos.fin + 1,
                    });
                }
                wx.skip_tail();
                wy.skip_tail();
                pos = Pos {
                    omegas: pos.omegas + 1,
                    fin: 0,
                };
            }
            (Some(a), Some(b)) => {
                let va = match &a {
                    Run::Value(v) => v,
                    Run::Tail(s, _) => s,
                };
                let vb = match &b {
                    Run::Value(v) => v,
                    Run::Tail(s, _) => s,
                };
                if !rational::eq(va, vb) {
                    return Ok(pos);
                }
                wx.step();
                wy.step();
                pos.fin += 1;
            }
        }
    }
}

/// Outcome of an alternating lexicographic comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltlexOutcome {
    pub order: Ordering,
    /// Deciding index; `None` when the sequences are equal.
    pub delta: Option<Ordinal>,
}

/// Compares two members of the universal order: at the first difference δ
/// the usual order decides when δ is even, the reversed order when odd.
pub fn altlex_compare(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Result<AltlexOutcome> {
    altlex_compare_with(x, y, Ordinal::parity)
}

/// [`altlex_compare`] with a substitutable parity function, used for fault
/// injection in the self-test.
pub fn altlex_compare_with(
    x: &TransfiniteSeq,
    y: &TransfiniteSeq,
    parity: fn(&Ordinal) -> Parity,
) -> Result<AltlexOutcome> {
    let delta = match delta_pos(x, y) {
        Ok(p) => p,
        Err(Error::EqualSequences) => {
            return Ok(AltlexOutcome {
                order: Ordering::Equal,
                delta: None,
            })
        }
        Err(e) => return Err(e),
    };
    let a = x.get_pos(delta).expect("δ within x");
    let b = y.get_pos(delta).expect("δ within y");
    let delta = delta.to_ordinal();
    let base = rational::cmp(&a, &b);
    let order = match parity(&delta) {
        Parity::Even => base,
        Parity::Odd => base.reverse(),
    };
    Ok(AltlexOutcome {
        order,
        delta: Some(delta),
    })
}

/// Strict `x <_altlex y`.
pub fn altlex_less(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Result<bool> {
    Ok(altlex_compare(x, y)?.order == Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: &[(i64, i64)]) -> Segment {
        Segment::Finite(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn tail(s: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::tail(q(s.0, s.1), q(b.0, b.1))
    }

    fn seq(segs: Vec<Segment>) -> TransfiniteSeq {
        TransfiniteSeq::new(segs).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_segments(&[fin(&[(1, 2), (0, 1)])], true).is_ok());
        let e = validate_segments(&[fin(&[(1, 2), (3, 4)])], false).unwrap_err();
        assert!(e.to_string().contains("not decreasing"), "{e}");
        let e = validate_segments(&[tail((1, 1), (1, 2)), fin(&[(3, 4), (0, 1)])], false).unwrap_err();
        assert!(e.to_string().contains("boundary"), "{e}");
        assert!(validate_segments(&[fin(&[(1, 2)])], true).is_err());
        assert!(validate_segments(&[tail((1, 2), (1, 2))], false).is_err());
        assert!(validate_segments(&[], false).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(seq(vec![fin(&[(1, 2), (0, 1)])]).length(), Ordinal::from(2));
        assert_eq!(
            seq(vec![tail((1, 1), (1, 2)), fin(&[(1, 2), (0, 1)])]).length(),
            Ordinal::omega_times_plus(1, 2)
        );
        assert_eq!(
            seq(vec![tail((1, 1), (1, 2)), tail((1, 2), (1, 4)), fin(&[(0, 1)])]).length(),
            Ordinal::omega_times_plus(2, 1)
        );
    }

    #[test]
    fn index_examples() {
        let x = seq(vec![tail((1, 1), (1, 2)), fin(&[(1, 2), (0, 1)])]);
        assert_eq!(x.get(&Ordinal::from(3)).unwrap(), q(9, 16));
        assert_eq!(x.get(&Ordinal::omega()).unwrap(), q(1, 2));
        assert_eq!(x.get(&Ordinal::omega_times_plus(1, 1)).unwrap(), q(0, 1));
        assert!(matches!(
            x.get(&Ordinal::omega_times_plus(1, 2)),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(x.get(&Ordinal::omega_pow(Ordinal::from(2))).is_err());
        let y = seq(vec![fin(&[(1, 2), (0, 1)])]);
        assert_eq!(y.get(&Ordinal::zero()).unwrap(), q(1, 2));
    }

    #[test]
    fn canonical_examples() {
        let x = seq(vec![fin(&[(1, 1)]), tail((3, 4), (1, 2)), fin(&[(0, 1)])]);
        assert_eq!(
            x.canonical(),
            seq(vec![tail((1, 1), (1, 2)), fin(&[(0, 1)])])
        );
        let y = seq(vec![fin(&[(1, 2), (0, 1)])]);
        assert_eq!(y.canonical(), y);
        // 1, 1/2 continue the tail 1/4, 1/8, ... backwards, so both are absorbed.
        let z = seq(vec![fin(&[(1, 1), (1, 2)]), tail((1, 4), (0, 1)), fin(&[(0, 1)])]);
        assert_eq!(z.canonical(), seq(vec![tail((1, 1), (0, 1)), fin(&[(0, 1)])]));
        let w = seq(vec![fin(&[(1, 1), (3, 8)]), tail((1, 4), (0, 1)), fin(&[(0, 1)])]);
        assert_eq!(w.canonical(), w);
        let split = seq(vec![fin(&[(1, 1)]), fin(&[(1, 2), (0, 1)])]);
        assert_eq!(split.canonical(), seq(vec![fin(&[(1, 1), (1, 2), (0, 1)])]));
    }

    #[test]
    fn delta_examples() {
        let a = seq(vec![fin(&[(1, 2), (0, 1)])]);
        let b = seq(vec![fin(&[(3, 4), (0, 1)])]);
        assert_eq!(delta_first_difference(&a, &b).unwrap(), Ordinal::zero());
        let c = seq(vec![fin(&[(3, 4), (1, 2), (0, 1)])]);
        let d = seq(vec![fin(&[(3, 4), (1, 4), (0, 1)])]);
        assert_eq!(delta_first_difference(&c, &d).unwrap(), Ordinal::one());
        let e = seq(vec![tail((1, 1), (1, 2)), fin(&[(0, 1)])]);
        let f = seq(vec![tail((1, 1), (1, 2)), fin(&[(1, 2), (0, 1)])]);
        assert_eq!(delta_first_difference(&e, &f).unwrap(), Ordinal::omega());
        assert_eq!(delta_first_difference(&a, &a), Err(Error::EqualSequences));
        // Different presentations of one sequence are equal.
        let g = seq(vec![fin(&[(1, 1)]), tail((3, 4), (1, 2)), fin(&[(0, 1)])]);
        assert_eq!(delta_first_difference(&e, &g), Err(Error::EqualSequences));
    }

    #[test]
    fn delta_inside_tails() {
        // Same start, different limits: the second value already differs.
        let x = seq(vec![tail((1, 1), (1, 2)), fin(&[(0, 1)])]);
        let y = seq(vec![tail((1, 1), (1, 4)), fin(&[(0, 1)])]);
        assert_eq!(delta_first_difference(&x, &y).unwrap(), Ordinal::one());
        // A finite run matching the tail, then diverging.
        let z = seq(vec![fin(&[(1, 1), (3, 4), (5, 8), (1, 2)]), fin(&[(0, 1)])]);
        assert_eq!(delta_first_difference(&x, &z).unwrap(), Ordinal::from(3));
    }

    #[test]
    fn altlex_examples() {
        let a = seq(vec![fin(&[(1, 2), (0, 1)])]);
        let b = seq(vec![fin(&[(3, 4), (0, 1)])]);
        let r = altlex_compare(&a, &b).unwrap();
        assert_eq!(r.order, Ordering::Less);
        assert_eq!(r.delta, Some(Ordinal::zero()));
        let c = seq(vec![fin(&[(3, 4), (1, 2), (0, 1)])]);
        let d = seq(vec![fin(&[(3, 4), (1, 4), (0, 1)])]);
        let r = altlex_compare(&c, &d).unwrap();
        assert_eq!((r.order, r.delta), (Ordering::Less, Some(Ordinal::one())));
        let e = seq(vec![tail((1, 1), (1, 2)), fin(&[(0, 1)])]);
        let f = seq(vec![tail((1, 1), (1, 2)), fin(&[(1, 2), (0, 1)])]);
        let r = altlex_compare(&e, &f).unwrap();
        assert_eq!((r.order, r.delta), (Ordering::Less, Some(Ordinal::omega())));
        assert_eq!(altlex_compare(&a, &a).unwrap().order, Ordering::Equal);
    }

    #[test]
    fn affine_examples() {
        let x = seq(vec![fin(&[(1, 2), (0, 1)])]);
        assert_eq!(
            x.affine(&q(1, 2), &q(1, 2)).unwrap(),
            seq(vec![fin(&[(3, 4), (1, 2)])])
        );
        assert_eq!(x.affine(&q(1, 1), &q(0, 1)).unwrap(), x);
        let y = seq(vec![fin(&[(1, 4), (0, 1)])]);
        assert_eq!(
            y.affine(&q(1, 8), &q(1, 4)).unwrap(),
            seq(vec![fin(&[(9, 32), (1, 4)])])
        );
        assert!(matches!(x.affine(&q(1, 1), &q(3, 4)), Err(Error::Range(_))));
        assert!(matches!(x.affine(&q(0, 1), &q(0, 1)), Err(Error::Range(_))));
        let t = seq(vec![tail((1, 1), (1, 2)), fin(&[(0, 1)])]);
        assert_eq!(
            t.affine(&q(1, 2), &q(0, 1)).unwrap(),
            seq(vec![tail((1, 2), (1, 4)), fin(&[(0, 1)])])
        );
    }

    #[test]
    fn concat_examples() {
        let a = seq(vec![fin(&[(3, 4), (1, 2)])]);
        let b = seq(vec![fin(&[(1, 4), (0, 1)])]);
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab, seq(vec![fin(&[(3, 4), (1, 2), (1, 4), (0, 1)])]));
        let c = seq(vec![fin(&[(1, 2), (0, 1)])]);
        assert!(matches!(a.concat(&c), Err(Error::NotDecreasingAcrossJoin(_))));
        let t = seq(vec![tail((1, 1), (1, 2))]);
        let joined = t.concat(&c).unwrap();
        assert_eq!(joined.length(), Ordinal::omega_times_plus(1, 2));
        assert_eq!(joined.length(), t.length().add(&c.length()));
    }

    #[test]
    fn evenize_examples() {
        let odd = seq(vec![fin(&[(1, 2), (1, 4), (0, 1)])]);
        assert_eq!(
            odd.evenize().canonical(),
            seq(vec![fin(&[(3, 4), (5, 8), (1, 2), (0, 1)])])
        );
        let even = seq(vec![fin(&[(1, 2), (0, 1)])]);
        assert_eq!(
            even.evenize().canonical(),
            seq(vec![fin(&[(3, 4), (1, 2), (1, 4), (0, 1)])])
        );
        let a = seq(vec![fin(&[(3, 4), (0, 1)])]);
        assert!(altlex_less(&even.evenize(), &a.evenize()).unwrap());
        assert_eq!(even.evenize().length().parity(), Parity::Even);
    }

    #[test]
    fn prefix_and_inf_before() {
        let x = seq(vec![tail((1, 1), (1, 2)), fin(&[(1, 4), (0, 1)])]);
        assert_eq!(x.inf_before(&Ordinal::zero()).unwrap(), None);
        assert_eq!(x.inf_before(&Ordinal::omega()).unwrap(), Some(q(1, 2)));
        assert_eq!(x.inf_before(&Ordinal::from(2)).unwrap(), Some(q(3, 4)));
        assert_eq!(
            x.prefix_segments(&Ordinal::from(2)).unwrap(),
            vec![fin(&[(1, 1), (3, 4)])]
        );
        assert_eq!(
            x.inf_before(&Ordinal::omega_times_plus(1, 1)).unwrap(),
            Some(q(1, 4))
        );
    }

    #[test]
    fn json_form() {
        let x = seq(vec![fin(&[(1, 2), (0, 1)]), tail((0, 1), (0, 1))].into_iter().take(1).collect());
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"segments":[{"finite":["1/2","0"]}]}"#);
        let t: TransfiniteSeq = serde_json::from_str(
            r#"{"segments":[{"tail":{"start":"1","limit":"1/2"}},{"finite":["1/2","0"]}]}"#,
        )
        .unwrap();
        assert_eq!(t.length(), Ordinal::omega_times_plus(1, 2));
        assert!(serde_json::from_str::<TransfiniteSeq>(r#"{"segments":[{"finite":["1/2","3/4"]}]}"#).is_err());
    }
}
