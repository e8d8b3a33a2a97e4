//! Compact subsets of the unit square given by finitely many pieces, and the
//! figure of a sequence.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Q};
use crate::seq::{Segment, TransfiniteSeq};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Piece {
    /// A single point `(x, y)`.
    Point(
        #[serde(with = "rational::serde_q")] Q,
        #[serde(with = "rational::serde_q")] Q,
    ),
    /// `{x} × [0, h]`.
    VSeg {
        #[serde(with = "rational::serde_q")]
        x: Q,
        #[serde(with = "rational::serde_q")]
        h: Q,
    },
    /// `{(b + (s − b)·2^-n, 0) : n ≥ 0} ∪ {(b, 0)}`.
    GChain {
        #[serde(with = "rational::serde_q")]
        start: Q,
        #[serde(with = "rational::serde_q")]
        limit: Q,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompactFig {
    pub pieces: Vec<Piece>,
}

/// One end of an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct End {
    pub value: Q,
    pub closed: bool,
}

impl End {
    pub fn open(value: Q) -> End {
        End { value, closed: false }
    }

    pub fn closed(value: Q) -> End {
        End { value, closed: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: End,
    pub hi: End,
}

impl Interval {
    pub fn open(lo: Q, hi: Q) -> Interval {
        Interval {
            lo: End::open(lo),
            hi: End::open(hi),
        }
    }

    pub fn closed(lo: Q, hi: Q) -> Interval {
        Interval {
            lo: End::closed(lo),
            hi: End::closed(hi),
        }
    }

    /// `(lo, 1]`: the right end extends to the top of the square.
    pub fn open_to_top(lo: Q) -> Interval {
        Interval {
            lo: End::open(lo),
            hi: End::closed(Q::one()),
        }
    }

    pub fn unit() -> Interval {
        Interval::closed(Q::zero(), Q::one())
    }

    pub fn above_lo(&self, v: &Q) -> bool {
        if self.lo.closed {
            *v >= self.lo.value
        } else {
            *v > self.lo.value
        }
    }

    pub fn below_hi(&self, v: &Q) -> bool {
        if self.hi.closed {
            *v <= self.hi.value
        } else {
            *v < self.hi.value
        }
    }

    pub fn contains(&self, v: &Q) -> bool {
        self.above_lo(v) && self.below_hi(v)
    }

    /// Whether `[a, b]` meets the interval.
    pub fn meets_closed(&self, a: &Q, b: &Q) -> bool {
        let lo = if self.lo.value >= *a { self.lo.clone() } else { End::closed(a.clone()) };
        let hi = if self.hi.value <= *b { self.hi.clone() } else { End::closed(b.clone()) };
        lo.value < hi.value || (lo.value == hi.value && lo.closed && hi.closed)
    }
}

/// An axis-parallel box `X × Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxQuery {
    pub x: Interval,
    pub y: Interval,
}

fn is_pow2_inverse(t: &Q) -> bool {
    // t = 2^-n for some n ≥ 0.
    t.is_positive() && t.numer().is_one() && {
        let d: &BigInt = t.denom();
        (d & (d - BigInt::one())).is_zero()
    }
}

impl Piece {
    pub fn contains(&self, px: &Q, py: &Q) -> bool {
        match self {
            Piece::Point(x, y) => x == px && y == py,
            Piece::VSeg { x, h } => x == px && !py.is_negative() && py <= h,
            Piece::GChain { start, limit } => {
                py.is_zero() && (px == limit || is_pow2_inverse(&((px - limit) / (start - limit))))
            }
        }
    }

    pub fn meets(&self, b: &BoxQuery) -> bool {
        match self {
            Piece::Point(x, y) => b.x.contains(x) && b.y.contains(y),
            Piece::VSeg { x, h } => b.x.contains(x) && b.y.meets_closed(&Q::zero(), h),
            Piece::GChain { start, limit } => {
                if !b.y.contains(&Q::zero()) {
                    return false;
                }
                if b.x.contains(limit) {
                    return true;
                }
                if b.x.hi.value <= *limit {
                    return false;
                }
                // Largest chain value satisfying the upper bound; the loop
                // ends because the values approach the limit from above.
                let mut v = start.clone();
                while !b.x.below_hi(&v) {
                    v = (&v + limit) / Q::from_integer(2.into());
                }
                b.x.above_lo(&v)
            }
        }
    }
}

impl CompactFig {
    pub fn contains(&self, px: &Q, py: &Q) -> bool {
        self.pieces.iter().any(|p| p.contains(px, py))
    }

    pub fn meets(&self, b: &BoxQuery) -> bool {
        self.pieces.iter().any(|p| p.meets(b))
    }

    /// Meets `X × [0,1]`.
    pub fn meets_band(&self, x: Interval) -> bool {
        self.meets(&BoxQuery { x, y: Interval::unit() })
    }
}

/// Closure of the graph points `(x_α, 0)` plus a vertical segment
/// `{x_α} × [0, x_α − x_{α+1}]` at each inner limit index where the value
/// equals the infimum of the earlier values.
pub fn psi_compact(x: &TransfiniteSeq) -> CompactFig {
    let segs = x.segments();
    let mut pieces = Vec::new();
    for (i, seg) in segs.iter().enumerate() {
        match seg {
            Segment::Finite(v) => {
                for (j, val) in v.iter().enumerate() {
                    if j == 0 && i > 0 {
                        if let Segment::Tail { limit, .. } = &segs[i - 1] {
                            if val == limit {
                                if let Some(next) = value_after(segs, i, 0) {
                                    pieces.push(Piece::VSeg {
                                        x: val.clone(),
                                        h: val - next,
                                    });
                                }
                            }
                        }
                    }
                    pieces.push(Piece::Point(val.clone(), Q::zero()));
                }
            }
            Segment::Tail { start, limit } => {
                if i > 0 {
                    if let Segment::Tail { limit: prev, .. } = &segs[i - 1] {
                        if start == prev {
                            let next = (start + limit) / Q::from_integer(2.into());
                            pieces.push(Piece::VSeg {
                                x: start.clone(),
                                h: start - next,
                            });
                        }
                    }
                }
                pieces.push(Piece::GChain {
                    start: start.clone(),
                    limit: limit.clone(),
                });
            }
        }
    }
    CompactFig { pieces }
}

/// The value following position `j` of finite segment `i`, if any.
fn value_after(segs: &[Segment], i: usize, j: usize) -> Option<Q> {
    if let Segment::Finite(v) = &segs[i] {
        if let Some(n) = v.get(j + 1) {
            return Some(n.clone());
        }
    }
    segs.get(i + 1).map(|s| match s {
        Segment::Finite(v) => v[0].clone(),
        Segment::Tail { start, .. } => start.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn seq(segs: Vec<Segment>) -> TransfiniteSeq {
        TransfiniteSeq::new(segs).unwrap()
    }

    fn fin(v: &[(i64, i64)]) -> Segment {
        Segment::Finite(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn psi_examples() {
        let a = psi_compact(&seq(vec![fin(&[(1, 2), (0, 1)])]));
        assert_eq!(
            a.pieces,
            vec![Piece::Point(q(1, 2), q(0, 1)), Piece::Point(q(0, 1), q(0, 1))]
        );
        let b = psi_compact(&seq(vec![
            Segment::tail(q(1, 1), q(1, 2)),
            fin(&[(1, 2), (1, 4), (0, 1)]),
        ]));
        assert_eq!(
            b.pieces,
            vec![
                Piece::GChain { start: q(1, 1), limit: q(1, 2) },
                Piece::VSeg { x: q(1, 2), h: q(1, 4) },
                Piece::Point(q(1, 2), q(0, 1)),
                Piece::Point(q(1, 4), q(0, 1)),
                Piece::Point(q(0, 1), q(0, 1)),
            ]
        );
        let c = psi_compact(&seq(vec![Segment::tail(q(1, 1), q(1, 2)), fin(&[(1, 4), (0, 1)])]));
        assert!(!c.pieces.iter().any(|p| matches!(p, Piece::VSeg { .. })));
        // The final index never carries a segment.
        let d = psi_compact(&seq(vec![Segment::tail(q(1, 1), q(0, 1)), fin(&[(0, 1)])]));
        assert!(!d.pieces.iter().any(|p| matches!(p, Piece::VSeg { .. })));
    }

    #[test]
    fn membership_and_boxes() {
        let g = Piece::GChain { start: q(1, 1), limit: q(1, 2) };
        assert!(g.contains(&q(9, 16), &q(0, 1)));
        assert!(g.contains(&q(1, 2), &q(0, 1)));
        assert!(!g.contains(&q(5, 8), &q(1, 8)));
        assert!(!g.contains(&q(2, 3), &q(0, 1)));
        let v = Piece::VSeg { x: q(1, 2), h: q(1, 4) };
        assert!(v.meets(&BoxQuery {
            x: Interval::open(q(1, 4), q(3, 4)),
            y: Interval::open(q(1, 8), q(1, 1)),
        }));
        assert!(!v.meets(&BoxQuery {
            x: Interval::open(q(1, 4), q(3, 4)),
            y: Interval::open(q(1, 4), q(1, 1)),
        }));
        assert!(!g.meets(&BoxQuery {
            x: Interval::open(q(0, 1), q(1, 2)),
            y: Interval::unit(),
        }));
        assert!(g.meets(&BoxQuery {
            x: Interval::open(q(1, 2), q(17, 32)),
            y: Interval::unit(),
        }));
        assert!(!g.meets(&BoxQuery {
            x: Interval::open(q(5, 8), q(3, 4)),
            y: Interval::unit(),
        }));
        assert!(g.meets(&BoxQuery {
            x: Interval::open_to_top(q(3, 4)),
            y: Interval::unit(),
        }));
    }

    #[test]
    fn json_form() {
        let f = CompactFig {
            pieces: vec![
                Piece::Point(q(1, 2), q(0, 1)),
                Piece::VSeg { x: q(1, 2), h: q(1, 4) },
                Piece::GChain { start: q(1, 1), limit: q(1, 2) },
            ],
        };
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"pieces":[{"point":["1/2","0"]},{"vseg":{"x":"1/2","h":"1/4"}},{"gchain":{"start":"1","limit":"1/2"}}]}"#
        );
        assert_eq!(serde_json::from_str::<CompactFig>(&s).unwrap(), f);
    }
}
