//! Approximate Hausdorff distance between compact figures.
//!
//! Chains are truncated once the omitted points lie within `ε/4` of the
//! limit; vertical segments are handled by branch and bound on the height.
//! The distance to each primitive is convex along a vertical line, so on a
//! cell it is bounded by its larger endpoint value. The result is
//! rounded to a dyadic with denominator at most `8/ε`, so the total error
//! stays below `ε`.

use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hyperspace::fig::{CompactFig, Piece};
use crate::rational::Q;

/// Smallest tolerance accepted; below this f64 rounding is no longer
/// negligible.
pub const MIN_EPS_LOG2: u32 = 40;

#[derive(Clone, Copy, Debug)]
enum Prim {
    Point(f64, f64),
    VSeg(f64, f64),
}

fn f(v: &Q) -> f64 {
    v.to_f64().expect("finite rational")
}

fn primitives(fig: &CompactFig, tol: f64) -> Vec<Prim> {
    let mut out = Vec::new();
    for p in &fig.pieces {
        match p {
            Piece::Point(x, y) => out.push(Prim::Point(f(x), f(y))),
            Piece::VSeg { x, h } => out.push(Prim::VSeg(f(x), f(h))),
            Piece::GChain { start, limit } => {
                let (s, b) = (f(start), f(limit));
                let mut gap = s - b;
                out.push(Prim::Point(b, 0.0));
                loop {
                    out.push(Prim::Point(b + gap, 0.0));
                    if gap <= tol {
                        break;
                    }
                    gap /= 2.0;
                }
            }
        }
    }
    out
}

fn dist_to(px: f64, py: f64, p: &Prim) -> f64 {
    match *p {
        Prim::Point(x, y) => (px - x).hypot(py - y),
        Prim::VSeg(x, h) => {
            let dy = if py < 0.0 {
                -py
            } else if py > h {
                py - h
            } else {
                0.0
            };
            (px - x).hypot(dy)
        }
    }
}

fn dist_set(px: f64, py: f64, set: &[Prim]) -> f64 {
    set.iter().map(|p| dist_to(px, py, p)).fold(f64::INFINITY, f64::min)
}

#[derive(PartialEq)]
struct Cell {
    upper: f64,
    lo: f64,
    hi: f64,
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Cell {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.upper.total_cmp(&o.upper)
    }
}

/// `sup_{a ∈ A} d(a, B)` to within `tol`.
fn directed(a: &[Prim], b: &[Prim], tol: f64) -> f64 {
    let mut best = 0.0f64;
    for p in a {
        match *p {
            Prim::Point(x, y) => best = best.max(dist_set(x, y, b)),
            Prim::VSeg(x, h) => {
                let mut heap = BinaryHeap::new();
                let push = |heap: &mut BinaryHeap<Cell>, best: &mut f64, lo: f64, hi: f64| {
                    let mid = (lo + hi) / 2.0;
                    *best = best.max(dist_set(x, mid, b));
                    let upper = b
                        .iter()
                        .map(|q| dist_to(x, lo, q).max(dist_to(x, hi, q)))
                        .fold(f64::INFINITY, f64::min);
                    heap.push(Cell { upper, lo, hi });
                };
                best = best.max(dist_set(x, 0.0, b)).max(dist_set(x, h, b));
                push(&mut heap, &mut best, 0.0, h);
                while let Some(c) = heap.pop() {
                    if c.upper <= best + tol {
                        break;
                    }
                    let mid = (c.lo + c.hi) / 2.0;
                    push(&mut heap, &mut best, c.lo, mid);
                    push(&mut heap, &mut best, mid, c.hi);
                }
            }
        }
    }
    best
}

/// Hausdorff distance within `eps`, as a dyadic rational.
pub fn hausdorff_distance_approx(a: &CompactFig, b: &CompactFig, eps: &Q) -> Result<Q> {
    if a.pieces.is_empty() || b.pieces.is_empty() {
        return Err(Error::Precondition("figures must be nonempty".into()));
    }
    if *eps <= Q::zero() {
        return Err(Error::Range("tolerance must be positive".into()));
    }
    // Work at 2^-m ≤ eps / 8.
    let mut m = 3u32;
    while Q::new(1.into(), BigInt::from(2).pow(m)) > eps / Q::from_integer(8.into()) {
        m += 1;
        if m > MIN_EPS_LOG2 + 3 {
            return Err(Error::PrecisionTooLow(m));
        }
    }
    let tol = 0.5f64.powi(m as i32 - 1);
    let (pa, pb) = (primitives(a, tol), primitives(b, tol));
    let d = directed(&pa, &pb, tol).max(directed(&pb, &pa, tol));
    let scale = 2f64.powi(m as i32);
    let n = (d * scale).round() as i64;
    Ok(Q::new(n.into(), BigInt::from(2).pow(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::rational::q;

    fn fig(p: Vec<Piece>) -> CompactFig {
        CompactFig { pieces: p }
    }

    #[test]
    fn examples() {
        let eps = q(1, 1 << 20);
        let f = fig(vec![
            Piece::GChain { start: q(1, 1), limit: q(1, 2) },
            Piece::VSeg { x: q(1, 2), h: q(1, 4) },
            Piece::Point(q(0, 1), q(0, 1)),
        ]);
        assert_eq!(hausdorff_distance_approx(&f, &f, &eps).unwrap(), q(0, 1));
        let p0 = fig(vec![Piece::Point(q(0, 1), q(0, 1))]);
        let p1 = fig(vec![Piece::Point(q(1, 1), q(0, 1))]);
        assert_eq!(hausdorff_distance_approx(&p0, &p1, &eps).unwrap(), q(1, 1));
        let g = fig(vec![Piece::GChain { start: q(1, 1), limit: q(1, 2) }]);
        let h = fig(vec![Piece::Point(q(1, 2), q(0, 1))]);
        assert_eq!(hausdorff_distance_approx(&g, &h, &eps).unwrap(), q(1, 2));
    }

    #[test]
    fn segment_against_points() {
        // The top of {0} x [0, 1/2] is farthest from {(0,0), (1/4,0)}.
        let s = fig(vec![Piece::VSeg { x: q(0, 1), h: q(1, 2) }]);
        let p = fig(vec![Piece::Point(q(0, 1), q(0, 1)), Piece::Point(q(1, 4), q(0, 1))]);
        let eps = q(1, 1 << 16);
        let d = hausdorff_distance_approx(&s, &p, &eps).unwrap();
        assert!((d - q(1, 2)).abs() <= eps);
        // Midway between two points on a segment.
        let p = fig(vec![Piece::Point(q(0, 1), q(0, 1)), Piece::Point(q(0, 1), q(1, 2))]);
        let d = hausdorff_distance_approx(&s, &p, &eps).unwrap();
        assert!((d - q(1, 4)).abs() <= eps);
    }

    #[test]
    fn matching_segments_at_fine_tolerance() {
        let s = fig(vec![Piece::VSeg { x: q(1, 3), h: q(1, 1) }, Piece::Point(q(0, 1), q(0, 1))]);
        assert_eq!(hausdorff_distance_approx(&s, &s, &altlex_eps()).unwrap(), q(0, 1));
    }

    fn altlex_eps() -> Q {
        crate::rational::pow2_neg(40)
    }

    #[test]
    fn rejects_bad_tolerance() {
        let p0 = fig(vec![Piece::Point(q(0, 1), q(0, 1))]);
        assert!(hausdorff_distance_approx(&p0, &p0, &q(0, 1)).is_err());
        assert!(hausdorff_distance_approx(&p0, &fig(vec![]), &q(1, 2)).is_err());
    }
}
