//! Separation witnesses: for `x <_altlex y`, a sequence `w` strictly between
//! them whose figure meets the two bands that keep `Ψ(x)` and `Ψ(y)` apart.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperspace::fig::{psi_compact, Interval};
use crate::ordinal::{Ordinal, Parity};
use crate::rational::{midpoint, Q};
use crate::seq::{altlex_compare, delta_first_difference, Segment, TransfiniteSeq};

fn value_or_zero(s: &TransfiniteSeq, i: &Ordinal) -> Q {
    s.get(i).unwrap_or_else(|_| Q::zero())
}

/// Builds the witness for `x < y`. Errors with `Precondition` unless
/// `x <_altlex y`.
pub fn witness_between(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Result<TransfiniteSeq> {
    let out = altlex_compare(x, y)?;
    if out.order != std::cmp::Ordering::Less {
        return Err(Error::Precondition("witness requires x <_altlex y".into()));
    }
    let delta = out.delta.expect("strict order has a first difference");
    let next = delta.succ();
    let (base, lo, hi) = match delta.parity() {
        Parity::Even => {
            let lo = value_or_zero(x, &delta).max(value_or_zero(y, &next));
            (x, lo, y.get(&delta)?)
        }
        Parity::Odd => {
            let lo = value_or_zero(x, &next).max(value_or_zero(y, &delta));
            (y, lo, x.get(&delta)?)
        }
    };
    if lo >= hi {
        return Err(Error::EmptyAdmissibleInterval {
            lo: crate::rational::format(&lo),
            hi: crate::rational::format(&hi),
        });
    }
    let mut segs = base.prefix_segments(&delta)?;
    let tail = Segment::Finite(vec![midpoint(&lo, &hi), Q::zero()]);
    match segs.last_mut() {
        Some(Segment::Finite(v)) => {
            if let Segment::Finite(t) = tail {
                v.extend(t);
            }
        }
        _ => segs.push(tail),
    }
    TransfiniteSeq::new(segs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    #[serde(serialize_with = "crate::ordinal::serde_text")]
    pub delta: Ordinal,
    pub parity: Parity,
    pub predicates: Vec<Predicate>,
    /// Set when `δ = 0` and the empty infimum was read as the top of the
    /// square, so the band's right end is closed at 1.
    pub empty_prefix_top: bool,
}

impl WitnessReport {
    pub fn all_passed(&self) -> bool {
        self.predicates.iter().all(|p| p.passed)
    }
}

fn pred(name: &str, passed: bool, detail: String) -> Predicate {
    Predicate {
        name: name.into(),
        passed,
        detail,
    }
}

/// Re-checks every property a witness must have.
pub fn check_witness(
    x: &TransfiniteSeq,
    y: &TransfiniteSeq,
    w: &TransfiniteSeq,
) -> Result<WitnessReport> {
    let out = altlex_compare(x, y)?;
    if out.order != std::cmp::Ordering::Less {
        return Err(Error::Precondition("witness requires x <_altlex y".into()));
    }
    let delta = out.delta.expect("strict order has a first difference");
    let parity = delta.parity();
    let next = delta.succ();
    let mut predicates = Vec::new();

    predicates.push(pred(
        "universal",
        w.is_universal(),
        "witness ends in 0".into(),
    ));

    let dx = delta_first_difference(w, x).ok();
    let dy = delta_first_difference(w, y).ok();
    predicates.push(pred(
        "prefix_agreement",
        dx.as_ref() == Some(&delta) && dy.as_ref() == Some(&delta),
        format!(
            "first differences with x and y: {}, {}",
            dx.map_or("none".into(), |d| crate::ordinal::to_text(&d)),
            dy.map_or("none".into(), |d| crate::ordinal::to_text(&d))
        ),
    ));

    let wd = w.get(&delta).ok();
    let (lo, hi) = match parity {
        Parity::Even => (
            value_or_zero(x, &delta).max(value_or_zero(y, &next)),
            value_or_zero(y, &delta),
        ),
        Parity::Odd => (
            value_or_zero(x, &next).max(value_or_zero(y, &delta)),
            value_or_zero(x, &delta),
        ),
    };
    predicates.push(pred(
        "interval_bounds",
        wd.as_ref().is_some_and(|v| *v > lo && *v < hi),
        format!(
            "{} < w_delta = {} < {}",
            crate::rational::format(&lo),
            wd.as_ref().map_or("undefined".into(), crate::rational::format),
            crate::rational::format(&hi)
        ),
    ));
    predicates.push(pred(
        "altlex_between",
        crate::seq::altlex_less(x, w).unwrap_or(false) && crate::seq::altlex_less(w, y).unwrap_or(false),
        "x < w < y".into(),
    ));

    let fig = psi_compact(w);
    let mut empty_prefix_top = false;
    let bands: [(&str, Interval); 2] = match parity {
        Parity::Even => {
            let upper = y.get(&delta)?;
            let gap = match x.inf_before(&delta)? {
                Some(inf) => Interval::open(x.get(&delta)?, inf),
                None => {
                    empty_prefix_top = true;
                    Interval::open_to_top(x.get(&delta)?)
                }
            };
            [
                ("meets_y_band", Interval::open(value_or_zero(y, &next), upper)),
                ("meets_x_gap", gap),
            ]
        }
        Parity::Odd => {
            // Odd ordinals are successors, so δ − 1 exists.
            let prev = delta.predecessor().expect("odd ordinal has a predecessor");
            [
                ("meets_y_gap", Interval::open(y.get(&delta)?, y.get(&prev)?)),
                ("meets_x_band", Interval::open(value_or_zero(x, &next), x.get(&delta)?)),
            ]
        }
    };
    for (name, band) in bands {
        let detail = format!(
            "({}, {}{} x [0,1]",
            crate::rational::format(&band.lo.value),
            crate::rational::format(&band.hi.value),
            if band.hi.closed { "]" } else { ")" }
        );
        predicates.push(pred(name, fig.meets_band(band), detail));
    }
    debug_assert!(!empty_prefix_top || parity == Parity::Even);
    Ok(WitnessReport {
        delta,
        parity,
        predicates,
        empty_prefix_top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn fin(v: &[(i64, i64)]) -> TransfiniteSeq {
        TransfiniteSeq::finite(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let (x, y) = (fin(&[(1, 2), (0, 1)]), fin(&[(3, 4), (0, 1)]));
        let w = witness_between(&x, &y).unwrap();
        assert_eq!(w, fin(&[(5, 8), (0, 1)]));
        let r = check_witness(&x, &y, &w).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(r.empty_prefix_top);

        let (x, y) = (fin(&[(3, 4), (1, 2), (0, 1)]), fin(&[(3, 4), (1, 4), (0, 1)]));
        let w = witness_between(&x, &y).unwrap();
        assert_eq!(w, fin(&[(3, 4), (3, 8), (0, 1)]));
        let r = check_witness(&x, &y, &w).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(!r.empty_prefix_top);

        let bad = fin(&[(3, 4), (1, 8), (0, 1)]);
        let r = check_witness(&x, &y, &bad).unwrap();
        let failed: Vec<_> = r.predicates.iter().filter(|p| !p.passed).map(|p| p.name.as_str()).collect();
        assert!(failed.contains(&"interval_bounds"));

        assert!(matches!(witness_between(&x, &x), Err(Error::Precondition(_))));
        assert!(matches!(witness_between(&y, &x), Err(Error::Precondition(_))));
    }

    #[test]
    fn witness_at_limit_index() {
        let t = Segment::tail(q(1, 1), q(1, 2));
        let x = TransfiniteSeq::new(vec![t.clone(), Segment::Finite(vec![q(1, 4), q(0, 1)])]).unwrap();
        let y = TransfiniteSeq::new(vec![t, Segment::Finite(vec![q(1, 2), q(0, 1)])]).unwrap();
        let w = witness_between(&x, &y).unwrap();
        let r = check_witness(&x, &y, &w).unwrap();
        assert_eq!(r.delta, Ordinal::omega());
        assert!(r.all_passed(), "{r:?}");
    }
}
