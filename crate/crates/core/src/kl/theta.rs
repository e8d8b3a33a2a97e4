//! The composite map from functions to sequences: squash into (0,1),
//! decompose, then index each stage.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kl::decompose::{decompose, first_differing_stage, Decomposition};
use crate::kl::function::FinitaryFunction;
use crate::kl::index::{usc_index_approx, usc_order_certificate, UscOrder};
use crate::ordinal::{Ordinal, Parity};
use crate::rational::{qi, Q};
use crate::seq::TransfiniteSeq;

/// Rational order isomorphism of the line onto (0,1): `1/2 + x / (2(1+|x|))`.
pub fn squash(x: &Q) -> Q {
    Q::new(One::one(), 2.into()) + x / (qi(2) * (Q::one() + x.abs()))
}

pub fn squash_fn(f: &FinitaryFunction) -> FinitaryFunction {
    f.map(&squash)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaComparison {
    pub order: Ordering,
    /// First differing stage; `None` when the images are equal.
    pub delta: Option<Ordinal>,
    /// Order of the two stage functions' indices at δ.
    pub stage_order: Option<UscOrder>,
    pub d0: Decomposition,
    pub d1: Decomposition,
}

/// Orders the images of two functions. Stages are compared through exact
/// box certificates; no truncated index value is used.
pub fn theta_compare(f0: &FinitaryFunction, f1: &FinitaryFunction) -> Result<ThetaComparison> {
    let (h0, h1) = (squash_fn(f0), squash_fn(f1));
    let d0 = decompose(&h0)?;
    let d1 = decompose(&h1)?;
    let Some((delta, a, b)) = first_differing_stage(&d0, &d1) else {
        return Ok(ThetaComparison {
            order: Ordering::Equal,
            delta: None,
            stage_order: None,
            d0,
            d1,
        });
    };
    let u = usc_order_certificate(&a, &b)?;
    let base = u.ordering();
    let order = match delta.parity() {
        Parity::Even => base,
        Parity::Odd => base.reverse(),
    };
    Ok(ThetaComparison {
        order,
        delta: Some(delta),
        stage_order: Some(u),
        d0,
        d1,
    })
}

/// The image with every stage index truncated to `precision` terms.
pub fn theta_sequence(f: &FinitaryFunction, precision: u32) -> Result<TransfiniteSeq> {
    let d = decompose(&squash_fn(f))?;
    if d.rank.as_finite().is_none() {
        return Err(Error::Precondition("image of transfinite rank is not materialized".into()));
    }
    let values: Vec<Q> = d.stages.iter().map(|s| usc_index_approx(s, precision)).collect();
    debug_assert!(values.last().is_some_and(Q::is_zero));
    if values.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::PrecisionTooLow(precision));
    }
    TransfiniteSeq::finite(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kl::function::tests::{chi_below_omega, chi_omega};
    use crate::rational::q;

    #[test]
    fn squash_is_monotone_into_unit() {
        let xs = [qi(-5), q(-1, 2), qi(0), q(1, 3), qi(7)];
        for w in xs.windows(2) {
            assert!(squash(&w[0]) < squash(&w[1]));
        }
        for x in &xs {
            let s = squash(x);
            assert!(s > qi(0) && s < qi(1));
        }
        assert_eq!(squash(&qi(0)), q(1, 2));
    }

    #[test]
    fn examples() {
        let one = FinitaryFunction::constant(1, qi(1));
        let r = theta_compare(&chi_omega(), &one).unwrap();
        assert_eq!((r.order, r.delta), (Ordering::Less, Some(Ordinal::zero())));
        let r = theta_compare(&chi_below_omega(), &one).unwrap();
        assert_eq!(r.order, Ordering::Less);
        assert_eq!(r.delta, Some(Ordinal::one()));
        assert_eq!(r.stage_order.unwrap().ordering(), Ordering::Greater);
        let r = theta_compare(&one, &one).unwrap();
        assert_eq!(r.order, Ordering::Equal);
    }

    #[test]
    fn sequence_ends_in_zero() {
        let s = theta_sequence(&chi_below_omega(), 40).unwrap();
        assert!(s.is_universal());
        assert_eq!(s.length(), Ordinal::from(3));
    }
}
