//! Order descriptions and their compilation into order-preserving maps into
//! the universal order.

pub mod tree;

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, Parity};
use crate::rational::{self, in_unit, pow2_neg, q, qi, Q};
use crate::seq::{altlex_compare_with, Segment, TransfiniteSeq};

pub use tree::{tree_embed, LabeledTree};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderExpr {
    RealBase,
    FiniteChain(u64),
    Product {
        factors: Vec<OrderExpr>,
        #[serde(
            default,
            with = "rational::serde_q_opt_vec",
            skip_serializing_if = "Option::is_none"
        )]
        anchors: Option<Vec<Q>>,
        /// Factor used at every index from `factors.len()` on; makes the
        /// product an ω-product.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        repeat: Option<Box<OrderExpr>>,
        /// Anchor ratio ρ of an ω-product: `y_β = 1/2 + ρ^β / 2`.
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_q")]
        ratio: Option<Q>,
    },
    Glue {
        base: Box<OrderExpr>,
        /// One fiber per base point, in increasing order of the base.
        fibers: Vec<OrderExpr>,
    },
    Duplicate(Box<OrderExpr>),
    PartitionTree(LabeledTree),
}

mod opt_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => rational::serde_q::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| rational::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointExpr {
    Real(#[serde(with = "rational::serde_q")] Q),
    Index(u64),
    Tuple {
        items: Vec<PointExpr>,
        /// Point repeated at every index past `items`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        repeat: Option<Box<PointExpr>>,
    },
    Pair(Box<PointExpr>, Box<PointExpr>),
    Dup(Box<PointExpr>, u8),
    Leaf(usize),
}

impl PointExpr {
    pub fn tuple(items: Vec<PointExpr>) -> PointExpr {
        PointExpr::Tuple { items, repeat: None }
    }

    pub fn pair(a: PointExpr, b: PointExpr) -> PointExpr {
        PointExpr::Pair(Box::new(a), Box::new(b))
    }
}

fn shape(expr: &OrderExpr, p: &PointExpr) -> Error {
    Error::Shape(format!(
        "{} does not fit {}",
        serde_json::to_string(p).unwrap_or_default(),
        expr.kind()
    ))
}

impl OrderExpr {
    pub fn kind(&self) -> &'static str {
        match self {
            OrderExpr::RealBase => "real_base",
            OrderExpr::FiniteChain(_) => "finite_chain",
            OrderExpr::Product { .. } => "product",
            OrderExpr::Glue { .. } => "glue",
            OrderExpr::Duplicate(_) => "duplicate",
            OrderExpr::PartitionTree(_) => "partition_tree",
        }
    }

    pub fn product(factors: Vec<OrderExpr>) -> OrderExpr {
        OrderExpr::Product {
            factors,
            anchors: None,
            repeat: None,
            ratio: None,
        }
    }

    pub fn glue(base: OrderExpr, fibers: Vec<OrderExpr>) -> OrderExpr {
        OrderExpr::Glue {
            base: Box::new(base),
            fibers,
        }
    }

    pub fn duplicate(inner: OrderExpr) -> OrderExpr {
        OrderExpr::Duplicate(Box::new(inner))
    }

    /// True when the order has finitely many points independent of sampling.
    pub fn is_finite(&self) -> bool {
        match self {
            OrderExpr::RealBase => false,
            OrderExpr::FiniteChain(_) | OrderExpr::PartitionTree(_) => true,
            OrderExpr::Product { factors, repeat, .. } => {
                repeat.is_none() && factors.iter().all(OrderExpr::is_finite)
            }
            OrderExpr::Glue { base, fibers } => base.is_finite() && fibers.iter().all(OrderExpr::is_finite),
            OrderExpr::Duplicate(inner) => inner.is_finite(),
        }
    }

    /// Checks anchors, trees and fiber counts throughout the expression.
    pub fn validate(&self) -> Result<()> {
        match self {
            OrderExpr::RealBase => Ok(()),
            OrderExpr::FiniteChain(n) => {
                if *n == 0 {
                    return Err(Error::Validation("finite chain needs at least one point".into()));
                }
                Ok(())
            }
            OrderExpr::Product {
                factors,
                anchors,
                repeat,
                ratio,
            } => {
                for f in factors {
                    f.validate()?;
                }
                match repeat {
                    Some(r) => {
                        r.validate()?;
                        if anchors.is_some() {
                            return Err(Error::Anchor(
                                "an ω-product takes a ratio, not an anchor list".into(),
                            ));
                        }
                        if let Some(rho) = ratio {
                            if !rho.is_positive() || *rho >= Q::one() {
                                return Err(Error::Anchor(format!(
                                    "ratio {} outside (0,1)",
                                    rational::format(rho)
                                )));
                            }
                        }
                    }
                    None => {
                        if ratio.is_some() {
                            return Err(Error::Anchor("ratio given for a finite product".into()));
                        }
                        if let Some(a) = anchors {
                            check_anchors(a, factors.len())?;
                        }
                    }
                }
                Ok(())
            }
            OrderExpr::Glue { base, fibers } => {
                base.validate()?;
                if !base.is_finite() {
                    return Err(Error::Shape("glue base must be a finite order".into()));
                }
                let n = base.points(&[])?.len();
                if n != fibers.len() {
                    return Err(Error::Shape(format!(
                        "glue base has {n} points but {} fibers were given",
                        fibers.len()
                    )));
                }
                fibers.iter().try_for_each(OrderExpr::validate)
            }
            OrderExpr::Duplicate(inner) => inner.validate(),
            OrderExpr::PartitionTree(t) => t.validate(),
        }
    }

    /// Parity shared by the length of every image, when it is known
    /// without evaluating points.
    pub fn static_parity(&self) -> Option<Parity> {
        match self {
            OrderExpr::RealBase => None,
            OrderExpr::FiniteChain(_) => Some(Parity::Even),
            OrderExpr::Product { .. } | OrderExpr::Duplicate(_) => Some(Parity::Odd),
            OrderExpr::Glue { fibers, .. } => {
                let mut ps = fibers.iter().map(OrderExpr::static_parity);
                let first = ps.next()??;
                ps.all(|p| p == Some(first)).then(|| first.flip())
            }
            OrderExpr::PartitionTree(t) => match t.uniform_depth()? {
                0 => Some(Parity::Even),
                d => Some(Parity::of(d as u64 + 1)),
            },
        }
    }

    /// All points in increasing order; `reals` samples the real line.
    pub fn points(&self, reals: &[Q]) -> Result<Vec<PointExpr>> {
        Ok(match self {
            OrderExpr::RealBase => {
                let mut r: Vec<Q> = reals.to_vec();
                r.sort();
                r.dedup();
                r.into_iter().map(PointExpr::Real).collect()
            }
            OrderExpr::FiniteChain(n) => (0..*n).map(PointExpr::Index).collect(),
            OrderExpr::Product { factors, repeat, .. } => {
                if repeat.is_some() {
                    return Err(Error::Shape("an ω-product has no finite point list".into()));
                }
                let mut acc: Vec<Vec<PointExpr>> = vec![Vec::new()];
                for f in factors {
                    let ps = f.points(reals)?;
                    let mut next = Vec::with_capacity(acc.len() * ps.len());
                    for prefix in &acc {
                        for p in &ps {
                            let mut t = prefix.clone();
                            t.push(p.clone());
                            next.push(t);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(PointExpr::tuple).collect()
            }
            OrderExpr::Glue { base, fibers } => {
                let mut out = Vec::new();
                for (p, fiber) in base.points(reals)?.into_iter().zip(fibers) {
                    for q in fiber.points(reals)? {
                        out.push(PointExpr::pair(p.clone(), q));
                    }
                }
                out
            }
            OrderExpr::Duplicate(inner) => {
                let mut out = Vec::new();
                for p in inner.points(reals)? {
                    out.push(PointExpr::Dup(Box::new(p.clone()), 0));
                    out.push(PointExpr::Dup(Box::new(p), 1));
                }
                out
            }
            OrderExpr::PartitionTree(t) => (0..t.leaf_count()).map(PointExpr::Leaf).collect(),
        })
    }

    /// The order itself, decided on point descriptions.
    pub fn compare_points(&self, a: &PointExpr, b: &PointExpr) -> Result<Ordering> {
        match (self, a, b) {
            (OrderExpr::RealBase, PointExpr::Real(x), PointExpr::Real(y)) => Ok(x.cmp(y)),
            (OrderExpr::FiniteChain(_), PointExpr::Index(i), PointExpr::Index(j)) => Ok(i.cmp(j)),
            (OrderExpr::PartitionTree(_), PointExpr::Leaf(i), PointExpr::Leaf(j)) => Ok(i.cmp(j)),
            (
                OrderExpr::Product { factors, repeat, .. },
                PointExpr::Tuple { items: xa, repeat: ra },
                PointExpr::Tuple { items: xb, repeat: rb },
            ) => {
                let n = factors.len().max(xa.len()).max(xb.len());
                let at = |items: &'_ [PointExpr], r: &'_ Option<Box<PointExpr>>, i: usize| -> Option<PointExpr> {
                    items.get(i).cloned().or_else(|| r.as_deref().cloned())
                };
                for i in 0..=n {
                    let factor = factors.get(i).or(repeat.as_deref());
                    let (Some(factor), Some(pa), Some(pb)) = (factor, at(xa, ra, i), at(xb, rb, i)) else {
                        return Ok(Ordering::Equal);
                    };
                    match factor.compare_points(&pa, &pb)? {
                        Ordering::Equal => continue,
                        o => return Ok(o),
                    }
                }
                Ok(Ordering::Equal)
            }
            (OrderExpr::Glue { base, fibers }, PointExpr::Pair(p1, q1), PointExpr::Pair(p2, q2)) => {
                match base.compare_points(p1, p2)? {
                    Ordering::Equal => {
                        let i = base_index(base, p1)?;
                        fibers[i].compare_points(q1, q2)
                    }
                    o => Ok(o),
                }
            }
            (OrderExpr::Duplicate(inner), PointExpr::Dup(p1, b1), PointExpr::Dup(p2, b2)) => {
                Ok(inner.compare_points(p1, p2)?.then(b1.cmp(b2)))
            }
            _ => Err(shape(self, a)),
        }
    }
}

fn check_anchors(a: &[Q], factors: usize) -> Result<()> {
    if a.len() != factors + 1 {
        return Err(Error::Anchor(format!(
            "{} anchors for {factors} factors; need {}",
            a.len(),
            factors + 1
        )));
    }
    let half = q(1, 2);
    if let Some(bad) = a.iter().find(|y| **y < half || **y > Q::one()) {
        return Err(Error::Anchor(format!("anchor {} outside [1/2,1]", rational::format(bad))));
    }
    if a.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Anchor("anchors must strictly decrease".into()));
    }
    Ok(())
}

/// `1/2 + 2^(-β-1)` for `β ≤ factors`.
pub fn default_anchors(factors: usize) -> Vec<Q> {
    (0..=factors as u64).map(|b| q(1, 2) + pow2_neg(b + 1)).collect()
}

fn base_index(base: &OrderExpr, p: &PointExpr) -> Result<usize> {
    base.points(&[])?
        .iter()
        .position(|x| x == p)
        .ok_or_else(|| shape(base, p))
}

/// `0 ↦ (0)`, `r ↦ (r, 0)`.
pub fn embed_real(r: &Q) -> Result<TransfiniteSeq> {
    if !in_unit(r) {
        return Err(Error::Validation(format!("real {} outside [0,1]", rational::format(r))));
    }
    if r.is_zero() {
        Ok(TransfiniteSeq::zero())
    } else {
        TransfiniteSeq::finite(vec![r.clone(), Q::zero()])
    }
}

/// Point `i` of an `n`-chain goes to `((i+1)/(2n), 0)`.
pub fn embed_chain(n: u64, i: u64) -> Result<TransfiniteSeq> {
    if i >= n {
        return Err(Error::Shape(format!("index {i} outside a {n}-chain")));
    }
    TransfiniteSeq::finite(vec![q(i as i64 + 1, 2 * n as i64), Q::zero()])
}

/// `⌢_β ((y_β − y_{β+1})/2 · z_β + y_{β+1}) ⌢ 0` for finitely many blocks.
pub fn product_of_images(images: &[TransfiniteSeq], anchors: &[Q]) -> Result<TransfiniteSeq> {
    check_anchors(anchors, images.len())?;
    let mut out: Option<TransfiniteSeq> = None;
    for (b, z) in images.iter().enumerate() {
        let block = product_block(z, &anchors[b], &anchors[b + 1])?;
        out = Some(match out {
            None => block,
            Some(acc) => acc.concat(&block)?,
        });
    }
    match out {
        None => Ok(TransfiniteSeq::zero()),
        Some(acc) => acc.push_value(Q::zero()),
    }
}

fn product_block(z: &TransfiniteSeq, y: &Q, y_next: &Q) -> Result<TransfiniteSeq> {
    z.affine(&((y - y_next) / qi(2)), y_next)
}

/// `(½z₀+½) ⌢ (⅛z₁+¼) ⌢ 0`.
pub fn glue_images(base: &TransfiniteSeq, fiber: &TransfiniteSeq) -> Result<TransfiniteSeq> {
    base.affine(&q(1, 2), &q(1, 2))?
        .concat(&fiber.affine(&q(1, 8), &q(1, 4))?)?
        .push_value(Q::zero())
}

/// A validated order description ready to map points.
#[derive(Clone, Debug)]
pub struct Embedding {
    expr: OrderExpr,
}

pub fn compile(expr: &OrderExpr) -> Result<Embedding> {
    expr.validate()?;
    Ok(Embedding { expr: expr.clone() })
}

impl Embedding {
    pub fn expr(&self) -> &OrderExpr {
        &self.expr
    }

    pub fn apply(&self, p: &PointExpr) -> Result<TransfiniteSeq> {
        image(&self.expr, p)
    }
}

/// Image with even length, applying the even-length re-embedding only when
/// the expression does not already guarantee it.
fn even_image(expr: &OrderExpr, p: &PointExpr) -> Result<TransfiniteSeq> {
    let img = image(expr, p)?;
    Ok(match expr.static_parity() {
        Some(Parity::Even) => img,
        _ => img.evenize(),
    })
}

fn image(expr: &OrderExpr, p: &PointExpr) -> Result<TransfiniteSeq> {
    match (expr, p) {
        (OrderExpr::RealBase, PointExpr::Real(r)) => embed_real(r),
        (OrderExpr::FiniteChain(n), PointExpr::Index(i)) => embed_chain(*n, *i),
        (OrderExpr::PartitionTree(t), PointExpr::Leaf(i)) => tree_embed(t, *i),
        (
            OrderExpr::Product {
                factors,
                anchors,
                repeat: None,
                ..
            },
            PointExpr::Tuple { items, repeat: None },
        ) => {
            if items.len() != factors.len() {
                return Err(shape(expr, p));
            }
            let images = factors
                .iter()
                .zip(items)
                .map(|(f, x)| even_image(f, x))
                .collect::<Result<Vec<_>>>()?;
            let anchors = anchors.clone().unwrap_or_else(|| default_anchors(factors.len()));
            product_of_images(&images, &anchors)
        }
        (
            OrderExpr::Product {
                factors,
                repeat: Some(rf),
                ratio,
                ..
            },
            PointExpr::Tuple { items, repeat: Some(rp) },
        ) => omega_product(factors, rf, ratio.clone().unwrap_or_else(|| q(1, 2)), items, rp),
        (OrderExpr::Glue { base, fibers }, PointExpr::Pair(b, f)) => {
            let i = base_index(base, b)?;
            glue_images(&even_image(base, b)?, &image(&fibers[i], f)?)
        }
        (OrderExpr::Duplicate(inner), PointExpr::Dup(x, bit)) => {
            if *bit > 1 {
                return Err(shape(expr, p));
            }
            glue_images(&even_image(inner, x)?, &embed_chain(2, *bit as u64)?)
        }
        _ => Err(shape(expr, p)),
    }
}

fn omega_product(
    factors: &[OrderExpr],
    repeat: &OrderExpr,
    rho: Q,
    items: &[PointExpr],
    rp: &PointExpr,
) -> Result<TransfiniteSeq> {
    if items.len() < factors.len() {
        return Err(Error::Shape(format!(
            "{} explicit coordinates for {} explicit factors",
            items.len(),
            factors.len()
        )));
    }
    let limit = q(1, 2);
    let y = |b: usize| -> Q {
        let mut p = Q::one();
        for _ in 0..b {
            p *= &rho;
        }
        &limit + p / qi(2)
    };
    let mut out: Option<TransfiniteSeq> = None;
    for (b, x) in items.iter().enumerate() {
        let f = factors.get(b).unwrap_or(repeat);
        let block = product_block(&even_image(f, x)?, &y(b), &y(b + 1))?;
        out = Some(match out {
            None => block,
            Some(acc) => acc.concat(&block)?,
        });
    }
    let n = items.len();
    let z = even_image(repeat, rp)?.canonical();
    let unpresentable = || {
        Error::UnpresentableTail(format!(
            "repeated image {z} with ratio {} does not form a geometric tail",
            rational::format(&rho)
        ))
    };
    let a = match z.segments() {
        [Segment::Finite(v)] if v.len() == 2 => v[0].clone(),
        _ => return Err(unpresentable()),
    };
    let first = product_block(&z, &y(n), &y(n + 1))?;
    let second = product_block(&z, &y(n + 1), &y(n + 2))?;
    let v0 = first.get(&Ordinal::zero())?;
    let v1 = first.get(&Ordinal::one())?;
    let v2 = second.get(&Ordinal::zero())?;
    debug_assert!(a.is_positive());
    let two = qi(2);
    if (&v1 - &limit) * &two != &v0 - &limit || (&v2 - &limit) * &two != &v1 - &limit {
        return Err(unpresentable());
    }
    let tail = TransfiniteSeq::new(vec![Segment::tail(v0, limit)])?;
    let body = match out {
        None => tail,
        Some(acc) => acc.concat(&tail)?,
    };
    body.push_value(Q::zero())
}

/// Outcome of a chain audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ChainReport {
    Ok,
    Violation {
        i: usize,
        j: usize,
        /// Deciding index, absent when the two images are equal.
        #[serde(serialize_with = "crate::ordinal::serde_text_opt")]
        delta: Option<Ordinal>,
    },
}

/// Checks that the list is strictly increasing in the universal order,
/// over every pair.
pub fn verify_chain(images: &[TransfiniteSeq]) -> Result<ChainReport> {
    verify_chain_with(images, Ordinal::parity)
}

/// [`verify_chain`] with a substitutable parity function.
pub fn verify_chain_with(images: &[TransfiniteSeq], parity: fn(&Ordinal) -> Parity) -> Result<ChainReport> {
    for (i, x) in images.iter().enumerate() {
        if !x.is_universal() {
            return Err(Error::Validation(format!("image {i} does not end with 0")));
        }
    }
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let r = altlex_compare_with(&images[i], &images[j], parity)?;
            if r.order != Ordering::Less {
                return Ok(ChainReport::Violation { i, j, delta: r.delta });
            }
        }
    }
    Ok(ChainReport::Ok)
}
