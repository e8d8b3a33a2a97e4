//! Seeded random inputs for property tests and the self-test corpus.
//!
//! Values come from coarse dyadic grids so that ties, equal tail limits and
//! shared prefixes show up often.

use num_traits::Zero;
use rand::seq::index::sample;
use rand::Rng;

use crate::kl::function::{Block, CombineOp, FinitaryFunction};
use crate::order::{LabeledTree, OrderExpr};
use crate::ordinal::Ordinal;
use crate::rational::{q, Q};
use crate::seq::{Segment, TransfiniteSeq};

#[derive(Clone, Copy, Debug)]
pub struct SeqShape {
    /// Number of ω-blocks, each ending in a tail.
    pub max_tails: usize,
    /// Longest finite run before a tail.
    pub max_run: usize,
    /// Longest final finite segment, including the closing 0.
    pub max_last: usize,
    /// Values are multiples of `1/grid`.
    pub grid: i64,
}

impl Default for SeqShape {
    fn default() -> Self {
        SeqShape {
            max_tails: 2,
            max_run: 3,
            max_last: 6,
            grid: 64,
        }
    }
}

impl SeqShape {
    pub fn finite(max_len: usize) -> SeqShape {
        SeqShape {
            max_tails: 0,
            max_last: max_len,
            grid: 16,
            ..SeqShape::default()
        }
    }

    pub fn with_tails() -> SeqShape {
        SeqShape {
            max_tails: 2,
            ..SeqShape::default()
        }
    }
}

enum Slot {
    Run(usize),
    Tail,
}

/// A universal-order member of length at most `ω·max_tails + max_last`.
pub fn universal_seq<R: Rng>(rng: &mut R, shape: &SeqShape) -> TransfiniteSeq {
    let tails = rng.gen_range(0..=shape.max_tails);
    let mut slots = Vec::new();
    for _ in 0..tails {
        let run = rng.gen_range(0..=shape.max_run);
        if run > 0 {
            slots.push(Slot::Run(run));
        }
        slots.push(Slot::Tail);
    }
    let last = rng.gen_range(1..=shape.max_last.max(1));
    let needed: usize = slots
        .iter()
        .map(|s| match s {
            Slot::Run(n) => *n,
            Slot::Tail => 2,
        })
        .sum::<usize>()
        + last
        - 1;
    let grid = shape.grid.max(needed as i64 + 1);
    let mut picks: Vec<i64> = sample(rng, grid as usize, needed)
        .into_iter()
        .map(|i| i as i64 + 1)
        .collect();
    picks.sort_unstable_by(|a, b| b.cmp(a));
    let mut vals = picks.into_iter().map(|n| q(n, grid)).peekable();

    let mut segs = Vec::new();
    let mut after_tail: Option<Q> = None;
    for s in &slots {
        match s {
            Slot::Run(n) => {
                let mut v: Vec<Q> = (0..*n).map(|_| vals.next().unwrap()).collect();
                if let Some(l) = after_tail.take() {
                    if rng.gen_bool(0.4) {
                        v[0] = l;
                    }
                }
                segs.push(Segment::Finite(v));
            }
            Slot::Tail => {
                let mut start = vals.next().unwrap();
                let limit = vals.next().unwrap();
                if let Some(l) = after_tail.take() {
                    if rng.gen_bool(0.4) {
                        start = l;
                    }
                }
                segs.push(Segment::tail(start, limit.clone()));
                after_tail = Some(limit);
            }
        }
    }
    let mut v: Vec<Q> = vals.collect();
    if let (Some(l), false) = (after_tail, v.is_empty()) {
        if rng.gen_bool(0.4) {
            v[0] = l;
        }
    }
    v.push(Q::zero());
    segs.push(Segment::Finite(v));
    TransfiniteSeq::universal(segs).expect("generated sequence is valid")
}

/// The same sequence under a random alternative presentation: finite runs
/// split apart, and tails with their first terms peeled off.
pub fn represent<R: Rng>(rng: &mut R, x: &TransfiniteSeq) -> TransfiniteSeq {
    let mut segs = Vec::new();
    for s in x.segments() {
        match s {
            Segment::Finite(v) if v.len() > 1 && rng.gen_bool(0.5) => {
                let cut = rng.gen_range(1..v.len());
                segs.push(Segment::Finite(v[..cut].to_vec()));
                segs.push(Segment::Finite(v[cut..].to_vec()));
            }
            Segment::Tail { start, limit } if rng.gen_bool(0.5) => {
                let peel = rng.gen_range(1..=3u64);
                let vals: Vec<Q> = (0..peel).map(|n| crate::seq::tail_value(start, limit, n)).collect();
                segs.push(Segment::Finite(vals));
                segs.push(Segment::tail(crate::seq::tail_value(start, limit, peel), limit.clone()));
            }
            s => segs.push(s.clone()),
        }
    }
    TransfiniteSeq::new(segs).expect("re-presentation is valid")
}

/// A uniformly chosen ω-block, then an offset inside it.
pub fn random_index<R: Rng>(rng: &mut R, x: &TransfiniteSeq, max_offset: u64) -> Ordinal {
    let (j, m) = x.length().as_omega_linear().expect("length below ω²");
    let block = rng.gen_range(0..=j);
    if block == j && m > 0 {
        Ordinal::omega_times_plus(j, rng.gen_range(0..m))
    } else {
        let block = block.min(j.saturating_sub(1));
        Ordinal::omega_times_plus(block, rng.gen_range(0..max_offset.max(1)))
    }
}

/// `x` kept below `delta` with a fresh universal suffix differing from `x`
/// at `delta`.
pub fn mutate_at<R: Rng>(rng: &mut R, x: &TransfiniteSeq, delta: &Ordinal, shape: &SeqShape) -> Option<TransfiniteSeq> {
    let prefix = x.prefix_segments(delta).ok()?;
    let (bound, strict) = match x.inf_before(delta).ok()? {
        None => (q(1, 1), false),
        Some(inf) => (inf, !delta.is_limit()),
    };
    let old = x.get(delta).ok();
    for _ in 0..8 {
        let tail_shape = SeqShape {
            max_tails: shape.max_tails.min(1),
            ..*shape
        };
        let r = universal_seq(rng, &tail_shape);
        let scale = if strict {
            &bound * q(shape.grid - 1, shape.grid)
        } else {
            bound.clone()
        };
        if scale.is_zero() {
            return None;
        }
        let suffix = r.affine(&scale, &Q::zero()).ok()?;
        if Some(suffix.first()) == old.as_ref() {
            continue;
        }
        let mut segs = prefix.clone();
        segs.extend(suffix.segments().iter().cloned());
        if let Ok(y) = TransfiniteSeq::universal(segs) {
            return Some(y);
        }
    }
    None
}

/// A pair sharing a prefix up to a random index of the first.
pub fn related_pair<R: Rng>(rng: &mut R, shape: &SeqShape, max_offset: u64) -> (TransfiniteSeq, TransfiniteSeq) {
    loop {
        let x = universal_seq(rng, shape);
        let d = random_index(rng, &x, max_offset);
        if let Some(y) = mutate_at(rng, &x, &d, shape) {
            return (x, y);
        }
    }
}

/// Three members, related by mutation, in random presentations.
pub fn triple<R: Rng>(rng: &mut R, shape: &SeqShape) -> [TransfiniteSeq; 3] {
    let (x, y) = related_pair(rng, shape, 8);
    let z = loop {
        let base = if rng.gen_bool(0.5) { &x } else { &y };
        let d = random_index(rng, base, 8);
        if rng.gen_bool(0.1) {
            break base.clone();
        }
        if let Some(z) = mutate_at(rng, base, &d, shape) {
            break z;
        }
    };
    [represent(rng, &x), represent(rng, &y), represent(rng, &z)]
}

/// A strict pair `x <_altlex y`.
pub fn strict_pair<R: Rng>(rng: &mut R, shape: &SeqShape) -> (TransfiniteSeq, TransfiniteSeq) {
    let (x, y) = related_pair(rng, shape, 6);
    if crate::seq::altlex_less(&x, &y).expect("comparable") {
        (x, y)
    } else {
        (y, x)
    }
}

// ---- order expressions ----

/// Real sample points used for every `RealBase` in generated expressions.
pub fn sample_reals<R: Rng>(rng: &mut R) -> Vec<Q> {
    let n = rng.gen_range(2..=4);
    let mut v: Vec<Q> = sample(rng, 17, n).into_iter().map(|i| q(i as i64, 16)).collect();
    v.sort();
    v
}

pub fn labeled_tree<R: Rng>(rng: &mut R, depth: usize) -> LabeledTree {
    fn go<R: Rng>(rng: &mut R, label: Q, depth: usize) -> LabeledTree {
        let kids = if depth == 0 { 0 } else { rng.gen_range(0..=2) };
        let children = (0..kids)
            .map(|_| {
                let f = q(rng.gen_range(1..8), 8);
                go(rng, &label * f, depth - 1)
            })
            .collect();
        LabeledTree::node(label, children)
    }
    let root = q(rng.gen_range(4..16), 16);
    go(rng, root, depth)
}

fn leaf_expr<R: Rng>(rng: &mut R, finite_only: bool) -> OrderExpr {
    match rng.gen_range(0..if finite_only { 2 } else { 3 }) {
        0 => OrderExpr::FiniteChain(rng.gen_range(1..=4)),
        1 => OrderExpr::PartitionTree(labeled_tree(rng, 2)),
        _ => OrderExpr::RealBase,
    }
}

fn anchors<R: Rng>(rng: &mut R, n: usize) -> Option<Vec<Q>> {
    if rng.gen_bool(0.5) {
        return None;
    }
    // n + 1 distinct values in [1/2, 1] from a grid of 32.
    let mut v: Vec<i64> = sample(rng, 17, n + 1).into_iter().map(|i| i as i64 + 16).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Some(v.into_iter().map(|i| q(i, 32)).collect())
}

fn expr_at<R: Rng>(rng: &mut R, depth: usize, finite_only: bool, reals: &[Q]) -> OrderExpr {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf_expr(rng, finite_only);
    }
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=3);
            let factors = (0..n).map(|_| expr_at(rng, depth - 1, finite_only, reals)).collect();
            OrderExpr::Product {
                factors,
                anchors: anchors(rng, n),
                repeat: None,
                ratio: None,
            }
        }
        1 => {
            let base = expr_at(rng, depth - 1, true, reals);
            let n = base.points(reals).map_or(0, |p| p.len());
            let fibers = (0..n).map(|_| expr_at(rng, depth - 1, finite_only, reals)).collect();
            OrderExpr::glue(base, fibers)
        }
        _ => OrderExpr::duplicate(expr_at(rng, depth - 1, finite_only, reals)),
    }
}

/// An expression of nesting depth at most `depth` with at most `max_points`
/// points over `reals`.
pub fn order_expr<R: Rng>(rng: &mut R, depth: usize, max_points: usize, reals: &[Q]) -> OrderExpr {
    loop {
        let e = expr_at(rng, depth, false, reals);
        if e.validate().is_err() {
            continue;
        }
        if let Ok(p) = e.points(reals) {
            if (2..=max_points).contains(&p.len()) {
                return e;
            }
        }
    }
}

// ---- functions on [0, ω^k] ----

fn grid_value<R: Rng>(rng: &mut R, grid: i64) -> Q {
    q(rng.gen_range(0..=grid), grid)
}

pub fn block<R: Rng>(rng: &mut R, level: u32, grid: i64) -> Block {
    if level == 0 {
        return Block::Value(grid_value(rng, grid));
    }
    let n = rng.gen_range(0..=3);
    Block::Seq {
        prefix: (0..n).map(|_| block(rng, level - 1, grid)).collect(),
        rep: Box::new(block(rng, level - 1, grid)),
    }
}

/// A nonnegative function with values in multiples of `1/4` up to 1.
pub fn function<R: Rng>(rng: &mut R, k: u32) -> FinitaryFunction {
    let b = block(rng, k, 4);
    FinitaryFunction::new(k, b, grid_value(rng, 4)).unwrap()
}

fn indicator<R: Rng>(rng: &mut R, k: u32) -> FinitaryFunction {
    FinitaryFunction::new(k, block(rng, k, 1), grid_value(rng, 1)).unwrap()
}

/// A scaled difference-hierarchy combination `A₁ ∖ (A₂ ∖ (A₃ ∖ …))` of
/// random sets, plus a random base level.
pub fn difference_function<R: Rng>(rng: &mut R, k: u32) -> FinitaryFunction {
    let depth = rng.gen_range(1..=4);
    let mut acc = indicator(rng, k);
    for _ in 1..depth {
        // A ∖ B as max(a − b, 0), building from the innermost set out.
        let a = indicator(rng, k);
        acc = a.combine(&acc, CombineOp::Sub).unwrap().combine(&FinitaryFunction::constant(k, Q::zero()), CombineOp::Max).unwrap();
    }
    let scaled = acc.scale(&q(rng.gen_range(1..=4), 4));
    let base = FinitaryFunction::constant(k, q(rng.gen_range(0..=2), 8));
    scaled.combine(&base, CombineOp::Add).unwrap().canonical()
}

/// Either kind of random function, on `[0, ω]` or `[0, ω²]`.
pub fn any_function<R: Rng>(rng: &mut R) -> FinitaryFunction {
    let k = rng.gen_range(1..=2);
    any_function_k(rng, k)
}

/// A nonnegative function that is positive somewhere.
pub fn nonzero_function<R: Rng>(rng: &mut R, k: u32) -> FinitaryFunction {
    loop {
        let h = any_function_k(rng, k);
        if !h.is_zero() {
            return h;
        }
    }
}

/// `(f0, f1)` with `f0 = f1 − h` for a nonnegative nonzero `h`. Part of
/// the time `h` is chosen so the two functions share their first one or
/// two stages: a fraction of `f̂ − f` keeps the envelope, and a fraction of
/// the second residual keeps the first two stages when it stays in range.
pub fn comparable_pair<R: Rng>(rng: &mut R) -> (FinitaryFunction, FinitaryFunction) {
    let k = rng.gen_range(1..=2);
    let f = any_function_k(rng, k);
    let c = q(rng.gen_range(1..=3), 4);
    let g1 = f.envelope().sub_nonneg(&f).expect("envelope majorizes");
    match rng.gen_range(0..3) {
        1 if !g1.is_zero() => {
            let f1 = f.combine(&g1.scale(&c), CombineOp::Add).unwrap().canonical();
            return (f, f1);
        }
        2 => {
            let g2 = g1.envelope().sub_nonneg(&g1).expect("envelope majorizes");
            if let Ok(f0) = f.sub_nonneg(&g2.scale(&c)) {
                if !g2.is_zero() {
                    return (f0.canonical(), f);
                }
            }
        }
        _ => {}
    }
    let h = nonzero_function(rng, k);
    let f1 = f.combine(&h, CombineOp::Add).unwrap().canonical();
    (f, f1)
}

pub fn usc_function<R: Rng>(rng: &mut R, k: u32) -> FinitaryFunction {
    any_function_k(rng, k).envelope().canonical()
}

fn any_function_k<R: Rng>(rng: &mut R, k: u32) -> FinitaryFunction {
    if rng.gen_bool(0.5) {
        function(rng, k)
    } else {
        difference_function(rng, k)
    }
}

/// USC `f <_p g`: `g = f + ĥ` for a random nonzero `h`.
pub fn usc_pair<R: Rng>(rng: &mut R) -> (FinitaryFunction, FinitaryFunction) {
    let k = rng.gen_range(1..=2);
    let f = usc_function(rng, k);
    let h = nonzero_function(rng, k).envelope();
    let g = f.combine(&h, CombineOp::Add).unwrap().canonical();
    (f, g)
}

/// Sets every value at a limit point (and the top) to `c`.
fn raise_limits(b: &Block, c: &Q, at_origin: bool) -> Block {
    match b {
        Block::Value(v) => Block::Value(v.clone()),
        Block::Seq { prefix, rep } if b.level() == 1 => {
            let mut prefix: Vec<Block> = prefix.clone();
            if prefix.is_empty() {
                prefix.push((**rep).clone());
            }
            if !at_origin {
                prefix[0] = Block::Value(c.clone());
            }
            Block::Seq { prefix, rep: rep.clone() }
        }
        Block::Seq { prefix, rep } => {
            let mut out: Vec<Block> = prefix
                .iter()
                .enumerate()
                .map(|(i, s)| raise_limits(s, c, at_origin && i == 0))
                .collect();
            if out.is_empty() {
                out.push(raise_limits(rep, c, at_origin));
            }
            Block::Seq {
                prefix: out,
                rep: Box::new(raise_limits(rep, c, false)),
            }
        }
    }
}

/// A USC function `g ≥ f`, built without the envelope: either `f` lifted by
/// a random amount with every limit value set to the overall maximum, or
/// `f̂` plus a random USC bump.
pub fn usc_majorant<R: Rng>(rng: &mut R, f: &FinitaryFunction) -> FinitaryFunction {
    let k = f.k();
    if rng.gen_bool(0.5) {
        let lifted = f.combine(&function(rng, k), CombineOp::Max).unwrap();
        let c = lifted.sup() + q(rng.gen_range(0..=2), 4);
        let body = raise_limits(lifted.body(), &c, true);
        FinitaryFunction::new(k, body, c).unwrap()
    } else {
        let bump = usc_function(rng, k);
        f.envelope().combine(&bump, CombineOp::Add).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sequences_are_valid_and_reshaped() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let x = universal_seq(&mut rng, &SeqShape::default());
            assert!(x.is_universal());
            let (j, m) = x.length().as_omega_linear().unwrap();
            assert!(j <= 2 && m <= 6);
            let y = represent(&mut rng, &x);
            assert_eq!(x.canonical(), y.canonical());
        }
    }

    #[test]
    fn mutation_hits_requested_index() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen_limit = false;
        for _ in 0..300 {
            let x = universal_seq(&mut rng, &SeqShape::default());
            let d = random_index(&mut rng, &x, 10);
            if let Some(y) = mutate_at(&mut rng, &x, &d, &SeqShape::default()) {
                assert_eq!(crate::seq::delta_first_difference(&x, &y).unwrap(), d);
                seen_limit |= d.is_limit() && !d.is_zero();
            }
        }
        assert!(seen_limit);
    }

    #[test]
    fn majorants_dominate_and_are_usc() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let f = any_function(&mut rng);
            let g = usc_majorant(&mut rng, &f);
            assert!(g.is_usc());
            assert!(f.le(&g).unwrap());
        }
    }

    #[test]
    fn exprs_respect_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let reals = sample_reals(&mut rng);
            let e = order_expr(&mut rng, 3, 60, &reals);
            assert!(e.points(&reals).unwrap().len() <= 60);
        }
    }
}
