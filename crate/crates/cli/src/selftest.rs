//! The acceptance corpus. Every criterion draws from its own generator
//! seeded from the run seed, so criteria can be run alone or together with
//! identical results.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use altlex::gen::{self, SeqShape};
use altlex::hyperspace::{check_witness, hausdorff_distance_approx, psi_compact, witness_between, CompactFig, Piece};
use altlex::kl::{self, decompose, index, usc_index_approx, usc_order_certificate, FinitaryFunction, UscOrder};
use altlex::oracle::walk_compare;
use altlex::order::{compile, verify_chain_with, ChainReport, OrderExpr};
use altlex::rational::{pow2_neg, q, qi};
use altlex::seq::{altlex_compare, delta_first_difference, Segment};
use altlex::{Error, Ordinal, Parity, TransfiniteSeq, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const CRITERIA: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Swap the parity of every ordinal in the chain audit and the stage
    /// parity rule.
    Parity,
}

#[derive(Clone, Copy, Debug)]
pub struct Sizes {
    pub triples: usize,
    pub oracle_pairs: usize,
    pub exprs: usize,
    pub functions: usize,
    pub comparable: usize,
    pub envelope_fns: usize,
    pub majorants: usize,
    pub usc_pairs: usize,
    pub finite_pairs: usize,
    pub tail_pairs: usize,
    pub evenize: usize,
}

impl Sizes {
    pub fn full() -> Sizes {
        Sizes {
            triples: 10_000,
            oracle_pairs: 10_000,
            exprs: 200,
            functions: 100,
            comparable: 500,
            envelope_fns: 500,
            majorants: 200,
            usc_pairs: 1_000,
            finite_pairs: 1_000,
            tail_pairs: 100,
            evenize: 1_000,
        }
    }

    /// A tenth of the corpus, used for the in-process determinism check.
    pub fn reduced() -> Sizes {
        let f = Sizes::full();
        Sizes {
            triples: f.triples / 10,
            oracle_pairs: f.oracle_pairs / 10,
            exprs: f.exprs / 10,
            functions: f.functions / 10,
            comparable: f.comparable / 10,
            envelope_fns: f.envelope_fns / 10,
            majorants: f.majorants / 10,
            usc_pairs: f.usc_pairs / 10,
            finite_pairs: f.finite_pairs / 10,
            tail_pairs: f.tail_pairs / 10,
            evenize: f.evenize / 10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub fault: Option<Fault>,
    pub sizes: Sizes,
}

impl Config {
    pub fn new(seed: u64) -> Config {
        Config {
            seed,
            fault: None,
            sizes: Sizes::full(),
        }
    }

    fn parity(&self) -> fn(&Ordinal) -> Parity {
        match self.fault {
            None => Ordinal::parity,
            Some(Fault::Parity) => |o| o.parity().flip(),
        }
    }

    fn rng(&self, id: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(id))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub failures: u64,
    /// Set when a failure means an internal invariant broke rather than a
    /// case being outside what the engine handles.
    pub invariant_violation: bool,
    /// Counters describing the corpus that was exercised.
    pub stats: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

struct Tally {
    id: u32,
    name: &'static str,
    cases: u64,
    failures: u64,
    invariant_violation: bool,
    stats: BTreeMap<String, u64>,
    first_failure: Option<String>,
}

impl Tally {
    fn new(id: u32, name: &'static str) -> Tally {
        Tally {
            id,
            name,
            cases: 0,
            failures: 0,
            invariant_violation: false,
            stats: BTreeMap::new(),
            first_failure: None,
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        self.first_failure.get_or_insert(msg);
    }

    fn violation(&mut self, msg: String) {
        self.invariant_violation = true;
        self.fail(msg);
    }

    fn err(&mut self, e: Error) {
        if e.exit_code() == 3 {
            self.violation(e.to_string());
        } else {
            self.fail(e.to_string());
        }
    }

    fn count(&mut self, key: &str) {
        *self.stats.entry(key.into()).or_default() += 1;
    }

    fn finish(self) -> CriterionResult {
        CriterionResult {
            id: self.id,
            name: self.name,
            passed: self.failures == 0 && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
            invariant_violation: self.invariant_violation,
            stats: self.stats,
            first_failure: self.first_failure,
        }
    }
}

fn ord_text(o: &Ordinal) -> String {
    altlex::ordinal::to_text(o)
}

fn cmp(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Ordering {
    altlex_compare(x, y).expect("members of the universal order").order
}

fn total_order(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(1, "total_order_laws");
    let mut r = cfg.rng(1);
    let shape = SeqShape::default();
    for _ in 0..cfg.sizes.triples {
        let s = gen::triple(&mut r, &shape);
        t.stats.entry("presentations".into()).and_modify(|c| *c += 3).or_insert(3);
        let o = |a: usize, b: usize| cmp(&s[a], &s[b]);
        let mut ok = (0..3).all(|a| o(a, a) == Ordering::Equal);
        for a in 0..3 {
            for b in 0..3 {
                ok &= o(a, b) == o(b, a).reverse();
                for c in 0..3 {
                    if o(a, b) == Ordering::Less && o(b, c) == Ordering::Less {
                        ok &= o(a, c) == Ordering::Less;
                    }
                    if o(a, b) == Ordering::Equal {
                        ok &= o(a, c) == o(b, c);
                    }
                }
            }
        }
        if let Some(d) = altlex_compare(&s[0], &s[1]).unwrap().delta {
            t.count(if d.is_limit() && !d.is_zero() { "limit_delta" } else { "successor_or_zero_delta" });
        } else {
            t.count("equal_pairs");
        }
        t.case(ok, || format!("order laws fail on {} / {} / {}", s[0], s[1], s[2]));
    }
    t.finish()
}

fn oracle(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(2, "oracle_equivalence");
    let mut r = cfg.rng(2);
    let shape = SeqShape::default();
    let mut done = 0;
    while done < cfg.sizes.oracle_pairs {
        let x = gen::universal_seq(&mut r, &shape);
        let (j, m) = x.length().as_omega_linear().unwrap();
        let cap = if j > 0 { 200 } else { m };
        let d = r.gen_range(0..cap);
        let Some(y) = gen::mutate_at(&mut r, &x, &Ordinal::from(d), &shape) else { continue };
        done += 1;
        let (x, y) = (gen::represent(&mut r, &x), gen::represent(&mut r, &y));
        if d >= 100 {
            t.count("delta_at_least_100");
        }
        let walk = walk_compare(&x, &y);
        let fast = altlex_compare(&x, &y).ok();
        let delta = delta_first_difference(&x, &y).ok();
        let ok = match (&walk, &fast) {
            (Some(w), Some(f)) => {
                w.order == f.order && w.delta == f.delta && w.delta == delta && delta == Some(Ordinal::from(d))
            }
            _ => false,
        };
        t.case(ok, || format!("walk {walk:?} vs segment walk {fast:?} on {x} / {y}"));
    }
    t.finish()
}

fn kinds(e: &OrderExpr, t: &mut Tally, depth: u64) {
    t.stats
        .entry("max_depth".into())
        .and_modify(|c| *c = (*c).max(depth))
        .or_insert(depth);
    let key = e.kind();
    if depth > 0 {
        t.count(&format!("nested_{key}"));
    }
    match e {
        OrderExpr::Product { factors, .. } => factors.iter().for_each(|f| kinds(f, t, depth + 1)),
        OrderExpr::Glue { base, fibers } => {
            kinds(base, t, depth + 1);
            fibers.iter().for_each(|f| kinds(f, t, depth + 1));
        }
        OrderExpr::Duplicate(inner) => kinds(inner, t, depth + 1),
        _ => {}
    }
}

fn combinators(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(3, "combinator_soundness");
    let mut r = cfg.rng(3);
    let parity = cfg.parity();
    for i in 0..cfg.sizes.exprs {
        let reals = gen::sample_reals(&mut r);
        let e = gen::order_expr(&mut r, 3, 60, &reals);
        t.count(&format!("top_{}", e.kind()));
        kinds(&e, &mut t, 0);
        let run = || -> altlex::Result<std::result::Result<(), String>> {
            let emb = compile(&e)?;
            let pts = e.points(&reals)?;
            let images = pts.iter().map(|p| emb.apply(p)).collect::<altlex::Result<Vec<_>>>()?;
            if let ChainReport::Violation { i, j, delta } = verify_chain_with(&images, parity)? {
                return Ok(Err(format!(
                    "chain audit: images {i} and {j} out of order (delta {})",
                    delta.map_or("none".into(), |d| ord_text(&d))
                )));
            }
            for (a, pa) in pts.iter().enumerate() {
                for (b, pb) in pts.iter().enumerate() {
                    let want = e.compare_points(pa, pb)?;
                    let got = altlex::seq::altlex_compare_with(&images[a], &images[b], parity)?.order;
                    if want != got {
                        return Ok(Err(format!("points {a}, {b}: order {want:?}, images {got:?}")));
                    }
                }
            }
            Ok(Ok(()))
        };
        t.cases += 1;
        match run() {
            Ok(Ok(())) => {}
            Ok(Err(msg)) => t.violation(format!("expression {i}: {msg}")),
            Err(e) => t.err(e),
        }
    }
    t.finish()
}

fn worked_decomposition(_cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(4, "worked_decomposition");
    let f = FinitaryFunction::level1(vec![qi(1), qi(1)], qi(1), qi(0));
    let want = [
        FinitaryFunction::constant(1, qi(1)),
        FinitaryFunction::level1(vec![], qi(0), qi(1)),
        FinitaryFunction::constant(1, qi(0)),
    ];
    match decompose(&f) {
        Ok(d) => {
            t.case(d.rank == Ordinal::from(2), || format!("rank {}", ord_text(&d.rank)));
            t.case(
                d.stages.len() == 3 && d.stages.iter().zip(&want).all(|(a, b)| a.equals(b)),
                || "stages differ from (1, χ_{ω}, 0)".into(),
            );
            let recon = d.stages[0].combine(&d.stages[1], kl::CombineOp::Sub).map(|g| g.equals(&f));
            t.case(recon == Ok(true), || "f ≠ f_0 − f_1".into());
            match kl::decompose::verify(&f, &d) {
                Ok(v) => t.case(v.all_passed(), || format!("{v:?}")),
                Err(e) => t.err(e),
            }
        }
        Err(e) => t.err(e),
    }
    t.finish()
}

fn decomposition_suite(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(5, "decomposition_invariants");
    let mut r = cfg.rng(5);
    for i in 0..cfg.sizes.functions {
        let k = 1 + (i % 2) as u32;
        let f = if i % 4 < 2 { gen::difference_function(&mut r, k) } else { gen::function(&mut r, k) };
        t.count(&format!("k{k}"));
        match decompose(&f).and_then(|d| kl::decompose::verify(&f, &d).map(|v| (d, v))) {
            Ok((d, v)) => {
                t.count(&format!("rank_{}", ord_text(&d.rank)));
                t.case(v.all_passed(), || {
                    let bad: Vec<_> = v.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
                    format!("function {i}: failed {bad:?}")
                });
            }
            Err(e) => {
                t.cases += 1;
                t.err(e)
            }
        }
    }
    t.finish()
}

fn monotonicity(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(6, "parity_rule");
    let mut r = cfg.rng(6);
    let parity = cfg.parity();
    for _ in 0..cfg.sizes.comparable {
        let (f0, f1) = gen::comparable_pair(&mut r);
        t.cases += 1;
        match kl::decompose::compare_decompositions_with(&f0, &f1, parity) {
            Ok(c) => {
                t.count(&format!("delta_{}", ord_text(&c.delta)));
                let (a, b) = &c.pair;
                let ordered = match c.parity {
                    Parity::Even => a.lt(b),
                    Parity::Odd => b.lt(a),
                };
                if !(a.is_usc() && b.is_usc() && ordered == Ok(true)) {
                    t.violation(format!("stage pair at {} not a strictly ordered USC pair", ord_text(&c.delta)));
                }
            }
            Err(e) => t.err(e),
        }
    }
    t.finish()
}

fn envelope_laws(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(7, "envelope_laws");
    let mut r = cfg.rng(7);
    for i in 0..cfg.sizes.envelope_fns {
        let f = gen::any_function(&mut r);
        let e = f.envelope();
        if f.is_usc() {
            t.count("already_usc");
        }
        let mut ok = f.le(&e) == Ok(true) && e.envelope().equals(&e) && e.is_usc() && (f.is_usc() == e.equals(&f));
        for _ in 0..cfg.sizes.majorants {
            let g = gen::usc_majorant(&mut r, &f);
            ok &= g.is_usc() && f.le(&g) == Ok(true) && e.le(&g) == Ok(true);
        }
        t.case(ok, || format!("function {i}: {}", f.to_json()));
    }
    t.finish()
}

fn usc_index(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(8, "usc_index");
    let mut r = cfg.rng(8);
    let eps = pow2_neg(40);
    for k in 1..=2 {
        let z = FinitaryFunction::constant(k, Q::zero());
        t.case(usc_index_approx(&z, 40).is_zero(), || format!("zero function index on k={k}"));
    }
    for _ in 0..cfg.sizes.usc_pairs {
        let (f, g) = gen::usc_pair(&mut r);
        let swap = r.gen_bool(0.5);
        let (a, b) = if swap { (&g, &f) } else { (&f, &g) };
        let ok = match usc_order_certificate(a, b) {
            Ok(UscOrder::Less(c)) if !swap => {
                c.verify(&f, &g) && index::meets_subgraph(&g, &c.basic_box) && !index::meets_subgraph(&f, &c.basic_box)
            }
            Ok(UscOrder::Greater(c)) if swap => c.verify(&f, &g),
            _ => false,
        };
        let ra = usc_index_approx(&f, 40);
        let rb = usc_index_approx(&g, 40);
        t.case(ok && ra <= &rb + &eps, || format!("pair {} / {}", f.to_json(), g.to_json()));
    }
    t.finish()
}

/// Graph points at up to 200 indices per ω-block, plus the figure's own
/// vertical segments.
fn sampled_closure(x: &TransfiniteSeq, fig: &CompactFig) -> CompactFig {
    let (j, m) = x.length().as_omega_linear().unwrap();
    let mut pieces: Vec<Piece> = fig.pieces.iter().filter(|p| matches!(p, Piece::VSeg { .. })).cloned().collect();
    for b in 0..=j {
        let n = if b < j { 200 } else { m };
        for i in 0..n {
            if let Ok(v) = x.get(&Ordinal::omega_times_plus(b, i)) {
                pieces.push(Piece::Point(v, Q::zero()));
            }
        }
    }
    CompactFig { pieces }
}

fn witnesses(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(9, "hyperspace_witnesses");
    let mut r = cfg.rng(9);
    let run = |t: &mut Tally, x: &TransfiniteSeq, y: &TransfiniteSeq| {
        match witness_between(x, y).and_then(|w| check_witness(x, y, &w)) {
            Ok(rep) => {
                if rep.empty_prefix_top {
                    t.count("empty_prefix_top");
                }
                t.count(&format!("delta_{}", rep.parity.as_str()));
                t.case(rep.all_passed(), || {
                    let bad: Vec<_> = rep.predicates.iter().filter(|p| !p.passed).map(|p| p.name.clone()).collect();
                    format!("{x} < {y}: failed {bad:?}")
                })
            }
            Err(e) => {
                t.cases += 1;
                t.err(e)
            }
        }
    };
    let finite = SeqShape::finite(6);
    for _ in 0..cfg.sizes.finite_pairs {
        let (x, y) = gen::strict_pair(&mut r, &finite);
        run(&mut t, &x, &y);
    }
    let has_tail = |s: &TransfiniteSeq| s.segments().iter().any(|g| matches!(g, Segment::Tail { .. }));
    let tol = q(1, 1 << 20);
    let eps = q(1, 1 << 24);
    let mut done = 0;
    while done < cfg.sizes.tail_pairs {
        let (x, y) = gen::strict_pair(&mut r, &SeqShape::with_tails());
        if !(has_tail(&x) || has_tail(&y)) {
            continue;
        }
        done += 1;
        run(&mut t, &x, &y);
        for s in [&x, &y] {
            let fig = psi_compact(s);
            let sample = sampled_closure(s, &fig);
            let members = sample.pieces.iter().all(|p| match p {
                Piece::Point(a, b) => fig.contains(a, b),
                _ => true,
            });
            let d = hausdorff_distance_approx(&fig, &sample, &eps);
            if fig.pieces.iter().any(|p| matches!(p, Piece::VSeg { .. })) {
                t.count("figures_with_segments");
            }
            t.case(members && d.as_ref().is_ok_and(|d| d + &eps <= tol), || {
                format!("figure of {s} vs samples: distance {d:?}")
            });
        }
    }
    t.finish()
}

fn evenize(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(10, "evenize");
    let mut r = cfg.rng(10);
    let mut xs = Vec::with_capacity(cfg.sizes.evenize);
    while xs.len() < cfg.sizes.evenize {
        let (x, y) = gen::related_pair(&mut r, &SeqShape::default(), 8);
        xs.push(x);
        xs.push(y);
    }
    xs.truncate(cfg.sizes.evenize);
    let es: Vec<_> = xs.iter().map(TransfiniteSeq::evenize).collect();
    for (x, e) in xs.iter().zip(&es) {
        if x.length().parity() == Parity::Odd {
            t.count("odd_inputs");
        }
        t.case(e.length().parity() == Parity::Even && e.is_universal(), || format!("evenize({x}) = {e}"));
    }
    let mut bad = 0u64;
    let mut first = None;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if cmp(&xs[i], &xs[j]) != cmp(&es[i], &es[j]) {
                bad += 1;
                first.get_or_insert((i, j));
            }
        }
    }
    t.stats.insert("ordered_pairs_checked".into(), (xs.len() * (xs.len() - 1) / 2) as u64);
    t.case(bad == 0, || {
        let (i, j) = first.unwrap();
        format!("{bad} pairs reordered; first {} / {}", xs[i], xs[j])
    });
    t.finish()
}

fn determinism(cfg: &Config) -> CriterionResult {
    let mut t = Tally::new(11, "determinism");
    let small = Config {
        sizes: Sizes::reduced(),
        ..cfg.clone()
    };
    let once = || -> String {
        let results: Vec<_> = (1..CRITERIA).map(|id| run_criterion(id, &small)).collect();
        serde_json::to_string(&results).expect("results serialize")
    };
    let (a, b) = (once(), once());
    t.stats.insert("report_bytes".into(), a.len() as u64);
    t.case(a == b, || "two runs with one seed produced different results".into());
    t.finish()
}

pub fn run_criterion(id: u32, cfg: &Config) -> CriterionResult {
    match id {
        1 => total_order(cfg),
        2 => oracle(cfg),
        3 => combinators(cfg),
        4 => worked_decomposition(cfg),
        5 => decomposition_suite(cfg),
        6 => monotonicity(cfg),
        7 => envelope_laws(cfg),
        8 => usc_index(cfg),
        9 => witnesses(cfg),
        10 => evenize(cfg),
        11 => determinism(cfg),
        _ => panic!("no criterion {id}"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else if self.criteria.iter().any(|c| c.invariant_violation) {
            3
        } else {
            1
        }
    }
}

/// Runs every criterion. Timings are returned separately so the report
/// itself depends only on the seed.
pub fn run(cfg: &Config) -> (Report, Vec<(u32, Duration)>) {
    let mut criteria = Vec::new();
    let mut timings = Vec::new();
    for id in 1..=CRITERIA {
        let start = Instant::now();
        criteria.push(run_criterion(id, cfg));
        timings.push((id, start.elapsed()));
    }
    let report = Report {
        version: crate::VERSION,
        seed: cfg.seed,
        fault: cfg.fault,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    };
    (report, timings)
}
