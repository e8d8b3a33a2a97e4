use std::cmp::Ordering;

use altlex::gen::{self, SeqShape};
use altlex::hyperspace::{check_witness, psi_compact, witness_between};
use altlex::kl::{self, decompose, usc_index_approx, usc_order_certificate, FinitaryFunction, UscOrder};
use altlex::oracle::walk_compare;
use altlex::order::{compile, verify_chain, ChainReport};
use altlex::seq::{altlex_compare, delta_first_difference};
use altlex::{Ordinal, Parity, TransfiniteSeq};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cmp(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Ordering {
    altlex_compare(x, y).unwrap().order
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn altlex_is_a_strict_total_order(seed: u64) {
        let mut r = rng(seed);
        let [x, y, z] = gen::triple(&mut r, &SeqShape::default());
        prop_assert_eq!(cmp(&x, &x), Ordering::Equal);
        prop_assert_eq!(cmp(&x, &y), cmp(&y, &x).reverse());
        if cmp(&x, &y) == Ordering::Less && cmp(&y, &z) == Ordering::Less {
            prop_assert_eq!(cmp(&x, &z), Ordering::Less);
        }
        if cmp(&x, &y) == Ordering::Equal {
            prop_assert_eq!(cmp(&x, &z), cmp(&y, &z));
        }
    }

    #[test]
    fn comparison_ignores_presentation(seed: u64) {
        let mut r = rng(seed);
        let x = gen::universal_seq(&mut r, &SeqShape::default());
        let y = gen::represent(&mut r, &x);
        prop_assert_eq!(cmp(&x, &y), Ordering::Equal);
        prop_assert_eq!(x.canonical(), y.canonical());
        prop_assert_eq!(x.length(), y.length());
    }

    #[test]
    fn segment_walk_matches_index_walk(seed: u64) {
        let mut r = rng(seed);
        let (x, y) = gen::related_pair(&mut r, &SeqShape::default(), 150);
        let (x, y) = (gen::represent(&mut r, &x), gen::represent(&mut r, &y));
        let walk = walk_compare(&x, &y).unwrap();
        let out = altlex_compare(&x, &y).unwrap();
        prop_assert_eq!(walk.order, out.order);
        prop_assert_eq!(walk.delta.clone(), out.delta);
        prop_assert_eq!(walk.delta, delta_first_difference(&x, &y).ok());
    }

    #[test]
    fn canonical_form_is_stable(seed: u64) {
        let mut r = rng(seed);
        let x = gen::universal_seq(&mut r, &SeqShape::default());
        let x = gen::represent(&mut r, &x);
        let c = x.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        for _ in 0..10 {
            let i = gen::random_index(&mut r, &x, 12);
            prop_assert_eq!(x.get(&i).unwrap(), c.get(&i).unwrap());
        }
    }

    #[test]
    fn infimum_before_matches_prefix(seed: u64) {
        let mut r = rng(seed);
        let x = gen::universal_seq(&mut r, &SeqShape::default());
        let x = gen::represent(&mut r, &x);
        let i = gen::random_index(&mut r, &x, 12);
        let prefix = x.prefix_segments(&i).unwrap();
        let expect = prefix.last().map(|s| match s {
            altlex::Segment::Finite(v) => v.last().unwrap().clone(),
            altlex::Segment::Tail { limit, .. } => limit.clone(),
        });
        prop_assert_eq!(x.inf_before(&i).unwrap(), expect);
    }

    #[test]
    fn json_round_trips(seed: u64) {
        let mut r = rng(seed);
        let x = gen::universal_seq(&mut r, &SeqShape::default());
        let x = gen::represent(&mut r, &x);
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<TransfiniteSeq>(&s).unwrap(), x);
        let f = gen::any_function(&mut r);
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<FinitaryFunction>(&s).unwrap(), f);
    }

    #[test]
    fn scaling_down_preserves_order(seed: u64, p in 1i64..=8) {
        let mut r = rng(seed);
        let (x, y) = gen::related_pair(&mut r, &SeqShape::default(), 8);
        let a = altlex::rational::q(p, 8);
        let (sx, sy) = (x.affine(&a, &altlex::Q::from_integer(0i64.into())).unwrap(), y.affine(&a, &altlex::Q::from_integer(0i64.into())).unwrap());
        prop_assert_eq!(cmp(&sx, &sy), cmp(&x, &y));
    }

    #[test]
    fn evenize_has_even_length_and_keeps_order(seed: u64) {
        let mut r = rng(seed);
        let (x, y) = gen::related_pair(&mut r, &SeqShape::default(), 8);
        let (ex, ey) = (x.evenize(), y.evenize());
        prop_assert_eq!(ex.length().parity(), Parity::Even);
        prop_assert!(ex.is_universal());
        prop_assert_eq!(cmp(&ex, &ey), cmp(&x, &y));
    }

    #[test]
    fn ordinal_addition_is_associative(a in 0u64..4, b in 0u64..5, c in 0u64..4, d in 0u64..5, e in 0u64..3, f in 0u64..5) {
        let (x, y, z) = (Ordinal::omega_times_plus(a, b), Ordinal::omega_times_plus(c, d), Ordinal::omega_times_plus(e, f));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert!(x.add(&y) >= y);
        if !y.is_zero() {
            prop_assert!(x.add(&y) > x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn compiled_embeddings_preserve_order(seed: u64) {
        let mut r = rng(seed);
        let reals = gen::sample_reals(&mut r);
        let e = gen::order_expr(&mut r, 3, 30, &reals);
        let emb = compile(&e).unwrap();
        let pts = e.points(&reals).unwrap();
        let images: Vec<_> = pts.iter().map(|p| emb.apply(p).unwrap()).collect();
        prop_assert_eq!(verify_chain(&images).unwrap(), ChainReport::Ok);
        for (i, a) in pts.iter().enumerate() {
            for (j, b) in pts.iter().enumerate() {
                prop_assert_eq!(e.compare_points(a, b).unwrap(), cmp(&images[i], &images[j]));
            }
        }
    }

    #[test]
    fn decompositions_verify(seed: u64) {
        let mut r = rng(seed);
        let f = gen::any_function(&mut r);
        let d = decompose(&f).unwrap();
        let v = kl::decompose::verify(&f, &d).unwrap();
        prop_assert!(v.all_passed(), "{:?}", v);
    }

    #[test]
    fn envelope_laws(seed: u64) {
        let mut r = rng(seed);
        let f = gen::any_function(&mut r);
        let e = f.envelope();
        prop_assert!(f.le(&e).unwrap());
        prop_assert!(e.is_usc());
        prop_assert!(e.envelope().equals(&e));
        prop_assert_eq!(f.is_usc(), e.equals(&f));
        for _ in 0..10 {
            let g = gen::usc_majorant(&mut r, &f);
            prop_assert!(e.le(&g).unwrap());
        }
    }

    #[test]
    fn parity_rule_on_comparable_pairs(seed: u64) {
        let mut r = rng(seed);
        let (f0, f1) = gen::comparable_pair(&mut r);
        let c = kl::compare_decompositions(&f0, &f1);
        prop_assert!(c.is_ok(), "{:?}", c.err());
    }

    #[test]
    fn usc_certificates_verify(seed: u64) {
        let mut r = rng(seed);
        let (f, g) = gen::usc_pair(&mut r);
        match usc_order_certificate(&f, &g).unwrap() {
            UscOrder::Less(c) => prop_assert!(c.verify(&f, &g)),
            o => prop_assert!(false, "expected Less, got {:?}", o),
        }
        let eps = altlex::rational::pow2_neg(40);
        prop_assert!(usc_index_approx(&f, 40) <= usc_index_approx(&g, 40) + eps);
    }

    #[test]
    fn witnesses_check_out(seed: u64) {
        let mut r = rng(seed);
        let shape = if seed % 4 == 0 { SeqShape::with_tails() } else { SeqShape::finite(6) };
        let (x, y) = gen::strict_pair(&mut r, &shape);
        let w = witness_between(&x, &y).unwrap();
        let rep = check_witness(&x, &y, &w).unwrap();
        prop_assert!(rep.all_passed(), "{:?}", rep);
        prop_assert!(witness_between(&y, &x).is_err());
    }

    #[test]
    fn figure_contains_graph_points(seed: u64) {
        let mut r = rng(seed);
        let x = gen::universal_seq(&mut r, &SeqShape::default());
        let fig = psi_compact(&x);
        for _ in 0..10 {
            let i = gen::random_index(&mut r, &x, 30);
            let v = x.get(&i).unwrap();
            prop_assert!(fig.contains(&v, &altlex::Q::from_integer(0i64.into())));
        }
    }
}

#[test]
fn decompose_rank_of_nested_limit() {
    // χ of the limit points ω·i, i ≥ 1, on [0, ω²]: USC already.
    let f = FinitaryFunction::from_json(&serde_json::json!({
        "k": 2,
        "prefix": [{"k": 1, "prefix": ["0"], "rep": "0", "top": "0"}],
        "rep": {"k": 1, "prefix": ["1"], "rep": "0", "top": "0"},
        "top": "1"
    }))
    .unwrap();
    assert!(f.is_usc());
    let d = decompose(&f).unwrap();
    assert_eq!(d.rank, Ordinal::one());
}
