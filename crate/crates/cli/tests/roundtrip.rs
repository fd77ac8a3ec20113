use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use equilog::completion::kernel_pair;
use equilog::oracle::{
    assembly_universe, pequ_universe, random_equ, random_metric, random_topology, random_vcat,
};
use equilog::{Base, FinApp, Quantale, SweepConfig, VFunctor, DEFAULT_SEARCH_BOUND};
use equilog_cli::format::{parse, print, Value};

fn quantale() -> impl Strategy<Value = Quantale> {
    prop_oneof![
        Just(Quantale::Two),
        Just(Quantale::Diamond),
        Just(Quantale::PlusReversed),
        Just(Quantale::MaxReversed),
    ]
}

fn values(q: Quantale) -> Vec<equilog::QValue> {
    q.carrier().unwrap_or_else(|| q.default_grid())
}

fn base(seed: u64, n: usize) -> Base {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match rng.gen_range(0..3) {
        0 => {
            let q = [
                Quantale::Two,
                Quantale::Diamond,
                Quantale::PlusReversed,
                Quantale::MaxReversed,
            ][rng.gen_range(0..4)];
            Base::VCat(random_vcat(q, n, &values(q), &mut rng))
        }
        1 => Base::Top(random_topology(n, &mut rng)),
        _ => {
            let d = random_metric(n, &values(Quantale::PlusReversed), &mut rng);
            Base::App(FinApp::from_metric(&d).unwrap())
        }
    }
}

fn round_trip(v: &Value) {
    let text = print(v);
    assert_eq!(&parse(&text).unwrap(), v, "{text}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bases_round_trip(seed in any::<u64>(), n in 0usize..4) {
        round_trip(&Value::Base(base(seed, n)));
    }

    #[test]
    fn equ_objects_round_trip(seed in any::<u64>(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        round_trip(&Value::Equ(random_equ(base(seed, n), &mut rng)));
    }

    #[test]
    fn quantales_round_trip(q in quantale()) {
        round_trip(&Value::Quantale(q));
    }

    #[test]
    fn spans_and_morphisms_round_trip(q in quantale(), seed in any::<u64>(), n in 1usize..4, m in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_vcat(q, n, &values(q), &mut rng);
        let y = random_vcat(q, m, &values(q), &mut rng);
        let fs = x.vfunctors_to(&y, DEFAULT_SEARCH_BOUND).unwrap();
        prop_assume!(!fs.is_empty());
        let f = fs[rng.gen_range(0..fs.len())].clone();
        round_trip(&Value::Morphism {
            dom: Box::new(Value::Base(Base::VCat(x.clone()))),
            cod: Box::new(Value::Base(Base::VCat(y.clone()))),
            map: f.clone(),
        });
        let (span, _) = kernel_pair(&VFunctor::new(x, y, f).unwrap());
        round_trip(&Value::Span(span));
    }
}

#[test]
fn partial_objects_and_assemblies_round_trip() {
    let cfg = SweepConfig::with_max_carrier(2).unwrap();
    for q in [Quantale::Two, Quantale::Diamond] {
        for p in pequ_universe(q, &cfg).unwrap() {
            round_trip(&Value::PEqu(p));
        }
    }
    for a in assembly_universe(Quantale::Two, 2, false, &cfg).unwrap() {
        round_trip(&Value::Assembly(a));
    }
}

#[test]
fn malformed_documents_are_rejected() {
    for text in [
        "",
        "{}",
        r#"{"type":"vcat","quantale":"two","carrier":["a"],"structure":[["top"]],"extra":1}"#,
        r#"{"type":"vcat","quantale":"nope","carrier":["a"],"structure":[["top"]]}"#,
        r#"{"type":"vcat","quantale":"plus-reversed","carrier":["a"],"structure":[["0.5"]]}"#,
        r#"{"type":"vcat","quantale":"two","carrier":["a","b"],"structure":[["top"]]}"#,
        r#"{"type":"equ","base":{"type":"vcat","quantale":"two","carrier":["a"],"structure":[["top"]]},"equivalence":[["z"]]}"#,
    ] {
        assert!(parse(text).is_err(), "{text}");
    }
}
