mod common;

use common::dsl_gen::source;
use proptest::prelude::*;
use wres_core::calculus::{builtin, builtin_names, parametrix};
use wres_core::cli::dsl::{parse_symbol, print_symbol};
use wres_core::symbol::ChartContext;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_print_parse_is_stable(src in source()) {
        let chart = ChartContext::new(4).unwrap();
        let first = parse_symbol(&src, &chart).unwrap_or_else(|e| panic!("{e}\n{src}"));
        let text = print_symbol(&first).unwrap();
        let second = parse_symbol(&text, &chart).unwrap_or_else(|e| panic!("{e}\n{text}"));
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(print_symbol(&second).unwrap(), text);
    }
}

#[test]
fn builtin_corpus_round_trips() {
    for n in [3u8, 4, 5, 6] {
        let chart = ChartContext::new(n).unwrap();
        let mut corpus: Vec<_> = builtin_names().iter().map(|name| builtin(name, &chart).unwrap()).collect();
        corpus.push(parametrix(&builtin("bismut", &chart).unwrap(), if n == 4 { 2 } else { 1 }, &chart).unwrap());
        for op in corpus {
            let text = print_symbol(&op.symbol).unwrap();
            let back = parse_symbol(&text, &chart).unwrap_or_else(|e| panic!("{} n={n}: {e}\n{text}", op.name));
            assert_eq!(back, op.symbol, "{} n={n}", op.name);
        }
    }
}

#[test]
fn generator_produces_real_terms() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let chart = ChartContext::new(4).unwrap();
    let mut runner = TestRunner::deterministic();
    let mut nonempty = 0;
    for _ in 0..100 {
        let src = source().new_tree(&mut runner).unwrap().current();
        let s = parse_symbol(&src, &chart).unwrap();
        if s.iter_terms().count() > 0 {
            nonempty += 1;
        }
    }
    assert!(nonempty >= 80, "only {nonempty} of 100 generated sources had terms");
}
