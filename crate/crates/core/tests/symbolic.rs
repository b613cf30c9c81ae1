use std::collections::HashSet;

use aperiodic::symbolic::{
    factor_map, sturmian_range, word_complexity, BlockMap, RotationNumber, SturmianParams,
};
use aperiodic::System;
use proptest::prelude::*;

fn deterministic() -> impl Strategy<Value = System> {
    prop_oneof![
        Just(System::ThueMorse),
        Just(System::Fibonacci),
        Just(System::PeriodDoubling),
        Just(System::RudinShapiro),
        Just(System::Paperfolding),
        Just(System::from_name("sturmian").unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn longer_windows_extend_shorter_ones(system in deterministic(), n in 1usize..3000, extra in 0usize..3000) {
        let short = system.window(n, None).unwrap();
        let long = system.window(n + extra, None).unwrap();
        prop_assert_eq!(short.symbols(), &long.symbols()[..n]);
    }

    #[test]
    fn provenance_regenerates_the_window(system in deterministic(), n in 1usize..2000, start in 0usize..500) {
        let w = system.window(start + n, None).unwrap().slice(start, n, start as i64).unwrap();
        prop_assert_eq!(w.provenance().regenerate().unwrap(), w);
    }

    #[test]
    fn stochastic_provenance_regenerates(seed in any::<u64>(), half in 1usize..500, odd in any::<bool>()) {
        let dimer = if odd { "dimer" } else { "iid" };
        let w = System::from_name(dimer).unwrap().window(2 * half, Some(seed)).unwrap();
        prop_assert_eq!(w.provenance().regenerate().unwrap(), w);
    }

    #[test]
    fn sturmian_words_are_balanced(alpha in 0.01f64..0.99, beta in 0.0f64..1.0, len in 1usize..40) {
        let alpha = RotationNumber::Float { value: alpha };
        let params = SturmianParams::new(alpha, beta).or_else(|_| SturmianParams::periodic(alpha, beta)).unwrap();
        let w = sturmian_range(&params, 0, 600).unwrap();
        let counts: Vec<usize> = w.symbols().windows(len).map(|f| f.iter().filter(|&&s| s == 1).count()).collect();
        let (lo, hi) = (counts.iter().min().unwrap(), counts.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
    }

    #[test]
    fn factor_map_commutes_with_prefixes(n in 2usize..5000, m in 2usize..5000) {
        let (n, m) = (n.min(m), n.max(m));
        let tm = System::ThueMorse.window(m, None).unwrap();
        let map = BlockMap::thue_morse_to_period_doubling();
        let whole = factor_map(&tm, &map).unwrap();
        let part = factor_map(&tm.prefix(n).unwrap(), &map).unwrap();
        prop_assert_eq!(part.symbols(), &whole.symbols()[..n - 1]);
    }
}

#[test]
fn exact_golden_sturmian_has_minimal_complexity() {
    let w = System::from_name("sturmian").unwrap().window(100_000, None).unwrap();
    for n in 1..=40 {
        assert_eq!(word_complexity(&w, n).unwrap(), n + 1, "n = {n}");
    }
}

#[test]
fn golden_sturmian_matches_fibonacci_up_to_relabeling() {
    // the golden Sturmian word at phase α is the Fibonacci word with a ↔ 0
    let alpha = RotationNumber::golden();
    let w = sturmian_range(&SturmianParams::new(alpha, alpha.value()).unwrap(), 0, 5000).unwrap();
    let fib = System::Fibonacci.window(5000, None).unwrap();
    assert_eq!(w.symbols(), fib.symbols());
}

#[test]
fn thue_morse_is_cube_free() {
    let w = System::ThueMorse.window(4096, None).unwrap();
    let s = w.symbols();
    for len in 1..=300 {
        for i in 0..s.len().saturating_sub(3 * len) {
            let a = &s[i..i + len];
            assert!(!(a == &s[i + len..i + 2 * len] && a == &s[i + 2 * len..i + 3 * len]), "cube at {i}, length {len}");
        }
    }
}

#[test]
fn rudin_shapiro_blocks_are_bounded() {
    let w = System::RudinShapiro.window(1 << 16, None).unwrap();
    let distinct: HashSet<&[u8]> = w.symbols().windows(8).collect();
    // 8-factors of the Rudin–Shapiro word are far fewer than 2^8
    assert!(distinct.len() < 256);
    assert_eq!(distinct.len(), word_complexity(&w, 8).unwrap());
}
