use groupcx::subwords::{
    build_avoidance_automaton, count_avoiding, decay_rate, estimate_incomplete_fraction,
    incomplete_graph_series, incomplete_graph_series_cyclic, log_linear_decay,
};
use groupcx::whitehead::{analyze_graph, fast_check, whitehead_graph, FastCheckOutcome};
use groupcx::words::{
    count_cyclically_reduced, count_reduced, enumerate_words, sample_word, SamplingModel,
};
use groupcx::{Seed, Word};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn contains(w: &Word, p: &Word) -> bool {
    w.letters().windows(p.len()).any(|s| s == p.letters())
}

fn brute_avoiding(rank: u32, len: usize, patterns: &[Word]) -> usize {
    enumerate_words(rank, len, SamplingModel::Reduced, 1 << 22)
        .unwrap()
        .filter(|w| patterns.iter().all(|p| !contains(w, p)))
        .count()
}

fn parse_all(rank: u32, ps: &[&str]) -> Vec<Word> {
    ps.iter().map(|p| Word::parse(rank, p).unwrap()).collect()
}

#[test]
fn automaton_matches_exhaustive_filter() {
    let sets: &[&[&str]] = &[
        &[],
        &["aa"],
        &["ab", "ba"],
        &["aba"],
        &["abAB"],
        &["aa", "bb", "AB"],
        &["abab", "ba", "bab"],
        &["a"],
        &["aBaB", "bAbA", "aaa"],
    ];
    for set in sets {
        let patterns = parse_all(2, set);
        let aut = build_avoidance_automaton(2, &patterns).unwrap();
        let counts = aut.counts(8);
        for (len, c) in counts.iter().enumerate() {
            assert_eq!(
                *c,
                BigUint::from(brute_avoiding(2, len, &patterns)),
                "{set:?} L={len}"
            );
        }
    }
    let patterns = parse_all(3, &["ac", "CB", "bb"]);
    let aut = build_avoidance_automaton(3, &patterns).unwrap();
    for len in 0..=5 {
        assert_eq!(
            count_avoiding(&aut, len),
            BigUint::from(brute_avoiding(3, len, &patterns))
        );
    }
}

#[test]
fn avoiding_fraction_decreases() {
    for set in [&["aa"][..], &["ab", "ba"], &["abAB"], &["aBB"]] {
        let aut = build_avoidance_automaton(2, &parse_all(2, set)).unwrap();
        let counts = aut.counts(40);
        let ratio =
            |l: usize| BigRational::new(counts[l].clone().into(), count_reduced(2, l).into());
        for l in 1..40 {
            assert!(ratio(l + 1) <= ratio(l), "{set:?} at {l}");
        }
        assert!(ratio(40) < ratio(20) && ratio(20) < ratio(10));
    }
}

#[test]
fn incomplete_counts_match_brute_force() {
    let series = incomplete_graph_series(2, 8).unwrap();
    let cyclic = incomplete_graph_series_cyclic(2, 8).unwrap();
    for len in 1..=8 {
        let mut all = 0u64;
        let mut cyc = 0u64;
        for w in enumerate_words(2, len, SamplingModel::Reduced, 1 << 22).unwrap() {
            if !analyze_graph(&whitehead_graph(&w, false).unwrap()).complete {
                all += 1;
                cyc += u64::from(w.is_cyclically_reduced());
            }
        }
        assert_eq!(series[len], BigUint::from(all), "L={len}");
        assert_eq!(cyclic[len], BigUint::from(cyc), "L={len}");
    }
    for (len, c) in series.iter().enumerate().take(6) {
        assert_eq!(*c, count_reduced(2, len));
    }
}

#[test]
fn incomplete_fraction_decays_log_linearly() {
    let series = incomplete_graph_series(2, 60).unwrap();
    let base: Vec<BigUint> = (0..=60).map(|l| count_reduced(2, l)).collect();
    let fit = log_linear_decay(&series, &base, 20..=60).unwrap();
    let s = fit.slope.exp();
    assert!(0.0 < s && s < 1.0, "s = {s}");
    assert!(fit.r_squared > 0.99, "R^2 = {}", fit.r_squared);
    let d = decay_rate(&series, &base, 10).unwrap();
    assert!((d.s - s).abs() / s < 0.01, "window {} vs fit {s}", d.s);
}

#[test]
fn fast_check_inconclusive_frequency_matches_exact_count() {
    let n = 20;
    let trials = 20_000u64;
    let seed = Seed(99);
    let inconclusive = (0..trials)
        .filter(|&i| {
            let w = sample_word(2, n, SamplingModel::CyclicallyReduced, &mut seed.stream(i));
            fast_check(&w).unwrap().outcome == FastCheckOutcome::Inconclusive
        })
        .count() as f64
        / trials as f64;
    let exact = BigRational::new(
        incomplete_graph_series_cyclic(2, n).unwrap()[n]
            .clone()
            .into(),
        count_cyclically_reduced(2, n).into(),
    )
    .to_f64()
    .unwrap();
    let se = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!(
        (inconclusive - exact).abs() < 3.0 * se,
        "{inconclusive} vs {exact}"
    );
    // the reduced-word fraction is close but not identical
    let reduced = BigRational::new(
        incomplete_graph_series(2, n).unwrap()[n].clone().into(),
        count_reduced(2, n).into(),
    )
    .to_f64()
    .unwrap();
    assert!((reduced - exact).abs() < 0.1);
}

#[test]
fn monte_carlo_estimate_agrees_with_exact_reduced_count() {
    let (f, se) = estimate_incomplete_fraction(2, 15, SamplingModel::Reduced, 20_000, Seed(4));
    let exact = BigRational::new(
        incomplete_graph_series(2, 15).unwrap()[15].clone().into(),
        count_reduced(2, 15).into(),
    )
    .to_f64()
    .unwrap();
    assert!((f - exact).abs() < 3.0 * se.max(1e-3), "{f} vs {exact}");
}
