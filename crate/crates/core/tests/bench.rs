use groupcx::bench::{avgcase_estimate, csv_string, emit_csv, exhaustive_average, Task};
use groupcx::wordproblem::{wp_composite, Group};
use groupcx::words::{enumerate_words, SamplingModel};
use groupcx::Seed;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[test]
fn stratified_means_add_up() {
    let cases = [
        (
            Task::PrimitivityComposite,
            SamplingModel::CyclicallyReduced,
            30,
        ),
        (Task::PrimitivityWhiteheadOnly, SamplingModel::Reduced, 12),
        (Task::FastCheckOnly, SamplingModel::CyclicallyReduced, 8),
        (Task::WpHeisenberg, SamplingModel::AllWords, 10),
        (Task::WpFree, SamplingModel::AllWords, 10),
        (Task::WpAbelian, SamplingModel::AllWords, 10),
    ];
    for (task, model, n) in cases {
        let r = avgcase_estimate(task, 2, n, model, 3000, Seed(1)).unwrap();
        let freq: f64 = r.strata.iter().map(|s| s.freq).sum();
        assert!((freq - 1.0).abs() < 1e-12, "{task}");
        assert!(
            (r.mean_cost - r.stratified_mean()).abs() <= 1e-9 * r.mean_cost,
            "{task}"
        );
        assert!(r.p50 <= r.p95 && r.p95 <= r.max_cost);
    }
}

#[test]
fn monte_carlo_agrees_with_exhaustive_average() {
    for (task, model, n) in [
        (
            Task::PrimitivityComposite,
            SamplingModel::CyclicallyReduced,
            8,
        ),
        (Task::PrimitivityComposite, SamplingModel::AllWords, 6),
        (Task::WpHeisenberg, SamplingModel::AllWords, 8),
    ] {
        let exact = exhaustive_average(task, 2, n, model)
            .unwrap()
            .mean
            .to_f64()
            .unwrap();
        let r = avgcase_estimate(task, 2, n, model, 100_000, Seed(17)).unwrap();
        assert!(
            (r.mean_cost - exact).abs() < 3.0 * r.std_error(),
            "{task} {model} n={n}: {} vs {exact}",
            r.mean_cost
        );
    }
}

#[test]
fn exhaustive_average_is_the_literal_sum() {
    let e = exhaustive_average(Task::WpHeisenberg, 2, 6, SamplingModel::AllWords).unwrap();
    let words: Vec<_> = enumerate_words(2, 6, SamplingModel::AllWords, 1 << 20)
        .unwrap()
        .collect();
    let total: u64 = words
        .iter()
        .map(|w| wp_composite(Group::Heisenberg, w).unwrap().cost.total())
        .sum();
    assert_eq!(e.words, 4096);
    assert_eq!(
        e.mean,
        BigRational::new(total.into(), (words.len() as u64).into())
    );
    let strata_words: u64 = e.strata.iter().map(|s| s.1).sum();
    assert_eq!(strata_words, e.words);
}

#[test]
fn csv_files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        [50, 100]
            .iter()
            .map(|&n| {
                avgcase_estimate(
                    Task::PrimitivityComposite,
                    2,
                    n,
                    SamplingModel::CyclicallyReduced,
                    500,
                    Seed(3),
                )
            })
            .collect::<Result<Vec<_>, _>>()
            .unwrap()
    };
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    emit_csv(&run(), &a).unwrap();
    emit_csv(&run(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, csv_string(&run()));
    let missing = dir.path().join("no/such/dir/x.csv");
    let err = emit_csv(&[], &missing).unwrap_err();
    assert!(err.to_string().contains("x.csv"));
}
