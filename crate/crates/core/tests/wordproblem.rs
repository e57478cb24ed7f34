use groupcx::wordproblem::{
    abelianization, heisenberg_eval, tier2_frequency, wp_composite, Group, Tier,
};
use groupcx::words::{enumerate_words, sample_word, SamplingModel};
use groupcx::Seed;

#[test]
fn composite_is_exact_on_all_short_words() {
    for n in 0..=8 {
        for w in enumerate_words(2, n, SamplingModel::AllWords, 1 << 20).unwrap() {
            let h = wp_composite(Group::Heisenberg, &w).unwrap();
            assert_eq!(
                h.is_identity,
                heisenberg_eval(&w).unwrap().is_identity(),
                "{w}"
            );
            assert!(!(h.decided_by == Tier::Tier1Abelianization && h.is_identity));

            let f = wp_composite(Group::Free, &w).unwrap();
            assert_eq!(f.is_identity, w.reduce().is_empty(), "{w}");

            let a = wp_composite(Group::FreeAbelian(2), &w).unwrap();
            assert_eq!(a.is_identity, abelianization(&w) == [0, 0], "{w}");
            // free => Heisenberg => abelian
            assert!(!f.is_identity || h.is_identity);
            assert!(!h.is_identity || a.is_identity);
        }
    }
}

#[test]
fn heisenberg_center_stays_quadratic() {
    let seed = Seed(21);
    for i in 0..200 {
        let mut rng = seed.stream(i);
        let n = 1 + (i as usize) * 5;
        let w = sample_word(2, n, SamplingModel::AllWords, &mut rng);
        let g = heisenberg_eval(&w).unwrap();
        let bound = num_bigint::BigInt::from(n * n);
        assert!(g.c <= bound && -g.c <= bound);
    }
}

#[test]
fn tier2_frequency_scales_like_one_over_n() {
    let f100 = tier2_frequency(100, 100_000, Seed(5)).unwrap().value();
    let f400 = tier2_frequency(400, 100_000, Seed(6)).unwrap().value();
    let ratio = f400 / f100;
    assert!((0.125..=0.5).contains(&ratio), "ratio {ratio}");
}
