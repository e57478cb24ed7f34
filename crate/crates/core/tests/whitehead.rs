use std::collections::BTreeSet;

use groupcx::whitehead::{
    analyze_graph, fast_check, primitive_orbit_oracle, primitivity_composite,
    primitivity_whitehead, whitehead_graph, FastCheckOutcome, Primitivity, Stratum,
};
use groupcx::words::{enumerate_words, sample_word, SamplingModel};
use groupcx::{Letter, Seed, Word};
use rand::Rng;

const MAX_LEN: usize = 10;

fn cyclic_words(max_len: usize) -> impl Iterator<Item = Word> {
    (1..=max_len)
        .flat_map(|n| enumerate_words(2, n, SamplingModel::CyclicallyReduced, 1 << 22).unwrap())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn verdicts_match_the_orbit_oracle() {
    let oracle = primitive_orbit_oracle(2, MAX_LEN).unwrap();
    for w in cyclic_words(MAX_LEN) {
        let expected = if oracle.contains(&w) {
            Primitivity::Primitive
        } else {
            Primitivity::NotPrimitive
        };
        let a = primitivity_composite(&w).unwrap();
        let wv = primitivity_whitehead(&w).unwrap();
        assert_eq!(a.verdict, expected, "composite on {w}");
        assert_eq!(wv.verdict, expected, "whitehead on {w}");
    }
}

#[test]
fn oracle_primitives_have_a_cut_vertex_or_isolated_edge() {
    for w in primitive_orbit_oracle(2, MAX_LEN).unwrap() {
        if w.len() > 2 {
            let v = analyze_graph(&whitehead_graph(&w, true).unwrap());
            assert!(v.has_isolated_edge || v.has_cut_vertex, "{w}");
        }
    }
}

#[test]
fn complete_graphs_are_never_primitive() {
    let oracle = primitive_orbit_oracle(2, MAX_LEN).unwrap();
    for w in cyclic_words(MAX_LEN) {
        if analyze_graph(&whitehead_graph(&w, false).unwrap()).complete {
            assert!(!oracle.contains(&w), "{w}");
        }
    }
}

/// Independent of the automorphism machinery: the images of a basis under
/// random Nielsen moves are primitive, and primitives abelianize to
/// vectors with coprime entries.
#[test]
fn oracle_agrees_with_nielsen_moves_and_abelianization() {
    let oracle = primitive_orbit_oracle(2, MAX_LEN).unwrap();
    let mut rng = Seed(31).stream(0);
    let mut found = BTreeSet::new();
    for _ in 0..3000 {
        let mut basis = [Word::parse(2, "a").unwrap(), Word::parse(2, "b").unwrap()];
        for _ in 0..rng.gen_range(1..8) {
            let i = rng.gen_range(0..2);
            let other = basis[1 - i].clone();
            let other = if rng.gen::<bool>() {
                other
            } else {
                other.inverse()
            };
            basis[i] = match rng.gen_range(0..3) {
                0 => basis[i].concat(&other).reduce(),
                1 => other.concat(&basis[i]).reduce(),
                _ => basis[i].inverse(),
            };
        }
        for w in &basis {
            let c = w.cyclic_reduce();
            if !c.is_empty() && c.len() <= MAX_LEN {
                assert!(
                    oracle.contains(&c),
                    "Nielsen image {c} missing from the oracle"
                );
                found.insert(c);
            }
        }
    }
    assert!(found.len() > 50);
    for w in &oracle {
        let e = w.exponent_sums();
        assert_eq!(gcd(e[0], e[1]), 1, "{w}");
    }
}

#[test]
fn fast_check_is_sound() {
    for w in cyclic_words(MAX_LEN).filter(|w| w.len() > 2) {
        if let FastCheckOutcome::NotPrimitive { .. } = fast_check(&w).unwrap().outcome {
            assert_eq!(
                primitivity_whitehead(&w).unwrap().verdict,
                Primitivity::NotPrimitive,
                "{w}"
            );
        }
    }
    let seed = Seed(8);
    for i in 0..300 {
        let mut rng = seed.stream(i);
        let n = rng.gen_range(11..80);
        let w = sample_word(2, n, SamplingModel::CyclicallyReduced, &mut rng);
        if let FastCheckOutcome::NotPrimitive { .. } = fast_check(&w).unwrap().outcome {
            assert_eq!(
                primitivity_whitehead(&w).unwrap().verdict,
                Primitivity::NotPrimitive,
                "{w}"
            );
        }
    }
}

#[test]
fn prefix_graphs_grow_monotonically() {
    let mut rng = Seed(3).stream(0);
    for _ in 0..200 {
        let w = sample_word(3, rng.gen_range(2..40), SamplingModel::Reduced, &mut rng);
        let full = whitehead_graph(&w, false).unwrap();
        for k in 1..w.len() {
            let prefix = Word::new(3, w.letters()[..k].to_vec()).unwrap();
            let g = whitehead_graph(&prefix, false).unwrap();
            for u in 0..6 {
                for v in 0..6 {
                    assert!(g.multiplicity(u, v) <= full.multiplicity(u, v));
                }
            }
        }
    }
}

#[test]
fn composite_verdict_is_conjugation_invariant() {
    let seed = Seed(12);
    for i in 0..300 {
        let mut rng = seed.stream(i);
        let n = rng.gen_range(1..16);
        let w = sample_word(2, n, SamplingModel::CyclicallyReduced, &mut rng);
        let v = primitivity_composite(&w).unwrap().verdict;
        for c in w.cyclic_permutations() {
            assert_eq!(primitivity_composite(&c).unwrap().verdict, v, "{w} vs {c}");
        }
        // conjugating by a letter and reducing keeps the verdict as well
        let l = Word::new(
            2,
            vec![Letter::new(if rng.gen::<bool>() { 1 } else { -2 }).unwrap()],
        )
        .unwrap();
        let conj = l.concat(&w).concat(&l.inverse()).reduce();
        assert_eq!(primitivity_composite(&conj).unwrap().verdict, v);
    }
}

#[test]
fn composite_cost_is_fast_check_plus_descent() {
    for w in cyclic_words(7).filter(|w| w.len() > 2) {
        let a = primitivity_composite(&w).unwrap();
        let t = fast_check(&w).unwrap();
        match a.decided_by {
            Stratum::FastCheckT => assert_eq!(a.cost, t.cost),
            Stratum::WhiteheadW => {
                assert_eq!(t.outcome, FastCheckOutcome::Inconclusive);
                assert_eq!(a.cost, t.cost + primitivity_whitehead(&w).unwrap().cost);
            }
        }
    }
}
