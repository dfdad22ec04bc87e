use labs::bounds::{BoundOptions, PartialState};
use labs::oracle::enumerate_optimal;
use labs::search::{solve, Mode, SearchConfig, Toggles};
use labs::sequence::{
    correlations, decode_rle, encode_rle, energy, expand_skew, is_skew, Sequence, Spin,
    SymmetryElement,
};
use labs::symmetry::SymmetryBreaker;
use labs::templates::Template;
use proptest::prelude::*;

fn spin() -> impl Strategy<Value = Spin> {
    any::<bool>().prop_map(|b| if b { Spin::Plus } else { Spin::Minus })
}

fn sequence(min: usize, max: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(spin(), min..=max).prop_map(|v| Sequence::new(v).unwrap())
}

/// A sequence plus a frontier shape `(a, b)`: the first `a` and last `b`
/// values are treated as assigned.
fn shaped(min: usize, max: usize) -> impl Strategy<Value = (Sequence, usize, usize)> {
    sequence(min, max).prop_flat_map(|s| {
        let n = s.len();
        (Just(s), 0..=n).prop_flat_map(move |(s, a)| (Just(s), Just(a), 0..=n - a))
    })
}

fn partial(s: &Sequence, a: usize, b: usize) -> PartialState {
    let n = s.len();
    let mut st = PartialState::new(n).unwrap();
    for i in 0..a {
        st.assign(i, s[i]).unwrap();
    }
    for i in (n - b..n).rev() {
        st.assign(i, s[i]).unwrap();
    }
    st
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn bound_never_exceeds_any_completion((s, a, b) in shaped(2, 40)) {
        let st = partial(&s, a, b);
        let c = correlations(&s);
        for opts in BoundOptions::combinations() {
            prop_assert!(st.lower_bound(opts) <= energy(&s));
            for k in 1..s.len() {
                prop_assert!(i64::from(st.lag_bound(k, opts).unwrap().value) <= c.lag(k).abs());
            }
        }
    }

    #[test]
    fn complete_assignment_bound_is_the_energy(s in sequence(1, 40)) {
        let st = partial(&s, s.len(), 0);
        prop_assert_eq!(st.lower_bound(BoundOptions::ALL), energy(&s));
        prop_assert_eq!(st.lower_bound(BoundOptions::BASELINE), energy(&s));
    }

    #[test]
    fn symmetries_preserve_energy(s in sequence(1, 50)) {
        for g in SymmetryElement::all() {
            prop_assert_eq!(energy(&g.apply(&s)), energy(&s));
        }
    }

    #[test]
    fn some_image_survives_symmetry_breaking(s in sequence(1, 30), t in sequence(30, 30)) {
        let template = Template::new(t.as_slice()[..s.len()].to_vec());
        let breaker = SymmetryBreaker::new(template);
        prop_assert!(SymmetryElement::all().any(|g| breaker.accepts(&g.apply(&s))));
    }

    #[test]
    fn skew_expansion(free in prop::collection::vec(spin(), 1..40)) {
        let s = expand_skew(&free).unwrap();
        prop_assert_eq!(s.len(), 2 * free.len() - 1);
        prop_assert!(is_skew(&s));
        prop_assert_eq!(energy(&s) % 8, energy(&expand_skew(&vec![Spin::Plus; free.len()]).unwrap()) % 8);
    }

    #[test]
    fn rle_round_trip(s in sequence(1, 80)) {
        let back = decode_rle(&encode_rle(&s), s[0]).unwrap();
        prop_assert_eq!(back, s);
    }
}

#[test]
fn search_matches_brute_force() {
    for n in 1..=16 {
        let expected = enumerate_optimal(n, Mode::General).unwrap().energy;
        for toggles in [Toggles::FULL, Toggles::BASELINE] {
            let r = solve(&SearchConfig::new(n).with_toggles(toggles)).unwrap();
            assert_eq!(r.energy, expected, "n={n} {toggles}");
            assert_eq!(energy(&r.best), r.energy);
        }
    }
    for n in (1..=29).step_by(2) {
        let expected = enumerate_optimal(n, Mode::Skew).unwrap().energy;
        let r = solve(&SearchConfig::skew(n)).unwrap();
        assert_eq!(r.energy, expected, "skew n={n}");
        assert!(is_skew(&r.best));
    }
}

#[test]
fn known_optima() {
    // lengths with well-known optimal energies
    for (n, e) in [(13, 6), (20, 26), (25, 36), (27, 37)] {
        assert_eq!(solve(&SearchConfig::new(n)).unwrap().energy, e, "n={n}");
    }
}
