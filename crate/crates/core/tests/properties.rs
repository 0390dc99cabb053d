//! Property tests of the algebraic laws and of agreement with the reference
//! implementations in `common`.

mod common;

use proptest::prelude::*;
use ramsey_patterns::algebra::{is_divergent, is_irreducible, join, IrreducibilityMethod};
use ramsey_patterns::classifier::subpatterns;
use ramsey_patterns::coloring::{FiniteColoring, PartialColoring, StableColoring};
use ramsey_patterns::constructions::oracle::StableOracle;
use ramsey_patterns::constructions::{build_dnc_coloring, ConstructionTrace};
use ramsey_patterns::realize::{avoids, find_realizer, is_subpattern, EmbeddingMode};
use ramsey_patterns::records::Record;
use ramsey_patterns::stabilize::fg_avoids;
use ramsey_patterns::{Color, Pattern};

fn pattern(max: usize) -> impl Strategy<Value = Pattern> {
    (1..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (0..1u64 << pairs).prop_map(move |c| Pattern::from_code(n, c))
    })
}

fn coloring(max: usize) -> impl Strategy<Value = FiniteColoring> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0..2u8, n * n)
            .prop_map(move |bits| FiniteColoring::from_fn(n, |x, y| bits[x * n + y]))
    })
}

/// A coloring with a subset of its window.
fn coloring_and_set(max: usize) -> impl Strategy<Value = (FiniteColoring, Vec<usize>)> {
    coloring(max).prop_flat_map(|f| {
        let n = f.window();
        prop::collection::vec(any::<bool>(), n)
            .prop_map(move |keep| (f.clone(), (0..n).filter(|&i| keep[i]).collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn join_is_associative(a in pattern(5), b in pattern(5), c in pattern(5)) {
        prop_assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
    }

    #[test]
    fn join_matches_reference(a in pattern(5), b in pattern(5)) {
        prop_assert_eq!(join(&a, &b), common::join(&a, &b));
    }

    #[test]
    fn divergence_survives_join(a in pattern(5), b in pattern(5)) {
        if is_divergent(&a) || is_divergent(&b) {
            prop_assert!(is_divergent(&join(&a, &b)));
        }
    }

    #[test]
    fn divergence_matches_reference(p in pattern(6)) {
        prop_assert_eq!(is_divergent(&p), common::divergent(&p));
    }

    #[test]
    fn irreducibility_matches_reference(p in pattern(5)) {
        let expected = common::irreducible(&p);
        prop_assert_eq!(is_irreducible(&p, IrreducibilityMethod::Definitional), expected);
        prop_assert_eq!(is_irreducible(&p, IrreducibilityMethod::Criterion), expected);
    }

    #[test]
    fn subpatterns_match_reference(p in pattern(5)) {
        prop_assert_eq!(subpatterns(&p, EmbeddingMode::Injective), common::subpatterns(&p, false));
        prop_assert_eq!(subpatterns(&p, EmbeddingMode::Monotone), common::subpatterns(&p, true));
    }

    #[test]
    fn dual_is_an_involution(p in pattern(6)) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
    }

    #[test]
    fn avoidance_is_dual_invariant((f, h) in coloring_and_set(10), p in pattern(4)) {
        prop_assert_eq!(avoids(&f, &h, &p), avoids(&f.flip(), &h, &p.dual()));
    }

    #[test]
    fn avoidance_is_monotone_in_subpatterns((f, h) in coloring_and_set(10), p in pattern(4), pick in any::<prop::sample::Index>()) {
        let subs: Vec<Pattern> = subpatterns(&p, EmbeddingMode::Monotone).into_iter().collect();
        let q = pick.get(&subs);
        prop_assert!(is_subpattern(q, &p, EmbeddingMode::Monotone));
        if avoids(&f, &h, q) {
            prop_assert!(avoids(&f, &h, &p));
        }
    }

    #[test]
    fn realizer_search_matches_reference((f, h) in coloring_and_set(10), p in pattern(4)) {
        let found = find_realizer(&f, &h, &p);
        prop_assert_eq!(found.is_some(), !avoids(&f, &h, &p));
        prop_assert_eq!(found, common::realizer(&f, &h, &p));
    }

    #[test]
    fn fg_avoidance_matches_reference((f, h) in coloring_and_set(9), p in pattern(4), bits in prop::collection::vec(0..2u8, 9)) {
        prop_assume!(p.size() >= 2);
        let g = PartialColoring::from_pairs((0..f.window()).map(|v| (v, bits[v])));
        prop_assert_eq!(fg_avoids(&f, &g, &h, &p).unwrap(), common::fg_avoids(&f, &bits, &h, &p));
    }

    #[test]
    fn coloring_files_round_trip(f in coloring(9), limits in prop::collection::vec(0..2u8, 9)) {
        prop_assert_eq!(FiniteColoring::parse_file(&f.to_file_string()).unwrap(), f.clone());
        let limits: Vec<Color> = limits[..f.window()].to_vec();
        let sc = StableColoring::new(f, limits).unwrap();
        prop_assert_eq!(StableColoring::parse_file(&sc.to_file_string()).unwrap(), sc);
    }

    #[test]
    fn records_round_trip(kind in "[a-z]{1,8}", fields in prop::collection::vec(("[a-z][a-z0-9-]{0,6}", "[!-~]{1,12}"), 0..5)) {
        let mut r = Record::new(kind);
        for (k, v) in &fields {
            r = r.with(k, v);
        }
        prop_assert_eq!(Record::parse_line(&r.to_string(), 1).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dnc_extends_monotonically(set in prop::collection::btree_set(1..12usize, 1..8), settle in 2..15usize, short in 5..25usize) {
        let o = StableOracle::new().with_set(0, set.into_iter().collect(), settle);
        let (big, trace) = build_dnc_coloring(&o, 30);
        let (small, _) = build_dnc_coloring(&o, short);
        prop_assert_eq!(big.truncate(short), small);
        let again = ConstructionTrace::parse_records(&trace.to_records()).unwrap();
        prop_assert_eq!(again, trace);
    }
}
