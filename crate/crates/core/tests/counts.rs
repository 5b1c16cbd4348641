use std::collections::HashMap;

use num_bigint::BigUint;
use ncfkit::counting::*;
use ncfkit::*;

fn field(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

#[test]
fn closed_form_matches_recursion() {
    for p in [2, 3, 5, 7] {
        for n in 2..=8 {
            assert_eq!(
                count_ncf_closed(p, n).unwrap().count,
                count_ncf_recursive(p, n).unwrap().count,
                "p={p} n={n}"
            );
        }
    }
}

#[test]
fn general_variant_reduces_to_interval_at_two() {
    for n in 2..=8 {
        assert_eq!(count_ncf_general(2, n).unwrap().count, count_ncf_closed(2, n).unwrap().count);
    }
    for p in [3, 5, 7] {
        for n in 2..=6 {
            assert!(count_ncf_general(p, n).unwrap().count >= count_ncf_closed(p, n).unwrap().count);
        }
    }
}

#[test]
fn formula_enumeration_and_brute_force_agree() {
    for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        for v in Variant::ALL {
            let formula = count(Method::Closed, p, n, v).unwrap();
            let listed = count_by_enumeration(field(p), n, v).unwrap();
            let brute = brute_force_count(field(p), n, v).unwrap();
            assert_eq!(formula.count, listed.count, "p={p} n={n} {v}");
            assert_eq!(formula.count, brute.count, "p={p} n={n} {v}");
            assert_eq!(formula.breakdown, listed.breakdown);
            assert_eq!(formula.breakdown, brute.breakdown);
        }
    }
    for (p, n) in [(3, 3), (5, 2), (3, 4)] {
        assert_eq!(
            count_ncf_closed(p, n).unwrap().count,
            count_by_enumeration(field(p), n, Variant::Interval).unwrap().count
        );
    }
}

#[test]
fn reference_values() {
    let b = |x: u64| BigUint::from(x);
    assert_eq!(brute_force_count(field(2), 3, Variant::Interval).unwrap().count, b(64));
    assert_eq!(brute_force_count(field(2), 4, Variant::Interval).unwrap().count, b(736));
    assert_eq!(count_ncf_general(3, 2).unwrap().count, b(432));
    assert_eq!(count_classes_formula(3, 2).unwrap().count, b(324));
}

#[test]
fn lemma_counts_match_brute_force() {
    for p in [2, 3, 5, 7] {
        assert_eq!(count_last_layer_single(p).unwrap(), BigUint::from(last_layer_single_brute_force(p).unwrap()));
        for k in 2..=3 {
            assert_eq!(
                count_offset_products(p, k).unwrap(),
                BigUint::from(offset_products_brute_force(p, k).unwrap()),
                "p={p} k={k}"
            );
        }
    }
}

#[test]
fn orbit_counts_agree_between_groupings() {
    for (p, n, v) in [
        (2, 2, Variant::Interval),
        (2, 3, Variant::Interval),
        (2, 4, Variant::Interval),
        (3, 2, Variant::General),
        (3, 2, Variant::Interval),
    ] {
        let keys = orbit_count(field(p), n, v).unwrap().count;
        let grouped = orbit_count_by_tables(field(p), n, v).unwrap();
        assert_eq!(keys, BigUint::from(grouped), "p={p} n={n} {v}");
    }
    assert_eq!(orbit_count(field(2), 2, Variant::Interval).unwrap().count, BigUint::from(6u32));
}

#[test]
fn brute_force_guard_is_enforced() {
    assert!(matches!(brute_force_count(field(3), 3, Variant::Interval), Err(Error::Capacity { .. })));
    assert!(matches!(
        brute_force_count_with_limit(field(2), 4, Variant::Interval, 100),
        Err(Error::Capacity { .. })
    ));
}

#[test]
fn samples_follow_the_uniform_law() {
    let samples = sample_many(field(2), 2, Variant::Interval, 2024, 10_000).unwrap();
    let mut freq: HashMap<TruthTable, usize> = HashMap::new();
    for s in &samples {
        let t = s.build();
        assert_eq!(recognize(&t, Variant::Interval).as_ref(), Some(s));
        *freq.entry(t).or_default() += 1;
    }
    assert_eq!(freq.len(), 8);
    let band = 5.0 * (0.125f64 * 0.875 / 10_000.0).sqrt();
    for &c in freq.values() {
        assert!((c as f64 / 10_000.0 - 0.125).abs() <= band, "count {c}");
    }
}

#[test]
fn samples_round_trip_at_larger_sizes() {
    for s in sample_many(field(3), 3, Variant::Interval, 5, 500).unwrap() {
        assert_eq!(recognize(&s.build(), Variant::Interval), Some(s));
    }
    for s in sample_many(field(7), 6, Variant::General, 9, 50).unwrap() {
        assert_eq!(recognize(&s.build(), Variant::General), Some(s));
    }
}
