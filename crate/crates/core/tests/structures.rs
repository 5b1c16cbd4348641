use std::collections::HashSet;

use itertools::Itertools;
use ncfkit::counting::StructureSpace;
use ncfkit::*;

const SIZES: [(u64, usize); 4] = [(2, 2), (2, 3), (2, 4), (3, 2)];

fn field(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn structures(p: u64, n: usize, v: Variant) -> Vec<LayerStructure> {
    StructureSpace::new(field(p), n, v)
        .unwrap()
        .structures()
        .unwrap()
        .collect()
}

fn all_tables(p: u64, n: usize) -> impl Iterator<Item = TruthTable> {
    let entries = (p as usize).pow(n as u32);
    let total = p.pow(entries as u32);
    (0..total).map(move |mut index| {
        let mut values = vec![0u8; entries];
        for slot in values.iter_mut().rev() {
            *slot = (index % p) as u8;
            index /= p;
        }
        TruthTable::new(field(p), n, values).unwrap()
    })
}

#[test]
fn enumerated_structures_recognize_to_themselves() {
    for (p, n) in SIZES {
        for v in Variant::ALL {
            for s in structures(p, n, v) {
                assert_eq!(recognize(&s.build(), v).as_ref(), Some(&s), "{s}");
            }
        }
    }
}

#[test]
fn recognized_tables_rebuild() {
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        for t in all_tables(p, n) {
            for v in Variant::ALL {
                if let Some(s) = recognize(&t, v) {
                    assert_eq!(s.build(), t);
                    assert!(s.is_canonical());
                }
            }
        }
    }
}

#[test]
fn nested_and_case_table_constructions_agree() {
    for (p, n) in SIZES {
        for v in Variant::ALL {
            for s in structures(p, n, v) {
                let spec = s.expansion();
                assert_eq!(spec.build(), s.build());
                assert_eq!(spec.flip().build(), s.build());
                let outputs = s.layer_outputs();
                let mut acc = 0u8;
                for (b, &c) in outputs.iter().zip(s.constants()) {
                    acc = (acc + c) % p as u8;
                    assert_eq!(*b, acc);
                }
            }
        }
    }
}

#[test]
fn collapsing_the_first_layer_peels_it() {
    for (p, n) in SIZES {
        for v in Variant::ALL {
            for s in structures(p, n, v) {
                let Some((_, inner)) = s.without_first_layer() else {
                    assert_eq!(s.layer_count(), 1);
                    continue;
                };
                let region: Vec<(usize, ValueSubset)> =
                    s.layers()[0].iter().map(|e| (e.variable, e.set.complement())).collect();
                let collapsed = s.build().collapse_region(&region).unwrap().expect("collapsible");
                assert_eq!(recognize(&collapsed, v), Some(inner.canonical()), "{s}");
                let c = s.constants();
                assert_eq!(inner.constants()[0], (c[0] + c[1]) % p as u8);
            }
        }
    }
}

#[test]
fn boolean_last_layer_has_two_variables() {
    for n in 2..=4 {
        for s in structures(2, n, Variant::Interval) {
            assert!(*s.composition().last().unwrap() >= 2, "{s}");
        }
    }
    for t in all_tables(2, 3) {
        if let Some(s) = recognize(&t, Variant::Interval) {
            assert!(*s.composition().last().unwrap() >= 2);
        }
    }
}

#[test]
fn beta_layers_match_recognized_composition() {
    for (p, n) in SIZES {
        for v in Variant::ALL {
            for s in structures(p, n, v) {
                let beta = s.expansion().outputs().to_vec();
                assert_eq!(layers_from_beta(&beta), Some(s.composition()), "{s}");
            }
        }
    }
    assert_eq!(
        layers_from_beta(&[1, 1, 1, 0, 0, 0, 2, 0, 0, 2, 2, 1]).map(|k| k.len()),
        Some(5)
    );
}

#[test]
fn class_key_survives_variable_permutations() {
    for (p, n, v) in [(2, 3, Variant::Interval), (2, 4, Variant::Interval), (3, 3, Variant::General)] {
        for s in structures(p, n, v) {
            let t = s.build();
            let key = s.class_key();
            for sigma in (0..n).permutations(n) {
                let moved = recognize(&t.permute(&sigma).unwrap(), v).expect("still an NCF");
                assert_eq!(moved.class_key(), key);
            }
        }
    }
}

#[test]
fn enumerated_tables_are_pairwise_distinct() {
    for (p, n) in SIZES {
        for v in Variant::ALL {
            let all = structures(p, n, v);
            let tables: HashSet<TruthTable> = all.iter().map(|s| s.build()).collect();
            assert_eq!(tables.len(), all.len(), "p={p} n={n} {v}");
        }
    }
}

#[test]
fn printed_structures_parse_back() {
    for s in structures(3, 3, Variant::Interval).into_iter().step_by(37) {
        assert_eq!(LayerStructure::parse(&s.to_string(), 3).unwrap(), s);
    }
    let text: String = structures(2, 3, Variant::General)
        .iter()
        .map(|s| format!("{s}\n"))
        .collect();
    assert_eq!(LayerStructure::parse_many(&text, 2).unwrap().len(), 64);
}
