//! Cross-check suite behind `ncfkit verify`.

use std::collections::{HashMap, HashSet};

use clap::ValueEnum;
use ncfkit::counting::*;
use ncfkit::{recognize, FieldSpec, Result, TruthTable, Variant};
use num_bigint::BigUint;

use crate::Failure;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

struct Suite {
    passed: usize,
    failed: usize,
}

impl Suite {
    fn check(&mut self, name: &str, run: impl FnOnce() -> Result<(bool, String)>) {
        let (ok, detail) = run().unwrap_or_else(|e| (false, e.to_string()));
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {detail}");
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn info(&self, name: &str, detail: String) {
        println!("INFO {name}: {detail}");
    }
}

fn field(p: u64) -> FieldSpec {
    FieldSpec::prime(p).expect("prime below the limit")
}

fn formula(p: u64, n: usize, v: Variant) -> Result<BigUint> {
    Ok(match v {
        Variant::Interval => count_ncf_closed(p, n)?.count,
        Variant::General => count_ncf_general(p, n)?.count,
    })
}

fn closed_equals_recursive(p: u64) -> Result<(bool, String)> {
    let mut ok = true;
    for n in 2..=8 {
        ok &= count_ncf_closed(p, n)?.count == count_ncf_recursive(p, n)?.count;
    }
    Ok((ok, format!("p={p}, n=2..8")))
}

fn general_matches_boolean() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 2..=8 {
        ok &= count_ncf_general(2, n)?.count == count_ncf_closed(2, n)?.count;
    }
    for p in [3, 5, 7] {
        for n in 2..=6 {
            ok &= count_ncf_general(p, n)?.count >= count_ncf_closed(p, n)?.count;
        }
    }
    Ok((ok, "general(2,n)=closed(2,n); general>=closed for p=3,5,7".into()))
}

fn enumeration(p: u64, n: usize, v: Variant) -> Result<(bool, String)> {
    let listed = count_by_enumeration(field(p), n, v)?.count;
    let expected = formula(p, n, v)?;
    Ok((listed == expected, format!("{listed} = {expected}")))
}

fn brute_force(p: u64, n: usize, v: Variant) -> Result<(bool, String)> {
    let brute = brute_force_count(field(p), n, v)?.count;
    let expected = formula(p, n, v)?;
    Ok((brute == expected, format!("{brute} = {expected}")))
}

fn uniqueness(p: u64, n: usize, v: Variant) -> Result<(bool, String)> {
    let space = StructureSpace::new(field(p), n, v)?;
    let mut tables = HashSet::new();
    let mut ok = true;
    let mut count = 0usize;
    for s in space.structures()? {
        let t = s.build();
        ok &= recognize(&t, v).as_ref() == Some(&s);
        tables.insert(t);
        count += 1;
    }
    ok &= tables.len() == count;
    Ok((ok, format!("{count} structures, {} distinct tables", tables.len())))
}

fn lemmas(p: u64) -> Result<(bool, String)> {
    let single = count_last_layer_single(p)?;
    let single_brute = BigUint::from(last_layer_single_brute_force(p)?);
    let prod = count_offset_products(p, 2)?;
    let prod_brute = BigUint::from(offset_products_brute_force(p, 2)?);
    Ok((
        single == single_brute && prod == prod_brute,
        format!("single last layer {single}/{single_brute}, offset products {prod}/{prod_brute}"),
    ))
}

fn orbits(p: u64, n: usize, v: Variant) -> Result<(bool, String)> {
    let keys = orbit_count(field(p), n, v)?.count;
    let grouped = BigUint::from(orbit_count_by_tables(field(p), n, v)?);
    Ok((keys == grouped, format!("class keys {keys}, permutation grouping {grouped}")))
}

fn sampling() -> Result<(bool, String)> {
    const DRAWS: usize = 10_000;
    let samples = sample_many(field(2), 2, Variant::Interval, 42, DRAWS)?;
    let mut freq: HashMap<TruthTable, usize> = HashMap::new();
    let mut ok = true;
    for s in &samples {
        let t = s.build();
        ok &= recognize(&t, Variant::Interval).as_ref() == Some(s);
        *freq.entry(t).or_default() += 1;
    }
    let band = 5.0 * (0.125f64 * 0.875 / DRAWS as f64).sqrt();
    ok &= freq.len() == 8;
    ok &= freq.values().all(|&c| (c as f64 / DRAWS as f64 - 0.125).abs() <= band);
    Ok((ok, format!("{} outcomes, band 0.125 +/- {band:.4}", freq.len())))
}

pub fn run(level: Level) -> std::result::Result<(), Failure> {
    let full = level == Level::Full;
    let mut suite = Suite { passed: 0, failed: 0 };
    for p in [2, 3, 5, 7] {
        suite.check("closed=recursive", || closed_equals_recursive(p));
    }
    suite.check("general/interval", general_matches_boolean);

    let mut enum_sizes = vec![(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)];
    let mut brute_sizes = vec![(2, 2), (2, 3), (3, 2)];
    let mut unique_sizes = vec![(2, 2), (2, 3), (3, 2)];
    let mut orbit_sizes = vec![(2, 2, Variant::General), (2, 3, Variant::General), (3, 2, Variant::General)];
    if full {
        enum_sizes.push((3, 4));
        brute_sizes.push((2, 4));
        unique_sizes.extend([(2, 4), (3, 3)]);
        orbit_sizes.extend([(2, 4, Variant::General), (3, 2, Variant::Interval)]);
    }
    for v in Variant::ALL {
        for &(p, n) in &enum_sizes {
            suite.check(&format!("enumeration p={p} n={n} {v}"), || enumeration(p, n, v));
        }
        for &(p, n) in &brute_sizes {
            suite.check(&format!("brute force p={p} n={n} {v}"), || brute_force(p, n, v));
        }
        for &(p, n) in &unique_sizes {
            suite.check(&format!("uniqueness p={p} n={n} {v}"), || uniqueness(p, n, v));
        }
    }
    for p in [2, 3, 5] {
        suite.check(&format!("last-layer lemmas p={p}"), || lemmas(p));
    }
    for &(p, n, v) in &orbit_sizes {
        suite.check(&format!("orbit groupings p={p} n={n} {v}"), || orbits(p, n, v));
    }
    suite.check("sampling law p=2 n=2", sampling);

    for &(q, n, v) in orbit_sizes.iter().filter(|s| s.2 == Variant::General) {
        let stated = count_classes_formula(q, n).map(|r| r.count.to_string());
        let direct = orbit_count(field(q), n, v).map(|r| r.count.to_string());
        let show = |r: Result<String>| r.unwrap_or_else(|e| e.to_string());
        suite.info(
            &format!("classes q={q} n={n} {v}"),
            format!("formula {}, orbit count {}", show(stated), show(direct)),
        );
    }
    for n in 2..=4 {
        suite.info(&format!("interval count p=3 n={n}"), count_ncf_closed(3, n)?.count.to_string());
    }

    println!("verify: {} passed, {} failed", suite.passed, suite.failed);
    if suite.failed > 0 {
        Err(Failure::Verification(suite.failed))
    } else {
        Ok(())
    }
}
