//! Exhaustive oracles: every table of a function space, every structure of
//! a structure space, and table-level brute force for the two lemmas.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::structures::StructureSpace;
use crate::error::{Error, Result};
use crate::field::{enumerate_subsets, FieldSpec, Variant};
use crate::ncf::{permutation_equivalent_exhaustive, recognize};
use crate::table::TruthTable;

/// Default cap on `p^(p^n)`, the number of tables brute force visits.
pub const DEFAULT_MAX_TABLES: u64 = 1 << 26;

fn table_space_size(p: u64, n: usize, limit: u64) -> Result<u64> {
    let too_big = || Error::Capacity {
        what: "brute-force table space",
        needed: format!("{p}^({p}^{n}) tables"),
        limit: limit.to_string(),
    };
    let entries = p.checked_pow(n as u32).ok_or_else(too_big)?;
    let tables = p
        .checked_pow(u32::try_from(entries).map_err(|_| too_big())?)
        .filter(|&t| t <= limit)
        .ok_or_else(too_big)?;
    Ok(tables)
}

/// Recognizes every function `F_p^n -> F_p` and tallies the NCFs by layer
/// number.
pub fn brute_force_by_layers(
    field: FieldSpec,
    n: usize,
    variant: Variant,
    limit: u64,
) -> Result<BTreeMap<usize, u64>> {
    let p = field.modulus()?;
    let total = table_space_size(p as u64, n, limit)?;
    let entries = (p as usize).pow(n as u32);
    let tally = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, mut index| {
            let mut values = vec![0u8; entries];
            for slot in values.iter_mut().rev() {
                *slot = (index % p as u64) as u8;
                index /= p as u64;
            }
            let table = TruthTable::new(field, n, values).expect("digits are reduced");
            if let Some(l) = recognize(&table, variant) {
                *acc.entry(l.layer_count()).or_default() += 1;
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (r, c) in b {
                *a.entry(r).or_default() += c;
            }
            a
        });
    Ok(tally)
}

/// Number of permutation classes among all structures, found by grouping
/// the built tables with the exhaustive permutation search.
pub fn orbit_count_by_tables(field: FieldSpec, n: usize, variant: Variant) -> Result<u64> {
    let space = StructureSpace::new(field, n, variant)?;
    let mut representatives: Vec<TruthTable> = Vec::new();
    for s in space.structures()? {
        let t = s.build();
        let mut known = false;
        for rep in &representatives {
            if permutation_equivalent_exhaustive(rep, &t)? {
                known = true;
                break;
            }
        }
        if !known {
            representatives.push(t);
        }
    }
    Ok(representatives.len() as u64)
}

fn indicator_table(field: FieldSpec, arity: usize, f: impl Fn(&[u8]) -> u8) -> TruthTable {
    TruthTable::from_fn(field, arity, f).expect("reduced outputs")
}

/// Distinct tables `b Q_S(x) + a` (interval `S`, `a, b != 0`) that equal no
/// `c Q_S'(x)` with `c != 0`.
pub fn last_layer_single_brute_force(p: u64) -> Result<u64> {
    let field = FieldSpec::prime(p)?;
    let pm = p as u8;
    let sets = enumerate_subsets(pm, Variant::Interval)?;
    let mut candidates = HashSet::new();
    let mut scaled = HashSet::new();
    for s in &sets {
        for b in 1..pm {
            for a in 1..pm {
                candidates.insert(indicator_table(field, 1, |x| {
                    ((b as u16 * s.indicator(x[0]).unwrap() as u16 + a as u16) % p as u16) as u8
                }));
            }
            scaled.insert(indicator_table(field, 1, |x| {
                ((b as u16 * s.indicator(x[0]).unwrap() as u16) % p as u16) as u8
            }));
        }
    }
    Ok(candidates.difference(&scaled).count() as u64)
}

/// Distinct tables `b prod_j Q_{S_j}(x_j) + a` over `k` variables with
/// interval sets and `a, b != 0`.
pub fn offset_products_brute_force(p: u64, k: usize) -> Result<u64> {
    let field = FieldSpec::prime(p)?;
    let pm = p as u8;
    let sets = enumerate_subsets(pm, Variant::Interval)?;
    let mut seen = HashSet::new();
    let mut choice = vec![0usize; k];
    loop {
        for b in 1..pm {
            for a in 1..pm {
                seen.insert(indicator_table(field, k, |x| {
                    let m: u16 = choice
                        .iter()
                        .zip(x)
                        .map(|(&c, &xi)| sets[c].indicator(xi).unwrap() as u16)
                        .product();
                    ((b as u16 * m + a as u16) % p as u16) as u8
                }));
            }
        }
        // next set assignment
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(seen.len() as u64);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < sets.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}
