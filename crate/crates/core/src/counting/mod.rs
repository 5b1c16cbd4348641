//! Exact counts of nested canalizing functions by formula, recursion,
//! structure enumeration, brute force and orbit construction.
//!
//! Every count is a [`BigUint`]; nothing here uses floating point.

mod formulas;
mod oracle;
mod structures;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Variant};

pub use formulas::{
    classes_formula, composition_count, compositions, count_last_layer_single, count_offset_products,
    multinomial, ncf_closed_by_layers, ncf_general_by_layers, recursive_sequence,
};
pub use oracle::{
    brute_force_by_layers, last_layer_single_brute_force, offset_products_brute_force,
    orbit_count_by_tables, DEFAULT_MAX_TABLES,
};
pub use structures::{sample_many, sample_uniform, Stratum, StructureSpace, Structures, MAX_STRUCTURES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Closed,
    Recursive,
    StructureEnum,
    BruteForce,
    ClassFormula,
    OrbitEnum,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Recursive => "recursive",
            Method::StructureEnum => "structure-enum",
            Method::BruteForce => "brute-force",
            Method::ClassFormula => "class-formula",
            Method::OrbitEnum => "orbit-enum",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of one counting method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    /// `p` or `q`.
    pub order: u64,
    pub n: usize,
    pub variant: Variant,
    pub method: Method,
    pub count: BigUint,
    /// Count per layer number, when the method sees layers.
    pub breakdown: Option<BTreeMap<usize, BigUint>>,
    pub elapsed: Duration,
}

pub const TSV_HEADER: &str = "p/q\tn\tvariant\tmethod\tcount\tseconds";

impl CountReport {
    fn timed(
        order: u64,
        n: usize,
        variant: Variant,
        method: Method,
        run: impl FnOnce() -> Result<(BigUint, Option<BTreeMap<usize, BigUint>>)>,
    ) -> Result<CountReport> {
        let start = Instant::now();
        let (count, breakdown) = run()?;
        if let Some(b) = &breakdown {
            debug_assert_eq!(b.values().sum::<BigUint>(), count);
        }
        Ok(CountReport {
            order,
            n,
            variant,
            method,
            count,
            breakdown,
            elapsed: start.elapsed(),
        })
    }

    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{:.6}",
            self.order,
            self.n,
            self.variant,
            self.method,
            self.count,
            self.elapsed.as_secs_f64()
        )
    }
}

fn summed(mut by_r: BTreeMap<usize, BigUint>) -> (BigUint, Option<BTreeMap<usize, BigUint>>) {
    by_r.retain(|_, c| *c != BigUint::ZERO);
    (by_r.values().sum(), Some(by_r))
}

/// Interval NCFs over `F_p` from the closed double-sum formula.
pub fn count_ncf_closed(p: u64, n: usize) -> Result<CountReport> {
    CountReport::timed(p, n, Variant::Interval, Method::Closed, || {
        Ok(summed(ncf_closed_by_layers(p, n)?))
    })
}

/// Interval NCFs over `F_p` as `p a_n` from the nonlinear recursion.
pub fn count_ncf_recursive(p: u64, n: usize) -> Result<CountReport> {
    CountReport::timed(p, n, Variant::Interval, Method::Recursive, || {
        Ok((recursive_sequence(p, n)? * p, None))
    })
}

/// General-variant NCFs over a field of any prime-power order `q`.
pub fn count_ncf_general(q: u64, n: usize) -> Result<CountReport> {
    CountReport::timed(q, n, Variant::General, Method::Closed, || {
        Ok(summed(ncf_general_by_layers(q, n)?))
    })
}

/// The stated closed form for the number of permutation classes.
pub fn count_classes_formula(q: u64, n: usize) -> Result<CountReport> {
    CountReport::timed(q, n, Variant::General, Method::ClassFormula, || {
        Ok((classes_formula(q, n)?, None))
    })
}

/// Length of the structure stream, split by layer number.
pub fn count_by_enumeration(field: FieldSpec, n: usize, variant: Variant) -> Result<CountReport> {
    CountReport::timed(field.order(), n, variant, Method::StructureEnum, || {
        let space = StructureSpace::new(field, n, variant)?;
        let mut by_r: BTreeMap<usize, BigUint> = BTreeMap::new();
        for s in space.structures()? {
            *by_r.entry(s.layer_count()).or_default() += 1u32;
        }
        Ok(summed(by_r))
    })
}

/// Tables recognized as NCFs among all `p^(p^n)` tables.
pub fn brute_force_count(field: FieldSpec, n: usize, variant: Variant) -> Result<CountReport> {
    brute_force_count_with_limit(field, n, variant, DEFAULT_MAX_TABLES)
}

pub fn brute_force_count_with_limit(
    field: FieldSpec,
    n: usize,
    variant: Variant,
    limit: u64,
) -> Result<CountReport> {
    CountReport::timed(field.order(), n, variant, Method::BruteForce, || {
        let by_r = brute_force_by_layers(field, n, variant, limit)?
            .into_iter()
            .map(|(r, c)| (r, BigUint::from(c)))
            .collect();
        Ok(summed(by_r))
    })
}

/// Distinct class keys over all enumerated structures: the number of
/// permutation-equivalence classes by direct construction.
pub fn orbit_count(field: FieldSpec, n: usize, variant: Variant) -> Result<CountReport> {
    CountReport::timed(field.order(), n, variant, Method::OrbitEnum, || {
        let space = StructureSpace::new(field, n, variant)?;
        let mut keys = HashSet::new();
        let mut by_r: BTreeMap<usize, BigUint> = BTreeMap::new();
        for s in space.structures()? {
            let r = s.layer_count();
            if keys.insert(s.class_key()) {
                *by_r.entry(r).or_default() += 1u32;
            }
        }
        Ok(summed(by_r))
    })
}

/// Dispatches a method by tag for a field given by its order.
pub fn count(method: Method, order: u64, n: usize, variant: Variant) -> Result<CountReport> {
    let prime = || FieldSpec::prime(order);
    match (method, variant) {
        (Method::Closed, Variant::Interval) => count_ncf_closed(order, n),
        (Method::Closed, Variant::General) => count_ncf_general(order, n),
        (Method::Recursive, Variant::Interval) => count_ncf_recursive(order, n),
        (Method::Recursive, Variant::General) => Err(Error::domain(
            "the recursion counts interval NCFs only",
        )),
        (Method::ClassFormula, _) => count_classes_formula(order, n),
        (Method::StructureEnum, v) => count_by_enumeration(prime()?, n, v),
        (Method::BruteForce, v) => brute_force_count(prime()?, n, v),
        (Method::OrbitEnum, v) => orbit_count(prime()?, n, v),
    }
}
