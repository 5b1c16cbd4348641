//! The space of canonical layer structures: exact per-stratum sizes,
//! exhaustive enumeration and uniform sampling.
//!
//! A stratum is one composition `(k_1, .., k_r)` of `n`. Inside it a
//! structure is fixed by the ordered variable partition, one set per
//! variable and the constants. A single-variable last layer draws its set
//! from those containing 0 and, when `r >= 2`, excludes `B_{r+1} = -B_r`.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

use super::formulas::{compositions, multinomial};
use crate::error::{Error, Result};
use crate::field::{enumerate_subsets, FieldSpec, ValueSubset, Variant};
use crate::ncf::{LayerEntry, LayerStructure};

/// Cap on the number of structures an enumeration may visit.
pub const MAX_STRUCTURES: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct Stratum {
    pub composition: Vec<usize>,
    pub count: BigUint,
}

#[derive(Debug, Clone)]
pub struct StructureSpace {
    field: FieldSpec,
    arity: usize,
    variant: Variant,
    sets: Vec<ValueSubset>,
    last_sets: Vec<ValueSubset>,
    strata: Vec<Stratum>,
}

impl StructureSpace {
    pub fn new(field: FieldSpec, arity: usize, variant: Variant) -> Result<Self> {
        let p = field.modulus()?;
        if arity == 0 {
            return Err(Error::domain("structures need at least one variable"));
        }
        let sets = enumerate_subsets(p, variant)?;
        let last_sets: Vec<ValueSubset> = sets.iter().copied().filter(|s| s.contains(0)).collect();
        let mut space = StructureSpace {
            field,
            arity,
            variant,
            sets,
            last_sets,
            strata: Vec::new(),
        };
        space.strata = compositions_of(arity)
            .into_iter()
            .map(|composition| {
                let count = space.stratum_size(&composition);
                Stratum { composition, count }
            })
            .collect();
        Ok(space)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn total(&self) -> BigUint {
        self.strata.iter().map(|s| &s.count).sum()
    }

    fn single_last(composition: &[usize]) -> bool {
        composition.last() == Some(&1)
    }

    /// Radices of the set digits followed by the constant digits.
    fn radices(&self, composition: &[usize]) -> Vec<usize> {
        let p = self.field.modulus().expect("prime field") as usize;
        let r = composition.len();
        let mut radices = vec![self.sets.len(); self.arity];
        if Self::single_last(composition) {
            radices[self.arity - 1] = self.last_sets.len();
        }
        radices.push(p);
        radices.extend(std::iter::repeat_n(p - 1, r - 1));
        radices.push(if r >= 2 && Self::single_last(composition) { p - 2 } else { p - 1 });
        radices
    }

    fn stratum_size(&self, composition: &[usize]) -> BigUint {
        self.radices(composition)
            .into_iter()
            .fold(multinomial(self.arity, composition), |acc, k| acc * k)
    }

    /// Streams every structure once, stratum by stratum.
    pub fn structures(&self) -> Result<Structures<'_>> {
        let total = self.total();
        if total > BigUint::from(MAX_STRUCTURES) {
            return Err(Error::Capacity {
                what: "structure enumeration",
                needed: total.to_string(),
                limit: MAX_STRUCTURES.to_string(),
            });
        }
        Ok(Structures {
            space: self,
            stratum: 0,
            state: None,
        })
    }

    /// Builds the structure named by `blocks` (one sorted variable list per
    /// layer) and digit values within the radices of its stratum.
    fn assemble(&self, composition: &[usize], blocks: &[Vec<usize>], digits: &[usize]) -> LayerStructure {
        let p = self.field.modulus().expect("prime field");
        let r = composition.len();
        let n = self.arity;
        let single_last = Self::single_last(composition);
        let mut slot = 0;
        let layers: Vec<Vec<LayerEntry>> = blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&variable| {
                        let pool = if single_last && slot == n - 1 {
                            &self.last_sets
                        } else {
                            &self.sets
                        };
                        let set = pool[digits[slot]];
                        slot += 1;
                        LayerEntry { variable, set }
                    })
                    .collect()
            })
            .collect();
        let c = &digits[n..];
        let mut constants = Vec::with_capacity(r + 1);
        constants.push(c[0] as u8);
        constants.extend(c[1..r].iter().map(|&d| d as u8 + 1));
        let last = if r >= 2 && single_last {
            let forbidden = (p - constants[r - 1]) % p;
            (1..p).filter(|&b| b != forbidden).nth(c[r]).expect("digit within radix")
        } else {
            c[r] as u8 + 1
        };
        constants.push(last);
        LayerStructure::new(self.field, self.variant, layers, constants)
            .expect("enumerated structures satisfy every invariant")
    }

    /// Draws a stratum with probability proportional to its size, then the
    /// partition, sets and constants uniformly within it.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> LayerStructure {
        let total = self.total();
        assert!(!total.is_zero(), "empty structure space");
        let mut ticket = rng.gen_biguint_below(&total);
        let stratum = self
            .strata
            .iter()
            .find(|s| {
                if ticket < s.count {
                    true
                } else {
                    ticket -= &s.count;
                    false
                }
            })
            .expect("ticket below total");
        let composition = &stratum.composition;
        let mut vars: Vec<usize> = (0..self.arity).collect();
        vars.shuffle(rng);
        let mut blocks = Vec::with_capacity(composition.len());
        let mut rest = vars.as_slice();
        for &k in composition {
            let (head, tail) = rest.split_at(k);
            let mut block = head.to_vec();
            block.sort_unstable();
            blocks.push(block);
            rest = tail;
        }
        let digits: Vec<usize> = self
            .radices(composition)
            .into_iter()
            .map(|radix| rng.gen_range(0..radix))
            .collect();
        self.assemble(composition, &blocks, &digits)
    }
}

fn compositions_of(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|r| compositions(n, &vec![1; r])).collect()
}

/// Ordered partitions of `0..n` into blocks of the given sizes, each block
/// ascending, in lexicographic order of the blocks.
fn ordered_partitions(n: usize, sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(pool: &[usize], sizes: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&k, rest)) = sizes.split_first() else {
            out.push(acc.clone());
            return;
        };
        for block in itertools::Itertools::combinations(pool.iter().copied(), k) {
            let remaining: Vec<usize> = pool.iter().copied().filter(|v| !block.contains(v)).collect();
            acc.push(block);
            go(&remaining, rest, acc, out);
            acc.pop();
        }
    }
    let pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    go(&pool, sizes, &mut Vec::new(), &mut out);
    out
}

struct StratumState {
    partitions: Vec<Vec<Vec<usize>>>,
    radices: Vec<usize>,
    partition: usize,
    digits: Vec<usize>,
}

/// Iterator over a [`StructureSpace`].
pub struct Structures<'a> {
    space: &'a StructureSpace,
    stratum: usize,
    state: Option<StratumState>,
}

impl Iterator for Structures<'_> {
    type Item = LayerStructure;

    fn next(&mut self) -> Option<LayerStructure> {
        loop {
            if self.state.is_none() {
                let stratum = self.space.strata.get(self.stratum)?;
                let radices = self.space.radices(&stratum.composition);
                if radices.contains(&0) {
                    self.stratum += 1;
                    continue;
                }
                self.state = Some(StratumState {
                    partitions: ordered_partitions(self.space.arity, &stratum.composition),
                    digits: vec![0; radices.len()],
                    radices,
                    partition: 0,
                });
            }
            let composition = &self.space.strata[self.stratum].composition;
            let st = self.state.as_mut().expect("state set above");
            let item = self.space.assemble(composition, &st.partitions[st.partition], &st.digits);
            // odometer: digits fastest, partition slowest
            let mut carry = true;
            for (d, &radix) in st.digits.iter_mut().zip(&st.radices).rev() {
                *d += 1;
                if *d < radix {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                st.partition += 1;
                if st.partition == st.partitions.len() {
                    self.state = None;
                    self.stratum += 1;
                }
            }
            return Some(item);
        }
    }
}

impl StructureSpace {
    /// Stream length as a machine integer, when it fits.
    pub fn total_u64(&self) -> Option<u64> {
        self.total().to_u64()
    }
}

/// One structure drawn with [`StructureSpace::sample`] from a PCG-XSH-RR
/// 64/32 generator (64-bit state) seeded with `seed`.
pub fn sample_uniform(field: FieldSpec, n: usize, variant: Variant, seed: u64) -> Result<LayerStructure> {
    Ok(sample_many(field, n, variant, seed, 1)?.remove(0))
}

/// `count` consecutive draws from one seeded stream.
pub fn sample_many(
    field: FieldSpec,
    n: usize,
    variant: Variant,
    seed: u64,
    count: usize,
) -> Result<Vec<LayerStructure>> {
    let space = StructureSpace::new(field, n, variant)?;
    let mut rng = Pcg32::seed_from_u64(seed);
    Ok((0..count).map(|_| space.sample(&mut rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: u64, n: usize, v: Variant) -> StructureSpace {
        StructureSpace::new(FieldSpec::prime(p).unwrap(), n, v).unwrap()
    }

    #[test]
    fn stream_lengths() {
        assert_eq!(space(2, 2, Variant::Interval).structures().unwrap().count(), 8);
        assert_eq!(space(3, 2, Variant::Interval).structures().unwrap().count(), 192);
        assert_eq!(space(3, 2, Variant::General).structures().unwrap().count(), 432);
        for (p, n, v) in [(2, 3, Variant::Interval), (3, 3, Variant::General), (5, 2, Variant::Interval)] {
            let s = space(p, n, v);
            assert_eq!(s.structures().unwrap().count() as u64, s.total_u64().unwrap());
        }
    }

    #[test]
    fn ordered_partition_counts() {
        assert_eq!(ordered_partitions(4, &[2, 1, 1]).len(), 12);
        assert_eq!(ordered_partitions(3, &[3]), vec![vec![vec![0, 1, 2]]]);
    }

    #[test]
    fn guard_refuses_large_spaces() {
        let s = space(13, 6, Variant::General);
        assert!(matches!(s.structures(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let f = FieldSpec::prime(3).unwrap();
        let a = sample_uniform(f, 4, Variant::Interval, 7).unwrap();
        let b = sample_uniform(f, 4, Variant::Interval, 7).unwrap();
        assert_eq!(a, b);
        let many = sample_many(f, 4, Variant::Interval, 7, 20).unwrap();
        assert_eq!(many[0], a);
        assert!(many.iter().any(|s| *s != a));
    }

    #[test]
    fn samples_are_canonical() {
        let f = FieldSpec::prime(5).unwrap();
        for s in sample_many(f, 3, Variant::General, 11, 200).unwrap() {
            assert!(s.is_canonical());
        }
    }
}
