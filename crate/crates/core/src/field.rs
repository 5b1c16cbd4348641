//! Alphabet arithmetic, value subsets, intervals and the indicator function.
//!
//! Elements of a prime field are `u8` values in `0..p`. Prime-power orders
//! that are not prime are carried only as cardinalities: the counting
//! formulas need `q` alone and no element arithmetic is offered for them.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime accepted on evaluation paths (truth tables, recognition).
pub const MAX_EVAL_PRIME: u8 = 13;

/// Largest alphabet a [`ValueSubset`] mask can describe.
pub const MAX_SUBSET_MODULUS: u8 = 64;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `true` when `q = p^k` for some prime `p` and `k >= 1`.
pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    // q itself is prime
    true
}

/// How much of the field is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMode {
    /// Prime order with full modular arithmetic.
    Prime,
    /// Any prime-power order, cardinality only.
    Cardinality,
}

/// The ambient alphabet `F_p` (prime mode) or `F_q` (cardinality mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    order: u64,
    mode: FieldMode,
}

impl FieldSpec {
    /// A prime field usable on evaluation paths, `2 <= p <= 13`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if p > MAX_EVAL_PRIME as u64 {
            return Err(Error::domain(format!(
                "prime {p} exceeds the evaluation limit {MAX_EVAL_PRIME}"
            )));
        }
        Ok(FieldSpec {
            order: p,
            mode: FieldMode::Prime,
        })
    }

    /// A field known only by its cardinality `q`, any prime power.
    pub fn cardinality(q: u64) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::domain(format!("{q} is not a prime power")));
        }
        Ok(FieldSpec {
            order: q,
            mode: FieldMode::Cardinality,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    /// The prime modulus, or an error for cardinality-only fields.
    pub fn modulus(&self) -> Result<u8> {
        match self.mode {
            FieldMode::Prime => Ok(self.order as u8),
            FieldMode::Cardinality => Err(Error::UnsupportedMode(format!(
                "field of order {} carries no element arithmetic",
                self.order
            ))),
        }
    }

    /// Checks that `x` is a reduced element of a prime field.
    pub fn check(&self, x: u8) -> Result<u8> {
        let p = self.modulus()?;
        if x >= p {
            return Err(Error::domain(format!("{x} is not an element of F_{p}")));
        }
        Ok(x)
    }

    pub fn add(&self, a: u8, b: u8) -> Result<u8> {
        let p = self.modulus()?;
        self.check(a)?;
        self.check(b)?;
        Ok(((a as u16 + b as u16) % p as u16) as u8)
    }

    pub fn sub(&self, a: u8, b: u8) -> Result<u8> {
        let p = self.modulus()?;
        self.check(a)?;
        self.check(b)?;
        Ok(((a as u16 + p as u16 - b as u16) % p as u16) as u8)
    }

    pub fn mul(&self, a: u8, b: u8) -> Result<u8> {
        let p = self.modulus()?;
        self.check(a)?;
        self.check(b)?;
        Ok(((a as u16 * b as u16) % p as u16) as u8)
    }

    pub fn neg(&self, a: u8) -> Result<u8> {
        self.sub(0, a)
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u8) -> Result<u8> {
        let p = self.modulus()?;
        if self.check(a)? == 0 {
            return Err(Error::domain("zero has no inverse"));
        }
        let mut acc = 1u8;
        for _ in 0..p - 2 {
            acc = self.mul(acc, a)?;
        }
        Ok(acc)
    }

    /// Elements `0..p` of a prime field.
    pub fn elements(&self) -> Result<std::ops::Range<u8>> {
        Ok(0..self.modulus()?)
    }
}

/// Which family of canalizing sets is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Prefixes `{0..j}` and their complements.
    Interval,
    /// Any nonempty proper subset.
    General,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Interval, Variant::General];

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Interval => "interval",
            Variant::General => "general",
        }
    }

    pub fn admits(&self, set: &ValueSubset) -> bool {
        match self {
            Variant::Interval => set.is_interval(),
            Variant::General => true,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(Variant::Interval),
            "general" => Ok(Variant::General),
            other => Err(Error::domain(format!("unknown variant {other:?}"))),
        }
    }
}

/// A nonempty proper subset of `{0, .., p-1}`, stored as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSubset {
    modulus: u8,
    mask: u64,
}

fn full_mask(p: u8) -> u64 {
    if p == 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}

impl ValueSubset {
    pub fn from_mask(p: u8, mask: u64) -> Result<Self> {
        if !(2..=MAX_SUBSET_MODULUS).contains(&p) {
            return Err(Error::domain(format!(
                "alphabet size {p} outside 2..={MAX_SUBSET_MODULUS}"
            )));
        }
        let full = full_mask(p);
        if mask & !full != 0 {
            return Err(Error::domain(format!(
                "mask {mask:#x} has bits outside 0..{p}"
            )));
        }
        if mask == 0 || mask == full {
            return Err(Error::domain("subset must be nonempty and proper"));
        }
        Ok(ValueSubset { modulus: p, mask })
    }

    pub fn from_elements(p: u8, elements: &[u8]) -> Result<Self> {
        let mut mask = 0u64;
        for &x in elements {
            if x >= p {
                return Err(Error::domain(format!("{x} is not below {p}")));
            }
            mask |= 1 << x;
        }
        Self::from_mask(p, mask)
    }

    /// Parses the brace form `{0,1}` over an alphabet of size `p`.
    pub fn parse(p: u8, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::domain(format!("subset {text:?} is not brace-delimited")))?;
        let mut elements = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            let x: u8 = tok
                .parse()
                .map_err(|_| Error::domain(format!("bad subset element {tok:?}")))?;
            elements.push(x);
        }
        Self::from_elements(p, &elements)
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, x: u8) -> bool {
        x < self.modulus && self.mask >> x & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn complement(&self) -> ValueSubset {
        ValueSubset {
            modulus: self.modulus,
            mask: !self.mask & full_mask(self.modulus),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.modulus).filter(move |&x| self.contains(x))
    }

    /// `S` or its complement is a prefix `{0..j}` with `j < p-1`.
    pub fn is_interval(&self) -> bool {
        let is_prefix = |m: u64| m & (m + 1) == 0;
        is_prefix(self.mask) || is_prefix(self.complement().mask)
    }

    /// `Q_S(x)`: 0 on `S`, 1 on the complement.
    pub fn indicator(&self, x: u8) -> Result<u8> {
        if x >= self.modulus {
            return Err(Error::domain(format!(
                "{x} is not an element of the size-{} alphabet",
                self.modulus
            )));
        }
        Ok(if self.contains(x) { 0 } else { 1 })
    }
}

impl fmt::Display for ValueSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Every admissible canalizing set over an alphabet of size `p`, ascending by mask.
pub fn enumerate_subsets(p: u8, variant: Variant) -> Result<Vec<ValueSubset>> {
    if !(2..=MAX_SUBSET_MODULUS).contains(&p) {
        return Err(Error::domain(format!(
            "alphabet size {p} outside 2..={MAX_SUBSET_MODULUS}"
        )));
    }
    match variant {
        Variant::Interval => {
            let full = full_mask(p);
            let mut masks: Vec<u64> = (1..p)
                .flat_map(|j| {
                    let prefix = full_mask(j);
                    [prefix, !prefix & full]
                })
                .collect();
            masks.sort_unstable();
            masks.dedup();
            Ok(masks
                .into_iter()
                .map(|mask| ValueSubset { modulus: p, mask })
                .collect())
        }
        Variant::General => {
            if p > 20 {
                return Err(Error::Capacity {
                    what: "general subset list",
                    needed: format!("2^{p} - 2 subsets"),
                    limit: "alphabets of at most 20 symbols".into(),
                });
            }
            Ok((1..full_mask(p))
                .map(|mask| ValueSubset { modulus: p, mask })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: u8, xs: &[u8]) -> ValueSubset {
        ValueSubset::from_elements(p, xs).unwrap()
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(set(3, &[0, 1]).indicator(0), Ok(0));
        assert_eq!(set(3, &[0, 1]).indicator(2), Ok(1));
        assert_eq!(set(5, &[3, 4]).indicator(2), Ok(1));
        assert!(matches!(set(3, &[0]).indicator(3), Err(Error::Domain(_))));
    }

    #[test]
    fn interval_examples() {
        assert!(set(3, &[0, 1]).is_interval());
        assert!(set(3, &[2]).is_interval());
        assert!(!set(3, &[1]).is_interval());
        // brute force: neither {1} nor {0,2} equals any prefix {0..j}
        let prefixes: Vec<ValueSubset> = (0..2u8)
            .map(|j| set(3, &(0..=j).collect::<Vec<_>>()))
            .collect();
        let s = set(3, &[1]);
        assert!(!prefixes.contains(&s) && !prefixes.contains(&s.complement()));
    }

    #[test]
    fn subset_enumeration_examples() {
        let iv = enumerate_subsets(3, Variant::Interval).unwrap();
        let expect = [set(3, &[0]), set(3, &[0, 1]), set(3, &[2]), set(3, &[1, 2])];
        let mut sorted = expect.to_vec();
        sorted.sort_by_key(|s| s.mask());
        assert_eq!(iv, sorted);
        assert_eq!(enumerate_subsets(3, Variant::General).unwrap().len(), 6);
        let a = enumerate_subsets(2, Variant::Interval).unwrap();
        let b = enumerate_subsets(2, Variant::General).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, vec![set(2, &[0]), set(2, &[1])]);
    }

    #[test]
    fn subset_counts_and_interval_symmetry() {
        for p in [2u8, 3, 5, 7] {
            let iv = enumerate_subsets(p, Variant::Interval).unwrap();
            let gen = enumerate_subsets(p, Variant::General).unwrap();
            assert_eq!(iv.len(), 2 * (p as usize - 1));
            assert_eq!(gen.len(), (1usize << p) - 2);
            assert!(iv.windows(2).all(|w| w[0].mask() < w[1].mask()));
            for s in &gen {
                assert_eq!(s.is_interval(), s.complement().is_interval());
                assert_eq!(s.complement().complement(), *s);
                for x in 0..p {
                    assert_eq!(
                        s.indicator(x).unwrap() + s.complement().indicator(x).unwrap(),
                        1
                    );
                }
            }
            assert_eq!(gen.iter().filter(|s| s.is_interval()).count(), iv.len());
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f3.add(2, 2), Ok(1));
        assert_eq!(f3.mul(2, 2), Ok(1));
        assert_eq!(f5.sub(0, 1), Ok(4));
        assert_eq!(f5.inv(2), Ok(3));
        let f4 = FieldSpec::cardinality(4).unwrap();
        assert!(matches!(f4.add(1, 1), Err(Error::UnsupportedMode(_))));
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(17).is_err());
        assert!(FieldSpec::cardinality(6).is_err());
    }

    #[test]
    fn prime_power_detection() {
        let pp: Vec<u64> = (0..33).filter(|&q| is_prime_power(q)).collect();
        assert_eq!(
            pp,
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]
        );
    }

    #[test]
    fn subset_text_round_trip() {
        let s = ValueSubset::parse(5, "{0, 3,4}").unwrap();
        assert_eq!(s.to_string(), "{0,3,4}");
        assert_eq!(ValueSubset::parse(5, &s.to_string()), Ok(s));
        assert!(ValueSubset::parse(3, "{0,1,2}").is_err());
        assert!(ValueSubset::parse(3, "{}").is_err());
        assert!(ValueSubset::parse(3, "0,1").is_err());
    }

    #[test]
    fn full_width_alphabet() {
        let s = ValueSubset::from_mask(64, 1).unwrap();
        assert_eq!(s.complement().len(), 63);
        assert!(s.is_interval());
        assert_eq!(enumerate_subsets(64, Variant::Interval).unwrap().len(), 126);
    }
}
