//! Dense truth tables `F_p^n -> F_p`.
//!
//! Entry `i` holds `f(x_1, .., x_n)` where `i = sum x_k p^(n-k)`, so `x_1`
//! is the most significant digit. Variables are indexed from 0 in the API
//! and printed from 1 (`x1`, `x2`, ..).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, ValueSubset};

/// Upper bound on `p^n` for a single table.
pub const MAX_TABLE_ENTRIES: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    p: u8,
    arity: usize,
    values: Vec<u8>,
}

fn table_len(p: u8, arity: usize) -> Result<usize> {
    let mut len = 1usize;
    for _ in 0..arity {
        len = len
            .checked_mul(p as usize)
            .filter(|&l| l <= MAX_TABLE_ENTRIES)
            .ok_or_else(|| Error::Capacity {
                what: "truth table",
                needed: format!("{p}^{arity} entries"),
                limit: MAX_TABLE_ENTRIES.to_string(),
            })?;
    }
    Ok(len)
}

impl TruthTable {
    pub fn new(field: FieldSpec, arity: usize, values: Vec<u8>) -> Result<Self> {
        let p = field.modulus()?;
        let len = table_len(p, arity)?;
        if values.len() != len {
            return Err(Error::domain(format!(
                "table for {p}^{arity} needs {len} entries, got {}",
                values.len()
            )));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= p) {
            return Err(Error::domain(format!("entry {bad} is not below {p}")));
        }
        Ok(TruthTable { p, arity, values })
    }

    /// Tabulates `f` over every point in index order.
    pub fn from_fn(field: FieldSpec, arity: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self> {
        let p = field.modulus()?;
        let len = table_len(p, arity)?;
        let mut point = vec![0u8; arity];
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            let v = f(&point);
            if v >= p {
                return Err(Error::domain(format!("function produced {v}, not below {p}")));
            }
            values.push(v);
            increment(&mut point, p);
        }
        Ok(TruthTable { p, arity, values })
    }

    pub fn constant(field: FieldSpec, arity: usize, value: u8) -> Result<Self> {
        field.check(value)?;
        Self::from_fn(field, arity, |_| value)
    }

    pub(crate) fn from_parts(p: u8, arity: usize, values: Vec<u8>) -> Self {
        debug_assert_eq!(values.len(), (p as usize).pow(arity as u32));
        TruthTable { p, arity, values }
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::prime(self.p as u64).expect("tables are built over valid primes")
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Stride of variable `i` in the flat index.
    fn stride(&self, i: usize) -> usize {
        (self.p as usize).pow((self.arity - 1 - i) as u32)
    }

    pub fn index_of(&self, point: &[u8]) -> Result<usize> {
        if point.len() != self.arity {
            return Err(Error::domain(format!(
                "point has {} coordinates, table has arity {}",
                point.len(),
                self.arity
            )));
        }
        let mut idx = 0usize;
        for &x in point {
            if x >= self.p {
                return Err(Error::domain(format!("coordinate {x} is not below {}", self.p)));
            }
            idx = idx * self.p as usize + x as usize;
        }
        Ok(idx)
    }

    pub fn point_of(&self, mut index: usize) -> Vec<u8> {
        let mut point = vec![0u8; self.arity];
        for slot in point.iter_mut().rev() {
            *slot = (index % self.p as usize) as u8;
            index /= self.p as usize;
        }
        point
    }

    pub fn evaluate(&self, point: &[u8]) -> Result<u8> {
        Ok(self.values[self.index_of(point)?])
    }

    /// The common value if the table is constant.
    pub fn constant_value(&self) -> Option<u8> {
        let first = *self.values.first()?;
        self.values.iter().all(|&v| v == first).then_some(first)
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Variable `i` is essential iff two points differing only in `x_i`
    /// take different values.
    pub fn is_essential(&self, i: usize) -> bool {
        let stride = self.stride(i);
        let block = stride * self.p as usize;
        self.values.chunks(block).any(|chunk| {
            (0..stride).any(|offset| {
                let base = chunk[offset];
                (1..self.p as usize).any(|a| chunk[offset + a * stride] != base)
            })
        })
    }

    pub fn essential_variables(&self) -> Vec<usize> {
        (0..self.arity).filter(|&i| self.is_essential(i)).collect()
    }

    /// Fixes the listed variables; the result ranges over the rest in
    /// ascending original order.
    pub fn restrict(&self, assignment: &[(usize, u8)]) -> Result<TruthTable> {
        let mut fixed: Vec<Option<u8>> = vec![None; self.arity];
        for &(var, value) in assignment {
            if var >= self.arity {
                return Err(Error::domain(format!("variable index {var} out of range")));
            }
            if value >= self.p {
                return Err(Error::domain(format!("value {value} is not below {}", self.p)));
            }
            if fixed[var].replace(value).is_some() {
                return Err(Error::domain(format!("variable x{} assigned twice", var + 1)));
            }
        }
        let free: Vec<usize> = (0..self.arity).filter(|&i| fixed[i].is_none()).collect();
        let base: usize = fixed
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| v as usize * self.stride(i)))
            .sum();
        let strides: Vec<usize> = free.iter().map(|&i| self.stride(i)).collect();
        let len = (self.p as usize).pow(free.len() as u32);
        let mut digits = vec![0u8; free.len()];
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            let idx = base
                + digits
                    .iter()
                    .zip(&strides)
                    .map(|(&d, &s)| d as usize * s)
                    .sum::<usize>();
            values.push(self.values[idx]);
            increment(&mut digits, self.p);
        }
        Ok(TruthTable::from_parts(self.p, free.len(), values))
    }

    /// Restriction that must not depend on which admissible values the
    /// constrained variables take. `None` when it does.
    pub fn collapse_region(&self, constraints: &[(usize, ValueSubset)]) -> Result<Option<TruthTable>> {
        let mut allowed: Vec<Option<ValueSubset>> = vec![None; self.arity];
        for &(var, set) in constraints {
            if var >= self.arity {
                return Err(Error::domain(format!("variable index {var} out of range")));
            }
            if set.modulus() != self.p {
                return Err(Error::domain("constraint set over a different alphabet"));
            }
            if allowed[var].replace(set).is_some() {
                return Err(Error::domain(format!("variable x{} constrained twice", var + 1)));
            }
        }
        let free: Vec<usize> = (0..self.arity).filter(|&i| allowed[i].is_none()).collect();
        let out_len = (self.p as usize).pow(free.len() as u32);
        let mut out: Vec<Option<u8>> = vec![None; out_len];
        let mut point = vec![0u8; self.arity];
        for &v in &self.values {
            let admissible = allowed
                .iter()
                .zip(&point)
                .all(|(set, &x)| set.is_none_or(|s| s.contains(x)));
            if admissible {
                let idx = free
                    .iter()
                    .fold(0usize, |acc, &i| acc * self.p as usize + point[i] as usize);
                match out[idx] {
                    None => out[idx] = Some(v),
                    Some(seen) if seen != v => return Ok(None),
                    Some(_) => {}
                }
            }
            increment(&mut point, self.p);
        }
        let values = out
            .into_iter()
            .map(|v| v.expect("constraint sets are nonempty"))
            .collect();
        Ok(Some(TruthTable::from_parts(self.p, free.len(), values)))
    }

    /// `g(x) = f(x_{sigma(1)}, .., x_{sigma(n)})`, with `sigma` 0-based.
    pub fn permute(&self, sigma: &[usize]) -> Result<TruthTable> {
        if sigma.len() != self.arity {
            return Err(Error::domain("permutation length differs from arity"));
        }
        let mut seen = vec![false; self.arity];
        for &s in sigma {
            if s >= self.arity || std::mem::replace(&mut seen[s], true) {
                return Err(Error::domain("not a permutation"));
            }
        }
        let strides: Vec<usize> = (0..self.arity).map(|i| self.stride(i)).collect();
        let mut point = vec![0u8; self.arity];
        let mut values = Vec::with_capacity(self.values.len());
        for _ in 0..self.values.len() {
            let idx: usize = sigma
                .iter()
                .zip(&strides)
                .map(|(&s, &st)| point[s] as usize * st)
                .sum();
            values.push(self.values[idx]);
            increment(&mut point, self.p);
        }
        Ok(TruthTable::from_parts(self.p, self.arity, values))
    }

    pub fn canalizing_profile(&self) -> Profile {
        if let Some(c) = self.constant_value() {
            return Profile::Constant(c);
        }
        let mut entries = Vec::with_capacity(self.arity);
        let mut mixed = Vec::new();
        for i in 0..self.arity {
            let stride = self.stride(i);
            let block = stride * self.p as usize;
            // constant value of the slice x_i = a, if any
            let slice_constant = |a: usize| -> Option<u8> {
                let first = self.values[a * stride];
                self.values
                    .chunks(block)
                    .all(|chunk| chunk[a * stride..(a + 1) * stride].iter().all(|&v| v == first))
                    .then_some(first)
            };
            let constants: Vec<Option<u8>> = (0..self.p as usize).map(slice_constant).collect();
            // with several outputs the variable cannot nest; report the set
            // of the output reached at the smallest input
            let Some(output) = constants.iter().flatten().copied().next() else {
                entries.push(None);
                continue;
            };
            if constants.iter().flatten().any(|&c| c != output) {
                mixed.push(i);
            }
            let mask = constants
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == Some(output))
                .fold(0u64, |m, (a, _)| m | 1 << a);
            let entry = ValueSubset::from_mask(self.p, mask)
                .ok()
                .map(|set| CanalizingEntry { set, output });
            entries.push(entry);
        }
        let output = entries.iter().flatten().map(|e| e.output).next();
        debug_assert!(entries.iter().flatten().all(|e| Some(e.output) == output));
        Profile::NonConstant(CanalizingProfile {
            entries,
            output,
            mixed,
        })
    }

    pub fn to_anf(&self) -> AnfPolynomial {
        crate::anf::interpolate(self)
    }

    pub fn algebraic_degree(&self) -> usize {
        self.to_anf().degree()
    }

    /// Parses one truth-table record: `p n` then `p^n` values, with
    /// `#` comment lines allowed anywhere.
    pub fn parse(text: &str) -> Result<TruthTable> {
        parse_record(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    /// Parses blank-line separated records.
    pub fn parse_many(text: &str) -> Result<Vec<TruthTable>> {
        let mut out = Vec::new();
        let mut block: Vec<(usize, &str)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                if block.iter().any(|(_, l)| !l.trim_start().starts_with('#')) {
                    out.push(parse_record(block.drain(..))?);
                }
                block.clear();
            } else {
                block.push((i + 1, line));
            }
        }
        if block.iter().any(|(_, l)| !l.trim_start().starts_with('#')) {
            out.push(parse_record(block.into_iter())?);
        }
        Ok(out)
    }
}

fn parse_record<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<TruthTable> {
    let mut content = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let (hline, header) = content
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing header line \"p n\""))?;
    let fields = tokens(header);
    if fields.len() != 2 {
        return Err(Error::parse(hline, 1, "header must be \"p n\""));
    }
    let p: u64 = fields[0]
        .1
        .parse()
        .map_err(|_| Error::parse(hline, fields[0].0, "p is not an integer"))?;
    let n: usize = fields[1]
        .1
        .parse()
        .map_err(|_| Error::parse(hline, fields[1].0, "n is not an integer"))?;
    let field = FieldSpec::prime(p).map_err(|e| Error::parse(hline, fields[0].0, e.to_string()))?;
    let len = table_len(p as u8, n).map_err(|e| Error::parse(hline, fields[1].0, e.to_string()))?;
    let (vline, body) = content
        .next()
        .ok_or_else(|| Error::parse(hline + 1, 1, format!("missing value line ({len} entries)")))?;
    let toks = tokens(body);
    let mut values = Vec::with_capacity(len);
    for &(col, tok) in &toks {
        let v: u64 = tok
            .parse()
            .map_err(|_| Error::parse(vline, col, format!("{tok:?} is not an integer")))?;
        if v >= p {
            return Err(Error::parse(vline, col, format!("value {v} is not below {p}")));
        }
        values.push(v as u8);
    }
    if values.len() != len {
        let col = toks.get(len).map_or(body.len() + 1, |t| t.0);
        return Err(Error::parse(
            vline,
            col,
            format!("expected {len} values, found {}", values.len()),
        ));
    }
    if let Some((extra, _)) = content.next() {
        return Err(Error::parse(extra, 1, "unexpected content after value line"));
    }
    TruthTable::new(field, n, values)
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

impl fmt::Display for TruthTable {
    /// The two-line file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.p, self.arity)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        writeln!(f)
    }
}

/// Little-endian-last odometer step: the last coordinate moves fastest.
pub(crate) fn increment(point: &mut [u8], p: u8) {
    for slot in point.iter_mut().rev() {
        *slot += 1;
        if *slot < p {
            return;
        }
        *slot = 0;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanalizingEntry {
    /// Maximal set of inputs forcing the output.
    pub set: ValueSubset,
    pub output: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanalizingProfile {
    /// One slot per variable; `None` when the variable is not canalizing.
    pub entries: Vec<Option<CanalizingEntry>>,
    /// Output shared by every entry.
    pub output: Option<u8>,
    /// Variables whose constant slices disagree on the output. In arity
    /// two or more such a variable is the only one with an entry.
    pub mixed: Vec<usize>,
}

impl CanalizingProfile {
    pub fn canalizing_variables(&self) -> impl Iterator<Item = (usize, CanalizingEntry)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|e| (i, e)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Profile {
    Constant(u8),
    NonConstant(CanalizingProfile),
}

pub use crate::anf::AnfPolynomial;
