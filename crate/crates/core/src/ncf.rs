//! Nested canalizing functions: piecewise and layered construction,
//! recognition by peeling maximal canalizing sets, layer numbers, and
//! permutation equivalence.
//!
//! A layered structure describes
//!
//! ```text
//! f = M_1 (M_2 ( .. (M_{r-1} (B_{r+1} M_r + B_r) + B_{r-1}) .. ) + B_2) + B_1
//! ```
//!
//! where `M_i` is the product of the indicators `Q_S(x)` of the variables
//! in layer `i`. Every NCF has exactly one such description once two
//! conventions are fixed: entries inside a layer are sorted by variable,
//! and a last layer holding a single variable uses the set containing 0
//! (the other orientation `-B_{r+1} Q_{S^c} + (B_r + B_{r+1})` describes
//! the same function).

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, ValueSubset, Variant};
use crate::table::{Profile, TruthTable};

/// Arity cap for the exhaustive permutation search.
pub const MAX_EXHAUSTIVE_ARITY: usize = 8;

fn check_variant_sets<'a>(
    p: u8,
    variant: Variant,
    sets: impl IntoIterator<Item = &'a ValueSubset>,
) -> std::result::Result<(), String> {
    for s in sets {
        if s.modulus() != p {
            return Err(format!("set {s} is over an alphabet of size {}, not {p}", s.modulus()));
        }
        if !variant.admits(s) {
            return Err(format!("set {s} is not an interval"));
        }
    }
    Ok(())
}

/// The case-table description: output `b_j` for the first `j` with
/// `x_{order[j]}` in `sets[j]`, and `b_{n+1}` when every test fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseSpec {
    field: FieldSpec,
    variant: Variant,
    order: Vec<usize>,
    sets: Vec<ValueSubset>,
    outputs: Vec<u8>,
}

impl PiecewiseSpec {
    pub fn new(
        field: FieldSpec,
        variant: Variant,
        order: Vec<usize>,
        sets: Vec<ValueSubset>,
        outputs: Vec<u8>,
    ) -> Result<Self> {
        let p = field.modulus()?;
        let n = order.len();
        let invalid = |m: String| Err(Error::InvalidSpec(m));
        if n == 0 {
            return invalid("at least one variable is required".into());
        }
        if sets.len() != n || outputs.len() != n + 1 {
            return invalid(format!(
                "{n} variables need {n} sets and {} outputs, got {} and {}",
                n + 1,
                sets.len(),
                outputs.len()
            ));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return invalid("variable order is not a permutation".into());
            }
        }
        if let Some(&b) = outputs.iter().find(|&&b| b >= p) {
            return invalid(format!("output {b} is not below {p}"));
        }
        if outputs[n - 1] == outputs[n] {
            return invalid("the last two outputs must differ".into());
        }
        check_variant_sets(p, variant, &sets).map_err(Error::InvalidSpec)?;
        Ok(PiecewiseSpec {
            field,
            variant,
            order,
            sets,
            outputs,
        })
    }

    pub fn arity(&self) -> usize {
        self.order.len()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn sets(&self) -> &[ValueSubset] {
        &self.sets
    }

    pub fn outputs(&self) -> &[u8] {
        &self.outputs
    }

    pub fn build(&self) -> TruthTable {
        let n = self.arity();
        TruthTable::from_fn(self.field, n, |x| {
            self.order
                .iter()
                .zip(&self.sets)
                .position(|(&v, s)| s.contains(x[v]))
                .map_or(self.outputs[n], |j| self.outputs[j])
        })
        .expect("validated spec")
    }

    /// Complements the last set and swaps the last two outputs; the
    /// described function is unchanged.
    pub fn flip(&self) -> PiecewiseSpec {
        let n = self.arity();
        let mut out = self.clone();
        out.sets[n - 1] = self.sets[n - 1].complement();
        out.outputs.swap(n - 1, n);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayerEntry {
    pub variable: usize,
    pub set: ValueSubset,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayerStructure {
    field: FieldSpec,
    variant: Variant,
    arity: usize,
    layers: Vec<Vec<LayerEntry>>,
    constants: Vec<u8>,
}

impl LayerStructure {
    /// Validates and sorts each layer by variable. `constants` holds
    /// `B_1, .., B_{r+1}`.
    pub fn new(
        field: FieldSpec,
        variant: Variant,
        mut layers: Vec<Vec<LayerEntry>>,
        constants: Vec<u8>,
    ) -> Result<Self> {
        let p = field.modulus()?;
        let invalid = |m: String| Err(Error::InvalidStructure(m));
        let r = layers.len();
        if r == 0 || layers.iter().any(|l| l.is_empty()) {
            return invalid("layers must be present and nonempty".into());
        }
        if constants.len() != r + 1 {
            return invalid(format!("{r} layers need {} constants, got {}", r + 1, constants.len()));
        }
        if let Some(&c) = constants.iter().find(|&&c| c >= p) {
            return invalid(format!("constant {c} is not below {p}"));
        }
        if constants[1..].contains(&0) {
            return invalid("B_2 .. B_{r+1} must be nonzero".into());
        }
        let arity: usize = layers.iter().map(Vec::len).sum();
        let mut seen = vec![false; arity];
        for e in layers.iter().flatten() {
            if e.variable >= arity || std::mem::replace(&mut seen[e.variable], true) {
                return invalid("layer variables must partition x1..xn".into());
            }
        }
        check_variant_sets(p, variant, layers.iter().flatten().map(|e| &e.set))
            .map_err(Error::InvalidStructure)?;
        if r >= 2 && layers[r - 1].len() == 1 && (constants[r - 1] + constants[r]).is_multiple_of(p) {
            return invalid("a single-variable last layer needs B_r + B_{r+1} != 0".into());
        }
        for layer in &mut layers {
            layer.sort_by_key(|e| e.variable);
        }
        Ok(LayerStructure {
            field,
            variant,
            arity,
            layers,
            constants,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn modulus(&self) -> u8 {
        self.field.modulus().expect("prime field")
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Layer number `r`.
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<LayerEntry>] {
        &self.layers
    }

    /// `B_1, .., B_{r+1}`.
    pub fn constants(&self) -> &[u8] {
        &self.constants
    }

    /// Layer sizes `k_1, .., k_r`.
    pub fn composition(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// Unary structures fall outside the two-or-more-variable theory and
    /// are accepted as an extension.
    pub fn is_extension(&self) -> bool {
        self.arity == 1
    }

    /// Canalized outputs per layer, `b_i = B_1 + .. + B_i`, for `i = 1..r+1`.
    pub fn layer_outputs(&self) -> Vec<u8> {
        let p = self.modulus();
        self.constants
            .iter()
            .scan(0u8, |acc, &b| {
                *acc = (*acc + b) % p;
                Some(*acc)
            })
            .collect()
    }

    /// The equivalent case table, variables taken layer by layer.
    pub fn expansion(&self) -> PiecewiseSpec {
        let outs = self.layer_outputs();
        let entries = self.layers.iter().flatten();
        let order = entries.clone().map(|e| e.variable).collect();
        let sets = entries.map(|e| e.set).collect();
        let mut outputs: Vec<u8> = self
            .layers
            .iter()
            .zip(&outs)
            .flat_map(|(l, &b)| std::iter::repeat_n(b, l.len()))
            .collect();
        outputs.push(outs[self.layers.len()]);
        PiecewiseSpec::new(self.field, self.variant, order, sets, outputs)
            .expect("a valid structure expands to a valid spec")
    }

    /// Pointwise evaluation of the nested indicator expression.
    pub fn evaluate(&self, point: &[u8]) -> u8 {
        let p = self.modulus() as u32;
        let r = self.layers.len();
        let product = |layer: &[LayerEntry]| -> u32 {
            layer.iter().map(|e| (!e.set.contains(point[e.variable])) as u32).product()
        };
        let c = |i: usize| self.constants[i] as u32;
        let mut acc = (c(r) * product(&self.layers[r - 1]) + c(r - 1)) % p;
        for i in (0..r - 1).rev() {
            acc = (product(&self.layers[i]) * acc + c(i)) % p;
        }
        acc as u8
    }

    pub fn build(&self) -> TruthTable {
        TruthTable::from_fn(self.field, self.arity, |x| self.evaluate(x)).expect("valid structure")
    }

    fn needs_flip(&self) -> bool {
        let last = &self.layers[self.layers.len() - 1];
        last.len() == 1 && !last[0].set.contains(0)
    }

    pub fn is_canonical(&self) -> bool {
        !self.needs_flip()
    }

    /// Orients a single-variable last layer so its set contains 0.
    pub fn canonical(&self) -> LayerStructure {
        if !self.needs_flip() {
            return self.clone();
        }
        let p = self.modulus();
        let r = self.layers.len();
        let mut out = self.clone();
        let last = &mut out.layers[r - 1][0];
        last.set = last.set.complement();
        out.constants[r - 1] = (self.constants[r - 1] + self.constants[r]) % p;
        out.constants[r] = (p - self.constants[r]) % p;
        out
    }

    /// The structure of the subfunction left once every first-layer
    /// variable misses its set; `None` for a single layer.
    pub fn without_first_layer(&self) -> Option<(Vec<usize>, LayerStructure)> {
        if self.layers.len() < 2 {
            return None;
        }
        let p = self.modulus();
        let mut remaining: Vec<usize> = self.layers[1..]
            .iter()
            .flatten()
            .map(|e| e.variable)
            .collect();
        remaining.sort_unstable();
        let rename = |v: usize| remaining.binary_search(&v).expect("remaining variable");
        let layers = self.layers[1..]
            .iter()
            .map(|l| {
                l.iter()
                    .map(|e| LayerEntry {
                        variable: rename(e.variable),
                        set: e.set,
                    })
                    .collect()
            })
            .collect();
        let mut constants = self.constants[1..].to_vec();
        constants[0] = (self.constants[0] + self.constants[1]) % p;
        let inner = LayerStructure::new(self.field, self.variant, layers, constants)
            .expect("suffix of a valid structure");
        Some((remaining, inner))
    }

    pub fn class_key(&self) -> ClassKey {
        let c = self.canonical();
        ClassKey {
            variant: c.variant,
            p: c.modulus(),
            arity: c.arity,
            layers: c
                .layers
                .iter()
                .map(|l| l.iter().map(|e| e.set.mask()).sorted().collect())
                .collect(),
            constants: c.constants.clone(),
        }
    }

    /// Parses the textual form produced by `Display`.
    pub fn parse(text: &str, p: u8) -> Result<LayerStructure> {
        Self::parse_numbered(text.lines().enumerate().map(|(i, l)| (i + 1, l)), p)
    }

    fn parse_numbered<'a>(lines: impl Iterator<Item = (usize, &'a str)>, p: u8) -> Result<LayerStructure> {
        let field = FieldSpec::prime(p as u64)?;
        let mut layers: Vec<Vec<LayerEntry>> = Vec::new();
        let mut constants: Option<Vec<u8>> = None;
        let mut variant: Option<Variant> = None;
        let mut last_line = 0;
        for (line_no, raw) in lines {
            let line = raw.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            last_line = line_no;
            let err = |col: usize, m: String| Error::parse(line_no, col, m);
            if let Some(rest) = line.strip_prefix("layer ") {
                if constants.is_some() || variant.is_some() {
                    return Err(err(1, "layer line after B or variant".into()));
                }
                let (num, body) = rest
                    .split_once(':')
                    .ok_or_else(|| err(7, "expected \"layer i:\"".into()))?;
                if num.trim().parse::<usize>().ok() != Some(layers.len() + 1) {
                    return Err(err(7, format!("expected layer {}", layers.len() + 1)));
                }
                let body_col = line.len() - body.len() + 1;
                layers.push(parse_layer_entries(body, p).map_err(|(c, m)| err(body_col + c, m))?);
            } else if let Some(rest) = line.strip_prefix("B: ") {
                if constants.is_some() {
                    return Err(err(1, "duplicate B line".into()));
                }
                let mut cs = Vec::new();
                for tok in rest.split(',') {
                    let v: u8 = tok
                        .trim()
                        .parse()
                        .map_err(|_| err(4, format!("bad constant {tok:?}")))?;
                    cs.push(v);
                }
                constants = Some(cs);
            } else if let Some(rest) = line.strip_prefix("variant: ") {
                if variant.is_some() {
                    return Err(err(1, "duplicate variant line".into()));
                }
                variant = Some(rest.trim().parse().map_err(|e: Error| err(10, e.to_string()))?);
            } else {
                return Err(err(1, format!("unrecognized line {line:?}")));
            }
        }
        let end = last_line + 1;
        let constants = constants.ok_or_else(|| Error::parse(end, 1, "missing B line"))?;
        let variant = variant.ok_or_else(|| Error::parse(end, 1, "missing variant line"))?;
        LayerStructure::new(field, variant, layers, constants)
            .map_err(|e| Error::parse(last_line.max(1), 1, e.to_string()))
    }

    /// Blank-line separated blocks.
    pub fn parse_many(text: &str, p: u8) -> Result<Vec<LayerStructure>> {
        let mut out = Vec::new();
        let mut offset = 0;
        let lines: Vec<&str> = text.lines().collect();
        while offset < lines.len() {
            let end = lines[offset..]
                .iter()
                .position(|l| l.trim().is_empty())
                .map_or(lines.len(), |k| offset + k);
            let block = &lines[offset..end];
            if block.iter().any(|l| !l.trim_start().starts_with('#')) {
                let numbered = block.iter().enumerate().map(|(i, l)| (offset + i + 1, *l));
                out.push(LayerStructure::parse_numbered(numbered, p)?);
            }
            offset = end + 1;
        }
        Ok(out)
    }
}

/// Entries like `(x1,{0}) (x3,{1,2})`; errors carry a 0-based column offset.
fn parse_layer_entries(body: &str, p: u8) -> std::result::Result<Vec<LayerEntry>, (usize, String)> {
    let mut out = Vec::new();
    let mut rest = body;
    loop {
        let trimmed = rest.trim_start();
        let col = body.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let inner_end = trimmed
            .find(')')
            .ok_or_else(|| (col, "unterminated entry".to_string()))?;
        let inner = trimmed[..inner_end]
            .strip_prefix("(x")
            .ok_or_else(|| (col, "expected \"(x\"".to_string()))?;
        let (var, set) = inner
            .split_once(',')
            .ok_or_else(|| (col, "expected \"(xi,{..})\"".to_string()))?;
        let var: usize = var
            .trim()
            .parse()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(|| (col, format!("bad variable {var:?}")))?;
        let set = ValueSubset::parse(p, set).map_err(|e| (col, e.to_string()))?;
        out.push(LayerEntry { variable: var - 1, set });
        rest = &trimmed[inner_end + 1..];
    }
    if out.is_empty() {
        return Err((0, "empty layer".into()));
    }
    Ok(out)
}

impl fmt::Display for LayerStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, layer) in self.layers.iter().enumerate() {
            write!(f, "layer {}:", i + 1)?;
            for e in layer {
                write!(f, " (x{},{})", e.variable + 1, e.set)?;
            }
            writeln!(f)?;
        }
        writeln!(f, "B: {}", self.constants.iter().join(","))?;
        writeln!(f, "variant: {}", self.variant)
    }
}

/// Structure data left once variable names are forgotten: per layer the
/// multiset of canalizing sets, plus the constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub variant: Variant,
    pub p: u8,
    pub arity: usize,
    /// Sorted set masks per layer; `layers.len()` is the layer number.
    pub layers: Vec<Vec<u64>>,
    pub constants: Vec<u8>,
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:p={}:n={}:r={}", self.variant, self.p, self.arity, self.layers.len())?;
        for layer in &self.layers {
            let sets = layer.iter().map(|&m| {
                ValueSubset::from_mask(self.p, m).expect("stored masks are valid").to_string()
            });
            write!(f, ":[{}]", sets.format(""))?;
        }
        write!(f, ":B={}", self.constants.iter().join(","))
    }
}

/// Recognizes `table` as an NCF of the given variant and returns its
/// canonical structure.
///
/// Peels one layer at a time: the layer's variables are exactly the
/// canalizing variables of the current subfunction (with maximal sets),
/// and the next subfunction is the collapse over their complements.
pub fn recognize(table: &TruthTable, variant: Variant) -> Option<LayerStructure> {
    let n = table.arity();
    if n == 0 || table.is_constant() || table.essential_variables().len() != n {
        return None;
    }
    let p = table.modulus();
    let mut current = table.clone();
    let mut names: Vec<usize> = (0..n).collect();
    let mut layers: Vec<Vec<LayerEntry>> = Vec::new();
    let mut outputs: Vec<u8> = Vec::new();
    let last_output;
    loop {
        if current.arity() == 1 {
            let vals = current.values();
            let first = vals[0];
            let other = *vals.iter().find(|&&v| v != first)?;
            if vals.iter().any(|&v| v != first && v != other) {
                return None;
            }
            let mask = vals
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == first)
                .fold(0u64, |m, (a, _)| m | 1 << a);
            let set = ValueSubset::from_mask(p, mask).ok()?;
            if !variant.admits(&set) {
                return None;
            }
            let var = names[0];
            match outputs.last() {
                // the variable also canalizes to the previous output and
                // belongs to that layer
                Some(&prev) if prev == first || prev == other => {
                    let (set, rest) = if prev == first {
                        (set, other)
                    } else {
                        (set.complement(), first)
                    };
                    layers.last_mut()?.push(LayerEntry { variable: var, set });
                    last_output = rest;
                }
                _ => {
                    layers.push(vec![LayerEntry { variable: var, set }]);
                    outputs.push(first);
                    last_output = other;
                }
            }
            break;
        }
        let Profile::NonConstant(profile) = current.canalizing_profile() else {
            return None;
        };
        let canalizing: Vec<_> = profile.canalizing_variables().collect();
        let (_, first) = canalizing.first()?;
        let output = first.output;
        if outputs.last() == Some(&output) {
            return None;
        }
        if canalizing.iter().any(|(_, e)| e.output != output || !variant.admits(&e.set)) {
            return None;
        }
        let region: Vec<_> = canalizing.iter().map(|&(i, e)| (i, e.set.complement())).collect();
        let residual = current.collapse_region(&region).ok()??;
        layers.push(
            canalizing
                .iter()
                .map(|&(i, e)| LayerEntry {
                    variable: names[i],
                    set: e.set,
                })
                .collect(),
        );
        outputs.push(output);
        names.retain({
            let taken: Vec<usize> = canalizing.iter().map(|&(i, _)| names[i]).collect();
            move |v| !taken.contains(v)
        });
        if residual.arity() == 0 {
            last_output = residual.values()[0];
            if last_output == output {
                return None;
            }
            break;
        }
        current = residual;
    }
    outputs.push(last_output);
    let constants: Vec<u8> = std::iter::once(outputs[0])
        .chain(outputs.windows(2).map(|w| (w[1] + p - w[0]) % p))
        .collect();
    let structure = LayerStructure::new(table.field(), variant, layers, constants).ok()?;
    (structure.build() == *table).then(|| structure.canonical())
}

/// Layer sizes read off a canalized-output sequence `b_1, .., b_{n+1}`:
/// maximal runs of equal values among `b_1..b_n`. A trailing single-value
/// run that returns to the previous run's value is merged into it, as the
/// last variable then canalizes with the complementary set. `None` when
/// `b_n = b_{n+1}` or the sequence is too short.
pub fn layers_from_beta(beta: &[u8]) -> Option<Vec<usize>> {
    let n = beta.len().checked_sub(1).filter(|&n| n >= 1)?;
    if beta[n - 1] == beta[n] {
        return None;
    }
    let mut runs: Vec<(u8, usize)> = Vec::new();
    for &b in &beta[..n] {
        match runs.last_mut() {
            Some((v, len)) if *v == b => *len += 1,
            _ => runs.push((b, 1)),
        }
    }
    let r = runs.len();
    if r >= 2 && runs[r - 1].1 == 1 && runs[r - 2].0 == beta[n] {
        runs.pop();
        runs[r - 2].1 += 1;
    }
    Some(runs.into_iter().map(|(_, len)| len).collect())
}

fn check_same_shape(a: &TruthTable, b: &TruthTable) -> Result<()> {
    if a.modulus() != b.modulus() || a.arity() != b.arity() {
        return Err(Error::domain(format!(
            "tables differ in shape: F_{}^{} vs F_{}^{}",
            a.modulus(),
            a.arity(),
            b.modulus(),
            b.arity()
        )));
    }
    Ok(())
}

/// Searches every variable permutation for one carrying `b` onto `a`.
pub fn permutation_equivalent_exhaustive(a: &TruthTable, b: &TruthTable) -> Result<bool> {
    check_same_shape(a, b)?;
    let n = a.arity();
    if n > MAX_EXHAUSTIVE_ARITY {
        return Err(Error::Capacity {
            what: "exhaustive permutation search",
            needed: format!("{n}! permutations"),
            limit: format!("arity {MAX_EXHAUSTIVE_ARITY}"),
        });
    }
    let histogram = |t: &TruthTable| {
        let mut h = [0usize; 256];
        t.values().iter().for_each(|&v| h[v as usize] += 1);
        h
    };
    if histogram(a) != histogram(b) {
        return Ok(false);
    }
    for sigma in (0..n).permutations(n) {
        if b.permute(&sigma)? == *a {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Decides permutation equivalence. NCF pairs compare class keys; other
/// pairs fall back to the exhaustive search.
pub fn permutation_equivalent(a: &TruthTable, b: &TruthTable) -> Result<bool> {
    check_same_shape(a, b)?;
    match (recognize(a, Variant::General), recognize(b, Variant::General)) {
        (Some(x), Some(y)) => Ok(x.class_key() == y.class_key()),
        (Some(_), None) | (None, Some(_)) => Ok(false),
        (None, None) => permutation_equivalent_exhaustive(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn s(p: u8, xs: &[u8]) -> ValueSubset {
        ValueSubset::from_elements(p, xs).unwrap()
    }

    fn e(variable: usize, set: ValueSubset) -> LayerEntry {
        LayerEntry { variable, set }
    }

    fn and2() -> TruthTable {
        TruthTable::new(f(2), 2, vec![0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn piecewise_examples() {
        let id = PiecewiseSpec::new(f(2), Variant::Interval, vec![0], vec![s(2, &[0])], vec![0, 1])
            .unwrap()
            .build();
        assert_eq!(id.values(), &[0, 1]);
        let and = PiecewiseSpec::new(
            f(2),
            Variant::Interval,
            vec![0, 1],
            vec![s(2, &[0]), s(2, &[0])],
            vec![0, 0, 1],
        )
        .unwrap()
        .build();
        assert_eq!(and, and2());
        let t = PiecewiseSpec::new(
            f(3),
            Variant::Interval,
            vec![0, 1],
            vec![s(3, &[0, 1]), s(3, &[2])],
            vec![1, 0, 2],
        )
        .unwrap()
        .build();
        // enumerated from the case table: rows x1 = 0, 1, 2
        assert_eq!(t.values(), &[1, 1, 1, 1, 1, 1, 2, 2, 0]);
        let bad = PiecewiseSpec::new(f(2), Variant::Interval, vec![0], vec![s(2, &[0])], vec![1, 1]);
        assert!(matches!(bad, Err(Error::InvalidSpec(_))));
        let not_interval =
            PiecewiseSpec::new(f(3), Variant::Interval, vec![0], vec![s(3, &[1])], vec![0, 1]);
        assert!(not_interval.is_err());
        assert!(PiecewiseSpec::new(f(3), Variant::General, vec![0], vec![s(3, &[1])], vec![0, 1]).is_ok());
    }

    #[test]
    fn layered_examples() {
        let and = LayerStructure::new(
            f(2),
            Variant::Interval,
            vec![vec![e(0, s(2, &[0])), e(1, s(2, &[0]))]],
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(and.build(), and2());
        let l = LayerStructure::new(
            f(3),
            Variant::Interval,
            vec![vec![e(0, s(3, &[0, 1]))], vec![e(1, s(3, &[2]))]],
            vec![1, 2, 2],
        )
        .unwrap();
        assert_eq!(l.layer_outputs(), vec![1, 0, 2]);
        assert_eq!(l.build().values(), &[1, 1, 1, 1, 1, 1, 2, 2, 0]);
        assert_eq!(l.build(), l.expansion().build());
        let zero = LayerStructure::new(f(3), Variant::Interval, vec![vec![e(0, s(3, &[0]))]], vec![1, 0]);
        assert!(matches!(zero, Err(Error::InvalidStructure(_))));
        let side = LayerStructure::new(
            f(3),
            Variant::Interval,
            vec![vec![e(0, s(3, &[0]))], vec![e(1, s(3, &[0]))]],
            vec![0, 1, 2],
        );
        assert!(side.is_err(), "k_r = 1 with B_r + B_(r+1) = 0");
        let dup = LayerStructure::new(
            f(2),
            Variant::Interval,
            vec![vec![e(0, s(2, &[0])), e(0, s(2, &[1]))]],
            vec![0, 1],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn canonical_orients_single_last_layer() {
        let l = LayerStructure::new(
            f(3),
            Variant::Interval,
            vec![vec![e(0, s(3, &[0, 1]))], vec![e(1, s(3, &[2]))]],
            vec![1, 2, 2],
        )
        .unwrap();
        assert!(!l.is_canonical());
        let c = l.canonical();
        assert!(c.is_canonical());
        assert_eq!(c.layers()[1][0].set, s(3, &[0, 1]));
        assert_eq!(c.constants(), &[1, 1, 1]);
        assert_eq!(c.build(), l.build());
        assert_eq!(recognize(&l.build(), Variant::Interval), Some(c));
    }

    #[test]
    fn recognize_examples() {
        let got = recognize(&and2(), Variant::Interval).unwrap();
        assert_eq!(got.layer_count(), 1);
        assert_eq!(got.layers()[0], vec![e(0, s(2, &[0])), e(1, s(2, &[0]))]);
        assert_eq!(got.constants(), &[0, 1]);
        let sum = TruthTable::from_fn(f(3), 2, |x| (x[0] + x[1]) % 3).unwrap();
        assert_eq!(recognize(&sum, Variant::Interval), None);
        assert_eq!(recognize(&sum, Variant::General), None);
        assert_eq!(recognize(&TruthTable::constant(f(3), 2, 1).unwrap(), Variant::General), None);
        // x2 inessential
        let x1 = TruthTable::from_fn(f(2), 2, |x| x[0]).unwrap();
        assert_eq!(recognize(&x1, Variant::General), None);
    }

    #[test]
    fn interval_variant_rejects_non_interval_sets() {
        let t = PiecewiseSpec::new(
            f(3),
            Variant::General,
            vec![1, 0],
            vec![s(3, &[1]), s(3, &[0, 2])],
            vec![2, 0, 1],
        )
        .unwrap()
        .build();
        assert_eq!(recognize(&t, Variant::Interval), None);
        let g = recognize(&t, Variant::General).unwrap();
        assert_eq!(g.build(), t);
        assert_eq!(g.composition(), vec![1, 1]);
    }

    #[test]
    fn unary_tables() {
        let t = TruthTable::new(f(3), 1, vec![2, 0, 0]).unwrap();
        let l = recognize(&t, Variant::Interval).unwrap();
        assert!(l.is_extension());
        assert_eq!(l.layers()[0], vec![e(0, s(3, &[0]))]);
        assert_eq!(l.constants(), &[2, 1]);
        assert_eq!(l.build(), t);
        let three = TruthTable::new(f(3), 1, vec![0, 1, 2]).unwrap();
        assert_eq!(recognize(&three, Variant::General), None);
        let mid = TruthTable::new(f(3), 1, vec![0, 1, 0]).unwrap();
        assert_eq!(recognize(&mid, Variant::Interval), None);
        assert!(recognize(&mid, Variant::General).is_some());
    }

    #[test]
    fn layers_from_beta_examples() {
        assert_eq!(
            layers_from_beta(&[1, 1, 1, 0, 0, 0, 2, 0, 0, 2, 2, 1]),
            Some(vec![3, 3, 1, 2, 2])
        );
        assert_eq!(layers_from_beta(&[0, 1]), Some(vec![1]));
        assert_eq!(layers_from_beta(&[1, 1]), None);
        assert_eq!(layers_from_beta(&[1]), None);
        // x2 back to b_1 canalizes into the first layer
        assert_eq!(layers_from_beta(&[0, 1, 0]), Some(vec![2]));
    }

    #[test]
    fn flip_examples() {
        let one = PiecewiseSpec::new(f(2), Variant::Interval, vec![0], vec![s(2, &[0])], vec![0, 1]).unwrap();
        let flipped = one.flip();
        assert_eq!(flipped.sets(), &[s(2, &[1])]);
        assert_eq!(flipped.outputs(), &[1, 0]);
        assert_eq!(flipped.build(), one.build());
        assert_eq!(flipped.flip(), one);
        let two = PiecewiseSpec::new(
            f(3),
            Variant::Interval,
            vec![0, 1],
            vec![s(3, &[0]), s(3, &[2])],
            vec![1, 0, 2],
        )
        .unwrap();
        let flipped = two.flip();
        assert_eq!(flipped.sets(), &[s(3, &[0]), s(3, &[0, 1])]);
        assert_eq!(flipped.outputs(), &[1, 2, 0]);
        assert_eq!(flipped.build(), two.build());
    }

    #[test]
    fn class_key_examples() {
        let key = |t: &TruthTable| recognize(t, Variant::Interval).unwrap().class_key();
        let and = and2();
        assert_eq!(key(&and), key(&and.permute(&[1, 0]).unwrap()));
        let a = TruthTable::from_fn(f(2), 2, |x| x[0] & (1 - x[1])).unwrap();
        let b = TruthTable::from_fn(f(2), 2, |x| (1 - x[0]) & x[1]).unwrap();
        assert_ne!(a, b);
        assert_eq!(key(&a), key(&b));
        let or = TruthTable::from_fn(f(2), 2, |x| x[0] | x[1]).unwrap();
        assert_ne!(key(&and), key(&or));
    }

    #[test]
    fn equivalence_examples() {
        let a = TruthTable::from_fn(f(2), 2, |x| x[0] & (1 - x[1])).unwrap();
        let b = TruthTable::from_fn(f(2), 2, |x| (1 - x[0]) & x[1]).unwrap();
        let or = TruthTable::from_fn(f(2), 2, |x| x[0] | x[1]).unwrap();
        for t in [&a, &b, &or] {
            assert_eq!(permutation_equivalent(t, t), Ok(true));
        }
        assert_eq!(permutation_equivalent(&a, &b), Ok(true));
        assert_eq!(permutation_equivalent_exhaustive(&a, &b), Ok(true));
        assert_eq!(permutation_equivalent(&and2(), &or), Ok(false));
        assert_eq!(permutation_equivalent_exhaustive(&and2(), &or), Ok(false));
        let sum = TruthTable::from_fn(f(3), 2, |x| (x[0] + 2 * x[1]) % 3).unwrap();
        let swapped = sum.permute(&[1, 0]).unwrap();
        assert_eq!(permutation_equivalent(&sum, &swapped), Ok(true));
        let three = TruthTable::constant(f(2), 3, 0).unwrap();
        assert!(matches!(permutation_equivalent(&and2(), &three), Err(Error::Domain(_))));
        let big = TruthTable::from_fn(f(2), 9, |x| x.iter().sum::<u8>() % 2).unwrap();
        assert!(matches!(permutation_equivalent(&big, &big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn text_form_round_trip() {
        let l = LayerStructure::new(
            f(3),
            Variant::Interval,
            vec![vec![e(1, s(3, &[0, 1])), e(0, s(3, &[2]))], vec![e(2, s(3, &[0]))]],
            vec![2, 1, 1],
        )
        .unwrap();
        let text = l.to_string();
        assert_eq!(text, "layer 1: (x1,{2}) (x2,{0,1})\nlayer 2: (x3,{0})\nB: 2,1,1\nvariant: interval\n");
        assert_eq!(LayerStructure::parse(&text, 3), Ok(l.clone()));
        let two = format!("# header\n{text}\n{text}");
        assert_eq!(LayerStructure::parse_many(&two, 3).unwrap(), vec![l.clone(), l]);
        assert!(matches!(
            LayerStructure::parse("layer 2: (x1,{0})\nB: 0,1\nvariant: general\n", 2),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            LayerStructure::parse("layer 1: (x1,{0})\nB: 0,1\n", 2),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            LayerStructure::parse("layer 1: (x1,{0}) (y2,{1})\nB: 0,1\nvariant: general\n", 2),
            Err(Error::Parse { line: 1, column: 19, .. })
        ));
    }
}
