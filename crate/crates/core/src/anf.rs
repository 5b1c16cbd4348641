//! Algebraic normal form over `F_p` by tensor-product Lagrange interpolation.

use std::collections::BTreeMap;
use std::fmt;

use crate::table::TruthTable;

/// `f = sum a_k x_1^k_1 .. x_n^k_n` with `0 <= k_i <= p-1`; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfPolynomial {
    p: u8,
    arity: usize,
    terms: BTreeMap<Vec<u8>, u8>,
}

fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// `m[k][a]`: coefficient of `x^k` in the Lagrange basis polynomial of node `a`.
fn lagrange_matrix(p: u8) -> Vec<Vec<u32>> {
    let p = p as u32;
    let mut m = vec![vec![0u32; p as usize]; p as usize];
    for a in 0..p {
        // prod_{b != a} (x - b), low degree first
        let mut poly = vec![1u32];
        let mut denom = 1u32;
        for b in (0..p).filter(|&b| b != a) {
            let mut next = vec![0u32; poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k + 1] = (next[k + 1] + c) % p;
                next[k] = (next[k] + c * (p - b)) % p;
            }
            poly = next;
            denom = denom * ((a + p - b) % p) % p;
        }
        let inv = pow_mod(denom, p - 2, p);
        for (k, &c) in poly.iter().enumerate() {
            m[k][a as usize] = c * inv % p;
        }
    }
    m
}

pub(crate) fn interpolate(table: &TruthTable) -> AnfPolynomial {
    let p = table.modulus();
    let n = table.arity();
    let m = lagrange_matrix(p);
    let pu = p as usize;
    let mut coeffs: Vec<u32> = table.values().iter().map(|&v| v as u32).collect();
    // transform one axis at a time; axis i has stride p^(n-1-i)
    for axis in 0..n {
        let stride = pu.pow((n - 1 - axis) as u32);
        let block = stride * pu;
        for start in (0..coeffs.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                let ys: Vec<u32> = (0..pu).map(|a| coeffs[base + a * stride]).collect();
                for (k, row) in m.iter().enumerate() {
                    let c = row.iter().zip(&ys).map(|(w, y)| w * y).sum::<u32>() % p as u32;
                    coeffs[base + k * stride] = c;
                }
            }
        }
    }
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(idx, &c)| (table.point_of(idx), c as u8))
        .collect();
    AnfPolynomial { p, arity: n, terms }
}

impl AnfPolynomial {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `(exponents, coefficient)` pairs in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], u8)> + '_ {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u8]) -> u8 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Largest total degree of a stored term, 0 for constants.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Variables with a positive exponent in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn evaluate(&self, point: &[u8]) -> u8 {
        assert_eq!(point.len(), self.arity, "point arity");
        let p = self.p as u32;
        let sum = self.terms.iter().fold(0u32, |acc, (e, &c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(c as u32, |m, (&k, &x)| m * pow_mod(x as u32, k as u32, p) % p);
            (acc + mono) % p
        });
        sum as u8
    }
}

impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first reads more naturally
        for (i, (e, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| match k {
                    1 => format!("x{}", v + 1),
                    _ => format!("x{}^{}", v + 1, k),
                })
                .collect();
            match (c, vars.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                (c, false) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}
