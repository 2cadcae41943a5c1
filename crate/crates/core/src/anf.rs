//! Zhegalkin polynomials (algebraic normal form) of Boolean functions.
//!
//! Every Boolean function has a unique multilinear polynomial over GF(2); a
//! variable is essential iff it occurs in it. Conversion in both directions
//! is the in-place GF(2) subset-sum butterfly, `O(n 2^n)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{table_len, FiniteFunction, VariableIndex};

/// Largest arity a [`Monomial`] can hold.
pub const MAX_ANF_ARITY: usize = 32;

/// A product of distinct variables; the empty product is the constant `1`.
///
/// Bit `t - 1` is set iff `x_t` occurs. Ordered by descending degree, then
/// lexicographically by variable list, which is the printing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        vars.into_iter().try_fold(Self::ONE, |m, t| {
            if t == 0 || t > MAX_ANF_ARITY {
                Err(Error::IndexOutOfRange { index: t, arity: MAX_ANF_ARITY })
            } else {
                Ok(Monomial(m.0 | 1 << (t - 1)))
            }
        })
    }

    pub fn from_mask(mask: u32) -> Self {
        Monomial(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: VariableIndex) -> bool {
        i.get() <= MAX_ANF_ARITY && self.0 & (1 << (i.get() - 1)) != 0
    }

    /// Variables in increasing order.
    pub fn variables(self) -> Vec<VariableIndex> {
        (0..MAX_ANF_ARITY).filter(|&b| self.0 & (1 << b) != 0).map(|b| VariableIndex::new(b + 1)).collect()
    }

    /// Highest variable index, 0 for the constant monomial.
    fn max_variable(self) -> usize {
        (u32::BITS - self.0.leading_zeros()) as usize
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            // reversing bits turns lexicographic order of sorted index lists
            // into reverse numeric order for sets of equal size
            other.0.reverse_bits().cmp(&self.0.reverse_bits())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let names: Vec<String> = self.variables().iter().map(ToString::to_string).collect();
        f.write_str(&names.join("*"))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.variables())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ZhegalkinPolynomial {
    arity: usize,
    monomials: BTreeSet<Monomial>,
}

impl ZhegalkinPolynomial {
    pub fn zero(arity: usize) -> Self {
        Self { arity, monomials: BTreeSet::new() }
    }

    /// Builds a polynomial from monomials given as 1-based variable lists.
    /// Repeated monomials cancel in pairs.
    pub fn from_monomials<I, M>(arity: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = M>,
        M: IntoIterator<Item = usize>,
    {
        if arity == 0 || arity > MAX_ANF_ARITY {
            return Err(Error::InvalidParameter(format!("polynomial arity must be in 1..={MAX_ANF_ARITY}")));
        }
        let mut p = Self::zero(arity);
        for m in monomials {
            let m = Monomial::new(m)?;
            if m.max_variable() > arity {
                return Err(Error::IndexOutOfRange { index: m.max_variable(), arity });
            }
            p.toggle(m);
        }
        Ok(p)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Monomials in printing order.
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.monomials.iter().copied()
    }

    /// Number of monomials.
    pub fn num_terms(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.monomials.contains(&m)
    }

    /// Constant term `c`.
    pub fn constant_term(&self) -> u32 {
        u32::from(self.monomials.contains(&Monomial::ONE))
    }

    /// Largest monomial degree; 0 for constants, including the zero polynomial.
    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn occurs(&self, i: VariableIndex) -> Result<bool> {
        i.position(self.arity)?;
        Ok(self.monomials.iter().any(|m| m.contains(i)))
    }

    /// Union of the variables of all monomials.
    pub fn occurring_mask(&self) -> u32 {
        self.monomials.iter().fold(0, |acc, m| acc | m.0)
    }

    pub fn occurring_variables(&self) -> Vec<VariableIndex> {
        Monomial(self.occurring_mask()).variables()
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, actual: point.len() });
        }
        let support = point.iter().enumerate().try_fold(0u32, |acc, (t, &x)| match x {
            0 => Ok(acc),
            1 => Ok(acc | 1 << t),
            _ => Err(Error::ValueOutOfRange { value: x, bound: 2 }),
        })?;
        Ok(self.monomials.iter().filter(|m| m.0 & !support == 0).count() as u32 & 1)
    }
}

impl fmt::Display for ZhegalkinPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        for (t, m) in self.monomials.iter().enumerate() {
            if t > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Row index of the point whose support is `m` (x1 most significant).
fn row_of(m: u32, n: usize) -> usize {
    (0..n).filter(|&b| m & (1 << b) != 0).fold(0, |row, b| row | 1 << (n - 1 - b))
}

fn monomial_of(row: usize, n: usize) -> Monomial {
    Monomial((0..n).filter(|&b| row & (1 << (n - 1 - b)) != 0).fold(0, |m, b| m | 1 << b))
}

/// GF(2) subset-sum butterfly; its own inverse.
fn butterfly(values: &mut [u8]) {
    let mut half = 1;
    while half < values.len() {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
        half *= 2;
    }
}

pub fn to_anf(f: &FiniteFunction) -> Result<ZhegalkinPolynomial> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean { k: f.domain_size(), b: f.codomain_size() });
    }
    let n = f.arity();
    if n > MAX_ANF_ARITY {
        return Err(Error::InvalidParameter(format!("arity {n} exceeds {MAX_ANF_ARITY}")));
    }
    let mut coeffs: Vec<u8> = f.table().iter().map(|&v| v as u8).collect();
    butterfly(&mut coeffs);
    let monomials = coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(row, _)| monomial_of(row, n)).collect();
    Ok(ZhegalkinPolynomial { arity: n, monomials })
}

pub fn from_anf(p: &ZhegalkinPolynomial) -> Result<FiniteFunction> {
    let n = p.arity;
    let mut values = vec![0u8; table_len(2, n)?];
    for m in &p.monomials {
        values[row_of(m.0, n)] = 1;
    }
    butterfly(&mut values);
    Ok(FiniteFunction::from_parts_unchecked(2, 2, n, values.into_iter().map(u32::from).collect()))
}

/// `p_{i<-j}`: substitutes `x_i := x_j` and cancels repeated monomials.
pub fn anf_identify(p: &ZhegalkinPolynomial, i: VariableIndex, j: VariableIndex) -> Result<ZhegalkinPolynomial> {
    let pi = i.position(p.arity)?;
    let pj = j.position(p.arity)?;
    if pi == pj {
        return Err(Error::SameIndex(i.get()));
    }
    let mut out = ZhegalkinPolynomial::zero(p.arity);
    for m in &p.monomials {
        let mapped = if m.0 & (1 << pi) != 0 { (m.0 & !(1 << pi)) | 1 << pj } else { m.0 };
        out.toggle(Monomial(mapped));
    }
    Ok(out)
}
