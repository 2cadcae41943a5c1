//! Explicit value tables for functions `f : A^n -> B` with `A = {0..k-1}` and
//! `B = {0..b-1}`.
//!
//! Rows are indexed in mixed radix with `x1` as the most significant digit:
//! `index = sum_t x_t * k^(n - t)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest table we are willing to allocate (entries).
pub const MAX_TABLE_LEN: usize = 1 << 28;

/// A 1-based variable position `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VariableIndex(usize);

impl VariableIndex {
    /// Panics if `i == 0`.
    pub const fn new(i: usize) -> Self {
        assert!(i >= 1, "variable indices are 1-based");
        Self(i)
    }

    pub const fn get(self) -> usize {
        self.0
    }

    /// Zero-based position, checked against `arity`.
    pub fn position(self, arity: usize) -> Result<usize> {
        if self.0 > arity {
            Err(Error::IndexOutOfRange { index: self.0, arity })
        } else {
            Ok(self.0 - 1)
        }
    }
}

impl fmt::Display for VariableIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Number of rows `k^n`, or an error if it does not fit.
pub fn table_len(k: u32, n: usize) -> Result<usize> {
    let exp = u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("arity {n} too large")))?;
    (k as usize)
        .checked_pow(exp)
        .filter(|&len| len <= MAX_TABLE_LEN)
        .ok_or_else(|| Error::InvalidParameter(format!("table {k}^{n} is too large")))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteFunction {
    k: u32,
    b: u32,
    n: usize,
    table: Vec<u32>,
}

impl FiniteFunction {
    /// Validates and wraps a value table.
    pub fn new(k: u32, b: u32, n: usize, table: Vec<u32>) -> Result<Self> {
        check_sizes(k, b, n)?;
        let expected = table_len(k, n)?;
        if table.len() != expected {
            return Err(Error::LengthMismatch { expected, actual: table.len() });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= b) {
            return Err(Error::ValueOutOfRange { value, bound: b });
        }
        Ok(Self { k, b, n, table })
    }

    pub fn constant(k: u32, b: u32, n: usize, value: u32) -> Result<Self> {
        check_sizes(k, b, n)?;
        if value >= b {
            return Err(Error::ValueOutOfRange { value, bound: b });
        }
        Ok(Self { k, b, n, table: vec![value; table_len(k, n)?] })
    }

    /// Builds a table by evaluating `f` at every point in row order.
    pub fn from_fn(k: u32, b: u32, n: usize, mut f: impl FnMut(&[u32]) -> u32) -> Result<Self> {
        check_sizes(k, b, n)?;
        let len = table_len(k, n)?;
        let mut table = Vec::with_capacity(len);
        let mut point = vec![0u32; n];
        for _ in 0..len {
            table.push(f(&point));
            increment(&mut point, k);
        }
        Self::new(k, b, n, table)
    }

    pub(crate) fn from_parts_unchecked(k: u32, b: u32, n: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), table_len(k, n).unwrap());
        debug_assert!(table.iter().all(|&v| v < b));
        Self { k, b, n, table }
    }

    pub fn domain_size(&self) -> u32 {
        self.k
    }

    pub fn codomain_size(&self) -> u32 {
        self.b
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u32> {
        self.table
    }

    pub fn is_boolean(&self) -> bool {
        self.k == 2 && self.b == 2
    }

    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    /// Row distance between points differing by one in `x_{pos+1}`.
    pub(crate) fn stride(&self, pos: usize) -> usize {
        (self.k as usize).pow((self.n - 1 - pos) as u32)
    }

    pub fn index_of(&self, point: &[u32]) -> Result<usize> {
        if point.len() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, actual: point.len() });
        }
        point.iter().try_fold(0usize, |acc, &x| {
            if x >= self.k {
                Err(Error::ValueOutOfRange { value: x, bound: self.k })
            } else {
                Ok(acc * self.k as usize + x as usize)
            }
        })
    }

    pub fn point_of(&self, mut index: usize) -> Vec<u32> {
        let k = self.k as usize;
        let mut point = vec![0u32; self.n];
        for slot in point.iter_mut().rev() {
            *slot = (index % k) as u32;
            index /= k;
        }
        point
    }

    pub fn eval(&self, point: &[u32]) -> Result<u32> {
        Ok(self.table[self.index_of(point)?])
    }

    pub fn is_essential(&self, i: VariableIndex) -> Result<bool> {
        Ok(self.is_essential_at(i.position(self.n)?))
    }

    pub(crate) fn is_essential_at(&self, pos: usize) -> bool {
        let k = self.k as usize;
        let stride = self.stride(pos);
        let block = stride * k;
        self.table.chunks_exact(block).any(|chunk| {
            let (head, rest) = chunk.split_at(stride);
            rest.chunks_exact(stride).any(|other| other != head)
        })
    }

    pub fn essential_variables(&self) -> Vec<VariableIndex> {
        (0..self.n).filter(|&pos| self.is_essential_at(pos)).map(|pos| VariableIndex(pos + 1)).collect()
    }

    /// Essential arity.
    pub fn ess(&self) -> usize {
        (0..self.n).filter(|&pos| self.is_essential_at(pos)).count()
    }

    /// Fixes `x_j = c`, returning the `(n-1)`-ary restriction.
    pub fn restrict(&self, j: VariableIndex, c: u32) -> Result<Self> {
        let pos = j.position(self.n)?;
        if c >= self.k {
            return Err(Error::ValueOutOfRange { value: c, bound: self.k });
        }
        if self.n < 2 {
            return Err(Error::InvalidParameter("cannot restrict a unary function".into()));
        }
        let stride = self.stride(pos);
        let block = stride * self.k as usize;
        let offset = c as usize * stride;
        let table =
            self.table.chunks_exact(block).flat_map(|chunk| chunk[offset..offset + stride].iter().copied()).collect();
        Ok(Self::from_parts_unchecked(self.k, self.b, self.n - 1, table))
    }
}

fn check_sizes(k: u32, b: u32, n: usize) -> Result<()> {
    if k == 0 || b == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("k, b and n must be positive (got k={k}, b={b}, n={n})")));
    }
    Ok(())
}

/// Advances a mixed-radix point with the last coordinate least significant.
pub(crate) fn increment(point: &mut [u32], k: u32) {
    for slot in point.iter_mut().rev() {
        *slot += 1;
        if *slot < k {
            return;
        }
        *slot = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> FiniteFunction {
        FiniteFunction::new(2, 2, 2, vec![0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn make_function_validates() {
        assert_eq!(xor().table(), &[0, 1, 1, 0]);
        assert_eq!(FiniteFunction::new(2, 2, 2, vec![0, 1, 1]), Err(Error::LengthMismatch { expected: 4, actual: 3 }));
        assert_eq!(FiniteFunction::new(2, 2, 1, vec![0, 2]), Err(Error::ValueOutOfRange { value: 2, bound: 2 }));
        let id = FiniteFunction::new(3, 3, 1, vec![0, 1, 2]).unwrap();
        assert_eq!(id.eval(&[2]).unwrap(), 2);
        assert!(FiniteFunction::new(0, 2, 1, vec![]).is_err());
    }

    #[test]
    fn eval_follows_row_order() {
        let f = xor();
        assert_eq!(f.eval(&[1, 0]).unwrap(), 1);
        assert_eq!(f.eval(&[1, 1]).unwrap(), 0);
        assert_eq!(f.eval(&[2, 0]), Err(Error::ValueOutOfRange { value: 2, bound: 2 }));
        // x1 is the most significant digit
        let g = FiniteFunction::from_fn(3, 9, 2, |x| x[0] * 3 + x[1]).unwrap();
        assert_eq!(g.table(), &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn essential_variables() {
        let f = xor();
        assert!(f.is_essential(VariableIndex::new(1)).unwrap());
        assert_eq!(f.ess(), 2);

        let zero = FiniteFunction::constant(2, 2, 3, 0).unwrap();
        assert!(!zero.is_essential(VariableIndex::new(2)).unwrap());
        assert_eq!(zero.ess(), 0);

        let proj = FiniteFunction::new(2, 2, 2, vec![0, 0, 1, 1]).unwrap();
        assert!(!proj.is_essential(VariableIndex::new(2)).unwrap());
        assert_eq!(proj.essential_variables(), vec![VariableIndex::new(1)]);

        let maj = FiniteFunction::from_fn(2, 2, 3, |x| u32::from(x.iter().sum::<u32>() >= 2)).unwrap();
        assert_eq!(maj.ess(), 3);

        assert_eq!(f.is_essential(VariableIndex::new(3)), Err(Error::IndexOutOfRange { index: 3, arity: 2 }));
    }

    #[test]
    fn ternary_essential_only_through_middle_value() {
        // depends on x2 only through x2 == 1
        let f = FiniteFunction::from_fn(3, 2, 2, |x| u32::from(x[1] == 1)).unwrap();
        assert_eq!(f.essential_variables(), vec![VariableIndex::new(2)]);
    }

    #[test]
    fn restrict_fixes_a_coordinate() {
        let maj = FiniteFunction::from_fn(2, 2, 3, |x| u32::from(x.iter().sum::<u32>() >= 2)).unwrap();
        let and = maj.restrict(VariableIndex::new(1), 0).unwrap();
        assert_eq!(and.table(), &[0, 0, 0, 1]);
        let or = maj.restrict(VariableIndex::new(3), 1).unwrap();
        assert_eq!(or.table(), &[0, 1, 1, 1]);
        let g = FiniteFunction::from_fn(3, 27, 3, |x| x[0] * 9 + x[1] * 3 + x[2]).unwrap();
        let r = g.restrict(VariableIndex::new(2), 2).unwrap();
        assert_eq!(r.table(), &[6, 7, 8, 15, 16, 17, 24, 25, 26]);
    }

    #[test]
    fn singleton_domain_is_constant() {
        let f = FiniteFunction::new(1, 3, 4, vec![2]).unwrap();
        assert!(f.is_constant());
        assert_eq!(f.ess(), 0);
    }
}
