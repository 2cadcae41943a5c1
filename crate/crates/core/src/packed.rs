//! Boolean functions of arity at most 6 packed into a `u64`.
//!
//! Bit `t` holds row `t` under the usual row order, so variable `x_p` (1-based)
//! has stride `2^(n - p)` in the bit index. Used by the exhaustive Boolean
//! sweeps where allocating a table per candidate would dominate.

use crate::error::{Error, Result};
use crate::function::{FiniteFunction, VariableIndex};
use crate::minor::GapReport;

pub const MAX_PACKED_ARITY: usize = 6;

/// Rows whose index has bit `log2(stride)` clear.
const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PackedTable {
    n: usize,
    bits: u64,
}

impl PackedTable {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_PACKED_ARITY {
            return Err(Error::InvalidParameter(format!("packed arity must be in 1..=6, got {n}")));
        }
        if bits & !len_mask(n) != 0 {
            return Err(Error::InvalidParameter(format!("bits beyond row {} are set", (1usize << n) - 1)));
        }
        Ok(Self { n, bits })
    }

    pub fn from_function(f: &FiniteFunction) -> Result<Self> {
        if !f.is_boolean() {
            return Err(Error::NotBoolean { k: f.domain_size(), b: f.codomain_size() });
        }
        let bits = f.table().iter().enumerate().fold(0u64, |acc, (t, &v)| acc | (u64::from(v) << t));
        Self::new(f.arity(), bits)
    }

    pub fn to_function(self) -> FiniteFunction {
        let table = (0..1usize << self.n).map(|t| ((self.bits >> t) & 1) as u32).collect();
        FiniteFunction::from_parts_unchecked(2, 2, self.n, table)
    }

    pub fn arity(self) -> usize {
        self.n
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Index into [`LOW`] for the zero-based variable position `pos`.
    fn level(self, pos: usize) -> usize {
        self.n - 1 - pos
    }

    pub(crate) fn is_essential_at(self, pos: usize) -> bool {
        let lvl = self.level(pos);
        ((self.bits >> (1 << lvl)) ^ self.bits) & LOW[lvl] & len_mask(self.n) != 0
    }

    pub fn is_essential(self, i: VariableIndex) -> Result<bool> {
        Ok(self.is_essential_at(i.position(self.n)?))
    }

    pub fn essential_mask(self) -> u32 {
        (0..self.n).filter(|&p| self.is_essential_at(p)).fold(0, |m, p| m | 1 << p)
    }

    pub fn ess(self) -> usize {
        self.essential_mask().count_ones() as usize
    }

    fn flip(self, pos: usize) -> u64 {
        let lvl = self.level(pos);
        let s = 1u32 << lvl;
        ((self.bits & LOW[lvl]) << s) | ((self.bits >> s) & LOW[lvl])
    }

    pub(crate) fn identify_at(self, pi: usize, pj: usize) -> Self {
        let mask = len_mask(self.n);
        let ones_i = !LOW[self.level(pi)];
        let ones_j = !LOW[self.level(pj)];
        let same = !(ones_i ^ ones_j) & mask;
        let bits = ((self.bits & same) | (self.flip(pi) & !same)) & mask;
        Self { n: self.n, bits }
    }

    pub fn identify(self, i: VariableIndex, j: VariableIndex) -> Result<Self> {
        let pi = i.position(self.n)?;
        let pj = j.position(self.n)?;
        if pi == pj {
            return Err(Error::SameIndex(i.get()));
        }
        Ok(self.identify_at(pi, pj))
    }

    /// Same contract as [`crate::minor::gap_report`].
    pub fn gap_report(self) -> Result<GapReport> {
        let essential = self.essential_mask();
        let ess = essential.count_ones() as usize;
        if ess < 2 {
            return Err(Error::EssentialArityTooSmall { ess });
        }
        let positions: Vec<usize> = (0..self.n).filter(|&p| essential & (1 << p) != 0).collect();
        let mut best: Option<(usize, (usize, usize))> = None;
        'outer: for (a, &pi) in positions.iter().enumerate() {
            for &pj in &positions[a + 1..] {
                let e = (self.identify_at(pi, pj).essential_mask() & essential).count_ones() as usize;
                if best.is_none_or(|(b, _)| e > b) {
                    best = Some((e, (pi, pj)));
                    if e == ess - 1 {
                        break 'outer;
                    }
                }
            }
        }
        let (essl, (pi, pj)) = best.expect("at least one pair of essential variables");
        Ok(GapReport { ess, essl, gap: ess - essl, witness: (VariableIndex::new(pi + 1), VariableIndex::new(pj + 1)) })
    }

    /// GF(2) subset-sum transform over the row bits; an involution mapping a
    /// truth table to its Zhegalkin coefficient vector and back.
    pub fn mobius(self) -> Self {
        let mut bits = self.bits;
        for (lvl, low) in LOW.iter().enumerate().take(self.n) {
            bits ^= (bits & low) << (1u32 << lvl);
        }
        Self { n: self.n, bits: bits & len_mask(self.n) }
    }
}

fn len_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::{gap_report, identify_at};

    #[test]
    fn essential_and_identify_agree_with_tables() {
        for n in 1..=3usize {
            for bits in 0..(1u64 << (1 << n)) {
                let p = PackedTable::new(n, bits).unwrap();
                let f = p.to_function();
                assert_eq!(PackedTable::from_function(&f).unwrap(), p);
                for pos in 0..n {
                    assert_eq!(p.is_essential_at(pos), f.is_essential_at(pos));
                    for pj in (0..n).filter(|&q| q != pos) {
                        assert_eq!(p.identify_at(pos, pj).to_function(), identify_at(&f, pos, pj));
                    }
                }
                assert_eq!(p.gap_report().ok(), gap_report(&f).ok());
            }
        }
    }

    #[test]
    fn rejects_stray_bits() {
        assert!(PackedTable::new(2, 0x10).is_err());
        assert!(PackedTable::new(7, 0).is_err());
    }

    #[test]
    fn mobius_is_an_involution() {
        // AND on two variables is the monomial x1*x2 at row 3
        let and = PackedTable::new(2, 0b1000).unwrap();
        assert_eq!(and.mobius().bits(), 0b1000);
        // x1 + x2 -> rows 2 and 1
        let xor = PackedTable::new(2, 0b0110).unwrap();
        assert_eq!(xor.mobius().bits(), 0b0110);
        // NOT x1 (x1 + 1) on arity 1: table [1, 0] -> coefficients {∅, {1}}
        let not = PackedTable::new(1, 0b01).unwrap();
        assert_eq!(not.mobius().bits(), 0b11);
        for bits in [0u64, 1, 0xdead_beef_0123_4567, u64::MAX] {
            let p = PackedTable::new(6, bits).unwrap();
            assert_eq!(p.mobius().mobius(), p);
        }
    }
}
