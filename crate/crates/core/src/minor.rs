//! Simple variable substitutions, identification minors and the arity gap.

use serde::Serialize;

use crate::budget::{saturating_pow, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::function::{increment, table_len, FiniteFunction, VariableIndex};

/// A map `sigma : {1..n} -> {1..m}`, used as `g(x_1..x_m) = f(x_sigma(1)..x_sigma(n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    target_arity: usize,
    map: Vec<VariableIndex>,
}

impl Substitution {
    pub fn new(target_arity: usize, map: Vec<VariableIndex>) -> Result<Self> {
        if target_arity == 0 {
            return Err(Error::InvalidParameter("substitution target arity must be positive".into()));
        }
        for &t in &map {
            t.position(target_arity)?;
        }
        Ok(Self { target_arity, map })
    }

    pub fn identity(n: usize) -> Self {
        Self { target_arity: n, map: (1..=n).map(VariableIndex::new).collect() }
    }

    /// The substitution `i -> j`, `t -> t` otherwise.
    pub fn identification(n: usize, i: VariableIndex, j: VariableIndex) -> Result<Self> {
        let pos = i.position(n)?;
        j.position(n)?;
        let mut s = Self::identity(n);
        s.map[pos] = j;
        Ok(s)
    }

    pub fn source_arity(&self) -> usize {
        self.map.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn map(&self) -> &[VariableIndex] {
        &self.map
    }

    /// `self` followed by `next`: `t -> next(self(t))`.
    pub fn then(&self, next: &Substitution) -> Result<Self> {
        if next.source_arity() != self.target_arity {
            return Err(Error::ArityMismatch { expected: self.target_arity, actual: next.source_arity() });
        }
        let map = self.map.iter().map(|t| next.map[t.get() - 1]).collect();
        Ok(Self { target_arity: next.target_arity, map })
    }
}

/// `g(x_1..x_m) = f(x_sigma(1)..x_sigma(n))`.
pub fn substitute(f: &FiniteFunction, s: &Substitution) -> Result<FiniteFunction> {
    if s.source_arity() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), actual: s.source_arity() });
    }
    let k = f.domain_size();
    let m = s.target_arity();
    let len = table_len(k, m)?;
    let strides: Vec<usize> = (0..f.arity()).map(|pos| f.stride(pos)).collect();
    let targets: Vec<usize> = s.map().iter().map(|t| t.get() - 1).collect();
    let src = f.table();
    let mut point = vec![0u32; m];
    let mut table = Vec::with_capacity(len);
    for _ in 0..len {
        let idx: usize = targets.iter().zip(&strides).map(|(&t, &st)| point[t] as usize * st).sum();
        table.push(src[idx]);
        increment(&mut point, k);
    }
    Ok(FiniteFunction::from_parts_unchecked(k, f.codomain_size(), m, table))
}

/// The minor `f_{i<-j}`: `x_i` is replaced by `x_j`, arity unchanged.
pub fn identify(f: &FiniteFunction, i: VariableIndex, j: VariableIndex) -> Result<FiniteFunction> {
    let pi = i.position(f.arity())?;
    let pj = j.position(f.arity())?;
    if pi == pj {
        return Err(Error::SameIndex(i.get()));
    }
    Ok(identify_at(f, pi, pj))
}

pub(crate) fn identify_at(f: &FiniteFunction, pi: usize, pj: usize) -> FiniteFunction {
    let k = f.domain_size() as usize;
    let si = f.stride(pi);
    let sj = f.stride(pj);
    let src = f.table();
    let table = (0..src.len())
        .map(|idx| {
            let di = (idx / si) % k;
            let dj = (idx / sj) % k;
            src[idx - di * si + dj * si]
        })
        .collect();
    FiniteFunction::from_parts_unchecked(f.domain_size(), f.codomain_size(), f.arity(), table)
}

/// `f <= g`: `f` is obtained from `g` by a simple variable substitution.
///
/// Tries every `sigma : {1..arity(g)} -> {1..arity(f)}`.
pub fn leq(f: &FiniteFunction, g: &FiniteFunction) -> Result<bool> {
    if f.domain_size() != g.domain_size() || f.codomain_size() != g.codomain_size() {
        return Err(Error::DomainMismatch);
    }
    let m = f.arity();
    let n = g.arity();
    let count = saturating_pow(m as u128, n as u128);
    if count > DEFAULT_BUDGET {
        return Err(Error::BudgetExceeded { required: count, budget: DEFAULT_BUDGET });
    }
    let mut sigma = vec![0u32; n];
    for _ in 0..count {
        let map = sigma.iter().map(|&t| VariableIndex::new(t as usize + 1)).collect();
        let s = Substitution { target_arity: m, map };
        if substitute(g, &s)?.table() == f.table() {
            return Ok(true);
        }
        increment(&mut sigma, m as u32);
    }
    Ok(false)
}

/// Essential arity, largest identification minor, and the arity gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GapReport {
    pub ess: usize,
    pub essl: usize,
    pub gap: usize,
    /// `(i, j)` with `ess f_{i<-j} = essl`.
    pub witness: (VariableIndex, VariableIndex),
}

/// Computes `essl f` as the largest essential arity among the minors
/// `f_{i<-j}` over essential `x_i`, `x_j`.
///
/// `f_{i<-j}` and `f_{j<-i}` differ only by renaming `x_i` to `x_j`, so only
/// `i < j` is scanned; this also makes the lexicographically smallest ordered
/// witness the one returned.
pub fn gap_report(f: &FiniteFunction) -> Result<GapReport> {
    let essential: Vec<usize> = (0..f.arity()).filter(|&p| f.is_essential_at(p)).collect();
    let ess = essential.len();
    if ess < 2 {
        return Err(Error::EssentialArityTooSmall { ess });
    }
    let mut best: Option<(usize, (usize, usize))> = None;
    'outer: for (a, &pi) in essential.iter().enumerate() {
        for &pj in &essential[a + 1..] {
            let minor = identify_at(f, pi, pj);
            // x_i is dummy in the minor and inessential variables of f stay so
            let e = essential.iter().filter(|&&p| p != pi && minor.is_essential_at(p)).count();
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
