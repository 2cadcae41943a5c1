//! Witness families and seeded random functions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::function::{increment, table_len, FiniteFunction};
use crate::minor::identify_at;
use crate::rng::SampleRng;

/// `f = g(h_1(x_1) xor ... xor h_n(x_n))` with `h_t : A -> {0,1}`, `g : {0,1} -> A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiLinearSpec {
    pub k: u32,
    pub n: usize,
    pub h: Vec<Vec<u32>>,
    pub g: Vec<u32>,
}

impl QuasiLinearSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::SpecInvalid(msg));
        if self.k == 0 || self.n == 0 {
            return bad("k and n must be positive".into());
        }
        if self.h.len() != self.n {
            return bad(format!("expected {} h maps, got {}", self.n, self.h.len()));
        }
        for (t, h) in self.h.iter().enumerate() {
            if h.len() != self.k as usize {
                return bad(format!("h{} has {} entries, expected {}", t + 1, h.len(), self.k));
            }
            if h.iter().any(|&v| v > 1) {
                return bad(format!("h{} must map into {{0,1}}", t + 1));
            }
        }
        if self.g.len() != 2 {
            return bad(format!("g must have 2 entries, got {}", self.g.len()));
        }
        if self.g.iter().any(|&v| v >= self.k) {
            return bad(format!("g must map into 0..{}", self.k));
        }
        Ok(())
    }
}

pub fn quasi_linear(spec: &QuasiLinearSpec) -> Result<FiniteFunction> {
    spec.validate()?;
    FiniteFunction::from_fn(spec.k, spec.k, spec.n, |x| {
        let parity = x.iter().zip(&spec.h).fold(0, |acc, (&xt, h)| acc ^ h[xt as usize]);
        spec.g[parity as usize]
    })
}

/// `g = phi(f(gamma(x_1), ..., gamma(x_n)))` for an operation `f` on `A`,
/// `gamma : B -> A` surjective and `phi : A -> B` injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftSpec {
    pub base: FiniteFunction,
    pub target_size: u32,
    pub gamma: Vec<u32>,
    pub phi: Vec<u32>,
}

impl LiftSpec {
    pub fn validate(&self) -> Result<()> {
        let k = self.base.domain_size();
        if self.base.codomain_size() != k {
            return Err(Error::SpecInvalid("base must be an operation (b = k)".into()));
        }
        if self.gamma.len() != self.target_size as usize || self.gamma.iter().any(|&a| a >= k) {
            return Err(Error::SpecInvalid(format!("gamma must map 0..{} into 0..{k}", self.target_size)));
        }
        if self.phi.len() != k as usize || self.phi.iter().any(|&v| v >= self.target_size) {
            return Err(Error::SpecInvalid(format!("phi must map 0..{k} into 0..{}", self.target_size)));
        }
        let mut hit = vec![false; k as usize];
        for &a in &self.gamma {
            hit[a as usize] = true;
        }
        if !hit.iter().all(|&h| h) {
            return Err(Error::GammaNotSurjective);
        }
        let mut used = vec![false; self.target_size as usize];
        for &v in &self.phi {
            if std::mem::replace(&mut used[v as usize], true) {
                return Err(Error::PhiNotInjective);
            }
        }
        Ok(())
    }
}

pub fn lift(spec: &LiftSpec) -> Result<FiniteFunction> {
    spec.validate()?;
    let f = &spec.base;
    let mut inner = vec![0u32; f.arity()];
    FiniteFunction::from_fn(spec.target_size, spec.target_size, f.arity(), |y| {
        for (slot, &yt) in inner.iter_mut().zip(y) {
            *slot = spec.gamma[yt as usize];
        }
        spec.phi[f.eval(&inner).expect("gamma maps into the base domain") as usize]
    })
}

/// Uniform i.i.d. table entries from `SampleRng::new(seed)`, row order.
pub fn random_function(k: u32, b: u32, n: usize, seed: u64, budget: Budget) -> Result<FiniteFunction> {
    let len = table_len(k, n)?;
    budget.check(len as u128)?;
    random_function_from(&mut SampleRng::new(seed), k, b, n)
}

pub(crate) fn random_function_from(rng: &mut SampleRng, k: u32, b: u32, n: usize) -> Result<FiniteFunction> {
    if b == 0 {
        return Err(Error::InvalidParameter("b must be positive".into()));
    }
    let len = table_len(k, n)?;
    let table = (0..len).map(|_| rng.below(b)).collect();
    FiniteFunction::new(k, b, n, table)
}

/// A quasi-linear spec in which the nonconstant `h_t` coincide, at least two
/// of them are nonconstant, and `g` is injective. Needs `k >= 2`, `n >= 2`.
pub fn random_quasi_linear_spec(rng: &mut SampleRng, k: u32, n: usize) -> Result<QuasiLinearSpec> {
    if k < 2 || n < 2 {
        return Err(Error::InvalidParameter("need k >= 2 and n >= 2".into()));
    }
    let shared = loop {
        let h: Vec<u32> = (0..k).map(|_| rng.below(2)).collect();
        if h.iter().any(|&v| v != h[0]) {
            break h;
        }
    };
    let mut active: Vec<bool> = (0..n).map(|_| rng.coin()).collect();
    while active.iter().filter(|&&a| a).count() < 2 {
        active[rng.below(n as u32) as usize] = true;
    }
    let h = active.iter().map(|&a| if a { shared.clone() } else { vec![rng.below(2); k as usize] }).collect();
    let g0 = rng.below(k);
    let g1 = (g0 + 1 + rng.below(k - 1)) % k;
    Ok(QuasiLinearSpec { k, n, h, g: vec![g0, g1] })
}

/// A random operation of arity `n` on `k` elements lifted to `target_size`
/// elements through a random surjection and a random injection.
pub fn random_lift_spec(rng: &mut SampleRng, k: u32, target_size: u32, n: usize) -> Result<LiftSpec> {
    if target_size < k {
        return Err(Error::InvalidParameter("target set must be at least as large as the base".into()));
    }
    let base = random_function_from(rng, k, k, n)?;
    // surjection: a shuffled copy of 0..k followed by arbitrary values
    let mut gamma: Vec<u32> = (0..k).chain((k..target_size).map(|_| rng.below(k))).collect();
    shuffle(rng, &mut gamma);
    let mut pool: Vec<u32> = (0..target_size).collect();
    shuffle(rng, &mut pool);
    pool.truncate(k as usize);
    Ok(LiftSpec { base, target_size, gamma, phi: pool })
}

fn shuffle(rng: &mut SampleRng, items: &mut [u32]) {
    for t in (1..items.len()).rev() {
        let s = rng.below(t as u32 + 1) as usize;
        items.swap(t, s);
    }
}

/// `ess f = n` (the arity) and every identification minor is constant.
pub fn is_total_collapse_witness(f: &FiniteFunction) -> bool {
    let n = f.arity();
    if f.ess() != n {
        return false;
    }
    (0..n).all(|pi| (pi + 1..n).all(|pj| identify_at(f, pi, pj).is_constant()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStrategy {
    /// Every table in `A^(k^n)`.
    AllTables,
    /// Every table that is constant on the rows with a repeated coordinate.
    CollapsedTables,
    /// Seeded samples of collapsed tables.
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchConfig {
    pub budget: Budget,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSearch {
    pub witnesses: Vec<FiniteFunction>,
    pub strategy: SearchStrategy,
    /// Size of the candidate space for `strategy`, saturating.
    pub space: u128,
    pub examined: u128,
    /// The whole candidate space was examined and it contains every witness.
    pub exhaustive: bool,
}

const BLOCK: u128 = 1 << 14;

/// Searches for `n`-ary operations on `k` elements whose every
/// identification minor is constant, stopping after `limit` hits.
///
/// Identifying `x_i` with `x_j` yields a constant iff `f` is constant on
/// `{x_i = x_j}`; for `n >= 3` these sets all meet on the diagonal, so a
/// witness is constant on every row with a repeated coordinate and free on
/// the injective rows. When all tables are too many to enumerate, the
/// search runs over those collapsed tables instead, exhaustively if they
/// fit the budget and by seeded sampling otherwise.
pub fn find_total_collapse_witnesses(k: u32, n: usize, limit: usize, config: SearchConfig) -> Result<WitnessSearch> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("k and n must be positive".into()));
    }
    let rows = table_len(k, n)?;
    let all = saturating_pow(u128::from(k), rows as u128);
    if all <= config.budget.get() {
        let decode = |c: u128| {
            let mut table = Vec::with_capacity(rows);
            let mut rest = c;
            for _ in 0..rows {
                table.push((rest % u128::from(k)) as u32);
                rest /= u128::from(k);
            }
            FiniteFunction::from_parts_unchecked(k, k, n, table)
        };
        return Ok(scan(all, limit, SearchStrategy::AllTables, decode));
    }

    let layout = CollapsedLayout::new(k, n)?;
    let space = saturating_pow(u128::from(k), layout.free_digits() as u128);
    if space <= config.budget.get() {
        return Ok(scan(space, limit, SearchStrategy::CollapsedTables, |c| layout.decode(c)));
    }

    let samples = config.budget.get();
    let mut witnesses = Vec::new();
    let mut examined = 0u128;
    let mut start = 0u128;
    while start < samples && witnesses.len() < limit {
        let end = (start + BLOCK).min(samples);
        let found: Vec<FiniteFunction> = (start as u64..end as u64)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = SampleRng::for_sample(config.seed, i);
                let f = layout.sample(&mut rng);
                is_total_collapse_witness(&f).then_some(f)
            })
            .collect();
        examined = end;
        witnesses.extend(found);
        start = end;
    }
    witnesses.truncate(limit);
    Ok(WitnessSearch { witnesses, strategy: SearchStrategy::Sampled, space, examined, exhaustive: false })
}

fn scan(
    space: u128,
    limit: usize,
    strategy: SearchStrategy,
    decode: impl Fn(u128) -> FiniteFunction + Sync,
) -> WitnessSearch {
    let mut witnesses = Vec::new();
    let mut start = 0u128;
    while start < space && witnesses.len() < limit {
        let end = (start + BLOCK).min(space);
        let found: Vec<FiniteFunction> = (start as u64..end as u64)
            .into_par_iter()
            .map(|c| decode(u128::from(c)))
            .filter(is_total_collapse_witness)
            .collect();
        witnesses.extend(found);
        start = end;
    }
    let exhaustive = start >= space;
    witnesses.truncate(limit);
    WitnessSearch { witnesses, strategy, space, examined: start, exhaustive }
}

/// Rows split into injective ones (free) and ones with a repeated coordinate
/// (sharing one value).
struct CollapsedLayout {
    k: u32,
    n: usize,
    injective: Vec<bool>,
    free_rows: Vec<usize>,
    has_repeats: bool,
}

impl CollapsedLayout {
    fn new(k: u32, n: usize) -> Result<Self> {
        let rows = table_len(k, n)?;
        let mut point = vec![0u32; n];
        let mut injective = Vec::with_capacity(rows);
        for _ in 0..rows {
            let mut seen = vec![false; k as usize];
            injective.push(point.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true)));
            increment(&mut point, k);
        }
        let free_rows: Vec<usize> = (0..rows).filter(|&r| injective[r]).collect();
        let has_repeats = free_rows.len() < rows;
        Ok(Self { k, n, injective, free_rows, has_repeats })
    }

    fn free_digits(&self) -> usize {
        self.free_rows.len() + usize::from(self.has_repeats)
    }

    /// Digit 0 (least significant) is the shared value, then the injective
    /// rows in row order.
    fn decode(&self, mut c: u128) -> FiniteFunction {
        let k = u128::from(self.k);
        let mut next = || {
            let d = (c % k) as u32;
            c /= k;
            d
        };
        let shared = if self.has_repeats { next() } else { 0 };
        let mut table = vec![shared; self.injective.len()];
        for &r in &self.free_rows {
            table[r] = next();
        }
        FiniteFunction::from_parts_unchecked(self.k, self.k, self.n, table)
    }

    fn sample(&self, rng: &mut SampleRng) -> FiniteFunction {
        let shared = rng.below(self.k);
        let table = self.injective.iter().map(|&inj| if inj { rng.below(self.k) } else { shared }).collect();
        FiniteFunction::from_parts_unchecked(self.k, self.k, self.n, table)
    }
}
