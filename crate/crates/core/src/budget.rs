use crate::error::{Error, Result};

/// Default cap on enumerated work items (tables, candidates, table entries).
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "ARITYGAP_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(u128);

impl Budget {
    pub const fn new(limit: u128) -> Self {
        Self(limit)
    }

    pub const fn get(self) -> u128 {
        self.0
    }

    /// Reads `ARITYGAP_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<u128>()
                .map(Self)
                .map_err(|_| Error::InvalidParameter(format!("{BUDGET_ENV}={raw:?} is not a non-negative integer"))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 {
            Err(Error::BudgetExceeded { required, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self(DEFAULT_BUDGET)
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u128, exp: u128) -> u128 {
    match (base, exp) {
        (_, 0) => 1,
        (0 | 1, _) => base,
        _ => {
            let mut acc: u128 = 1;
            for _ in 0..exp {
                acc = acc.saturating_mul(base);
                if acc == u128::MAX {
                    break;
                }
            }
            acc
        }
    }
}
