//! Evaluation parameters shared by verifiers, oracles and the harness.

use crate::kernel::Budget;
use crate::spaces::Rat;
use num_traits::One;

/// Knobs for one end-to-end evaluation: name depth, tolerance and fuel.
#[derive(Clone, Debug)]
pub struct EvalConfig {
    /// Output name depth inspected by verifiers.
    pub depth: usize,
    /// Tolerance exponent: verifications run at tolerance `2^-tol_exp`.
    pub tol_exp: u32,
    /// Fuel for transformer evaluation.
    pub budget: Budget,
    /// How many symbols of a target name an oracle may consult.
    pub scan_horizon: usize,
    /// Revision bound above which a verifier flags a divergent cell.
    pub max_revisions: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            depth: 32,
            tol_exp: 8,
            budget: Budget::default(),
            scan_horizon: 512,
            max_revisions: 64,
        }
    }
}

impl EvalConfig {
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_tol_exp(mut self, tol_exp: u32) -> Self {
        self.tol_exp = tol_exp;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// Tolerance as an exact rational `2^-tol_exp`.
    pub fn tolerance(&self) -> Rat {
        pow2(-(self.tol_exp as i64))
    }
}

/// Exact `2^e` for signed `e`.
pub fn pow2(e: i64) -> Rat {
    let one = num_bigint::BigInt::one();
    if e >= 0 {
        Rat::from_integer(one << e as usize)
    } else {
        Rat::new(one.clone(), one << (-e) as usize)
    }
}
