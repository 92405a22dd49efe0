use std::process::ExitCode;

use thiserror::Error;

use amenact::abelian::AbelianError;
use amenact::duality::DualityError;
use amenact::entropy::EntropyError;
use amenact::folner::FolnerError;
use amenact::integral::IntegralError;
use amenact::monoid::MonoidError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Assertion(_) => 1,
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
        })
    }
}

fn abelian_budget(e: &AbelianError) -> bool {
    matches!(e, AbelianError::BudgetExceeded { .. } | AbelianError::BoundExceeded { .. })
}

fn folner_budget(e: &FolnerError) -> bool {
    matches!(e, FolnerError::BudgetExceeded { .. })
}

fn integral_budget(e: &IntegralError) -> bool {
    match e {
        IntegralError::BudgetExceeded { .. } => true,
        IntegralError::Folner(f) => folner_budget(f),
        _ => false,
    }
}

fn entropy_budget(e: &EntropyError) -> bool {
    match e {
        EntropyError::BudgetExceeded { .. } => true,
        EntropyError::Abelian(a) => abelian_budget(a),
        EntropyError::Folner(f) => folner_budget(f),
        EntropyError::Integral(i) => integral_budget(i),
        _ => false,
    }
}

fn duality_budget(e: &DualityError) -> bool {
    match e {
        DualityError::BoundExceeded { .. } => true,
        DualityError::Abelian(a) => abelian_budget(a),
        DualityError::Entropy(x) => entropy_budget(x),
        DualityError::Folner(f) => folner_budget(f),
        _ => false,
    }
}

// Library errors other than budget overruns come from scenario values the
// library refuses, so they are reported as schema errors.
macro_rules! from_library {
    ($t:ty, $budget:expr) => {
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                let is_budget: fn(&$t) -> bool = $budget;
                if is_budget(&e) {
                    CliError::Budget(e.to_string())
                } else {
                    CliError::Schema(format!("invalid scenario: {e}"))
                }
            }
        }
    };
}

from_library!(AbelianError, abelian_budget);
from_library!(FolnerError, folner_budget);
from_library!(IntegralError, integral_budget);
from_library!(EntropyError, entropy_budget);
from_library!(DualityError, duality_budget);
from_library!(MonoidError, |_| false);
