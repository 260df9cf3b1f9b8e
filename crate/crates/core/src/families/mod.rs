//! Named example families, the cyclotomic lift/invert machinery, and
//! closed-form tickets for the combinatorial families.

mod catalog;
mod combinatorial;
mod cyclotomic;

pub use combinatorial::{
    alpha_polynomial, divisor_ticket, frobenius_gaps, linear_forced_limit, molluzzo_contains, molluzzo_ticket,
    AlphaKind,
};
pub use cyclotomic::{
    cyclotomic_invert, cyclotomic_lift, g_component, g_component_combinatorial, g_components, some_component_vanishes,
    CyclotomicSpec,
};

use std::sync::Arc;

use thiserror::Error;

use crate::field::FieldTower;
use crate::scalar::{FieldError, Rational};
use crate::ticket::{validate_family, TicketError};
use crate::{NfFamily, NfPoly};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("components g_{0} and g_{1} share a monomial")]
    DisjointnessViolated(usize, usize),
    #[error("the field has no primitive {0}-th root of unity")]
    MissingRoot(u64),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("the two computations of g_{{{m},{k}}} disagree")]
    ComponentMismatch { m: u32, k: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Every generator name accepted by [`generate`].
pub const GENERATORS: &[&str] = &[
    "desboves_elkies",
    "desboves_mu",
    "young",
    "example5",
    "example5_integral",
    "example6",
    "example7",
    "example8",
    "example9",
    "example10",
    "example10_v5",
    "hat_F",
    "tilde_F",
    "euler_binet",
    "euler_binet_binary",
    "euler_septic",
    "biermann",
];

/// Generator parameters; each generator reads the ones it needs.
///
/// `alpha` gives α by coordinates over the generator's base field (a single
/// rational is allowed); `alpha_sq` adjoins a square root instead.
#[derive(Clone, Debug, Default)]
pub struct GeneratorParams {
    pub q: Option<u64>,
    pub a: Option<u64>,
    pub v: Option<u64>,
    pub s: Option<u64>,
    pub r: Option<u64>,
    pub n: Option<u64>,
    pub mu_sq: Option<Rational>,
    pub alpha: Option<Vec<Rational>>,
    pub alpha_sq: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct GeneratedFamily {
    pub name: String,
    pub tower: Arc<FieldTower>,
    pub polys: Vec<NfPoly>,
}

impl GeneratedFamily {
    pub fn nvars(&self) -> usize {
        self.polys[0].nvars()
    }

    pub fn family(&self) -> Result<NfFamily, TicketError> {
        validate_family(self.polys.clone())
    }
}

pub fn generate(name: &str, params: &GeneratorParams) -> Result<GeneratedFamily, FamilyError> {
    match name {
        "desboves_elkies" => Ok(catalog::desboves_elkies()),
        "desboves_mu" => catalog::desboves_mu(params),
        "young" => catalog::young(params),
        "example5" => Ok(catalog::example5()),
        "example5_integral" => Ok(catalog::example5_integral()),
        "example6" => Ok(catalog::example6()),
        "example7" => catalog::example7(params),
        "example8" => catalog::example8(params),
        "example9" => catalog::example9(params),
        "example10" => catalog::example10(params),
        "example10_v5" => Ok(catalog::example10_v5()),
        "hat_F" => catalog::hat_f(params),
        "tilde_F" => catalog::tilde_f(params),
        "euler_binet" => Ok(catalog::euler_binet()),
        "euler_binet_binary" => Ok(catalog::euler_binet_binary()),
        "euler_septic" => Ok(catalog::euler_septic()),
        "biermann" => catalog::biermann(params),
        other => Err(FamilyError::UnknownGenerator(other.to_string())),
    }
}
