//! Feasibility decisions and constructive witnesses for products of
//! (scaled) idempotent and square-zero matrices with prescribed nullities.
//!
//! A target `G` is asked to be written as
//! `(c_1 E_1) ... (c_k E_k) Z_1 ... Z_l` with `E_i^2 = E_i`, `n(E_i) = n_i`,
//! `Z_j^2 = 0` and `n(Z_j) = m_j`, for `l <= 2`.

mod construct;
mod decide;
mod verify;

pub use construct::{
    factor, factor_scaled_idem, factor_theorem1, idempotent_chain, jordan_shuffle, nilpotent_ef,
    squarezero_pair,
};
pub use decide::{decide, evaluate, Condition, ConditionInputs, Constructive, Decision};
pub use verify::{verify_witness, FactorCheck, VerificationReport};

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};
use crate::matrix::Matrix;

/// Requested factor shape: idempotent nullities with their scalars, then
/// up to two square-zero nullities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorSpec {
    field: FieldDescriptor,
    idem_nullities: Vec<usize>,
    scalars: Vec<FieldScalar>,
    sqz_nullities: Vec<usize>,
}

impl FactorSpec {
    /// `scalars = None` means every `c_i = 1`.
    pub fn new(
        field: FieldDescriptor,
        idem_nullities: Vec<usize>,
        scalars: Option<Vec<FieldScalar>>,
        sqz_nullities: Vec<usize>,
    ) -> Result<Self> {
        if sqz_nullities.len() > 2 {
            return Err(Error::UnsupportedFactorShape(sqz_nullities.len()));
        }
        let scalars = scalars.unwrap_or_else(|| idem_nullities.iter().map(|_| field.one()).collect());
        if scalars.len() != idem_nullities.len() {
            return Err(Error::BadParameters(alloc::format!(
                "{} scalars for {} idempotent factors",
                scalars.len(),
                idem_nullities.len()
            )));
        }
        if scalars.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if scalars.iter().any(FieldScalar::is_zero) {
            return Err(Error::ZeroScalar);
        }
        Ok(FactorSpec {
            field,
            idem_nullities,
            scalars,
            sqz_nullities,
        })
    }

    /// Unscaled idempotents followed by two square-zero factors.
    pub fn two_square_zero(
        field: FieldDescriptor,
        idem_nullities: Vec<usize>,
        nz1: usize,
        nz2: usize,
    ) -> Self {
        Self::new(field, idem_nullities, None, alloc::vec![nz1, nz2]).expect("always valid")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn idem_nullities(&self) -> &[usize] {
        &self.idem_nullities
    }

    pub fn scalars(&self) -> &[FieldScalar] {
        &self.scalars
    }

    pub fn sqz_nullities(&self) -> &[usize] {
        &self.sqz_nullities
    }

    /// Number of idempotent factors.
    pub fn k(&self) -> usize {
        self.idem_nullities.len()
    }

    /// Number of square-zero factors.
    pub fn l(&self) -> usize {
        self.sqz_nullities.len()
    }

    pub fn idem_sum(&self) -> usize {
        self.idem_nullities.iter().sum()
    }

    /// `c = (c_1 ... c_k)^{-1}`; 1 for an empty product.
    pub fn scale_inverse(&self) -> FieldScalar {
        self.scalars
            .iter()
            .fold(self.field.one(), |acc, c| &acc * c)
            .inverse()
            .expect("scalars are nonzero")
    }

    pub fn all_scalars_one(&self) -> bool {
        self.scalars.iter().all(FieldScalar::is_one)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Idempotent,
    ScaledIdempotent,
    SquareZero,
}

impl Role {
    pub fn as_str(&self) -> &'static str {
        match self {
            Role::Idempotent => "idempotent",
            Role::ScaledIdempotent => "scaled-idempotent",
            Role::SquareZero => "square-zero",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        match s {
            "idempotent" => Some(Role::Idempotent),
            "scaled-idempotent" => Some(Role::ScaledIdempotent),
            "square-zero" => Some(Role::SquareZero),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFactor {
    pub matrix: Matrix,
    pub role: Role,
    pub declared_nullity: usize,
    /// The scalar `c` of a scaled idempotent `c E`; 1 for the other roles.
    pub scalar: FieldScalar,
}

impl WitnessFactor {
    pub fn new(matrix: Matrix, role: Role, declared_nullity: usize) -> Self {
        let scalar = matrix.field().one();
        WitnessFactor {
            matrix,
            role,
            declared_nullity,
            scalar,
        }
    }
}

/// An ordered factor list whose product is claimed to equal a target.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub factors: Vec<WitnessFactor>,
}

impl Witness {
    /// Product of the factors in order; `I_n` when empty.
    pub fn product(&self, field: FieldDescriptor, n: usize) -> Result<Matrix> {
        Matrix::product(field, n, self.factors.iter().map(|f| &f.matrix))
    }
}
