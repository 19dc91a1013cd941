use alloc::vec::Vec;

use super::{Role, Witness, WitnessFactor};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCheck {
    /// Square, same order and field as the target.
    pub shape_ok: bool,
    pub role_ok: bool,
    pub actual_nullity: usize,
    pub nullity_ok: bool,
}

impl FactorCheck {
    pub fn passed(&self) -> bool {
        self.shape_ok && self.role_ok && self.nullity_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub factors: Vec<FactorCheck>,
    pub product_ok: bool,
    pub passed: bool,
}

fn check_factor(target: &Matrix, f: &WitnessFactor) -> FactorCheck {
    let m = &f.matrix;
    let shape_ok = m.field() == target.field()
        && m.is_square()
        && m.rows() == target.rows()
        && f.scalar.field() == target.field();
    if !shape_ok {
        return FactorCheck {
            shape_ok,
            role_ok: false,
            actual_nullity: 0,
            nullity_ok: false,
        };
    }
    let role_ok = match f.role {
        Role::Idempotent => m.is_idempotent(),
        Role::SquareZero => m.is_square_zero(),
        Role::ScaledIdempotent => f
            .scalar
            .inverse()
            .ok()
            .and_then(|inv| m.scale(&inv).ok())
            .is_some_and(|e| e.is_idempotent()),
    };
    let actual_nullity = m.nullity();
    FactorCheck {
        shape_ok,
        role_ok,
        actual_nullity,
        nullity_ok: actual_nullity == f.declared_nullity,
    }
}

/// Checks the literal product in the given order, each factor's role and
/// each declared nullity. Factors may come in any order of roles.
pub fn verify_witness(target: &Matrix, w: &Witness) -> VerificationReport {
    let factors: Vec<FactorCheck> = w.factors.iter().map(|f| check_factor(target, f)).collect();
    let product_ok = target.is_square()
        && factors.iter().all(|c| c.shape_ok)
        && w
            .product(target.field(), target.rows())
            .is_ok_and(|p| &p == target);
    VerificationReport {
        passed: product_ok && factors.iter().all(FactorCheck::passed),
        factors,
        product_ok,
    }
}
