use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::FactorSpec;
use crate::error::{Error, Result};
use crate::invariants::{invariant_report, InvariantReport};
use crate::matrix::Matrix;

/// One inequality `lhs <= rhs` with both sides evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    /// Roman numeral of the condition, e.g. `(i)`.
    pub id: &'static str,
    pub lhs_label: String,
    pub lhs: usize,
    pub rhs_label: String,
    pub rhs: usize,
}

impl Condition {
    fn new(id: &'static str, lhs_label: impl Into<String>, lhs: usize, rhs_label: impl Into<String>, rhs: usize) -> Self {
        Condition {
            id,
            lhs_label: lhs_label.into(),
            lhs,
            rhs_label: rhs_label.into(),
            rhs,
        }
    }

    pub fn passed(&self) -> bool {
        self.lhs <= self.rhs
    }

    /// The required inequality, e.g. `r(G) <= sum(n_i) + n0(G)`.
    pub fn requirement(&self) -> String {
        format!("{} <= {}", self.lhs_label, self.rhs_label)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.passed() { "<=" } else { ">" };
        write!(
            f,
            "{}={} {} {} = {}",
            self.lhs_label, self.lhs, rel, self.rhs, self.rhs_label
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constructive {
    /// A witness can be built and verified.
    Full,
    /// Only the yes/no answer is available for this shape.
    DecisionOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub feasible: bool,
    pub conditions: Vec<Condition>,
    pub constructive: Constructive,
}

impl Decision {
    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.passed())
    }
}

/// Matrix data the conditions depend on. `rank_i_minus_cg` and
/// `cg_idempotent` are only consulted when there are no square-zero factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionInputs {
    pub report: InvariantReport,
    pub rank_i_minus_cg: usize,
    pub cg_idempotent: bool,
}

impl ConditionInputs {
    pub fn compute(g: &Matrix, spec: &FactorSpec) -> Result<Self> {
        let n = g.require_square()?;
        if spec.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        let report = invariant_report(g)?;
        let (rank_i_minus_cg, cg_idempotent) = if spec.l() == 0 {
            let cg = g.scale(&spec.scale_inverse())?;
            let diff = Matrix::identity(g.field(), n).sub(&cg)?;
            (diff.rank(), cg.is_idempotent())
        } else {
            (0, false)
        };
        Ok(ConditionInputs {
            report,
            rank_i_minus_cg,
            cg_idempotent,
        })
    }
}

/// Decides whether `G` factors as requested.
///
/// With two square-zero factors the conditions are
/// (i) `r(G) <= sum n_i + n0(G)`, (ii) every nullity `<= n(G)`,
/// (iii) `2 nZ_j >= n`. With fewer square-zero factors the nullity bound and
/// half-order bound come first and the third condition is
/// `r(I - cG) <= sum n_i` for `l = 0` or
/// `dim(R(G) + N(G)) <= sum n_i + m_1` for `l = 1`.
pub fn decide(g: &Matrix, spec: &FactorSpec) -> Result<Decision> {
    Ok(evaluate(&ConditionInputs::compute(g, spec)?, spec))
}

/// The pure integer part of [`decide`].
pub fn evaluate(inputs: &ConditionInputs, spec: &FactorSpec) -> Decision {
    let rep = &inputs.report;
    let l = spec.l();
    let (bound_id, half_id) = if l == 2 { ("(ii)", "(iii)") } else { ("(i)", "(ii)") };
    let sqz_name = if l == 2 { "nZ" } else { "m" };

    let mut bounds = Vec::new();
    for (i, &ni) in spec.idem_nullities().iter().enumerate() {
        bounds.push(Condition::new(bound_id, format!("n_{}", i + 1), ni, "n(G)", rep.nullity));
    }
    for (j, &mj) in spec.sqz_nullities().iter().enumerate() {
        bounds.push(Condition::new(bound_id, format!("{sqz_name}_{}", j + 1), mj, "n(G)", rep.nullity));
    }
    let halves = spec.sqz_nullities().iter().enumerate().map(|(j, &mj)| {
        Condition::new(half_id, "n", rep.n, format!("2*{sqz_name}_{}", j + 1), 2 * mj)
    });

    let sum = spec.idem_sum();
    let mut conditions = Vec::new();
    let constructive = match l {
        0 => {
            conditions.extend(bounds);
            conditions.push(Condition::new("(iii)", "r(I-cG)", inputs.rank_i_minus_cg, "sum(n_i)", sum));
            if inputs.cg_idempotent {
                Constructive::Full
            } else {
                Constructive::DecisionOnly
            }
        }
        1 => {
            conditions.extend(bounds);
            conditions.extend(halves);
            let m1 = spec.sqz_nullities()[0];
            conditions.push(Condition::new(
                "(iii)",
                "dim(R(G)+N(G))",
                rep.dim_sum,
                "sum(n_i) + m_1",
                sum + m1,
            ));
            Constructive::DecisionOnly
        }
        _ => {
            conditions.push(Condition::new("(i)", "r(G)", rep.rank, "sum(n_i) + n0(G)", sum + rep.n0));
            conditions.extend(bounds);
            conditions.extend(halves);
            Constructive::Full
        }
    };
    Decision {
        feasible: conditions.iter().all(Condition::passed),
        conditions,
        constructive,
    }
}
