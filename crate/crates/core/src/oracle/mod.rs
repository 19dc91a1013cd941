//! Exhaustive ground truth over small prime fields, plus seeded random
//! instances for property tests.

mod random;
mod small;

pub use random::{
    feasible_two_square_zero_spec, random_instance, random_invertible, random_matrix,
    random_square_zero, random_target, InstanceTarget, InvertiblePart, RandomInstance, SeededRng,
    ENTRY_BOUND,
};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor::{evaluate, ConditionInputs, FactorSpec};
use crate::field::{FieldDescriptor, FieldScalar};
use crate::invariants::{invariant_report, n0};
use crate::matrix::Matrix;
use small::{CodeSet, Entries, SmallField};

/// Largest number of matrices an enumeration may visit.
pub const TRACTABILITY_BOUND: u64 = 1 << 24;

/// All `n x n` matrices over a small prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumerationDomain {
    field: FieldDescriptor,
    n: usize,
}

impl EnumerationDomain {
    /// Rejects non-prime fields and domains with more than
    /// [`TRACTABILITY_BOUND`] matrices.
    pub fn new(field: FieldDescriptor, n: usize) -> Result<Self> {
        let p = field
            .modulus()
            .ok_or_else(|| Error::BadParameters("enumeration needs a prime field".into()))?;
        let size = (0..n * n).try_fold(1u64, |acc, _| acc.checked_mul(p));
        match size {
            Some(s) if s <= TRACTABILITY_BOUND => Ok(EnumerationDomain { field, n }),
            _ => Err(Error::DomainTooLarge { modulus: p, order: n }),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^(n^2)`.
    pub fn size(&self) -> u64 {
        self.small().size as u64
    }

    fn small(&self) -> SmallField {
        SmallField::new(self.field.modulus().expect("prime field") as u32, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Idempotent,
    SquareZero,
    NullityEq(usize),
    All,
}

/// Every matrix of the domain with the property, in ascending base-p order.
pub fn enumerate_with_property(dom: &EnumerationDomain, property: Property) -> Vec<Matrix> {
    let sf = dom.small();
    (0..sf.size)
        .filter(|&c| match property {
            Property::Idempotent => sf.mul(c, c) == c,
            Property::SquareZero => sf.mul(c, c) == 0,
            Property::NullityEq(t) => sf.n - sf.rank(c) == t,
            Property::All => true,
        })
        .map(|c| sf.to_matrix(c))
        .collect()
}

/// Codes of `c A` over all `A` with `A^2 = A` (or `A^2 = 0`) and `n(A) = t`.
fn factor_codes(sf: &SmallField, square_zero: bool, t: usize, c: u32) -> Vec<u32> {
    (0..sf.size)
        .filter(|&a| {
            let sq = sf.mul(a, a);
            (if square_zero { sq == 0 } else { sq == a }) && sf.n - sf.rank(a) == t
        })
        .map(|a| sf.scale(c, a))
        .collect()
}

/// Factor sets in product order.
fn factor_sets(sf: &SmallField, spec: &FactorSpec) -> Vec<Vec<u32>> {
    let idem = spec
        .idem_nullities()
        .iter()
        .zip(spec.scalars())
        .map(|(&t, c)| factor_codes(sf, false, t, c.as_residue().expect("prime field") as u32));
    let sqz = spec.sqz_nullities().iter().map(|&t| factor_codes(sf, true, t, 1));
    idem.chain(sqz).collect()
}

fn check_spec(dom: &EnumerationDomain, spec: &FactorSpec) -> Result<()> {
    if spec.field() != dom.field {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Adds every conjugate of the queued codes to `set`.
fn close_under_conjugation(
    sf: &SmallField,
    gens: &[(Entries, Entries)],
    set: &mut CodeSet,
    mut queue: Vec<u32>,
) {
    while let Some(c) = queue.pop() {
        for (t, t_inv) in gens {
            let d = sf.conjugate(c, t, t_inv);
            if set.insert(d) {
                queue.push(d);
            }
        }
    }
}

/// One representative per similarity class of a conjugation-closed set.
fn orbit_representatives(sf: &SmallField, gens: &[(Entries, Entries)], set: &CodeSet) -> Vec<u32> {
    let mut seen = CodeSet::new(sf.size);
    let mut reps = Vec::new();
    for c in set.iter() {
        if seen.insert(c) {
            reps.push(c);
            close_under_conjugation(sf, gens, &mut seen, alloc::vec![c]);
        }
    }
    reps
}

/// Product set computed right to left. Each factor set is closed under
/// similarity, hence so is every partial product `S`, and
/// `X S = closure{ x t : x in X, t a class representative of S }`.
fn product_codes(sf: &SmallField, sets: &[Vec<u32>]) -> CodeSet {
    let gens = sf.conjugators();
    let mut acc = CodeSet::new(sf.size);
    acc.insert(sf.identity());
    for xs in sets.iter().rev() {
        let reps = orbit_representatives(sf, &gens, &acc);
        let mut next = CodeSet::new(sf.size);
        let mut queue = Vec::new();
        for &x in xs {
            for &t in &reps {
                let c = sf.mul(x, t);
                if next.insert(c) {
                    queue.push(c);
                }
            }
        }
        close_under_conjugation(sf, &gens, &mut next, queue);
        acc = next;
    }
    acc
}

/// Product set by plain nested loops over every factor choice.
fn product_codes_naive(sf: &SmallField, sets: &[Vec<u32>]) -> CodeSet {
    let mut acc = CodeSet::new(sf.size);
    acc.insert(sf.identity());
    for xs in sets.iter().rev() {
        let mut next = CodeSet::new(sf.size);
        for &x in xs {
            for t in acc.iter() {
                next.insert(sf.mul(x, t));
            }
        }
        acc = next;
    }
    acc
}

/// Every matrix `(c_1 E_1) ... (c_k E_k) Z_1 ... Z_l` reachable with the
/// prescribed roles and nullities, in ascending base-p order.
pub fn product_set(dom: &EnumerationDomain, spec: &FactorSpec) -> Result<Vec<Matrix>> {
    check_spec(dom, spec)?;
    let sf = dom.small();
    let set = product_codes(&sf, &factor_sets(&sf, spec));
    Ok(set.iter().map(|c| sf.to_matrix(c)).collect())
}

/// [`product_set`] without the similarity shortcut. Quadratic in the
/// domain size; meant for cross-validation on the smallest domains.
pub fn product_set_naive(dom: &EnumerationDomain, spec: &FactorSpec) -> Result<Vec<Matrix>> {
    check_spec(dom, spec)?;
    let sf = dom.small();
    let set = product_codes_naive(&sf, &factor_sets(&sf, spec));
    Ok(set.iter().map(|c| sf.to_matrix(c)).collect())
}

/// A matrix on which exhaustive search and the decision procedure disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub matrix: Matrix,
    pub in_product_set: bool,
    pub decided_feasible: bool,
}

/// Compares [`product_set`] membership with the decision for every matrix
/// of the domain. An empty result means full agreement.
pub fn cross_check(dom: &EnumerationDomain, spec: &FactorSpec) -> Result<Vec<Mismatch>> {
    let mut all = cross_check_all(dom, core::slice::from_ref(spec))?;
    Ok(all.pop().unwrap_or_default())
}

/// [`cross_check`] for many specs, sharing the per-matrix invariants.
pub fn cross_check_all(dom: &EnumerationDomain, specs: &[FactorSpec]) -> Result<Vec<Vec<Mismatch>>> {
    for spec in specs {
        check_spec(dom, spec)?;
    }
    let sf = dom.small();
    let sets: Vec<CodeSet> = specs
        .iter()
        .map(|s| product_codes(&sf, &factor_sets(&sf, s)))
        .collect();

    // r(I - cG) and idempotence of cG are needed once per distinct c
    let mut scale_values: Vec<FieldScalar> = Vec::new();
    for s in specs.iter().filter(|s| s.l() == 0) {
        let c = s.scale_inverse();
        if !scale_values.contains(&c) {
            scale_values.push(c);
        }
    }
    let scale_index: Vec<usize> = specs
        .iter()
        .map(|s| {
            if s.l() == 0 {
                let c = s.scale_inverse();
                scale_values.iter().position(|v| *v == c).expect("collected above")
            } else {
                0
            }
        })
        .collect();

    let identity = Matrix::identity(dom.field, dom.n);
    let mut out = alloc::vec![Vec::new(); specs.len()];
    for code in 0..sf.size {
        let g = sf.to_matrix(code);
        let report = invariant_report(&g)?;
        let scaled: Vec<(usize, bool)> = scale_values
            .iter()
            .map(|c| {
                let cg = g.scale(c)?;
                Ok((identity.sub(&cg)?.rank(), cg.is_idempotent()))
            })
            .collect::<Result<_>>()?;
        for (idx, spec) in specs.iter().enumerate() {
            let (rank_i_minus_cg, cg_idempotent) =
                scaled.get(scale_index[idx]).copied().unwrap_or((0, false));
            let inputs = ConditionInputs {
                report,
                rank_i_minus_cg: if spec.l() == 0 { rank_i_minus_cg } else { 0 },
                cg_idempotent: spec.l() == 0 && cg_idempotent,
            };
            let decided = evaluate(&inputs, spec).feasible;
            let member = sets[idx].contains(code);
            if decided != member {
                out[idx].push(Mismatch {
                    matrix: g.clone(),
                    in_product_set: member,
                    decided_feasible: decided,
                });
            }
        }
    }
    Ok(out)
}

/// Outcome of the three rank inequalities for `G = H Z_1 Z_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductInequalities {
    /// `dim(R(G) ∩ N(F)) >= n(F) - n0(G)` with `F = Z_1 Z_2`.
    pub range_meets_kernel: bool,
    /// Whether `R(G) ∩ N(F) = R(G) ∩ R(F) ∩ N(F)`.
    pub hypothesis_holds: bool,
    /// `r(G) <= n0(G)`; required only when the hypothesis holds.
    pub rank_below_n0: bool,
    /// `r(G) <= n0(G) + r(I - H)`.
    pub rank_bound: bool,
}

impl ProductInequalities {
    pub fn all_hold(&self) -> bool {
        self.range_meets_kernel && (!self.hypothesis_holds || self.rank_below_n0) && self.rank_bound
    }
}

/// Evaluates the rank inequalities satisfied by any `G = H F` with `F` a
/// product of two square-zero matrices.
pub fn product_inequalities(h: &Matrix, z1: &Matrix, z2: &Matrix) -> Result<ProductInequalities> {
    let n = h.require_square()?;
    let f = z1.mul(z2)?;
    let g = h.mul(&f)?;
    let n0g = n0(&g)?;
    let rg = g.colspace_basis();
    let nf = f.nullspace_basis();
    let rg_nf = rg.intersect(&nf)?;
    let rg_rf_nf = rg_nf.intersect(&f.colspace_basis())?;
    let i_minus_h = Matrix::identity(h.field(), n).sub(h)?;
    let rank = g.rank();
    Ok(ProductInequalities {
        range_meets_kernel: rg_nf.dim() + n0g >= nf.dim(),
        hypothesis_holds: rg_nf.dim() == rg_rf_nf.dim(),
        rank_below_n0: rank <= n0g,
        rank_bound: rank <= n0g + i_minus_h.rank(),
    })
}
