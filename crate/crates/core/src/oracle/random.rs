//! Seeded random instances.
//!
//! The generator is SplitMix64. Bounded integers are `next_u64() % m`, which
//! keeps streams reproducible across platforms and languages.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};
use crate::invariants::{canonical_nilpotent, InvariantReport};
use crate::matrix::Matrix;

/// Rational entries are drawn from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 10;

#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish in `0..m`; `m` must be positive.
    pub fn below(&mut self, m: u64) -> u64 {
        self.next_u64() % m
    }

    /// In `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo + 1) as u64) as usize
    }

    /// A residue for GF(p), an integer of magnitude at most [`ENTRY_BOUND`]
    /// for the rationals.
    pub fn scalar(&mut self, field: FieldDescriptor) -> FieldScalar {
        match field.modulus() {
            Some(p) => field.from_i64(self.below(p) as i64),
            None => field.from_i64(self.below(2 * ENTRY_BOUND as u64 + 1) as i64 - ENTRY_BOUND),
        }
    }

    pub fn nonzero_scalar(&mut self, field: FieldDescriptor) -> FieldScalar {
        loop {
            let c = self.scalar(field);
            if !c.is_zero() {
                return c;
            }
        }
    }
}

pub fn random_matrix(rng: &mut SeededRng, field: FieldDescriptor, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.scalar(field));
        }
    }
    m
}

/// Rejection sampling on [`random_matrix`].
pub fn random_invertible(rng: &mut SeededRng, field: FieldDescriptor, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// A random `Z` with `Z^2 = 0` and `r(Z) = rank`; requires `2 rank <= n`.
pub fn random_square_zero(
    rng: &mut SeededRng,
    field: FieldDescriptor,
    n: usize,
    rank: usize,
) -> Result<Matrix> {
    if 2 * rank > n {
        return Err(Error::BadTarget("square-zero rank exceeds n/2".into()));
    }
    let sizes = alloc::vec![2; rank];
    let canonical = canonical_nilpotent(field, n - 2 * rank, &sizes);
    Matrix::conjugate(&random_invertible(rng, field, n), &canonical)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvertiblePart {
    /// `diag(values)`; every value nonzero.
    Diagonal(Vec<FieldScalar>),
    /// A random invertible block of this order.
    Random(usize),
}

impl InvertiblePart {
    pub fn order(&self) -> usize {
        match self {
            InvertiblePart::Diagonal(v) => v.len(),
            InvertiblePart::Random(d) => *d,
        }
    }
}

/// `0_{zero_blocks} ⊕ J_{k_1}(0) ⊕ ... ⊕ B` before the random similarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceTarget {
    /// This is `n0` of the result.
    pub zero_blocks: usize,
    /// Jordan block sizes, each at least 2.
    pub jordan_blocks: Vec<usize>,
    pub invertible: InvertiblePart,
}

impl InstanceTarget {
    pub fn order(&self) -> usize {
        self.zero_blocks + self.jordan_blocks.iter().sum::<usize>() + self.invertible.order()
    }
}

/// `g = transform * canonical * transform^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomInstance {
    pub seed: u64,
    pub target: InstanceTarget,
    pub canonical: Matrix,
    pub transform: Matrix,
    pub g: Matrix,
}

/// Builds the canonical form of `target` and conjugates it by a random
/// invertible matrix drawn from `seed`. Jordan blocks are placed in
/// descending order after the zero blocks.
pub fn random_instance(
    seed: u64,
    field: FieldDescriptor,
    n: usize,
    target: &InstanceTarget,
) -> Result<RandomInstance> {
    if target.order() != n {
        return Err(Error::BadTarget(alloc::format!(
            "block sizes sum to {}, expected {n}",
            target.order()
        )));
    }
    if target.jordan_blocks.iter().any(|&k| k < 2) {
        return Err(Error::BadTarget("Jordan blocks must have order at least 2".into()));
    }
    let mut rng = SeededRng::new(seed);
    let b = match &target.invertible {
        InvertiblePart::Diagonal(values) => {
            if values.iter().any(|v| v.field() != field) {
                return Err(Error::FieldMismatch);
            }
            if values.iter().any(FieldScalar::is_zero) {
                return Err(Error::BadTarget("invertible part has a zero eigenvalue".into()));
            }
            let mut d = Matrix::zeros(field, values.len(), values.len());
            for (i, v) in values.iter().enumerate() {
                d.set(i, i, v.clone());
            }
            d
        }
        InvertiblePart::Random(d) => random_invertible(&mut rng, field, *d),
    };
    let mut sizes = target.jordan_blocks.clone();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let nil = canonical_nilpotent(field, target.zero_blocks, &sizes);
    let canonical = Matrix::block_diag(field, &[nil, b])?;
    let transform = random_invertible(&mut rng, field, n);
    let g = Matrix::conjugate(&transform, &canonical)?;
    Ok(RandomInstance {
        seed,
        target: target.clone(),
        canonical,
        transform,
        g,
    })
}

/// A random block structure of order `n` with a random invertible part.
pub fn random_target(rng: &mut SeededRng, n: usize) -> InstanceTarget {
    let inv = rng.range(0, n);
    let mut rest = n - inv;
    let mut zero_blocks = 0;
    let mut jordan_blocks = Vec::new();
    while rest > 0 {
        let k = rng.range(1, rest);
        if k == 1 {
            zero_blocks += 1;
        } else {
            jordan_blocks.push(k);
        }
        rest -= k;
    }
    jordan_blocks.sort_unstable_by(|a, b| b.cmp(a));
    InstanceTarget {
        zero_blocks,
        jordan_blocks,
        invertible: InvertiblePart::Random(inv),
    }
}

/// Random idempotent nullities and square-zero nullities satisfying the
/// three conditions for a matrix with this report, or `None` when no spec
/// exists (`n(G) < n/2`).
pub fn feasible_two_square_zero_spec(
    rng: &mut SeededRng,
    report: &InvariantReport,
) -> Option<(Vec<usize>, usize, usize)> {
    let half = report.n.div_ceil(2);
    if report.nullity < half {
        return None;
    }
    let nz1 = rng.range(half, report.nullity);
    let nz2 = rng.range(half, report.nullity);
    let k = rng.range(0, 3);
    let mut nullities: Vec<usize> = (0..k).map(|_| rng.range(0, report.nullity)).collect();
    let need = report.rank.saturating_sub(report.n0);
    while nullities.iter().sum::<usize>() < need {
        match nullities.iter().position(|&t| t < report.nullity) {
            Some(i) if rng.below(2) == 0 => nullities[i] += 1,
            _ => nullities.push(rng.range(1, report.nullity)),
        }
    }
    Some((nullities, nz1, nz2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_report;

    #[test]
    fn golden_report() {
        let f = FieldDescriptor::prime(5).unwrap();
        let target = InstanceTarget {
            zero_blocks: 1,
            jordan_blocks: alloc::vec![2],
            invertible: InvertiblePart::Diagonal(alloc::vec![f.from_i64(3)]),
        };
        let inst = random_instance(1, f, 4, &target).unwrap();
        let r = invariant_report(&inst.g).unwrap();
        assert_eq!(
            (r.n, r.rank, r.nullity, r.n0, r.dim_cap, r.dim_sum),
            (4, 2, 2, 1, 1, 3)
        );
        assert_eq!(Matrix::conjugate(&inst.transform, &inst.canonical).unwrap(), inst.g);
        assert_eq!(random_instance(1, f, 4, &target).unwrap(), inst);
    }

    #[test]
    fn zero_target_gives_zero() {
        let q = FieldDescriptor::rationals();
        let target = InstanceTarget {
            zero_blocks: 3,
            jordan_blocks: alloc::vec![],
            invertible: InvertiblePart::Random(0),
        };
        assert!(random_instance(7, q, 3, &target).unwrap().g.is_zero());
    }

    #[test]
    fn bad_targets() {
        let q = FieldDescriptor::rationals();
        let t = InstanceTarget {
            zero_blocks: 1,
            jordan_blocks: alloc::vec![2],
            invertible: InvertiblePart::Random(0),
        };
        assert!(matches!(random_instance(0, q, 4, &t), Err(Error::BadTarget(_))));
        let t = InstanceTarget {
            zero_blocks: 0,
            jordan_blocks: alloc::vec![1],
            invertible: InvertiblePart::Random(0),
        };
        assert!(matches!(random_instance(0, q, 1, &t), Err(Error::BadTarget(_))));
        let t = InstanceTarget {
            zero_blocks: 0,
            jordan_blocks: alloc::vec![],
            invertible: InvertiblePart::Diagonal(alloc::vec![q.zero()]),
        };
        assert!(matches!(random_instance(0, q, 1, &t), Err(Error::BadTarget(_))));
    }

    #[test]
    fn random_targets_have_requested_order() {
        let mut rng = SeededRng::new(3);
        for n in 0..9 {
            assert_eq!(random_target(&mut rng, n).order(), n);
        }
    }

    #[test]
    fn square_zero_sampler() {
        let f = FieldDescriptor::prime(3).unwrap();
        let mut rng = SeededRng::new(11);
        let z = random_square_zero(&mut rng, f, 5, 2).unwrap();
        assert!(z.is_square_zero());
        assert_eq!(z.rank(), 2);
        assert!(random_square_zero(&mut rng, f, 5, 3).is_err());
    }
}
