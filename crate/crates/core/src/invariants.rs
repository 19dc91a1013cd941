//! Rank-type invariants, the Fitting splitting and nilpotent Jordan structure.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::matrix::{Echelon, Matrix, Vector};

/// The six integer invariants of a square matrix `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvariantReport {
    /// Order of `G`.
    pub n: usize,
    pub rank: usize,
    pub nullity: usize,
    /// `n(G) - dim(R(G) ∩ N(G))`, the number of 1x1 zero Jordan blocks.
    pub n0: usize,
    /// `dim(R(G) ∩ N(G))`.
    pub dim_cap: usize,
    /// `dim(R(G) + N(G))`.
    pub dim_sum: usize,
}

/// Number of size-one Jordan blocks at eigenvalue zero.
pub fn n0(g: &Matrix) -> Result<usize> {
    Ok(invariant_report(g)?.n0)
}

pub fn invariant_report(g: &Matrix) -> Result<InvariantReport> {
    let n = g.require_square()?;
    let range = g.colspace_basis();
    let kernel = g.nullspace_basis();
    let dim_cap = range.intersect(&kernel)?.dim();
    let dim_sum = range.sum_dim(&kernel)?;
    let report = InvariantReport {
        n,
        rank: range.dim(),
        nullity: kernel.dim(),
        n0: kernel.dim() - dim_cap,
        dim_cap,
        dim_sum,
    };
    // Grassmann
    debug_assert_eq!(dim_cap + dim_sum, report.rank + report.nullity);
    Ok(report)
}

/// `G = S * (N ⊕ B) * S^{-1}` with `N` nilpotent and `B` invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingDecomposition {
    pub transform: Matrix,
    pub nil_dim: usize,
    pub nilpotent: Matrix,
    pub invertible: Matrix,
}

impl FittingDecomposition {
    pub fn block_form(&self) -> Matrix {
        Matrix::block_diag(
            self.transform.field(),
            &[self.nilpotent.clone(), self.invertible.clone()],
        )
        .expect("blocks share a field")
    }
}

/// Splits `G` along `N(G^n) ⊕ R(G^n)`. The transform's columns are the
/// kernel basis of `G^n` followed by its pivot columns.
pub fn fitting(g: &Matrix) -> Result<FittingDecomposition> {
    let n = g.require_square()?;
    let field = g.field();
    let power = g.pow(n as u32)?;
    let mut columns = power.kernel_vectors();
    let nil_dim = columns.len();
    columns.extend(power.pivot_columns());
    let transform = Matrix::from_columns(field, n, &columns);
    let block = transform.inverse()?.mul(g)?.mul(&transform)?;
    let nilpotent = block.submatrix(0, 0, nil_dim, nil_dim);
    let invertible = block.submatrix(nil_dim, nil_dim, n - nil_dim, n - nil_dim);
    let off_diagonal_zero = block.submatrix(0, nil_dim, nil_dim, n - nil_dim).is_zero()
        && block.submatrix(nil_dim, 0, n - nil_dim, nil_dim).is_zero();
    if !off_diagonal_zero {
        return Err(Error::ConstructionError(
            "Fitting blocks are not invariant".into(),
        ));
    }
    Ok(FittingDecomposition {
        transform,
        nil_dim,
        nilpotent,
        invertible,
    })
}

/// `T^{-1} N T = 0_z ⊕ J_{k_1}(0) ⊕ ... ⊕ J_{k_m}(0)` with every `k_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentStructure {
    pub transform: Matrix,
    /// Sizes of the blocks of order at least 2, descending.
    pub block_sizes: Vec<usize>,
    /// Number of 1x1 zero blocks, which come first.
    pub zero_block_count: usize,
    /// Number of blocks of order at least 2.
    pub m: usize,
}

impl NilpotentStructure {
    /// The canonical nilpotent matrix this structure describes.
    pub fn canonical(&self) -> Matrix {
        canonical_nilpotent(
            self.transform.field(),
            self.zero_block_count,
            &self.block_sizes,
        )
    }
}

/// `0_{zero_blocks} ⊕ J_{sizes[0]}(0) ⊕ ...`.
pub fn canonical_nilpotent(field: FieldDescriptor, zero_blocks: usize, sizes: &[usize]) -> Matrix {
    let mut parts = Vec::with_capacity(sizes.len() + 1);
    parts.push(Matrix::zeros(field, zero_blocks, zero_blocks));
    parts.extend(sizes.iter().map(|&k| Matrix::jordan_block(field, k)));
    Matrix::block_diag(field, &parts).expect("blocks share a field")
}

/// Jordan chains of a nilpotent matrix.
///
/// Chain tops are chosen from the highest power down. At level `j` the span
/// of `N(N^{j-1})` and the images of longer chains is extended by the
/// standard kernel vectors of `N^j`, taken in order.
pub fn nilpotent_structure(nil: &Matrix) -> Result<NilpotentStructure> {
    let n = nil.require_square()?;
    let field = nil.field();
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(Matrix::identity(field, n));
    while !powers.last().expect("nonempty").is_zero() {
        if powers.len() > n {
            return Err(Error::NotNilpotent);
        }
        let next = powers.last().expect("nonempty").mul(nil)?;
        powers.push(next);
    }
    let index = powers.len() - 1;
    let kernels: Vec<Vec<Vector>> = powers.iter().map(Matrix::kernel_vectors).collect();

    // (top, length)
    let mut chains: Vec<(Vector, usize)> = Vec::new();
    for level in (1..=index).rev() {
        let mut span = Echelon::with(&kernels[level - 1]);
        for (top, len) in &chains {
            let img = powers[len - level].mul_vec(top)?;
            span.insert(&img);
        }
        for cand in &kernels[level] {
            if span.insert(cand) {
                chains.push((cand.clone(), level));
            }
        }
    }

    let (singles, longer): (Vec<_>, Vec<_>) = chains.into_iter().partition(|(_, len)| *len == 1);
    let mut columns = Vec::with_capacity(n);
    for (top, _) in &singles {
        columns.push(top.clone());
    }
    for (top, len) in &longer {
        let mut v = top.clone();
        for _ in 0..*len {
            let next = nil.mul_vec(&v)?;
            columns.push(core::mem::replace(&mut v, next));
        }
    }
    let structure = NilpotentStructure {
        transform: Matrix::from_columns(field, n, &columns),
        block_sizes: longer.iter().map(|(_, len)| *len).collect(),
        zero_block_count: singles.len(),
        m: longer.len(),
    };
    let check = structure.transform.inverse()?.mul(nil)?.mul(&structure.transform)?;
    if check != structure.canonical() {
        return Err(Error::ConstructionError(format!(
            "Jordan chains do not reproduce the canonical form (sizes {:?})",
            structure.block_sizes
        )));
    }
    Ok(structure)
}
