//! Witness constructions. Every public routine checks its own output and
//! returns [`Error::ConstructionError`] rather than an unverified matrix.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::decide::{decide, Constructive};
use super::verify::verify_witness;
use super::{FactorSpec, Role, Witness, WitnessFactor};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};
use crate::invariants::{fitting, invariant_report, n0, nilpotent_structure};
use crate::matrix::{complete_with_units, extend_independent, Matrix, Vector};

fn defect(msg: impl Into<String>) -> Error {
    Error::ConstructionError(msg.into())
}

/// `J_k(0) = E F` with `E^2 = E`, `n(E) = 1`, `N(F) = N(J_k(0))` and
/// `n0(F) = 1`.
///
/// For `k = 2`, `E = [[0,0],[1,1]]` and `F = [[1,0],[0,0]]`. For larger `k`,
/// `E = [[0, 0], [e_{k-1}, I_{k-1}]]` and `F = [[e_{k-1}^T, 0], [F_1, 0]]`
/// with `F_1 = [I_{k-2}; 0]`.
pub fn jordan_shuffle(k: usize, field: FieldDescriptor) -> Result<(Matrix, Matrix)> {
    if k < 2 {
        return Err(Error::BadBlockSize(k));
    }
    let one = field.one();
    let mut e = Matrix::zeros(field, k, k);
    let mut f = Matrix::zeros(field, k, k);
    if k == 2 {
        e.set(1, 0, one.clone());
        e.set(1, 1, one.clone());
        f.set(0, 0, one);
    } else {
        e.set(k - 1, 0, one.clone());
        for i in 1..k {
            e.set(i, i, one.clone());
        }
        f.set(0, k - 2, one.clone());
        for i in 0..k - 2 {
            f.set(i + 1, i, one.clone());
        }
    }
    let j = Matrix::jordan_block(field, k);
    let ok = e.mul(&f)? == j
        && e.is_idempotent()
        && e.nullity() == 1
        && f.nullspace_basis() == j.nullspace_basis()
        && n0(&f)? == 1;
    if !ok {
        return Err(defect(format!("shuffle pair for J_{k}(0) failed its checks")));
    }
    Ok((e, f))
}

/// `J = E F` for `J = J_{k_1}(0) ⊕ ... ⊕ J_{k_m}(0)` with `E^2 = E`,
/// `n(E) = e_nullity`, `N(F) = N(J)` and `n0(F) = s`.
///
/// The first `s` blocks use [`jordan_shuffle`]; blocks `s..e_nullity` use
/// `E_i = 0 ⊕ I_{k_i - 1}` and the rest `E_i = I`, with `F_i = J_{k_i}(0)`.
pub fn nilpotent_ef(
    block_sizes: &[usize],
    s: usize,
    e_nullity: usize,
    field: FieldDescriptor,
) -> Result<(Matrix, Matrix)> {
    if let Some(&k) = block_sizes.iter().find(|&&k| k < 2) {
        return Err(Error::BadBlockSize(k));
    }
    let m = block_sizes.len();
    if s > e_nullity || e_nullity > m {
        return Err(Error::BadParameters(format!(
            "need s <= e_nullity <= m, got {s}, {e_nullity}, {m}"
        )));
    }
    let mut es = Vec::with_capacity(m);
    let mut fs = Vec::with_capacity(m);
    for (i, &k) in block_sizes.iter().enumerate() {
        if i < s {
            let (e, f) = jordan_shuffle(k, field)?;
            es.push(e);
            fs.push(f);
            continue;
        }
        let mut e = Matrix::identity(field, k);
        if i < e_nullity {
            e.set(0, 0, field.zero());
        }
        es.push(e);
        fs.push(Matrix::jordan_block(field, k));
    }
    let e = Matrix::block_diag(field, &es)?;
    let f = Matrix::block_diag(field, &fs)?;
    let j = Matrix::block_diag(
        field,
        &block_sizes
            .iter()
            .map(|&k| Matrix::jordan_block(field, k))
            .collect::<Vec<_>>(),
    )?;
    let ok = e.mul(&f)? == j
        && e.is_idempotent()
        && e.nullity() == e_nullity
        && f.nullspace_basis() == j.nullspace_basis()
        && n0(&f)? == s;
    if !ok {
        return Err(defect("nilpotent E F split failed its checks"));
    }
    Ok((e, f))
}

/// Idempotents `E_i = I_{n-t} ⊕ D_i` whose product is `I_{n-t} ⊕ 0_t`.
///
/// `D_i` is a 0/1 diagonal with exactly `n_i` zeros. Zeros are handed out
/// over the trailing `t` coordinates left to right, starting with the last
/// factor and wrapping around, so together they cover every trailing
/// coordinate.
pub fn idempotent_chain(
    n: usize,
    t: usize,
    nullities: &[usize],
    field: FieldDescriptor,
) -> Result<Vec<Matrix>> {
    if nullities.is_empty() {
        return Err(Error::BadParameters("at least one idempotent is required".into()));
    }
    if t > n {
        return Err(Error::BadParameters(format!("t = {t} exceeds n = {n}")));
    }
    let sum: usize = nullities.iter().sum();
    if let Some(&ni) = nullities.iter().find(|&&ni| ni > t) {
        return Err(Error::Infeasible(format!("nullity {ni} exceeds n(H) = {t}")));
    }
    if sum < t {
        return Err(Error::Infeasible(format!(
            "sum of nullities {sum} is below r(I-H) = {t}"
        )));
    }
    let mut chain = vec![Matrix::identity(field, n); nullities.len()];
    let mut cursor = 0;
    for (e, &ni) in chain.iter_mut().zip(nullities).rev() {
        for j in 0..ni {
            let pos = n - t + (cursor + j) % t;
            e.set(pos, pos, field.zero());
        }
        if t > 0 {
            cursor = (cursor + ni) % t;
        }
    }
    let mut target = Matrix::identity(field, n);
    for i in n - t..n {
        target.set(i, i, field.zero());
    }
    let ok = Matrix::product(field, n, &chain)? == target
        && chain
            .iter()
            .zip(nullities)
            .all(|(e, &ni)| e.is_idempotent() && e.nullity() == ni);
    if !ok {
        return Err(defect("idempotent chain failed its checks"));
    }
    Ok(chain)
}

/// `F = Z_1 Z_2` with `Z_1^2 = Z_2^2 = 0` and `n(Z_i) = nz_i`.
///
/// Requires `r(F) <= n0(F)` and, for each requested nullity,
/// `r(F) <= n - nz_i <= n/2`.
///
/// The base pair has rank `r = r(F)`: with `v_i` spanning a complement of
/// `N(F)` and `u_i` spanning part of a complement of `R(F) ∩ N(F)` in `N(F)`,
/// `Z_2: v_i -> u_i` and `Z_1: u_i -> F v_i`, both vanishing elsewhere on the
/// chosen bases. Extra rank comes from pairs `x -> y` inside `N(F)` for `Z_2`
/// and `p -> q` into the kernel of `Z_1` for `Z_1`.
pub fn squarezero_pair(f: &Matrix, nz1: usize, nz2: usize) -> Result<(Matrix, Matrix)> {
    let field = f.field();
    let rep = invariant_report(f)?;
    let n = rep.n;
    let r = rep.rank;
    if r > rep.n0 {
        return Err(Error::Infeasible(format!(
            "r(F) = {r} exceeds n0(F) = {}",
            rep.n0
        )));
    }
    for nz in [nz1, nz2] {
        if nz > rep.nullity || 2 * nz < n {
            return Err(Error::BadRank(format!(
                "nullity {nz} outside [{}, {}] for order {n}",
                n.div_ceil(2),
                rep.nullity
            )));
        }
    }
    let d1 = n - nz1 - r;
    let d2 = n - nz2 - r;

    let kernel = f.kernel_vectors();
    let v = complete_with_units(field, n, &kernel);
    let w: Vec<Vector> = v.iter().map(|x| f.mul_vec(x)).collect::<Result<_>>()?;
    let cap: Vec<Vector> = f
        .colspace_basis()
        .intersect(&f.nullspace_basis())?
        .vectors()
        .to_vec();
    let c = extend_independent(&cap, &kernel, rep.nullity);
    debug_assert_eq!(c.len(), rep.n0);
    let u = &c[..r];

    // Kernel directions left for the Z_2 pairs: R∩N first, then the rest of c.
    let pool: Vec<Vector> = cap.iter().chain(&c[r..]).cloned().collect();
    let ys = &pool[..d2];
    let xs = &pool[d2..2 * d2];

    let zero = vec![field.zero(); n];
    let mut domain2: Vec<Vector> = v.clone();
    let mut images2: Vec<Vector> = u.to_vec();
    domain2.extend(u.iter().cloned());
    images2.extend(u.iter().map(|_| zero.clone()));
    for (idx, p) in pool.iter().enumerate() {
        domain2.push(p.clone());
        images2.push(if (d2..2 * d2).contains(&idx) {
            ys[idx - d2].clone()
        } else {
            zero.clone()
        });
    }
    debug_assert_eq!(xs.len(), d2);
    let z2 = Matrix::from_basis_images(field, n, &domain2, &images2)?;

    // Kernel of Z_1 must hold R(F) and the y's outside R(F).
    let y_outside: Vec<Vector> = ys.iter().skip(cap.len()).cloned().collect();
    let mut fixed: Vec<Vector> = w.clone();
    fixed.extend(y_outside.iter().cloned());
    fixed.extend(u.iter().cloned());
    let reuse = d1.min(y_outside.len());
    let units: Vec<Vector> = (0..n).map(|i| crate::matrix::unit_vector(field, n, i)).collect();
    let q_new = extend_independent(&fixed, &units, fixed.len() + (d1 - reuse));
    fixed.extend(q_new.iter().cloned());
    let ps = extend_independent(&fixed, &units, fixed.len() + d1);
    fixed.extend(ps.iter().cloned());
    let rest = complete_with_units(field, n, &fixed);
    if q_new.len() != d1 - reuse || ps.len() != d1 {
        return Err(defect("not enough room for the Z_1 rank pairs"));
    }
    let qs: Vec<Vector> = y_outside[..reuse].iter().chain(&q_new).cloned().collect();

    let mut domain1: Vec<Vector> = Vec::with_capacity(n);
    let mut images1: Vec<Vector> = Vec::with_capacity(n);
    for (ui, wi) in u.iter().zip(&w) {
        domain1.push(ui.clone());
        images1.push(wi.clone());
    }
    for (pj, qj) in ps.iter().zip(&qs) {
        domain1.push(pj.clone());
        images1.push(qj.clone());
    }
    for k in w.iter().chain(&y_outside).chain(&q_new).chain(&rest) {
        domain1.push(k.clone());
        images1.push(zero.clone());
    }
    let z1 = Matrix::from_basis_images(field, n, &domain1, &images1)?;

    let ok = z1.mul(&z2)? == *f
        && z1.is_square_zero()
        && z2.is_square_zero()
        && z1.nullity() == nz1
        && z2.nullity() == nz2;
    if !ok {
        return Err(defect("square-zero pair failed its checks"));
    }
    Ok((z1, z2))
}

/// Basis adapted to an idempotent: range first, then kernel, so that
/// `P^{-1} E P = I ⊕ 0`.
fn idempotent_eigenbasis(e: &Matrix) -> Matrix {
    let mut cols = e.pivot_columns();
    cols.extend(e.kernel_vectors());
    Matrix::from_columns(e.field(), e.rows(), &cols)
}

fn first_failure(g: &Matrix, spec: &FactorSpec) -> Result<Option<String>> {
    let d = decide(g, spec)?;
    let why = d.failures().next().map(|c| format!("condition {} fails: {c}", c.id));
    Ok(why)
}

/// Witness for `G = E_1 ... E_k Z_1 Z_2`.
///
/// `G` is brought to `0_{n0} ⊕ J ⊕ B` by a similarity `S`. With
/// `s = max(r(G) - n0(G), 0)` the nilpotent part splits as `J = H_2 F_2`
/// with `n0(F_2) = s`, giving `E = H_1 ⊕ H_2 ⊕ I` of nullity
/// `max(n_max, s)` and `F = 0 ⊕ F_2 ⊕ B` with `G ~ E F`. `E` is then split
/// into the requested idempotents and `F` into two square-zero factors.
pub fn factor_theorem1(g: &Matrix, nullities: &[usize], nz1: usize, nz2: usize) -> Result<Witness> {
    let field = g.field();
    let n = g.require_square()?;
    let spec = FactorSpec::two_square_zero(field, nullities.to_vec(), nz1, nz2);
    if let Some(why) = first_failure(g, &spec)? {
        return Err(Error::Infeasible(why));
    }

    let mut order: Vec<usize> = (0..nullities.len()).collect();
    order.sort_by_key(|&i| nullities[i]);
    let sorted: Vec<usize> = order.iter().map(|&i| nullities[i]).collect();

    let fd = fitting(g)?;
    let ns = nilpotent_structure(&fd.nilpotent)?;
    let z = ns.zero_block_count;
    let b = n - fd.nil_dim;
    let transform = fd.transform.mul(&Matrix::block_diag(
        field,
        &[ns.transform.clone(), Matrix::identity(field, b)],
    )?)?;
    let transform_inv = transform.inverse()?;

    let rank = g.rank();
    let s = rank.saturating_sub(z);
    let e_nullity = sorted.last().copied().unwrap_or(0).max(s);
    let h2 = s.max(e_nullity.saturating_sub(z));
    let h1 = e_nullity - h2;
    if h2 > ns.m || h1 > z {
        return Err(defect(format!(
            "cannot split n(E) = {e_nullity} over blocks (n0 = {z}, m = {})",
            ns.m
        )));
    }
    let mut hz = Matrix::identity(field, z);
    for i in z - h1..z {
        hz.set(i, i, field.zero());
    }
    let (hj, fj) = nilpotent_ef(&ns.block_sizes, s, h2, field)?;
    let e = Matrix::block_diag(field, &[hz, hj, Matrix::identity(field, b)])?;
    let f = Matrix::block_diag(
        field,
        &[Matrix::zeros(field, z, z), fj, fd.invertible.clone()],
    )?;

    let mut idems: Vec<Matrix> = Vec::new();
    if !sorted.is_empty() {
        let basis = idempotent_eigenbasis(&e);
        let basis_inv = basis.inverse()?;
        for d in idempotent_chain(n, e_nullity, &sorted, field)? {
            idems.push(basis.mul(&d)?.mul(&basis_inv)?);
        }
    } else if !e.is_identity() {
        return Err(defect("empty idempotent chain but E is not the identity"));
    }
    let (z1, z2) = squarezero_pair(&f, nz1, nz2)?;

    let back = |m: &Matrix| -> Result<Matrix> { transform.mul(m)?.mul(&transform_inv) };
    // The chain factors share an eigenbasis and commute, so they can be
    // emitted in the caller's order.
    let mut slots: Vec<Option<Matrix>> = vec![None; nullities.len()];
    for (pos, &orig) in order.iter().enumerate() {
        slots[orig] = Some(back(&idems[pos])?);
    }
    let mut factors: Vec<WitnessFactor> = slots
        .into_iter()
        .zip(nullities)
        .map(|(m, &ni)| WitnessFactor::new(m.expect("every slot filled"), Role::Idempotent, ni))
        .collect();
    factors.push(WitnessFactor::new(back(&z1)?, Role::SquareZero, nz1));
    factors.push(WitnessFactor::new(back(&z2)?, Role::SquareZero, nz2));
    let witness = Witness { factors };
    if !verify_witness(g, &witness).passed {
        return Err(defect("witness for two square-zero factors did not verify"));
    }
    Ok(witness)
}

/// Witness for `G = (c_1 E_1) ... (c_k E_k)` when `cG` is idempotent,
/// `c = (c_1 ... c_k)^{-1}`.
pub fn factor_scaled_idem(g: &Matrix, nullities: &[usize], scalars: &[FieldScalar]) -> Result<Witness> {
    let field = g.field();
    let n = g.require_square()?;
    if nullities.is_empty() {
        return Err(Error::BadParameters("at least one idempotent is required".into()));
    }
    let spec = FactorSpec::new(field, nullities.to_vec(), Some(scalars.to_vec()), vec![])?;
    let h = g.scale(&spec.scale_inverse())?;
    if !h.is_idempotent() {
        return Err(Error::NotScaledIdempotent);
    }
    if let Some(why) = first_failure(g, &spec)? {
        return Err(Error::Infeasible(why));
    }
    let t = h.nullity();
    let basis = idempotent_eigenbasis(&h);
    let basis_inv = basis.inverse()?;
    let mut factors = Vec::with_capacity(nullities.len());
    for ((d, &ni), c) in idempotent_chain(n, t, nullities, field)?
        .iter()
        .zip(nullities)
        .zip(scalars)
    {
        let e = basis.mul(d)?.mul(&basis_inv)?;
        factors.push(WitnessFactor {
            matrix: e.scale(c)?,
            role: Role::ScaledIdempotent,
            declared_nullity: ni,
            scalar: c.clone(),
        });
    }
    let witness = Witness { factors };
    if !verify_witness(g, &witness).passed {
        return Err(defect("scaled idempotent witness did not verify"));
    }
    Ok(witness)
}

/// Builds a witness for any shape with a constructive path: two square-zero
/// factors (scalars folded in by factoring `cG`), or no square-zero factors
/// with `cG` idempotent.
pub fn factor(g: &Matrix, spec: &FactorSpec) -> Result<Witness> {
    let decision = decide(g, spec)?;
    if let Some(c) = decision.failures().next() {
        return Err(Error::Infeasible(format!("condition {} fails: {c}", c.id)));
    }
    match spec.l() {
        2 => {
            let m = spec.sqz_nullities();
            if spec.all_scalars_one() {
                return factor_theorem1(g, spec.idem_nullities(), m[0], m[1]);
            }
            let cg = g.scale(&spec.scale_inverse())?;
            let mut w = factor_theorem1(&cg, spec.idem_nullities(), m[0], m[1])?;
            for (f, c) in w.factors.iter_mut().zip(spec.scalars()) {
                f.matrix = f.matrix.scale(c)?;
                f.role = Role::ScaledIdempotent;
                f.scalar = c.clone();
            }
            if !verify_witness(g, &w).passed {
                return Err(defect("scaled witness did not verify"));
            }
            Ok(w)
        }
        0 if decision.constructive == Constructive::Full => {
            if spec.k() == 0 {
                return Ok(Witness::default());
            }
            factor_scaled_idem(g, spec.idem_nullities(), spec.scalars())
        }
        0 => Err(Error::DecisionOnly(
            "no square-zero factors and cG is not idempotent".to_string(),
        )),
        _ => Err(Error::DecisionOnly(
            "one square-zero factor".to_string(),
        )),
    }
}
