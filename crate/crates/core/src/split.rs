//! The split decomposition and the ladder-map reading of the split sequence.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::Rational;
use crate::subspace::{maps_into, Subspace};
use crate::system::ParallelSystem;

/// Computes U_i = (E*_0 V + ... + E*_i V) /\ (E_i V + ... + E_d V).
///
/// Errors when the resulting subspaces fail to form a decomposition of V
/// (dimensions summing to n with every summand nonzero); that failure
/// signals that `ps` is not a tridiagonal system rather than a bug here.
pub fn split_decomposition(ps: &ParallelSystem) -> Result<Vec<Subspace>> {
    let n = ps.dim();
    let d = ps.diameter();

    let mut dual_prefix = Vec::with_capacity(d + 1);
    let mut acc = Subspace::zero(n);
    for i in 0..=d {
        acc = acc.sum(&ps.dual_eigenspace(i))?;
        dual_prefix.push(acc.clone());
    }
    let mut suffix = vec![Subspace::zero(n); d + 1];
    let mut acc = Subspace::zero(n);
    for i in (0..=d).rev() {
        acc = acc.sum(&ps.eigenspace(i))?;
        suffix[i] = acc.clone();
    }

    let u: Vec<Subspace> = (0..=d)
        .map(|i| dual_prefix[i].intersect(&suffix[i]))
        .collect::<Result<_>>()?;

    let total: usize = u.iter().map(Subspace::dim).sum();
    if total != n {
        return Err(Error::NotDecomposition(format!(
            "summand dimensions add to {total}, ambient dimension is {n}"
        )));
    }
    if let Some(i) = u.iter().position(Subspace::is_zero) {
        return Err(Error::NotDecomposition(format!("U_{i} is the zero subspace")));
    }
    Ok(u)
}

/// Verifies the defining inclusions `(A - theta_i) U_i <= U_{i+1}` and
/// `(A* - theta*_i) U_i <= U_{i-1}` plus both partial-sum equalities
/// against the eigenspace families; all checks exact.
pub fn verify_split(ps: &ParallelSystem, u: &[Subspace]) -> Result<bool> {
    let n = ps.dim();
    let d = ps.diameter();
    if u.len() != d + 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected {} summands, got {}",
            d + 1,
            u.len()
        )));
    }
    if u.iter().any(|s| s.ambient_dim() != n) {
        return Err(Error::AmbientMismatch {
            left: u.iter().map(Subspace::ambient_dim).max().unwrap_or(0),
            right: n,
        });
    }

    let zero = Subspace::zero(n);
    for i in 0..=d {
        let shifted_a = shift(ps.a(), &ps.theta()[i]);
        let up = if i == d { &zero } else { &u[i + 1] };
        if !maps_into(&shifted_a, &u[i], up)? {
            return Ok(false);
        }
        let shifted_a_star = shift(ps.a_star(), &ps.theta_star()[i]);
        let down = if i == 0 { &zero } else { &u[i - 1] };
        if !maps_into(&shifted_a_star, &u[i], down)? {
            return Ok(false);
        }
    }

    let mut u_prefix = Subspace::zero(n);
    let mut dual_prefix = Subspace::zero(n);
    for (i, ui) in u.iter().enumerate() {
        u_prefix = u_prefix.sum(ui)?;
        dual_prefix = dual_prefix.sum(&ps.dual_eigenspace(i))?;
        if u_prefix != dual_prefix {
            return Ok(false);
        }
    }
    let mut u_suffix = Subspace::zero(n);
    let mut e_suffix = Subspace::zero(n);
    for i in (0..=d).rev() {
        u_suffix = u_suffix.sum(&u[i])?;
        e_suffix = e_suffix.sum(&ps.eigenspace(i))?;
        if u_suffix != e_suffix {
            return Ok(false);
        }
    }
    Ok(true)
}

fn shift(m: &Matrix, theta: &Rational) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        let v = out.get(i, i) - theta;
        out.set(i, i, v);
    }
    out
}

/// Applies `(A* - theta*_1) ... (A* - theta*_i) (A - theta_{i-1}) ... (A - theta_0)`
/// to the basis vector of U_0 and returns the scalar it produces.
///
/// Requires `dim U_0 = 1`; errors when the image is not a multiple of the
/// input, which signals a broken split structure.
pub fn ladder_eigenvalue(ps: &ParallelSystem, u: &[Subspace], i: usize) -> Result<Rational> {
    let Some(u0) = u.first() else {
        return Err(Error::InvalidSystem("empty decomposition".into()));
    };
    if u0.dim() != 1 {
        return Err(Error::InvalidSystem(format!(
            "ladder needs dim U_0 = 1, got {}",
            u0.dim()
        )));
    }
    let v = u0.basis_vectors().remove(0);
    let mut w = v.clone();
    for k in 0..i {
        w = shift(ps.a(), &ps.theta()[k]).mul_vec(&w)?;
    }
    for k in (1..=i).rev() {
        w = shift(ps.a_star(), &ps.theta_star()[k]).mul_vec(&w)?;
    }
    let pivot = v
        .iter()
        .position(|x| !x.is_zero())
        .expect("basis vector is nonzero");
    let c = &w[pivot] / &v[pivot];
    for (wi, vi) in w.iter().zip(&v) {
        if *wi != &c * vi {
            return Err(Error::NonScalarLadder);
        }
    }
    Ok(c)
}

/// Repeated-inclusion forms: `tau_i(A) U_0 <= U_i` and the dual ladder
/// `(A* - theta*_1)...(A* - theta*_i) U_i <= U_0`.
pub fn verify_ladder_inclusions(ps: &ParallelSystem, u: &[Subspace]) -> Result<bool> {
    let d = ps.diameter();
    for i in 0..=d {
        let tau_i = Polynomial::from_roots(&ps.theta()[..i]);
        let raised = crate::matrix::mat_poly_eval(&tau_i, ps.a())?;
        if !maps_into(&raised, &u[0], &u[i])? {
            return Ok(false);
        }
        let mut lowering = Matrix::identity(ps.dim());
        for k in 1..=i {
            lowering = lowering.mul(&shift(ps.a_star(), &ps.theta_star()[k]))?;
        }
        if !maps_into(&lowering, &u[i], &u[0])? {
            return Ok(false);
        }
    }
    Ok(true)
}
