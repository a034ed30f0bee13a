//! The unital algebra generated by a set of matrices, and a best-effort
//! search for joint invariant subspaces.
//!
//! The dimension test is the authoritative irreducibility check: the span of
//! words in rational matrices has the same dimension over Q and over any
//! extension field, so `generated_algebra_dim == n^2` rules out common
//! invariant subspaces over the algebraic closure, and `< n^2` guarantees one
//! exists there. The witness search is diagnostic only and may return nothing
//! even for a reducible pair (its witnesses live in Q^n).

use crate::error::{Error, Result};
use crate::matrix::{mat_poly_eval, Matrix};
use crate::poly::Polynomial;
use crate::scalar::Rational;
use crate::subspace::Subspace;

/// Incremental echelon basis used to track the span of flattened matrices.
struct Echelon {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: vec![],
            pivots: vec![],
        }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; if independent, inserts it and
    /// returns true.
    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = &*vi - &(&c * ri);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

fn check_square_family(gens: &[Matrix]) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Err(Error::DimensionMismatch("no generators given".into()));
    };
    if !first.is_square() {
        return Err(Error::DimensionMismatch("generators must be square".into()));
    }
    let n = first.rows();
    if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::DimensionMismatch("generators differ in size".into()));
    }
    Ok(n)
}

/// Dimension of the unital matrix algebra generated by `gens`.
///
/// Starts from the identity and closes the span under left multiplication by
/// each generator; the dimension is bounded by n^2 and strictly increases
/// until the fixed point, so the loop terminates.
pub fn generated_algebra_dim(gens: &[Matrix]) -> Result<usize> {
    let n = check_square_family(gens)?;
    let mut ech = Echelon::new();
    let identity = Matrix::identity(n);
    ech.insert(identity.flatten());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let prod = g.mul(m)?;
                if ech.insert(prod.flatten()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    Ok(ech.len())
}

/// Characteristic polynomial (monic, ascending coefficients) via the
/// Faddeev-LeVerrier recurrence.
pub fn char_poly(a: &Matrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "characteristic polynomial of non-square matrix".into(),
        ));
    }
    let n = a.rows();
    let mut m = Matrix::identity(n);
    // descending coefficients: lambda^n + c[1] lambda^(n-1) + ... + c[n]
    let mut coeffs = vec![Rational::one()];
    for k in 1..=n {
        let am = a.mul(&m)?;
        let ck = &am.trace()? / &Rational::from_int(-(k as i64));
        m = am;
        for i in 0..n {
            let v = m.get(i, i) + &ck;
            m.set(i, i, v);
        }
        coeffs.push(ck);
    }
    coeffs.reverse();
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Rational eigenvalues of `a`, sorted ascending.
pub fn rational_eigenvalues(a: &Matrix) -> Result<Vec<Rational>> {
    Ok(char_poly(a)?.rational_roots())
}

/// Grows `seed` to the smallest subspace containing it that is invariant
/// under both maps.
fn joint_closure(seed: &[Rational], a: &Matrix, b: &Matrix) -> Result<Subspace> {
    let n = a.rows();
    let mut space = Subspace::from_vectors(n, &[seed.to_vec()])?;
    loop {
        let mut images = space.basis_vectors();
        for v in space.basis_vectors() {
            images.push(a.mul_vec(&v)?);
            images.push(b.mul_vec(&v)?);
        }
        let grown = Subspace::from_vectors(n, &images)?;
        if grown.dim() == space.dim() {
            return Ok(space);
        }
        space = grown;
    }
}

/// Best-effort search for a joint invariant subspace with 0 < dim < n.
///
/// Seeds the closure with every rational eigenvector of each map, then with
/// pairwise sums and differences of those eigenvectors. A returned subspace
/// is always a genuine witness; `None` is inconclusive on its own (the
/// dimension test decides).
pub fn invariant_subspace_witness(a: &Matrix, b: &Matrix) -> Result<Option<Subspace>> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(
            "witness search needs two square matrices of equal size".into(),
        ));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(None);
    }
    let mut seeds: Vec<Vec<Rational>> = Vec::new();
    let mut eigenvectors: Vec<Vec<Rational>> = Vec::new();
    for m in [a, b] {
        for lambda in rational_eigenvalues(m)? {
            let shifted = mat_poly_eval(&Polynomial::from_roots(&[lambda]), m)?;
            for v in shifted.kernel_basis() {
                eigenvectors.push(v.clone());
                seeds.push(v);
            }
        }
    }
    for (i, u) in eigenvectors.iter().enumerate() {
        for w in eigenvectors.iter().skip(i + 1) {
            let sum: Vec<Rational> = u.iter().zip(w).map(|(x, y)| x + y).collect();
            let diff: Vec<Rational> = u.iter().zip(w).map(|(x, y)| x - y).collect();
            seeds.push(sum);
            seeds.push(diff);
        }
    }
    for seed in seeds.iter().take(96) {
        if seed.iter().all(Rational::is_zero) {
            continue;
        }
        let w = joint_closure(seed, a, b)?;
        if w.dim() > 0 && w.dim() < n {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
