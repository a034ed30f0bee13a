//! Parallel systems, tridiagonal-system axioms, split sequences, and the
//! relation residuals that characterize the q-Serre case.

use serde::Serialize;

use crate::algebra::{generated_algebra_dim, invariant_subspace_witness};
use crate::error::{Error, Result};
use crate::matrix::{mat_poly_eval, Matrix};
use crate::poly::Polynomial;
use crate::scalar::{QContext, Rational};
use crate::subspace::Subspace;

fn all_distinct(xs: &[Rational]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, x)| xs[i + 1..].iter().all(|y| y != x))
}

/// The isomorphism invariant of a sharp system: eigenvalue sequence, dual
/// eigenvalue sequence, and split sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterArray {
    theta: Vec<Rational>,
    theta_star: Vec<Rational>,
    zeta: Vec<Rational>,
}

impl ParameterArray {
    pub fn new(
        theta: Vec<Rational>,
        theta_star: Vec<Rational>,
        zeta: Vec<Rational>,
    ) -> Result<Self> {
        if theta.is_empty() || theta.len() != theta_star.len() || theta.len() != zeta.len() {
            return Err(Error::InvalidParameterArray(
                "theta, theta_star, zeta must share a common length d + 1 >= 1".into(),
            ));
        }
        if !all_distinct(&theta) || !all_distinct(&theta_star) {
            return Err(Error::InvalidParameterArray(
                "eigenvalue sequences must be mutually distinct".into(),
            ));
        }
        if !zeta[0].is_one() {
            return Err(Error::InvalidParameterArray("zeta_0 must equal 1".into()));
        }
        Ok(ParameterArray {
            theta,
            theta_star,
            zeta,
        })
    }

    pub fn diameter(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }

    pub fn theta_star(&self) -> &[Rational] {
        &self.theta_star
    }

    pub fn zeta(&self) -> &[Rational] {
        &self.zeta
    }
}

/// The four polynomial families attached to a pair of eigenvalue sequences:
/// eta_i has roots theta_d .. theta_{d-i+1}, tau_i has roots
/// theta_0 .. theta_{i-1}, and likewise for the starred sequences.
pub struct EtaTau {
    pub eta: Vec<Polynomial>,
    pub eta_star: Vec<Polynomial>,
    pub tau: Vec<Polynomial>,
    pub tau_star: Vec<Polynomial>,
}

pub fn eta_tau_polys(theta: &[Rational], theta_star: &[Rational]) -> EtaTau {
    let d = theta.len() - 1;
    let build = |vals: &[Rational], from_top: bool| -> Vec<Polynomial> {
        (0..=d)
            .map(|i| {
                let roots: Vec<Rational> = (0..i)
                    .map(|k| {
                        if from_top {
                            vals[d - k].clone()
                        } else {
                            vals[k].clone()
                        }
                    })
                    .collect();
                Polynomial::from_roots(&roots)
            })
            .collect()
    };
    EtaTau {
        eta: build(theta, true),
        eta_star: build(theta_star, true),
        tau: build(theta, false),
        tau_star: build(theta_star, false),
    }
}

/// Checks the expansion identities
/// `eta_d = sum_i eta_{d-i}(theta_0) tau_i` and the starred counterpart,
/// coefficientwise.
pub fn check_polysum(pa: &ParameterArray) -> bool {
    let d = pa.diameter();
    let et = eta_tau_polys(pa.theta(), pa.theta_star());
    let expand = |polys: &[Polynomial], duals: &[Polynomial], at: &Rational| -> Polynomial {
        (0..=d).fold(Polynomial::zero(), |acc, i| {
            acc.add(&duals[i].scale(&polys[d - i].eval(at)))
        })
    };
    let rhs = expand(&et.eta, &et.tau, &pa.theta()[0]);
    let rhs_star = expand(&et.eta_star, &et.tau_star, &pa.theta_star()[0]);
    et.eta[d] == rhs && et.eta_star[d] == rhs_star
}

/// The spectral projectors of a diagonalizable matrix with the given
/// (distinct) eigenvalue list, by the Lagrange product formula.
///
/// Errors when the eigenvalues repeat, when the matrix is not annihilated by
/// the full product of (A - theta_i I), or when some theta_i is missing from
/// the spectrum (its projector would be zero).
pub fn primitive_idempotents(a: &Matrix, theta: &[Rational]) -> Result<Vec<Matrix>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "idempotents of a non-square matrix".into(),
        ));
    }
    if theta.is_empty() {
        return Err(Error::SpectrumMismatch("empty eigenvalue list".into()));
    }
    if !all_distinct(theta) {
        return Err(Error::RepeatedEigenvalues);
    }
    let annihilator = mat_poly_eval(&Polynomial::from_roots(theta), a)?;
    if !annihilator.is_zero() {
        return Err(Error::SpectrumMismatch(
            "matrix is not annihilated by the product of (A - theta_i I)".into(),
        ));
    }
    let mut idempotents = Vec::with_capacity(theta.len());
    for (i, ti) in theta.iter().enumerate() {
        let others: Vec<Rational> = theta
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, t)| t.clone())
            .collect();
        let numerator = mat_poly_eval(&Polynomial::from_roots(&others), a)?;
        let denom = others
            .iter()
            .fold(Rational::one(), |acc, tj| &acc * &(ti - tj));
        let e = numerator.scale(&denom.recip().expect("distinct eigenvalues"));
        if e.is_zero() {
            return Err(Error::SpectrumMismatch(format!(
                "theta = {ti} is not an eigenvalue of the matrix"
            )));
        }
        idempotents.push(e);
    }
    Ok(idempotents)
}

/// A pair of diagonalizable maps with ordered primitive idempotent families.
#[derive(Clone, Debug)]
pub struct ParallelSystem {
    ctx: QContext,
    a: Matrix,
    a_star: Matrix,
    e: Vec<Matrix>,
    e_star: Vec<Matrix>,
    theta: Vec<Rational>,
    theta_star: Vec<Rational>,
}

/// Which tridiagonal-system axiom broke, for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailingAxiom {
    Parallel,
    Band,
    Irreducibility,
}

impl std::fmt::Display for FailingAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FailingAxiom::Parallel => "parallel",
            FailingAxiom::Band => "band",
            FailingAxiom::Irreducibility => "irreducibility",
        };
        write!(f, "{s}")
    }
}

/// Every axiom checked by [`ParallelSystem::verify`].
///
/// `is_td_system = is_parallel && td_band_ok && irreducible` and
/// `is_mock_td_system = is_parallel && td_band_ok && mock_vi_ok`.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub is_parallel: bool,
    pub is_sharp: bool,
    pub td_band_ok: bool,
    pub irreducible: bool,
    pub mock_vi_ok: bool,
    pub qserre_ok: bool,
    pub is_td_system: bool,
    pub is_mock_td_system: bool,
    pub witness: Option<Subspace>,
}

impl AxiomReport {
    /// The first tridiagonal-system axiom that failed, if any.
    pub fn failing_axiom(&self) -> Option<FailingAxiom> {
        if self.is_td_system {
            None
        } else if !self.is_parallel {
            Some(FailingAxiom::Parallel)
        } else if !self.td_band_ok {
            Some(FailingAxiom::Band)
        } else {
            Some(FailingAxiom::Irreducibility)
        }
    }
}

impl ParallelSystem {
    /// Builds the system from the two maps and their eigenvalue orderings;
    /// the idempotent families are derived, never supplied.
    pub fn new(
        ctx: QContext,
        a: Matrix,
        a_star: Matrix,
        theta: Vec<Rational>,
        theta_star: Vec<Rational>,
    ) -> Result<Self> {
        if theta.len() != ctx.d() + 1 || theta_star.len() != ctx.d() + 1 {
            return Err(Error::InvalidSystem(format!(
                "expected {} eigenvalues for diameter {}",
                ctx.d() + 1,
                ctx.d()
            )));
        }
        if !a.is_square() || !a_star.is_square() || a.rows() != a_star.rows() {
            return Err(Error::InvalidSystem(
                "A and A_star must be square matrices of equal size".into(),
            ));
        }
        let e = primitive_idempotents(&a, &theta)?;
        let e_star = primitive_idempotents(&a_star, &theta_star)?;
        Ok(ParallelSystem {
            ctx,
            a,
            a_star,
            e,
            e_star,
            theta,
            theta_star,
        })
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn a_star(&self) -> &Matrix {
        &self.a_star
    }

    pub fn idempotents(&self) -> &[Matrix] {
        &self.e
    }

    pub fn dual_idempotents(&self) -> &[Matrix] {
        &self.e_star
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }

    pub fn theta_star(&self) -> &[Rational] {
        &self.theta_star
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn diameter(&self) -> usize {
        self.ctx.d()
    }

    pub fn eigenspace(&self, i: usize) -> Subspace {
        Subspace::image(&self.e[i])
    }

    pub fn dual_eigenspace(&self, i: usize) -> Subspace {
        Subspace::image(&self.e_star[i])
    }

    pub fn is_sharp(&self) -> bool {
        self.e_star[0].rank() == 1
    }

    /// Runs every axiom check and returns the full report. Reducibility
    /// failures come with a witness subspace when one is found over Q.
    pub fn verify(&self) -> AxiomReport {
        let n = self.dim();
        let is_parallel = self.check_parallel_family(&self.a, &self.theta, &self.e)
            && self.check_parallel_family(&self.a_star, &self.theta_star, &self.e_star);
        let td_band_ok =
            self.check_band(&self.e, &self.a_star) && self.check_band(&self.e_star, &self.a);
        let irreducible = generated_algebra_dim(&[self.a.clone(), self.a_star.clone()])
            .map(|dim| dim == n * n)
            .unwrap_or(false);
        let mock_vi_ok = self.check_mock_vi();
        let is_sharp = self.is_sharp();
        let qserre_ok = qserre_residuals(&self.a, &self.a_star, &self.ctx)
            .map(|(r1, r2)| r1.is_zero() && r2.is_zero())
            .unwrap_or(false);
        let witness = if irreducible {
            None
        } else {
            invariant_subspace_witness(&self.a, &self.a_star)
                .ok()
                .flatten()
        };
        AxiomReport {
            is_parallel,
            is_sharp,
            td_band_ok,
            irreducible,
            mock_vi_ok,
            qserre_ok,
            is_td_system: is_parallel && td_band_ok && irreducible,
            is_mock_td_system: is_parallel && td_band_ok && mock_vi_ok,
            witness,
        }
    }

    fn check_parallel_family(&self, a: &Matrix, theta: &[Rational], e: &[Matrix]) -> bool {
        let n = self.dim();
        let ok = || -> Result<bool> {
            let mut sum = Matrix::zeros(n, n);
            for ei in e {
                sum = sum.add(ei)?;
            }
            if sum != Matrix::identity(n) {
                return Ok(false);
            }
            for (i, ei) in e.iter().enumerate() {
                if ei.is_zero() {
                    return Ok(false);
                }
                for (j, ej) in e.iter().enumerate() {
                    let prod = ei.mul(ej)?;
                    let expected = if i == j { ei.clone() } else { Matrix::zeros(n, n) };
                    if prod != expected {
                        return Ok(false);
                    }
                }
                let scaled = ei.scale(&theta[i]);
                if a.mul(ei)? != scaled || ei.mul(a)? != scaled {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        ok().unwrap_or(false)
    }

    fn check_band(&self, e: &[Matrix], middle: &Matrix) -> bool {
        let d = self.diameter();
        for i in 0..=d {
            for j in 0..=d {
                if i.abs_diff(j) > 1 {
                    let prod = e[i]
                        .mul(middle)
                        .and_then(|m| m.mul(&e[j]))
                        .expect("shapes agree");
                    if !prod.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_mock_vi(&self) -> bool {
        let d = self.diameter();
        let sandwich = |inner: &Matrix| -> Matrix {
            self.e_star[0]
                .mul(inner)
                .and_then(|m| m.mul(&self.e_star[0]))
                .expect("shapes agree")
        };
        !sandwich(&self.e[0]).is_zero() && !sandwich(&self.e[d]).is_zero()
    }

    /// chi_i = tr(tau_i(A) E*_0); requires sharpness.
    pub fn chi(&self, i: usize) -> Result<Rational> {
        let rank = self.e_star[0].rank();
        if rank != 1 {
            return Err(Error::NotSharp(rank));
        }
        let tau_i = Polynomial::from_roots(&self.theta[..i]);
        mat_poly_eval(&tau_i, &self.a)?.mul(&self.e_star[0])?.trace()
    }

    /// The split sequence
    /// zeta_i = (theta*_0 - theta*_1) ... (theta*_0 - theta*_i) chi_i.
    pub fn split_sequence(&self) -> Result<Vec<Rational>> {
        let d = self.diameter();
        let mut zeta = Vec::with_capacity(d + 1);
        let mut prefix = Rational::one();
        for i in 0..=d {
            if i > 0 {
                prefix = &prefix * &(&self.theta_star[0] - &self.theta_star[i]);
            }
            zeta.push(&prefix * &self.chi(i)?);
        }
        Ok(zeta)
    }

    /// (theta, theta_star, split sequence); requires sharpness.
    pub fn parameter_array(&self) -> Result<ParameterArray> {
        ParameterArray::new(
            self.theta.clone(),
            self.theta_star.clone(),
            self.split_sequence()?,
        )
    }

    /// The four systems obtained by reversing the idempotent orderings
    /// (and matching eigenvalue lists); index 0 is the system itself.
    pub fn relatives(&self) -> Vec<ParallelSystem> {
        let rev = |v: &[Matrix]| -> Vec<Matrix> { v.iter().rev().cloned().collect() };
        let rev_r = |v: &[Rational]| -> Vec<Rational> { v.iter().rev().cloned().collect() };
        let mut out = Vec::with_capacity(4);
        for (flip_e, flip_e_star) in [(false, false), (true, false), (false, true), (true, true)] {
            out.push(ParallelSystem {
                ctx: self.ctx.clone(),
                a: self.a.clone(),
                a_star: self.a_star.clone(),
                e: if flip_e { rev(&self.e) } else { self.e.clone() },
                e_star: if flip_e_star {
                    rev(&self.e_star)
                } else {
                    self.e_star.clone()
                },
                theta: if flip_e {
                    rev_r(&self.theta)
                } else {
                    self.theta.clone()
                },
                theta_star: if flip_e_star {
                    rev_r(&self.theta_star)
                } else {
                    self.theta_star.clone()
                },
            });
        }
        out
    }
}

/// Both q-Serre residuals, exactly; the relations hold iff both are zero.
pub fn qserre_residuals(a: &Matrix, a_star: &Matrix, ctx: &QContext) -> Result<(Matrix, Matrix)> {
    if !a.is_square() || !a_star.is_square() || a.rows() != a_star.rows() {
        return Err(Error::DimensionMismatch(
            "q-Serre residuals need square matrices of equal size".into(),
        ));
    }
    let three = ctx.q_int(3);
    let residual = |x: &Matrix, y: &Matrix| -> Result<Matrix> {
        let x2 = x.mul(x)?;
        let x3 = x2.mul(x)?;
        let t1 = x3.mul(y)?;
        let t2 = x2.mul(y)?.mul(x)?.scale(&three);
        let t3 = x.mul(y)?.mul(&x2)?.scale(&three);
        let t4 = y.mul(&x3)?;
        t1.sub(&t2)?.add(&t3)?.sub(&t4)
    };
    Ok((residual(a, a_star)?, residual(a_star, a)?))
}

/// The two commutator residuals of the general tridiagonal relations with
/// explicit scalars; both are zero iff the relations hold.
#[allow(clippy::too_many_arguments)]
pub fn tridiagonal_relation_residuals(
    a: &Matrix,
    a_star: &Matrix,
    beta: &Rational,
    gamma: &Rational,
    gamma_star: &Rational,
    rho: &Rational,
    rho_star: &Rational,
) -> Result<(Matrix, Matrix)> {
    if !a.is_square() || !a_star.is_square() || a.rows() != a_star.rows() {
        return Err(Error::DimensionMismatch(
            "tridiagonal relation residuals need square matrices of equal size".into(),
        ));
    }
    // x^2 y - beta x y x + y x^2 - g (x y + y x) - r y
    let inner = |x: &Matrix, y: &Matrix, g: &Rational, r: &Rational| -> Result<Matrix> {
        let x2 = x.mul(x)?;
        let anti = x.mul(y)?.add(&y.mul(x)?)?;
        x2.mul(y)?
            .sub(&x.mul(y)?.mul(x)?.scale(beta))?
            .add(&y.mul(&x2)?)?
            .sub(&anti.scale(g))?
            .sub(&y.scale(r))
    };
    let commutator = |x: &Matrix, y: &Matrix| -> Result<Matrix> { x.mul(y)?.sub(&y.mul(x)?) };
    let first = commutator(a, &inner(a, a_star, gamma, rho)?)?;
    let second = commutator(a_star, &inner(a_star, a, gamma_star, rho_star)?)?;
    Ok((first, second))
}

/// Exact checks of the trace identities tying the split sequence to
/// tr(E_d E*_0) and tr(E_0 E*_0), plus the four nonvanishing facts.
#[derive(Clone, Debug, Serialize)]
pub struct TraceIdentityReport {
    pub big1: bool,
    pub big2: bool,
    pub nz_tr_ed_estar0: bool,
    pub nz_tr_e0_estar0: bool,
    pub nz_zeta_d: bool,
    pub nz_weighted_sum: bool,
}

impl TraceIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.big1
            && self.big2
            && self.nz_tr_ed_estar0
            && self.nz_tr_e0_estar0
            && self.nz_zeta_d
            && self.nz_weighted_sum
    }
}

pub fn trace_identities(ps: &ParallelSystem) -> Result<TraceIdentityReport> {
    let d = ps.diameter();
    let zeta = ps.split_sequence()?;
    let et = eta_tau_polys(ps.theta(), ps.theta_star());
    let theta0 = &ps.theta()[0];
    let theta_star0 = &ps.theta_star()[0];

    let tr_top = ps.idempotents()[d]
        .mul(&ps.dual_idempotents()[0])?
        .trace()?;
    let tr_bottom = ps.idempotents()[0]
        .mul(&ps.dual_idempotents()[0])?
        .trace()?;

    let big1_rhs =
        &(&et.eta_star[d].eval(theta_star0) * &et.tau[d].eval(&ps.theta()[d])) * &tr_top;
    let weighted_sum = (0..=d).fold(Rational::zero(), |acc, i| {
        let term =
            &(&et.eta[d - i].eval(theta0) * &et.eta_star[d - i].eval(theta_star0)) * &zeta[i];
        &acc + &term
    });
    let big2_rhs = &(&et.eta[d].eval(theta0) * &et.eta_star[d].eval(theta_star0)) * &tr_bottom;

    Ok(TraceIdentityReport {
        big1: zeta[d] == big1_rhs,
        big2: weighted_sum == big2_rhs,
        nz_tr_ed_estar0: !tr_top.is_zero(),
        nz_tr_e0_estar0: !tr_bottom.is_zero(),
        nz_zeta_d: !zeta[d].is_zero(),
        nz_weighted_sum: !weighted_sum.is_zero(),
    })
}

/// The normalized geometric eigenvalue sequences theta_i = q^(2i-d) and
/// theta*_i = q^(d-2i).
pub fn geometric_eigenvalues(ctx: &QContext) -> (Vec<Rational>, Vec<Rational>) {
    let d = ctx.d() as i64;
    let theta = (0..=d)
        .map(|i| ctx.q().pow(2 * i - d).expect("q nonzero"))
        .collect();
    let theta_star = (0..=d)
        .map(|i| ctx.q().pow(d - 2 * i).expect("q nonzero"))
        .collect();
    (theta, theta_star)
}

/// True iff theta_i = q^(2i) theta_0 and theta*_(d-i) = q^(2i) theta*_d for
/// all i, i.e. both progressions are geometric with ratio q^2 in the
/// appropriate orderings.
pub fn is_qserre_spectrum(pa: &ParameterArray, ctx: &QContext) -> bool {
    let d = pa.diameter();
    let q2 = ctx.q().pow(2).expect("q nonzero");
    let mut ratio = Rational::one();
    for i in 0..=d {
        if pa.theta()[i] != &ratio * &pa.theta()[0]
            || pa.theta_star()[d - i] != &ratio * &pa.theta_star()[d]
        {
            return false;
        }
        ratio = &ratio * &q2;
    }
    true
}

/// Builds the thin (all split summands one-dimensional) candidate system in
/// the split basis: A lower bidiagonal with subdiagonal 1, A* upper
/// bidiagonal with superdiagonal zeta_i / zeta_{i-1}.
///
/// The result is a parallel system by construction, but it need not satisfy
/// the band or irreducibility axioms; callers must run
/// [`ParallelSystem::verify`]. When the result verifies, its split sequence
/// is exactly `pa.zeta()`.
pub fn from_parameter_array_thin(pa: &ParameterArray, ctx: &QContext) -> Result<ParallelSystem> {
    let d = pa.diameter();
    if ctx.d() != d {
        return Err(Error::InvalidParameterArray(format!(
            "context diameter {} does not match parameter array diameter {d}",
            ctx.d()
        )));
    }
    for (i, z) in pa.zeta().iter().enumerate().skip(1) {
        if z.is_zero() {
            return Err(Error::ZeroZeta(i));
        }
    }
    let n = d + 1;
    let mut a = Matrix::zeros(n, n);
    let mut a_star = Matrix::zeros(n, n);
    for i in 0..n {
        a.set(i, i, pa.theta()[i].clone());
        a_star.set(i, i, pa.theta_star()[i].clone());
    }
    for i in 1..n {
        a.set(i, i - 1, Rational::one());
        let phi = &pa.zeta()[i] / &pa.zeta()[i - 1];
        a_star.set(i - 1, i, phi);
    }
    ParallelSystem::new(
        ctx.clone(),
        a,
        a_star,
        pa.theta().to_vec(),
        pa.theta_star().to_vec(),
    )
}

/// Searches for an invertible intertwiner S with S A_1 = A_2 S and
/// S A*_1 = A*_2 S. Returns `None` when the systems cannot be isomorphic
/// (different eigenvalue sequences, or no invertible solution).
pub fn find_isomorphism(ps1: &ParallelSystem, ps2: &ParallelSystem) -> Result<Option<Matrix>> {
    let n = ps1.dim();
    if n != ps2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "systems live on spaces of dimension {} and {}",
            n,
            ps2.dim()
        )));
    }
    if ps1.theta() != ps2.theta() || ps1.theta_star() != ps2.theta_star() {
        return Ok(None);
    }

    // One equation per entry of S A_1 - A_2 S and of S A*_1 - A*_2 S;
    // the unknown S is flattened as s[i*n + j].
    let mut coeffs = Matrix::zeros(2 * n * n, n * n);
    let fill = |offset: usize, a1: &Matrix, a2: &Matrix, m: &mut Matrix| {
        for i in 0..n {
            for j in 0..n {
                let row = offset + i * n + j;
                for k in 0..n {
                    let v = m.get(row, i * n + k) + a1.get(k, j);
                    m.set(row, i * n + k, v);
                    let v = m.get(row, k * n + j) - a2.get(i, k);
                    m.set(row, k * n + j, v);
                }
            }
        }
    };
    fill(0, ps1.a(), ps2.a(), &mut coeffs);
    fill(n * n, ps1.a_star(), ps2.a_star(), &mut coeffs);

    let unflatten = |v: &[Rational]| -> Matrix {
        let mut s = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                s.set(i, j, v[i * n + j].clone());
            }
        }
        s
    };
    let candidates: Vec<Matrix> = coeffs
        .kernel_basis()
        .iter()
        .map(|v| unflatten(v))
        .collect();

    let verified = |s: &Matrix| -> Result<bool> {
        Ok(s.inverse().is_ok()
            && s.mul(ps1.a())? == ps2.a().mul(s)?
            && s.mul(ps1.a_star())? == ps2.a_star().mul(s)?)
    };
    for s in &candidates {
        if verified(s)? {
            return Ok(Some(s.clone()));
        }
    }
    // The solution space may contain invertible elements only off the
    // coordinate axes; try small integer combinations of basis pairs.
    for (i, si) in candidates.iter().enumerate() {
        for sj in candidates.iter().skip(i + 1) {
            for c in [1i64, -1, 2, -2, 3, -3] {
                let s = si.add(&sj.scale(&Rational::from_int(c)))?;
                if verified(&s)? {
                    return Ok(Some(s));
                }
            }
        }
    }
    Ok(None)
}
