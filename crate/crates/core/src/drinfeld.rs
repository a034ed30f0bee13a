//! The Drinfel'd polynomial of a split sequence and the prediction it makes
//! about t-linear perturbations.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{QContext, Rational};
use crate::system::{eta_tau_polys, geometric_eigenvalues, ParameterArray};

/// P(x) = sum_i (-1)^i zeta_i x^i / ([i]!_q)^2, kept together with the split
/// sequence and context it came from.
#[derive(Clone, Debug)]
pub struct DrinfeldPolynomial {
    poly: Polynomial,
    zeta: Vec<Rational>,
    ctx: QContext,
}

/// Builds the polynomial from a split sequence; requires zeta_0 = 1 and a
/// context whose diameter matches the sequence length.
pub fn drinfeld_poly(zeta: &[Rational], ctx: &QContext) -> Result<DrinfeldPolynomial> {
    if zeta.is_empty() || !zeta[0].is_one() {
        return Err(Error::InvalidParameterArray("zeta_0 must equal 1".into()));
    }
    if zeta.len() != ctx.d() + 1 {
        return Err(Error::InvalidParameterArray(format!(
            "split sequence has {} entries, context diameter is {}",
            zeta.len(),
            ctx.d()
        )));
    }
    let coeffs: Vec<Rational> = zeta
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let fact = ctx.q_factorial(i as u32);
            let sign = if i % 2 == 0 {
                Rational::one()
            } else {
                Rational::from_int(-1)
            };
            &(&sign * z) / &(&fact * &fact)
        })
        .collect();
    Ok(DrinfeldPolynomial {
        poly: Polynomial::from_coeffs(coeffs),
        zeta: zeta.to_vec(),
        ctx: ctx.clone(),
    })
}

impl DrinfeldPolynomial {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn zeta(&self) -> &[Rational] {
        &self.zeta
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.poly.eval(x)
    }

    /// The scale (q - q^-1)^2 relating t to the evaluation point.
    pub fn t_scale(&self) -> Rational {
        let s = self.ctx.q_minus_q_inv();
        &s * &s
    }

    /// True iff t != 0 and P(t / (q - q^-1)^2) != 0: the prediction that the
    /// t-linear perturbation is a tridiagonal system.
    pub fn predict_td(&self, t: &Rational) -> bool {
        if t.is_zero() {
            return false;
        }
        let x = t / &self.t_scale();
        !self.eval(&x).is_zero()
    }

    /// Every rational t (other than 0) excluded by the prediction: the
    /// rational roots of P scaled by (q - q^-1)^2, sorted.
    pub fn rational_bad_t(&self) -> Vec<Rational> {
        let scale = self.t_scale();
        self.poly
            .rational_roots()
            .iter()
            .map(|x| x * &scale)
            .collect()
    }
}

/// Checks, with both sides computed independently, that
/// `sum_i eta_{d-i}(theta_0) eta*_{d-i}(theta*_0) zeta_i` equals
/// `(-1)^d ([d]!_q)^2 (q - q^-1)^(2d) P(1/(q - q^-1)^2)`.
///
/// The identity holds for arbitrary zeta with zeta_0 = 1 once the spectra
/// are the normalized geometric sequences; non-geometric input is an error.
pub fn check_ccond_identity(pa: &ParameterArray, ctx: &QContext) -> Result<bool> {
    let d = pa.diameter();
    if ctx.d() != d {
        return Err(Error::InvalidParameterArray(format!(
            "context diameter {} does not match parameter array diameter {d}",
            ctx.d()
        )));
    }
    let (theta, theta_star) = geometric_eigenvalues(ctx);
    if pa.theta() != theta || pa.theta_star() != theta_star {
        return Err(Error::NonGeometric(
            "the identity is stated for theta_i = q^(2i-d), theta*_i = q^(d-2i)".into(),
        ));
    }

    let et = eta_tau_polys(pa.theta(), pa.theta_star());
    let lhs = (0..=d).fold(Rational::zero(), |acc, i| {
        let term = &(&et.eta[d - i].eval(&theta[0]) * &et.eta_star[d - i].eval(&theta_star[0]))
            * &pa.zeta()[i];
        &acc + &term
    });

    let p = drinfeld_poly(pa.zeta(), ctx)?;
    let s = p.t_scale();
    let sign = if d.is_multiple_of(2) {
        Rational::one()
    } else {
        Rational::from_int(-1)
    };
    let fact = ctx.q_factorial(d as u32);
    let rhs = &(&(&sign * &(&fact * &fact)) * &s.pow(d as i64)?)
        * &p.eval(&s.recip()?);

    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::{build_seed, seed_parameter_array};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rv(strs: &[&str]) -> Vec<Rational> {
        strs.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn ctx2(d: usize) -> QContext {
        QContext::new(Rational::from_int(2), d).unwrap()
    }

    #[test]
    fn degree_zero_is_the_constant_one() {
        let p = drinfeld_poly(&rv(&["1"]), &ctx2(0)).unwrap();
        assert_eq!(p.poly(), &Polynomial::one());
        assert!(p.rational_bad_t().is_empty());
    }

    #[test]
    fn d1_fixture_polynomial_is_one_minus_x() {
        let p = drinfeld_poly(&rv(&["1", "1"]), &ctx2(1)).unwrap();
        assert_eq!(p.poly().coeffs(), &[r("1"), r("-1")]);
        assert_eq!(p.rational_bad_t(), vec![r("9/4")]);
    }

    #[test]
    fn explicit_coefficients_at_d2() {
        // [2]!_q = 5/2 at q = 2, so the x^2 coefficient of (1, 2, 3) is
        // 3/(25/4) = 12/25
        let p = drinfeld_poly(&rv(&["1", "2", "3"]), &ctx2(2)).unwrap();
        assert_eq!(p.poly().coeffs(), &[r("1"), r("-2"), r("12/25")]);
        // cleared to 25 - 50x + 12x^2, whose roots are irrational
        assert!(p.rational_bad_t().is_empty());
    }

    #[test]
    fn d2_seed_has_two_rational_bad_t() {
        let zeta = rv(&["1", "1", "1"]);
        let p = drinfeld_poly(&zeta, &ctx2(2)).unwrap();
        assert_eq!(p.poly().coeffs(), &[r("1"), r("-1"), r("4/25")]);
        // roots 5/4 and 5, scaled by 9/4
        assert_eq!(p.rational_bad_t(), vec![r("45/16"), r("45/4")]);
    }

    #[test]
    fn prediction_on_the_d1_fixture() {
        let p = drinfeld_poly(&rv(&["1", "1"]), &ctx2(1)).unwrap();
        assert!(!p.predict_td(&Rational::zero()));
        assert!(!p.predict_td(&r("9/4")));
        assert!(p.predict_td(&Rational::one()));
        assert_eq!(p.eval(&r("4/9")), r("5/9"));
    }

    #[test]
    fn rejects_bad_split_sequences() {
        assert!(drinfeld_poly(&rv(&["2", "1"]), &ctx2(1)).is_err());
        assert!(drinfeld_poly(&rv(&["1", "1"]), &ctx2(2)).is_err());
        assert!(drinfeld_poly(&[], &ctx2(0)).is_err());
    }

    #[test]
    fn ccond_identity_on_seeds_and_degenerate_case() {
        let ctx = ctx2(0);
        let pa = ParameterArray::new(rv(&["1"]), rv(&["1"]), rv(&["1"])).unwrap();
        assert!(check_ccond_identity(&pa, &ctx).unwrap());
        for name in ["d1", "d1-phi5", "d2"] {
            let (ctx, pa) = seed_parameter_array(name).unwrap();
            assert!(check_ccond_identity(&pa, &ctx).unwrap());
        }
    }

    #[test]
    fn ccond_identity_sides_match_hand_values_at_d1() {
        // left side: (1/2 - 2)(2 - 1/2) + 1 = -5/4;
        // right side: (-1) * (9/4) * P(4/9) = (-9/4)(5/9) = -5/4
        let (ctx, pa) = seed_parameter_array("d1").unwrap();
        let et = eta_tau_polys(pa.theta(), pa.theta_star());
        let lhs = (0..=1).fold(Rational::zero(), |acc, i| {
            let term = &(&et.eta[1 - i].eval(&pa.theta()[0])
                * &et.eta_star[1 - i].eval(&pa.theta_star()[0]))
                * &pa.zeta()[i];
            &acc + &term
        });
        assert_eq!(lhs, r("-5/4"));
        assert!(check_ccond_identity(&pa, &ctx).unwrap());
    }

    #[test]
    fn ccond_identity_for_arbitrary_zeta() {
        // the identity is polynomial in zeta, so random entries must satisfy
        // it as long as zeta_0 = 1
        let ctx = ctx2(2);
        let (theta, theta_star) = geometric_eigenvalues(&ctx);
        for zeta in [
            rv(&["1", "7", "-3/5"]),
            rv(&["1", "0", "11"]),
            rv(&["1", "-2/7", "1/9"]),
        ] {
            let pa = ParameterArray::new(theta.clone(), theta_star.clone(), zeta).unwrap();
            assert!(check_ccond_identity(&pa, &ctx).unwrap());
        }
    }

    #[test]
    fn ccond_rejects_non_geometric_spectra() {
        let ctx = ctx2(1);
        let pa = ParameterArray::new(rv(&["1", "2"]), rv(&["2", "1"]), rv(&["1", "1"])).unwrap();
        assert!(matches!(
            check_ccond_identity(&pa, &ctx),
            Err(Error::NonGeometric(_))
        ));
    }

    #[test]
    fn scaling_law_relates_perturbed_polynomials() {
        // the polynomial of (t^i zeta_i) at x equals the original at t x
        let ctx = ctx2(2);
        let zeta = rv(&["1", "4", "-7/3"]);
        let p = drinfeld_poly(&zeta, &ctx).unwrap();
        for t in ["2", "-1/3", "5/7", "1"] {
            let t = r(t);
            let scaled: Vec<Rational> = zeta
                .iter()
                .enumerate()
                .map(|(i, z)| &t.pow(i as i64).unwrap() * z)
                .collect();
            let p_scaled = drinfeld_poly(&scaled, &ctx).unwrap();
            for x in ["0", "1", "-2/5", "9/4", "7"] {
                let x = r(x);
                assert_eq!(p_scaled.eval(&x), p.eval(&(&t * &x)));
            }
        }
    }

    #[test]
    fn invariants_on_verified_seeds() {
        for name in ["d1", "d1-phi5", "d2"] {
            let ps = build_seed(name).unwrap();
            let zeta = ps.split_sequence().unwrap();
            let p = drinfeld_poly(&zeta, ps.ctx()).unwrap();
            assert_eq!(p.poly().degree(), ps.diameter());
            assert!(p.eval(&Rational::zero()).is_one());
            // t = 1 gives back the unperturbed system, so it is never excluded
            assert!(p.predict_td(&Rational::one()));
        }
    }
}
