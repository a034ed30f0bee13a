//! Built-in seed systems.
//!
//! Seeds ship as parameter arrays and are re-derived through the thin
//! constructor on every use, so the constructor is exercised on every run.
//! All seeds use q = 2 with the normalized geometric eigenvalue sequences.

use crate::error::{Error, Result};
use crate::scalar::{QContext, Rational};
use crate::system::{from_parameter_array_thin, geometric_eigenvalues, ParameterArray, ParallelSystem};

pub const SEED_NAMES: &[&str] = &["d1", "d1-phi5", "d2"];

/// The parameter array and context for a named seed, if the name is known.
pub fn seed_parameter_array(name: &str) -> Option<(QContext, ParameterArray)> {
    let (d, zeta) = match name {
        "d1" => (1, vec![Rational::one(), Rational::one()]),
        "d1-phi5" => (1, vec![Rational::one(), Rational::from_int(5)]),
        // derived by the brute-force sweep over small superdiagonals; the
        // first verified candidate has both entries equal to 1
        "d2" => (2, vec![Rational::one(), Rational::one(), Rational::one()]),
        _ => return None,
    };
    let ctx = QContext::new(Rational::from_int(2), d).expect("q = 2 is valid");
    let (theta, theta_star) = geometric_eigenvalues(&ctx);
    let pa = ParameterArray::new(theta, theta_star, zeta).expect("seed data is valid");
    Some((ctx, pa))
}

/// Builds a named seed through the thin constructor.
pub fn build_seed(name: &str) -> Result<ParallelSystem> {
    let (ctx, pa) = seed_parameter_array(name).ok_or_else(|| {
        Error::InvalidSystem(format!(
            "unknown seed {name:?}; known seeds: {}",
            SEED_NAMES.join(", ")
        ))
    })?;
    from_parameter_array_thin(&pa, &ctx)
}
