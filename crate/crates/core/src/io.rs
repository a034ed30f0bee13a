//! On-disk JSON formats for systems, parameter arrays, and scan reports.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::perturb::TheoremVerdict;
use crate::scalar::{QContext, Rational};
use crate::subspace::Subspace;
use crate::system::{ParameterArray, ParallelSystem};

/// System file: matrices plus eigenvalue orderings. Idempotents are always
/// recomputed on load, never trusted from disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub q: Rational,
    pub d: usize,
    #[serde(rename = "A")]
    pub a: Matrix,
    #[serde(rename = "A_star")]
    pub a_star: Matrix,
    pub theta: Vec<Rational>,
    pub theta_star: Vec<Rational>,
}

impl SystemFile {
    pub fn from_system(ps: &ParallelSystem) -> Self {
        SystemFile {
            q: ps.ctx().q().clone(),
            d: ps.diameter(),
            a: ps.a().clone(),
            a_star: ps.a_star().clone(),
            theta: ps.theta().to_vec(),
            theta_star: ps.theta_star().to_vec(),
        }
    }

    pub fn into_system(self) -> Result<ParallelSystem> {
        let ctx = QContext::new(self.q, self.d)?;
        ParallelSystem::new(ctx, self.a, self.a_star, self.theta, self.theta_star)
    }
}

/// Parameter-array file, the input of the thin constructor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParameterArrayFile {
    pub q: Rational,
    pub d: usize,
    pub theta: Vec<Rational>,
    pub theta_star: Vec<Rational>,
    pub zeta: Vec<Rational>,
}

impl ParameterArrayFile {
    pub fn from_parts(ctx: &QContext, pa: &ParameterArray) -> Self {
        ParameterArrayFile {
            q: ctx.q().clone(),
            d: pa.diameter(),
            theta: pa.theta().to_vec(),
            theta_star: pa.theta_star().to_vec(),
            zeta: pa.zeta().to_vec(),
        }
    }

    pub fn into_parts(self) -> Result<(QContext, ParameterArray)> {
        let ctx = QContext::new(self.q, self.d)?;
        let pa = ParameterArray::new(self.theta, self.theta_star, self.zeta)?;
        Ok((ctx, pa))
    }
}

/// One row of the scan report, ordered by t in the emitted JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRow {
    pub t: Rational,
    pub predicted: bool,
    pub actual: bool,
    pub failing_axiom: Option<String>,
    pub witness: Option<Subspace>,
}

impl From<&TheoremVerdict> for ScanRow {
    fn from(v: &TheoremVerdict) -> Self {
        ScanRow {
            t: v.t.clone(),
            predicted: v.predicted,
            actual: v.actual,
            failing_axiom: v.failing_axiom.map(|a| a.to_string()),
            witness: v.witness.clone(),
        }
    }
}
