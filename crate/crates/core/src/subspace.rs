//! Subspaces of Q^n in a unique canonical form.
//!
//! A subspace is stored as a basis matrix whose transpose is in reduced row
//! echelon form. That representative is unique per subspace, so `==` on
//! `Subspace` values decides subspace equality. The zero subspace is a
//! first-class value with a 0-column basis.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(
                "vector length does not match ambient dimension".into(),
            ));
        }
        let mut rows = Matrix::from_rows(vectors.to_vec())?;
        let npivots = rows.rref_in_place().len();
        let cols: Vec<Vec<Rational>> = (0..npivots)
            .map(|i| (0..ambient).map(|j| rows.get(i, j).clone()).collect())
            .collect();
        Ok(Subspace {
            ambient,
            basis: Matrix::from_columns(ambient, &cols)?,
        })
    }

    /// Column space of a matrix.
    pub fn image(m: &Matrix) -> Self {
        let cols: Vec<Vec<Rational>> = m.columns().collect();
        Subspace::from_vectors(m.rows(), &cols).expect("columns match ambient")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis matrix (ambient x dim, columns are basis vectors).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns().collect()
    }

    /// Ambient index of the leading 1 in basis column `j`.
    fn pivot(&self, j: usize) -> usize {
        (0..self.ambient)
            .find(|&i| !self.basis.get(i, j).is_zero())
            .expect("basis columns are nonzero")
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: v.len(),
                right: self.ambient,
            });
        }
        let mut w = v.to_vec();
        for j in 0..self.dim() {
            let c = w[self.pivot(j)].clone();
            if c.is_zero() {
                continue;
            }
            for (i, wi) in w.iter_mut().enumerate() {
                *wi = &*wi - &(&c * self.basis.get(i, j));
            }
        }
        Ok(w.iter().all(Rational::is_zero))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for v in other.basis_vectors() {
            if !self.contains_vector(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Subspace::from_vectors(self.ambient, &vectors)
    }

    /// Exact intersection via the kernel of the stacked basis system: kernel
    /// vectors (x, y) of [S | T] satisfy Sx = -Ty, and those images span
    /// the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let p = self.dim();
        let mut stacked = Matrix::zeros(self.ambient, p + other.dim());
        for (j, col) in self.basis.columns().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                stacked.set(i, j, v);
            }
        }
        for (j, col) in other.basis.columns().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                stacked.set(i, p + j, v);
            }
        }
        let vectors: Vec<Vec<Rational>> = stacked
            .kernel_basis()
            .into_iter()
            .map(|k| self.basis.mul_vec(&k[..p]).expect("shape"))
            .collect();
        Subspace::from_vectors(self.ambient, &vectors)
    }
}

/// True iff `m` maps every vector of `s` into `t`.
pub fn maps_into(m: &Matrix, s: &Subspace, t: &Subspace) -> Result<bool> {
    if m.cols() != s.ambient_dim() || m.rows() != t.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between ambients {} -> {}",
            m.rows(),
            m.cols(),
            s.ambient_dim(),
            t.ambient_dim()
        )));
    }
    for v in s.basis_vectors() {
        if !t.contains_vector(&m.mul_vec(&v)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

// A subspace serializes as its canonical basis matrix.
impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = Matrix::deserialize(deserializer)?;
        let cols: Vec<Vec<Rational>> = m.columns().collect();
        Subspace::from_vectors(m.rows(), &cols).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn vr(strs: &[&str]) -> Vec<Rational> {
        strs.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn line(ambient: usize, v: &[&str]) -> Subspace {
        Subspace::from_vectors(ambient, &[vr(v)]).unwrap()
    }

    #[test]
    fn canonical_form_is_spanning_set_independent() {
        let a = Subspace::from_vectors(3, &[vr(&["1", "2", "3"]), vr(&["0", "1", "1"])]).unwrap();
        let b = Subspace::from_vectors(
            3,
            &[vr(&["1", "3", "4"]), vr(&["2", "5", "7"]), vr(&["1", "2", "3"])],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_examples() {
        let s = Subspace::from_vectors(3, &[vr(&["1", "0", "2"]), vr(&["0", "1", "0"])]).unwrap();
        assert_eq!(s.intersect(&s).unwrap(), s);
        assert_eq!(s.intersect(&Subspace::full(3)).unwrap(), s);
        let x = line(2, &["1", "0"]);
        let y = line(2, &["0", "1"]);
        assert_eq!(x.intersect(&y).unwrap(), Subspace::zero(2));
    }

    #[test]
    fn sum_examples() {
        let s = line(2, &["1", "0"]);
        assert_eq!(s.sum(&Subspace::zero(2)).unwrap(), s);
        assert_eq!(s.sum(&line(2, &["0", "1"])).unwrap(), Subspace::full(2));
        assert_eq!(s.sum(&s).unwrap(), s);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let s = line(2, &["1", "0"]);
        let t = line(3, &["1", "0", "0"]);
        assert!(s.sum(&t).is_err());
        assert!(s.intersect(&t).is_err());
    }

    #[test]
    fn maps_into_examples() {
        let s = line(2, &["1", "0"]);
        assert!(maps_into(&Matrix::identity(2), &s, &s).unwrap());
        assert!(maps_into(&Matrix::zeros(2, 2), &s, &Subspace::zero(2)).unwrap());
        // (A - theta_0 I) of the d=1 pair sends (1,0) to (0,1)
        let m = Matrix::from_str_rows(&[&["0", "0"], &["1", "3/2"]]).unwrap();
        assert!(maps_into(&m, &s, &line(2, &["0", "1"])).unwrap());
        assert!(!maps_into(&m, &s, &s).unwrap());
    }

    #[test]
    fn zero_subspace_is_first_class() {
        let z = Subspace::zero(4);
        assert_eq!(z.dim(), 0);
        assert_eq!(z.sum(&z).unwrap(), z);
        assert_eq!(z.intersect(&Subspace::full(4)).unwrap(), z);
        assert!(Subspace::full(4).contains(&z).unwrap());
        assert!(z.contains_vector(&vr(&["0", "0", "0", "0"])).unwrap());
        assert!(!z.contains_vector(&vr(&["1", "0", "0", "0"])).unwrap());
    }

    #[test]
    fn serde_round_trip_and_scaled_line() {
        let w = line(2, &["3", "-2"]);
        // canonical representative has leading entry 1
        assert_eq!(w.basis().get(0, 0), &r("1"));
        assert_eq!(w.basis().get(1, 0), &r("-2/3"));
        let json = serde_json::to_string(&w).unwrap();
        let back: Subspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn grassmann_dimension_formula() {
        // dim S + dim T = dim(S+T) + dim(S \cap T) on a deterministic sweep
        // of ambients up to 12.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for ambient in 1..=12usize {
            for _ in 0..6 {
                let mk = |next: &mut dyn FnMut() -> u64| {
                    let k = (next() % (ambient as u64 + 1)) as usize;
                    let vecs: Vec<Vec<Rational>> = (0..k)
                        .map(|_| {
                            (0..ambient)
                                .map(|_| Rational::from_int((next() % 7) as i64 - 3))
                                .collect()
                        })
                        .collect();
                    Subspace::from_vectors(ambient, &vecs).unwrap()
                };
                let s = mk(&mut next);
                let t = mk(&mut next);
                let sum = s.sum(&t).unwrap();
                let meet = s.intersect(&t).unwrap();
                assert_eq!(s.dim() + t.dim(), sum.dim() + meet.dim());
                assert!(sum.contains(&s).unwrap() && sum.contains(&t).unwrap());
                assert!(s.contains(&meet).unwrap() && t.contains(&meet).unwrap());
            }
        }
    }
}
