use serde::{Deserialize, Serialize};

use super::mat::dot;
use super::{Mat, Subspace};
use crate::error::{Error, Result};
use crate::exactmath::CycNum;

/// Quadratic form `v ↦ vᵀ G v` given by a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Quadric {
    gram: Mat,
}

impl Quadric {
    pub fn new(gram: Mat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Quadric { gram })
    }

    pub fn diagonal(entries: &[CycNum]) -> Self {
        Quadric {
            gram: Mat::diag(entries),
        }
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    fn check(&self, v: &[CycNum]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, v: &[CycNum]) -> Result<CycNum> {
        self.polar(v, v)
    }

    /// Bilinear form `uᵀ G v`.
    pub fn polar(&self, u: &[CycNum], v: &[CycNum]) -> Result<CycNum> {
        self.check(u)?;
        self.check(v)?;
        Ok(dot(u, &self.gram.apply(v)?))
    }

    /// Gram matrix `B G Bᵀ` on the echelon basis `B` of `s`.
    pub fn restrict(&self, s: &Subspace) -> Result<Quadric> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        let b = s.basis();
        Ok(Quadric {
            gram: b.mul(&self.gram).mul(&b.transpose()),
        })
    }

    /// The form `x ↦ Q(hᵀx)`, with Gram matrix `h G hᵀ`.
    pub fn act(&self, h: &Mat) -> Quadric {
        Quadric {
            gram: h.mul(&self.gram).mul(&h.transpose()),
        }
    }

    pub fn add(&self, other: &Quadric) -> Quadric {
        Quadric {
            gram: self.gram.add(&other.gram),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Quadric {
        Quadric {
            gram: self.gram.scale(c),
        }
    }
}

impl<'de> Deserialize<'de> for Quadric {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Mat::deserialize(d)?;
        Quadric::new(m).map_err(serde::de::Error::custom)
    }
}

/// Gram restriction as a free function.
pub fn gram_restrict(q: &Quadric, s: &Subspace) -> Result<Quadric> {
    q.restrict(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<CycNum> {
        xs.iter().map(|&x| CycNum::from_int(x)).collect()
    }

    #[test]
    fn eval_polar_restrict() {
        let q = Quadric::diagonal(&v(&[1, 1, -1]));
        assert_eq!(q.eval(&v(&[1, 0, 1])).unwrap(), CycNum::from_int(0));
        assert_eq!(q.polar(&v(&[1, 0, 0]), &v(&[1, 1, 1])).unwrap(), CycNum::from_int(1));
        assert!(q.eval(&v(&[1, 0])).is_err());
        let line = Subspace::span(3, &[v(&[1, 0, 1])]);
        assert!(q.restrict(&line).unwrap().is_zero());
        assert_eq!(q.restrict(&Subspace::zero(3)).unwrap().dim(), 0);
        assert_eq!(
            Quadric::new(Mat::from_int_rows(&[vec![0, 1], vec![0, 0]])),
            Err(Error::NotSymmetric)
        );
    }
}
