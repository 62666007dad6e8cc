use serde::{Deserialize, Serialize};

use super::mat::{dot, is_zero_vector};
use super::Mat;
use crate::error::{Error, Result};
use crate::exactmath::CycNum;

/// Linear subspace of `K^n`, stored by its reduced row-echelon basis.
///
/// Equality is structural on the echelon basis, so two spans of the same space compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    /// Span of the given vectors, each of length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<CycNum>]) -> Self {
        let rows: Vec<Vec<CycNum>> = vectors.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
        assert!(rows.iter().all(|v| v.len() == ambient), "vector length differs from ambient dimension");
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Mat::from_rows(rows).expect("uniform rows").rref();
        let kept: Vec<Vec<CycNum>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: Mat::from_rows(kept).expect("uniform rows"),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis as the rows of a matrix.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<CycNum>> {
        self.basis.to_rows()
    }

    /// Point `Σ c_i b_i` for coordinates `c` in the echelon basis.
    pub fn combine(&self, c: &[CycNum]) -> Result<Vec<CycNum>> {
        if c.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: c.len(),
            });
        }
        let mut v = vec![CycNum::zero(1); self.ambient];
        for (ci, b) in c.iter().zip(self.basis_vectors()) {
            if ci.is_zero() {
                continue;
            }
            for (vj, bj) in v.iter_mut().zip(&b) {
                *vj = &*vj + &(ci * bj);
            }
        }
        Ok(v)
    }

    /// Annihilator `{y : b·y = 0 for every basis row b}`, as a list of vectors.
    fn annihilator(&self) -> Vec<Vec<CycNum>> {
        if self.is_zero() {
            return Subspace::full(self.ambient).basis_vectors();
        }
        self.basis.kernel().basis_vectors()
    }

    pub fn contains(&self, v: &[CycNum]) -> bool {
        v.len() == self.ambient && self.annihilator().iter().all(|y| dot(v, y).is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let ann = other.annihilator();
        if ann.is_empty() {
            return self.clone();
        }
        // coefficients a with (a·B_S)·y = 0 for every annihilator vector y of `other`
        let b = self.basis_vectors();
        let rows: Vec<Vec<CycNum>> = ann
            .iter()
            .map(|y| b.iter().map(|bi| dot(bi, y)).collect())
            .collect();
        let coeffs = Mat::from_rows(rows).expect("uniform rows").kernel();
        let vecs: Vec<Vec<CycNum>> = coeffs
            .basis_vectors()
            .iter()
            .map(|a| self.combine(a).expect("dimension"))
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Image under `m` acting on column vectors.
    pub fn image(&self, m: &Mat) -> Subspace {
        let vs: Vec<Vec<CycNum>> = self
            .basis_vectors()
            .iter()
            .map(|v| m.apply(v).expect("dimension"))
            .collect();
        Subspace::span(m.rows(), &vs)
    }

    /// Whether `m · S ⊆ S`.
    pub fn is_stable_under(&self, m: &Mat) -> bool {
        self.basis_vectors()
            .iter()
            .all(|v| self.contains(&m.apply(v).expect("dimension")))
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: self.ambient,
            basis: self.basis_vectors(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SubspaceRepr::deserialize(d)?;
        if r.basis.iter().any(|v| v.len() != r.ambient_dim) {
            return Err(serde::de::Error::custom("basis vector length differs from ambient_dim"));
        }
        Ok(Subspace::span(r.ambient_dim, &r.basis))
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<Vec<CycNum>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<CycNum> {
        xs.iter().map(|&x| CycNum::from_int(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[1, 0, -1])));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn intersection_and_sum() {
        let xy = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let yz = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(xy.intersect(&yz), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(xy.sum(&yz), Subspace::full(3));
        assert!(xy.intersect(&Subspace::zero(3)).is_zero());
        assert_eq!(xy.intersect(&Subspace::full(3)), xy);
    }

    #[test]
    fn stability() {
        let swap = Mat::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        let xy = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert!(xy.is_stable_under(&swap));
        let x = Subspace::span(3, &[v(&[1, 0, 0])]);
        assert!(!x.is_stable_under(&swap));
        assert_eq!(x.image(&swap), Subspace::span(3, &[v(&[0, 1, 0])]));
    }
}
