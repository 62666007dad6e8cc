//! Pencils of quadrics `t1·Q1 + t2·Q2` and their symmetries.
//!
//! A coordinate matrix `h` acts on quadrics by `Q ↦ Q∘hᵀ` (Gram `G ↦ h·G·hᵀ`) and on
//! points through its contragredient `h^{-T}`. The pencil parameter `(t1, t2)` is
//! moved by `Mᵀ`, where `M` is the matrix of `h` on the basis `(Q1, Q2)`.

mod fixed;
mod involution;
mod lines;

use serde::{Deserialize, Serialize};

pub use fixed::{fixed_points_on_x, points_on_line, FixedPointsReport, LinePoints, SymbolicComponent};
pub use involution::{classify_diagonal_involution, DiagonalInvolution, InvolutionKind};
pub use lines::{invariant_lines_abelian, FamilyKind, FamilyReport, InvariantLinesReport, LineOnX};

use crate::error::{Error, Result};
use crate::exactmath::{bform_root_action, proj_eq, BinaryForm, CycNum, ProjPoint};
use crate::groupaction::MatrixGroup;
use crate::linalg::{Mat, Quadric};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pencil {
    g: usize,
    #[serde(rename = "Q1")]
    q1: Quadric,
    #[serde(rename = "Q2")]
    q2: Quadric,
}

impl Pencil {
    pub fn new(g: usize, q1: Quadric, q2: Quadric) -> Result<Self> {
        let n = 2 * g + 2;
        if g == 0 {
            return Err(Error::schema("g", "genus must be at least 1"));
        }
        for q in [&q1, &q2] {
            if q.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: q.dim(),
                });
            }
        }
        Ok(Pencil { g, q1, q2 })
    }

    /// `Q1 = Σ a_i x_i²`, `Q2 = Σ b_i x_i²`.
    pub fn diagonal(g: usize, a: &[CycNum], b: &[CycNum]) -> Result<Self> {
        Pencil::new(g, Quadric::diagonal(a), Quadric::diagonal(b))
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g + 2
    }

    pub fn q1(&self) -> &Quadric {
        &self.q1
    }

    pub fn q2(&self) -> &Quadric {
        &self.q2
    }

    pub fn is_diagonal(&self) -> bool {
        self.q1.gram().is_diagonal() && self.q2.gram().is_diagonal()
    }

    /// `det(t1·Q1 + t2·Q2)` as a binary form of degree `2g+2`.
    pub fn degeneracy_form(&self) -> BinaryForm {
        determinant_form(self.q1.gram(), self.q2.gram())
    }

    /// Distinct-roots criterion: the degeneracy form is nonzero with nonzero discriminant.
    pub fn is_smooth(&self) -> bool {
        let f = self.degeneracy_form();
        !f.is_zero() && !f.discriminant().is_zero()
    }

    pub fn membership(&self, v: &[CycNum]) -> Result<bool> {
        if v.iter().all(CycNum::is_zero) {
            return Err(Error::schema("point", "the zero vector is not a projective point"));
        }
        Ok(self.q1.eval(v)?.is_zero() && self.q2.eval(v)?.is_zero())
    }

    /// The matrix `M` with `h·Q_i·hᵀ = Σ_j M_ij Q_j`.
    pub fn equivariance(&self, h: &Mat) -> Result<PencilSymmetry> {
        self.equivariance_labeled("h", h)
    }

    pub fn equivariance_labeled(&self, label: &str, h: &Mat) -> Result<PencilSymmetry> {
        let n = self.dim();
        if h.rows() != n || h.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.rows(),
            });
        }
        if h.det().is_zero() {
            return Err(Error::Singular);
        }
        let basis = [self.q1.gram(), self.q2.gram()];
        // columns: vec(Q1), vec(Q2)
        let cols: Vec<Vec<CycNum>> = (0..n * n)
            .map(|idx| basis.iter().map(|g| g.get(idx / n, idx % n).clone()).collect())
            .collect();
        let system = Mat::from_rows(cols).expect("uniform rows");
        let mut m = [[CycNum::zero(1), CycNum::zero(1)], [CycNum::zero(1), CycNum::zero(1)]];
        for (i, q) in [&self.q1, &self.q2].iter().enumerate() {
            let image = q.act(h);
            let target: Vec<CycNum> = (0..n * n)
                .map(|idx| image.gram().get(idx / n, idx % n).clone())
                .collect();
            let sol = system.solve(&target).ok_or_else(|| Error::NotASymmetry {
                label: label.to_string(),
            })?;
            m[i] = [sol[0].clone(), sol[1].clone()];
        }
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if det.is_zero() {
            return Err(Error::NotASymmetry {
                label: label.to_string(),
            });
        }
        Ok(PencilSymmetry {
            label: label.to_string(),
            h: h.clone(),
            action2x2: m,
        })
    }

    /// Every generator as a symmetry, in order.
    pub fn symmetries(&self, group: &MatrixGroup) -> Result<Vec<PencilSymmetry>> {
        group
            .generators()
            .iter()
            .map(|g| self.equivariance_labeled(&g.label, &g.matrix))
            .collect()
    }
}

impl<'de> Deserialize<'de> for Pencil {
    /// `{"g", "Q1", "Q2"}` or the diagonal shorthand `{"g", "diag1", "diag2"}`.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            g: usize,
            #[serde(rename = "Q1")]
            q1: Option<Quadric>,
            #[serde(rename = "Q2")]
            q2: Option<Quadric>,
            diag1: Option<Vec<CycNum>>,
            diag2: Option<Vec<CycNum>>,
        }
        use serde::de::Error as _;
        let r = Repr::deserialize(d)?;
        let p = match (r.q1, r.q2, r.diag1, r.diag2) {
            (Some(a), Some(b), None, None) => Pencil::new(r.g, a, b),
            (None, None, Some(a), Some(b)) => {
                if a.len() != b.len() {
                    return Err(D::Error::custom("diag1 and diag2 differ in length"));
                }
                Pencil::diagonal(r.g, &a, &b)
            }
            _ => return Err(D::Error::custom("give either Q1 and Q2, or diag1 and diag2")),
        };
        p.map_err(D::Error::custom)
    }
}

/// `det(t1·A + t2·B)` for square matrices of equal size, by interpolation at `(1, k)`.
pub fn determinant_form(a: &Mat, b: &Mat) -> BinaryForm {
    let n = a.rows();
    if n == 0 {
        return BinaryForm::new(vec![CycNum::one(1)]);
    }
    let mut vander = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n as i64 {
        let member = a.add(&b.scale(&CycNum::from_int(k)));
        values.push(member.det());
        vander.push((0..=n as u32).map(|j| CycNum::from_int(k.pow(j))).collect());
    }
    let coeffs = Mat::from_rows(vander)
        .expect("square")
        .solve(&values)
        .expect("Vandermonde matrix is invertible");
    BinaryForm::new(coeffs)
}

/// A coordinate symmetry `h` with its action on the pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSymmetry {
    pub label: String,
    pub h: Mat,
    /// `M` with `h·Q_i·hᵀ = Σ_j M_ij Q_j`.
    pub action2x2: [[CycNum; 2]; 2],
}

impl PencilSymmetry {
    /// The Möbius map `Mᵀ` on the parameter column `(t1, t2)`.
    pub fn moebius(&self) -> [[CycNum; 2]; 2] {
        let m = &self.action2x2;
        [
            [m[0][0].clone(), m[1][0].clone()],
            [m[0][1].clone(), m[1][1].clone()],
        ]
    }

    /// Action on points, `h^{-T}`.
    pub fn point_action(&self) -> Mat {
        self.h.contragredient().expect("symmetries are invertible")
    }
}

/// Labelled roots of the degeneracy form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchConfig {
    pub form: BinaryForm,
    pub roots: Vec<ProjPoint>,
}

impl BranchConfig {
    /// Validates that the points are distinct roots and that there are `2g+2` of them.
    pub fn new(pencil: &Pencil, roots: Vec<ProjPoint>) -> Result<Self> {
        let form = pencil.degeneracy_form();
        if roots.len() != pencil.dim() {
            return Err(Error::DimensionMismatch {
                expected: pencil.dim(),
                found: roots.len(),
            });
        }
        for (i, r) in roots.iter().enumerate() {
            if r[0].is_zero() && r[1].is_zero() {
                return Err(Error::schema(format!("branch_labels[{i}]"), "(0 : 0) is not a point"));
            }
            if !form.eval_point(r).is_zero() {
                return Err(Error::NotARoot { index: i });
            }
            if roots[..i].iter().any(|q| proj_eq(q, r)) {
                return Err(Error::schema(format!("branch_labels[{i}]"), "repeated root"));
            }
        }
        Ok(BranchConfig { form, roots })
    }

    /// Roots of a diagonal pencil, labelled by coordinate: `a_i·t1 + b_i·t2` vanishes at `(-b_i : a_i)`.
    pub fn from_diagonal(pencil: &Pencil) -> Result<Self> {
        if !pencil.is_diagonal() {
            return Err(Error::NotDiagonal);
        }
        let a = pencil.q1.gram().diagonal();
        let b = pencil.q2.gram().diagonal();
        let roots = a.iter().zip(&b).map(|(ai, bi)| [-bi, ai.clone()]).collect();
        BranchConfig::new(pencil, roots)
    }
}

/// Permutation of branch labels induced by a symmetry.
pub fn branch_permutation(sym: &PencilSymmetry, branch: &BranchConfig) -> Result<Permutation> {
    bform_root_action(&branch.form, &branch.roots, &sym.moebius())
}

/// Coordinate-diagonal `±1` matrix as a sign vector.
pub fn sign_vector(m: &Mat) -> Option<Vec<i8>> {
    if !m.is_diagonal() {
        return None;
    }
    m.diagonal()
        .iter()
        .map(|x| {
            if x.is_one() {
                Some(1)
            } else if (-x).is_one() {
                Some(-1)
            } else {
                None
            }
        })
        .collect()
}

/// Field order in which roots of restricted forms are sought, given the data's order.
pub(crate) fn search_orders(base: u32) -> Vec<u32> {
    use crate::exactmath::lcm;
    let mut out = Vec::new();
    for extra in [1, 4, 8, 24] {
        let o = lcm(base, extra);
        if !out.contains(&o) {
            out.push(o);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    fn i() -> CycNum {
        CycNum::root_of_unity(4, 1)
    }

    pub(crate) fn worked_pencil() -> Pencil {
        Pencil::diagonal(
            2,
            &[c(1), c(1), i(), c(-1), -i(), c(0)],
            &[c(0), c(1), c(1), c(1), c(1), c(1)],
        )
        .unwrap()
    }

    #[test]
    fn worked_degeneracy_form() {
        let p = worked_pencil();
        let f = p.degeneracy_form();
        let lin = |a: CycNum, b: CycNum| BinaryForm::linear(a, b);
        let expected = lin(c(1), c(0))
            .mul(&lin(c(1), c(1)))
            .mul(&lin(i(), c(1)))
            .mul(&lin(c(-1), c(1)))
            .mul(&lin(-i(), c(1)))
            .mul(&lin(c(0), c(1)));
        assert_eq!(f, expected);
        assert!(p.is_smooth());
    }

    #[test]
    fn degenerate_pencils() {
        let q = Quadric::diagonal(&[c(1), c(2), c(3), c(4)]);
        let p = Pencil::new(1, q.clone(), q).unwrap();
        assert!(!p.is_smooth());
        // (t1 + t2)^4 det Q1
        let mut expect = BinaryForm::new(vec![c(24)]);
        for _ in 0..4 {
            expect = expect.mul(&BinaryForm::linear(c(1), c(1)));
        }
        assert_eq!(p.degeneracy_form(), expect);
        let rep = Pencil::diagonal(1, &vec![c(1); 4], &[c(0), c(0), c(1), c(2)]).unwrap();
        assert!(!rep.is_smooth());
    }

    #[test]
    fn sign_changes_preserve_forms() {
        let p = worked_pencil();
        let h = Mat::diag(&[c(1), c(1), c(1), c(1), c(-1), c(-1)]);
        let s = p.equivariance(&h).unwrap();
        assert_eq!(s.action2x2, [[c(1), c(0)], [c(0), c(1)]]);
        let b = BranchConfig::from_diagonal(&p).unwrap();
        assert!(branch_permutation(&s, &b).unwrap().is_identity());
        let swap = Mat::from_int_rows(&[
            vec![0, 1, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
        ]);
        assert!(matches!(p.equivariance(&swap), Err(Error::NotASymmetry { .. })));
    }

    #[test]
    fn branch_config_validation() {
        let p = worked_pencil();
        let bad = vec![[c(1), c(2)]; 6];
        assert_eq!(BranchConfig::new(&p, bad), Err(Error::NotARoot { index: 0 }));
        let mut roots = BranchConfig::from_diagonal(&p).unwrap().roots;
        roots[1] = roots[0].clone();
        assert!(BranchConfig::new(&p, roots).is_err());
    }

    #[test]
    fn pencil_json() {
        let p: Pencil = serde_json::from_str(r#"{"g":1,"diag1":[1,1,1,1],"diag2":[0,1,2,3]}"#).unwrap();
        assert!(p.is_smooth());
        let back: Pencil = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Pencil>(r#"{"g":2,"diag1":[1,1,1,1],"diag2":[0,1,2,3]}"#).is_err());
    }

    pub(crate) fn gamma(alpha: CycNum) -> Mat {
        let z = || c(0);
        let o = || c(1);
        Mat::from_rows(vec![
            vec![alpha, z(), z(), z(), z(), z()],
            vec![z(), z(), z(), z(), c(-1), z()],
            vec![z(), o(), z(), z(), z(), z()],
            vec![z(), z(), o(), z(), z(), z()],
            vec![z(), z(), z(), o(), z(), z()],
            vec![z(), z(), z(), z(), z(), o()],
        ])
        .unwrap()
    }

    fn worked_labels() -> Vec<ProjPoint> {
        vec![[c(0), c(1)], [c(1), c(0)], [c(1), c(1)], [i(), c(1)], [c(-1), c(1)], [-i(), c(1)]]
    }

    #[test]
    fn gamma_acts_on_pencil() {
        let p = worked_pencil();
        let h = gamma(CycNum::root_of_unity(8, 3));
        let s = p.equivariance(&h).unwrap();
        assert_eq!(s.action2x2, [[-i(), c(0)], [c(0), c(1)]]);
        let labels = BranchConfig::new(&p, worked_labels()).unwrap();
        let perm = branch_permutation(&s, &labels).unwrap();
        assert_eq!(perm.to_cycle_string(), "(3 6 5 4)");
        assert_eq!(perm.inverse(), Permutation::parse(6, "(3456)").unwrap());
    }

    #[test]
    fn gamma_fourth_power_is_diagonal() {
        let h = gamma(CycNum::root_of_unity(8, 3));
        let mut d = vec![c(-1); 5];
        d.push(c(1));
        assert_eq!(h.pow(4).unwrap(), Mat::diag(&d));
        let wrong = gamma(c(-1)).pow(4).unwrap();
        assert_eq!(wrong.diagonal()[0], c(1));
    }
}
