use serde::{Deserialize, Serialize};

use super::fixed::{points_on_line, LinePoints};
use super::{determinant_form, Pencil};
use crate::error::{Error, Result};
use crate::exactmath::CycNum;
use crate::groupaction::MatrixGroup;
use crate::linalg::{normalize_point, simultaneous_eigenspaces, Character, Mat, Subspace};

/// A line on `X`, given by its 2-dimensional linear span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineOnX {
    pub plane: Subspace,
}

impl LineOnX {
    /// Checks that both forms vanish on the plane.
    pub fn new(pencil: &Pencil, plane: Subspace) -> Result<Self> {
        if plane.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: plane.dim(),
            });
        }
        if !pencil.q1().restrict(&plane)?.is_zero() || !pencil.q2().restrict(&plane)?.is_zero() {
            return Err(Error::Unsupported("plane is not contained in X".into()));
        }
        Ok(LineOnX { plane })
    }

    /// Invariant under every matrix, acting on points.
    pub fn is_invariant(&self, point_mats: &[Mat]) -> bool {
        point_mats.iter().all(|m| self.plane.is_stable_under(m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// A known finite number of lines, not listed individually.
    Counted { count: usize },
    /// Infinitely many invariant lines.
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub kind: FamilyKind,
    /// The subspace whose lines make up the family.
    pub space: Subspace,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantLinesReport {
    pub lines: Vec<LineOnX>,
    pub families: Vec<FamilyReport>,
    /// Character pairs the search could not settle.
    pub unsupported: Vec<String>,
}

impl InvariantLinesReport {
    /// Every invariant line is listed in `lines`.
    pub fn is_complete(&self) -> bool {
        self.families.is_empty() && self.unsupported.is_empty()
    }

    /// The invariant lines form a finite set of known size.
    pub fn count(&self) -> Option<usize> {
        if !self.unsupported.is_empty() {
            return None;
        }
        let mut n = self.lines.len();
        for f in &self.families {
            match f.kind {
                FamilyKind::Counted { count } => n += count,
                FamilyKind::Infinite => return None,
            }
        }
        Some(n)
    }
}

/// Points of `X` inside a joint eigenspace.
enum Locus {
    Finite(Vec<Vec<CycNum>>),
    Infinite,
}

fn locus(pencil: &Pencil, s: &Subspace) -> Result<Locus> {
    Ok(match s.dim() {
        1 => {
            let v = s.basis_vectors().remove(0);
            if pencil.membership(&v)? {
                Locus::Finite(vec![normalize_point(&v)])
            } else {
                Locus::Finite(vec![])
            }
        }
        2 => match points_on_line(pencil, s)? {
            LinePoints::Whole => Locus::Infinite,
            LinePoints::Points(p) => Locus::Finite(p),
        },
        _ => Locus::Infinite,
    })
}

fn describe(ch: &Character) -> String {
    let vals: Vec<String> = ch.values.iter().map(ToString::to_string).collect();
    format!("({})", vals.join(", "))
}

/// Lines on `X ∩ P(E)` for a joint eigenspace `E` of dimension at least 3.
///
/// With the restricted pencil smooth, `X ∩ P(E)` is a smooth complete intersection: four
/// points in `P^2`, a quartic elliptic curve in `P^3`, a quartic del Pezzo surface with
/// sixteen lines in `P^4`, and positive-dimensional line families from `P^5` on.
fn lines_in_big_space(pencil: &Pencil, ch: &Character, report: &mut InvariantLinesReport) -> Result<()> {
    let s = &ch.space;
    let k = s.dim();
    if k == pencil.dim() {
        report.families.push(FamilyReport {
            kind: FamilyKind::Infinite,
            space: s.clone(),
            note: "every line on X is invariant".into(),
        });
        return Ok(());
    }
    let r1 = pencil.q1().restrict(s)?;
    let r2 = pencil.q2().restrict(s)?;
    let f = determinant_form(r1.gram(), r2.gram());
    if f.is_zero() || f.discriminant().is_zero() {
        report.unsupported.push(format!(
            "character {}: restricted pencil of rank {k} is singular",
            describe(ch)
        ));
        return Ok(());
    }
    match k {
        3 | 4 => {}
        5 => report.families.push(FamilyReport {
            kind: FamilyKind::Counted { count: 16 },
            space: s.clone(),
            note: format!("the 16 lines of the quartic del Pezzo surface in character {}", describe(ch)),
        }),
        _ => report.families.push(FamilyReport {
            kind: FamilyKind::Infinite,
            space: s.clone(),
            note: format!("lines of X inside a {k}-dimensional character space {}", describe(ch)),
        }),
    }
    Ok(())
}

/// Lines `span(u, v)` with `u` fixed and `v` ranging over `X ∩ P(E)` orthogonal to `u`.
fn lines_through(
    pencil: &Pencil,
    u: &[CycNum],
    e: &Subspace,
    label: &str,
    report: &mut InvariantLinesReport,
    out: &mut Vec<Subspace>,
) -> Result<()> {
    let basis = e.basis_vectors();
    let rows: Vec<Vec<CycNum>> = [pencil.q1(), pencil.q2()]
        .iter()
        .map(|q| basis.iter().map(|b| q.polar(u, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let coeffs = Mat::from_rows(rows).expect("uniform rows").kernel();
    let vs: Vec<Vec<CycNum>> = coeffs
        .basis_vectors()
        .iter()
        .map(|c| e.combine(c).expect("dimension"))
        .collect();
    let k = Subspace::span(pencil.dim(), &vs);
    match k.dim() {
        0 => {}
        1 => {
            let v = k.basis_vectors().remove(0);
            if pencil.membership(&v)? {
                out.push(Subspace::span(pencil.dim(), &[u.to_vec(), v]));
            }
        }
        2 => match points_on_line(pencil, &k)? {
            LinePoints::Points(pts) => {
                for v in pts {
                    out.push(Subspace::span(pencil.dim(), &[u.to_vec(), v]));
                }
            }
            LinePoints::Whole => report.families.push(FamilyReport {
                kind: FamilyKind::Infinite,
                space: k.sum(&Subspace::span(pencil.dim(), &[u.to_vec()])),
                note: format!("cone of lines through a fixed point, {label}"),
            }),
        },
        d => report.unsupported.push(format!(
            "{label}: {d}-dimensional space of partners for a fixed point"
        )),
    }
    Ok(())
}

/// All lines on `X` invariant under an abelian group of coordinate symmetries.
///
/// An invariant line splits along the joint eigenspaces of the point action: it lies in
/// one of them, or joins points of two different ones.
pub fn invariant_lines_abelian(pencil: &Pencil, group: &MatrixGroup) -> Result<InvariantLinesReport> {
    if let Some((a, b)) = group.noncommuting_pair() {
        return Err(Error::NotAbelian(a, b));
    }
    pencil.symmetries(group)?;
    let point_group = group.contragredient()?;
    let mats: Vec<Mat> = point_group.generators().iter().map(|g| g.matrix.clone()).collect();
    let chars = simultaneous_eigenspaces(&mats, pencil.dim())?;
    let mut report = InvariantLinesReport::default();
    let mut planes: Vec<Subspace> = Vec::new();

    let loci: Vec<Locus> = chars
        .iter()
        .map(|c| locus(pencil, &c.space))
        .collect::<Result<_>>()?;

    // lines inside a single character space
    for ch in &chars {
        match ch.space.dim() {
            0 | 1 => {}
            2 => {
                if matches!(points_on_line(pencil, &ch.space)?, LinePoints::Whole) {
                    planes.push(ch.space.clone());
                }
            }
            _ => lines_in_big_space(pencil, ch, &mut report)?,
        }
    }

    // lines joining two character spaces
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            let label = format!("characters {} and {}", describe(&chars[i]), describe(&chars[j]));
            match (&loci[i], &loci[j]) {
                (Locus::Finite(a), Locus::Finite(b)) => {
                    for u in a {
                        for v in b {
                            let polar_zero = pencil.q1().polar(u, v)?.is_zero() && pencil.q2().polar(u, v)?.is_zero();
                            if polar_zero {
                                planes.push(Subspace::span(pencil.dim(), &[u.clone(), v.clone()]));
                            }
                        }
                    }
                }
                (Locus::Finite(a), Locus::Infinite) => {
                    for u in a {
                        lines_through(pencil, u, &chars[j].space, &label, &mut report, &mut planes)?;
                    }
                }
                (Locus::Infinite, Locus::Finite(b)) => {
                    for v in b {
                        lines_through(pencil, v, &chars[i].space, &label, &mut report, &mut planes)?;
                    }
                }
                (Locus::Infinite, Locus::Infinite) => report
                    .unsupported
                    .push(format!("{label}: both character spaces meet X in infinitely many points")),
            }
        }
    }

    for p in planes {
        let line = LineOnX::new(pencil, p)?;
        if !line.is_invariant(&mats) {
            return Err(Error::Unsupported("constructed line fails the invariance check".into()));
        }
        if !report.lines.contains(&line) {
            report.lines.push(line);
        }
    }
    Ok(report)
}
