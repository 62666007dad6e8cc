use serde::{Deserialize, Serialize};

use super::{search_orders, Pencil};
use crate::error::{Error, Result};
use crate::exactmath::{lcm, BinaryForm, CycNum, RootSet};
use crate::groupaction::{projective_fixed_locus, MatrixGroup};
use crate::linalg::{normalize_point, Quadric, Subspace};

/// Points of `X` on a projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinePoints {
    /// The whole line lies on `X`.
    Whole,
    Points(Vec<Vec<CycNum>>),
}

fn binary_quadric(q: &Quadric) -> BinaryForm {
    let g = q.gram();
    BinaryForm::new(vec![
        g.get(0, 0).clone(),
        g.get(0, 1).scale(&crate::exactmath::rat_int(2)),
        g.get(1, 1).clone(),
    ])
}

pub(crate) fn roots_anywhere(f: &BinaryForm, base: u32) -> Result<RootSet> {
    let mut last = None;
    for o in search_orders(base) {
        match f.roots_low_degree(o) {
            Ok(r) => return Ok(r),
            Err(e @ Error::Unsupported(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Unsupported("no roots found".into())))
}

/// `X ∩ P(L)` for a 2-dimensional subspace `L`.
pub fn points_on_line(pencil: &Pencil, line: &Subspace) -> Result<LinePoints> {
    if line.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: line.dim(),
        });
    }
    let f1 = binary_quadric(&pencil.q1().restrict(line)?);
    let f2 = binary_quadric(&pencil.q2().restrict(line)?);
    if f1.is_zero() && f2.is_zero() {
        return Ok(LinePoints::Whole);
    }
    let g = f1.gcd(&f2);
    let base = lcm(line.basis().order(), lcm(pencil.q1().gram().order(), pencil.q2().gram().order()));
    let roots = match g.degree() {
        0 => Vec::new(),
        _ => match roots_anywhere(&g, base)? {
            RootSet::All => return Ok(LinePoints::Whole),
            RootSet::Points(p) => p,
        },
    };
    let pts = roots
        .iter()
        .map(|r| normalize_point(&line.combine(r).expect("two coordinates")))
        .collect();
    Ok(LinePoints::Points(pts))
}

/// A fixed component of dimension at least 3, reported by its restricted forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicComponent {
    pub space: Subspace,
    pub q1: Quadric,
    pub q2: Quadric,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointsReport {
    /// Isolated fixed points on `X`, normalized.
    pub points: Vec<Vec<CycNum>>,
    /// Pointwise fixed lines contained in `X`.
    pub lines: Vec<Subspace>,
    /// Larger fixed subspaces, with `X` cut out by the restricted forms.
    pub symbolic: Vec<SymbolicComponent>,
}

impl FixedPointsReport {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty() && self.symbolic.is_empty()
    }
}

/// Fixed points on `X` of a group of coordinate symmetries.
pub fn fixed_points_on_x(pencil: &Pencil, group: &MatrixGroup) -> Result<FixedPointsReport> {
    pencil.symmetries(group)?;
    let points_group = group.contragredient()?;
    let locus = projective_fixed_locus(&points_group)?;
    let mut report = FixedPointsReport::default();
    for comp in locus.components {
        let s = comp.space;
        match s.dim() {
            1 => {
                let v = s.basis_vectors().remove(0);
                if pencil.membership(&v)? {
                    report.points.push(normalize_point(&v));
                }
            }
            2 => match points_on_line(pencil, &s)? {
                LinePoints::Whole => report.lines.push(s),
                LinePoints::Points(p) => report.points.extend(p),
            },
            _ => report.symbolic.push(SymbolicComponent {
                q1: pencil.q1().restrict(&s)?,
                q2: pencil.q2().restrict(&s)?,
                space: s,
            }),
        }
    }
    Ok(report)
}
