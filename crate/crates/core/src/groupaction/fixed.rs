use serde::{Deserialize, Serialize};

use super::MatrixGroup;
use crate::error::Result;
use crate::exactmath::CycNum;
use crate::linalg::{eigenspaces_finite_order, Subspace};

/// Linear subspace whose projectivization is pointwise fixed, with the eigenvalue of each generator on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedComponent {
    pub space: Subspace,
    pub character: Vec<CycNum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocus {
    pub components: Vec<FixedComponent>,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains_point(&self, v: &[CycNum]) -> bool {
        self.components.iter().any(|c| c.space.contains(v))
    }
}

/// Points of `P^{n-1}` fixed by every generator, the matrices acting on column vectors.
///
/// Each generator contributes its eigenspaces; intersecting these generator by
/// generator leaves one component per surviving joint character.
pub fn projective_fixed_locus(group: &MatrixGroup) -> Result<FixedLocus> {
    let mut parts = vec![FixedComponent {
        space: Subspace::full(group.dim()),
        character: Vec::new(),
    }];
    for g in group.generators() {
        let eig = eigenspaces_finite_order(&g.matrix)?;
        let mut next = Vec::new();
        for p in &parts {
            for e in &eig {
                let s = p.space.intersect(&e.space);
                if !s.is_zero() {
                    let mut character = p.character.clone();
                    character.push(e.value.clone());
                    next.push(FixedComponent { space: s, character });
                }
            }
        }
        parts = next;
        if parts.is_empty() {
            break;
        }
    }
    Ok(FixedLocus { components: parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupaction::Generator;
    use crate::linalg::Mat;

    #[test]
    fn klein_four_fixes_nothing() {
        let a = Mat::diag(&[CycNum::from_int(1), CycNum::from_int(-1)]);
        let b = Mat::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        let g = MatrixGroup::new(2, vec![Generator::new("a", a), Generator::new("b", b)]).unwrap();
        assert!(projective_fixed_locus(&g).unwrap().is_empty());
    }

    #[test]
    fn trivial_group_fixes_everything() {
        let g = MatrixGroup::new(3, vec![]).unwrap();
        let f = projective_fixed_locus(&g).unwrap();
        assert_eq!(f.components.len(), 1);
        assert_eq!(f.components[0].space, Subspace::full(3));
    }

    #[test]
    fn swap_fixes_two_points() {
        let b = Mat::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        let g = MatrixGroup::new(2, vec![Generator::new("b", b)]).unwrap();
        let f = projective_fixed_locus(&g).unwrap();
        assert_eq!(f.components.len(), 2);
        assert!(f.contains_point(&[CycNum::from_int(1), CycNum::from_int(-1)]));
    }
}
