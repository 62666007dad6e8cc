use serde::{Deserialize, Serialize};

use super::Pencil;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionKind {
    /// Translation by a nonzero 2-torsion point on the variety of lines.
    Translation,
    /// Lifts the hyperelliptic involution.
    IotaLift,
}

/// A sign change `diag(±1)` on a diagonal pencil, up to global sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalInvolution {
    /// Representative with at most `g+1` minus signs.
    pub signs: Vec<i8>,
    pub minus_count: usize,
    pub plus_coords: Vec<usize>,
    pub minus_coords: Vec<usize>,
    pub determinant: i8,
    pub free_on_lines: bool,
    pub fixes_hyperplane_section: bool,
    pub kind: InvolutionKind,
}

pub fn classify_diagonal_involution(signs: &[i8], pencil: &Pencil) -> Result<DiagonalInvolution> {
    if !pencil.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let n = pencil.dim();
    if signs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: signs.len(),
        });
    }
    if let Some(i) = signs.iter().position(|s| *s != 1 && *s != -1) {
        return Err(Error::schema(format!("signs[{i}]"), "entries must be 1 or -1"));
    }
    if signs.iter().all(|s| *s == signs[0]) {
        return Err(Error::schema("signs", "a scalar matrix acts trivially"));
    }
    let g = pencil.genus();
    let minus = signs.iter().filter(|s| **s == -1).count();
    let flip = minus > g + 1 || (minus == g + 1 && signs[0] == -1);
    let signs: Vec<i8> = if flip {
        signs.iter().map(|s| -s).collect()
    } else {
        signs.to_vec()
    };
    let minus_coords: Vec<usize> = (0..n).filter(|&i| signs[i] == -1).collect();
    let plus_coords: Vec<usize> = (0..n).filter(|&i| signs[i] == 1).collect();
    let k = minus_coords.len();
    let determinant = if k % 2 == 0 { 1 } else { -1 };
    Ok(DiagonalInvolution {
        signs,
        minus_count: k,
        plus_coords,
        minus_coords,
        determinant,
        free_on_lines: determinant == 1,
        fixes_hyperplane_section: k == 1,
        kind: if determinant == 1 {
            InvolutionKind::Translation
        } else {
            InvolutionKind::IotaLift
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::CycNum;

    fn pencil() -> Pencil {
        let c = CycNum::from_int;
        Pencil::diagonal(2, &vec![c(1); 6], &[c(0), c(1), c(2), c(3), c(4), c(5)]).unwrap()
    }

    #[test]
    fn two_minus_signs_translate() {
        let inv = classify_diagonal_involution(&[1, 1, 1, 1, -1, -1], &pencil()).unwrap();
        assert_eq!(inv.minus_coords, vec![4, 5]);
        assert_eq!(inv.determinant, 1);
        assert!(inv.free_on_lines);
        assert_eq!(inv.kind, InvolutionKind::Translation);
        let same = classify_diagonal_involution(&[-1, -1, -1, -1, 1, 1], &pencil()).unwrap();
        assert_eq!(same, inv);
    }

    #[test]
    fn odd_counts_lift_iota() {
        let inv = classify_diagonal_involution(&[-1, -1, -1, -1, -1, 1], &pencil()).unwrap();
        assert_eq!(inv.minus_coords, vec![5]);
        assert!(inv.fixes_hyperplane_section);
        assert_eq!(inv.kind, InvolutionKind::IotaLift);
        let tie = classify_diagonal_involution(&[-1, -1, 1, 1, 1, -1], &pencil()).unwrap();
        assert_eq!(tie.signs, vec![1, 1, -1, -1, -1, 1]);
        assert_eq!(tie.determinant, -1);
        assert!(!tie.fixes_hyperplane_section);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(classify_diagonal_involution(&[1; 6], &pencil()).is_err());
        assert!(classify_diagonal_involution(&[1, 1, -1], &pencil()).is_err());
        assert!(classify_diagonal_involution(&[1, 1, 1, 1, 2, -1], &pencil()).is_err());
    }
}
