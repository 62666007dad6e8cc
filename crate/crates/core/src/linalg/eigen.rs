use num_integer::Integer;

use super::{Mat, Subspace};
use crate::error::{Error, Result};
use crate::exactmath::{lcm, CycNum};

/// Default bound on operator orders explored by eigenspace routines.
pub const DEFAULT_ORDER_CAP: usize = 720;

/// Orders attached to an invertible operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderInfo {
    /// Least `n` with `M^n` scalar.
    pub projective_order: usize,
    /// The scalar `M^n` for that `n`.
    pub scalar: CycNum,
    /// Least `n` with `M^n = I`, when within the cap.
    pub order: Option<usize>,
}

/// Multiplicative order of a root of unity, if `c` is one.
pub fn root_of_unity_order(c: &CycNum) -> Option<usize> {
    let m = lcm(2, c.order());
    let k = c.log_root_of_unity(m)?;
    Some((m / k.gcd(&m)) as usize)
}

pub fn operator_order(m: &Mat, cap: usize) -> Result<OrderInfo> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let mut p = m.clone();
    for n in 1..=cap {
        if let Some(c) = p.as_scalar() {
            if c.is_zero() {
                return Err(Error::Singular);
            }
            let order = root_of_unity_order(&c)
                .map(|k| k * n)
                .filter(|&o| o <= cap);
            return Ok(OrderInfo {
                projective_order: n,
                scalar: c,
                order,
            });
        }
        p = p.mul(m);
    }
    Err(Error::OrderExceedsCap { cap })
}

/// Eigenspace of a finite-order operator, with eigenvalue `ζ_n^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub root_order: u32,
    pub exponent: u32,
    pub value: CycNum,
    pub space: Subspace,
}

pub fn eigenspaces_finite_order(m: &Mat) -> Result<Vec<Eigenspace>> {
    eigenspaces_with_cap(m, DEFAULT_ORDER_CAP)
}

pub fn eigenspaces_with_cap(m: &Mat, cap: usize) -> Result<Vec<Eigenspace>> {
    let info = operator_order(m, cap).map_err(|e| match e {
        Error::OrderExceedsCap { .. } => Error::NotFiniteOrder,
        other => other,
    })?;
    let n = info.order.ok_or(Error::NotFiniteOrder)? as u32;
    let dim = m.rows();
    let mut out = Vec::new();
    for k in 0..n {
        let lam = CycNum::root_of_unity(n, k as i64);
        let shifted = m.sub(&Mat::scalar(dim, &lam));
        let space = shifted.kernel();
        if !space.is_zero() {
            out.push(Eigenspace {
                root_order: n,
                exponent: k,
                value: lam,
                space,
            });
        }
    }
    let total: usize = out.iter().map(|e| e.space.dim()).sum();
    if total != dim {
        return Err(Error::Unsupported(format!(
            "eigenspaces span {total} of {dim} dimensions"
        )));
    }
    Ok(out)
}

/// Joint eigenspace of commuting operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<CycNum>,
    pub space: Subspace,
}

/// Decomposition of the ambient space into joint eigenspaces of pairwise commuting finite-order operators.
pub fn simultaneous_eigenspaces(mats: &[Mat], ambient: usize) -> Result<Vec<Character>> {
    for (i, a) in mats.iter().enumerate() {
        for (j, b) in mats.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b) {
                return Err(Error::NotAbelian(i.to_string(), j.to_string()));
            }
        }
    }
    let mut parts = vec![Character {
        values: Vec::new(),
        space: Subspace::full(ambient),
    }];
    for m in mats {
        let eig = eigenspaces_finite_order(m)?;
        let mut next = Vec::new();
        for part in &parts {
            for e in &eig {
                let s = part.space.intersect(&e.space);
                if !s.is_zero() {
                    let mut values = part.values.clone();
                    values.push(e.value.clone());
                    next.push(Character { values, space: s });
                }
            }
        }
        parts = next;
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn orders() {
        let info = operator_order(&Mat::identity(3), 10).unwrap();
        assert_eq!((info.projective_order, info.order), (1, Some(1)));
        let s = Mat::diag(&[z(6, 1), z(6, 2)]);
        assert_eq!(operator_order(&s, 24).unwrap().order, Some(6));
        let scalar = Mat::scalar(2, &z(4, 1));
        let info = operator_order(&scalar, 24).unwrap();
        assert_eq!((info.projective_order, info.order), (1, Some(4)));
        let shear = Mat::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(operator_order(&shear, 10), Err(Error::OrderExceedsCap { cap: 10 }));
        assert_eq!(eigenspaces_finite_order(&shear), Err(Error::NotFiniteOrder));
    }

    #[test]
    fn swap_eigenspaces() {
        let swap = Mat::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        let e = eigenspaces_finite_order(&swap).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].value, CycNum::from_int(1));
        assert!(e[0].space.contains(&[CycNum::from_int(1), CycNum::from_int(1)]));
        assert_eq!(e[1].value, CycNum::from_int(-1));
    }

    #[test]
    fn joint_decomposition() {
        let a = Mat::diag(&[1, 1, -1, -1].map(CycNum::from_int));
        let b = Mat::diag(&[1, -1, 1, -1].map(CycNum::from_int));
        let parts = simultaneous_eigenspaces(&[a, b], 4).unwrap();
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().all(|p| p.space.dim() == 1));
        let c = Mat::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        let d = Mat::diag(&[1, -1].map(CycNum::from_int));
        assert!(matches!(simultaneous_eigenspaces(&[c, d], 2), Err(Error::NotAbelian(..))));
    }
}
