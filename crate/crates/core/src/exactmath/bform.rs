//! Binary forms f(t1, t2) = Σ_k c_k t1^{d-k} t2^k over cyclotomic fields.

use crate::error::{Error, Result};
use crate::exactmath::cyclotomic::{lcm, rat_int, CycNum};
use crate::perm::Permutation;

/// A point (a : b) of P^1.
pub type ProjPoint = [CycNum; 2];

pub fn proj_eq(p: &ProjPoint, q: &ProjPoint) -> bool {
    (&p[0] * &q[1] - &p[1] * &q[0]).is_zero()
}

/// Applies a 2×2 matrix (row-major) to the column vector (a, b).
pub fn moebius_apply(m: &[[CycNum; 2]; 2], p: &ProjPoint) -> ProjPoint {
    [
        &m[0][0] * &p[0] + &m[0][1] * &p[1],
        &m[1][0] * &p[0] + &m[1][1] * &p[1],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    /// `coeffs[k]` multiplies t1^{d-k} t2^k.
    coeffs: Vec<CycNum>,
}

/// Solutions of a binary form of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSet {
    /// The form vanishes identically.
    All,
    /// Distinct projective roots (multiplicities dropped).
    Points(Vec<ProjPoint>),
}

impl BinaryForm {
    pub fn new(coeffs: Vec<CycNum>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    /// The linear form a·t1 + b·t2.
    pub fn linear(a: CycNum, b: CycNum) -> Self {
        BinaryForm::new(vec![a, b])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_zero)
    }

    fn order(&self) -> u32 {
        self.coeffs.iter().fold(1, |acc, c| lcm(acc, c.order()))
    }

    pub fn eval(&self, a: &CycNum, b: &CycNum) -> CycNum {
        // Horner-like in homogeneous form
        let d = self.degree();
        let mut acc = CycNum::zero(lcm(self.order(), lcm(a.order(), b.order())));
        let mut apow = vec![CycNum::one(1)];
        let mut bpow = vec![CycNum::one(1)];
        for i in 1..=d {
            apow.push(&apow[i - 1] * a);
            bpow.push(&bpow[i - 1] * b);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&(c * &apow[d - k]) * &bpow[k]);
        }
        acc
    }

    pub fn eval_point(&self, p: &ProjPoint) -> CycNum {
        self.eval(&p[0], &p[1])
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let o = lcm(self.order(), other.order());
        let mut out = vec![CycNum::zero(o); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm::new(out)
    }

    pub fn scale(&self, c: &CycNum) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// ∂f/∂t1.
    pub fn derivative_t1(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::new(vec![CycNum::zero(1)]);
        }
        BinaryForm::new(
            (0..d)
                .map(|k| self.coeffs[k].scale(&rat_int((d - k) as i64)))
                .collect(),
        )
    }

    /// ∂f/∂t2.
    pub fn derivative_t2(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::new(vec![CycNum::zero(1)]);
        }
        BinaryForm::new(
            (1..=d)
                .map(|k| self.coeffs[k].scale(&rat_int(k as i64)))
                .collect(),
        )
    }

    /// Resultant of two binary forms of formal degrees m and n (Sylvester determinant).
    pub fn resultant(&self, other: &BinaryForm) -> CycNum {
        let m = self.degree();
        let n = other.degree();
        let size = m + n;
        if size == 0 {
            return CycNum::one(1);
        }
        let o = lcm(self.order(), other.order());
        let mut rows: Vec<Vec<CycNum>> = Vec::with_capacity(size);
        for i in 0..n {
            let mut row = vec![CycNum::zero(o); size];
            for (k, c) in self.coeffs.iter().enumerate() {
                row[i + k] = c.embed_unchecked(o);
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![CycNum::zero(o); size];
            for (k, c) in other.coeffs.iter().enumerate() {
                row[i + k] = c.embed_unchecked(o);
            }
            rows.push(row);
        }
        determinant(rows)
    }

    /// Discriminant, normalized as the resultant of the two partial derivatives.
    ///
    /// Vanishes exactly when the form has a repeated projective root (or is zero).
    /// For degree one the form has a single simple root and the value is 1.
    pub fn discriminant(&self) -> CycNum {
        if self.is_zero() {
            return CycNum::zero(1);
        }
        match self.degree() {
            0 => CycNum::one(1),
            1 => CycNum::one(1),
            _ => self.derivative_t1().resultant(&self.derivative_t2()),
        }
    }

    /// Dehomogenized coefficients p(x) = f(x, 1), lowest degree first, with the
    /// multiplicity of the root (1 : 0).
    fn dehomogenize(&self) -> (Vec<CycNum>, usize) {
        let d = self.degree();
        // coefficient of x^j is coeffs[d - j]
        let mut p: Vec<CycNum> = (0..=d).map(|j| self.coeffs[d - j].clone()).collect();
        while p.len() > 1 && p.last().is_some_and(CycNum::is_zero) {
            p.pop();
        }
        let deg = p.len() - 1;
        (p, d - deg)
    }

    /// Monic greatest common divisor, as a binary form.
    pub fn gcd(&self, other: &BinaryForm) -> BinaryForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (p, mp) = self.dehomogenize();
        let (q, mq) = other.dehomogenize();
        let g = poly_gcd(p, q);
        let inf = mp.min(mq);
        // homogenize: g(x) has degree e; form Σ g_j t1^j t2^{e-j} times t2^inf
        let e = g.len() - 1;
        let total = e + inf;
        let o = g.iter().fold(1, |acc, c| lcm(acc, c.order()));
        let mut coeffs = vec![CycNum::zero(o); total + 1];
        for (j, c) in g.iter().enumerate() {
            // t1^j t2^{total-j}: index k = total - j
            coeffs[total - j] = c.clone();
        }
        BinaryForm::new(coeffs)
    }

    /// Roots of a form of degree ≤ 2 inside Q(ζ_M); `M` is a multiple of every coefficient order.
    pub fn roots_low_degree(&self, field_order: u32) -> Result<RootSet> {
        if self.is_zero() {
            return Ok(RootSet::All);
        }
        let (p, inf) = self.dehomogenize();
        let o = lcm(field_order, self.order());
        let mut pts: Vec<ProjPoint> = Vec::new();
        if inf > 0 {
            pts.push([CycNum::one(o), CycNum::zero(o)]);
        }
        match p.len() - 1 {
            0 => {}
            1 => {
                // p0 + p1 x = 0
                let x = &(-&p[0]) * &p[1].inverse()?;
                pts.push([x, CycNum::one(o)]);
            }
            2 => {
                let (c, b, a) = (&p[0], &p[1], &p[2]);
                let disc = &(b * b) - &(&(a * c) * &CycNum::from_int(4));
                let r = disc.sqrt_in(lcm(o, disc.order())).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "square root of {disc} not found in Q(zeta_{o})"
                    ))
                })?;
                let two_a_inv = (a * &CycNum::from_int(2)).inverse()?;
                let x1 = &(&(-b) + &r) * &two_a_inv;
                let x2 = &(&(-b) - &r) * &two_a_inv;
                pts.push([x1.clone(), CycNum::one(o)]);
                if x1 != x2 {
                    pts.push([x2, CycNum::one(o)]);
                }
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "root extraction for a form of degree {}",
                    self.degree()
                )))
            }
        }
        Ok(RootSet::Points(pts))
    }
}

fn poly_trim(p: &mut Vec<CycNum>) {
    while p.len() > 1 && p.last().is_some_and(CycNum::is_zero) {
        p.pop();
    }
}

fn poly_rem(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inverse().expect("trimmed divisor has nonzero lead");
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let c = &r[dr] * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] = &r[dr - db + i] - &(&c * bc);
        }
        r.pop();
        if r.is_empty() {
            r.push(CycNum::zero(1));
            break;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(mut a: Vec<CycNum>, mut b: Vec<CycNum>) -> Vec<CycNum> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().expect("nonempty").clone();
    if lead.is_zero() {
        return a;
    }
    let inv = lead.inverse().expect("nonzero");
    a.iter().map(|c| c * &inv).collect()
}

/// Determinant by Gaussian elimination over the field.
pub(crate) fn determinant(mut m: Vec<Vec<CycNum>>) -> CycNum {
    let n = m.len();
    let o = m
        .iter()
        .flatten()
        .fold(1, |acc, c| lcm(acc, c.order()));
    let mut det = CycNum::one(o);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CycNum::zero(o);
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inverse().expect("pivot nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

/// Permutation of root indices induced by a Möbius map acting on (t1, t2) columns.
pub fn bform_root_action(
    f: &BinaryForm,
    roots: &[ProjPoint],
    moebius: &[[CycNum; 2]; 2],
) -> Result<Permutation> {
    for (i, r) in roots.iter().enumerate() {
        if !f.eval_point(r).is_zero() {
            return Err(Error::NotARoot { index: i });
        }
    }
    let mut images = Vec::with_capacity(roots.len());
    for (i, r) in roots.iter().enumerate() {
        let img = moebius_apply(moebius, r);
        let j = roots
            .iter()
            .position(|q| proj_eq(q, &img))
            .ok_or(Error::NotClosed { index: i })?;
        images.push(j);
    }
    Permutation::new(images).ok_or_else(|| Error::Unsupported("roots are not distinct".into()))
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

    fn worked_sextic() -> BinaryForm {
        // T0 T1 (T0^4 - T1^4)
        BinaryForm::new(vec![c(0), c(1), c(0), c(0), c(0), c(-1), c(0)])
    }

    fn worked_roots() -> Vec<ProjPoint> {
        // λ = t1/t2: 0, ∞, 1, i, -1, -i
        vec![
            [c(0), c(1)],
            [c(1), c(0)],
            [c(1), c(1)],
            [i(), c(1)],
            [c(-1), c(1)],
            [-i(), c(1)],
        ]
    }

    #[test]
    fn discriminants() {
        assert!(!BinaryForm::new(vec![c(0), c(1), c(0)]).discriminant().is_zero());
        assert!(BinaryForm::new(vec![c(1), c(0), c(0)]).discriminant().is_zero());
        assert!(!worked_sextic().discriminant().is_zero());
        // t1^2 t2 ... double root at (0:1)
        let f = BinaryForm::new(vec![c(0), c(0), c(1), c(1)]);
        assert!(f.discriminant().is_zero());
    }

    #[test]
    fn root_action_on_worked_branch_points() {
        let f = worked_sextic();
        let roots = worked_roots();
        let times_i = [[i(), c(0)], [c(0), c(1)]];
        let p = bform_root_action(&f, &roots, &times_i).unwrap();
        assert_eq!(p.to_cycle_string(), "(3 4 5 6)");
        let id = [[c(1), c(0)], [c(0), c(1)]];
        assert!(bform_root_action(&f, &roots, &id).unwrap().is_identity());
        let inv = [[c(0), c(1)], [c(1), c(0)]];
        let p = bform_root_action(&f, &roots, &inv).unwrap();
        assert_eq!(p.to_cycle_string(), "(1 2)(4 6)");
    }

    #[test]
    fn root_action_errors() {
        let f = worked_sextic();
        let mut roots = worked_roots();
        roots[0] = [c(2), c(1)];
        let id = [[c(1), c(0)], [c(0), c(1)]];
        assert_eq!(bform_root_action(&f, &roots, &id), Err(Error::NotARoot { index: 0 }));
        let roots = worked_roots();
        let double = [[c(2), c(0)], [c(0), c(1)]];
        assert_eq!(
            bform_root_action(&f, &roots, &double),
            Err(Error::NotClosed { index: 2 })
        );
    }

    #[test]
    fn low_degree_roots() {
        // s^2 + 4 t^2 -> s = ±2i t
        let f = BinaryForm::new(vec![c(1), c(0), c(4)]);
        let RootSet::Points(pts) = f.roots_low_degree(8).unwrap() else {
            panic!("expected points")
        };
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!(f.eval_point(p).is_zero());
        }
        // t1 * t2
        let g = BinaryForm::new(vec![c(0), c(1), c(0)]);
        let RootSet::Points(pts) = g.roots_low_degree(1).unwrap() else {
            panic!()
        };
        assert_eq!(pts.len(), 2);
        assert_eq!(BinaryForm::new(vec![c(0), c(0)]).roots_low_degree(1).unwrap(), RootSet::All);
    }

    #[test]
    fn gcd_of_forms() {
        let l1 = BinaryForm::linear(c(1), c(1));
        let l2 = BinaryForm::linear(c(1), c(-1));
        let l3 = BinaryForm::linear(c(0), c(1));
        let f = l1.mul(&l2);
        let g = l1.mul(&l3);
        let h = f.gcd(&g);
        assert_eq!(h.degree(), 1);
        assert!(h.eval(&c(1), &c(-1)).is_zero());
        // shared root at infinity (1:0): t2 divides both
        let f = l3.mul(&l1);
        let g = l3.mul(&l2);
        let h = f.gcd(&g);
        assert_eq!(h.degree(), 1);
        assert!(h.eval(&c(1), &c(0)).is_zero());
    }
}
