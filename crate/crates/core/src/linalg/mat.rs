use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::Subspace;
use crate::error::{Error, Result};
use crate::exactmath::cyclotomic::cycnum_from_json;
use crate::exactmath::{lcm, CycNum};

/// Dense matrix over a cyclotomic field. All entries share one order.
#[derive(Clone, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<CycNum>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Mat {}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            order: 1,
            data: vec![CycNum::zero(1); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycNum::one(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Self::from_flat(r, c, rows.into_iter().flatten().collect()))
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let data: Vec<Vec<CycNum>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| CycNum::from_int(v)).collect())
            .collect();
        Self::from_rows(data).expect("ragged integer rows")
    }

    pub fn diag(entries: &[CycNum]) -> Self {
        let n = entries.len();
        let mut data = vec![CycNum::zero(1); n * n];
        for (i, e) in entries.iter().enumerate() {
            data[i * n + i] = e.clone();
        }
        Self::from_flat(n, n, data)
    }

    pub fn scalar(n: usize, c: &CycNum) -> Self {
        Self::diag(&vec![c.clone(); n])
    }

    pub fn column(v: &[CycNum]) -> Self {
        Self::from_flat(v.len(), 1, v.to_vec())
    }

    pub fn row_vector(v: &[CycNum]) -> Self {
        Self::from_flat(1, v.len(), v.to_vec())
    }

    fn from_flat(rows: usize, cols: usize, data: Vec<CycNum>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let order = data.iter().fold(1, |o, x| lcm(o, x.order()));
        let data = data.into_iter().map(|x| x.embed_unchecked(order)).collect();
        Mat {
            rows,
            cols,
            order,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Common cyclotomic order of the entries.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        if self.order % v.order() == 0 {
            self.data[i * self.cols + j] = v.embed_unchecked(self.order);
        } else {
            let o = lcm(self.order, v.order());
            *self = self.embed(o);
            self.data[i * self.cols + j] = v.embed_unchecked(o);
        }
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Re-express all entries at a multiple of the current order.
    pub fn embed(&self, order: u32) -> Mat {
        assert_eq!(order % self.order, 0, "order {} does not divide {order}", self.order);
        if order == self.order {
            return self.clone();
        }
        Mat {
            rows: self.rows,
            cols: self.cols,
            order,
            data: self.data.iter().map(|x| x.embed_unchecked(order)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            order: self.order,
            data,
        }
    }

    /// Matrix product. Panics on a shape mismatch.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let o = lcm(self.order, other.order);
        let a = self.embed(o);
        let b = other.embed(o);
        let mut data = vec![CycNum::zero(o); a.rows * b.cols];
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    let t = x * y;
                    let slot = &mut data[i * b.cols + j];
                    *slot = &*slot + &t;
                }
            }
        }
        Mat {
            rows: a.rows,
            cols: b.cols,
            order: o,
            data,
        }
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.mul(&Mat::column(v)).data)
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let o = lcm(self.order, other.order);
        let a = self.embed(o);
        let b = other.embed(o);
        Mat {
            rows: a.rows,
            cols: a.cols,
            order: o,
            data: a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: &CycNum) -> Mat {
        let o = lcm(self.order, c.order());
        let a = self.embed(o);
        let c = c.embed_unchecked(o);
        Mat {
            rows: a.rows,
            cols: a.cols,
            order: o,
            data: a.data.iter().map(|x| x * &c).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn diagonal(&self) -> Vec<CycNum> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// The scalar `c` when `self = c·I`.
    pub fn as_scalar(&self) -> Option<CycNum> {
        if !self.is_diagonal() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        (1..self.rows).all(|i| self.get(i, i) == c).then(|| c.clone())
    }

    pub fn is_scalar(&self) -> bool {
        self.as_scalar().is_some()
    }

    pub fn commutes_with(&self, other: &Mat) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                let a = self.get(i / other.rows, j / other.cols);
                let b = other.get(i % other.rows, j % other.cols);
                data.push(a * b);
            }
        }
        Self::from_flat(r, c, data)
    }

    /// Reduced row-echelon form with leading ones, and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = m.get(r, j) * &inv;
                    m.data[r * m.cols + j] = v;
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let t = &f * m.get(r, j);
                    if !t.is_zero() {
                        let v = m.get(i, j) - &t;
                        m.data[i * m.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space `{v : self · v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![CycNum::zero(self.order); n];
            v[free] = CycNum::one(self.order);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        Subspace::span(n, &basis)
    }

    pub fn det(&self) -> CycNum {
        assert!(self.is_square(), "determinant of a non-square matrix");
        crate::exactmath::bform::determinant(self.to_rows()).embed_unchecked(self.order)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n).embed(self.order);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = CycNum::one(self.order);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(r.get(i, n + j).clone());
            }
        }
        Ok(Mat {
            rows: n,
            cols: n,
            order: self.order,
            data,
        })
    }

    /// Inverse transpose.
    pub fn contragredient(&self) -> Result<Mat> {
        Ok(self.inverse()?.transpose())
    }

    pub fn pow(&self, e: i64) -> Result<Mat> {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Mat::identity(self.rows).embed(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// One solution of `self · x = b`, if any.
    pub fn solve(&self, b: &[CycNum]) -> Option<Vec<CycNum>> {
        if b.len() != self.rows {
            return None;
        }
        let n = self.cols;
        let mut rows = self.to_rows();
        for (row, bi) in rows.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let aug = Mat::from_rows(rows).ok()?;
        let (r, pivots) = if self.rows == 0 {
            (aug, vec![])
        } else {
            aug.rref()
        };
        if pivots.contains(&n) {
            return None;
        }
        let mut x = vec![CycNum::zero(r.order); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, n).clone();
        }
        Some(x)
    }

    /// Flat entries, row-major, at the common order.
    pub(crate) fn entries(&self) -> &[CycNum] {
        &self.data
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("rows", &self.rows)?;
        map.serialize_entry("cols", &self.cols)?;
        map.serialize_entry("entries", &self.to_rows())?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        mat_from_json(&v).map_err(de::Error::custom)
    }
}

fn mat_from_json(v: &serde_json::Value) -> std::result::Result<Mat, String> {
    let obj = v.as_object().ok_or("matrix must be an object")?;
    let entries = obj
        .get("entries")
        .and_then(|e| e.as_array())
        .ok_or("`entries` must be an array of rows")?;
    let mut rows = Vec::with_capacity(entries.len());
    for (i, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| format!("entries[{i}] must be an array"))?;
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, x)| cycnum_from_json(x).map_err(|e| format!("entries[{i}][{j}]: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    let m = Mat::from_rows(rows).map_err(|e| e.to_string())?;
    for (key, actual) in [("rows", m.rows), ("cols", m.cols)] {
        if let Some(declared) = obj.get(key) {
            let d = declared.as_u64().ok_or_else(|| format!("`{key}` must be an integer"))?;
            if d as usize != actual && !(m.rows == 0 && key == "cols") {
                return Err(format!("`{key}` is {d} but entries have {actual}"));
            }
        }
    }
    Ok(m)
}

/// True when every entry of `v` is zero.
pub fn is_zero_vector(v: &[CycNum]) -> bool {
    v.iter().all(CycNum::is_zero)
}

/// Scale a nonzero vector so its first nonzero entry is 1.
pub fn normalize_point(v: &[CycNum]) -> Vec<CycNum> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.inverse().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
    }
}

/// Whether `u` and `v` span the same projective point.
pub fn same_point(u: &[CycNum], v: &[CycNum]) -> bool {
    u.len() == v.len() && normalize_point(u) == normalize_point(v)
}

pub(crate) fn dot(u: &[CycNum], v: &[CycNum]) -> CycNum {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(CycNum::zero(1), |acc, (a, b)| acc + a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::zeros(2, 2).kernel().dim(), 2);
        assert_eq!(Mat::identity(3).kernel().dim(), 0);
        let k = Mat::from_int_rows(&[vec![1, 1], vec![1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[CycNum::from_int(1), CycNum::from_int(-1)]));
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_rows(vec![
            vec![z(8, 1), CycNum::from_int(1)],
            vec![CycNum::from_int(0), z(4, 1)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det(), z(8, 3));
        assert_eq!(Mat::from_int_rows(&[vec![1, 2], vec![2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn kron_of_diagonals() {
        let a = Mat::diag(&[CycNum::from_int(2), CycNum::from_int(3)]);
        let b = Mat::diag(&[CycNum::from_int(5), CycNum::from_int(7)]);
        let k = a.kron(&b);
        assert_eq!(
            k.diagonal(),
            [10, 14, 15, 21].map(CycNum::from_int).to_vec()
        );
        assert!(k.is_diagonal());
    }

    #[test]
    fn solve_and_pow() {
        let m = Mat::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.pow(3).unwrap(), Mat::from_int_rows(&[vec![1, 3], vec![0, 1]]));
        assert_eq!(m.pow(-1).unwrap(), Mat::from_int_rows(&[vec![1, -1], vec![0, 1]]));
        let x = m.solve(&[CycNum::from_int(3), CycNum::from_int(1)]).unwrap();
        assert_eq!(x, vec![CycNum::from_int(2), CycNum::from_int(1)]);
        let s = Mat::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(s.solve(&[CycNum::from_int(1), CycNum::from_int(0)]).is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = Mat::from_rows(vec![vec![z(8, 3), CycNum::from_int(0)], vec![z(4, 1), CycNum::from_int(-2)]])
            .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: Mat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"rows":2,"cols":2,"entries":[[1,2],[3]]}"#;
        assert!(serde_json::from_str::<Mat>(bad).is_err());
    }
}
