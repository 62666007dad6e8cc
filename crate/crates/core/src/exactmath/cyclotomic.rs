//! Elements of cyclotomic fields Q(ζ_N) in the power basis modulo Φ_N.
//!
//! An element of order `N` is stored as `φ(N)` rational coefficients of
//! `1, ζ, …, ζ^{φ(N)-1}`. Operations between elements of different orders
//! embed both operands into `Q(ζ_lcm)` first. Equality is value equality, so
//! `ζ_4 == ζ_8^2` even though the representations differ.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Reduction data for one cyclotomic field.
pub(crate) struct CycField {
    pub(crate) phi: usize,
    /// Coefficients of Φ_N, lowest degree first, monic.
    pub(crate) cyclotomic: Vec<i64>,
    /// `powers[k]` is ζ^k reduced to the power basis, for `0 <= k < N`.
    pub(crate) powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly_cached(d));
        }
    }
    p
}

fn cyclotomic_poly_cached(n: u32) -> Vec<i64> {
    field(n).cyclotomic.clone()
}

fn build_field(n: u32) -> CycField {
    let cyclotomic = if n == 1 { vec![-1, 1] } else { cyclotomic_poly(n) };
    let phi = cyclotomic.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for i in 0..phi {
                next[i] -= top * cyclotomic[i];
            }
        }
        cur = next;
    }
    CycField {
        phi,
        cyclotomic,
        powers,
    }
}

pub(crate) fn field(n: u32) -> Arc<CycField> {
    static REGISTRY: OnceLock<RwLock<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = reg.read().expect("field registry poisoned").get(&n) {
        return Arc::clone(f);
    }
    let built = Arc::new(build_field(n));
    let mut w = reg.write().expect("field registry poisoned");
    Arc::clone(w.entry(n).or_insert(built))
}

/// Euler's totient, via the degree of Φ_N.
pub fn phi(n: u32) -> usize {
    field(n).phi
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An element of Q(ζ_N).
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CycNum {
            order,
            coeffs: vec![Rational::zero(); phi(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(Rational::one(), order)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n), 1)
    }

    pub fn from_rational(q: Rational, order: u32) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    /// ζ_N^k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let f = field(order);
        let idx = k.rem_euclid(order as i64) as usize;
        CycNum {
            order,
            coeffs: f.powers[idx].iter().map(|&c| rat_int(c)).collect(),
        }
    }

    /// Builds an element from its power-basis coefficients; the length must be φ(N).
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::schema("order", "cyclotomic order must be positive"));
        }
        let p = phi(order);
        if coeffs.len() != p {
            return Err(Error::schema(
                "coeffs",
                format!("expected {p} coefficients for order {order}, found {}", coeffs.len()),
            ));
        }
        Ok(CycNum { order, coeffs })
    }

    /// Σ c_k ζ_N^k for an arbitrary-length exponent list.
    pub fn from_exponent_coeffs(order: u32, coeffs: &[Rational]) -> Self {
        let f = field(order);
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[k % order as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * rat_int(r);
                }
            }
        }
        CycNum { order, coeffs: out }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_M); requires N | M.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::IncompatibleOrder {
                from: self.order,
                to: m,
            });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let f = field(m);
        let mut out = vec![Rational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[(i * step) % m as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * rat_int(r);
                }
            }
        }
        Ok(CycNum {
            order: m,
            coeffs: out,
        })
    }

    /// Embedding into a multiple of the current order; panics otherwise.
    pub(crate) fn embed_unchecked(&self, m: u32) -> Self {
        self.embed(m).expect("embedding order must be a multiple")
    }

    fn reconcile<'a>(
        a: &'a CycNum,
        b: &'a CycNum,
    ) -> (std::borrow::Cow<'a, CycNum>, std::borrow::Cow<'a, CycNum>) {
        use std::borrow::Cow;
        if a.order == b.order {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = lcm(a.order, b.order);
            (Cow::Owned(a.embed_unchecked(m)), Cow::Owned(b.embed_unchecked(m)))
        }
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let n = self.order;
        let f = field(n);
        let p = f.phi;
        let mut prod = vec![Rational::zero(); 2 * p - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut out: Vec<Rational> = prod[..p].to_vec();
        for (k, c) in prod.iter().enumerate().skip(p) {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[k % n as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * rat_int(r);
                }
            }
        }
        CycNum {
            order: n,
            coeffs: out,
        }
    }

    pub fn scale(&self, q: &Rational) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, by solving the multiplication-by-`self` system over Q.
    pub fn inverse(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum::from_rational(q.recip(), self.order));
        }
        let n = self.order;
        let p = phi(n);
        // column j = self * ζ^j
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); p + 1]; p];
        for j in 0..p {
            let col = self.mul_same(&CycNum::root_of_unity(n, j as i64));
            for i in 0..p {
                m[i][j] = col.coeffs[i].clone();
            }
        }
        m[0][p] = Rational::one();
        let sol = solve_rational_square(m).ok_or(Error::DivisionByZero)?;
        Ok(CycNum {
            order: n,
            coeffs: sol,
        })
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Value under the embedding ζ_N ↦ exp(2πik/N).
    pub fn to_complex(&self, k: u32) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (k as f64) * (i as f64) / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Returns `k` with `self == ζ_m^k`, if any.
    pub fn log_root_of_unity(&self, m: u32) -> Option<u32> {
        (0..m).find(|&k| *self == CycNum::root_of_unity(m, k as i64))
    }

    /// A square root inside Q(ζ_N) for the element's own order `N`.
    pub fn sqrt(&self) -> Option<CycNum> {
        self.sqrt_in(self.order)
    }

    /// A square root inside Q(ζ_M), where the element's order divides `M`.
    ///
    /// Candidates are located through the complex embeddings and then
    /// verified exactly, so a returned value always squares to `self`.
    pub fn sqrt_in(&self, m: u32) -> Option<CycNum> {
        let a = self.embed(m).ok()?;
        if a.is_zero() {
            return Some(a);
        }
        if let Some(q) = a.as_rational() {
            if let Some(r) = rational_sqrt(q) {
                return Some(CycNum::from_rational(r, m));
            }
        }
        if m <= 2 {
            return None;
        }
        let p = phi(m);
        let units: Vec<u32> = (1..m).filter(|k| k.gcd(&m) == 1).collect();
        let half: Vec<u32> = units.iter().copied().filter(|&k| 2 * k < m).collect();
        let roots: Vec<(f64, f64)> = half
            .iter()
            .map(|&k| {
                let (re, im) = a.to_complex(k);
                complex_sqrt(re, im)
            })
            .collect();
        let combos = 1u64 << (half.len() - 1);
        for mask in 0..combos {
            let mut values = Vec::with_capacity(p);
            let mut rows = Vec::with_capacity(p);
            for (idx, &k) in half.iter().enumerate() {
                let sign = if idx > 0 && (mask >> (idx - 1)) & 1 == 1 { -1.0 } else { 1.0 };
                let (re, im) = roots[idx];
                values.push((sign * re, sign * im));
                rows.push(k);
                values.push((sign * re, -sign * im));
                rows.push(m - k);
            }
            let Some(coeffs) = solve_vandermonde(m, p, &rows, &values) else {
                continue;
            };
            let Some(rcoeffs) = coeffs
                .iter()
                .map(|&c| approximate_rational(c, 1 << 24))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let cand = CycNum {
                order: m,
                coeffs: rcoeffs,
            };
            if &cand * &cand == a {
                return Some(cand);
            }
        }
        None
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn complex_sqrt(re: f64, im: f64) -> (f64, f64) {
    let r = (re * re + im * im).sqrt();
    let a = ((r + re) / 2.0).max(0.0).sqrt();
    let b = ((r - re) / 2.0).max(0.0).sqrt();
    (a, if im < 0.0 { -b } else { b })
}

/// Solves Σ_i c_i ω^{k i} = v_k for real c, with ω = exp(2πi/m).
fn solve_vandermonde(m: u32, p: usize, rows: &[u32], values: &[(f64, f64)]) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<(f64, f64)>> = rows
        .iter()
        .zip(values)
        .map(|(&k, &v)| {
            let mut row: Vec<(f64, f64)> = (0..p)
                .map(|i| {
                    let ang = 2.0 * std::f64::consts::PI * (k as f64) * (i as f64) / (m as f64);
                    (ang.cos(), ang.sin())
                })
                .collect();
            row.push(v);
            row
        })
        .collect();
    let cmul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let cdiv = |x: (f64, f64), y: (f64, f64)| {
        let d = y.0 * y.0 + y.1 * y.1;
        ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d)
    };
    for col in 0..p {
        let piv = (col..p).max_by(|&i, &j| {
            let ni = a[i][col].0.hypot(a[i][col].1);
            let nj = a[j][col].0.hypot(a[j][col].1);
            ni.partial_cmp(&nj).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[piv][col].0.hypot(a[piv][col].1) < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        let pv = a[col][col];
        for j in col..=p {
            a[col][j] = cdiv(a[col][j], pv);
        }
        for i in 0..p {
            if i != col {
                let f = a[i][col];
                if f.0 == 0.0 && f.1 == 0.0 {
                    continue;
                }
                for j in col..=p {
                    let t = cmul(f, a[col][j]);
                    a[i][j].0 -= t.0;
                    a[i][j].1 -= t.1;
                }
            }
        }
    }
    let out: Vec<f64> = (0..p).map(|i| a[i][p].0).collect();
    if (0..p).any(|i| a[i][p].1.abs() > 1e-6) {
        return None;
    }
    Some(out)
}

/// Best rational approximation with bounded denominator, by continued fractions.
fn approximate_rational(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-12 || ((h1 as f64) / (k1 as f64) - x).abs() < 1e-11 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Gauss-Jordan on an augmented square system over Q. Returns None if singular.
pub(crate) fn solve_rational_square(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycNum::reconcile(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::reconcile(self, rhs);
        CycNum {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::reconcile(self, rhs);
        CycNum {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero(lcm(self.order, rhs.order));
        }
        let (a, b) = CycNum::reconcile(self, rhs);
        a.mul_same(&b)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => c.to_string(),
                _ => {
                    let z = if i == 1 {
                        format!("z{}", self.order)
                    } else {
                        format!("z{}^{}", self.order, i)
                    };
                    if c.is_one() {
                        z
                    } else if *c == -Rational::one() {
                        format!("-{z}")
                    } else {
                        format!("{c}*{z}")
                    }
                }
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(n.to_string()),
    }
}

fn bigint_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("integer expected, found {n}")),
        serde_json::Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| format!("integer string expected, found {s:?}")),
        other => Err(format!("integer expected, found {other}")),
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| serde_json::Value::Array(vec![bigint_to_json(c.numer()), bigint_to_json(c.denom())]))
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("order", &self.order)?;
        map.serialize_entry("coeffs", &pairs)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for CycNum {
    /// Accepts the canonical `{"order": N, "coeffs": [[num, den], ...]}` object,
    /// or a bare integer as shorthand for a rational integer.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        cycnum_from_json(&v).map_err(de::Error::custom)
    }
}

pub(crate) fn cycnum_from_json(v: &serde_json::Value) -> std::result::Result<CycNum, String> {
    match v {
        serde_json::Value::Number(_) => Ok(CycNum::from_rational(
            Rational::from_integer(bigint_from_json(v)?),
            1,
        )),
        serde_json::Value::Object(obj) => {
            let order = obj
                .get("order")
                .and_then(|o| o.as_u64())
                .filter(|&o| o > 0 && o <= u32::MAX as u64)
                .ok_or("`order` must be a positive integer")? as u32;
            let coeffs = obj
                .get("coeffs")
                .and_then(|c| c.as_array())
                .ok_or("`coeffs` must be an array")?;
            let p = phi(order);
            if coeffs.len() != p {
                return Err(format!(
                    "order {order} needs {p} coefficient pairs, found {}",
                    coeffs.len()
                ));
            }
            let mut out = Vec::with_capacity(p);
            for pair in coeffs {
                let pair = pair
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or("each coefficient must be a [num, den] pair")?;
                let num = bigint_from_json(&pair[0])?;
                let den = bigint_from_json(&pair[1])?;
                if den.is_zero() {
                    return Err("zero denominator".into());
                }
                out.push(Rational::new(num, den));
            }
            Ok(CycNum { order, coeffs: out })
        }
        other => Err(format!("cyclotomic number expected, found {other}")),
    }
}
