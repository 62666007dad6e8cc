//! Lines on a quartic del Pezzo surface and the Weyl group `W(D5)`.
//!
//! The sixteen lines are identified with the odd-parity spin weights `(±1)^5`:
//! `E_i` has its single `−1` at position `i`, `L − E_i − E_j` has `+1` exactly at
//! `i, j`, and `2L − ΣE` is all `−1`. Signed permutations act on weights as matrices,
//! `e_j ↦ signs[j]·e_{perm[j]}`, and through the dictionary on `Pic`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{smith_normal_form, IntMatrix};
use crate::perm::Permutation;

/// `d·L − Σ m_i·E_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicClass {
    pub d: i64,
    pub m: [i64; 5],
}

impl PicClass {
    pub fn new(d: i64, m: [i64; 5]) -> Self {
        PicClass { d, m }
    }

    pub fn canonical() -> Self {
        PicClass::new(-3, [-1; 5])
    }

    pub fn exceptional(i: usize) -> Self {
        let mut m = [0; 5];
        m[i] = -1;
        PicClass::new(0, m)
    }

    pub fn dot(&self, o: &PicClass) -> i64 {
        self.d * o.d - self.m.iter().zip(&o.m).map(|(a, b)| a * b).sum::<i64>()
    }

    /// Coordinates in the basis `L, E_1, …, E_5`.
    pub fn basis_coords(&self) -> [i64; 6] {
        let mut c = [self.d, 0, 0, 0, 0, 0];
        for i in 0..5 {
            c[i + 1] = -self.m[i];
        }
        c
    }

    pub fn from_basis_coords(c: &[i64]) -> Self {
        PicClass::new(c[0], [-c[1], -c[2], -c[3], -c[4], -c[5]])
    }

    fn add(&self, o: &PicClass) -> PicClass {
        let mut m = self.m;
        for (a, b) in m.iter_mut().zip(&o.m) {
            *a += b;
        }
        PicClass::new(self.d + o.d, m)
    }
}

impl std::fmt::Display for PicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        match self.d {
            0 => {}
            1 => out.push('L'),
            -1 => out.push_str("-L"),
            d => out.push_str(&format!("{d}L")),
        }
        for (i, &m) in self.m.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let c = -m;
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                out.push_str(&format!("{sign}E{}", i + 1));
            } else {
                out.push_str(&format!("{sign}{mag}E{}", i + 1));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Serialize for PicClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = [self.d, self.m[0], self.m[1], self.m[2], self.m[3], self.m[4]];
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PicClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[i64; 6]>::deserialize(d)?;
        Ok(PicClass::new(v[0], [v[1], v[2], v[3], v[4], v[5]]))
    }
}

/// A spin weight `(±1)^5` with an odd number of `−1` entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVec(pub [i8; 5]);

impl WeightVec {
    pub fn hamming(&self, o: &WeightVec) -> usize {
        self.0.iter().zip(&o.0).filter(|(a, b)| a != b).count()
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|x| **x < 0).count()
    }
}

/// Five-dimensional signed permutation, `e_j ↦ signs[j]·e_{perm[j]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: [usize; 5],
    signs: [i8; 5],
}

impl SignedPerm {
    /// `perm` holds 0-based images.
    pub fn new(perm: [usize; 5], signs: [i8; 5]) -> Result<Self> {
        let mut seen = [false; 5];
        for &p in &perm {
            if p >= 5 || seen[p] {
                return Err(Error::schema("perm", "not a permutation of 1..=5"));
            }
            seen[p] = true;
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::schema("signs", "entries must be 1 or -1"));
        }
        Ok(SignedPerm { perm, signs })
    }

    pub fn identity() -> Self {
        SignedPerm {
            perm: [0, 1, 2, 3, 4],
            signs: [1; 5],
        }
    }

    pub fn diagonal(signs: [i8; 5]) -> Result<Self> {
        SignedPerm::new([0, 1, 2, 3, 4], signs)
    }

    /// From a 5×5 matrix with one `±1` in each row and column.
    pub fn from_matrix(rows: &[[i64; 5]; 5]) -> Result<Self> {
        let mut perm = [usize::MAX; 5];
        let mut signs = [0i8; 5];
        for j in 0..5 {
            let nz: Vec<usize> = (0..5).filter(|&i| rows[i][j] != 0).collect();
            if nz.len() != 1 || rows[nz[0]][j].abs() != 1 {
                return Err(Error::schema(format!("column {j}"), "not a signed permutation matrix"));
            }
            perm[j] = nz[0];
            signs[j] = rows[nz[0]][j] as i8;
        }
        SignedPerm::new(perm, signs)
    }

    pub fn perm(&self) -> [usize; 5] {
        self.perm
    }

    pub fn signs(&self) -> [i8; 5] {
        self.signs
    }

    pub fn to_matrix(&self) -> [[i64; 5]; 5] {
        let mut m = [[0; 5]; 5];
        for j in 0..5 {
            m[self.perm[j]][j] = self.signs[j] as i64;
        }
        m
    }

    /// Number of `−1` entries mod 2.
    pub fn parity(&self) -> u8 {
        (self.signs.iter().filter(|s| **s < 0).count() % 2) as u8
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut perm = [0; 5];
        let mut signs = [1; 5];
        for j in 0..5 {
            let k = other.perm[j];
            perm[j] = self.perm[k];
            signs[j] = other.signs[j] * self.signs[k];
        }
        SignedPerm { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut perm = [0; 5];
        let mut signs = [1; 5];
        for j in 0..5 {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        SignedPerm { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        *self == SignedPerm::identity()
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// Image in `S5`.
    pub fn underlying(&self) -> Permutation {
        Permutation::new(self.perm.to_vec()).expect("valid permutation")
    }

    pub fn apply_weight(&self, w: &WeightVec) -> WeightVec {
        let mut out = [0i8; 5];
        for j in 0..5 {
            out[self.perm[j]] = self.signs[j] * w.0[j];
        }
        WeightVec(out)
    }

    fn require_even(&self) -> Result<()> {
        if self.is_even() {
            Ok(())
        } else {
            Err(Error::OddParity)
        }
    }
}

impl std::fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = (0..5)
            .map(|j| {
                let s = if self.signs[j] < 0 { "-" } else { "" };
                format!("e{}→{s}e{}", j + 1, self.perm[j] + 1)
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignedPermRepr {
    perm: [usize; 5],
    signs: [i8; 5],
}

impl Serialize for SignedPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut perm = self.perm;
        for p in &mut perm {
            *p += 1;
        }
        SignedPermRepr {
            perm,
            signs: self.signs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedPerm {
    /// `{"perm": [images of 1..5], "signs": [±1, …]}`.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SignedPermRepr::deserialize(d)?;
        if r.perm.iter().any(|p| *p == 0) {
            return Err(D::Error::custom("perm entries are 1-based"));
        }
        let mut perm = r.perm;
        for p in &mut perm {
            *p -= 1;
        }
        SignedPerm::new(perm, r.signs).map_err(D::Error::custom)
    }
}

/// Even representative of a sign change `diag(s)`, up to global sign.
pub fn canonical_even(signs: [i8; 5]) -> Result<SignedPerm> {
    let d = SignedPerm::diagonal(signs)?;
    if d.is_even() {
        Ok(d)
    } else {
        SignedPerm::diagonal(signs.map(|s| -s))
    }
}

/// All 1920 elements, ordered by permutation and then sign pattern.
pub fn wd5() -> &'static [SignedPerm] {
    static TABLE: OnceLock<Vec<SignedPerm>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(1920);
        for p in Permutation::all(5) {
            let perm: [usize; 5] = p.images().try_into().expect("five entries");
            for bits in 0u32..32 {
                if bits.count_ones() % 2 != 0 {
                    continue;
                }
                let signs: [i8; 5] = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
                out.push(SignedPerm { perm, signs });
            }
        }
        out
    })
}

/// The 16 lines with their weights: `E_1, …, E_5`, then `L − E_i − E_j`, then `2L − ΣE`.
pub fn lines16() -> &'static [(PicClass, WeightVec)] {
    static LINES: OnceLock<Vec<(PicClass, WeightVec)>> = OnceLock::new();
    LINES.get_or_init(|| {
        let mut out = Vec::with_capacity(16);
        for i in 0..5 {
            let mut w = [1i8; 5];
            w[i] = -1;
            out.push((PicClass::exceptional(i), WeightVec(w)));
        }
        for i in 0..5 {
            for j in i + 1..5 {
                let mut m = [0; 5];
                m[i] = 1;
                m[j] = 1;
                let mut w = [-1i8; 5];
                w[i] = 1;
                w[j] = 1;
                out.push((PicClass::new(1, m), WeightVec(w)));
            }
        }
        out.push((PicClass::new(2, [1; 5]), WeightVec([-1; 5])));
        out
    })
}

fn line_index(w: &WeightVec) -> usize {
    lines16().iter().position(|(_, v)| v == w).expect("odd weight")
}

/// The induced permutation of the 16 lines, in `lines16` order.
pub fn line_permutation(s: &SignedPerm) -> Result<Permutation> {
    s.require_even()?;
    let images = lines16().iter().map(|(_, w)| line_index(&s.apply_weight(w))).collect();
    Ok(Permutation::new(images).expect("bijection on lines"))
}

/// Image of a line class.
pub fn act_on_line(s: &SignedPerm, l: &PicClass) -> Result<PicClass> {
    s.require_even()?;
    let (_, w) = lines16()
        .iter()
        .find(|(c, _)| c == l)
        .ok_or_else(|| Error::schema("line", format!("{l} is not one of the 16 lines")))?;
    Ok(lines16()[line_index(&s.apply_weight(w))].0)
}

/// Integer matrix on `Pic` in the basis `L, E_1, …, E_5` (columns are images).
pub fn pic_action(s: &SignedPerm) -> Result<IntMatrix> {
    let img = |l: &PicClass| act_on_line(s, l);
    let e: Vec<PicClass> = (0..5).map(|i| img(&PicClass::exceptional(i))).collect::<Result<_>>()?;
    // L = E_1 + E_2 + (L − E_1 − E_2)
    let l = e[0].add(&e[1]).add(&img(&PicClass::new(1, [1, 1, 0, 0, 0]))?);
    let mut a = IntMatrix::zeros(6, 6);
    for (col, c) in std::iter::once(&l).chain(e.iter()).enumerate() {
        for (row, v) in c.basis_coords().iter().enumerate() {
            a.set(row, col, BigInt::from(*v));
        }
    }
    for (c, _) in lines16() {
        let got = PicClass::from_basis_coords(&to_i64(&a.apply(&c.basis_coords())));
        if got != img(c)? {
            return Err(Error::Unsupported(format!("no linear action on Pic matches {s}")));
        }
    }
    Ok(a)
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("small entries")).collect()
}

/// Orbits of the generated subgroup, each listed in the order reached from its first line.
pub fn orbits(elements: &[SignedPerm]) -> Result<Vec<Vec<PicClass>>> {
    let perms: Vec<Permutation> = elements.iter().map(line_permutation).collect::<Result<_>>()?;
    let mut seen = [false; 16];
    let mut out = Vec::new();
    for start in 0..16 {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for p in &perms {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        out.push(orbit.into_iter().map(|i| lines16()[i].0).collect());
    }
    Ok(out)
}

pub fn invariant_lines(s: &SignedPerm) -> Result<Vec<PicClass>> {
    let p = line_permutation(s)?;
    Ok(p.fixed_points().into_iter().map(|i| lines16()[i].0).collect())
}

/// First `g` in table order with `g·a·g⁻¹ = b`.
pub fn conjugate_in_wd5(a: &SignedPerm, b: &SignedPerm) -> Result<Option<SignedPerm>> {
    a.require_even()?;
    b.require_even()?;
    Ok(wd5()
        .iter()
        .find(|g| g.compose(a).compose(&g.inverse()) == *b)
        .copied())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Order4Class {
    /// Cycle type of the image in `S5`, descending.
    pub cycle_type: Vec<usize>,
    pub count: usize,
    pub fixing_a_line: usize,
    pub all_fix_a_line: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Order4Scan {
    pub group_order: usize,
    pub classes: Vec<Order4Class>,
}

/// Order-4 elements of `W(D5)`, grouped by the cycle type of their image in `S5`.
pub fn order4_scan() -> Order4Scan {
    let mut by_type: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for s in wd5() {
        if s.order() != 4 {
            continue;
        }
        let fixes = !invariant_lines(s).expect("even").is_empty();
        let e = by_type.entry(s.underlying().cycle_type()).or_default();
        e.0 += 1;
        if fixes {
            e.1 += 1;
        }
    }
    Order4Scan {
        group_order: wd5().len(),
        classes: by_type
            .into_iter()
            .rev()
            .map(|(cycle_type, (count, fixing))| Order4Class {
                cycle_type,
                count,
                fixing_a_line: fixing,
                all_fix_a_line: fixing == count,
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Report {
    /// Invariant factors above 1.
    #[serde(serialize_with = "factors_as_strings")]
    pub factors: Vec<BigInt>,
    /// Rank of a free part, reported rather than dropped.
    pub free_rank: usize,
}

fn factors_as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl H1Report {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.factors.iter().fold(BigInt::one(), |a, b| a * b))
    }
}

/// `H¹(⟨A⟩, Z^r) = ker(1 + A + ⋯ + A^{n−1}) / im(A − 1)` for `A^n = 1`.
pub fn lattice_h1(a: &IntMatrix, n: u32) -> Result<H1Report> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let r = a.rows();
    let id = IntMatrix::identity(r);
    if n == 0 || a.pow(n) != id {
        return Err(Error::NotFiniteOrder);
    }
    let mut norm = IntMatrix::zeros(r, r);
    let mut power = id.clone();
    for _ in 0..n {
        norm = norm.add(&power);
        power = power.mul(a);
    }
    let snf = smith_normal_form(&norm);
    let rank = snf.rank();
    if rank == r {
        return Ok(H1Report {
            factors: Vec::new(),
            free_rank: 0,
        });
    }
    // coordinates of im(A − 1) in the kernel basis v[:, rank..]
    let coords = snf.v_inv.mul(&a.sub(&id)).row_slice(rank..r);
    let q = smith_normal_form(&coords);
    let factors = q
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    Ok(H1Report {
        factors,
        free_rank: (r - rank) - q.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The first displayed order-4 element: `e2→e3, e3→e4, e4→−e5, e5→−e2`.
    pub(crate) fn first_order_four() -> SignedPerm {
        SignedPerm::new([0, 2, 3, 4, 1], [1, 1, 1, -1, -1]).unwrap()
    }

    pub(crate) fn gamma1() -> SignedPerm {
        SignedPerm::from_matrix(&[
            [1, 0, 0, 0, 0],
            [0, 0, 0, -1, 0],
            [0, 0, 0, 0, -1],
            [0, 1, 0, 0, 0],
            [0, 0, 1, 0, 0],
        ])
        .unwrap()
    }

    fn pc(s: &str) -> PicClass {
        lines16()
            .iter()
            .map(|(c, _)| *c)
            .find(|c| c.to_string() == s)
            .unwrap_or_else(|| panic!("{s}"))
    }

    fn image_basis(a: &IntMatrix, col: usize) -> PicClass {
        let v: Vec<i64> = (0..6).map(|i| i64::try_from(a.get(i, col)).unwrap()).collect();
        PicClass::from_basis_coords(&v)
    }

    #[test]
    fn line_classes() {
        assert_eq!(lines16().len(), 16);
        let k = PicClass::canonical();
        for (l, w) in lines16() {
            assert_eq!(l.dot(l), -1);
            assert_eq!(l.dot(&k), -1);
            assert_eq!(w.minus_count() % 2, 1);
        }
        assert_eq!(PicClass::new(2, [1; 5]).to_string(), "2L-E1-E2-E3-E4-E5");
    }

    #[test]
    fn first_display_matches() {
        let a = pic_action(&first_order_four()).unwrap();
        let expect = ["2L-E1-E3-E4", "L-E3-E4", "L-E1-E4", "L-E1-E3", "E2", "E5"];
        for (col, e) in expect.iter().enumerate() {
            assert_eq!(image_basis(&a, col).to_string(), *e);
        }
        // linear consequence of the table: 2L − ΣE ↦ L − E2 − E5
        let inv = invariant_lines(&first_order_four()).unwrap();
        assert_eq!(inv, vec![pc("E5"), pc("L-E1-E5")]);
        let anti = PicClass::new(2, [1; 5]);
        assert_eq!(act_on_line(&first_order_four(), &anti).unwrap(), pc("L-E2-E5"));
    }

    #[test]
    fn gamma1_orbits() {
        let g = gamma1();
        assert_eq!(g.order(), 4);
        assert_eq!(g.underlying().cycle_type(), vec![2, 2, 1]);
        assert!(invariant_lines(&g).unwrap().is_empty());
        let a = pic_action(&g).unwrap();
        let expect = ["2L-E1-E4-E5", "L-E4-E5", "L-E1-E5", "L-E1-E4", "E3", "E2"];
        for (col, e) in expect.iter().enumerate() {
            assert_eq!(image_basis(&a, col).to_string(), *e);
        }
        let shown: Vec<Vec<&str>> = vec![
            vec!["E1", "L-E4-E5", "2L-E1-E2-E3-E4-E5", "L-E2-E3"],
            vec!["E2", "L-E1-E5", "L-E1-E2", "E5"],
            vec!["E3", "L-E1-E4", "L-E1-E3", "E4"],
            vec!["L-E2-E4", "L-E3-E4", "L-E3-E5", "L-E2-E5"],
        ];
        let orbits = orbits(&[g]).unwrap();
        let got: Vec<Vec<String>> = orbits.iter().map(|o| o.iter().map(ToString::to_string).collect()).collect();
        assert_eq!(got, shown);
    }

    #[test]
    fn sign_patterns() {
        let s = canonical_even([1, 1, 1, 1, -1]).unwrap();
        assert_eq!(s.signs(), [-1, -1, -1, -1, 1]);
        assert!(invariant_lines(&s).unwrap().is_empty());
        for (l, _) in lines16() {
            assert_eq!(l.dot(&act_on_line(&s, l).unwrap()), 1);
        }
        let t = canonical_even([1, 1, 1, -1, -1]).unwrap();
        let o = orbits(&[t]).unwrap();
        assert_eq!(o.len(), 8);
        assert!(o.iter().all(|x| x.len() == 2 && x[0].dot(&x[1]) == 0));
        assert_eq!(pic_action(&SignedPerm::diagonal([1, 1, 1, 1, -1]).unwrap()), Err(Error::OddParity));
    }

    #[test]
    fn conjugacy() {
        let a = first_order_four();
        let b = SignedPerm::new([0, 2, 3, 4, 1], [1; 5]).unwrap();
        let c = SignedPerm::new([0, 2, 3, 4, 1], [1, -1, -1, -1, -1]).unwrap();
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let g = conjugate_in_wd5(&x, &y).unwrap().unwrap();
            assert_eq!(g.compose(&x).compose(&g.inverse()), y);
        }
        assert!(conjugate_in_wd5(&SignedPerm::identity(), &a).unwrap().is_none());
    }

    #[test]
    fn order_four_scan() {
        let scan = order4_scan();
        assert_eq!(scan.group_order, 1920);
        let four = scan.classes.iter().find(|c| c.cycle_type == vec![4, 1]).unwrap();
        assert!(four.all_fix_a_line);
        let two = scan.classes.iter().find(|c| c.cycle_type == vec![2, 2, 1]).unwrap();
        assert!(!two.all_fix_a_line);
    }

    #[test]
    fn h1_examples() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(lattice_h1(&swap, 2).unwrap().is_trivial());
        let neg = IntMatrix::from_rows(&[vec![-1]]);
        assert_eq!(lattice_h1(&neg, 2).unwrap().factors, vec![BigInt::from(2)]);
        assert_eq!(lattice_h1(&neg, 3), Err(Error::NotFiniteOrder));
        let s = pic_action(&canonical_even([1, 1, 1, 1, -1]).unwrap()).unwrap();
        let h = lattice_h1(&s, 2).unwrap();
        assert!(h.factors.contains(&BigInt::from(2)));
        let t = pic_action(&canonical_even([1, 1, 1, -1, -1]).unwrap()).unwrap();
        assert!(lattice_h1(&t, 2).unwrap().is_trivial());
    }
}
