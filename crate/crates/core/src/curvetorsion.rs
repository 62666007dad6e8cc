//! Two-torsion of a hyperelliptic Jacobian as subsets of branch labels.
//!
//! A class is a subset `S ⊆ {1, …, 2g+2}` taken up to complement. Even classes are
//! `J(C)[2]` under symmetric difference; odd classes are the two-torsion translates in
//! `Pic¹`, with `[{i}] ↦ b_i` and `[{i,j,k}] ↦ b_i + b_j + b_k − g¹₂`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

const MAX_GENUS: usize = 30;

/// A class of subsets modulo complement, stored canonically.
///
/// The representative is the smaller side; on a tie, the side containing label 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionClass {
    g: usize,
    mask: u64,
}

impl TorsionClass {
    /// From 1-based labels. Duplicate labels cancel.
    pub fn new(g: usize, labels: &[usize]) -> Result<Self> {
        check_genus(g)?;
        let n = 2 * g + 2;
        let mut mask = 0u64;
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::schema("subset", format!("label {l} outside 1..={n}")));
            }
            mask ^= 1 << (l - 1);
        }
        Ok(Self::from_mask(g, mask))
    }

    pub fn identity(g: usize) -> Self {
        TorsionClass { g, mask: 0 }
    }

    fn from_mask(g: usize, mask: u64) -> Self {
        let n = 2 * g + 2;
        let full = (1u64 << n) - 1;
        let comp = full ^ mask;
        let (a, b) = (mask.count_ones(), comp.count_ones());
        let mask = if a < b || (a == b && mask & 1 == 1) { mask } else { comp };
        TorsionClass { g, mask }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Canonical representative, sorted 1-based labels.
    pub fn subset(&self) -> Vec<usize> {
        (0..2 * self.g + 2).filter(|i| self.mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..2 * self.g + 2).filter(|i| self.mask >> i & 1 == 0).map(|i| i + 1).collect()
    }

    /// `|S| mod 2`, the same for both sides.
    pub fn parity(&self) -> u8 {
        (self.mask.count_ones() % 2) as u8
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }
}

impl std::fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.subset().iter().map(ToString::to_string).collect();
        write!(f, "[{{{}}}]", s.join(","))
    }
}

impl Serialize for TorsionClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.subset().serialize(s)
    }
}

fn as_str<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn as_strs<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::schema("g", format!("genus must lie in 1..={MAX_GENUS}")));
    }
    Ok(())
}

/// Symmetric difference.
pub fn class_add(a: &TorsionClass, b: &TorsionClass) -> Result<TorsionClass> {
    if a.g != b.g {
        return Err(Error::GenusMismatch(a.g, b.g));
    }
    Ok(TorsionClass::from_mask(a.g, a.mask ^ b.mask))
}

/// All `2^{2g}` classes of the given parity, sorted by size and then labels.
pub fn torsion_classes(g: usize, parity: u8) -> Result<Vec<TorsionClass>> {
    check_genus(g)?;
    let n = 2 * g + 2;
    if g > 10 {
        return Err(Error::Unsupported(format!("enumerating 2^{} classes", 2 * g)));
    }
    // each class has exactly one representative avoiding label n
    let mut out: Vec<TorsionClass> = (0..1u64 << (n - 1))
        .filter(|m| (m.count_ones() % 2) as u8 == parity % 2)
        .map(|m| TorsionClass::from_mask(g, m))
        .collect();
    out.sort_by_key(|c| (c.mask.count_ones(), c.subset()));
    Ok(out)
}

fn check_perm(g: usize, p: &Permutation) -> Result<()> {
    if p.len() != 2 * g + 2 {
        return Err(Error::GenusMismatch(g, p.len().saturating_sub(2) / 2));
    }
    Ok(())
}

/// Relabel by a permutation of the branch points.
pub fn act(p: &Permutation, c: &TorsionClass) -> Result<TorsionClass> {
    check_perm(c.g, p)?;
    let mut m = 0u64;
    for i in 0..2 * c.g + 2 {
        if c.mask >> i & 1 == 1 {
            m |= 1 << p.apply(i);
        }
    }
    Ok(TorsionClass::from_mask(c.g, m))
}

/// Classes of the given parity fixed by every permutation.
pub fn fixed_classes(g: usize, perms: &[Permutation], parity: u8) -> Result<Vec<TorsionClass>> {
    for p in perms {
        check_perm(g, p)?;
    }
    let mut out = Vec::new();
    for c in torsion_classes(g, parity)? {
        let mut fixed = true;
        for p in perms {
            if act(p, &c)? != c {
                fixed = false;
                break;
            }
        }
        if fixed {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientGroup {
    pub g: usize,
    pub order: usize,
    pub exponent: u32,
    /// `[{1}], …, [{2g+1}]`.
    pub generators: Vec<TorsionClass>,
    pub generators_span: bool,
    /// The sum of all `2g+2` singletons is the identity.
    pub relation_holds: bool,
}

/// The group of all classes, both parities, under symmetric difference.
pub fn quotient_group_structure(g: usize) -> Result<QuotientGroup> {
    let mut all = torsion_classes(g, 0)?;
    all.extend(torsion_classes(g, 1)?);
    let id = TorsionClass::identity(g);
    let mut exponent = 1;
    for a in &all {
        if !a.is_identity() {
            exponent = 2;
        }
        if class_add(a, a)? != id {
            return Err(Error::Unsupported("class of order above 2".into()));
        }
    }
    let n = 2 * g + 2;
    let generators: Vec<TorsionClass> = (1..n)
        .map(|i| TorsionClass::new(g, &[i]))
        .collect::<Result<_>>()?;
    let mut span = vec![id];
    for s in &generators {
        let mut next = span.clone();
        for a in &span {
            let b = class_add(a, s)?;
            if !next.contains(&b) {
                next.push(b);
            }
        }
        span = next;
    }
    let mut total = id;
    for i in 1..=n {
        total = class_add(&total, &TorsionClass::new(g, &[i])?)?;
    }
    Ok(QuotientGroup {
        g,
        order: all.len(),
        exponent,
        generators_span: span.len() == all.len(),
        generators,
        relation_holds: total.is_identity(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCount {
    pub g: usize,
    /// `4^g`.
    #[serde(serialize_with = "as_str")]
    pub lhs: BigInt,
    /// `C(2g+2, g)`.
    #[serde(serialize_with = "as_str")]
    pub main: BigInt,
    /// The binomials in the parity-dependent tail.
    #[serde(serialize_with = "as_strs")]
    pub residual: Vec<BigInt>,
    pub holds: bool,
}

impl SectionCount {
    pub fn rhs(&self) -> BigInt {
        self.residual.iter().fold(self.main.clone(), |acc, r| acc + r)
    }
}

/// `4^g = C(2g+2, g) + Σ_{j<g/2} C(2g+2, 2j)` for even `g`, `… + Σ_{1≤j≤(g−1)/2} C(2g+2, 2j−1)` for odd `g`.
pub fn section_count_identity(g: usize) -> Result<SectionCount> {
    check_genus(g)?;
    let n = BigInt::from(2 * g + 2);
    let c = |k: usize| binomial(n.clone(), BigInt::from(k));
    let residual: Vec<BigInt> = if g % 2 == 0 {
        (0..g / 2).map(|j| c(2 * j)).collect()
    } else {
        (1..=(g - 1) / 2).map(|j| c(2 * j - 1)).collect()
    };
    let lhs = BigInt::from(4).pow(g as u32);
    let mut out = SectionCount {
        g,
        lhs,
        main: c(g),
        residual,
        holds: false,
    };
    out.holds = out.lhs == out.rhs();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcessIdentity {
    pub g: usize,
    /// Coefficient of `t^{g−2}` in `(1+3t)^g (1+2t)^{−2}`.
    #[serde(serialize_with = "as_str")]
    pub series: BigRational,
    /// `Σ_{j+k=g−2} C(g,k) 3^k (j+1) (−2)^j`.
    #[serde(serialize_with = "as_str")]
    pub bilinear: BigInt,
    /// `(3^g − 2g − 1)/4`.
    #[serde(serialize_with = "as_str")]
    pub closed_form: BigRational,
    pub series_matches: bool,
    pub bilinear_matches: bool,
}

fn series_coefficient(g: usize, k: usize) -> BigRational {
    // (1+3t)^g truncated, then divided twice by (1+2t)
    let mut s: Vec<BigRational> = (0..=k)
        .map(|i| {
            if i > g {
                BigRational::zero()
            } else {
                BigRational::from_integer(binomial(BigInt::from(g), BigInt::from(i)) * BigInt::from(3).pow(i as u32))
            }
        })
        .collect();
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..2 {
        for i in 1..=k {
            let prev = s[i - 1].clone();
            s[i] -= &two * prev;
        }
    }
    s[k].clone()
}

pub fn excess_identity(g: usize) -> Result<ExcessIdentity> {
    if g < 2 {
        return Err(Error::schema("g", "the excess identity needs g ≥ 2"));
    }
    check_genus(g)?;
    let d = g - 2;
    let series = series_coefficient(g, d);
    let mut bilinear = BigInt::zero();
    for j in 0..=d {
        let k = d - j;
        let term = binomial(BigInt::from(g), BigInt::from(k))
            * BigInt::from(3).pow(k as u32)
            * BigInt::from(j + 1)
            * BigInt::from(-2).pow(j as u32);
        bilinear += term;
    }
    let closed_form = BigRational::new(BigInt::from(3).pow(g as u32) - BigInt::from(2 * g + 1), BigInt::from(4));
    Ok(ExcessIdentity {
        g,
        series_matches: series == closed_form,
        bilinear_matches: BigRational::from_integer(bilinear.clone()) == closed_form
            && closed_form.denom().is_one(),
        series,
        bilinear,
        closed_form,
    })
}
