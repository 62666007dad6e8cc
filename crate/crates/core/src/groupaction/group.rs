use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{lcm, Rational};
use crate::linalg::Mat;

/// Word in generator labels with integer exponents, e.g. `sigma^2 tau`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<(String, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(label: &str) -> Self {
        Word(vec![(label.to_string(), 1)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Append `label^e`, merging with a trailing power of the same label.
    pub fn push(&mut self, label: &str, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == label {
                last.1 += e;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((label.to_string(), e));
    }

    pub fn then(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (l, e) in &other.0 {
            w.push(l, *e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|(l, e)| (l.clone(), -e)).collect())
    }

    /// Total exponent of `label`.
    pub fn exponent_sum(&self, label: &str) -> i64 {
        self.0.iter().filter(|(l, _)| l == label).map(|(_, e)| e).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(l, e)| if *e == 1 { l.clone() } else { format!("{l}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub matrix: Mat,
}

impl Generator {
    pub fn new(label: impl Into<String>, matrix: Mat) -> Self {
        Generator {
            label: label.into(),
            matrix,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub matrix: Mat,
    pub word: Word,
}

/// Hashable structural key of a matrix at a fixed common order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct MatKey(Vec<Rational>);

impl MatKey {
    pub(crate) fn new(m: &Mat, order: u32) -> Self {
        let m = m.embed(order);
        MatKey(
            m.entries()
                .iter()
                .flat_map(|x| x.coeffs().iter().cloned())
                .collect(),
        )
    }
}

/// Finite group of invertible matrices given by labelled generators.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    order: u32,
    generators: Vec<Generator>,
    named: Vec<(String, Mat)>,
    closure: Option<Vec<GroupElement>>,
}

impl MatrixGroup {
    pub fn new(dim: usize, generators: Vec<Generator>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.matrix.rows() != dim || g.matrix.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.matrix.rows().max(g.matrix.cols()),
                });
            }
            if g.matrix.det().is_zero() {
                return Err(Error::Singular);
            }
            if generators[..i].iter().any(|h| h.label == g.label) {
                return Err(Error::LabelMismatch(format!("duplicate label `{}`", g.label)));
            }
        }
        let order = generators.iter().fold(1, |o, g| lcm(o, g.matrix.order()));
        Ok(MatrixGroup {
            dim,
            order,
            generators,
            named: Vec::new(),
            closure: None,
        })
    }

    /// Register a named element, e.g. a central element used as a relation target.
    pub fn with_named(mut self, label: impl Into<String>, m: Mat) -> Result<Self> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        self.order = lcm(self.order, m.order());
        self.named.push((label.into(), m));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn labels(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn named(&self) -> &[(String, Mat)] {
        &self.named
    }

    pub fn generator(&self, label: &str) -> Option<&Mat> {
        self.generators
            .iter()
            .find(|g| g.label == label)
            .map(|g| &g.matrix)
    }

    /// A generator or a named element.
    pub fn lookup(&self, label: &str) -> Result<&Mat> {
        self.generator(label)
            .or_else(|| self.named.iter().find(|(l, _)| l == label).map(|(_, m)| m))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn eval_word(&self, w: &Word) -> Result<Mat> {
        let mut acc = Mat::identity(self.dim);
        for (l, e) in &w.0 {
            acc = acc.mul(&self.lookup(l)?.pow(*e)?);
        }
        Ok(acc)
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn noncommuting_pair(&self) -> Option<(String, String)> {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if !a.matrix.commutes_with(&b.matrix) {
                    return Some((a.label.clone(), b.label.clone()));
                }
            }
        }
        None
    }

    /// Enumerate all elements by breadth-first search, keeping one word each.
    pub fn compute_closure(&mut self, cap: usize) -> Result<&[GroupElement]> {
        if self.closure.is_none() {
            self.closure = Some(enumerate(self.dim, self.order, &self.generators, cap)?);
        }
        Ok(self.closure.as_deref().expect("just computed"))
    }

    pub fn closure(&self) -> Result<&[GroupElement]> {
        self.closure.as_deref().ok_or(Error::ClosureMissing)
    }

    pub fn group_order(&self) -> Result<usize> {
        Ok(self.closure()?.len())
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Result<Vec<GroupElement>> {
        let elems = self.closure()?;
        Ok(elems
            .iter()
            .filter(|e| self.generators.iter().all(|g| e.matrix.commutes_with(&g.matrix)))
            .cloned()
            .collect())
    }

    /// The group acting through `h ↦ h^{-T}`, with the same labels.
    pub fn contragredient(&self) -> Result<MatrixGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Ok(Generator::new(g.label.clone(), g.matrix.contragredient()?)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = MatrixGroup::new(self.dim, gens)?;
        for (l, m) in &self.named {
            out = out.with_named(l.clone(), m.contragredient()?)?;
        }
        Ok(out)
    }

    pub fn subgroup(&self, generators: Vec<Generator>) -> Result<MatrixGroup> {
        MatrixGroup::new(self.dim, generators)
    }
}

fn enumerate(dim: usize, order: u32, gens: &[Generator], cap: usize) -> Result<Vec<GroupElement>> {
    let mut seen: HashMap<MatKey, usize> = HashMap::new();
    let id = Mat::identity(dim).embed(order);
    let mut elems = vec![GroupElement {
        matrix: id.clone(),
        word: Word::identity(),
    }];
    seen.insert(MatKey::new(&id, order), 0);
    let mut queue = VecDeque::from([0usize]);
    let gens: Vec<(String, Mat)> = gens
        .iter()
        .map(|g| (g.label.clone(), g.matrix.embed(order)))
        .collect();
    while let Some(i) = queue.pop_front() {
        for (label, g) in &gens {
            let m = elems[i].matrix.mul(g);
            let key = MatKey::new(&m, order);
            if seen.contains_key(&key) {
                continue;
            }
            if elems.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            let mut word = elems[i].word.clone();
            word.push(label, 1);
            seen.insert(key, elems.len());
            queue.push_back(elems.len());
            elems.push(GroupElement { matrix: m, word });
        }
    }
    Ok(elems)
}

/// Generator-wise Kronecker product of two groups with the same labels.
pub fn tensor_rep(a: &MatrixGroup, b: &MatrixGroup) -> Result<MatrixGroup> {
    let mut la: Vec<&str> = a.labels();
    let mut lb: Vec<&str> = b.labels();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return Err(Error::LabelMismatch(format!("{la:?} vs {lb:?}")));
    }
    let gens = a
        .generators()
        .iter()
        .map(|g| {
            let h = b.generator(&g.label).expect("labels agree");
            Generator::new(g.label.clone(), g.matrix.kron(h))
        })
        .collect();
    let mut out = MatrixGroup::new(a.dim() * b.dim(), gens)?;
    for (l, m) in a.named() {
        if let Some((_, n)) = b.named().iter().find(|(k, _)| k == l) {
            out = out.with_named(l.clone(), m.kron(n))?;
        }
    }
    Ok(out)
}

/// Inverse transpose of a matrix.
pub fn contragredient(m: &Mat) -> Result<Mat> {
    m.contragredient()
}

/// A matrix modulo scalars, represented with its first nonzero entry equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveElement {
    matrix: Mat,
}

impl ProjectiveElement {
    pub fn new(m: &Mat) -> Result<Self> {
        let lead = m
            .entries()
            .iter()
            .find(|x| !x.is_zero())
            .ok_or(Error::Singular)?;
        let inv = lead.inverse()?;
        Ok(ProjectiveElement { matrix: m.scale(&inv) })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn mul(&self, other: &ProjectiveElement) -> ProjectiveElement {
        ProjectiveElement::new(&self.matrix.mul(&other.matrix)).expect("product of invertibles")
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// Elements of the image in PGL, with one word each.
pub fn projective_closure(group: &MatrixGroup, cap: usize) -> Result<Vec<(ProjectiveElement, Word)>> {
    let order = group.order;
    let gens: Vec<(String, ProjectiveElement)> = group
        .generators()
        .iter()
        .map(|g| Ok((g.label.clone(), ProjectiveElement::new(&g.matrix.embed(order))?)))
        .collect::<Result<_>>()?;
    let id = ProjectiveElement::new(&Mat::identity(group.dim()).embed(order))?;
    let key = |p: &ProjectiveElement| MatKey::new(p.matrix(), lcm(order, p.matrix().order()));
    let mut seen: HashMap<MatKey, ()> = HashMap::new();
    seen.insert(key(&id), ());
    let mut out = vec![(id, Word::identity())];
    let mut i = 0;
    while i < out.len() {
        for (label, g) in &gens {
            let p = out[i].0.mul(g);
            let k = key(&p);
            if seen.contains_key(&k) {
                continue;
            }
            if out.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            seen.insert(k, ());
            let mut w = out[i].1.clone();
            w.push(label, 1);
            out.push((p, w));
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::CycNum;

    fn zeta(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    fn d(xs: &[i64]) -> Mat {
        Mat::diag(&xs.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>())
    }

    fn sigma_v() -> Mat {
        Mat::diag(&[zeta(6, 1), zeta(6, 2)])
    }

    fn tau_v() -> Mat {
        Mat::from_int_rows(&[vec![0, -1], vec![-1, 0]])
    }

    #[test]
    fn small_closures() {
        let mut g = MatrixGroup::new(
            6,
            vec![
                Generator::new("a", d(&[1, 1, 1, 1, -1, -1])),
                Generator::new("b", d(&[1, 1, 1, -1, -1, 1])),
            ],
        )
        .unwrap();
        assert_eq!(g.compute_closure(100).unwrap().len(), 4);
        let mut triv = MatrixGroup::new(3, vec![Generator::new("e", Mat::identity(3))]).unwrap();
        assert_eq!(triv.compute_closure(10).unwrap().len(), 1);
        let mut v = MatrixGroup::new(
            2,
            vec![Generator::new("sigma", sigma_v()), Generator::new("tau", tau_v())],
        )
        .unwrap();
        assert_eq!(v.compute_closure(100).unwrap().len(), 24);
        assert_eq!(v.compute_closure(100).unwrap().len(), 24);
        let mut capped = v.clone();
        capped.closure = None;
        assert_eq!(capped.compute_closure(10).unwrap_err(), Error::CapExceeded { cap: 10 });
    }

    #[test]
    fn words_evaluate_to_their_elements() {
        let mut v = MatrixGroup::new(
            2,
            vec![Generator::new("sigma", sigma_v()), Generator::new("tau", tau_v())],
        )
        .unwrap();
        v.compute_closure(100).unwrap();
        for e in v.closure().unwrap() {
            assert_eq!(v.eval_word(&e.word).unwrap(), e.matrix);
        }
    }

    #[test]
    fn centers() {
        let mut v = MatrixGroup::new(
            2,
            vec![Generator::new("sigma", sigma_v()), Generator::new("tau", tau_v())],
        )
        .unwrap();
        assert_eq!(v.center(), Err(Error::ClosureMissing));
        v.compute_closure(100).unwrap();
        let c = v.center().unwrap();
        assert!(c.iter().any(|e| e.matrix == d(&[-1, -1])));
        // brute force over the closure
        let brute: Vec<&GroupElement> = v
            .closure()
            .unwrap()
            .iter()
            .filter(|e| v.closure().unwrap().iter().all(|f| e.matrix.commutes_with(&f.matrix)))
            .collect();
        assert_eq!(c.len(), brute.len());
    }

    #[test]
    fn tensor_and_labels() {
        let a = MatrixGroup::new(2, vec![Generator::new("s", d(&[2, 3]))]).unwrap();
        let b = MatrixGroup::new(2, vec![Generator::new("s", d(&[5, 7]))]).unwrap();
        let t = tensor_rep(&a, &b).unwrap();
        assert_eq!(t.generator("s").unwrap(), &d(&[10, 14, 15, 21]));
        let c = MatrixGroup::new(2, vec![Generator::new("u", d(&[5, 7]))]).unwrap();
        assert!(matches!(tensor_rep(&a, &c), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn projective_image() {
        let g = MatrixGroup::new(2, vec![Generator::new("i", Mat::scalar(2, &zeta(4, 1)))]).unwrap();
        assert_eq!(projective_closure(&g, 10).unwrap().len(), 1);
        let p = ProjectiveElement::new(&Mat::scalar(2, &zeta(8, 3))).unwrap();
        assert!(p.is_identity());
    }

    #[test]
    fn word_algebra() {
        let mut w = Word::generator("a");
        w.push("a", 2);
        w.push("b", -1);
        assert_eq!(w.to_string(), "a^3 b^-1");
        assert!(w.then(&w.inverse()).is_empty());
        assert_eq!(w.exponent_sum("a"), 3);
    }
}
