use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::job::from_json;
use crate::delpezzo::{
    act_on_line, canonical_even, conjugate_in_wd5, invariant_lines, lattice_h1, lines16, orbits, order4_scan,
    pic_action, H1Report, Order4Scan, PicClass, SignedPerm,
};
use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSpec {
    pub label: String,
    /// Eigenvalue signs of a diagonal involution of the five-dimensional lattice.
    pub signs: [i8; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    pub label: String,
    pub element: SignedPerm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dp4Job {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub involutions: Vec<InvolutionSpec>,
    #[serde(default)]
    pub elements: Vec<ElementSpec>,
    /// Pairs of element labels to test for conjugacy.
    #[serde(default)]
    pub conjugacy: Vec<[String; 2]>,
    #[serde(default)]
    pub order4_scan: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub label: String,
    pub representative: SignedPerm,
    pub invariant_lines: Vec<PicClass>,
    pub orbits: Vec<Vec<PicClass>>,
    /// `ℓ·s(ℓ)` over the sixteen lines, in the fixed line order.
    pub intersections: Vec<i64>,
    pub h1: H1Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub label: String,
    pub element: SignedPerm,
    pub order: usize,
    pub cycle_type: Vec<usize>,
    /// Columns are the images of `L, E1, …, E5`.
    pub pic_action: Vec<Vec<i64>>,
    pub invariant_lines: Vec<PicClass>,
    pub orbits: Vec<Vec<PicClass>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyReport {
    pub pair: [String; 2],
    /// `g` with `g·a·g⁻¹ = b`.
    pub witness: Option<SignedPerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dp4Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub job: Option<String>,
    pub involutions: Vec<InvolutionReport>,
    pub elements: Vec<ElementReport>,
    pub conjugacy: Vec<ConjugacyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order4_scan: Option<Order4Scan>,
}

impl Dp4Job {
    pub fn parse(text: &str) -> Result<Dp4Job> {
        let job: Dp4Job = from_json(text)?;
        for (i, e) in job.elements.iter().enumerate() {
            if !e.element.is_even() {
                return Err(Error::schema(format!("elements[{i}]"), "odd number of sign changes"));
            }
        }
        for (i, pair) in job.conjugacy.iter().enumerate() {
            for l in pair {
                if !job.elements.iter().any(|e| &e.label == l) {
                    return Err(Error::schema(format!("conjugacy[{i}]"), format!("unknown element `{l}`")));
                }
            }
        }
        Ok(job)
    }
}

fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().expect("small entries")).collect())
        .collect()
}

fn involution(spec: &InvolutionSpec) -> Result<InvolutionReport> {
    let s = canonical_even(spec.signs)?;
    let intersections = lines16()
        .iter()
        .map(|(l, _)| Ok(l.dot(&act_on_line(&s, l)?)))
        .collect::<Result<_>>()?;
    Ok(InvolutionReport {
        label: spec.label.clone(),
        representative: s,
        invariant_lines: invariant_lines(&s)?,
        orbits: orbits(&[s])?,
        intersections,
        h1: lattice_h1(&pic_action(&s)?, s.order() as u32)?,
    })
}

fn element(spec: &ElementSpec) -> Result<ElementReport> {
    let s = spec.element;
    Ok(ElementReport {
        label: spec.label.clone(),
        element: s,
        order: s.order(),
        cycle_type: s.underlying().cycle_type(),
        pic_action: rows(&pic_action(&s)?),
        invariant_lines: invariant_lines(&s)?,
        orbits: orbits(&[s])?,
    })
}

pub fn run_dp4(job: &Dp4Job) -> Result<Dp4Report> {
    let lookup = |l: &str| {
        job.elements
            .iter()
            .find(|e| e.label == l)
            .map(|e| e.element)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    };
    let conjugacy = job
        .conjugacy
        .iter()
        .map(|[a, b]| {
            Ok(ConjugacyReport {
                pair: [a.clone(), b.clone()],
                witness: conjugate_in_wd5(&lookup(a)?, &lookup(b)?)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Dp4Report {
        job: job.name.clone(),
        involutions: job.involutions.iter().map(involution).collect::<Result<_>>()?,
        elements: job.elements.iter().map(element).collect::<Result<_>>()?,
        conjugacy,
        order4_scan: job.order4_scan.then(order4_scan),
    })
}
