use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{Generator, MatrixGroup, Word};
use crate::error::{Error, Result};
use crate::exactmath::CycNum;
use crate::linalg::Mat;

/// Right-hand side of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationTarget {
    Identity,
    /// A generator or named element, usually central.
    Central(String),
    /// Any scalar matrix.
    Scalar,
}

impl Serialize for RelationTarget {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RelationTarget::Identity => s.serialize_str("identity"),
            RelationTarget::Scalar => s.serialize_str("scalar"),
            RelationTarget::Central(l) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("central", l)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for RelationTarget {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) if s == "identity" => Ok(RelationTarget::Identity),
            serde_json::Value::String(s) if s == "scalar" => Ok(RelationTarget::Scalar),
            serde_json::Value::Object(o) if o.len() == 1 => match o.get("central") {
                Some(serde_json::Value::String(l)) => Ok(RelationTarget::Central(l.clone())),
                _ => Err(de::Error::custom("expected {\"central\": label}")),
            },
            _ => Err(de::Error::custom(
                "target must be \"identity\", \"scalar\" or {\"central\": label}",
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub word: Word,
    pub target: RelationTarget,
}

impl Relation {
    pub fn new(word: Word, target: RelationTarget) -> Self {
        Relation { word, target }
    }

    /// `label^e = 1`.
    pub fn power(label: &str, e: i64) -> Self {
        Relation::new(Word(vec![(label.to_string(), e)]), RelationTarget::Identity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationMode {
    Exact,
    UpToScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub index: usize,
    /// word · target⁻¹ (for a scalar target: the word itself).
    pub discrepancy: Mat,
    pub holds: bool,
    /// The discrepancy as a scalar, when it is one.
    pub scalar: Option<CycNum>,
}

fn discrepancy(group: &MatrixGroup, rel: &Relation) -> Result<Mat> {
    if rel.word.is_empty() {
        return Err(Error::schema("word", "relation word is empty"));
    }
    let w = group.eval_word(&rel.word)?;
    Ok(match &rel.target {
        RelationTarget::Identity | RelationTarget::Scalar => w,
        RelationTarget::Central(l) => w.mul(&group.lookup(l)?.inverse()?),
    })
}

pub fn verify_relations(
    group: &MatrixGroup,
    rels: &[Relation],
    mode: RelationMode,
) -> Result<Vec<RelationReport>> {
    let mut out = Vec::with_capacity(rels.len());
    for (index, rel) in rels.iter().enumerate() {
        let d = discrepancy(group, rel)?;
        let scalar = d.as_scalar();
        if mode == RelationMode::UpToScalar && scalar.is_none() {
            return Err(Error::NonScalarDiscrepancy { index });
        }
        let holds = match rel.target {
            RelationTarget::Scalar => scalar.is_some(),
            _ => d.is_identity(),
        };
        out.push(RelationReport {
            index,
            discrepancy: d,
            holds,
            scalar,
        });
    }
    Ok(out)
}

/// Scalars `ζ_m^{k_i}` by which the generators are rescaled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rescaling {
    pub m: u32,
    pub exponents: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    /// Rescaled generators satisfying every relation exactly.
    Lift {
        rescaling: Rescaling,
        generators: Vec<Generator>,
    },
    /// No rescaling by roots of unity of order `m ≤ bound` works; `tested` lists `(m, tuples tried)`.
    Obstructed { bound: u32, tested: Vec<(u32, u64)> },
}

/// Largest number of rescaling tuples tried for one `m`.
pub const LIFT_SEARCH_LIMIT: u64 = 1 << 22;

/// Search for rescalings of the generators by roots of unity that turn the projective relations into exact ones.
///
/// Relations with a scalar target impose nothing. Named elements that are not generators are held fixed.
pub fn scalar_lift_search(group: &MatrixGroup, rels: &[Relation], bound: u32) -> Result<LiftOutcome> {
    let labels: Vec<String> = group.labels().iter().map(|s| s.to_string()).collect();
    // per relation: exponent of each generator, and the scalar discrepancy
    let mut constraints: Vec<(Vec<i64>, CycNum)> = Vec::new();
    for (index, rel) in rels.iter().enumerate() {
        let d = discrepancy(group, rel)?;
        let c = d
            .as_scalar()
            .ok_or(Error::RelationsFailProjectively { index })?;
        if rel.target == RelationTarget::Scalar {
            continue;
        }
        let mut e: Vec<i64> = labels.iter().map(|l| rel.word.exponent_sum(l)).collect();
        if let RelationTarget::Central(t) = &rel.target {
            if let Some(pos) = labels.iter().position(|l| l == t) {
                e[pos] -= 1;
            }
        }
        constraints.push((e, c));
    }
    let g = labels.len();
    let mut tested = Vec::new();
    for m in 1..=bound {
        // log of each discrepancy in μ_m; any failure rules out this m
        let logs: Option<Vec<u32>> = constraints.iter().map(|(_, c)| c.log_root_of_unity(m)).collect();
        let total = (m as u64).checked_pow(g as u32).unwrap_or(u64::MAX);
        let Some(logs) = logs else {
            tested.push((m, 0));
            continue;
        };
        if total > LIFT_SEARCH_LIMIT {
            return Err(Error::Unsupported(format!(
                "{total} rescalings at scalar order {m} exceed the search limit"
            )));
        }
        let mut k = vec![0u32; g];
        let mut count = 0u64;
        loop {
            count += 1;
            let ok = constraints.iter().zip(&logs).all(|((e, _), &l)| {
                let s: i64 = e.iter().zip(&k).map(|(ei, &ki)| ei * ki as i64).sum::<i64>() + l as i64;
                s.rem_euclid(m as i64) == 0
            });
            if ok {
                let rescaling = Rescaling {
                    m,
                    exponents: labels.iter().cloned().zip(k.iter().copied()).collect(),
                };
                let generators = rescale(group, &rescaling);
                verify_lift(group, &generators, rels)?;
                return Ok(LiftOutcome::Lift {
                    rescaling,
                    generators,
                });
            }
            // next tuple in (Z/m)^g
            let mut i = 0;
            while i < g {
                k[i] += 1;
                if k[i] < m {
                    break;
                }
                k[i] = 0;
                i += 1;
            }
            if i == g {
                break;
            }
        }
        tested.push((m, count));
    }
    Ok(LiftOutcome::Obstructed { bound, tested })
}

fn rescale(group: &MatrixGroup, r: &Rescaling) -> Vec<Generator> {
    group
        .generators()
        .iter()
        .zip(&r.exponents)
        .map(|(g, (_, k))| Generator::new(g.label.clone(), g.matrix.scale(&CycNum::root_of_unity(r.m, *k as i64))))
        .collect()
}

fn verify_lift(group: &MatrixGroup, gens: &[Generator], rels: &[Relation]) -> Result<()> {
    let mut lifted = MatrixGroup::new(group.dim(), gens.to_vec())?;
    for (l, m) in group.named() {
        if group.generator(l).is_none() {
            lifted = lifted.with_named(l.clone(), m.clone())?;
        }
    }
    let reports = verify_relations(&lifted, rels, RelationMode::Exact)?;
    match reports.iter().find(|r| !r.holds) {
        Some(r) => Err(Error::Unsupported(format!(
            "rescaled relation {} fails on re-verification",
            r.index
        ))),
        None => Ok(()),
    }
}
