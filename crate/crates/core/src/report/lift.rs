use serde::{Deserialize, Serialize};

use super::job::{build_group, from_json, NamedSpec, DEFAULT_MAX_CLOSURE};
use crate::error::{Error, Result};
use crate::exactmath::CycNum;
use crate::groupaction::{
    projective_closure, projective_fixed_locus, scalar_lift_search, tensor_rep, verify_relations, Generator,
    LiftOutcome, MatrixGroup, Relation, RelationMode, RelationTarget, Word,
};

/// One matrix group with the relations its lift should satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub named: Vec<NamedSpec>,
    #[serde(default)]
    pub relations: Vec<Relation>,
}

/// Two projective elements of one group expected to generate a Klein four-group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KleinSpec {
    pub group: String,
    pub elements: [Word; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftJob {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub groups: Vec<GroupSpec>,
    /// Names of two groups with the same labels, combined generator-wise on the tensor product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub klein: Option<KleinSpec>,
    #[serde(default = "default_bound")]
    pub scalar_order_bound: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_closure: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn default_bound() -> u32 {
    8
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub index: usize,
    pub holds: bool,
    /// Scalar discrepancy, when the relation holds up to a scalar.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<CycNum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LiftSummary {
    Lift { m: u32, exponents: Vec<(String, u32)> },
    Obstructed { bound: u32, tested: Vec<(u32, u64)> },
    /// Some relation fails even up to scalars.
    NotProjective { relation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    pub name: String,
    /// Order of the matrix group, when within the closure cap.
    pub order: Option<usize>,
    pub projective_order: Option<usize>,
    pub center_order: Option<usize>,
    pub relations: Vec<RelationCheck>,
    pub lift: LiftSummary,
    pub fixed_locus_empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub groups: [String; 2],
    pub dim: usize,
    pub fixed_locus_empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinReport {
    pub group: String,
    pub elements: [Word; 2],
    /// The two elements are involutions that commute, all up to scalars.
    pub projective_klein_four: bool,
    pub fixed_locus_empty: bool,
    pub lift: LiftSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub job: Option<String>,
    pub groups: Vec<SideReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub klein: Option<KleinReport>,
    pub notes: Vec<String>,
}

pub fn parse_lift_job(text: &str) -> Result<LiftJob> {
    let job: LiftJob = from_json(text)?;
    for (i, g) in job.groups.iter().enumerate() {
        build_group(g.dim, &g.generators, &g.named).map_err(|e| match e {
            Error::Schema { path, message } => Error::schema(format!("groups[{i}].{path}"), message),
            e => e,
        })?;
    }
    let known = |n: &str| job.groups.iter().any(|g| g.name == n);
    if let Some(t) = &job.tensor {
        for n in t {
            if !known(n) {
                return Err(Error::schema("tensor", format!("unknown group `{n}`")));
            }
        }
    }
    if let Some(k) = &job.klein {
        if !known(&k.group) {
            return Err(Error::schema("klein.group", format!("unknown group `{}`", k.group)));
        }
    }
    Ok(job)
}

fn summarize(outcome: Result<LiftOutcome>) -> Result<LiftSummary> {
    match outcome {
        Ok(LiftOutcome::Lift { rescaling, .. }) => Ok(LiftSummary::Lift {
            m: rescaling.m,
            exponents: rescaling.exponents,
        }),
        Ok(LiftOutcome::Obstructed { bound, tested }) => Ok(LiftSummary::Obstructed { bound, tested }),
        Err(Error::RelationsFailProjectively { index }) => Ok(LiftSummary::NotProjective { relation: index }),
        Err(e) => Err(e),
    }
}

fn capped<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn side_report(spec: &GroupSpec, group: &mut MatrixGroup, bound: u32, cap: usize) -> Result<SideReport> {
    let relations = verify_relations(group, &spec.relations, RelationMode::Exact)?
        .into_iter()
        .map(|r| RelationCheck {
            index: r.index,
            holds: r.holds,
            scalar: r.scalar,
        })
        .collect();
    let lift = summarize(scalar_lift_search(group, &spec.relations, bound))?;
    let projective_order = capped(projective_closure(group, cap))?.map(|p| p.len());
    let order = capped(group.compute_closure(cap).map(|c| c.len()))?;
    let center_order = match order {
        Some(_) => Some(group.center()?.len()),
        None => None,
    };
    Ok(SideReport {
        name: spec.name.clone(),
        order,
        projective_order,
        center_order,
        relations,
        lift,
        fixed_locus_empty: projective_fixed_locus(group)?.is_empty(),
    })
}

/// The two Klein generators as a group on their own, with the lifting relations `a² = b² = [a,b] = 1`.
fn klein_report(spec: &KleinSpec, group: &MatrixGroup, bound: u32) -> Result<KleinReport> {
    let a = group.eval_word(&spec.elements[0])?;
    let b = group.eval_word(&spec.elements[1])?;
    let k = MatrixGroup::new(group.dim(), vec![Generator::new("a", a), Generator::new("b", b)])?;
    let rels = vec![
        Relation::power("a", 2),
        Relation::power("b", 2),
        Relation::new(
            Word(vec![("a".into(), 1), ("b".into(), 1), ("a".into(), -1), ("b".into(), -1)]),
            RelationTarget::Identity,
        ),
    ];
    let proj = verify_relations(&k, &rels, RelationMode::Exact)?
        .iter()
        .all(|r| r.scalar.is_some());
    let distinct = capped(projective_closure(&k, 8))?.is_some_and(|p| p.len() == 4);
    Ok(KleinReport {
        group: spec.group.clone(),
        elements: spec.elements.clone(),
        projective_klein_four: proj && distinct,
        fixed_locus_empty: projective_fixed_locus(&k)?.is_empty(),
        lift: summarize(scalar_lift_search(&k, &rels, bound))?,
    })
}

pub fn run_lift(job: &LiftJob) -> Result<LiftReport> {
    let cap = job.max_closure.unwrap_or(DEFAULT_MAX_CLOSURE);
    let mut groups = Vec::new();
    let mut sides = Vec::new();
    for spec in &job.groups {
        let mut g = build_group(spec.dim, &spec.generators, &spec.named)?;
        sides.push(side_report(spec, &mut g, job.scalar_order_bound, cap).map_err(|e| e.at_stage("lift"))?);
        groups.push((spec.name.clone(), g));
    }
    let find = |n: &str| groups.iter().find(|(k, _)| k == n).map(|(_, g)| g).expect("checked on parse");
    let tensor = match &job.tensor {
        Some([a, b]) => {
            let t = tensor_rep(find(a), find(b)).map_err(|e| e.at_stage("tensor"))?;
            Some(TensorReport {
                groups: [a.clone(), b.clone()],
                dim: t.dim(),
                fixed_locus_empty: projective_fixed_locus(&t)?.is_empty(),
            })
        }
        None => None,
    };
    let klein = match &job.klein {
        Some(k) => Some(klein_report(k, find(&k.group), job.scalar_order_bound).map_err(|e| e.at_stage("klein"))?),
        None => None,
    };
    Ok(LiftReport {
        job: job.name.clone(),
        groups: sides,
        tensor,
        klein,
        notes: job.notes.clone(),
    })
}
