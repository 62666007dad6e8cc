use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::ProjPoint;
use crate::groupaction::{Generator, MatrixGroup, Relation, Word};
use crate::linalg::Mat;
use crate::pencil::Pencil;

pub const DEFAULT_MAX_CLOSURE: usize = 4096;

/// Pipeline stages a job may request. All run when none are listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Smooth,
    Branch,
    Relations,
    InvariantLines,
    Translation,
    Theta,
}

/// A named element, given by a matrix or as a word in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Mat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub pencil: Pencil,
    #[serde(default)]
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub named: Vec<NamedSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Relation>,
    /// Labelled roots `[t1, t2]` of the degeneracy form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_labels: Option<Vec<ProjPoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_closure: Option<usize>,
}

/// Deserialize with the failing path attached to the error.
pub(crate) fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::schema(if path.is_empty() { ".".into() } else { path }, e.into_inner().to_string())
    })
}

/// Build a group from generators and named elements.
pub(crate) fn build_group(dim: usize, generators: &[Generator], named: &[NamedSpec]) -> Result<MatrixGroup> {
    for (i, g) in generators.iter().enumerate() {
        if g.matrix.rows() != dim || g.matrix.cols() != dim {
            return Err(Error::schema(
                format!("generators[{i}].matrix"),
                format!("expected a {dim}×{dim} matrix"),
            ));
        }
    }
    let mut group = MatrixGroup::new(dim, generators.to_vec())?;
    for (i, n) in named.iter().enumerate() {
        let m = match (&n.matrix, &n.word) {
            (Some(m), None) => m.clone(),
            (None, Some(w)) => group
                .eval_word(w)
                .map_err(|e| Error::schema(format!("named[{i}].word"), e.to_string()))?,
            _ => {
                return Err(Error::schema(
                    format!("named[{i}]"),
                    "give exactly one of `matrix` and `word`",
                ))
            }
        };
        if group.lookup(&n.label).is_ok() {
            return Err(Error::schema(format!("named[{i}].label"), "label already in use"));
        }
        group = group.with_named(n.label.clone(), m)?;
    }
    Ok(group)
}

impl JobSpec {
    pub fn group(&self) -> Result<MatrixGroup> {
        build_group(self.pencil.dim(), &self.generators, &self.named)
    }

    pub fn wants(&self, c: Check) -> bool {
        self.checks.as_ref().is_none_or(|cs| cs.contains(&c))
    }

    pub fn closure_cap(&self) -> usize {
        self.max_closure.unwrap_or(DEFAULT_MAX_CLOSURE)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Parse and validate a job: matrices have the right size and every generator preserves the pencil.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let job: JobSpec = from_json(text)?;
    let group = job.group()?;
    job.pencil.symmetries(&group)?;
    for (i, r) in job.relations.iter().enumerate() {
        for (l, _) in &r.word.0 {
            if group.lookup(l).is_err() {
                return Err(Error::schema(format!("relations[{i}].word"), format!("unknown label `{l}`")));
            }
        }
    }
    Ok(job)
}
