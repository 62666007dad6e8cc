//! Job files, the linearizability pipeline and its verdicts.
//!
//! A verdict is only as strong as its evidence: a certificate carries invariant lines
//! that are re-verified before emission, and an obstruction carries a witness that can be
//! recomputed from the job alone.

mod dp4;
pub mod fixtures;
mod job;
mod lift;
mod run;

use serde::{Deserialize, Serialize};

pub use dp4::{run_dp4, ConjugacyReport, Dp4Job, Dp4Report, ElementReport, ElementSpec, InvolutionReport, InvolutionSpec};
pub use job::{parse_job, Check, JobSpec, NamedSpec, DEFAULT_MAX_CLOSURE};
pub use lift::{
    parse_lift_job, run_lift, GroupSpec, KleinReport, KleinSpec, LiftJob, LiftReport, LiftSummary, RelationCheck,
    SideReport, TensorReport,
};
pub use run::{invariant_line_stage, run_report, verify_verdict, LineStage};

use crate::error::Result;
use crate::exactmath::CycNum;
use crate::groupaction::Word;

pub const VERDICT_SCHEMA: &str = "quadlin-verdict/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    LinearizableCertified,
    Obstructed,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::LinearizableCertified => "LINEARIZABLE_CERTIFIED",
            Status::Obstructed => "OBSTRUCTED",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Smoothness {
        smooth: bool,
        /// Coefficients of `t1^{n−k} t2^k`.
        degeneracy_form: Vec<CycNum>,
    },
    Symmetry {
        label: String,
        /// `M` with `h·Q_i·hᵀ = Σ_j M_ij Q_j`.
        action: [[CycNum; 2]; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        branch_permutation: Option<String>,
    },
    Relation {
        index: usize,
        holds: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scalar: Option<CycNum>,
    },
    /// Lines on `X` invariant under every generator; each is a basis of two vectors.
    InvariantLines {
        bounded_by: Vec<Word>,
        lines: Vec<Vec<Vec<CycNum>>>,
    },
    /// The search bounded by a cyclic subgroup was complete and found nothing.
    NoInvariantLine { bounded_by: Vec<Word> },
    /// A sign change of translation type: it acts freely on the lines of `X`.
    FreeTranslation {
        word: Word,
        signs: Vec<i8>,
        minus_coords: Vec<usize>,
    },
    IotaLift { word: Word, signs: Vec<i8> },
    /// The induced branch action fixes no odd two-torsion class.
    EmptyThetaFixedSet {
        permutations: Vec<String>,
        classes_checked: usize,
    },
    ThetaFixedClasses {
        permutations: Vec<String>,
        classes: Vec<Vec<usize>>,
    },
}

impl Evidence {
    pub fn is_obstruction(&self) -> bool {
        matches!(self, Evidence::FreeTranslation { .. } | Evidence::EmptyThetaFixedSet { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub job: Option<String>,
    pub status: Status,
    pub evidence: Vec<Evidence>,
    pub soundness_conditions: Vec<String>,
    pub notices: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
}

fn vector(v: &[CycNum]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn subgroup(gens: &[Word]) -> String {
    let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("<{}>", parts.join(", "))
}

fn human(v: &Verdict) -> String {
    let mut out = String::new();
    if let Some(j) = &v.job {
        out.push_str(&format!("job: {j}\n"));
    }
    out.push_str(&format!("status: {}\n", v.status));
    out.push_str("evidence:\n");
    for e in &v.evidence {
        let line = match e {
            Evidence::Smoothness { smooth, degeneracy_form } => {
                format!("smooth = {smooth}; degeneracy form coefficients {}", vector(degeneracy_form))
            }
            Evidence::Symmetry {
                label,
                action,
                branch_permutation,
            } => {
                let m = action.iter().map(|r| vector(r)).collect::<Vec<_>>().join(", ");
                match branch_permutation {
                    Some(p) => format!("symmetry {label}: M = [{m}], branch permutation {p}"),
                    None => format!("symmetry {label}: M = [{m}]"),
                }
            }
            Evidence::Relation { index, holds, scalar } => match scalar {
                Some(s) if !holds => format!("relation {index} fails: discrepancy {s}"),
                _ => format!("relation {index}: {}", if *holds { "holds" } else { "fails" }),
            },
            Evidence::InvariantLines { bounded_by, lines } => {
                let mut s = format!("invariant lines (search bounded by {}):", subgroup(bounded_by));
                for l in lines {
                    s.push_str(&format!("\n    span({})", l.iter().map(|b| vector(b)).collect::<Vec<_>>().join(", ")));
                }
                s
            }
            Evidence::NoInvariantLine { bounded_by } => {
                format!("no invariant line (complete search bounded by {})", subgroup(bounded_by))
            }
            Evidence::FreeTranslation { word, signs, .. } => {
                format!("free translation: {word} = diag{signs:?} up to scalar")
            }
            Evidence::IotaLift { word, signs } => format!("lift of the hyperelliptic involution: {word} = diag{signs:?} up to scalar"),
            Evidence::EmptyThetaFixedSet {
                permutations,
                classes_checked,
            } => format!(
                "no odd two-torsion class fixed by {} ({classes_checked} classes checked)",
                permutations.join(", ")
            ),
            Evidence::ThetaFixedClasses { permutations, classes } => {
                format!("odd classes fixed by {}: {classes:?}", permutations.join(", "))
            }
        };
        out.push_str(&format!("  - {line}\n"));
    }
    if !v.soundness_conditions.is_empty() {
        out.push_str("soundness conditions:\n");
        for s in &v.soundness_conditions {
            out.push_str(&format!("  - {s}\n"));
        }
    }
    if !v.notices.is_empty() {
        out.push_str("notices:\n");
        for s in &v.notices {
            out.push_str(&format!("  - {s}\n"));
        }
    }
    out
}

/// Deterministic text for a verdict.
pub fn emit(v: &Verdict, format: Format) -> String {
    match format {
        Format::Human => human(v),
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
    }
}

pub fn parse_verdict(text: &str) -> Result<Verdict> {
    job::from_json(text)
}
