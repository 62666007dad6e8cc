use super::job::{Check, JobSpec};
use super::{Evidence, Status, Verdict, VERDICT_SCHEMA};
use crate::curvetorsion::{act, fixed_classes, torsion_classes};
use crate::error::{Error, Result};
use crate::exactmath::CycNum;
use crate::groupaction::{verify_relations, Generator, GroupElement, MatrixGroup, RelationMode, Word};
use crate::linalg::{Mat, Subspace};
use crate::pencil::{
    branch_permutation, classify_diagonal_involution, invariant_lines_abelian, sign_vector, BranchConfig,
    DiagonalInvolution, InvolutionKind, LineOnX, Pencil,
};
use crate::perm::Permutation;

/// Outcome of the invariant-line search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineStage {
    /// Lines invariant under every generator.
    pub lines: Vec<LineOnX>,
    /// `lines` is the full list of invariant lines.
    pub complete: bool,
    /// Generators of the subgroup whose finite line list bounded the search.
    pub bounded_by: Vec<Word>,
    pub notices: Vec<String>,
}

fn point_actions(group: &MatrixGroup) -> Result<Vec<Mat>> {
    group.generators().iter().map(|g| g.matrix.contragredient()).collect()
}

/// Invariant lines of the group: directly when abelian, otherwise through cyclic subgroups.
///
/// A line invariant under the group is invariant under each cyclic subgroup, so the first
/// cyclic subgroup with a finite, complete answer bounds the search; its lines are then
/// filtered by every generator.
pub fn invariant_line_stage(pencil: &Pencil, group: &MatrixGroup, cap: usize) -> Result<LineStage> {
    let mut notices = Vec::new();
    if group.is_abelian() {
        let rep = invariant_lines_abelian(pencil, group)?;
        let bounded_by = group.labels().iter().map(|l| Word::generator(l)).collect();
        for f in &rep.families {
            notices.push(format!("line family: {}", f.note));
        }
        for u in &rep.unsupported {
            notices.push(format!("unsupported: {u}"));
        }
        return Ok(LineStage {
            complete: rep.is_complete(),
            lines: rep.lines,
            bounded_by,
            notices,
        });
    }
    let mut candidates: Vec<GroupElement> = group
        .generators()
        .iter()
        .map(|g| GroupElement {
            matrix: g.matrix.clone(),
            word: Word::generator(&g.label),
        })
        .collect();
    let mut closed = group.clone();
    match closed.compute_closure(cap) {
        Ok(elems) => candidates.extend(elems.iter().cloned()),
        Err(e @ Error::CapExceeded { .. }) => notices.push(format!("{e}; only generators bound the search")),
        Err(e) => return Err(e),
    }
    let points = point_actions(group)?;
    let mut incomplete = 0;
    for c in &candidates {
        if c.matrix.is_scalar() {
            continue;
        }
        let sub = MatrixGroup::new(group.dim(), vec![Generator::new(c.word.to_string(), c.matrix.clone())])?;
        let rep = match invariant_lines_abelian(pencil, &sub) {
            Ok(r) => r,
            Err(e) if e.is_unsupported() => {
                incomplete += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !rep.is_complete() {
            incomplete += 1;
            continue;
        }
        if incomplete > 0 {
            notices.push(format!("{incomplete} cyclic subgroups gave no finite line list"));
        }
        let lines = rep.lines.into_iter().filter(|l| l.is_invariant(&points)).collect();
        return Ok(LineStage {
            lines,
            complete: true,
            bounded_by: vec![c.word.clone()],
            notices,
        });
    }
    notices.push(format!(
        "none of the {} cyclic subgroups tried has a finite invariant-line list",
        candidates.len()
    ));
    Ok(LineStage {
        lines: Vec::new(),
        complete: false,
        bounded_by: Vec::new(),
        notices,
    })
}

/// `c·diag(±1)` with the scalar removed, unless the matrix is scalar.
fn projective_signs(m: &Mat) -> Option<Vec<i8>> {
    if !m.is_diagonal() || m.is_scalar() {
        return None;
    }
    let d = m.diagonal();
    let inv = d[0].inverse().ok()?;
    sign_vector(&m.scale(&inv))
}

impl JobSpec {
    /// Labelled branch points: the given labels, else the coordinate order of a diagonal pencil.
    pub fn branch_config(&self) -> Result<Option<BranchConfig>> {
        match &self.branch_labels {
            Some(r) => Ok(Some(BranchConfig::new(&self.pencil, r.clone())?)),
            None if self.pencil.is_diagonal() => Ok(Some(BranchConfig::from_diagonal(&self.pencil)?)),
            None => Ok(None),
        }
    }

    /// Branch permutation induced by each generator.
    pub fn branch_permutations(&self, branch: &BranchConfig) -> Result<Vec<Permutation>> {
        branch_perms(self, &self.group()?, branch)
    }
}

fn branch_perms(job: &JobSpec, group: &MatrixGroup, branch: &BranchConfig) -> Result<Vec<Permutation>> {
    job.pencil
        .symmetries(group)?
        .iter()
        .map(|s| branch_permutation(s, branch))
        .collect()
}

struct SignElements {
    translation: Option<(Word, DiagonalInvolution)>,
    iota: Option<(Word, DiagonalInvolution)>,
}

fn sign_elements(pencil: &Pencil, elems: &[GroupElement]) -> Result<SignElements> {
    let mut out = SignElements {
        translation: None,
        iota: None,
    };
    for e in elems {
        let Some(signs) = projective_signs(&e.matrix) else {
            continue;
        };
        let inv = classify_diagonal_involution(&signs, pencil)?;
        let slot = match inv.kind {
            InvolutionKind::Translation => &mut out.translation,
            InvolutionKind::IotaLift => &mut out.iota,
        };
        if slot.is_none() {
            *slot = Some((e.word.clone(), inv));
        }
    }
    Ok(out)
}

fn line_bases(lines: &[LineOnX]) -> Vec<Vec<Vec<CycNum>>> {
    lines.iter().map(|l| l.plane.basis_vectors()).collect()
}

fn finish(job: &JobSpec, mut v: Verdict) -> Result<Verdict> {
    if v.status == Status::Inconclusive && v.evidence.iter().any(Evidence::is_obstruction) {
        v.status = Status::Obstructed;
    }
    verify_verdict(job, &v)?;
    Ok(v)
}

/// Run the pipeline: smoothness, symmetries, invariant lines, free translations, theta classes.
pub fn run_report(job: &JobSpec) -> Result<Verdict> {
    let pencil = &job.pencil;
    let mut v = Verdict {
        schema: VERDICT_SCHEMA.into(),
        job: job.name.clone(),
        status: Status::Inconclusive,
        evidence: Vec::new(),
        soundness_conditions: Vec::new(),
        notices: Vec::new(),
    };
    let mut group = job.group().map_err(|e| e.at_stage("input"))?;

    let form = pencil.degeneracy_form();
    let smooth = pencil.is_smooth();
    if job.wants(Check::Smooth) || !smooth {
        v.evidence.push(Evidence::Smoothness {
            smooth,
            degeneracy_form: form.coeffs().to_vec(),
        });
    }
    if !smooth {
        v.notices.push("the degeneracy form has a repeated root, so X is not smooth".into());
        return finish(job, v);
    }

    let syms = pencil.symmetries(&group).map_err(|e| e.at_stage("equivariance"))?;
    let branch = job.branch_config().map_err(|e| e.at_stage("branch"))?;
    if branch.is_none() {
        v.notices.push("no branch labels given for a non-diagonal pencil; branch permutations skipped".into());
    }
    if job.wants(Check::Branch) {
        for s in &syms {
            let perm = match &branch {
                Some(b) => Some(branch_permutation(s, b).map_err(|e| e.at_stage("branch"))?.to_cycle_string()),
                None => None,
            };
            v.evidence.push(Evidence::Symmetry {
                label: s.label.clone(),
                action: s.action2x2.clone(),
                branch_permutation: perm,
            });
        }
    }
    if job.wants(Check::Relations) && !job.relations.is_empty() {
        let reps = verify_relations(&group, &job.relations, RelationMode::Exact).map_err(|e| e.at_stage("relations"))?;
        for r in reps {
            if !r.holds {
                v.notices.push(format!("declared relation {} does not hold exactly", r.index));
            }
            v.evidence.push(Evidence::Relation {
                index: r.index,
                holds: r.holds,
                scalar: r.scalar,
            });
        }
    }
    if pencil.genus() != 2 {
        v.notices.push(format!(
            "the verdict chain is implemented for g = 2 only; g = {} stops after the branch data",
            pencil.genus()
        ));
        return finish(job, v);
    }
    v.soundness_conditions
        .push("X is a smooth complete intersection of two quadrics in P^5 (distinct degeneracy roots)".into());

    if job.wants(Check::InvariantLines) {
        let st = invariant_line_stage(pencil, &group, job.closure_cap()).map_err(|e| e.at_stage("invariant_lines"))?;
        v.notices.extend(st.notices);
        if st.complete && !st.lines.is_empty() {
            v.evidence.push(Evidence::InvariantLines {
                bounded_by: st.bounded_by,
                lines: line_bases(&st.lines),
            });
            v.soundness_conditions
                .push("a G-invariant line on X gives G-equivariant birationality to P^3".into());
            v.status = Status::LinearizableCertified;
            return finish(job, v);
        }
        if st.complete {
            v.evidence.push(Evidence::NoInvariantLine {
                bounded_by: st.bounded_by,
            });
        } else {
            v.notices.push("the invariant-line search is incomplete".into());
        }
    }

    let wants_signs = job.wants(Check::Translation) || job.wants(Check::Theta);
    if wants_signs && !pencil.is_diagonal() {
        v.notices.push("sign-change stages need a diagonal pencil; skipped".into());
        return finish(job, v);
    }
    if !wants_signs {
        return finish(job, v);
    }
    let elems: Vec<GroupElement> = match group.compute_closure(job.closure_cap()) {
        Ok(e) => e.to_vec(),
        Err(e @ Error::CapExceeded { .. }) => {
            v.notices.push(format!("{e}; sign-change search limited to generators"));
            group
                .generators()
                .iter()
                .map(|g| GroupElement {
                    matrix: g.matrix.clone(),
                    word: Word::generator(&g.label),
                })
                .collect()
        }
        Err(e) => return Err(e.at_stage("closure")),
    };
    let signs = sign_elements(pencil, &elems).map_err(|e| e.at_stage("translation"))?;

    if job.wants(Check::Translation) {
        if let Some((word, inv)) = &signs.translation {
            v.evidence.push(Evidence::FreeTranslation {
                word: word.clone(),
                signs: inv.signs.clone(),
                minus_coords: inv.minus_coords.clone(),
            });
            v.soundness_conditions.push(
                "a sign change with an even number of −1 entries translates the variety of lines by two-torsion and fixes no line"
                    .into(),
            );
        }
    }

    if job.wants(Check::Theta) {
        match (&signs.iota, &branch) {
            (Some((word, inv)), Some(b)) => {
                v.evidence.push(Evidence::IotaLift {
                    word: word.clone(),
                    signs: inv.signs.clone(),
                });
                let perms = branch_perms(job, &group, b).map_err(|e| e.at_stage("theta"))?;
                let fixed = fixed_classes(2, &perms, 1).map_err(|e| e.at_stage("theta"))?;
                let names: Vec<String> = perms.iter().map(Permutation::to_cycle_string).collect();
                v.soundness_conditions.push(
                    "G contains a lift of the hyperelliptic involution, so a G-fixed point of Pic^1 must be one of the 16 odd two-torsion classes"
                        .into(),
                );
                if fixed.is_empty() {
                    v.evidence.push(Evidence::EmptyThetaFixedSet {
                        permutations: names,
                        classes_checked: 16,
                    });
                } else {
                    v.evidence.push(Evidence::ThetaFixedClasses {
                        permutations: names,
                        classes: fixed.iter().map(|c| c.subset()).collect(),
                    });
                }
            }
            (None, _) => v
                .notices
                .push("no lift of the hyperelliptic involution in G; theta stage skipped".into()),
            (Some(_), None) => v.notices.push("theta stage needs branch labels; skipped".into()),
        }
    }
    finish(job, v)
}

fn fail(what: impl Into<String>) -> Error {
    Error::Unsupported(format!("verdict failed re-verification: {}", what.into()))
}

/// Recompute every certificate and witness in the verdict from the job.
pub fn verify_verdict(job: &JobSpec, v: &Verdict) -> Result<()> {
    let group = job.group()?;
    let pencil = &job.pencil;
    let points = point_actions(&group)?;
    let mut certified = false;
    let mut obstructed = false;
    for e in &v.evidence {
        match e {
            Evidence::InvariantLines { lines, .. } => {
                for basis in lines {
                    let plane = Subspace::span(pencil.dim(), basis);
                    let line = LineOnX::new(pencil, plane).map_err(|_| fail("a line is not on X"))?;
                    if !line.is_invariant(&points) {
                        return Err(fail("a line is not invariant under every generator"));
                    }
                    certified = true;
                }
            }
            Evidence::FreeTranslation { word, signs, .. } => {
                let m = group.eval_word(word)?;
                let actual = projective_signs(&m).ok_or_else(|| fail("translation witness is not a sign change"))?;
                let inv = classify_diagonal_involution(&actual, pencil)?;
                if inv.kind != InvolutionKind::Translation || &inv.signs != signs {
                    return Err(fail("translation witness has the wrong sign type"));
                }
                obstructed = true;
            }
            Evidence::EmptyThetaFixedSet { permutations, .. } => {
                let branch = job.branch_config()?.ok_or_else(|| fail("theta witness without branch data"))?;
                let perms = branch_perms(job, &group, &branch)?;
                let names: Vec<String> = perms.iter().map(Permutation::to_cycle_string).collect();
                if &names != permutations {
                    return Err(fail("theta witness permutations differ"));
                }
                for c in torsion_classes(2, 1)? {
                    let mut moved = false;
                    for p in &perms {
                        if act(p, &c)? != c {
                            moved = true;
                        }
                    }
                    if !moved {
                        return Err(fail(format!("class {c} is fixed")));
                    }
                }
                obstructed = true;
            }
            _ => {}
        }
    }
    match v.status {
        Status::LinearizableCertified if !certified => Err(fail("certificate without an invariant line")),
        Status::Obstructed if !obstructed => Err(fail("obstruction without a witness")),
        _ => Ok(()),
    }
}
