//! Evaluation of `expect` declarations against computed groups.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::commands::{bundle_result, problem, ring};
use super::{CmdResult, Failure, Format, EXIT_MISMATCH, EXIT_OK};
use crate::abelian::AbelianGroup;
use crate::dsl::{DeclKind, DslDocument, ExpectDecl};
use crate::solver::{self, SolveOptions};

#[derive(Debug, Serialize)]
struct Outcome {
    target: String,
    position: String,
    cite: Option<String>,
    degrees: usize,
    mismatches: Vec<String>,
}

/// Computed value per degree; `Err` carries the reason nothing was computed.
type Computed = BTreeMap<u32, Result<AbelianGroup, String>>;

fn computed(doc: &DslDocument, e: &ExpectDecl) -> Result<Computed, Failure> {
    let kind = doc.declarations.iter().find(|d| d.name() == e.target && !matches!(d.kind, DeclKind::Expect(_)));
    let mut values = Computed::new();
    match kind.map(|d| &d.kind) {
        Some(DeclKind::Ring(_)) => {
            let r = ring(doc, &e.target)?;
            for &k in e.entries.keys() {
                let g = if k <= r.top_degree() { r.group(k) } else { AbelianGroup::trivial() };
                values.insert(k, Ok(g));
            }
        }
        Some(DeclKind::Bundle(_)) => {
            let result = bundle_result(doc, &e.target)?;
            for &k in e.entries.keys() {
                let v = match result.totals.iter().find(|t| t.degree == k) {
                    None => Ok(AbelianGroup::trivial()),
                    Some(t) => t.group.clone().ok_or_else(|| {
                        let c: Vec<String> = t.candidates.iter().map(ToString::to_string).collect();
                        format!("ambiguous extension, one of {}", c.join(" | "))
                    }),
                };
                values.insert(k, v);
            }
        }
        Some(DeclKind::Problem(_)) => {
            let p = problem(doc, &e.target)?;
            let out = solver::solve(&p, &SolveOptions::default()).map_err(|err| Failure::input(err.to_string()))?;
            let torsion = match out.solutions.as_slice() {
                [only] => Ok(only.homology_torsion(p.dimension()).map_err(|err| Failure::input(err.to_string()))?),
                many => Err(format!("{} solutions", many.len())),
            };
            for &k in e.entries.keys() {
                let v = match &torsion {
                    Ok(t) => Ok(t.get(k as usize).cloned().unwrap_or_default()),
                    Err(reason) => Err(reason.clone()),
                };
                values.insert(k, v);
            }
        }
        _ => return Err(Failure::input(format!("expectation for unknown `{}`", e.target))),
    }
    Ok(values)
}

pub(super) fn run(doc: &DslDocument, f: Format, out: &mut dyn Write) -> CmdResult {
    let mut outcomes = Vec::new();
    for (e, d) in doc.expectations() {
        let values = computed(doc, e)?;
        let mut mismatches = Vec::new();
        for (k, want) in &e.entries {
            match &values[k] {
                Ok(found) if found == want => {}
                Ok(found) => mismatches.push(format!("degree {k}: expected {want}, found {found}")),
                Err(reason) => mismatches.push(format!("degree {k}: expected {want}, {reason}")),
            }
        }
        outcomes.push(Outcome {
            target: e.target.clone(),
            position: d.pos.to_string(),
            cite: d.cite.clone(),
            degrees: e.entries.len(),
            mismatches,
        });
    }
    match f {
        Format::Latex => return Err(Failure::input("`check` has no LaTeX output")),
        Format::Json => {
            let text = serde_json::to_string_pretty(&outcomes).map_err(|e| Failure::input(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Text => {
            for o in &outcomes {
                let cite = o.cite.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default();
                if o.mismatches.is_empty() {
                    writeln!(out, "ok    {} ({} degrees){cite}", o.target, o.degrees)?;
                } else {
                    writeln!(out, "FAIL  {} at {}{cite}", o.target, o.position)?;
                    for m in &o.mismatches {
                        writeln!(out, "      {m}")?;
                    }
                }
            }
            let failed = outcomes.iter().filter(|o| !o.mismatches.is_empty()).count();
            writeln!(out, "{} expectations, {failed} failed", outcomes.len())?;
        }
    }
    let all_ok = outcomes.iter().all(|o| o.mismatches.is_empty());
    Ok(if all_ok { EXIT_OK } else { EXIT_MISMATCH })
}
