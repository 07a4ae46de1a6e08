use std::io::Write;

use serde::Serialize;

use super::{CmdResult, Failure, Format, EXIT_MISMATCH, EXIT_OK, EXIT_SOLVER};
use crate::dsl::DslDocument;
use crate::graded_ring::{GradedRing, IntPolynomial, TableRow};
use crate::solver::{self, extended_candidates, SolveOptions, TorsionProblem};
use crate::spectral::{gysin_total, render_page, GysinResult, PageFormat, SphereBundleSpec};
use crate::verify;

fn json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::input(format!("serialization: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn no_latex(command: &str) -> Failure {
    Failure::input(format!("`{command}` has no LaTeX output"))
}

pub(super) fn ring(doc: &DslDocument, name: &str) -> Result<GradedRing, Failure> {
    doc.ring(name).cloned().map(GradedRing::new).ok_or_else(|| Failure::input(format!("no ring named `{name}`")))
}

pub(super) fn bundle_result(doc: &DslDocument, name: &str) -> Result<GysinResult, Failure> {
    let b = doc.bundle(name).ok_or_else(|| Failure::input(format!("no bundle named `{name}`")))?;
    let base = doc.ring(&b.base).ok_or_else(|| Failure::input(format!("no ring named `{}`", b.base)))?;
    let spec = SphereBundleSpec::new(base.clone(), b.fiber_dim, b.euler.clone())
        .map_err(|e| Failure::input(format!("bundle `{name}`: {e}")))?;
    Ok(gysin_total(&spec))
}

pub(super) fn problem(doc: &DslDocument, name: &str) -> Result<TorsionProblem, Failure> {
    let decl = doc.problem(name).ok_or_else(|| Failure::input(format!("no problem named `{name}`")))?;
    TorsionProblem::from_decl(decl, doc).map_err(|e| Failure::input(format!("problem `{name}`: {e}")))
}

fn columns(out: &mut dyn Write, rows: &[Vec<String>]) -> Result<(), Failure> {
    let n = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..n).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0)).collect();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end())?;
    }
    Ok(())
}

pub(super) fn groups(doc: &DslDocument, name: &str, max_deg: Option<u32>, f: Format, out: &mut dyn Write) -> CmdResult {
    let r = ring(doc, name)?;
    let rows: Vec<TableRow> =
        r.graded_table().into_iter().filter(|row| max_deg.is_none_or(|m| row.degree <= m)).collect();
    match f {
        Format::Json => json(out, &rows)?,
        Format::Text => {
            let mut table = vec![vec!["deg".to_string(), "group".to_string(), "generators".to_string()]];
            table.extend(rows.iter().map(|row| vec![row.degree.to_string(), row.group.clone(), row.generators.join(", ")]));
            columns(out, &table)?;
        }
        Format::Latex => {
            writeln!(out, "\\begin{{tabular}}{{c|c|c}}")?;
            writeln!(out, "$k$ & $H^k$ & generators\\\\\\hline")?;
            for row in &rows {
                let g = r.group(row.degree).to_latex();
                let gens: Vec<String> = row.generators.iter().map(|s| format!("${s}$")).collect();
                writeln!(out, "{} & ${g}$ & {}\\\\", row.degree, gens.join(", "))?;
            }
            writeln!(out, "\\end{{tabular}}")?;
        }
    }
    Ok(EXIT_OK)
}

fn page_format(f: Format) -> PageFormat {
    match f {
        Format::Latex => PageFormat::Latex,
        _ => PageFormat::Text,
    }
}

pub(super) fn gysin(doc: &DslDocument, name: &str, f: Format, out: &mut dyn Write) -> CmdResult {
    let result = bundle_result(doc, name)?;
    if f == Format::Json {
        json(out, &result)?;
        return Ok(EXIT_OK);
    }
    let pf = page_format(f);
    writeln!(out, "E_{}:", result.e2.r)?;
    write!(out, "{}", render_page(&result.e2, pf))?;
    writeln!(out, "\nE_inf:")?;
    write!(out, "{}", render_page(&result.e_inf, pf))?;
    writeln!(out, "\ntotal:")?;
    for t in &result.totals {
        let group = match &t.group {
            Some(g) => g.to_string(),
            None => {
                let c: Vec<String> = t.candidates.iter().map(ToString::to_string).collect();
                format!("ambiguous, one of {}", c.join(" | "))
            }
        };
        writeln!(out, "H^{} = {group}    (0 -> {} -> H^{} -> {} -> 0)", t.degree, t.sub, t.degree, t.quot)?;
    }
    Ok(EXIT_OK)
}

pub(super) fn page(doc: &DslDocument, name: &str, f: Format, out: &mut dyn Write) -> CmdResult {
    let result = bundle_result(doc, name)?;
    match f {
        Format::Json => json(out, &result.e2)?,
        _ => write!(out, "{}", render_page(&result.e2, page_format(f)))?,
    }
    Ok(EXIT_OK)
}

pub(super) struct SolveFlags {
    pub explain: bool,
    pub all: bool,
    pub no_so3: bool,
    pub extend: bool,
}

pub(super) fn solve(doc: &DslDocument, name: &str, flags: SolveFlags, f: Format, out: &mut dyn Write) -> CmdResult {
    if f == Format::Latex {
        return Err(no_latex("solve"));
    }
    let mut p = problem(doc, name)?;
    if flags.extend {
        for g in extended_candidates() {
            if !p.candidates.contains(&g) {
                p.candidates.push(g);
            }
        }
    }
    let outcome = solver::solve(&p, &SolveOptions { skip_so3: flags.no_so3 })
        .map_err(|e| Failure::input(format!("problem `{name}`: {e}")))?;
    let code = if flags.all || outcome.solutions.len() == 1 { EXIT_OK } else { EXIT_SOLVER };

    if f == Format::Json {
        #[derive(Serialize)]
        struct Report<'a> {
            solutions: &'a [solver::TorsionAssignment],
            cohomology: Vec<Vec<String>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            eliminated: Option<&'a [solver::Elimination]>,
        }
        let cohomology = outcome
            .solutions
            .iter()
            .map(|s| {
                solver::cohomology_from(s, &p.betti)
                    .map(|h| h.iter().map(ToString::to_string).collect())
                    .map_err(|e| Failure::input(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let eliminated = flags.explain.then_some(outcome.eliminated.as_slice());
        json(out, &Report { solutions: &outcome.solutions, cohomology, eliminated })?;
        return Ok(code);
    }

    if flags.explain {
        for e in &outcome.eliminated {
            writeln!(out, "rejected {}: {}", e.assignment, e.failure)?;
        }
        writeln!(out, "rejections by constraint and degree:")?;
        for ((c, k), count) in outcome.elimination_counts() {
            writeln!(out, "  {c} at {k}: {count}")?;
        }
    }
    writeln!(out, "{} solution(s) for {name}", outcome.solutions.len())?;
    for s in &outcome.solutions {
        writeln!(out, "{s}")?;
        let h = solver::cohomology_from(s, &p.betti).map_err(|e| Failure::input(e.to_string()))?;
        let row: Vec<String> = h.iter().enumerate().map(|(k, g)| format!("H^{k} = {g}")).collect();
        writeln!(out, "  {}", row.join(", "))?;
    }
    Ok(code)
}

pub(super) fn verify_paper(f: Format, out: &mut dyn Write) -> CmdResult {
    if f == Format::Latex {
        return Err(no_latex("verify-paper"));
    }
    let results = verify::run_all();
    if f == Format::Json {
        json(out, &results)?;
    } else {
        for r in &results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            writeln!(out, "[{status}] {:>2}. {}: {}", r.id, r.title, r.detail.replace('\n', "; "))?;
        }
        let passed = results.iter().filter(|r| r.passed).count();
        writeln!(out, "{passed}/{} passed", results.len())?;
    }
    Ok(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_MISMATCH })
}

pub(super) fn finite_presentation(
    doc: &DslDocument,
    name: &str,
    scan_to: u32,
    f: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let r = ring(doc, name)?;
    let from = r.top_degree() + 1;
    let found = r.finite_generating_set(from, scan_to).map_err(|e| Failure::input(format!("ring `{name}`: {e}")))?;
    let text: Vec<String> =
        found.into_iter().map(|m| r.presentation().format_polynomial(&IntPolynomial::monomial(1, m))).collect();
    match f {
        Format::Json => json(out, &text)?,
        Format::Text => {
            writeln!(out, "extra relations in degrees {from}..={scan_to}:")?;
            for t in &text {
                writeln!(out, "  {t}")?;
            }
        }
        Format::Latex => writeln!(out, "{}", text.iter().map(|t| format!("${t}$")).collect::<Vec<_>>().join(", "))?,
    }
    Ok(EXIT_OK)
}

pub(super) fn duality(doc: &DslDocument, name: &str, f: Format, out: &mut dyn Write) -> CmdResult {
    if f == Format::Latex {
        return Err(no_latex("duality"));
    }
    let r = ring(doc, name)?;
    let top = r.top_degree();
    #[derive(Serialize)]
    struct Row {
        degree: u32,
        dual: u32,
        matrix: Vec<Vec<String>>,
        unimodular: bool,
    }
    let mut rows = Vec::new();
    for k in 0..=top / 2 {
        if r.group(k).rank() == 0 && r.group(top - k).rank() == 0 {
            continue;
        }
        let p = r.duality_pairing(k).map_err(|e| Failure { code: EXIT_MISMATCH, message: format!("ring `{name}`: {e}") })?;
        let matrix = (0..p.matrix.rows()).map(|i| p.matrix.row(i).iter().map(ToString::to_string).collect()).collect();
        rows.push(Row { degree: k, dual: top - k, matrix, unimodular: p.unimodular });
    }
    match f {
        Format::Json => json(out, &rows)?,
        _ => {
            for row in &rows {
                let m: Vec<String> = row.matrix.iter().map(|r| format!("[{}]", r.join(" "))).collect();
                let verdict = if row.unimodular { "unimodular" } else { "NOT unimodular" };
                writeln!(out, "H^{} x H^{} -> H^{top}: {} {verdict}", row.degree, row.dual, m.join(" "))?;
            }
        }
    }
    Ok(if rows.iter().all(|r| r.unimodular) { EXIT_OK } else { EXIT_MISMATCH })
}

pub(super) fn mod2_dims(doc: &DslDocument, name: &str, f: Format, out: &mut dyn Write) -> CmdResult {
    let r = ring(doc, name)?;
    let dims = verify::mod2_dims(&r.groups());
    match f {
        Format::Json => json(out, &dims)?,
        Format::Text => {
            for (k, d) in dims.iter().enumerate() {
                writeln!(out, "{k}: {d}")?;
            }
        }
        Format::Latex => {
            let terms: Vec<String> = dims
                .iter()
                .enumerate()
                .filter(|(_, d)| **d > 0)
                .map(|(k, d)| match (k, d) {
                    (0, d) => d.to_string(),
                    (k, 1) => format!("t^{{{k}}}"),
                    (k, d) => format!("{d}t^{{{k}}}"),
                })
                .collect();
            writeln!(out, "${}$", terms.join(" + "))?;
        }
    }
    Ok(EXIT_OK)
}
