//! Search for the homology torsion of `G~_{n,3}` under the constraints of
//! universal coefficients, Poincaré duality, the `S^2` bundle over it and the
//! `SO(3)` bundle over it.
//!
//! Unknowns are the homology torsion groups `T_k` for `4 ≤ k ≤ ⌊(d-1)/2⌋`,
//! `d = 3(n-3)`; the rest follow from `T_k ≅ T_{d-1-k}` and the fixed low
//! degrees `T_0 = T_1 = T_3 = 0`, `T_2 = Z_2`.

mod checks;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use checks::{so3_degree_vanishes, sphere_assembly};

use crate::abelian::AbelianGroup;
use crate::dsl::{DslDocument, ProblemDecl};
use crate::graded_ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("n = {0} is too small, need n ≥ 6")]
    SmallN(u32),
    #[error("betti list has {found} entries, expected {expected}")]
    BettiLength { expected: usize, found: usize },
    #[error("sphere target '{0}' is not a ring in the document")]
    UnknownTarget(String),
    #[error("assignment has no value for T_{0}")]
    Incomplete(u32),
    #[error("candidate list is empty")]
    NoCandidates,
}

/// The default finite search space for each unknown.
pub fn default_candidates() -> Vec<AbelianGroup> {
    ["0", "Z_2", "Z_3", "Z_4", "Z_2 + Z_2"].iter().map(|s| s.parse().expect("valid group")).collect()
}

/// Extra candidates for the robustness check.
pub fn extended_candidates() -> Vec<AbelianGroup> {
    let mut c = default_candidates();
    c.push("Z_9".parse().expect("valid group"));
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionProblem {
    pub name: String,
    pub n: u32,
    pub betti: Vec<usize>,
    /// Known `dim H^k(G; Z_2)`.
    pub mod2_dims: BTreeMap<u32, usize>,
    /// Cohomology of the total space of the `S^2` bundle, if used.
    pub sphere_target: Option<Vec<AbelianGroup>>,
    /// Degrees `N` where the `SO(3)` bundle's total space has `H^N = 0`,
    /// checked in this order.
    pub so3_vanishing: Vec<u32>,
    pub candidates: Vec<AbelianGroup>,
}

impl TorsionProblem {
    pub fn new(name: &str, n: u32, betti: Vec<usize>) -> Result<Self, SolverError> {
        if n < 6 {
            return Err(SolverError::SmallN(n));
        }
        let expected = (3 * (n - 3) + 1) as usize;
        if betti.len() != expected {
            return Err(SolverError::BettiLength { expected, found: betti.len() });
        }
        Ok(TorsionProblem {
            name: name.to_string(),
            n,
            betti,
            mod2_dims: BTreeMap::new(),
            sphere_target: None,
            so3_vanishing: Vec::new(),
            candidates: default_candidates(),
        })
    }

    /// Builds the problem from a declaration, resolving the sphere target
    /// against the rings of `doc`.
    pub fn from_decl(decl: &ProblemDecl, doc: &DslDocument) -> Result<Self, SolverError> {
        let mut p = TorsionProblem::new(&decl.name, decl.n, decl.betti.clone())?;
        p.mod2_dims = decl.mod2.clone();
        p.so3_vanishing = decl.so3_vanish.clone();
        if let Some(c) = &decl.candidates {
            p.candidates = c.clone();
        }
        if let Some(t) = &decl.sphere_target {
            let ring = doc.ring(t).ok_or_else(|| SolverError::UnknownTarget(t.clone()))?;
            p.sphere_target = Some(GradedRing::new(ring.clone()).groups());
        }
        Ok(p)
    }

    pub fn dimension(&self) -> u32 {
        3 * (self.n - 3)
    }

    /// Degrees of the free unknowns.
    pub fn unknowns(&self) -> std::ops::RangeInclusive<u32> {
        4..=(self.dimension() - 1) / 2
    }
}

/// Values of the unknown `T_k`; the other degrees follow.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TorsionAssignment {
    pub torsion: BTreeMap<u32, AbelianGroup>,
}

impl TorsionAssignment {
    pub fn new(entries: impl IntoIterator<Item = (u32, AbelianGroup)>) -> Self {
        TorsionAssignment { torsion: entries.into_iter().collect() }
    }

    /// `T_k` for every `k` in `0..=d`, using the fixed low degrees and duality.
    pub fn homology_torsion(&self, d: u32) -> Result<Vec<AbelianGroup>, SolverError> {
        let fixed = |k: u32| match k {
            2 => Some(AbelianGroup::cyclic(2)),
            0 | 1 | 3 => Some(AbelianGroup::trivial()),
            _ => None,
        };
        (0..=d)
            .map(|k| {
                if k == d {
                    return Ok(AbelianGroup::trivial());
                }
                let low = k.min(d - 1 - k);
                if let Some(g) = fixed(low) {
                    return Ok(g);
                }
                self.torsion.get(&low).cloned().ok_or(SolverError::Incomplete(low))
            })
            .collect()
    }
}

impl fmt::Display for TorsionAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().map(|(k, g)| format!("T_{k} = {g}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// `H^k = Z^{b_k} ⊕ T_{k-1}`.
pub fn cohomology_from(assignment: &TorsionAssignment, betti: &[usize]) -> Result<Vec<AbelianGroup>, SolverError> {
    let d = betti.len() as u32 - 1;
    let t = assignment.homology_torsion(d)?;
    Ok(betti
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let free = AbelianGroup::free(b);
            if k == 0 {
                free
            } else {
                free.direct_sum(&t[k - 1])
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Constraint {
    UctMod2,
    Duality,
    SphereAssembly,
    So3,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::UctMod2 => "uct-mod2",
            Constraint::Duality => "duality",
            Constraint::SphereAssembly => "sphere-assembly",
            Constraint::So3 => "so3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintResult {
    pub constraint: Constraint,
    pub passed: bool,
    pub degree: Option<u32>,
    pub reason: String,
}

impl ConstraintResult {
    fn pass(constraint: Constraint) -> Self {
        ConstraintResult { constraint, passed: true, degree: None, reason: String::new() }
    }

    fn fail(constraint: Constraint, degree: u32, reason: String) -> Self {
        ConstraintResult { constraint, passed: false, degree: Some(degree), reason }
    }
}

impl fmt::Display for ConstraintResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.passed, self.degree) {
            (true, _) => write!(f, "{}: pass", self.constraint),
            (false, Some(k)) => write!(f, "{}: fail at degree {k}: {}", self.constraint, self.reason),
            (false, None) => write!(f, "{}: fail: {}", self.constraint, self.reason),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub results: Vec<ConstraintResult>,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&ConstraintResult> {
        self.results.iter().find(|r| !r.passed)
    }
}

pub fn check_duality(assignment: &TorsionAssignment, problem: &TorsionProblem) -> ConstraintResult {
    let d = problem.dimension();
    for (&k, g) in &assignment.torsion {
        if k + 1 > d {
            continue;
        }
        if let Some(dual) = assignment.torsion.get(&(d - 1 - k)) {
            if dual != g {
                return ConstraintResult::fail(
                    Constraint::Duality,
                    k,
                    format!("T_{k} = {g} but T_{} = {dual}", d - 1 - k),
                );
            }
        }
    }
    ConstraintResult::pass(Constraint::Duality)
}

pub fn check_uct_mod2(assignment: &TorsionAssignment, problem: &TorsionProblem) -> Result<ConstraintResult, SolverError> {
    let t = assignment.homology_torsion(problem.dimension())?;
    for (&k, &expected) in &problem.mod2_dims {
        let Some(&b) = problem.betti.get(k as usize) else { continue };
        let below = if k == 0 { 0 } else { t[k as usize - 1].tor_z2() };
        let dim = b + t[k as usize].tensor_z2() + below;
        if dim != expected {
            return Ok(ConstraintResult::fail(
                Constraint::UctMod2,
                k,
                format!("dim H^{k}(;Z_2) would be {dim}, known to be {expected}"),
            ));
        }
    }
    Ok(ConstraintResult::pass(Constraint::UctMod2))
}

pub fn check_sphere_assembly(
    assignment: &TorsionAssignment,
    problem: &TorsionProblem,
) -> Result<ConstraintResult, SolverError> {
    let Some(target) = &problem.sphere_target else { return Ok(ConstraintResult::pass(Constraint::SphereAssembly)) };
    let h = cohomology_from(assignment, &problem.betti)?;
    Ok(match sphere_assembly(&h, target) {
        Ok(()) => ConstraintResult::pass(Constraint::SphereAssembly),
        Err(n) => {
            let w = target.get(n as usize).cloned().unwrap_or_default();
            ConstraintResult::fail(
                Constraint::SphereAssembly,
                n,
                format!("no differential d_3 is compatible with H^{n} of the sphere bundle being {w}"),
            )
        }
    })
}

pub fn check_so3(assignment: &TorsionAssignment, problem: &TorsionProblem) -> Result<ConstraintResult, SolverError> {
    if problem.so3_vanishing.is_empty() {
        return Ok(ConstraintResult::pass(Constraint::So3));
    }
    let h = cohomology_from(assignment, &problem.betti)?;
    for &n in &problem.so3_vanishing {
        if !so3_degree_vanishes(&h, n) {
            return Ok(ConstraintResult::fail(
                Constraint::So3,
                n,
                format!("the SO(3) bundle page cannot vanish in total degree {n}"),
            ));
        }
    }
    Ok(ConstraintResult::pass(Constraint::So3))
}

/// Runs every constraint, cheapest first.
pub fn verify(assignment: &TorsionAssignment, problem: &TorsionProblem) -> Result<ConstraintReport, SolverError> {
    Ok(ConstraintReport {
        results: vec![
            check_uct_mod2(assignment, problem)?,
            check_duality(assignment, problem),
            check_sphere_assembly(assignment, problem)?,
            check_so3(assignment, problem)?,
        ],
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub skip_so3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub assignment: TorsionAssignment,
    pub failure: ConstraintResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    /// Surviving assignments in sorted order.
    pub solutions: Vec<TorsionAssignment>,
    /// Every rejected assignment with the first constraint it failed.
    pub eliminated: Vec<Elimination>,
}

impl SolveOutcome {
    /// How many assignments each constraint rejected, keyed by constraint
    /// and degree.
    pub fn elimination_counts(&self) -> BTreeMap<(Constraint, u32), usize> {
        let mut counts = BTreeMap::new();
        for e in &self.eliminated {
            *counts.entry((e.failure.constraint, e.failure.degree.unwrap_or(0))).or_insert(0) += 1;
        }
        counts
    }
}

fn first_failure(
    a: &TorsionAssignment,
    problem: &TorsionProblem,
    options: &SolveOptions,
) -> Result<Option<ConstraintResult>, SolverError> {
    let r = check_uct_mod2(a, problem)?;
    if !r.passed {
        return Ok(Some(r));
    }
    let r = check_sphere_assembly(a, problem)?;
    if !r.passed {
        return Ok(Some(r));
    }
    if !options.skip_so3 {
        let r = check_so3(a, problem)?;
        if !r.passed {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Exhaustive search over the candidates for every unknown. Assignments are
/// duality-closed by construction.
pub fn solve(problem: &TorsionProblem, options: &SolveOptions) -> Result<SolveOutcome, SolverError> {
    if problem.candidates.is_empty() {
        return Err(SolverError::NoCandidates);
    }
    let unknowns: Vec<u32> = problem.unknowns().collect();
    let c = problem.candidates.len();
    let total = c.pow(unknowns.len() as u32);
    let mut solutions = Vec::new();
    let mut eliminated = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let a = TorsionAssignment::new(unknowns.iter().rev().map(|&k| {
            let g = problem.candidates[rest % c].clone();
            rest /= c;
            (k, g)
        }));
        match first_failure(&a, problem, options)? {
            None => solutions.push(a),
            Some(failure) => eliminated.push(Elimination { assignment: a, failure }),
        }
    }
    solutions.sort();
    Ok(SolveOutcome { solutions, eliminated })
}
