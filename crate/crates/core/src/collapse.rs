//! Collapse certificates, constraint complexes, the greedy codimension-one
//! collapser and exact deciders.

use std::collections::HashSet;

use crate::complex::{Face, SimplicialComplex};
use crate::error::Error;
use crate::state::CollapseState;
use crate::Result;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CollapseStep {
    pub sigma: Face,
    pub tau: Face,
}

impl CollapseStep {
    pub fn new(sigma: Face, tau: Face) -> Self {
        CollapseStep { sigma, tau }
    }
}

/// Ordered collapse steps together with the complex they are claimed to reach.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CollapseCertificate {
    pub steps: Vec<CollapseStep>,
    pub target: SimplicialComplex,
}

impl CollapseCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Γ(M, L): faces of L contained in some face of M outside L.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintComplex {
    pub gamma: SimplicialComplex,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecisionOutcome {
    Collapsible(CollapseCertificate),
    NotCollapsible,
    Exhausted { budget: u64 },
}

impl DecisionOutcome {
    pub fn is_collapsible(&self) -> bool {
        matches!(self, DecisionOutcome::Collapsible(_))
    }
}

/// Replays `steps` from `k`, failing at the first illegal step.
pub fn replay(k: &SimplicialComplex, steps: &[CollapseStep]) -> Result<SimplicialComplex> {
    let mut st = CollapseState::new(k);
    for (index, s) in steps.iter().enumerate() {
        st.apply_step(&s.sigma, &s.tau)
            .map_err(|reason| Error::InvalidStep { index, reason })?;
    }
    Ok(st.to_complex())
}

/// Final complex of a certificate. Errors if a step is illegal or the result
/// differs from the certificate's target.
pub fn apply_certificate(k: &SimplicialComplex, cert: &CollapseCertificate) -> Result<SimplicialComplex> {
    let end = replay(k, &cert.steps)?;
    if end != cert.target {
        return Err(Error::TargetMismatch);
    }
    Ok(end)
}

/// `Ok` if the certificate is valid; otherwise the error names the failing step.
pub fn check_certificate(k: &SimplicialComplex, cert: &CollapseCertificate) -> Result<()> {
    apply_certificate(k, cert).map(|_| ())
}

pub fn verify_certificate(k: &SimplicialComplex, cert: &CollapseCertificate) -> bool {
    check_certificate(k, cert).is_ok()
}

pub fn constraint_complex(m: &SimplicialComplex, l: &SimplicialComplex) -> Result<ConstraintComplex> {
    if let Some(f) = l.faces().iter().find(|f| !m.contains(f)) {
        return Err(Error::NotSubcomplex(f.clone()));
    }
    let mut gens = Vec::new();
    for eta in m.faces().iter().filter(|f| !l.contains(f)) {
        gens.extend(eta.subfaces().into_iter().filter(|t| l.contains(t)));
    }
    Ok(ConstraintComplex { gamma: SimplicialComplex::from_generators(gens.iter()) })
}

/// Lifts a collapse of the subcomplex `l` to `m`. The steps are reused
/// unchanged; the target becomes L' ∪ (M ∖ L).
pub fn lift_collapse(
    m: &SimplicialComplex,
    l: &SimplicialComplex,
    cert_l: &CollapseCertificate,
) -> Result<CollapseCertificate> {
    let gamma = constraint_complex(m, l)?.gamma;
    let l_end = apply_certificate(l, cert_l)?;
    if let Some(f) = gamma.faces().iter().find(|f| !l_end.contains(f)) {
        return Err(Error::ConstraintViolated(f.clone()));
    }
    let mut faces = l_end.faces().clone();
    faces.extend(m.difference(l));
    let target = SimplicialComplex::from_faces(faces)?;
    Ok(CollapseCertificate { steps: cert_l.steps.clone(), target })
}

/// Greedy codimension-one collapse with the lexicographically smallest
/// eligible face chosen at every step.
pub fn greedy_codim1(k: &SimplicialComplex) -> (SimplicialComplex, CollapseCertificate) {
    greedy_codim1_by(k, |_| 0)
}

/// Greedy codimension-one collapse; `choose` picks an index into the sorted
/// list of currently eligible free (d−1)-faces.
pub fn greedy_codim1_by(
    k: &SimplicialComplex,
    mut choose: impl FnMut(&[Face]) -> usize,
) -> (SimplicialComplex, CollapseCertificate) {
    let mut st = CollapseState::new(k);
    let mut steps = Vec::new();
    if let Some(d) = k.dim().filter(|&d| d >= 1) {
        loop {
            let eligible: Vec<(u32, u32)> =
                st.free_ids().filter(|&(s, _)| st.face(s).dim() == d - 1).collect();
            if eligible.is_empty() {
                break;
            }
            let faces: Vec<Face> = eligible.iter().map(|&(s, _)| st.face(s).clone()).collect();
            let (s, t) = eligible[choose(&faces).min(eligible.len() - 1)];
            steps.push(CollapseStep::new(st.face(s).clone(), st.face(t).clone()));
            st.collapse(s);
        }
    }
    let target = st.to_complex();
    (target.clone(), CollapseCertificate { steps, target })
}

/// Collapses `k` by codimension-one steps as far as possible without touching
/// `keep`, optionally only removing faces of `region`. Higher-dimensional free
/// faces go first, ties broken lexicographically. The certificate's target is
/// wherever it stops.
pub fn collapse_onto(
    k: &SimplicialComplex,
    keep: &SimplicialComplex,
    region: Option<&SimplicialComplex>,
) -> CollapseCertificate {
    let mut st = CollapseState::new(k);
    let mut steps = Vec::new();
    loop {
        let best = st
            .free_ids()
            .filter(|&(s, t)| {
                let (fs, ft) = (st.face(s), st.face(t));
                ft.dim() == fs.dim() + 1 && !keep.contains(fs) && region.is_none_or(|r| r.contains(ft))
            })
            .min_by(|a, b| {
                let (fa, fb) = (st.face(a.0), st.face(b.0));
                fb.dim().cmp(&fa.dim()).then_with(|| fa.cmp(fb))
            });
        let Some((s, t)) = best else { break };
        steps.push(CollapseStep::new(st.face(s).clone(), st.face(t).clone()));
        st.collapse(s);
    }
    CollapseCertificate { steps, target: st.to_complex() }
}

#[derive(Clone, Copy, Debug)]
pub struct DeciderOptions {
    /// Maximum number of search nodes expanded.
    pub budget: u64,
    /// Remember complexes already shown to be dead ends.
    pub memo: bool,
}

impl Default for DeciderOptions {
    fn default() -> Self {
        DeciderOptions { budget: 1_000_000, memo: true }
    }
}

struct Search<'a> {
    st: CollapseState,
    goal: &'a dyn Fn(&CollapseState) -> bool,
    memo: Option<HashSet<Vec<u64>>>,
    nodes: u64,
    budget: u64,
    path: Vec<CollapseStep>,
}

struct OutOfBudget;

impl Search<'_> {
    fn dfs(&mut self) -> Result<bool, OutOfBudget> {
        if (self.goal)(&self.st) {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OutOfBudget);
        }
        let key = self.memo.as_ref().map(|_| self.st.alive_key());
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if memo.contains(key) {
                return Ok(false);
            }
        }
        let choices: Vec<(u32, u32)> = self.st.free_ids().collect();
        for (s, t) in choices {
            let step = CollapseStep::new(self.st.face(s).clone(), self.st.face(t).clone());
            let (tau, removed) = self.st.collapse(s).expect("free face");
            self.path.push(step);
            let found = self.dfs();
            if matches!(found, Ok(true)) {
                return found;
            }
            self.path.pop();
            self.st.restore(tau, &removed);
            found?;
        }
        if let (Some(memo), Some(key)) = (&mut self.memo, key) {
            memo.insert(key);
        }
        Ok(false)
    }
}

fn run_search(
    k: &SimplicialComplex,
    goal: &dyn Fn(&CollapseState) -> bool,
    opts: DeciderOptions,
) -> DecisionOutcome {
    let mut search = Search {
        st: CollapseState::new(k),
        goal,
        memo: opts.memo.then(HashSet::new),
        nodes: 0,
        budget: opts.budget,
        path: Vec::new(),
    };
    match search.dfs() {
        Ok(true) => DecisionOutcome::Collapsible(CollapseCertificate {
            steps: search.path,
            target: search.st.to_complex(),
        }),
        Ok(false) => DecisionOutcome::NotCollapsible,
        Err(OutOfBudget) => DecisionOutcome::Exhausted { budget: opts.budget },
    }
}

/// Exact collapsibility decider: backtracking over free faces in
/// lexicographic order, with a table of dead-end complexes.
pub fn decide_collapsible(k: &SimplicialComplex, budget: u64) -> DecisionOutcome {
    decide_collapsible_with(k, DeciderOptions { budget, memo: true })
}

pub fn decide_collapsible_with(k: &SimplicialComplex, opts: DeciderOptions) -> DecisionOutcome {
    // Collapses preserve χ, so χ ≠ 1 rules out reaching a point.
    if k.is_empty() || k.euler_characteristic() != 1 {
        return DecisionOutcome::NotCollapsible;
    }
    run_search(k, &|st| st.alive_count() == 1, opts)
}

/// Does `k` collapse to a complex of dimension at most `dim`? For
/// `dim = dim K − 1` the greedy collapser decides this exactly.
pub fn decide_collapses_to_dim(k: &SimplicialComplex, dim: usize, budget: u64) -> DecisionOutcome {
    let kd = k.dim().unwrap_or(0);
    if kd <= dim {
        return DecisionOutcome::Collapsible(CollapseCertificate { steps: vec![], target: k.clone() });
    }
    if kd == dim + 1 {
        let (end, cert) = greedy_codim1(k);
        return if end.dim().unwrap_or(0) <= dim {
            DecisionOutcome::Collapsible(cert)
        } else {
            DecisionOutcome::NotCollapsible
        };
    }
    run_search(
        k,
        &move |st| st.dim().unwrap_or(0) <= dim,
        DeciderOptions { budget, memo: true },
    )
}
