//! Bounded exhaustive search over collapse prefixes.
//!
//! Every sequence of elementary collapses (any codimension) of length at most
//! `max_depth` is explored by iterative deepening, with states memoised by a
//! 128-bit Zobrist hash of the surviving faces. A predicate flags violating
//! states; the first violating prefix found is returned.

use std::collections::HashMap;

use crate::collapse::CollapseStep;
use crate::complex::{Face, SimplicialComplex};
use crate::state::CollapseState;

#[derive(Clone, Copy, Debug)]
pub struct PrefixSearchConfig {
    pub max_depth: usize,
    pub node_budget: u64,
}

impl Default for PrefixSearchConfig {
    fn default() -> Self {
        PrefixSearchConfig { max_depth: 6, node_budget: 200_000 }
    }
}

#[derive(Clone, Debug)]
pub struct PrefixReport {
    pub max_depth: usize,
    /// Every prefix of at most this length was checked.
    pub complete_depth: usize,
    pub nodes: u64,
    pub budget_hit: bool,
    pub counterexample: Option<Vec<CollapseStep>>,
}

impl PrefixReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl std::fmt::Display for PrefixReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.counterexample {
            Some(c) => write!(f, "counterexample of length {} ({} nodes)", c.len(), self.nodes),
            None => {
                write!(f, "no counterexample up to depth {} of {} ({} nodes", self.complete_depth, self.max_depth, self.nodes)?;
                if self.budget_hit {
                    write!(f, ", node budget hit")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Read-only view of a state reached by a prefix.
pub struct PrefixView<'a> {
    st: &'a CollapseState,
    steps: &'a [CollapseStep],
}

impl PrefixView<'_> {
    pub fn contains(&self, f: &Face) -> bool {
        self.st.contains(f)
    }

    /// Alive faces having `f` as a facet.
    pub fn cofaces(&self, f: &Face) -> Vec<Face> {
        match self.st.id(f) {
            Some(i) if self.st.is_alive(i) => self.st.cofaces(i).map(|j| self.st.face(j).clone()).collect(),
            _ => Vec::new(),
        }
    }

    pub fn steps(&self) -> &[CollapseStep] {
        self.steps
    }

    pub fn alive_count(&self) -> usize {
        self.st.alive_count()
    }
}

struct Dfs<'p, P> {
    st: CollapseState,
    path: Vec<CollapseStep>,
    memo: HashMap<u128, usize>,
    nodes: u64,
    budget: u64,
    budget_hit: bool,
    violates: &'p mut P,
}

impl<P: FnMut(&PrefixView) -> bool> Dfs<'_, P> {
    fn bad(&mut self) -> bool {
        let view = PrefixView { st: &self.st, steps: &self.path };
        (self.violates)(&view)
    }

    /// True if a violation was found below the current state.
    fn go(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return false;
        }
        if self.memo.get(&self.st.hash()).is_some_and(|&r| r >= remaining) {
            return false;
        }
        let moves: Vec<(u32, u32)> = self.st.free_ids().collect();
        for (s, t) in moves {
            if self.nodes >= self.budget {
                self.budget_hit = true;
                return false;
            }
            self.nodes += 1;
            let step = CollapseStep::new(self.st.face(s).clone(), self.st.face(t).clone());
            let (tau, removed) = self.st.collapse(s).expect("free face");
            self.path.push(step);
            if self.bad() || self.go(remaining - 1) {
                return true;
            }
            self.path.pop();
            self.st.restore(tau, &removed);
            if self.budget_hit {
                return false;
            }
        }
        self.memo.insert(self.st.hash(), remaining);
        false
    }
}

/// Searches all collapse prefixes of `k` up to `cfg.max_depth` for a state
/// where `violates` holds. The initial state is checked too.
pub fn search_prefixes<P>(k: &SimplicialComplex, cfg: PrefixSearchConfig, mut violates: P) -> PrefixReport
where
    P: FnMut(&PrefixView) -> bool,
{
    let mut dfs = Dfs {
        st: CollapseState::new(k),
        path: Vec::new(),
        memo: HashMap::new(),
        nodes: 0,
        budget: cfg.node_budget,
        budget_hit: false,
        violates: &mut violates,
    };
    let mut report =
        PrefixReport { max_depth: cfg.max_depth, complete_depth: 0, nodes: 0, budget_hit: false, counterexample: None };
    if dfs.bad() {
        report.counterexample = Some(Vec::new());
        return report;
    }
    for depth in 1..=cfg.max_depth {
        if dfs.go(depth) {
            report.counterexample = Some(dfs.path.clone());
            break;
        }
        if dfs.budget_hit {
            break;
        }
        report.complete_depth = depth;
    }
    report.nodes = dfs.nodes;
    report.budget_hit = dfs.budget_hit;
    report
}

/// Checks a given prefix: it must replay on `k`, and the predicate is
/// evaluated after each step. Returns the index of the first violating state
/// (0 is the initial state), or `None`.
pub fn first_violation<P>(k: &SimplicialComplex, steps: &[CollapseStep], mut violates: P) -> crate::Result<Option<usize>>
where
    P: FnMut(&PrefixView) -> bool,
{
    let mut st = CollapseState::new(k);
    for i in 0..=steps.len() {
        if violates(&PrefixView { st: &st, steps: &steps[..i] }) {
            return Ok(Some(i));
        }
        if i < steps.len() {
            let s = &steps[i];
            st.apply_step(&s.sigma, &s.tau)
                .map_err(|reason| crate::Error::InvalidStep { index: i, reason })?;
        }
    }
    Ok(None)
}
