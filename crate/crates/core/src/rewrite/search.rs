//! Bounded bidirectional search for equivalence proofs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::interp::{ext_equal_with_fuel, Tuple, Verdict};
use crate::term::{arity_of, subterm, Term};

use super::{canonicalizer, normalize, one_step_rewrites, GroupSet, Limits, Proof, Step};

#[derive(Debug, Clone)]
pub struct EquivOptions {
    /// Maximum number of distinct terms discovered, both sides together.
    pub budget: usize,
    pub groups: GroupSet,
    /// Seed of the extensional pre-check.
    pub seed: u64,
}

impl Default for EquivOptions {
    fn default() -> Self {
        EquivOptions { budget: 10_000, groups: GroupSet::standard(), seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivResult {
    Proved(Proof),
    Refuted { witness: Tuple, left: Tuple, right: Tuple },
    Unknown { states_explored: usize },
}

const PRECHECK_SAMPLES: usize = 20;
const PRECHECK_MAX_VALUE: u64 = 10;
const PRECHECK_FUEL: u64 = 1_000_000;
const CANON_STEPS: usize = 5_000;

/// How an entry was reached: from its parent by one step.
type Parents = HashMap<Term, Option<(Term, Step)>>;

struct Side {
    parents: Parents,
    frontier: Vec<Term>,
}

impl Side {
    fn plain(t: &Term) -> Side {
        Side { parents: HashMap::from([(t.clone(), None)]), frontier: vec![t.clone()] }
    }

    /// Seeds the side with `t` and the trail of its canonical form.
    fn seed(t: &Term, groups: GroupSet, max_size: usize) -> Side {
        let mut parents: Parents = HashMap::new();
        parents.insert(t.clone(), None);
        let mut frontier = vec![t.clone()];
        let limits = Limits { max_steps: CANON_STEPS, max_size };
        let mut prev = t.clone();
        for (next, step) in normalize(t, &canonicalizer(groups), limits) {
            if !parents.contains_key(&next) {
                parents.insert(next.clone(), Some((prev.clone(), step)));
            }
            prev = next;
        }
        if prev != *t {
            frontier.push(prev);
        }
        Side { parents, frontier }
    }

    /// Steps from the root of this side to `t`.
    fn path_to(&self, t: &Term) -> Vec<(Term, Step, Term)> {
        let mut out = Vec::new();
        let mut cur = t.clone();
        while let Some(Some((parent, step))) = self.parents.get(&cur) {
            out.push((parent.clone(), step.clone(), cur.clone()));
            cur = parent.clone();
        }
        out.reverse();
        out
    }
}

/// Builds the certificate for a meeting point `m` reached from both sides.
fn assemble(left: &Side, right: &Side, t1: &Term, t2: &Term, m: &Term) -> Proof {
    let mut steps: Vec<Step> = left.path_to(m).into_iter().map(|(_, s, _)| s).collect();
    for (before, step, after) in right.path_to(m).into_iter().rev() {
        // reverse the edge before -> after
        let rule = super::rule(step.rule).expect("catalog rule");
        let replacement = subterm(&before, &step.pos).expect("valid position");
        let mut back = Step::new(&after, step.pos.clone(), rule, step.dir.flip(), &replacement);
        if rule.oriented() {
            back.to = Some(replacement);
        }
        steps.push(back);
    }
    Proof { start: t1.clone(), end: t2.clone(), steps }
}

enum Search {
    Met(Term),
    Exhausted(usize),
}

/// Breadth-first search from both sides, expanding the smaller frontier,
/// until they meet or `budget` terms have been discovered.
fn bfs(sides: &mut [Side; 2], groups: GroupSet, max_size: usize, budget: usize) -> Search {
    let mut explored = sides[0].parents.len() + sides[1].parents.len();
    loop {
        let (a, b) = if sides[0].frontier.is_empty() && sides[1].frontier.is_empty() {
            return Search::Exhausted(explored);
        } else if sides[1].frontier.is_empty()
            || (!sides[0].frontier.is_empty() && sides[0].frontier.len() <= sides[1].frontier.len())
        {
            (0, 1)
        } else {
            (1, 0)
        };
        let frontier = std::mem::take(&mut sides[a].frontier);
        let mut next = Vec::new();
        for t in frontier {
            for rw in one_step_rewrites(&t, groups) {
                if rw.result.size() > max_size || sides[a].parents.contains_key(&rw.result) {
                    continue;
                }
                let step = Step::new(&t, rw.pos.clone(), rw.rule, rw.dir, &rw.replacement);
                sides[a].parents.insert(rw.result.clone(), Some((t.clone(), step)));
                explored += 1;
                if sides[b].parents.contains_key(&rw.result) {
                    return Search::Met(rw.result);
                }
                if explored >= budget {
                    return Search::Exhausted(explored);
                }
                next.push(rw.result);
            }
        }
        sides[a].frontier = next;
    }
}

/// Tries to prove `t1 ≈ t2` in the quotient by the enabled rule groups.
///
/// A randomized extensional pre-check refutes extensionally different
/// terms. A tenth of the budget goes to a plain bidirectional search, which
/// finds short proofs. If that fails, both terms are brought to a canonical
/// form by an oriented, recorded normalizer and the search restarts from
/// both trails with the rest of the budget. Neighbours are generated in
/// catalog order, then position order, so the outcome is deterministic.
pub fn equiv(t1: &Term, t2: &Term, opts: &EquivOptions) -> Result<EquivResult> {
    let (s1, s2) = (arity_of(t1)?, arity_of(t2)?);
    if s1 != s2 {
        return Err(Error::ArityMismatch {
            position: Default::default(),
            expected: s1.to_string(),
            found: s2.to_string(),
        });
    }
    match ext_equal_with_fuel(t1, t2, PRECHECK_SAMPLES, PRECHECK_MAX_VALUE, opts.seed, PRECHECK_FUEL) {
        Ok(Verdict::NotEqual { witness, left, right }) => {
            return Ok(EquivResult::Refuted { witness, left, right })
        }
        Ok(Verdict::Equal { .. }) | Err(Error::FuelExhausted { .. }) => {}
        Err(e) => return Err(e),
    }
    if t1 == t2 {
        return Ok(EquivResult::Proved(Proof { start: t1.clone(), end: t2.clone(), steps: vec![] }));
    }

    let max_size = 2 * t1.size().max(t2.size()) + 24;
    let quick = (opts.budget / 10).max(2);
    let mut sides = [Side::plain(t1), Side::plain(t2)];
    let spent = match bfs(&mut sides, opts.groups, max_size, quick) {
        Search::Met(m) => return Ok(EquivResult::Proved(assemble(&sides[0], &sides[1], t1, t2, &m))),
        Search::Exhausted(n) => n,
    };

    let mut sides = [Side::seed(t1, opts.groups, 4 * max_size), Side::seed(t2, opts.groups, 4 * max_size)];
    let max_size = max_size.max(sides.iter().flat_map(|s| s.frontier.iter()).map(Term::size).max().unwrap_or(0));

    // the canonical trails may already meet
    let meet = sides[0]
        .parents
        .keys()
        .filter(|t| sides[1].parents.contains_key(*t))
        .min_by_key(|t| (sides[0].path_to(t).len() + sides[1].path_to(t).len(), crate::surface::print(t)))
        .cloned();
    if let Some(m) = meet {
        return Ok(EquivResult::Proved(assemble(&sides[0], &sides[1], t1, t2, &m)));
    }
    match bfs(&mut sides, opts.groups, max_size, opts.budget.saturating_sub(spent)) {
        Search::Met(m) => Ok(EquivResult::Proved(assemble(&sides[0], &sides[1], t1, t2, &m))),
        Search::Exhausted(n) => Ok(EquivResult::Unknown { states_explored: spent + n }),
    }
}
