//! Recursion depth and what it bounds.
//!
//! The recursion depth of a description is the largest number of recursion
//! nodes on a root-to-leaf path. A description of depth `n` computes a
//! function in the Grzegorczyk class `𝓔^{n+1}`. The bound is reported, not
//! verified.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gen;
use crate::rewrite::{catalog, one_step_rewrites, prune_with_proof, Direction, Group, GroupSet, Proof, Rule, Step};
use crate::stdlib::Scheme;
use crate::term::{Position, Term};

/// Leaves count 0; a recursion node adds 1 to the maximum of its children.
/// Macro nodes add nothing, so expanding macros never changes the result.
pub fn rdepth(t: &Term) -> usize {
    t.rdepth()
}

/// A level `𝓔^index` of the Grzegorczyk hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GrzClass {
    pub index: usize,
}

impl GrzClass {
    pub fn report(&self) -> String {
        format!("function is in {self}")
    }

    /// Plain-ASCII form, `E^n`.
    pub fn ascii(&self) -> String {
        format!("E^{}", self.index)
    }
}

impl fmt::Display for GrzClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "𝓔^{}", self.index)
    }
}

pub fn grz_bound(t: &Term) -> GrzClass {
    GrzClass { index: rdepth(t) + 1 }
}

/// An upper bound on the least recursion depth in a term's class.
#[derive(Debug, Clone)]
pub struct MinRdepth {
    pub bound: usize,
    pub witness: Term,
    /// Rewrites from the input to the witness.
    pub proof: Proof,
    pub states_explored: usize,
}

/// Breadth-first exploration of the rewrite graph from `t`, up to `budget`
/// distinct terms, keeping the first term of least recursion depth. With
/// group I enabled the pruned form is tried first.
pub fn min_rdepth(t: &Term, budget: usize, groups: GroupSet) -> MinRdepth {
    let mut parents: HashMap<Term, Option<(Term, Step)>> = HashMap::new();
    parents.insert(t.clone(), None);
    let mut queue = VecDeque::from([t.clone()]);
    let mut best = t.clone();

    if groups.contains(Group::I) {
        let pruned = prune_with_proof(t);
        let mut cur = t.clone();
        for step in &pruned.steps {
            let next = crate::rewrite::replay(&cur, std::slice::from_ref(step)).expect("prune steps replay");
            parents.entry(next.clone()).or_insert_with(|| Some((cur.clone(), step.clone())));
            cur = next;
        }
        if cur.rdepth() < best.rdepth() {
            best = cur.clone();
        }
        if cur != *t {
            queue.push_back(cur);
        }
    }

    let max_size = 2 * t.size() + 24;
    'search: while let Some(u) = queue.pop_front() {
        for rw in one_step_rewrites(&u, groups) {
            if parents.len() >= budget {
                break 'search;
            }
            if rw.result.size() > max_size || parents.contains_key(&rw.result) {
                continue;
            }
            let step = Step::new(&u, rw.pos.clone(), rw.rule, rw.dir, &rw.replacement);
            parents.insert(rw.result.clone(), Some((u.clone(), step)));
            if rw.result.rdepth() < best.rdepth() {
                best = rw.result.clone();
            }
            queue.push_back(rw.result);
        }
    }

    let mut steps = Vec::new();
    let mut cur = best.clone();
    while let Some(Some((parent, step))) = parents.get(&cur) {
        steps.push(step.clone());
        cur = parent.clone();
    }
    steps.reverse();
    MinRdepth {
        bound: best.rdepth(),
        witness: best.clone(),
        proof: Proof { start: t.clone(), end: best, steps },
        states_explored: parents.len(),
    }
}

/// A rewrite step that changed recursion depth against the expectation.
#[derive(Debug, Clone)]
pub struct Violation {
    pub term: Term,
    pub rule: &'static str,
    pub pos: Position,
    pub dir: Direction,
    pub before: usize,
    pub after: usize,
}

#[derive(Debug, Clone, Default)]
pub struct DepthRespectReport {
    pub trials: usize,
    /// Group II steps checked for equal depth.
    pub coherence_steps: usize,
    /// Group I forward steps checked for non-increasing depth.
    pub pruning_steps: usize,
    pub violations: Vec<Violation>,
}

impl DepthRespectReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DepthRespectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "group II steps: {}", self.coherence_steps)?;
        writeln!(f, "group I steps: {}", self.pruning_steps)?;
        write!(f, "violations: {}", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(f, "\n  {} {} at {} on {}: {} -> {}", v.rule, v.dir, v.pos, v.term, v.before, v.after)?;
        }
        Ok(())
    }
}

/// Checks on random terms that every group II step keeps the recursion
/// depth and every group I step does not raise it. About four in ten terms
/// are rule instances in a random context so that the recursion rules get
/// exercised.
pub fn depth_respect_check(trials: usize, max_depth: usize, seed: u64) -> DepthRespectReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rules: Vec<&'static Rule> =
        catalog().iter().filter(|r| matches!(r.group, Group::I | Group::II)).collect();
    let groups = GroupSet::of(&[Group::I, Group::II]);
    let mut report = DepthRespectReport { trials, ..Default::default() };
    for _ in 0..trials {
        let t = gen::depth_check_term(&mut rng, max_depth, &rules);
        let before = t.rdepth();
        for rw in one_step_rewrites(&t, groups) {
            let after = rw.result.rdepth();
            let ok = match rw.rule.group {
                Group::II => {
                    report.coherence_steps += 1;
                    after == before
                }
                _ => {
                    report.pruning_steps += 1;
                    after <= before
                }
            };
            if !ok {
                report.violations.push(Violation {
                    term: t.clone(),
                    rule: rw.rule.name,
                    pos: rw.pos,
                    dir: rw.dir,
                    before,
                    after,
                });
            }
        }
    }
    report
}

/// Recursion depth of each member of a scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdepthProfile(pub BTreeMap<usize, usize>);

impl RdepthProfile {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,rdepth\n");
        for (n, d) in &self.0 {
            s.push_str(&format!("{n},{d}\n"));
        }
        s
    }
}

pub fn scheme_profile(s: &Scheme, n_max: usize) -> Result<RdepthProfile> {
    let mut out = BTreeMap::new();
    for n in s.min_index..=n_max {
        out.insert(n, rdepth(&s.generate(n)?));
    }
    Ok(RdepthProfile(out))
}
