//! Rewriting with the coherence relations.
//!
//! [`one_step_rewrites`] enumerates every rule application in a term;
//! [`prune`] and [`simplify`] are oriented normalizers; [`equiv`] searches
//! for a chain of rewrites between two terms and returns a replayable
//! [`Proof`].

mod rules;
mod search;

pub use rules::{catalog, hexagon_left, hexagon_right, rule, Direction, Group, GroupSet, Rule};
pub use search::{equiv, EquivOptions, EquivResult};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::surface;
use crate::term::{replace_unchecked, subterm, Dir, Position, Term};

/// One rule application inside a term.
#[derive(Debug, Clone)]
pub struct Rewrite {
    pub rule: &'static Rule,
    pub pos: Position,
    pub dir: Direction,
    /// The new subterm at `pos`.
    pub replacement: Term,
    /// The whole rewritten term.
    pub result: Term,
}

/// All subterms with their positions, in pre-order.
pub fn subterms(t: &Term) -> Vec<(Position, Term)> {
    fn walk(t: &Term, path: &mut Vec<Dir>, out: &mut Vec<(Position, Term)>) {
        out.push((Position(path.clone()), t.clone()));
        if let Some((l, r)) = t.children() {
            path.push(Dir::Left);
            walk(l, path, out);
            path.pop();
            path.push(Dir::Right);
            walk(r, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(t, &mut Vec::new(), &mut out);
    out
}

/// Every match of every enabled rule at every position, both directions for
/// bidirectional rules. Ordered by catalog, then pre-order position, then
/// direction. Every result has the signature of `t`.
pub fn one_step_rewrites(t: &Term, groups: GroupSet) -> Vec<Rewrite> {
    let subs = subterms(t);
    let mut out = Vec::new();
    for rule in catalog().iter().filter(|r| groups.contains(r.group)) {
        for (pos, s) in &subs {
            for dir in [Direction::Forward, Direction::Backward] {
                for replacement in rule.apply(s, dir) {
                    let result = replace_unchecked(t, &pos.0, replacement.clone()).expect("valid position");
                    out.push(Rewrite { rule, pos: pos.clone(), dir, replacement, result });
                }
            }
        }
    }
    out
}

/// A single proof step. `to` pins the new subterm when the rule has several
/// results, or when an oriented rule is used right to left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub pos: Position,
    pub rule: &'static str,
    pub dir: Direction,
    pub to: Option<Term>,
}

impl Step {
    /// Builds the step that turns `before` into the term with `replacement`
    /// at `pos`, attaching `to` only when the default choice would differ.
    pub fn new(before: &Term, pos: Position, rule: &'static Rule, dir: Direction, replacement: &Term) -> Step {
        let s = subterm(before, &pos).expect("step position is valid");
        let default = rule.apply(&s, dir).into_iter().next();
        let to = (default.as_ref() != Some(replacement)).then(|| replacement.clone());
        Step { pos, rule: rule.name, dir, to }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "pos": self.pos.to_indices(),
            "rule": self.rule,
            "dir": self.dir.as_str(),
        });
        if let Some(to) = &self.to {
            v["to"] = Value::String(surface::print(to));
        }
        v
    }

    pub fn from_json(v: &Value, index: usize) -> Result<Step> {
        let bad = |m: &str| Error::Json { path: format!("$[{index}]"), message: m.to_string() };
        let pos = v["pos"]
            .as_array()
            .ok_or_else(|| bad("`pos` must be an array of 0/1"))?
            .iter()
            .map(|x| x.as_u64().filter(|x| *x <= 1).map(|x| x as u8))
            .collect::<Option<Vec<u8>>>()
            .and_then(|ix| Position::from_indices(&ix))
            .ok_or_else(|| bad("`pos` must be an array of 0/1"))?;
        let name = v["rule"].as_str().ok_or_else(|| bad("`rule` must be a string"))?;
        let rule = rules::rule(name).ok_or_else(|| Error::UnknownRule(name.to_string()))?;
        let dir = match v["dir"].as_str() {
            Some("fwd") => Direction::Forward,
            Some("bwd") => Direction::Backward,
            _ => return Err(bad("`dir` must be \"fwd\" or \"bwd\"")),
        };
        let to = match &v["to"] {
            Value::Null => None,
            Value::String(s) => Some(surface::parse(s)?),
            _ => return Err(bad("`to` must be a term string")),
        };
        Ok(Step { pos, rule: rule.name, dir, to })
    }
}

/// A chain of rewrites from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub start: Term,
    pub end: Term,
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The JSON list of steps.
    pub fn to_json(&self) -> String {
        steps_to_json(&self.steps)
    }

    /// Checks the certificate: replaying from `start` must reach `end`.
    pub fn verify(&self) -> Result<()> {
        let got = replay(&self.start, &self.steps)?;
        if got != self.end {
            return Err(Error::StepMismatch {
                index: self.steps.len(),
                detail: format!("replay ends at {got}, expected {}", self.end),
            });
        }
        Ok(())
    }
}

pub fn steps_to_json(steps: &[Step]) -> String {
    serde_json::to_string_pretty(&Value::Array(steps.iter().map(Step::to_json).collect())).expect("json")
}

pub fn steps_from_json(text: &str) -> Result<Vec<Step>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json { path: "$".into(), message: e.to_string() })?;
    let arr = v.as_array().ok_or_else(|| Error::Json { path: "$".into(), message: "expected an array".into() })?;
    arr.iter().enumerate().map(|(i, s)| Step::from_json(s, i)).collect()
}

fn apply_step(t: &Term, index: usize, step: &Step) -> Result<Term> {
    let mismatch = |detail: String| Error::StepMismatch { index, detail };
    let s = subterm(t, &step.pos).map_err(|_| mismatch(format!("no subterm at {}", step.pos)))?;
    let rule = rules::rule(step.rule).ok_or_else(|| Error::UnknownRule(step.rule.to_string()))?;
    let replacement = match &step.to {
        Some(to) => {
            let ok = rule.apply(&s, step.dir).contains(to) || rule.apply(to, step.dir.flip()).contains(&s);
            if !ok {
                return Err(mismatch(format!("{} {} does not relate {s} and {to}", step.rule, step.dir)));
            }
            to.clone()
        }
        None => rule
            .apply(&s, step.dir)
            .into_iter()
            .next()
            .ok_or_else(|| mismatch(format!("{} {} does not match {s}", step.rule, step.dir)))?,
    };
    Ok(replace_unchecked(t, &step.pos.0, replacement).expect("position checked"))
}

/// Applies the steps in order from `start`; fails at the first step that
/// does not match.
pub fn replay(start: &Term, steps: &[Step]) -> Result<Term> {
    steps.iter().enumerate().try_fold(start.clone(), |t, (i, s)| apply_step(&t, i, s))
}

/// An oriented rule used by a normalizer.
pub(crate) type Oriented = (&'static Rule, Direction);

fn oriented(names: &[(&str, Direction)]) -> Vec<Oriented> {
    names.iter().map(|(n, d)| (rules::rule(n).expect("catalog rule"), *d)).collect()
}

/// Finds the innermost, leftmost position where one of `strategy` applies.
fn find_redex(t: &Term, strategy: &[Oriented], path: &mut Vec<Dir>) -> Option<(Position, usize, Term)> {
    if let Some((l, r)) = t.children() {
        path.push(Dir::Left);
        let hit = find_redex(l, strategy, path);
        path.pop();
        if hit.is_some() {
            return hit;
        }
        path.push(Dir::Right);
        let hit = find_redex(r, strategy, path);
        path.pop();
        if hit.is_some() {
            return hit;
        }
    }
    strategy.iter().enumerate().find_map(|(n, (rule, dir))| {
        rule.apply(t, *dir).into_iter().next().map(|rep| (Position(path.clone()), n, rep))
    })
}

/// Limits for a normalization run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Limits {
    pub max_steps: usize,
    pub max_size: usize,
}

impl Limits {
    pub const NONE: Limits = Limits { max_steps: usize::MAX, max_size: usize::MAX };
}

/// Rewrites innermost-first with the oriented `strategy` until no redex is
/// left or a limit would be crossed. Returns every intermediate term and
/// the step leading to it.
pub(crate) fn normalize(t: &Term, strategy: &[Oriented], limits: Limits) -> Vec<(Term, Step)> {
    let mut trail = Vec::new();
    let mut cur = t.clone();
    while trail.len() < limits.max_steps {
        let Some((pos, n, rep)) = find_redex(&cur, strategy, &mut Vec::new()) else { break };
        let next = replace_unchecked(&cur, &pos.0, rep.clone()).expect("valid position");
        if next.size() > limits.max_size {
            break;
        }
        let (rule, dir) = strategy[n];
        let step = Step::new(&cur, pos, rule, dir, &rep);
        trail.push((next.clone(), step));
        cur = next;
    }
    trail
}

fn run(t: &Term, strategy: &[Oriented], limits: Limits) -> (Term, Vec<Step>) {
    let trail = normalize(t, strategy, limits);
    let end = trail.last().map(|(t, _)| t.clone()).unwrap_or_else(|| t.clone());
    (end, trail.into_iter().map(|(_, s)| s).collect())
}

fn pruning() -> Vec<Oriented> {
    use Direction::Forward as F;
    oriented(&[("I.1", F), ("I.2", F), ("I.3", F), ("I.4", F)])
}

/// Removes wasteful subcomputations: group I left to right, innermost
/// first, to a fixed point.
pub fn prune(t: &Term) -> Term {
    run(t, &pruning(), Limits::NONE).0
}

pub fn prune_with_proof(t: &Term) -> Proof {
    let (end, steps) = run(t, &pruning(), Limits::NONE);
    Proof { start: t.clone(), end, steps }
}

fn simplification() -> Vec<Oriented> {
    use Direction::Forward as F;
    oriented(&[
        ("I.1", F),
        ("I.2", F),
        ("I.3", F),
        ("I.4", F),
        ("II.1", F),
        ("II.2", F),
        ("II.4", F),
        ("II.7", F),
    ])
}

/// Oriented normalization: composition and bracket reassociated to the
/// right, identities and twist pairs cancelled, group I applied.
pub fn simplify(t: &Term) -> Term {
    run(t, &simplification(), Limits::NONE).0
}

pub fn simplify_with_proof(t: &Term) -> Proof {
    let (end, steps) = run(t, &simplification(), Limits::NONE);
    Proof { start: t.clone(), end, steps }
}

/// The normalizer the prover runs on both sides before searching: unfold
/// the compound macros, distribute over brackets, associate compositions to
/// the left so that projections meet the brackets they select from, and
/// prune. Restricted to the enabled groups.
pub(crate) fn canonicalizer(groups: GroupSet) -> Vec<Oriented> {
    use Direction::{Backward as B, Forward as F};
    let mut names: Vec<(&str, Direction)> = Vec::new();
    if groups.contains(Group::I) {
        names.extend([("I.1", F), ("I.2", F), ("I.3", F), ("I.4", F)]);
    }
    if groups.contains(Group::II) {
        names.extend([("II.2", F), ("II.7", F), ("II.1", B), ("II.4", F), ("II.3", F)]);
    }
    if groups.contains(Group::Defn) {
        names.extend([("Defn.Prod", F), ("Defn.BoxTimes", F), ("Defn.CircT", F)]);
    }
    oriented(&names)
}
