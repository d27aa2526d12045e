//! The rule catalog.
//!
//! Each rule is a pair of partial functions on terms: `fwd` matches the left
//! side at the root and builds the right side, `bwd` does the converse.
//! Matching is syntactic at the macro level. Candidates are filtered by the
//! caller so that only results with the redex's exact signature survive.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::term::{block, is_block_projection, is_identity, Op, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// Information-losing pruning relations. Oriented left to right.
    I,
    /// Coherence relations. Preserve recursion depth.
    II,
    /// Recursion with the identity step; off by default since it drops a loop.
    III,
    /// Macro definitions.
    Defn,
    /// Consequences of the others, offered as shortcuts for the search.
    Derived,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::I, Group::II, Group::III, Group::Defn, Group::Derived];

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Group::I => "I",
            Group::II => "II",
            Group::III => "III",
            Group::Defn => "Defn",
            Group::Derived => "Derived",
        };
        f.write_str(s)
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group, Error> {
        match s.trim() {
            "I" => Ok(Group::I),
            "II" => Ok(Group::II),
            "III" => Ok(Group::III),
            "Defn" | "defn" => Ok(Group::Defn),
            "Derived" | "derived" => Ok(Group::Derived),
            other => Err(Error::Invalid(format!("unknown rule group `{other}`"))),
        }
    }
}

/// A set of rule groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSet(u8);

impl GroupSet {
    pub const EMPTY: GroupSet = GroupSet(0);

    pub fn of(groups: &[Group]) -> GroupSet {
        GroupSet(groups.iter().fold(0, |acc, g| acc | g.bit()))
    }

    pub fn all() -> GroupSet {
        GroupSet::of(&Group::ALL)
    }

    /// Groups I, II and Defn: the relations that define the category of
    /// algorithms, plus macro unfolding.
    pub fn standard() -> GroupSet {
        GroupSet::of(&[Group::I, Group::II, Group::Defn])
    }

    pub fn contains(self, g: Group) -> bool {
        self.0 & g.bit() != 0
    }

    pub fn with(self, g: Group) -> GroupSet {
        GroupSet(self.0 | g.bit())
    }

    pub fn without(self, g: Group) -> GroupSet {
        GroupSet(self.0 & !g.bit())
    }

    /// Parses a comma-separated list such as `I,II,Defn`.
    pub fn parse(s: &str) -> Result<GroupSet, Error> {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(Group::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(|gs| GroupSet::of(&gs))
    }
}

impl Default for GroupSet {
    fn default() -> Self {
        GroupSet::standard()
    }
}

impl fmt::Display for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> =
            Group::ALL.iter().filter(|g| self.contains(**g)).map(|g| g.to_string()).collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

type Matcher = fn(&Term) -> Vec<Term>;

pub struct Rule {
    pub name: &'static str,
    pub group: Group,
    pub lhs: &'static str,
    pub rhs: &'static str,
    fwd: Matcher,
    bwd: Option<Matcher>,
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({})", self.name)
    }
}

impl PartialEq for Rule {
    fn eq(&self, other: &Rule) -> bool {
        self.name == other.name
    }
}

impl Rule {
    /// Only usable left to right.
    pub fn oriented(&self) -> bool {
        self.bwd.is_none()
    }

    /// All results of applying this rule at the root of `t` in direction
    /// `dir`, in a fixed order, keeping only those with `t`'s signature.
    pub fn apply(&self, t: &Term, dir: Direction) -> Vec<Term> {
        let Some(sig) = t.sig() else { return Vec::new() };
        let m = match dir {
            Direction::Forward => self.fwd,
            Direction::Backward => match self.bwd {
                Some(m) => m,
                None => return Vec::new(),
            },
        };
        let mut out: Vec<Term> = Vec::new();
        for c in m(t) {
            if c.sig() == Some(sig) && c != *t && !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

/// Looks up a rule by name.
pub fn rule(name: &str) -> Option<&'static Rule> {
    CATALOG.iter().find(|r| r.name == name)
}

pub fn catalog() -> &'static [Rule] {
    &CATALOG
}

fn comp_parts(t: &Term) -> Option<(&Term, &Term)> {
    match t.op() {
        Op::Comp(f, g) => Some((f, g)),
        _ => None,
    }
}

fn brack_parts(t: &Term) -> Option<(&Term, &Term)> {
    match t.op() {
        Op::Brack(f, g) => Some((f, g)),
        _ => None,
    }
}

fn rec_parts(t: &Term) -> Option<(&Term, &Term)> {
    match t.op() {
        Op::Rec(f, g) => Some((f, g)),
        _ => None,
    }
}

fn circt_parts(t: &Term) -> Option<(&Term, &Term)> {
    match t.op() {
        Op::CircT(f, g) => Some((f, g)),
        _ => None,
    }
}

fn prod_parts(t: &Term) -> Option<(&Term, &Term)> {
    match t.op() {
        Op::Prod(f, g) => Some((f, g)),
        _ => None,
    }
}

fn id_arity(t: &Term) -> Option<usize> {
    match t.op() {
        Op::Id(k) => Some(*k),
        _ => None,
    }
}

fn twist_parts(t: &Term) -> Option<(usize, usize)> {
    match t.op() {
        Op::Twist(a, b) => Some((*a, *b)),
        _ => None,
    }
}

fn diag_arity(t: &Term) -> Option<usize> {
    match t.op() {
        Op::Diag(k) => Some(*k),
        _ => None,
    }
}

fn opt(t: Option<Term>) -> Vec<Term> {
    t.into_iter().collect()
}

/// `Comp(f, n) ⇒ Comp(π^a_1, n)` for `f : ℕ^a → ℕ`, `a ≥ 1`.
fn null_absorbs(t: &Term) -> Vec<Term> {
    opt((|| {
        let (f, g) = comp_parts(t)?;
        if !matches!(g.op(), Op::Null) || f.dst()? != 1 {
            return None;
        }
        let a = f.src()?;
        let p = Term::proj(a, 1);
        (a >= 1 && *f != p).then(|| Term::comp(p, Term::null()))
    })())
}

fn bracket_projection(t: &Term, first: bool) -> Option<Term> {
    let (br, p) = comp_parts(t)?;
    let (f, g) = brack_parts(br)?;
    let (b, c) = (f.dst()?, g.dst()?);
    if first {
        is_block_projection(p, b + c, 0, b).then(|| f.clone())
    } else {
        is_block_projection(p, b + c, b, c).then(|| g.clone())
    }
}

fn bracket_first(t: &Term) -> Vec<Term> {
    opt(bracket_projection(t, true))
}

fn bracket_second(t: &Term) -> Vec<Term> {
    opt(bracket_projection(t, false))
}

fn is_lifted_zero(t: &Term, a: usize) -> bool {
    match comp_parts(t) {
        Some((bang, z)) => {
            matches!(z.op(), Op::Zero)
                && bang.is_leaf()
                && bang.src() == Some(a)
                && bang.dst() == Some(0)
        }
        None => false,
    }
}

fn is_lifted_succ(t: &Term, a: usize) -> bool {
    match comp_parts(t) {
        Some((p, s)) => matches!(s.op(), Op::Succ) && is_block_projection(p, a + 1, a, 1),
        None => false,
    }
}

/// `(f ♯ g) ∘₂ z ⇒ f`.
fn rec_null(t: &Term) -> Vec<Term> {
    opt((|| {
        let (h, z) = circt_parts(t)?;
        let (f, _) = rec_parts(h)?;
        is_lifted_zero(z, f.src()?).then(|| f.clone())
    })())
}

fn assoc_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (fg, h) = comp_parts(t)?;
        let (f, g) = comp_parts(fg)?;
        Some(Term::comp(f.clone(), Term::comp(g.clone(), h.clone())))
    })())
}

fn assoc_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (f, gh) = comp_parts(t)?;
        let (g, h) = comp_parts(gh)?;
        Some(Term::comp(Term::comp(f.clone(), g.clone()), h.clone()))
    })())
}

fn unit_fwd(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    if let Some((f, g)) = comp_parts(t) {
        if is_identity(f) {
            out.push(g.clone());
        }
        if is_identity(g) {
            out.push(f.clone());
        }
    }
    out
}

fn unit_bwd(t: &Term) -> Vec<Term> {
    match t.sig() {
        Some(s) => vec![
            Term::comp(Term::id(s.src.0), t.clone()),
            Term::comp(t.clone(), Term::id(s.dst.0)),
        ],
        None => Vec::new(),
    }
}

fn distrib_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (g, br) = comp_parts(t)?;
        let (f1, f2) = brack_parts(br)?;
        Some(Term::brack(Term::comp(g.clone(), f1.clone()), Term::comp(g.clone(), f2.clone())))
    })())
}

fn distrib_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (l, r) = brack_parts(t)?;
        let (g1, f1) = comp_parts(l)?;
        let (g2, f2) = comp_parts(r)?;
        (g1 == g2).then(|| Term::comp(g1.clone(), Term::brack(f1.clone(), f2.clone())))
    })())
}

fn brack_assoc_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (fg, h) = brack_parts(t)?;
        let (f, g) = brack_parts(fg)?;
        Some(Term::brack(f.clone(), Term::brack(g.clone(), h.clone())))
    })())
}

fn brack_assoc_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (f, gh) = brack_parts(t)?;
        let (g, h) = brack_parts(gh)?;
        Some(Term::brack(Term::brack(f.clone(), g.clone()), h.clone()))
    })())
}

fn brack_swap_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (f, g) = brack_parts(t)?;
        Some(Term::comp(Term::brack(g.clone(), f.clone()), Term::twist(g.dst()?, f.dst()?)))
    })())
}

fn brack_swap_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (br, tw) = comp_parts(t)?;
        let (g, f) = brack_parts(br)?;
        let (a, b) = twist_parts(tw)?;
        (a == g.dst()? && b == f.dst()?).then(|| Term::brack(f.clone(), g.clone()))
    })())
}

fn diag_fold(t: &Term) -> Vec<Term> {
    opt((|| {
        let (e1, e2) = brack_parts(t)?;
        let k = e1.src()?;
        (is_identity(e1) && is_identity(e2)).then(|| Term::diag(k))
    })())
}

fn diag_split(t: &Term) -> Vec<Term> {
    opt(diag_arity(t).map(|k| Term::brack(Term::id(k), Term::id(k))))
}

fn twist_cancel(t: &Term) -> Vec<Term> {
    opt((|| {
        let (t1, t2) = comp_parts(t)?;
        let (a, b) = twist_parts(t1)?;
        (twist_parts(t2)? == (b, a)).then(|| Term::id(a + b))
    })())
}

fn twist_split(t: &Term) -> Vec<Term> {
    match id_arity(t) {
        Some(k) => (1..k).map(|a| Term::comp(Term::twist(a, k - a), Term::twist(k - a, a))).collect(),
        None => Vec::new(),
    }
}

/// `(tw_{a,b} × id_c) ; (id_b × tw_{a,c}) ; (tw_{b,c} × id_a)`
pub fn hexagon_left(a: usize, b: usize, c: usize) -> Term {
    Term::comp(
        Term::prod(Term::twist(a, b), Term::id(c)),
        Term::comp(
            Term::prod(Term::id(b), Term::twist(a, c)),
            Term::prod(Term::twist(b, c), Term::id(a)),
        ),
    )
}

/// `(id_a × tw_{b,c}) ; (tw_{a,c} × id_b) ; (id_c × tw_{a,b})`
pub fn hexagon_right(a: usize, b: usize, c: usize) -> Term {
    Term::comp(
        Term::prod(Term::id(a), Term::twist(b, c)),
        Term::comp(
            Term::prod(Term::twist(a, c), Term::id(b)),
            Term::prod(Term::id(c), Term::twist(a, b)),
        ),
    )
}

fn hexagon_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (first, _) = comp_parts(t)?;
        let (tw, id) = prod_parts(first)?;
        let (a, b) = twist_parts(tw)?;
        let c = id_arity(id)?;
        (*t == hexagon_left(a, b, c)).then(|| hexagon_right(a, b, c))
    })())
}

fn hexagon_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (first, _) = comp_parts(t)?;
        let (id, tw) = prod_parts(first)?;
        let a = id_arity(id)?;
        let (b, c) = twist_parts(tw)?;
        (*t == hexagon_right(a, b, c)).then(|| hexagon_left(a, b, c))
    })())
}

fn rec_brack_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (br, bx) = rec_parts(t)?;
        let (f1, f2) = brack_parts(br)?;
        let (g1, g2) = match bx.op() {
            Op::BoxTimes(g1, g2) => (g1, g2),
            _ => return None,
        };
        Some(Term::brack(Term::rec(f1.clone(), g1.clone()), Term::rec(f2.clone(), g2.clone())))
    })())
}

fn rec_brack_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (l, r) = brack_parts(t)?;
        let (f1, g1) = rec_parts(l)?;
        let (f2, g2) = rec_parts(r)?;
        Some(Term::rec(Term::brack(f1.clone(), f2.clone()), Term::boxtimes(g1.clone(), g2.clone())))
    })())
}

/// For unwinding: `f : A → B`, `g1 : A × B → D`, `g2 : A × D → B`.
fn unwinding_types_ok(f: &Term, g1: &Term, g2: &Term) -> Option<bool> {
    let (a, b, d) = (f.src()?, f.dst()?, g1.dst()?);
    Some(g1.src()? == a + b && g2.src()? == a + d && g2.dst()? == b)
}

fn unwind_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (g1, h) = circt_parts(t)?;
        let (f, step) = rec_parts(h)?;
        let (g2, g1b) = circt_parts(step)?;
        (g1 == g1b && unwinding_types_ok(f, g1, g2)?).then(|| {
            Term::rec(Term::circt(g1.clone(), f.clone()), Term::circt(g1.clone(), g2.clone()))
        })
    })())
}

fn unwind_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (base, step) = rec_parts(t)?;
        let (g1, f) = circt_parts(base)?;
        let (g1b, g2) = circt_parts(step)?;
        (g1 == g1b && unwinding_types_ok(f, g1, g2)?).then(|| {
            Term::circt(g1.clone(), Term::rec(f.clone(), Term::circt(g2.clone(), g1.clone())))
        })
    })())
}

fn rec_succ_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (h, s) = circt_parts(t)?;
        let (f, g) = rec_parts(h)?;
        is_lifted_succ(s, f.src()?).then(|| Term::circt(g.clone(), h.clone()))
    })())
}

fn rec_succ_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (g, h) = circt_parts(t)?;
        let (f, g2) = rec_parts(h)?;
        let a = f.src()?;
        (g == g2).then(|| Term::circt(h.clone(), Term::lifted_succ(a)))
    })())
}

fn rec_ident_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (f, p) = rec_parts(t)?;
        let (a, b) = (f.src()?, f.dst()?);
        is_block_projection(p, a + b, a, b).then(|| Term::comp(block(a + 1, 0, a), f.clone()))
    })())
}

fn rec_ident_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (p, f) = comp_parts(t)?;
        let (a, b) = (f.src()?, f.dst()?);
        is_block_projection(p, a + 1, 0, a).then(|| Term::rec(f.clone(), block(a + b, a, b)))
    })())
}

fn prod_unfold(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::Prod(..) => opt(crate::term::unfold_macro(t)),
        _ => Vec::new(),
    }
}

fn prod_fold(t: &Term) -> Vec<Term> {
    opt((|| {
        let (l, r) = brack_parts(t)?;
        let (p1, f) = comp_parts(l)?;
        let (p2, g) = comp_parts(r)?;
        let (a, c) = (f.src()?, g.src()?);
        (is_block_projection(p1, a + c, 0, a) && is_block_projection(p2, a + c, a, c))
            .then(|| Term::prod(f.clone(), g.clone()))
    })())
}

fn diag_unfold(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::Diag(_) => opt(crate::term::unfold_macro(t)),
        _ => Vec::new(),
    }
}

fn diag_fold_mp(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::MultiProj { k, xs } if xs.len() == 2 * k && xs.iter().enumerate().all(|(n, x)| *x == n % k + 1) => {
            vec![Term::diag(*k)]
        }
        _ => Vec::new(),
    }
}

fn twist_unfold(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::Twist(..) => opt(crate::term::unfold_macro(t)),
        _ => Vec::new(),
    }
}

fn twist_fold(t: &Term) -> Vec<Term> {
    opt((|| {
        let (p1, p2) = brack_parts(t)?;
        let k = t.src()?;
        let (b, a) = (p1.dst()?, p2.dst()?);
        (a + b == k && is_block_projection(p1, k, a, b) && is_block_projection(p2, k, 0, a))
            .then(|| Term::twist(a, b))
    })())
}

fn boxtimes_unfold(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::BoxTimes(..) => opt(crate::term::unfold_macro(t)),
        _ => Vec::new(),
    }
}

fn boxtimes_fold(t: &Term) -> Vec<Term> {
    opt((|| {
        let (_, rest) = comp_parts(t)?;
        let (_, last) = comp_parts(rest)?;
        let (g1, g2) = prod_parts(last)?;
        let candidate = Term::boxtimes(g1.clone(), g2.clone());
        (crate::term::unfold_macro(&candidate)? == *t).then_some(candidate)
    })())
}

fn circt_unfold(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::CircT(..) => opt(crate::term::unfold_macro(t)),
        _ => Vec::new(),
    }
}

fn circt_fold(t: &Term) -> Vec<Term> {
    opt((|| {
        let (_, rest) = comp_parts(t)?;
        let (mid, g1) = comp_parts(rest)?;
        let (_, g2) = prod_parts(mid)?;
        let candidate = Term::circt(g1.clone(), g2.clone());
        (crate::term::unfold_macro(&candidate)? == *t).then_some(candidate)
    })())
}

fn mproj_unfold(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::MultiProj { .. } | Op::Id(_) => opt(crate::term::unfold_macro(t)),
        _ => Vec::new(),
    }
}

fn mproj_fold(t: &Term) -> Vec<Term> {
    match t.op() {
        Op::Proj { k, i } => vec![Term::mproj(*k, vec![*i])],
        Op::MultiProj { k, xs } if xs.len() == *k && xs.iter().enumerate().all(|(n, x)| *x == n + 1) => {
            vec![Term::id(*k)]
        }
        Op::Brack(p, rest) => match (p.op(), rest.op()) {
            (Op::Proj { k, i }, Op::MultiProj { k: k2, xs }) if k == k2 && !xs.is_empty() => {
                let mut all = vec![*i];
                all.extend(xs);
                vec![Term::mproj(*k, all)]
            }
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}

fn interchange_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (p1, p2) = comp_parts(t)?;
        let (f1, g1) = prod_parts(p1)?;
        let (f2, g2) = prod_parts(p2)?;
        (f1.dst()? == f2.src()?)
            .then(|| Term::prod(Term::comp(f1.clone(), f2.clone()), Term::comp(g1.clone(), g2.clone())))
    })())
}

fn interchange_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (l, r) = prod_parts(t)?;
        let (f1, f2) = comp_parts(l)?;
        let (g1, g2) = comp_parts(r)?;
        Some(Term::comp(Term::prod(f1.clone(), g1.clone()), Term::prod(f2.clone(), g2.clone())))
    })())
}

fn prod_assoc_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (fg, h) = prod_parts(t)?;
        let (f, g) = prod_parts(fg)?;
        Some(Term::prod(f.clone(), Term::prod(g.clone(), h.clone())))
    })())
}

fn prod_assoc_bwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (f, gh) = prod_parts(t)?;
        let (g, h) = prod_parts(gh)?;
        Some(Term::prod(Term::prod(f.clone(), g.clone()), h.clone()))
    })())
}

fn prod_id_fwd(t: &Term) -> Vec<Term> {
    opt((|| {
        let (l, r) = prod_parts(t)?;
        Some(Term::id(id_arity(l)? + id_arity(r)?))
    })())
}

fn prod_id_bwd(t: &Term) -> Vec<Term> {
    match id_arity(t) {
        Some(k) => (1..k).map(|a| Term::prod(Term::id(a), Term::id(k - a))).collect(),
        None => Vec::new(),
    }
}

macro_rules! rule {
    ($name:expr, $group:ident, $lhs:expr, $rhs:expr, $fwd:expr, $bwd:expr) => {
        Rule { name: $name, group: Group::$group, lhs: $lhs, rhs: $rhs, fwd: $fwd, bwd: $bwd }
    };
}

static CATALOG: [Rule; 25] = [
    rule!("I.1", I, "comp(f,n)", "comp(pi[a,1],n)", null_absorbs, None),
    rule!("I.2", I, "comp(br(f,g),mpi[b+c;1..b])", "f", bracket_first, None),
    rule!("I.3", I, "comp(br(f,g),mpi[b+c;b+1..b+c])", "g", bracket_second, None),
    rule!("I.4", I, "bcomp(rec(f,g),comp(mpi[a;],z))", "f", rec_null, None),
    rule!("II.1", II, "comp(comp(f,g),h)", "comp(f,comp(g,h))", assoc_fwd, Some(assoc_bwd)),
    rule!("II.2", II, "comp(id[a],f) | comp(f,id[b])", "f", unit_fwd, Some(unit_bwd)),
    rule!("II.3", II, "comp(g,br(f1,f2))", "br(comp(g,f1),comp(g,f2))", distrib_fwd, Some(distrib_bwd)),
    rule!("II.4", II, "br(br(f,g),h)", "br(f,br(g,h))", brack_assoc_fwd, Some(brack_assoc_bwd)),
    rule!("II.5", II, "br(f,g)", "comp(br(g,f),tw[c,b])", brack_swap_fwd, Some(brack_swap_bwd)),
    rule!("II.6", II, "br(id[a],id[a])", "diag[a]", diag_fold, Some(diag_split)),
    rule!("II.7", II, "comp(tw[a,b],tw[b,a])", "id[a+b]", twist_cancel, Some(twist_split)),
    rule!(
        "II.8",
        II,
        "comp(prod(tw[a,b],id[c]),comp(prod(id[b],tw[a,c]),prod(tw[b,c],id[a])))",
        "comp(prod(id[a],tw[b,c]),comp(prod(tw[a,c],id[b]),prod(id[c],tw[a,b])))",
        hexagon_fwd,
        Some(hexagon_bwd)
    ),
    rule!("II.9", II, "rec(br(f1,f2),bprod(g1,g2))", "br(rec(f1,g1),rec(f2,g2))", rec_brack_fwd, Some(rec_brack_bwd)),
    rule!("II.10", II, "bcomp(g1,rec(f,bcomp(g2,g1)))", "rec(bcomp(g1,f),bcomp(g1,g2))", unwind_fwd, Some(unwind_bwd)),
    rule!("II.11", II, "bcomp(rec(f,g),comp(pi[a+1,a+1],s))", "bcomp(g,rec(f,g))", rec_succ_fwd, Some(rec_succ_bwd)),
    rule!("III.1", III, "rec(f,mpi[a+b;a+1..a+b])", "comp(mpi[a+1;1..a],f)", rec_ident_fwd, Some(rec_ident_bwd)),
    rule!(
        "Defn.Prod",
        Defn,
        "prod(f,g)",
        "br(comp(mpi[a+c;1..a],f),comp(mpi[a+c;a+1..a+c],g))",
        prod_unfold,
        Some(prod_fold)
    ),
    rule!("Defn.Diag", Defn, "diag[k]", "mpi[k;1..k,1..k]", diag_unfold, Some(diag_fold_mp)),
    rule!("Defn.Twist", Defn, "tw[a,b]", "br(mpi[a+b;a+1..a+b],mpi[a+b;1..a])", twist_unfold, Some(twist_fold)),
    rule!(
        "Defn.BoxTimes",
        Defn,
        "bprod(g1,g2)",
        "comp(prod(diag[a],id[2b]),comp(prod(id[a],prod(tw[a,b],id[b])),prod(g1,g2)))",
        boxtimes_unfold,
        Some(boxtimes_fold)
    ),
    rule!(
        "Defn.CircT",
        Defn,
        "bcomp(g1,g2)",
        "comp(prod(diag[a],id[c]),comp(prod(id[a],g2),g1))",
        circt_unfold,
        Some(circt_fold)
    ),
    rule!(
        "Defn.MultiProj",
        Defn,
        "mpi[k;x] | mpi[k;x,xs] | id[k]",
        "pi[k,x] | br(pi[k,x],mpi[k;xs]) | mpi[k;1..k]",
        mproj_unfold,
        Some(mproj_fold)
    ),
    rule!(
        "Derived.Interchange",
        Derived,
        "comp(prod(f1,g1),prod(f2,g2))",
        "prod(comp(f1,f2),comp(g1,g2))",
        interchange_fwd,
        Some(interchange_bwd)
    ),
    rule!("Derived.ProdAssoc", Derived, "prod(prod(f,g),h)", "prod(f,prod(g,h))", prod_assoc_fwd, Some(prod_assoc_bwd)),
    rule!("Derived.ProdId", Derived, "prod(id[a],id[b])", "id[a+b]", prod_id_fwd, Some(prod_id_bwd)),
];
