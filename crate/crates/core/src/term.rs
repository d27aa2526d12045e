//! Description trees.
//!
//! A [`Term`] is an immutable, structurally shared labeled binary tree. Leaves
//! are basic functions (zero, null, successor, projections) and macro leaves
//! (multiple projections, identities, diagonals, twists); internal nodes are
//! composition, recursion, bracket and the macro nodes (product, second
//! variable product, second variable composition).
//!
//! Child order is diagrammatic for composition: `Comp(f, g)` is "f then g",
//! i.e. `g ∘ f`. Second variable composition keeps the outer function first:
//! `CircT(g1, g2)` is `g1 ∘₂ g2`, `(a, c) ↦ g1(a, g2(a, c))`.
//!
//! Every node caches its structural hash, tree size, recursion depth and (if
//! well-typed) its signature, so hashing, comparison against a hash-set and
//! typing are O(1) after construction.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The exponent `k` of a vertex `ℕ^k`; `Arity(0)` is the terminal object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Arity(pub usize);

impl Add for Arity {
    type Output = Arity;
    fn add(self, rhs: Arity) -> Arity {
        Arity(self.0 + rhs.0)
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Source and target arity of a well-typed term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub src: Arity,
    pub dst: Arity,
}

impl Signature {
    pub fn new(src: usize, dst: usize) -> Self {
        Signature { src: Arity(src), dst: Arity(dst) }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src, self.dst)
    }
}

/// One step down a description tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Left,
    Right,
}

/// Address of a subterm: the path of left/right steps from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(pub Vec<Dir>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn child(&self, d: Dir) -> Self {
        let mut p = self.0.clone();
        p.push(d);
        Position(p)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// `0` for left, `1` for right; the wire format of proofs.
    pub fn to_indices(&self) -> Vec<u8> {
        self.0.iter().map(|d| matches!(d, Dir::Right) as u8).collect()
    }

    pub fn from_indices(ix: &[u8]) -> Option<Self> {
        ix.iter()
            .map(|&i| match i {
                0 => Some(Dir::Left),
                1 => Some(Dir::Right),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Position)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, d) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", matches!(d, Dir::Right) as u8)?;
        }
        write!(f, "]")
    }
}

/// The constructor at the root of a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    /// `0 : ∗ → ℕ`
    Zero,
    /// `n(x) = 0`
    Null,
    /// `s(x) = x + 1`
    Succ,
    /// `π^k_i`, 1-based `i`.
    Proj { k: usize, i: usize },
    /// Outputs the listed input coordinates (1-based) in order.
    MultiProj { k: usize, xs: Vec<usize> },
    Id(usize),
    /// `x ↦ (x, x)` on `ℕ^k`.
    Diag(usize),
    /// `ℕ^(a+b) → ℕ^(b+a)`, swapping the two blocks.
    Twist(usize, usize),
    /// `Comp(f, g) = g ∘ f`.
    Comp(Term, Term),
    /// `Rec(f, g) = f ♯ g`; the recursion variable is the last input.
    Rec(Term, Term),
    /// `⟨f, g⟩`
    Brack(Term, Term),
    /// `f × g`
    Prod(Term, Term),
    /// `g1 ⊠ g2`, `(a, b1, b2) ↦ (g1(a, b1), g2(a, b2))`.
    BoxTimes(Term, Term),
    /// `g1 ∘₂ g2`, `(a, c) ↦ g1(a, g2(a, c))`.
    CircT(Term, Term),
}

impl Op {
    pub fn children(&self) -> Option<(&Term, &Term)> {
        match self {
            Op::Comp(l, r)
            | Op::Rec(l, r)
            | Op::Brack(l, r)
            | Op::Prod(l, r)
            | Op::BoxTimes(l, r)
            | Op::CircT(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Rebuilds this node with new children; `None` for leaves.
    pub fn with_children(&self, l: Term, r: Term) -> Option<Op> {
        Some(match self {
            Op::Comp(..) => Op::Comp(l, r),
            Op::Rec(..) => Op::Rec(l, r),
            Op::Brack(..) => Op::Brack(l, r),
            Op::Prod(..) => Op::Prod(l, r),
            Op::BoxTimes(..) => Op::BoxTimes(l, r),
            Op::CircT(..) => Op::CircT(l, r),
            _ => return None,
        })
    }

    pub fn is_macro(&self) -> bool {
        matches!(
            self,
            Op::MultiProj { .. }
                | Op::Id(_)
                | Op::Diag(_)
                | Op::Twist(..)
                | Op::Prod(..)
                | Op::BoxTimes(..)
                | Op::CircT(..)
        )
    }
}

struct Node {
    op: Op,
    hash: u64,
    size: usize,
    rdepth: usize,
    sig: Option<Signature>,
}

/// An immutable description tree. Cloning is cheap (reference counted).
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.size == other.0.size && self.0.op == other.0.op)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::surface::print(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::surface::print(self))
    }
}

fn structural_hash(op: &Op) -> u64 {
    let mut h = DefaultHasher::new();
    std::mem::discriminant(op).hash(&mut h);
    match op {
        Op::Zero | Op::Null | Op::Succ => {}
        Op::Proj { k, i } => (k, i).hash(&mut h),
        Op::MultiProj { k, xs } => (k, xs).hash(&mut h),
        Op::Id(k) | Op::Diag(k) => k.hash(&mut h),
        Op::Twist(a, b) => (a, b).hash(&mut h),
        Op::Comp(l, r)
        | Op::Rec(l, r)
        | Op::Brack(l, r)
        | Op::Prod(l, r)
        | Op::BoxTimes(l, r)
        | Op::CircT(l, r) => {
            l.0.hash.hash(&mut h);
            r.0.hash.hash(&mut h);
        }
    }
    h.finish()
}

/// Computes the signature of a node from the cached signatures of its
/// children. Returns `None` if the node (or a child) is ill-typed.
fn local_sig(op: &Op) -> Option<Signature> {
    let s = Signature::new;
    match op {
        Op::Zero => Some(s(0, 1)),
        Op::Null | Op::Succ => Some(s(1, 1)),
        Op::Proj { k, i } => (*k >= 1 && *i >= 1 && i <= k).then(|| s(*k, 1)),
        Op::MultiProj { k, xs } => xs.iter().all(|x| *x >= 1 && x <= k).then(|| s(*k, xs.len())),
        Op::Id(k) => Some(s(*k, *k)),
        Op::Diag(k) => Some(s(*k, 2 * k)),
        Op::Twist(a, b) => Some(s(a + b, a + b)),
        Op::Comp(f, g) => {
            let (f, g) = (f.sig()?, g.sig()?);
            (f.dst == g.src).then_some(Signature { src: f.src, dst: g.dst })
        }
        Op::Rec(f, g) => {
            let (f, g) = (f.sig()?, g.sig()?);
            (g.src == f.src + f.dst && g.dst == f.dst)
                .then(|| Signature { src: f.src + Arity(1), dst: f.dst })
        }
        Op::Brack(f, g) => {
            let (f, g) = (f.sig()?, g.sig()?);
            (f.src == g.src).then(|| Signature { src: f.src, dst: f.dst + g.dst })
        }
        Op::Prod(f, g) => {
            let (f, g) = (f.sig()?, g.sig()?);
            Some(Signature { src: f.src + g.src, dst: f.dst + g.dst })
        }
        Op::BoxTimes(g1, g2) => {
            let (g1, g2) = (g1.sig()?, g2.sig()?);
            if g1 != g2 || g1.src < g1.dst {
                return None;
            }
            let b = g1.dst.0;
            let a = g1.src.0 - b;
            Some(s(a + 2 * b, 2 * b))
        }
        Op::CircT(g1, g2) => {
            let (g1, g2) = (g1.sig()?, g2.sig()?);
            let a = g1.src.0.checked_sub(g2.dst.0)?;
            let c = g2.src.0.checked_sub(a)?;
            Some(s(a + c, g1.dst.0))
        }
    }
}

impl Term {
    pub fn new(op: Op) -> Term {
        let (size, rdepth) = match op.children() {
            None => (1, 0),
            Some((l, r)) => (
                1usize.saturating_add(l.0.size).saturating_add(r.0.size),
                l.0.rdepth.max(r.0.rdepth) + matches!(op, Op::Rec(..)) as usize,
            ),
        };
        let sig = local_sig(&op);
        let hash = structural_hash(&op);
        Term(Arc::new(Node { op, hash, size, rdepth, sig }))
    }

    pub fn op(&self) -> &Op {
        &self.0.op
    }

    /// Signature if well-typed. Use [`arity_of`] for a diagnostic.
    pub fn sig(&self) -> Option<Signature> {
        self.0.sig
    }

    pub fn src(&self) -> Option<usize> {
        self.0.sig.map(|s| s.src.0)
    }

    pub fn dst(&self) -> Option<usize> {
        self.0.sig.map(|s| s.dst.0)
    }

    /// Number of nodes in the tree (shared subtrees counted per occurrence).
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Maximum number of recursion nodes on a root-to-leaf path.
    pub fn rdepth(&self) -> usize {
        self.0.rdepth
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    pub fn is_leaf(&self) -> bool {
        self.0.op.children().is_none()
    }

    pub fn children(&self) -> Option<(&Term, &Term)> {
        self.0.op.children()
    }

    pub fn zero() -> Term {
        Term::new(Op::Zero)
    }
    pub fn null() -> Term {
        Term::new(Op::Null)
    }
    pub fn succ() -> Term {
        Term::new(Op::Succ)
    }
    pub fn proj(k: usize, i: usize) -> Term {
        Term::new(Op::Proj { k, i })
    }
    pub fn mproj(k: usize, xs: Vec<usize>) -> Term {
        Term::new(Op::MultiProj { k, xs })
    }
    pub fn id(k: usize) -> Term {
        Term::new(Op::Id(k))
    }
    pub fn diag(k: usize) -> Term {
        Term::new(Op::Diag(k))
    }
    pub fn twist(a: usize, b: usize) -> Term {
        Term::new(Op::Twist(a, b))
    }
    pub fn comp(f: Term, g: Term) -> Term {
        Term::new(Op::Comp(f, g))
    }
    pub fn rec(f: Term, g: Term) -> Term {
        Term::new(Op::Rec(f, g))
    }
    pub fn brack(f: Term, g: Term) -> Term {
        Term::new(Op::Brack(f, g))
    }
    pub fn prod(f: Term, g: Term) -> Term {
        Term::new(Op::Prod(f, g))
    }
    pub fn boxtimes(g1: Term, g2: Term) -> Term {
        Term::new(Op::BoxTimes(g1, g2))
    }
    pub fn circt(g1: Term, g2: Term) -> Term {
        Term::new(Op::CircT(g1, g2))
    }

    /// The map `A × ∗ → ℕ` sending everything to zero, `0 ∘ !_A`.
    pub fn lifted_zero(a: usize) -> Term {
        Term::comp(Term::mproj(a, vec![]), Term::zero())
    }

    /// `s ∘ π_ℕ : A × ℕ → ℕ`.
    pub fn lifted_succ(a: usize) -> Term {
        Term::comp(Term::proj(a + 1, a + 1), Term::succ())
    }

    /// The constant `k` from source `ℕ^a`: `s^k ∘ 0 ∘ !_A`.
    pub fn constant(k: usize, a: usize) -> Term {
        (0..k).fold(Term::lifted_zero(a), |t, _| Term::comp(t, Term::succ()))
    }

    /// Checked constructor: builds the node and verifies its signature.
    pub fn checked(op: Op) -> Result<Term> {
        let t = Term::new(op);
        arity_of(&t)?;
        Ok(t)
    }

    /// All positions in pre-order (root first, then left subtree, then right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.size().min(1 << 16));
        let mut path = Vec::new();
        fn walk(t: &Term, path: &mut Vec<Dir>, out: &mut Vec<Position>) {
            out.push(Position(path.clone()));
            if let Some((l, r)) = t.children() {
                path.push(Dir::Left);
                walk(l, path, out);
                path.pop();
                path.push(Dir::Right);
                walk(r, path, out);
                path.pop();
            }
        }
        walk(self, &mut path, &mut out);
        out
    }
}

/// Returns the signature of `t`, or a diagnostic pointing at the innermost
/// offending node.
pub fn arity_of(t: &Term) -> Result<Signature> {
    fn go(t: &Term, pos: &mut Vec<Dir>) -> Result<Signature> {
        if let Some(s) = t.sig() {
            return Ok(s);
        }
        let at = Position(pos.clone());
        let here = || at.clone();
        match t.op() {
            Op::Proj { k, i } => Err(Error::BadIndex {
                position: here(),
                detail: format!("projection pi[{k},{i}] needs 1 <= i <= k and k >= 1"),
            }),
            Op::MultiProj { k, xs } => Err(Error::BadIndex {
                position: here(),
                detail: format!("multiple projection on {k} inputs has index out of range in {xs:?}"),
            }),
            op => {
                let (l, r) = op.children().expect("leaves other than projections are always typed");
                pos.push(Dir::Left);
                let f = go(l, pos)?;
                pos.pop();
                pos.push(Dir::Right);
                let g = go(r, pos)?;
                pos.pop();
                let mismatch = |expected: String, found: String| Error::ArityMismatch {
                    position: here(),
                    expected,
                    found,
                };
                Err(match op {
                    Op::Comp(..) => mismatch(
                        format!("second operand with source {}", f.dst),
                        format!("source {}", g.src),
                    ),
                    Op::Rec(..) => mismatch(
                        format!("step of type {} -> {}", f.src + f.dst, f.dst),
                        format!("{g}"),
                    ),
                    Op::Brack(..) => mismatch(
                        format!("second operand with source {}", f.src),
                        format!("source {}", g.src),
                    ),
                    Op::BoxTimes(..) => mismatch(
                        format!("two operands of equal type A x B -> B, first is {f}"),
                        format!("{g}"),
                    ),
                    Op::CircT(..) => mismatch(
                        format!("inner operand compatible with outer {f}"),
                        format!("{g}"),
                    ),
                    _ => unreachable!("products are typed whenever their children are"),
                })
            }
        }
    }
    go(t, &mut Vec::new())
}

pub fn subterm(t: &Term, p: &Position) -> Result<Term> {
    let mut cur = t;
    for d in &p.0 {
        let (l, r) = cur.children().ok_or_else(|| Error::InvalidPosition(p.clone()))?;
        cur = match d {
            Dir::Left => l,
            Dir::Right => r,
        };
    }
    Ok(cur.clone())
}

/// Replaces the subterm at `p` without checking types.
pub(crate) fn replace_unchecked(t: &Term, path: &[Dir], s: Term) -> Option<Term> {
    match path.split_first() {
        None => Some(s),
        Some((d, rest)) => {
            let (l, r) = t.children()?;
            let (l, r) = match d {
                Dir::Left => (replace_unchecked(l, rest, s)?, r.clone()),
                Dir::Right => (l.clone(), replace_unchecked(r, rest, s)?),
            };
            Some(Term::new(t.op().with_children(l, r)?))
        }
    }
}

/// Replaces the subterm at `p` by `s`, which must have the same signature.
pub fn replace(t: &Term, p: &Position, s: Term) -> Result<Term> {
    let old = subterm(t, p)?;
    let want = arity_of(&old)?;
    let got = arity_of(&s)?;
    if want != got {
        return Err(Error::ArityMismatch {
            position: p.clone(),
            expected: want.to_string(),
            found: got.to_string(),
        });
    }
    Ok(replace_unchecked(t, &p.0, s).expect("position validated above"))
}

fn is_identity_list(k: usize, xs: &[usize]) -> bool {
    xs.len() == k && xs.iter().enumerate().all(|(n, x)| *x == n + 1)
}

/// True for the syntactic forms of an identity: `Id(k)`, `MultiProj(k, 1..k)`
/// and `π^1_1`.
pub fn is_identity(t: &Term) -> bool {
    match t.op() {
        Op::Id(_) => true,
        Op::MultiProj { k, xs } => is_identity_list(*k, xs),
        Op::Proj { k: 1, i: 1 } => true,
        _ => false,
    }
}

/// True if `t : ℕ^k → ℕ^len` projects onto the consecutive block of inputs
/// `start+1 ..= start+len`.
pub fn is_block_projection(t: &Term, k: usize, start: usize, len: usize) -> bool {
    if start + len > k {
        return false;
    }
    match t.op() {
        Op::MultiProj { k: k2, xs } => {
            *k2 == k && xs.len() == len && xs.iter().enumerate().all(|(n, x)| *x == start + n + 1)
        }
        Op::Proj { k: k2, i } => *k2 == k && len == 1 && *i == start + 1,
        Op::Id(k2) => *k2 == k && start == 0 && len == k,
        _ => false,
    }
}

pub(crate) fn block(k: usize, start: usize, len: usize) -> Term {
    Term::mproj(k, (start + 1..=start + len).collect())
}

/// One unfolding of a macro at the root, or `None` if `t` is not a macro
/// with a definition (core constructors and `MultiProj(k, ⟨⟩)`).
pub fn unfold_macro(t: &Term) -> Option<Term> {
    let sig = t.sig()?;
    Some(match t.op() {
        Op::MultiProj { k, xs } => match xs.as_slice() {
            [] => return None,
            [x] => Term::proj(*k, *x),
            [x, rest @ ..] => Term::brack(Term::proj(*k, *x), Term::mproj(*k, rest.to_vec())),
        },
        Op::Id(k) => Term::mproj(*k, (1..=*k).collect()),
        Op::Diag(k) => Term::mproj(*k, (1..=*k).chain(1..=*k).collect()),
        Op::Twist(a, b) => Term::brack(block(a + b, *a, *b), block(a + b, 0, *a)),
        Op::Prod(f, g) => {
            let (a, c) = (f.src()?, g.src()?);
            Term::brack(
                Term::comp(block(a + c, 0, a), f.clone()),
                Term::comp(block(a + c, a, c), g.clone()),
            )
        }
        Op::BoxTimes(g1, g2) => {
            let b = g1.dst()?;
            let a = g1.src()? - b;
            // (Δ_A × id_{B×B}) ; (id_A × tw_{A,B} × id_B) ; (g1 × g2)
            Term::comp(
                Term::prod(Term::diag(a), Term::id(2 * b)),
                Term::comp(
                    Term::prod(Term::id(a), Term::prod(Term::twist(a, b), Term::id(b))),
                    Term::prod(g1.clone(), g2.clone()),
                ),
            )
        }
        Op::CircT(g1, g2) => {
            let a = g1.src()? - g2.dst()?;
            let c = sig.src.0 - a;
            // (Δ_A × id_C) ; (id_A × g2) ; g1
            Term::comp(
                Term::prod(Term::diag(a), Term::id(c)),
                Term::comp(Term::prod(Term::id(a), g2.clone()), g1.clone()),
            )
        }
        _ => return None,
    })
}

/// Rewrites every macro into core constructors: the result contains only
/// zero, null, successor, single projections, empty multiple projections,
/// composition, recursion and bracket.
pub fn expand_macros(t: &Term) -> Result<Term> {
    arity_of(t)?;
    Ok(expand(t))
}

fn expand(t: &Term) -> Term {
    if let Some(u) = unfold_macro(t) {
        return expand(&u);
    }
    match t.children() {
        None => t.clone(),
        Some((l, r)) => {
            let (l2, r2) = (expand(l), expand(r));
            if &l2 == l && &r2 == r {
                t.clone()
            } else {
                Term::new(t.op().with_children(l2, r2).expect("node"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn add() -> Term {
        Term::rec(Term::id(1), Term::comp(Term::proj(2, 2), Term::succ()))
    }

    #[test]
    fn leaf_signatures() {
        assert_eq!(arity_of(&Term::succ()).unwrap(), Signature::new(1, 1));
        assert_eq!(arity_of(&Term::zero()).unwrap(), Signature::new(0, 1));
        assert_eq!(arity_of(&Term::mproj(3, vec![])).unwrap(), Signature::new(3, 0));
        assert_eq!(arity_of(&Term::twist(2, 1)).unwrap(), Signature::new(3, 3));
    }

    #[test]
    fn recursion_signature() {
        assert_eq!(arity_of(&add()).unwrap(), Signature::new(2, 1));
        // A = ∗ is allowed.
        let t = Term::rec(Term::zero(), Term::null());
        assert_eq!(arity_of(&t).unwrap(), Signature::new(1, 1));
    }

    #[test]
    fn composition_mismatch() {
        let t = Term::comp(Term::succ(), Term::proj(2, 1));
        match arity_of(&t) {
            Err(Error::ArityMismatch { position, .. }) => assert!(position.is_root()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_index_reports_position() {
        let t = Term::comp(Term::succ(), Term::brack(Term::succ(), Term::proj(2, 3)));
        match arity_of(&t) {
            Err(Error::BadIndex { position, .. }) => {
                assert_eq!(position, Position(vec![Dir::Right, Dir::Right]))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(arity_of(&Term::proj(0, 0)), Err(Error::BadIndex { .. })));
    }

    #[test]
    fn left_distribution_is_ill_typed() {
        // g ∘ ⟨f1, f2⟩ vs ⟨g ∘ f1, g ∘ f2⟩ with g : ℕ² → ℕ
        let g = add();
        let f = Term::succ();
        assert!(arity_of(&Term::comp(Term::brack(f.clone(), f.clone()), g.clone())).is_ok());
        let bad = Term::brack(Term::comp(f.clone(), g.clone()), Term::comp(f, g));
        assert!(matches!(arity_of(&bad), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn circt_infers_parameter_block() {
        // g1 : ℕ × ℕ → ℕ, g2 : ℕ × ∗ → ℕ
        let t = Term::circt(add(), Term::lifted_zero(1));
        assert_eq!(arity_of(&t).unwrap(), Signature::new(1, 1));
        let t = Term::circt(add(), Term::lifted_succ(1));
        assert_eq!(arity_of(&t).unwrap(), Signature::new(2, 1));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            expand_macros(&Term::twist(1, 1)).unwrap(),
            Term::brack(Term::proj(2, 2), Term::proj(2, 1))
        );
        assert_eq!(expand_macros(&Term::id(1)).unwrap(), Term::proj(1, 1));
        assert_eq!(
            expand_macros(&Term::prod(Term::succ(), Term::null())).unwrap(),
            Term::brack(
                Term::comp(Term::proj(2, 1), Term::succ()),
                Term::comp(Term::proj(2, 2), Term::null())
            )
        );
    }

    #[test]
    fn expand_is_idempotent_and_typed() {
        let t = Term::boxtimes(add(), add());
        let e = expand_macros(&t).unwrap();
        assert_eq!(e.sig(), t.sig());
        assert_eq!(expand_macros(&e).unwrap(), e);
        assert!(!format!("{e}").contains("bprod"));
    }

    #[test]
    fn subterm_and_replace() {
        let t = Term::comp(Term::null(), Term::succ());
        let left = Position(vec![Dir::Left]);
        assert_eq!(subterm(&t, &left).unwrap(), Term::null());
        assert_eq!(
            replace(&t, &left, Term::id(1)).unwrap(),
            Term::comp(Term::id(1), Term::succ())
        );
        assert!(matches!(
            replace(&t, &left, Term::proj(2, 1)),
            Err(Error::ArityMismatch { .. })
        ));
        let deep = Position(vec![Dir::Left, Dir::Left]);
        assert!(matches!(subterm(&t, &deep), Err(Error::InvalidPosition(_))));
    }

    #[test]
    fn equality_is_structural() {
        assert_eq!(add(), add());
        assert_ne!(add(), Term::rec(Term::id(1), Term::proj(2, 2)));
        assert_eq!(add().size(), 5);
        assert_eq!(add().rdepth(), 1);
    }
}
