//! Standard combinators and scheme generators.
//!
//! The sorting schemes are oblivious compare-exchange networks. The usual
//! presentations of insertion sort and merge sort branch on comparisons;
//! the description language has no conditional, so each comparison becomes
//! a `(min, max)` gate. Per size the denoted function is the same, and the
//! structural recursion of each algorithm is kept:
//! `InsertionSort_n = (InsertionSort_{n-1} × id) ; Insert_n` and
//! `MergeSort_n = (MergeSort_{⌊n/2⌋} × MergeSort_{⌈n/2⌉}) ; Merge`.

use crate::error::{Error, Result};
use crate::term::Term;

/// `0 ∘ !_A : ℕ^a → ℕ`.
pub fn zero_const(a: usize) -> Term {
    Term::lifted_zero(a)
}

/// Predecessor, cut off at zero. Iterates `(x, y) ↦ (x + 1, x)` from
/// `(0, 0)` and keeps the second component, since the recursion step never
/// sees the counter.
pub fn pred() -> Term {
    let base = Term::brack(Term::zero(), Term::zero());
    let step = Term::brack(Term::comp(Term::proj(2, 1), Term::succ()), Term::proj(2, 1));
    Term::comp(Term::rec(base, step), Term::proj(2, 2))
}

/// `(x, y) ↦ x + y`, recursing on `y`.
pub fn add() -> Term {
    Term::rec(Term::id(1), Term::comp(Term::proj(2, 2), Term::succ()))
}

/// `(x, y) ↦ x · y`.
pub fn mult() -> Term {
    let step = Term::comp(Term::brack(Term::proj(2, 2), Term::proj(2, 1)), add());
    Term::rec(zero_const(1), step)
}

/// Cut-off subtraction `x ∸ y`.
pub fn monus() -> Term {
    Term::rec(Term::id(1), Term::comp(Term::proj(2, 2), pred()))
}

/// `1` at zero, `0` elsewhere.
pub fn iszero() -> Term {
    Term::rec(Term::comp(Term::zero(), Term::succ()), Term::null())
}

/// `1` if `x ≤ y`, else `0`.
pub fn leq() -> Term {
    Term::comp(monus(), iszero())
}

/// `x ∸ (x ∸ y)`.
pub fn min2() -> Term {
    Term::comp(Term::brack(Term::proj(2, 1), monus()), monus())
}

/// `y + (x ∸ y)`.
pub fn max2() -> Term {
    Term::comp(Term::brack(Term::proj(2, 2), monus()), add())
}

/// `(x, y) ↦ (min, max)`.
pub fn compare_exchange() -> Term {
    Term::brack(min2(), max2())
}

/// `f × g`, dropping zero-width identities.
fn prod_opt(f: Term, g: Term) -> Term {
    match (f.sig().map(|s| s.src.0), g.sig().map(|s| s.src.0)) {
        (Some(0), _) if f.dst() == Some(0) => g,
        (_, Some(0)) if g.dst() == Some(0) => f,
        _ => Term::prod(f, g),
    }
}

/// Right-nested composition of a non-empty chain.
fn chain(mut stages: Vec<Term>) -> Term {
    let last = stages.pop().expect("non-empty chain");
    stages.into_iter().rev().fold(last, |acc, s| Term::comp(s, acc))
}

/// A compare-exchange gate on wires `i` and `j` (0-based, distinct) of
/// `n`: the minimum goes to `i`, the maximum to `j`. Unless `j = i + 1`,
/// the two wires are brought to the front by a permutation and put back
/// afterwards.
pub fn gate(n: usize, i: usize, j: usize) -> Term {
    assert!(i != j && i < n && j < n, "gate wires out of range");
    if j == i + 1 {
        return prod_opt(Term::id(i), prod_opt(compare_exchange(), Term::id(n - j - 1)));
    }
    let mut order = vec![i, j];
    order.extend((0..n).filter(|w| *w != i && *w != j));
    let mut inverse = vec![0; n];
    for (slot, w) in order.iter().enumerate() {
        inverse[*w] = slot;
    }
    Term::comp(
        Term::mproj(n, order.iter().map(|w| w + 1).collect()),
        Term::comp(
            prod_opt(compare_exchange(), Term::id(n - 2)),
            Term::mproj(n, inverse.iter().map(|s| s + 1).collect()),
        ),
    )
}

/// The insertion stage on `n` wires: the last wire sinks into the sorted
/// prefix through adjacent gates `(n-2, n-1)`, …, `(0, 1)`.
pub fn insert(n: usize) -> Term {
    chain((0..n - 1).rev().map(|i| gate(n, i, i + 1)).collect())
}

pub fn insertion_sort(n: usize) -> Result<Term> {
    if n < 1 {
        return Err(Error::Invalid("insertion sort needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(Term::id(1));
    }
    Ok(Term::comp(Term::prod(insertion_sort(n - 1)?, Term::id(1)), insert(n)))
}

/// Batcher's odd-even merge of two sorted wire lists, for any lengths.
/// Appends the gates to `gates` and returns the wires in output order.
pub fn odd_even_merge(a: &[usize], b: &[usize], gates: &mut Vec<(usize, usize)>) -> Vec<usize> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    if a.len() == 1 && b.len() == 1 {
        gates.push((a[0], b[0]));
        return vec![a[0], b[0]];
    }
    let evens = |xs: &[usize]| xs.iter().step_by(2).copied().collect::<Vec<_>>();
    let odds = |xs: &[usize]| xs.iter().skip(1).step_by(2).copied().collect::<Vec<_>>();
    let c = odd_even_merge(&evens(a), &evens(b), gates);
    let d = odd_even_merge(&odds(a), &odds(b), gates);
    let mut out = vec![c[0]];
    let pairs = d.len().min(c.len() - 1);
    for k in 0..pairs {
        gates.push((d[k], c[k + 1]));
        out.push(d[k]);
        out.push(c[k + 1]);
    }
    out.extend(&c[pairs + 1..]);
    out.extend(&d[pairs..]);
    out
}

/// The merge stage for sorted blocks of `m` and `k` wires.
pub fn merge(m: usize, k: usize) -> Term {
    let n = m + k;
    let a: Vec<usize> = (0..m).collect();
    let b: Vec<usize> = (m..n).collect();
    let mut gates = Vec::new();
    let order = odd_even_merge(&a, &b, &mut gates);
    let mut stages: Vec<Term> = gates
        .iter()
        .map(|&(x, y)| gate(n, x, y))
        .collect();
    if order.iter().enumerate().any(|(slot, w)| slot != *w) {
        stages.push(Term::mproj(n, order.iter().map(|w| w + 1).collect()));
    }
    if stages.is_empty() {
        return Term::id(n);
    }
    chain(stages)
}

pub fn merge_sort(n: usize) -> Result<Term> {
    if n < 1 {
        return Err(Error::Invalid("merge sort needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(Term::id(1));
    }
    let (lo, hi) = (n / 2, n - n / 2);
    Ok(Term::comp(Term::prod(merge_sort(lo)?, merge_sort(hi)?), merge(lo, hi)))
}

/// Balanced tree of `max2`.
pub fn max_tree(n: usize) -> Result<Term> {
    if n < 1 {
        return Err(Error::Invalid("max needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(Term::id(1));
    }
    let (lo, hi) = (n / 2, n - n / 2);
    Ok(Term::comp(Term::prod(max_tree(lo)?, max_tree(hi)?), max2()))
}

/// A family of descriptions, one per input size.
#[derive(Clone, Copy)]
pub struct Scheme {
    pub name: &'static str,
    pub min_index: usize,
    arity: fn(usize) -> (usize, usize),
    build: fn(usize) -> Result<Term>,
}

impl Scheme {
    pub fn arity_shape(&self, n: usize) -> (usize, usize) {
        (self.arity)(n)
    }

    pub fn generate(&self, n: usize) -> Result<Term> {
        if n < self.min_index {
            return Err(Error::Invalid(format!("scheme {} starts at n = {}", self.name, self.min_index)));
        }
        (self.build)(n)
    }
}

impl std::fmt::Debug for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Scheme({})", self.name)
    }
}

pub fn identity_scheme() -> Scheme {
    Scheme { name: "id", min_index: 0, arity: |n| (n, n), build: |n| Ok(Term::id(n)) }
}

pub fn max_scheme() -> Scheme {
    Scheme { name: "max", min_index: 1, arity: |n| (n, 1), build: max_tree }
}

pub fn insertion_sort_scheme() -> Scheme {
    Scheme { name: "insertion-sort", min_index: 1, arity: |n| (n, n), build: insertion_sort }
}

pub fn merge_sort_scheme() -> Scheme {
    Scheme { name: "merge-sort", min_index: 1, arity: |n| (n, n), build: merge_sort }
}

pub fn schemes() -> [Scheme; 4] {
    [identity_scheme(), max_scheme(), insertion_sort_scheme(), merge_sort_scheme()]
}

pub fn scheme(name: &str) -> Option<Scheme> {
    schemes().into_iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::{eval, Tuple, DEFAULT_FUEL};
    use crate::term::{arity_of, Signature};

    fn run(t: &Term, x: &[u32]) -> Vec<u32> {
        let out = eval(t, &Tuple::from(x.to_vec()), DEFAULT_FUEL).unwrap();
        out.0.iter().map(|v| u32::try_from(v).unwrap()).collect()
    }

    #[test]
    fn signatures() {
        for (t, s) in [
            (pred(), (1, 1)),
            (add(), (2, 1)),
            (mult(), (2, 1)),
            (monus(), (2, 1)),
            (iszero(), (1, 1)),
            (leq(), (2, 1)),
            (min2(), (2, 1)),
            (max2(), (2, 1)),
            (compare_exchange(), (2, 2)),
            (zero_const(3), (3, 1)),
        ] {
            assert_eq!(arity_of(&t).unwrap(), Signature::new(s.0, s.1), "{t}");
        }
    }

    #[test]
    fn frozen_values() {
        assert_eq!(run(&pred(), &[0]), [0]);
        assert_eq!(run(&pred(), &[5]), [4]);
        assert_eq!(run(&monus(), &[3, 5]), [0]);
        assert_eq!(run(&monus(), &[5, 3]), [2]);
        assert_eq!(run(&compare_exchange(), &[9, 4]), [4, 9]);
        assert_eq!(run(&mult(), &[10, 10]), [100]);
        assert_eq!(add().rdepth(), 1);
        assert_eq!(mult().rdepth(), 2);
        assert!(monus().rdepth() >= 2);
    }

    #[test]
    fn pred_and_iszero_exhaustive() {
        for n in 0..=20u32 {
            assert_eq!(run(&pred(), &[n]), [n.saturating_sub(1)]);
            assert_eq!(run(&iszero(), &[n]), [(n == 0) as u32]);
        }
    }

    #[test]
    fn scheme_examples() {
        assert_eq!(run(&insertion_sort(3).unwrap(), &[3, 1, 2]), [1, 2, 3]);
        assert_eq!(run(&insertion_sort(1).unwrap(), &[7]), [7]);
        assert_eq!(run(&insertion_sort(4).unwrap(), &[5, 5, 1, 5]), [1, 5, 5, 5]);
        assert_eq!(run(&merge_sort(4).unwrap(), &[4, 3, 2, 1]), [1, 2, 3, 4]);
        assert_eq!(run(&merge_sort(1).unwrap(), &[0]), [0]);
        assert_eq!(run(&merge_sort(2).unwrap(), &[2, 2]), [2, 2]);
        assert_eq!(run(&max_tree(3).unwrap(), &[2, 9, 4]), [9]);
        assert_eq!(run(&max_tree(1).unwrap(), &[5]), [5]);
        assert_eq!(run(&max_tree(4).unwrap(), &[0, 0, 0, 0]), [0]);
        assert!(insertion_sort(0).is_err());
        assert!(merge_sort(0).is_err());
        assert!(max_tree(0).is_err());
    }

    #[test]
    fn merge_network_zero_one_principle() {
        // every pair of sorted 0-1 blocks must come out sorted
        for m in 0..=6 {
            for k in 0..=6 {
                let a: Vec<usize> = (0..m).collect();
                let b: Vec<usize> = (m..m + k).collect();
                let mut gates = Vec::new();
                let order = odd_even_merge(&a, &b, &mut gates);
                let mut seen = order.clone();
                seen.sort();
                assert_eq!(seen, (0..m + k).collect::<Vec<_>>());
                for za in 0..=m {
                    for zb in 0..=k {
                        let mut w: Vec<u8> = (0..m).map(|i| (i >= za) as u8).chain((0..k).map(|i| (i >= zb) as u8)).collect();
                        for &(x, y) in &gates {
                            let (lo, hi) = (w[x].min(w[y]), w[x].max(w[y]));
                            w[x] = lo;
                            w[y] = hi;
                        }
                        let out: Vec<u8> = order.iter().map(|&i| w[i]).collect();
                        assert!(out.windows(2).all(|p| p[0] <= p[1]), "m={m} k={k} {out:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn scheme_arities() {
        for s in schemes() {
            for n in s.min_index..=5 {
                let t = s.generate(n).unwrap();
                let (src, dst) = s.arity_shape(n);
                assert_eq!(arity_of(&t).unwrap(), Signature::new(src, dst), "{} {n}", s.name);
            }
        }
        assert!(scheme("merge-sort").is_some());
        assert!(scheme("bogo").is_none());
    }
}
