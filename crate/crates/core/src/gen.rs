//! Random well-typed terms and random rule instances, for property tests and
//! the recursion-depth checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::rewrite::{hexagon_left, Rule};
use crate::term::{block, Term};

/// Arities above this are never requested from a node's children.
const MAX_ARITY: usize = 5;

fn random_indices<R: Rng>(rng: &mut R, k: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(1..=k)).collect()
}

/// A random leaf of type `src → dst`. Falls back to a bracket of zeros when
/// no leaf has that type (`src = 0`, `dst ≥ 2`).
pub fn random_leaf<R: Rng>(rng: &mut R, src: usize, dst: usize) -> Term {
    let mut options: Vec<Term> = Vec::new();
    if src == 0 && dst == 1 {
        options.push(Term::zero());
    }
    if src == 1 && dst == 1 {
        options.extend([Term::null(), Term::succ(), Term::succ()]);
    }
    if src >= 1 && dst == 1 {
        options.push(Term::proj(src, rng.gen_range(1..=src)));
    }
    if src == dst {
        options.push(Term::id(src));
        if src >= 2 {
            let a = rng.gen_range(1..src);
            options.push(Term::twist(a, src - a));
        }
    }
    if dst == 2 * src && src > 0 {
        options.push(Term::diag(src));
    }
    if src >= 1 || dst == 0 {
        options.push(Term::mproj(src, random_indices(rng, src, dst)));
    }
    match options.choose(rng) {
        Some(t) => t.clone(),
        None => Term::brack(Term::zero(), random_leaf(rng, 0, dst - 1)),
    }
}

/// A random term of type `src → dst` of height at most `depth`.
pub fn random_term<R: Rng>(rng: &mut R, depth: usize, src: usize, dst: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.25) {
        return random_leaf(rng, src, dst);
    }
    let d = depth - 1;
    // a few attempts to find a node kind that fits the arities
    for _ in 0..8 {
        match rng.gen_range(0..8) {
            0..=2 => {
                let mid = rng.gen_range(1..=3);
                return Term::comp(random_term(rng, d, src, mid), random_term(rng, d, mid, dst));
            }
            3 if dst >= 2 => {
                let b = rng.gen_range(1..dst);
                return Term::brack(random_term(rng, d, src, b), random_term(rng, d, src, dst - b));
            }
            4 if src >= 1 && src - 1 + dst <= MAX_ARITY => {
                let a = src - 1;
                return Term::rec(random_term(rng, d, a, dst), random_term(rng, d, a + dst, dst));
            }
            5 if src >= 2 && dst >= 2 => {
                let a = rng.gen_range(1..src);
                let b = rng.gen_range(1..dst);
                return Term::prod(random_term(rng, d, a, b), random_term(rng, d, src - a, dst - b));
            }
            6 if dst >= 2 && dst.is_multiple_of(2) && src >= dst => {
                let b = dst / 2;
                let a = src - dst;
                return Term::boxtimes(random_term(rng, d, a + b, b), random_term(rng, d, a + b, b));
            }
            7 => {
                let a = rng.gen_range(0..=src);
                let inner = rng.gen_range(1..=2);
                if a + inner <= MAX_ARITY {
                    return Term::circt(random_term(rng, d, a + inner, dst), random_term(rng, d, src, inner));
                }
            }
            _ => {}
        }
    }
    random_leaf(rng, src, dst)
}

/// A random term with random small arities.
pub fn random_typed<R: Rng>(rng: &mut R, depth: usize) -> Term {
    let src = rng.gen_range(0..=3);
    let dst = rng.gen_range(1..=2);
    random_term(rng, depth, src, dst)
}

/// A small metavariable for rule instances.
fn mv<R: Rng>(rng: &mut R, src: usize, dst: usize) -> Term {
    random_term(rng, 2, src, dst)
}

/// A random block projection form selecting inputs `start+1 ..= start+len`
/// of `k`.
fn block_form<R: Rng>(rng: &mut R, k: usize, start: usize, len: usize) -> Term {
    if len == 1 && rng.gen_bool(0.5) {
        Term::proj(k, start + 1)
    } else if start == 0 && len == k && rng.gen_bool(0.5) {
        Term::id(k)
    } else {
        block(k, start, len)
    }
}

/// A random redex for `rule` in its forward direction, or `None` for a rule
/// the generator does not know.
pub fn rule_instance<R: Rng>(rule: &Rule, rng: &mut R) -> Option<Term> {
    let a = rng.gen_range(0..=2);
    let b = rng.gen_range(1..=2);
    let c = rng.gen_range(1..=2);
    let k = rng.gen_range(1..=3);
    Some(match rule.name {
        "I.1" => loop {
            let a = rng.gen_range(1..=3);
            let f = mv(rng, a, 1);
            if f != Term::proj(a, 1) {
                break Term::comp(f, Term::null());
            }
        },
        "I.2" | "I.3" => {
            let src = a + 1;
            let f = mv(rng, src, b);
            let g = mv(rng, src, c);
            let p = if rule.name == "I.2" { block_form(rng, b + c, 0, b) } else { block_form(rng, b + c, b, c) };
            Term::comp(Term::brack(f, g), p)
        }
        "I.4" => {
            let f = mv(rng, a, b);
            let g = mv(rng, a + b, b);
            Term::circt(Term::rec(f, g), Term::lifted_zero(a))
        }
        "II.1" => {
            let m1 = rng.gen_range(1..=2);
            let m2 = rng.gen_range(1..=2);
            Term::comp(Term::comp(mv(rng, k, m1), mv(rng, m1, m2)), mv(rng, m2, b))
        }
        "II.2" => {
            let f = mv(rng, k, b);
            match rng.gen_range(0..3) {
                0 => Term::comp(Term::id(k), f),
                1 => Term::comp(f, Term::id(b)),
                _ => Term::comp(block(k, 0, k), f),
            }
        }
        "II.3" => {
            let m = rng.gen_range(1..=2);
            Term::comp(mv(rng, k, m), Term::brack(mv(rng, m, b), mv(rng, m, c)))
        }
        "II.4" => Term::brack(Term::brack(mv(rng, k, 1), mv(rng, k, b)), mv(rng, k, c)),
        "II.5" => Term::brack(mv(rng, k, b), mv(rng, k, c)),
        "II.6" => {
            let e1 = block_form(rng, k, 0, k);
            let e2 = block_form(rng, k, 0, k);
            Term::brack(e1, e2)
        }
        "II.7" => {
            let a = rng.gen_range(1..=3);
            Term::comp(Term::twist(a, b), Term::twist(b, a))
        }
        "II.8" => hexagon_left(rng.gen_range(1..=2), b, c),
        "II.9" => {
            let (f1, f2) = (mv(rng, a, b), mv(rng, a, b));
            let (g1, g2) = (mv(rng, a + b, b), mv(rng, a + b, b));
            Term::rec(Term::brack(f1, f2), Term::boxtimes(g1, g2))
        }
        "II.10" => {
            let d = c;
            let f = mv(rng, a, b);
            let g1 = mv(rng, a + b, d);
            let g2 = mv(rng, a + d, b);
            Term::circt(g1.clone(), Term::rec(f, Term::circt(g2, g1)))
        }
        "II.11" => {
            let f = mv(rng, a, b);
            let g = mv(rng, a + b, b);
            Term::circt(Term::rec(f, g), Term::lifted_succ(a))
        }
        "III.1" => {
            let f = mv(rng, a, b);
            Term::rec(f, block_form(rng, a + b, a, b))
        }
        "Defn.Prod" => {
            let c_src = rng.gen_range(0..=2);
            Term::prod(mv(rng, k, b), mv(rng, c_src, c))
        }
        "Defn.Diag" => Term::diag(k),
        "Defn.Twist" => Term::twist(a + 1, rng.gen_range(0..=3)),
        "Defn.BoxTimes" => Term::boxtimes(mv(rng, a + b, b), mv(rng, a + b, b)),
        "Defn.CircT" => {
            let cc = rng.gen_range(0..=2);
            let d = rng.gen_range(1..=2);
            Term::circt(mv(rng, a + d, b), mv(rng, a + cc, d))
        }
        "Defn.MultiProj" => {
            if rng.gen_bool(0.3) {
                Term::id(k)
            } else {
                let len = rng.gen_range(1..=4);
                Term::mproj(k, random_indices(rng, k, len))
            }
        }
        "Derived.Interchange" => {
            let (m1, m2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            Term::comp(
                Term::prod(mv(rng, a + 1, m1), mv(rng, k, m2)),
                Term::prod(mv(rng, m1, b), mv(rng, m2, c)),
            )
        }
        "Derived.ProdAssoc" => Term::prod(Term::prod(mv(rng, 1, b), mv(rng, k, 1)), mv(rng, a, c)),
        "Derived.ProdId" => Term::prod(Term::id(k), Term::id(b)),
        _ => return None,
    })
}

/// A random term for the recursion-depth checks: either a plain random term
/// or a rule instance placed in a random context, so that the recursion
/// rules actually fire.
pub fn depth_check_term<R: Rng>(rng: &mut R, max_depth: usize, rules: &[&'static Rule]) -> Term {
    if rules.is_empty() || rng.gen_bool(0.6) {
        return random_typed(rng, max_depth);
    }
    let rule = rules[rng.gen_range(0..rules.len())];
    let redex = rule_instance(rule, rng).expect("known rule");
    let sig = redex.sig().expect("instances are typed");
    match rng.gen_range(0..3) {
        0 => redex,
        1 => Term::comp(redex, random_term(rng, max_depth.saturating_sub(3), sig.dst.0, 1)),
        _ => Term::comp(random_term(rng, max_depth.saturating_sub(3), sig.src.0, sig.src.0), redex),
    }
}
