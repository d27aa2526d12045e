//! Big-integer semantics and randomized extensional comparison.
//!
//! Macros are evaluated by their defining formulas, without expansion.
//! Every node visit and every iteration of a recursion step costs one unit
//! of fuel, so evaluation of any term terminates the caller even when the
//! denoted function is astronomically slow.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::term::{arity_of, Op, Term};

pub const DEFAULT_FUEL: u64 = 10_000_000;

/// A point of `ℕ^k`. The empty tuple inhabits the terminal object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Tuple(pub Vec<BigUint>);

impl Tuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(k: usize) -> Tuple {
        Tuple(vec![BigUint::zero(); k])
    }

    /// Comma-separated values without parentheses, as accepted by `parse`.
    pub fn to_plain(&self) -> String {
        self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses `"3,1,2"` (empty string for the empty tuple).
    pub fn parse(s: &str) -> Result<Tuple> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Tuple::default());
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<BigUint>()
                    .map_err(|_| Error::Invalid(format!("`{}` is not a natural number", p.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Tuple)
    }
}

impl<T: Into<BigUint>> From<Vec<T>> for Tuple {
    fn from(v: Vec<T>) -> Tuple {
        Tuple(v.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_plain())
    }
}

struct OutOfFuel;

fn spend(fuel: &mut u64, n: u64) -> Result<(), OutOfFuel> {
    if *fuel < n {
        *fuel = 0;
        return Err(OutOfFuel);
    }
    *fuel -= n;
    Ok(())
}

fn src(t: &Term) -> usize {
    t.src().expect("evaluation is only called on typed terms")
}

fn dst(t: &Term) -> usize {
    t.dst().expect("evaluation is only called on typed terms")
}

fn ev(t: &Term, x: &[BigUint], fuel: &mut u64) -> Result<Vec<BigUint>, OutOfFuel> {
    spend(fuel, 1)?;
    Ok(match t.op() {
        Op::Zero | Op::Null => vec![BigUint::zero()],
        Op::Succ => vec![&x[0] + 1u32],
        Op::Proj { i, .. } => vec![x[i - 1].clone()],
        Op::MultiProj { xs, .. } => xs.iter().map(|i| x[i - 1].clone()).collect(),
        Op::Id(_) => x.to_vec(),
        Op::Diag(_) => x.iter().chain(x).cloned().collect(),
        Op::Twist(a, _) => x[*a..].iter().chain(&x[..*a]).cloned().collect(),
        Op::Comp(f, g) => {
            let y = ev(f, x, fuel)?;
            ev(g, &y, fuel)?
        }
        Op::Rec(f, g) => {
            let a = src(f);
            let n = x[a].to_u64().ok_or(OutOfFuel)?;
            // Each iteration costs at least one unit; fail fast on hopeless counters.
            if n > *fuel {
                *fuel = 0;
                return Err(OutOfFuel);
            }
            let mut h = ev(f, &x[..a], fuel)?;
            let mut arg: Vec<BigUint> = x[..a].to_vec();
            for _ in 0..n {
                spend(fuel, 1)?;
                arg.truncate(a);
                arg.append(&mut h);
                h = ev(g, &arg, fuel)?;
            }
            h
        }
        Op::Brack(f, g) => {
            let mut y = ev(f, x, fuel)?;
            y.extend(ev(g, x, fuel)?);
            y
        }
        Op::Prod(f, g) => {
            let a = src(f);
            let mut y = ev(f, &x[..a], fuel)?;
            y.extend(ev(g, &x[a..], fuel)?);
            y
        }
        Op::BoxTimes(g1, g2) => {
            let b = dst(g1);
            let a = x.len() - 2 * b;
            let arg1: Vec<BigUint> = x[..a + b].to_vec();
            let arg2: Vec<BigUint> = x[..a].iter().chain(&x[a + b..]).cloned().collect();
            let mut y = ev(g1, &arg1, fuel)?;
            y.extend(ev(g2, &arg2, fuel)?);
            y
        }
        Op::CircT(g1, g2) => {
            let a = src(g1) - dst(g2);
            let mut arg: Vec<BigUint> = x[..a].to_vec();
            arg.extend(ev(g2, x, fuel)?);
            ev(g1, &arg, fuel)?
        }
    })
}

/// Evaluates `t` at `x` with the given step budget.
pub fn eval(t: &Term, x: &Tuple, fuel: u64) -> Result<Tuple> {
    let sig = arity_of(t)?;
    if x.len() != sig.src.0 {
        return Err(Error::InputLength { expected: sig.src.0, found: x.len() });
    }
    let mut budget = fuel;
    ev(t, &x.0, &mut budget)
        .map(Tuple)
        .map_err(|OutOfFuel| Error::FuelExhausted { input: x.to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No distinguishing input among `samples` tested. Not a proof.
    Equal { samples: usize },
    NotEqual { witness: Tuple, left: Tuple, right: Tuple },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }
}

/// The inputs `ext_equal` tries: all zeros, `(0,…,0,1)`, then `samples`
/// uniform tuples with coordinates in `[0, max_value]`.
pub fn sample_inputs(k: usize, samples: usize, max_value: u64, seed: u64) -> Vec<Tuple> {
    let mut out = vec![Tuple::zeros(k)];
    if k > 0 {
        let mut t = Tuple::zeros(k);
        t.0[k - 1] = BigUint::from(1u32);
        out.push(t);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        out.push(Tuple((0..k).map(|_| BigUint::from(rng.gen_range(0..=max_value))).collect()));
    }
    out
}

/// Randomized extensional comparison with the default fuel.
pub fn ext_equal(t1: &Term, t2: &Term, samples: usize, max_value: u64, seed: u64) -> Result<Verdict> {
    ext_equal_with_fuel(t1, t2, samples, max_value, seed, DEFAULT_FUEL)
}

pub fn ext_equal_with_fuel(
    t1: &Term,
    t2: &Term,
    samples: usize,
    max_value: u64,
    seed: u64,
    fuel: u64,
) -> Result<Verdict> {
    let (s1, s2) = (arity_of(t1)?, arity_of(t2)?);
    if s1 != s2 {
        return Err(Error::ArityMismatch {
            position: Default::default(),
            expected: s1.to_string(),
            found: s2.to_string(),
        });
    }
    let inputs = sample_inputs(s1.src.0, samples, max_value, seed);
    let n = inputs.len();
    for x in inputs {
        let left = eval(t1, &x, fuel)?;
        let right = eval(t2, &x, fuel)?;
        if left != right {
            return Ok(Verdict::NotEqual { witness: x, left, right });
        }
    }
    Ok(Verdict::Equal { samples: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse;

    fn run(src: &str, x: Vec<u32>) -> Tuple {
        eval(&parse(src).unwrap(), &Tuple::from(x), DEFAULT_FUEL).unwrap()
    }

    #[test]
    fn basic_functions() {
        assert_eq!(run("n", vec![7]), Tuple::from(vec![0u32]));
        assert_eq!(run("s", vec![3]), Tuple::from(vec![4u32]));
        assert_eq!(run("z", vec![]), Tuple::from(vec![0u32]));
        assert_eq!(run("tw[1,1]", vec![5, 9]), Tuple::from(vec![9u32, 5]));
        assert_eq!(run("tw[2,1]", vec![1, 2, 3]), Tuple::from(vec![3u32, 1, 2]));
        assert_eq!(run("comp(n,s)", vec![7]), Tuple::from(vec![1u32]));
    }

    #[test]
    fn addition_exhaustive() {
        let add = parse("rec(id[1],comp(pi[2,2],s))").unwrap();
        for a in 0..=10u32 {
            for b in 0..=10u32 {
                let out = eval(&add, &Tuple::from(vec![a, b]), DEFAULT_FUEL).unwrap();
                assert_eq!(out, Tuple::from(vec![a + b]));
            }
        }
    }

    #[test]
    fn recursion_base_case() {
        let t = parse("rec(s,comp(pi[2,2],n))").unwrap();
        assert_eq!(run("rec(s,comp(pi[2,2],n))", vec![4, 0]), run("s", vec![4]));
        assert_eq!(eval(&t, &Tuple::from(vec![4u32, 3]), 100).unwrap(), Tuple::from(vec![0u32]));
    }

    #[test]
    fn macros_by_definition() {
        assert_eq!(run("bprod(pi[2,1],comp(pi[2,2],s))", vec![7, 1, 2]), Tuple::from(vec![7u32, 3]));
        assert_eq!(run("bcomp(rec(id[1],comp(pi[2,2],s)),comp(pi[2,2],s))", vec![3, 4]), Tuple::from(vec![8u32]));
        assert_eq!(run("diag[2]", vec![1, 2]), Tuple::from(vec![1u32, 2, 1, 2]));
        assert_eq!(run("prod(s,n)", vec![1, 2]), Tuple::from(vec![2u32, 0]));
        assert_eq!(run("mpi[3;3,3,1]", vec![1, 2, 3]), Tuple::from(vec![3u32, 3, 1]));
    }

    #[test]
    fn fuel_is_finite() {
        let add = parse("rec(id[1],comp(pi[2,2],s))").unwrap();
        let e = eval(&add, &Tuple::from(vec![0u32, 1000]), 50).unwrap_err();
        assert_eq!(e, Error::FuelExhausted { input: "(0,1000)".into() });
        let e = eval(&add, &Tuple::parse("0,100000000000000000000000").unwrap(), 50).unwrap_err();
        assert!(matches!(e, Error::FuelExhausted { .. }));
    }

    #[test]
    fn input_length_checked() {
        assert!(matches!(
            eval(&Term::succ(), &Tuple::from(vec![1u32, 2]), 10),
            Err(Error::InputLength { .. })
        ));
    }

    #[test]
    fn ext_equal_examples() {
        let v = ext_equal(&Term::succ(), &Term::null(), 20, 10, 0).unwrap();
        assert_eq!(
            v,
            Verdict::NotEqual {
                witness: Tuple::from(vec![0u32]),
                left: Tuple::from(vec![1u32]),
                right: Tuple::from(vec![0u32]),
            }
        );
        let v = ext_equal(&Term::comp(Term::id(1), Term::succ()), &Term::succ(), 20, 10, 0).unwrap();
        assert_eq!(v, Verdict::Equal { samples: 22 });
        assert!(ext_equal(&Term::succ(), &Term::proj(2, 1), 5, 5, 0).is_err());
    }

    #[test]
    fn sampler_is_seeded() {
        assert_eq!(sample_inputs(3, 10, 50, 7), sample_inputs(3, 10, 50, 7));
        assert_ne!(sample_inputs(3, 10, 50, 7), sample_inputs(3, 10, 50, 8));
        assert_eq!(sample_inputs(2, 0, 5, 0), vec![Tuple::from(vec![0u32, 0]), Tuple::from(vec![0u32, 1])]);
    }
}
