//! Descriptions of primitive recursive functions as typed trees, the
//! coherence relations that identify descriptions of the same algorithm,
//! and tools built on them: an interpreter, a bounded equivalence prover,
//! recursion-depth analysis and a small library of sorting schemes.
//!
//! ```
//! use pralg::{surface, interp, complexity};
//!
//! let add = surface::parse("rec(id[1], comp(pi[2,2], s))").unwrap();
//! let out = interp::eval(&add, &interp::Tuple::from(vec![2u32, 3]), interp::DEFAULT_FUEL).unwrap();
//! assert_eq!(out.to_string(), "(5)");
//! assert_eq!(complexity::rdepth(&add), 1);
//! ```

pub mod cli;
pub mod complexity;
pub mod error;
pub mod gen;
pub mod interp;
pub mod rewrite;
pub mod stdlib;
pub mod surface;
pub mod term;

pub use error::{Error, Result};
pub use term::{arity_of, expand_macros, Arity, Dir, Op, Position, Signature, Term};
