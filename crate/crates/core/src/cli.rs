//! The `pralg` command line.
//!
//! Exit codes: 0 success, 1 domain error (syntax, arity, fuel), 2 refuted or
//! violations found, 3 unknown within budget, 64 usage error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};

use crate::complexity::{grz_bound, min_rdepth, rdepth, scheme_profile, depth_respect_check};
use crate::error::{Error, Result};
use crate::interp::{eval, ext_equal, Tuple, Verdict, DEFAULT_FUEL};
use crate::rewrite::{
    catalog, equiv, one_step_rewrites, prune_with_proof, replay, simplify_with_proof, steps_from_json,
    EquivOptions, EquivResult, GroupSet, Step,
};
use crate::stdlib;
use crate::surface::{self, GRAMMAR};
use crate::term::{arity_of, Term};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "pralg", version, about = "Primitive recursive descriptions, their rewrites and their recursion depth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A term given inline or as a file path.
#[derive(Args, Debug)]
struct TermArg {
    /// DSL text, or a path to a file holding DSL or JSON
    #[arg(long)]
    term: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type-check a term and print its signature
    Check(TermArg),
    /// Evaluate a term on one input
    Eval {
        #[command(flatten)]
        t: TermArg,
        /// Comma-separated naturals
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Print a term in canonical DSL form
    Print(TermArg),
    /// Print a term as a Graphviz digraph
    Dot(TermArg),
    /// Print a term as JSON
    Json(TermArg),
    /// Remove stupid subdescriptions; prints the result, or the proof with --proof
    Prune {
        #[command(flatten)]
        t: TermArg,
        #[arg(long)]
        proof: bool,
    },
    /// Normalize with pruning and a few coherence rules
    Simplify {
        #[command(flatten)]
        t: TermArg,
        #[arg(long)]
        proof: bool,
    },
    /// List the rule catalog, or the one-step rewrites of a term
    Rewrite {
        #[arg(long, conflicts_with = "term")]
        list: bool,
        #[arg(long)]
        term: Option<String>,
        #[arg(long, default_value = "I,II,Defn")]
        groups: String,
    },
    /// Search for a rewrite proof that two terms are equivalent
    Equiv {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value = "I,II,Defn")]
        groups: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recursion depth, and with --grz the Grzegorczyk class it bounds
    Rdepth {
        #[command(flatten)]
        t: TermArg,
        #[arg(long)]
        grz: bool,
    },
    /// Search the rewrite class for a term of smaller recursion depth
    MinRdepth {
        #[command(flatten)]
        t: TermArg,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value = "I,II,Defn")]
        groups: String,
    },
    /// Check on random terms that rewrites respect recursion depth
    Theorem2 {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        max_depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit the member of a scheme for input size n
    Scheme {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
    },
    /// Recursion depth of a scheme's members as CSV
    Profile {
        #[arg(long)]
        name: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Compare two terms on random inputs
    Exteq {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        max_value: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay a JSON proof from a term and print where it ends
    Replay {
        #[command(flatten)]
        t: TermArg,
        /// Path to the JSON step list
        #[arg(long)]
        proof: String,
    },
}

/// Reads a term from inline DSL or from a file. File contents starting with
/// `{` are JSON.
pub fn load_term(arg: &str) -> Result<Term> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    if text.trim_start().starts_with('{') {
        surface::from_json(&text)
    } else {
        surface::parse(&text)
    }
}

fn scheme_by_name(name: &str) -> Result<stdlib::Scheme> {
    stdlib::scheme(name).ok_or_else(|| {
        let known: Vec<&str> = stdlib::schemes().iter().map(|s| s.name).collect();
        Error::Invalid(format!("unknown scheme {name:?}; known: {}", known.join(", ")))
    })
}

/// Runs the command line with the process's stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the command line, writing to the given streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}\nterm syntax:\n{GRAMMAR}\n");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let mut text = String::new();
    let code = match cmd {
        Command::Check(t) => {
            let t = load_term(&t.term)?;
            text = format!("{}\n", arity_of(&t)?);
            EXIT_OK
        }
        Command::Eval { t, input, fuel } => {
            let t = load_term(&t.term)?;
            let x = Tuple::parse(&input)?;
            text = format!("{}\n", eval(&t, &x, fuel)?.to_plain());
            EXIT_OK
        }
        Command::Print(t) => {
            text = format!("{}\n", surface::print(&load_term(&t.term)?));
            EXIT_OK
        }
        Command::Dot(t) => {
            text = surface::to_dot(&load_term(&t.term)?);
            EXIT_OK
        }
        Command::Json(t) => {
            text = format!("{}\n", surface::to_json(&load_term(&t.term)?));
            EXIT_OK
        }
        Command::Prune { t, proof } => {
            let pf = prune_with_proof(&load_term(&t.term)?);
            text = if proof { format!("{}\n", pf.to_json()) } else { format!("{}\n", pf.end) };
            EXIT_OK
        }
        Command::Simplify { t, proof } => {
            let pf = simplify_with_proof(&load_term(&t.term)?);
            text = if proof { format!("{}\n", pf.to_json()) } else { format!("{}\n", pf.end) };
            EXIT_OK
        }
        Command::Rewrite { list, term, groups } => {
            let groups = GroupSet::parse(&groups)?;
            match (list, term) {
                (_, Some(t)) => {
                    let t = load_term(&t)?;
                    for rw in one_step_rewrites(&t, groups) {
                        text.push_str(&format!("{} {} {} {}\n", rw.rule.name, rw.dir, rw.pos, rw.result));
                    }
                }
                _ => {
                    for r in catalog().iter().filter(|r| groups.contains(r.group)) {
                        let arrow = if r.oriented() { "->" } else { "<->" };
                        text.push_str(&format!("{} {} {arrow} {}\n", r.name, r.lhs, r.rhs));
                    }
                }
            }
            EXIT_OK
        }
        Command::Equiv { left, right, budget, groups, seed } => {
            let (l, r) = (load_term(&left)?, load_term(&right)?);
            let opts = EquivOptions { budget, groups: GroupSet::parse(&groups)?, seed };
            match equiv(&l, &r, &opts)? {
                EquivResult::Proved(pf) => {
                    text = format!("{}\n", pf.to_json());
                    EXIT_OK
                }
                EquivResult::Refuted { witness, left, right } => {
                    text = format!("refuted at {witness}: {left} vs {right}\n");
                    EXIT_REFUTED
                }
                EquivResult::Unknown { states_explored } => {
                    text = format!("unknown after {states_explored} states\n");
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Rdepth { t, grz } => {
            let t = load_term(&t.term)?;
            text = format!("{}\n", rdepth(&t));
            if grz {
                text.push_str(&format!("{}\n", grz_bound(&t).ascii()));
            }
            EXIT_OK
        }
        Command::MinRdepth { t, budget, groups } => {
            let t = load_term(&t.term)?;
            let m = min_rdepth(&t, budget, GroupSet::parse(&groups)?);
            text = format!("{}\n{}\n{}\n", m.bound, m.witness, m.proof.to_json());
            EXIT_OK
        }
        Command::Theorem2 { trials, max_depth, seed } => {
            let report = depth_respect_check(trials, max_depth, seed);
            text = format!("{report}\n");
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_REFUTED
            }
        }
        Command::Scheme { name, n } => {
            text = format!("{}\n", scheme_by_name(&name)?.generate(n)?);
            EXIT_OK
        }
        Command::Profile { name, max_n } => {
            text = scheme_profile(&scheme_by_name(&name)?, max_n)?.to_csv();
            EXIT_OK
        }
        Command::Exteq { left, right, samples, max_value, seed } => {
            let (l, r) = (load_term(&left)?, load_term(&right)?);
            let (sl, sr) = (arity_of(&l)?, arity_of(&r)?);
            if sl != sr {
                return Err(Error::ArityMismatch {
                    position: Default::default(),
                    expected: sl.to_string(),
                    found: sr.to_string(),
                });
            }
            match ext_equal(&l, &r, samples, max_value, seed)? {
                Verdict::Equal { samples } => {
                    text = format!("equal on {samples} inputs\n");
                    EXIT_OK
                }
                Verdict::NotEqual { witness, left, right } => {
                    text = format!("differ at {witness}: {left} vs {right}\n");
                    EXIT_REFUTED
                }
            }
        }
        Command::Replay { t, proof } => {
            let start = load_term(&t.term)?;
            let json = std::fs::read_to_string(&proof).map_err(|e| Error::Invalid(format!("{proof}: {e}")))?;
            let steps: Vec<Step> = steps_from_json(&json)?;
            text = format!("{}\n", replay(&start, &steps)?);
            EXIT_OK
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("pralg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_example() {
        assert_eq!(run_str(&["eval", "--term", "comp(n,s)", "--input", "7"]), (0, "1\n".into(), String::new()));
    }

    #[test]
    fn rdepth_example() {
        let (code, out, _) = run_str(&["rdepth", "--term", "rec(id[1], comp(pi[2,2], s))"]);
        assert_eq!((code, out.as_str()), (0, "1\n"));
        let (_, out, _) = run_str(&["rdepth", "--term", "rec(id[1], comp(pi[2,2], s))", "--grz"]);
        assert_eq!(out, "1\nE^2\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["check", "--term", "comp(s"]).0, EXIT_DOMAIN);
        assert_eq!(run_str(&["check", "--term", "comp(pi[2,1],pi[2,1])"]).0, EXIT_DOMAIN);
        assert_eq!(run_str(&["equiv", "--left", "s", "--right", "n"]).0, EXIT_REFUTED);
        let (code, _, err) = run_str(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("term syntax"));
        assert_eq!(run_str(&["eval", "--term", "comp(s,s)", "--input", "1", "--fuel", "1"]).0, EXIT_DOMAIN);
    }
}
