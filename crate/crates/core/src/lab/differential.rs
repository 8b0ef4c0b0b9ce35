//! Syntactic comparison of two algorithms over a corpus or random terms.

use std::fmt;

use rayon::prelude::*;

use crate::abstraction::{abstract_var, translate, AlgorithmId, NormalClass};
use crate::term::{ClTerm, Combinator, LambdaTerm, Var};

use super::generate::{gen_beta_normal, gen_cl, gen_lambda, GeneratorConfig};

/// Where the lambda terms of a comparison come from.
#[derive(Clone, Debug)]
pub enum Source {
    /// Fixed terms; every entry is one trial.
    Corpus(Vec<LambdaTerm>),
    /// [`gen_beta_normal`] terms.
    BetaNormal(GeneratorConfig),
    /// [`gen_lambda`] terms, redexes included.
    Arbitrary(GeneratorConfig),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W = LambdaTerm> {
    /// No disagreement in `trials` trials.
    Equal {
        trials: usize,
    },
    /// The lowest-indexed trial on which the outputs differ.
    Distinguished {
        trial: usize,
        witness: W,
        out_a: ClTerm,
        out_b: ClTerm,
    },
    Unknown {
        reason: String,
    },
}

impl<W> Verdict<W> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }

    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished { .. })
    }
}

impl<W: fmt::Display> Verdict<W> {
    /// Line-oriented report; terms are printed in concrete syntax.
    pub fn render(&self, alg_a: AlgorithmId, alg_b: AlgorithmId) -> String {
        let mut out = format!("algorithms: {} vs {}\n", alg_a.cli_name(), alg_b.cli_name());
        match self {
            Verdict::Equal { trials } => {
                out += "verdict: equal\n";
                out += &format!("trials: {trials}\n");
            }
            Verdict::Distinguished {
                trial,
                witness,
                out_a,
                out_b,
            } => {
                out += "verdict: distinguished\n";
                out += &format!("trial: {trial}\n");
                out += &format!("witness: {witness}\n");
                out += &format!("output-a: {out_a}\n");
                out += &format!("output-b: {out_b}\n");
            }
            Verdict::Unknown { reason } => {
                out += "verdict: unknown\n";
                out += &format!("reason: {reason}\n");
            }
        }
        out
    }
}

fn first_mismatch<W, F>(trials: usize, probe: F) -> Verdict<W>
where
    W: Send,
    F: Fn(usize) -> Option<(W, ClTerm, ClTerm)> + Sync,
{
    if trials == 0 {
        return Verdict::Unknown {
            reason: "no trials to run".into(),
        };
    }
    match (0..trials)
        .into_par_iter()
        .find_map_first(|i| probe(i).map(|found| (i, found)))
    {
        Some((trial, (witness, out_a, out_b))) => Verdict::Distinguished {
            trial,
            witness,
            out_a,
            out_b,
        },
        None => Verdict::Equal { trials },
    }
}

/// Translates each term under both algorithms and reports the first
/// syntactic mismatch. With a corpus, `trials` caps the number of entries
/// used.
pub fn differential(
    alg_a: AlgorithmId,
    alg_b: AlgorithmId,
    source: &Source,
    trials: usize,
) -> Verdict {
    let term = |i: usize| match source {
        Source::Corpus(terms) => terms[i].clone(),
        Source::BetaNormal(cfg) => gen_beta_normal(&cfg.for_trial(i as u64)),
        Source::Arbitrary(cfg) => gen_lambda(&cfg.for_trial(i as u64)),
    };
    let trials = match source {
        Source::Corpus(terms) => terms.len().min(trials),
        _ => trials,
    };
    first_mismatch(trials, |i| {
        let t = term(i);
        let a = translate(alg_a, &t);
        let b = translate(alg_b, &t);
        (a != b).then_some((t, a, b))
    })
}

/// Compares `[x] t` under both algorithms for random CL terms `t` over the
/// generator's variable pool and `atoms`, optionally drawn from a normal
/// class. The pool should contain `x`.
pub fn differential_abstract(
    alg_a: AlgorithmId,
    alg_b: AlgorithmId,
    x: &Var,
    cfg: &GeneratorConfig,
    atoms: &[Combinator],
    class: Option<NormalClass>,
    trials: usize,
) -> Verdict<ClTerm> {
    first_mismatch(trials, |i| {
        let t = gen_cl(&cfg.for_trial(i as u64), atoms, class);
        let a = abstract_var(alg_a, x, &t);
        let b = abstract_var(alg_b, x, &t);
        (a != b).then_some((t, a, b))
    })
}
