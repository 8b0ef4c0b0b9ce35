//! Bracket abstraction algorithms and their induced translations.

mod engine;
mod normal;
mod rewrite;
mod tables;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::term::{ClTerm, Combinator, LambdaTerm, Var};

pub use engine::{EquationTrace, Path, ReplayError, TraceStep};
pub use normal::{is_s_normal, is_t_normal, is_tstar_normal, NormalClass};
pub use tables::Dir;

/// The seventeen abstraction algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgorithmId {
    /// Curry's `(fab)`: S-distribution, identity, then K.
    Fab,
    /// `(abf)`: identity, K for variable-free terms, then S-distribution.
    Abf,
    /// `(abf')`: `(fab)` plus the `K (s t)` optimisation.
    AbfPrime,
    /// `(abcf')`: `(abf')` plus the `S (K s) I = s` optimisation.
    AbcfPrime,
    Schonfinkel,
    SchonfinkelPrime,
    SchonfinkelMinusEta,
    SchonfinkelPrimeMinusEta,
    T,
    TPrime,
    /// Turner with closed heads `u`.
    TDoublePrime,
    TMinusEta,
    TPrimeMinusEta,
    AbsDash1,
    TStar,
    TStarPrime,
    TStarDoublePrime,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 17] = [
        AlgorithmId::Fab,
        AlgorithmId::Abf,
        AlgorithmId::AbfPrime,
        AlgorithmId::AbcfPrime,
        AlgorithmId::Schonfinkel,
        AlgorithmId::SchonfinkelPrime,
        AlgorithmId::SchonfinkelMinusEta,
        AlgorithmId::SchonfinkelPrimeMinusEta,
        AlgorithmId::T,
        AlgorithmId::TPrime,
        AlgorithmId::TDoublePrime,
        AlgorithmId::TMinusEta,
        AlgorithmId::TPrimeMinusEta,
        AlgorithmId::AbsDash1,
        AlgorithmId::TStar,
        AlgorithmId::TStarPrime,
        AlgorithmId::TStarDoublePrime,
    ];

    /// Name accepted on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            AlgorithmId::Fab => "fab",
            AlgorithmId::Abf => "abf",
            AlgorithmId::AbfPrime => "abf1",
            AlgorithmId::AbcfPrime => "abcf1",
            AlgorithmId::Schonfinkel => "s",
            AlgorithmId::SchonfinkelPrime => "s1",
            AlgorithmId::SchonfinkelMinusEta => "s-noeta",
            AlgorithmId::SchonfinkelPrimeMinusEta => "s1-noeta",
            AlgorithmId::T => "t",
            AlgorithmId::TPrime => "t1",
            AlgorithmId::TDoublePrime => "t2",
            AlgorithmId::TMinusEta => "t-noeta",
            AlgorithmId::TPrimeMinusEta => "t1-noeta",
            AlgorithmId::AbsDash1 => "absdash1",
            AlgorithmId::TStar => "tstar",
            AlgorithmId::TStarPrime => "tstar1",
            AlgorithmId::TStarDoublePrime => "tstar2",
        }
    }

    /// Conventional mathematical name.
    pub fn display_name(self) -> &'static str {
        match self {
            AlgorithmId::Fab => "(fab)",
            AlgorithmId::Abf => "(abf)",
            AlgorithmId::AbfPrime => "(abf')",
            AlgorithmId::AbcfPrime => "(abcf')",
            AlgorithmId::Schonfinkel => "S",
            AlgorithmId::SchonfinkelPrime => "S'",
            AlgorithmId::SchonfinkelMinusEta => "S-eta",
            AlgorithmId::SchonfinkelPrimeMinusEta => "S'-eta",
            AlgorithmId::T => "T",
            AlgorithmId::TPrime => "T'",
            AlgorithmId::TDoublePrime => "T''",
            AlgorithmId::TMinusEta => "T-eta",
            AlgorithmId::TPrimeMinusEta => "T'-eta",
            AlgorithmId::AbsDash1 => "Abs/Dash/1",
            AlgorithmId::TStar => "T*",
            AlgorithmId::TStarPrime => "T*'",
            AlgorithmId::TStarDoublePrime => "T*''",
        }
    }

    /// Whether the algorithm is the `(abf')` equations with an `Opt` table.
    pub fn is_optimisation_based(self) -> bool {
        !tables::table(self).opt.is_empty()
    }

    /// The combinators the algorithm may introduce.
    pub fn basis(self) -> &'static [Combinator] {
        use Combinator::*;
        match self {
            AlgorithmId::Fab
            | AlgorithmId::Abf
            | AlgorithmId::AbfPrime
            | AlgorithmId::AbcfPrime => &[S, K, I],
            AlgorithmId::Schonfinkel
            | AlgorithmId::SchonfinkelPrime
            | AlgorithmId::SchonfinkelMinusEta
            | AlgorithmId::SchonfinkelPrimeMinusEta => &[S, K, I, B, C],
            AlgorithmId::T
            | AlgorithmId::TPrime
            | AlgorithmId::TDoublePrime
            | AlgorithmId::TMinusEta
            | AlgorithmId::TPrimeMinusEta
            | AlgorithmId::AbsDash1 => &[S, K, I, B, C, SPrime, BPrime, CPrime],
            AlgorithmId::TStar | AlgorithmId::TStarPrime | AlgorithmId::TStarDoublePrime => {
                &[S, K, I, B, C, SPrime, CPrime, BStar]
            }
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown algorithm `{0}` (expected one of: fab, abf, abf1, abcf1, s, s1, s-noeta, s1-noeta, t, t1, t2, t-noeta, t1-noeta, absdash1, tstar, tstar1, tstar2)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for AlgorithmId {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.cli_name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

/// A translation stopped because an intermediate result grew past its limit.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("translation exceeded {limit} atoms")]
pub struct OutputTooLarge {
    pub limit: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AbstractionError {
    #[error("no variables to abstract")]
    NoVariables,
    #[error("variable {0} listed twice")]
    DuplicateVariable(Var),
    #[error("{0} has no optimisation table")]
    NotOptimisationBased(AlgorithmId),
}

/// `[x] t` under `alg`.
pub fn abstract_var(alg: AlgorithmId, x: &Var, t: &ClTerm) -> ClTerm {
    engine::abstract_plain(alg, x, t)
}

/// `[x] t` together with the equations and optimisations that fired.
pub fn abstract_traced(alg: AlgorithmId, x: &Var, t: &ClTerm) -> (ClTerm, EquationTrace) {
    engine::abstract_traced(alg, x, t)
}

/// Recomputes `[x] t` by applying exactly the steps in `trace`, failing if
/// any step is out of place or not applicable.
pub fn replay_trace(
    alg: AlgorithmId,
    x: &Var,
    t: &ClTerm,
    trace: &EquationTrace,
) -> Result<ClTerm, ReplayError> {
    engine::replay(alg, x, t, trace)
}

/// `Opt(S s1 s2)` under the algorithm's optimisation table.
pub fn opt(alg: AlgorithmId, s1: &ClTerm, s2: &ClTerm) -> Result<ClTerm, AbstractionError> {
    let table = tables::table(alg);
    if table.opt.is_empty() {
        return Err(AbstractionError::NotOptimisationBased(alg));
    }
    Ok(table
        .opt
        .iter()
        .find_map(|(_, rule)| rule.apply(s1, s2))
        .expect("every optimisation table ends in a catch-all"))
}

/// `[x1, ..., xn] t = [x1] ([x2] (... ([xn] t)))`.
pub fn abstract_multi(
    alg: AlgorithmId,
    xs: &[Var],
    t: &ClTerm,
) -> Result<ClTerm, AbstractionError> {
    if xs.is_empty() {
        return Err(AbstractionError::NoVariables);
    }
    let mut seen = BTreeSet::new();
    for x in xs {
        if !seen.insert(x) {
            return Err(AbstractionError::DuplicateVariable(x.clone()));
        }
    }
    Ok(xs
        .iter()
        .rev()
        .fold(t.clone(), |acc, x| abstract_var(alg, x, &acc)))
}

/// The induced translation: variables and constants are kept, applications
/// are translated componentwise, and `\x. t` becomes `[x]` of the
/// translated body.
pub fn translate(alg: AlgorithmId, t: &LambdaTerm) -> ClTerm {
    match t {
        LambdaTerm::Var(v) => ClTerm::Var(v.clone()),
        LambdaTerm::Prim(c) => ClTerm::Prim(*c),
        LambdaTerm::App(f, a) => ClTerm::app(translate(alg, f), translate(alg, a)),
        LambdaTerm::Abs(x, body) => abstract_var(alg, x, &translate(alg, body)),
    }
}

/// [`translate`], giving up once any abstract exceeds `max_atoms` atoms.
/// Algorithms such as `(fab)` grow exponentially in the nesting depth of
/// abstractions, so small inputs can have astronomically large translations.
pub fn translate_bounded(
    alg: AlgorithmId,
    t: &LambdaTerm,
    max_atoms: usize,
) -> Result<ClTerm, OutputTooLarge> {
    fn atoms(t: &ClTerm) -> usize {
        match t {
            ClTerm::App(f, a) => atoms(f) + atoms(a),
            _ => 1,
        }
    }
    fn go(alg: AlgorithmId, t: &LambdaTerm, limit: usize) -> Result<ClTerm, OutputTooLarge> {
        Ok(match t {
            LambdaTerm::Var(v) => ClTerm::Var(v.clone()),
            LambdaTerm::Prim(c) => ClTerm::Prim(*c),
            LambdaTerm::App(f, a) => ClTerm::app(go(alg, f, limit)?, go(alg, a, limit)?),
            LambdaTerm::Abs(x, body) => {
                let out = abstract_var(alg, x, &go(alg, body, limit)?);
                if atoms(&out) > limit {
                    return Err(OutputTooLarge { limit });
                }
                out
            }
        })
    }
    go(alg, t, max_atoms)
}

/// [`translate`] with the traces of every abstraction, innermost first.
pub fn translate_traced(alg: AlgorithmId, t: &LambdaTerm) -> (ClTerm, EquationTrace) {
    fn go(alg: AlgorithmId, t: &LambdaTerm, trace: &mut EquationTrace) -> ClTerm {
        match t {
            LambdaTerm::Var(v) => ClTerm::Var(v.clone()),
            LambdaTerm::Prim(c) => ClTerm::Prim(*c),
            LambdaTerm::App(f, a) => {
                let f = go(alg, f, trace);
                ClTerm::app(f, go(alg, a, trace))
            }
            LambdaTerm::Abs(x, body) => {
                let body = go(alg, body, trace);
                let (out, steps) = abstract_traced(alg, x, &body);
                trace.steps.extend(steps.steps);
                out
            }
        }
    }
    let mut trace = EquationTrace::default();
    let out = go(alg, t, &mut trace);
    (out, trace)
}

/// `[x] t` with the optimisations read as rewrite rules: after every
/// S-introduction the whole intermediate result is rewritten to a fixpoint,
/// leftmost-innermost, below the root and on the rules' own results.
pub fn abstract_rewrite_mode(
    alg: AlgorithmId,
    x: &Var,
    t: &ClTerm,
) -> Result<ClTerm, AbstractionError> {
    if !alg.is_optimisation_based() {
        return Err(AbstractionError::NotOptimisationBased(alg));
    }
    Ok(rewrite::abstract_rewriting(tables::table(alg), x, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_cl, parse_lambda, print_cl};
    use AlgorithmId::*;

    fn cl(s: &str) -> ClTerm {
        parse_cl(s).unwrap()
    }

    fn abs(alg: AlgorithmId, x: &str, t: &str) -> String {
        print_cl(&abstract_var(alg, &Var::new(x), &cl(t)))
    }

    fn tr(alg: AlgorithmId, t: &str) -> String {
        print_cl(&translate(alg, &parse_lambda(t).unwrap()))
    }

    #[test]
    fn cli_names_round_trip() {
        for alg in AlgorithmId::ALL {
            assert_eq!(alg.cli_name().parse::<AlgorithmId>().unwrap(), alg);
        }
        assert!("turner".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn curry_family_examples() {
        assert_eq!(abs(Fab, "x", "y y x"), "S (S (K y) (K y)) I");
        assert_eq!(abs(AbfPrime, "x", "y y x"), "S (K (y y)) I");
        assert_eq!(abs(Abf, "x", "y y x"), "S (K (y y)) I");
        assert_eq!(abs(AbcfPrime, "x", "S (K y) (K y) x"), "S (K y) (K y)");
    }

    #[test]
    fn schonfinkel_examples() {
        assert_eq!(abs(Schonfinkel, "y", "K x y y"), "S (K x) I");
        assert_eq!(abs(SchonfinkelPrime, "y", "K x y y"), "x");
        assert_eq!(abs(Schonfinkel, "x", "K S x (K S x)"), "S (K S) (K S)");
        assert_eq!(abs(SchonfinkelPrime, "x", "K S x (K S x)"), "K (S S)");
    }

    #[test]
    fn constant_equation_fires_first() {
        for alg in [T, TPrime, Schonfinkel, TStar, Abf] {
            assert_eq!(abs(alg, "x", "s"), "K s");
            assert_eq!(abs(alg, "x", "y (z S)"), "K (y (z S))");
        }
        assert_eq!(abs(T, "x", "x"), "I");
    }

    #[test]
    fn turner_star_example_step() {
        assert_eq!(abs(TStar, "x", "C' x (B x x) x"), "S (S C' (S B I)) I");
        assert_eq!(
            abs(TStarDoublePrime, "x", "C (B* x x x) x"),
            "S' C (S (S B* I) I) I"
        );
    }

    #[test]
    fn translations() {
        assert_eq!(tr(Schonfinkel, r"\y. (\z. x) y y"), "S (K x) I");
        assert_eq!(tr(SchonfinkelPrime, r"\y. (\z. x) y y"), "x");
        assert_eq!(tr(SchonfinkelPrime, r"\y. z ((\x. x) y)"), "z");
        assert_eq!(tr(Schonfinkel, r"\y. z ((\x. x) y)"), "B z I");
        assert_eq!(tr(TDoublePrime, r"\x y z. y (x z) x"), "S' (C' C) (C B) I");
        // Opt (8) fires on the root `S (B C (C C')) I`, and T agrees with T' on
        // this beta-normal term.
        assert_eq!(tr(TPrime, r"\x y z. y (x z) x"), "S' C (C C') I");
        assert_eq!(tr(T, r"\x y z. y (x z) x"), "S' C (C C') I");
        assert_eq!(tr(TStar, r"\x y. x (x (x y)) x"), "S (S C' (S B I)) I");
        assert_eq!(
            tr(TStarDoublePrime, r"\x y. x (x (x y)) x"),
            "S' C (S (S B* I) I) I"
        );
        assert_eq!(tr(Schonfinkel, r"\x y. x"), "K");
        assert_eq!(tr(SchonfinkelPrime, r"\x y. x"), "K");
        assert_eq!(tr(Schonfinkel, r"\x y z. x z (y z)"), "S");
        assert_eq!(tr(SchonfinkelPrime, r"\x y z. x z (y z)"), "S");
        assert_ne!(tr(Fab, r"\x y. x"), "K");
    }

    #[test]
    fn intermediate_steps_of_worked_examples() {
        // Inner abstractions of \x y z. y (x z) x.
        assert_eq!(abs(TDoublePrime, "z", "y (x z) x"), "C (B y x) x");
        assert_eq!(abs(TDoublePrime, "y", "C (B y x) x"), "C' C (C B x) x");
        assert_eq!(abs(TPrime, "z", "y (x z) x"), "C' y x x");
        assert_eq!(abs(TPrime, "y", "C' y x x"), "C (C C' x) x");
        assert_eq!(abs(TStar, "y", "x (x (x y)) x"), "C' x (B x x) x");
        assert_eq!(
            abs(TStarDoublePrime, "y", "x (x (x y)) x"),
            "C (B* x x x) x"
        );
    }

    #[test]
    fn opt_tables() {
        assert_eq!(opt(TPrime, &cl("K x"), &cl("I")).unwrap(), cl("x"));
        assert_eq!(
            opt(TPrime, &cl("K (u s)"), &cl("t")).unwrap(),
            cl("B' u s t")
        );
        assert_eq!(
            opt(TPrimeMinusEta, &cl("K x"), &cl("I")).unwrap(),
            cl("B x I")
        );
        assert_eq!(
            opt(SchonfinkelPrime, &cl("a"), &cl("b")).unwrap(),
            cl("S a b")
        );
        assert_eq!(
            opt(TStarPrime, &cl("K u"), &cl("B s t")).unwrap(),
            cl("B* u s t")
        );
        assert_eq!(
            opt(TStarPrime, &cl("B* u a b"), &cl("K t")).unwrap(),
            cl("C' u (B a b) t")
        );
        assert_eq!(
            opt(TStarDoublePrime, &cl("B* u a b"), &cl("K t")).unwrap(),
            cl("C (B* u a b) t")
        );
        assert_eq!(
            opt(TPrime, &cl("B' a b s"), &cl("t")).unwrap(),
            cl("S' (a b) s t")
        );
        assert!(matches!(
            opt(T, &cl("a"), &cl("b")),
            Err(AbstractionError::NotOptimisationBased(T))
        ));
    }

    #[test]
    fn opt_patterns_need_exact_arity() {
        // K applied to two arguments is not `K s`.
        assert_eq!(
            opt(TPrime, &cl("K a b"), &cl("K c")).unwrap(),
            cl("C (K a b) c")
        );
        // B applied to three arguments is not `B u s`.
        assert_eq!(
            opt(TPrime, &cl("B a b c"), &cl("d")).unwrap(),
            cl("S (B a b c) d")
        );
    }

    #[test]
    fn multivariate_tags() {
        let t = cl("(y x1 x2 x3) (z x1 x2 x3)");
        let xs: Vec<Var> = ["x1", "x2", "x3"].iter().map(|n| Var::new(n)).collect();
        let turner = abstract_multi(T, &xs, &t).unwrap();
        assert_eq!(print_cl(&turner), "S' (S' S) y z");
        let schonfinkel = abstract_multi(Schonfinkel, &xs, &t).unwrap();
        assert_eq!(print_cl(&schonfinkel), "S (B S (B (B S) y)) z");
        let single = abstract_multi(T, &xs[..1], &t).unwrap();
        assert_eq!(single, abstract_var(T, &xs[0], &t));
    }

    #[test]
    fn multivariate_rejects_bad_lists() {
        let t = cl("x");
        assert_eq!(
            abstract_multi(T, &[], &t),
            Err(AbstractionError::NoVariables)
        );
        let x = Var::new("x");
        assert_eq!(
            abstract_multi(T, &[x.clone(), x.clone()], &t),
            Err(AbstractionError::DuplicateVariable(x))
        );
    }

    #[test]
    fn rewrite_mode_differs_below_the_root() {
        let x = Var::new("x");
        let t = cl("S (K a) (K a)");
        assert_eq!(
            print_cl(&abstract_var(AbfPrime, &x, &t)),
            "K (S (K a) (K a))"
        );
        let rewritten = abstract_rewrite_mode(AbfPrime, &x, &t).unwrap();
        assert_ne!(print_cl(&rewritten), "K (S (K a) (K a))");
        assert_eq!(print_cl(&rewritten), "K (K (a a))");
        assert_eq!(
            print_cl(&abstract_rewrite_mode(AbfPrime, &x, &cl("x")).unwrap()),
            "I"
        );
        assert_eq!(
            print_cl(&abstract_rewrite_mode(AbfPrime, &x, &cl("y")).unwrap()),
            "K y"
        );
        assert!(abstract_rewrite_mode(T, &x, &t).is_err());
    }

    #[test]
    fn trace_labels() {
        let x = Var::new("x");
        let (out, trace) = abstract_traced(AbfPrime, &x, &cl("y y x"));
        assert_eq!(print_cl(&out), "S (K (y y)) I");
        let labels: Vec<_> = trace.steps.iter().map(|s| s.label).collect();
        // [x] (y y) and [x] x under the root, then Opt at the root.
        assert_eq!(
            labels,
            ["(1)", "(1)", "(3)", "(3)", "opt(1)", "(2)", "opt(2)"]
        );
        assert_eq!(trace.steps[1].path.to_string(), "f");
        assert_eq!(trace.steps[5].path.to_string(), "a");
        assert_eq!(
            replay_trace(AbfPrime, &x, &cl("y y x"), &trace).unwrap(),
            out
        );
    }

    #[test]
    fn compose_star_trace_labels() {
        let x = Var::new("x");
        let (_, trace) = abstract_traced(TStar, &x, &cl("u (v (w x))"));
        let labels: Vec<_> = trace.steps.iter().map(|s| s.label).collect();
        assert_eq!(labels, ["B*", "(9)", "(3)"]);
    }

    #[test]
    fn replay_rejects_tampered_traces() {
        let x = Var::new("x");
        let t = cl("y (x z) x");
        let (_, trace) = abstract_traced(T, &x, &t);
        let mut wrong = trace.clone();
        wrong.steps[0].label = "(2)";
        assert!(matches!(
            replay_trace(T, &x, &t, &wrong),
            Err(ReplayError::NotApplicable { .. })
        ));
        let mut short = trace.clone();
        short.steps.pop();
        assert!(matches!(
            replay_trace(T, &x, &t, &short),
            Err(ReplayError::Truncated(_))
        ));
        let mut long = trace.clone();
        long.steps.push(trace.steps[0].clone());
        assert!(matches!(
            replay_trace(T, &x, &t, &long),
            Err(ReplayError::Trailing(1))
        ));
        assert!(replay_trace(TPrime, &x, &t, &trace).is_err());
    }

    #[test]
    fn abs_dash_tries_eta_after_primed_equations() {
        // With a closed head the primed equation wins over eta.
        assert_eq!(abs(AbsDash1, "x", "K a x"), "B' K a I");
        assert_eq!(abs(TDoublePrime, "x", "K a x"), "K a");
        // Open heads fall through to eta.
        assert_eq!(abs(AbsDash1, "x", "y a x"), "y a");
    }
}
