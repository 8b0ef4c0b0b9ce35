//! Beta-eta equality by normalization, and the correctness check of a
//! translation against its input.

use std::fmt;

use rayon::prelude::*;

use crate::abstraction::{translate_bounded, AlgorithmId, OutputTooLarge};
use crate::reduce::{beta_eta_normalize, Fuel, FuelExhausted};
use crate::term::{alpha_equal, ClTerm, LambdaTerm};

use super::generate::{gen_lambda, GeneratorConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantic {
    Equal,
    NotEqual,
    Unknown(Undecided),
}

/// Why the oracle gave no verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Undecided {
    /// Either side ran out of fuel.
    Fuel(FuelExhausted),
    /// The translation was abandoned before it was complete.
    OutputTooLarge(OutputTooLarge),
}

impl fmt::Display for Undecided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Undecided::Fuel(e) => write!(f, "fuel exhausted after {} steps", e.steps),
            Undecided::OutputTooLarge(e) => write!(f, "output over {} atoms", e.limit),
        }
    }
}

/// Translations larger than this are not built by [`check_correctness`].
pub const MAX_OUTPUT_ATOMS: usize = 1_000_000;

impl fmt::Display for Semantic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantic::Equal => f.write_str("equal"),
            Semantic::NotEqual => f.write_str("not-equal"),
            Semantic::Unknown(why) => write!(f, "unknown ({why})"),
        }
    }
}

/// Compares the beta-eta normal forms of the unfoldings of two lambda terms.
/// Each side gets its own `fuel`.
pub fn lambda_semantically_equal(t1: &LambdaTerm, t2: &LambdaTerm, fuel: Fuel) -> Semantic {
    let normal = |t: &LambdaTerm| beta_eta_normalize(&t.unfold(), fuel);
    match (normal(t1), normal(t2)) {
        (Ok(a), Ok(b)) if alpha_equal(&a, &b) => Semantic::Equal,
        (Ok(_), Ok(_)) => Semantic::NotEqual,
        (Err(e), _) | (_, Err(e)) => Semantic::Unknown(Undecided::Fuel(e)),
    }
}

/// `t1 =βη t2` for CL terms, read through the combinator definitions.
pub fn semantically_equal(t1: &ClTerm, t2: &ClTerm, fuel: Fuel) -> Semantic {
    lambda_semantically_equal(&t1.to_lambda(), &t2.to_lambda(), fuel)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectnessReport {
    pub algorithm: AlgorithmId,
    pub input: LambdaTerm,
    /// `None` when the translation exceeded [`MAX_OUTPUT_ATOMS`].
    pub output: Option<ClTerm>,
    /// `FV(output) = FV(input)`, unknown without an output.
    pub fv_law: Option<bool>,
    pub semantic: Semantic,
}

impl CorrectnessReport {
    pub fn passed(&self) -> bool {
        self.fv_law != Some(false) && self.semantic != Semantic::NotEqual
    }
}

impl fmt::Display for CorrectnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm: {}", self.algorithm)?;
        writeln!(f, "input: {}", self.input)?;
        match &self.output {
            Some(out) => writeln!(f, "output: {out}")?,
            None => writeln!(f, "output: (over {MAX_OUTPUT_ATOMS} atoms)")?,
        }
        let fv = match self.fv_law {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "unknown",
        };
        writeln!(f, "fv-law: {fv}")?;
        writeln!(f, "semantic: {}", self.semantic)
    }
}

/// Checks the free-variable law and `translate(alg, t) =βη t`. Outputs over
/// [`MAX_OUTPUT_ATOMS`] are abandoned and both checks come out unknown.
pub fn check_correctness(alg: AlgorithmId, t: &LambdaTerm, fuel: Fuel) -> CorrectnessReport {
    let (output, fv_law, semantic) = match translate_bounded(alg, t, MAX_OUTPUT_ATOMS) {
        Ok(out) => {
            let fv = out.free_vars() == t.free_vars();
            let sem = lambda_semantically_equal(&out.to_lambda(), t, fuel);
            (Some(out), Some(fv), sem)
        }
        Err(e) => (None, None, Semantic::Unknown(Undecided::OutputTooLarge(e))),
    };
    CorrectnessReport {
        algorithm: alg,
        input: t.clone(),
        output,
        fv_law,
        semantic,
    }
}

/// Aggregate of [`check_correctness`] over generated terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckSummary {
    pub trials: usize,
    pub fv_pass: usize,
    pub fv_fail: usize,
    pub equal: usize,
    pub not_equal: usize,
    pub unknown: usize,
    /// Largest step count among the fuel-exhausted verdicts.
    pub unknown_fuel: u64,
    /// Unknown verdicts whose translation exceeded [`MAX_OUTPUT_ATOMS`].
    pub too_large: usize,
    /// Lowest-indexed failing trial.
    pub first_failure: Option<(usize, CorrectnessReport)>,
}

impl CheckSummary {
    pub fn failures(&self) -> usize {
        self.fv_fail + self.not_equal
    }

    pub fn unknown_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.unknown as f64 / self.trials as f64
        }
    }

    fn single(index: usize, report: CorrectnessReport) -> Self {
        let mut s = CheckSummary {
            trials: 1,
            ..Default::default()
        };
        s.fv_pass = usize::from(report.fv_law == Some(true));
        s.fv_fail = usize::from(report.fv_law == Some(false));
        match report.semantic {
            Semantic::Equal => s.equal = 1,
            Semantic::NotEqual => s.not_equal = 1,
            Semantic::Unknown(Undecided::Fuel(e)) => {
                s.unknown = 1;
                s.unknown_fuel = e.steps;
            }
            Semantic::Unknown(Undecided::OutputTooLarge(_)) => {
                s.unknown = 1;
                s.too_large = 1;
            }
        }
        if !report.passed() {
            s.first_failure = Some((index, report));
        }
        s
    }

    fn merge(mut self, other: CheckSummary) -> Self {
        self.trials += other.trials;
        self.fv_pass += other.fv_pass;
        self.fv_fail += other.fv_fail;
        self.equal += other.equal;
        self.not_equal += other.not_equal;
        self.unknown += other.unknown;
        self.unknown_fuel = self.unknown_fuel.max(other.unknown_fuel);
        self.too_large += other.too_large;
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

impl fmt::Display for CheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "fv-pass: {}", self.fv_pass)?;
        writeln!(f, "fv-fail: {}", self.fv_fail)?;
        writeln!(f, "equal: {}", self.equal)?;
        writeln!(f, "not-equal: {}", self.not_equal)?;
        writeln!(
            f,
            "unknown: {} ({:.2}%)",
            self.unknown,
            100.0 * self.unknown_rate()
        )?;
        if self.unknown > self.too_large {
            writeln!(f, "unknown-fuel: {}", self.unknown_fuel)?;
        }
        if self.too_large > 0 {
            writeln!(f, "unknown-too-large: {}", self.too_large)?;
        }
        if let Some((trial, report)) = &self.first_failure {
            writeln!(f, "first-failure-trial: {trial}")?;
            write!(f, "{report}")?;
        }
        Ok(())
    }
}

/// Checks `alg` on `trials` terms from [`gen_lambda`], trial `i` using
/// `cfg.for_trial(i)`.
pub fn check_many(
    alg: AlgorithmId,
    cfg: &GeneratorConfig,
    trials: usize,
    fuel: Fuel,
) -> CheckSummary {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let t = gen_lambda(&cfg.for_trial(i as u64));
            CheckSummary::single(i, check_correctness(alg, &t, fuel))
        })
        .reduce(CheckSummary::default, CheckSummary::merge)
}
