use std::fmt;

use thiserror::Error;

use crate::term::{ClTerm, Combinator, Var};

use super::tables::{table, Dir, Equation, Part, Rhs, Table, COMPOSE_STAR, COMPOSE_STAR_FALLBACK};
use super::AlgorithmId;

/// Position of a subterm below the root of an abstraction's input.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<Dir>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for d in &self.0 {
            f.write_str(match d {
                Dir::Fun => "f",
                Dir::Arg => "a",
            })?;
        }
        Ok(())
    }
}

/// One fired equation or optimisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// The variable being abstracted.
    pub var: Var,
    /// `(n)` for equation n, `B*` for the `B*` equation, `opt(n)` for
    /// optimisation n.
    pub label: &'static str,
    /// Where the abstracted subterm sits in the input of the outermost
    /// abstraction of `var`.
    pub path: Path,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} @ {}", self.var, self.label, self.path)
    }
}

/// Steps in pre-order: an equation is recorded before the abstractions it
/// triggers, an optimisation after the two abstractions it combines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquationTrace {
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for EquationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("trace ended early at step {0}")]
    Truncated(usize),
    #[error("step {index}: expected position {expected}, trace says {found}")]
    Position {
        index: usize,
        expected: Path,
        found: Path,
    },
    #[error("step {index}: abstracting {expected}, trace says {found}")]
    Variable {
        index: usize,
        expected: Var,
        found: Var,
    },
    #[error("step {index}: `{label}` is not an equation or optimisation of this algorithm")]
    UnknownLabel { index: usize, label: &'static str },
    #[error("step {index}: `{label}` does not apply here")]
    NotApplicable { index: usize, label: &'static str },
    #[error("{0} trailing steps not consumed")]
    Trailing(usize),
}

enum Mode<'a> {
    Plain,
    Record(Vec<TraceStep>),
    Replay { steps: &'a [TraceStep], next: usize },
}

pub(crate) struct Engine<'a> {
    table: &'static Table,
    x: &'a Var,
    path: Vec<Dir>,
    mode: Mode<'a>,
}

impl<'a> Engine<'a> {
    fn new(alg: AlgorithmId, x: &'a Var, mode: Mode<'a>) -> Self {
        Engine {
            table: table(alg),
            x,
            path: Vec::new(),
            mode,
        }
    }

    fn next_step(&mut self) -> Result<Option<(usize, &'a TraceStep)>, ReplayError> {
        match &mut self.mode {
            Mode::Replay { steps, next } => {
                let index = *next;
                let step = steps.get(index).ok_or(ReplayError::Truncated(index))?;
                *next += 1;
                if step.var != *self.x {
                    return Err(ReplayError::Variable {
                        index,
                        expected: self.x.clone(),
                        found: step.var.clone(),
                    });
                }
                if step.path.0 != self.path {
                    return Err(ReplayError::Position {
                        index,
                        expected: Path(self.path.clone()),
                        found: step.path.clone(),
                    });
                }
                Ok(Some((index, step)))
            }
            _ => Ok(None),
        }
    }

    fn record(&mut self, label: &'static str) -> Option<usize> {
        match &mut self.mode {
            Mode::Record(steps) => {
                steps.push(TraceStep {
                    var: self.x.clone(),
                    label,
                    path: Path(self.path.clone()),
                });
                Some(steps.len() - 1)
            }
            _ => None,
        }
    }

    pub(crate) fn run(&mut self, t: &ClTerm) -> Result<ClTerm, ReplayError> {
        let forced = match self.next_step()? {
            None => None,
            Some((index, step)) => {
                let is_star = step.label == COMPOSE_STAR || step.label == COMPOSE_STAR_FALLBACK;
                let entry = self
                    .table
                    .equations
                    .iter()
                    .position(|(l, eq)| {
                        *l == step.label || (*eq == Equation::ComposeStar && is_star)
                    })
                    .ok_or(ReplayError::UnknownLabel {
                        index,
                        label: step.label,
                    })?;
                Some((index, entry, step.label))
            }
        };
        let (label, rhs) = match forced {
            None => self
                .table
                .equations
                .iter()
                .find_map(|(label, eq)| eq.matches(self.x, t).map(|rhs| (*label, rhs)))
                .expect("every equation table ends in a catch-all"),
            Some((index, entry, label)) => {
                let (_, eq) = self.table.equations[entry];
                let rhs = eq
                    .matches(self.x, t)
                    .ok_or(ReplayError::NotApplicable { index, label })?;
                (label, rhs)
            }
        };
        let replay_index = forced.map(|(index, _, _)| index);
        let slot = self.record(label);
        match rhs {
            Rhs::Done(result) => Ok(result),
            Rhs::Apply(comb, parts) => {
                let mut args = Vec::with_capacity(parts.len());
                for part in parts {
                    args.push(match part {
                        Part::Keep(t) => t,
                        Part::Abstract(sub, dirs) => self.descend(sub, dirs)?,
                    });
                }
                Ok(ClTerm::prim_app(comb, args))
            }
            Rhs::Optimise(s, rest) => {
                let s = self.descend(s, &[Dir::Fun])?;
                let rest = self.descend(rest, &[Dir::Arg])?;
                self.optimise(s, rest)
            }
            Rhs::ComposeStar(s, rest) => {
                let abstracted = self.descend(rest, &[Dir::Arg])?;
                let (fired, result) = match abstracted.prim_args(Combinator::B, 2) {
                    Some(bargs) => (
                        COMPOSE_STAR,
                        ClTerm::prim_app(
                            Combinator::BStar,
                            [s.clone(), bargs[0].clone(), bargs[1].clone()],
                        ),
                    ),
                    None => (
                        COMPOSE_STAR_FALLBACK,
                        ClTerm::prim_app(Combinator::B, [s.clone(), abstracted]),
                    ),
                };
                if let (Some(slot), Mode::Record(steps)) = (slot, &mut self.mode) {
                    steps[slot].label = fired;
                }
                if let Some(index) = replay_index {
                    if label != fired {
                        return Err(ReplayError::NotApplicable { index, label });
                    }
                }
                Ok(result)
            }
        }
    }

    fn descend(&mut self, sub: &ClTerm, dirs: &[Dir]) -> Result<ClTerm, ReplayError> {
        let depth = self.path.len();
        self.path.extend_from_slice(dirs);
        let out = self.run(sub);
        self.path.truncate(depth);
        out
    }

    fn optimise(&mut self, s1: ClTerm, s2: ClTerm) -> Result<ClTerm, ReplayError> {
        match self.next_step()? {
            None => {
                let (label, rule) = self
                    .table
                    .opt
                    .iter()
                    .find(|(_, rule)| rule.fires(&s1, &s2))
                    .expect("every optimisation table ends in a catch-all");
                self.record(label);
                Ok(rule.build(s1, s2))
            }
            Some((index, step)) => {
                let (_, rule) = self
                    .table
                    .opt
                    .iter()
                    .find(|(l, _)| *l == step.label)
                    .ok_or(ReplayError::UnknownLabel {
                        index,
                        label: step.label,
                    })?;
                if !rule.fires(&s1, &s2) {
                    return Err(ReplayError::NotApplicable {
                        index,
                        label: step.label,
                    });
                }
                Ok(rule.build(s1, s2))
            }
        }
    }
}

pub(crate) fn abstract_plain(alg: AlgorithmId, x: &Var, t: &ClTerm) -> ClTerm {
    Engine::new(alg, x, Mode::Plain)
        .run(t)
        .expect("plain evaluation never replays")
}

pub(crate) fn abstract_traced(alg: AlgorithmId, x: &Var, t: &ClTerm) -> (ClTerm, EquationTrace) {
    let mut engine = Engine::new(alg, x, Mode::Record(Vec::new()));
    let out = engine.run(t).expect("recording never replays");
    let steps = match engine.mode {
        Mode::Record(steps) => steps,
        _ => unreachable!(),
    };
    (out, EquationTrace { steps })
}

pub(crate) fn replay(
    alg: AlgorithmId,
    x: &Var,
    t: &ClTerm,
    trace: &EquationTrace,
) -> Result<ClTerm, ReplayError> {
    let mut engine = Engine::new(
        alg,
        x,
        Mode::Replay {
            steps: &trace.steps,
            next: 0,
        },
    );
    let out = engine.run(t)?;
    match engine.mode {
        Mode::Replay { steps, next } if next < steps.len() => {
            Err(ReplayError::Trailing(steps.len() - next))
        }
        _ => Ok(out),
    }
}
