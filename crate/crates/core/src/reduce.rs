//! Beta and eta normalization.
//!
//! Terms are converted to a nameless form with binder-name hints, reduced
//! leftmost-outermost with shared arguments (one redex per fuel unit), and
//! converted back, reusing each binder's original name unless that would
//! capture.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::rc::Rc;

use thiserror::Error;

use crate::term::{Combinator, LambdaTerm, Var};

/// Reduction budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fuel(pub u64);

impl Fuel {
    pub const DEFAULT: Fuel = Fuel(100_000);
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::DEFAULT
    }
}

/// Upper bound on the nodes of a normal form. Exceeding it is reported like
/// running out of steps.
const NODE_BUDGET: u64 = 20_000_000;

/// Upper bound on the nesting of evaluation and of the normal form, which
/// keeps the recursive traversals within the stack. Exceeding it is also reported as
/// running out of fuel.
const DEPTH_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("reduction gave up after {steps} steps (possibly divergent)")]
pub struct FuelExhausted {
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Nameless {
    Free(Var),
    Bound(usize),
    Prim(Combinator),
    App(Box<Nameless>, Box<Nameless>),
    Lam(Var, Box<Nameless>),
}

fn to_nameless(t: &LambdaTerm, ctx: &mut Vec<Var>) -> Nameless {
    match t {
        LambdaTerm::Var(v) => match ctx.iter().rposition(|b| b == v) {
            Some(pos) => Nameless::Bound(ctx.len() - 1 - pos),
            None => Nameless::Free(v.clone()),
        },
        LambdaTerm::Prim(c) => Nameless::Prim(*c),
        LambdaTerm::App(f, a) => {
            Nameless::App(Box::new(to_nameless(f, ctx)), Box::new(to_nameless(a, ctx)))
        }
        LambdaTerm::Abs(b, body) => {
            ctx.push(b.clone());
            let body = to_nameless(body, ctx);
            ctx.pop();
            Nameless::Lam(b.clone(), Box::new(body))
        }
    }
}

/// Indices free in `t` (relative to `t`'s own root) and free names.
fn collect_free(
    t: &Nameless,
    depth: usize,
    indices: &mut BTreeSet<usize>,
    names: &mut BTreeSet<Var>,
) {
    match t {
        Nameless::Bound(i) if *i >= depth => {
            indices.insert(i - depth);
        }
        Nameless::Bound(_) | Nameless::Prim(_) => {}
        Nameless::Free(v) => {
            names.insert(v.clone());
        }
        Nameless::App(f, a) => {
            collect_free(f, depth, indices, names);
            collect_free(a, depth, indices, names);
        }
        Nameless::Lam(_, body) => collect_free(body, depth + 1, indices, names),
    }
}

fn from_nameless(t: &Nameless, ctx: &mut Vec<Var>) -> LambdaTerm {
    match t {
        Nameless::Free(v) => LambdaTerm::Var(v.clone()),
        Nameless::Bound(i) => LambdaTerm::Var(ctx[ctx.len() - 1 - i].clone()),
        Nameless::Prim(c) => LambdaTerm::Prim(*c),
        Nameless::App(f, a) => LambdaTerm::app(from_nameless(f, ctx), from_nameless(a, ctx)),
        Nameless::Lam(hint, body) => {
            // The binder must not capture a free name of the body or an outer
            // binder that the body still refers to.
            let mut indices = BTreeSet::new();
            let mut avoid = BTreeSet::new();
            collect_free(body, 1, &mut indices, &mut avoid);
            avoid.extend(indices.iter().map(|i| ctx[ctx.len() - 1 - i].clone()));
            let name = if avoid.contains(hint) {
                hint.freshen(|n| avoid.iter().any(|v| v.name() == n))
            } else {
                hint.clone()
            };
            ctx.push(name.clone());
            let body = from_nameless(body, ctx);
            ctx.pop();
            LambdaTerm::abs(name, body)
        }
    }
}

struct Budget {
    steps_left: u64,
    steps_used: u64,
    nodes: u64,
}

impl Budget {
    fn new(fuel: Fuel) -> Self {
        Budget {
            steps_left: fuel.0,
            steps_used: 0,
            nodes: 0,
        }
    }

    fn exhausted(&self) -> FuelExhausted {
        FuelExhausted {
            steps: self.steps_used,
        }
    }

    fn take_step(&mut self) -> Result<(), FuelExhausted> {
        if self.steps_left == 0 {
            return Err(self.exhausted());
        }
        self.steps_left -= 1;
        self.steps_used += 1;
        Ok(())
    }

    fn enter(&mut self, at: usize) -> Result<(), FuelExhausted> {
        if at > DEPTH_LIMIT {
            return Err(self.exhausted());
        }
        Ok(())
    }
}

// Reduction runs on an environment machine: arguments become shared thunks,
// evaluated at most once, so a duplicated argument is never copied. The
// machine reduces the leftmost-outermost redex first, and reading a value
// back under its binders yields the normal form.

type Env<'a> = Option<Rc<Frame<'a>>>;

struct Frame<'a> {
    thunk: Thunk<'a>,
    next: Env<'a>,
}

type Thunk<'a> = Rc<RefCell<Delayed<'a>>>;

enum Delayed<'a> {
    Pending(&'a Nameless, Env<'a>),
    Forcing,
    Done(Rc<Value<'a>>),
}

#[derive(Clone)]
enum Head<'a> {
    Free(&'a Var),
    Prim(Combinator),
    /// A binder opened during read-back, numbered from the root.
    Level(usize),
}

enum Value<'a> {
    Closure(&'a Var, Env<'a>, &'a Nameless),
    Neutral(Head<'a>, Vec<Thunk<'a>>),
}

fn bind<'a>(env: Env<'a>, thunk: Thunk<'a>) -> Env<'a> {
    Some(Rc::new(Frame { thunk, next: env }))
}

fn lookup<'a>(env: &Env<'a>, index: usize) -> Thunk<'a> {
    let mut frame = env.as_ref().expect("bound index in scope");
    for _ in 0..index {
        frame = frame.next.as_ref().expect("bound index in scope");
    }
    frame.thunk.clone()
}

fn done(v: Value<'_>) -> Thunk<'_> {
    Rc::new(RefCell::new(Delayed::Done(Rc::new(v))))
}

/// A neutral value; `stack` holds further arguments, the next one last.
fn neutral<'a>(head: Head<'a>, args: &[Thunk<'a>], stack: Vec<Thunk<'a>>) -> Rc<Value<'a>> {
    let mut all = args.to_vec();
    all.extend(stack.into_iter().rev());
    Rc::new(Value::Neutral(head, all))
}

/// Weak head normal form of `term` under `env`.
fn eval<'a>(
    mut term: &'a Nameless,
    mut env: Env<'a>,
    at: usize,
    budget: &mut Budget,
) -> Result<Rc<Value<'a>>, FuelExhausted> {
    budget.enter(at)?;
    let mut stack: Vec<Thunk<'a>> = Vec::new();
    loop {
        match term {
            Nameless::App(f, a) => {
                stack.push(Rc::new(RefCell::new(Delayed::Pending(a, env.clone()))));
                term = f;
            }
            Nameless::Lam(hint, body) => match stack.pop() {
                Some(arg) => {
                    budget.take_step()?;
                    env = bind(env, arg);
                    term = body;
                }
                None => return Ok(Rc::new(Value::Closure(hint, env, body))),
            },
            Nameless::Bound(i) => {
                let v = force(&lookup(&env, *i), at + 1, budget)?;
                match &*v {
                    Value::Closure(_, captured, body) => match stack.pop() {
                        Some(arg) => {
                            budget.take_step()?;
                            env = bind(captured.clone(), arg);
                            term = body;
                        }
                        None => return Ok(v),
                    },
                    Value::Neutral(head, args) => return Ok(neutral(head.clone(), args, stack)),
                }
            }
            Nameless::Free(x) => return Ok(neutral(Head::Free(x), &[], stack)),
            Nameless::Prim(c) => return Ok(neutral(Head::Prim(*c), &[], stack)),
        }
    }
}

fn force<'a>(
    thunk: &Thunk<'a>,
    at: usize,
    budget: &mut Budget,
) -> Result<Rc<Value<'a>>, FuelExhausted> {
    let state = std::mem::replace(&mut *thunk.borrow_mut(), Delayed::Forcing);
    let v = match state {
        Delayed::Done(v) => v,
        Delayed::Pending(term, env) => eval(term, env, at, budget)?,
        Delayed::Forcing => unreachable!("a thunk never depends on itself"),
    };
    *thunk.borrow_mut() = Delayed::Done(v.clone());
    Ok(v)
}

/// Reads `v` back as a normal form under `level` open binders.
fn quote(
    v: &Value<'_>,
    level: usize,
    at: usize,
    budget: &mut Budget,
) -> Result<Nameless, FuelExhausted> {
    budget.enter(at)?;
    budget.nodes += 1;
    if budget.nodes > NODE_BUDGET {
        return Err(budget.exhausted());
    }
    match v {
        Value::Closure(hint, env, body) => {
            let var = done(Value::Neutral(Head::Level(level), Vec::new()));
            let body = eval(body, bind(env.clone(), var), at + 1, budget)?;
            Ok(Nameless::Lam(
                (*hint).clone(),
                Box::new(quote(&body, level + 1, at + 1, budget)?),
            ))
        }
        Value::Neutral(head, args) => {
            let mut out = match head {
                Head::Free(x) => Nameless::Free((*x).clone()),
                Head::Prim(c) => Nameless::Prim(*c),
                Head::Level(l) => Nameless::Bound(level - 1 - l),
            };
            let n = args.len();
            for (i, a) in args.iter().enumerate() {
                let depth = at + n - i;
                let arg = force(a, depth, budget)?;
                out = Nameless::App(Box::new(out), Box::new(quote(&arg, level, depth, budget)?));
            }
            Ok(out)
        }
    }
}

fn normalize(t: &Nameless, budget: &mut Budget) -> Result<Nameless, FuelExhausted> {
    let v = eval(t, None, 0, budget)?;
    quote(&v, 0, 0, budget)
}

fn mentions(t: &Nameless, index: usize) -> bool {
    match t {
        Nameless::Bound(i) => *i == index,
        Nameless::Free(_) | Nameless::Prim(_) => false,
        Nameless::App(f, a) => mentions(f, index) || mentions(a, index),
        Nameless::Lam(_, body) => mentions(body, index + 1),
    }
}

/// Lowers every index at or above `cutoff` by one; the caller guarantees
/// index `cutoff - 1` does not occur.
fn unshift(t: Nameless, cutoff: usize) -> Nameless {
    match t {
        Nameless::Bound(i) if i >= cutoff => Nameless::Bound(i - 1),
        Nameless::Bound(_) | Nameless::Free(_) | Nameless::Prim(_) => t,
        Nameless::App(f, a) => {
            Nameless::App(Box::new(unshift(*f, cutoff)), Box::new(unshift(*a, cutoff)))
        }
        Nameless::Lam(h, body) => Nameless::Lam(h, Box::new(unshift(*body, cutoff + 1))),
    }
}

/// Innermost-first eta contraction.
fn eta(t: Nameless) -> Nameless {
    match t {
        Nameless::App(f, a) => Nameless::App(Box::new(eta(*f)), Box::new(eta(*a))),
        Nameless::Lam(h, body) => match eta(*body) {
            Nameless::App(f, a) if *a == Nameless::Bound(0) && !mentions(&f, 0) => unshift(*f, 1),
            body => Nameless::Lam(h, Box::new(body)),
        },
        other => other,
    }
}

fn has_redex(t: &Nameless) -> bool {
    match t {
        Nameless::App(f, a) => matches!(**f, Nameless::Lam(..)) || has_redex(f) || has_redex(a),
        Nameless::Lam(_, body) => has_redex(body),
        _ => false,
    }
}

/// Beta normalization; fails once `fuel` redexes have been contracted
/// without reaching a normal form.
pub fn beta_normalize(t: &LambdaTerm, fuel: Fuel) -> Result<LambdaTerm, FuelExhausted> {
    let mut ctx = Vec::new();
    let nameless = to_nameless(t, &mut ctx);
    if !has_redex(&nameless) {
        return Ok(t.clone());
    }
    let mut budget = Budget::new(fuel);
    let nf = normalize(&nameless, &mut budget)?;
    Ok(from_nameless(&nf, &mut ctx))
}

/// Eta normal form of the beta normal form of `t`. On beta-normal input no
/// fuel is consumed.
pub fn eta_normalize(t: &LambdaTerm, fuel: Fuel) -> Result<LambdaTerm, FuelExhausted> {
    let mut ctx = Vec::new();
    let mut nameless = to_nameless(t, &mut ctx);
    if has_redex(&nameless) {
        nameless = normalize(&nameless, &mut Budget::new(fuel))?;
    }
    Ok(from_nameless(&eta(nameless), &mut ctx))
}

/// Canonical beta-eta normal form.
pub fn beta_eta_normalize(t: &LambdaTerm, fuel: Fuel) -> Result<LambdaTerm, FuelExhausted> {
    eta_normalize(t, fuel)
}

/// True iff `t` contains no subterm `(\x. s) u`.
pub fn is_beta_normal(t: &LambdaTerm) -> bool {
    match t {
        LambdaTerm::App(f, a) => {
            !matches!(**f, LambdaTerm::Abs(..)) && is_beta_normal(f) && is_beta_normal(a)
        }
        LambdaTerm::Abs(_, body) => is_beta_normal(body),
        LambdaTerm::Var(_) | LambdaTerm::Prim(_) => true,
    }
}
