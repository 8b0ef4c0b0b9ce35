//! Greedy shrinking of distinguishing witnesses.

use crate::term::{LambdaTerm, Var};

fn measure(t: &LambdaTerm) -> (usize, usize) {
    fn go(t: &LambdaTerm, atoms: &mut usize, nodes: &mut usize) {
        *nodes += 1;
        match t {
            LambdaTerm::Var(_) | LambdaTerm::Prim(_) => *atoms += 1,
            LambdaTerm::App(f, a) => {
                go(f, atoms, nodes);
                go(a, atoms, nodes);
            }
            LambdaTerm::Abs(_, body) => go(body, atoms, nodes),
        }
    }
    let (mut atoms, mut nodes) = (0, 0);
    go(t, &mut atoms, &mut nodes);
    (atoms, nodes)
}

/// Every term one shrink step away from `t`, outermost positions first.
fn neighbours(t: &LambdaTerm, fresh: &Var) -> Vec<LambdaTerm> {
    let mut out = Vec::new();
    match t {
        LambdaTerm::App(f, _) => out.push((**f).clone()),
        LambdaTerm::Abs(_, body) => out.push((**body).clone()),
        _ => {}
    }
    if !matches!(t, LambdaTerm::Var(_)) {
        out.push(LambdaTerm::Var(fresh.clone()));
    }
    match t {
        LambdaTerm::App(f, a) => {
            out.extend(
                neighbours(f, fresh)
                    .into_iter()
                    .map(|g| LambdaTerm::app(g, (**a).clone())),
            );
            out.extend(
                neighbours(a, fresh)
                    .into_iter()
                    .map(|b| LambdaTerm::app((**f).clone(), b)),
            );
        }
        LambdaTerm::Abs(x, body) => {
            out.extend(
                neighbours(body, fresh)
                    .into_iter()
                    .map(|b| LambdaTerm::abs(x.clone(), b)),
            );
        }
        _ => {}
    }
    out
}

/// Repeatedly takes the first neighbour (drop an argument, unwrap an
/// abstraction, or replace a subterm by a fresh variable) that is smaller in
/// (atoms, nodes) and still satisfies `distinguishes`, until none is.
pub fn shrink(witness: &LambdaTerm, distinguishes: impl Fn(&LambdaTerm) -> bool) -> LambdaTerm {
    let mut current = witness.clone();
    loop {
        let names = current.names();
        let fresh = Var::new("v").freshen(|n| names.iter().any(|v| v.name() == n));
        let size = measure(&current);
        let next = neighbours(&current, &fresh)
            .into_iter()
            .find(|c| measure(c) < size && distinguishes(c));
        match next {
            Some(smaller) => current = smaller,
            None => return current,
        }
    }
}
