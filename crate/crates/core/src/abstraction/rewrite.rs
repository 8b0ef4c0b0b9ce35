use crate::term::{ClTerm, Combinator, Var};

use super::tables::{Equation, OptRule, Rhs, Table};

/// Every optimisation strictly decreases the number of atoms, so rewriting
/// terminates.
fn rewrite(t: ClTerm, table: &Table) -> ClTerm {
    let t = match t {
        ClTerm::App(f, a) => ClTerm::app(rewrite(*f, table), rewrite(*a, table)),
        atom => atom,
    };
    let Some(args) = t.prim_args(Combinator::S, 2) else {
        return t;
    };
    let fired = table
        .opt
        .iter()
        .map(|(_, rule)| *rule)
        .find(|rule| *rule != OptRule::Keep && rule.fires(args[0], args[1]));
    match fired {
        Some(rule) => {
            let [s1, s2]: [ClTerm; 2] = t.into_spine().1.try_into().expect("S with two arguments");
            rewrite(rule.build(s1, s2), table)
        }
        None => t,
    }
}

pub(super) fn abstract_rewriting(table: &Table, x: &Var, t: &ClTerm) -> ClTerm {
    let rhs = table
        .equations
        .iter()
        .find_map(|(_, eq)| eq.matches(x, t))
        .expect("every equation table ends in a catch-all");
    match rhs {
        Rhs::Done(result) => result,
        Rhs::Optimise(s, rest) => {
            let s = abstract_rewriting(table, x, s);
            let rest = abstract_rewriting(table, x, rest);
            rewrite(ClTerm::prim_app(Combinator::S, [s, rest]), table)
        }
        Rhs::Apply(..) | Rhs::ComposeStar(..) => {
            unreachable!(
                "optimisation-based tables only use {:?}",
                Equation::DistributeOpt
            )
        }
    }
}
