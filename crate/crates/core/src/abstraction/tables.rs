//! Equation and optimisation tables.
//!
//! Every algorithm is an ordered list of equations; the first one whose
//! shape and side condition match is used. Optimisation-based algorithms
//! share the three `(abf')` equations and differ only in their `Opt` table,
//! which is consulted once, on the freshly built `S s1 s2`.

use crate::term::{ClTerm, Combinator, Var};

use super::AlgorithmId;

use Combinator::*;

/// One recursive equation for `[x] t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Equation {
    /// `[x] t = K t` if `x ∉ FV(t)`
    Constant,
    /// `[x] x = I`
    Identity,
    /// `[x] s x = s` if `x ∉ FV(s)`
    Eta,
    /// `[x] u x t = C u t` if `x ∉ FV(u t)`
    SwapVar { closed: bool },
    /// `[x] u x t = S u ([x] t)` if `x ∉ FV(u)`
    DistributeVar { closed: bool },
    /// `[x] u s t = B' u s ([x] t)` if `x ∉ FV(u s)`
    ComposePrime { closed: bool },
    /// `[x] u s t = C' u ([x] s) t` if `x ∉ FV(u t)`
    SwapPrime { closed: bool },
    /// `[x] u s t = S' u ([x] s) ([x] t)` if `x ∉ FV(u)`
    DistributePrime { closed: bool },
    /// `[x] s t = B s ([x] t)` if `x ∉ FV(s)`
    Compose,
    /// `[x] s t = B* s t1 t2` if `x ∉ FV(s)` and `[x] t = B t1 t2`, otherwise
    /// `B s ([x] t)`. The two equations are adjacent in the only table that
    /// uses them and share a side condition, so `[x] t` is computed once.
    ComposeStar,
    /// `[x] s t = C ([x] s) t` if `x ∉ FV(t)`
    Swap,
    /// `[x] s t = S ([x] s) ([x] t)`
    Distribute,
    /// `[x] s t = Opt(S ([x] s) ([x] t))`
    DistributeOpt,
    /// `[x] t = K t`
    Fallback,
}

/// The label emitted by [`Equation::ComposeStar`] when it falls back to `B`.
pub(crate) const COMPOSE_STAR_FALLBACK: &str = "(9)";
pub(crate) const COMPOSE_STAR: &str = "B*";

/// One optimisation on `S s1 s2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum OptRule {
    /// `S (K s) (K t) → K (s t)`
    KK,
    /// `S (K s) I → s`
    KI,
    /// `S (K (u s)) t → B' u s t`
    KAppComposePrime,
    /// `S (K s) t → B s t`
    KCompose,
    /// `S (B u s) (K t) → C' u s t`
    BKSwapPrime,
    /// `S (B' u1 u2 s) (K t) → C' (u1 u2) s t`
    BPrimeKSwapPrime,
    /// `S s (K t) → C s t`
    KSwap,
    /// `S (B u s) t → S' u s t`
    BDistributePrime,
    /// `S (B' u1 u2 s) t → S' (u1 u2) s t`
    BPrimeDistributePrime,
    /// `S (K u) (B s t) → B* u s t`
    KBComposeStar,
    /// `S (B* u s1 s2) (K t) → C' u (B s1 s2) t`
    BStarKSwapPrime,
    /// `S (B* u s1 s2) t → S' u (B s1 s2) t`
    BStarDistributePrime,
    /// `S s t → S s t`
    Keep,
}

pub(crate) struct Table {
    pub equations: &'static [(&'static str, Equation)],
    pub opt: &'static [(&'static str, OptRule)],
}

const OPT_EQUATIONS: &[(&str, Equation)] = &[
    ("(1)", Equation::DistributeOpt),
    ("(2)", Equation::Identity),
    ("(3)", Equation::Fallback),
];

const FAB: Table = Table {
    equations: &[
        ("(1)", Equation::Distribute),
        ("(2)", Equation::Identity),
        ("(3)", Equation::Fallback),
    ],
    opt: &[],
};

const ABF: Table = Table {
    equations: &[
        ("(1)", Equation::Identity),
        ("(2)", Equation::Constant),
        ("(3)", Equation::Distribute),
    ],
    opt: &[],
};

const ABF_PRIME: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &[("opt(1)", OptRule::KK), ("opt(2)", OptRule::Keep)],
};

const ABCF_PRIME: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &[
        ("opt(1)", OptRule::KK),
        ("opt(2)", OptRule::KI),
        ("opt(3)", OptRule::Keep),
    ],
};

const SCHONFINKEL: Table = Table {
    equations: &[
        ("(1)", Equation::Constant),
        ("(2)", Equation::Identity),
        ("(3)", Equation::Eta),
        ("(4)", Equation::Compose),
        ("(5)", Equation::Swap),
        ("(6)", Equation::Distribute),
    ],
    opt: &[],
};

const SCHONFINKEL_MINUS_ETA: Table = Table {
    equations: &[
        ("(1)", Equation::Constant),
        ("(2)", Equation::Identity),
        ("(4)", Equation::Compose),
        ("(5)", Equation::Swap),
        ("(6)", Equation::Distribute),
    ],
    opt: &[],
};

const SCHONFINKEL_PRIME: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &[
        ("opt(1)", OptRule::KK),
        ("opt(2)", OptRule::KI),
        ("opt(3)", OptRule::KCompose),
        ("opt(4)", OptRule::KSwap),
        ("opt(5)", OptRule::Keep),
    ],
};

const SCHONFINKEL_PRIME_MINUS_ETA: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &[
        ("opt(1)", OptRule::KK),
        ("opt(3)", OptRule::KCompose),
        ("opt(4)", OptRule::KSwap),
        ("opt(5)", OptRule::Keep),
    ],
};

const fn turner(closed: bool) -> [(&'static str, Equation); 11] {
    [
        ("(1)", Equation::Constant),
        ("(2)", Equation::Identity),
        ("(3)", Equation::Eta),
        ("(4)", Equation::SwapVar { closed }),
        ("(5)", Equation::DistributeVar { closed }),
        ("(6)", Equation::ComposePrime { closed }),
        ("(7)", Equation::SwapPrime { closed }),
        ("(8)", Equation::DistributePrime { closed }),
        ("(9)", Equation::Compose),
        ("(10)", Equation::Swap),
        ("(11)", Equation::Distribute),
    ]
}

const TURNER_EQUATIONS: [(&str, Equation); 11] = turner(false);
const TURNER_CLOSED_EQUATIONS: [(&str, Equation); 11] = turner(true);

const TURNER: Table = Table {
    equations: &TURNER_EQUATIONS,
    opt: &[],
};

const TURNER_CLOSED: Table = Table {
    equations: &TURNER_CLOSED_EQUATIONS,
    opt: &[],
};

const TURNER_MINUS_ETA: Table = Table {
    equations: &[
        ("(1)", Equation::Constant),
        ("(2)", Equation::Identity),
        ("(6)", Equation::ComposePrime { closed: false }),
        ("(7)", Equation::SwapPrime { closed: false }),
        ("(8)", Equation::DistributePrime { closed: false }),
        ("(9)", Equation::Compose),
        ("(10)", Equation::Swap),
        ("(11)", Equation::Distribute),
    ],
    opt: &[],
};

/// Closed-head Turner without the `u x t` equations and with the eta
/// equation tried after the primed ones.
const ABS_DASH_1: Table = Table {
    equations: &[
        ("(1)", Equation::Constant),
        ("(2)", Equation::Identity),
        ("(6)", Equation::ComposePrime { closed: true }),
        ("(7)", Equation::SwapPrime { closed: true }),
        ("(8)", Equation::DistributePrime { closed: true }),
        ("(3)", Equation::Eta),
        ("(9)", Equation::Compose),
        ("(10)", Equation::Swap),
        ("(11)", Equation::Distribute),
    ],
    opt: &[],
};

const TURNER_PRIME_OPT: [(&str, OptRule); 10] = [
    ("opt(1)", OptRule::KK),
    ("opt(2)", OptRule::KI),
    ("opt(3)", OptRule::KAppComposePrime),
    ("opt(4)", OptRule::KCompose),
    ("opt(5)", OptRule::BKSwapPrime),
    ("opt(6)", OptRule::BPrimeKSwapPrime),
    ("opt(7)", OptRule::KSwap),
    ("opt(8)", OptRule::BDistributePrime),
    ("opt(9)", OptRule::BPrimeDistributePrime),
    ("opt(10)", OptRule::Keep),
];

const TURNER_PRIME: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &TURNER_PRIME_OPT,
};

const TURNER_PRIME_MINUS_ETA: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &[
        ("opt(1)", OptRule::KK),
        ("opt(3)", OptRule::KAppComposePrime),
        ("opt(4)", OptRule::KCompose),
        ("opt(5)", OptRule::BKSwapPrime),
        ("opt(6)", OptRule::BPrimeKSwapPrime),
        ("opt(7)", OptRule::KSwap),
        ("opt(8)", OptRule::BDistributePrime),
        ("opt(9)", OptRule::BPrimeDistributePrime),
        ("opt(10)", OptRule::Keep),
    ],
};

/// Turner without `B'`: the `B*` equation follows eta, immediately followed
/// by the `B` equation, then the remaining Turner equations.
const TURNER_STAR: Table = Table {
    equations: &[
        ("(1)", Equation::Constant),
        ("(2)", Equation::Identity),
        ("(3)", Equation::Eta),
        (COMPOSE_STAR, Equation::ComposeStar),
        ("(4)", Equation::SwapVar { closed: false }),
        ("(5)", Equation::DistributeVar { closed: false }),
        ("(7)", Equation::SwapPrime { closed: false }),
        ("(8)", Equation::DistributePrime { closed: false }),
        ("(10)", Equation::Swap),
        ("(11)", Equation::Distribute),
    ],
    opt: &[],
};

const TURNER_STAR_PRIME: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &[
        ("opt(1)", OptRule::KK),
        ("opt(2)", OptRule::KI),
        ("opt(3)", OptRule::KBComposeStar),
        ("opt(4)", OptRule::KCompose),
        ("opt(5)", OptRule::BKSwapPrime),
        ("opt(6)", OptRule::BStarKSwapPrime),
        ("opt(7)", OptRule::KSwap),
        ("opt(8)", OptRule::BDistributePrime),
        ("opt(9)", OptRule::BStarDistributePrime),
        ("opt(10)", OptRule::Keep),
    ],
};

const TURNER_STAR_DOUBLE_PRIME: Table = Table {
    equations: OPT_EQUATIONS,
    opt: &[
        ("opt(1)", OptRule::KK),
        ("opt(2)", OptRule::KI),
        ("opt(3)", OptRule::KBComposeStar),
        ("opt(4)", OptRule::KCompose),
        ("opt(5)", OptRule::BKSwapPrime),
        ("opt(7)", OptRule::KSwap),
        ("opt(8)", OptRule::BDistributePrime),
        ("opt(10)", OptRule::Keep),
    ],
};

pub(crate) fn table(alg: AlgorithmId) -> &'static Table {
    match alg {
        AlgorithmId::Fab => &FAB,
        AlgorithmId::Abf => &ABF,
        AlgorithmId::AbfPrime => &ABF_PRIME,
        AlgorithmId::AbcfPrime => &ABCF_PRIME,
        AlgorithmId::Schonfinkel => &SCHONFINKEL,
        AlgorithmId::SchonfinkelPrime => &SCHONFINKEL_PRIME,
        AlgorithmId::SchonfinkelMinusEta => &SCHONFINKEL_MINUS_ETA,
        AlgorithmId::SchonfinkelPrimeMinusEta => &SCHONFINKEL_PRIME_MINUS_ETA,
        AlgorithmId::T => &TURNER,
        AlgorithmId::TPrime => &TURNER_PRIME,
        AlgorithmId::TDoublePrime => &TURNER_CLOSED,
        AlgorithmId::TMinusEta => &TURNER_MINUS_ETA,
        AlgorithmId::TPrimeMinusEta => &TURNER_PRIME_MINUS_ETA,
        AlgorithmId::AbsDash1 => &ABS_DASH_1,
        AlgorithmId::TStar => &TURNER_STAR,
        AlgorithmId::TStarPrime => &TURNER_STAR_PRIME,
        AlgorithmId::TStarDoublePrime => &TURNER_STAR_DOUBLE_PRIME,
    }
}

/// Which direction to descend from an application node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Fun,
    Arg,
}

const F: Dir = Dir::Fun;
const A: Dir = Dir::Arg;

/// A piece of an equation's right-hand side.
pub(crate) enum Part<'t> {
    Keep(ClTerm),
    /// Abstract the subterm at the given relative path.
    Abstract(&'t ClTerm, &'static [Dir]),
}

/// What a matching equation asks the engine to build.
pub(crate) enum Rhs<'t> {
    Done(ClTerm),
    /// `comb` applied to the parts, in order.
    Apply(Combinator, Vec<Part<'t>>),
    /// `Opt(S ([x] s) ([x] t))`
    Optimise(&'t ClTerm, &'t ClTerm),
    /// `B* s t1 t2` or `B s ([x] t)` depending on `[x] t`.
    ComposeStar(&'t ClTerm, &'t ClTerm),
}

/// `u s t` as `(u, s, t)`.
fn three(t: &ClTerm) -> Option<(&ClTerm, &ClTerm, &ClTerm)> {
    let (us, t) = t.as_app()?;
    let (u, s) = us.as_app()?;
    Some((u, s, t))
}

fn head_ok(u: &ClTerm, closed: bool) -> bool {
    !closed || u.is_closed()
}

impl Equation {
    /// The right-hand side if the equation applies to `[x] t`.
    pub(crate) fn matches<'t>(self, x: &Var, t: &'t ClTerm) -> Option<Rhs<'t>> {
        use Part::{Abstract, Keep};
        let is_x = |s: &ClTerm| matches!(s, ClTerm::Var(v) if v == x);
        match self {
            Equation::Constant => {
                (!t.occurs(x)).then(|| Rhs::Done(ClTerm::prim_app(K, [t.clone()])))
            }
            Equation::Fallback => Some(Rhs::Done(ClTerm::prim_app(K, [t.clone()]))),
            Equation::Identity => is_x(t).then_some(Rhs::Done(ClTerm::Prim(I))),
            Equation::Eta => {
                let (s, arg) = t.as_app()?;
                (is_x(arg) && !s.occurs(x)).then(|| Rhs::Done(s.clone()))
            }
            Equation::SwapVar { closed } => {
                let (u, mid, rest) = three(t)?;
                (is_x(mid) && head_ok(u, closed) && !u.occurs(x) && !rest.occurs(x))
                    .then(|| Rhs::Done(ClTerm::prim_app(C, [u.clone(), rest.clone()])))
            }
            Equation::DistributeVar { closed } => {
                let (u, mid, rest) = three(t)?;
                (is_x(mid) && head_ok(u, closed) && !u.occurs(x))
                    .then(|| Rhs::Apply(S, vec![Keep(u.clone()), Abstract(rest, &[A])]))
            }
            Equation::ComposePrime { closed } => {
                let (u, s, rest) = three(t)?;
                (head_ok(u, closed) && !u.occurs(x) && !s.occurs(x)).then(|| {
                    Rhs::Apply(
                        BPrime,
                        vec![Keep(u.clone()), Keep(s.clone()), Abstract(rest, &[A])],
                    )
                })
            }
            Equation::SwapPrime { closed } => {
                let (u, s, rest) = three(t)?;
                (head_ok(u, closed) && !u.occurs(x) && !rest.occurs(x)).then(|| {
                    Rhs::Apply(
                        CPrime,
                        vec![Keep(u.clone()), Abstract(s, &[F, A]), Keep(rest.clone())],
                    )
                })
            }
            Equation::DistributePrime { closed } => {
                let (u, s, rest) = three(t)?;
                (head_ok(u, closed) && !u.occurs(x)).then(|| {
                    Rhs::Apply(
                        SPrime,
                        vec![Keep(u.clone()), Abstract(s, &[F, A]), Abstract(rest, &[A])],
                    )
                })
            }
            Equation::Compose => {
                let (s, rest) = t.as_app()?;
                (!s.occurs(x)).then(|| Rhs::Apply(B, vec![Keep(s.clone()), Abstract(rest, &[A])]))
            }
            Equation::ComposeStar => {
                let (s, rest) = t.as_app()?;
                (!s.occurs(x)).then_some(Rhs::ComposeStar(s, rest))
            }
            Equation::Swap => {
                let (s, rest) = t.as_app()?;
                (!rest.occurs(x))
                    .then(|| Rhs::Apply(C, vec![Abstract(s, &[F]), Keep(rest.clone())]))
            }
            Equation::Distribute => {
                let (s, rest) = t.as_app()?;
                Some(Rhs::Apply(S, vec![Abstract(s, &[F]), Abstract(rest, &[A])]))
            }
            Equation::DistributeOpt => {
                let (s, rest) = t.as_app()?;
                Some(Rhs::Optimise(s, rest))
            }
        }
    }
}

impl OptRule {
    /// Whether the rule applies to `S s1 s2`.
    pub(crate) fn fires(self, s1: &ClTerm, s2: &ClTerm) -> bool {
        let k = |t: &ClTerm| t.prim_args(K, 1).is_some();
        let k_app = |t: &ClTerm| t.prim_args(K, 1).is_some_and(|a| a[0].as_app().is_some());
        let b = |t: &ClTerm| t.prim_args(B, 2).is_some();
        let b_prime = |t: &ClTerm| t.prim_args(BPrime, 3).is_some();
        let b_star = |t: &ClTerm| t.prim_args(BStar, 3).is_some();
        match self {
            OptRule::KK => k(s1) && k(s2),
            OptRule::KI => k(s1) && *s2 == ClTerm::Prim(I),
            OptRule::KAppComposePrime => k_app(s1),
            OptRule::KCompose => k(s1),
            OptRule::BKSwapPrime => b(s1) && k(s2),
            OptRule::BPrimeKSwapPrime => b_prime(s1) && k(s2),
            OptRule::KSwap => k(s2),
            OptRule::BDistributePrime => b(s1),
            OptRule::BPrimeDistributePrime => b_prime(s1),
            OptRule::KBComposeStar => k(s1) && b(s2),
            OptRule::BStarKSwapPrime => b_star(s1) && k(s2),
            OptRule::BStarDistributePrime => b_star(s1),
            OptRule::Keep => true,
        }
    }

    /// The optimised form of `S s1 s2`. Subterms are moved, not copied;
    /// callers check [`OptRule::fires`] first.
    pub(crate) fn build(self, s1: ClTerm, s2: ClTerm) -> ClTerm {
        fn args<const N: usize>(t: ClTerm) -> [ClTerm; N] {
            t.into_spine()
                .1
                .try_into()
                .unwrap_or_else(|_| unreachable!("pattern checked by fires"))
        }
        let app = |t: ClTerm| match t {
            ClTerm::App(f, a) => (*f, *a),
            _ => unreachable!("pattern checked by fires"),
        };
        match self {
            OptRule::KK => {
                let ([s], [t]) = (args(s1), args(s2));
                ClTerm::prim_app(K, [ClTerm::app(s, t)])
            }
            OptRule::KI => {
                let [s] = args(s1);
                s
            }
            OptRule::KAppComposePrime => {
                let [us] = args(s1);
                let (u, s) = app(us);
                ClTerm::prim_app(BPrime, [u, s, s2])
            }
            OptRule::KCompose => {
                let [s] = args(s1);
                ClTerm::prim_app(B, [s, s2])
            }
            OptRule::BKSwapPrime => {
                let ([u, s], [t]) = (args(s1), args(s2));
                ClTerm::prim_app(CPrime, [u, s, t])
            }
            OptRule::BPrimeKSwapPrime => {
                let ([u1, u2, s], [t]) = (args(s1), args(s2));
                ClTerm::prim_app(CPrime, [ClTerm::app(u1, u2), s, t])
            }
            OptRule::KSwap => {
                let [t] = args(s2);
                ClTerm::prim_app(C, [s1, t])
            }
            OptRule::BDistributePrime => {
                let [u, s] = args(s1);
                ClTerm::prim_app(SPrime, [u, s, s2])
            }
            OptRule::BPrimeDistributePrime => {
                let [u1, u2, s] = args(s1);
                ClTerm::prim_app(SPrime, [ClTerm::app(u1, u2), s, s2])
            }
            OptRule::KBComposeStar => {
                let ([u], [s, t]) = (args(s1), args(s2));
                ClTerm::prim_app(BStar, [u, s, t])
            }
            OptRule::BStarKSwapPrime => {
                let ([u, a, b], [t]) = (args(s1), args(s2));
                ClTerm::prim_app(CPrime, [u, ClTerm::prim_app(B, [a, b]), t])
            }
            OptRule::BStarDistributePrime => {
                let [u, a, b] = args(s1);
                ClTerm::prim_app(SPrime, [u, ClTerm::prim_app(B, [a, b]), s2])
            }
            OptRule::Keep => ClTerm::prim_app(S, [s1, s2]),
        }
    }

    /// The optimised form of `S s1 s2`, if this rule applies.
    pub(crate) fn apply(self, s1: &ClTerm, s2: &ClTerm) -> Option<ClTerm> {
        self.fires(s1, s2)
            .then(|| self.build(s1.clone(), s2.clone()))
    }
}
