//! Lambda terms, combinatory-logic terms and the combinator basis.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A term variable. Names start with a lowercase ASCII letter and continue
/// with ASCII alphanumerics or `_`, so they never collide with a combinator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    /// Builds a variable, panicking on a name outside the variable class.
    pub fn new(name: &str) -> Var {
        Var::try_new(name).unwrap_or_else(|| panic!("invalid variable name {name:?}"))
    }

    pub fn try_new(name: &str) -> Option<Var> {
        if is_var_name(name) {
            Some(Var(Arc::from(name)))
        } else {
            None
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// `self` with the smallest numeric suffix (starting at 1) not rejected by `taken`.
    pub fn freshen(&self, mut taken: impl FnMut(&str) -> bool) -> Var {
        let base = self.0.trim_end_matches(|c: char| c.is_ascii_digit());
        let base = if base.is_empty() { self.name() } else { base };
        (1u64..)
            .map(|i| format!("{base}{i}"))
            .find(|candidate| !taken(candidate))
            .map(|candidate| Var(Arc::from(candidate.as_str())))
            .expect("unbounded suffix search")
    }
}

pub(crate) fn is_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The combinator constants of the largest basis used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Combinator {
    S,
    K,
    I,
    B,
    C,
    SPrime,
    BPrime,
    CPrime,
    BStar,
}

impl Combinator {
    pub const ALL: [Combinator; 9] = [
        Combinator::S,
        Combinator::K,
        Combinator::I,
        Combinator::B,
        Combinator::C,
        Combinator::SPrime,
        Combinator::BPrime,
        Combinator::CPrime,
        Combinator::BStar,
    ];

    /// The concrete-syntax lexeme.
    pub fn symbol(self) -> &'static str {
        match self {
            Combinator::S => "S",
            Combinator::K => "K",
            Combinator::I => "I",
            Combinator::B => "B",
            Combinator::C => "C",
            Combinator::SPrime => "S'",
            Combinator::BPrime => "B'",
            Combinator::CPrime => "C'",
            Combinator::BStar => "B*",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<Combinator> {
        Combinator::ALL.into_iter().find(|c| c.symbol() == symbol)
    }

    /// Number of arguments the defining lambda term binds.
    pub fn arity(self) -> usize {
        match self {
            Combinator::I => 1,
            Combinator::K => 2,
            Combinator::S | Combinator::B | Combinator::C => 3,
            Combinator::SPrime | Combinator::BPrime | Combinator::CPrime | Combinator::BStar => 4,
        }
    }

    /// The closed lambda term this constant stands for.
    pub fn definition(self) -> LambdaTerm {
        let v = |n: &str| LambdaTerm::var(n);
        let app = LambdaTerm::app;
        let body = match self {
            // S = \x y z. x z (y z)
            Combinator::S => app(app(v("x"), v("z")), app(v("y"), v("z"))),
            // K = \x y. x
            Combinator::K => v("x"),
            // I = \x. x
            Combinator::I => v("x"),
            // B = \x y z. x (y z)
            Combinator::B => app(v("x"), app(v("y"), v("z"))),
            // C = \x y z. x z y
            Combinator::C => app(app(v("x"), v("z")), v("y")),
            // S' = \k x y z. k (x z) (y z)
            Combinator::SPrime => app(app(v("k"), app(v("x"), v("z"))), app(v("y"), v("z"))),
            // B' = \k x y z. k x (y z)
            Combinator::BPrime => app(app(v("k"), v("x")), app(v("y"), v("z"))),
            // C' = \k x y z. k (x z) y
            Combinator::CPrime => app(app(v("k"), app(v("x"), v("z"))), v("y")),
            // B* = \f x y z. f (x (y z))
            Combinator::BStar => app(v("f"), app(v("x"), app(v("y"), v("z")))),
        };
        let binders: &[&str] = match self {
            Combinator::I => &["x"],
            Combinator::K => &["x", "y"],
            Combinator::S | Combinator::B | Combinator::C => &["x", "y", "z"],
            Combinator::SPrime | Combinator::BPrime | Combinator::CPrime => &["k", "x", "y", "z"],
            Combinator::BStar => &["f", "x", "y", "z"],
        };
        LambdaTerm::abs_many(binders.iter().map(|b| Var::new(b)), body)
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An untyped lambda term whose atoms may include combinator constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LambdaTerm {
    Var(Var),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
    Abs(Var, Box<LambdaTerm>),
    Prim(Combinator),
}

impl LambdaTerm {
    pub fn var(name: &str) -> LambdaTerm {
        LambdaTerm::Var(Var::new(name))
    }

    pub fn app(fun: LambdaTerm, arg: LambdaTerm) -> LambdaTerm {
        LambdaTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn abs(binder: Var, body: LambdaTerm) -> LambdaTerm {
        LambdaTerm::Abs(binder, Box::new(body))
    }

    /// `\x1 ... xn. body`; the first binder is outermost.
    pub fn abs_many<I>(binders: I, body: LambdaTerm) -> LambdaTerm
    where
        I: IntoIterator<Item = Var>,
        I::IntoIter: DoubleEndedIterator,
    {
        binders
            .into_iter()
            .rev()
            .fold(body, |acc, b| LambdaTerm::abs(b, acc))
    }

    /// Left-nested application of `head` to `args`.
    pub fn apply_all(head: LambdaTerm, args: impl IntoIterator<Item = LambdaTerm>) -> LambdaTerm {
        args.into_iter().fold(head, LambdaTerm::app)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_lambda_fv(self, &mut bound, &mut out);
        out
    }

    pub fn is_free(&self, x: &Var) -> bool {
        match self {
            LambdaTerm::Var(v) => v == x,
            LambdaTerm::Prim(_) => false,
            LambdaTerm::App(f, a) => f.is_free(x) || a.is_free(x),
            LambdaTerm::Abs(b, body) => b != x && body.is_free(x),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring in the term, bound or free.
    pub fn names(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<Var>) {
        match self {
            LambdaTerm::Var(v) => {
                out.insert(v.clone());
            }
            LambdaTerm::Prim(_) => {}
            LambdaTerm::App(f, a) => {
                f.collect_names(out);
                a.collect_names(out);
            }
            LambdaTerm::Abs(b, body) => {
                out.insert(b.clone());
                body.collect_names(out);
            }
        }
    }

    /// Capture-avoiding substitution `self[x := s]`.
    ///
    /// A binder that would capture a free variable of `s` is renamed to its
    /// base name plus the smallest numeric suffix occurring in neither term.
    pub fn substitute(&self, x: &Var, s: &LambdaTerm) -> LambdaTerm {
        let s_free = s.free_vars();
        let mut taken = self.names();
        taken.extend(s.names());
        subst_rec(self, x, s, &s_free, &mut taken)
    }

    /// The term as a CL term, if it contains no abstraction.
    pub fn to_cl(&self) -> Option<ClTerm> {
        match self {
            LambdaTerm::Var(v) => Some(ClTerm::Var(v.clone())),
            LambdaTerm::Prim(c) => Some(ClTerm::Prim(*c)),
            LambdaTerm::App(f, a) => Some(ClTerm::app(f.to_cl()?, a.to_cl()?)),
            LambdaTerm::Abs(..) => None,
        }
    }

    /// Replaces every combinator constant by its defining lambda term.
    pub fn unfold(&self) -> LambdaTerm {
        match self {
            LambdaTerm::Var(_) => self.clone(),
            LambdaTerm::Prim(c) => c.definition(),
            LambdaTerm::App(f, a) => LambdaTerm::app(f.unfold(), a.unfold()),
            LambdaTerm::Abs(b, body) => LambdaTerm::abs(b.clone(), body.unfold()),
        }
    }
}

fn collect_lambda_fv(t: &LambdaTerm, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
    match t {
        LambdaTerm::Var(v) => {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        }
        LambdaTerm::Prim(_) => {}
        LambdaTerm::App(f, a) => {
            collect_lambda_fv(f, bound, out);
            collect_lambda_fv(a, bound, out);
        }
        LambdaTerm::Abs(b, body) => {
            bound.push(b.clone());
            collect_lambda_fv(body, bound, out);
            bound.pop();
        }
    }
}

fn subst_rec(
    t: &LambdaTerm,
    x: &Var,
    s: &LambdaTerm,
    s_free: &BTreeSet<Var>,
    taken: &mut BTreeSet<Var>,
) -> LambdaTerm {
    match t {
        LambdaTerm::Var(v) if v == x => s.clone(),
        LambdaTerm::Var(_) | LambdaTerm::Prim(_) => t.clone(),
        LambdaTerm::App(f, a) => LambdaTerm::app(
            subst_rec(f, x, s, s_free, taken),
            subst_rec(a, x, s, s_free, taken),
        ),
        LambdaTerm::Abs(b, _) if b == x => t.clone(),
        LambdaTerm::Abs(b, body) => {
            if !body.is_free(x) {
                return t.clone();
            }
            if s_free.contains(b) {
                let fresh = b.freshen(|name| taken.iter().any(|v| v.name() == name));
                taken.insert(fresh.clone());
                let renamed = subst_rec(
                    body,
                    b,
                    &LambdaTerm::Var(fresh.clone()),
                    &BTreeSet::from([fresh.clone()]),
                    taken,
                );
                LambdaTerm::abs(fresh, subst_rec(&renamed, x, s, s_free, taken))
            } else {
                LambdaTerm::abs(b.clone(), subst_rec(body, x, s, s_free, taken))
            }
        }
    }
}

/// A term of CL(B): variables and combinator constants under application.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClTerm {
    Var(Var),
    Prim(Combinator),
    App(Box<ClTerm>, Box<ClTerm>),
}

impl ClTerm {
    pub fn var(name: &str) -> ClTerm {
        ClTerm::Var(Var::new(name))
    }

    pub fn app(fun: ClTerm, arg: ClTerm) -> ClTerm {
        ClTerm::App(Box::new(fun), Box::new(arg))
    }

    /// Left-nested application of `head` to `args`.
    pub fn apply_all(head: ClTerm, args: impl IntoIterator<Item = ClTerm>) -> ClTerm {
        args.into_iter().fold(head, ClTerm::app)
    }

    /// `c a1 ... an`.
    pub fn prim_app(c: Combinator, args: impl IntoIterator<Item = ClTerm>) -> ClTerm {
        ClTerm::apply_all(ClTerm::Prim(c), args)
    }

    pub fn as_app(&self) -> Option<(&ClTerm, &ClTerm)> {
        match self {
            ClTerm::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    /// Head atom and arguments of the application spine.
    pub fn spine(&self) -> (&ClTerm, Vec<&ClTerm>) {
        let mut args = Vec::new();
        let mut head = self;
        while let ClTerm::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Owned form of [`ClTerm::spine`].
    pub fn into_spine(self) -> (ClTerm, Vec<ClTerm>) {
        let mut args = Vec::new();
        let mut head = self;
        while let ClTerm::App(f, a) = head {
            args.push(*a);
            head = *f;
        }
        args.reverse();
        (head, args)
    }

    /// The arguments, if the term is exactly `c` applied to `n` of them.
    pub fn prim_args(&self, c: Combinator, n: usize) -> Option<Vec<&ClTerm>> {
        let (head, args) = self.spine();
        (*head == ClTerm::Prim(c) && args.len() == n).then_some(args)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            ClTerm::Var(v) => {
                out.insert(v.clone());
            }
            ClTerm::Prim(_) => {}
            ClTerm::App(f, a) => {
                f.collect_vars(out);
                a.collect_vars(out);
            }
        }
    }

    /// Whether `x` occurs in the term (every occurrence is free).
    pub fn occurs(&self, x: &Var) -> bool {
        match self {
            ClTerm::Var(v) => v == x,
            ClTerm::Prim(_) => false,
            ClTerm::App(f, a) => f.occurs(x) || a.occurs(x),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            ClTerm::Var(_) => false,
            ClTerm::Prim(_) => true,
            ClTerm::App(f, a) => f.is_closed() && a.is_closed(),
        }
    }

    pub fn to_lambda(&self) -> LambdaTerm {
        match self {
            ClTerm::Var(v) => LambdaTerm::Var(v.clone()),
            ClTerm::Prim(c) => LambdaTerm::Prim(*c),
            ClTerm::App(f, a) => LambdaTerm::app(f.to_lambda(), a.to_lambda()),
        }
    }

    /// Replaces every combinator constant by its defining lambda term.
    pub fn unfold(&self) -> LambdaTerm {
        match self {
            ClTerm::Var(v) => LambdaTerm::Var(v.clone()),
            ClTerm::Prim(c) => c.definition(),
            ClTerm::App(f, a) => LambdaTerm::app(f.unfold(), a.unfold()),
        }
    }
}

impl From<ClTerm> for LambdaTerm {
    fn from(t: ClTerm) -> LambdaTerm {
        t.to_lambda()
    }
}

/// Checks the two terms for alpha-equivalence.
pub fn alpha_equal(t1: &LambdaTerm, t2: &LambdaTerm) -> bool {
    fn go<'a>(a: &'a LambdaTerm, b: &'a LambdaTerm, env: &mut Vec<(&'a Var, &'a Var)>) -> bool {
        match (a, b) {
            (LambdaTerm::Var(x), LambdaTerm::Var(y)) => {
                let bx = env.iter().rposition(|(l, _)| *l == x);
                let by = env.iter().rposition(|(_, r)| *r == y);
                match (bx, by) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (LambdaTerm::Prim(c), LambdaTerm::Prim(d)) => c == d,
            (LambdaTerm::App(f1, a1), LambdaTerm::App(f2, a2)) => {
                go(f1, f2, env) && go(a1, a2, env)
            }
            (LambdaTerm::Abs(x, b1), LambdaTerm::Abs(y, b2)) => {
                env.push((x, y));
                let eq = go(b1, b2, env);
                env.pop();
                eq
            }
            _ => false,
        }
    }
    go(t1, t2, &mut Vec::new())
}
