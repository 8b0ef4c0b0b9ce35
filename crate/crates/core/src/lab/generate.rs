//! Seeded random term generators.
//!
//! Sizes count atoms (variables and combinator constants); binders are free.

use rand::seq::index::sample;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abstraction::NormalClass;
use crate::term::{ClTerm, Combinator, LambdaTerm, Var};

/// Probability of emitting an abstraction at each node.
pub const ABSTRACTION_PROBABILITY: f64 = 0.35;

/// Probability that a variable occurrence refers to an enclosing binder
/// rather than the free pool, when both are available.
const BOUND_PROBABILITY: f64 = 0.75;

/// Probability that a CL spine head is a combinator rather than a variable.
const COMBINATOR_HEAD_PROBABILITY: f64 = 0.4;

const MAX_SPINE_ARGS: usize = 4;

/// Binders do not count towards the size, so chains of them are cut off at
/// this nesting depth.
pub const MAX_BINDER_DEPTH: usize = 8;

const BINDER_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Upper bound on the number of atoms.
    pub max_size: usize,
    pub free_var_pool: Vec<Var>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            max_size: 40,
            free_var_pool: ["a", "b", "c"].iter().map(|n| Var::new(n)).collect(),
        }
    }
}

impl GeneratorConfig {
    pub fn new(seed: u64, max_size: usize) -> Self {
        GeneratorConfig {
            seed,
            max_size,
            ..Default::default()
        }
    }

    pub fn with_pool(mut self, names: &[&str]) -> Self {
        self.free_var_pool = names.iter().map(|n| Var::new(n)).collect();
        self
    }

    /// The configuration for trial `index`; seeds of different trials are
    /// decorrelated so trials can run in any order.
    pub fn for_trial(&self, index: u64) -> GeneratorConfig {
        GeneratorConfig {
            seed: trial_seed(self.seed, index),
            ..self.clone()
        }
    }
}

/// splitmix64 finaliser over `master + index * golden ratio`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    pool: &'a [Var],
    binders: Vec<Var>,
}

impl<'a> Gen<'a> {
    fn new(cfg: &'a GeneratorConfig) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            pool: &cfg.free_var_pool,
            binders: BINDER_NAMES.iter().map(|n| Var::new(n)).collect(),
        }
    }

    fn target_size(&mut self, max_size: usize) -> usize {
        self.rng.random_range(1..=max_size.max(1))
    }

    fn wants_binder(&mut self, scope: &[Var]) -> bool {
        (scope.is_empty() && self.pool.is_empty())
            || (scope.len() < MAX_BINDER_DEPTH && self.rng.random_bool(ABSTRACTION_PROBABILITY))
    }

    fn binder(&mut self) -> Var {
        self.binders
            .choose(&mut self.rng)
            .expect("binder names")
            .clone()
    }

    fn variable(&mut self, scope: &[Var]) -> Var {
        let from_scope =
            !scope.is_empty() && (self.pool.is_empty() || self.rng.random_bool(BOUND_PROBABILITY));
        let choices = if from_scope { scope } else { self.pool };
        choices
            .choose(&mut self.rng)
            .expect("a variable is in scope")
            .clone()
    }

    /// Positive parts summing to `total`.
    fn composition(&mut self, total: usize, parts: usize) -> Vec<usize> {
        let mut cuts: Vec<usize> = sample(&mut self.rng, total - 1, parts - 1)
            .into_iter()
            .map(|c| c + 1)
            .collect();
        cuts.sort_unstable();
        cuts.push(total);
        let mut prev = 0;
        cuts.into_iter()
            .map(|c| {
                let part = c - prev;
                prev = c;
                part
            })
            .collect()
    }

    fn lambda(&mut self, size: usize, scope: &mut Vec<Var>) -> LambdaTerm {
        if self.wants_binder(scope) {
            let b = self.binder();
            scope.push(b.clone());
            let body = self.lambda(size, scope);
            scope.pop();
            return LambdaTerm::abs(b, body);
        }
        if size == 1 {
            return LambdaTerm::Var(self.variable(scope));
        }
        let left = self.rng.random_range(1..size);
        let f = self.lambda(left, scope);
        let a = self.lambda(size - left, scope);
        LambdaTerm::app(f, a)
    }

    fn normal(&mut self, size: usize, scope: &mut Vec<Var>) -> LambdaTerm {
        if self.wants_binder(scope) {
            let b = self.binder();
            scope.push(b.clone());
            let body = self.normal(size, scope);
            scope.pop();
            return LambdaTerm::abs(b, body);
        }
        let head = LambdaTerm::Var(self.variable(scope));
        let rest = size - 1;
        if rest == 0 {
            return head;
        }
        let k = self.rng.random_range(1..=rest.min(MAX_SPINE_ARGS));
        let args: Vec<LambdaTerm> = self
            .composition(rest, k)
            .into_iter()
            .map(|part| self.normal(part, scope))
            .collect();
        LambdaTerm::apply_all(head, args)
    }

    fn cl(&mut self, size: usize, atoms: &[Combinator], class: Option<NormalClass>) -> ClTerm {
        loop {
            let use_comb = self.pool.is_empty()
                || (!atoms.is_empty() && self.rng.random_bool(COMBINATOR_HEAD_PROBABILITY));
            let (head, cap) = if use_comb {
                let c = *atoms.choose(&mut self.rng).expect("combinator atoms");
                let cap = class
                    .and_then(|cls| cls.max_args(c))
                    .unwrap_or(MAX_SPINE_ARGS);
                (ClTerm::Prim(c), cap.min(MAX_SPINE_ARGS))
            } else {
                let v = self
                    .pool
                    .choose(&mut self.rng)
                    .expect("variable pool")
                    .clone();
                (ClTerm::Var(v), MAX_SPINE_ARGS)
            };
            let rest = size - 1;
            if rest == 0 {
                return head;
            }
            if cap == 0 {
                continue;
            }
            let k = self.rng.random_range(1..=rest.min(cap));
            let args: Vec<ClTerm> = self
                .composition(rest, k)
                .into_iter()
                .map(|part| self.cl(part, atoms, class))
                .collect();
            return ClTerm::apply_all(head, args);
        }
    }
}

/// An arbitrary lambda term of at most `cfg.max_size` atoms; redexes are
/// allowed. With an empty free-variable pool the term is closed.
pub fn gen_lambda(cfg: &GeneratorConfig) -> LambdaTerm {
    let mut g = Gen::new(cfg);
    let size = g.target_size(cfg.max_size);
    g.lambda(size, &mut Vec::new())
}

/// A beta-normal lambda term, from `nf ::= \x. nf | v nf ... nf`.
pub fn gen_beta_normal(cfg: &GeneratorConfig) -> LambdaTerm {
    let mut g = Gen::new(cfg);
    let size = g.target_size(cfg.max_size);
    g.normal(size, &mut Vec::new())
}

/// A CL term over the free-variable pool and `atoms`, optionally restricted
/// to a normal class by capping the argument count of each spine head.
pub fn gen_cl(cfg: &GeneratorConfig, atoms: &[Combinator], class: Option<NormalClass>) -> ClTerm {
    assert!(
        !cfg.free_var_pool.is_empty() || !atoms.is_empty(),
        "CL generation needs variables or combinators"
    );
    let mut g = Gen::new(cfg);
    let size = g.target_size(cfg.max_size);
    g.cl(size, atoms, class)
}
