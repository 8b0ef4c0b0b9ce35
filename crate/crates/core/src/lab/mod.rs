//! Semantic oracle, term generators, differential comparison and shrinking.

mod differential;
mod generate;
mod oracle;
mod shrink;

pub use differential::{differential, differential_abstract, Source, Verdict};
pub use generate::{
    gen_beta_normal, gen_cl, gen_lambda, trial_seed, GeneratorConfig, ABSTRACTION_PROBABILITY,
    MAX_BINDER_DEPTH,
};
pub use oracle::{
    check_correctness, check_many, lambda_semantically_equal, semantically_equal, CheckSummary,
    CorrectnessReport, Semantic, Undecided, MAX_OUTPUT_ATOMS,
};
pub use shrink::shrink;
