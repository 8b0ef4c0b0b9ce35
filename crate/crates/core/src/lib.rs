//! Bracket abstraction: translating lambda terms into combinatory logic.

pub mod abstraction;
pub mod lab;
pub mod metrics;
pub mod reduce;
pub mod syntax;
pub mod term;

pub use abstraction::{abstract_multi, abstract_var, translate, AlgorithmId};
pub use reduce::{beta_eta_normalize, beta_normalize, eta_normalize, Fuel, FuelExhausted};
pub use syntax::{parse_cl, parse_lambda, print_cl, print_lambda, ParseError};
pub use term::{alpha_equal, ClTerm, Combinator, LambdaTerm, Var};
