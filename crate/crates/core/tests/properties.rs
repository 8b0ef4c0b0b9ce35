use bracket_core::abstraction::{
    abstract_rewrite_mode, abstract_traced, abstract_var, replay_trace, translate, AlgorithmId,
    NormalClass,
};
use bracket_core::lab::{
    gen_beta_normal, gen_cl, gen_lambda, lambda_semantically_equal, semantically_equal,
};
use bracket_core::lab::{GeneratorConfig, Semantic};
use bracket_core::metrics::Size;
use bracket_core::reduce::{beta_eta_normalize, Fuel};
use bracket_core::syntax::{parse_cl, parse_lambda};
use bracket_core::term::{alpha_equal, ClTerm, Combinator, LambdaTerm, Var};
use proptest::prelude::*;
use AlgorithmId::*;

fn lambda(max: usize) -> impl Strategy<Value = LambdaTerm> {
    (any::<u64>(), 1..=max).prop_map(|(seed, size)| gen_lambda(&GeneratorConfig::new(seed, size)))
}

fn normal(max: usize) -> impl Strategy<Value = LambdaTerm> {
    (any::<u64>(), 1..=max)
        .prop_map(|(seed, size)| gen_beta_normal(&GeneratorConfig::new(seed, size)))
}

fn cl(max: usize, class: Option<NormalClass>) -> impl Strategy<Value = ClTerm> {
    (any::<u64>(), 1..=max).prop_map(move |(seed, size)| {
        gen_cl(
            &GeneratorConfig::new(seed, size).with_pool(&["x", "y", "z"]),
            &Combinator::ALL,
            class,
        )
    })
}

fn x() -> Var {
    Var::new("x")
}

fn algorithm() -> impl Strategy<Value = AlgorithmId> {
    proptest::sample::select(AlgorithmId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fv_law(alg in algorithm(), t in lambda(40)) {
        prop_assert_eq!(translate(alg, &t).free_vars(), t.free_vars());
    }

    #[test]
    fn abstraction_removes_the_variable(alg in algorithm(), t in cl(30, None)) {
        let out = abstract_var(alg, &x(), &t);
        prop_assert!(!out.occurs(&x()));
        let mut expected = t.free_vars();
        expected.remove(&x());
        prop_assert_eq!(out.free_vars(), expected);
    }

    #[test]
    fn abstraction_is_beta_eta_correct(alg in algorithm(), t in cl(15, None)) {
        // ([x] t) x = t
        let applied = ClTerm::app(abstract_var(alg, &x(), &t), ClTerm::Var(x()));
        prop_assert_ne!(semantically_equal(&applied, &t, Fuel::DEFAULT), Semantic::NotEqual);
    }

    #[test]
    fn translation_is_beta_eta_correct(alg in algorithm(), t in normal(15)) {
        let out = translate(alg, &t).to_lambda();
        prop_assert_ne!(lambda_semantically_equal(&out, &t, Fuel::DEFAULT), Semantic::NotEqual);
    }

    #[test]
    fn abf_and_abf_prime_agree(t in cl(30, None)) {
        prop_assert_eq!(abstract_var(Abf, &x(), &t), abstract_var(AbfPrime, &x(), &t));
    }

    #[test]
    fn t_prime_k_lemma(seed in any::<u64>(), size in 1..30usize) {
        let t = gen_cl(&GeneratorConfig::new(seed, size).with_pool(&["y", "z"]), &Combinator::ALL, None);
        prop_assert_eq!(abstract_var(TPrime, &x(), &t), ClTerm::prim_app(Combinator::K, [t.clone()]));
        let tx = ClTerm::app(t.clone(), ClTerm::Var(x()));
        prop_assert_eq!(abstract_var(TPrime, &x(), &tx), t);
    }

    #[test]
    fn t_normal_preserved(t in cl(30, Some(NormalClass::T))) {
        prop_assert!(NormalClass::T.contains(&abstract_var(T, &x(), &t)));
    }

    #[test]
    fn t_and_t_prime_agree_on_t_normal(t in cl(30, Some(NormalClass::T))) {
        prop_assert_eq!(abstract_var(T, &x(), &t), abstract_var(TPrime, &x(), &t));
    }

    #[test]
    fn s_and_tstar_normal_agreement(s in cl(30, Some(NormalClass::S)), t in cl(30, Some(NormalClass::TStar))) {
        prop_assert_eq!(abstract_var(Schonfinkel, &x(), &s), abstract_var(SchonfinkelPrime, &x(), &s));
        prop_assert_eq!(abstract_var(TStar, &x(), &t), abstract_var(TStarPrime, &x(), &t));
    }

    #[test]
    fn beta_normal_translations_are_normal(t in normal(40)) {
        prop_assert!(NormalClass::T.contains(&translate(T, &t)));
        prop_assert!(NormalClass::S.contains(&translate(Schonfinkel, &t)));
        prop_assert!(NormalClass::TStar.contains(&translate(TStar, &t)));
    }

    #[test]
    fn beta_normal_theorems(t in normal(40)) {
        prop_assert_eq!(translate(T, &t), translate(TPrime, &t));
        prop_assert_eq!(translate(Schonfinkel, &t), translate(SchonfinkelPrime, &t));
        prop_assert_eq!(translate(TStar, &t), translate(TStarPrime, &t));
    }

    #[test]
    fn eta_free_theorems(t in lambda(40), c in cl(30, None)) {
        prop_assert_eq!(translate(TMinusEta, &t), translate(TPrimeMinusEta, &t));
        prop_assert_eq!(translate(SchonfinkelMinusEta, &t), translate(SchonfinkelPrimeMinusEta, &t));
        prop_assert_eq!(abstract_var(TMinusEta, &x(), &c), abstract_var(TPrimeMinusEta, &x(), &c));
        prop_assert_eq!(abstract_var(SchonfinkelMinusEta, &x(), &c), abstract_var(SchonfinkelPrimeMinusEta, &x(), &c));
    }

    #[test]
    fn replay_reproduces_abstraction(alg in algorithm(), t in cl(30, None)) {
        let (out, trace) = abstract_traced(alg, &x(), &t);
        prop_assert_eq!(&out, &abstract_var(alg, &x(), &t));
        prop_assert_eq!(replay_trace(alg, &x(), &t, &trace), Ok(out));
    }

    #[test]
    fn rewrite_mode_never_larger_and_correct(t in cl(15, None)) {
        let plain = abstract_var(AbfPrime, &x(), &t);
        let rewritten = abstract_rewrite_mode(AbfPrime, &x(), &t).unwrap();
        prop_assert!(rewritten.size() <= plain.size());
        prop_assert_ne!(semantically_equal(&plain, &rewritten, Fuel::DEFAULT), Semantic::NotEqual);
    }

    #[test]
    fn lambda_round_trip(t in lambda(40)) {
        let printed = t.to_string();
        prop_assert_eq!(parse_lambda(&printed).unwrap(), t);
    }

    #[test]
    fn cl_round_trip(t in cl(40, None)) {
        prop_assert_eq!(parse_cl(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn alpha_equality_is_an_equivalence(t in lambda(30)) {
        prop_assert!(alpha_equal(&t, &t));
        // Renaming through a normal form round trip preserves alpha class.
        if let Ok(nf) = beta_eta_normalize(&t, Fuel(2_000)) {
            let again = beta_eta_normalize(&nf, Fuel(2_000)).unwrap();
            prop_assert!(alpha_equal(&nf, &again));
            prop_assert!(alpha_equal(&again, &nf));
        }
    }

    #[test]
    fn substitution_fv_law(t in lambda(30), s in lambda(10)) {
        let x = x();
        let result = t.substitute(&x, &s);
        let mut expected = t.free_vars();
        if expected.remove(&x) {
            expected.extend(s.free_vars());
        }
        prop_assert_eq!(result.free_vars(), expected);
    }

    #[test]
    fn semantic_equality_is_symmetric(a in cl(12, None), b in cl(12, None)) {
        prop_assert_eq!(semantically_equal(&a, &b, Fuel::DEFAULT), semantically_equal(&b, &a, Fuel::DEFAULT));
        prop_assert_ne!(semantically_equal(&a, &a, Fuel::DEFAULT), Semantic::NotEqual);
    }

    #[test]
    fn size_grows_with_arguments(t in cl(20, None), u in cl(20, None)) {
        prop_assert!(ClTerm::app(t.clone(), u).size() > t.size());
    }
}
