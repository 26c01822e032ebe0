use pik_core::random::{random_dim, random_term, trial_rng, TermShape};
use pik_core::syntax::{parse, pretty};
use pik_core::tensor::{elaborate_kron, sigma_tensor, transpose_perm};
use pik_core::term::{lift_term, term_conj, term_dagger};
use pik_core::{eval, Error, Evaluator, Gates, Precision, Term};
use proptest::prelude::*;

fn k(n: u32) -> Precision {
    Precision::new(n).unwrap()
}

fn sample(seed: u64, kk: u32, max_dim: usize, shape: TermShape) -> (Term, Precision) {
    let mut rng = trial_rng(seed, 0);
    let dim = random_dim(&mut rng, max_dim);
    (random_term(&mut rng, k(kk), dim, &shape), k(kk))
}

#[test]
fn pretty_parse_round_trip() {
    for i in 0..1000u64 {
        let kk = 2 + (i % 4) as u32;
        let mut rng = trial_rng(17, i);
        let dim = random_dim(&mut rng, 8);
        let t = random_term(&mut rng, k(kk), dim, &TermShape::medium());
        let src = pretty(&t);
        let back = parse(&src, k(kk)).unwrap_or_else(|e| panic!("{src}: {e}"));
        assert_eq!(back, t, "{src}");
        assert_eq!(pretty(&back), src);
    }
}

#[test]
fn parser_examples() {
    assert_eq!(parse("V ; V", k(2)).unwrap(), Term::comp(Term::V, Term::V));
    assert_eq!(parse("id(1) (+) zeta^2", k(2)).unwrap(), Term::sum(Term::Id(1), Term::Zeta(2)));
    assert_eq!(pretty(&Term::comp(Term::V, Term::V)), "V ; V");
    let err = parse("H", k(2)).unwrap_err();
    assert!(err.to_string().contains("requires k >= 3"), "{err}");
    match parse("V ;\n  ; V", k(2)).unwrap_err() {
        Error::Parse { line, col, .. } => assert_eq!((line, col), (2, 3)),
        other => panic!("{other}"),
    }
    // precedence: (x) over (+) over ;
    let t = parse("V (+) V (x) id(2) ; X (+) id(4)", k(2)).unwrap();
    let expect = Term::comp(
        Term::sum(Term::x(), Term::Id(4)),
        Term::sum(Term::V, Term::kron(Term::V, Term::Id(2))),
    );
    assert_eq!(t, expect);
}

#[test]
fn random_terms_are_unitary() {
    for kk in 2..=4 {
        for i in 0..1000u64 {
            let mut rng = trial_rng(kk as u64, i);
            let dim = random_dim(&mut rng, 16);
            let t = random_term(&mut rng, k(kk), dim, &TermShape::small());
            assert!(eval(&t, k(kk)).unwrap().is_unitary().unwrap(), "{t}");
        }
    }
}

#[test]
fn sigma_tensor_is_the_transpose_built_from_sums() {
    let ev = Evaluator::new(k(2));
    for m in 1..=8 {
        for n in 1..=8 {
            let s = sigma_tensor(m, n);
            assert!(s.is_additive_permutation(), "sigma({m},{n})");
            assert_eq!(s.well_formed().unwrap(), (m * n, m * n));
            assert_eq!(ev.permutation(&s).unwrap().unwrap(), transpose_perm(m, n), "sigma({m},{n})");
        }
    }
}

#[test]
fn derived_gate_identities() {
    for kk in 2..=6 {
        let g = Gates::new(k(kk));
        let ss = eval(&Term::comp(g.s(), g.s()), k(kk)).unwrap();
        assert_eq!(ss, eval(&Term::sum(Term::Id(1), g.minus_one()), k(kk)).unwrap());
        let vsv = Term::sequence(2, vec![Term::V, g.s(), Term::V]);
        let svs = Term::sequence(2, vec![g.s(), Term::V, g.s()]);
        assert_eq!(eval(&vsv, k(kk)).unwrap(), eval(&svs, k(kk)).unwrap());
        if kk >= 3 {
            let t_pow = pik_core::term::power(&g.t(), 1 << (kk - 2), 2);
            assert_eq!(eval(&t_pow, k(kk)).unwrap(), eval(&g.s(), k(kk)).unwrap());
            let h = g.h().unwrap();
            assert!(eval(&Term::comp(h.clone(), h), k(kk)).unwrap().is_identity());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conj_matches_entrywise_star(seed in any::<u64>(), kk in 2u32..=5) {
        let (t, k) = sample(seed, kk, 8, TermShape::medium());
        let c = term_conj(&t, k).unwrap();
        prop_assert_eq!(eval(&c, k).unwrap(), eval(&t, k).unwrap().star_entrywise());
        prop_assert_eq!(eval(&term_conj(&c, k).unwrap(), k).unwrap(), eval(&t, k).unwrap());
    }

    #[test]
    fn dagger_matches_matrix_dagger(seed in any::<u64>(), kk in 2u32..=5) {
        let (t, k) = sample(seed, kk, 8, TermShape::medium());
        let d = term_dagger(&t, k).unwrap();
        prop_assert_eq!(eval(&d, k).unwrap(), eval(&t, k).unwrap().dagger());
        prop_assert!(eval(&Term::comp(d.clone(), t.clone()), k).unwrap().is_identity());
        prop_assert_eq!(eval(&term_dagger(&d, k).unwrap(), k).unwrap(), eval(&t, k).unwrap());
    }

    #[test]
    fn elaboration_removes_kron_and_keeps_meaning(seed in any::<u64>(), kk in 2u32..=4) {
        let (t, k) = sample(seed, kk, 8, TermShape::medium());
        let e = elaborate_kron(&t).unwrap();
        prop_assert!(e.is_kron_free());
        prop_assert_eq!(eval(&e, k).unwrap(), eval(&t, k).unwrap());
    }

    #[test]
    fn lift_commutes_with_eval(seed in any::<u64>(), kk in 2u32..=4) {
        let (t, k) = sample(seed, kk, 6, TermShape::medium());
        let up = k.succ().unwrap();
        prop_assert_eq!(eval(&lift_term(&t), up).unwrap(), eval(&t, k).unwrap().lift(up).unwrap());
    }

    #[test]
    fn pretty_is_idempotent_after_parse(seed in any::<u64>()) {
        let (t, k) = sample(seed, 3, 6, TermShape::medium());
        let once = pretty(&parse(&pretty(&t), k).unwrap());
        prop_assert_eq!(pretty(&parse(&once, k).unwrap()), once);
    }
}
