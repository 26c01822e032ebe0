use pik_core::int::Int;
use pik_core::{Precision, RingElem};
use proptest::prelude::*;

fn elem(k: u32, max_den: u32, bound: i64) -> impl Strategy<Value = RingElem> {
    let k = Precision::new(k).unwrap();
    (0..=max_den, prop::collection::vec(-bound..=bound, k.width())).prop_map(move |(e, cs)| {
        RingElem::from_parts(k, e, cs.into_iter().map(Int::from).collect()).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (RingElem, RingElem, RingElem)> {
    (2u32..=5).prop_flat_map(|k| (elem(k, 16, 1 << 20), elem(k, 16, 1 << 20), elem(k, 16, 1 << 20)))
}

fn close(a: (f64, f64), b: (f64, f64), scale: f64) -> bool {
    let tol = 1e-9 * scale.max(1.0);
    (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn mag(a: (f64, f64)) -> f64 {
    a.0.hypot(a.1)
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &RingElem::one(a.k()), a.clone());
    }

    #[test]
    fn outputs_are_canonical((a, b, _c) in triple()) {
        prop_assert!((&a + &b).is_canonical());
        prop_assert!((&a * &b).is_canonical());
        prop_assert!((-&a).is_canonical());
        prop_assert!(a.galois_star().is_canonical());
    }

    #[test]
    fn conjugations_are_commuting_involutive_automorphisms((a, b, _c) in triple()) {
        for f in [RingElem::galois_star as fn(&RingElem) -> RingElem, RingElem::complex_conj] {
            prop_assert_eq!(f(&f(&a)), a.clone());
            prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
            prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
        }
        prop_assert_eq!(a.galois_star().complex_conj(), a.complex_conj().galois_star());
    }

    #[test]
    fn float_embedding_is_a_homomorphism((a, b, _c) in triple()) {
        let (fa, fb) = (a.float_embed(), b.float_embed());
        let sum = (&a + &b).float_embed();
        prop_assert!(close(sum, (fa.0 + fb.0, fa.1 + fb.1), mag(fa) + mag(fb)));
        let prod = (&a * &b).float_embed();
        prop_assert!(close(prod, cmul(fa, fb), mag(fa) * mag(fb)));
    }

    #[test]
    fn lift_is_an_injective_homomorphism((a, b, _c) in (2u32..=4).prop_flat_map(|k| (elem(k, 6, 50), elem(k, 6, 50), Just(0)))) {
        let up = a.k().succ().unwrap();
        let (la, lb) = (a.lift(up).unwrap(), b.lift(up).unwrap());
        prop_assert_eq!((&a * &b).lift(up).unwrap(), &la * &lb);
        prop_assert_eq!((&a + &b).lift(up).unwrap(), &la + &lb);
        prop_assert_eq!(a == b, la == lb);
        prop_assert!(close(la.float_embed(), a.float_embed(), mag(a.float_embed())));
    }

    #[test]
    fn json_round_trip((a, _b, _c) in triple()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: RingElem = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn zeta_has_order_two_to_the_k() {
    for kk in 2..=8 {
        let k = Precision::new(kk).unwrap();
        let z = RingElem::zeta_pow(k, 1);
        let mut acc = RingElem::one(k);
        for j in 1..=k.order() {
            acc = &acc * &z;
            assert_eq!(acc.is_one(), j == k.order(), "k = {kk}, j = {j}");
        }
        assert_eq!(RingElem::zeta_pow(k, k.order() / 2), -&RingElem::one(k));
    }
}

#[test]
fn coefficient_growth_does_not_overflow() {
    let k = Precision::new(3).unwrap();
    let mut x = RingElem::from_int(k, 3);
    for _ in 0..8 {
        x = &x * &x;
        x = &x + &RingElem::zeta_pow(k, 1);
    }
    assert!(x.max_coeff_bits() > 64);
    assert!(x.is_canonical());
}
