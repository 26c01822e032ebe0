//! Equality of programs: exact, up to global phase, and up to auxiliaries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::{Precision, RingElem};
use crate::semantics::eval;
use crate::term::Term;

fn same_dims(t1: &Term, t2: &Term) -> Result<usize> {
    let (d1, d2) = (t1.dom()?, t2.dom()?);
    if d1 != d2 {
        return Err(Error::ShapeMismatch { op: "eq", left: (d1, d1), right: (d2, d2) });
    }
    Ok(d1)
}

/// Exact equality of denotations.
pub fn eq(t1: &Term, t2: &Term, k: Precision) -> Result<bool> {
    same_dims(t1, t2)?;
    Ok(eval(t1, k)? == eval(t2, k)?)
}

/// `j ∈ [0, 2^k)` with `⟦t1⟧ = ζ^j · ⟦t2⟧`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseWitness {
    pub exponent: i64,
}

/// Looks for a power of `ζ` relating the two denotations.
pub fn eq_up_to_phase(t1: &Term, t2: &Term, k: Precision) -> Result<Option<PhaseWitness>> {
    same_dims(t1, t2)?;
    let (a, b) = (eval(t1, k)?, eval(t2, k)?);
    Ok(phase_between(&a, &b).map(|exponent| PhaseWitness { exponent }))
}

/// The exponent `j` with `a = ζ^j b`, if any.
pub fn phase_between(a: &ExactMatrix, b: &ExactMatrix) -> Option<i64> {
    if a.shape() != b.shape() || a.k() != b.k() {
        return None;
    }
    let k = a.k();
    let pos = b.entries().iter().position(|e| !e.is_zero())?;
    let (x, y) = (&a.entries()[pos], &b.entries()[pos]);
    let j = (0..k.order()).find(|&j| &y.mul_zeta_pow(j) == x)?;
    if &b.mul_zeta_pow(j) == a {
        Some(j)
    } else {
        None
    }
}

/// Equality up to auxiliary summands. In the matrix model this coincides
/// with exact equality, since unitary matrices cancel under `⊕`.
pub fn decide_approx(t1: &Term, t2: &Term, k: Precision) -> Result<bool> {
    eq(t1, t2, k)
}

/// Evidence for `a ≈ a'`: auxiliaries with `a ⊕ b = a' ⊕ b'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxWitness {
    pub b: Term,
    pub b_prime: Term,
}

impl ApproxWitness {
    /// `b = b' = id_1`.
    pub fn reflexive() -> ApproxWitness {
        ApproxWitness { b: Term::Id(1), b_prime: Term::Id(1) }
    }

    /// Evidence for the flipped relation `a' ≈ a`.
    pub fn flip(&self) -> ApproxWitness {
        ApproxWitness { b: self.b_prime.clone(), b_prime: self.b.clone() }
    }

    /// Checks `⟦a ⊕ b⟧ = ⟦a' ⊕ b'⟧`.
    pub fn verify(&self, a: &Term, a_prime: &Term, k: Precision) -> Result<bool> {
        if a.dom()? != a_prime.dom()? || self.b.dom()? != self.b_prime.dom()? {
            return Ok(false);
        }
        let lhs = Term::sum(a.clone(), self.b.clone());
        let rhs = Term::sum(a_prime.clone(), self.b_prime.clone());
        eq(&lhs, &rhs, k)
    }
}

/// Transitivity: from `a ⊕ b = a' ⊕ b'` and `a' ⊕ c' = a'' ⊕ c''`, the
/// auxiliaries `c' ∘ b` and `c'' ∘ b'` witness `a ≈ a''`.
pub fn approx_witness_compose(
    a: &Term,
    a_prime: &Term,
    a_second: &Term,
    w1: &ApproxWitness,
    w2: &ApproxWitness,
    k: Precision,
) -> Result<ApproxWitness> {
    if !w1.verify(a, a_prime, k)? {
        return Err(Error::InvalidWitness("first witness does not relate a and a'".into()));
    }
    if !w2.verify(a_prime, a_second, k)? {
        return Err(Error::InvalidWitness("second witness does not relate a' and a''".into()));
    }
    if w1.b.dom()? != w2.b.dom()? {
        return Err(Error::InvalidWitness(format!(
            "auxiliary objects differ: {} vs {}",
            w1.b.dom()?,
            w2.b.dom()?
        )));
    }
    let out = ApproxWitness {
        b: Term::comp(w2.b.clone(), w1.b.clone()),
        b_prime: Term::comp(w2.b_prime.clone(), w1.b_prime.clone()),
    };
    if !out.verify(a, a_second, k)? {
        return Err(Error::InvalidWitness("pasted witness failed to verify".into()));
    }
    Ok(out)
}

/// `ζ^j` as a ring element; convenience for callers checking witnesses.
pub fn phase_scalar(k: Precision, w: PhaseWitness) -> RingElem {
    RingElem::zeta_pow(k, w.exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Gates;

    fn k(n: u32) -> Precision {
        Precision::new(n).unwrap()
    }

    #[test]
    fn basic_decisions() {
        let g = Gates::new(k(3));
        let s = g.s();
        let vsv = Term::comp(Term::V, Term::comp(s.clone(), Term::V));
        let svs = Term::comp(s.clone(), Term::comp(Term::V, s));
        assert!(eq(&vsv, &svs, k(3)).unwrap());
        let h = g.h().unwrap();
        assert!(eq(&Term::comp(h.clone(), h), &Term::Id(2), k(3)).unwrap());
        assert!(!eq(&Term::V, &Term::x(), k(3)).unwrap());
        assert!(eq(&Term::V, &Term::Id(3), k(3)).is_err());
    }

    #[test]
    fn phases() {
        let t = Term::sum(Term::V, Term::Zeta(1));
        let w = eq_up_to_phase(&t, &Term::scale(5, t.clone()), k(3)).unwrap().unwrap();
        assert_eq!(w.exponent, 3);
        assert_eq!(eq_up_to_phase(&t, &t, k(3)).unwrap().unwrap().exponent, 0);
        assert!(eq_up_to_phase(&Term::V, &Term::x(), k(3)).unwrap().is_none());
    }

    #[test]
    fn witnesses() {
        let kk = k(2);
        let a = Term::V;
        let a2 = Term::sequence(2, vec![Term::V; 5]);
        let w = ApproxWitness { b: Term::Zeta(1), b_prime: Term::Zeta(5) };
        assert!(w.verify(&a, &a2, kk).unwrap());
        assert!(w.flip().verify(&a2, &a, kk).unwrap());
        let r = approx_witness_compose(&a, &a, &a, &ApproxWitness::reflexive(), &ApproxWitness::reflexive(), kk).unwrap();
        assert!(eq(&r.b, &Term::Id(1), kk).unwrap() && eq(&r.b_prime, &Term::Id(1), kk).unwrap());
        let bad = ApproxWitness { b: Term::Zeta(1), b_prime: Term::Zeta(2) };
        assert!(approx_witness_compose(&a, &a2, &a, &bad, &w.flip(), kk).is_err());
        let c = approx_witness_compose(&a, &a2, &a, &w, &w.flip(), kk).unwrap();
        assert!(c.verify(&a, &a, kk).unwrap());
    }
}
