//! Exact synthesis at `k = 2`: any unitary over `Z[1/2, i]` back to a term.
//!
//! Works column by column. With `δ = 1 + i`, the least `L` such that
//! `δ^L x` is a Gaussian integer drops by one whenever two entries of the
//! same `L` and the same residue mod 2 are mixed by
//! `M = S V S = (1+i)/2 [[1, 1], [1, -1]]`. Once every entry is a Gaussian
//! integer the column is a unit vector up to a phase in `{1, i, -1, -i}`.

use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::matrix::ExactMatrix;
use crate::ring::{Precision, RingElem};
use crate::semantics::eval;
use crate::tensor::perm_term;
use crate::term::{term_dagger, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SynthesisResult {
    #[serde(skip)]
    pub term: Term,
    pub gate_count: usize,
    pub max_den_exp_seen: u32,
}

fn k2() -> Precision {
    Precision::new(2).expect("2 is valid")
}

/// One reduction step, remembered so the inverse can be emitted.
#[derive(Clone, Copy, Debug)]
enum Step {
    /// Multiply row `row` by `i^p`.
    Phase { row: usize, p: i64 },
    /// Apply `M` to rows `a < b`.
    Mix { a: usize, b: usize },
    /// Exchange rows `a < b`.
    Swap { a: usize, b: usize },
}

/// `ceil` of the δ-adic denominator exponent of a nonzero entry.
fn lde(x: &RingElem) -> u32 {
    let e = x.den_exp();
    if e == 0 {
        return 0;
    }
    let c = x.coeffs();
    let both_odd = !c[0].is_even() && !c[1].is_even();
    2 * e - u32::from(both_odd)
}

/// `δ^L x mod 2` for an entry with `lde(x) = L`: `false` for `1`, `true` for `i`.
fn residue_is_i(x: &RingElem, delta_pow: &RingElem) -> bool {
    let z = delta_pow * x;
    debug_assert_eq!(z.den_exp(), 0);
    let c = z.coeffs();
    debug_assert!(c[0].is_even() != c[1].is_even());
    c[0].is_even()
}

fn delta_pow(l: u32) -> RingElem {
    let k = k2();
    let delta = RingElem::from_parts(k, 0, vec![Int::ONE, Int::ONE]).expect("width 2");
    let mut acc = RingElem::one(k);
    for _ in 0..l {
        acc = &acc * &delta;
    }
    acc
}

struct Work {
    w: ExactMatrix,
    steps: Vec<Step>,
    max_den: u32,
    half_delta: RingElem,
}

impl Work {
    fn apply(&mut self, s: Step) {
        let n = self.w.cols();
        match s {
            Step::Phase { row, p } => {
                for c in 0..n {
                    let v = self.w.get(row, c).mul_zeta_pow(p);
                    self.w.set(row, c, v);
                }
            }
            Step::Mix { a, b } => {
                for c in 0..n {
                    let (x, y) = (self.w.get(a, c).clone(), self.w.get(b, c).clone());
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    let top = &(&x + &y) * &self.half_delta;
                    let bottom = &(&x - &y) * &self.half_delta;
                    self.max_den = self.max_den.max(top.den_exp()).max(bottom.den_exp());
                    self.w.set(a, c, top);
                    self.w.set(b, c, bottom);
                }
            }
            Step::Swap { a, b } => {
                for c in 0..n {
                    let x = self.w.get(a, c).clone();
                    let y = self.w.get(b, c).clone();
                    self.w.set(a, c, y);
                    self.w.set(b, c, x);
                }
            }
        }
        self.steps.push(s);
    }
}

/// Synthesises a term for `u` at `k = 2`.
pub fn synth(u: &ExactMatrix) -> Result<SynthesisResult> {
    synth_cancellable(u, &AtomicBool::new(false))
}

/// As [`synth`], checking `cancel` between reduction steps.
pub fn synth_cancellable(u: &ExactMatrix, cancel: &AtomicBool) -> Result<SynthesisResult> {
    if u.k().get() != 2 {
        return Err(Error::PrecisionMismatch { left: 2, right: u.k().get() });
    }
    if !u.is_unitary()? {
        return Err(Error::NotUnitary);
    }
    let n = u.rows();
    let half_delta = RingElem::from_parts(k2(), 1, vec![Int::ONE, Int::ONE]).expect("width 2");
    let mut work = Work { w: u.clone(), steps: Vec::new(), max_den: u.max_den_exp(), half_delta };

    for col in 0..n {
        loop {
            if cancel.load(Ordering::Relaxed) {
                return Err(Error::Cancelled);
            }
            let ldes: Vec<Option<u32>> = (col..n)
                .map(|r| {
                    let x = work.w.get(r, col);
                    (!x.is_zero()).then(|| lde(x))
                })
                .collect();
            let top = ldes.iter().flatten().copied().max().expect("unitary column is nonzero");
            if top == 0 {
                break;
            }
            let dp = delta_pow(top);
            let rows: Vec<usize> = (col..n).filter(|r| ldes[r - col] == Some(top)).collect();
            if !rows.len().is_multiple_of(2) {
                return Err(Error::NotUnitary);
            }
            for pair in rows.chunks(2) {
                let (a, b) = (pair[0], pair[1]);
                let ra = residue_is_i(work.w.get(a, col), &dp);
                let rb = residue_is_i(work.w.get(b, col), &dp);
                if ra != rb {
                    work.apply(Step::Phase { row: b, p: 1 });
                }
                work.apply(Step::Mix { a, b });
            }
        }
        // a single Gaussian-integer unit remains
        let r = (col..n).find(|&r| !work.w.get(r, col).is_zero()).expect("nonzero");
        if r != col {
            work.apply(Step::Swap { a: col, b: r });
        }
        let x = work.w.get(col, col).clone();
        let p = (0..4).find(|&p| x.mul_zeta_pow(p).is_one()).ok_or(Error::NotUnitary)?;
        if p != 0 {
            work.apply(Step::Phase { row: col, p });
        }
    }
    debug_assert!(work.w.is_identity());

    // u = G_1† ∘ G_2† ∘ … ∘ G_t†; G_t† runs first.
    let k = k2();
    let mut inverse = Vec::with_capacity(work.steps.len());
    for s in work.steps.iter().rev() {
        inverse.push(term_dagger(&step_term(*s, n), k)?);
    }
    let term = Term::sequence(n, inverse);
    Ok(SynthesisResult { gate_count: term.gate_count(), term, max_den_exp_seen: work.max_den })
}

fn mix_term() -> Term {
    let s = Term::sum(Term::Id(1), Term::Zeta(1));
    Term::comp(s.clone(), Term::comp(Term::V, s))
}

/// Places a two-level operation on rows `a < b` of an `n`-dimensional object.
fn two_level(g: Term, a: usize, b: usize, n: usize) -> Term {
    let local = Term::pad(a, g, n - a - 2);
    if b == a + 1 {
        return local;
    }
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a + 1, b);
    let bring = perm_term(&p).expect("transposition");
    Term::sequence(n, vec![bring.clone(), local, bring])
}

fn step_term(s: Step, n: usize) -> Term {
    match s {
        Step::Phase { row, p } => Term::pad(row, Term::Zeta(p), n - row - 1),
        Step::Mix { a, b } => two_level(mix_term(), a, b, n),
        Step::Swap { a, b } => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(a, b);
            perm_term(&p).expect("transposition")
        }
    }
}

/// Synthesises from the denotation of `t` at `k = 2`.
pub fn normalize(t: &Term) -> Result<SynthesisResult> {
    synth(&eval(t, k2())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_x() {
        let k = k2();
        let id = synth(&ExactMatrix::identity(k, 4)).unwrap();
        assert_eq!(id.term, Term::Id(4));
        assert_eq!(id.gate_count, 0);
        let x = eval(&Term::x(), k).unwrap();
        assert_eq!(eval(&synth(&x).unwrap().term, k).unwrap(), x);
    }

    #[test]
    fn v_power_normalises_to_identity() {
        let v4 = Term::sequence(2, vec![Term::V; 4]);
        let r = normalize(&v4).unwrap();
        assert!(eval(&r.term, k2()).unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        let k = k2();
        let two = ExactMatrix::diagonal(k, vec![RingElem::from_int(k, 2), RingElem::one(k)]);
        assert_eq!(synth(&two), Err(Error::NotUnitary));
        let k3 = Precision::new(3).unwrap();
        assert!(synth(&ExactMatrix::identity(k3, 2)).is_err());
        let flag = AtomicBool::new(true);
        let v = eval(&Term::V, k).unwrap();
        assert_eq!(synth_cancellable(&v, &flag), Err(Error::Cancelled));
    }

    #[test]
    fn mix_matrix() {
        let k = k2();
        let m = eval(&mix_term(), k).unwrap();
        let h = RingElem::from_parts(k, 1, vec![Int::ONE, Int::ONE]).unwrap();
        assert_eq!(m.get(0, 0), &h);
        assert_eq!(m.get(1, 1), &h.neg());
    }
}
