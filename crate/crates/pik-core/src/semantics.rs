//! Exact matrix semantics of terms, plus the axiom and coherence checks.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrix::ExactMatrix;
use crate::random::{random_term, trial_rng, TermShape};
use crate::report::Report;
use crate::ring::{Precision, RingElem};
use crate::tensor::{elaborate_kron, sigma_tensor};
use crate::term::{power, term_dagger, Gates, Term};

pub const DEFAULT_MAX_DIM: usize = 1 << 12;

/// Evaluates terms at a fixed precision with a dimension guard.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator {
    k: Precision,
    max_dim: usize,
}

/// A matrix with exactly one `ζ^j` entry per column: column `j` is
/// `ζ^{phase[j]} e_{perm[j]}`.
#[derive(Clone, Debug)]
struct Monomial {
    perm: Vec<usize>,
    phase: Vec<i64>,
}

enum Value {
    Mono(Monomial),
    Dense(ExactMatrix),
}

impl Evaluator {
    pub fn new(k: Precision) -> Evaluator {
        Evaluator { k, max_dim: DEFAULT_MAX_DIM }
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Evaluator {
        self.max_dim = max_dim;
        self
    }

    pub fn k(&self) -> Precision {
        self.k
    }

    pub fn eval(&self, t: &Term) -> Result<ExactMatrix> {
        let d = t.dom()?;
        if d > self.max_dim {
            return Err(Error::DimensionTooLarge { dim: d, max: self.max_dim });
        }
        Ok(self.materialise(self.value(t)))
    }

    /// The permutation a classical term denotes, without building a matrix.
    pub fn permutation(&self, t: &Term) -> Result<Option<Vec<usize>>> {
        t.well_formed()?;
        match self.value(t) {
            Value::Mono(m) if m.phase.iter().all(|&p| p == 0) => Ok(Some(m.perm)),
            Value::Mono(_) => Ok(None),
            Value::Dense(d) => Ok(d.as_permutation()),
        }
    }

    fn materialise(&self, v: Value) -> ExactMatrix {
        match v {
            Value::Dense(m) => m,
            Value::Mono(m) => {
                let n = m.perm.len();
                let mut out = ExactMatrix::zeros(self.k, n, n);
                for j in 0..n {
                    out.set(m.perm[j], j, RingElem::zeta_pow(self.k, m.phase[j]));
                }
                out
            }
        }
    }

    fn v_matrix(&self) -> ExactMatrix {
        let k = self.k;
        let i = RingElem::zeta_pow(k, k.order() / 4);
        let half = RingElem::dyadic(k, 1, 1);
        let one = RingElem::one(k);
        let p = &(&one + &i) * &half;
        let q = &(&one - &i) * &half;
        ExactMatrix::from_entries(k, 2, 2, vec![p.clone(), q.clone(), q, p]).expect("2x2")
    }

    fn value(&self, t: &Term) -> Value {
        let k = self.k;
        match t {
            Term::Id(n) => Value::Mono(Monomial { perm: (0..*n).collect(), phase: vec![0; *n] }),
            Term::SwapPlus(m, n) => {
                let perm = (0..m + n).map(|j| if j < *m { j + n } else { j - m }).collect();
                Value::Mono(Monomial { perm, phase: vec![0; m + n] })
            }
            Term::Zeta(j) => Value::Mono(Monomial { perm: vec![0], phase: vec![k.reduce(*j)] }),
            Term::V => Value::Dense(self.v_matrix()),
            Term::Scale(j, s) => match self.value(s) {
                Value::Mono(mut m) => {
                    for p in m.phase.iter_mut() {
                        *p = k.reduce(*p + j);
                    }
                    Value::Mono(m)
                }
                Value::Dense(d) => Value::Dense(d.mul_zeta_pow(*j)),
            },
            Term::Comp(g, f) => {
                let (gv, fv) = (self.value(g), self.value(f));
                match (gv, fv) {
                    (Value::Mono(g), Value::Mono(f)) => {
                        let n = f.perm.len();
                        let mut perm = vec![0; n];
                        let mut phase = vec![0; n];
                        for j in 0..n {
                            let mid = f.perm[j];
                            perm[j] = g.perm[mid];
                            phase[j] = k.reduce(f.phase[j] + g.phase[mid]);
                        }
                        Value::Mono(Monomial { perm, phase })
                    }
                    (Value::Mono(g), Value::Dense(f)) => {
                        // row s of f moves to row g.perm[s], scaled
                        let mut out = ExactMatrix::zeros(k, f.rows(), f.cols());
                        for s in 0..f.rows() {
                            for c in 0..f.cols() {
                                let e = f.get(s, c);
                                if !e.is_zero() {
                                    out.set(g.perm[s], c, e.mul_zeta_pow(g.phase[s]));
                                }
                            }
                        }
                        Value::Dense(out)
                    }
                    (Value::Dense(g), Value::Mono(f)) => {
                        let mut out = ExactMatrix::zeros(k, g.rows(), g.cols());
                        for r in 0..g.rows() {
                            for c in 0..g.cols() {
                                let e = g.get(r, f.perm[c]);
                                if !e.is_zero() {
                                    out.set(r, c, e.mul_zeta_pow(f.phase[c]));
                                }
                            }
                        }
                        Value::Dense(out)
                    }
                    (Value::Dense(g), Value::Dense(f)) => Value::Dense(g.mul(&f).expect("well-formed")),
                }
            }
            Term::Sum(a, b) => match (self.value(a), self.value(b)) {
                (Value::Mono(mut a), Value::Mono(b)) => {
                    let off = a.perm.len();
                    a.perm.extend(b.perm.iter().map(|p| p + off));
                    a.phase.extend(b.phase);
                    Value::Mono(a)
                }
                (a, b) => Value::Dense(self.materialise(a).direct_sum(&self.materialise(b)).expect("same k")),
            },
            Term::Kron(a, b) => match (self.value(a), self.value(b)) {
                (Value::Mono(a), Value::Mono(b)) => {
                    let n = b.perm.len();
                    let mut perm = Vec::with_capacity(a.perm.len() * n);
                    let mut phase = Vec::with_capacity(a.perm.len() * n);
                    for x in 0..a.perm.len() {
                        for y in 0..n {
                            perm.push(a.perm[x] * n + b.perm[y]);
                            phase.push(k.reduce(a.phase[x] + b.phase[y]));
                        }
                    }
                    Value::Mono(Monomial { perm, phase })
                }
                (a, b) => Value::Dense(self.materialise(a).kron(&self.materialise(b)).expect("same k")),
            },
        }
    }
}

/// `⟦t⟧` at precision `k` with the default dimension guard.
pub fn eval(t: &Term, k: Precision) -> Result<ExactMatrix> {
    Evaluator::new(k).eval(t)
}

fn same(a: &Term, b: &Term, k: Precision) -> Result<bool> {
    Ok(eval(a, k)? == eval(b, k)?)
}

/// Checks the three defining equations at `k`, and `HH = id` plus the gate
/// identities `S² = Z`, `T^(2^(k-2)) = S` where they apply.
pub fn check_axioms(k: Precision) -> Result<Report> {
    let g = Gates::new(k);
    let mut r = Report::new("axioms", k, 1, 0);
    let v = Term::V;
    let s = g.s();
    r.record("V;V = X", same(&Term::comp(v.clone(), v.clone()), &Term::x(), k)?);
    let vsv = Term::comp(v.clone(), Term::comp(s.clone(), v.clone()));
    let svs = Term::comp(s.clone(), Term::comp(v.clone(), s.clone()));
    r.record("V;S;V = S;V;S", same(&vsv, &svs, k)?);
    let zeta_cycle = power(&Term::Zeta(1), k.order() as usize, 1);
    r.record("zeta^(2^k) = id", same(&zeta_cycle, &Term::Id(1), k)?);
    r.record("S;S = Z", same(&Term::comp(s.clone(), s.clone()), &g.z(), k)?);
    r.record("T^(2^(k-2)) = S", same(&power(&g.t(), (k.order() / 4) as usize, 2), &s, k)?);
    if k.get() >= 3 {
        let h = g.h()?;
        r.record("H;H = id", same(&Term::comp(h.clone(), h), &Term::Id(2), k)?);
    }
    Ok(r)
}

/// Randomised checks of the bipermutative structure laws in the matrix model.
pub fn check_coherence(k: Precision, trials: usize, seed: u64, exec: Exec) -> Result<Report> {
    let outcomes = exec.map(trials, |idx| coherence_trial(k, seed, idx));
    let mut r = Report::new("coherence", k, trials, seed);
    for (idx, out) in outcomes.into_iter().enumerate() {
        for (name, ok) in out? {
            r.record_trial(name, idx, ok);
        }
    }
    // the δ_L square at A = B = C = D = 2, fixed instance
    r.record("delta_l at 2,2,2,2", delta_l_square(k, 2, 2, 2, 2, &mut trial_rng(seed, u64::MAX))?);
    Ok(r)
}

type TrialChecks = Vec<(&'static str, bool)>;

fn coherence_trial(k: Precision, seed: u64, idx: usize) -> Result<TrialChecks> {
    let mut rng = trial_rng(seed, idx as u64);
    let shape = TermShape::small();
    let dim = |rng: &mut rand_chacha::ChaCha8Rng| rng.gen_range(1..=3usize);
    let (df, dg, dh) = (dim(&mut rng), dim(&mut rng), dim(&mut rng));
    let f = random_term(&mut rng, k, df, &shape);
    let g = random_term(&mut rng, k, dg, &shape);
    let h = random_term(&mut rng, k, dh, &shape);
    let mut out = Vec::new();

    // zero object: ⊗ with a zero-dimensional factor has no entries; at the
    // level of dimensions 0·n = 0 holds trivially.
    let (ef, eg, eh) = (eval(&f, k)?, eval(&g, k)?, eval(&h, k)?);
    let annihilates = ExactMatrix::zeros(k, 0, 0).kron(&eh)?.shape() == (0, 0);
    out.push(("annihilation", annihilates));

    let lhs = eval(&Term::kron(Term::sum(f.clone(), g.clone()), h.clone()), k)?;
    let rhs = eval(&Term::sum(Term::kron(f.clone(), h.clone()), Term::kron(g.clone(), h.clone())), k)?;
    out.push(("(f+g)xh = fxh + gxh", lhs == rhs));

    // σ_⊕ compatibility: σ_⊕ ∘ (f ⊕ g) = (g ⊕ f) ∘ σ_⊕
    let l = Term::comp(Term::SwapPlus(df, dg), Term::sum(f.clone(), g.clone()));
    let r = Term::comp(Term::sum(g.clone(), f.clone()), Term::SwapPlus(df, dg));
    let sym_ok = same(&l, &r, k)?;
    // and (σ_⊕ ⊗ id) = σ_⊕ on the distributed object
    let l2 = Term::kron(Term::SwapPlus(df, dg), Term::Id(dh));
    let r2 = Term::SwapPlus(df * dh, dg * dh);
    out.push(("sigma_plus square", sym_ok && same(&l2, &r2, k)?));

    // σ_⊗ naturality: σ(m,n) ∘ (f ⊗ g) = (g ⊗ f) ∘ σ(m,n)
    let l3 = Term::comp(sigma_tensor(df, dg), Term::kron(f.clone(), g.clone()));
    let r3 = Term::comp(Term::kron(g.clone(), f.clone()), sigma_tensor(df, dg));
    out.push(("sigma_tensor naturality", same(&l3, &r3, k)?));

    let inter_l = Term::comp(Term::kron(Term::Id(df), g.clone()), Term::kron(f.clone(), Term::Id(dg)));
    let inter_r = Term::comp(Term::kron(f.clone(), Term::Id(dg)), Term::kron(Term::Id(df), g.clone()));
    let direct = ef.kron(&eg)?;
    out.push(("interchange", eval(&inter_l, k)? == eval(&inter_r, k)? && eval(&inter_l, k)? == direct));

    let da = rng.gen_range(1..=2);
    let db = rng.gen_range(1..=2);
    let dc = rng.gen_range(1..=2);
    let dd = rng.gen_range(1..=2);
    out.push(("delta_l", delta_l_square(k, da, db, dc, dd, &mut rng)?));
    Ok(out)
}

/// Left distributor `δ_L : A ⊗ (C ⊕ D) → (A ⊗ C) ⊕ (A ⊗ D)` as a permutation:
/// index `a·(c+d) + x` goes to `a·c + x` when `x < c`, else `A·c + a·d + (x−c)`.
pub fn delta_l_perm(a: usize, c: usize, d: usize) -> Vec<usize> {
    let w = c + d;
    let mut p = vec![0; a * w];
    for i in 0..a {
        for x in 0..w {
            p[i * w + x] = if x < c { i * c + x } else { a * c + i * d + (x - c) };
        }
    }
    p
}

/// The four-summand coherence diagram for `(A ⊕ B) ⊗ (C ⊕ D)`: distributing
/// right then left must agree with distributing left then right followed by
/// the middle exchange `id ⊕ σ_⊕ ⊕ id`. Checked on a random unitary as well
/// (naturality of the composite in the matrix model).
fn delta_l_square(k: Precision, a: usize, b: usize, c: usize, d: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Result<bool> {
    let ev = Evaluator::new(k);
    let total = (a + b) * (c + d);
    // right distributor first: (A⊕B)⊗E → A⊗E ⊕ B⊗E is the identity in
    // left-major layout; then δ_L on each summand.
    let mut path1 = delta_l_perm(a, c, d);
    path1.extend(delta_l_perm(b, c, d).iter().map(|x| x + a * (c + d)));
    // left distributor first: (A⊕B)⊗(C⊕D) → (A⊕B)⊗C ⊕ (A⊕B)⊗D, then δ_R on each,
    // which is the identity in left-major layout, then id ⊕ σ_⊕ ⊕ id
    let first = delta_l_perm(a + b, c, d);
    let middle = {
        let swap = Term::pad(a * c, Term::SwapPlus(b * c, a * d), b * d);
        ev.permutation(&swap)?.expect("classical")
    };
    let path2: Vec<usize> = first.iter().map(|&x| middle[x]).collect();
    let perm_ok = path1 == path2 && path1.len() == total;

    // the distributor is natural: δ ∘ (u ⊗ (v ⊕ w)) = (u⊗v ⊕ u⊗w) ∘ δ
    let shape = TermShape::small();
    let u = random_term(rng, k, a, &shape);
    let v = random_term(rng, k, c, &shape);
    let w = random_term(rng, k, d, &shape);
    let p = ExactMatrix::perm_matrix(&delta_l_perm(a, c, d), k)?;
    let lhs = p.mul(&eval(&Term::kron(u.clone(), Term::sum(v.clone(), w.clone())), k)?)?;
    let rhs = eval(&Term::sum(Term::kron(u.clone(), v), Term::kron(u, w)), k)?.mul(&p)?;
    Ok(perm_ok && lhs == rhs)
}

/// `eval(t†) = eval(t)†`, kept here as a convenience for callers.
pub fn dagger_agrees(t: &Term, k: Precision) -> Result<bool> {
    Ok(eval(&term_dagger(t, k)?, k)? == eval(t, k)?.dagger())
}

/// `eval(elaborate_kron(t)) = eval(t)`.
pub fn elaboration_agrees(t: &Term, k: Precision) -> Result<bool> {
    Ok(eval(&elaborate_kron(t)?, k)? == eval(t, k)?)
}
