//! Lowering precision by one level at the cost of one auxiliary qubit.
//!
//! `Φ_k` maps a level-`k` program on `n` to a level-`(k-1)` program on `2n`.
//! Layouts are catalyst-major: index `c·n + i` is catalyst state `c`,
//! payload index `i`, matching the catalyst `(H ∘ T) ⊗ id_n`.

use crate::decide::eq;
use crate::error::Result;
use crate::exec::Exec;
use crate::random::{equal_variant, random_dim, random_program, trial_rng};
use crate::report::Report;
use crate::ring::Precision;
use crate::semantics::eval;
use crate::tensor::{elaborate_kron, sigma_tensor};
use crate::term::{lift_term, term_conj, term_dagger, Gates, Term};

/// The lowering `Φ_k`. Kron and Scale nodes are elaborated first; the result
/// is read at level `k − 1`.
pub fn phi(t: &Term, k: Precision) -> Result<Term> {
    k.require(3, "catalytic embedding")?;
    let t = if t.is_kron_free() { t.well_formed().map(|_| t.clone())? } else { elaborate_kron(t)? };
    Ok(phi_rec(&t, k).0)
}

/// Applies `Φ` repeatedly from level `from` down to level `to`.
pub fn phi_to(t: &Term, from: Precision, to: Precision) -> Result<Term> {
    let mut cur = t.clone();
    let mut k = from;
    while k.get() > to.get() {
        cur = phi(&cur, k)?;
        k = k.pred()?;
    }
    Ok(cur)
}

fn phi_zeta(j: i64, k: Precision) -> Term {
    let j = k.reduce(j);
    let (q, r) = (j / 2, j % 2);
    let scalar = Term::sum(Term::Zeta(q), Term::Zeta(q));
    let root = Term::comp(Term::x(), Term::sum(Term::Id(1), Term::Zeta(1)));
    match (q, r) {
        (0, 0) => Term::Id(2),
        (_, 0) => scalar,
        (0, _) => root,
        _ => Term::comp(scalar, root),
    }
}

/// Block layout `[Φa | Φb]` from the catalyst-major layout on `m + n`.
fn regroup(m: usize, n: usize) -> Term {
    Term::sequence_skip_ids(
        2 * (m + n),
        vec![sigma_tensor(2, m + n), Term::sum(sigma_tensor(m, 2), sigma_tensor(n, 2))],
    )
}

fn ungroup(m: usize, n: usize) -> Term {
    Term::sequence_skip_ids(
        2 * (m + n),
        vec![Term::sum(sigma_tensor(2, m), sigma_tensor(2, n)), sigma_tensor(m + n, 2)],
    )
}

fn phi_rec(t: &Term, k: Precision) -> (Term, usize) {
    match t {
        Term::Id(n) => (Term::Id(2 * n), *n),
        Term::SwapPlus(m, n) => (Term::sum(t.clone(), t.clone()), m + n),
        Term::Zeta(j) => (phi_zeta(*j, k), 1),
        Term::V => (Term::sum(Term::V, Term::V), 2),
        Term::Comp(g, f) => {
            let (g, n) = phi_rec(g, k);
            let (f, _) = phi_rec(f, k);
            (Term::comp(g, f), n)
        }
        Term::Sum(a, b) => {
            let (pa, m) = phi_rec(a, k);
            let (pb, n) = phi_rec(b, k);
            let body = Term::sum(pa, pb);
            (Term::sequence_skip_ids(2 * (m + n), vec![regroup(m, n), body, ungroup(m, n)]), m + n)
        }
        Term::Kron(..) | Term::Scale(..) => unreachable!("elaborated before lowering"),
    }
}

/// `c_{k,n} = (H ∘ T) ⊗ id_n`.
pub fn catalyst(k: Precision, n: usize) -> Result<Term> {
    let g = Gates::new(k);
    Ok(Term::kron(Term::comp(g.h()?, g.t()), Term::Id(n)))
}

/// Checks `c Φ(a) c† = a ⊕ a*` exactly at level `k`.
pub fn catalysis_check(a: &Term, k: Precision) -> Result<bool> {
    let n = a.dom()?;
    let c = catalyst(k, n)?;
    let lowered = lift_term(&phi(a, k)?);
    let lhs = Term::sequence(2 * n, vec![term_dagger(&c, k)?, lowered, c]);
    let rhs = Term::sum(a.clone(), term_conj(a, k)?);
    Ok(eval(&lhs, k)? == eval(&rhs, k)?)
}

/// Both sides of the precision transfer for a pair of programs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub source_equal: bool,
    pub image_equal: bool,
}

impl Transfer {
    pub fn holds(&self) -> bool {
        self.source_equal == self.image_equal
    }
}

/// Compares `eq(a, b)` at level `k` with `eq(Φa, Φb)` at level `k − 1`.
pub fn precision_transfer_check(a: &Term, b: &Term, k: Precision) -> Result<Transfer> {
    let source_equal = eq(a, b, k)?;
    let image_equal = eq(&phi(a, k)?, &phi(b, k)?, k.pred()?)?;
    Ok(Transfer { source_equal, image_equal })
}

/// Random catalysis and transfer checks, dimensions up to `max_dim`.
pub fn catalysis_suite(k: Precision, trials: usize, seed: u64, max_dim: usize, exec: Exec) -> Result<Report> {
    k.require(3, "catalysis suite")?;
    let results = exec.map(trials, |idx| -> Result<(bool, Transfer, Transfer)> {
        let mut rng = trial_rng(seed, idx as u64);
        let dim = random_dim(&mut rng, max_dim);
        let a = random_program(&mut rng, k, dim);
        let cat = catalysis_check(&a, k)?;
        let b = random_program(&mut rng, k, dim);
        let random_pair = precision_transfer_check(&a, &b, k)?;
        let variant = equal_variant(&mut rng, k, &a);
        let equal_pair = precision_transfer_check(&a, &variant, k)?;
        Ok((cat, random_pair, equal_pair))
    });
    let mut r = Report::new("catalysis", k, trials, seed);
    for (idx, res) in results.into_iter().enumerate() {
        match res {
            Ok((cat, rp, ep)) => {
                r.record_trial("c phi(a) c^dagger = a (+) a*", idx, cat);
                r.record_trial("transfer on random pair", idx, rp.holds());
                r.record_trial("transfer on equal pair", idx, ep.holds() && ep.source_equal);
            }
            Err(e) => r.record_error("trial", Some(idx), e.to_string()),
        }
    }
    Ok(r)
}
