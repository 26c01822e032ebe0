//! Channel-level suites: the axioms of quantum computation with
//! measurement, and agreement between channel equality and phase equality.

use rand::Rng;

use crate::channel::{compose_all, Channel, CqObject};
use crate::decide::eq_up_to_phase;
use crate::error::Result;
use crate::exec::Exec;
use crate::random::{equal_variant, random_program, trial_rng};
use crate::report::Report;
use crate::ring::Precision;
use crate::tensor::sigma_tensor;
use crate::term::Term;

fn unitary<R: Rng>(rng: &mut R, k: Precision, qubits: u32) -> Term {
    random_program(rng, k, 1 << qubits)
}

fn apply(t: &Term, k: Precision) -> Result<Channel> {
    Channel::of_unitary(t, k)
}

fn same(a: &Channel, b: &Channel) -> Result<bool> {
    Channel::chan_eq(a, b)
}

/// One random instantiation of every axiom, keyed `"A"` to `"L"`.
pub fn staton_trial(k: Precision, seed: u64, idx: usize) -> Result<Vec<(&'static str, bool)>> {
    let mut rng = trial_rng(seed, idx as u64);
    let qubit = CqObject::quantum(2);
    let bit = CqObject::classical(2);
    let id2 = Channel::identity(k, &qubit);
    let measure = Channel::measure(k, 1, 1)?;
    let new = Channel::new_qubit(k);
    let mut out = Vec::new();

    // (A) measuring after X is measuring then swapping outcomes; checked
    // after a random single-qubit unitary.
    let u1 = apply(&unitary(&mut rng, k, 1), k)?;
    let flip = Channel::block_perm(k, &bit, &[1, 0])?;
    let lhs = compose_all(&[&u1, &apply(&Term::x(), k)?, &measure])?;
    let rhs = compose_all(&[&u1, &measure, &flip])?;
    out.push(("A", same(&lhs, &rhs)?));

    // (B) controlled unitaries commute with measuring the control.
    let n = rng.gen_range(1..=2u32);
    let (u, v) = (unitary(&mut rng, k, n), unitary(&mut rng, k, n));
    let wide = CqObject::qubits(n);
    let id_n = Channel::identity(k, &wide);
    let m_id = Channel::tensor(&measure, &id_n)?;
    let ctrl = apply(&Term::sum(u.clone(), v.clone()), k)?;
    let branch = Channel::oplus(&apply(&u, k)?, &apply(&v, k)?)?;
    let lhs = Channel::compose(&branch, &m_id)?;
    let rhs = Channel::compose(&m_id, &ctrl)?;
    out.push(("B", same(&lhs, &rhs)?));

    // (C) discarding absorbs unitaries.
    let c = rng.gen_range(1..=3u32);
    let w = unitary(&mut rng, k, c);
    let d = Channel::discard(k, 1 << c)?;
    out.push(("C", same(&Channel::compose(&d, &apply(&w, k)?)?, &d)?));

    // (D) measuring a fresh qubit is the first classical injection.
    let one = CqObject::classical(1);
    let inj = Channel::inj(k, true, &one, &one);
    out.push(("D", same(&Channel::compose(&measure, &new)?, &inj)?));

    // (E) a controlled operation on a fresh |0⟩ control runs the first branch.
    let new_id = Channel::tensor(&new, &id_n)?;
    let lhs = Channel::compose(&ctrl, &new_id)?;
    let rhs = Channel::tensor(&new, &apply(&u, k)?)?;
    out.push(("E", same(&lhs, &rhs)?));

    // (F) the unitary tensor symmetry is the channel symmetry.
    let (p, q) = (rng.gen_range(0..=2u32), rng.gen_range(0..=1u32));
    let (dp, dq) = (1usize << p, 1usize << q);
    let sw = Channel::tensor_swap(k, &CqObject::quantum(dp), &CqObject::quantum(dq))?;
    out.push(("F", same(&apply(&sigma_tensor(dp, dq), k)?, &sw)?));

    // (G) identities.
    let g = rng.gen_range(1..=3u32);
    out.push(("G", same(&apply(&Term::Id(1 << g), k)?, &Channel::identity(k, &CqObject::qubits(g)))?));

    // (H) composition.
    let h = rng.gen_range(1..=3u32);
    let (a, b) = (unitary(&mut rng, k, h), unitary(&mut rng, k, h));
    let lhs = apply(&Term::comp(b.clone(), a.clone()), k)?;
    let rhs = Channel::compose(&apply(&b, k)?, &apply(&a, k)?)?;
    out.push(("H", same(&lhs, &rhs)?));

    // (I) tensor.
    let (i1, i2) = (rng.gen_range(1..=2u32), 1u32);
    let (a, b) = (unitary(&mut rng, k, i1), unitary(&mut rng, k, i2));
    let lhs = apply(&Term::kron(a.clone(), b.clone()), k)?;
    let rhs = Channel::tensor(&apply(&a, k)?, &apply(&b, k)?)?;
    out.push(("I", same(&lhs, &rhs)?));

    // (J) measuring two qubits in either order, outcomes rearranged.
    let u2 = apply(&unitary(&mut rng, k, 2), k)?;
    let second_first = Channel::tensor(&id2, &measure)?;
    let m1 = Channel::tensor(&measure, &Channel::identity(k, &one))?;
    let then_first = Channel::oplus(&m1, &m1)?;
    let lhs = compose_all(&[&u2, &second_first, &then_first])?;
    let first_first = Channel::tensor(&measure, &id2)?;
    let then_second = Channel::tensor(&Channel::identity(k, &bit), &measure)?;
    let exchange = Channel::block_perm(k, &CqObject::classical(4), &[0, 2, 1, 3])?;
    let rhs = compose_all(&[&u2, &first_first, &then_second, &exchange])?;
    out.push(("J", same(&lhs, &rhs)?));

    // (K) two allocations commute; tensored with a random unitary.
    let id1 = Channel::identity(k, &one);
    let lhs = compose_all(&[&Channel::tensor(&id1, &new)?, &Channel::tensor(&new, &id2)?])?;
    let rhs = compose_all(&[&Channel::tensor(&new, &id1)?, &Channel::tensor(&id2, &new)?])?;
    let side = apply(&unitary(&mut rng, k, 1), k)?;
    out.push(("K", same(&Channel::tensor(&lhs, &side)?, &Channel::tensor(&rhs, &side)?)?));

    // (L) allocating then measuring the old qubit equals measuring then allocating.
    let u1 = apply(&unitary(&mut rng, k, 1), k)?;
    let lhs = compose_all(&[&u1, &Channel::tensor(&new, &id2)?, &second_first])?;
    let rhs = compose_all(&[&u1, &measure, &Channel::tensor(&new, &Channel::identity(k, &bit))?])?;
    out.push(("L", same(&lhs, &rhs)?));

    Ok(out)
}

pub fn staton_suite(k: Precision, trials: usize, seed: u64, exec: Exec) -> Result<Report> {
    let results = exec.map(trials, |idx| staton_trial(k, seed, idx));
    let mut r = Report::new("staton", k, trials, seed);
    for (idx, res) in results.into_iter().enumerate() {
        match res {
            Ok(checks) => {
                for (name, ok) in checks {
                    r.record_trial(name, idx, ok);
                }
            }
            Err(e) => r.record_error("trial", Some(idx), e.to_string()),
        }
    }
    Ok(r)
}

/// Both sides of the channel completeness statement for one pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub channels_equal: bool,
    pub phase: Option<i64>,
}

impl Completeness {
    pub fn holds(&self) -> bool {
        self.channels_equal == self.phase.is_some()
    }
}

/// Channel equality of `f`, `g` next to the phase search.
pub fn completeness_check(f: &Term, g: &Term, k: Precision) -> Result<Completeness> {
    let channels_equal = Channel::chan_eq(&apply(f, k)?, &apply(g, k)?)?;
    let phase = eq_up_to_phase(f, g, k)?.map(|w| w.exponent);
    Ok(Completeness { channels_equal, phase })
}

/// A pair of unitary programs on the same object. Roughly a third are equal
/// up to a phase by construction, a third differ by a relative phase, the
/// rest are independent.
pub fn completeness_pair<R: Rng>(rng: &mut R, k: Precision) -> (Term, Term) {
    let dim = rng.gen_range(1..=8usize);
    let f = random_program(rng, k, dim);
    let g = match rng.gen_range(0..3) {
        0 => Term::scale(rng.gen_range(0..k.order()), equal_variant(rng, k, &f)),
        1 if dim >= 2 => {
            let local = Term::pad(0, Term::Zeta(rng.gen_range(1..k.order())), dim - 1);
            Term::comp(local, f.clone())
        }
        _ => random_program(rng, k, dim),
    };
    (f, g)
}

pub fn completeness_suite(k: Precision, trials: usize, seed: u64, exec: Exec) -> Result<Report> {
    let results = exec.map(trials, |idx| -> Result<(bool, bool)> {
        let mut rng = trial_rng(seed, idx as u64);
        let (f, g) = completeness_pair(&mut rng, k);
        let c = completeness_check(&f, &g, k)?;
        let j = rng.gen_range(0..k.order());
        let squash = Channel::chan_eq(&apply(&Term::scale(j, f.clone()), k)?, &apply(&f, k)?)?;
        Ok((c.holds(), squash))
    });
    let mut r = Report::new("completeness", k, trials, seed);
    for (idx, res) in results.into_iter().enumerate() {
        match res {
            Ok((holds, squash)) => {
                r.record_trial("chan_eq iff phase", idx, holds);
                r.record_trial("phase squashing", idx, squash);
            }
            Err(e) => r.record_error("trial", Some(idx), e.to_string()),
        }
    }
    // every global phase collapses on a fixed program
    let f = Term::sum(Term::V, Term::Zeta(1));
    let base = apply(&f, k)?;
    for j in 0..k.order() {
        let ok = Channel::chan_eq(&apply(&Term::scale(j, f.clone()), k)?, &base)?;
        r.record("phase squashing, all j", ok);
    }
    Ok(r)
}
