//! Seeded random terms for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::Precision;
use crate::term::{term_dagger, Term};

/// The RNG for trial `idx` of a run seeded with `seed`. Streams are disjoint
/// per trial, which keeps parallel runs reproducible.
pub fn trial_rng(seed: u64, idx: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(idx);
    rng
}

#[derive(Clone, Debug)]
pub struct TermShape {
    pub max_depth: u32,
    pub kron: bool,
    pub scale: bool,
}

impl TermShape {
    pub fn small() -> TermShape {
        TermShape { max_depth: 2, kron: true, scale: true }
    }

    pub fn medium() -> TermShape {
        TermShape { max_depth: 3, kron: true, scale: true }
    }

    /// Generator-only terms: no `Kron`, no `Scale`.
    pub fn plain(max_depth: u32) -> TermShape {
        TermShape { max_depth, kron: false, scale: false }
    }
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape::medium()
    }
}

/// A random well-formed term with domain `dim`.
pub fn random_term<R: Rng>(rng: &mut R, k: Precision, dim: usize, shape: &TermShape) -> Term {
    assert!(dim >= 1);
    gen(rng, k, dim, shape.max_depth, shape)
}

fn zeta_exp<R: Rng>(rng: &mut R, k: Precision) -> i64 {
    let n = k.order();
    rng.gen_range(-n..n)
}

fn leaf<R: Rng>(rng: &mut R, k: Precision, dim: usize) -> Term {
    match dim {
        1 => {
            if rng.gen_bool(0.8) {
                Term::Zeta(zeta_exp(rng, k))
            } else {
                Term::Id(1)
            }
        }
        2 => match rng.gen_range(0..5) {
            0 | 1 => Term::V,
            2 => Term::x(),
            3 => Term::Id(2),
            _ => Term::sum(leaf(rng, k, 1), leaf(rng, k, 1)),
        },
        _ => {
            let a = rng.gen_range(1..dim);
            if rng.gen_bool(0.25) {
                Term::SwapPlus(a, dim - a)
            } else {
                Term::sum(leaf(rng, k, a), leaf(rng, k, dim - a))
            }
        }
    }
}

fn factor_pairs(dim: usize) -> Vec<(usize, usize)> {
    (2..dim).filter(|a| dim.is_multiple_of(*a) && dim / a >= 2).map(|a| (a, dim / a)).collect()
}

fn gen<R: Rng>(rng: &mut R, k: Precision, dim: usize, depth: u32, shape: &TermShape) -> Term {
    if depth == 0 {
        return leaf(rng, k, dim);
    }
    let pairs = if shape.kron { factor_pairs(dim) } else { Vec::new() };
    let mut options = vec![(0u8, 3u32), (2, 1)];
    if dim >= 2 {
        options.push((1, 3));
    }
    if !pairs.is_empty() {
        options.push((3, 2));
    }
    if shape.scale {
        options.push((4, 1));
    }
    let choice = options.choose_weighted(rng, |o| o.1).expect("non-empty").0;
    match choice {
        0 => {
            let f = gen(rng, k, dim, depth - 1, shape);
            let g = gen(rng, k, dim, depth - 1, shape);
            Term::comp(g, f)
        }
        1 => {
            let a = rng.gen_range(1..dim);
            Term::sum(gen(rng, k, a, depth - 1, shape), gen(rng, k, dim - a, depth - 1, shape))
        }
        3 => {
            let (a, b) = *pairs.choose(rng).expect("non-empty");
            Term::kron(gen(rng, k, a, depth - 1, shape), gen(rng, k, b, depth - 1, shape))
        }
        4 => Term::scale(zeta_exp(rng, k), gen(rng, k, dim, depth - 1, shape)),
        _ => leaf(rng, k, dim),
    }
}

/// A layered circuit: `layers` steps, each a random gate on two adjacent
/// wires padded with identities, or a shallow random term on all of `dim`.
/// Long chains of `V` make denominators grow, which tree-shaped terms rarely do.
pub fn random_circuit<R: Rng>(rng: &mut R, k: Precision, dim: usize, layers: usize) -> Term {
    let steps = (0..layers)
        .map(|_| {
            if dim < 2 || rng.gen_bool(0.25) {
                return random_term(rng, k, dim, &TermShape::small());
            }
            let at = rng.gen_range(0..dim - 1);
            let gate = match rng.gen_range(0..6) {
                0..=2 => Term::V,
                3 => Term::x(),
                _ => Term::sum(Term::Zeta(zeta_exp(rng, k)), Term::Zeta(zeta_exp(rng, k))),
            };
            Term::pad(at, gate, dim - at - 2)
        })
        .collect();
    Term::sequence(dim, steps)
}

/// Either a tree-shaped term or a layered circuit, with equal odds.
pub fn random_program<R: Rng>(rng: &mut R, k: Precision, dim: usize) -> Term {
    if rng.gen_bool(0.5) {
        random_term(rng, k, dim, &TermShape::medium())
    } else {
        let layers = rng.gen_range(4..=16);
        random_circuit(rng, k, dim, layers)
    }
}

/// A random dimension in `1..=max`.
pub fn random_dim<R: Rng>(rng: &mut R, max: usize) -> usize {
    rng.gen_range(1..=max)
}

/// A term with the same denotation as `t` but a different syntax tree,
/// produced by inserting equalities that hold in every model.
pub fn equal_variant<R: Rng>(rng: &mut R, k: Precision, t: &Term) -> Term {
    let d = t.dom().expect("well-formed input");
    let mut out = rewrite(rng, k, t, 0.3);
    if &out == t {
        out = root_rewrite(rng, k, t, d);
    }
    out
}

fn rewrite<R: Rng>(rng: &mut R, k: Precision, t: &Term, p: f64) -> Term {
    let inner = match t {
        Term::Comp(g, f) => Term::comp(rewrite(rng, k, g, p), rewrite(rng, k, f, p)),
        Term::Sum(a, b) => Term::sum(rewrite(rng, k, a, p), rewrite(rng, k, b, p)),
        Term::Kron(a, b) => Term::kron(rewrite(rng, k, a, p), rewrite(rng, k, b, p)),
        Term::Scale(j, s) => Term::scale(*j, rewrite(rng, k, s, p)),
        _ => t.clone(),
    };
    if rng.gen_bool(p) {
        let d = inner.dom().expect("well-formed");
        root_rewrite(rng, k, &inner, d)
    } else {
        inner
    }
}

fn root_rewrite<R: Rng>(rng: &mut R, k: Precision, t: &Term, d: usize) -> Term {
    match (t, rng.gen_range(0..6)) {
        (Term::V, 0) => Term::sequence(2, vec![Term::V; 5]),
        (Term::Zeta(j), 0) => Term::Zeta(j + k.order()),
        (Term::Sum(a, b), 0) => {
            let (da, db) = (a.dom().expect("wf"), b.dom().expect("wf"));
            Term::sequence(
                d,
                vec![Term::SwapPlus(da, db), Term::sum((**b).clone(), (**a).clone()), Term::SwapPlus(db, da)],
            )
        }
        (_, 0) | (_, 1) => {
            let u = random_term(rng, k, d, &TermShape::plain(1));
            let undo = term_dagger(&u, k).expect("wf");
            Term::sequence(d, vec![u, undo, t.clone()])
        }
        (_, 2) => Term::kron(Term::Id(1), t.clone()),
        (_, 3) => Term::scale(k.order(), t.clone()),
        (_, 4) => Term::comp(Term::Id(d), t.clone()),
        _ => {
            let xx = Term::comp(Term::x(), Term::x());
            if d >= 2 {
                Term::comp(t.clone(), Term::pad(0, xx, d - 2))
            } else {
                Term::comp(t.clone(), Term::scale(0, Term::Id(1)))
            }
        }
    }
}
