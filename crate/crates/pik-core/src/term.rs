//! The program representation: generator terms and structural combinators.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Precision;

/// A program of the free model.
///
/// Every well-formed term is an endomorphism of a positive object `n`.
/// `Comp(g, f)` is `g ∘ f`: `f` runs first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Id(usize),
    /// Block symmetry `m ⊕ n → n ⊕ m`. `X` is `SwapPlus(1, 1)`.
    SwapPlus(usize, usize),
    /// The scalar `ζ^j` on object 1.
    Zeta(i64),
    /// Square root of `X` on object 2.
    V,
    Comp(Box<Term>, Box<Term>),
    Sum(Box<Term>, Box<Term>),
    /// Derived Kronecker product; see [`crate::tensor::elaborate_kron`].
    Kron(Box<Term>, Box<Term>),
    /// `ζ^j · t`.
    Scale(i64, Box<Term>),
}

impl Term {
    pub fn x() -> Term {
        Term::SwapPlus(1, 1)
    }

    /// `g ∘ f`.
    pub fn comp(g: Term, f: Term) -> Term {
        Term::Comp(Box::new(g), Box::new(f))
    }

    pub fn sum(a: Term, b: Term) -> Term {
        Term::Sum(Box::new(a), Box::new(b))
    }

    pub fn kron(a: Term, b: Term) -> Term {
        Term::Kron(Box::new(a), Box::new(b))
    }

    pub fn scale(j: i64, t: Term) -> Term {
        Term::Scale(j, Box::new(t))
    }

    /// Composes `steps` in application order (first element runs first) as a
    /// balanced tree, so long pipelines stay shallow. Empty input gives `Id(dim)`.
    pub fn sequence(dim: usize, steps: Vec<Term>) -> Term {
        fn build(mut steps: Vec<Term>) -> Term {
            if steps.len() == 1 {
                return steps.pop().unwrap();
            }
            let later = steps.split_off(steps.len() / 2);
            Term::comp(build(later), build(steps))
        }
        if steps.is_empty() {
            Term::Id(dim)
        } else {
            build(steps)
        }
    }

    /// Like [`Term::sequence`] but drops identity steps.
    pub fn sequence_skip_ids(dim: usize, steps: Vec<Term>) -> Term {
        Term::sequence(dim, steps.into_iter().filter(|t| !matches!(t, Term::Id(_))).collect())
    }

    /// Sum over a list of terms, left-nested, skipping nothing.
    pub fn sum_all(parts: Vec<Term>) -> Option<Term> {
        parts.into_iter().reduce(Term::sum)
    }

    /// `Id(a) ⊕ t ⊕ Id(b)` with empty identities omitted.
    pub fn pad(before: usize, t: Term, after: usize) -> Term {
        let mut out = t;
        if before > 0 {
            out = Term::sum(Term::Id(before), out);
        }
        if after > 0 {
            out = Term::sum(out, Term::Id(after));
        }
        out
    }

    pub fn dom(&self) -> Result<usize> {
        self.well_formed().map(|(d, _)| d)
    }

    /// Checks composability and returns `(dom, cod)`, which always agree.
    pub fn well_formed(&self) -> Result<(usize, usize)> {
        self.check(&mut Vec::new())
    }

    fn check(&self, path: &mut Vec<&'static str>) -> Result<(usize, usize)> {
        let d = match self {
            Term::Id(n) => {
                if *n == 0 {
                    return Err(Error::InvalidTerm(format!("id(0) at {}", render_path(path))));
                }
                *n
            }
            Term::SwapPlus(m, n) => {
                if *m == 0 || *n == 0 {
                    return Err(Error::InvalidTerm(format!("swap({m},{n}) at {}", render_path(path))));
                }
                m + n
            }
            Term::Zeta(_) => 1,
            Term::V => 2,
            Term::Comp(g, f) => {
                path.push("comp.first");
                let (df, _) = f.check(path)?;
                path.pop();
                path.push("comp.second");
                let (dg, _) = g.check(path)?;
                path.pop();
                if df != dg {
                    return Err(Error::CompositionMismatch { path: render_path(path), cod: df, dom: dg });
                }
                df
            }
            Term::Sum(a, b) => {
                path.push("sum.left");
                let (da, _) = a.check(path)?;
                path.pop();
                path.push("sum.right");
                let (db, _) = b.check(path)?;
                path.pop();
                da + db
            }
            Term::Kron(a, b) => {
                path.push("kron.left");
                let (da, _) = a.check(path)?;
                path.pop();
                path.push("kron.right");
                let (db, _) = b.check(path)?;
                path.pop();
                da * db
            }
            Term::Scale(_, t) => {
                path.push("scale");
                let (d, _) = t.check(path)?;
                path.pop();
                d
            }
        };
        Ok((d, d))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Id(_) | Term::SwapPlus(..) | Term::Zeta(_) | Term::V => 1,
            Term::Comp(a, b) | Term::Sum(a, b) | Term::Kron(a, b) => 1 + a.size() + b.size(),
            Term::Scale(_, t) => 1 + t.size(),
        }
    }

    /// Number of generator leaves (`V`, `Zeta`, `SwapPlus`).
    pub fn gate_count(&self) -> usize {
        match self {
            Term::Id(_) => 0,
            Term::SwapPlus(..) | Term::Zeta(_) | Term::V => 1,
            Term::Comp(a, b) | Term::Sum(a, b) | Term::Kron(a, b) => a.gate_count() + b.gate_count(),
            Term::Scale(_, t) => 1 + t.gate_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Id(_) | Term::SwapPlus(..) | Term::Zeta(_) | Term::V => 1,
            Term::Comp(a, b) | Term::Sum(a, b) | Term::Kron(a, b) => 1 + a.depth().max(b.depth()),
            Term::Scale(_, t) => 1 + t.depth(),
        }
    }

    /// True when no `Kron` or `Scale` node occurs.
    pub fn is_kron_free(&self) -> bool {
        match self {
            Term::Kron(..) | Term::Scale(..) => false,
            Term::Comp(a, b) | Term::Sum(a, b) => a.is_kron_free() && b.is_kron_free(),
            _ => true,
        }
    }

    /// True when the term is built from `Id`, `SwapPlus`, `Sum` and `Comp` only.
    pub fn is_additive_permutation(&self) -> bool {
        match self {
            Term::Id(_) | Term::SwapPlus(..) => true,
            Term::Comp(a, b) | Term::Sum(a, b) => a.is_additive_permutation() && b.is_additive_permutation(),
            _ => false,
        }
    }

    /// True when the term contains no `V`, `Zeta` or `Scale`: it denotes a permutation.
    pub fn is_classical(&self) -> bool {
        match self {
            Term::Id(_) | Term::SwapPlus(..) => true,
            Term::Zeta(_) | Term::V | Term::Scale(..) => false,
            Term::Comp(a, b) | Term::Sum(a, b) | Term::Kron(a, b) => a.is_classical() && b.is_classical(),
        }
    }

    /// Largest `|j|` over `Zeta` and `Scale` exponents.
    pub fn max_zeta_exponent_abs(&self) -> i64 {
        match self {
            Term::Zeta(j) => j.abs(),
            Term::Scale(j, t) => j.abs().max(t.max_zeta_exponent_abs()),
            Term::Comp(a, b) | Term::Sum(a, b) | Term::Kron(a, b) => {
                a.max_zeta_exponent_abs().max(b.max_zeta_exponent_abs())
            }
            _ => 0,
        }
    }
}

fn render_path(path: &[&'static str]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        format!("root/{}", path.join("/"))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(n) => write!(f, "Id({n})"),
            Term::SwapPlus(m, n) => write!(f, "SwapPlus({m},{n})"),
            Term::Zeta(j) => write!(f, "Zeta({j})"),
            Term::V => write!(f, "V"),
            Term::Comp(g, h) => write!(f, "Comp({g:?}, {h:?})"),
            Term::Sum(a, b) => write!(f, "Sum({a:?}, {b:?})"),
            Term::Kron(a, b) => write!(f, "Kron({a:?}, {b:?})"),
            Term::Scale(j, t) => write!(f, "Scale({j}, {t:?})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty(self))
    }
}

/// The structural conjugate: each scalar `ζ` becomes `-ζ`; identities and
/// symmetries are fixed. `V` is fixed for `k ≥ 3`. At `k = 2` the star map
/// negates `i` itself, so `V` goes to `V ∘ V ∘ V` (its entrywise conjugate).
pub fn term_conj(t: &Term, k: Precision) -> Result<Term> {
    t.well_formed()?;
    Ok(conj_rec(t, k))
}

fn conj_exponent(j: i64, k: Precision) -> i64 {
    // (-ζ)^j = ζ^(j (2^(k-1) + 1))
    k.reduce(k.reduce(j) * (k.order() / 2 + 1))
}

fn conj_rec(t: &Term, k: Precision) -> Term {
    match t {
        Term::V if k.get() == 2 => Term::comp(Term::V, Term::comp(Term::V, Term::V)),
        Term::Id(_) | Term::SwapPlus(..) | Term::V => t.clone(),
        Term::Zeta(j) => Term::Zeta(conj_exponent(*j, k)),
        Term::Comp(g, f) => Term::comp(conj_rec(g, k), conj_rec(f, k)),
        Term::Sum(a, b) => Term::sum(conj_rec(a, k), conj_rec(b, k)),
        Term::Kron(a, b) => Term::kron(conj_rec(a, k), conj_rec(b, k)),
        Term::Scale(j, s) => Term::scale(conj_exponent(*j, k), conj_rec(s, k)),
    }
}

/// The inverse program. `V† = V ∘ V ∘ V` since `V^4 = X^2 = id`.
pub fn term_dagger(t: &Term, k: Precision) -> Result<Term> {
    t.well_formed()?;
    Ok(dagger_rec(t, k))
}

fn dagger_rec(t: &Term, k: Precision) -> Term {
    match t {
        Term::Id(_) => t.clone(),
        Term::SwapPlus(m, n) => Term::SwapPlus(*n, *m),
        Term::Zeta(j) => Term::Zeta(k.reduce(-j)),
        Term::V => Term::comp(Term::V, Term::comp(Term::V, Term::V)),
        Term::Comp(g, f) => Term::comp(dagger_rec(f, k), dagger_rec(g, k)),
        Term::Sum(a, b) => Term::sum(dagger_rec(a, k), dagger_rec(b, k)),
        Term::Kron(a, b) => Term::kron(dagger_rec(a, k), dagger_rec(b, k)),
        Term::Scale(j, s) => Term::scale(k.reduce(-j), dagger_rec(s, k)),
    }
}

/// Re-reads a level-`k` term at level `k+1` (`ζ_k = ζ_{k+1}^2`).
pub fn lift_term(t: &Term) -> Term {
    match t {
        Term::Zeta(j) => Term::Zeta(2 * j),
        Term::Scale(j, s) => Term::scale(2 * j, lift_term(s)),
        Term::Comp(g, f) => Term::comp(lift_term(g), lift_term(f)),
        Term::Sum(a, b) => Term::sum(lift_term(a), lift_term(b)),
        Term::Kron(a, b) => Term::kron(lift_term(a), lift_term(b)),
        Term::Id(_) | Term::SwapPlus(..) | Term::V => t.clone(),
    }
}

/// Derived gates at a fixed precision. Builders emit concrete exponents.
#[derive(Clone, Copy, Debug)]
pub struct Gates {
    k: Precision,
}

impl Gates {
    pub fn new(k: Precision) -> Gates {
        Gates { k }
    }

    pub fn k(&self) -> Precision {
        self.k
    }

    pub fn x(&self) -> Term {
        Term::x()
    }

    pub fn minus_one(&self) -> Term {
        Term::Zeta(self.k.order() / 2)
    }

    /// `Z = id ⊕ -1`.
    pub fn z(&self) -> Term {
        Term::sum(Term::Id(1), self.minus_one())
    }

    /// `S = id ⊕ ζ^(2^(k-2))`.
    pub fn s(&self) -> Term {
        Term::sum(Term::Id(1), Term::Zeta(self.k.order() / 4))
    }

    /// `T = id ⊕ ζ`.
    pub fn t(&self) -> Term {
        Term::sum(Term::Id(1), Term::Zeta(1))
    }

    pub fn omega(&self) -> Result<Term> {
        self.k.require(3, "omega")?;
        Ok(Term::Zeta(self.k.order() / 8))
    }

    /// `H = (ω)^7 · T^(2^(k-2)) V T^(2^(k-2))`.
    pub fn h(&self) -> Result<Term> {
        self.k.require(3, "H")?;
        let tp = power(&self.t(), (self.k.order() / 4) as usize, 2);
        let core = Term::comp(tp.clone(), Term::comp(Term::V, tp));
        Ok(Term::scale(7 * (self.k.order() / 8), core))
    }

    /// `id ⊕ t`.
    pub fn ctrl(&self, t: Term) -> Result<Term> {
        let d = t.dom()?;
        Ok(Term::sum(Term::Id(d), t))
    }

    /// Controlled phase by `2π/2^d` on object 4: `id_3 ⊕ ζ^(2^(k-d))`.
    pub fn cphase(&self, d: u32) -> Result<Term> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("cphase({d}) needs d >= 2")));
        }
        self.k.require(d, &format!("cphase({d})"))?;
        Ok(Term::sum(Term::Id(3), Term::Zeta(1i64 << (self.k.get() - d))))
    }
}

/// `t^n` as a balanced composition; `Id(dim)` for `n = 0`.
pub fn power(t: &Term, n: usize, dim: usize) -> Term {
    Term::sequence(dim, vec![t.clone(); n])
}
