//! Kronecker products expressed through sums and additive symmetries.

use crate::error::{Error, Result};
use crate::term::Term;

/// The transpose permutation of the lexicographic `m × n` grid:
/// index `a·n + b` goes to `b·m + a`.
pub fn transpose_perm(m: usize, n: usize) -> Vec<usize> {
    let mut p = vec![0; m * n];
    for a in 0..m {
        for b in 0..n {
            p[a * n + b] = b * m + a;
        }
    }
    p
}

/// Inverse of a permutation given as an image vector.
pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (j, &pj) in p.iter().enumerate() {
        inv[pj] = j;
    }
    inv
}

/// The adjacent transposition `(i i+1)` on `n` points as a term.
pub fn adjacent_swap(i: usize, n: usize) -> Term {
    Term::pad(i, Term::x(), n - i - 2)
}

/// Adjacent transpositions `t_1, …, t_r` (applied in that order) whose
/// composite sends `j` to `p[j]`. Bubble sort on the inverse arrangement.
pub fn adjacent_decomposition(p: &[usize]) -> Vec<usize> {
    let mut w = invert_perm(p);
    let mut swaps = Vec::new();
    let n = w.len();
    for end in (1..n).rev() {
        let mut sorted = true;
        for i in 0..end {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                swaps.push(i);
                sorted = false;
            }
        }
        if sorted {
            break;
        }
    }
    swaps.reverse();
    swaps
}

/// Any permutation of `0..n` as a term over `Id`, `SwapPlus`, `Sum`, `Comp`.
pub fn perm_term(p: &[usize]) -> Result<Term> {
    let n = p.len();
    if n == 0 {
        return Err(Error::NotBijective(0));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return Err(Error::NotBijective(n));
        }
        seen[x] = true;
    }
    let steps = adjacent_decomposition(p).into_iter().map(|i| adjacent_swap(i, n)).collect();
    Ok(Term::sequence(n, steps))
}

/// The multiplicative symmetry `m ⊗ n → n ⊗ m` built from additive symmetries.
pub fn sigma_tensor(m: usize, n: usize) -> Term {
    assert!(m >= 1 && n >= 1, "sigma_tensor needs positive dimensions");
    if m == 1 || n == 1 {
        return Term::Id(m * n);
    }
    perm_term(&transpose_perm(m, n)).expect("transpose is a bijection")
}

/// `t ⊕ ⋯ ⊕ t` (`n` copies), left-associated.
pub fn n_fold_sum(t: &Term, n: usize) -> Result<Term> {
    if n == 0 {
        return Err(Error::InvalidArgument("n_fold_sum needs n >= 1".into()));
    }
    let mut out = t.clone();
    for _ in 1..n {
        out = Term::sum(out, t.clone());
    }
    Ok(out)
}

/// `n` copies of `t`, collapsing identities.
fn copies(t: &Term, n: usize) -> Term {
    match t {
        Term::Id(d) => Term::Id(d * n),
        _ => n_fold_sum(t, n).expect("n >= 1"),
    }
}

/// Rewrites every `Kron` and `Scale` node into sums, compositions and
/// symmetries with the same denotation.
pub fn elaborate_kron(t: &Term) -> Result<Term> {
    t.well_formed()?;
    Ok(elab(t).0)
}

fn elab(t: &Term) -> (Term, usize) {
    match t {
        Term::Id(n) => (t.clone(), *n),
        Term::SwapPlus(m, n) => (t.clone(), m + n),
        Term::Zeta(_) => (t.clone(), 1),
        Term::V => (t.clone(), 2),
        Term::Comp(g, f) => {
            let (g, d) = elab(g);
            let (f, _) = elab(f);
            (Term::comp(g, f), d)
        }
        Term::Sum(a, b) => {
            let (a, da) = elab(a);
            let (b, db) = elab(b);
            (Term::sum(a, b), da + db)
        }
        Term::Kron(a, b) => {
            let (a, m) = elab(a);
            let (b, n) = elab(b);
            (kron_from_sums(&a, m, &b, n), m * n)
        }
        Term::Scale(j, s) => {
            let (s, n) = elab(s);
            (Term::comp(copies(&Term::Zeta(*j), n), s), n)
        }
    }
}

/// `a ⊗ b = σ(n,m) ∘ (n·a) ∘ σ(m,n) ∘ (m·b)` for `a : m`, `b : n`, on
/// Kron-free operands.
pub fn kron_from_sums(a: &Term, m: usize, b: &Term, n: usize) -> Term {
    let mut steps = Vec::new();
    if !matches!(b, Term::Id(_)) {
        steps.push(copies(b, m));
    }
    if !matches!(a, Term::Id(_)) {
        steps.push(sigma_tensor(m, n));
        steps.push(copies(a, n));
        steps.push(sigma_tensor(n, m));
    }
    Term::sequence_skip_ids(m * n, steps)
}
