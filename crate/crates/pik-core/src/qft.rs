//! Quantum Fourier transform circuits and their gate accounting.
//!
//! Qubit 0 is the most significant (leftmost Kronecker factor). The final
//! swap layer is included, so the circuit denotes the DFT matrix
//! `2^{-n/2} ω^{xy}` directly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::Precision;
use crate::tensor::perm_term;
use crate::term::{Gates, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QftStats {
    pub n: u32,
    pub k: u32,
    pub h_count: u64,
    pub native_cp: u64,
    pub approx_cp: u64,
    pub swap_count: u64,
}

/// Gate counts for an `n`-qubit QFT at precision `k`; a controlled phase by
/// `2π/2^d` is native iff `d ≤ k`.
pub fn qft_stats(n: u32, k: Precision) -> Result<QftStats> {
    if n == 0 {
        return Err(Error::InvalidArgument("qft needs at least one qubit".into()));
    }
    let (n64, k64) = (u64::from(n), u64::from(k.get()));
    let total = n64 * (n64 - 1) / 2;
    let approx = if n64 > k64 {
        let t = n64 - k64 + 1;
        t * (t - 1) / 2
    } else {
        0
    };
    Ok(QftStats {
        n,
        k: k.get(),
        h_count: n64,
        native_cp: total - approx,
        approx_cp: approx,
        swap_count: n64 / 2,
    })
}

/// `id_{2^before} ⊗ t ⊗ id_{2^after}`, dropping trivial factors.
fn on_qubits(before: u32, t: Term, after: u32) -> Term {
    let mut out = t;
    if after > 0 {
        out = Term::kron(out, Term::Id(1 << after));
    }
    if before > 0 {
        out = Term::kron(Term::Id(1 << before), out);
    }
    out
}

/// Exchanges qubits `a < b` of an `n`-qubit register.
fn qubit_swap(a: u32, b: u32, n: u32) -> Term {
    let dim = 1usize << n;
    let (sa, sb) = (n - 1 - a, n - 1 - b);
    let p: Vec<usize> = (0..dim)
        .map(|x| {
            let (ba, bb) = ((x >> sa) & 1, (x >> sb) & 1);
            (x & !(1 << sa) & !(1 << sb)) | (bb << sa) | (ba << sb)
        })
        .collect();
    perm_term(&p).expect("qubit swap is a bijection")
}

/// The `n`-qubit QFT at precision `k`. Needs `3 ≤ k` and `n ≤ k`.
pub fn build_qft(n: u32, k: Precision) -> Result<Term> {
    k.require(3, "qft")?;
    if n == 0 {
        return Err(Error::InvalidArgument("qft needs at least one qubit".into()));
    }
    if n > k.get() {
        return Err(Error::InvalidArgument(format!(
            "qft on {n} qubits at k = {}: gate requires approximation, which is out of scope",
            k.get()
        )));
    }
    let g = Gates::new(k);
    let h = g.h()?;
    let dim = 1usize << n;
    let mut steps = Vec::new();
    for q in 0..n {
        steps.push(on_qubits(q, h.clone(), n - q - 1));
        for d in 2..=(n - q) {
            let target = q + d - 1;
            let phase = Term::sum(Term::Id(1), Term::Zeta(1i64 << (k.get() - d)));
            let inner = on_qubits(d - 2, phase, n - target - 1);
            steps.push(on_qubits(q, g.ctrl(inner)?, 0));
        }
    }
    for a in 0..n / 2 {
        steps.push(qubit_swap(a, n - 1 - a, n));
    }
    Ok(Term::sequence(dim, steps))
}
