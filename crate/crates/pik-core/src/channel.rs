//! Exact quantum channels between classical-quantum objects.
//!
//! A [`CqObject`] is a list of block dimensions: `[2]` is a qubit, `[1, 1]`
//! a classical bit. A [`Channel`] stores one Choi block per pair of input
//! block `i` (dimension `n`) and output block `j` (dimension `m`), with
//! `J[r·n + a, s·n + b] = Φ_ij(|a⟩⟨b|)[r, s]` (output factor major).

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::{Precision, RingElem};
use crate::semantics::eval;
use crate::term::Term;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CqObject {
    dims: Vec<usize>,
}

impl CqObject {
    pub fn new(dims: Vec<usize>) -> Result<CqObject> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::ObjectMismatch(format!("object needs positive dimensions, got {dims:?}")));
        }
        Ok(CqObject { dims })
    }

    /// The quantum object `[n]`.
    pub fn quantum(n: usize) -> CqObject {
        CqObject::new(vec![n]).expect("positive dimension")
    }

    /// `n` qubits as one block of dimension `2^n`.
    pub fn qubits(n: u32) -> CqObject {
        CqObject::quantum(1 << n)
    }

    /// The classical object with `n` outcomes.
    pub fn classical(n: usize) -> CqObject {
        CqObject::new(vec![1; n]).expect("n >= 1")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Coproduct: concatenation of the block lists.
    pub fn plus(&self, other: &CqObject) -> CqObject {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        CqObject { dims }
    }

    /// Tensor: all products `a_i·b_j`, `i` major.
    pub fn tensor(&self, other: &CqObject) -> CqObject {
        let dims = self.dims.iter().flat_map(|a| other.dims.iter().map(move |b| a * b)).collect();
        CqObject { dims }
    }
}

impl fmt::Debug for CqObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.dims)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Channel {
    k: Precision,
    dom: CqObject,
    cod: CqObject,
    blocks: Vec<Vec<ExactMatrix>>,
}

impl fmt::Debug for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Channel({:?} -> {:?}, k = {})", self.dom, self.cod, self.k)
    }
}

/// `|a⟩⟨b|` in dimension `n`.
fn unit(k: Precision, n: usize, a: usize, b: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(k, n, n);
    m.set(a, b, RingElem::one(k));
    m
}

impl Channel {
    /// Builds from the images of matrix units: `act(i, a, b)[j] = Φ_ij(|a⟩⟨b|)`.
    pub fn from_action(
        k: Precision,
        dom: CqObject,
        cod: CqObject,
        act: impl Fn(usize, usize, usize) -> Result<Vec<ExactMatrix>>,
    ) -> Result<Channel> {
        let mut blocks = Vec::with_capacity(dom.len());
        for (i, &n) in dom.dims.iter().enumerate() {
            let mut row: Vec<ExactMatrix> =
                cod.dims.iter().map(|&m| ExactMatrix::zeros(k, m * n, m * n)).collect();
            for a in 0..n {
                for b in 0..n {
                    let outs = act(i, a, b)?;
                    if outs.len() != cod.len() {
                        return Err(Error::ObjectMismatch("action returned the wrong number of blocks".into()));
                    }
                    for (j, out) in outs.into_iter().enumerate() {
                        let m = cod.dims[j];
                        if out.shape() != (m, m) {
                            return Err(Error::ObjectMismatch(format!(
                                "output block {j} should be {m}x{m}, got {:?}",
                                out.shape()
                            )));
                        }
                        for r in 0..m {
                            for s in 0..m {
                                let e = out.get(r, s);
                                if !e.is_zero() {
                                    row[j].set(r * n + a, s * n + b, e.clone());
                                }
                            }
                        }
                    }
                }
            }
            blocks.push(row);
        }
        Ok(Channel { k, dom, cod, blocks })
    }

    /// `Φ_ij(ρ) = Σ K ρ K†` over the Kraus operators `kraus(i, j)`, each `m_j × n_i`.
    pub fn from_kraus(
        k: Precision,
        dom: CqObject,
        cod: CqObject,
        kraus: impl Fn(usize, usize) -> Vec<ExactMatrix>,
    ) -> Result<Channel> {
        let mut blocks = Vec::with_capacity(dom.len());
        for (i, &n) in dom.dims.iter().enumerate() {
            let mut row = Vec::with_capacity(cod.len());
            for (j, &m) in cod.dims.iter().enumerate() {
                let mut block = ExactMatrix::zeros(k, m * n, m * n);
                for op in kraus(i, j) {
                    if op.shape() != (m, n) || op.k() != k {
                        return Err(Error::ObjectMismatch(format!(
                            "Kraus operator for block ({i},{j}) should be {m}x{n}, got {:?}",
                            op.shape()
                        )));
                    }
                    let conj = op.map(RingElem::complex_conj);
                    for r in 0..m {
                        for a in 0..n {
                            let x = op.get(r, a);
                            if x.is_zero() {
                                continue;
                            }
                            for s in 0..m {
                                for b in 0..n {
                                    let y = conj.get(s, b);
                                    if y.is_zero() {
                                        continue;
                                    }
                                    let cur = block.get(r * n + a, s * n + b);
                                    let v = cur + &(x * y);
                                    block.set(r * n + a, s * n + b, v);
                                }
                            }
                        }
                    }
                }
                row.push(block);
            }
            blocks.push(row);
        }
        Ok(Channel { k, dom, cod, blocks })
    }

    pub fn k(&self) -> Precision {
        self.k
    }

    pub fn dom(&self) -> &CqObject {
        &self.dom
    }

    pub fn cod(&self) -> &CqObject {
        &self.cod
    }

    /// The Choi block for input block `i`, output block `j`.
    pub fn choi(&self, i: usize, j: usize) -> &ExactMatrix {
        &self.blocks[i][j]
    }

    /// `Φ_ij(|a⟩⟨b|)`, read off the Choi block.
    fn image_of_unit(&self, i: usize, j: usize, a: usize, b: usize) -> ExactMatrix {
        let n = self.dom.dims[i];
        let m = self.cod.dims[j];
        let block = &self.blocks[i][j];
        ExactMatrix::from_fn(self.k, m, m, |r, s| block.get(r * n + a, s * n + b).clone())
    }

    /// Applies the channel to a density operator supported on input block `i`;
    /// returns one output operator per output block.
    pub fn apply(&self, i: usize, rho: &ExactMatrix) -> Result<Vec<ExactMatrix>> {
        let n = *self.dom.dims.get(i).ok_or_else(|| Error::ObjectMismatch(format!("no input block {i}")))?;
        if rho.shape() != (n, n) {
            return Err(Error::ShapeMismatch { op: "chan_apply", left: (n, n), right: rho.shape() });
        }
        if rho.k() != self.k {
            return Err(Error::PrecisionMismatch { left: self.k.get(), right: rho.k().get() });
        }
        Ok(self
            .cod
            .dims
            .iter()
            .enumerate()
            .map(|(j, &m)| {
                let block = &self.blocks[i][j];
                let mut out = ExactMatrix::zeros(self.k, m, m);
                for a in 0..n {
                    for b in 0..n {
                        let w = rho.get(a, b);
                        if w.is_zero() {
                            continue;
                        }
                        for r in 0..m {
                            for s in 0..m {
                                let e = block.get(r * n + a, s * n + b);
                                if !e.is_zero() {
                                    let v = out.get(r, s) + &(w * e);
                                    out.set(r, s, v);
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect())
    }

    /// True iff every input block's outputs have total partial trace `I`.
    pub fn is_trace_preserving(&self) -> bool {
        self.dom.dims.iter().enumerate().all(|(i, &n)| {
            let mut t = ExactMatrix::zeros(self.k, n, n);
            for (j, &m) in self.cod.dims.iter().enumerate() {
                let block = &self.blocks[i][j];
                for a in 0..n {
                    for b in 0..n {
                        let mut acc = t.get(a, b).clone();
                        for r in 0..m {
                            acc = &acc + block.get(r * n + a, r * n + b);
                        }
                        t.set(a, b, acc);
                    }
                }
            }
            t.is_identity()
        })
    }

    fn same_k(&self, other: &Channel) -> Result<()> {
        if self.k != other.k {
            Err(Error::PrecisionMismatch { left: self.k.get(), right: other.k.get() })
        } else {
            Ok(())
        }
    }

    /// `g ∘ f`.
    pub fn compose(g: &Channel, f: &Channel) -> Result<Channel> {
        g.same_k(f)?;
        if f.cod != g.dom {
            return Err(Error::ObjectMismatch(format!("cannot compose {:?} after {:?}", g, f)));
        }
        Channel::from_action(f.k, f.dom.clone(), g.cod.clone(), |i, a, b| {
            let mut acc: Vec<ExactMatrix> =
                g.cod.dims.iter().map(|&m| ExactMatrix::zeros(f.k, m, m)).collect();
            for l in 0..f.cod.len() {
                let mid = f.image_of_unit(i, l, a, b);
                if mid.entries().iter().all(RingElem::is_zero) {
                    continue;
                }
                for (j, out) in g.apply(l, &mid)?.into_iter().enumerate() {
                    acc[j] = acc[j].add(&out)?;
                }
            }
            Ok(acc)
        })
    }

    /// `f ⊕ g`: blockwise, no cross terms.
    pub fn oplus(f: &Channel, g: &Channel) -> Result<Channel> {
        f.same_k(g)?;
        let k = f.k;
        let dom = f.dom.plus(&g.dom);
        let cod = f.cod.plus(&g.cod);
        let mut blocks = Vec::with_capacity(dom.len());
        for (i, &n) in f.dom.dims.iter().enumerate() {
            let mut row = f.blocks[i].clone();
            row.extend(g.cod.dims.iter().map(|&m| ExactMatrix::zeros(k, m * n, m * n)));
            blocks.push(row);
        }
        for (i, &n) in g.dom.dims.iter().enumerate() {
            let mut row: Vec<ExactMatrix> = f.cod.dims.iter().map(|&m| ExactMatrix::zeros(k, m * n, m * n)).collect();
            row.extend(g.blocks[i].iter().cloned());
            blocks.push(row);
        }
        Ok(Channel { k, dom, cod, blocks })
    }

    /// `f ⊗ g` on lexicographically ordered blocks.
    pub fn tensor(f: &Channel, g: &Channel) -> Result<Channel> {
        f.same_k(g)?;
        let dom = f.dom.tensor(&g.dom);
        let cod = f.cod.tensor(&g.cod);
        let gin = g.dom.len();
        Channel::from_action(f.k, dom, cod, |idx, x, y| {
            let (i, p) = (idx / gin, idx % gin);
            let c = g.dom.dims[p];
            let (a, gamma) = (x / c, x % c);
            let (b, delta) = (y / c, y % c);
            let mut outs = Vec::new();
            for j in 0..f.cod.len() {
                let fo = f.image_of_unit(i, j, a, b);
                for q in 0..g.cod.len() {
                    let go = g.image_of_unit(p, q, gamma, delta);
                    outs.push(fo.kron(&go)?);
                }
            }
            Ok(outs)
        })
    }

    /// Classical case analysis `[f, g] : A + B → C`.
    pub fn copair(f: &Channel, g: &Channel) -> Result<Channel> {
        f.same_k(g)?;
        if f.cod != g.cod {
            return Err(Error::ObjectMismatch(format!("copair codomains differ: {:?} vs {:?}", f.cod, g.cod)));
        }
        let mut blocks = f.blocks.clone();
        blocks.extend(g.blocks.iter().cloned());
        Ok(Channel { k: f.k, dom: f.dom.plus(&g.dom), cod: f.cod.clone(), blocks })
    }

    /// Exact equality of all Choi blocks.
    pub fn chan_eq(f: &Channel, g: &Channel) -> Result<bool> {
        f.same_k(g)?;
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::ObjectMismatch(format!("comparing {:?} with {:?}", f, g)));
        }
        Ok(f.blocks == g.blocks)
    }

    pub fn identity(k: Precision, obj: &CqObject) -> Channel {
        Channel::from_kraus(k, obj.clone(), obj.clone(), |i, j| {
            if i == j {
                vec![ExactMatrix::identity(k, obj.dims[i])]
            } else {
                vec![]
            }
        })
        .expect("identity shapes")
    }

    /// `ρ ↦ U ρ U†` on `[d]`.
    pub fn of_unitary_matrix(u: &ExactMatrix) -> Result<Channel> {
        if !u.is_square() {
            return Err(Error::NotSquare { op: "chan_of_unitary", rows: u.rows(), cols: u.cols() });
        }
        let obj = CqObject::quantum(u.rows());
        Channel::from_kraus(u.k(), obj.clone(), obj, |_, _| vec![u.clone()])
    }

    /// The channel of a unitary program.
    pub fn of_unitary(t: &Term, k: Precision) -> Result<Channel> {
        Channel::of_unitary_matrix(&eval(t, k)?)
    }

    /// Prepares `|0⟩`: `[1] → [2]`.
    pub fn new_qubit(k: Precision) -> Channel {
        let ket0 = ExactMatrix::from_fn(k, 2, 1, |r, _| if r == 0 { RingElem::one(k) } else { RingElem::zero(k) });
        Channel::from_kraus(k, CqObject::quantum(1), CqObject::quantum(2), |_, _| vec![ket0.clone()])
            .expect("shapes")
    }

    /// Block measurement `[a + b] → [a, b]`.
    pub fn measure(k: Precision, a: usize, b: usize) -> Result<Channel> {
        let dom = CqObject::new(vec![a + b])?;
        let cod = CqObject::new(vec![a, b])?;
        Channel::from_kraus(k, dom, cod, |_, j| {
            let (rows, off) = if j == 0 { (a, 0) } else { (b, a) };
            vec![ExactMatrix::from_fn(k, rows, a + b, |r, c| {
                if c == r + off {
                    RingElem::one(k)
                } else {
                    RingElem::zero(k)
                }
            })]
        })
    }

    /// Trace: `[n] → [1]`.
    pub fn discard(k: Precision, n: usize) -> Result<Channel> {
        let dom = CqObject::new(vec![n])?;
        Channel::from_kraus(k, dom, CqObject::quantum(1), |_, _| {
            (0..n)
                .map(|z| ExactMatrix::from_fn(k, 1, n, |_, c| if c == z { RingElem::one(k) } else { RingElem::zero(k) }))
                .collect()
        })
    }

    /// Discards every block of `obj`.
    pub fn discard_all(k: Precision, obj: &CqObject) -> Channel {
        Channel::from_kraus(k, obj.clone(), CqObject::quantum(1), |i, _| {
            let n = obj.dims[i];
            (0..n)
                .map(|z| ExactMatrix::from_fn(k, 1, n, |_, c| if c == z { RingElem::one(k) } else { RingElem::zero(k) }))
                .collect()
        })
        .expect("shapes")
    }

    /// Coproduct injection `A → A + B` (`first`) or `B → A + B`.
    pub fn inj(k: Precision, first: bool, a: &CqObject, b: &CqObject) -> Channel {
        let cod = a.plus(b);
        let (src, off) = if first { (a, 0) } else { (b, a.len()) };
        Channel::from_kraus(k, src.clone(), cod, |i, j| {
            if j == i + off {
                vec![ExactMatrix::identity(k, src.dims[i])]
            } else {
                vec![]
            }
        })
        .expect("shapes")
    }

    /// Reorders blocks: input block `i` goes to output block `perm[i]`.
    pub fn block_perm(k: Precision, obj: &CqObject, perm: &[usize]) -> Result<Channel> {
        let n = obj.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::NotBijective(n));
        }
        let mut dims = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            dims[p] = obj.dims[i];
        }
        let cod = CqObject::new(dims)?;
        Channel::from_kraus(k, obj.clone(), cod, |i, j| {
            if perm[i] == j {
                vec![ExactMatrix::identity(k, obj.dims[i])]
            } else {
                vec![]
            }
        })
    }

    /// The tensor symmetry `A ⊗ B → B ⊗ A`.
    pub fn tensor_swap(k: Precision, a: &CqObject, b: &CqObject) -> Result<Channel> {
        let dom = a.tensor(b);
        let cod = b.tensor(a);
        let (na, nb) = (a.len(), b.len());
        Channel::from_action(k, dom, cod, |idx, x, y| {
            let (i, p) = (idx / nb, idx % nb);
            let (da, db) = (a.dims[i], b.dims[p]);
            let target = p * na + i;
            // |α γ⟩⟨β δ| ↦ |γ α⟩⟨δ β|
            let (alpha, gamma) = (x / db, x % db);
            let (beta, delta) = (y / db, y % db);
            let outs = (0..na * nb)
                .map(|j| {
                    let m = da * db;
                    if j == target {
                        unit(k, m, gamma * da + alpha, delta * da + beta)
                    } else {
                        let (q, r) = (j / na, j % na);
                        let m = b.dims[q] * a.dims[r];
                        ExactMatrix::zeros(k, m, m)
                    }
                })
                .collect();
            Ok(outs)
        })
    }

    /// `ρ ↦ Tr_G(W ρ W†)` where `W` is the first `m` columns of `⟦u⟧` and the
    /// output of `u` is read as `n ⊗ g`.
    pub fn from_hug(p: &HugPresentation, k: Precision) -> Result<Channel> {
        p.check()?;
        let w = eval(&p.u, k)?;
        Channel::from_kraus(k, CqObject::quantum(p.m), CqObject::quantum(p.n), |_, _| {
            (0..p.g)
                .map(|z| ExactMatrix::from_fn(k, p.n, p.m, |r, a| w.get(r * p.g + z, a).clone()))
                .collect()
        })
    }
}

/// A reversible core `u : m ⊕ h → n ⊗ g` with an initialised heap `h` and a
/// discarded garbage factor `g`.
#[derive(Clone, Debug)]
pub struct HugPresentation {
    pub m: usize,
    pub n: usize,
    pub h: usize,
    pub g: usize,
    pub u: Term,
}

impl HugPresentation {
    pub fn check(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 || self.g == 0 {
            return Err(Error::InvalidArgument("heap/garbage presentation needs positive m, n, g".into()));
        }
        if self.m + self.h != self.n * self.g {
            return Err(Error::InvalidArgument(format!(
                "dimension equation fails: {} + {} != {} * {}",
                self.m, self.h, self.n, self.g
            )));
        }
        let d = self.u.dom()?;
        if d != self.m + self.h {
            return Err(Error::ObjectMismatch(format!("core has dimension {d}, expected {}", self.m + self.h)));
        }
        Ok(())
    }
}

pub fn compose_all(chain: &[&Channel]) -> Result<Channel> {
    // chain[0] runs first
    let mut it = chain.iter();
    let mut acc = (*it.next().ok_or_else(|| Error::InvalidArgument("empty chain".into()))?).clone();
    for c in it {
        acc = Channel::compose(c, &acc)?;
    }
    Ok(acc)
}
