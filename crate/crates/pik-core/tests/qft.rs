use pik_core::qft::{build_qft, qft_stats};
use pik_core::{eval, ExactMatrix, Precision, RingElem};

fn k(n: u32) -> Precision {
    Precision::new(n).unwrap()
}

/// `2^{-n/2} ζ_{2^n}^{xy}`, with `2^{-1/2} = (ζ_8 + ζ_8^{-1}) / 2`.
fn dft(n: u32, k: Precision) -> ExactMatrix {
    let dim = 1usize << n;
    let eighth = 1i64 << (k.get() - 3);
    let inv_sqrt2 = (&RingElem::zeta_pow(k, eighth) + &RingElem::zeta_pow(k, -eighth)).div_pow2(1);
    let mut norm = RingElem::one(k).div_pow2(n / 2);
    if n % 2 == 1 {
        norm = &norm * &inv_sqrt2;
    }
    let step = 1i64 << (k.get() - n);
    ExactMatrix::from_fn(k, dim, dim, |x, y| norm.mul_zeta_pow(step * (x * y) as i64))
}

#[test]
fn matches_the_dft_oracle() {
    for n in 1..=3 {
        for kk in n.max(3)..=n.max(3) + 1 {
            let m = eval(&build_qft(n, k(kk)).unwrap(), k(kk)).unwrap();
            assert_eq!(m, dft(n, k(kk)), "n = {n}, k = {kk}");
            assert!(m.is_unitary().unwrap());
        }
    }
}

#[test]
fn diagonalises_the_cyclic_shift() {
    for n in 1..=3u32 {
        let kk = k(n.max(3));
        let q = eval(&build_qft(n, kk).unwrap(), kk).unwrap();
        let dim = 1usize << n;
        let shift: Vec<usize> = (0..dim).map(|x| (x + 1) % dim).collect();
        let s = ExactMatrix::perm_matrix(&shift, kk).unwrap();
        let d = q.mul(&s).unwrap().mul(&q.dagger()).unwrap();
        let step = 1i64 << (kk.get() - n);
        let mut found = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    assert!(d.get(i, j).is_zero(), "n = {n}: off-diagonal ({i},{j})");
                }
            }
            let e = (0..dim as i64).find(|&e| d.get(i, i) == &RingElem::zeta_pow(kk, step * e));
            found.push(e.unwrap_or_else(|| panic!("n = {n}: entry {i} is not a 2^n-th root of unity")));
        }
        found.sort();
        assert_eq!(found, (0..dim as i64).collect::<Vec<_>>());
    }
}

#[test]
fn stats_are_consistent_everywhere() {
    for n in 1..=12u32 {
        for kk in 2..=12u32 {
            let s = qft_stats(n, k(kk)).unwrap();
            let total = u64::from(n) * u64::from(n - 1) / 2;
            assert_eq!(s.native_cp + s.approx_cp, total);
            assert_eq!(s.h_count, u64::from(n));
            assert_eq!(s.swap_count, u64::from(n / 2));
            let expect = if n > kk {
                let t = u64::from(n - kk + 1);
                t * (t - 1) / 2
            } else {
                0
            };
            assert_eq!(s.approx_cp, expect, "n = {n}, k = {kk}");
            if n >= 2 && kk == n - 1 {
                assert_eq!(s.approx_cp, 1);
            }
            if n >= 3 && kk == n - 2 && kk >= 2 {
                assert_eq!(s.approx_cp, 3);
            }
        }
    }
}

#[test]
fn refuses_what_it_cannot_build() {
    assert!(build_qft(4, k(3)).is_err());
    assert!(build_qft(1, k(2)).is_err());
    assert!(qft_stats(0, k(3)).is_err());
}
