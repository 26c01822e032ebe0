//! Exact arithmetic in the dyadic cyclotomic ring `D[ζ] = Z[1/2, ζ]`, where
//! `ζ` is a primitive `2^k`-th root of unity.
//!
//! An element is stored as `(1/2^e) · Σ c_i ζ^i` over `i < 2^(k-1)`, reduced
//! by `ζ^(2^(k-1)) = -1`. Elements are kept canonical (`e = 0` or some `c_i`
//! odd), so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;

/// Largest supported precision. Elements carry `2^(k-1)` coefficients.
pub const MAX_PRECISION: u32 = 16;

/// The precision level `k`: scalars are generated by `ζ_k = e^(2πi/2^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Precision(u32);

impl Precision {
    pub fn new(k: u32) -> Result<Precision> {
        if k < 2 {
            return Err(Error::InvalidPrecision { k, reason: "k must be at least 2" });
        }
        if k > MAX_PRECISION {
            return Err(Error::InvalidPrecision { k, reason: "k exceeds the supported maximum of 16" });
        }
        Ok(Precision(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `2^k`, the order of `ζ`.
    pub fn order(self) -> i64 {
        1i64 << self.0
    }

    /// `2^(k-1)`, the number of stored coefficients.
    pub fn width(self) -> usize {
        1usize << (self.0 - 1)
    }

    /// Reduces an exponent of `ζ` into `[0, 2^k)`.
    pub fn reduce(self, j: i64) -> i64 {
        j.rem_euclid(self.order())
    }

    pub fn succ(self) -> Result<Precision> {
        Precision::new(self.0 + 1)
    }

    pub fn pred(self) -> Result<Precision> {
        Precision::new(self.0.saturating_sub(1))
    }

    /// Fails unless `k >= min`.
    pub fn require(self, min: u32, what: &str) -> Result<()> {
        if self.0 < min {
            Err(Error::RequiresPrecision { what: what.to_string(), min, k: self.0 })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for Precision {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let k = u32::deserialize(d)?;
        Precision::new(k).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingElemJson", into = "RingElemJson")]
pub struct RingElem {
    k: Precision,
    den_exp: u32,
    coeffs: Vec<Int>,
}

impl RingElem {
    pub fn zero(k: Precision) -> RingElem {
        RingElem { k, den_exp: 0, coeffs: vec![Int::ZERO; k.width()] }
    }

    pub fn one(k: Precision) -> RingElem {
        RingElem::from_int(k, 1)
    }

    pub fn from_int(k: Precision, v: i64) -> RingElem {
        let mut coeffs = vec![Int::ZERO; k.width()];
        coeffs[0] = Int::from(v);
        RingElem { k, den_exp: 0, coeffs }
    }

    /// `num / 2^den_exp`.
    pub fn dyadic(k: Precision, num: i64, den_exp: u32) -> RingElem {
        let mut coeffs = vec![Int::ZERO; k.width()];
        coeffs[0] = Int::from(num);
        RingElem::canonical(k, den_exp, coeffs)
    }

    /// Builds `(1/2^den_exp) Σ coeffs[i] ζ^i`; `coeffs` must have length `2^(k-1)`.
    pub fn from_parts(k: Precision, den_exp: u32, coeffs: Vec<Int>) -> Result<RingElem> {
        if coeffs.len() != k.width() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for k = {}, got {}",
                k.width(),
                k,
                coeffs.len()
            )));
        }
        Ok(RingElem::canonical(k, den_exp, coeffs))
    }

    /// `ζ^(j mod 2^k)`; negative exponents are normalised here.
    pub fn zeta_pow(k: Precision, j: i64) -> RingElem {
        let half = k.width() as i64;
        let j = k.reduce(j);
        let mut coeffs = vec![Int::ZERO; k.width()];
        if j < half {
            coeffs[j as usize] = Int::ONE;
        } else {
            coeffs[(j - half) as usize] = Int::Small(-1);
        }
        RingElem { k, den_exp: 0, coeffs }
    }

    fn canonical(k: Precision, mut den_exp: u32, mut coeffs: Vec<Int>) -> RingElem {
        let shift = coeffs.iter().filter_map(Int::trailing_zeros).min();
        match shift {
            None => den_exp = 0,
            Some(tz) => {
                let s = tz.min(den_exp as u64);
                if s > 0 {
                    for c in coeffs.iter_mut() {
                        *c = c.shr_exact(s);
                    }
                    den_exp -= s as u32;
                }
            }
        }
        RingElem { k, den_exp, coeffs }
    }

    pub fn k(&self) -> Precision {
        self.k
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Int::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den_exp == 0
            && self.coeffs[0] == Int::ONE
            && self.coeffs[1..].iter().all(Int::is_zero)
    }

    /// True when the stored form is already canonical.
    pub fn is_canonical(&self) -> bool {
        self.den_exp == 0 || self.coeffs.iter().any(|c| !c.is_even())
    }

    fn check_k(&self, other: &RingElem) -> Result<()> {
        if self.k != other.k {
            Err(Error::PrecisionMismatch { left: self.k.get(), right: other.k.get() })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_k(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.check_k(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &RingElem, negate: bool) -> RingElem {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let den = self.den_exp.max(other.den_exp);
        let sa = (den - self.den_exp) as u64;
        let sb = (den - other.den_exp) as u64;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| {
                let a = a.shl(sa);
                let b = b.shl(sb);
                if negate {
                    &a - &b
                } else {
                    &a + &b
                }
            })
            .collect();
        RingElem::canonical(self.k, den, coeffs)
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check_k(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &RingElem) -> RingElem {
        let n = self.k.width();
        if self.is_zero() || other.is_zero() {
            return RingElem::zero(self.k);
        }
        let mut acc = vec![Int::ZERO; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let t = i + j;
                if t < n {
                    acc[t] = &acc[t] + &p;
                } else {
                    acc[t - n] = &acc[t - n] - &p;
                }
            }
        }
        RingElem::canonical(self.k, self.den_exp + other.den_exp, acc)
    }

    /// Multiplication by `ζ^j`: a signed rotation of the coefficients.
    pub fn mul_zeta_pow(&self, j: i64) -> RingElem {
        let n = self.k.width();
        let j = self.k.reduce(j) as usize;
        if j == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Int::ZERO; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = (i + j) % (2 * n);
            if t < n {
                coeffs[t] = c.clone();
            } else {
                coeffs[t - n] = -c;
            }
        }
        RingElem { k: self.k, den_exp: self.den_exp, coeffs }
    }

    /// Division by `2^e`.
    pub fn div_pow2(&self, e: u32) -> RingElem {
        if self.is_zero() {
            return self.clone();
        }
        RingElem { k: self.k, den_exp: self.den_exp + e, coeffs: self.coeffs.clone() }
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            k: self.k,
            den_exp: self.den_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// The ring automorphism `ζ ↦ -ζ` (`c_i ↦ (-1)^i c_i`).
    pub fn galois_star(&self) -> RingElem {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        RingElem { k: self.k, den_exp: self.den_exp, coeffs }
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^(-1)`.
    pub fn complex_conj(&self) -> RingElem {
        let n = self.k.width();
        let mut coeffs = vec![Int::ZERO; n];
        coeffs[0] = self.coeffs[0].clone();
        // ζ^(-i) = -ζ^(n-i) for 0 < i < n
        for i in 1..n {
            coeffs[n - i] = -&self.coeffs[i];
        }
        RingElem { k: self.k, den_exp: self.den_exp, coeffs }
    }

    /// Floating-point embedding `(re, im)`. Diagnostics only.
    pub fn float_embed(&self) -> (f64, f64) {
        let order = self.k.order() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * i as f64 / order;
            let v = c.to_f64();
            re += v * theta.cos();
            im += v * theta.sin();
        }
        let scale = 2f64.powi(-(self.den_exp as i32));
        (re * scale, im * scale)
    }

    /// Re-expresses the element in a finer ring via `ζ_k = ζ_{k'}^(2^(k'-k))`.
    pub fn lift(&self, to: Precision) -> Result<RingElem> {
        if to < self.k {
            return Err(Error::LiftDown { from: self.k.get(), to: to.get() });
        }
        let stride = 1usize << (to.get() - self.k.get());
        let mut coeffs = vec![Int::ZERO; to.width()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * stride] = c.clone();
        }
        Ok(RingElem { k: to, den_exp: self.den_exp, coeffs })
    }

    /// Largest coefficient bit length; a rough size measure.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(Int::bits).max().unwrap_or(0)
    }
}

impl Add<&RingElem> for &RingElem {
    type Output = RingElem;

    /// Panics on a precision mismatch; use [`RingElem::try_add`] to handle it.
    fn add(self, rhs: &RingElem) -> RingElem {
        self.try_add(rhs).expect("ring precision mismatch")
    }
}

impl Sub<&RingElem> for &RingElem {
    type Output = RingElem;

    fn sub(self, rhs: &RingElem) -> RingElem {
        self.try_sub(rhs).expect("ring precision mismatch")
    }
}

impl Mul<&RingElem> for &RingElem {
    type Output = RingElem;

    fn mul(self, rhs: &RingElem) -> RingElem {
        self.try_mul(rhs).expect("ring precision mismatch")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.den_exp > 0 {
            write!(f, "(")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = matches!(c, Int::Small(v) if *v < 0) || matches!(c, Int::Big(b) if b.sign() == num_bigint::Sign::Minus);
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag == Int::ONE) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
        }
        if self.den_exp > 0 {
            write!(f, ")/2^{}", self.den_exp)?;
        }
        Ok(())
    }
}

/// Wire form: `{"k": k, "den_exp": e, "coeffs": [c_0, ...]}`.
#[derive(Serialize, Deserialize)]
struct RingElemJson {
    k: u32,
    den_exp: u32,
    coeffs: Vec<serde_json::Number>,
}

impl TryFrom<RingElemJson> for RingElem {
    type Error = Error;

    fn try_from(j: RingElemJson) -> Result<RingElem> {
        let k = Precision::new(j.k)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|n| {
                n.to_string()
                    .parse::<Int>()
                    .map_err(|_| Error::Json(format!("coefficient {n} is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        RingElem::from_parts(k, j.den_exp, coeffs).map_err(|e| Error::Json(e.to_string()))
    }
}

impl From<RingElem> for RingElemJson {
    fn from(r: RingElem) -> Self {
        RingElemJson {
            k: r.k.get(),
            den_exp: r.den_exp,
            coeffs: r
                .coeffs
                .iter()
                .map(|c| c.to_string().parse().expect("integers are valid JSON numbers"))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(v: u32) -> Precision {
        Precision::new(v).unwrap()
    }

    fn close(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
        (a.0 - b.0).abs() < tol && (a.1 - b.1).abs() < tol
    }

    /// Complex arithmetic oracle in f64, independent of the ring code.
    fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn arb_elem(kv: u32) -> impl Strategy<Value = RingElem> {
        let w = 1usize << (kv - 1);
        (0u32..=16, proptest::collection::vec(-(1i64 << 20)..(1i64 << 20), w)).prop_map(move |(e, cs)| {
            RingElem::from_parts(k(kv), e, cs.into_iter().map(Int::from).collect()).unwrap()
        })
    }

    #[test]
    fn halves_sum_to_one() {
        let h = RingElem::dyadic(k(3), 1, 1);
        assert_eq!(&h + &h, RingElem::one(k(3)));
        assert_eq!(h.den_exp(), 1);
    }

    #[test]
    fn gaussian_examples_at_k2() {
        let k2 = k(2);
        let i = RingElem::zeta_pow(k2, 1);
        let one = RingElem::one(k2);
        let a = (&one + &i).div_pow2(1);
        let b = (&one - &i).div_pow2(1);
        assert_eq!(&a + &b, one);
        assert_eq!(&a * &b, RingElem::dyadic(k2, 1, 1));
        // oracle
        let fa = a.float_embed();
        let fb = b.float_embed();
        assert!(close(cmul(fa, fb), (0.5, 0.0), 1e-15));
        assert_eq!(i.complex_conj(), i.neg());
    }

    #[test]
    fn zeta_powers() {
        for kv in 2..=6 {
            let kk = k(kv);
            assert!(RingElem::zeta_pow(kk, 0).is_one());
            assert_eq!(RingElem::zeta_pow(kk, kk.width() as i64), RingElem::from_int(kk, -1));
            let m = RingElem::zeta_pow(kk, kk.width() as i64);
            assert!((&m * &m).is_one());
            assert_eq!(RingElem::zeta_pow(kk, -1), RingElem::zeta_pow(kk, kk.order() - 1));
        }
        let r2 = &RingElem::zeta_pow(k(3), 1) + &RingElem::zeta_pow(k(3), -1);
        assert!(close(r2.float_embed(), (std::f64::consts::SQRT_2, 0.0), 1e-12));
        let inv_sqrt2 = r2.div_pow2(1);
        assert!(close(inv_sqrt2.float_embed(), (std::f64::consts::FRAC_1_SQRT_2, 0.0), 1e-12));
    }

    #[test]
    fn conjugations() {
        let z = RingElem::zeta_pow(k(4), 1);
        assert_eq!(z.galois_star(), z.neg());
        let h = RingElem::dyadic(k(4), 1, 1);
        assert_eq!(h.galois_star(), h);
        assert_eq!(h.complex_conj(), h);
        let z3 = RingElem::zeta_pow(k(3), 1);
        assert_eq!(z3.complex_conj(), RingElem::zeta_pow(k(3), 7));
        let (re, im) = z3.float_embed();
        assert!(close(z3.complex_conj().float_embed(), (re, -im), 1e-12));
    }

    #[test]
    fn lifting() {
        assert_eq!(RingElem::zeta_pow(k(2), 1).lift(k(3)).unwrap(), RingElem::zeta_pow(k(3), 2));
        assert_eq!(RingElem::dyadic(k(2), 1, 1).lift(k(5)).unwrap(), RingElem::dyadic(k(5), 1, 1));
        assert!(matches!(RingElem::one(k(4)).lift(k(3)), Err(Error::LiftDown { .. })));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = RingElem::one(k(2));
        let b = RingElem::one(k(3));
        assert!(matches!(a.try_add(&b), Err(Error::PrecisionMismatch { left: 2, right: 3 })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn json_shape() {
        let x = (&RingElem::zeta_pow(k(3), 3) + &RingElem::from_int(k(3), 5)).div_pow2(2);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"k":3,"den_exp":2,"coeffs":[5,0,0,1]}"#);
        let back: RingElem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let huge = r#"{"k":2,"den_exp":0,"coeffs":[123456789012345678901234567890,0]}"#;
        let h: RingElem = serde_json::from_str(huge).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), huge);
        assert!(serde_json::from_str::<RingElem>(r#"{"k":3,"den_exp":0,"coeffs":[1,0]}"#).is_err());
        assert!(serde_json::from_str::<RingElem>(r#"{"k":2,"den_exp":0,"coeffs":[1.5,0]}"#).is_err());
        // non-canonical input is normalised on read
        let nc: RingElem = serde_json::from_str(r#"{"k":2,"den_exp":3,"coeffs":[4,2]}"#).unwrap();
        assert_eq!(nc.den_exp(), 2);
        assert!(nc.is_canonical());
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(3), b in arb_elem(3), c in arb_elem(3)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &RingElem::zero(k(3)), a.clone());
            prop_assert_eq!(&a * &RingElem::one(k(3)), a.clone());
            prop_assert!((&a - &a).is_zero());
            prop_assert!((&a + &b).is_canonical());
            prop_assert!((&a * &b).is_canonical());
        }

        #[test]
        fn automorphisms(a in arb_elem(4), b in arb_elem(4)) {
            prop_assert_eq!(a.galois_star().galois_star(), a.clone());
            prop_assert_eq!(a.complex_conj().complex_conj(), a.clone());
            prop_assert_eq!((&a * &b).galois_star(), &a.galois_star() * &b.galois_star());
            prop_assert_eq!((&a * &b).complex_conj(), &a.complex_conj() * &b.complex_conj());
            prop_assert_eq!((&a + &b).galois_star(), &a.galois_star() + &b.galois_star());
            prop_assert_eq!(a.galois_star().complex_conj(), a.complex_conj().galois_star());
        }

        #[test]
        fn float_embedding_is_a_homomorphism(a in arb_elem(3), b in arb_elem(3)) {
            let tol = 1e-9;
            let (fa, fb) = (a.float_embed(), b.float_embed());
            let s = (&a + &b).float_embed();
            prop_assert!(close(s, (fa.0 + fb.0, fa.1 + fb.1), tol));
            // relative bound: products of 2^20-sized coefficients exceed f64 exactness
            let p = (&a * &b).float_embed();
            let q = cmul(fa, fb);
            let mag = 1.0 + q.0.abs() + q.1.abs();
            prop_assert!(close(p, q, tol * mag));
            let c = a.complex_conj().float_embed();
            prop_assert!(close(c, (fa.0, -fa.1), tol));
        }

        #[test]
        fn zeta_is_a_homomorphism(x in -100i64..100, y in -100i64..100) {
            let kk = k(4);
            prop_assert_eq!(&RingElem::zeta_pow(kk, x) * &RingElem::zeta_pow(kk, y), RingElem::zeta_pow(kk, x + y));
            prop_assert_eq!(RingElem::zeta_pow(kk, x).mul_zeta_pow(y), RingElem::zeta_pow(kk, x + y));
        }

        #[test]
        fn lift_preserves_value(a in arb_elem(2), to in 2u32..7) {
            let l = a.lift(k(to)).unwrap();
            prop_assert!(close(l.float_embed(), a.float_embed(), 1e-9));
        }
    }
}
