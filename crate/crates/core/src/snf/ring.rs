//! Coefficient rings for elimination: `ℤ` in checked `i64`, `ℤ` in
//! `BigInt`, and `ℤ_m`.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Raised by the `i64` ring; callers redo the work in `BigInt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

pub type R<T> = Result<T, Overflow>;

pub trait Ring {
    type E: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> R<Self::E>;
    fn sub(&self, a: &Self::E, b: &Self::E) -> R<Self::E>;
    fn mul(&self, a: &Self::E, b: &Self::E) -> R<Self::E>;
    fn neg(&self, a: &Self::E) -> R<Self::E>;
    /// Pivot preference: smaller is better.
    fn cmp_norm(&self, a: &Self::E, b: &Self::E) -> Ordering;
    fn is_unit(&self, a: &Self::E) -> bool;
    /// `q` with `x = q·p`, if one exists.
    fn div_exact(&self, x: &Self::E, p: &Self::E) -> Option<Self::E>;
    /// `(g, s, t, a/g, b/g)` with `s·a + t·b = g`.
    fn bezout(&self, a: &Self::E, b: &Self::E) -> R<(Self::E, Self::E, Self::E, Self::E, Self::E)>;
    fn from_i64(&self, v: i64) -> Self::E;
    fn to_bigint(&self, a: &Self::E) -> BigInt;
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IntI64;

impl Ring for IntI64 {
    type E = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn add(&self, a: &i64, b: &i64) -> R<i64> {
        a.checked_add(*b).ok_or(Overflow)
    }
    fn sub(&self, a: &i64, b: &i64) -> R<i64> {
        a.checked_sub(*b).ok_or(Overflow)
    }
    fn mul(&self, a: &i64, b: &i64) -> R<i64> {
        a.checked_mul(*b).ok_or(Overflow)
    }
    fn neg(&self, a: &i64) -> R<i64> {
        a.checked_neg().ok_or(Overflow)
    }
    fn cmp_norm(&self, a: &i64, b: &i64) -> Ordering {
        a.unsigned_abs().cmp(&b.unsigned_abs())
    }
    fn is_unit(&self, a: &i64) -> bool {
        a.unsigned_abs() == 1
    }
    fn div_exact(&self, x: &i64, p: &i64) -> Option<i64> {
        if *p == 0 || *p == -1 && *x == i64::MIN {
            return None;
        }
        (x % p == 0).then(|| x / p)
    }
    fn bezout(&self, a: &i64, b: &i64) -> R<(i64, i64, i64, i64, i64)> {
        let (g, s, t) = ext_gcd_i128(*a as i128, *b as i128);
        let conv = |v: i128| i64::try_from(v).map_err(|_| Overflow);
        Ok((conv(g)?, conv(s)?, conv(t)?, conv(*a as i128 / g)?, conv(*b as i128 / g)?))
    }
    fn from_i64(&self, v: i64) -> i64 {
        v
    }
    fn to_bigint(&self, a: &i64) -> BigInt {
        BigInt::from(*a)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IntBig;

impl Ring for IntBig {
    type E = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> R<BigInt> {
        Ok(a + b)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> R<BigInt> {
        Ok(a - b)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> R<BigInt> {
        Ok(a * b)
    }
    fn neg(&self, a: &BigInt) -> R<BigInt> {
        Ok(-a)
    }
    fn cmp_norm(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn div_exact(&self, x: &BigInt, p: &BigInt) -> Option<BigInt> {
        if p.is_zero() {
            return None;
        }
        let (q, r) = x.div_rem(p);
        r.is_zero().then_some(q)
    }
    fn bezout(&self, a: &BigInt, b: &BigInt) -> R<(BigInt, BigInt, BigInt, BigInt, BigInt)> {
        let e = a.extended_gcd(b);
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        let ag = a / &g;
        let bg = b / &g;
        Ok((g, s, t, ag, bg))
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn to_bigint(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
}

/// `ℤ_m` with representatives in `0..m`.
#[derive(Clone, Copy, Debug)]
pub struct Zmod {
    m: i128,
}

impl Zmod {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        Zmod { m: m as i128 }
    }

    pub fn modulus(&self) -> u64 {
        self.m as u64
    }

    fn red(&self, v: i128) -> i64 {
        v.rem_euclid(self.m) as i64
    }

    pub fn gcd_with_modulus(&self, a: i64) -> u64 {
        (a as i128).gcd(&self.m) as u64
    }

    pub fn inverse(&self, a: i64) -> Option<i64> {
        let (g, s, _) = ext_gcd_i128(a as i128, self.m);
        (g == 1).then(|| self.red(s))
    }
}

impl Ring for Zmod {
    type E = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        self.red(1)
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn add(&self, a: &i64, b: &i64) -> R<i64> {
        Ok(self.red(*a as i128 + *b as i128))
    }
    fn sub(&self, a: &i64, b: &i64) -> R<i64> {
        Ok(self.red(*a as i128 - *b as i128))
    }
    fn mul(&self, a: &i64, b: &i64) -> R<i64> {
        Ok(self.red(*a as i128 * *b as i128))
    }
    fn neg(&self, a: &i64) -> R<i64> {
        Ok(self.red(-(*a as i128)))
    }
    fn cmp_norm(&self, a: &i64, b: &i64) -> Ordering {
        self.gcd_with_modulus(*a).cmp(&self.gcd_with_modulus(*b))
    }
    fn is_unit(&self, a: &i64) -> bool {
        self.gcd_with_modulus(*a) == 1
    }
    fn div_exact(&self, x: &i64, p: &i64) -> Option<i64> {
        let g = (*p as i128).gcd(&self.m);
        if g == 0 || (*x as i128) % g != 0 {
            return None;
        }
        let m_g = self.m / g;
        let p_g = (*p as i128 / g).rem_euclid(m_g);
        let (_, inv, _) = ext_gcd_i128(p_g, m_g);
        Some(self.red((*x as i128 / g) * inv.rem_euclid(m_g.max(1))))
    }
    fn bezout(&self, a: &i64, b: &i64) -> R<(i64, i64, i64, i64, i64)> {
        let (a, b) = (*a as i128, *b as i128);
        let (g, s, t) = ext_gcd_i128(a, b);
        Ok((self.red(g), self.red(s), self.red(t), self.red(a / g), self.red(b / g)))
    }
    fn from_i64(&self, v: i64) -> i64 {
        self.red(v as i128)
    }
    fn to_bigint(&self, a: &i64) -> BigInt {
        BigInt::from(*a)
    }
}

pub fn bigint_to_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
