//! Cochains on a quandle and the explicit cocycle conditions.

use std::fmt;

use thiserror::Error;

use crate::constructions::{dihedral, LaurentQuotient};
use crate::quandle::FiniteQuandle;

/// A function `X^k → ℤ_m` stored densely; `m = 0` means integer values.
/// Tuples are indexed with the first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    arity: usize,
    order: usize,
    modulus: u64,
    values: Vec<i64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("cochain is over a quandle of order {0}, expected {1}")]
    OrderMismatch(usize, usize),
    #[error("cochain has arity {0}, expected {1}")]
    ArityMismatch(usize, usize),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

fn reduce(v: i64, m: u64) -> i64 {
    if m == 0 { v } else { v.rem_euclid(m as i64) }
}

impl Cochain {
    pub fn zero(arity: usize, order: usize, modulus: u64) -> Self {
        Cochain { arity, order, modulus, values: vec![0; order.pow(arity as u32)] }
    }

    pub fn from_values(arity: usize, order: usize, modulus: u64, values: Vec<i64>) -> Result<Self, CochainError> {
        let expected = order.pow(arity as u32);
        if values.len() != expected {
            return Err(CochainError::WrongLength { expected, got: values.len() });
        }
        let values = values.into_iter().map(|v| reduce(v, modulus)).collect();
        Ok(Cochain { arity, order, modulus, values })
    }

    pub fn from_fn(arity: usize, order: usize, modulus: u64, f: impl Fn(&[usize]) -> i64) -> Self {
        let mut c = Self::zero(arity, order, modulus);
        let mut tuple = vec![0usize; arity];
        for idx in 0..c.values.len() {
            c.decode_into(idx, &mut tuple);
            c.values[idx] = reduce(f(&tuple), modulus);
        }
        c
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.order + x)
    }

    pub fn decode_into(&self, mut idx: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = idx % self.order;
            idx /= self.order;
        }
    }

    pub fn get(&self, tuple: &[usize]) -> i64 {
        self.values[self.index(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], value: i64) {
        let i = self.index(tuple);
        self.values[i] = reduce(value, self.modulus);
    }

    pub fn reduce_value(&self, v: i64) -> i64 {
        reduce(v, self.modulus)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.arity, self.order, self.modulus), (other.arity, other.order, other.modulus));
        let values = self.values.iter().zip(&other.values).map(|(a, b)| reduce(a + b, self.modulus)).collect();
        Cochain { values, ..self.clone() }
    }

    pub fn neg(&self) -> Cochain {
        let values = self.values.iter().map(|a| reduce(-a, self.modulus)).collect();
        Cochain { values, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Nonzero entries as `(tuple, value)` pairs in index order.
    pub fn support(&self) -> Vec<(Vec<usize>, i64)> {
        let mut tuple = vec![0usize; self.arity];
        let mut out = Vec::new();
        for (idx, &v) in self.values.iter().enumerate() {
            if v != 0 {
                self.decode_into(idx, &mut tuple);
                out.push((tuple.clone(), v));
            }
        }
        out
    }

    fn check_shape(&self, x: &FiniteQuandle, arity: usize) -> Result<(), CochainError> {
        if self.order != x.order() {
            return Err(CochainError::OrderMismatch(self.order, x.order()));
        }
        if self.arity != arity {
            return Err(CochainError::ArityMismatch(self.arity, arity));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleRule {
    /// `φ(a,a) = 0`, or `θ(a,a,b) = θ(a,b,b) = 0`
    Degenerate,
    /// the cocycle identity itself
    Identity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleFailure {
    pub rule: CocycleRule,
    pub tuple: Vec<usize>,
}

impl fmt::Display for CocycleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match self.rule {
            CocycleRule::Degenerate => "degeneracy condition",
            CocycleRule::Identity => "cocycle identity",
        };
        let parts: Vec<String> = self.tuple.iter().map(|x| x.to_string()).collect();
        write!(f, "{rule} fails at ({})", parts.join(", "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Shape(#[from] CochainError),
    #[error("{0}")]
    Failed(CocycleFailure),
}

/// `φ(a,b) + φ(a◁b,c) = φ(a,c) + φ(a◁c,b◁c)` and `φ(a,a) = 0`.
pub fn check_2cocycle(x: &FiniteQuandle, phi: &Cochain) -> Result<(), CheckError> {
    phi.check_shape(x, 2)?;
    let n = x.order();
    let fail = |rule, tuple: Vec<usize>| Err(CheckError::Failed(CocycleFailure { rule, tuple }));
    for a in 0..n {
        if phi.get(&[a, a]) != 0 {
            return fail(CocycleRule::Degenerate, vec![a, a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = phi.get(&[a, b]) + phi.get(&[x.op(a, b), c]);
                let rhs = phi.get(&[a, c]) + phi.get(&[x.op(a, c), x.op(b, c)]);
                if phi.reduce_value(lhs - rhs) != 0 {
                    return fail(CocycleRule::Identity, vec![a, b, c]);
                }
            }
        }
    }
    Ok(())
}

/// `θ(a,b,c) + θ(a◁c,b◁c,d) + θ(a,c,d) = θ(a,b,d) + θ(a◁b,c,d) + θ(a◁d,b◁d,c◁d)`
/// and `θ(a,a,b) = θ(a,b,b) = 0`.
pub fn check_3cocycle(x: &FiniteQuandle, theta: &Cochain) -> Result<(), CheckError> {
    theta.check_shape(x, 3)?;
    let n = x.order();
    let fail = |rule, tuple: Vec<usize>| Err(CheckError::Failed(CocycleFailure { rule, tuple }));
    for a in 0..n {
        for b in 0..n {
            if theta.get(&[a, a, b]) != 0 {
                return fail(CocycleRule::Degenerate, vec![a, a, b]);
            }
            if theta.get(&[a, b, b]) != 0 {
                return fail(CocycleRule::Degenerate, vec![a, b, b]);
            }
        }
    }
    let t = |a: usize, b: usize, c: usize| theta.get(&[a, b, c]);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = t(a, b, c) + t(x.op(a, c), x.op(b, c), d) + t(a, c, d);
                    let rhs = t(a, b, d) + t(x.op(a, b), c, d) + t(x.op(a, d), x.op(b, d), x.op(c, d));
                    if theta.reduce_value(lhs - rhs) != 0 {
                        return fail(CocycleRule::Identity, vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut b: i128, mut e: u64, m: i128) -> i128 {
    let mut r = 1i128;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `θ_p(x,y,z) = (x−y)·((2z−y)^p + y^p − 2z^p)/p mod p` on `R_p`. The
/// quotient is exact, so the numerator is only needed modulo `p²`.
pub fn mochizuki_satoh(p: u64) -> Result<Cochain, CochainError> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(CochainError::NotOddPrime(p));
    }
    let pp = (p as i128) * (p as i128);
    let n = p as usize;
    Ok(Cochain::from_fn(3, n, p, |t| {
        let (x, y, z) = (t[0] as i128, t[1] as i128, t[2] as i128);
        let num = (pow_mod(2 * z - y, p, pp) + pow_mod(y, p, pp) - 2 * pow_mod(z, p, pp)).rem_euclid(pp);
        debug_assert_eq!(num % p as i128, 0);
        ((x - y) * (num / p as i128)).rem_euclid(p as i128) as i64
    }))
}

/// The `ℤ(X)`-module `ℤ_n[t, t⁻¹]/(h)` with `η_{x,y} = t·` and `τ_{x,y} = (1 − t)·`.
#[derive(Clone, Debug)]
pub struct LaurentRep {
    pub module: LaurentQuotient,
}

impl LaurentRep {
    pub fn new(module: LaurentQuotient) -> Self {
        LaurentRep { module }
    }

    pub fn eta(&self, a: usize) -> usize {
        self.module.mul_t(a)
    }

    pub fn tau(&self, b: usize) -> usize {
        self.module.mul_one_minus_t(b)
    }

    /// `δf(x, y) = η(f(x)) + τ(f(y)) − f(x◁y)` for a 1-cochain `f` with
    /// values in the module; satisfies the generalized 2-cocycle condition.
    pub fn twisted_coboundary(&self, x: &FiniteQuandle, f: &[usize]) -> Cochain {
        let m = &self.module;
        Cochain::from_fn(2, x.order(), m.size() as u64, |t| {
            let (a, b) = (t[0], t[1]);
            m.sub(m.add(self.eta(f[a]), self.tau(f[b])), f[x.op(a, b)]) as i64
        })
    }
}

/// Checks the generalized (rack) 2-cocycle condition for `κ` whose values
/// are element codes of the module, plus `κ_{x,x} = 0` when `quandle` is set.
pub fn check_generalized_2cocycle(
    x: &FiniteQuandle,
    rep: &LaurentRep,
    kappa: &Cochain,
    quandle: bool,
) -> Result<(), CheckError> {
    kappa.check_shape(x, 2)?;
    let m = &rep.module;
    let n = x.order();
    let k = |a: usize, b: usize| kappa.get(&[a, b]) as usize;
    if let Some(&v) = kappa.values().iter().find(|&&v| v < 0 || v as usize >= m.size()) {
        return Err(CheckError::Shape(CochainError::WrongLength { expected: m.size(), got: v as usize }));
    }
    let fail = |rule, tuple: Vec<usize>| Err(CheckError::Failed(CocycleFailure { rule, tuple }));
    if quandle {
        for a in 0..n {
            if k(a, a) != 0 {
                return fail(CocycleRule::Degenerate, vec![a, a]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, ac, bc) = (x.op(a, b), x.op(a, c), x.op(b, c));
                let lhs = m.add(rep.eta(k(a, b)), k(ab, c));
                let rhs = m.add(m.add(rep.eta(k(a, c)), rep.tau(k(b, c))), k(ac, bc));
                if lhs != rhs {
                    return fail(CocycleRule::Identity, vec![a, b, c]);
                }
            }
        }
    }
    Ok(())
}

/// Terms of `∂(x_1, …, x_k)` with trivial coefficients:
/// `Σ_{i≥2} (−1)^i [(…, x̂_i, …) − (x_1◁x_i, …, x_{i−1}◁x_i, x̂_i, …)]`.
pub fn boundary_terms(x: &FiniteQuandle, tuple: &[usize]) -> Vec<(i64, Vec<usize>)> {
    let k = tuple.len();
    let mut out = Vec::with_capacity(2 * k);
    for i in 1..k {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        let mut face: Vec<usize> = tuple.to_vec();
        face.remove(i);
        let mut acted: Vec<usize> = (0..i).map(|j| x.op(tuple[j], tuple[i])).collect();
        acted.extend_from_slice(&tuple[i + 1..]);
        out.push((sign, face));
        out.push((-sign, acted));
    }
    out
}

/// `δf = f ∘ ∂`, raising the arity by one.
pub fn coboundary(x: &FiniteQuandle, f: &Cochain) -> Cochain {
    Cochain::from_fn(f.arity() + 1, x.order(), f.modulus(), |t| {
        boundary_terms(x, t).iter().map(|(s, face)| s * f.get(face)).sum()
    })
}

/// The example 2-cocycle on `QS_4` over `ℤ_2`: zero when `x = y` or when
/// either entry is `[3]`, one elsewhere.
pub fn qs4_example_cocycle() -> Cochain {
    Cochain::from_fn(2, 4, 2, |t| i64::from(t[0] != t[1] && t[0] != 3 && t[1] != 3))
}

/// `θ_p` together with its quandle, for convenience.
pub fn dihedral_with_theta(p: u64) -> Result<(FiniteQuandle, Cochain), CochainError> {
    let theta = mochizuki_satoh(p)?;
    Ok((dihedral(p as usize), theta))
}
