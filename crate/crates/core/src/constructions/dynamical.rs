//! Dynamical cocycles and the extensions `S ×_α X`.
//!
//! The extension element `(a, x)` has index `x·s + a`.

use thiserror::Error;

use super::LaurentQuotient;
use crate::cocycle::{check_2cocycle, CheckError, Cochain};
use crate::quandle::{check_homomorphism, FiniteQuandle, QuandleMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynamicalRule {
    /// `α_{x,x}(a,a) = a`
    Idempotent,
    /// `α_{x,y}(−,b)` is a bijection
    Bijective,
    /// `α_{x◁y,z}(α_{x,y}(a,b),c) = α_{x◁z,y◁z}(α_{x,z}(a,c),α_{y,z}(b,c))`
    Distributive,
}

/// Witness layouts: `[x, a]`, `[x, y, b]` and `[x, y, z, a, b, c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalViolation {
    pub rule: DynamicalRule,
    pub witness: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicalError {
    #[error("alpha has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("alpha value {0} is outside the fiber")]
    OutOfRange(usize),
    #[error("alpha violates {} condition(s), first {:?}", .0.len(), .0.first())]
    Violations(Vec<DynamicalViolation>),
    #[error(transparent)]
    Cocycle(#[from] CheckError),
    #[error("map is not a surjective homomorphism")]
    NotSurjectiveHomomorphism,
    #[error("fibers have different sizes: {0:?}")]
    UnequalFibers(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalCocycle {
    base_order: usize,
    fiber: usize,
    alpha: Vec<usize>,
}

impl DynamicalCocycle {
    /// `alpha[((x·n + y)·s + a)·s + b] = α_{x,y}(a,b)`.
    pub fn new(base_order: usize, fiber: usize, alpha: Vec<usize>) -> Result<Self, DynamicalError> {
        let expected = base_order * base_order * fiber * fiber;
        if alpha.len() != expected {
            return Err(DynamicalError::Shape { expected, got: alpha.len() });
        }
        if let Some(&v) = alpha.iter().find(|&&v| v >= fiber) {
            return Err(DynamicalError::OutOfRange(v));
        }
        Ok(DynamicalCocycle { base_order, fiber, alpha })
    }

    pub fn from_fn(base_order: usize, fiber: usize, f: impl Fn(usize, usize, usize, usize) -> usize) -> Result<Self, DynamicalError> {
        let mut alpha = Vec::with_capacity(base_order * base_order * fiber * fiber);
        for x in 0..base_order {
            for y in 0..base_order {
                for a in 0..fiber {
                    for b in 0..fiber {
                        alpha.push(f(x, y, a, b));
                    }
                }
            }
        }
        Self::new(base_order, fiber, alpha)
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn fiber(&self) -> usize {
        self.fiber
    }

    pub fn eval(&self, x: usize, y: usize, a: usize, b: usize) -> usize {
        let s = self.fiber;
        self.alpha[((x * self.base_order + y) * s + a) * s + b]
    }
}

/// Exhaustive check of the three conditions; every failure is listed.
pub fn verify_dynamical_cocycle(x: &FiniteQuandle, alpha: &DynamicalCocycle) -> Result<(), DynamicalError> {
    let n = x.order();
    if alpha.base_order != n {
        return Err(DynamicalError::Shape { expected: n, got: alpha.base_order });
    }
    let s = alpha.fiber;
    let mut violations = Vec::new();
    for p in 0..n {
        for a in 0..s {
            if alpha.eval(p, p, a, a) != a {
                violations.push(DynamicalViolation { rule: DynamicalRule::Idempotent, witness: vec![p, a] });
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for b in 0..s {
                let mut seen = vec![false; s];
                if !(0..s).all(|a| !std::mem::replace(&mut seen[alpha.eval(p, q, a, b)], true)) {
                    violations.push(DynamicalViolation { rule: DynamicalRule::Bijective, witness: vec![p, q, b] });
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let (pq, pr, qr) = (x.op(p, q), x.op(p, r), x.op(q, r));
                for a in 0..s {
                    for b in 0..s {
                        let inner = alpha.eval(p, q, a, b);
                        for c in 0..s {
                            let lhs = alpha.eval(pq, r, inner, c);
                            let rhs = alpha.eval(pr, qr, alpha.eval(p, r, a, c), alpha.eval(q, r, b, c));
                            if lhs != rhs {
                                violations.push(DynamicalViolation {
                                    rule: DynamicalRule::Distributive,
                                    witness: vec![p, q, r, a, b, c],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    if violations.is_empty() { Ok(()) } else { Err(DynamicalError::Violations(violations)) }
}

/// `(a,x) ◁ (b,y) = (α_{x,y}(a,b), x◁y)`.
pub fn dynamical_extension(x: &FiniteQuandle, alpha: &DynamicalCocycle) -> Result<FiniteQuandle, DynamicalError> {
    verify_dynamical_cocycle(x, alpha)?;
    let s = alpha.fiber;
    let q = FiniteQuandle::from_fn(s * x.order(), |i, j| {
        let (a, p) = (i % s, i / s);
        let (b, q) = (j % s, j / s);
        x.op(p, q) * s + alpha.eval(p, q, a, b)
    })
    .expect("a verified dynamical cocycle gives a quandle");
    Ok(q)
}

/// `(a,x) ◁ (b,y) = (a + φ(x,y), x◁y)` on `ℤ_m × X`.
pub fn abelian_extension(x: &FiniteQuandle, m: u64, phi: &Cochain) -> Result<FiniteQuandle, DynamicalError> {
    check_2cocycle(x, phi)?;
    let alpha = DynamicalCocycle::from_fn(x.order(), m as usize, |p, q, a, _| {
        (a as i64 + phi.get(&[p, q])).rem_euclid(m as i64) as usize
    })?;
    dynamical_extension(x, &alpha)
}

/// `α_{x,y}(a,b) = t·a + (1−t)·b + κ_{x,y}` on the module; `κ` holds
/// element codes and defaults to zero.
pub fn affine_cocycle(x: &FiniteQuandle, module: &LaurentQuotient, kappa: Option<&Cochain>) -> Result<DynamicalCocycle, DynamicalError> {
    DynamicalCocycle::from_fn(x.order(), module.size(), |p, q, a, b| {
        let base = module.add(module.mul_t(a), module.mul_one_minus_t(b));
        match kappa {
            Some(k) => module.add(base, k.get(&[p, q]) as usize),
            None => base,
        }
    })
}

/// Result of writing `Y` as an extension of `X`.
#[derive(Clone, Debug)]
pub struct FactorExtension {
    /// elements of `Y` over each point of `X`, ascending
    pub fibers: Vec<Vec<usize>>,
    pub alpha: DynamicalCocycle,
    /// `Y → S ×_α X`
    pub isomorphism: QuandleMap,
}

/// Identifies each fiber `p⁻¹(x)` with `{0..s−1}` in increasing order and
/// reads off `α`.
pub fn factor_extension(p: &QuandleMap, y: &FiniteQuandle, x: &FiniteQuandle) -> Result<FactorExtension, DynamicalError> {
    if !p.is_surjective() || !check_homomorphism(p, y, x) {
        return Err(DynamicalError::NotSurjectiveHomomorphism);
    }
    let sizes = p.fiber_sizes();
    if sizes.iter().any(|&k| k != sizes[0]) {
        return Err(DynamicalError::UnequalFibers(sizes));
    }
    let s = sizes[0];
    let mut fibers = vec![Vec::with_capacity(s); x.order()];
    let mut position = vec![0usize; y.order()];
    for e in 0..y.order() {
        let base = p.apply(e);
        position[e] = fibers[base].len();
        fibers[base].push(e);
    }
    let alpha = DynamicalCocycle::from_fn(x.order(), s, |u, v, a, b| position[y.op(fibers[u][a], fibers[v][b])])?;
    let images = (0..y.order()).map(|e| p.apply(e) * s + position[e]).collect();
    let isomorphism = QuandleMap::new(y.order(), y.order(), images);
    Ok(FactorExtension { fibers, alpha, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{find_isomorphism, SearchLimits};
    use crate::cocycle::qs4_example_cocycle;
    use crate::constructions::{alexander, build_rtilde, dihedral};

    #[test]
    fn projection_cocycle() {
        let x = dihedral(3);
        let alpha = DynamicalCocycle::from_fn(3, 3, |_, _, a, _| a).unwrap();
        let e = dynamical_extension(&x, &alpha).unwrap();
        assert_eq!(e.order(), 9);
        let trivial = DynamicalCocycle::from_fn(3, 1, |_, _, _, _| 0).unwrap();
        assert_eq!(dynamical_extension(&x, &trivial).unwrap(), x);
    }

    #[test]
    fn condition_one_violation() {
        let x = dihedral(3);
        let alpha = DynamicalCocycle::from_fn(3, 2, |_, _, a, _| (a + 1) % 2).unwrap();
        match verify_dynamical_cocycle(&x, &alpha) {
            Err(DynamicalError::Violations(v)) => assert!(v.iter().any(|w| w.rule == DynamicalRule::Idempotent)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn affine_extension_of_qs4() {
        let a = alexander(2, &[1, 1, 1]).unwrap();
        let alpha = affine_cocycle(&a.quandle, &a.module, None).unwrap();
        let e = dynamical_extension(&a.quandle, &alpha).unwrap();
        assert_eq!(e.order(), 16);
    }

    #[test]
    fn abelian_extension_and_factoring() {
        let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
        let phi = qs4_example_cocycle();
        let e = abelian_extension(&qs4, 2, &phi).unwrap();
        assert_eq!(e.order(), 8);
        let p = QuandleMap::new(8, 4, (0..8).map(|i| i / 2).collect());
        let f = factor_extension(&p, &e, &qs4).unwrap();
        let back = dynamical_extension(&qs4, &f.alpha).unwrap();
        assert!(check_homomorphism(&f.isomorphism, &e, &back) && f.isomorphism.is_bijective());
        // the recovered α is a + φ(x,y), since the fibers are already in order
        for x in 0..4 {
            for y in 0..4 {
                for a in 0..2 {
                    assert_eq!(f.alpha.eval(x, y, a, 0) as i64, (a as i64 + phi.get(&[x, y])) % 2);
                }
            }
        }
        let mut bad = phi.clone();
        bad.set(&[0, 1], 0);
        assert!(matches!(abelian_extension(&qs4, 2, &bad), Err(DynamicalError::Cocycle(_))));
    }

    #[test]
    fn rtilde_factors_over_dihedral() {
        let limits = SearchLimits { max_order: 24, ..SearchLimits::default() };
        let r = build_rtilde(1).unwrap();
        let y = &r.coset.quandle;
        let x = dihedral(3);
        let f = factor_extension(&r.projection, y, &x).unwrap();
        assert_eq!(f.alpha.fiber(), 2);
        let back = dynamical_extension(&x, &f.alpha).unwrap();
        assert!(find_isomorphism(y, &back, &limits).unwrap().is_some());
    }

    #[test]
    fn identity_factoring() {
        let x = dihedral(5);
        let f = factor_extension(&QuandleMap::identity(5), &x, &x).unwrap();
        assert_eq!(f.alpha.fiber(), 1);
    }

    #[test]
    fn unequal_fibers_rejected() {
        // R3 plus a point acting trivially maps onto the two-point trivial quandle
        let rows = vec![vec![0, 2, 1, 0], vec![2, 1, 0, 1], vec![1, 0, 2, 2], vec![3, 3, 3, 3]];
        let y = crate::quandle::verify_quandle(&rows).unwrap();
        let x = FiniteQuandle::trivial(2);
        let p = QuandleMap::new(4, 2, vec![0, 0, 0, 1]);
        assert!(matches!(factor_extension(&p, &y, &x), Err(DynamicalError::UnequalFibers(_))));
    }
}
