//! Signed permutations, the groups `G_{2n+1}` and the quandles `R̃_{2n+1}`.
//!
//! A signed permutation `(ε_1 σ(1), …, ε_m σ(m))` is the matrix whose
//! `j`th column is `ε_j e_{σ(j)}`; products are matrix products.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{coset_quandle_z, dihedral, CosetQuandle, FiniteGroup, GroupError};
use crate::quandle::QuandleMap;
use crate::symmetric::{verify_good_involution, InvolutionViolation, SymmetricQuandle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignedError {
    #[error("sizes differ: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("absolute values do not form a permutation")]
    NotPermutation,
    #[error("cannot parse signed permutation `{0}`")]
    Parse(String),
    #[error("n must be at least 1")]
    ZeroN,
    #[error("group would have {0} elements, above the limit {1}")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("good involution check failed: {0:?}")]
    Involution(Vec<InvolutionViolation>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    /// `images` are 1-based signed column images.
    pub fn new(images: Vec<i32>) -> Result<Self, SignedError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &v in &images {
            let k = v.unsigned_abs() as usize;
            if k == 0 || k > m || std::mem::replace(&mut seen[k - 1], true) {
                return Err(SignedError::NotPermutation);
            }
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(m: usize) -> Self {
        SignedPermutation { images: (1..=m as i32).collect() }
    }

    pub fn diagonal(signs: &[i8]) -> Self {
        SignedPermutation { images: signs.iter().enumerate().map(|(i, &s)| s as i32 * (i as i32 + 1)).collect() }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0i32; self.size()];
        for (j, &v) in self.images.iter().enumerate() {
            out[v.unsigned_abs() as usize - 1] = v.signum() * (j as i32 + 1);
        }
        SignedPermutation { images: out }
    }

    /// The underlying permutation `j ↦ |σ(j)|` on 0-based points.
    pub fn abs_perm(&self) -> Vec<usize> {
        self.images.iter().map(|v| v.unsigned_abs() as usize - 1).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.images.iter().enumerate().all(|(i, v)| v.unsigned_abs() as usize == i + 1)
    }

    pub fn signs(&self) -> Vec<i8> {
        self.images.iter().map(|v| v.signum() as i8).collect()
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let images = other
            .images
            .iter()
            .map(|&d| d.signum() * self.images[d.unsigned_abs() as usize - 1])
            .collect();
        SignedPermutation { images }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for SignedPermutation {
    type Err = SignedError;

    /// Accepts `1,5,4,-3,-2` with or without surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let images = body
            .split(',')
            .map(|p| p.trim().parse::<i32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SignedError::Parse(s.to_string()))?;
        SignedPermutation::new(images)
    }
}

/// `(ε_σ(1)…)·(δ_τ(1)…) = (ε_{τ(1)} δ_1 σ(τ(1)), …)`.
pub fn signed_perm_mul(u: &SignedPermutation, v: &SignedPermutation) -> Result<SignedPermutation, SignedError> {
    if u.size() != v.size() {
        return Err(SignedError::SizeMismatch(u.size(), v.size()));
    }
    Ok(u.mul_unchecked(v))
}

/// A group of signed permutations with its multiplication table.
#[derive(Clone, Debug)]
pub struct SignedGroup {
    pub group: FiniteGroup,
    /// sorted, so element `i` of `group` is `elements[i]`
    pub elements: Vec<SignedPermutation>,
}

impl SignedGroup {
    pub fn index_of(&self, p: &SignedPermutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }
}

pub fn signed_group_closure(generators: &[SignedPermutation], max_elements: usize) -> Result<SignedGroup, SignedError> {
    let m = generators.first().map_or(0, |g| g.size());
    if let Some(g) = generators.iter().find(|g| g.size() != m) {
        return Err(SignedError::SizeMismatch(m, g.size()));
    }
    let (group, elements) = FiniteGroup::closure(
        generators,
        SignedPermutation::identity(m),
        |u, v| u.mul_unchecked(v),
        max_elements,
    )?;
    let labels = elements.iter().map(|e| e.to_string()).collect();
    Ok(SignedGroup { group: group.with_labels(labels), elements })
}

/// Default bound on `|G_{2n+1}|`, which admits `n ≤ 4`.
pub const MAX_G_ORDER: usize = 5000;

/// `G_{2n+1}` with its two generators.
#[derive(Clone, Debug)]
pub struct GroupG {
    pub n: usize,
    pub signed: SignedGroup,
    pub a: usize,
    pub b: usize,
}

pub fn generator_a(n: usize) -> SignedPermutation {
    let m = 2 * n + 1;
    let mut images = vec![1i32];
    images.extend((n + 2..=m).rev().map(|k| k as i32));
    images.extend((2..=n + 1).rev().map(|k| -(k as i32)));
    SignedPermutation { images }
}

pub fn generator_b(n: usize) -> SignedPermutation {
    let m = 2 * n + 1;
    let mut images = vec![m as i32];
    images.extend(1..m as i32);
    SignedPermutation { images }
}

pub fn build_g(n: usize) -> Result<GroupG, SignedError> {
    build_g_bounded(n, MAX_G_ORDER)
}

pub fn build_g_bounded(n: usize, max_elements: usize) -> Result<GroupG, SignedError> {
    if n == 0 {
        return Err(SignedError::ZeroN);
    }
    let expected = (2 * n + 1).saturating_mul(1usize.checked_shl(2 * n as u32 + 1).unwrap_or(usize::MAX));
    if expected > max_elements {
        return Err(SignedError::TooLarge(expected, max_elements));
    }
    let (ga, gb) = (generator_a(n), generator_b(n));
    let signed = signed_group_closure(&[ga.clone(), gb.clone()], max_elements)?;
    let a = signed.index_of(&ga).expect("generator");
    let b = signed.index_of(&gb).expect("generator");
    Ok(GroupG { n, signed, a, b })
}

/// `R̃_{2n+1} = (G_{2n+1}, C(a), a)` with its good involution and the
/// projection onto `R_{2n+1}`.
#[derive(Clone, Debug)]
pub struct RTilde {
    pub g: GroupG,
    pub centralizer: Vec<usize>,
    pub coset: CosetQuandle,
    pub symmetric: SymmetricQuandle,
    pub projection: QuandleMap,
}

/// The diagonal element `D` with `ρ(Hu) = H D u`.
pub fn rho_diagonal(n: usize) -> SignedPermutation {
    let m = 2 * n + 1;
    let signs: Vec<i8> = (1..=m)
        .map(|i| {
            if i == 1 {
                if n % 2 == 1 { -1 } else { 1 }
            } else if i <= n + 1 {
                -1
            } else {
                1
            }
        })
        .collect();
    SignedPermutation::diagonal(&signs)
}

pub fn build_rtilde(n: usize) -> Result<RTilde, SignedError> {
    let g = build_g(n)?;
    let grp = &g.signed.group;
    let centralizer = grp.centralizer(g.a);
    let coset = coset_quandle_z(grp, &centralizer, g.a).map_err(|e| SignedError::Construction(e.to_string()))?;
    let d = g.signed.index_of(&rho_diagonal(n)).ok_or(SignedError::NotInGroup)?;
    let rho: Vec<usize> = coset.representatives.iter().map(|&u| coset.coset_of[grp.mul(d, u)]).collect();
    let symmetric = verify_good_involution(&coset.quandle, &rho).map_err(SignedError::Involution)?;
    let images = coset
        .representatives
        .iter()
        .map(|&u| {
            let c = grp.mul(grp.mul(grp.inv(u), g.a), u);
            g.signed.elements[c].images()[0].unsigned_abs() as usize - 1
        })
        .collect();
    let projection = QuandleMap::new(coset.quandle.order(), 2 * n + 1, images);
    debug_assert!(crate::quandle::check_homomorphism(&projection, &coset.quandle, &dihedral(2 * n + 1)));
    Ok(RTilde { g, centralizer, coset, symmetric, projection })
}

/// `g = b^i · I` or `g = a · b^i · I` with `I` diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub uses_a: bool,
    pub i: usize,
    pub diag: Vec<i8>,
}

pub fn normal_form(g: &GroupG, x: usize) -> Result<NormalForm, SignedError> {
    let grp = &g.signed.group;
    if x >= grp.order() {
        return Err(SignedError::NotInGroup);
    }
    let m = 2 * g.n + 1;
    for uses_a in [false, true] {
        for i in 0..m {
            let mut head = grp.pow(g.b, i as i64);
            if uses_a {
                head = grp.mul(g.a, head);
            }
            let rest = &g.signed.elements[grp.mul(grp.inv(head), x)];
            if rest.is_diagonal() {
                return Ok(NormalForm { uses_a, i, diag: rest.signs() });
            }
        }
    }
    Err(SignedError::NotInGroup)
}

/// Inverse of [`normal_form`].
pub fn assemble(g: &GroupG, nf: &NormalForm) -> Result<usize, SignedError> {
    let grp = &g.signed.group;
    let mut head = grp.pow(g.b, nf.i as i64);
    if nf.uses_a {
        head = grp.mul(g.a, head);
    }
    let d = g.signed.index_of(&SignedPermutation::diagonal(&nf.diag)).ok_or(SignedError::NotInGroup)?;
    Ok(grp.mul(head, d))
}

/// `f_a`: keeps `ε_1` and reverses `ε_2 … ε_{2n+1}`.
pub fn f_a(eps: &[i8]) -> Vec<i8> {
    let mut out = vec![eps[0]];
    out.extend(eps[1..].iter().rev());
    out
}

/// `f_b`: cyclic shift, position `j` receives `ε_{j-1}`.
pub fn f_b(eps: &[i8]) -> Vec<i8> {
    let m = eps.len();
    (0..m).map(|j| eps[(j + m - 1) % m]).collect()
}

pub fn f_b_inv(eps: &[i8]) -> Vec<i8> {
    let m = eps.len();
    (0..m).map(|j| eps[(j + 1) % m]).collect()
}

/// Minus signs at `n+1` and `2n+1`.
pub fn i_plus(n: usize) -> Vec<i8> {
    let m = 2 * n + 1;
    (1..=m).map(|i| if i == n + 1 || i == m { -1 } else { 1 }).collect()
}

/// Minus signs at `1` and `n+2`.
pub fn i_minus(n: usize) -> Vec<i8> {
    let m = 2 * n + 1;
    (1..=m).map(|i| if i == 1 || i == n + 2 { -1 } else { 1 }).collect()
}

/// A single plus sign at position `i` (1-based).
pub fn i_single(n: usize, i: usize) -> Vec<i8> {
    (1..=2 * n + 1).map(|j| if j == i { 1 } else { -1 }).collect()
}

pub fn diag_product(x: &[i8], y: &[i8]) -> Vec<i8> {
    x.iter().zip(y).map(|(a, b)| a * b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::is_connected;
    use crate::quandle::check_homomorphism;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_products() {
        let u = sp("(1,5,4,-3,-2)");
        let v = sp("(5,1,2,3,4)");
        assert_eq!(signed_perm_mul(&u, &v).unwrap(), sp("(-2,1,5,4,-3)"));
        assert_eq!(signed_perm_mul(&v, &u).unwrap(), sp("(5,4,3,-2,-1)"));
        assert_eq!(signed_perm_mul(&u, &SignedPermutation::identity(5)).unwrap(), u);
        assert_eq!(signed_perm_mul(&u, &u.inverse()).unwrap(), SignedPermutation::identity(5));
        assert!(signed_perm_mul(&u, &SignedPermutation::identity(4)).is_err());
        assert!(SignedPermutation::new(vec![1, -1, 3]).is_err());
        assert_eq!(u.to_string(), "(1,5,4,-3,-2)");
    }

    #[test]
    fn generators() {
        assert_eq!(generator_a(1), sp("1,3,-2"));
        assert_eq!(generator_a(2), sp("1,5,4,-3,-2"));
        assert_eq!(generator_b(2), sp("5,1,2,3,4"));
    }

    #[test]
    fn orders_of_g_and_centralizer() {
        for n in 1..=3 {
            let g = build_g(n).unwrap();
            let m = 2 * n + 1;
            assert_eq!(g.signed.group.order(), m << m);
            assert_eq!(g.signed.group.centralizer(g.a).len(), 1 << (n + 1));
        }
        assert!(matches!(build_g(5), Err(SignedError::TooLarge(..))));
    }

    #[test]
    fn rtilde_properties() {
        for n in 1..=3 {
            let r = build_rtilde(n).unwrap();
            let q = &r.coset.quandle;
            assert_eq!(q.order(), (2 * n + 1) << n);
            assert!(is_connected(q));
            assert!(!q.is_involutory());
            assert!(!r.symmetric.is_trivial_involution());
            assert!(check_homomorphism(&r.projection, q, &dihedral(2 * n + 1)));
            assert!(r.projection.fiber_sizes().iter().all(|&s| s == 1 << n));
        }
    }

    #[test]
    fn rho_is_well_defined_on_cosets() {
        let r = build_rtilde(2).unwrap();
        let grp = &r.g.signed.group;
        let d = r.g.signed.index_of(&rho_diagonal(2)).unwrap();
        for u in 0..grp.order() {
            let c = r.coset.coset_of[u];
            assert_eq!(r.coset.coset_of[grp.mul(d, u)], r.symmetric.rho()[c]);
        }
    }

    #[test]
    fn diagonal_relations() {
        for n in 1..=3 {
            let g = build_g(n).unwrap();
            let grp = &g.signed.group;
            let m = 2 * n + 1;
            assert_eq!(f_b(&i_plus(n)), i_minus(n));
            let idx = |s: &[i8]| g.signed.index_of(&SignedPermutation::diagonal(s)).unwrap();
            for bits in 0..(1u32 << m) {
                if bits.count_ones() % 2 == 1 {
                    continue;
                }
                let eps: Vec<i8> = (0..m).map(|k| if bits >> k & 1 == 1 { -1 } else { 1 }).collect();
                let e = idx(&eps);
                assert_eq!(grp.mul(e, g.a), grp.mul(g.a, idx(&f_a(&eps))));
                assert_eq!(grp.mul(e, g.b), grp.mul(g.b, idx(&f_b(&eps))));
                let binv = grp.inv(g.b);
                assert_eq!(grp.mul(e, binv), grp.mul(binv, idx(&f_b_inv(&eps))));
            }
            let binv = grp.inv(g.b);
            assert_eq!(grp.mul(g.b, g.a), grp.mul(grp.mul(g.a, binv), idx(&i_plus(n))));
            assert_eq!(grp.mul(binv, g.a), grp.mul(grp.mul(g.a, g.b), idx(&i_minus(n))));
            // a² is the diagonal with a single plus sign at position 1
            assert_eq!(grp.mul(g.a, g.a), idx(&i_single(n, 1)));
        }
    }

    #[test]
    fn normal_forms() {
        for n in 1..=3 {
            let g = build_g(n).unwrap();
            let grp = &g.signed.group;
            let mut seen = std::collections::HashSet::new();
            for x in 0..grp.order() {
                let nf = normal_form(&g, x).unwrap();
                assert_eq!(assemble(&g, &nf).unwrap(), x);
                assert!(seen.insert(nf));
            }
            let m = 2 * n + 1;
            assert_eq!(normal_form(&g, grp.identity()).unwrap(), NormalForm { uses_a: false, i: 0, diag: vec![1; m] });
            assert_eq!(normal_form(&g, g.a).unwrap(), NormalForm { uses_a: true, i: 0, diag: vec![1; m] });
            let ba = grp.mul(g.b, g.a);
            let nf = normal_form(&g, ba).unwrap();
            assert_eq!(nf, NormalForm { uses_a: true, i: m - 1, diag: i_plus(n) });
        }
    }

    fn f_b_pow(eps: &[i8], k: i64) -> Vec<i8> {
        let mut out = eps.to_vec();
        for _ in 0..k.rem_euclid(eps.len() as i64) {
            out = f_b(&out);
        }
        out
    }

    fn bracket(n: usize, i: usize, j: usize) -> Vec<i8> {
        let mut acc = vec![1i8; 2 * n + 1];
        for k in 0..i {
            acc = diag_product(&acc, &f_b_pow(&i_plus(n), j as i64 - k as i64));
        }
        acc
    }

    #[test]
    fn product_formulas() {
        for n in 1..=2 {
            check_product_formulas(n);
        }
    }

    fn check_product_formulas(n: usize) {
        let g = build_g(n).unwrap();
        let grp = &g.signed.group;
        let m = 2 * n + 1;
        let diags: Vec<Vec<i8>> = (0..grp.order())
            .filter(|&x| g.signed.elements[x].is_diagonal())
            .map(|x| g.signed.elements[x].signs())
            .collect();
        let elem = |uses_a: bool, i: usize, d: &[i8]| {
            assemble(&g, &NormalForm { uses_a, i: i % m, diag: d.to_vec() }).unwrap()
        };
        let a_times = |x: usize| grp.mul(g.a, x);
        for i in 0..m {
            for j in 0..m {
                for e in &diags {
                    for d in &diags {
                        let lhs = grp.mul(elem(false, i, e), elem(false, j, d));
                        assert_eq!(lhs, elem(false, i + j, &diag_product(&f_b_pow(e, j as i64), d)));

                        let tail = diag_product(&diag_product(&bracket(n, i, j), &f_b_pow(&f_a(e), j as i64)), d);
                        let lhs = grp.mul(elem(false, i, e), elem(true, j, d));
                        assert_eq!(lhs, elem(true, (j + m - i) % m, &tail));

                        let lhs = grp.mul(elem(true, i, e), elem(true, j, d));
                        let rhs = a_times(elem(true, (j + m - i) % m, &tail));
                        assert_eq!(lhs, rhs);

                        let lhs = grp.mul(elem(true, i, e), elem(false, j, d));
                        assert_eq!(lhs, elem(true, i + j, &diag_product(&f_b_pow(e, j as i64), d)));
                    }
                }
            }
        }
    }
}
