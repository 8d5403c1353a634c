//! Standard families of finite quandles.

pub mod dynamical;
pub mod group;
pub mod laurent;
pub mod signed;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::quandle::{FiniteQuandle, QuandleError};

pub use dynamical::{
    abelian_extension, affine_cocycle, dynamical_extension, factor_extension, verify_dynamical_cocycle, DynamicalCocycle,
    DynamicalError, FactorExtension,
};
pub use group::{alternating_group, format_cycles, parse_cycles, symmetric_group, FiniteGroup, GroupError};
pub use laurent::{LaurentError, LaurentQuotient};
pub use signed::{
    build_g, build_rtilde, normal_form, signed_perm_mul, NormalForm, RTilde, SignedGroup, SignedPermutation,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error("dihedral quandle needs n >= 1")]
    ZeroOrder,
    #[error("the given elements do not form a subgroup")]
    NotSubgroup,
    #[error("s is not a group automorphism")]
    NotAutomorphism,
    #[error("s moves the subgroup element {0}")]
    NotFixed(usize),
    #[error("z = {0} is not in the subgroup")]
    NotInSubgroup(usize),
    #[error("z does not commute with the subgroup element {0}")]
    NotCentral(usize),
    #[error("no seed elements")]
    NoSeeds,
    #[error("element {0} is not in the group")]
    OutOfRange(usize),
}

/// `R_n`: `i ◁ j = 2j − i mod n`.
pub fn dihedral(n: usize) -> FiniteQuandle {
    assert!(n >= 1, "dihedral quandle needs n >= 1");
    FiniteQuandle::from_fn(n, |i, j| (2 * j + n - i) % n).expect("dihedral quandles satisfy the axioms")
}

/// A quandle together with human-readable names for its elements.
#[derive(Clone, Debug)]
pub struct AlexanderQuandle {
    pub quandle: FiniteQuandle,
    pub labels: Vec<String>,
    pub module: LaurentQuotient,
}

/// `ℤ_n[t, t⁻¹]/(h)` with `a ◁ b = ta + (1 − t)b`; `h` lists coefficients
/// from the constant term upwards.
pub fn alexander(n: u64, h: &[i64]) -> Result<AlexanderQuandle, ConstructionError> {
    let module = LaurentQuotient::new(n, h)?;
    let size = module.size();
    let quandle = FiniteQuandle::from_fn(size, |a, b| module.add(module.mul_t(a), module.mul_one_minus_t(b)))?;
    let labels = (0..size).map(|e| module.label(e)).collect();
    Ok(AlexanderQuandle { quandle, labels, module })
}

/// Which side the conjugating power sits on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConjDirection {
    /// `a ◁ b = b^{-k} a b^{k}`
    #[default]
    Right,
    /// `a ◁ b = b^{k} a b^{-k}`
    Left,
}

/// A subquandle of `Conj_k(G)`, with the group element behind each index.
#[derive(Clone, Debug)]
pub struct ConjQuandle {
    pub quandle: FiniteQuandle,
    /// ascending group element indices
    pub elements: Vec<usize>,
}

/// Closes `seeds` under k-fold conjugation. Products use the group's own
/// multiplication table; see [`ConjDirection`] for the two variants.
pub fn conj(g: &FiniteGroup, k: i64, seeds: &[usize], direction: ConjDirection) -> Result<ConjQuandle, ConstructionError> {
    if seeds.is_empty() {
        return Err(ConstructionError::NoSeeds);
    }
    if let Some(&bad) = seeds.iter().find(|&&s| s >= g.order()) {
        return Err(ConstructionError::OutOfRange(bad));
    }
    let act = |a: usize, b: usize| {
        let (pre, post) = match direction {
            ConjDirection::Right => (g.pow(b, -k), g.pow(b, k)),
            ConjDirection::Left => (g.pow(b, k), g.pow(b, -k)),
        };
        g.mul(g.mul(pre, a), post)
    };
    let mut set: BTreeSet<usize> = seeds.iter().copied().collect();
    loop {
        let current: Vec<usize> = set.iter().copied().collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                grew |= set.insert(act(a, b));
            }
        }
        if !grew {
            break;
        }
    }
    let elements: Vec<usize> = set.into_iter().collect();
    let index = |e: usize| elements.binary_search(&e).expect("closed under the operation");
    let quandle = FiniteQuandle::from_fn(elements.len(), |i, j| index(act(elements[i], elements[j])))?;
    Ok(ConjQuandle { quandle, elements })
}

/// A quandle on the right cosets `Ha` of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetQuandle {
    pub quandle: FiniteQuandle,
    /// least group element of each coset
    pub representatives: Vec<usize>,
    /// coset of every group element
    pub coset_of: Vec<usize>,
    pub labels: Vec<String>,
}

fn coset_quandle_with(
    g: &FiniteGroup,
    h: &[usize],
    op: impl Fn(usize, usize) -> usize,
) -> Result<CosetQuandle, ConstructionError> {
    let (coset_of, representatives) = g.right_cosets(h);
    let quandle = FiniteQuandle::from_fn(representatives.len(), |i, j| {
        coset_of[op(representatives[i], representatives[j])]
    })?;
    let labels = representatives
        .iter()
        .map(|&r| match g.labels() {
            Some(l) => format!("H{}", l[r]),
            None => format!("H{r}"),
        })
        .collect();
    Ok(CosetQuandle { quandle, representatives, coset_of, labels })
}

fn subgroup_closure(g: &FiniteGroup, h: &[usize]) -> Result<Vec<usize>, ConstructionError> {
    if let Some(&bad) = h.iter().find(|&&x| x >= g.order()) {
        return Err(ConstructionError::OutOfRange(bad));
    }
    Ok(g.subgroup(h))
}

/// `Ha ◁ Hb = H a b⁻¹ z b`. `h` generates the subgroup; `z` must lie in it
/// and commute with all of it.
pub fn coset_quandle_z(g: &FiniteGroup, h: &[usize], z: usize) -> Result<CosetQuandle, ConstructionError> {
    let h = subgroup_closure(g, h)?;
    if z >= g.order() {
        return Err(ConstructionError::OutOfRange(z));
    }
    if h.binary_search(&z).is_err() {
        return Err(ConstructionError::NotInSubgroup(z));
    }
    if let Some(&x) = h.iter().find(|&&x| !g.commutes(x, z)) {
        return Err(ConstructionError::NotCentral(x));
    }
    coset_quandle_with(g, &h, |a, b| g.mul(g.mul(g.mul(a, g.inv(b)), z), b))
}

/// `Ha ◁ Hb = H s(a b⁻¹) b` for a group automorphism `s` fixing `h`
/// pointwise; `s` is given as a map on element indices.
pub fn coset_quandle_s(g: &FiniteGroup, h: &[usize], s: &[usize]) -> Result<CosetQuandle, ConstructionError> {
    let h = subgroup_closure(g, h)?;
    if !g.is_automorphism(s) {
        return Err(ConstructionError::NotAutomorphism);
    }
    if let Some(&x) = h.iter().find(|&&x| s[x] != x) {
        return Err(ConstructionError::NotFixed(x));
    }
    coset_quandle_with(g, &h, |a, b| g.mul(s[g.mul(a, g.inv(b))], b))
}
