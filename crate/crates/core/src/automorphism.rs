//! Inner and full automorphism groups, orbits, and isomorphism search.
//!
//! Permutations are `Vec<usize>` with `p[a]` the image of `a`. Products
//! are read left to right: `compose(p, q)` applies `p` first, then `q`,
//! which matches writing maps on the right of their arguments.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::constructions::{coset_quandle_z, FiniteGroup};
use crate::quandle::{check_homomorphism, FiniteQuandle, QuandleMap};

pub type Perm = Vec<usize>;

/// `p` then `q`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    p.iter().map(|&x| q[x]).collect()
}

pub fn invert(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {order} exceeds the search bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("quandle is not homogeneous")]
    NotHomogeneous,
}

/// Bounds for exhaustive automorphism and isomorphism search.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_order: usize,
    pub max_group_elements: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_order: 12, max_group_elements: 1_000_000 }
    }
}

/// A group of permutations of `0..n`, stored as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroupOnQuandle {
    degree: usize,
    elements: Vec<Perm>,
    generated_by: Vec<usize>,
}

impl PermGroupOnQuandle {
    /// Closes `generators` under composition. Finite, so inverses come free.
    pub fn closure(degree: usize, generators: &[Perm], max_elements: usize) -> Result<Self, SearchError> {
        let id = identity_perm(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    if seen.len() > max_elements {
                        return Err(SearchError::GroupTooLarge(max_elements));
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        let generated_by = generators
            .iter()
            .map(|g| elements.binary_search(g).expect("generator lies in its closure"))
            .collect();
        Ok(PermGroupOnQuandle { degree, elements, generated_by })
    }

    fn from_sorted(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        // greedy generating set in element order
        let mut generated_by = Vec::new();
        let mut span: HashSet<Perm> = HashSet::from([identity_perm(degree)]);
        for (i, e) in elements.iter().enumerate() {
            if span.contains(e) {
                continue;
            }
            generated_by.push(i);
            let gens: Vec<Perm> = generated_by.iter().map(|&j| elements[j].clone()).collect();
            span = PermGroupOnQuandle::closure(degree, &gens, usize::MAX)
                .expect("unbounded closure")
                .elements
                .into_iter()
                .collect();
        }
        PermGroupOnQuandle { degree, elements, generated_by }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generated_by(&self) -> &[usize] {
        &self.generated_by
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(p)).is_ok()
    }

    pub fn is_transitive(&self) -> bool {
        let mut hit = vec![false; self.degree];
        if self.degree == 0 {
            return true;
        }
        for e in &self.elements {
            hit[e[0]] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i][point] == point).collect()
    }

    /// Materialises the group with a left-to-right multiplication table.
    pub fn to_finite_group(&self) -> FiniteGroup {
        FiniteGroup::from_permutations(&self.elements)
    }
}

/// `Inn(X)`: the group generated by the right translations `a ↦ a ◁ b`.
pub fn inner_group(x: &FiniteQuandle) -> PermGroupOnQuandle {
    let gens: Vec<Perm> = (0..x.order()).map(|b| x.right_translation(b)).collect();
    PermGroupOnQuandle::closure(x.order(), &gens, usize::MAX).expect("unbounded closure")
}

/// Orbits of `Inn(X)`, each sorted, listed by least element.
pub fn orbits(x: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = x.order();
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut i = 0;
        while i < orbit.len() {
            let a = orbit[i];
            for b in 0..n {
                for c in [x.op(a, b), x.inv_op(a, b)] {
                    if label[c] == usize::MAX {
                        label[c] = id;
                        orbit.push(c);
                    }
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_connected(x: &FiniteQuandle) -> bool {
    orbits(x).len() == 1
}

/// Isomorphism-invariant data attached to an element, used to prune search.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Profile {
    orbit_size: usize,
    cycle_type: Vec<usize>,
    left_fixed: usize,
}

fn profiles(x: &FiniteQuandle) -> Vec<Profile> {
    let n = x.order();
    let orbs = orbits(x);
    let mut orbit_size = vec![0; n];
    for o in &orbs {
        for &a in o {
            orbit_size[a] = o.len();
        }
    }
    (0..n)
        .map(|b| {
            let phi = x.right_translation(b);
            let mut seen = vec![false; n];
            let mut cycle_type = Vec::new();
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut len = 0;
                let mut c = s;
                while !seen[c] {
                    seen[c] = true;
                    c = phi[c];
                    len += 1;
                }
                cycle_type.push(len);
            }
            cycle_type.sort_unstable();
            let left_fixed = (0..n).filter(|&a| x.op(b, a) == b).count();
            Profile { orbit_size: orbit_size[b], cycle_type, left_fixed }
        })
        .collect()
}

/// A short sequence of elements generating `X` under `◁` and `◁⁻¹`.
fn generating_sequence(x: &FiniteQuandle) -> Vec<usize> {
    let n = x.order();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    let mut gens = Vec::new();
    for g in 0..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        inside[g] = true;
        members.push(g);
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = members.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    for c in [x.op(a, b), x.inv_op(a, b)] {
                        if !inside[c] {
                            inside[c] = true;
                            members.push(c);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    gens
}

/// Backtracking enumeration of injective homomorphisms `X → Y` with
/// `|X| = |Y|`, i.e. isomorphisms.
struct IsoSearch<'a> {
    x: &'a FiniteQuandle,
    y: &'a FiniteQuandle,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> IsoSearch<'a> {
    fn new(x: &'a FiniteQuandle, y: &'a FiniteQuandle) -> Option<Self> {
        if x.order() != y.order() {
            return None;
        }
        let px = profiles(x);
        let py = profiles(y);
        let mut sx = px.clone();
        let mut sy = py.clone();
        sx.sort();
        sy.sort();
        if sx != sy {
            return None;
        }
        let gens = generating_sequence(x);
        let candidates = gens
            .iter()
            .map(|&g| (0..y.order()).filter(|&t| py[t] == px[g]).collect())
            .collect();
        Some(IsoSearch { x, y, gens, candidates })
    }

    /// Extends `img` to the closure of its domain. Returns false on conflict.
    fn extend(&self, img: &mut [usize], used: &mut [bool], domain: &mut Vec<usize>, start: usize) -> bool {
        let mut i = start;
        while i < domain.len() {
            let a = domain[i];
            let mut j = 0;
            while j <= i {
                let b = domain[j];
                let pairs = [
                    (self.x.op(a, b), self.y.op(img[a], img[b])),
                    (self.x.op(b, a), self.y.op(img[b], img[a])),
                    (self.x.inv_op(a, b), self.y.inv_op(img[a], img[b])),
                    (self.x.inv_op(b, a), self.y.inv_op(img[b], img[a])),
                ];
                for (src, tgt) in pairs {
                    if img[src] == usize::MAX {
                        if used[tgt] {
                            return false;
                        }
                        img[src] = tgt;
                        used[tgt] = true;
                        domain.push(src);
                    } else if img[src] != tgt {
                        return false;
                    }
                }
                j += 1;
            }
            i += 1;
        }
        true
    }

    fn run(&self, level: usize, img: &mut Vec<usize>, used: &mut Vec<bool>, domain: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if level == self.gens.len() {
            return visit(img);
        }
        let g = self.gens[level];
        for &t in &self.candidates[level] {
            if used[t] {
                continue;
            }
            let (saved_img, saved_used, saved_len) = (img.clone(), used.clone(), domain.len());
            img[g] = t;
            used[t] = true;
            domain.push(g);
            if self.extend(img, used, domain, saved_len) && !self.run(level + 1, img, used, domain, visit) {
                return false;
            }
            *img = saved_img;
            *used = saved_used;
            domain.truncate(saved_len);
        }
        true
    }

    /// Calls `visit` on each isomorphism; stops early when it returns false.
    fn for_each(&self, mut visit: impl FnMut(&[usize]) -> bool) {
        let n = self.x.order();
        let mut img = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut domain = Vec::new();
        self.run(0, &mut img, &mut used, &mut domain, &mut visit);
    }
}

fn check_bound(order: usize, limits: &SearchLimits) -> Result<(), SearchError> {
    if order > limits.max_order {
        Err(SearchError::OrderBound { order, bound: limits.max_order })
    } else {
        Ok(())
    }
}

/// All automorphisms of `X`.
pub fn automorphism_group(x: &FiniteQuandle, limits: &SearchLimits) -> Result<PermGroupOnQuandle, SearchError> {
    check_bound(x.order(), limits)?;
    let search = IsoSearch::new(x, x).expect("X is isomorphic to itself");
    let mut found = Vec::new();
    let mut too_many = false;
    search.for_each(|img| {
        found.push(img.to_vec());
        if found.len() > limits.max_group_elements {
            too_many = true;
            return false;
        }
        true
    });
    if too_many {
        return Err(SearchError::GroupTooLarge(limits.max_group_elements));
    }
    Ok(PermGroupOnQuandle::from_sorted(x.order(), found))
}

pub fn is_homogeneous(x: &FiniteQuandle, limits: &SearchLimits) -> Result<bool, SearchError> {
    Ok(automorphism_group(x, limits)?.is_transitive())
}

/// Some isomorphism `X → Y`, or `None` when the quandles are not isomorphic.
pub fn find_isomorphism(x: &FiniteQuandle, y: &FiniteQuandle, limits: &SearchLimits) -> Result<Option<QuandleMap>, SearchError> {
    check_bound(x.order().max(y.order()), limits)?;
    let Some(search) = IsoSearch::new(x, y) else { return Ok(None) };
    let mut result = None;
    search.for_each(|img| {
        result = Some(QuandleMap::new(x.order(), y.order(), img.to_vec()));
        false
    });
    if let Some(f) = &result {
        debug_assert!(check_homomorphism(f, x, y) && f.is_bijective());
    }
    Ok(result)
}

/// The coset model `(Aut(X), Stab(z), φ_z)` of a homogeneous quandle.
#[derive(Clone, Debug)]
pub struct CosetReconstruction {
    pub group: FiniteGroup,
    /// indices into `group` of the elements fixing `z`
    pub stabilizer: Vec<usize>,
    pub quandle: FiniteQuandle,
    /// coset representative (group element index) for each coset quandle element
    pub representatives: Vec<usize>,
    /// `Hφ ↦ (z)φ`, from the coset quandle to `X`
    pub isomorphism: QuandleMap,
}

pub fn coset_reconstruction(x: &FiniteQuandle, z: usize, limits: &SearchLimits) -> Result<CosetReconstruction, SearchError> {
    let aut = automorphism_group(x, limits)?;
    if !aut.is_transitive() {
        return Err(SearchError::NotHomogeneous);
    }
    let group = aut.to_finite_group();
    let stabilizer = aut.stabilizer(z);
    let phi_z = aut
        .elements()
        .binary_search(&x.right_translation(z))
        .expect("inner automorphisms are automorphisms");
    let coset = coset_quandle_z(&group, &stabilizer, phi_z)
        .expect("the stabilizer is centralised by φ_z and the coset quandle is valid");
    let images = coset
        .representatives
        .iter()
        .map(|&r| aut.elements()[r][z])
        .collect();
    let isomorphism = QuandleMap::new(coset.quandle.order(), x.order(), images);
    Ok(CosetReconstruction {
        group,
        stabilizer,
        quandle: coset.quandle,
        representatives: coset.representatives,
        isomorphism,
    })
}
