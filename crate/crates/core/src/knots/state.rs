//! Quandle colorings of diagrams and the cocycle state sums built on them.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use thiserror::Error;

use super::KnotDiagram;
use crate::cocycle::{check_2cocycle, check_3cocycle, CheckError, Cochain};
use crate::constructions::LaurentQuotient;
use crate::quandle::FiniteQuandle;
use crate::snf::{smith_mod, Track};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KnotError {
    #[error("not a cocycle: {0}")]
    Cocycle(#[from] CheckError),
    #[error("state sums need a 2- or 3-cochain, got arity {0}")]
    Arity(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    pub arc_colors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShadowColoring {
    pub coloring: Coloring,
    pub region_colors: Vec<usize>,
}

/// `(src, over, dst)` arc triples, one per crossing.
fn relations(d: &KnotDiagram) -> Vec<(usize, usize, usize)> {
    d.crossings.iter().map(|x| (d.arc_of[x.under_src], d.arc_of[x.over_in], d.arc_of[x.under_dst])).collect()
}

/// Fills in every color forced by a relation; false on a contradiction.
fn propagate(x: &FiniteQuandle, rel: &[(usize, usize, usize)], col: &mut [Option<usize>]) -> bool {
    let mut changed = true;
    while changed {
        changed = false;
        for &(s, o, t) in rel {
            let Some(b) = col[o] else { continue };
            match (col[s], col[t]) {
                (Some(a), Some(c)) if x.op(a, b) != c => return false,
                (Some(a), None) => {
                    col[t] = Some(x.op(a, b));
                    changed = true;
                }
                (None, Some(c)) => {
                    col[s] = Some(x.inv_op(c, b));
                    changed = true;
                }
                _ => {}
            }
        }
    }
    true
}

fn search(x: &FiniteQuandle, rel: &[(usize, usize, usize)], col: Vec<Option<usize>>, out: &mut Vec<Coloring>) {
    match col.iter().position(Option::is_none) {
        None => out.push(Coloring { arc_colors: col.into_iter().flatten().collect() }),
        Some(free) => {
            for v in 0..x.order() {
                let mut next = col.clone();
                next[free] = Some(v);
                if propagate(x, rel, &mut next) {
                    search(x, rel, next, out);
                }
            }
        }
    }
}

/// Every coloring, in lexicographic order of `arc_colors`.
pub fn colorings(d: &KnotDiagram, x: &FiniteQuandle) -> Vec<Coloring> {
    let rel = relations(d);
    let mut out = Vec::new();
    search(x, &rel, vec![None; d.arc_count()], &mut out);
    out
}

/// Region colors extending `c`, one attempt per color of face 0. Fewer than
/// `|X|` extensions can occur when `X` is not connected.
fn extend(d: &KnotDiagram, x: &FiniteQuandle, c: &Coloring, adj: &[Vec<(usize, usize, bool)>]) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    'seed: for r0 in 0..x.order() {
        let mut reg = vec![usize::MAX; d.face_count()];
        reg[0] = r0;
        let mut queue = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            for &(g, arc, forward) in &adj[f] {
                let b = c.arc_colors[arc];
                let want = if forward { x.op(reg[f], b) } else { x.inv_op(reg[f], b) };
                if reg[g] == usize::MAX {
                    reg[g] = want;
                    queue.push_back(g);
                } else if reg[g] != want {
                    continue 'seed;
                }
            }
        }
        found.push(reg);
    }
    found
}

/// Colorings of arcs and regions: across each segment colored `b`, the
/// region on its left is the one on its right acted on by `b`.
pub fn shadow_colorings(d: &KnotDiagram, x: &FiniteQuandle) -> Vec<ShadowColoring> {
    // (neighbour, arc, true if the neighbour is the left side)
    let mut adj = vec![Vec::new(); d.face_count()];
    for s in 0..d.segment_count() {
        let (l, r) = d.sides(s);
        adj[r].push((l, d.arc_of[s], true));
        adj[l].push((r, d.arc_of[s], false));
    }
    let mut out = Vec::new();
    for c in colorings(d, x) {
        for region_colors in extend(d, x, &c, &adj) {
            out.push(ShadowColoring { coloring: c.clone(), region_colors });
        }
    }
    out
}

/// A multiset of state-sum values modulo `m` (`m = 0` for integers).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantValue {
    pub modulus: u64,
    /// `(value, multiplicity)`, sorted by value
    pub entries: Vec<(i64, usize)>,
}

impl InvariantValue {
    pub fn from_weights(modulus: u64, weights: impl IntoIterator<Item = i64>) -> Self {
        let mut counts = BTreeMap::new();
        for w in weights {
            let w = if modulus == 0 { w } else { w.rem_euclid(modulus as i64) };
            *counts.entry(w).or_insert(0usize) += 1;
        }
        InvariantValue { modulus, entries: counts.into_iter().collect() }
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|e| e.0 == 0)
    }

    /// Every value replaced by its negative.
    pub fn negated(&self) -> Self {
        Self::from_weights(self.modulus, self.entries.iter().flat_map(|&(v, k)| std::iter::repeat(-v).take(k)))
    }
}

impl fmt::Display for InvariantValue {
    /// `{0: 4, 1: 12} mod 2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(v, k)| format!("{v}: {k}")).collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if self.modulus != 0 {
            write!(f, " mod {}", self.modulus)?;
        }
        Ok(())
    }
}

/// The multiset of `Σ sign · φ(color(under_src), color(over))` over all
/// colorings.
pub fn cocycle_invariant_2(d: &KnotDiagram, x: &FiniteQuandle, phi: &Cochain) -> Result<InvariantValue, KnotError> {
    check_2cocycle(x, phi)?;
    let rel = relations(d);
    let weights = colorings(d, x).into_iter().map(|c| {
        d.crossings
            .iter()
            .zip(&rel)
            .map(|(k, &(s, o, _))| k.sign as i64 * phi.get(&[c.arc_colors[s], c.arc_colors[o]]))
            .sum()
    });
    Ok(InvariantValue::from_weights(phi.modulus(), weights))
}

/// The multiset of `Σ sign · θ(r, color(under_src), color(over))` over all
/// shadow colorings, `r` being the color of the source region.
pub fn cocycle_invariant_3(d: &KnotDiagram, x: &FiniteQuandle, theta: &Cochain) -> Result<InvariantValue, KnotError> {
    check_3cocycle(x, theta)?;
    let rel = relations(d);
    let weights = shadow_colorings(d, x).into_iter().map(|sc| {
        let c = &sc.coloring.arc_colors;
        d.crossings
            .iter()
            .enumerate()
            .zip(&rel)
            .map(|((i, k), &(s, o, _))| k.sign as i64 * theta.get(&[sc.region_colors[d.source_face[i]], c[s], c[o]]))
            .sum()
    });
    Ok(InvariantValue::from_weights(theta.modulus(), weights))
}

fn invariant(d: &KnotDiagram, x: &FiniteQuandle, f: &Cochain) -> Result<InvariantValue, KnotError> {
    match f.arity() {
        2 => cocycle_invariant_2(d, x, f),
        3 => cocycle_invariant_3(d, x, f),
        k => Err(KnotError::Arity(k)),
    }
}

/// Whether two diagrams give the same state sum for `f`.
pub fn invariance_check(d1: &KnotDiagram, d2: &KnotDiagram, x: &FiniteQuandle, f: &Cochain) -> Result<bool, KnotError> {
    Ok(invariant(d1, x, f)? == invariant(d2, x, f)?)
}

/// Number of colorings by the Alexander quandle on `module`, found by
/// linear algebra over `Z_n` rather than by search.
pub fn alexander_coloring_count(d: &KnotDiagram, module: &LaurentQuotient) -> BigInt {
    let n = module.modulus();
    let deg = module.degree();
    let basis = |j: usize| {
        let mut e = vec![0u64; deg];
        e[j] = 1;
        module.encode(&e)
    };
    // columns are the images of basis vectors
    let t: Vec<Vec<u64>> = (0..deg).map(|j| module.decode(module.mul_t(basis(j)))).collect();
    let one_minus_t: Vec<Vec<u64>> = (0..deg).map(|j| module.decode(module.mul_one_minus_t(basis(j)))).collect();
    let cols = d.arc_count() * deg;
    let mut rows = Vec::new();
    for (s, o, t_arc) in relations(d) {
        // dst - t·src - (1-t)·over = 0
        for i in 0..deg {
            let mut row = vec![0i64; cols];
            row[t_arc * deg + i] += 1;
            for j in 0..deg {
                row[s * deg + j] -= t[j][i] as i64;
                row[o * deg + j] -= one_minus_t[j][i] as i64;
            }
            rows.push(row);
        }
    }
    let image: BigInt = if rows.is_empty() {
        BigInt::one()
    } else {
        let snf = smith_mod(&rows, n, Track::NONE);
        (0..snf.rank).map(|i| BigInt::from(n / (snf.d[i][i] as u64).gcd(&n))).product()
    };
    Pow::pow(BigInt::from(n), cols) / image
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{coboundary, mochizuki_satoh, qs4_example_cocycle};
    use crate::constructions::{alexander, dihedral};
    use crate::knots::corpus::*;
    use proptest::prelude::*;

    /// Every assignment of colors to arcs, checked relation by relation.
    fn brute_colorings(d: &KnotDiagram, x: &FiniteQuandle) -> Vec<Coloring> {
        let a = d.arc_count();
        let n = x.order();
        let mut out = Vec::new();
        for code in 0..n.pow(a as u32) {
            let mut col = vec![0; a];
            let mut c = code;
            for v in col.iter_mut().rev() {
                *v = c % n;
                c /= n;
            }
            let ok = d.crossings.iter().all(|k| {
                let (s, o, t) = (d.arc_of[k.under_src], d.arc_of[k.over_in], d.arc_of[k.under_dst]);
                x.op(col[s], col[o]) == col[t]
            });
            if ok {
                out.push(Coloring { arc_colors: col });
            }
        }
        out
    }

    #[test]
    fn coloring_counts() {
        let r3 = dihedral(3);
        let r5 = dihedral(5);
        assert_eq!(brute_colorings(&trefoil(), &r3).len(), 9);
        assert_eq!(colorings(&trefoil(), &r3), brute_colorings(&trefoil(), &r3));
        assert_eq!(brute_colorings(&figure_eight(), &r5).len(), 25);
        assert_eq!(colorings(&figure_eight(), &r5), brute_colorings(&figure_eight(), &r5));
        assert_eq!(colorings(&KnotDiagram::unknot(), &r5).len(), 5);
        // R_3 does not color the figure-eight nontrivially, R_5 does not color the trefoil
        assert_eq!(colorings(&figure_eight(), &r3).len(), 3);
        assert_eq!(colorings(&trefoil(), &r5).len(), 5);
    }

    #[test]
    fn alexander_oracle_agrees() {
        for (n, h) in [(3, vec![1, 1]), (5, vec![1, 1]), (2, vec![1, 1, 1]), (7, vec![1, -1, 1]), (9, vec![1, 1])] {
            let q = alexander(n, &h).unwrap();
            for (name, d) in all() {
                let count = colorings(&d, &q.quandle).len();
                assert_eq!(alexander_coloring_count(&d, &q.module), BigInt::from(count), "{name}, n = {n}, h = {h:?}");
            }
        }
    }

    #[test]
    fn shadow_counts() {
        let r3 = dihedral(3);
        assert_eq!(shadow_colorings(&KnotDiagram::unknot(), &r3).len(), 9);
        let sc = shadow_colorings(&trefoil(), &r3);
        assert_eq!(sc.len(), 27);
        // every region rule holds
        let d = trefoil();
        for s in &sc {
            for seg in 0..d.segment_count() {
                let (l, r) = d.sides(seg);
                let b = s.coloring.arc_colors[d.arc_of_segment(seg)];
                assert_eq!(s.region_colors[l], r3.op(s.region_colors[r], b));
            }
        }
        // trivial quandles are far from connected but regions still extend freely
        assert_eq!(colorings(&trefoil(), &FiniteQuandle::trivial(2)).len(), 2);
        assert_eq!(shadow_colorings(&trefoil(), &FiniteQuandle::trivial(2)).len(), 4);
    }

    #[test]
    fn two_cocycle_invariants() {
        let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
        let phi = qs4_example_cocycle();
        let u = cocycle_invariant_2(&KnotDiagram::unknot(), &qs4, &phi).unwrap();
        assert_eq!(u, InvariantValue { modulus: 2, entries: vec![(0, 4)] });
        let t = cocycle_invariant_2(&trefoil(), &qs4, &phi).unwrap();
        assert_eq!(t.total(), 16);
        assert!(!t.is_trivial());
        // the direct count: weight of each coloring from the brute-force list
        let direct = InvariantValue::from_weights(
            2,
            brute_colorings(&trefoil(), &qs4).iter().map(|c| {
                trefoil()
                    .crossings()
                    .iter()
                    .map(|k| {
                        let a = c.arc_colors[trefoil().arc_of_segment(k.under_src)];
                        let b = c.arc_colors[trefoil().arc_of_segment(k.over_in)];
                        k.sign as i64 * phi.get(&[a, b])
                    })
                    .sum::<i64>()
            }),
        );
        assert_eq!(t, direct);
        assert_eq!(t, InvariantValue { modulus: 2, entries: vec![(0, 4), (1, 12)] });
        let mut bad = phi.clone();
        bad.set(&[0, 0], 1);
        assert!(cocycle_invariant_2(&trefoil(), &qs4, &bad).is_err());
    }

    #[test]
    fn chirality_of_the_trefoil() {
        let r3 = dihedral(3);
        let theta = mochizuki_satoh(3).unwrap();
        let t = cocycle_invariant_3(&trefoil(), &r3, &theta).unwrap();
        let m = cocycle_invariant_3(&trefoil().mirror(), &r3, &theta).unwrap();
        assert_eq!(t.total(), 27);
        assert_ne!(t, m);
        assert_eq!(m, t.negated());
        assert_eq!(cocycle_invariant_3(&KnotDiagram::unknot(), &r3, &theta).unwrap(), InvariantValue::from_weights(3, [0; 9]));
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let r5 = dihedral(5);
        let theta = mochizuki_satoh(5).unwrap();
        let d = figure_eight();
        let v = cocycle_invariant_3(&d, &r5, &theta).unwrap();
        let m = cocycle_invariant_3(&d.mirror(), &r5, &theta).unwrap();
        assert_eq!(v.total(), 125);
        assert_eq!(m, v);
        assert_eq!(v, v.negated());
    }

    #[test]
    fn diagram_moves_preserve_invariants() {
        let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
        let r3 = dihedral(3);
        let phi = qs4_example_cocycle();
        let theta = mochizuki_satoh(3).unwrap();
        for d in [trefoil_r1(), trefoil_r2()] {
            assert!(invariance_check(&trefoil(), &d, &qs4, &phi).unwrap());
            assert!(invariance_check(&trefoil(), &d, &r3, &theta).unwrap());
            assert_eq!(colorings(&d, &qs4).len(), colorings(&trefoil(), &qs4).len());
        }
        assert!(invariance_check(&trefoil(), &trefoil(), &qs4, &phi).unwrap());
        assert!(!invariance_check(&trefoil(), &KnotDiagram::unknot(), &qs4, &phi).unwrap());
        assert_eq!(invariance_check(&trefoil(), &trefoil(), &qs4, &Cochain::zero(1, 4, 2)), Err(KnotError::Arity(1)));
    }

    #[test]
    fn mirror_negates_two_cocycle_values() {
        let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
        let phi = qs4_example_cocycle();
        let r3 = dihedral(3);
        let r3_phi = Cochain::zero(2, 3, 3);
        for (name, d) in all() {
            let v = cocycle_invariant_2(&d, &qs4, &phi).unwrap();
            assert_eq!(cocycle_invariant_2(&d.mirror(), &qs4, &phi).unwrap(), v.negated(), "{name}");
            let z = cocycle_invariant_2(&d, &r3, &r3_phi).unwrap();
            assert!(z.is_trivial());
            assert_eq!(z.total(), colorings(&d, &r3).len());
        }
    }

    #[test]
    fn constant_colorings_weigh_nothing() {
        let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
        let phi = qs4_example_cocycle();
        for (_, d) in all() {
            for a in 0..4 {
                let w: i64 = d.crossings().iter().map(|k| k.sign as i64 * phi.get(&[a, a])).sum();
                assert_eq!(w, 0);
            }
            assert!(colorings(&d, &qs4).len() >= 4);
        }
    }

    fn coboundary_shift(x: &FiniteQuandle, base: &Cochain, seed: u64) -> Cochain {
        let k = base.arity() - 1;
        let f = Cochain::from_fn(k, x.order(), base.modulus(), |t| {
            if t.windows(2).any(|w| w[0] == w[1]) {
                return 0;
            }
            let h = t.iter().fold(seed, |acc, &v| acc.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(v as u64 + 7));
            (h >> 40) as i64
        });
        base.add(&coboundary(x, &f))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn coboundaries_do_not_change_state_sums(seed in any::<u64>()) {
            let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
            let r3 = dihedral(3);
            let phi = qs4_example_cocycle();
            let theta = mochizuki_satoh(3).unwrap();
            let phi2 = coboundary_shift(&qs4, &phi, seed);
            let theta2 = coboundary_shift(&r3, &theta, seed);
            for d in [trefoil(), trefoil().mirror(), figure_eight()] {
                prop_assert_eq!(cocycle_invariant_2(&d, &qs4, &phi2).unwrap(), cocycle_invariant_2(&d, &qs4, &phi).unwrap());
                prop_assert_eq!(cocycle_invariant_3(&d, &r3, &theta2).unwrap(), cocycle_invariant_3(&d, &r3, &theta).unwrap());
            }
        }

        #[test]
        fn colorings_match_brute_force(s in 2usize..4, word in prop::collection::vec(-2i32..=2, 1..6), n in 2usize..6) {
            let word: Vec<i32> = word.into_iter().filter(|&g| g != 0 && (g.unsigned_abs() as usize) < s).collect();
            if let Ok(d) = KnotDiagram::braid_closure(s, &word) {
                let x = dihedral(n);
                prop_assert_eq!(colorings(&d, &x), brute_colorings(&d, &x));
            }
        }
    }
}
