//! Finite quandles stored as operation tables.
//!
//! Elements are always `0..n`. `table[a][b]` is `a ◁ b` and the inverse
//! table holds `a ◁⁻¹ b`, the unique `c` with `c ◁ b = a`.

use std::fmt;

use thiserror::Error;

/// One of the three quandle axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `a ◁ a = a`
    Idempotence,
    /// every column map `a ↦ a ◁ b` is a bijection
    RightInvertibility,
    /// `(a ◁ b) ◁ c = (a ◁ c) ◁ (b ◁ c)`
    SelfDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Idempotence => "I (idempotence)",
            Axiom::RightInvertibility => "II (right invertibility)",
            Axiom::SelfDistributivity => "III (self-distributivity)",
        };
        f.write_str(s)
    }
}

/// A failed axiom together with the elements that witness the failure.
///
/// Witness layouts: idempotence `[a]`; right invertibility `[a1, a2, b]`
/// with `a1 ◁ b = a2 ◁ b`; self-distributivity `[a, b, c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuandleError {
    #[error("empty operation table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range 0..{order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("{} axiom violation(s), first: {}", .0.len(), .0[0])]
    Axioms(Vec<Violation>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    order: usize,
    table: Vec<usize>,
    inv_table: Vec<usize>,
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuandle")
            .field("order", &self.order)
            .field("rows", &self.rows())
            .finish()
    }
}

/// Checks a table against the quandle axioms, reporting every violation.
pub fn verify_quandle(rows: &[Vec<usize>]) -> Result<FiniteQuandle, QuandleError> {
    let n = rows.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(QuandleError::NotSquare { row, len: r.len(), expected: n });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(QuandleError::EntryOutOfRange { row, col, value, order: n });
            }
        }
    }
    let table: Vec<usize> = rows.iter().flatten().copied().collect();
    let op = |a: usize, b: usize| table[a * n + b];

    let mut violations = Vec::new();
    for a in 0..n {
        if op(a, a) != a {
            violations.push(Violation { axiom: Axiom::Idempotence, witness: vec![a] });
        }
    }
    let mut inv_table = vec![usize::MAX; n * n];
    for b in 0..n {
        let mut preimage = vec![usize::MAX; n];
        for a in 0..n {
            let c = op(a, b);
            if preimage[c] == usize::MAX {
                preimage[c] = a;
                inv_table[c * n + b] = a;
            } else {
                violations.push(Violation {
                    axiom: Axiom::RightInvertibility,
                    witness: vec![preimage[c], a, b],
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = op(a, b);
            for c in 0..n {
                if op(ab, c) != op(op(a, c), op(b, c)) {
                    violations.push(Violation {
                        axiom: Axiom::SelfDistributivity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(FiniteQuandle { order: n, table, inv_table })
    } else {
        Err(QuandleError::Axioms(violations))
    }
}

impl FiniteQuandle {
    /// Builds a quandle from an operation given as a closure.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| op(a, b)).collect())
            .collect();
        verify_quandle(&rows)
    }

    /// The trivial quandle `a ◁ b = a`.
    pub fn trivial(order: usize) -> Self {
        Self::from_fn(order, |a, _| a).expect("trivial quandle is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a ◁ b`
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// `a ◁⁻¹ b`
    #[inline]
    pub fn inv_op(&self, a: usize, b: usize) -> usize {
        self.inv_table[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// The right translation `a ↦ a ◁ b`.
    pub fn right_translation(&self, b: usize) -> Vec<usize> {
        (0..self.order).map(|a| self.op(a, b)).collect()
    }

    /// The quandle with operation `◁⁻¹`.
    pub fn dual(&self) -> Self {
        FiniteQuandle {
            order: self.order,
            table: self.inv_table.clone(),
            inv_table: self.table.clone(),
        }
    }

    pub fn is_involutory(&self) -> bool {
        self.table == self.inv_table
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(a, b) == a))
    }

    /// Relabels elements: element `a` of `self` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.order;
        let mut inv_perm = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv_perm[p] = a;
        }
        Self::from_fn(n, |a, b| perm[self.op(inv_perm[a], inv_perm[b])])
            .expect("relabelled quandle is valid")
    }
}

/// A map between finite quandles, given by the image of each element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuandleMap {
    pub source_order: usize,
    pub target_order: usize,
    pub images: Vec<usize>,
}

impl QuandleMap {
    pub fn new(source_order: usize, target_order: usize, images: Vec<usize>) -> Self {
        assert_eq!(images.len(), source_order);
        assert!(images.iter().all(|&i| i < target_order));
        QuandleMap { source_order, target_order, images }
    }

    pub fn identity(order: usize) -> Self {
        Self::new(order, order, (0..order).collect())
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_order != self.target_order {
            return false;
        }
        let mut seen = vec![false; self.target_order];
        self.images.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        for &i in &self.images {
            seen[i] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Sizes of the preimages of each target element.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target_order];
        for &i in &self.images {
            sizes[i] += 1;
        }
        sizes
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &QuandleMap) -> QuandleMap {
        assert_eq!(self.target_order, other.source_order);
        QuandleMap::new(
            self.source_order,
            other.target_order,
            self.images.iter().map(|&i| other.images[i]).collect(),
        )
    }
}

/// True iff `f(a ◁ b) = f(a) ◁ f(b)` for all `a, b`.
pub fn check_homomorphism(f: &QuandleMap, source: &FiniteQuandle, target: &FiniteQuandle) -> bool {
    if f.source_order != source.order() || f.target_order != target.order() {
        return false;
    }
    let n = source.order();
    (0..n).all(|a| {
        (0..n).all(|b| f.apply(source.op(a, b)) == target.op(f.apply(a), f.apply(b)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral_rows(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (2 * j + n - i) % n).collect()).collect()
    }

    #[test]
    fn r3_is_a_quandle() {
        let q = verify_quandle(&dihedral_rows(3)).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.rows()[0], vec![0, 2, 1]);
    }

    #[test]
    fn qs4_table_is_a_quandle() {
        let rows = vec![vec![0, 3, 1, 2], vec![2, 1, 3, 0], vec![3, 0, 2, 1], vec![1, 2, 0, 3]];
        let q = verify_quandle(&rows).unwrap();
        assert!(!q.is_involutory());
        assert_ne!(q.dual(), q);
        assert_eq!(q.dual().dual(), q);
        // the dual is a valid table in its own right
        verify_quandle(&q.dual().rows()).unwrap();
    }

    #[test]
    fn idempotence_violation_reported() {
        let err = verify_quandle(&[vec![1, 1], vec![0, 0]]).unwrap_err();
        let QuandleError::Axioms(v) = err else { panic!("expected axiom violations") };
        assert!(v.contains(&Violation { axiom: Axiom::Idempotence, witness: vec![0] }));
        assert!(v.contains(&Violation { axiom: Axiom::Idempotence, witness: vec![1] }));
        // each column is the swap, so only idempotence fails
        assert!(v.iter().all(|x| x.axiom == Axiom::Idempotence));
    }

    #[test]
    fn format_errors_are_distinct() {
        assert_eq!(verify_quandle(&[]), Err(QuandleError::Empty));
        assert!(matches!(
            verify_quandle(&[vec![0, 2], vec![0, 1]]),
            Err(QuandleError::EntryOutOfRange { row: 0, col: 1, value: 2, .. })
        ));
        assert!(matches!(
            verify_quandle(&[vec![0, 1], vec![0]]),
            Err(QuandleError::NotSquare { row: 1, .. })
        ));
    }

    #[test]
    fn all_distributivity_failures_listed() {
        // bijective columns; the distributivity list must be exhaustive
        let rows = vec![
            vec![0, 2, 1, 0],
            vec![2, 1, 0, 1],
            vec![1, 0, 2, 3],
            vec![3, 3, 3, 2],
        ];
        match verify_quandle(&rows) {
            Err(QuandleError::Axioms(v)) => {
                let count = v.iter().filter(|x| x.axiom == Axiom::SelfDistributivity).count();
                let n = 4;
                let brute = (0..n)
                    .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
                    .filter(|&(a, b, c)| rows[rows[a][b]][c] != rows[rows[a][c]][rows[b][c]])
                    .count();
                assert_eq!(count, brute);
                assert!(count > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn involutory_checks() {
        let r5 = verify_quandle(&dihedral_rows(5)).unwrap();
        assert!(r5.is_involutory());
        assert!(FiniteQuandle::trivial(4).is_involutory());
        assert_eq!(r5.dual(), r5);
    }

    #[test]
    fn homomorphism_predicate() {
        let r5 = verify_quandle(&dihedral_rows(5)).unwrap();
        assert!(check_homomorphism(&QuandleMap::identity(5), &r5, &r5));
        // multiplication by 2 is an automorphism of R_5
        let f = QuandleMap::new(5, 5, (0..5).map(|i| 2 * i % 5).collect());
        assert!(check_homomorphism(&f, &r5, &r5));
        // a transposition is not
        let g = QuandleMap::new(5, 5, vec![1, 0, 2, 3, 4]);
        assert!(!check_homomorphism(&g, &r5, &r5));
        // constant maps into a trivial quandle are homomorphisms
        let t = FiniteQuandle::trivial(2);
        assert!(check_homomorphism(&QuandleMap::new(5, 2, vec![1; 5]), &r5, &t));
    }
}
