//! Finite groups materialised as multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty group table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("closure exceeded {0} elements")]
    TooLarge(usize),
    #[error("{0} labels given for a group of order {1}")]
    LabelCount(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a multiplication table. Associativity is checked
    /// exhaustively up to order 64 and on a deterministic sample beyond.
    pub fn from_table(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let m = rows.len();
        if m == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != m {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: m });
            }
            if let Some(col) = r.iter().position(|&v| v >= m) {
                return Err(GroupError::EntryOutOfRange { row, col, value: r[col] });
            }
        }
        if let Some(l) = &labels {
            if l.len() != m {
                return Err(GroupError::LabelCount(l.len(), m));
            }
        }
        let mult: Vec<u32> = rows.iter().flatten().map(|&v| v as u32).collect();
        let at = |a: usize, b: usize| mult[a * m + b] as usize;
        let identity = (0..m)
            .find(|&e| (0..m).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0u32; m];
        for a in 0..m {
            let b = (0..m)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NoInverse(a))?;
            inv[a] = b as u32;
        }
        let check = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if m <= 64 {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if !check(a, b, c) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            // linear congruential sample, fixed seed
            let mut state: u64 = 0x2545_f491_4f6c_dd1d;
            for _ in 0..200_000 {
                let mut next = || {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) as usize) % m
                };
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        Ok(FiniteGroup { order: m, mult, inv, identity, labels })
    }

    /// Closes `generators` under multiplication. Elements are listed in
    /// ascending `Ord` order, which fixes the index of every element.
    pub fn closure<T, F>(generators: &[T], identity: T, mul: F, max_elements: usize) -> Result<(Self, Vec<T>), GroupError>
    where
        T: Clone + Eq + Hash + Ord,
        F: Fn(&T, &T) -> T,
    {
        let mut seen: HashMap<T, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = mul(&x, g);
                if !seen.contains_key(&y) {
                    if seen.len() >= max_elements {
                        return Err(GroupError::TooLarge(max_elements));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<T> = seen.into_keys().collect();
        elements.sort();
        Ok((Self::from_elements(&elements, &identity, mul), elements))
    }

    /// Builds the table of a list of elements already closed under `mul`.
    pub fn from_elements<T, F>(elements: &[T], identity: &T, mul: F) -> Self
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let m = elements.len();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut mult = vec![0u32; m * m];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mult[i * m + j] = index[&mul(a, b)] as u32;
            }
        }
        let id = index[identity];
        let mut inv = vec![0u32; m];
        for a in 0..m {
            let row = &mult[a * m..(a + 1) * m];
            let b = row.iter().position(|&v| v as usize == id).expect("closed set is a group");
            inv[a] = b as u32;
        }
        FiniteGroup { order: m, mult, inv, identity: id, labels: None }
    }

    /// Permutation group with left-to-right products: `(pq)(x) = q(p(x))`.
    pub fn from_permutations(elements: &[Vec<usize>]) -> Self {
        let degree = elements.first().map_or(0, |p| p.len());
        let id: Vec<usize> = (0..degree).collect();
        let mut g = Self::from_elements(elements, &id, |p, q| p.iter().map(|&x| q[x]).collect());
        g.labels = Some(elements.iter().map(|p| format_cycles(p)).collect());
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = self.identity;
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    /// `b⁻¹ a b`
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &x in h {
            inside[x] = true;
        }
        inside[self.identity] && h.iter().all(|&a| h.iter().all(|&b| inside[self.mul(a, self.inv(b))]))
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order).filter(|&c| self.commutes(a, c)).collect()
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(a, g)).collect();
        class.sort_unstable();
        class.dedup();
        class
    }

    /// Right cosets `Hg`. Returns the coset index of every element and the
    /// least element of each coset, cosets ordered by that representative.
    pub fn right_cosets(&self, h: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &x in h {
                coset_of[self.mul(x, g)] = id;
            }
        }
        (coset_of, reps)
    }

    /// Checks that `s` (as a map on element indices) is an automorphism.
    pub fn is_automorphism(&self, s: &[usize]) -> bool {
        if s.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        if !s.iter().all(|&x| x < self.order && !std::mem::replace(&mut seen[x], true)) {
            return false;
        }
        (0..self.order).all(|a| (0..self.order).all(|b| s[self.mul(a, b)] == self.mul(s[a], s[b])))
    }
}

/// Cycle notation on 1-based points, e.g. `(1,2,3)(4,5)`; `()` for identity.
pub fn format_cycles(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut c = s;
        let mut parts = Vec::new();
        while !seen[c] {
            seen[c] = true;
            parts.push((c + 1).to_string());
            c = p[c];
        }
        out.push('(');
        out.push_str(&parts.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses cycle notation on points `1..=degree`. Points may be separated by
/// commas or spaces; a cycle of single digits may also be run together,
/// as in `(1234)`.
pub fn parse_cycles(text: &str, degree: usize) -> Option<Vec<usize>> {
    let mut p: Vec<usize> = (0..degree).collect();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(')?;
        let close = open.find(')')?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let points: Vec<usize> = if body.contains(',') || body.contains(' ') {
            body.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| s.parse().ok()).collect::<Option<_>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
        };
        if points.iter().any(|&x| x == 0 || x > degree) {
            return None;
        }
        // apply this cycle after what came before (left-to-right)
        let mut cyc: Vec<usize> = (0..degree).collect();
        for w in 0..points.len() {
            cyc[points[w] - 1] = points[(w + 1) % points.len()] - 1;
        }
        p = p.iter().map(|&x| cyc[x]).collect();
    }
    Some(p)
}

/// The symmetric group on `degree` points, with its elements.
pub fn symmetric_group(degree: usize) -> (FiniteGroup, Vec<Vec<usize>>) {
    let mut gens = Vec::new();
    if degree > 1 {
        let mut t: Vec<usize> = (0..degree).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..degree).map(|i| (i + 1) % degree).collect());
    }
    let id: Vec<usize> = (0..degree).collect();
    let (g, elems) = FiniteGroup::closure(&gens, id, |p, q| p.iter().map(|&x| q[x]).collect(), usize::MAX)
        .expect("unbounded closure");
    let labels = elems.iter().map(|p| format_cycles(p)).collect();
    (g.with_labels(labels), elems)
}

/// The alternating group on `degree` points.
pub fn alternating_group(degree: usize) -> (FiniteGroup, Vec<Vec<usize>>) {
    let gens: Vec<Vec<usize>> = (2..degree)
        .map(|k| {
            let mut p: Vec<usize> = (0..degree).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    let id: Vec<usize> = (0..degree).collect();
    let (g, elems) = FiniteGroup::closure(&gens, id, |p, q| p.iter().map(|&x| q[x]).collect(), usize::MAX)
        .expect("unbounded closure");
    let labels = elems.iter().map(|p| format_cycles(p)).collect();
    (g.with_labels(labels), elems)
}
