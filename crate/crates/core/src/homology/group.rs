//! Finitely generated abelian groups in canonical form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

/// `ℤ^rank ⊕ ℤ_{d_1} ⊕ … ⊕ ℤ_{d_k}` with `1 < d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse abelian group from {0:?}")]
pub struct ParseGroupError(pub String);

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl FGAbelianGroup {
    /// Canonicalises any list of cyclic orders; `0` counts as a free summand
    /// and `1` is dropped.
    pub fn new(rank: usize, cyclic: impl IntoIterator<Item = u64>) -> Self {
        let mut rank = rank;
        // prime -> exponents of the primary summands
        let mut primary: Vec<(u64, Vec<u32>)> = Vec::new();
        for d in cyclic {
            if d == 0 {
                rank += 1;
                continue;
            }
            for (p, e) in factorize(d) {
                match primary.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(e),
                    None => primary.push((p, vec![e])),
                }
            }
        }
        let len = primary.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for (p, mut exps) in primary {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (k, e) in exps.into_iter().enumerate() {
                // the largest powers go to the last invariant factor
                torsion[len - 1 - k] *= p.pow(e);
            }
        }
        FGAbelianGroup { rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(0, [n])
    }

    /// The cokernel of a map `ℤ^k → ℤ^generators` with the given nonzero
    /// invariant factors.
    pub fn from_cokernel(generators: usize, diag: &[BigInt]) -> Self {
        assert!(diag.len() <= generators, "more invariant factors than generators");
        let torsion = diag
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("torsion coefficient fits in u64"));
        Self::new(generators - diag.len(), torsion)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Invariant factors, ascending.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Primary summands `(p^k, multiplicity)` in ascending order of `p^k`.
    pub fn primary_parts(&self) -> Vec<(u64, usize)> {
        let mut parts: Vec<u64> = Vec::new();
        for &d in &self.torsion {
            for (p, e) in factorize(d) {
                parts.push(p.pow(e));
            }
        }
        parts.sort_unstable();
        let mut out: Vec<(u64, usize)> = Vec::new();
        for q in parts {
            match out.last_mut() {
                Some((last, count)) if *last == q => *count += 1,
                _ => out.push((q, 1)),
            }
        }
        out
    }

    /// Number of cyclic summands of order divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        Self::new(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).copied())
    }

    /// Only the torsion subgroup.
    pub fn torsion_subgroup(&self) -> FGAbelianGroup {
        FGAbelianGroup { rank: 0, torsion: self.torsion.clone() }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, &d| acc * d)
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        for (q, k) in self.primary_parts() {
            terms.push(if k == 1 { format!("Z_{q}") } else { format!("Z_{q}^{k}") });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FromStr for FGAbelianGroup {
    type Err = ParseGroupError;

    /// Accepts sums like `Z^2 + Z_2^4 + Z_4`, with `⊕` or `+` and `ℤ` or `Z`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGroupError(s.to_string());
        let cleaned = s.replace('ℤ', "Z").replace('⊕', "+");
        let cleaned = cleaned.trim();
        if cleaned == "0" {
            return Ok(Self::trivial());
        }
        let mut rank = 0usize;
        let mut cyclic = Vec::new();
        for term in cleaned.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let rest = term.strip_prefix('Z').ok_or_else(err)?;
            let (order, mult) = match rest.split_once('^') {
                Some((o, m)) => (o, m.parse::<usize>().map_err(|_| err())?),
                None => (rest, 1),
            };
            if order.is_empty() {
                rank += mult;
            } else {
                let n: u64 = order.strip_prefix('_').ok_or_else(err)?.parse().map_err(|_| err())?;
                if n == 0 {
                    return Err(err());
                }
                cyclic.extend(std::iter::repeat(n).take(mult));
            }
        }
        Ok(Self::new(rank, cyclic))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        let g = FGAbelianGroup::new(0, [4, 2, 2, 2, 2]);
        assert_eq!(g.torsion(), [2, 2, 2, 2, 4]);
        assert_eq!(g.to_string(), "Z_2^4 + Z_4");
        let h = FGAbelianGroup::new(0, [3, 8]);
        assert_eq!(h.torsion(), [24]);
        assert_eq!(h, FGAbelianGroup::cyclic(24));
        assert_eq!(h.to_string(), "Z_3 + Z_8");
        assert_eq!(FGAbelianGroup::new(0, [6, 4]).torsion(), [2, 12]);
        assert_eq!(FGAbelianGroup::new(2, [1, 0]).to_string(), "Z^3");
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn parsing() {
        let g: FGAbelianGroup = "ℤ_4 ⊕ ℤ_2^4".parse().unwrap();
        assert_eq!(g, FGAbelianGroup::new(0, [4, 2, 2, 2, 2]));
        assert_eq!("Z + Z_3".parse::<FGAbelianGroup>().unwrap(), FGAbelianGroup::new(1, [3]));
        assert_eq!("0".parse::<FGAbelianGroup>().unwrap(), FGAbelianGroup::trivial());
        assert!("Q_3".parse::<FGAbelianGroup>().is_err());
        assert!("Z_0".parse::<FGAbelianGroup>().is_err());
    }

    proptest! {
        #[test]
        fn display_round_trips(rank in 0usize..4, cyc in prop::collection::vec(1u64..50, 0..6)) {
            let g = FGAbelianGroup::new(rank, cyc.clone());
            prop_assert_eq!(g.to_string().parse::<FGAbelianGroup>().unwrap(), g.clone());
            for w in g.torsion().windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            // order of the torsion part is preserved
            let want: u64 = cyc.iter().product();
            prop_assert_eq!(g.torsion_order(), BigInt::from(want));
        }
    }
}
