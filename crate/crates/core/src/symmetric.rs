//! Good involutions and symmetric quandles.

use std::fmt;

use crate::quandle::FiniteQuandle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionRule {
    /// `rho` must be a permutation of the right length
    Permutation,
    /// `rho(rho(a)) = a`
    Involution,
    /// `rho(a ◁ b) = rho(a) ◁ b`
    Compatible,
    /// `a ◁ rho(b) = a ◁⁻¹ b`
    Inverting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionViolation {
    pub rule: InvolutionRule,
    pub witness: Vec<usize>,
}

impl fmt::Display for InvolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at {:?}", self.rule, self.witness)
    }
}

/// A quandle with a verified good involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricQuandle {
    quandle: FiniteQuandle,
    rho: Vec<usize>,
}

impl SymmetricQuandle {
    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    pub fn is_trivial_involution(&self) -> bool {
        self.rho.iter().enumerate().all(|(i, &r)| i == r)
    }

    /// Any kei with the identity involution.
    pub fn with_identity(quandle: FiniteQuandle) -> Result<Self, Vec<InvolutionViolation>> {
        let id: Vec<usize> = (0..quandle.order()).collect();
        verify_good_involution(&quandle, &id)
    }
}

/// Checks all three conditions and reports every failing tuple. A `rho`
/// that is not a permutation is reported on its own.
pub fn verify_good_involution(x: &FiniteQuandle, rho: &[usize]) -> Result<SymmetricQuandle, Vec<InvolutionViolation>> {
    let n = x.order();
    let mut seen = vec![false; n];
    let is_perm = rho.len() == n && rho.iter().all(|&r| r < n && !std::mem::replace(&mut seen[r], true));
    if !is_perm {
        return Err(vec![InvolutionViolation { rule: InvolutionRule::Permutation, witness: rho.to_vec() }]);
    }
    let mut violations = Vec::new();
    for a in 0..n {
        if rho[rho[a]] != a {
            violations.push(InvolutionViolation { rule: InvolutionRule::Involution, witness: vec![a] });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if rho[x.op(a, b)] != x.op(rho[a], b) {
                violations.push(InvolutionViolation { rule: InvolutionRule::Compatible, witness: vec![a, b] });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if x.op(a, rho[b]) != x.inv_op(a, b) {
                violations.push(InvolutionViolation { rule: InvolutionRule::Inverting, witness: vec![a, b] });
            }
        }
    }
    if violations.is_empty() {
        Ok(SymmetricQuandle { quandle: x.clone(), rho: rho.to_vec() })
    } else {
        Err(violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alexander, dihedral};

    #[test]
    fn kei_with_identity() {
        let s = SymmetricQuandle::with_identity(dihedral(3)).unwrap();
        assert!(s.is_trivial_involution());
        // QS4 is not a kei, so the identity is not good
        let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
        let err = SymmetricQuandle::with_identity(qs4).unwrap_err();
        assert!(err.iter().all(|v| v.rule == InvolutionRule::Inverting));
    }

    #[test]
    fn transposition_on_r3_fails() {
        let err = verify_good_involution(&dihedral(3), &[1, 0, 2]).unwrap_err();
        let first = err.iter().find(|v| v.rule == InvolutionRule::Compatible).unwrap();
        let (a, b) = (first.witness[0], first.witness[1]);
        let r = [1, 0, 2];
        let x = dihedral(3);
        assert_ne!(r[x.op(a, b)], x.op(r[a], b));
    }

    #[test]
    fn not_a_permutation() {
        let err = verify_good_involution(&dihedral(3), &[0, 0, 1]).unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err[0].rule, InvolutionRule::Permutation);
    }
}
