//! Cohomology with coefficients in `ℤ_m` (or `ℤ` for `m = 0`), cocycle
//! generators, and coboundary certificates.
//!
//! Cochains are row vectors on the chain basis and `δf = f∘∂`. Over `ℤ_m`
//! we use `U·∂_{n+1}·V = D`: `f` is a cocycle iff `g = f·U⁻¹` has
//! `g_i·d_i = 0`, so the cocycles are spanned by `(m/e_i)·U_i` with
//! `e_i = gcd(d_i, m)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ChainComplex, FGAbelianGroup, HomologyError, Theory, MAX_DENSE_DIM};
use crate::cocycle::Cochain;
use crate::snf::{elementary_divisors, smith_dense, IntBig, Mat, Ring, SparseMatrix, Track, Zmod};

/// Outcome of [`is_coboundary`]; `preimage` is a cochain `g` with `δg = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryCheck {
    pub is_coboundary: bool,
    pub preimage: Option<Cochain>,
}

fn plain_point(c: &ChainComplex) -> Result<(), HomologyError> {
    if c.theory().is_symmetric() {
        return Err(HomologyError::Unsupported("cohomology is implemented for the rack and quandle theories".into()));
    }
    if c.y().len() != 1 {
        return Err(HomologyError::Unsupported("cochains are functions on X^n; Y must be a point".into()));
    }
    Ok(())
}

fn dense_guard(degree: usize, rows: usize, cols: usize) -> Result<(), HomologyError> {
    if rows > MAX_DENSE_DIM || cols > 6 * MAX_DENSE_DIM {
        return Err(HomologyError::TooLarge { degree, dim: rows.max(cols), limit: MAX_DENSE_DIM });
    }
    Ok(())
}

fn reduce_dense(m: &SparseMatrix, modulus: u64) -> Mat<i64> {
    let ring = Zmod::new(modulus);
    m.to_dense().into_iter().map(|r| r.into_iter().map(|x| ring.from_i64(x)).collect()).collect()
}

/// Invariant-factor data of `∂_{n+1}` over `ℤ_m`: the orders `e_i` of the
/// cocycle generators and the transforms.
struct ModCocycles {
    modulus: u64,
    /// `(i, e_i)` for every `i` with `e_i > 1`
    gens: Vec<(usize, u64)>,
    u: Mat<i64>,
    u_inv: Mat<i64>,
}

fn mod_cocycles(c: &ChainComplex, n: usize, m: u64) -> Result<ModCocycles, HomologyError> {
    let d_next = c.boundary_matrix(n + 1)?;
    dense_guard(n, d_next.rows(), d_next.cols())?;
    let ring = Zmod::new(m);
    let dense = reduce_dense(&d_next, m);
    let dim = d_next.rows();
    let s = if dim == 0 {
        None
    } else {
        Some(smith_dense(&ring, dense, Track { u: true, u_inv: true, v: false, v_inv: false }, false).expect("no overflow mod m"))
    };
    let (u, u_inv, diag) = match s {
        Some(s) => {
            let k = d_next.cols();
            let diag: Vec<i64> = (0..dim).map(|i| if i < k { s.d[i][i] } else { 0 }).collect();
            (s.u.unwrap(), s.u_inv.unwrap(), diag)
        }
        None => (Vec::new(), Vec::new(), Vec::new()),
    };
    let gens = diag
        .iter()
        .enumerate()
        .map(|(i, &d)| (i, ring.gcd_with_modulus(d)))
        .filter(|&(_, e)| e > 1)
        .collect();
    Ok(ModCocycles { modulus: m, gens, u, u_inv })
}

fn cochain_from_coords(c: &ChainComplex, n: usize, modulus: u64, coords: &[i64]) -> Result<Cochain, HomologyError> {
    let basis = c.basis(n)?;
    let mut f = Cochain::zero(n, c.quandle().order(), modulus);
    for (j, &v) in coords.iter().enumerate() {
        if v != 0 {
            f.set(&basis.tuple(j)[1..], v);
        }
    }
    Ok(f)
}

/// `H^n(X; ℤ_m)`; `m = 0` gives integer coefficients via universal coefficients.
pub fn cohomology(c: &ChainComplex, n: usize, m: u64) -> Result<FGAbelianGroup, HomologyError> {
    plain_point(c)?;
    if m == 1 {
        return Ok(FGAbelianGroup::trivial());
    }
    if m == 0 {
        let h_n = c.homology(n)?;
        let tors = if n == 0 { FGAbelianGroup::trivial() } else { c.homology(n - 1)?.torsion_subgroup() };
        return Ok(FGAbelianGroup::free(h_n.rank()).direct_sum(&tors));
    }
    let z = mod_cocycles(c, n, m)?;
    if z.gens.is_empty() {
        return Ok(FGAbelianGroup::trivial());
    }
    let ring = Zmod::new(m);
    // relations on the generators: e_i·n_i = 0, plus every coboundary
    let k = z.gens.len();
    let mut rel = SparseMatrix::zeros(k, 0);
    for (slot, &(_, e)) in z.gens.iter().enumerate() {
        rel.push_column(vec![(slot, e as i64)]);
    }
    if n > 0 {
        let d_n = c.boundary_matrix(n)?;
        let rows = d_n.transpose();
        // column r of the transpose is row r of ∂_n, i.e. δ of a basis dual
        for r in 0..rows.cols() {
            let b = rows.column(r);
            if b.is_empty() {
                continue;
            }
            let mut entries = Vec::new();
            for (slot, &(i, e)) in z.gens.iter().enumerate() {
                let mut g = 0i64;
                for &(j, v) in b {
                    g = ring.add(&g, &ring.mul(&ring.from_i64(v), &z.u_inv[j][i]).unwrap()).unwrap();
                }
                let q = (m / e) as i64;
                debug_assert_eq!(g % q, 0, "coboundary is a cocycle");
                let coeff = (g / q) % e as i64;
                if coeff != 0 {
                    entries.push((slot, coeff));
                }
            }
            rel.push_column(entries);
        }
    }
    Ok(FGAbelianGroup::from_cokernel(k, &elementary_divisors(&rel)))
}

/// Generators of the cocycle group `Z^n(X; ℤ_m)`, as cochains on `X^n`
/// (zero on degenerate tuples in the quandle theory).
pub fn cocycle_space(c: &ChainComplex, n: usize, m: u64) -> Result<Vec<Cochain>, HomologyError> {
    plain_point(c)?;
    if m == 1 {
        return Ok(Vec::new());
    }
    if m == 0 {
        let d_next = c.boundary_matrix(n + 1)?;
        dense_guard(n, d_next.rows(), d_next.cols())?;
        let big: Mat<BigInt> = d_next.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let dim = d_next.rows();
        if dim == 0 {
            return Ok(Vec::new());
        }
        let s = smith_dense(&IntBig, big, Track { u: true, ..Track::NONE }, false).expect("BigInt cannot overflow");
        let u = s.u.unwrap();
        return (s.rank..dim)
            .map(|i| {
                let coords: Vec<i64> = u[i].iter().map(|x| x.to_i64().expect("cocycle entry fits in i64")).collect();
                cochain_from_coords(c, n, 0, &coords)
            })
            .collect();
    }
    let z = mod_cocycles(c, n, m)?;
    let ring = Zmod::new(z.modulus);
    z.gens
        .iter()
        .map(|&(i, e)| {
            let q = ring.from_i64((m / e) as i64);
            let coords: Vec<i64> = z.u[i].iter().map(|x| ring.mul(&q, x).unwrap()).collect();
            cochain_from_coords(c, n, m, &coords)
        })
        .collect()
}

/// Solves `g·A = f` over `ring` through `U·A·V = D`.
fn solve_left<Q: Ring>(ring: &Q, a: Mat<Q::E>, rows: usize, cols: usize, f: &[Q::E]) -> Option<Vec<Q::E>> {
    if rows == 0 {
        return f.iter().all(|x| ring.is_zero(x)).then(Vec::new);
    }
    let s = smith_dense(ring, a, Track { u: true, v: true, ..Track::NONE }, false).ok()?;
    let v = s.v.unwrap();
    let u = s.u.unwrap();
    let mut h = vec![ring.zero(); rows];
    for k in 0..cols {
        let mut w = ring.zero();
        for (j, fj) in f.iter().enumerate() {
            if !ring.is_zero(fj) && !ring.is_zero(&v[j][k]) {
                w = ring.add(&w, &ring.mul(fj, &v[j][k]).ok()?).ok()?;
            }
        }
        if k >= rows || ring.is_zero(&s.d[k][k]) {
            if !ring.is_zero(&w) {
                return None;
            }
        } else if !ring.is_zero(&w) {
            h[k] = ring.div_exact(&w, &s.d[k][k])?;
        }
    }
    let mut g = vec![ring.zero(); rows];
    for (k, hk) in h.iter().enumerate() {
        if ring.is_zero(hk) {
            continue;
        }
        for (j, gj) in g.iter_mut().enumerate() {
            *gj = ring.add(gj, &ring.mul(hk, &u[k][j]).ok()?).ok()?;
        }
    }
    Some(g)
}

/// Whether `f` is `δg` for some cochain `g`, in the complex's theory and with
/// `f`'s own coefficients.
pub fn is_coboundary(c: &ChainComplex, f: &Cochain) -> Result<CoboundaryCheck, HomologyError> {
    plain_point(c)?;
    let n = f.arity();
    if f.order() != c.quandle().order() {
        return Err(HomologyError::Shape(format!("order {} vs {}", f.order(), c.quandle().order())));
    }
    let no = CoboundaryCheck { is_coboundary: false, preimage: None };
    let basis = c.basis(n)?;
    if c.theory() == Theory::Quandle {
        let mut support_ok = true;
        for (t, _) in f.support() {
            let mut full = vec![0];
            full.extend_from_slice(&t);
            support_ok &= basis.index_of(&full).is_some();
        }
        if !support_ok {
            return Ok(no);
        }
    }
    if n == 0 {
        return Ok(CoboundaryCheck { is_coboundary: f.is_zero(), preimage: None });
    }
    let coords: Vec<i64> = (0..basis.len()).map(|j| f.get(&basis.tuple(j)[1..])).collect();
    let d_n = c.boundary_matrix(n)?;
    dense_guard(n, d_n.rows(), d_n.cols())?;
    let (rows, cols) = (d_n.rows(), d_n.cols());
    let m = f.modulus();
    let g: Option<Vec<i64>> = if m == 0 {
        let a: Mat<BigInt> = d_n.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let fb: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        solve_left(&IntBig, a, rows, cols, &fb).map(|g| g.iter().map(|x| x.to_i64().expect("preimage fits in i64")).collect())
    } else {
        let ring = Zmod::new(m);
        let fz: Vec<i64> = coords.iter().map(|&x| ring.from_i64(x)).collect();
        solve_left(&ring, reduce_dense(&d_n, m), rows, cols, &fz)
    };
    match g {
        None => Ok(no),
        Some(g) => {
            let pre = cochain_from_coords(c, n - 1, m, &g)?;
            Ok(CoboundaryCheck { is_coboundary: true, preimage: Some(pre) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{coboundary, mochizuki_satoh, qs4_example_cocycle};
    use crate::constructions::{alexander, dihedral};
    use crate::homology::quandle_homology;
    use rand::{Rng, SeedableRng};

    fn qc(x: &crate::FiniteQuandle) -> ChainComplex {
        ChainComplex::new(x, Theory::Quandle).unwrap()
    }

    #[test]
    fn theta_three_is_nontrivial() {
        let r3 = dihedral(3);
        let c = qc(&r3);
        assert_eq!(cohomology(&c, 3, 3).unwrap(), FGAbelianGroup::cyclic(3));
        let theta = mochizuki_satoh(3).unwrap();
        assert!(!is_coboundary(&c, &theta).unwrap().is_coboundary);
        let gens = cocycle_space(&c, 3, 3).unwrap();
        assert!(!gens.is_empty());
        for g in &gens {
            crate::cocycle::check_3cocycle(&r3, g).unwrap();
        }
    }

    #[test]
    fn random_coboundaries_are_recognised() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let x = alexander(2, &[1, 1, 1]).unwrap().quandle;
        let c = qc(&x);
        for _ in 0..5 {
            // a quandle 1-cochain has no degeneracy condition
            let f = Cochain::from_values(1, 4, 2, (0..4).map(|_| rng.gen_range(0..2)).collect()).unwrap();
            let df = coboundary(&x, &f);
            let check = is_coboundary(&c, &df).unwrap();
            assert!(check.is_coboundary);
            assert_eq!(coboundary(&x, check.preimage.as_ref().unwrap()), df);
        }
        assert!(!is_coboundary(&c, &qs4_example_cocycle()).unwrap().is_coboundary);
    }

    #[test]
    fn integer_coboundaries() {
        let r3 = dihedral(3);
        let c = qc(&r3);
        let f = Cochain::from_fn(2, 3, 0, |t| (t[0] * 2 + t[1]) as i64 * i64::from(t[0] != t[1]));
        let df = coboundary(&r3, &f);
        let check = is_coboundary(&c, &df).unwrap();
        assert!(check.is_coboundary);
        assert_eq!(coboundary(&r3, check.preimage.as_ref().unwrap()), df);
    }

    #[test]
    fn universal_coefficients() {
        let cases = [(dihedral(3), 3u64), (dihedral(5), 5), (alexander(2, &[1, 1, 1]).unwrap().quandle, 2)];
        for (x, p) in cases {
            let c = qc(&x);
            for n in 1..=3 {
                let h_n = quandle_homology(&x, n).unwrap();
                let h_prev = if n == 1 { FGAbelianGroup::free(1) } else { quandle_homology(&x, n - 1).unwrap() };
                let want = h_n.rank() + h_n.p_rank(p) + h_prev.p_rank(p);
                let got = cohomology(&c, n, p).unwrap();
                assert_eq!(got.rank(), 0);
                assert!(got.torsion().iter().all(|&d| d == p));
                assert_eq!(got.torsion().len(), want, "n = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn integer_cohomology_via_homology() {
        let c = qc(&dihedral(3));
        // H^4 = Free(H_4) ⊕ Tors(H_3) = ℤ_3
        assert_eq!(cohomology(&c, 4, 0).unwrap(), FGAbelianGroup::cyclic(3));
        assert_eq!(cohomology(&c, 2, 7).unwrap(), FGAbelianGroup::trivial());
    }
}
