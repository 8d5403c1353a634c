//! Chain complexes of quandles with coefficients in an `X`-set `Y`, for the
//! rack and quandle theories and their symmetric variants.
//!
//! Generators of `C_n(X)_Y` are tuples `(y, x_1, …, x_n)`, stored with `y`
//! first. The quandle quotient keeps only tuples with no adjacent equal
//! `x`-entries; the symmetric quotient is carried as an explicit relations
//! matrix next to the boundary.

mod cohomology;
mod group;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::quandle::FiniteQuandle;
use crate::snf::{elementary_divisors, smith_normal_form, smith_normal_form_big, SparseMatrix};
use crate::symmetric::SymmetricQuandle;

pub use cohomology::{cocycle_space, cohomology, is_coboundary, CoboundaryCheck};
pub use group::{FGAbelianGroup, ParseGroupError};

pub const DEFAULT_MAX_DIM: usize = 60_000;
/// Largest chain group handed to the dense subquotient and cohomology code.
pub const MAX_DENSE_DIM: usize = 5_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    Rack,
    Quandle,
    RackRho,
    QuandleRho,
}

impl Theory {
    pub fn is_symmetric(self) -> bool {
        matches!(self, Theory::RackRho | Theory::QuandleRho)
    }

    pub fn drops_degenerate(self) -> bool {
        matches!(self, Theory::Quandle | Theory::QuandleRho)
    }

    pub const ALL: [Theory; 4] = [Theory::Rack, Theory::Quandle, Theory::RackRho, Theory::QuandleRho];
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Rack => "rack",
            Theory::Quandle => "quandle",
            Theory::RackRho => "rack-rho",
            Theory::QuandleRho => "quandle-rho",
        })
    }
}

impl FromStr for Theory {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rack" | "R" => Ok(Theory::Rack),
            "quandle" | "Q" => Ok(Theory::Quandle),
            "rack-rho" | "Rrho" => Ok(Theory::RackRho),
            "quandle-rho" | "Qrho" => Ok(Theory::QuandleRho),
            _ => Err(HomologyError::UnknownTheory(s.to_string())),
        }
    }
}

/// Which positions `i` produce symmetric relations in degree `n`. Only
/// `All` gives a subcomplex; `AllButLast` is kept to demonstrate that.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RhoRange {
    /// `i ∈ {1, …, n−1}`
    AllButLast,
    /// `i ∈ {1, …, n}`
    #[default]
    All,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the {0} theory needs a good involution")]
    MissingRho(Theory),
    #[error("unknown theory {0:?}")]
    UnknownTheory(String),
    #[error("degree {degree} needs a basis of {dim} tuples, above the limit {limit}")]
    TooLarge { degree: usize, dim: usize, limit: usize },
    #[error("invalid action on Y: {0}")]
    BadAction(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("cochain does not match the complex: {0}")]
    Shape(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
}

/// A right action of the quandle on a finite set, `action[y][x] = y·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSet {
    action: Vec<Vec<usize>>,
}

impl YSet {
    pub fn point(quandle_order: usize) -> Self {
        YSet { action: vec![vec![0; quandle_order]] }
    }

    /// Checks that every `y ↦ y·x` is a bijection and that
    /// `(y·x)·z = (y·z)·(x◁z)`; with `rho`, also `(y·ρ(x))·x = y`.
    pub fn new(x: &FiniteQuandle, rho: Option<&[usize]>, action: Vec<Vec<usize>>) -> Result<Self, HomologyError> {
        let n = x.order();
        let m = action.len();
        if m == 0 {
            return Err(HomologyError::BadAction("Y is empty".into()));
        }
        if let Some(row) = action.iter().find(|r| r.len() != n || r.iter().any(|&v| v >= m)) {
            return Err(HomologyError::BadAction(format!("row {row:?} has the wrong shape")));
        }
        for a in 0..n {
            let mut seen = vec![false; m];
            for row in &action {
                if std::mem::replace(&mut seen[row[a]], true) {
                    return Err(HomologyError::BadAction(format!("y ↦ y·{a} is not a bijection")));
                }
            }
        }
        for y in 0..m {
            for a in 0..n {
                for b in 0..n {
                    if action[action[y][a]][b] != action[action[y][b]][x.op(a, b)] {
                        return Err(HomologyError::BadAction(format!("({y}·{a})·{b} ≠ ({y}·{b})·({a}◁{b})")));
                    }
                }
                if let Some(rho) = rho {
                    if action[action[y][rho[a]]][a] != y {
                        return Err(HomologyError::BadAction(format!("{y}·ρ({a}) is not {y}·{a}⁻¹")));
                    }
                }
            }
        }
        Ok(YSet { action })
    }

    /// `Y = X` acting on itself by `◁`.
    pub fn regular(x: &FiniteQuandle) -> Self {
        YSet { action: x.rows() }
    }

    pub fn len(&self) -> usize {
        self.action.len()
    }

    pub fn is_empty(&self) -> bool {
        self.action.is_empty()
    }

    #[inline]
    pub fn act(&self, y: usize, x: usize) -> usize {
        self.action[y][x]
    }
}

/// Ordered generators of one chain group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    degree: usize,
    order: usize,
    y_len: usize,
    /// codes of the nondegenerate tuples; `None` means every tuple
    codes: Option<Vec<u64>>,
}

impl Basis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        match &self.codes {
            Some(c) => c.len(),
            None => self.y_len * self.order.pow(self.degree as u32),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn encode(&self, t: &[usize]) -> u64 {
        t.iter().fold(0u64, |acc, &v| acc * self.order as u64 + v as u64)
    }

    /// `(y, x_1, …, x_n)` for generator `i`.
    pub fn tuple(&self, i: usize) -> Vec<usize> {
        let mut code = match &self.codes {
            Some(c) => c[i],
            None => i as u64,
        };
        let mut t = vec![0usize; self.degree + 1];
        for slot in (1..=self.degree).rev() {
            t[slot] = (code % self.order as u64) as usize;
            code /= self.order as u64;
        }
        t[0] = code as usize;
        t
    }

    /// Position of a tuple, or `None` if it is degenerate in this basis.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        let code = self.encode(t);
        match &self.codes {
            None => Some(code as usize),
            Some(c) => c.binary_search(&code).ok(),
        }
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|i| self.tuple(i)).collect()
    }
}

/// The part of a complex around degree `n`.
#[derive(Clone, Debug)]
pub struct ChainComplexSlice {
    pub theory: Theory,
    pub degree: usize,
    pub basis_prev: Basis,
    pub basis: Basis,
    pub basis_next: Basis,
    /// `∂_n : C_n → C_{n−1}`, one column per generator of `C_n`
    pub d_n: SparseMatrix,
    pub d_next: SparseMatrix,
    /// generators of the symmetric relations in degrees `n−1` and `n`
    /// (zero columns for the non-symmetric theories)
    pub relations_prev: SparseMatrix,
    pub relations: SparseMatrix,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    quandle: FiniteQuandle,
    rho: Option<Vec<usize>>,
    y: YSet,
    theory: Theory,
    rho_range: RhoRange,
    max_dim: usize,
}

impl ChainComplex {
    pub fn new(x: &FiniteQuandle, theory: Theory) -> Result<Self, HomologyError> {
        if theory.is_symmetric() {
            return Err(HomologyError::MissingRho(theory));
        }
        Ok(ChainComplex {
            quandle: x.clone(),
            rho: None,
            y: YSet::point(x.order()),
            theory,
            rho_range: RhoRange::default(),
            max_dim: DEFAULT_MAX_DIM,
        })
    }

    pub fn symmetric(s: &SymmetricQuandle, theory: Theory) -> Self {
        ChainComplex {
            quandle: s.quandle().clone(),
            rho: Some(s.rho().to_vec()),
            y: YSet::point(s.quandle().order()),
            theory,
            rho_range: RhoRange::default(),
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    pub fn with_y(mut self, y: YSet) -> Result<Self, HomologyError> {
        let y = YSet::new(&self.quandle, self.rho.as_deref(), y.action)?;
        self.y = y;
        Ok(self)
    }

    pub fn with_rho_range(mut self, range: RhoRange) -> Self {
        self.rho_range = range;
        self
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn y(&self) -> &YSet {
        &self.y
    }

    /// Dimension of the chain group in degree `n` without building it.
    pub fn basis_len(&self, n: usize) -> Option<usize> {
        let q = self.quandle.order();
        let y = self.y.len();
        if n == 0 {
            return Some(y);
        }
        let per = if self.theory.drops_degenerate() {
            q.checked_mul(q.saturating_sub(1).checked_pow(n as u32 - 1)?)?
        } else {
            q.checked_pow(n as u32)?
        };
        y.checked_mul(per)
    }

    pub fn basis(&self, n: usize) -> Result<Basis, HomologyError> {
        let dim = self.basis_len(n).unwrap_or(usize::MAX);
        if dim > self.max_dim {
            return Err(HomologyError::TooLarge { degree: n, dim, limit: self.max_dim });
        }
        let order = self.quandle.order();
        let codes = self.theory.drops_degenerate().then(|| {
            let mut out = Vec::with_capacity(dim);
            let mut t = vec![0usize; n + 1];
            enumerate_nondegenerate(&mut t, 0, order, self.y.len(), &mut out);
            out
        });
        Ok(Basis { degree: n, order, y_len: self.y.len(), codes })
    }

    fn boundary_column(&self, t: &[usize], target: &Basis, out: &mut Vec<(usize, i64)>) {
        let n = t.len() - 1;
        out.clear();
        let mut face = Vec::with_capacity(n);
        for i in 1..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            face.clear();
            face.extend_from_slice(&t[..i]);
            face.extend_from_slice(&t[i + 1..]);
            if let Some(k) = target.index_of(&face) {
                out.push((k, sign));
            }
            face.clear();
            face.push(self.y.act(t[0], t[i]));
            face.extend(t[1..i].iter().map(|&a| self.quandle.op(a, t[i])));
            face.extend_from_slice(&t[i + 1..]);
            if let Some(k) = target.index_of(&face) {
                out.push((k, -sign));
            }
        }
    }

    fn boundary_between(&self, source: &Basis, target: &Basis) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(target.len(), 0);
        let mut col = Vec::new();
        for j in 0..source.len() {
            self.boundary_column(&source.tuple(j), target, &mut col);
            m.push_column(col.clone());
        }
        m
    }

    /// `∂_n` on the chosen bases; `∂_0 = 0`.
    pub fn boundary_matrix(&self, n: usize) -> Result<SparseMatrix, HomologyError> {
        let source = self.basis(n)?;
        if n == 0 {
            return Ok(SparseMatrix::zeros(0, source.len()));
        }
        let target = self.basis(n - 1)?;
        Ok(self.boundary_between(&source, &target))
    }

    /// The symmetric partner `(y·x_i, x_1◁x_i, …, x_{i−1}◁x_i, ρ(x_i), x_{i+1}, …)`,
    /// with `i` counted from 1.
    fn rho_partner(&self, t: &[usize], i: usize) -> Vec<usize> {
        let rho = self.rho.as_ref().expect("symmetric theory has rho");
        let mut p = Vec::with_capacity(t.len());
        p.push(self.y.act(t[0], t[i]));
        p.extend(t[1..i].iter().map(|&a| self.quandle.op(a, t[i])));
        p.push(rho[t[i]]);
        p.extend_from_slice(&t[i + 1..]);
        p
    }

    fn rho_positions(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self.rho_range {
            RhoRange::AllButLast => 1..=n.saturating_sub(1),
            RhoRange::All => 1..=n,
        }
    }

    /// Columns spanning the image of `D^ρ_n` in the degree-`n` basis, with
    /// duplicates and zero columns removed. Empty for the plain theories.
    pub fn relations(&self, n: usize) -> Result<SparseMatrix, HomologyError> {
        let basis = self.basis(n)?;
        self.relations_in(&basis)
    }

    fn relations_in(&self, basis: &Basis) -> Result<SparseMatrix, HomologyError> {
        let n = basis.degree;
        if !self.theory.is_symmetric() || n == 0 {
            return Ok(SparseMatrix::zeros(basis.len(), 0));
        }
        let full_dim = self.y.len().checked_mul(self.quandle.order().pow(n as u32)).unwrap_or(usize::MAX);
        if full_dim > self.max_dim {
            return Err(HomologyError::TooLarge { degree: n, dim: full_dim, limit: self.max_dim });
        }
        let full = Basis { degree: n, order: self.quandle.order(), y_len: self.y.len(), codes: None };
        let mut columns: Vec<Vec<(usize, i64)>> = Vec::new();
        for j in 0..full.len() {
            let t = full.tuple(j);
            for i in self.rho_positions(n) {
                let p = self.rho_partner(&t, i);
                let mut col: Vec<(usize, i64)> = Vec::with_capacity(2);
                for u in [&t, &p] {
                    if let Some(k) = basis.index_of(u) {
                        match col.iter_mut().find(|e| e.0 == k) {
                            Some(e) => e.1 += 1,
                            None => col.push((k, 1)),
                        }
                    }
                }
                col.sort_unstable();
                if !col.is_empty() {
                    columns.push(col);
                }
            }
        }
        columns.sort();
        columns.dedup();
        Ok(SparseMatrix::from_columns(basis.len(), columns))
    }

    pub fn slice(&self, n: usize) -> Result<ChainComplexSlice, HomologyError> {
        let basis = self.basis(n)?;
        let basis_next = self.basis(n + 1)?;
        let basis_prev = if n == 0 {
            Basis { degree: 0, order: self.quandle.order(), y_len: 0, codes: Some(Vec::new()) }
        } else {
            self.basis(n - 1)?
        };
        let d_n = if n == 0 { SparseMatrix::zeros(0, basis.len()) } else { self.boundary_between(&basis, &basis_prev) };
        let d_next = self.boundary_between(&basis_next, &basis);
        let relations_prev =
            if n == 0 { SparseMatrix::zeros(0, 0) } else { self.relations_in(&basis_prev)? };
        let relations = self.relations_in(&basis)?;
        Ok(ChainComplexSlice {
            theory: self.theory,
            degree: n,
            basis_prev,
            basis,
            basis_next,
            d_n,
            d_next,
            relations_prev,
            relations,
        })
    }

    /// `H_n = ker ∂_n / im ∂_{n+1}` of the chosen theory.
    pub fn homology(&self, n: usize) -> Result<FGAbelianGroup, HomologyError> {
        let s = self.slice(n)?;
        if self.theory.is_symmetric() {
            // D_n must map into D_{n−1} for the quotient to be a complex
            verify_slice(&s).map_err(HomologyError::NotAComplex)?;
            subquotient_homology(&s.d_n, &s.relations_prev, &s.d_next, &s.relations)
        } else {
            Ok(homology_from_boundaries(&s.d_n, &s.d_next))
        }
    }
}

fn enumerate_nondegenerate(t: &mut [usize], slot: usize, order: usize, y_len: usize, out: &mut Vec<u64>) {
    // lexicographic order keeps the codes sorted
    if slot == t.len() {
        out.push(t.iter().fold(0u64, |acc, &w| acc * order as u64 + w as u64));
        return;
    }
    let range = if slot == 0 { y_len } else { order };
    for v in 0..range {
        if slot >= 2 && t[slot - 1] == v {
            continue;
        }
        t[slot] = v;
        enumerate_nondegenerate(t, slot + 1, order, y_len, out);
    }
}

/// `ker d_n / im d_next` for a complex of free modules.
pub fn homology_from_boundaries(d_n: &SparseMatrix, d_next: &SparseMatrix) -> FGAbelianGroup {
    let dim = d_n.cols();
    let rank_n = if d_n.rows() == 0 { 0 } else { elementary_divisors(d_n).len() };
    let divisors = elementary_divisors(d_next);
    FGAbelianGroup::from_cokernel(dim - rank_n, &divisors)
}

/// Homology of `C/D` where `D` is a subcomplex given by spanning columns in
/// each degree: `{c : ∂c ∈ D_{n−1}} / (im ∂_{n+1} + D_n)`.
pub fn subquotient_homology(
    d_n: &SparseMatrix,
    rel_prev: &SparseMatrix,
    d_next: &SparseMatrix,
    rel: &SparseMatrix,
) -> Result<FGAbelianGroup, HomologyError> {
    let dim = d_n.cols();
    if dim > MAX_DENSE_DIM || d_n.rows() > MAX_DENSE_DIM {
        return Err(HomologyError::TooLarge { degree: 0, dim: dim.max(d_n.rows()), limit: MAX_DENSE_DIM });
    }
    if dim == 0 {
        return Ok(FGAbelianGroup::trivial());
    }
    // cycles relative to D_{n−1}: kernel of [∂_n | R_{n−1}], projected to C_n
    let cycles: Vec<Vec<BigInt>> = if d_n.rows() == 0 {
        (0..dim).map(|i| (0..dim).map(|j| BigInt::from(i64::from(i == j))).collect()).collect()
    } else {
        let a = d_n.hcat(rel_prev).to_dense();
        let s = smith_normal_form(&a, true);
        let r = s.rank();
        let v = s.v.expect("transforms requested");
        (0..dim).map(|i| v[i][r..].to_vec()).collect()
    };
    let kcols = cycles.first().map_or(0, |r| r.len());
    if kcols == 0 {
        return Ok(FGAbelianGroup::trivial());
    }
    // lattice basis z_i = d_i · U⁻¹ e_i of the cycle lattice
    let s = smith_normal_form_big(cycles, true);
    let rank = s.rank();
    let u = s.u.clone().expect("transforms requested");
    // express each boundary or relation w as Σ c_i z_i: c_i = (U w)_i / d_i
    let rhs = d_next.hcat(rel);
    let mut coeffs: Vec<Vec<BigInt>> = vec![Vec::with_capacity(rhs.cols()); rank];
    for j in 0..rhs.cols() {
        let col = rhs.column(j);
        for i in 0..rank {
            let mut acc = BigInt::zero();
            for &(k, w) in col {
                acc += &u[i][k] * w;
            }
            debug_assert!((&acc % &s.diag[i]).is_zero(), "boundary outside the cycle lattice");
            coeffs[i].push(acc / &s.diag[i]);
        }
    }
    if rhs.cols() == 0 {
        return Ok(FGAbelianGroup::free(rank));
    }
    let c = smith_normal_form_big(coeffs, false);
    Ok(FGAbelianGroup::from_cokernel(rank, &c.diag))
}

/// Checks `∂_n ∂_{n+1} = 0` and, for symmetric theories, that the
/// relations of degree `n` are carried into those of degree `n − 1`.
pub fn verify_slice(s: &ChainComplexSlice) -> Result<(), String> {
    if s.degree > 0 {
        let prod = s.d_n.mul(&s.d_next).ok_or("overflow in ∂∂")?;
        if !prod.is_zero() {
            return Err(format!("∂_{}∂_{} ≠ 0", s.degree, s.degree + 1));
        }
    }
    if s.relations.cols() > 0 && s.degree > 0 {
        let image = s.d_n.mul(&s.relations).ok_or("overflow in ∂R")?;
        if !lattice_contains(&s.relations_prev, &image) {
            return Err(format!("∂ of a degree-{} relation leaves D_{}", s.degree, s.degree - 1));
        }
    }
    Ok(())
}

/// Whether every column of `w` is an integer combination of columns of `span`.
pub fn lattice_contains(span: &SparseMatrix, w: &SparseMatrix) -> bool {
    if w.is_zero() {
        return true;
    }
    if span.cols() == 0 {
        return false;
    }
    let s = smith_normal_form(&span.to_dense(), true);
    let rank = s.rank();
    let u = s.u.clone().expect("transforms requested");
    (0..w.cols()).all(|j| {
        let col = w.column(j);
        (0..span.rows()).all(|i| {
            let mut acc = BigInt::zero();
            for &(k, x) in col {
                acc += &u[i][k] * x;
            }
            if i < rank { (&acc % &s.diag[i]).is_zero() } else { acc.is_zero() }
        })
    })
}

/// `H_n^Q(X)` with a one-point `Y`.
pub fn quandle_homology(x: &FiniteQuandle, n: usize) -> Result<FGAbelianGroup, HomologyError> {
    ChainComplex::new(x, Theory::Quandle)?.homology(n)
}
