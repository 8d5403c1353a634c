//! Smith normal form of integer matrices, plus the same elimination over
//! `ℤ_m`.
//!
//! Large boundary matrices go through [`elementary_divisors`], which first
//! eliminates unit pivots sparsely and hands the small remainder to the
//! dense kernel. Arithmetic starts in checked `i64` and restarts in
//! `BigInt` when an overflow is detected.

pub mod dense;
mod ring;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;

pub use dense::{mat_mul, smith_dense, DenseSnf, Mat, Track};
pub use ring::{bigint_to_i64, IntBig, IntI64, Overflow, Ring, Zmod};

/// Column-compressed integer matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds a column from unsorted `(row, value)` pairs, summing repeats.
    pub fn push_column(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut col: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            assert!(r < self.rows, "row index out of range");
            match col.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => col.push((r, v)),
            }
        }
        col.retain(|e| e.1 != 0);
        self.cols.push(col);
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let mut m = SparseMatrix { rows, cols: Vec::with_capacity(columns.len()) };
        for c in columns {
            m.push_column(c);
        }
        m
    }

    pub fn from_dense(d: &[Vec<i64>]) -> Self {
        let rows = d.len();
        let ncols = d.first().map_or(0, |r| r.len());
        let columns = (0..ncols)
            .map(|j| (0..rows).filter(|&i| d[i][j] != 0).map(|i| (i, d[i][j])).collect())
            .collect();
        SparseMatrix { rows, cols: columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j].binary_search_by_key(&i, |e| e.0).map_or(0, |k| self.cols[j][k].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                d[i][j] = v;
            }
        }
        d
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i].push((j, v));
            }
        }
        SparseMatrix { rows: self.cols(), cols }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        SparseMatrix { rows: self.rows, cols }
    }

    /// Exact product in `BigInt`-free checked arithmetic; `None` on overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols(), other.rows, "inner dimensions differ");
        let mut out = SparseMatrix::zeros(self.rows, 0);
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        for col in &other.cols {
            for &(k, b) in col {
                for &(i, a) in &self.cols[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = acc[i].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let entries: Vec<(usize, i64)> = touched.iter().map(|&i| (i, acc[i])).filter(|e| e.1 != 0).collect();
            for &i in &touched {
                acc[i] = 0;
            }
            touched.clear();
            out.cols.push(entries);
        }
        Some(out)
    }

    /// Reorders rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.cols()];
        for (j, col) in self.cols.iter().enumerate() {
            let mut c: Vec<(usize, i64)> = col.iter().map(|&(i, v)| (row_perm[i], v)).collect();
            c.sort_unstable_by_key(|e| e.0);
            cols[col_perm[j]] = c;
        }
        SparseMatrix { rows: self.rows, cols }
    }
}

/// Result of a dense integer SNF.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// nonzero diagonal entries, positive, each dividing the next
    pub diag: Vec<BigInt>,
    pub u: Option<Mat<BigInt>>,
    pub u_inv: Option<Mat<BigInt>>,
    pub v: Option<Mat<BigInt>>,
    pub v_inv: Option<Mat<BigInt>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

fn lift<Q: Ring>(ring: &Q, m: Option<Mat<Q::E>>) -> Option<Mat<BigInt>> {
    m.map(|m| m.iter().map(|r| r.iter().map(|x| ring.to_bigint(x)).collect()).collect())
}

/// `U·M·V = D` with `D` diagonal in divisibility order. Signs are folded
/// into `U` (and `U⁻¹`) so the diagonal is positive.
pub fn smith_normal_form(m: &[Vec<i64>], transforms: bool) -> SmithForm {
    snf_i64_first(m.to_vec(), None, transforms)
}

/// As [`smith_normal_form`], for entries that may not fit in `i64`.
pub fn smith_normal_form_big(m: Mat<BigInt>, transforms: bool) -> SmithForm {
    let small: Option<Mat<i64>> = m.iter().map(|r| r.iter().map(bigint_to_i64).collect()).collect();
    match small {
        Some(s) => snf_i64_first(s, Some(m), transforms),
        None => snf_i64_first(Vec::new(), Some(m), transforms),
    }
}

fn snf_i64_first(m: Mat<i64>, big: Option<Mat<BigInt>>, transforms: bool) -> SmithForm {
    let track = if transforms { Track::ALL } else { Track::NONE };
    let attempt = if m.is_empty() && big.as_ref().is_some_and(|b| !b.is_empty()) {
        Err(Overflow)
    } else {
        smith_dense(&IntI64, m.clone(), track, true)
    };
    let mut form = match attempt {
        Ok(s) => SmithForm {
            diag: (0..s.rank).map(|i| BigInt::from(s.d[i][i])).collect(),
            u: lift(&IntI64, s.u),
            u_inv: lift(&IntI64, s.u_inv),
            v: lift(&IntI64, s.v),
            v_inv: lift(&IntI64, s.v_inv),
        },
        Err(Overflow) => {
            let big: Mat<BigInt> =
                big.unwrap_or_else(|| m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
            let s = smith_dense(&IntBig, big, track, true).expect("BigInt arithmetic cannot overflow");
            SmithForm {
                diag: (0..s.rank).map(|i| s.d[i][i].clone()).collect(),
                u: s.u,
                u_inv: s.u_inv,
                v: s.v,
                v_inv: s.v_inv,
            }
        }
    };
    for i in 0..form.diag.len() {
        if form.diag[i].is_negative() {
            form.diag[i] = -form.diag[i].clone();
            if let Some(u) = &mut form.u {
                for x in u[i].iter_mut() {
                    *x = -x.clone();
                }
            }
            if let Some(ui) = &mut form.u_inv {
                for row in ui.iter_mut() {
                    row[i] = -row[i].clone();
                }
            }
        }
    }
    form
}

/// Unit pivots eliminated sparsely, then the rest densely.
struct Reduced {
    units: usize,
    rest: Vec<Vec<i64>>,
}

fn sparse_unit_pass(m: &SparseMatrix) -> Result<Reduced, Overflow> {
    // row-major working copy
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); m.rows];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            rows[i].push((j, v));
        }
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (i, row) in rows.iter().enumerate() {
        for &(j, _) in row {
            col_rows[j].insert(i);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols()];
    let mut units = 0;
    let mut scratch: Vec<(usize, i64)> = Vec::new();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row_alive[i] || row.is_empty() {
                continue;
            }
            if best.is_some_and(|b| b.2 == 0) {
                break;
            }
            let rl = row.len() - 1;
            for &(j, v) in row {
                if v.unsigned_abs() != 1 {
                    continue;
                }
                let cost = rl * (col_rows[j].len() - 1);
                if best.map_or(true, |b| cost < b.2) {
                    best = Some((i, j, cost));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        let pv = pivot_row.iter().find(|e| e.0 == pj).expect("pivot present").1;
        let others: Vec<usize> = col_rows[pj].iter().copied().filter(|&r| r != pi).collect();
        for r in others {
            let a = rows[r].iter().find(|e| e.0 == pj).expect("column index in sync").1;
            // row_r -= (a / pv)·pivot_row; pv = ±1
            let q = a.checked_mul(pv).ok_or(Overflow)?;
            scratch.clear();
            let (x, y) = (&rows[r], &pivot_row);
            let (mut s, mut t) = (0, 0);
            while s < x.len() || t < y.len() {
                let take_x = t >= y.len() || (s < x.len() && x[s].0 < y[t].0);
                let take_y = s >= x.len() || (t < y.len() && y[t].0 < x[s].0);
                if take_x {
                    scratch.push(x[s]);
                    s += 1;
                } else if take_y {
                    let v = y[t].1.checked_mul(q).ok_or(Overflow)?.checked_neg().ok_or(Overflow)?;
                    scratch.push((y[t].0, v));
                    col_rows[y[t].0].insert(r);
                    t += 1;
                } else {
                    let v = x[s].1.checked_sub(y[t].1.checked_mul(q).ok_or(Overflow)?).ok_or(Overflow)?;
                    if v == 0 {
                        col_rows[x[s].0].remove(&r);
                    } else {
                        scratch.push((x[s].0, v));
                    }
                    s += 1;
                    t += 1;
                }
            }
            std::mem::swap(&mut rows[r], &mut scratch);
        }
        for &(j, _) in &pivot_row {
            col_rows[j].remove(&pi);
        }
        col_rows[pj].clear();
        row_alive[pi] = false;
        col_alive[pj] = false;
        units += 1;
    }
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&j| col_alive[j] && !col_rows[j].is_empty()).collect();
    let mut col_index = vec![usize::MAX; m.cols()];
    for (k, &j) in live_cols.iter().enumerate() {
        col_index[j] = k;
    }
    let rest: Vec<Vec<i64>> = (0..m.rows)
        .filter(|&i| row_alive[i] && !rows[i].is_empty())
        .map(|i| {
            let mut r = vec![0i64; live_cols.len()];
            for &(j, v) in &rows[i] {
                r[col_index[j]] = v;
            }
            r
        })
        .collect();
    Ok(Reduced { units, rest })
}

/// Nonzero invariant factors of `m`, positive and ascending (`d_1 | d_2 | …`).
pub fn elementary_divisors(m: &SparseMatrix) -> Vec<BigInt> {
    if m.is_zero() {
        return Vec::new();
    }
    let (units, rest) = match sparse_unit_pass(m) {
        Ok(r) => (r.units, r.rest),
        Err(Overflow) => (0, m.to_dense()),
    };
    let mut out = vec![BigInt::from(1); units];
    if !rest.is_empty() && !rest[0].is_empty() {
        out.extend(smith_normal_form(&rest, false).diag);
    }
    out
}

pub fn rank(m: &SparseMatrix) -> usize {
    elementary_divisors(m).len()
}

/// Diagonal of a `ℤ_m` elimination with transforms; entries `d_i` need not form
/// a divisibility chain, which is all the cohomology code relies on.
pub fn smith_mod(m: &[Vec<i64>], modulus: u64, track: Track) -> DenseSnf<i64> {
    let ring = Zmod::new(modulus);
    let reduced: Mat<i64> = m.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
    smith_dense(&ring, reduced, track, false).expect("modular arithmetic cannot overflow")
}
