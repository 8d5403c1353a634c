//! Dense Smith normal form over any [`Ring`], optionally tracking the
//! unimodular transforms `U`, `U⁻¹`, `V`, `V⁻¹` with `U·M·V = D`.

use super::ring::{Ring, R};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
}

pub type Mat<E> = Vec<Vec<E>>;

#[derive(Clone, Debug)]
pub struct DenseSnf<E> {
    /// the reduced matrix, diagonal after the call
    pub d: Mat<E>,
    pub rank: usize,
    pub u: Option<Mat<E>>,
    pub u_inv: Option<Mat<E>>,
    pub v: Option<Mat<E>>,
    pub v_inv: Option<Mat<E>>,
}

fn identity<Q: Ring>(ring: &Q, n: usize) -> Mat<Q::E> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

struct State<'a, Q: Ring> {
    ring: &'a Q,
    a: Mat<Q::E>,
    u: Option<Mat<Q::E>>,
    u_inv: Option<Mat<Q::E>>,
    v: Option<Mat<Q::E>>,
    v_inv: Option<Mat<Q::E>>,
}

/// Replaces rows `i, j` of `m` by `[[a, b], [c, d]]·(row_i, row_j)`.
fn rows_pair<Q: Ring>(ring: &Q, m: &mut Mat<Q::E>, i: usize, j: usize, k: &[Q::E; 4], from: usize) -> R<()> {
    let cols = m[i].len();
    for col in from..cols {
        let (x, y) = (m[i][col].clone(), m[j][col].clone());
        if ring.is_zero(&x) && ring.is_zero(&y) {
            continue;
        }
        m[i][col] = ring.add(&ring.mul(&k[0], &x)?, &ring.mul(&k[1], &y)?)?;
        m[j][col] = ring.add(&ring.mul(&k[2], &x)?, &ring.mul(&k[3], &y)?)?;
    }
    Ok(())
}

/// Replaces columns `i, j` of `m` by `a·c_i + b·c_j` and `c·c_i + d·c_j`.
fn cols_pair<Q: Ring>(ring: &Q, m: &mut Mat<Q::E>, i: usize, j: usize, k: &[Q::E; 4], from: usize) -> R<()> {
    for row in m.iter_mut().skip(from) {
        let (x, y) = (row[i].clone(), row[j].clone());
        if ring.is_zero(&x) && ring.is_zero(&y) {
            continue;
        }
        row[i] = ring.add(&ring.mul(&k[0], &x)?, &ring.mul(&k[1], &y)?)?;
        row[j] = ring.add(&ring.mul(&k[2], &x)?, &ring.mul(&k[3], &y)?)?;
    }
    Ok(())
}

/// `row_j += q·row_i`
fn row_axpy<Q: Ring>(ring: &Q, m: &mut Mat<Q::E>, j: usize, i: usize, q: &Q::E, from: usize) -> R<()> {
    let cols = m[i].len();
    for col in from..cols {
        if ring.is_zero(&m[i][col]) {
            continue;
        }
        let t = ring.mul(q, &m[i][col])?;
        m[j][col] = ring.add(&m[j][col], &t)?;
    }
    Ok(())
}

/// `col_j += q·col_i`
fn col_axpy<Q: Ring>(ring: &Q, m: &mut Mat<Q::E>, j: usize, i: usize, q: &Q::E, from: usize) -> R<()> {
    for row in m.iter_mut().skip(from) {
        if ring.is_zero(&row[i]) {
            continue;
        }
        let t = ring.mul(q, &row[i])?;
        row[j] = ring.add(&row[j], &t)?;
    }
    Ok(())
}

impl<'a, Q: Ring> State<'a, Q> {
    /// Row operation with pair matrix `k` (determinant ±1) and `kit = (k⁻¹)ᵀ`.
    fn row_op(&mut self, i: usize, j: usize, k: &[Q::E; 4], kit: &[Q::E; 4], from: usize) -> R<()> {
        rows_pair(self.ring, &mut self.a, i, j, k, from)?;
        if let Some(u) = &mut self.u {
            rows_pair(self.ring, u, i, j, k, 0)?;
        }
        if let Some(ui) = &mut self.u_inv {
            cols_pair(self.ring, ui, i, j, kit, 0)?;
        }
        Ok(())
    }

    fn col_op(&mut self, i: usize, j: usize, k: &[Q::E; 4], kit: &[Q::E; 4], from: usize) -> R<()> {
        cols_pair(self.ring, &mut self.a, i, j, k, from)?;
        if let Some(v) = &mut self.v {
            cols_pair(self.ring, v, i, j, k, 0)?;
        }
        if let Some(vi) = &mut self.v_inv {
            rows_pair(self.ring, vi, i, j, kit, 0)?;
        }
        Ok(())
    }

    /// `row_j += q·row_i`
    fn row_add(&mut self, j: usize, i: usize, q: &Q::E, from: usize) -> R<()> {
        let r = self.ring;
        row_axpy(r, &mut self.a, j, i, q, from)?;
        if let Some(u) = &mut self.u {
            row_axpy(r, u, j, i, q, 0)?;
        }
        if let Some(ui) = &mut self.u_inv {
            // E⁻¹ has −q at (j, i): col_i −= q·col_j
            col_axpy(r, ui, i, j, &r.neg(q)?, 0)?;
        }
        Ok(())
    }

    /// `col_j += q·col_i`
    fn col_add(&mut self, j: usize, i: usize, q: &Q::E, from: usize) -> R<()> {
        let r = self.ring;
        col_axpy(r, &mut self.a, j, i, q, from)?;
        if let Some(v) = &mut self.v {
            col_axpy(r, v, j, i, q, 0)?;
        }
        if let Some(vi) = &mut self.v_inv {
            row_axpy(r, vi, i, j, &r.neg(q)?, 0)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    /// Clears row and column `t` below and right of the pivot.
    fn clear(&mut self, t: usize) -> R<()> {
        let r = self.ring;
        let (rows, cols) = (self.a.len(), self.a[0].len());
        loop {
            for i in t + 1..rows {
                if r.is_zero(&self.a[i][t]) {
                    continue;
                }
                let p = self.a[t][t].clone();
                if let Some(q) = r.div_exact(&self.a[i][t], &p) {
                    self.row_add(i, t, &r.neg(&q)?, t)?;
                } else {
                    let (_, s, tt, ag, bg) = r.bezout(&p, &self.a[i][t])?;
                    let k = [s.clone(), tt.clone(), r.neg(&bg)?, ag.clone()];
                    let kit = [ag, bg, r.neg(&tt)?, s];
                    self.row_op(t, i, &k, &kit, t)?;
                }
            }
            for j in t + 1..cols {
                if r.is_zero(&self.a[t][j]) {
                    continue;
                }
                let p = self.a[t][t].clone();
                if let Some(q) = r.div_exact(&self.a[t][j], &p) {
                    self.col_add(j, t, &r.neg(&q)?, t)?;
                } else {
                    let (_, s, tt, ag, bg) = r.bezout(&p, &self.a[t][j])?;
                    let k = [s.clone(), tt.clone(), r.neg(&bg)?, ag.clone()];
                    let kit = [ag, bg, r.neg(&tt)?, s];
                    self.col_op(t, j, &k, &kit, t)?;
                }
            }
            // column clearing can refill column t; each Bezout step shrinks the pivot
            if (t + 1..rows).all(|i| r.is_zero(&self.a[i][t])) {
                return Ok(());
            }
        }
    }
}

/// Diagonalises `m` in place. With `chain`, the diagonal also satisfies
/// `d_1 | d_2 | …` (meaningful over `ℤ`).
pub fn smith_dense<Q: Ring>(ring: &Q, m: Mat<Q::E>, track: Track, chain: bool) -> R<DenseSnf<Q::E>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut st = State {
        ring,
        u: track.u.then(|| identity(ring, rows)),
        u_inv: track.u_inv.then(|| identity(ring, rows)),
        v: track.v.then(|| identity(ring, cols)),
        v_inv: track.v_inv.then(|| identity(ring, cols)),
        a: m,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                let x = &st.a[i][j];
                if ring.is_zero(x) {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => ring.cmp_norm(x, &st.a[bi][bj]).is_lt(),
                };
                if better {
                    best = Some((i, j));
                    if ring.is_unit(x) {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            st.clear(t)?;
            if !chain {
                break;
            }
            let p = st.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| ring.div_exact(&st.a[i][j], &p).is_none()));
            match bad {
                Some(i) => {
                    let one = ring.one();
                    st.row_add(t, i, &one, t)?;
                }
                None => break,
            }
        }
        t += 1;
    }
    Ok(DenseSnf { rank: t, d: st.a, u: st.u, u_inv: st.u_inv, v: st.v, v_inv: st.v_inv })
}

pub fn mat_mul<Q: Ring>(ring: &Q, a: &Mat<Q::E>, b: &Mat<Q::E>) -> R<Mat<Q::E>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![ring.zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if ring.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                if ring.is_zero(&b[l][j]) {
                    continue;
                }
                let t = ring.mul(&a[i][l], &b[l][j])?;
                out[i][j] = ring.add(&out[i][j], &t)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::ring::{IntBig, IntI64, Zmod};
    use super::*;
    use num_bigint::BigInt;

    fn check_transforms(m: Vec<Vec<i64>>) {
        let r = IntBig;
        let mb: Mat<BigInt> = m.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let s = smith_dense(&r, mb.clone(), Track::ALL, true).unwrap();
        let u = s.u.as_ref().unwrap();
        let v = s.v.as_ref().unwrap();
        let umv = mat_mul(&r, &mat_mul(&r, u, &mb).unwrap(), v).unwrap();
        assert_eq!(umv, s.d);
        let id_rows = identity(&r, m.len());
        let id_cols = identity(&r, m[0].len());
        assert_eq!(mat_mul(&r, u, s.u_inv.as_ref().unwrap()).unwrap(), id_rows);
        assert_eq!(mat_mul(&r, v, s.v_inv.as_ref().unwrap()).unwrap(), id_cols);
    }

    #[test]
    fn small_examples() {
        let s = smith_dense(&IntI64, vec![vec![2, 0], vec![0, 3]], Track::NONE, true).unwrap();
        assert_eq!((s.d[0][0].abs(), s.d[1][1].abs()), (1, 6));
        check_transforms(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check_transforms(vec![vec![0, 0], vec![0, 5], vec![3, 0]]);
    }

    #[test]
    fn modular() {
        let r = Zmod::new(8);
        let s = smith_dense(&r, vec![vec![2, 4], vec![6, 4]], Track::ALL, false).unwrap();
        let umv = mat_mul(&r, &mat_mul(&r, s.u.as_ref().unwrap(), &vec![vec![2, 4], vec![6, 4]]).unwrap(), s.v.as_ref().unwrap()).unwrap();
        assert_eq!(umv, s.d);
        assert_eq!(s.d[0][1], 0);
        assert_eq!(s.d[1][0], 0);
    }
}
