//! Dense matrices over a `Ring` with exact Gaussian elimination.
//!
//! Pivot selection uses the ring's `pivot_weight`, so elimination over
//! precision-tracked local fields automatically picks minimal-valuation
//! pivots while exact fields take the first nonzero entry.

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone + std::fmt::Debug> std::fmt::Debug for Mat<T> {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(fm, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(fm, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(fm, "]")
    }
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn fill(rows: usize, cols: usize, v: T) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat<U>> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(f(x)?);
        }
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Mat<R::Elem> {
    let mut m = Mat::fill(n, n, ring.zero());
    for i in 0..n {
        m.set(i, i, ring.one());
    }
    m
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Mat<R::Elem> {
    Mat::fill(rows, cols, ring.zero())
}

pub fn add<R: Ring>(ring: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} + {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = a.clone();
    for r in 0..a.rows {
        for c in 0..a.cols {
            out.set(r, c, ring.add(a.at(r, c), b.at(r, c))?);
        }
    }
    Ok(out)
}

pub fn sub<R: Ring>(ring: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    add(ring, a, &b.map(|x| ring.neg(x)))
}

pub fn mul<R: Ring>(ring: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} * {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Mat::fill(a.rows, b.cols, ring.zero());
    for r in 0..a.rows {
        for k in 0..a.cols {
            let av = a.at(r, k);
            if ring.is_zero(av) {
                continue;
            }
            for c in 0..b.cols {
                let t = ring.mul(av, b.at(k, c))?;
                let s = ring.add(out.at(r, c), &t)?;
                out.set(r, c, s);
            }
        }
    }
    Ok(out)
}

pub fn mul_vec<R: Ring>(ring: &R, a: &Mat<R::Elem>, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if a.cols != v.len() {
        return Err(Error::DimensionMismatch(format!("{}x{} * vec{}", a.rows, a.cols, v.len())));
    }
    let mut out = Vec::with_capacity(a.rows);
    for r in 0..a.rows {
        let mut acc = ring.zero();
        for c in 0..a.cols {
            acc = ring.add(&acc, &ring.mul(a.at(r, c), &v[c])?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn scale<R: Ring>(ring: &R, a: &Mat<R::Elem>, s: &R::Elem) -> Result<Mat<R::Elem>> {
    a.try_map(|x| ring.mul(x, s))
}

/// Row echelon reduction in place. Returns the pivot columns; `augmented`
/// columns at the end are carried along but never used as pivots.
fn echelon<R: Ring>(ring: &R, m: &mut Mat<R::Elem>, pivot_cols_limit: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..pivot_cols_limit {
        if row >= m.rows {
            break;
        }
        // best pivot by weight
        let mut best: Option<(usize, i64)> = None;
        for r in row..m.rows {
            if let Some(w) = ring.pivot_weight(m.at(r, col)) {
                if best.map_or(true, |(_, bw)| w < bw) {
                    best = Some((r, w));
                }
            }
        }
        let Some((prow, _)) = best else { continue };
        // swap rows
        if prow != row {
            for c in 0..m.cols {
                let tmp = m.at(prow, c).clone();
                let cur = m.at(row, c).clone();
                m.set(prow, c, cur);
                m.set(row, c, tmp);
            }
        }
        // normalize pivot row
        let pinv = ring.inv(m.at(row, col))?;
        for c in 0..m.cols {
            let v = ring.mul(m.at(row, c), &pinv)?;
            m.set(row, c, v);
        }
        // eliminate below and above
        for r in 0..m.rows {
            if r == row || ring.is_zero(m.at(r, col)) {
                continue;
            }
            let factor = m.at(r, col).clone();
            for c in 0..m.cols {
                let t = ring.mul(&factor, m.at(row, c))?;
                let v = ring.sub(m.at(r, c), &t)?;
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Ok(pivots)
}

pub fn rank<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> Result<usize> {
    let mut m = a.clone();
    let limit = m.cols;
    Ok(echelon(ring, &mut m, limit)?.len())
}

/// Solve A x = b for square invertible A.
pub fn solve<R: Ring>(ring: &R, a: &Mat<R::Elem>, b: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if a.rows != a.cols || a.rows != b.len() {
        return Err(Error::DimensionMismatch("solve needs square A and matching b".into()));
    }
    let n = a.rows;
    let mut m = Mat::fill(n, n + 1, ring.zero());
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, a.at(r, c).clone());
        }
        m.set(r, n, b[r].clone());
    }
    let pivots = echelon(ring, &mut m, n)?;
    if pivots.len() < n {
        return Err(Error::SingularJacobian);
    }
    Ok((0..n).map(|r| m.at(r, n).clone()).collect())
}

/// Inverse of a square matrix.
pub fn inverse<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch("inverse needs a square matrix".into()));
    }
    let n = a.rows;
    let mut m = Mat::fill(n, 2 * n, ring.zero());
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, a.at(r, c).clone());
        }
        m.set(r, n + r, ring.one());
    }
    let pivots = echelon(ring, &mut m, n)?;
    if pivots.len() < n {
        return Err(Error::SingularJacobian);
    }
    let mut out = Mat::fill(n, n, ring.zero());
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, m.at(r, n + c).clone());
        }
    }
    Ok(out)
}

/// Determinant by fraction-free-ish elimination (field version: track the
/// product of pivots and row swaps).
pub fn det<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> Result<R::Elem> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch("det needs a square matrix".into()));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut acc = ring.one();
    let mut sign_flip = false;
    for col in 0..n {
        let mut best: Option<(usize, i64)> = None;
        for r in col..n {
            if let Some(w) = ring.pivot_weight(m.at(r, col)) {
                if best.map_or(true, |(_, bw)| w < bw) {
                    best = Some((r, w));
                }
            }
        }
        let Some((prow, _)) = best else {
            return Ok(ring.zero());
        };
        if prow != col {
            sign_flip = !sign_flip;
            for c in 0..n {
                let tmp = m.at(prow, c).clone();
                let cur = m.at(col, c).clone();
                m.set(prow, c, cur);
                m.set(col, c, tmp);
            }
        }
        let pivot = m.at(col, col).clone();
        acc = ring.mul(&acc, &pivot)?;
        let pinv = ring.inv(&pivot)?;
        for r in (col + 1)..n {
            if ring.is_zero(m.at(r, col)) {
                continue;
            }
            let factor = ring.mul(m.at(r, col), &pinv)?;
            for c in col..n {
                let t = ring.mul(&factor, m.at(col, c))?;
                let v = ring.sub(m.at(r, c), &t)?;
                m.set(r, c, v);
            }
        }
    }
    if sign_flip {
        acc = ring.neg(&acc);
    }
    Ok(acc)
}

/// A basis of the right kernel {x : A x = 0}, one vector per free column,
/// in ascending free-column order (deterministic).
pub fn kernel_basis<R: Ring>(ring: &R, a: &Mat<R::Elem>) -> Result<Vec<Vec<R::Elem>>> {
    let mut m = a.clone();
    let limit = m.cols;
    let pivots = echelon(ring, &mut m, limit)?;
    let mut out = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..a.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![ring.zero(); a.cols];
        v[free] = ring.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            // row ri: x_pc + sum over free cols of coeff * x_free = 0
            v[pc] = ring.neg(m.at(ri, free));
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RatFnField;

    #[test]
    fn solve_and_det_over_fqt() {
        let ring = RatFnField::of_q(3).unwrap();
        let one = ring.one();
        let a = Mat::from_rows(vec![
            vec![ring.from_int(1), ring.from_int(2)],
            vec![ring.from_int(2), ring.from_int(2)],
        ]);
        let d = det(&ring, &a).unwrap();
        // det = 1*2 - 2*2 = -2 = 1 mod 3
        assert_eq!(d, ring.from_int(1));
        let b = vec![one.clone(), one.clone()];
        let x = solve(&ring, &a, &b).unwrap();
        let ax = mul_vec(&ring, &a, &x).unwrap();
        assert_eq!(ax, b);
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let ring = RatFnField::of_q(2).unwrap();
        // rows (1,1,0), (0,0,1): kernel = span (1,1,0)
        let a = Mat::from_rows(vec![
            vec![ring.one(), ring.one(), ring.zero()],
            vec![ring.zero(), ring.zero(), ring.one()],
        ]);
        let ker = kernel_basis(&ring, &a).unwrap();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        let av = mul_vec(&ring, &a, v).unwrap();
        assert!(av.iter().all(|x| ring.is_zero(x)));
    }

    #[test]
    fn inverse_roundtrip() {
        let ring = RatFnField::of_q(5).unwrap();
        let a = Mat::from_rows(vec![
            vec![ring.from_int(2), ring.from_int(1)],
            vec![ring.from_int(1), ring.from_int(1)],
        ]);
        let ai = inverse(&ring, &a).unwrap();
        let prod = mul(&ring, &a, &ai).unwrap();
        assert_eq!(prod, identity(&ring, 2));
    }
}
