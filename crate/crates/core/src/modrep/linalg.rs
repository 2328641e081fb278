//! Dense matrices over any coefficient ring: products, rank, inverse.

use crate::qscalar::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn filled(rows: usize, cols: usize, x: E) -> Mat<E> {
        Mat { rows, cols, data: vec![x; rows * cols] }
    }
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i * self.cols + j] = x;
    }
    /// Entrywise image in another ring.
    pub fn map<F, T: Clone>(&self, f: F) -> Mat<T>
    where
        F: FnMut(&E) -> T,
    {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
    pub fn try_map<F, T: Clone, Er>(&self, mut f: F) -> Result<Mat<T>, Er>
    where
        F: FnMut(usize, usize, &E) -> Result<T, Er>,
    {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                data.push(f(i, j, self.get(i, j))?);
            }
        }
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }
    /// The submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat<E> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: rows.len(), cols: cols.len(), data }
    }
}

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Mat<R::E> {
    Mat::filled(rows, cols, r.zero())
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Mat<R::E> {
    let mut m = zeros(r, n, n);
    for i in 0..n {
        m.set(i, i, r.one());
    }
    m
}

pub fn mul<R: Ring>(r: &R, a: &Mat<R::E>, b: &Mat<R::E>) -> Mat<R::E> {
    assert_eq!(a.cols, b.rows, "shape mismatch");
    let mut out = zeros(r, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if r.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if !r.is_zero(y) {
                    let v = r.add(out.get(i, j), &r.mul(x, y));
                    out.set(i, j, v);
                }
            }
        }
    }
    out
}

pub fn add<R: Ring>(r: &R, a: &Mat<R::E>, b: &Mat<R::E>) -> Mat<R::E> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "shape mismatch");
    Mat { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| r.add(x, y)).collect() }
}

pub fn sub<R: Ring>(r: &R, a: &Mat<R::E>, b: &Mat<R::E>) -> Mat<R::E> {
    add(r, a, &scale(r, b, &r.from_int(-1)))
}

pub fn scale<R: Ring>(r: &R, a: &Mat<R::E>, c: &R::E) -> Mat<R::E> {
    a.map(|x| r.mul(x, c))
}

pub fn pow<R: Ring>(r: &R, a: &Mat<R::E>, n: u32) -> Mat<R::E> {
    (0..n).fold(identity(r, a.rows), |acc, _| mul(r, &acc, a))
}

pub fn is_zero<R: Ring>(r: &R, a: &Mat<R::E>) -> bool {
    a.data.iter().all(|x| r.is_zero(x))
}

/// Row-reduces in place; returns the pivot columns.
fn reduce<R: Ring>(r: &R, m: &mut Mat<R::E>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !r.is_zero(m.get(i, col))) else { continue };
        if p != row {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
        }
        let inv = r.inv(m.get(row, col)).expect("nonzero pivot is invertible");
        for j in 0..m.cols {
            let v = r.mul(m.get(row, j), &inv);
            m.set(row, j, v);
        }
        for i in 0..m.rows {
            if i == row || r.is_zero(m.get(i, col)) {
                continue;
            }
            let f = m.get(i, col).clone();
            for j in 0..m.cols {
                let v = r.sub(m.get(i, j), &r.mul(&f, m.get(row, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<R: Ring>(r: &R, a: &Mat<R::E>) -> usize {
    reduce(r, &mut a.clone()).len()
}

/// Column indices of a maximal independent set of columns, chosen greedily left to right.
pub fn pivot_columns<R: Ring>(r: &R, a: &Mat<R::E>) -> Vec<usize> {
    reduce(r, &mut a.clone())
}

pub fn inverse<R: Ring>(r: &R, a: &Mat<R::E>) -> Option<Mat<R::E>> {
    if a.rows != a.cols {
        return None;
    }
    let n = a.rows;
    let mut aug = zeros(r, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, r.one());
    }
    let piv = reduce(r, &mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    let idx: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(aug.select(&idx, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::{Generic, RatFn};
    use proptest::prelude::*;

    fn int_mat(rows: usize, cols: usize, v: &[i64]) -> Mat<RatFn> {
        Mat { rows, cols, data: v.iter().map(|&x| RatFn::int(x)).collect() }
    }

    #[test]
    fn inverse_and_rank() {
        let g = Generic;
        let a = int_mat(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&g, &a).unwrap();
        assert_eq!(mul(&g, &a, &inv), identity(&g, 2));
        assert_eq!(rank(&g, &int_mat(2, 3, &[1, 2, 3, 2, 4, 6])), 1);
        assert!(inverse(&g, &int_mat(2, 2, &[1, 2, 2, 4])).is_none());
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(v in proptest::collection::vec(-4i64..5, 9)) {
            let g = Generic;
            let a = int_mat(3, 3, &v);
            match inverse(&g, &a) {
                Some(inv) => {
                    prop_assert_eq!(mul(&g, &inv, &a), identity(&g, 3));
                    prop_assert_eq!(rank(&g, &a), 3);
                }
                None => prop_assert!(rank(&g, &a) < 3),
            }
        }
    }
}
