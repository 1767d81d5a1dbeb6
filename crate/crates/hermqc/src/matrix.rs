//! Dense row-major matrices over GF(q^2): Gaussian elimination, rank, RREF,
//! nullspaces, Gram matrices under the Hermitian form, and row-span tests.

use std::sync::Arc;

use crate::field::{El, Field};

#[derive(Debug, Clone)]
pub struct Mat {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<El>,
}

impl Mat {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: Arc<Field>, rows: Vec<Vec<El>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows_cols(field, rows, ncols)
    }

    /// Like from_rows but with an explicit width, so zero rows keep shape.
    pub fn from_rows_cols(field: Arc<Field>, rows: Vec<Vec<El>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(&r);
        }
        Mat { field, rows: nrows, cols, data }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[El] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn at(&self, i: usize, j: usize) -> El {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: El) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.at(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    let t = m.at(r, j);
                    m.set(r, j, m.at(pr, j));
                    m.set(pr, j, t);
                }
            }
            let inv = f.inv(m.at(r, c));
            for j in c..m.cols {
                m.set(r, j, f.mul(inv, m.at(r, j)));
            }
            for i in 0..m.rows {
                if i != r && m.at(i, c) != 0 {
                    let factor = m.at(i, c);
                    for j in c..m.cols {
                        let v = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis rows for the right kernel {x : self * x^T = 0}.
    pub fn nullspace(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0 as El; self.cols];
            v[fc] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = self.field.neg(r.at(pr, fc));
            }
            rows.push(v);
        }
        Mat::from_rows(self.field.clone(), rows)
    }

    /// self * conj(other)^T under the entrywise Frobenius conjugation.
    pub fn mul_conj_transpose(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let f = &self.field;
        let mut out = Mat::zeros(self.field.clone(), self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let mut acc = 0;
                for c in 0..self.cols {
                    acc = f.add(acc, f.mul(self.at(i, c), f.conj(other.at(j, c))));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Residual of v after elimination against an RREF basis.
    pub fn reduce_against(rref: &Mat, pivots: &[usize], v: &[El]) -> Vec<El> {
        let f = &rref.field;
        let mut w = v.to_vec();
        for (pr, &pc) in pivots.iter().enumerate() {
            if w[pc] != 0 {
                let factor = w[pc];
                for j in 0..rref.cols {
                    w[j] = f.sub(w[j], f.mul(factor, rref.at(pr, j)));
                }
            }
        }
        w
    }

    /// True when every row of `other` lies in the row space of `self`.
    pub fn rows_in_span(&self, other: &Mat) -> bool {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let (r, pivots) = self.rref();
        (0..other.rows).all(|i| Mat::reduce_against(&r, &pivots, other.row(i)).iter().all(|&x| x == 0))
    }
}
