//! Dense matrices over a field context, with exact Gaussian elimination.
//!
//! Entries are full-field elements; when a computation lives over the base
//! field GF(q) the row operations stay inside it, so the same type carries
//! both the GF(q) linear algebra (ranks, kernels) and the GF(q^n) solves
//! (Moore systems, cubical interpolation).

use crate::gf::{Elem, FieldCtx};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Elem>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            a: vec![Elem::default(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Mat {
        let mut m = Mat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn identity(n: usize, ctx: &FieldCtx) -> Mat {
        Mat::from_fn(n, n, |r, c| if r == c { ctx.one() } else { ctx.zero() })
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Elem {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.a[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Mat, ctx: &FieldCtx) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let v = self.at(r, k);
                if v.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let t = ctx.mul(v, other.at(k, c));
                    out.set(r, c, ctx.add(out.at(r, c), t));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem], ctx: &FieldCtx) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = ctx.zero();
                for c in 0..self.cols {
                    acc = ctx.add(acc, ctx.mul(self.at(r, c), v[c]));
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; returns the pivot column indices.
    pub fn rref(&self, ctx: &FieldCtx) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let (x, y) = (m.at(row, c), m.at(p, c));
                    m.set(row, c, y);
                    m.set(p, c, x);
                }
            }
            let inv = ctx.inv(m.at(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(row, c, ctx.mul(m.at(row, c), inv));
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col);
                    for c in 0..m.cols {
                        let sub = ctx.mul(factor, m.at(row, c));
                        m.set(r, c, ctx.sub(m.at(r, c), sub));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.rref(ctx).1.len()
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// column order, each with a 1 in its free coordinate.
    pub fn kernel_basis(&self, ctx: &FieldCtx) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref(ctx);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![ctx.zero(); self.cols];
            v[free] = ctx.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = ctx.neg(r.at(prow, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, n + r, ctx.one());
        }
        let (red, pivots) = aug.rref(ctx);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| red.at(r, n + c)))
    }

    /// Solve A x = b for square invertible A.
    pub fn solve(&self, b: &[Elem], ctx: &FieldCtx) -> Option<Vec<Elem>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        let mut aug = Mat::zero(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, n, b[r]);
        }
        let (red, pivots) = aug.rref(ctx);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some((0..n).map(|r| red.at(r, n)).collect())
    }
}
