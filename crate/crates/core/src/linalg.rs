//! Exact dense linear algebra over a [`FieldCtx`].
//!
//! Small matrices only — the big dimension in this crate is 12 — so
//! everything is straightforward Gaussian elimination with deterministic
//! pivoting: columns left to right, first nonzero row from the top. That
//! determinism matters; kernel bases computed here end up in reports and
//! frozen test expectations.

use crate::gf::{FieldCtx, FieldElem};

/// Row-major dense matrix of field elements.
#[derive(Clone, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Mat {
    pub fn zero(ctx: &FieldCtx, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot columns in
    /// increasing order.
    pub fn rref(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = ctx.inv(self.at(row, col));
            for c in col..self.cols {
                self.set(row, c, ctx.mul(self.at(row, c), inv));
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let f = self.at(r, col);
                    for c in col..self.cols {
                        let v = ctx.sub(self.at(r, c), ctx.mul(f, self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.clone().rref(ctx).len()
    }

    /// Kernel basis in the standard form: one vector per free column (in
    /// increasing column order) with a 1 in the free position.
    pub fn nullspace(&self, ctx: &FieldCtx) -> Vec<Vec<FieldElem>> {
        let mut m = self.clone();
        let pivots = m.rref(ctx);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![ctx.zero(); self.cols];
            vec[free] = ctx.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                vec[pcol] = ctx.neg(m.at(prow, free));
            }
            basis.push(vec);
        }
        basis
    }

    /// One exact solution of `self * x = rhs` with free variables set to
    /// zero, or `None` if the system is inconsistent.
    pub fn solve(&self, ctx: &FieldCtx, rhs: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Mat::zero(ctx, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, self.cols, rhs[r]);
        }
        let pivots = aug.rref(ctx);
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![ctx.zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.at(prow, self.cols);
        }
        Some(x)
    }

    /// Determinant of a square matrix by elimination.
    pub fn det(&self, ctx: &FieldCtx) -> FieldElem {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = ctx.one();
        for col in 0..m.cols {
            let Some(pr) = (col..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                return ctx.zero();
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = ctx.neg(det);
            }
            let pivot = m.at(col, col);
            det = ctx.mul(det, pivot);
            let inv = ctx.inv(pivot);
            for r in col + 1..m.rows {
                if !m.at(r, col).is_zero() {
                    let f = ctx.mul(m.at(r, col), inv);
                    for c in col..m.cols {
                        let v = ctx.sub(m.at(r, c), ctx.mul(f, m.at(col, c)));
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }
}
