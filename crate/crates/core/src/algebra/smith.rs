//! Smith normal form of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::matrix::Matrix;
use super::ring::Ring;

/// Diagonal `d_1 | d_2 | ...` together with unimodular `U`, `V` satisfying
/// `U * M * V = diag(d)` when transforms were requested.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Option<Matrix<BigInt>>,
    pub left_inverse: Option<Matrix<BigInt>>,
    pub right: Option<Matrix<BigInt>>,
}

impl SmithForm {
    /// Nonzero diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    /// Product of the nonzero diagonal entries.
    pub fn nonzero_product(&self) -> BigInt {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero())
            .fold(BigInt::one(), |a, d| a * d)
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: Matrix<BigInt>,
    u: Option<Matrix<BigInt>>,
    u_inv: Option<Matrix<BigInt>>,
    v: Option<Matrix<BigInt>>,
}

impl Work {
    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for m in [Some(&mut self.a), self.u.as_mut()].into_iter().flatten() {
            for j in 0..m.cols() {
                let t = &m[(src, j)] * c;
                m[(dst, j)] += t;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // inverse operation on columns: col[src] -= c * col[dst]
            for i in 0..ui.rows() {
                let t = &ui[(i, dst)] * c;
                ui[(i, src)] -= t;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for m in [Some(&mut self.a), self.v.as_mut()].into_iter().flatten() {
            for i in 0..m.rows() {
                let t = &m[(i, src)] * c;
                m[(i, dst)] += t;
            }
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(x, y);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.swap_cols(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(x, y);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for m in [Some(&mut self.a), self.u.as_mut()].into_iter().flatten() {
            for j in 0..m.cols() {
                m[(r, j)] = -&m[(r, j)];
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for i in 0..ui.rows() {
                ui[(i, r)] = -&ui[(i, r)];
            }
        }
    }
}

/// Computes the Smith normal form, optionally retaining the transforms.
pub fn smith_normal_form(m: &Matrix<BigInt>, with_transforms: bool) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: with_transforms.then(|| Matrix::identity(rows)),
        u_inv: with_transforms.then(|| Matrix::identity(rows)),
        v: with_transforms.then(|| Matrix::identity(cols)),
    };
    let steps = rows.min(cols);
    let mut diagonal = Vec::with_capacity(steps);
    for t in 0..steps {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &w.a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < w.a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&pivot);
                w.add_row(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&pivot);
                w.add_col(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.a[(t, t)].clone());
    }
    SmithForm {
        diagonal,
        left: w.u,
        left_inverse: w.u_inv,
        right: w.v,
    }
}
