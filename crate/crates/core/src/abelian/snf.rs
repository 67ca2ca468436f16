//! Smith normal form over the integers with unimodular transforms.
//!
//! The reduction repeatedly moves the entry of least nonzero absolute value
//! in the trailing block to the pivot position (ties broken by the lowest
//! `(row, col)` pair), clears its row and column by Euclidean division, and
//! restores the divisibility chain by folding offending rows into the pivot
//! row. Every row operation is mirrored on `U` and every column operation on
//! `V`, so `U * A * V` equals the diagonal form at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Elementary divisors, `min(rows, cols)` of them. Nonzero entries form a
    /// divisibility chain and zeros trail.
    pub d: Vec<BigInt>,
    /// Unimodular, `rows x rows`.
    pub u: IntMatrix,
    /// Unimodular, `cols x cols`.
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.d.iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.u.rows(), self.v.rows(), &self.d)
    }

    /// Checks `U * A * V == diag(d)`, unimodularity and the divisibility chain.
    pub fn certifies(&self, a: &IntMatrix) -> bool {
        if self.u.rows() != a.rows() || self.v.rows() != a.cols() {
            return false;
        }
        let uav = &(&self.u * a) * &self.v;
        uav == self.diagonal_matrix()
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && divisibility_chain_holds(&self.d)
    }
}

/// True when the nonzero entries are positive, each divides the next, and
/// every zero comes after every nonzero.
pub fn divisibility_chain_holds(d: &[BigInt]) -> bool {
    let nonzero = d.iter().take_while(|x| !x.is_zero()).count();
    if d[nonzero..].iter().any(|x| !x.is_zero()) {
        return false;
    }
    d[..nonzero].iter().all(|x| x.is_positive())
        && d[..nonzero].windows(2).all(|w| (&w[1] % &w[0]).is_zero())
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    'diag: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_pivot(&b, t) else {
                break 'diag;
            };
            b.swap_rows(t, pi);
            u.swap_rows(t, pi);
            b.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = b[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if b[(i, t)].is_zero() {
                    continue;
                }
                let q = -b[(i, t)].div_floor(&pivot);
                b.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !b[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if b[(t, j)].is_zero() {
                    continue;
                }
                let q = -b[(t, j)].div_floor(&pivot);
                b.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !b[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&b[(i, j)] % &pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    b.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if b[(t, t)].is_negative() {
            b.negate_row(t);
            u.negate_row(t);
        }
    }

    let d = (0..m.min(n)).map(|i| b[(i, i)].clone()).collect();
    SmithDecomposition { d, u, v }
}

/// Position of the entry with least nonzero absolute value in the block
/// `[t.., t..]`, scanning row-major so the first minimum wins.
fn min_pivot(b: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..b.rows() {
        for j in t..b.cols() {
            let x = &b[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, cur)| ax < *cur) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
