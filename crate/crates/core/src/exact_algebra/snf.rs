//! Smith normal form over the integers, with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of [`smith_normal_form`]: `left · A · right = diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries d₀ | d₁ | … (length min(rows, cols)).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    w: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.w.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.w.add_col_multiple(dst, src, k);
    }

    /// Position of the smallest nonzero |entry| in the trailing block from (t, t).
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let v = self.d[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row t and column t outside the pivot. Returns false if a
    /// nonzero remainder was left behind (caller re-pivots).
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        let pivot = self.d[(t, t)].clone();
        for i in t + 1..self.d.rows() {
            if self.d[(i, t)].is_zero() {
                continue;
            }
            let q = self.d[(i, t)].div_floor(&pivot);
            self.add_row(i, t, &-q);
            if !self.d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.d.cols() {
            if self.d[(t, j)].is_zero() {
                continue;
            }
            let q = self.d[(t, j)].div_floor(&pivot);
            self.add_col(j, t, &-q);
            if !self.d[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn cross_is_zero(&self, t: usize) -> bool {
        (t + 1..self.d.rows()).all(|i| self.d[(i, t)].is_zero())
            && (t + 1..self.d.cols()).all(|j| self.d[(t, j)].is_zero())
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = &self.d[(t, t)];
        (t + 1..self.d.rows())
            .find(|&i| (t + 1..self.d.cols()).any(|j| !self.d[(i, j)].is_multiple_of(pivot)))
    }
}

/// Computes `(D, U, W)` with `U · A · W = D`, `U` and `W` unimodular, and `D`
/// diagonal with nonnegative entries satisfying `dᵢ | dᵢ₊₁`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut wk = Work {
        d: a.clone(),
        u: IntMatrix::identity(a.rows()),
        w: IntMatrix::identity(a.cols()),
    };
    let n = a.rows().min(a.cols());
    for t in 0..n {
        let Some(p) = wk.min_entry(t) else {
            break;
        };
        wk.move_to_pivot(t, p);
        loop {
            if !wk.clear_cross(t) || !wk.cross_is_zero(t) {
                let p = wk.min_entry_in_cross(t);
                wk.move_to_pivot(t, p);
                continue;
            }
            match wk.non_divisible_row(t) {
                Some(i) => {
                    wk.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if wk.d[(t, t)].is_negative() {
            wk.d.negate_row(t);
            wk.u.negate_row(t);
        }
    }
    SmithDecomposition {
        diagonal: wk.d,
        left: wk.u,
        right: wk.w,
    }
}

impl Work {
    /// After a partial clear, the smallest nonzero entry in row/column t
    /// (pivot included) becomes the new pivot.
    fn min_entry_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_v = self.d[(t, t)].abs();
        let mut consider = |pos: (usize, usize), v: BigInt| {
            if !v.is_zero() && (best_v.is_zero() || v < best_v) {
                best = pos;
                best_v = v;
            }
        };
        for i in t + 1..self.d.rows() {
            consider((i, t), self.d[(i, t)].abs());
        }
        for j in t + 1..self.d.cols() {
            consider((t, j), self.d[(t, j)].abs());
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.left.mul(a).mul(&s.right), s.diagonal);
        assert!(s.diagonal.is_diagonal());
        assert_eq!(s.left.determinant().abs(), BigInt::one());
        assert_eq!(s.right.determinant().abs(), BigInt::one());
        s
    }

    #[test]
    fn figure_eight_relations_give_order_five() {
        let s = check(&IntMatrix::from_i64(&[&[-2, 1], &[1, 2]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(5)]);
        let s = check(&IntMatrix::from_i64(&[&[2, 1], &[1, -2]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(5)]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.diagonal, IntMatrix::identity(2));
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) must become diag(1, 6)
        let s = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_zero() {
        let s = check(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let s = check(&IntMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 0]]));
        assert!(s.invariant_factors().iter().all(Zero::is_zero));
        check(&IntMatrix::from_i64(&[&[3, 5, 7]]));
    }
}
