//! Division-free characteristic polynomials (Berkowitz) over commutative rings.

use std::ops::{Add, Mul, Neg, Sub};

/// Characteristic polynomial `det(tI − A)` of a square matrix, coefficients
/// ordered from the leading `1` down to the constant term.
///
/// Only ring operations are used, so this works over ℤ and over ℤ[x]/(xⁿ−1).
pub fn berkowitz<T>(a: &[Vec<T>], zero: &T, one: &T) -> Vec<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    if n == 0 {
        return vec![one.clone()];
    }
    let mut vect = vec![one.clone(), -a[0][0].clone()];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -R·C, -R·A·C, …, -R·A^{r-1}·C
        let mut col = Vec::with_capacity(r + 2);
        col.push(one.clone());
        col.push(-a[r][r].clone());
        let mut x: Vec<T> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(zero.clone(), |acc, j| acc + a[r][j].clone() * x[j].clone());
            col.push(-dot);
            x = (0..r)
                .map(|i| {
                    (0..r).fold(zero.clone(), |acc, j| acc + a[i][j].clone() * x[j].clone())
                })
                .collect();
        }
        // (r+2)×(r+1) lower-triangular Toeplitz product
        vect = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(zero.clone(), |acc, j| {
                    acc + col[i - j].clone() * vect[j].clone()
                })
            })
            .collect();
    }
    vect
}
