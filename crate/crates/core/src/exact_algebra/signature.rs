//! Exact signatures of symmetric integer matrices and of the Hermitian forms
//! `(1−ω)V + (1−ω̄)Vᵀ` at roots of unity.
//!
//! Both routes compute a characteristic polynomial with Berkowitz and then
//! read the signature off with Descartes' rule of signs, which is exact for
//! polynomials whose roots are all real. For the Hermitian case the matrix
//! lives over ℤ[x]/(x^q − 1) with `x ↦ ω`; each coefficient of the
//! characteristic polynomial is real, and its value is a rational polynomial
//! in `c = ω + ω̄ = 2cos(2πk/q)`, whose sign is decided by [`AlgebraicReal`].

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebraic::AlgebraicReal;
use super::charpoly::berkowitz;
use super::poly::{sign_changes, QPoly};
use super::{AlgebraError, IntMatrix};

/// Element of ℤ[x]/(x^q − 1).
#[derive(Clone, Debug, PartialEq, Eq)]
struct CyclicElem(Vec<BigInt>);

impl CyclicElem {
    fn zero(q: usize) -> Self {
        Self(vec![BigInt::zero(); q])
    }

    fn monomial(q: usize, e: usize, c: BigInt) -> Self {
        let mut v = Self::zero(q);
        v.0[e % q] = c;
        v
    }
}

impl Add for CyclicElem {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl Sub for CyclicElem {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        self
    }
}

impl Neg for CyclicElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.into_iter().map(|a| -a).collect())
    }
}

impl Mul for CyclicElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let q = self.0.len();
        let mut out = Self::zero(q);
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    out.0[(i + j) % q] += a * b;
                }
            }
        }
        out
    }
}

/// Dickson polynomials Dⱼ with Dⱼ(ω + ω⁻¹) = ωʲ + ω⁻ʲ, for j = 0..=n.
fn dickson_table(n: usize) -> Vec<QPoly> {
    let mut t = vec![QPoly::from_ints(&[2]), QPoly::x()];
    while t.len() <= n {
        let k = t.len();
        let next = QPoly::x().mul(&t[k - 1]).sub(&t[k - 2]);
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

/// The real number c = 2cos(2πk/q) as an algebraic real.
fn twice_cosine(q: u64, k: u64) -> AlgebraicReal {
    let table = dickson_table(q as usize);
    // roots of D_q(x) − 2 are 2cos(2πj/q), j = 0..=q/2, decreasing in j
    let f = table[q as usize].sub(&QPoly::from_ints(&[2]));
    let roots = AlgebraicReal::real_roots(&f).expect("nonzero polynomial");
    debug_assert_eq!(roots.len() as u64, q / 2 + 1);
    let j = k.min(q - k) as usize;
    roots[roots.len() - 1 - j].clone()
}

/// Exact sign of the real number represented by `e` under `x ↦ e^{2πik/q}`.
struct RootEvaluator {
    c: AlgebraicReal,
    dickson: Vec<QPoly>,
}

impl RootEvaluator {
    fn new(q: u64, k: u64) -> Self {
        Self {
            c: twice_cosine(q, k),
            dickson: dickson_table(q as usize),
        }
    }

    /// Real part Σ aⱼ cos(2πjk/q) = ½ Σ aⱼ Dⱼ(c), as a polynomial in c.
    fn real_part(&self, e: &CyclicElem) -> QPoly {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        e.0.iter()
            .zip(&self.dickson)
            .filter(|(a, _)| !a.is_zero())
            .fold(QPoly::zero(), |acc, (a, d)| {
                acc.add(&d.scale(&(BigRational::from_integer(a.clone()) * &half)))
            })
    }

    fn sign(&self, e: &CyclicElem) -> Ordering {
        self.c.sign_of(&self.real_part(e))
    }
}

/// Signature from the signs of a characteristic polynomial's coefficients
/// (leading first), assuming all its roots are real.
fn signature_from_charpoly_signs(signs: &[Ordering]) -> i64 {
    let n = signs.len();
    // coefficient of t^d sits at index n-1-d
    let pos = sign_changes(signs.iter().copied());
    let neg = sign_changes(signs.iter().enumerate().map(|(i, s)| {
        let d = n - 1 - i;
        if d % 2 == 1 {
            s.reverse()
        } else {
            *s
        }
    }));
    pos as i64 - neg as i64
}

/// Signature of the Hermitian matrix `(1−ω)V + (1−ω̄)Vᵀ`, `ω = e^{2πik/q}`.
///
/// Null directions count zero. `k ≡ 0 (mod q)` gives the zero matrix and
/// signature 0.
pub fn hermitian_signature_at_root(v: &IntMatrix, q: u64, k: i64) -> Result<i64, AlgebraError> {
    if !v.is_square() {
        return Err(AlgebraError::NotSquare);
    }
    if q == 0 {
        return Err(AlgebraError::ZeroModulus);
    }
    let k = k.rem_euclid(q as i64) as u64;
    if k == 0 || v.rows() == 0 {
        return Ok(0);
    }
    let g = q.gcd(&k);
    let (q, k) = (q / g, k / g);
    let qs = q as usize;
    let n = v.rows();
    let one = CyclicElem::monomial(qs, 0, BigInt::one());
    let zero = CyclicElem::zero(qs);
    let one_minus_w = one.clone() - CyclicElem::monomial(qs, 1, BigInt::one());
    let one_minus_wbar = one.clone() - CyclicElem::monomial(qs, qs - 1, BigInt::one());
    let h: Vec<Vec<CyclicElem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = CyclicElem::monomial(qs, 0, v[(i, j)].clone());
                    let b = CyclicElem::monomial(qs, 0, v[(j, i)].clone());
                    one_minus_w.clone() * a + one_minus_wbar.clone() * b
                })
                .collect()
        })
        .collect();
    let cp = berkowitz(&h, &zero, &one);
    let eval = RootEvaluator::new(q, k);
    let signs: Vec<Ordering> = cp.iter().map(|c| eval.sign(c)).collect();
    Ok(signature_from_charpoly_signs(&signs))
}

/// Signature (positive minus negative eigenvalues) of a symmetric integer matrix.
pub fn symmetric_signature(a: &IntMatrix) -> Result<i64, AlgebraError> {
    if !a.is_symmetric() {
        return Err(AlgebraError::NotSymmetric);
    }
    let rows = a.to_rows();
    let cp = berkowitz(&rows, &BigInt::zero(), &BigInt::one());
    let signs: Vec<Ordering> = cp.iter().map(|c| c.cmp(&BigInt::zero())).collect();
    Ok(signature_from_charpoly_signs(&signs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8() -> IntMatrix {
        IntMatrix::from_i64(&[&[1, 1], &[0, -1]])
    }

    fn t25() -> IntMatrix {
        IntMatrix::from_i64(&[&[-1, 0, 0, 0], &[1, -1, 0, 0], &[0, 1, -1, 0], &[0, 0, 1, -1]])
    }

    #[test]
    fn twice_cosine_values() {
        let c = twice_cosine(5, 1).to_f64();
        assert!((c - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        let c = twice_cosine(5, 3).to_f64();
        assert!((c - 2.0 * (6.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        assert!((twice_cosine(2, 1).to_f64() + 2.0).abs() < 1e-12);
        assert!(twice_cosine(4, 1).to_f64().abs() < 1e-12);
    }

    #[test]
    fn figure_eight_ordinary_signature() {
        assert_eq!(hermitian_signature_at_root(&fig8(), 2, 1).unwrap(), 0);
    }

    #[test]
    fn torus_knot_values_at_fifth_roots() {
        assert_eq!(hermitian_signature_at_root(&t25(), 5, 1).unwrap(), -2);
        assert_eq!(hermitian_signature_at_root(&t25(), 5, 2).unwrap(), -4);
        assert_eq!(hermitian_signature_at_root(&t25(), 5, 3).unwrap(), -4);
        assert_eq!(hermitian_signature_at_root(&t25(), 5, 4).unwrap(), -2);
        assert_eq!(hermitian_signature_at_root(&t25(), 2, 1).unwrap(), -4);
        assert_eq!(hermitian_signature_at_root(&t25(), 5, 0).unwrap(), 0);
    }

    #[test]
    fn singular_form_at_alexander_root() {
        // trefoil V = [[-1,0],[1,-1]], Δ vanishes at e^{2πi/6}: form degenerates
        let tref = IntMatrix::from_i64(&[&[-1, 0], &[1, -1]]);
        assert_eq!(hermitian_signature_at_root(&tref, 6, 1).unwrap(), -1);
        assert_eq!(hermitian_signature_at_root(&tref, 2, 1).unwrap(), -2);
        assert_eq!(hermitian_signature_at_root(&tref, 12, 1).unwrap(), 0);
    }

    #[test]
    fn symmetric_cases() {
        assert_eq!(symmetric_signature(&IntMatrix::from_i64(&[&[-2, 1], &[1, 2]])).unwrap(), 0);
        assert_eq!(symmetric_signature(&IntMatrix::identity(2)).unwrap(), 2);
        assert_eq!(symmetric_signature(&IntMatrix::from_i64(&[&[2, 1], &[1, -2]])).unwrap(), 0);
        assert_eq!(symmetric_signature(&IntMatrix::from_i64(&[&[0, 0], &[0, -3]])).unwrap(), -1);
        assert!(matches!(
            symmetric_signature(&IntMatrix::from_i64(&[&[0, 1], &[0, 0]])),
            Err(AlgebraError::NotSymmetric)
        ));
    }
}
