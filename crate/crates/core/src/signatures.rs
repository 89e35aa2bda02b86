//! Tristram-Levine signatures, Casson-Gordon signatures of Hopf surgeries,
//! and certified estimates of knot Casson-Gordon signatures for satellites.
//!
//! Knot Casson-Gordon signatures are only known up to an error term: for a
//! base with cyclic H₁(Σ₂), the knot invariant lies within 1 of the
//! 3-manifold invariant. Satellite operations add exact companion terms
//! `±2·σ_J(ω^{χ(x)})`, so each nontrivial base character carries one unit of
//! slack and the companion contributions carry none.

use std::iter::Sum;
use std::ops::{Add, Neg};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{
    hermitian_signature_at_root, is_prime, symmetric_signature, AlgebraError,
};
use crate::json::rational_string;
use crate::knot_model::{BaseKnot, HopfSurgery, KnotSum, SatelliteKnot, SeifertMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("meridian value must be in 1..q-1 (got {value} for q = {q})")]
    ZeroMeridianValue { q: u64, value: i64 },
    #[error("character has {found} coordinates but the knot has {expected} summands")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("character modulus {q} does not divide the cover group order {order}")]
    ModulusMismatch { q: u64, order: BigInt },
    #[error("character coefficient {0} out of range for its modulus")]
    CoefficientOutOfRange(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Homomorphism ⊕ H₁(Σ₂(Kᵢ)) → ℤ_q, one coordinate per summand giving the
/// value on that summand's generator (meridian 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    modulus: u32,
    coeffs: Vec<u32>,
}

impl Character {
    pub fn new(modulus: u32, coeffs: Vec<u32>) -> Result<Self, SignatureError> {
        if !is_prime(modulus as u64) {
            return Err(SignatureError::NotPrime(modulus as u64));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= modulus) {
            return Err(SignatureError::CoefficientOutOfRange(bad));
        }
        Ok(Self { modulus, coeffs })
    }

    pub fn trivial(modulus: u32, dim: usize) -> Self {
        Self {
            modulus,
            coeffs: vec![0; dim],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Position of this character in the base-q enumeration of all characters
    /// (first coordinate most significant).
    pub fn index(&self) -> usize {
        self.coeffs
            .iter()
            .fold(0usize, |acc, &c| acc * self.modulus as usize + c as usize)
    }

    pub fn from_index(modulus: u32, dim: usize, mut index: usize) -> Self {
        let mut coeffs = vec![0u32; dim];
        for c in coeffs.iter_mut().rev() {
            *c = (index % modulus as usize) as u32;
            index /= modulus as usize;
        }
        Self { modulus, coeffs }
    }
}

/// A rational known to lie in `[center − slack, center + slack]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureEstimate {
    #[serde(with = "rational_string")]
    pub center: BigRational,
    #[serde(with = "rational_string")]
    pub slack: BigRational,
}

impl SignatureEstimate {
    pub fn exact(v: BigRational) -> Self {
        Self {
            center: v,
            slack: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::exact(BigRational::zero())
    }

    /// Panics on negative slack.
    pub fn new(center: BigRational, slack: BigRational) -> Self {
        assert!(!slack.is_negative(), "slack must be nonnegative");
        Self { center, slack }
    }

    pub fn lower(&self) -> BigRational {
        &self.center - &self.slack
    }

    pub fn upper(&self) -> BigRational {
        &self.center + &self.slack
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    /// Certified lower bound on |value|: `|center| − slack` (may be negative).
    pub fn magnitude_lower_bound(&self) -> BigRational {
        self.center.abs() - &self.slack
    }

    /// Certified upper bound on |value|.
    pub fn magnitude_upper_bound(&self) -> BigRational {
        self.center.abs() + &self.slack
    }

    pub fn shift(&self, by: &BigRational) -> Self {
        Self {
            center: &self.center + by,
            slack: self.slack.clone(),
        }
    }
}

impl Add for SignatureEstimate {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            center: self.center + rhs.center,
            slack: self.slack + rhs.slack,
        }
    }
}

impl<'a> Add<&'a SignatureEstimate> for &'a SignatureEstimate {
    type Output = SignatureEstimate;
    fn add(self, rhs: &SignatureEstimate) -> SignatureEstimate {
        SignatureEstimate {
            center: &self.center + &rhs.center,
            slack: &self.slack + &rhs.slack,
        }
    }
}

impl Neg for SignatureEstimate {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            center: -self.center,
            slack: self.slack,
        }
    }
}

impl Sum for SignatureEstimate {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Add::add)
    }
}

/// `σ_{#^m J}(e^{2πik/q}) = m · σ_J(e^{2πik/q})`, zero when `k ≡ 0`.
pub fn tristram_levine(
    knot: &SeifertMatrix,
    multiplicity: &BigUint,
    q: u64,
    k: i64,
) -> Result<BigInt, SignatureError> {
    if q == 0 {
        return Err(AlgebraError::ZeroModulus.into());
    }
    if k.rem_euclid(q as i64) == 0 {
        return Ok(BigInt::zero());
    }
    let per_copy = hermitian_signature_at_root(knot.matrix(), q, k)?;
    Ok(BigInt::from(per_copy) * BigInt::from(multiplicity.clone()))
}

/// Casson-Gordon signature of the 3-manifold obtained by surgery on a Hopf
/// link, for a character sending the meridians to `n1`, `n2 ∈ 1..q`:
///
/// `−1 − sign(Λ) + (2/q²)·[n1 n2]·Λ·[q−n1, q−n2]ᵀ`.
pub fn cf_hopf_signature(
    surgery: &HopfSurgery,
    q: u64,
    n1: i64,
    n2: i64,
) -> Result<BigRational, SignatureError> {
    if !is_prime(q) {
        return Err(SignatureError::NotPrime(q));
    }
    for n in [n1, n2] {
        if n <= 0 || n as u64 >= q {
            return Err(SignatureError::ZeroMeridianValue { q, value: n });
        }
    }
    let lambda = surgery.linking_matrix();
    let sign = symmetric_signature(&lambda)?;
    let qb = BigInt::from(q);
    let left = [BigInt::from(n1), BigInt::from(n2)];
    let right = [&qb - n1, &qb - n2];
    let mut quad = BigInt::zero();
    for (i, l) in left.iter().enumerate() {
        for (j, r) in right.iter().enumerate() {
            quad += l * &lambda[(i, j)] * r;
        }
    }
    let head = BigRational::from_integer(BigInt::from(-1 - sign));
    Ok(head + BigRational::new(BigInt::from(2) * quad, &qb * &qb))
}

/// Maps a character value on the generator to the two meridian values,
/// reduced to `0..q`.
fn meridian_values(base_cover_second: &BigInt, q: u64, c: u32) -> (i64, i64) {
    let qb = BigInt::from(q);
    let n1 = BigInt::from(c).mod_floor(&qb);
    let n2 = (base_cover_second * BigInt::from(c)).mod_floor(&qb);
    (n1.to_i64().unwrap(), n2.to_i64().unwrap())
}

fn check_modulus(order: &BigInt, q: u64) -> Result<(), SignatureError> {
    if !is_prime(q) {
        return Err(SignatureError::NotPrime(q));
    }
    if !order.is_multiple_of(&BigInt::from(q)) {
        return Err(SignatureError::ModulusMismatch {
            q,
            order: order.clone(),
        });
    }
    Ok(())
}

/// Estimate of σ(base, χ) for a character with `χ(generator) = c ∈ ℤ_q`.
///
/// Trivial characters give exactly 0. Otherwise the center is the Hopf
/// surgery signature at the meridian values and the slack is 1.
pub fn base_cg_estimate(base: &BaseKnot, q: u64, c: u32) -> Result<SignatureEstimate, SignatureError> {
    let cover = base
        .surgery
        .cover_homology()
        .expect("Hopf surgery has nonsingular linking matrix");
    check_modulus(&cover.order(), q)?;
    let (n1, n2) = meridian_values(&cover.second_meridian, q, c);
    if n1 == 0 && n2 == 0 {
        return Ok(SignatureEstimate::zero());
    }
    let center = cf_hopf_signature(&base.surgery, q, n1, n2)?;
    Ok(SignatureEstimate::new(center, BigRational::one()))
}

/// σ(K, χ) for a satellite: base estimate plus
/// `Σ sign · 2 · σ_{#^m J}(ω^{χ(site)})` over the infection sites.
pub fn satellite_cg_estimate(k: &SatelliteKnot, q: u64, c: u32) -> Result<SignatureEstimate, SignatureError> {
    let base = base_cg_estimate(k.base(), q, c)?;
    let order = k.cover().order();
    let mut shift = BigInt::zero();
    for inf in k.infections() {
        let value = (&inf.site.class * BigInt::from(c)).mod_floor(&order);
        let value = value.mod_floor(&BigInt::from(q)).to_i64().unwrap();
        let tl = tristram_levine(&inf.companion, &inf.multiplicity, q, value)?;
        shift += BigInt::from(2 * inf.orientation.sign()) * tl;
    }
    Ok(base.shift(&BigRational::from_integer(shift)))
}

/// Per-summand estimates for every value of the character on that summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandTable {
    pub modulus: u32,
    /// `rows[s][c]` is the estimate for summand `s` at character value `c`.
    pub rows: Vec<Vec<SignatureEstimate>>,
}

impl SummandTable {
    pub fn build(sum: &KnotSum, q: u32) -> Result<Self, SignatureError> {
        let rows = sum
            .summands()
            .par_iter()
            .map(|s| (0..q).map(|c| satellite_cg_estimate(s, q as u64, c)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(Self { modulus: q, rows })
    }

    pub fn estimate(&self, chi: &Character) -> Result<SignatureEstimate, SignatureError> {
        if chi.coeffs().len() != self.rows.len() {
            return Err(SignatureError::DimensionMismatch {
                expected: self.rows.len(),
                found: chi.coeffs().len(),
            });
        }
        Ok(chi
            .coeffs()
            .iter()
            .zip(&self.rows)
            .map(|(&c, row)| row[c as usize].clone())
            .sum())
    }
}

/// σ(K, χ) for a connected sum, by additivity over summands.
pub fn sum_cg_estimate(sum: &KnotSum, chi: &Character) -> Result<SignatureEstimate, SignatureError> {
    if chi.coeffs().len() != sum.len() {
        return Err(SignatureError::DimensionMismatch {
            expected: sum.len(),
            found: chi.coeffs().len(),
        });
    }
    sum.summands()
        .iter()
        .zip(chi.coeffs())
        .map(|(s, &c)| satellite_cg_estimate(s, chi.modulus() as u64, c))
        .sum()
}

/// Ordinary signature of the underlying Seifert form.
pub fn ordinary_signature(sum: &KnotSum) -> i64 {
    symmetric_signature(&sum.seifert().symmetrized()).expect("V + Vᵀ is symmetric")
}

/// Ordinary signature of a single Seifert matrix.
pub fn seifert_signature(v: &SeifertMatrix) -> i64 {
    symmetric_signature(&v.symmetrized()).expect("V + Vᵀ is symmetric")
}

/// One row of an exported character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub character: Vec<u32>,
    #[serde(with = "rational_string")]
    pub center: BigRational,
    #[serde(with = "rational_string")]
    pub slack: BigRational,
}

/// Estimates for every character of a knot sum, in index order.
pub fn character_table(sum: &KnotSum, q: u32) -> Result<Vec<TableEntry>, SignatureError> {
    let table = SummandTable::build(sum, q)?;
    let n = sum.len();
    let total = (q as usize).pow(n as u32);
    (0..total)
        .map(|i| {
            let chi = Character::from_index(q, n, i);
            let e = table.estimate(&chi)?;
            Ok(TableEntry {
                character: chi.coeffs,
                center: e.center,
                slack: e.slack,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::{build_k_of_j, figure_eight, figure_eight_base, torus_2_5};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn fig8_surgery() -> HopfSurgery {
        HopfSurgery::new(-2, 2).unwrap()
    }

    #[test]
    fn cf_values_for_figure_eight() {
        let s = fig8_surgery();
        assert_eq!(cf_hopf_signature(&s, 5, 1, 2).unwrap(), r(1, 5));
        assert_eq!(cf_hopf_signature(&s, 5, 2, 4).unwrap(), r(-1, 5));
        assert_eq!(cf_hopf_signature(&s, 5, 4, 3).unwrap(), r(1, 5));
        assert_eq!(cf_hopf_signature(&s, 5, 3, 1).unwrap(), r(-1, 5));
        assert!(matches!(
            cf_hopf_signature(&s, 5, 0, 2),
            Err(SignatureError::ZeroMeridianValue { .. })
        ));
        assert!(matches!(cf_hopf_signature(&s, 4, 1, 2), Err(SignatureError::NotPrime(4))));
    }

    #[test]
    fn base_estimates() {
        let b = figure_eight_base();
        assert_eq!(base_cg_estimate(&b, 5, 1).unwrap(), SignatureEstimate::new(r(1, 5), r(1, 1)));
        assert_eq!(base_cg_estimate(&b, 5, 2).unwrap(), SignatureEstimate::new(r(-1, 5), r(1, 1)));
        assert_eq!(base_cg_estimate(&b, 5, 0).unwrap(), SignatureEstimate::zero());
        for c in 0..5 {
            assert!(base_cg_estimate(&b, 5, c).unwrap().magnitude_upper_bound() < r(2, 1));
        }
        assert!(matches!(base_cg_estimate(&b, 3, 1), Err(SignatureError::ModulusMismatch { .. })));
    }

    #[test]
    fn tristram_levine_scaling() {
        let m = BigUint::from(2u32).pow(5);
        assert_eq!(tristram_levine(&torus_2_5(), &m, 5, 1).unwrap(), BigInt::from(-64));
        assert_eq!(tristram_levine(&torus_2_5(), &m, 5, 2).unwrap(), BigInt::from(-128));
        assert_eq!(tristram_levine(&figure_eight(), &m, 5, 0).unwrap(), BigInt::zero());
    }

    #[test]
    fn satellite_with_unknot_companion_equals_base() {
        let k = build_k_of_j(&SeifertMatrix::unknot(), BigUint::from(1000u32), &figure_eight_base()).unwrap();
        for c in 0..5 {
            assert_eq!(
                satellite_cg_estimate(&k, 5, c).unwrap(),
                base_cg_estimate(k.base(), 5, c).unwrap()
            );
        }
    }

    #[test]
    fn satellite_envelope_for_one_summand() {
        // i = 1, g = 1: m = 8, center = 1/5 - 2^6 + 2^5
        let k = build_k_of_j(&torus_2_5(), BigUint::from(8u32), &figure_eight_base()).unwrap();
        let e = satellite_cg_estimate(&k, 5, 1).unwrap();
        assert_eq!(e.center, r(1, 5) - r(32, 1));
        assert_eq!(e.slack, r(1, 1));
        assert_eq!(satellite_cg_estimate(&k, 5, 0).unwrap(), SignatureEstimate::zero());
    }

    #[test]
    fn sum_dimension_checks() {
        let k = build_k_of_j(&torus_2_5(), BigUint::from(8u32), &figure_eight_base()).unwrap();
        let sum = KnotSum::new(vec![k.clone(), k]).unwrap();
        let bad = Character::new(5, vec![1]).unwrap();
        assert!(matches!(sum_cg_estimate(&sum, &bad), Err(SignatureError::DimensionMismatch { .. })));
        let two = Character::new(5, vec![1, 3]).unwrap();
        assert_eq!(sum_cg_estimate(&sum, &two).unwrap().slack, r(2, 1));
        assert_eq!(ordinary_signature(&sum), 0);
    }

    #[test]
    fn character_indexing() {
        let c = Character::new(5, vec![1, 0, 4]).unwrap();
        assert_eq!(c.index(), 29);
        assert_eq!(Character::from_index(5, 3, 29), c);
        assert!(Character::new(5, vec![5]).is_err());
        assert!(Character::new(6, vec![1]).is_err());
    }

    #[test]
    fn table_export_format() {
        let k = build_k_of_j(&torus_2_5(), BigUint::from(8u32), &figure_eight_base()).unwrap();
        let sum = KnotSum::new(vec![k]).unwrap();
        let t = character_table(&sum, 5).unwrap();
        assert_eq!(t.len(), 5);
        let json = serde_json::to_string(&t[1]).unwrap();
        assert_eq!(json, r#"{"character":[1],"center":"-159/5","slack":"1"}"#);
    }
}
