//! Subspaces of F_pⁿ in reduced row echelon form, their enumeration and annihilators.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Vector over F_p with coordinates in `0..p`.
pub type FpVector = Vec<u32>;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Dot product over F_p.
pub fn dot_mod(a: &[u32], b: &[u32], p: u32) -> u32 {
    (a.iter()
        .zip(b)
        .map(|(&x, &y)| x as u64 * y as u64)
        .sum::<u64>()
        % p as u64) as u32
}

/// A subspace of F_pⁿ stored by its unique reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    p: u32,
    basis: Vec<FpVector>,
}

impl Subspace {
    pub fn zero(ambient: usize, p: u32) -> Self {
        Self {
            ambient,
            p,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize, p: u32) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| u32::from(i == j)).collect())
            .collect();
        Self { ambient, p, basis }
    }

    /// Span of arbitrary vectors (reduced on the way in).
    pub fn span(ambient: usize, p: u32, vectors: &[FpVector]) -> Result<Self, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(AlgebraError::DimensionMismatch {
                expected: ambient,
                found: vectors.iter().map(Vec::len).find(|&l| l != ambient).unwrap_or(0),
            });
        }
        let rows: Vec<FpVector> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| x % p).collect())
            .collect();
        Ok(Self {
            ambient,
            p,
            basis: rref(rows, p),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FpVector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("zero row in echelon basis"))
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.iter().map(|&x| x % self.p).collect());
        rref(rows, self.p).len() == self.dim()
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Self) -> Self {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self {
            ambient: self.ambient,
            p: self.p,
            basis: rref(rows, self.p),
        }
    }

    /// `{v : v·s = 0 for all s ∈ self}`.
    pub fn annihilator(&self) -> Self {
        let p = self.p;
        let pivots = self.pivots();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !pivots.contains(c)).collect();
        // null space of the RREF matrix: one vector per free column
        let rows: Vec<FpVector> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; self.ambient];
                v[f] = 1;
                for (row, &pc) in self.basis.iter().zip(&pivots) {
                    v[pc] = (p - row[f]) % p;
                }
                v
            })
            .collect();
        Self {
            ambient: self.ambient,
            p,
            basis: rref(rows, p),
        }
    }

    /// All elements, in lexicographic order of their coordinates over the
    /// echelon basis (so the zero vector comes first).
    pub fn elements(&self) -> impl Iterator<Item = FpVector> + '_ {
        let d = self.dim();
        let p = self.p;
        let total = (p as u64).pow(d as u32);
        (0..total).map(move |mut idx| {
            let mut coeffs = vec![0u32; d];
            for c in coeffs.iter_mut().rev() {
                *c = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            let mut v = vec![0u64; self.ambient];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x += *c as u64 * r as u64;
                }
            }
            v.into_iter().map(|x| (x % p as u64) as u32).collect()
        })
    }
}

/// Reduced row echelon form over F_p with zero rows dropped.
fn rref(mut rows: Vec<FpVector>, p: u32) -> Vec<FpVector> {
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][col], p) as u64;
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col] == 0 {
                continue;
            }
            let f = rows[i][col] as u64;
            for j in 0..n {
                let sub = f * rows[r][j] as u64 % p as u64;
                rows[i][j] = ((rows[i][j] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Gaussian binomial coefficient [n choose d]_p.
pub fn gaussian_binomial(n: usize, d: usize, p: u64) -> BigUint {
    if d > n {
        return BigUint::from(0u32);
    }
    let pb = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        num *= pb.pow((n - i) as u32) - BigUint::one();
        den *= pb.pow((i + 1) as u32) - BigUint::one();
    }
    num / den
}

/// Streams every `d`-dimensional subspace of F_pⁿ exactly once, ordered by
/// pivot set (lexicographically) and then by free entries.
pub fn enumerate_subspaces(n: usize, p: u32, d: usize) -> Result<SubspaceIter, AlgebraError> {
    if !is_prime(p as u64) {
        return Err(AlgebraError::NotPrime(p as u64));
    }
    if d > n {
        return Err(AlgebraError::DimensionOutOfRange { dim: d, ambient: n });
    }
    Ok(SubspaceIter::new(n, p, d))
}

/// Iterator returned by [`enumerate_subspaces`].
pub struct SubspaceIter {
    n: usize,
    p: u32,
    pivots: Option<Vec<usize>>,
    /// Positions (row, col) of free entries for the current pivot set.
    free: Vec<(usize, usize)>,
    /// Odometer over the free entries; `None` once exhausted for this pivot set.
    counter: Option<Vec<u32>>,
}

impl SubspaceIter {
    fn new(n: usize, p: u32, d: usize) -> Self {
        let pivots: Vec<usize> = (0..d).collect();
        let mut it = Self {
            n,
            p,
            pivots: Some(pivots),
            free: Vec::new(),
            counter: None,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        let Some(piv) = &self.pivots else {
            return;
        };
        self.free = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                (pc + 1..self.n)
                    .filter(|c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        self.counter = Some(vec![0; self.free.len()]);
    }

    fn next_pivots(&mut self) {
        let Some(piv) = self.pivots.as_mut() else {
            return;
        };
        let d = piv.len();
        let n = self.n;
        // next d-combination of 0..n in lexicographic order
        let Some(i) = (0..d).rev().find(|&i| piv[i] < n - d + i) else {
            self.pivots = None;
            return;
        };
        piv[i] += 1;
        for j in i + 1..d {
            piv[j] = piv[j - 1] + 1;
        }
        self.reset_free();
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            let piv = self.pivots.as_ref()?;
            let Some(counter) = self.counter.as_mut() else {
                self.next_pivots();
                continue;
            };
            let mut basis: Vec<FpVector> = piv
                .iter()
                .map(|&pc| {
                    let mut r = vec![0u32; self.n];
                    r[pc] = 1;
                    r
                })
                .collect();
            for (&(r, c), &v) in self.free.iter().zip(counter.iter()) {
                basis[r][c] = v;
            }
            // advance odometer (last entry fastest)
            let mut done = true;
            for digit in counter.iter_mut().rev() {
                *digit += 1;
                if *digit < self.p {
                    done = false;
                    break;
                }
                *digit = 0;
            }
            if done {
                self.counter = None;
            }
            return Some(Subspace {
                ambient: self.n,
                p: self.p,
                basis,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_in_f5_4() {
        assert_eq!(enumerate_subspaces(4, 5, 0).unwrap().count(), 1);
        assert_eq!(enumerate_subspaces(4, 5, 1).unwrap().count(), 156);
        assert_eq!(enumerate_subspaces(4, 5, 2).unwrap().count(), 806);
        assert_eq!(enumerate_subspaces(4, 5, 4).unwrap().count(), 1);
        assert_eq!(gaussian_binomial(4, 2, 5), BigUint::from(806u32));
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let all: Vec<Subspace> = enumerate_subspaces(3, 3, 2).unwrap().collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        for s in &all {
            let again = Subspace::span(3, 3, s.basis()).unwrap();
            assert_eq!(&again, s);
        }
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(Subspace::full(4, 5).annihilator(), Subspace::zero(4, 5));
        assert_eq!(Subspace::zero(4, 5).annihilator(), Subspace::full(4, 5));
        let s = Subspace::span(4, 5, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let want = Subspace::span(4, 5, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(s.annihilator(), want);
    }

    #[test]
    fn annihilator_matches_brute_force() {
        let s = Subspace::span(4, 5, &[vec![1, 2, 3, 4], vec![0, 1, 1, 0]]).unwrap();
        let ann = s.annihilator();
        let brute: Vec<FpVector> = Subspace::full(4, 5)
            .elements()
            .filter(|v| s.basis().iter().all(|b| dot_mod(b, v, 5) == 0))
            .collect();
        assert_eq!(brute.len(), 25);
        assert!(brute.iter().all(|v| ann.contains(v)));
        assert_eq!(ann.dim(), 2);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(enumerate_subspaces(4, 6, 1), Err(AlgebraError::NotPrime(6))));
        assert!(enumerate_subspaces(2, 5, 3).is_err());
    }
}
