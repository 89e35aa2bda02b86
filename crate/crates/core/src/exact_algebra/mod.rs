//! Exact integer, rational and real-algebraic linear algebra, plus subspace
//! machinery over prime fields.

mod algebraic;
mod charpoly;
mod matrix;
mod poly;
mod signature;
mod snf;
mod subspace;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use algebraic::AlgebraicReal;
pub use charpoly::berkowitz;
pub use matrix::IntMatrix;
pub use poly::{sign_changes, QPoly};
pub use signature::{hermitian_signature_at_root, symmetric_signature};
pub use snf::{smith_normal_form, SmithDecomposition};
pub use subspace::{dot_mod, enumerate_subspaces, gaussian_binomial, FpVector, Subspace, SubspaceIter};

pub use subspace::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix rows have different lengths")]
    RaggedRows,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("presentation has a free summand (zero invariant factor)")]
    InfiniteGroup,
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace dimension {dim} exceeds ambient dimension {ambient}")]
    DimensionOutOfRange { dim: usize, ambient: usize },
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
}

/// Finite abelian group ℤ/d₁ ⊕ … ⊕ ℤ/dₖ with d₁ | d₂ | … and every dᵢ ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
        }
    }

    pub fn from_invariant_factors(factors: Vec<BigInt>) -> Result<Self, AlgebraError> {
        if factors.iter().any(|d| d.is_zero()) {
            return Err(AlgebraError::InfiniteGroup);
        }
        let mut fs: Vec<BigInt> = factors.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
        fs.sort();
        // re-normalise to a divisibility chain via SNF of the diagonal matrix
        let n = fs.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in fs.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        let chain = smith_normal_form(&m)
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Ok(Self {
            invariant_factors: chain,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Rank over F_p when the group is elementary abelian of exponent p.
    pub fn elementary_rank(&self) -> Option<(u64, usize)> {
        let first = self.invariant_factors.first()?;
        if self.invariant_factors.iter().any(|d| d != first) {
            return None;
        }
        let p: u64 = first.try_into().ok()?;
        is_prime(p).then_some((p, self.invariant_factors.len()))
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut fs = self.invariant_factors.clone();
        fs.extend(other.invariant_factors.iter().cloned());
        Self::from_invariant_factors(fs).expect("finite factors")
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cokernel of a relation matrix together with the images of the original
/// generators in the cyclic decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub group: FinAbGroup,
    /// `generator_images[j][i]`: coordinate of original generator j on the
    /// i-th cyclic factor, reduced modulo that factor's order.
    pub generator_images: Vec<Vec<BigInt>>,
}

/// The group ⟨e₁,…,eₙ | rows of `a`⟩, where column j of `a` is generator eⱼ.
pub fn group_from_presentation(a: &IntMatrix) -> Result<GroupPresentation, AlgebraError> {
    let snf = smith_normal_form(a);
    let cols = a.cols();
    let diag: Vec<BigInt> = (0..cols)
        .map(|i| {
            if i < a.rows() {
                snf.diagonal[(i, i)].clone()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    if diag.iter().any(Zero::is_zero) {
        return Err(AlgebraError::InfiniteGroup);
    }
    // generators e = W f, where f_i generates ℤ/d_i
    let kept: Vec<usize> = (0..cols).filter(|&i| !diag[i].is_one()).collect();
    let generator_images = (0..cols)
        .map(|j| {
            kept.iter()
                .map(|&i| snf.right[(j, i)].mod_floor(&diag[i]))
                .collect()
        })
        .collect();
    Ok(GroupPresentation {
        group: FinAbGroup {
            invariant_factors: kept.iter().map(|&i| diag[i].clone()).collect(),
        },
        generator_images,
    })
}
