//! Four-genus obstruction from Casson-Gordon signatures.
//!
//! If `g₄(K) ≤ g`, then `H₁(Σ₂(K)) = A₁ ⊕ A₂` with `A₁` generated by at
//! most `2g` elements and some `B ≤ A₂` with `|B|² = |A₂|`, such that every
//! prime-power character vanishing on `A₁ ⊕ B` has `|σ(K,χ) + σ(K)| ≤ 4g`.
//!
//! For `H₁ ≅ F_pᴺ` the subgroup `A₁ ⊕ B` has dimension `d + (N−d)/2` for
//! some `d ≤ 2g` with `N − d` even. The sweep below quantifies over *every*
//! subspace of those dimensions (a superset of the realizable `A₁ ⊕ B`) and
//! looks for a character in its annihilator whose certified magnitude
//! exceeds `4g`. Success for every subspace contradicts `g₄(K) ≤ g`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{dot_mod, enumerate_subspaces, gaussian_binomial, AlgebraError, Subspace};
use crate::json::rational_string;
use crate::knot_model::{KnotError, KnotSum};
use crate::signatures::{ordinary_signature, Character, SignatureError, SignatureEstimate, SummandTable};

/// The only character modulus supported by the obstruction engine.
pub const MODULUS: u32 = 5;

const CHUNK: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GilmerError {
    #[error("unsupported cover group: {0}")]
    UnsupportedGroup(String),
    #[error("character modulus {0} is not supported (only 5)")]
    UnsupportedModulus(u32),
    #[error("{count} admissible subspaces exceed the sweep budget of {budget}")]
    TooLarge { count: BigUint, budget: u64 },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Dimensions `d + (N−d)/2` for `0 ≤ d ≤ min(2g, N)` with `N − d` even,
/// sorted and deduplicated.
pub fn admissible_subspace_dims(n: usize, g: u32) -> Vec<usize> {
    let max_d = (2 * g as usize).min(n);
    let dims: BTreeSet<usize> = (0..=max_d)
        .filter(|d| (n - d).is_multiple_of(2))
        .map(|d| d + (n - d) / 2)
        .collect();
    dims.into_iter().collect()
}

/// Total number of subspaces in the admissible dimensions.
pub fn admissible_subspace_count(n: usize, g: u32, p: u32) -> BigUint {
    admissible_subspace_dims(n, g)
        .into_iter()
        .map(|d| gaussian_binomial(n, d, p as u64))
        .sum()
}

/// A knot sum whose double branched cover has homology `F₅ᴺ`, one factor
/// per summand, together with its per-summand signature tables.
#[derive(Clone, Debug)]
pub struct ObstructionInstance {
    knot: KnotSum,
    genus: u32,
    rank: usize,
    ordinary: i64,
    table: SummandTable,
}

impl ObstructionInstance {
    pub fn new(knot: KnotSum, genus: u32) -> Result<Self, GilmerError> {
        Self::with_modulus(knot, genus, MODULUS)
    }

    pub fn with_modulus(knot: KnotSum, genus: u32, q: u32) -> Result<Self, GilmerError> {
        if q != MODULUS {
            return Err(GilmerError::UnsupportedModulus(q));
        }
        for (i, s) in knot.summands().iter().enumerate() {
            let g = &s.cover().group;
            if g.invariant_factors() != [BigInt::from(q)] {
                return Err(GilmerError::UnsupportedGroup(format!(
                    "summand {i} has H1 = {g}, expected Z/{q}"
                )));
            }
        }
        let table = SummandTable::build(&knot, q)?;
        Ok(Self {
            rank: knot.len(),
            ordinary: ordinary_signature(&knot),
            knot,
            genus,
            table,
        })
    }

    pub fn knot(&self) -> &KnotSum {
        &self.knot
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn prime(&self) -> u32 {
        MODULUS
    }

    pub fn ordinary_signature(&self) -> i64 {
        self.ordinary
    }

    pub fn threshold(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(4 * self.genus as u64))
    }

    pub fn estimate(&self, chi: &Character) -> Result<SignatureEstimate, GilmerError> {
        Ok(self.table.estimate(chi)?)
    }

    /// `|center + σ(K)| − slack`, a certified lower bound on `|σ(K,χ) + σ(K)|`.
    pub fn certified_bound(&self, est: &SignatureEstimate) -> BigRational {
        shifted_bound(est, self.ordinary)
    }

    pub fn admissible_dims(&self) -> Vec<usize> {
        admissible_subspace_dims(self.rank, self.genus)
    }
}

fn shifted_bound(est: &SignatureEstimate, ordinary: i64) -> BigRational {
    (&est.center + BigRational::from_integer(BigInt::from(ordinary))).abs() - &est.slack
}

/// A character in the annihilator of a subspace, with its certified estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub character: Character,
    pub estimate: SignatureEstimate,
    pub bound: BigRational,
}

/// First nonzero character of `annihilator(S)` (in canonical order) whose
/// certified bound strictly exceeds `4g`.
pub fn witness_search(s: &Subspace, inst: &ObstructionInstance) -> Option<Witness> {
    let threshold = inst.threshold();
    s.annihilator()
        .elements()
        .skip(1)
        .find_map(|v| {
            let chi = Character::new(MODULUS, v).ok()?;
            let estimate = inst.estimate(&chi).ok()?;
            let bound = inst.certified_bound(&estimate);
            (bound > threshold).then_some(Witness {
                character: chi,
                estimate,
                bound,
            })
        })
}

/// One line of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub subspace_basis: Vec<Vec<u32>>,
    pub witness: Vec<u32>,
    #[serde(with = "rational_string")]
    pub center: BigRational,
    #[serde(with = "rational_string")]
    pub slack: BigRational,
    #[serde(with = "rational_string")]
    pub bound: BigRational,
    #[serde(with = "rational_string")]
    pub threshold: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub p: u32,
    pub rank: usize,
}

/// Compact form used when listing every subspace is infeasible: all nonzero
/// characters exceed the threshold and no admissible dimension is `N`, so
/// every admissible subspace has a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalClaim {
    pub characters_checked: u64,
    #[serde(with = "rational_string")]
    pub min_bound: BigRational,
}

/// Self-contained proof that `g₄(knot) > genus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCertificate {
    pub genus: u32,
    pub group: GroupDescriptor,
    pub knot: KnotSum,
    pub records: Vec<CertificateRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal: Option<UniversalClaim>,
}

impl GenusCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GilmerError> {
        serde_json::from_str(text).map_err(|e| GilmerError::MalformedCertificate(e.to_string()))
    }

    pub fn min_bound(&self) -> Option<BigRational> {
        self.records
            .iter()
            .map(|r| r.bound.clone())
            .chain(self.universal.iter().map(|u| u.min_bound.clone()))
            .min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Proved(GenusCertificate),
    /// The first subspace (in canonical order) with no witness.
    Inconclusive { subspace: Subspace },
}

impl Outcome {
    pub fn certificate(&self) -> Option<&GenusCertificate> {
        match self {
            Outcome::Proved(c) => Some(c),
            Outcome::Inconclusive { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProveOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Largest number of subspaces swept one by one.
    pub max_sweep: u64,
}

impl Default for ProveOptions {
    fn default() -> Self {
        Self {
            jobs: None,
            max_sweep: 2_000_000,
        }
    }
}

fn record_for(s: &Subspace, w: &Witness, threshold: &BigRational) -> CertificateRecord {
    CertificateRecord {
        subspace_basis: s.basis().to_vec(),
        witness: w.character.coeffs().to_vec(),
        center: w.estimate.center.clone(),
        slack: w.estimate.slack.clone(),
        bound: w.bound.clone(),
        threshold: threshold.clone(),
    }
}

/// Minimum certified bound over all nonzero characters, if every one of them
/// exceeds the threshold.
fn universal_claim(inst: &ObstructionInstance) -> Option<UniversalClaim> {
    let total = (MODULUS as u64).checked_pow(inst.rank as u32)?;
    let threshold = inst.threshold();
    let bounds: Option<Vec<BigRational>> = (1..total)
        .into_par_iter()
        .map(|i| {
            let chi = Character::from_index(MODULUS, inst.rank, i as usize);
            let b = inst.certified_bound(&inst.estimate(&chi).ok()?);
            (b > threshold).then_some(b)
        })
        .collect();
    Some(UniversalClaim {
        characters_checked: total - 1,
        min_bound: bounds?.into_iter().min()?,
    })
}

fn sweep(inst: &ObstructionInstance, opts: &ProveOptions) -> Result<Outcome, GilmerError> {
    let threshold = inst.threshold();
    let n = inst.rank;
    let mut records = Vec::new();
    let mut swept: u64 = 0;
    for d in inst.admissible_dims() {
        let mut it = enumerate_subspaces(n, MODULUS, d)?.peekable();
        while it.peek().is_some() {
            let chunk: Vec<Subspace> = it.by_ref().take(CHUNK).collect();
            swept += chunk.len() as u64;
            let found: Vec<Option<Witness>> =
                chunk.par_iter().map(|s| witness_search(s, inst)).collect();
            if let Some(pos) = found.iter().position(Option::is_none) {
                return Ok(Outcome::Inconclusive {
                    subspace: chunk[pos].clone(),
                });
            }
            if swept > opts.max_sweep {
                return Err(GilmerError::TooLarge {
                    count: admissible_subspace_count(n, inst.genus, MODULUS),
                    budget: opts.max_sweep,
                });
            }
            records.extend(
                chunk
                    .iter()
                    .zip(found)
                    .map(|(s, w)| record_for(s, &w.expect("checked above"), &threshold)),
            );
        }
    }
    Ok(Outcome::Proved(GenusCertificate {
        genus: inst.genus,
        group: GroupDescriptor {
            p: MODULUS,
            rank: n,
        },
        knot: inst.knot.clone(),
        records,
        universal: None,
    }))
}

fn prove_inner(inst: &ObstructionInstance, opts: &ProveOptions) -> Result<Outcome, GilmerError> {
    let total = admissible_subspace_count(inst.rank, inst.genus, MODULUS);
    let fits = total.to_u64().is_some_and(|t| t <= opts.max_sweep);
    let below_full = inst.admissible_dims().iter().all(|&d| d < inst.rank);
    if !fits && below_full {
        if let Some(claim) = universal_claim(inst) {
            return Ok(Outcome::Proved(GenusCertificate {
                genus: inst.genus,
                group: GroupDescriptor {
                    p: MODULUS,
                    rank: inst.rank,
                },
                knot: inst.knot.clone(),
                records: Vec::new(),
                universal: Some(claim),
            }));
        }
    }
    sweep(inst, opts)
}

/// Runs the full subspace sweep. Output is independent of the worker count.
pub fn prove_genus_exceeds(inst: &ObstructionInstance, opts: &ProveOptions) -> Result<Outcome, GilmerError> {
    match opts.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| GilmerError::UnsupportedGroup(format!("thread pool: {e}")))?;
            pool.install(|| prove_inner(inst, opts))
        }
        None => prove_inner(inst, opts),
    }
}

/// Re-derives everything a certificate claims from its own knot description.
/// Returns the list of problems found (empty means valid).
pub fn certificate_problems(cert: &GenusCertificate) -> Result<Vec<String>, GilmerError> {
    let inst = ObstructionInstance::new(cert.knot.clone(), cert.genus)?;
    let mut problems = Vec::new();
    let n = inst.rank();
    if cert.group != (GroupDescriptor { p: MODULUS, rank: n }) {
        problems.push(format!(
            "group descriptor {:?} does not match knot (p = {MODULUS}, rank = {n})",
            cert.group
        ));
        return Ok(problems);
    }
    let threshold = inst.threshold();
    let dims = inst.admissible_dims();

    if let Some(claim) = &cert.universal {
        if !cert.records.is_empty() {
            problems.push("universal certificate must not list records".into());
        }
        if dims.iter().any(|&d| d >= n) {
            problems.push("an admissible dimension equals the rank; universal claim is void".into());
        }
        match universal_claim(&inst) {
            Some(actual) if actual == *claim => {}
            Some(actual) => problems.push(format!(
                "universal claim mismatch: recomputed min bound {}",
                crate::json::format_rational(&actual.min_bound)
            )),
            None => problems.push("some nonzero character does not exceed the threshold".into()),
        }
        return Ok(problems);
    }

    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut per_dim = vec![0u64; n + 1];
    for (idx, rec) in cert.records.iter().enumerate() {
        let basis = &rec.subspace_basis;
        let s = match Subspace::span(n, MODULUS, basis) {
            Ok(s) => s,
            Err(e) => {
                problems.push(format!("record {idx}: invalid basis ({e})"));
                continue;
            }
        };
        if s.basis() != basis.as_slice() {
            problems.push(format!("record {idx}: basis is not in reduced echelon form"));
            continue;
        }
        if !dims.contains(&s.dim()) {
            problems.push(format!("record {idx}: dimension {} is not admissible", s.dim()));
            continue;
        }
        if !seen.insert(basis.clone()) {
            problems.push(format!("record {idx}: duplicate subspace"));
            continue;
        }
        per_dim[s.dim()] += 1;
        if rec.threshold != threshold {
            problems.push(format!("record {idx}: threshold is not 4g"));
        }
        let chi = match Character::new(MODULUS, rec.witness.clone()) {
            Ok(c) if c.coeffs().len() == n => c,
            _ => {
                problems.push(format!("record {idx}: malformed witness"));
                continue;
            }
        };
        if chi.is_trivial() {
            problems.push(format!("record {idx}: witness is the trivial character"));
            continue;
        }
        if basis.iter().any(|b| dot_mod(b, chi.coeffs(), MODULUS) != 0) {
            problems.push(format!("record {idx}: witness does not vanish on the subspace"));
            continue;
        }
        let est = inst.estimate(&chi)?;
        if est.center != rec.center || est.slack != rec.slack {
            problems.push(format!("record {idx}: recorded estimate differs from recomputation"));
        }
        let bound = shifted_bound(&est, inst.ordinary_signature());
        if bound != rec.bound {
            problems.push(format!("record {idx}: recorded bound differs from recomputation"));
        }
        if !(rec.bound > threshold && bound > threshold) {
            problems.push(format!("record {idx}: bound does not exceed 4g"));
        }
    }
    for d in dims {
        let want = gaussian_binomial(n, d, MODULUS as u64);
        if BigUint::from(per_dim[d]) != want {
            problems.push(format!(
                "coverage: {} subspaces of dimension {d} listed, {want} exist",
                per_dim[d]
            ));
        }
    }
    Ok(problems)
}

/// True iff the certificate is internally consistent and covers every
/// admissible subspace.
pub fn check_certificate(cert: &GenusCertificate) -> Result<bool, GilmerError> {
    Ok(certificate_problems(cert)?.is_empty())
}
