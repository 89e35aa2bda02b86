//! Knots as Seifert matrices, winding-number-zero satellites of two-bridge
//! bases, connected sums, and the exponentially growing families used for
//! the genus obstruction.
//!
//! A base knot carries two pieces of data: its Seifert matrix and a surgery
//! presentation of its double branched cover on a Hopf link with linking
//! matrix `[[a, 1], [1, b]]`. Meridian 1 (framing `a`) is the fixed
//! generator of the cover's first homology; each infection curve lifts to a
//! multiple of it.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{group_from_presentation, AlgebraError, FinAbGroup, IntMatrix};
use crate::json::JsonInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("Seifert matrix must be square with det(V - Vᵀ) = ±1")]
    InvalidSeifert,
    #[error("Hopf surgery linking matrix is singular (infinite first homology)")]
    SingularSurgery,
    #[error("infection class {class} is not an element of the cover group of order {order}")]
    InvalidClass { class: BigInt, order: BigInt },
    #[error("infection sign must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("multiplicity must be positive")]
    NonPositiveMultiplicity,
    #[error("a Hopf surgery base admits at most 2 infection sites, got {0}")]
    TooManyInfections(usize),
    #[error("knot sum must have at least one summand")]
    EmptySum,
    #[error("family indices must be strictly increasing")]
    IndexNotMonotone,
    #[error("family genus must be positive")]
    ZeroGenus,
    #[error("two-bridge parameter must be positive")]
    NonPositiveParameter,
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A square integer matrix `V` with `det(V − Vᵀ) = ±1`. The empty matrix is
/// the unknot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix(IntMatrix);

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, KnotError> {
        if !v.is_square() || !v.sub(&v.transpose()).determinant().abs().is_one() {
            return Err(KnotError::InvalidSeifert);
        }
        Ok(Self(v))
    }

    pub fn unknot() -> Self {
        Self(IntMatrix::zeros(0, 0))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    /// `V + Vᵀ`, which presents the double branched cover's first homology.
    pub fn symmetrized(&self) -> IntMatrix {
        self.0.add(&self.0.transpose())
    }

    /// Seifert matrix of the mirror image, `−Vᵀ`.
    pub fn mirror(&self) -> Self {
        Self(self.0.transpose().neg())
    }

    pub fn connected_sum(&self, other: &Self) -> Self {
        Self(self.0.direct_sum(&other.0))
    }
}

/// Figure-eight knot, `V = [[1, 1], [0, −1]]`.
pub fn figure_eight() -> SeifertMatrix {
    SeifertMatrix(IntMatrix::from_i64(&[&[1, 1], &[0, -1]]))
}

/// Torus knot T(2,5): `−1` on the diagonal and `1` on the subdiagonal.
pub fn torus_2_5() -> SeifertMatrix {
    torus_2_n(5)
}

/// Torus knot T(2,n), n odd ≥ 3.
pub fn torus_2_n(n: usize) -> SeifertMatrix {
    let size = n - 1;
    let mut v = IntMatrix::zeros(size, size);
    for i in 0..size {
        v[(i, i)] = BigInt::from(-1);
        if i + 1 < size {
            v[(i + 1, i)] = BigInt::one();
        }
    }
    SeifertMatrix(v)
}

/// Surgery on a Hopf link with framings `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HopfSurgery {
    a: BigInt,
    b: BigInt,
}

impl HopfSurgery {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self, KnotError> {
        let s = Self {
            a: a.into(),
            b: b.into(),
        };
        if s.linking_matrix().determinant().is_zero() {
            return Err(KnotError::SingularSurgery);
        }
        Ok(s)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn linking_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::identity(2);
        m[(0, 0)] = self.a.clone();
        m[(0, 1)] = BigInt::one();
        m[(1, 0)] = BigInt::one();
        m[(1, 1)] = self.b.clone();
        m
    }
}

/// Cyclic first homology of a Hopf surgery, with both meridians expressed as
/// multiples of meridian 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverHomology {
    pub group: FinAbGroup,
    /// Class of meridian 2 as a multiple of meridian 1, in `0..order`.
    pub second_meridian: BigInt,
}

impl CoverHomology {
    pub fn order(&self) -> BigInt {
        self.group.order()
    }
}

impl HopfSurgery {
    /// Reads off H₁ from the rows of the linking matrix as relations.
    pub fn cover_homology(&self) -> Result<CoverHomology, KnotError> {
        let pres = group_from_presentation(&self.linking_matrix())?;
        // Relation a·m₁ + m₂ = 0 makes the group cyclic on m₁.
        let order = pres.group.order();
        if order.is_one() {
            return Ok(CoverHomology {
                group: pres.group,
                second_meridian: BigInt::zero(),
            });
        }
        let m1 = &pres.generator_images[0][0];
        let m2 = &pres.generator_images[1][0];
        let inv = mod_inverse(m1, &order).expect("meridian 1 generates a Hopf surgery group");
        Ok(CoverHomology {
            group: pres.group,
            second_meridian: (m2 * inv).mod_floor(&order),
        })
    }
}

pub(crate) fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    e.gcd.is_one().then(|| e.x.mod_floor(n))
}

/// Base knot: Seifert matrix plus Hopf surgery description of Σ₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseKnot {
    pub seifert: SeifertMatrix,
    pub surgery: HopfSurgery,
}

/// Two-bridge knot with Seifert matrix `[[a, 1], [0, −a]]` and Σ₂ given by
/// surgery with framings `(−2a, 2a)`; its cover has order `4a² + 1`.
pub fn two_bridge_base(a: i64) -> Result<BaseKnot, KnotError> {
    if a < 1 {
        return Err(KnotError::NonPositiveParameter);
    }
    Ok(BaseKnot {
        seifert: SeifertMatrix::new(IntMatrix::from_i64(&[&[a, 1], &[0, -a]]))?,
        surgery: HopfSurgery::new(-2 * a, 2 * a)?,
    })
}

pub fn figure_eight_base() -> BaseKnot {
    two_bridge_base(1).expect("a = 1 is valid")
}

/// Orientation of an infecting companion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// The companion itself.
    Positive,
    /// Its mirror image.
    Mirror,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Mirror => -1,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self, KnotError> {
        match s {
            1 => Ok(Orientation::Positive),
            -1 => Ok(Orientation::Mirror),
            other => Err(KnotError::InvalidSign(other)),
        }
    }
}

/// Lift of an infection curve to Σ₂(base), as a multiple of meridian 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfectionSite {
    pub class: BigInt,
}

/// Infection by `multiplicity` copies of a companion (connected sum), or of
/// its mirror.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Infection {
    pub site: InfectionSite,
    pub companion: SeifertMatrix,
    pub orientation: Orientation,
    pub multiplicity: BigUint,
    /// The companion is assumed reversible so that its mirror is its
    /// concordance inverse. Not checkable from a Seifert matrix.
    pub reversible: bool,
}

/// A base knot infected along null-homologous curves disjoint from its
/// Seifert surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SatelliteKnot {
    base: BaseKnot,
    cover: CoverHomology,
    infections: Vec<Infection>,
}

impl SatelliteKnot {
    pub fn new(base: BaseKnot, infections: Vec<Infection>) -> Result<Self, KnotError> {
        if infections.len() > 2 {
            return Err(KnotError::TooManyInfections(infections.len()));
        }
        let cover = base.surgery.cover_homology()?;
        let order = cover.order();
        for inf in &infections {
            if inf.site.class.is_negative() || inf.site.class >= order {
                return Err(KnotError::InvalidClass {
                    class: inf.site.class.clone(),
                    order,
                });
            }
            if inf.multiplicity.is_zero() {
                return Err(KnotError::NonPositiveMultiplicity);
            }
        }
        Ok(Self {
            base,
            cover,
            infections,
        })
    }

    pub fn base(&self) -> &BaseKnot {
        &self.base
    }

    pub fn cover(&self) -> &CoverHomology {
        &self.cover
    }

    pub fn infections(&self) -> &[Infection] {
        &self.infections
    }

    /// The Seifert form is the base's: infection curves miss the surface.
    pub fn seifert(&self) -> &SeifertMatrix {
        &self.base.seifert
    }
}

/// `K(J)`: the base infected by `#^m J` along the lift of meridian 2 and by
/// the mirror `#^m J̄` along meridian 1.
pub fn build_k_of_j(
    companion: &SeifertMatrix,
    multiplicity: BigUint,
    base: &BaseKnot,
) -> Result<SatelliteKnot, KnotError> {
    if multiplicity.is_zero() {
        return Err(KnotError::NonPositiveMultiplicity);
    }
    let cover = base.surgery.cover_homology()?;
    let sites = [
        (cover.second_meridian.clone(), Orientation::Positive),
        (BigInt::one().mod_floor(&cover.order()), Orientation::Mirror),
    ];
    let infections = sites
        .into_iter()
        .map(|(class, orientation)| Infection {
            site: InfectionSite { class },
            companion: companion.clone(),
            orientation,
            multiplicity: multiplicity.clone(),
            reversible: true,
        })
        .collect();
    SatelliteKnot::new(base.clone(), infections)
}

/// Nonempty connected sum of satellites.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotSum(Vec<SatelliteKnot>);

impl KnotSum {
    pub fn new(summands: Vec<SatelliteKnot>) -> Result<Self, KnotError> {
        if summands.is_empty() {
            return Err(KnotError::EmptySum);
        }
        Ok(Self(summands))
    }

    pub fn summands(&self) -> &[SatelliteKnot] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Seifert matrix of the sum (block diagonal).
    pub fn seifert(&self) -> SeifertMatrix {
        SeifertMatrix(IntMatrix::block_diagonal(
            self.0.iter().map(|s| s.seifert().matrix()),
        ))
    }

    /// H₁(Σ₂) as the direct sum of the summands' groups.
    pub fn cover_group(&self) -> FinAbGroup {
        self.0
            .iter()
            .fold(FinAbGroup::trivial(), |acc, s| acc.sum(&s.cover().group))
    }
}

/// Parameters of the family `K^k = #_{i=1}^{2g+2} K(J_{k(2g+2)+i})` with
/// `J_i = #^{m_i} T(2,5)` and `m_i = 2^{2i+1} g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    genus: u32,
    indices: Vec<u64>,
}

impl FamilySpec {
    pub fn new(genus: u32, indices: Vec<u64>) -> Result<Self, KnotError> {
        if genus == 0 {
            return Err(KnotError::ZeroGenus);
        }
        if indices.is_empty() {
            return Err(KnotError::EmptySum);
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(KnotError::IndexNotMonotone);
        }
        Ok(Self { genus, indices })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Summands per family member, 2g + 2.
    pub fn block(&self) -> u64 {
        2 * self.genus as u64 + 2
    }

    /// Global summand index `k(2g+2) + i` for each summand, in order.
    pub fn summand_indices(&self) -> Vec<u64> {
        let b = self.block();
        self.indices
            .iter()
            .flat_map(|&k| (1..=b).map(move |i| k * b + i))
            .collect()
    }

    /// `m_i = 2^{2i+1} g`.
    pub fn multiplicity(&self, i: u64) -> BigUint {
        (BigUint::one() << (2 * i + 1)) * BigUint::from(self.genus)
    }
}

/// Builds the knot sum described by `spec`, with T(2,5) companions.
pub fn build_family(spec: &FamilySpec) -> Result<KnotSum, KnotError> {
    build_family_with(spec, &torus_2_5())
}

/// As [`build_family`] but with an arbitrary companion knot.
pub fn build_family_with(spec: &FamilySpec, companion: &SeifertMatrix) -> Result<KnotSum, KnotError> {
    let base = figure_eight_base();
    let summands = spec
        .summand_indices()
        .into_iter()
        .map(|i| build_k_of_j(companion, spec.multiplicity(i), &base))
        .collect::<Result<Vec<_>, _>>()?;
    KnotSum::new(summands)
}

/// Named companion/base knots: `figure-eight`, `torus-2-5`, `two-bridge:<a>`.
pub fn preset_seifert(name: &str) -> Result<SeifertMatrix, KnotError> {
    match name {
        "figure-eight" => Ok(figure_eight()),
        "torus-2-5" => Ok(torus_2_5()),
        "unknot" => Ok(SeifertMatrix::unknot()),
        other => {
            let a = other
                .strip_prefix("two-bridge:")
                .and_then(|s| s.parse::<i64>().ok())
                .ok_or_else(|| KnotError::UnknownPreset(other.to_string()))?;
            Ok(two_bridge_base(a)?.seifert)
        }
    }
}

// ---------------------------------------------------------------------------
// JSON documents

#[derive(Serialize, Deserialize)]
struct SurgeryDoc {
    a: JsonInt,
    b: JsonInt,
}

#[derive(Serialize, Deserialize)]
struct BaseDoc {
    seifert: Vec<Vec<JsonInt>>,
    surgery: SurgeryDoc,
}

#[derive(Serialize, Deserialize)]
struct InfectionDoc {
    class: JsonInt,
    sign: i64,
    companion_seifert: Vec<Vec<JsonInt>>,
    multiplicity: JsonInt,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    reversible: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

/// JSON form of a [`SatelliteKnot`]; a [`KnotSum`] is an array of these.
#[derive(Serialize, Deserialize)]
pub struct SatelliteDoc {
    base: BaseDoc,
    infections: Vec<InfectionDoc>,
}

fn matrix_doc(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(JsonInt).collect())
        .collect()
}

fn matrix_from_doc(rows: &[Vec<JsonInt>]) -> Result<IntMatrix, KnotError> {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    Ok(IntMatrix::from_rows(&rows)?)
}

impl From<&SatelliteKnot> for SatelliteDoc {
    fn from(k: &SatelliteKnot) -> Self {
        SatelliteDoc {
            base: BaseDoc {
                seifert: matrix_doc(k.base.seifert.matrix()),
                surgery: SurgeryDoc {
                    a: JsonInt(k.base.surgery.a.clone()),
                    b: JsonInt(k.base.surgery.b.clone()),
                },
            },
            infections: k
                .infections
                .iter()
                .map(|inf| InfectionDoc {
                    class: JsonInt(inf.site.class.clone()),
                    sign: inf.orientation.sign(),
                    companion_seifert: matrix_doc(inf.companion.matrix()),
                    multiplicity: JsonInt(BigInt::from(inf.multiplicity.clone())),
                    reversible: inf.reversible,
                })
                .collect(),
        }
    }
}

impl TryFrom<SatelliteDoc> for SatelliteKnot {
    type Error = KnotError;

    fn try_from(doc: SatelliteDoc) -> Result<Self, KnotError> {
        let base = BaseKnot {
            seifert: SeifertMatrix::new(matrix_from_doc(&doc.base.seifert)?)?,
            surgery: HopfSurgery::new(doc.base.surgery.a.0, doc.base.surgery.b.0)?,
        };
        let infections = doc
            .infections
            .into_iter()
            .map(|d| {
                let multiplicity = d
                    .multiplicity
                    .0
                    .to_biguint()
                    .filter(|m| !m.is_zero())
                    .ok_or(KnotError::NonPositiveMultiplicity)?;
                Ok(Infection {
                    site: InfectionSite { class: d.class.0 },
                    companion: SeifertMatrix::new(matrix_from_doc(&d.companion_seifert)?)?,
                    orientation: Orientation::from_sign(d.sign)?,
                    multiplicity,
                    reversible: d.reversible,
                })
            })
            .collect::<Result<Vec<_>, KnotError>>()?;
        SatelliteKnot::new(base, infections)
    }
}

impl Serialize for SatelliteKnot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SatelliteDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SatelliteKnot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = SatelliteDoc::deserialize(d)?;
        SatelliteKnot::try_from(doc).map_err(serde::de::Error::custom)
    }
}

impl Serialize for KnotSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KnotSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<SatelliteKnot>::deserialize(d)?;
        KnotSum::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for KnotSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sum of {} satellite(s), H1 = {}", self.len(), self.cover_group())
    }
}

/// Parses either a single satellite object or an array of them.
pub fn knot_sum_from_json(text: &str) -> Result<KnotSum, serde_json::Error> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.is_array() {
        serde_json::from_value(value)
    } else {
        let k: SatelliteKnot = serde_json::from_value(value)?;
        Ok(KnotSum(vec![k]))
    }
}

/// Small-integer view of a multiplicity, when it fits.
pub fn multiplicity_u64(m: &BigUint) -> Option<u64> {
    m.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::symmetric_signature;

    #[test]
    fn figure_eight_data() {
        let v = figure_eight();
        let g = group_from_presentation(&v.symmetrized()).unwrap().group;
        assert_eq!(g.invariant_factors(), &[BigInt::from(5)]);
        assert_eq!(symmetric_signature(&v.symmetrized()).unwrap(), 0);
        let m = v.matrix();
        assert_eq!(m.sub(&m.transpose()).determinant(), BigInt::one());
    }

    #[test]
    fn torus_knot_data() {
        let v = torus_2_5();
        assert_eq!(v.size(), 4);
        assert_eq!(v.symmetrized().determinant().abs(), BigInt::from(5));
        assert_eq!(symmetric_signature(&v.symmetrized()).unwrap(), -4);
    }

    #[test]
    fn two_bridge_bases() {
        assert_eq!(two_bridge_base(1).unwrap().seifert, figure_eight());
        for (a, order) in [(1, 5), (2, 17), (3, 37)] {
            let b = two_bridge_base(a).unwrap();
            assert_eq!(b.seifert.symmetrized().determinant().abs(), BigInt::from(order));
            let h = b.surgery.cover_homology().unwrap();
            assert_eq!(h.order(), BigInt::from(order));
            assert_eq!(h.second_meridian, BigInt::from(2 * a));
        }
        assert!(two_bridge_base(0).is_err());
    }

    #[test]
    fn k_of_j_sites() {
        let k = build_k_of_j(&torus_2_5(), BigUint::from(8u32), &figure_eight_base()).unwrap();
        let classes: Vec<BigInt> = k.infections().iter().map(|i| i.site.class.clone()).collect();
        assert_eq!(classes, vec![BigInt::from(2), BigInt::from(1)]);
        let signs: Vec<i64> = k.infections().iter().map(|i| i.orientation.sign()).collect();
        assert_eq!(signs, vec![1, -1]);
        assert_eq!(k.cover().group.invariant_factors(), &[BigInt::from(5)]);
    }

    #[test]
    fn family_shapes() {
        let spec = FamilySpec::new(1, vec![0]).unwrap();
        let sum = build_family(&spec).unwrap();
        assert_eq!(sum.len(), 4);
        let ms: Vec<BigUint> = sum.summands().iter().map(|s| s.infections()[0].multiplicity.clone()).collect();
        assert_eq!(ms, [8u32, 32, 128, 512].map(BigUint::from).to_vec());
        assert_eq!(sum.cover_group().elementary_rank(), Some((5, 4)));
        let two = build_family(&FamilySpec::new(1, vec![0, 1]).unwrap()).unwrap();
        assert_eq!(two.len(), 8);
        assert!(matches!(FamilySpec::new(1, vec![1, 1]), Err(KnotError::IndexNotMonotone)));
        assert!(matches!(FamilySpec::new(1, vec![2, 1]), Err(KnotError::IndexNotMonotone)));
    }

    #[test]
    fn json_roundtrip_with_big_multiplicities() {
        let spec = FamilySpec::new(2, vec![3]).unwrap();
        let sum = build_family(&spec).unwrap();
        let text = serde_json::to_string(&sum).unwrap();
        assert!(text.contains("\"base\":{\"seifert\":[[1,1],[0,-1]],\"surgery\":{\"a\":-2,\"b\":2}}"));
        // m_i for i = 3*6+6 = 24 is 2^49 * 2 = 2^50, still a number; index 27 would be a string
        let back = knot_sum_from_json(&text).unwrap();
        assert_eq!(back, sum);
        let huge = build_k_of_j(&torus_2_5(), BigUint::one() << 80, &figure_eight_base()).unwrap();
        let t = serde_json::to_string(&huge).unwrap();
        assert!(t.contains("\"multiplicity\":\"1208925819614629174706176\""));
        let back: SatelliteKnot = serde_json::from_str(&t).unwrap();
        assert_eq!(back, huge);
    }

    #[test]
    fn json_rejects_invalid_documents() {
        let bad_seifert = r#"{"base":{"seifert":[[1,0],[0,1]],"surgery":{"a":-2,"b":2}},"infections":[]}"#;
        assert!(knot_sum_from_json(bad_seifert).is_err());
        let bad_sign = r#"{"base":{"seifert":[[1,1],[0,-1]],"surgery":{"a":-2,"b":2}},"infections":[{"class":1,"sign":2,"companion_seifert":[],"multiplicity":1}]}"#;
        assert!(knot_sum_from_json(bad_sign).is_err());
        let bad_class = r#"{"base":{"seifert":[[1,1],[0,-1]],"surgery":{"a":-2,"b":2}},"infections":[{"class":7,"sign":1,"companion_seifert":[],"multiplicity":1}]}"#;
        assert!(knot_sum_from_json(bad_class).is_err());
        assert!(knot_sum_from_json("[]").is_err());
        assert!(knot_sum_from_json("{").is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(preset_seifert("torus-2-5").unwrap(), torus_2_5());
        assert_eq!(preset_seifert("two-bridge:1").unwrap(), figure_eight());
        assert!(preset_seifert("trefoil").is_err());
    }
}
