//! Densities of vector bundles on a polarized curve from Harder–Narasimhan
//! data, and the syzygy decomposition of two-dimensional pairs.
//!
//! Slopes are absolute: `deg / rank` on the curve. A polarization of degree
//! `d` maps a slope `a` to the breakpoint `1 - a/d`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::density::{PairDensity, Provenance};
use crate::exactnum::rational::int;
use crate::exactnum::{rational, PiecewisePolynomial, Polynomial, Rational};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("HN data needs at least one slope")]
    Empty,
    #[error("{slopes} slopes but {ranks} ranks")]
    LengthMismatch { slopes: usize, ranks: usize },
    #[error("slopes must be strictly decreasing")]
    SlopesNotDecreasing,
    #[error("ranks must be positive")]
    ZeroRank,
    #[error("polarization degree must be positive")]
    ZeroPolarization,
    #[error("a syzygy bundle needs at least two generators")]
    TooFewGenerators,
    #[error("syzygy bundle must have rank {expected}, got {got}")]
    RankMismatch { expected: u64, got: u64 },
    #[error("syzygy bundle must have degree {expected}, got {got}")]
    DegreeMismatch { expected: String, got: String },
    #[error("largest slope {slope} exceeds the slope {ambient} of the ambient sum of line bundles")]
    SlopeAboveAmbient { slope: String, ambient: String },
    #[error("the two HN data describe bundles of different rank or degree")]
    ReductionMismatch,
    #[error("minimal slope in characteristic p exceeds the characteristic-0 minimal slope")]
    ReductionInconsistent,
    #[error("density difference is negative somewhere")]
    NegativeDifference,
    #[error(transparent)]
    Density(#[from] crate::density::DensityError),
}

/// Slopes `a_1 > ... > a_k` of the graded pieces of an HN filtration, with
/// their ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HNDataJson", into = "HNDataJson")]
pub struct HNData {
    slopes: Vec<Rational>,
    ranks: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct HNDataJson {
    #[serde(with = "rational::vec")]
    slopes: Vec<Rational>,
    ranks: Vec<u64>,
}

impl TryFrom<HNDataJson> for HNData {
    type Error = BundleError;
    fn try_from(j: HNDataJson) -> Result<Self, BundleError> {
        HNData::new(j.slopes, j.ranks)
    }
}

impl From<HNData> for HNDataJson {
    fn from(h: HNData) -> Self {
        HNDataJson { slopes: h.slopes, ranks: h.ranks }
    }
}

impl HNData {
    pub fn new(slopes: Vec<Rational>, ranks: Vec<u64>) -> Result<Self, BundleError> {
        if slopes.is_empty() {
            return Err(BundleError::Empty);
        }
        if slopes.len() != ranks.len() {
            return Err(BundleError::LengthMismatch { slopes: slopes.len(), ranks: ranks.len() });
        }
        if slopes.windows(2).any(|w| w[0] <= w[1]) {
            return Err(BundleError::SlopesNotDecreasing);
        }
        if ranks.contains(&0) {
            return Err(BundleError::ZeroRank);
        }
        Ok(Self { slopes, ranks })
    }

    /// A semistable bundle of the given slope and rank.
    pub fn semistable(slope: Rational, rank: u64) -> Result<Self, BundleError> {
        Self::new(vec![slope], vec![rank])
    }

    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.iter().sum()
    }

    pub fn total_degree(&self) -> Rational {
        self.slopes.iter().zip(&self.ranks).map(|(a, &r)| a * Rational::from_integer(r.into())).sum()
    }

    /// Average slope `deg / rank`.
    pub fn slope(&self) -> Rational {
        self.total_degree() / Rational::from_integer(self.total_rank().into())
    }

    pub fn max_slope(&self) -> &Rational {
        &self.slopes[0]
    }

    pub fn min_slope(&self) -> &Rational {
        self.slopes.last().expect("nonempty")
    }

    pub fn is_semistable(&self) -> bool {
        self.slopes.len() == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    d: u64,
    g: u64,
}

impl Polarization {
    pub fn new(d: u64, g: u64) -> Result<Self, BundleError> {
        if d == 0 {
            return Err(BundleError::ZeroPolarization);
        }
        Ok(Self { d, g })
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn genus(&self) -> u64 {
        self.g
    }

    fn d_rat(&self) -> Rational {
        Rational::from_integer(self.d.into())
    }
}

/// The syzygy bundle `V` of `mu` generators of common degree `d0`:
/// `0 -> V -> O(1 - d0)^mu -> O(1) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygySpec {
    mu: u64,
    d0: u64,
    pol: Polarization,
    hn_v: HNData,
}

impl SyzygySpec {
    pub fn new(mu: u64, d0: u64, pol: Polarization, hn_v: HNData) -> Result<Self, BundleError> {
        if mu < 2 {
            return Err(BundleError::TooFewGenerators);
        }
        if hn_v.total_rank() != mu - 1 {
            return Err(BundleError::RankMismatch { expected: mu - 1, got: hn_v.total_rank() });
        }
        let spec = Self { mu, d0, pol, hn_v };
        let expected = spec.ambient_slope() * Rational::from_integer(mu.into()) - pol.d_rat();
        if spec.hn_v.total_degree() != expected {
            return Err(BundleError::DegreeMismatch {
                expected: expected.to_string(),
                got: spec.hn_v.total_degree().to_string(),
            });
        }
        // every subbundle of V sits in the semistable ambient sum
        if spec.hn_v.max_slope() > &spec.ambient_slope() {
            return Err(BundleError::SlopeAboveAmbient {
                slope: spec.hn_v.max_slope().to_string(),
                ambient: spec.ambient_slope().to_string(),
            });
        }
        debug_assert!(spec.hn_v.min_slope() <= &spec.hn_v.slope());
        debug_assert!(spec.hn_v.slope() < spec.ambient_slope());
        Ok(spec)
    }

    /// `d (1 - d0)`, the slope of each summand `O(1 - d0)`.
    pub fn ambient_slope(&self) -> Rational {
        self.pol.d_rat() * (int(1) - Rational::from_integer(self.d0.into()))
    }

    pub fn ambient(&self) -> HNData {
        HNData::semistable(self.ambient_slope(), self.mu).expect("mu >= 2")
    }

    pub fn hn_v(&self) -> &HNData {
        &self.hn_v
    }

    pub fn polarization(&self) -> Polarization {
        self.pol
    }

    pub fn generators(&self) -> u64 {
        self.mu
    }

    pub fn generator_degree(&self) -> u64 {
        self.d0
    }
}

// -sum_{k in ks} r_k (a_k + d (x - 1))
fn tail_sum<'a>(terms: impl Iterator<Item = (&'a Rational, &'a u64)>, d: &Rational) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (a, &r) in terms {
        let r = Rational::from_integer(r.into());
        let piece = Polynomial::linear(d.clone(), a - d);
        acc = &acc - &piece.scale(&r);
    }
    acc
}

/// `f(x) = -sum_{k >= i+1} r_k (a_k + d(x-1))` on `[1 - a_i/d, 1 - a_{i+1}/d)`,
/// the full sum left of `1 - a_1/d`, and 0 from `1 - a_min/d` on.
pub fn bundle_density(hn: &HNData, pol: Polarization) -> PiecewisePolynomial {
    let d = pol.d_rat();
    let breakpoints: Vec<Rational> = hn.slopes.iter().map(|a| int(1) - a / &d).collect();
    let k = hn.slopes.len();
    let terms = || hn.slopes.iter().zip(&hn.ranks);
    let left = tail_sum(terms(), &d);
    let pieces = (1..k).map(|i| tail_sum(terms().skip(i), &d)).collect();
    PiecewisePolynomial::new(breakpoints, pieces, left, Polynomial::zero())
        .expect("slopes strictly decreasing give increasing breakpoints")
}

/// `1 - a_min / d`.
pub fn bundle_alpha(hn: &HNData, pol: Polarization) -> Rational {
    int(1) - hn.min_slope() / pol.d_rat()
}

/// `f_{R,I} = f_V - f_M` on `[0, inf)` for `M = O(1 - d0)^mu`.
pub fn syzygy_pair_density(spec: &SyzygySpec) -> Result<PairDensity, BundleError> {
    let fv = bundle_density(&spec.hn_v, spec.pol);
    let fm = bundle_density(&spec.ambient(), spec.pol);
    let f = fv.sub(&fm).clip_below(&Rational::zero());
    let sup = f.support_sup().finite().expect("compact");
    if !f.nonnegative_on(&Rational::zero(), &sup) {
        return Err(BundleError::NegativeDifference);
    }
    let pair = PairDensity::new(2, spec.pol.d, f, Provenance::SyzygyBundle)?;
    debug_assert_eq!(pair.alpha(), bundle_alpha(&spec.hn_v, spec.pol));
    Ok(pair)
}

/// Limit density over reductions from characteristic-0 HN data; the same
/// construction with the ordinary HN slopes.
pub fn char0_limit_density(hn_char0: &HNData, pol: Polarization) -> PiecewisePolynomial {
    bundle_density(hn_char0, pol)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemistabilityGap {
    #[serde(with = "rational")]
    pub alpha_inf: Rational,
    #[serde(with = "rational")]
    pub alpha_p: Rational,
    pub equal: bool,
}

/// Compares the support bound of the limit density with that of one
/// reduction; they agree exactly when the reduction is strongly semistable
/// (for semistable characteristic-0 data).
pub fn semistability_gap(hn_char0: &HNData, hn_charp: &HNData, pol: Polarization) -> Result<SemistabilityGap, BundleError> {
    if hn_char0.total_rank() != hn_charp.total_rank() || hn_char0.total_degree() != hn_charp.total_degree() {
        return Err(BundleError::ReductionMismatch);
    }
    if hn_charp.min_slope() > hn_char0.min_slope() {
        return Err(BundleError::ReductionInconsistent);
    }
    let alpha_inf = bundle_alpha(hn_char0, pol);
    let alpha_p = bundle_alpha(hn_charp, pol);
    let equal = alpha_inf == alpha_p;
    debug_assert!(alpha_p >= alpha_inf);
    debug_assert!(!hn_char0.is_semistable() || equal == hn_charp.is_semistable());
    Ok(SemistabilityGap { alpha_inf, alpha_p, equal })
}

/// `h^1(X, E(m))` for a semistable bundle of slope `mu` and rank `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "kebab-case")]
pub enum SerreH1 {
    Exact {
        #[serde(with = "rational")]
        value: Rational,
    },
    /// Only `|h^1 - ...| <= bound` is determined in the middle window.
    BoundedBy {
        #[serde(with = "rational")]
        bound: Rational,
    },
}

pub fn serre_h1_profile(mu: &Rational, r: u64, pol: Polarization, m: i64) -> SerreH1 {
    let d = pol.d_rat();
    let m_r = Rational::from_integer(m.into());
    let r_r = Rational::from_integer(r.into());
    let g_minus_1 = Rational::from_integer(BigInt::from(pol.g) - 1);
    let edge = -(mu / &d);
    if m_r < edge {
        let value = -(&r_r * (mu + &d * &m_r + &g_minus_1));
        SerreH1::Exact { value }
    } else if m_r > &edge + &d - int(3) {
        SerreH1::Exact { value: Rational::zero() }
    } else {
        SerreH1::BoundedBy { bound: (r_r * g_minus_1).abs() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{symmetry_class, SymmetryClass};
    use crate::exactnum::rational::rat;

    fn pol(d: u64) -> Polarization {
        Polarization::new(d, 0).unwrap()
    }

    fn cone_spec() -> SyzygySpec {
        SyzygySpec::new(3, 1, pol(2), HNData::semistable(int(-1), 2).unwrap()).unwrap()
    }

    #[test]
    fn trivial_bundle() {
        let f = bundle_density(&HNData::semistable(int(0), 3).unwrap(), pol(2));
        let expected = PiecewisePolynomial::new(
            vec![int(1)],
            vec![],
            Polynomial::from_ints(&[6, -6]),
            Polynomial::zero(),
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn cone_bundle() {
        let hn = HNData::semistable(int(-1), 2).unwrap();
        let f = bundle_density(&hn, pol(2));
        assert_eq!(f.eval(&int(0)), int(6));
        assert_eq!(f.eval(&rat(3, 2)), int(0));
        assert_eq!(f.support_sup().finite(), Some(rat(3, 2)));
        assert_eq!(bundle_alpha(&hn, pol(2)), rat(3, 2));
        assert!(f.is_continuous());
    }

    #[test]
    fn alphas() {
        assert_eq!(bundle_alpha(&HNData::semistable(int(0), 1).unwrap(), pol(2)), int(1));
        let two = HNData::new(vec![int(0), int(-3)], vec![1, 1]).unwrap();
        assert_eq!(bundle_alpha(&two, pol(3)), int(2));
    }

    #[test]
    fn quadric_cone_pair() {
        let pair = syzygy_pair_density(&cone_spec()).unwrap();
        let expected = PiecewisePolynomial::compact(
            vec![int(0), int(1), rat(3, 2)],
            vec![Polynomial::from_ints(&[0, 2]), Polynomial::from_ints(&[6, -4])],
        )
        .unwrap();
        assert_eq!(pair.density(), &expected);
        assert_eq!(pair.alpha(), rat(3, 2));
        assert_eq!(pair.ehk(), rat(3, 2));
        assert_eq!(pair.mult(), 2);
    }

    #[test]
    fn regular_plane_is_a_tent() {
        for d in 1..5u64 {
            let spec = SyzygySpec::new(2, 1, pol(d), HNData::semistable(-Rational::from_integer(d.into()), 1).unwrap())
                .unwrap();
            let pair = syzygy_pair_density(&spec).unwrap();
            assert_eq!(pair.alpha(), int(2));
            assert_eq!(symmetry_class(&pair), SymmetryClass::SymmetricAtHalfD);
            assert_eq!(pair.density().eval(&int(1)), Rational::from_integer(d.into()));
        }
    }

    #[test]
    fn spec_validation() {
        let hn = HNData::semistable(int(-1), 2).unwrap();
        assert!(matches!(SyzygySpec::new(4, 1, pol(2), hn.clone()), Err(BundleError::RankMismatch { .. })));
        assert!(matches!(
            SyzygySpec::new(3, 1, pol(2), HNData::semistable(int(-2), 2).unwrap()),
            Err(BundleError::DegreeMismatch { .. })
        ));
        let above = HNData::new(vec![int(1), int(-3)], vec![1, 1]).unwrap();
        assert!(matches!(SyzygySpec::new(3, 1, pol(2), above), Err(BundleError::SlopeAboveAmbient { .. })));
        assert_eq!(HNData::new(vec![int(0), int(0)], vec![1, 1]), Err(BundleError::SlopesNotDecreasing));
        assert_eq!(HNData::new(vec![int(0)], vec![0]), Err(BundleError::ZeroRank));
    }

    #[test]
    fn limit_densities() {
        let ss = HNData::semistable(int(-1), 2).unwrap();
        assert_eq!(char0_limit_density(&ss, pol(2)).support_sup().finite(), Some(rat(3, 2)));
        let trivial = HNData::semistable(int(0), 2).unwrap();
        assert_eq!(char0_limit_density(&trivial, pol(2)), bundle_density(&trivial, pol(2)));
        let split = HNData::new(vec![int(1), int(-1)], vec![1, 1]).unwrap();
        assert_eq!(char0_limit_density(&split, pol(2)).support_sup().finite(), Some(rat(3, 2)));
    }

    #[test]
    fn gaps() {
        let ss = HNData::semistable(int(-1), 2).unwrap();
        let g = semistability_gap(&ss, &ss, pol(2)).unwrap();
        assert!(g.equal);
        let split = HNData::new(vec![int(0), int(-2)], vec![1, 1]).unwrap();
        let g = semistability_gap(&ss, &split, pol(2)).unwrap();
        assert_eq!((g.alpha_inf, g.alpha_p, g.equal), (rat(3, 2), int(2), false));
        let other = HNData::semistable(int(-2), 2).unwrap();
        assert_eq!(semistability_gap(&ss, &other, pol(2)), Err(BundleError::ReductionMismatch));
    }

    #[test]
    fn serre_regimes() {
        let p = pol(3);
        assert_eq!(serre_h1_profile(&int(0), 1, p, -2), SerreH1::Exact { value: int(7) });
        assert_eq!(serre_h1_profile(&int(0), 1, p, 10), SerreH1::Exact { value: int(0) });
        let p = Polarization::new(4, 3).unwrap();
        assert_eq!(serre_h1_profile(&int(0), 2, p, 0), SerreH1::BoundedBy { bound: int(4) });
    }

    #[test]
    fn hn_json() {
        let hn = HNData::new(vec![int(0), rat(-3, 2)], vec![1, 2]).unwrap();
        let s = serde_json::to_string(&hn).unwrap();
        assert_eq!(s, r#"{"slopes":["0","-3/2"],"ranks":[1,2]}"#);
        assert_eq!(serde_json::from_str::<HNData>(&s).unwrap(), hn);
        assert!(serde_json::from_str::<HNData>(r#"{"slopes":["0","1"],"ranks":[1,1]}"#).is_err());
    }
}
