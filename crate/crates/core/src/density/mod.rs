//! Density functions of graded pairs and the operations on them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::rational::{binomial, factorial, int};
use crate::exactnum::{PiecewisePolynomial, Polynomial, Rational, SupportSup};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("dimension must be at least {0}")]
    DimensionTooSmall(u32),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("the zero function is not the density of a pair")]
    ZeroDensity,
    #[error("density must vanish on (-inf, 0) and for large x")]
    NotCompact,
    #[error("density takes a negative value")]
    Negative,
    #[error("density of a pair of dimension >= 2 must be continuous")]
    Discontinuous,
    #[error("density exceeds e x^(d-1)/(d-1)!")]
    ExceedsCeiling,
    #[error("density must agree with e x^(d-1)/(d-1)! just right of 0")]
    WrongInitialPiece,
    #[error("Frobenius scale factor must be positive")]
    ZeroScale,
}

/// How a density was obtained; decides whether the support supremum is
/// known to equal the F-threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ParameterIdeal,
    Segre,
    SyzygyBundle,
    OracleSample,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ParameterIdeal => "parameter-ideal",
            Provenance::Segre => "segre",
            Provenance::SyzygyBundle => "syzygy-bundle",
            Provenance::OracleSample => "oracle-sample",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdRule {
    /// `alpha` equals the F-threshold `c^I(m)`.
    AlphaEqualsThreshold,
    /// Only `alpha <= c^I(m)` is known.
    AlphaOnly,
}

/// A graded pair's dimension, multiplicity and density function.
///
/// Invariants checked on construction (exactly, piece by piece): `f` is
/// nonnegative with compact support in `[0, inf)`, and unless it is an
/// oracle sample it is continuous for `d >= 2`, bounded by the ceiling
/// `F(x) = e x^(d-1)/(d-1)!` and equal to it just right of 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairDensityJson", into = "PairDensityJson")]
pub struct PairDensity {
    dim: u32,
    mult: u64,
    f: PiecewisePolynomial,
    provenance: Provenance,
    rule: ThresholdRule,
}

#[derive(Serialize, Deserialize)]
struct PairDensityJson {
    dim: u32,
    mult: u64,
    density: PiecewisePolynomial,
    provenance: Provenance,
    threshold_rule: ThresholdRule,
}

impl TryFrom<PairDensityJson> for PairDensity {
    type Error = DensityError;
    fn try_from(j: PairDensityJson) -> Result<Self, DensityError> {
        Self::with_rule(j.dim, j.mult, j.density, j.provenance, j.threshold_rule)
    }
}

impl From<PairDensity> for PairDensityJson {
    fn from(p: PairDensity) -> Self {
        PairDensityJson { dim: p.dim, mult: p.mult, density: p.f, provenance: p.provenance, threshold_rule: p.rule }
    }
}

fn ceiling_poly(dim: u32, mult: u64) -> Polynomial {
    let c = Rational::new(BigInt::from(mult), factorial(dim - 1));
    Polynomial::monomial(c, (dim - 1) as usize)
}

impl PairDensity {
    /// Builds a pair with the default threshold rule of its provenance:
    /// parameter ideals and syzygy pairs have `alpha = c`, oracle samples
    /// and Segre products built this way are labelled `alpha` only.
    pub fn new(dim: u32, mult: u64, f: PiecewisePolynomial, provenance: Provenance) -> Result<Self, DensityError> {
        let rule = match provenance {
            Provenance::ParameterIdeal | Provenance::SyzygyBundle => ThresholdRule::AlphaEqualsThreshold,
            Provenance::Segre | Provenance::OracleSample => ThresholdRule::AlphaOnly,
        };
        Self::with_rule(dim, mult, f, provenance, rule)
    }

    fn with_rule(
        dim: u32,
        mult: u64,
        f: PiecewisePolynomial,
        provenance: Provenance,
        rule: ThresholdRule,
    ) -> Result<Self, DensityError> {
        if dim == 0 {
            return Err(DensityError::DimensionTooSmall(1));
        }
        if mult == 0 {
            return Err(DensityError::ZeroMultiplicity);
        }
        if f.is_zero() {
            return Err(DensityError::ZeroDensity);
        }
        if f.clip_below(&Rational::zero()) != f {
            return Err(DensityError::NotCompact);
        }
        let SupportSup::Finite(sup) = f.support_sup() else {
            return Err(DensityError::NotCompact);
        };
        let zero = Rational::zero();
        if !f.nonnegative_on(&zero, &sup) {
            return Err(DensityError::Negative);
        }
        if provenance != Provenance::OracleSample {
            if dim >= 2 && !f.is_continuous() {
                return Err(DensityError::Discontinuous);
            }
            let ceiling = PiecewisePolynomial::polynomial(ceiling_poly(dim, mult));
            if !ceiling.sub(&f).nonnegative_on(&zero, &sup) {
                return Err(DensityError::ExceedsCeiling);
            }
            if f.piece_at(&zero) != &ceiling_poly(dim, mult) {
                return Err(DensityError::WrongInitialPiece);
            }
        }
        Ok(Self { dim, mult, f, provenance, rule })
    }

    /// Step function `l_m / q^(d-1)` on `[m/q, (m+1)/q)` from oracle
    /// colengths `lengths[m]`.
    pub fn from_colengths(dim: u32, mult: u64, q: u64, lengths: &[u64]) -> Result<Self, DensityError> {
        let qr = Rational::from_integer(q.into());
        let norm = Rational::one() / Rational::from_integer(BigInt::from(q).pow(dim.saturating_sub(1)));
        let breakpoints: Vec<Rational> = (0..=lengths.len() as u64).map(|m| Rational::from_integer(m.into()) / &qr).collect();
        let pieces = lengths
            .iter()
            .map(|&l| Polynomial::constant(Rational::from_integer(l.into()) * &norm))
            .collect();
        let f = PiecewisePolynomial::compact(breakpoints, pieces).map_err(|_| DensityError::NotCompact)?;
        Self::new(dim, mult, f, Provenance::OracleSample)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn mult(&self) -> u64 {
        self.mult
    }

    pub fn density(&self) -> &PiecewisePolynomial {
        &self.f
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn threshold_rule(&self) -> ThresholdRule {
        self.rule
    }

    /// Supremum of the support of the density.
    pub fn alpha(&self) -> Rational {
        self.f.support_sup().finite().expect("densities are compactly supported")
    }

    /// `alpha` when it is known to be the F-threshold.
    pub fn threshold(&self) -> Option<Rational> {
        (self.rule == ThresholdRule::AlphaEqualsThreshold).then(|| self.alpha())
    }

    /// Hilbert–Kunz multiplicity: the integral of the density.
    pub fn ehk(&self) -> Rational {
        self.f.total_integral().expect("densities are compactly supported")
    }
}

/// `F(x) = e x^(d-1)/(d-1)!` on `[0, alpha + 1)`, zero elsewhere.
pub fn ceiling(p: &PairDensity) -> PiecewisePolynomial {
    PiecewisePolynomial::supported_on(Rational::zero(), p.alpha() + int(1), ceiling_poly(p.dim, p.mult))
}

/// Segre product of two pairs of dimension at least 2:
/// `F - f = (F_R - f_R)(F_S - f_S)` with `F = F_R F_S`.
pub fn segre(r: &PairDensity, s: &PairDensity) -> Result<PairDensity, DensityError> {
    if r.dim < 2 || s.dim < 2 {
        return Err(DensityError::DimensionTooSmall(2));
    }
    let fr = PiecewisePolynomial::polynomial(ceiling_poly(r.dim, r.mult));
    let fs = PiecewisePolynomial::polynomial(ceiling_poly(s.dim, s.mult));
    let f = fr
        .mul(&s.f)
        .add(&fs.mul(&r.f))
        .sub(&r.f.mul(&s.f))
        .clip_below(&Rational::zero());
    let dim = r.dim + s.dim - 1;
    let c = binomial((r.dim + s.dim - 2) as u64, (r.dim - 1) as u64);
    let c = u64::try_from(c).expect("multiplicity fits in u64");
    let mult = r.mult * s.mult * c;
    let rule = if r.rule == ThresholdRule::AlphaEqualsThreshold && s.rule == ThresholdRule::AlphaEqualsThreshold {
        ThresholdRule::AlphaEqualsThreshold
    } else {
        ThresholdRule::AlphaOnly
    };
    PairDensity::with_rule(dim, mult, f, Provenance::Segre, rule)
}

pub fn alpha(p: &PairDensity) -> Rational {
    p.alpha()
}

/// The density of `(R, I^[q0])`: `g(y) = q0^(d-1) f(y/q0)`.
pub fn frobenius_bracket_scale(p: &PairDensity, q0: u64) -> Result<PairDensity, DensityError> {
    if q0 == 0 {
        return Err(DensityError::ZeroScale);
    }
    let q = Rational::from_integer(q0.into());
    let factor = Rational::from_integer(BigInt::from(q0).pow(p.dim - 1));
    let f = p.f.compose_affine(&(Rational::one() / &q), &Rational::zero()).scale(&factor);
    // the initial piece is unchanged by this substitution, so the invariants carry over
    Ok(PairDensity { dim: p.dim, mult: p.mult, f, provenance: p.provenance, rule: p.rule })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryClass {
    SymmetricAtHalfD,
    StrictlyLeftHeavy,
    Other,
}

/// Symmetric when `f(d - x) = f(x)`; for `d = 2`, strictly left heavy when
/// `f(1 - y) > f(1 + y)` for every `y` in `(0, 1)`.
pub fn symmetry_class(p: &PairDensity) -> SymmetryClass {
    let d = Rational::from_integer(p.dim.into());
    if p.f.reflect(&d) == p.f {
        return SymmetryClass::SymmetricAtHalfD;
    }
    if p.dim != 2 {
        return SymmetryClass::Other;
    }
    let one = int(1);
    let gap = p.f.reflect(&one).sub(&p.f.compose_affine(&one, &one));
    let on_grid = (1..64).all(|k| {
        let y = Rational::new(k.into(), 64.into());
        gap.eval(&y) > Rational::zero()
    });
    if on_grid && gap.positive_on_open(&Rational::zero(), &one) {
        SymmetryClass::StrictlyLeftHeavy
    } else {
        SymmetryClass::Other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityVerdict {
    RegularCertified,
    NotRegular,
}

/// For the density of `(R, m)` with `R` a domain: regular iff `alpha = d`.
pub fn regularity_verdict(p: &PairDensity) -> RegularityVerdict {
    if p.alpha() == Rational::from_integer(p.dim.into()) {
        RegularityVerdict::RegularCertified
    } else {
        RegularityVerdict::NotRegular
    }
}

/// `d_1 <= a <= d_1 + ... + d_s` for generator degrees `d_i`, with `d_1`
/// the smallest, taking the ring dimension to be the number of degrees.
pub fn alpha_bounds_check(degrees: &[u32], a: &Rational) -> bool {
    alpha_bounds_check_in_dim(degrees, a, degrees.len() as u32)
}

/// As [`alpha_bounds_check`], with the lower bound strict in dimension >= 2.
pub fn alpha_bounds_check_in_dim(degrees: &[u32], a: &Rational, dim: u32) -> bool {
    let Some(&lowest) = degrees.iter().min() else {
        return false;
    };
    let lo = Rational::from_integer(lowest.into());
    let hi = Rational::from_integer(degrees.iter().map(|&d| d as u64).sum::<u64>().into());
    let above = if dim >= 2 { *a > lo } else { *a >= lo };
    above && *a <= hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use crate::volume::parameter_density;

    fn tent_pair() -> PairDensity {
        parameter_density(1, &[1, 1]).unwrap()
    }

    fn cone_pair() -> PairDensity {
        let f = PiecewisePolynomial::compact(
            vec![int(0), int(1), rat(3, 2)],
            vec![Polynomial::from_ints(&[0, 2]), Polynomial::from_ints(&[6, -4])],
        )
        .unwrap();
        PairDensity::new(2, 2, f, Provenance::SyzygyBundle).unwrap()
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceiling(&tent_pair()).eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(ceiling(&parameter_density(1, &[1, 1, 1]).unwrap()).eval(&int(1)), rat(1, 2));
        assert_eq!(ceiling(&parameter_density(6, &[1, 1]).unwrap()).eval(&int(1)), int(6));
    }

    #[test]
    fn segre_of_tents() {
        let s = segre(&tent_pair(), &tent_pair()).unwrap();
        let expected = PiecewisePolynomial::compact(
            vec![int(0), int(1), int(2)],
            vec![Polynomial::from_ints(&[0, 0, 1]), Polynomial::from_ints(&[-4, 8, -3])],
        )
        .unwrap();
        assert_eq!(s.density(), &expected);
        assert_eq!(s.ehk(), rat(4, 3));
        assert_eq!(s.dim(), 3);
        assert_eq!(s.mult(), 2);
        assert_eq!(s.alpha(), int(2));
        assert_eq!(s.threshold_rule(), ThresholdRule::AlphaEqualsThreshold);
        let one_dim = parameter_density(1, &[1]).unwrap();
        assert_eq!(segre(&tent_pair(), &one_dim), Err(DensityError::DimensionTooSmall(2)));
    }

    #[test]
    fn alphas() {
        assert_eq!(alpha(&parameter_density(1, &[1, 1, 2]).unwrap()), int(4));
        assert_eq!(alpha(&tent_pair()), int(2));
        assert_eq!(alpha(&cone_pair()), rat(3, 2));
    }

    #[test]
    fn bracket_scaling() {
        let t = tent_pair();
        let s = frobenius_bracket_scale(&t, 2).unwrap();
        assert_eq!(s.alpha(), int(4));
        assert_eq!(s.density().eval(&int(2)), int(2));
        assert_eq!(frobenius_bracket_scale(&t, 1).unwrap(), t);
        assert_eq!(frobenius_bracket_scale(&t, 3).unwrap().alpha(), int(6));
        assert_eq!(s.ehk(), t.ehk() * int(4));
    }

    #[test]
    fn symmetry_classes() {
        assert_eq!(symmetry_class(&tent_pair()), SymmetryClass::SymmetricAtHalfD);
        assert_eq!(symmetry_class(&cone_pair()), SymmetryClass::StrictlyLeftHeavy);
        assert_eq!(symmetry_class(&parameter_density(1, &[1, 2]).unwrap()), SymmetryClass::Other);
    }

    #[test]
    fn regularity() {
        assert_eq!(regularity_verdict(&tent_pair()), RegularityVerdict::RegularCertified);
        assert_eq!(regularity_verdict(&cone_pair()), RegularityVerdict::NotRegular);
        let cube = parameter_density(1, &[1, 1, 1]).unwrap();
        assert_eq!(regularity_verdict(&cube), RegularityVerdict::RegularCertified);
    }

    #[test]
    fn bounds() {
        assert!(alpha_bounds_check(&[1, 1, 1], &rat(3, 2)));
        assert!(!alpha_bounds_check(&[2, 3], &int(2)));
        assert!(!alpha_bounds_check(&[1], &rat(1, 2)));
        assert!(alpha_bounds_check(&[1], &int(1)));
    }

    #[test]
    fn invariants_rejected() {
        let too_big = PiecewisePolynomial::supported_on(int(0), int(1), Polynomial::from_ints(&[0, 2]));
        assert_eq!(PairDensity::new(2, 1, too_big, Provenance::Segre), Err(DensityError::Discontinuous));
        let bump = PiecewisePolynomial::compact(
            vec![int(0), int(1), int(3)],
            vec![Polynomial::from_ints(&[0, 2]), Polynomial::from_ints(&[3, -1])],
        )
        .unwrap();
        assert_eq!(PairDensity::new(2, 1, bump, Provenance::Segre), Err(DensityError::ExceedsCeiling));
        assert_eq!(
            PairDensity::new(2, 1, PiecewisePolynomial::zero(), Provenance::Segre),
            Err(DensityError::ZeroDensity)
        );
    }

    #[test]
    fn json_round_trip() {
        let c = cone_pair();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains(r#""provenance":"syzygy-bundle""#));
        let back: PairDensity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn oracle_steps() {
        let p = PairDensity::from_colengths(2, 1, 5, &[1, 2, 3, 4, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(p.alpha(), rat(9, 5));
        assert_eq!(p.ehk(), int(1));
        assert_eq!(p.threshold(), None);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::exactnum::rational::rat;
    use crate::volume::parameter_density;
    use proptest::prelude::*;

    fn pair(max_dim: usize) -> impl Strategy<Value = (u64, Vec<u32>)> {
        (1u64..4, prop::collection::vec(1u32..4, 2..=max_dim))
    }

    fn build((e, n): &(u64, Vec<u32>)) -> PairDensity {
        parameter_density(*e, n).unwrap()
    }

    fn below_ceiling(p: &PairDensity, xs: &[Rational]) -> bool {
        let f = p.density();
        let cap = ceiling_poly(p.dim(), p.mult());
        xs.iter().all(|x| {
            let v = f.eval(x);
            v >= Rational::zero() && v <= cap.eval(x)
        })
    }

    fn samples(p: &PairDensity, ks: &[i64]) -> Vec<Rational> {
        let a = p.alpha() + int(1);
        ks.iter().map(|&k| &a * rat(k, 1000)).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn parameter_pairs_within_ceiling(a in pair(5), ks in prop::collection::vec(0i64..=1000, 200)) {
            let p = build(&a);
            prop_assert!(p.density().is_continuous());
            prop_assert!(below_ceiling(&p, &samples(&p, &ks)));
            let total: u64 = a.1.iter().map(|&n| n as u64).product();
            prop_assert_eq!(p.ehk(), int((a.0 * total) as i64));
            prop_assert!(p.alpha() <= p.threshold().unwrap());
        }

        #[test]
        fn segre_laws(a in pair(3), b in pair(3), c in pair(2), ks in prop::collection::vec(0i64..=1000, 200)) {
            let (p, q, r) = (build(&a), build(&b), build(&c));
            let pq = segre(&p, &q).unwrap();
            prop_assert_eq!(&pq, &segre(&q, &p).unwrap());
            prop_assert_eq!(segre(&pq, &r).unwrap(), segre(&p, &segre(&q, &r).unwrap()).unwrap());
            prop_assert_eq!(pq.alpha(), p.alpha().max(q.alpha()));
            prop_assert!(pq.density().is_continuous());
            prop_assert!(below_ceiling(&pq, &samples(&pq, &ks)));
            prop_assert!(pq.alpha() <= pq.threshold().unwrap());
        }

        #[test]
        fn bracket_scale_integral(a in pair(4), q0 in 1u64..6) {
            let p = build(&a);
            let g = frobenius_bracket_scale(&p, q0).unwrap();
            let factor = Rational::from_integer(BigInt::from(q0).pow(p.dim()));
            prop_assert_eq!(g.ehk(), p.ehk() * factor);
            prop_assert_eq!(g.alpha(), p.alpha() * Rational::from_integer(q0.into()));
        }
    }
}
