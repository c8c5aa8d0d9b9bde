//! Slice volumes of integer boxes and the densities of parameter ideals.
//!
//! For a box `[0, n_1] x ... x [0, n_m]` the slice volume `V(x)` measures
//! the section `{y_1 + ... + y_m = x}` with the projected (convolution)
//! measure, so `V(x) = x^(m-1)/(m-1)!` near 0. Equivalently `V` is the
//! density of a sum of independent uniforms on `[0, n_i]` scaled by `prod n_i`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::density::{DensityError, PairDensity, Provenance};
use crate::exactnum::rational::{factorial, floor, int};
use crate::exactnum::{PiecewisePolynomial, Polynomial, Rational};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum VolumeError {
    #[error("a box needs at least one edge")]
    NoEdges,
    #[error("edge lengths must be positive")]
    ZeroEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct BoxSliceSpec {
    edges: Vec<u32>,
}

impl BoxSliceSpec {
    pub fn new(edges: Vec<u32>) -> Result<Self, VolumeError> {
        if edges.is_empty() {
            return Err(VolumeError::NoEdges);
        }
        if edges.contains(&0) {
            return Err(VolumeError::ZeroEdge);
        }
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn dimension(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_sum(&self) -> u64 {
        self.edges.iter().map(|&n| n as u64).sum()
    }

    pub fn volume(&self) -> u64 {
        self.edges.iter().map(|&n| n as u64).product()
    }
}

impl TryFrom<Vec<u32>> for BoxSliceSpec {
    type Error = VolumeError;
    fn try_from(v: Vec<u32>) -> Result<Self, VolumeError> {
        Self::new(v)
    }
}

impl From<BoxSliceSpec> for Vec<u32> {
    fn from(s: BoxSliceSpec) -> Vec<u32> {
        s.edges
    }
}

/// `V(x) = (1/(m-1)!) sum_S (-1)^|S| max(0, x - sum_{i in S} n_i)^(m-1)`.
pub fn slice_volume(spec: &BoxSliceSpec) -> PiecewisePolynomial {
    let m = spec.dimension();
    let power = (m - 1) as u32;
    let mut total = PiecewisePolynomial::zero();
    for subset in 0u32..(1 << m) {
        let shift: i64 = (0..m).filter(|i| subset >> i & 1 == 1).map(|i| spec.edges[i] as i64).sum();
        let sign = if subset.count_ones() % 2 == 0 { 1 } else { -1 };
        let ramp = Polynomial::linear(int(1), int(-shift)).pow(power).scale(&int(sign));
        total = total.add(&PiecewisePolynomial::starting_at(int(shift), ramp));
    }
    total.scale(&(Rational::one() / Rational::from_integer(factorial(power))))
}

/// The density `e * V(n_1, ..., n_d)` of a parameter ideal generated in
/// degrees `n_i` in a ring of multiplicity `e`.
pub fn parameter_density(mult: u64, degrees: &[u32]) -> Result<PairDensity, DensityError> {
    if mult == 0 {
        return Err(DensityError::ZeroMultiplicity);
    }
    let spec = BoxSliceSpec::new(degrees.to_vec()).map_err(|_| DensityError::DimensionTooSmall(0))?;
    let f = slice_volume(&spec).scale(&Rational::from_integer(mult.into()));
    PairDensity::new(spec.dimension() as u32, mult, f, Provenance::ParameterIdeal)
}

/// Number of integer points `0 <= a_i < n_i q` with `sum a_i = m`.
pub fn lattice_slice_count(spec: &BoxSliceSpec, q: u64, m: u64) -> BigUint {
    let profile = lattice_slice_profile(spec, q);
    profile.get(m as usize).cloned().unwrap_or_else(BigUint::zero)
}

/// `lattice_slice_count` for every `m`, indexed by `m`.
pub fn lattice_slice_profile(spec: &BoxSliceSpec, q: u64) -> Vec<BigUint> {
    let mut counts = vec![BigUint::one()];
    for &n in &spec.edges {
        let width = n as usize * q as usize;
        let len = counts.len() + width - 1;
        // new[s] = sum_{t = s-width+1}^{s} old[t] via prefix sums
        let mut prefix = Vec::with_capacity(counts.len() + 1);
        prefix.push(BigUint::zero());
        for c in &counts {
            let next = prefix.last().unwrap() + c;
            prefix.push(next);
        }
        let mut next = Vec::with_capacity(len);
        for s in 0..len {
            let hi = (s + 1).min(counts.len());
            let lo = s.saturating_sub(width - 1);
            next.push(&prefix[hi] - &prefix[lo]);
        }
        counts = next;
    }
    counts
}

/// Convergence constant `C` with `oracle_gap <= C / q`: `(m/2 + 1) L`, where
/// `L`, the product of all edges but the two largest, bounds `|V'|` and
/// `m/2 + 1` bounds the lattice offset plus the floor.
pub fn convergence_constant(spec: &BoxSliceSpec) -> Rational {
    let mut e: Vec<u64> = spec.edges.iter().map(|&n| n as u64).collect();
    e.sort_unstable();
    let lipschitz: u64 = e.iter().rev().skip(2).product();
    Rational::new(BigInt::from(spec.dimension() as u64 + 2), BigInt::from(2)) * Rational::from_integer(lipschitz.into())
}

/// `|count(floor(x q)) / q^(m-1) - V(x)|` for `x >= 0`.
pub fn oracle_gap(spec: &BoxSliceSpec, volume: &PiecewisePolynomial, q: u64, x: &Rational) -> Rational {
    let profile = lattice_slice_profile(spec, q);
    oracle_gap_with(spec, volume, &profile, q, x)
}

/// [`oracle_gap`] against a precomputed [`lattice_slice_profile`].
pub fn oracle_gap_with(
    spec: &BoxSliceSpec,
    volume: &PiecewisePolynomial,
    profile: &[BigUint],
    q: u64,
    x: &Rational,
) -> Rational {
    let m = floor(&(x * Rational::from_integer(q.into())));
    let count = usize::try_from(&m)
        .ok()
        .and_then(|m| profile.get(m).cloned())
        .unwrap_or_else(BigUint::zero);
    let scale = BigInt::from(q).pow(spec.dimension() as u32 - 1);
    (Rational::new(count.into(), scale) - volume.eval(x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn spec(e: &[u32]) -> BoxSliceSpec {
        BoxSliceSpec::new(e.to_vec()).unwrap()
    }

    #[test]
    fn tent_and_staircase() {
        let tent = PiecewisePolynomial::compact(
            vec![int(0), int(1), int(2)],
            vec![Polynomial::x(), Polynomial::from_ints(&[2, -1])],
        )
        .unwrap();
        assert_eq!(slice_volume(&spec(&[1, 1])), tent);
        let expected = PiecewisePolynomial::compact(
            vec![int(0), int(1), int(2), int(3)],
            vec![Polynomial::x(), Polynomial::from_ints(&[1]), Polynomial::from_ints(&[3, -1])],
        )
        .unwrap();
        assert_eq!(slice_volume(&spec(&[1, 2])), expected);
    }

    #[test]
    fn cube_midslice() {
        let v = slice_volume(&spec(&[1, 1, 1]));
        assert_eq!(v.eval(&rat(3, 2)), rat(3, 4));
        assert_eq!(v.eval(&int(4)), int(0));
        assert!(v.is_continuous());
        // oracle at q = 64: count / q^2 within 2/q of 3/4
        let c = lattice_slice_count(&spec(&[1, 1, 1]), 64, 96);
        let approx = Rational::new(c.into(), (64u32 * 64).into());
        assert!((approx - rat(3, 4)) <= rat(2, 64));
    }

    #[test]
    fn point_box_is_a_step() {
        let v = slice_volume(&spec(&[3]));
        assert_eq!(v.eval(&int(0)), int(1));
        assert_eq!(v.eval(&rat(5, 2)), int(1));
        assert_eq!(v.eval(&int(3)), int(0));
        assert!(!v.is_continuous());
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattice_slice_count(&spec(&[1, 1]), 4, 3), BigUint::from(4u32));
        assert_eq!(lattice_slice_count(&spec(&[1, 1]), 4, 8), BigUint::zero());
        // only (1, 1, 1) has all coordinates below 2
        assert_eq!(lattice_slice_count(&spec(&[1, 1, 1]), 2, 3), BigUint::one());
    }

    #[test]
    fn parameter_pairs() {
        let p = parameter_density(3, &[1, 1]).unwrap();
        assert_eq!(p.density().eval(&int(1)), int(3));
        let q = parameter_density(1, &[1, 1, 2]).unwrap();
        assert_eq!(q.alpha(), int(4));
        assert_eq!(q.density().reflect(&int(4)), *q.density());
        assert!(parameter_density(0, &[1]).is_err());
        assert!(parameter_density(1, &[]).is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(BoxSliceSpec::new(vec![]), Err(VolumeError::NoEdges));
        assert_eq!(BoxSliceSpec::new(vec![1, 0]), Err(VolumeError::ZeroEdge));
    }
}
