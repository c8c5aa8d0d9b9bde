//! Exact piecewise polynomials on the real line.
//!
//! A function is stored as breakpoints `b_0 < ... < b_k` and `k + 2`
//! polynomial segments: the left tail on `(-inf, b_0)`, one piece on each
//! half-open `[b_i, b_{i+1})`, and the right tail on `[b_k, inf)`. With no
//! breakpoints the function is a single polynomial and both tails hold it.
//!
//! Every constructor canonicalizes: adjacent equal segments are merged, so
//! two functions are equal exactly when their stored forms are equal.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Polynomial;
use super::rational::{self, int, Rational};
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Rational>,
    // segments[0] is the left tail, segments[k+1] the right tail
    segments: Vec<Polynomial>,
    continuous: bool,
}

/// Supremum of the support on `[0, inf)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportSup {
    Finite(Rational),
    Unbounded,
}

impl SupportSup {
    pub fn finite(self) -> Option<Rational> {
        match self {
            SupportSup::Finite(r) => Some(r),
            SupportSup::Unbounded => None,
        }
    }
}

impl PiecewisePolynomial {
    pub fn new(
        breakpoints: Vec<Rational>,
        pieces: Vec<Polynomial>,
        left_tail: Polynomial,
        right_tail: Polynomial,
    ) -> Result<Self, ExactError> {
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ExactError::BreakpointsNotIncreasing);
        }
        let expected = breakpoints.len().saturating_sub(1);
        if pieces.len() != expected {
            return Err(ExactError::PieceCount { breakpoints: breakpoints.len(), pieces: pieces.len() });
        }
        if breakpoints.is_empty() && left_tail != right_tail {
            return Err(ExactError::TailsDisagree);
        }
        let mut segments = Vec::with_capacity(breakpoints.len() + 1);
        segments.push(left_tail);
        segments.extend(pieces);
        if !breakpoints.is_empty() {
            segments.push(right_tail);
        }
        Ok(Self::from_segments(breakpoints, segments))
    }

    /// Builds from `k` breakpoints and `k + 1` segments; the caller
    /// guarantees strictly increasing breakpoints.
    fn from_segments(breakpoints: Vec<Rational>, segments: Vec<Polynomial>) -> Self {
        debug_assert_eq!(segments.len(), breakpoints.len() + 1);
        let mut bps: Vec<Rational> = Vec::with_capacity(breakpoints.len());
        let mut segs: Vec<Polynomial> = Vec::with_capacity(segments.len());
        let mut it = segments.into_iter();
        segs.push(it.next().expect("at least one segment"));
        for (b, s) in breakpoints.into_iter().zip(it) {
            if segs.last() == Some(&s) {
                continue;
            }
            bps.push(b);
            segs.push(s);
        }
        let continuous = bps
            .iter()
            .enumerate()
            .all(|(i, b)| segs[i].eval(b) == segs[i + 1].eval(b));
        Self { breakpoints: bps, segments: segs, continuous }
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self { breakpoints: Vec::new(), segments: vec![p], continuous: true }
    }

    /// `p` on `[a, b)`, zero elsewhere.
    pub fn supported_on(a: Rational, b: Rational, p: Polynomial) -> Self {
        assert!(a < b, "empty support interval");
        Self::from_segments(vec![a, b], vec![Polynomial::zero(), p, Polynomial::zero()])
    }

    /// Compactly supported function with the given pieces on consecutive
    /// intervals `[b_i, b_{i+1})` and zero tails.
    pub fn compact(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self, ExactError> {
        Self::new(breakpoints, pieces, Polynomial::zero(), Polynomial::zero())
    }

    /// Indicator-weighted polynomial: `p` on `[a, inf)`, zero before.
    pub fn starting_at(a: Rational, p: Polynomial) -> Self {
        Self::from_segments(vec![a], vec![Polynomial::zero(), p])
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    /// Interior pieces, one per `[b_i, b_{i+1})`.
    pub fn pieces(&self) -> &[Polynomial] {
        if self.breakpoints.is_empty() {
            &[]
        } else {
            &self.segments[1..self.segments.len() - 1]
        }
    }

    pub fn left_tail(&self) -> &Polynomial {
        &self.segments[0]
    }

    pub fn right_tail(&self) -> &Polynomial {
        self.segments.last().expect("nonempty")
    }

    /// All segments, left tail first.
    pub fn segments(&self) -> &[Polynomial] {
        &self.segments
    }

    pub fn is_continuous(&self) -> bool {
        self.continuous
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty() && self.segments[0].is_zero()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.segments.iter().filter_map(Polynomial::degree).max()
    }

    fn segment_index(&self, x: &Rational) -> usize {
        self.breakpoints.partition_point(|b| b <= x)
    }

    /// The polynomial in force at `x` under the half-open convention.
    pub fn piece_at(&self, x: &Rational) -> &Polynomial {
        &self.segments[self.segment_index(x)]
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.piece_at(x).eval(x)
    }

    fn combine(&self, other: &Self, op: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Self {
        let mut merged: Vec<Rational> =
            self.breakpoints.iter().chain(other.breakpoints.iter()).cloned().collect();
        merged.sort();
        merged.dedup();
        let mut segments = Vec::with_capacity(merged.len() + 1);
        segments.push(op(self.left_tail(), other.left_tail()));
        for b in &merged {
            segments.push(op(self.piece_at(b), other.piece_at(b)));
        }
        Self::from_segments(merged, segments)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_segments(self.breakpoints.clone(), self.segments.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::from_segments(self.breakpoints.clone(), self.segments.iter().map(|s| s * p).collect())
    }

    /// Zero on `(-inf, a)`, unchanged on `[a, inf)`.
    pub fn clip_below(&self, a: &Rational) -> Self {
        self.mul(&Self::starting_at(a.clone(), Polynomial::constant(int(1))))
    }

    /// `g(x) = f(c - x)`.
    ///
    /// Intervals flip orientation, so for a discontinuous `f` the value at a
    /// breakpoint follows the half-open convention of the result rather
    /// than of `f`.
    pub fn reflect(&self, c: &Rational) -> Self {
        let neg_one = int(-1);
        let breakpoints = self.breakpoints.iter().rev().map(|b| c - b).collect();
        let segments = self.segments.iter().rev().map(|p| p.compose_linear(&neg_one, c)).collect();
        Self::from_segments(breakpoints, segments)
    }

    /// `g(x) = f(a*x + b)` for `a > 0`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        assert!(a.is_positive(), "affine substitution must preserve orientation");
        let breakpoints = self.breakpoints.iter().map(|t| (t - b) / a).collect();
        let segments = self.segments.iter().map(|p| p.compose_linear(a, b)).collect();
        Self::from_segments(breakpoints, segments)
    }

    /// Exact integral over `[a, b]`.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Result<Rational, ExactError> {
        if a > b {
            return Err(ExactError::ReversedBounds);
        }
        let mut total = Rational::zero();
        let mut lo = a.clone();
        let mut idx = self.segment_index(a);
        loop {
            let hi = match self.breakpoints.get(idx) {
                Some(bp) if bp < b => bp.clone(),
                _ => b.clone(),
            };
            let anti = self.segments[idx].antiderivative();
            total += anti.eval(&hi) - anti.eval(&lo);
            if &hi == b {
                break;
            }
            lo = hi;
            idx += 1;
        }
        Ok(total)
    }

    /// Integral over the whole real line, for functions with zero tails.
    pub fn total_integral(&self) -> Option<Rational> {
        if !self.left_tail().is_zero() || !self.right_tail().is_zero() {
            return None;
        }
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(a), Some(b)) => self.integrate(a, b).ok(),
            _ => Some(Rational::zero()),
        }
    }

    /// Largest breakpoint after which the function vanishes identically,
    /// restricted to `[0, inf)`. The zero function gives 0.
    pub fn support_sup(&self) -> SupportSup {
        if !self.right_tail().is_zero() {
            return SupportSup::Unbounded;
        }
        let n = self.segments.len();
        let last_nonzero = (0..n - 1).rev().find(|&i| !self.segments[i].is_zero());
        let sup = match last_nonzero {
            Some(i) => self.breakpoints[i].clone(),
            None => Rational::zero(),
        };
        SupportSup::Finite(if sup.is_negative() { Rational::zero() } else { sup })
    }

    /// Whether `f(x) > 0` on every point of the open interval `(a, b)`.
    pub fn positive_on_open(&self, a: &Rational, b: &Rational) -> bool {
        if a >= b {
            return true;
        }
        let mut lo = a.clone();
        let mut idx = self.segment_index(a);
        loop {
            let hi = match self.breakpoints.get(idx) {
                Some(bp) if bp < b => bp.clone(),
                _ => b.clone(),
            };
            if !self.segments[idx].positive_on_open(&lo, &hi) {
                return false;
            }
            if &hi == b {
                return true;
            }
            // the breakpoint itself lies inside (a, b)
            if !self.eval(&hi).is_positive() {
                return false;
            }
            lo = hi;
            idx += 1;
        }
    }

    /// Whether `f(x) >= 0` on `[a, b]`, decided exactly.
    pub fn nonnegative_on(&self, a: &Rational, b: &Rational) -> bool {
        if self.eval(a).is_negative() || self.eval(b).is_negative() {
            return false;
        }
        let mut lo = a.clone();
        let mut idx = self.segment_index(a);
        loop {
            let hi = match self.breakpoints.get(idx) {
                Some(bp) if bp < b => bp.clone(),
                _ => b.clone(),
            };
            let p = &self.segments[idx];
            if !p.is_zero() && lo < hi && !nonnegative_poly_on(p, &lo, &hi) {
                return false;
            }
            if &hi == b {
                return true;
            }
            if self.eval(&hi).is_negative() {
                return false;
            }
            lo = hi;
            idx += 1;
        }
    }
}

// p >= 0 on [lo, hi] iff the product of its odd-multiplicity squarefree
// factors keeps one sign on (lo, hi) and that sign agrees with p.
fn nonnegative_poly_on(p: &Polynomial, lo: &Rational, hi: &Rational) -> bool {
    let odd = odd_multiplicity_part(p);
    if odd.count_roots_open(lo, hi) > 0 {
        return false;
    }
    let mid = (lo + hi) / int(2);
    let mut probe = mid.clone();
    let mut step = (hi - lo) / int(4);
    // probe at a point where p does not vanish; p has finitely many roots
    while p.eval(&probe).is_zero() {
        probe = &mid + &step;
        step /= int(3);
    }
    p.eval(&probe).is_positive()
}

fn monic(p: Polynomial) -> Polynomial {
    match p.leading().cloned() {
        Some(c) => p.scale(&(int(1) / c)),
        None => p,
    }
}

fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        y = r;
    }
    monic(x)
}

fn exact_div(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero());
    q
}

// Yun's squarefree decomposition, keeping factors of odd multiplicity.
fn odd_multiplicity_part(f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::constant(int(1));
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = poly_gcd(f, &fp);
    let mut b = exact_div(f, &a0);
    let mut c = exact_div(&fp, &a0);
    let mut d = &c - &b.derivative();
    let mut mult = 1usize;
    while b.degree().unwrap_or(0) > 0 {
        let a = poly_gcd(&b, &d);
        if mult % 2 == 1 {
            out = &out * &a;
        }
        b = exact_div(&b, &a);
        c = exact_div(&d, &a);
        d = &c - &b.derivative();
        mult += 1;
    }
    out
}

impl fmt::Display for PiecewisePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.breakpoints.is_empty() {
            return write!(f, "{} on (-inf, inf)", self.segments[0]);
        }
        let mut parts = Vec::new();
        let n = self.breakpoints.len();
        if !self.segments[0].is_zero() {
            parts.push(format!("{} on (-inf, {})", self.segments[0], self.breakpoints[0]));
        }
        for i in 0..n - 1 {
            if !self.segments[i + 1].is_zero() {
                parts.push(format!(
                    "{} on [{}, {})",
                    self.segments[i + 1],
                    self.breakpoints[i],
                    self.breakpoints[i + 1]
                ));
            }
        }
        if !self.segments[n].is_zero() {
            parts.push(format!("{} on [{}, inf)", self.segments[n], self.breakpoints[n - 1]));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct PiecewiseJson {
    #[serde(with = "rational::vec")]
    breakpoints: Vec<Rational>,
    pieces: Vec<PolyJson>,
    left_tail: PolyJson,
    right_tail: PolyJson,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct PolyJson(#[serde(with = "rational::vec")] Vec<Rational>);

impl Serialize for PiecewisePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let poly = |p: &Polynomial| PolyJson(p.coeffs().to_vec());
        PiecewiseJson {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces().iter().map(poly).collect(),
            left_tail: poly(self.left_tail()),
            right_tail: poly(self.right_tail()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewisePolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PiecewiseJson::deserialize(d)?;
        PiecewisePolynomial::new(
            raw.breakpoints,
            raw.pieces.into_iter().map(|p| Polynomial::from_coeffs(p.0)).collect(),
            Polynomial::from_coeffs(raw.left_tail.0),
            Polynomial::from_coeffs(raw.right_tail.0),
        )
        .map_err(serde::de::Error::custom)
    }
}
