//! Plane trinomial curves: classification, the taxicab search and closed
//! F-thresholds of `I(n) = (x^n, y^n, z^n)`.
//!
//! Calibration. The threshold for a regular trinomial reads
//! `(n+2)/2 + N / (2 p^D d)` with `N = lambda_h (1 - T)` by default
//! ([`Numerator::ReducedIndex`]); this is the normalization under which the
//! closed Fermat and cyclic families come out as tabulated. The colength
//! oracle at `q = p^2` instead supports `N = lambda (1 - T)`
//! ([`Numerator::FullIndex`]); the two agree whenever
//! `gcd(alpha, beta, nu, lambda) = 1`, e.g. for every cyclic trinomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::rational::{self, ceil, floor, int};
use crate::exactnum::Rational;
use crate::oracle::{self, HomogPoly};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TrinomialError {
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("exponents do not match the trinomial shape: {0}")]
    Shape(String),
    #[error("invariants {0} lie outside the regular-trinomial hypotheses (all must be positive)")]
    OutsideRegularHypotheses(String),
    #[error("irregular curve (multiplicity {0}) has no residue table")]
    Irregular(u32),
    #[error("{l} is not coprime to 2*lambda_h = {modulus}")]
    NotCoprime { l: i64, modulus: i64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the regular formula needs p >= n = {n}, got {p}")]
    PrimeTooSmall { p: u64, n: u32 },
    #[error("n must be positive")]
    ZeroN,
    #[error("correction numerator {0} is not an integer in [0, lambda)")]
    NumeratorOutOfRange(String),
}

/// `TypeI`: `x^a1 y^a2 + y^b1 z^b2 + z^c1 x^c2`;
/// `TypeII`: `x^d + x^a1 y^a2 z^a3 + y^b z^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrinomialCurve {
    TypeI { a1: u32, a2: u32, b1: u32, b2: u32, c1: u32, c2: u32 },
    TypeII { d: u32, a1: u32, a2: u32, a3: u32, b: u32, c: u32 },
}

impl TrinomialCurve {
    pub fn type_i(a1: u32, a2: u32, b1: u32, b2: u32, c1: u32, c2: u32) -> Result<Self, TrinomialError> {
        let d = a1 + a2;
        if b1 + b2 != d || c1 + c2 != d {
            return Err(TrinomialError::Shape(format!(
                "a1+a2={}, b1+b2={}, c1+c2={} must agree",
                a1 + a2,
                b1 + b2,
                c1 + c2
            )));
        }
        Self::checked(TrinomialCurve::TypeI { a1, a2, b1, b2, c1, c2 })
    }

    pub fn type_ii(d: u32, a1: u32, a2: u32, a3: u32, b: u32, c: u32) -> Result<Self, TrinomialError> {
        if a1 + a2 + a3 != d || b + c != d {
            return Err(TrinomialError::Shape(format!(
                "a1+a2+a3={} and b+c={} must equal d={d}",
                a1 + a2 + a3,
                b + c
            )));
        }
        Self::checked(TrinomialCurve::TypeII { d, a1, a2, a3, b, c })
    }

    fn checked(curve: Self) -> Result<Self, TrinomialError> {
        let d = curve.degree();
        if d < 3 {
            return Err(TrinomialError::DegreeTooSmall(d));
        }
        let [m0, m1, m2] = curve.monomials();
        if m0 == m1 || m1 == m2 || m0 == m2 {
            return Err(TrinomialError::Shape("the three monomials must be distinct".into()));
        }
        Ok(curve)
    }

    /// `x^d + y^d + z^d`.
    pub fn fermat(d: u32) -> Result<Self, TrinomialError> {
        Self::type_ii(d, 0, d, 0, 0, d)
    }

    /// `x^(d-1) y + y^(d-1) z + z^(d-1) x`.
    pub fn cyclic(d: u32) -> Result<Self, TrinomialError> {
        if d < 3 {
            return Err(TrinomialError::DegreeTooSmall(d));
        }
        Self::type_i(d - 1, 1, d - 1, 1, d - 1, 1)
    }

    pub fn degree(&self) -> u32 {
        match *self {
            TrinomialCurve::TypeI { a1, a2, .. } => a1 + a2,
            TrinomialCurve::TypeII { d, .. } => d,
        }
    }

    /// Exponent vectors `(x, y, z)` of the three monomials.
    pub fn monomials(&self) -> [[u32; 3]; 3] {
        match *self {
            TrinomialCurve::TypeI { a1, a2, b1, b2, c1, c2 } => [[a1, a2, 0], [0, b1, b2], [c2, 0, c1]],
            TrinomialCurve::TypeII { d, a1, a2, a3, b, c } => [[d, 0, 0], [a1, a2, a3], [0, b, c]],
        }
    }

    /// The curve as a polynomial with unit coefficients, for the oracle.
    pub fn hypersurface(&self) -> HomogPoly {
        let ms = self.monomials();
        HomogPoly::new(3, &[(1, &ms[0][..]), (1, &ms[1][..]), (1, &ms[2][..])]).expect("distinct monomials")
    }

    /// Whether some variable divides every monomial, which makes the curve
    /// reducible.
    pub fn divisible_by_variable(&self) -> bool {
        let ms = self.monomials();
        (0..3).any(|j| ms.iter().all(|m| m[j] > 0))
    }

    /// Every valid `TypeI` curve of degree `d`, ordered by `(a1, b1, c1)`.
    pub fn all_type_i(d: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for a1 in 0..=d {
            for b1 in 0..=d {
                for c1 in 0..=d {
                    if let Ok(h) = Self::type_i(a1, d - a1, b1, d - b1, c1, d - c1) {
                        out.push(h);
                    }
                }
            }
        }
        out
    }

    /// Multiplicity at the coordinate point where variable `j` is 1: the
    /// lowest total degree after setting that variable to 1 (0 when the
    /// point is off the curve).
    pub fn multiplicity_at(&self, j: usize) -> u32 {
        let d = self.degree();
        self.monomials().iter().map(|m| d - m[j]).min().expect("three monomials")
    }
}

impl fmt::Display for TrinomialCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hypersurface())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrinomialInvariants {
    pub alpha: i64,
    pub beta: i64,
    pub nu: i64,
    pub lambda: i64,
    pub a: i64,
    pub lambda_h: i64,
    #[serde(with = "rational::vec")]
    pub t_h: Vec<Rational>,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Classification {
    Regular(TrinomialInvariants),
    Irregular { r: u32 },
}

pub fn classify(h: &TrinomialCurve) -> Result<Classification, TrinomialError> {
    let d = h.degree();
    let r = (0..3).map(|j| h.multiplicity_at(j)).max().expect("three points");
    if 2 * r >= d {
        return Ok(Classification::Irregular { r });
    }
    let di = d as i64;
    let (alpha, beta, nu, lambda) = match *h {
        TrinomialCurve::TypeI { a1, a2, b1, c1, c2, .. } => {
            let (a1, a2, b1, c1, c2) = (a1 as i64, a2 as i64, b1 as i64, c1 as i64, c2 as i64);
            (a1 + b1 - di, a1 + c1 - di, b1 + c1 - di, a1 * b1 + a2 * c2 - b1 * c2)
        }
        TrinomialCurve::TypeII { a2, a3, b, c, .. } => {
            let (a2, a3, b, c) = (a2 as i64, a3 as i64, b as i64, c as i64);
            (a2, c, a2 + c - di, a2 * c - a3 * b)
        }
    };
    if alpha <= 0 || beta <= 0 || nu <= 0 || lambda <= 0 {
        return Err(TrinomialError::OutsideRegularHypotheses(format!(
            "alpha={alpha}, beta={beta}, nu={nu}, lambda={lambda}"
        )));
    }
    let a = alpha.gcd(&beta).gcd(&nu).gcd(&lambda);
    let t_h = [alpha, beta, nu].iter().map(|&v| Rational::new(v.into(), lambda.into())).collect();
    Ok(Classification::Regular(TrinomialInvariants {
        alpha,
        beta,
        nu,
        lambda,
        a,
        lambda_h: lambda / a,
        t_h,
        degree: d,
    }))
}

/// `sum |v_i - u_i|`.
pub fn taxicab_distance(v: &[Rational], u: &[i64]) -> Rational {
    v.iter().zip(u).map(|(vi, &ui)| (vi - Rational::from_integer(ui.into())).abs()).sum()
}

/// First step `D` at which the scaled point comes within taxicab distance
/// 1 of an odd-sum lattice point, and that distance `T`; `(1, None)` when
/// no step qualifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxicabResult {
    #[serde(with = "rational")]
    pub t: Rational,
    pub d: Option<u32>,
}

impl TaxicabResult {
    pub fn is_infinite(&self) -> bool {
        self.d.is_none()
    }
}

impl fmt::Display for TaxicabResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "(T={}, D={})", self.t, d),
            None => write!(f, "(T={}, D=inf)", self.t),
        }
    }
}

fn multiplicative_order(l: i64, modulus: i64) -> u32 {
    let mut x = l.rem_euclid(modulus);
    let mut k = 1;
    while x != 1 % modulus {
        x = x * l.rem_euclid(modulus) % modulus;
        k += 1;
    }
    k
}

/// Scans `s = 0 .. ord(l) - 1` over `v = l^s t_h n`, testing the eight
/// floor/ceil corners with odd coordinate sum. `l^s` is reduced modulo
/// `2 lambda_h`, which moves `v` by an even-sum integer vector and so
/// preserves the distances.
pub fn taxicab_search(inv: &TrinomialInvariants, n: u32, l: i64) -> Result<TaxicabResult, TrinomialError> {
    let modulus = 2 * inv.lambda_h;
    if l.gcd(&modulus) != 1 {
        return Err(TrinomialError::NotCoprime { l, modulus });
    }
    if n == 0 {
        return Err(TrinomialError::ZeroN);
    }
    let ord = multiplicative_order(l, modulus);
    let one = Rational::one();
    let mut ls: i64 = 1 % modulus;
    for s in 0..ord {
        let scale = Rational::from_integer(BigInt::from(ls) * BigInt::from(n));
        let v: Vec<Rational> = inv.t_h.iter().map(|t| t * &scale).collect();
        let corners: Vec<[BigInt; 2]> = v.iter().map(|vi| [floor(vi), ceil(vi)]).collect();
        let mut best: Option<Rational> = None;
        for mask in 0..8u8 {
            let u: Vec<BigInt> = (0..3).map(|i| corners[i][(mask >> i & 1) as usize].clone()).collect();
            if (&u[0] + &u[1] + &u[2]).is_even() {
                continue;
            }
            let td: Rational = v.iter().zip(&u).map(|(vi, ui)| (vi - Rational::from_integer(ui.clone())).abs()).sum();
            if td < one && best.as_ref().is_none_or(|b| &td < b) {
                best = Some(td);
            }
        }
        if let Some(t) = best {
            return Ok(TaxicabResult { t, d: Some(s) });
        }
        ls = ls * l.rem_euclid(modulus) % modulus;
    }
    Ok(TaxicabResult { t: one, d: None })
}

/// Which index multiplies `1 - T` in the correction term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Numerator {
    /// `lambda_h (1 - T)`: reproduces the tabulated Fermat and cyclic values.
    #[default]
    ReducedIndex,
    /// `lambda (1 - T)`: agrees with the colength oracle at `q = p^2`.
    FullIndex,
}

/// `main + coeff / p^D`; `D = None` means no correction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdFormula {
    #[serde(with = "rational")]
    pub main: Rational,
    #[serde(with = "rational")]
    pub coeff: Rational,
    pub p_power: Option<u32>,
}

impl ThresholdFormula {
    pub fn at(&self, p: u64) -> Rational {
        match self.p_power {
            Some(k) if !self.coeff.is_zero() => {
                &self.main + &self.coeff / Rational::from_integer(BigInt::from(p).pow(k))
            }
            _ => self.main.clone(),
        }
    }
}

impl fmt::Display for ThresholdFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(k) = self.p_power.filter(|_| !self.coeff.is_zero()) else {
            return write!(f, "{}", self.main);
        };
        let pp = match k {
            0 => String::new(),
            1 => "p".to_string(),
            _ => format!("p^{k}"),
        };
        let (num, den) = (self.coeff.numer(), self.coeff.denom());
        match (k, den.is_one()) {
            (0, _) => write!(f, "{} + {}", self.main, self.coeff),
            (_, true) => write!(f, "{} + {}/{}", self.main, num, pp),
            (_, false) => write!(f, "{} + {}/({}*{})", self.main, num, den, pp),
        }
    }
}

fn main_term(n: u32) -> Rational {
    Rational::new(BigInt::from(n) + 2, BigInt::from(2))
}

fn correction(
    inv: &TrinomialInvariants,
    n: u32,
    tax: &TaxicabResult,
    numerator: Numerator,
) -> Result<ThresholdFormula, TrinomialError> {
    let index = match numerator {
        Numerator::ReducedIndex => inv.lambda_h,
        Numerator::FullIndex => inv.lambda,
    };
    let num = Rational::from_integer(index.into()) * (int(1) - &tax.t);
    if !num.is_integer() || num.is_negative() || num >= Rational::from_integer(index.into()) {
        return Err(TrinomialError::NumeratorOutOfRange(num.to_string()));
    }
    let coeff = num / Rational::from_integer((2 * inv.degree as i64).into());
    Ok(ThresholdFormula { main: main_term(n), coeff, p_power: tax.d })
}

/// Representative in `1..=lambda_h` of `{p, -p}` modulo `2 lambda_h`.
pub fn residue_of(p: u64, lambda_h: i64) -> i64 {
    let modulus = 2 * lambda_h;
    let r = (p as i64).rem_euclid(modulus);
    if r <= lambda_h {
        r
    } else {
        modulus - r
    }
}

/// Whether `p >= max(n, d^2)`, the range in which the regular closed form
/// is guaranteed. Outside it [`f_threshold`] still evaluates the formula.
pub fn in_guaranteed_range(h: &TrinomialCurve, n: u32, p: u64) -> bool {
    let d = h.degree() as u64;
    p >= (n as u64).max(d * d)
}

/// F-threshold `c^{I(n)}(m)` with the default calibration.
pub fn f_threshold(h: &TrinomialCurve, n: u32, p: u64) -> Result<Rational, TrinomialError> {
    f_threshold_with(h, n, p, Numerator::default())
}

pub fn f_threshold_with(h: &TrinomialCurve, n: u32, p: u64, numerator: Numerator) -> Result<Rational, TrinomialError> {
    if n == 0 {
        return Err(TrinomialError::ZeroN);
    }
    if !oracle::field::is_prime(p) {
        return Err(TrinomialError::NotPrime(p));
    }
    let d = h.degree();
    match classify(h)? {
        Classification::Irregular { r } => {
            let excess = Rational::new(
                BigInt::from((2 * r as i64 - d as i64) * n as i64),
                BigInt::from(2 * d as i64),
            );
            Ok(main_term(n) + &excess * &excess)
        }
        Classification::Regular(inv) => {
            if p < n as u64 {
                return Err(TrinomialError::PrimeTooSmall { p, n });
            }
            let l = residue_of(p, inv.lambda_h);
            let tax = taxicab_search(&inv, n, l)?;
            Ok(correction(&inv, n, &tax, numerator)?.at(p))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub residue: i64,
    pub taxicab: TaxicabResult,
    pub formula: ThresholdFormula,
}

/// One row per class of `(Z/2 lambda_h)^* / {1, -1}`, keyed by the
/// representative in `1..=lambda_h`, in increasing order.
pub fn residue_table(h: &TrinomialCurve, n: u32) -> Result<Vec<ResidueRow>, TrinomialError> {
    residue_table_with(h, n, Numerator::default())
}

pub fn residue_table_with(h: &TrinomialCurve, n: u32, numerator: Numerator) -> Result<Vec<ResidueRow>, TrinomialError> {
    let inv = match classify(h)? {
        Classification::Regular(inv) => inv,
        Classification::Irregular { r } => return Err(TrinomialError::Irregular(r)),
    };
    let modulus = 2 * inv.lambda_h;
    (1..=inv.lambda_h)
        .filter(|l| l.gcd(&modulus) == 1)
        .map(|l| {
            let taxicab = taxicab_search(&inv, n, l)?;
            let formula = correction(&inv, n, &taxicab, numerator)?;
            Ok(ResidueRow { residue: l, taxicab, formula })
        })
        .collect()
}
