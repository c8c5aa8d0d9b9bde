use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{from_u64, int, Rational};

/// Univariate polynomial with rational coefficients, lowest degree first.
///
/// The coefficient list never ends in a zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `a*x + b`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * from_u64(k as u64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / from_u64(k as u64 + 1));
        }
        Self::from_coeffs(coeffs)
    }

    /// Substitution `x -> a*x + b`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Self::linear(a.clone(), b.clone());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k - dd + j] -= t;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Number of distinct real roots in the open interval `(a, b)`,
    /// by Sturm's theorem. Requires a nonzero polynomial.
    pub fn count_roots_open(&self, a: &Rational, b: &Rational) -> usize {
        assert!(!self.is_zero());
        if a >= b || self.degree() == Some(0) {
            return 0;
        }
        let chain = self.sturm_chain();
        let sign_changes = |x: &Rational| {
            let mut last = 0i8;
            let mut changes = 0usize;
            for p in &chain {
                let v = p.eval(x);
                let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
                if s != 0 {
                    if last != 0 && s != last {
                        changes += 1;
                    }
                    last = s;
                }
            }
            changes
        };
        // Sturm counts roots in (a, b]; drop a root sitting on b.
        let in_half_open = sign_changes(a) - sign_changes(b);
        let at_b = usize::from(self.eval(b).is_zero());
        in_half_open - at_b
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        chain
    }

    /// Whether `p(x) > 0` for every `x` in the open interval `(a, b)`.
    pub fn positive_on_open(&self, a: &Rational, b: &Rational) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.count_roots_open(a, b) > 0 {
            return false;
        }
        let mid = (a + b) / int(2);
        self.eval(&mid).is_positive()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        Polynomial::from_coeffs(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn normalization_and_degree() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::from_ints(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::from_ints(&[1, 1]); // 1 + x
        let q = Polynomial::from_ints(&[-1, 1]); // x - 1
        assert_eq!(&p * &q, Polynomial::from_ints(&[-1, 0, 1]));
        assert!((&p - &p).is_zero());
        assert_eq!(p.pow(3), Polynomial::from_ints(&[1, 3, 3, 1]));
    }

    #[test]
    fn composition() {
        // p(x) = x^2; p(2 - x) = x^2 - 4x + 4
        let p = Polynomial::monomial(int(1), 2);
        assert_eq!(p.compose_linear(&int(-1), &int(2)), Polynomial::from_ints(&[4, -4, 1]));
        let lin = Polynomial::from_ints(&[0, 1]);
        assert_eq!(lin.compose_linear(&rat(1, 2), &int(0)).eval(&int(3)), rat(3, 2));
    }

    #[test]
    fn calculus() {
        let p = Polynomial::from_ints(&[1, 2, 3]);
        assert_eq!(p.derivative(), Polynomial::from_ints(&[2, 6]));
        assert_eq!(p.antiderivative().derivative(), p);
    }

    #[test]
    fn sturm_root_counting() {
        // (x - 1)(x - 2)(x - 3)
        let p = Polynomial::from_ints(&[-6, 11, -6, 1]);
        assert_eq!(p.count_roots_open(&int(0), &int(4)), 3);
        assert_eq!(p.count_roots_open(&int(1), &int(3)), 1);
        assert_eq!(p.count_roots_open(&rat(3, 2), &rat(5, 2)), 1);
        // double root at 1
        let d = Polynomial::from_ints(&[1, -2, 1]);
        assert_eq!(d.count_roots_open(&int(0), &int(2)), 1);
        assert!(!d.positive_on_open(&int(0), &int(2)));
        assert!(d.positive_on_open(&int(1), &int(2)));
        assert!(Polynomial::from_ints(&[1]).positive_on_open(&int(0), &int(1)));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[-4, 8, -3]).to_string(), "-3x^2 + 8x - 4");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
