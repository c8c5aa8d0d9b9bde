//! Characteristic-p colengths of Frobenius-power quotients.
//!
//! For a prime `p`, an optional hypersurface `h`, homogeneous generators
//! `g_i` and `q = p^e`, the oracle computes the graded pieces of
//! `S / (h, g_1^[q], ..., g_s^[q])` where `S` is a polynomial ring in two to
//! four variables over `F_p`. Monomial generators become a monomial ideal
//! `J`; degree-`m` rows are the monomials of `S_m` outside `J`, and columns
//! are the products `u * g` for every remaining polynomial generator `g`
//! and every standard monomial `u` of complementary degree. The piece
//! length is `#rows - rank`, with the rank taken block by block over the
//! connected components of the matrix.

mod echelon;
pub mod field;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use echelon::{Echelon, SparseVec, UnionFind};

pub const MAX_VARS: usize = 4;
const VAR_NAMES: [char; MAX_VARS] = ['x', 'y', 'z', 'w'];

pub type Exponents = [u32; MAX_VARS];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported range (< 2^31)")]
    PrimeTooLarge(u64),
    #[error("{q} is not a power of {p}")]
    NotPowerOfP { q: u64, p: u64 },
    #[error("the oracle supports 2 to {MAX_VARS} variables, got {0}")]
    VariableCount(usize),
    #[error("a term has {got} exponents in a ring with {expected} variables")]
    Arity { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial has no terms")]
    Empty,
    #[error("generators must have positive degree")]
    ConstantGenerator,
    #[error("generator {0} vanishes modulo p")]
    VanishesModP(String),
    #[error("exponent {0} too large for the monomial encoding")]
    ExponentOverflow(u64),
    #[error("ideal is not of finite colength: degree {bound} still has nonzero length")]
    NotFiniteColength { bound: u64 },
    #[error("monomial ideal lacks a pure power of variable {0}, so its colength is infinite")]
    InfiniteColength(usize),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A homogeneous polynomial with integer coefficients, read modulo `p`
/// when it enters a query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    num_vars: usize,
    terms: Vec<(i64, Exponents)>,
    degree: u64,
}

impl HomogPoly {
    pub fn new(num_vars: usize, terms: &[(i64, &[u32])]) -> Result<Self, OracleError> {
        if !(1..=MAX_VARS).contains(&num_vars) {
            return Err(OracleError::VariableCount(num_vars));
        }
        let mut combined: Vec<(i64, Exponents)> = Vec::new();
        for &(c, e) in terms {
            if e.len() != num_vars {
                return Err(OracleError::Arity { expected: num_vars, got: e.len() });
            }
            let mut ex = [0u32; MAX_VARS];
            ex[..num_vars].copy_from_slice(e);
            match combined.iter_mut().find(|(_, x)| *x == ex) {
                Some(slot) => slot.0 += c,
                None => combined.push((c, ex)),
            }
        }
        combined.retain(|(c, _)| *c != 0);
        let first = combined.first().ok_or(OracleError::Empty)?;
        let degree: u64 = first.1.iter().map(|&v| v as u64).sum();
        if combined.iter().any(|(_, e)| e.iter().map(|&v| v as u64).sum::<u64>() != degree) {
            return Err(OracleError::NotHomogeneous);
        }
        combined.sort_by(|a, b| degrevlex(&b.1, &a.1));
        Ok(Self { num_vars, terms: combined, degree })
    }

    /// Parses the [`fmt::Display`] form, e.g. `"x*y - z^2"` or `"2*x^3 + y^2*z"`,
    /// over the variables `x, y, z, w` truncated to `num_vars`.
    pub fn parse(num_vars: usize, input: &str) -> Result<Self, OracleError> {
        let fail = |reason: String| OracleError::Parse { input: input.to_string(), reason };
        if !(1..=MAX_VARS).contains(&num_vars) {
            return Err(OracleError::VariableCount(num_vars));
        }
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(OracleError::Empty);
        }
        // split into signed terms at top-level + and -
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                sign *= if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(fail("dangling sign".into()));
        }
        terms.push((sign, cur));
        let mut parsed: Vec<(i64, Vec<u32>)> = Vec::new();
        for (sign, term) in terms {
            let mut coeff = sign;
            let mut exps = vec![0u32; num_vars];
            for factor in term.split('*') {
                let (base, power) = match factor.split_once('^') {
                    Some((b, k)) => (b, k.parse::<u32>().map_err(|_| fail(format!("bad exponent in {factor:?}")))?),
                    None => (factor, 1),
                };
                if let Some(i) = VAR_NAMES[..num_vars].iter().position(|&v| base.len() == 1 && base.starts_with(v)) {
                    exps[i] += power;
                } else if let Ok(c) = base.parse::<i64>() {
                    coeff = c
                        .checked_pow(power)
                        .and_then(|c| coeff.checked_mul(c))
                        .ok_or_else(|| fail("coefficient overflow".into()))?;
                } else {
                    return Err(fail(format!("unknown factor {factor:?}")));
                }
            }
            parsed.push((coeff, exps));
        }
        let borrowed: Vec<(i64, &[u32])> = parsed.iter().map(|(c, e)| (*c, &e[..])).collect();
        Self::new(num_vars, &borrowed)
    }

    pub fn monomial(exponents: &[u32]) -> Result<Self, OracleError> {
        Self::new(exponents.len(), &[(1, exponents)])
    }

    /// `x_i^k` in a ring with `num_vars` variables.
    pub fn pure_power(num_vars: usize, i: usize, k: u32) -> Result<Self, OracleError> {
        let mut e = vec![0u32; num_vars];
        e[i] = k;
        Self::monomial(&e)
    }

    /// The ideal `(x_1^n, ..., x_k^n)` as a generator list.
    pub fn power_generators(num_vars: usize, n: u32) -> Result<Vec<Self>, OracleError> {
        (0..num_vars).map(|i| Self::pure_power(num_vars, i, n)).collect()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &[u32])> {
        self.terms.iter().map(move |(c, e)| (*c, &e[..self.num_vars]))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Frobenius bracket `sum c_i m_i^q`; equals `g^q` in characteristic
    /// `p` because the coefficients are fixed by Frobenius.
    pub fn bracket(&self, q: u64) -> Result<Self, OracleError> {
        let mut terms = self.terms.clone();
        for (_, e) in terms.iter_mut() {
            for v in e.iter_mut() {
                let raised = *v as u64 * q;
                *v = u32::try_from(raised).map_err(|_| OracleError::ExponentOverflow(raised))?;
            }
        }
        Ok(Self { num_vars: self.num_vars, terms, degree: self.degree * q })
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, e)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &v) in e[..self.num_vars].iter().enumerate() {
                match v {
                    0 => {}
                    1 => factors.push(VAR_NAMES[i].to_string()),
                    _ => factors.push(format!("{}^{}", VAR_NAMES[i], v)),
                }
            }
            let mag = c.unsigned_abs();
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mag, factors.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => f.write_str(&factors.join("*"))?,
                (_, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Degree-reverse-lexicographic comparison of same-degree monomials.
pub fn degrevlex(a: &Exponents, b: &Exponents) -> Ordering {
    for i in (0..MAX_VARS).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn pack(e: &Exponents) -> u64 {
    e.iter().enumerate().fold(0u64, |acc, (i, &v)| acc | ((v as u64) << (16 * i)))
}

fn divides(a: &Exponents, b: &Exponents) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A colength question: the length of the degree-`degree` piece of
/// `S / (h, g_1^[q], ..., g_s^[q])` over `F_p`.
#[derive(Clone, Debug)]
pub struct GradedQuotientQuery {
    pub p: u64,
    pub num_vars: usize,
    pub hypersurface: Option<HomogPoly>,
    pub generators: Vec<HomogPoly>,
    pub q: u64,
    pub degree: u64,
}

pub fn graded_piece_length(query: &GradedQuotientQuery) -> Result<u64, OracleError> {
    let ring = FrobeniusQuotient::new(
        query.p,
        query.num_vars,
        query.hypersurface.as_ref(),
        &query.generators,
        query.q,
    )?;
    Ok(ring.piece_length(query.degree))
}

/// Graded lengths `m -> l(R/I^[q])_m` up to and including the top nonzero
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColengthProfile {
    pub p: u64,
    pub q: u64,
    pub lengths: Vec<u64>,
    pub top_nonzero: Option<u64>,
}

impl ColengthProfile {
    pub fn length(&self, m: u64) -> u64 {
        self.lengths.get(m as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.lengths.iter().sum()
    }
}

/// The quotient `S / (h, J, G^[q])` prepared for repeated degree queries.
#[derive(Clone, Debug)]
pub struct FrobeniusQuotient {
    p: u32,
    q: u64,
    num_vars: usize,
    has_hypersurface: bool,
    monomial_ideal: Vec<Exponents>,
    // exclusive upper bound on each exponent of a standard monomial
    caps: Exponents,
    relations: Vec<Relation>,
    sweep_bound: u64,
}

#[derive(Clone, Debug)]
struct Relation {
    degree: u64,
    terms: Vec<(u32, Exponents)>,
}

impl FrobeniusQuotient {
    pub fn new(
        p: u64,
        num_vars: usize,
        hypersurface: Option<&HomogPoly>,
        generators: &[HomogPoly],
        q: u64,
    ) -> Result<Self, OracleError> {
        if !field::is_prime(p) {
            return Err(OracleError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(OracleError::PrimeTooLarge(p));
        }
        if !field::is_power_of(q, p) {
            return Err(OracleError::NotPowerOfP { q, p });
        }
        if !(2..=MAX_VARS).contains(&num_vars) {
            return Err(OracleError::VariableCount(num_vars));
        }
        let p32 = p as u32;
        let mut monomial_ideal = Vec::new();
        let mut relations = Vec::new();
        let mut gen_degree_sum = 0u64;
        let reduce = |g: &HomogPoly| -> Result<Vec<(u32, Exponents)>, OracleError> {
            if g.num_vars != num_vars {
                return Err(OracleError::Arity { expected: num_vars, got: g.num_vars });
            }
            let terms: Vec<_> = g
                .terms
                .iter()
                .map(|(c, e)| (field::reduce(*c, p32), *e))
                .filter(|(c, _)| *c != 0)
                .collect();
            if terms.is_empty() {
                return Err(OracleError::VanishesModP(g.to_string()));
            }
            Ok(terms)
        };
        for g in generators {
            if g.degree == 0 {
                return Err(OracleError::ConstantGenerator);
            }
            gen_degree_sum += g.degree;
            let terms = reduce(&g.bracket(q)?)?;
            if terms.len() == 1 {
                monomial_ideal.push(terms[0].1);
            } else {
                relations.push(Relation { degree: g.degree * q, terms });
            }
        }
        let mut hyper_degree = 0;
        if let Some(h) = hypersurface {
            if h.degree == 0 {
                return Err(OracleError::ConstantGenerator);
            }
            hyper_degree = h.degree;
            relations.push(Relation { degree: h.degree, terms: reduce(h)? });
        }
        let mut caps = [0u32; MAX_VARS];
        for (i, cap) in caps.iter_mut().enumerate().take(num_vars) {
            *cap = monomial_ideal
                .iter()
                .filter(|e| e.iter().enumerate().all(|(j, &v)| j == i || v == 0))
                .map(|e| e[i])
                .min()
                .unwrap_or(u32::MAX);
        }
        let sweep_bound = q * gen_degree_sum + hyper_degree;
        if sweep_bound >= u16::MAX as u64 {
            return Err(OracleError::ExponentOverflow(sweep_bound));
        }
        Ok(Self {
            p: p32,
            q,
            num_vars,
            has_hypersurface: hypersurface.is_some(),
            monomial_ideal,
            caps,
            relations,
            sweep_bound,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Krull dimension of the ambient graded ring.
    pub fn dimension(&self) -> u32 {
        (self.num_vars - usize::from(self.has_hypersurface)) as u32
    }

    pub fn sweep_bound(&self) -> u64 {
        self.sweep_bound
    }

    fn in_ideal(&self, e: &Exponents) -> bool {
        self.monomial_ideal.iter().any(|g| divides(g, e))
    }

    /// Monomials of degree `m` outside the monomial ideal, in ascending
    /// degrevlex order.
    fn standard_monomials(&self, m: u64) -> Vec<Exponents> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        self.fill(0, m, &mut cur, &mut out);
        out.retain(|e| !self.in_ideal(e));
        out.sort_by(degrevlex);
        out
    }

    fn fill(&self, i: usize, rest: u64, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        let n = self.num_vars;
        if i == n - 1 {
            if rest < self.caps[i] as u64 {
                cur[i] = rest as u32;
                out.push(*cur);
            }
            return;
        }
        let top = rest.min(self.caps[i].saturating_sub(1) as u64);
        for v in 0..=top {
            cur[i] = v as u32;
            self.fill(i + 1, rest - v, cur, out);
        }
        cur[i] = 0;
    }

    /// `l(R/I^[q])_m`.
    pub fn piece_length(&self, m: u64) -> u64 {
        let rows = self.standard_monomials(m);
        if rows.is_empty() {
            return 0;
        }
        let index: HashMap<u64, u32> =
            rows.iter().enumerate().map(|(i, e)| (pack(e), i as u32)).collect();

        // (vector, complete) pairs; complete means no term fell into J
        let mut columns: Vec<(SparseVec, bool)> = Vec::new();
        for rel in &self.relations {
            if rel.degree > m {
                continue;
            }
            for u in self.standard_monomials(m - rel.degree) {
                let mut v: SparseVec = Vec::with_capacity(rel.terms.len());
                for (c, t) in &rel.terms {
                    let mut e = u;
                    for k in 0..MAX_VARS {
                        e[k] += t[k];
                    }
                    if let Some(&r) = index.get(&pack(&e)) {
                        v.push((r, *c));
                    }
                }
                if v.is_empty() {
                    continue;
                }
                let complete = v.len() == rel.terms.len();
                v.sort_unstable_by_key(|e| std::cmp::Reverse(e.0));
                columns.push((v, complete));
            }
        }
        let rank = block_rank(self.p, rows.len(), columns);
        rows.len() as u64 - rank as u64
    }

    /// Smallest degree beyond which every piece vanishes, minus one; `None`
    /// when even degree 0 vanishes.
    pub fn top_nonzero(&self) -> Result<Option<u64>, OracleError> {
        if self.piece_length(self.sweep_bound) != 0 {
            return Err(OracleError::NotFiniteColength { bound: self.sweep_bound });
        }
        // vanishing is upward closed in a standard graded ring
        let (mut lo, mut hi) = (0u64, self.sweep_bound);
        if self.piece_length(0) == 0 {
            return Ok(None);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.piece_length(mid) == 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(Some(lo))
    }

    pub fn profile(&self) -> Result<ColengthProfile, OracleError> {
        let top = self.top_nonzero()?;
        let lengths = match top {
            Some(t) => (0..=t).into_par_iter().map(|m| self.piece_length(m)).collect(),
            None => Vec::new(),
        };
        Ok(ColengthProfile { p: self.p as u64, q: self.q, lengths, top_nonzero: top })
    }
}

// Rank of the matrix with the given columns, computed independently on each
// connected block of rows.
fn block_rank(p: u32, num_rows: usize, columns: Vec<(SparseVec, bool)>) -> usize {
    let mut uf = UnionFind::new(num_rows);
    for (v, _) in &columns {
        for w in v.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut block_of_root: HashMap<u32, usize> = HashMap::new();
    let mut block_sizes: Vec<usize> = Vec::new();
    let mut local = vec![0u32; num_rows];
    let mut block_of_row = vec![0usize; num_rows];
    for r in 0..num_rows as u32 {
        let root = uf.find(r);
        let b = *block_of_root.entry(root).or_insert_with(|| {
            block_sizes.push(0);
            block_sizes.len() - 1
        });
        local[r as usize] = block_sizes[b] as u32;
        block_sizes[b] += 1;
        block_of_row[r as usize] = b;
    }
    let mut blocks: Vec<(Vec<SparseVec>, Vec<SparseVec>)> =
        vec![(Vec::new(), Vec::new()); block_sizes.len()];
    for (mut v, complete) in columns {
        let b = block_of_row[v[0].0 as usize];
        for e in v.iter_mut() {
            e.0 = local[e.0 as usize];
        }
        if complete {
            blocks[b].0.push(v);
        } else {
            blocks[b].1.push(v);
        }
    }
    blocks
        .into_par_iter()
        .zip(block_sizes.into_par_iter())
        .map(|((complete, partial), size)| {
            let mut ech = Echelon::new(p, size);
            for v in complete.into_iter().chain(partial) {
                ech.insert(v);
            }
            ech.rank()
        })
        .sum()
}

pub fn colength_profile(
    p: u64,
    hypersurface: Option<&HomogPoly>,
    generators: &[HomogPoly],
    q: u64,
) -> Result<ColengthProfile, OracleError> {
    let n = ambient_vars(hypersurface, generators)?;
    FrobeniusQuotient::new(p, n, hypersurface, generators, q)?.profile()
}

fn ambient_vars(hypersurface: Option<&HomogPoly>, generators: &[HomogPoly]) -> Result<usize, OracleError> {
    hypersurface
        .map(|h| h.num_vars)
        .or_else(|| generators.first().map(|g| g.num_vars))
        .ok_or(OracleError::Empty)
}

fn q_power(q: u64, k: u32) -> Rational {
    Rational::from_integer(BigInt::from(q).pow(k))
}

/// `f_e(x) = l(R/I^[q])_{floor(xq)} / q^(dim-1)`.
pub fn fn_sample(
    p: u64,
    hypersurface: Option<&HomogPoly>,
    generators: &[HomogPoly],
    q: u64,
    x: &Rational,
) -> Result<Rational, OracleError> {
    let n = ambient_vars(hypersurface, generators)?;
    let ring = FrobeniusQuotient::new(p, n, hypersurface, generators, q)?;
    let scaled = crate::exactnum::rational::floor(&(x * Rational::from_integer(BigInt::from(q))));
    if scaled < BigInt::from(0) {
        return Ok(Rational::from_integer(BigInt::from(0)));
    }
    let m = u64::try_from(scaled).unwrap_or(u64::MAX).min(ring.sweep_bound);
    let len = ring.piece_length(m);
    Ok(Rational::from_integer(BigInt::from(len)) / q_power(q, ring.dimension() - 1))
}

/// `l(R/I^[q]) / q^dim`.
pub fn ehk_estimate(
    p: u64,
    hypersurface: Option<&HomogPoly>,
    generators: &[HomogPoly],
    q: u64,
) -> Result<Rational, OracleError> {
    let n = ambient_vars(hypersurface, generators)?;
    let ring = FrobeniusQuotient::new(p, n, hypersurface, generators, q)?;
    let total = ring.profile()?.total();
    Ok(Rational::from_integer(BigInt::from(total)) / q_power(q, ring.dimension()))
}

/// `top_nonzero / q` for `I(n) = (x^n, y^n, z^n, ...)` on the hypersurface.
pub fn fthreshold_estimate(p: u64, hypersurface: &HomogPoly, n: u32, q: u64) -> Result<Rational, OracleError> {
    let gens = HomogPoly::power_generators(hypersurface.num_vars, n)?;
    let ring = FrobeniusQuotient::new(p, hypersurface.num_vars, Some(hypersurface), &gens, q)?;
    let top = ring.top_nonzero()?.unwrap_or(0);
    Ok(Rational::new(BigInt::from(top), BigInt::from(q)))
}

/// For a finite-colength monomial ideal `I` of `k[x_1..x_n]`, returns
/// `max{s : some degree-s monomial lies outside I} + n`.
pub fn monomial_alpha(num_vars: usize, generators: &[Vec<u32>]) -> Result<Rational, OracleError> {
    if !(1..=MAX_VARS).contains(&num_vars) {
        return Err(OracleError::VariableCount(num_vars));
    }
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        if g.len() != num_vars {
            return Err(OracleError::Arity { expected: num_vars, got: g.len() });
        }
        let mut e = [0u32; MAX_VARS];
        e[..num_vars].copy_from_slice(g);
        gens.push(e);
    }
    let mut caps = [1u32; MAX_VARS];
    for (i, cap) in caps.iter_mut().enumerate().take(num_vars) {
        *cap = gens
            .iter()
            .filter(|e| e.iter().enumerate().all(|(j, &v)| j == i || v == 0))
            .map(|e| e[i])
            .min()
            .ok_or(OracleError::InfiniteColength(i))?;
    }
    // a pure power x_i^0 = 1 makes I the unit ideal; no monomial survives
    if caps[..num_vars].contains(&0) {
        return Ok(Rational::from_integer(BigInt::from(num_vars as i64 - 1)));
    }
    let mut best: Option<u64> = None;
    let mut cur = [0u32; MAX_VARS];
    loop {
        if !gens.iter().any(|g| divides(g, &cur)) {
            let deg: u64 = cur.iter().map(|&v| v as u64).sum();
            best = Some(best.map_or(deg, |b| b.max(deg)));
        }
        // odometer over the box of exponents below the pure-power caps
        let mut i = 0;
        loop {
            if i == num_vars {
                let top = best.expect("1 lies outside a proper ideal");
                return Ok(Rational::from_integer(BigInt::from(top + num_vars as u64)));
            }
            cur[i] += 1;
            if cur[i] < caps[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Whether two presentations have identical graded lengths in every degree
/// up to the larger sweep bound.
pub fn bracket_profiles_agree(
    p: u64,
    hypersurface: Option<&HomogPoly>,
    gens_a: &[HomogPoly],
    q_a: u64,
    gens_b: &[HomogPoly],
    q_b: u64,
) -> Result<bool, OracleError> {
    let n = ambient_vars(hypersurface, gens_a)?;
    let a = FrobeniusQuotient::new(p, n, hypersurface, gens_a, q_a)?;
    let b = FrobeniusQuotient::new(p, n, hypersurface, gens_b, q_b)?;
    let bound = a.sweep_bound.max(b.sweep_bound);
    let degrees: Vec<u64> = (0..=bound).collect();
    Ok(degrees.par_iter().all(|&m| a.piece_length(m) == b.piece_length(m)))
}

/// Checks `l(R/(I^[q0])^[q])_m = l(R/I^[q0 q])_m` at `m = floor(q0 q x)`
/// for `x` on the grid `{k/4}` up to the sweep bound.
pub fn scaling_check(
    p: u64,
    hypersurface: Option<&HomogPoly>,
    generators: &[HomogPoly],
    q0: u64,
    q: u64,
) -> Result<bool, OracleError> {
    if !field::is_power_of(q0, p) {
        return Err(OracleError::NotPowerOfP { q: q0, p });
    }
    let n = ambient_vars(hypersurface, generators)?;
    let bracketed = generators.iter().map(|g| g.bracket(q0)).collect::<Result<Vec<_>, _>>()?;
    let a = FrobeniusQuotient::new(p, n, hypersurface, &bracketed, q)?;
    let b = FrobeniusQuotient::new(p, n, hypersurface, generators, q0 * q)?;
    let top = a.sweep_bound.max(b.sweep_bound);
    let degrees: Vec<u64> = (0u64..).map(|k| k * q0 * q / 4).take_while(|&m| m <= top).collect();
    Ok(degrees.par_iter().all(|&m| a.piece_length(m) == b.piece_length(m)))
}

#[cfg(test)]
mod tests;
