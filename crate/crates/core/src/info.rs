//! Finite joint distributions with exact rational probabilities, and
//! mutual information kept in exact form.
//!
//! Every probability ratio that appears in `I(A;B)` is a rational number, so
//! `I(A;B) = Σ_p c_p log p` over primes `p` with rational `c_p`. Logarithms
//! of distinct primes are linearly independent over `Q`, which makes
//! equality of two such sums decidable by comparing coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Stored as nonnegative integer counts over a common total, reduced so the
/// counts and total share no factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    arity: usize,
    table: BTreeMap<Vec<u32>, BigUint>,
    total: BigUint,
}

impl JointDistribution {
    /// Builds from outcome/weight pairs; weights are normalized and
    /// repeated outcomes merged.
    pub fn from_weights<I>(arity: usize, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut rows = Vec::new();
        let mut den = BigInt::one();
        for (x, w) in weights {
            if w.is_negative() {
                return Err(Error::NotADensity("negative probability"));
            }
            den = den.lcm(w.denom());
            rows.push((x, w));
        }
        let counts = rows.into_iter().map(|(x, w)| {
            let c = w.numer() * (&den / w.denom());
            (x, c.to_biguint().expect("nonnegative"))
        });
        Self::from_counts(arity, counts)
    }

    /// Builds from outcome/count pairs.
    pub fn from_counts<I>(arity: usize, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigUint)>,
    {
        let mut table: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
        let mut total = BigUint::zero();
        for (x, c) in counts {
            if x.len() != arity {
                return Err(Error::LengthMismatch { expected: arity, actual: x.len() });
            }
            if c.is_zero() {
                continue;
            }
            total += &c;
            *table.entry(x).or_insert_with(BigUint::zero) += c;
        }
        if total.is_zero() {
            return Err(Error::NotADensity("empty distribution"));
        }
        let g = table.values().fold(total.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in table.values_mut() {
                *c /= &g;
            }
            total /= &g;
        }
        Ok(JointDistribution { arity, table, total })
    }

    pub fn uniform<I: IntoIterator<Item = Vec<u32>>>(arity: usize, outcomes: I) -> Result<Self> {
        Self::from_counts(arity, outcomes.into_iter().map(|x| (x, BigUint::one())))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn ratio(&self, c: &BigUint) -> BigRational {
        BigRational::new(BigInt::from(c.clone()), BigInt::from(self.total.clone()))
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<u32>, BigRational)> + '_ {
        self.table.iter().map(|(x, c)| (x, self.ratio(c)))
    }

    pub fn prob(&self, x: &[u32]) -> BigRational {
        self.table.get(x).map_or_else(BigRational::zero, |c| self.ratio(c))
    }

    fn check_vars(&self, vars: &[usize]) -> Result<()> {
        match vars.iter().find(|&&v| v >= self.arity) {
            Some(&v) => Err(Error::VariableUnknown(v)),
            None => Ok(()),
        }
    }

    /// Marginal counts over `vars`, relative to [`Self::total`].
    pub fn marginal_counts(&self, vars: &[usize]) -> Result<BTreeMap<Vec<u32>, BigUint>> {
        self.check_vars(vars)?;
        let mut out: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
        for (x, c) in &self.table {
            let key: Vec<u32> = vars.iter().map(|&v| x[v]).collect();
            *out.entry(key).or_insert_with(BigUint::zero) += c;
        }
        Ok(out)
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn marginal(&self, vars: &[usize]) -> Result<BTreeMap<Vec<u32>, BigRational>> {
        Ok(self.marginal_counts(vars)?.into_iter().map(|(x, c)| (x, self.ratio(&c))).collect())
    }

    /// `H(A) = -Σ p ln p` in exact form. Equal probabilities are grouped so
    /// only distinct values are factored.
    pub fn entropy_exact(&self, vars: &[usize]) -> Result<LogSum> {
        let mut groups: BTreeMap<BigUint, u64> = BTreeMap::new();
        for c in self.marginal_counts(vars)?.into_values() {
            *groups.entry(c).or_default() += 1;
        }
        let mut out = LogSum::zero();
        for (c, mult) in groups {
            let p = self.ratio(&c);
            let mass = &p * BigRational::from_integer(BigInt::from(mult));
            out = out - LogSum::log_of(&p)?.scale(&mass);
        }
        Ok(out)
    }

    /// `I(A; B) = H(A) + H(B) - H(AB)` in exact form.
    pub fn mutual_information_exact(&self, a: &[usize], b: &[usize]) -> Result<LogSum> {
        self.check_vars(a)?;
        self.check_vars(b)?;
        if a.iter().any(|v| b.contains(v)) {
            return Err(Error::InvalidParameters("variable sets must be disjoint".into()));
        }
        let ab: Vec<usize> = a.iter().chain(b).copied().collect();
        Ok(self.entropy_exact(a)? + self.entropy_exact(b)? - self.entropy_exact(&ab)?)
    }

    /// `I(A; B)` in bits.
    pub fn mutual_information(&self, a: &[usize], b: &[usize]) -> Result<f64> {
        Ok(self.mutual_information_exact(a, b)?.to_f64(2.0))
    }

    /// `I(A; B | C) = I(A; B C) - I(A; C)`.
    pub fn conditional_mutual_information_exact(&self, a: &[usize], b: &[usize], c: &[usize]) -> Result<LogSum> {
        let bc: Vec<usize> = b.iter().chain(c).copied().collect();
        Ok(self.mutual_information_exact(a, &bc)? - self.mutual_information_exact(a, c)?)
    }
}

/// A finite sum `Σ c_p ln p` over primes `p` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogSum {
    coeffs: BTreeMap<u64, BigRational>,
}

impl LogSum {
    pub fn zero() -> Self {
        LogSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `ln r` for a positive rational `r` whose numerator and denominator
    /// fit in 64 bits.
    pub fn log_of(r: &BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::DomainError(r.to_f64().unwrap_or(f64::NAN)));
        }
        let mut out = LogSum::zero();
        for (int, sign) in [(r.numer(), 1i64), (r.denom(), -1i64)] {
            let v = int.to_u64().ok_or_else(|| Error::InvalidParameters("probability ratio too large".into()))?;
            for (p, e) in factor(v) {
                out.add_term(p, BigRational::from_integer(BigInt::from(sign * e as i64)));
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, p: u64, c: BigRational) {
        let e = self.coeffs.entry(p).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn scale(mut self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LogSum::zero();
        }
        for v in self.coeffs.values_mut() {
            *v *= c;
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&p, c)| (p, c))
    }

    /// Numerical value with logarithms taken to `base`.
    pub fn to_f64(&self, base: f64) -> f64 {
        let ln_base = libm::log(base);
        self.coeffs.iter().map(|(&p, c)| c.to_f64().unwrap_or(f64::NAN) * libm::log(p as f64) / ln_base).sum()
    }
}

impl Add for LogSum {
    type Output = LogSum;
    fn add(mut self, rhs: LogSum) -> LogSum {
        for (p, c) in rhs.coeffs {
            self.add_term(p, c);
        }
        self
    }
}

impl Neg for LogSum {
    type Output = LogSum;
    fn neg(mut self) -> LogSum {
        for v in self.coeffs.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Sub for LogSum {
    type Output = LogSum;
    fn sub(self, rhs: LogSum) -> LogSum {
        self + (-rhs)
    }
}

fn factor(mut v: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= v {
        let mut e = 0;
        while v % d == 0 {
            v /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push((v, 1));
    }
    out
}
