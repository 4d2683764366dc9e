//! Gilbert–Varshamov-type existence bound for code triples with prescribed
//! coset distances, its exhaustive check at tiny scale, and the asymptotic
//! rate form.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::linalg::{Layout, MatrixFq, Subspace};
use crate::symplectic::{coset_distance, swt, symplectic_dual};
use crate::EnumLimit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deltas {
    pub q: usize,
    pub f: usize,
    pub t: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GvParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub delta: Deltas,
}

impl GvParams {
    pub fn check(&self) -> Result<()> {
        let d = self.delta;
        let ok = self.q >= 2
            && self.n >= 1
            && self.k + self.s <= self.n
            && [d.q, d.f, d.t].iter().all(|&x| (1..=self.n + 1).contains(&x))
            && d.f >= d.t;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("invalid bound parameters {self:?}")))
        }
    }
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `Σ_{i=1}^{δ-1} C(n,i) (q²-1)^i` for `δ = 0..=n+1`, the number of nonzero
/// vectors of `F_q^{2n}` with symplectic weight below `δ`.
pub fn ball_sizes(q: u32, n: usize) -> Vec<BigInt> {
    let base = BigInt::from(q as u64 * q as u64 - 1);
    let mut out = vec![BigInt::zero(), BigInt::zero()];
    let mut pw = BigInt::one();
    for i in 1..=n {
        pw *= &base;
        let next = out[i].clone() + binom(n, i) * &pw;
        out.push(next);
    }
    out
}

struct Coefficients {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    denom: BigInt,
}

fn coefficients(q: u32, n: usize, k: usize, s: usize) -> Coefficients {
    let qp = |e: usize| BigInt::from(q).pow(e as u32);
    Coefficients {
        a: qp(n + k + s) - qp(n + s),
        b: qp(n) - qp(n - s),
        c: qp(n - s) - qp(n - k - s),
        denom: qp(2 * n) - 1,
    }
}

/// Left side of the bound as an exact rational; the triple is guaranteed to
/// exist when it is below 1.
pub fn gv_lhs(p: &GvParams) -> Result<BigRational> {
    p.check()?;
    let balls = ball_sizes(p.q, p.n);
    let c = coefficients(p.q, p.n, p.k, p.s);
    let num = &c.a * &balls[p.delta.q] + &c.b * &balls[p.delta.t] + &c.c * &balls[p.delta.f];
    Ok(BigRational::new(num, c.denom))
}

pub fn gv_feasible(p: &GvParams) -> Result<bool> {
    Ok(gv_lhs(p)? < BigRational::one())
}

/// Maximal feasible `(δ_q, δ_f, δ_t)` under the componentwise order, with
/// `1 ≤ δ ≤ n + 1` and `δ_f ≥ δ_t`, sorted.
pub fn gv_search(q: u32, n: usize, k: usize, s: usize) -> Result<Vec<Deltas>> {
    if q < 2 || n == 0 || k + s > n || n > 64 {
        return Err(Error::InvalidParameters(format!("search needs 1 <= n <= 64, k + s <= n; got n = {n}")));
    }
    let balls = ball_sizes(q, n);
    let c = coefficients(q, n, k, s);
    let feasible = |d: Deltas| -> bool {
        let inside = (1..=n + 1).contains(&d.q) && (1..=n + 1).contains(&d.f) && (1..=n + 1).contains(&d.t);
        inside && d.f >= d.t && &c.a * &balls[d.q] + &c.b * &balls[d.t] + &c.c * &balls[d.f] < c.denom
    };
    let mut out = Vec::new();
    for dq in 1..=n + 1 {
        for df in 1..=n + 1 {
            for dt in 1..=df {
                let d = Deltas { q: dq, f: df, t: dt };
                if !feasible(d) {
                    continue;
                }
                let up = [Deltas { q: dq + 1, ..d }, Deltas { f: df + 1, ..d }, Deltas { t: dt + 1, ..d }];
                if !up.iter().any(|&u| feasible(u)) {
                    out.push(d);
                }
            }
        }
    }
    Ok(out)
}

/// All subspaces of `outer` of dimension `dim`, by spanning every
/// `dim`-tuple of its vectors.
pub fn subspaces_of(field: &Field, outer: &Subspace, dim: usize, limit: EnumLimit) -> Result<Vec<Subspace>> {
    limit.check(outer.size_log2(field) * dim as f64)?;
    let mut vecs = Vec::new();
    outer.for_each_vector(field, |v, _| vecs.push(v.to_vec()));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let rows: Vec<&[Fq]> = idx.iter().map(|&i| &vecs[i][..]).collect();
        let m = MatrixFq::from_rows(outer.ambient_dim(), &rows)?;
        let sp = Subspace::span(field, outer.layout(), &m);
        if sp.dim() == dim {
            let key: Vec<u32> = sp.basis().iter_rows().flatten().map(|x| x.0).collect();
            if seen.insert(key) {
                out.push(sp);
            }
        }
        let mut j = 0;
        loop {
            if j == dim {
                return Ok(out);
            }
            idx[j] += 1;
            if idx[j] < vecs.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Every chain `(U, V, W)` with `W` self-dual, `dim V = n - s`,
/// `dim U = n - k - s`.
pub fn enumerate_chains(
    field: &Field,
    n: usize,
    k: usize,
    s: usize,
    limit: EnumLimit,
) -> Result<Vec<(Subspace, Subspace, Subspace)>> {
    if k + s > n {
        return Err(Error::InvalidParameters(format!("k + s = {} exceeds n = {n}", k + s)));
    }
    let full = Subspace::full(Layout::Symplectic, 2 * n);
    let mut out = Vec::new();
    for w in subspaces_of(field, &full, n, limit)? {
        if symplectic_dual(field, &w)? != w {
            continue;
        }
        for v in subspaces_of(field, &w, n - s, limit)? {
            for u in subspaces_of(field, &v, n - k - s, limit)? {
                out.push((u, v.clone(), w.clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub chains: usize,
    /// Counts for each nonzero `e`, in the order `(U^⊥s \ V^⊥s, W \ V, V \ U)`.
    pub counts: (usize, usize, usize),
    /// Whether the counts are the same for every nonzero `e`.
    pub uniform_in_e: bool,
    pub ratios: [BigRational; 3],
    pub expected: [BigRational; 3],
}

impl RatioReport {
    pub fn matches(&self) -> bool {
        self.uniform_in_e && self.ratios == self.expected
    }
}

pub fn ratio_enumeration_check(q: u32, n: usize, k: usize, s: usize, limit: EnumLimit) -> Result<RatioReport> {
    let f = Field::with_order(q)?;
    let chains = enumerate_chains(&f, n, k, s, limit)?;
    let duals: Vec<(Subspace, Subspace)> =
        chains.iter().map(|(u, v, _)| Ok((symplectic_dual(&f, u)?, symplectic_dual(&f, v)?))).collect::<Result<_>>()?;
    let mut counts: Option<(usize, usize, usize)> = None;
    let mut uniform = true;
    Subspace::full(Layout::Symplectic, 2 * n).for_each_vector(&f, |e, _| {
        if e.iter().all(|x| x.is_zero()) {
            return;
        }
        let mut c = (0, 0, 0);
        for ((u, v, w), (ud, vd)) in chains.iter().zip(&duals) {
            c.0 += (ud.contains(&f, e) && !vd.contains(&f, e)) as usize;
            c.1 += (w.contains(&f, e) && !v.contains(&f, e)) as usize;
            c.2 += (v.contains(&f, e) && !u.contains(&f, e)) as usize;
        }
        match counts {
            None => counts = Some(c),
            Some(prev) if prev != c => uniform = false,
            _ => {}
        }
    });
    let counts = counts.unwrap_or_default();
    let total = BigInt::from(chains.len());
    let r = |x: usize| BigRational::new(BigInt::from(x), total.clone());
    let co = coefficients(q, n, k, s);
    let e = |x: &BigInt| BigRational::new(x.clone(), co.denom.clone());
    Ok(RatioReport {
        chains: chains.len(),
        counts,
        uniform_in_e: uniform,
        ratios: [r(counts.0), r(counts.1), r(counts.2)],
        expected: [e(&co.a), e(&co.b), e(&co.c)],
    })
}

/// For each feasible `δ`, whether some chain achieves
/// `d_s(U^⊥s, V^⊥s) ≥ δ_q`, `d_s(V, U) ≥ δ_f`, `d_s(W, U) ≥ δ_t`.
pub fn existence_check(q: u32, n: usize, k: usize, s: usize, limit: EnumLimit) -> Result<Vec<(Deltas, bool)>> {
    let f = Field::with_order(q)?;
    let chains = enumerate_chains(&f, n, k, s, limit)?;
    let mut achieved = Vec::new();
    for (u, v, w) in &chains {
        let ud = symplectic_dual(&f, u)?;
        let vd = symplectic_dual(&f, v)?;
        achieved.push(Deltas {
            q: coset_distance(&f, &ud, &vd, limit)?,
            f: if k > 0 { coset_distance(&f, v, u, limit)? } else { n + 1 },
            t: coset_distance(&f, w, u, limit)?,
        });
    }
    let mut out = Vec::new();
    for dq in 1..=n + 1 {
        for df in 1..=n + 1 {
            for dt in 1..=df {
                let d = Deltas { q: dq, f: df, t: dt };
                if gv_feasible(&GvParams { q, n, k, s, delta: d })? {
                    let ok = achieved.iter().any(|a| a.q >= d.q && a.f >= d.f && a.t >= d.t);
                    out.push((d, ok));
                }
            }
        }
    }
    Ok(out)
}

/// Number of nonzero vectors with `swt < δ`, by enumeration.
pub fn count_low_weight(q: u32, n: usize, delta: usize, limit: EnumLimit) -> Result<u64> {
    let f = Field::with_order(q)?;
    let full = Subspace::full(Layout::Symplectic, 2 * n);
    limit.check(full.size_log2(&f))?;
    let mut c = 0u64;
    full.for_each_vector(&f, |v, _| {
        let w = swt(v);
        if w >= 1 && w < delta {
            c += 1;
        }
    });
    Ok(c)
}

/// `-x log_q x - (1-x) log_q (1-x)` on the open unit interval.
pub fn h_q(q: u32, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::DomainError(x));
    }
    let lq = libm::log(q as f64);
    Ok((-x * libm::log(x) - (1.0 - x) * libm::log(1.0 - x)) / lq)
}

/// `h_q(x) + x log_q(q² - 1)` on `[0, 1)`, with value 0 at 0.
pub fn gv_exponent(q: u32, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let qf = q as f64;
    Ok(h_q(q, x)? + x * libm::log(qf * qf - 1.0) / libm::log(qf))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticParams {
    pub q: u32,
    pub r: f64,
    pub s: f64,
    pub eps_q: f64,
    pub eps_f: f64,
    pub eps_t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticReport {
    /// `(left, right)` for the secrecy, advance and forbidden conditions.
    pub conditions: [(f64, f64); 3],
    pub feasible: bool,
}

pub fn asymptotic_feasible(a: &AsymptoticParams) -> Result<AsymptoticReport> {
    let unit = |x: f64| (0.0..=1.0).contains(&x);
    let half = |x: f64| (0.0..0.5).contains(&x);
    if a.q < 2 || !unit(a.r) || !unit(a.s) || !half(a.eps_q) || !half(a.eps_f) || !half(a.eps_t) || a.eps_t > a.eps_f {
        return Err(Error::InvalidParameters(format!("asymptotic parameters out of range: {a:?}")));
    }
    let conditions = [
        (gv_exponent(a.q, a.eps_q)?, 1.0 - a.r - a.s),
        (gv_exponent(a.q, a.eps_t)?, 1.0),
        (gv_exponent(a.q, a.eps_f)?, 1.0 + a.s),
    ];
    Ok(AsymptoticReport { conditions, feasible: conditions.iter().all(|(l, r)| l < r) })
}

/// Root of `h_q(ε) + ε log_q(q² - 1) = 1` in `(0, 1/2)`, by bisection.
pub fn epsilon_root(q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::InvalidParameters(format!("q = {q}")));
    }
    let g = |x: f64| gv_exponent(q, x).map(|v| v - 1.0);
    let (mut lo, mut hi) = (1e-300_f64, 0.5_f64);
    if g(hi)? <= 0.0 {
        return Err(Error::InvalidParameters(format!("no root below 1/2 for q = {q}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Decimal approximation of an exact rational.
pub fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
