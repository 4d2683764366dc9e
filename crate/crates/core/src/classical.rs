//! Classical linear secret sharing `C_2 ⊆ C_1 ⊆ F_q^n`, advance sharing by
//! direct search, and the experiment in which the dealer forgets the shares
//! handed out in advance.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::info::{JointDistribution, LogSum};
use crate::linalg::{axpy, Layout, MatrixFq, Subspace};
use crate::rs::{default_points, rs_code};
use crate::shares::ShareSet;
use crate::EnumLimit;

#[derive(Clone, Debug)]
pub struct ClassicalScheme {
    pub field: Field,
    pub c1: Subspace,
    pub c2: Subspace,
    /// Rows `g_1..g_k`; `m ↦ Σ m_i g_i + C_2` is the secret map.
    pub transversal: MatrixFq,
}

impl ClassicalScheme {
    pub fn new(field: &Field, c1: Subspace, c2: Subspace) -> Result<Self> {
        if c1.ambient_dim() != c2.ambient_dim() {
            return Err(Error::AmbientMismatch(c1.ambient_dim(), c2.ambient_dim()));
        }
        if !c2.is_subspace_of(field, &c1) {
            return Err(Error::NotASubspace("C_2 is not contained in C_1"));
        }
        if c1.dim() == c2.dim() {
            return Err(Error::InvalidParameters("C_1 = C_2 leaves no room for a secret".into()));
        }
        let transversal = c2.complement_in(field, &c1)?;
        Ok(ClassicalScheme { field: field.clone(), c1, c2, transversal })
    }

    pub fn n(&self) -> usize {
        self.c1.ambient_dim()
    }

    pub fn k(&self) -> usize {
        self.transversal.rows()
    }

    /// Length of the randomness vector, `dim C_2`.
    pub fn r_len(&self) -> usize {
        self.c2.dim()
    }

    /// `Σ m_i g_i + Σ r_j c_j` with `c_j` the basis of `C_2`; uniform `r`
    /// gives a uniform element of the coset.
    pub fn encode(&self, m: &[Fq], r: &[Fq]) -> Result<Vec<Fq>> {
        if m.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), actual: m.len() });
        }
        if r.len() != self.r_len() {
            return Err(Error::LengthMismatch { expected: self.r_len(), actual: r.len() });
        }
        let f = &self.field;
        let mut c = vec![Fq::ZERO; self.n()];
        for (&x, g) in m.iter().zip(self.transversal.iter_rows()) {
            axpy(f, &mut c, x, g);
        }
        for (&x, g) in r.iter().zip(self.c2.basis().iter_rows()) {
            axpy(f, &mut c, x, g);
        }
        Ok(c)
    }

    fn check_subset(&self, a: ShareSet) -> Result<()> {
        match a.max_index() {
            Some(i) if i >= self.n() => Err(Error::IndexOutOfRange { index: i + 1, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// `P_A(C_1) = P_A(C_2)`.
    pub fn forbidden(&self, a: ShareSet) -> Result<bool> {
        self.check_subset(a)?;
        Ok(self.c1.project(&self.field, a)? == self.c2.project(&self.field, a)?)
    }

    /// For every secret and every `y ∈ P_A(C_1)`, some share vector encoding
    /// that secret restricts to `y` on `A`. Checked by enumerating `C_1`.
    pub fn advance_shareable(&self, a: ShareSet, limit: EnumLimit) -> Result<bool> {
        self.check_subset(a)?;
        let f = &self.field;
        limit.check(self.c1.size_log2(f))?;
        let idx = a.indices();
        let target = self.c1.project(f, a)?;
        let target_size = (f.order() as u64).pow(target.dim() as u32);
        let mut seen: BTreeMap<Vec<Fq>, BTreeSet<Vec<Fq>>> = BTreeMap::new();
        let mut acc = vec![Fq::ZERO; self.n()];
        for_each_tuple(f, self.k(), |m| {
            let coset = self.encode(m, &vec![Fq::ZERO; self.r_len()]).expect("lengths");
            let set = seen.entry(m.to_vec()).or_default();
            self.c2.for_each_vector(f, |c, _| {
                for (i, x) in acc.iter_mut().enumerate() {
                    *x = f.add(coset[i], c[i]);
                }
                set.insert(idx.iter().map(|&i| acc[i]).collect());
            });
        });
        Ok(seen.values().all(|s| s.len() as u64 == target_size))
    }

    /// Joint distribution of `(S, X_1, .., X_n)` with uniform secret and
    /// uniform randomness. The secret is recorded as its integer index.
    pub fn distribution(&self, limit: EnumLimit) -> Result<JointDistribution> {
        let f = &self.field;
        limit.check(self.c1.size_log2(f))?;
        let mut out = Vec::new();
        for_each_tuple(f, self.k(), |m| {
            let coset = self.encode(m, &vec![Fq::ZERO; self.r_len()]).expect("lengths");
            self.c2.for_each_vector(f, |c, _| {
                let mut row = vec![tuple_index(f, m)];
                row.extend(coset.iter().zip(c).map(|(&x, &y)| f.add(x, y).0));
                out.push(row);
            });
        });
        JointDistribution::uniform(self.n() + 1, out)
    }
}

pub(crate) fn tuple_index(f: &Field, m: &[Fq]) -> u32 {
    m.iter().rev().fold(0, |acc, x| acc * f.order() + x.0)
}

/// Calls `g` on every vector of `F_q^len` in integer order.
pub(crate) fn for_each_tuple(f: &Field, len: usize, mut g: impl FnMut(&[Fq])) {
    let full = Subspace::full(Layout::Plain, len);
    full.for_each_vector(f, |v, _| g(v));
}

/// The one-time pad: two one-bit shares whose sum is the secret.
pub fn one_time_pad() -> ClassicalScheme {
    let f = Field::with_order(2).unwrap();
    let c1 = Subspace::full(Layout::Plain, 2);
    let c2 = Subspace::from_vectors(&f, Layout::Plain, 2, &[[Fq(1), Fq(1)]]).unwrap();
    ClassicalScheme::new(&f, c1, c2).unwrap()
}

/// Ramp Shamir with `C_1 = RS(n, (n+k+s)/2)`, `C_2 = RS(n, (n+s-k)/2)` on the
/// first `n` field elements.
pub fn ramp_shamir(q: u32, n: usize, k: usize, s: usize) -> Result<ClassicalScheme> {
    let f = Field::with_order(q)?;
    if k == 0 || k + s > n || n > q as usize || (n + k + s) % 2 != 0 {
        return Err(Error::InvalidParameters(format!("no ramp Shamir for q = {q}, (n, k, s) = ({n}, {k}, {s})")));
    }
    let pts: Vec<Fq> = default_points(&f).into_iter().take(n).collect();
    let c1 = rs_code(&f, (n + k + s) / 2, &pts)?;
    let c2 = rs_code(&f, (n + s - k) / 2, &pts)?;
    ClassicalScheme::new(&f, c1, c2)
}

/// Outcome of the dealer-forgets experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct DealerForgetsReport {
    pub pairs: usize,
    /// Pairs `(D, E)` where `I(X_{D∪E}; S) = I(X_E; S)` holds exactly.
    pub exact_equalities: usize,
    pub max_deviation: f64,
}

impl DealerForgetsReport {
    pub fn holds(&self) -> bool {
        self.exact_equalities == self.pairs
    }
}

/// `P'(s, x) = P(s) P(x_B) P(x_B̄ | s)`: shares in `B` are drawn without
/// looking at the secret and the rest are drawn fresh given the secret.
pub fn dealer_forgets(d: &JointDistribution, b: &[usize]) -> Result<JointDistribution> {
    let n = d.arity() - 1;
    let rest: Vec<usize> = (1..=n).filter(|i| !b.contains(i)).collect();
    let pb = d.marginal_counts(b)?;
    let mut s_rest = vec![0];
    s_rest.extend(&rest);
    let psr = d.marginal_counts(&s_rest)?;
    let mut out = Vec::new();
    for (xb, p_b) in &pb {
        for (sr, p_sr) in &psr {
            let mut x = vec![0u32; n + 1];
            x[0] = sr[0];
            for (&i, &v) in b.iter().zip(xb) {
                x[i] = v;
            }
            for (&i, &v) in rest.iter().zip(&sr[1..]) {
                x[i] = v;
            }
            // P(s) P(x_B) P(x_B̄ | s) = P(x_B) P(s, x_B̄)
            out.push((x, p_b * p_sr));
        }
    }
    JointDistribution::from_counts(n + 1, out)
}

/// Checks `I(X_{D∪E}; S) = I(X_E; S)` for all `D ⊆ B`, `E ⊆ B̄` under the
/// dealer-forgets distribution. Requires `I(S; X_B) = 0`.
pub fn dealer_forgets_experiment(sch: &ClassicalScheme, b: ShareSet, limit: EnumLimit) -> Result<DealerForgetsReport> {
    sch.check_subset(b)?;
    let n = sch.n();
    let d = sch.distribution(limit)?;
    let bvars: Vec<usize> = b.indices().into_iter().map(|i| i + 1).collect();
    if !d.mutual_information_exact(&[0], &bvars)?.is_zero() {
        return Err(Error::NotAdvanceShareable);
    }
    let dp = dealer_forgets(&d, &bvars)?;
    let mut report = DealerForgetsReport { pairs: 0, exact_equalities: 0, max_deviation: 0.0 };
    let one_based = |s: ShareSet| -> Vec<usize> { s.indices().into_iter().map(|i| i + 1).collect() };
    for dset in b.subsets() {
        for eset in b.complement(n).subsets() {
            let de = one_based(dset.union(eset));
            let e = one_based(eset);
            let lhs = dp.mutual_information_exact(&de, &[0])?;
            let rhs = dp.mutual_information_exact(&e, &[0])?;
            report.pairs += 1;
            let diff: LogSum = lhs - rhs;
            if diff.is_zero() {
                report.exact_equalities += 1;
            }
            report.max_deviation = report.max_deviation.max(libm::fabs(diff.to_f64(2.0)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_time_pad_information() {
        let s = one_time_pad();
        assert_eq!(s.transversal.row(0), &[Fq(0), Fq(1)][..]);
        let d = s.distribution(EnumLimit::default()).unwrap();
        assert!(d.mutual_information_exact(&[1], &[0]).unwrap().is_zero());
        assert!((d.mutual_information(&[1, 2], &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(s.advance_shareable(ShareSet::from_one_based(&[1]), EnumLimit::default()).unwrap());
        assert!(!s.advance_shareable(ShareSet::full(2), EnumLimit::default()).unwrap());
        assert!(s.advance_shareable(ShareSet::EMPTY, EnumLimit::default()).unwrap());
    }

    #[test]
    fn one_time_pad_dealer_forgets() {
        let s = one_time_pad();
        let r = dealer_forgets_experiment(&s, ShareSet::from_one_based(&[1]), EnumLimit::default()).unwrap();
        assert_eq!(r.pairs, 4);
        assert!(r.holds());
        assert_eq!(
            dealer_forgets_experiment(&s, ShareSet::full(2), EnumLimit::default()),
            Err(Error::NotAdvanceShareable)
        );
    }

    #[test]
    fn shamir_forbidden_threshold() {
        let s = ramp_shamir(5, 5, 2, 1).unwrap();
        assert_eq!(s.k(), 2);
        for a in ShareSet::all(5) {
            assert_eq!(s.forbidden(a).unwrap(), a.len() <= 2, "{a}");
        }
    }
}
