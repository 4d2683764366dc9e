//! The encoding built on a code triple: the secret map `f`, coset labels,
//! advance representatives supported off the advance set, and the
//! access-structure classifiers.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::linalg::{axpy, solve, MatrixFq, Subspace};
use crate::shares::ShareSet;
use crate::symplectic::{coset_distance, form_matrix, CodeTriple};
use crate::EnumLimit;

#[derive(Clone, Debug)]
pub struct Scheme {
    pub triple: CodeTriple,
    /// Shares handed out before the secret is known.
    pub advance: ShareSet,
    /// Rows `g_1..g_k`; `m ↦ Σ m_i g_i + C_R^⊥s` is the secret map `f`.
    pub secret_transversal: MatrixFq,
    /// Rows `h_1..h_s`, a basis of `C_R^⊥s / C_max`.
    pub randomness_transversal: MatrixFq,
    /// Row `(d | -c)` for each basis row `(c | d)` of `C_max`.
    pub h: MatrixFq,
}

/// A coset representative `Σ m_i g_i + Σ r_j h_j` together with `(m, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingLabel {
    pub vector: Vec<Fq>,
    pub secret: Vec<Fq>,
    pub randomness: Vec<Fq>,
}

fn check_subset(n: usize, set: ShareSet) -> Result<()> {
    match set.max_index() {
        Some(i) if i >= n => Err(Error::IndexOutOfRange { index: i + 1, n }),
        _ => Ok(()),
    }
}

pub fn build_scheme(t: &CodeTriple, advance: ShareSet) -> Result<Scheme> {
    check_subset(t.n, advance)?;
    let f = &t.field;
    let secret_transversal = t.c_r_dual.complement_in(f, &t.c_s_dual)?;
    let randomness_transversal = t.c_max.complement_in(f, &t.c_r_dual)?;
    debug_assert_eq!(secret_transversal.rows(), t.k);
    debug_assert_eq!(randomness_transversal.rows(), t.s);
    Ok(Scheme {
        triple: t.clone(),
        advance,
        secret_transversal,
        randomness_transversal,
        h: form_matrix(f, t.c_max.basis()),
    })
}

impl Scheme {
    pub fn n(&self) -> usize {
        self.triple.n
    }

    pub fn k(&self) -> usize {
        self.triple.k
    }

    pub fn s(&self) -> usize {
        self.triple.s
    }

    pub fn encode_label(&self, m: &[Fq], r: &[Fq]) -> Result<EncodingLabel> {
        if m.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), actual: m.len() });
        }
        if r.len() != self.s() {
            return Err(Error::LengthMismatch { expected: self.s(), actual: r.len() });
        }
        let f = &self.triple.field;
        let mut v = vec![Fq::ZERO; 2 * self.n()];
        for (&c, g) in m.iter().zip(self.secret_transversal.iter_rows()) {
            axpy(f, &mut v, c, g);
        }
        for (&c, h) in r.iter().zip(self.randomness_transversal.iter_rows()) {
            axpy(f, &mut v, c, h);
        }
        Ok(EncodingLabel { vector: v, secret: m.to_vec(), randomness: r.to_vec() })
    }

    /// Solves `(label - z) Hᵀ = 0` for `z` supported on the complement of
    /// the advance set. Free variables are set to zero, so the result is
    /// canonical only up to `C_max ∩ F_q^B̄`.
    pub fn advance_rep(&self, label: &[Fq]) -> Result<Vec<Fq>> {
        let t = &self.triple;
        let f = &t.field;
        if label.len() != 2 * t.n {
            return Err(Error::LengthMismatch { expected: 2 * t.n, actual: label.len() });
        }
        let coords = t.c_max.layout().coordinates(2 * t.n, self.advance.complement(t.n));
        let a = self.h.select_columns(&coords);
        let rhs = self.h.mul_vec(f, label);
        let sol = solve(f, &a, &rhs).map_err(|e| match e {
            Error::NoSolution => Error::NoAdvanceRepresentative,
            e => e,
        })?;
        let mut z = vec![Fq::ZERO; 2 * t.n];
        for (&c, &x) in coords.iter().zip(&sol.particular) {
            z[c] = x;
        }
        debug_assert!(t.c_max.contains(f, &crate::linalg::sub_vec(f, label, &z)));
        Ok(z)
    }

    /// Whether the label's `C_max`-coset equals the coset of `z`.
    pub fn same_coset(&self, u: &[Fq], v: &[Fq]) -> bool {
        let f = &self.triple.field;
        self.triple.c_max.contains(f, &crate::linalg::sub_vec(f, u, v))
    }

    /// Tries the advance solver on every coset of `C_S^⊥s / C_max`.
    pub fn all_cosets_solvable(&self, limit: EnumLimit) -> Result<bool> {
        let t = &self.triple;
        let f = &t.field;
        let reps = t.c_max.complement_in(f, &t.c_s_dual)?;
        let span = Subspace::span(f, t.c_max.layout(), &reps);
        limit.check(span.size_log2(f))?;
        let mut ok = true;
        span.for_each_vector(f, |v, _| {
            if ok && self.advance_rep(v).is_err() {
                ok = false;
            }
        });
        Ok(ok)
    }
}

/// `ℓ(A) = dim (C_R ∩ F_q^A) / (C_S ∩ F_q^A)`, the number of secret
/// symbols the shares in `A` learn.
pub fn leakage_dim(t: &CodeTriple, a: ShareSet) -> Result<usize> {
    check_subset(t.n, a)?;
    let f = &t.field;
    Ok(t.c_r.restrict_support(f, a)?.dim() - t.c_s.restrict_support(f, a)?.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Access {
    Forbidden,
    Intermediate(usize),
    Qualified,
}

impl Access {
    pub fn name(self) -> &'static str {
        match self {
            Access::Forbidden => "forbidden",
            Access::Intermediate(_) => "intermediate",
            Access::Qualified => "qualified",
        }
    }
}

pub fn classify(t: &CodeTriple, a: ShareSet) -> Result<Access> {
    let l = leakage_dim(t, a)?;
    Ok(if l == 0 {
        Access::Forbidden
    } else if l == t.k {
        Access::Qualified
    } else {
        Access::Intermediate(l)
    })
}

/// `dim (C_S^⊥s ∩ F_q^B̄) / (C_max ∩ F_q^B̄) = k + s`.
pub fn is_advance_shareable(t: &CodeTriple, b: ShareSet) -> Result<bool> {
    check_subset(t.n, b)?;
    let f = &t.field;
    let rest = b.complement(t.n);
    let top = t.c_s_dual.restrict_support(f, rest)?.dim();
    let bottom = t.c_max.restrict_support(f, rest)?.dim();
    Ok(top - bottom == t.k + t.s)
}

/// `|B| ≤ d_s(C_max, C_S) - 1`, a sufficient condition for advance sharing.
pub fn advance_sufficient(t: &CodeTriple, b: ShareSet, limit: EnumLimit) -> Result<bool> {
    check_subset(t.n, b)?;
    let d = coset_distance(&t.field, &t.c_max, &t.c_s, limit)?;
    Ok(b.len() < d)
}
