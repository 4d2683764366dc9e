//! Reed–Solomon codes with `n = q` and the scheme family built from them,
//! with closed-form thresholds and the comparison against ramp Shamir.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::linalg::{Layout, MatrixFq, Subspace};
use crate::symplectic::{css_code, validate_triple, CodeTriple};

/// Evaluations of all polynomials of degree `< k` at `points`.
pub fn rs_code(field: &Field, k: usize, points: &[Fq]) -> Result<Subspace> {
    let n = points.len();
    if k > n {
        return Err(Error::InvalidParameters(format!("RS dimension {k} exceeds length {n}")));
    }
    for (i, a) in points.iter().enumerate() {
        if !field.contains(*a) {
            return Err(Error::InvalidElement { value: a.0, order: field.order() });
        }
        if points[..i].contains(a) {
            return Err(Error::DuplicatePoints);
        }
    }
    let mut g = MatrixFq::zeros(k, n);
    for j in 0..k {
        for (i, &a) in points.iter().enumerate() {
            g.set(j, i, field.pow(a, j as u64));
        }
    }
    Ok(Subspace::span(field, Layout::Plain, &g))
}

/// All of `F_q` in integer order.
pub fn default_points(field: &Field) -> Vec<Fq> {
    field.elements().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsParams {
    pub q: u32,
    pub k: usize,
    pub s: usize,
}

impl RsParams {
    pub fn n(&self) -> usize {
        self.q as usize
    }

    /// `k ≥ 1` and `n - k - s ≥ 0`, and unless `relax_parity`, `k` and
    /// `n - s` even.
    pub fn check(&self, relax_parity: bool) -> Result<()> {
        let n = self.n();
        if self.k == 0 || self.k + self.s > n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k and k + s <= n, got n = {n}, k = {}, s = {}",
                self.k, self.s
            )));
        }
        if !relax_parity && (self.k % 2 != 0 || (n - self.s) % 2 != 0) {
            return Err(Error::InvalidParameters(format!(
                "k = {} and n - s = {} must both be even",
                self.k,
                n - self.s
            )));
        }
        Ok(())
    }
}

/// `C_S = RS((n-k-s)/2)²`, `C_R = RS((n-s)/2)²`,
/// `C_max = RS(⌊n/2⌋) × RS(⌈n/2⌉)`.
pub fn build_rs_scheme(params: &RsParams, relax_parity: bool) -> Result<CodeTriple> {
    params.check(relax_parity)?;
    let f = Field::with_order(params.q)?;
    let n = params.n();
    let (k, s) = (params.k, params.s);
    let pts = default_points(&f);
    let rs = |d: usize| rs_code(&f, d, &pts);
    let c_s = rs((n - k - s) / 2)?;
    let c_r = rs((n - s) / 2)?;
    let c_s = css_code(&f, &c_s, &c_s)?;
    let c_r = css_code(&f, &c_r, &c_r)?;
    let c_max = css_code(&f, &rs(n / 2)?, &rs(n.div_ceil(2))?)?;
    validate_triple(&f, c_s, c_r, c_max, n, k, s)
}

/// Largest forbidden size, smallest qualified size, largest
/// advance-shareable size.
///
/// `advance_max` is the closed-form value `⌈n/2⌉`. The weight bound on
/// `C_max` only gives `d_s(C_max, C_S) ≥ ⌊n/2⌋ + 1`, and for odd `n` no set of
/// `⌈n/2⌉` shares is advance-shareable; `advance_guaranteed` is the size up to
/// which every set is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub forbidden_max: usize,
    pub qualified_min: usize,
    pub advance_max: usize,
    pub advance_guaranteed: usize,
}

fn check_domain(n: usize, k: usize, s: usize) -> Result<()> {
    if k == 0 || k + s > n || (n + s + k) % 2 != 0 || (n + s) % 2 != 0 {
        return Err(Error::InvalidParameters(format!("thresholds undefined for (n, k, s) = ({n}, {k}, {s})")));
    }
    Ok(())
}

pub fn rs_thresholds(n: usize, k: usize, s: usize) -> Result<Thresholds> {
    check_domain(n, k, s)?;
    Ok(Thresholds {
        forbidden_max: (n + s) / 2,
        qualified_min: (n + k + s) / 2,
        advance_max: n.div_ceil(2),
        advance_guaranteed: n / 2,
    })
}

/// Ramp Shamir with the same qualified sets: forbidden and advance-shareable
/// sets coincide.
pub fn shamir_thresholds(n: usize, k: usize, s: usize) -> Result<Thresholds> {
    check_domain(n, k, s)?;
    let f = (n + s - k) / 2;
    Ok(Thresholds { forbidden_max: f, qualified_min: (n + k + s) / 2, advance_max: f, advance_guaranteed: f })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub scheme: &'static str,
    pub secret_bits: f64,
    pub share_size: f64,
    pub share_unit: &'static str,
    pub thresholds: Thresholds,
    pub symbolic: [String; 5],
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1 {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub q: u32,
    pub quantum: Table1Row,
    pub shamir: Table1Row,
    /// `advance_max` is larger for the quantum scheme, which happens exactly
    /// when `s < k`.
    pub advantage: bool,
    /// Same comparison on `advance_guaranteed`.
    pub advantage_guaranteed: bool,
}

pub fn table1(q: u32, k: usize, s: usize) -> Result<Table1> {
    let n = q as usize;
    let bits = libm::log2(q as f64);
    let qt = rs_thresholds(n, k, s)?;
    let ct = shamir_thresholds(n, k, s)?;
    let qualified = String::from("(n+k+s)/2 <= |A| <= n");
    let secret = String::from("k log2 q bits");
    let quantum = Table1Row {
        scheme: "quantum",
        secret_bits: k as f64 * bits,
        share_size: bits,
        share_unit: "qubit",
        thresholds: qt,
        symbolic: [
            secret.clone(),
            "log2 q qubits".into(),
            qualified.clone(),
            "0 <= |A| <= (n+s)/2".into(),
            "0 <= |A| <= ceil(n/2)".into(),
        ],
    };
    let shamir = Table1Row {
        scheme: "ramp-shamir",
        secret_bits: k as f64 * bits,
        share_size: bits,
        share_unit: "bit",
        thresholds: ct,
        symbolic: [
            secret,
            "log2 q bits".into(),
            qualified,
            "0 <= |A| <= (n+s-k)/2".into(),
            "0 <= |A| <= (n+s-k)/2".into(),
        ],
    };
    Ok(Table1 {
        n,
        k,
        s,
        q,
        quantum,
        shamir,
        advantage: qt.advance_max > ct.advance_max,
        advantage_guaranteed: qt.advance_guaranteed > ct.advance_guaranteed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::symplectic_dual;

    #[test]
    fn thresholds() {
        let t = |f: usize, q: usize, a: usize, g: usize| Thresholds {
            forbidden_max: f,
            qualified_min: q,
            advance_max: a,
            advance_guaranteed: g,
        };
        assert_eq!(rs_thresholds(5, 2, 1).unwrap(), t(3, 4, 3, 2));
        assert_eq!(rs_thresholds(4, 2, 2).unwrap(), t(3, 4, 2, 2));
        assert_eq!(shamir_thresholds(5, 2, 1).unwrap(), t(2, 4, 2, 2));
        assert_eq!(shamir_thresholds(4, 2, 2).unwrap(), t(2, 4, 2, 2));
        assert!(rs_thresholds(5, 0, 1).is_err());
    }

    #[test]
    fn table_flags() {
        assert!(table1(5, 2, 1).unwrap().advantage);
        assert!(!table1(5, 2, 1).unwrap().advantage_guaranteed);
        assert!(table1(7, 4, 1).unwrap().advantage_guaranteed);
        assert!(!table1(4, 2, 2).unwrap().advantage);
    }

    #[test]
    fn family_dims() {
        let t = build_rs_scheme(&RsParams { q: 5, k: 2, s: 1 }, false).unwrap();
        assert_eq!((t.c_s.dim(), t.c_r.dim(), t.c_max.dim()), (2, 4, 5));
        let t = build_rs_scheme(&RsParams { q: 4, k: 2, s: 2 }, false).unwrap();
        assert_eq!((t.c_s.dim(), t.c_r.dim(), t.c_max.dim()), (0, 2, 4));
        assert!(build_rs_scheme(&RsParams { q: 5, k: 1, s: 2 }, false).is_err());
        assert!(matches!(build_rs_scheme(&RsParams { q: 5, k: 1, s: 2 }, true), Err(Error::InvalidTriple(_))));
    }

    #[test]
    fn rs_dual_of_family() {
        let p = RsParams { q: 5, k: 2, s: 1 };
        let t = build_rs_scheme(&p, false).unwrap();
        let f = &t.field;
        let big = rs_code(f, 3, &default_points(f)).unwrap();
        assert_eq!(symplectic_dual(f, &t.c_r).unwrap(), css_code(f, &big, &big).unwrap());
    }

    #[test]
    fn duplicate_points() {
        let f = Field::with_order(5).unwrap();
        assert_eq!(rs_code(&f, 2, &[Fq(1), Fq(1)]), Err(Error::DuplicatePoints));
        assert_eq!(rs_code(&f, 0, &default_points(&f)).unwrap().dim(), 0);
        assert_eq!(rs_code(&f, 5, &default_points(&f)).unwrap().dim(), 5);
    }
}
