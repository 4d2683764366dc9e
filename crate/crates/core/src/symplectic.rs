//! The symplectic form on `F_q^{2n}`, symplectic duals, weights, Witt-style
//! completion to a self-dual code, and validated code triples
//! `C_S ⊆ C_R ⊆ C_max = C_max^⊥s`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result, Violation};
use crate::field::{Field, Fq};
use crate::linalg::{axpy, dot, kernel, Layout, MatrixFq, Subspace};
use crate::EnumLimit;

/// `<(a|b), (c|d)>_s = <a, d> - <c, b>`
pub fn symplectic_ip(field: &Field, u: &[Fq], v: &[Fq]) -> Result<Fq> {
    if u.len() != v.len() {
        return Err(Error::AmbientMismatch(u.len(), v.len()));
    }
    if u.len() % 2 != 0 {
        return Err(Error::OddLengthVector(u.len()));
    }
    let n = u.len() / 2;
    let (a, b) = u.split_at(n);
    let (c, d) = v.split_at(n);
    Ok(field.sub(dot(field, a, d), dot(field, c, b)))
}

/// Row `(d | -c)` for each row `(c | d)`: the functional `<·, (c|d)>_s`.
pub fn form_matrix(field: &Field, rows: &MatrixFq) -> MatrixFq {
    let n2 = rows.cols();
    let n = n2 / 2;
    let mut h = MatrixFq::zeros(rows.rows(), n2);
    for (r, row) in rows.iter_rows().enumerate() {
        for i in 0..n {
            h.set(r, i, row[n + i]);
            h.set(r, n + i, field.neg(row[i]));
        }
    }
    h
}

pub fn symplectic_dual(field: &Field, c: &Subspace) -> Result<Subspace> {
    if c.ambient_dim() % 2 != 0 {
        return Err(Error::OddLengthVector(c.ambient_dim()));
    }
    if c.is_zero() {
        return Ok(Subspace::full(Layout::Symplectic, c.ambient_dim()));
    }
    let k = kernel(field, &form_matrix(field, c.basis()));
    Ok(Subspace::span(field, Layout::Symplectic, &k))
}

/// Number of shares carrying a nonzero pair `(a_i, b_i)` (or a nonzero
/// coordinate, for plain vectors).
pub fn weight(layout: Layout, v: &[Fq]) -> usize {
    match layout {
        Layout::Plain => v.iter().filter(|x| !x.is_zero()).count(),
        Layout::Symplectic => {
            let n = v.len() / 2;
            (0..n).filter(|&i| !v[i].is_zero() || !v[n + i].is_zero()).count()
        }
    }
}

pub fn swt(v: &[Fq]) -> usize {
    weight(Layout::Symplectic, v)
}

/// `d_s(V1, V2) = min { swt(v) : v ∈ V1 \ V2 }` by exhaustive enumeration.
pub fn coset_distance(field: &Field, v1: &Subspace, v2: &Subspace, limit: EnumLimit) -> Result<usize> {
    if v1.ambient_dim() != v2.ambient_dim() {
        return Err(Error::AmbientMismatch(v1.ambient_dim(), v2.ambient_dim()));
    }
    if !v2.is_subspace_of(field, v1) {
        return Err(Error::NotASubspace("coset distance requires V2 ⊆ V1"));
    }
    if v1.dim() == v2.dim() {
        return Err(Error::NotASubspace("coset distance requires V2 ≠ V1"));
    }
    limit.check(v1.size_log2(field))?;
    let layout = v1.layout();
    let mut best = usize::MAX;
    v1.for_each_vector(field, |v, _| {
        let w = weight(layout, v);
        if w < best && !v2.contains(field, v) {
            best = w;
        }
    });
    Ok(best)
}

fn is_css_shaped(v: &[Fq]) -> bool {
    let n = v.len() / 2;
    v[..n].iter().all(|x| x.is_zero()) || v[n..].iter().all(|x| x.is_zero())
}

/// Splits a CSS code `C_X × {0} ⊕ {0} × C_Z` into `(C_X, C_Z)`.
pub fn css_parts(field: &Field, c: &Subspace) -> Option<(Subspace, Subspace)> {
    let n = c.ambient_dim() / 2;
    if !c.basis().iter_rows().all(is_css_shaped) {
        return None;
    }
    let mut x = MatrixFq::empty(n);
    let mut z = MatrixFq::empty(n);
    for row in c.basis().iter_rows() {
        if row[..n].iter().any(|v| !v.is_zero()) {
            x.push_row(&row[..n]).ok()?;
        } else {
            z.push_row(&row[n..]).ok()?;
        }
    }
    Some((Subspace::span(field, Layout::Plain, &x), Subspace::span(field, Layout::Plain, &z)))
}

/// Symplectic code `{(a|b) : a ∈ cx, b ∈ cz}`.
pub fn css_code(field: &Field, cx: &Subspace, cz: &Subspace) -> Result<Subspace> {
    if cx.ambient_dim() != cz.ambient_dim() {
        return Err(Error::AmbientMismatch(cx.ambient_dim(), cz.ambient_dim()));
    }
    let n = cx.ambient_dim();
    let mut g = MatrixFq::empty(2 * n);
    for r in cx.basis().iter_rows() {
        let mut row = r.to_vec();
        row.extend(core::iter::repeat(Fq::ZERO).take(n));
        g.push_row(&row)?;
    }
    for r in cz.basis().iter_rows() {
        let mut row = vec![Fq::ZERO; n];
        row.extend_from_slice(r);
        g.push_row(&row)?;
    }
    Ok(Subspace::span(field, Layout::Symplectic, &g))
}

/// Extends a self-orthogonal `C` to a self-dual code.
///
/// Each step adjoins one vector of `C^⊥s \ C`; every vector is isotropic, so
/// the span stays self-orthogonal. Candidates are the rows of the canonical
/// complement of `C` in `C^⊥s`; `hints` are tried first, and with
/// `prefer_css` candidates of shape `(a|0)` / `(0|b)` win.
pub fn witt_complete_with(field: &Field, c: &Subspace, prefer_css: bool, hints: &[Vec<Fq>]) -> Result<Subspace> {
    let n2 = c.ambient_dim();
    if n2 % 2 != 0 {
        return Err(Error::OddLengthVector(n2));
    }
    let n = n2 / 2;
    let mut cur = c.clone();
    let dual = symplectic_dual(field, &cur)?;
    if !cur.is_subspace_of(field, &dual) {
        return Err(Error::NotSelfOrthogonal);
    }
    while cur.dim() < n {
        let dual = symplectic_dual(field, &cur)?;
        let hint = hints.iter().find(|h| h.len() == n2 && dual.contains(field, h) && !cur.contains(field, h)).cloned();
        let pick = match hint {
            Some(h) => h,
            None => {
                let comp = cur.complement_in(field, &dual)?;
                let first_css = prefer_css.then(|| comp.iter_rows().find(|r| is_css_shaped(r))).flatten();
                first_css.unwrap_or_else(|| comp.row(0)).to_vec()
            }
        };
        let mut gens = cur.basis().clone();
        gens.push_row(&pick)?;
        cur = Subspace::span(field, Layout::Symplectic, &gens);
    }
    Ok(cur)
}

pub fn witt_complete(field: &Field, c: &Subspace, prefer_css: bool) -> Result<Subspace> {
    witt_complete_with(field, c, prefer_css, &[])
}

/// `C_S ⊆ C_R ⊆ C_max = C_max^⊥s ⊆ C_R^⊥s ⊆ C_S^⊥s` with
/// `dim C_S = n-k-s`, `dim C_R = n-s`, `dim C_max = n`.
#[derive(Clone, Debug)]
pub struct CodeTriple {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub c_s: Subspace,
    pub c_r: Subspace,
    pub c_max: Subspace,
    pub c_r_dual: Subspace,
    pub c_s_dual: Subspace,
}

pub fn validate_triple(
    field: &Field,
    c_s: Subspace,
    c_r: Subspace,
    c_max: Subspace,
    n: usize,
    k: usize,
    s: usize,
) -> Result<CodeTriple> {
    let mut bad = Vec::new();
    if k == 0 {
        bad.push(Violation::BadParameters("secret length k must be at least 1".into()));
    }
    if k + s > n {
        bad.push(Violation::BadParameters(format!("n - k - s = {n} - {k} - {s} is negative")));
    }
    for (name, sp) in [("C_S", &c_s), ("C_R", &c_r), ("C_MAX", &c_max)] {
        if sp.ambient_dim() != 2 * n {
            bad.push(Violation::BadParameters(format!(
                "{name} lives in F_q^{}, expected F_q^{}",
                sp.ambient_dim(),
                2 * n
            )));
        }
    }
    if !bad.is_empty() {
        return Err(Error::InvalidTriple(bad));
    }
    let want = [("C_S", &c_s, n - k - s), ("C_R", &c_r, n - s), ("C_MAX", &c_max, n)];
    for (space, sp, expected) in want {
        if sp.dim() != expected {
            bad.push(Violation::DimensionMismatch { space, expected, actual: sp.dim() });
        }
    }
    let c_r_dual = symplectic_dual(field, &c_r)?;
    let c_s_dual = symplectic_dual(field, &c_s)?;
    let c_max_dual = symplectic_dual(field, &c_max)?;
    let chain = [
        ("C_S", &c_s, "C_R", &c_r),
        ("C_R", &c_r, "C_MAX", &c_max),
        ("C_MAX", &c_max, "C_R^⊥s", &c_r_dual),
        ("C_R^⊥s", &c_r_dual, "C_S^⊥s", &c_s_dual),
    ];
    for (inner, a, outer, b) in chain {
        if !a.is_subspace_of(field, b) {
            bad.push(Violation::InclusionViolated { inner, outer });
        }
    }
    if c_max_dual != c_max {
        bad.push(Violation::NotSelfDual);
    }
    if !bad.is_empty() {
        return Err(Error::InvalidTriple(bad));
    }
    Ok(CodeTriple { field: field.clone(), n, k, s, c_s, c_r, c_max, c_r_dual, c_s_dual })
}

impl CodeTriple {
    /// Encoding uses no randomness exactly when `C_R = C_max = C_R^⊥s`.
    pub fn is_deterministic(&self) -> bool {
        self.s == 0 && self.c_r == self.c_max
    }

    pub fn is_css(&self) -> bool {
        css_parts(&self.field, &self.c_max).is_some()
    }
}

pub fn is_deterministic(t: &CodeTriple) -> bool {
    t.is_deterministic()
}

fn random_vector_in<R: RngCore>(field: &Field, sp: &Subspace, rng: &mut R) -> Vec<Fq> {
    let q = field.order();
    let mut v = vec![Fq::ZERO; sp.ambient_dim()];
    for row in sp.basis().iter_rows() {
        let c = Fq(rng.next_u32() % q);
        axpy(field, &mut v, c, row);
    }
    v
}

/// Random subspace of `outer` containing `inner`, of dimension `dim`.
pub fn random_subspace_between<R: RngCore>(
    field: &Field,
    inner: &Subspace,
    outer: &Subspace,
    dim: usize,
    rng: &mut R,
) -> Result<Subspace> {
    if dim < inner.dim() || dim > outer.dim() || !inner.is_subspace_of(field, outer) {
        return Err(Error::InvalidParameters(format!(
            "no subspace of dim {dim} between dims {} and {}",
            inner.dim(),
            outer.dim()
        )));
    }
    let mut cur = inner.clone();
    while cur.dim() < dim {
        let v = random_vector_in(field, outer, rng);
        if !cur.contains(field, &v) {
            let mut g = cur.basis().clone();
            g.push_row(&v)?;
            cur = Subspace::span(field, cur.layout(), &g);
        }
    }
    Ok(cur)
}

/// A random valid triple: random Lagrangian `C_max`, then random nested
/// `C_R` and `C_S` inside it.
pub fn random_triple<R: RngCore>(field: &Field, n: usize, k: usize, s: usize, rng: &mut R) -> Result<CodeTriple> {
    if k == 0 || k + s > n {
        return Err(Error::InvalidParameters(format!("bad (n, k, s) = ({n}, {k}, {s})")));
    }
    let mut c_max = Subspace::zero(Layout::Symplectic, 2 * n);
    while c_max.dim() < n {
        let dual = symplectic_dual(field, &c_max)?;
        let v = random_vector_in(field, &dual, rng);
        if !c_max.contains(field, &v) {
            let mut g = c_max.basis().clone();
            g.push_row(&v)?;
            c_max = Subspace::span(field, Layout::Symplectic, &g);
        }
    }
    let zero = Subspace::zero(Layout::Symplectic, 2 * n);
    let c_r = random_subspace_between(field, &zero, &c_max, n - s, rng)?;
    let c_s = random_subspace_between(field, &zero, &c_r, n - k - s, rng)?;
    validate_triple(field, c_s, c_r, c_max, n, k, s)
}
