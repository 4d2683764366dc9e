//! Exact linear algebra over `F_q` with canonical (RREF) subspaces.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::shares::ShareSet;

/// Dense row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} [", self.rows, self.cols)?;
        for r in self.iter_rows() {
            let row: Vec<u32> = r.iter().map(|x| x.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFq { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows<R: AsRef<[Fq]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, actual: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(MatrixFq { rows: rows.len(), cols, data })
    }

    /// Convenience constructor from integer literals.
    pub fn from_u32_rows(cols: usize, rows: &[&[u32]]) -> Result<Self> {
        let rows: Vec<Vec<Fq>> = rows.iter().map(|r| r.iter().map(|&x| Fq(x)).collect()).collect();
        Self::from_rows(cols, &rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.data[r * self.cols + c] = v;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[Fq] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn iter_rows(&self) -> impl Iterator<Item = &[Fq]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn push_row(&mut self, row: &[Fq]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, actual: row.len() });
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Stacks `self` on top of `other`.
    pub fn stack(&self, other: &MatrixFq) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixFq { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// `x * self` for a row vector `x`.
    pub fn left_mul(&self, field: &Field, x: &[Fq]) -> Vec<Fq> {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![Fq::ZERO; self.cols];
        for (r, &xr) in x.iter().enumerate() {
            if !xr.is_zero() {
                axpy(field, &mut out, xr, self.row(r));
            }
        }
        out
    }

    /// `self * y` for a column vector `y`.
    pub fn mul_vec(&self, field: &Field, y: &[Fq]) -> Vec<Fq> {
        debug_assert_eq!(y.len(), self.cols);
        self.iter_rows().map(|row| dot(field, row, y)).collect()
    }

    pub fn mul(&self, field: &Field, other: &MatrixFq) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = other.left_mul(field, self.row(r));
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&row);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

/// `y += a * x`
#[inline]
pub fn axpy(field: &Field, y: &mut [Fq], a: Fq, x: &[Fq]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = field.add(*yi, field.mul(a, xi));
        }
    }
}

pub fn dot(field: &Field, x: &[Fq], y: &[Fq]) -> Fq {
    x.iter().zip(y).fold(Fq::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
}

pub fn add_vec(field: &Field, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
    x.iter().zip(y).map(|(&a, &b)| field.add(a, b)).collect()
}

pub fn sub_vec(field: &Field, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
    x.iter().zip(y).map(|(&a, &b)| field.sub(a, b)).collect()
}

pub fn scale_vec(field: &Field, a: Fq, x: &[Fq]) -> Vec<Fq> {
    x.iter().map(|&b| field.mul(a, b)).collect()
}

/// In-place Gauss–Jordan elimination. Returns the pivot columns; on return
/// the first `pivots.len()` rows hold the RREF and the rest are zero.
fn gauss_jordan(field: &Field, m: &mut MatrixFq, max_col: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..max_col.min(m.cols) {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..m.cols {
            let v = field.mul(inv, m.get(r, j));
            m.set(r, j, v);
        }
        let pivot_row: Vec<Fq> = m.row(r).to_vec();
        for i in 0..m.rows {
            if i != r {
                let f = m.get(i, c);
                if !f.is_zero() {
                    let nf = field.neg(f);
                    let cols = m.cols;
                    axpy(field, &mut m.data[i * cols..(i + 1) * cols], nf, &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row-echelon form with zero rows removed, and the rank.
pub fn rref(field: &Field, m: &MatrixFq) -> (MatrixFq, usize) {
    let mut work = m.clone();
    let pivots = gauss_jordan(field, &mut work, m.cols);
    let rank = pivots.len();
    work.data.truncate(rank * work.cols);
    work.rows = rank;
    (work, rank)
}

/// Right kernel of `a` as the rows of a matrix (canonical basis, one row per
/// free column).
pub fn kernel(field: &Field, a: &MatrixFq) -> MatrixFq {
    let (r, _) = rref(field, a);
    let pivots: Vec<usize> = r.iter_rows().map(|row| row.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = MatrixFq::zeros(free.len(), a.cols);
    for (i, &f) in free.iter().enumerate() {
        k.set(i, f, Fq::ONE);
        for (row, &pc) in pivots.iter().enumerate() {
            let v = r.get(row, f);
            if !v.is_zero() {
                k.set(i, pc, field.neg(v));
            }
        }
    }
    k
}

/// A particular solution (free variables zero) together with a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Fq>,
    pub kernel: MatrixFq,
}

/// Solves `a x = b`.
pub fn solve(field: &Field, a: &MatrixFq, b: &[Fq]) -> Result<Solution> {
    if b.len() != a.rows {
        return Err(Error::LengthMismatch { expected: a.rows, actual: b.len() });
    }
    let mut aug = MatrixFq::zeros(a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, a.cols, b[r]);
    }
    let pivots = gauss_jordan(field, &mut aug, a.cols);
    for r in pivots.len()..a.rows {
        if !aug.get(r, a.cols).is_zero() {
            return Err(Error::NoSolution);
        }
    }
    let mut x = vec![Fq::ZERO; a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols);
    }
    Ok(Solution { particular: x, kernel: kernel(field, a) })
}

/// How coordinates are grouped into shares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layout {
    /// Coordinate `i` belongs to share `i`.
    Plain,
    /// `(a_1..a_n | b_1..b_n)`: share `i` owns coordinates `i` and `n + i`.
    Symplectic,
}

impl Layout {
    pub fn shares(self, ambient: usize) -> usize {
        match self {
            Layout::Plain => ambient,
            Layout::Symplectic => ambient / 2,
        }
    }

    pub fn share_of(self, ambient: usize, coord: usize) -> usize {
        match self {
            Layout::Plain => coord,
            Layout::Symplectic => coord % (ambient / 2),
        }
    }

    /// Coordinates owned by the shares in `set`, in increasing order.
    pub fn coordinates(self, ambient: usize, set: ShareSet) -> Vec<usize> {
        (0..ambient).filter(|&c| set.contains(self.share_of(ambient, c))).collect()
    }
}

/// An `F_q`-linear subspace held by its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    layout: Layout,
    basis: MatrixFq,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(layout: Layout, ambient: usize) -> Self {
        Subspace { ambient, layout, basis: MatrixFq::empty(ambient), pivots: Vec::new() }
    }

    pub fn full(layout: Layout, ambient: usize) -> Self {
        Subspace { ambient, layout, basis: MatrixFq::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `generators`.
    pub fn span(field: &Field, layout: Layout, generators: &MatrixFq) -> Self {
        let (basis, _) = rref(field, generators);
        let pivots = basis.iter_rows().map(|row| row.iter().position(|x| !x.is_zero()).unwrap()).collect();
        Subspace { ambient: generators.cols(), layout, basis, pivots }
    }

    pub fn from_vectors<R: AsRef<[Fq]>>(field: &Field, layout: Layout, ambient: usize, vs: &[R]) -> Result<Self> {
        Ok(Self::span(field, layout, &MatrixFq::from_rows(ambient, vs)?))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    #[inline]
    pub fn layout(&self) -> Layout {
        self.layout
    }
    pub fn shares(&self) -> usize {
        self.layout.shares(self.ambient)
    }
    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Residue of `v` after eliminating the pivot columns.
    pub fn reduce(&self, field: &Field, v: &[Fq]) -> Vec<Fq> {
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter_rows().zip(&self.pivots) {
            let f = out[pc];
            if !f.is_zero() {
                axpy(field, &mut out, field.neg(f), row);
            }
        }
        out
    }

    pub fn contains(&self, field: &Field, v: &[Fq]) -> bool {
        v.len() == self.ambient && self.reduce(field, v).iter().all(|x| x.is_zero())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter_rows().all(|r| other.contains(field, r))
    }

    pub fn sum(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(field, self.layout, &self.basis.stack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus method.
    pub fn intersect(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut z = MatrixFq::zeros(self.dim() + other.dim(), 2 * n);
        for (i, row) in self.basis.iter_rows().enumerate() {
            for c in 0..n {
                z.set(i, c, row[c]);
                z.set(i, n + c, row[c]);
            }
        }
        for (i, row) in other.basis.iter_rows().enumerate() {
            for c in 0..n {
                z.set(self.dim() + i, c, row[c]);
            }
        }
        let (r, _) = rref(field, &z);
        let mut gens = MatrixFq::empty(n);
        for row in r.iter_rows() {
            if row[..n].iter().all(|x| x.is_zero()) {
                gens.push_row(&row[n..])?;
            }
        }
        Ok(Subspace::span(field, self.layout, &gens))
    }

    /// `dim self - dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, field: &Field, sub: &Subspace) -> Result<usize> {
        self.check_ambient(sub)?;
        if !sub.is_subspace_of(field, self) {
            return Err(Error::NotASubspace("quotient requires W ⊆ V"));
        }
        Ok(self.dim() - sub.dim())
    }

    fn check_set(&self, set: ShareSet) -> Result<()> {
        let n = self.shares();
        match set.max_index() {
            Some(i) if i >= n => Err(Error::IndexOutOfRange { index: i + 1, n }),
            _ => Ok(()),
        }
    }

    /// `V ∩ F_q^A`: vectors whose coordinates outside the shares of `A` vanish.
    pub fn restrict_support(&self, field: &Field, set: ShareSet) -> Result<Subspace> {
        self.check_set(set)?;
        let outside = self.layout.coordinates(self.ambient, set.complement(self.shares()));
        if outside.is_empty() {
            return Ok(self.clone());
        }
        // x * G_out = 0  <=>  G_out^T x^T = 0
        let g_out = self.basis.select_columns(&outside);
        let k = kernel(field, &g_out.transpose());
        let gens = k.mul(field, &self.basis)?;
        Ok(Subspace::span(field, self.layout, &gens))
    }

    /// `P_A(V)`: the projection onto the coordinates of `A`, in share order.
    pub fn project(&self, field: &Field, set: ShareSet) -> Result<Subspace> {
        self.check_set(set)?;
        let cols = self.layout.coordinates(self.ambient, set);
        Ok(Subspace::span(field, self.layout, &self.basis.select_columns(&cols)))
    }

    /// Size of `V` in bits (`dim * log2 q`).
    pub fn size_log2(&self, field: &Field) -> f64 {
        self.dim() as f64 * libm::log2(field.order() as f64)
    }

    /// Visits every vector of the subspace, `q^dim` of them, in odometer
    /// order over the basis coefficients.
    pub fn for_each_vector(&self, field: &Field, mut f: impl FnMut(&[Fq], &[u32])) {
        let q = field.order();
        let d = self.dim();
        let mut coeffs = vec![0u32; d];
        let mut v = vec![Fq::ZERO; self.ambient];
        loop {
            f(&v, &coeffs);
            let mut i = 0;
            loop {
                if i == d {
                    return;
                }
                let old = Fq(coeffs[i]);
                let new = if coeffs[i] + 1 == q { 0 } else { coeffs[i] + 1 };
                coeffs[i] = new;
                let delta = field.sub(Fq(new), old);
                axpy(field, &mut v, delta, self.basis.row(i));
                if new != 0 {
                    break;
                }
                i += 1;
            }
        }
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates_of(&self, field: &Field, v: &[Fq]) -> Option<Vec<Fq>> {
        if !self.contains(field, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// Vectors completing a basis of `self` to one of `outer` (`self ⊆ outer`):
    /// `outer`'s basis reduced modulo `self`, then put in RREF. The returned
    /// rows have their pivots in non-pivot columns of `self`.
    pub fn complement_in(&self, field: &Field, outer: &Subspace) -> Result<MatrixFq> {
        self.check_ambient(outer)?;
        if !self.is_subspace_of(field, outer) {
            return Err(Error::NotASubspace("complement requires inner ⊆ outer"));
        }
        let mut reduced = MatrixFq::empty(self.ambient);
        for row in outer.basis.iter_rows() {
            reduced.push_row(&self.reduce(field, row))?;
        }
        Ok(rref(field, &reduced).0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn v(xs: &[u32]) -> Vec<Fq> {
        xs.iter().map(|&x| Fq(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let f = gf(3);
        let (r, rank) = rref(&f, &MatrixFq::identity(4));
        assert_eq!((r, rank), (MatrixFq::identity(4), 4));
        let (r, rank) = rref(&f, &MatrixFq::zeros(3, 4));
        assert_eq!((r.rows(), rank), (0, 0));
        let m = MatrixFq::from_u32_rows(4, &[&[1, 1, 1, 0], &[2, 1, 0, 1]]).unwrap();
        let (r, rank) = rref(&f, &m);
        assert_eq!(rank, 2);
        assert_eq!(r, MatrixFq::from_u32_rows(4, &[&[1, 0, 2, 1], &[0, 1, 2, 2]]).unwrap());
        assert_eq!(rref(&f, &r).0, r);
    }

    #[test]
    fn solve_examples() {
        let f = gf(5);
        let b = v(&[3, 1, 4]);
        let s = solve(&f, &MatrixFq::identity(3), &b).unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.kernel.rows(), 0);

        let s = solve(&f, &MatrixFq::zeros(2, 3), &v(&[0, 0])).unwrap();
        assert_eq!(s.particular, v(&[0, 0, 0]));
        assert_eq!(s.kernel.rows(), 3);

        assert_eq!(solve(&f, &MatrixFq::zeros(2, 3), &v(&[0, 1])), Err(Error::NoSolution));
    }

    #[test]
    fn solve_returns_valid_solution() {
        let f = gf(3);
        let a = MatrixFq::from_u32_rows(4, &[&[1, 2, 0, 1], &[0, 1, 1, 2], &[1, 0, 1, 0]]).unwrap();
        let b = v(&[1, 2, 0]);
        let s = solve(&f, &a, &b).unwrap();
        assert_eq!(a.mul_vec(&f, &s.particular), b);
        for k in s.kernel.iter_rows() {
            assert!(a.mul_vec(&f, k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn sum_intersect_quotient() {
        let f = gf(2);
        let x = Subspace::from_vectors(&f, Layout::Plain, 2, &[v(&[1, 0])]).unwrap();
        let y = Subspace::from_vectors(&f, Layout::Plain, 2, &[v(&[0, 1])]).unwrap();
        assert_eq!(x.sum(&f, &y).unwrap(), Subspace::full(Layout::Plain, 2));
        assert!(x.intersect(&f, &y).unwrap().is_zero());
        assert_eq!(x.intersect(&f, &x).unwrap(), x);
        assert_eq!(x.sum(&f, &x).unwrap(), x);
        assert_eq!(x.quotient_dim(&f, &x).unwrap(), 0);
        assert!(matches!(x.quotient_dim(&f, &y), Err(Error::NotASubspace(_))));

        let f = gf(3);
        let big = Subspace::from_vectors(&f, Layout::Plain, 4, &[v(&[1, 1, 1, 0]), v(&[2, 1, 0, 1])]).unwrap();
        let small = Subspace::from_vectors(&f, Layout::Plain, 4, &[v(&[1, 1, 1, 0])]).unwrap();
        assert_eq!(big.quotient_dim(&f, &small).unwrap(), 1);
        let other = Subspace::zero(Layout::Plain, 3);
        assert_eq!(big.sum(&f, &other), Err(Error::AmbientMismatch(4, 3)));
    }

    #[test]
    fn support_operators_on_example_code() {
        let f = gf(3);
        let v1 = [1u32, 1, 1, 0];
        let mut a = v(&v1);
        a.extend(v(&[0; 4]));
        let mut b = v(&[0; 4]);
        b.extend(v(&v1));
        let cr = Subspace::from_vectors(&f, Layout::Symplectic, 8, &[a, b]).unwrap();
        let all = ShareSet::full(4);
        assert_eq!(cr.restrict_support(&f, all).unwrap(), cr);
        assert_eq!(cr.project(&f, all).unwrap(), cr);
        assert!(cr.restrict_support(&f, ShareSet::EMPTY).unwrap().is_zero());
        assert_eq!(cr.project(&f, ShareSet::EMPTY).unwrap().ambient_dim(), 0);
        assert_eq!(cr.restrict_support(&f, ShareSet::from_one_based(&[1, 2, 3])).unwrap().dim(), 2);
        assert!(cr.restrict_support(&f, ShareSet::from_one_based(&[2, 3, 4])).unwrap().is_zero());
        assert!(matches!(
            cr.restrict_support(&f, ShareSet::from_one_based(&[5])),
            Err(Error::IndexOutOfRange { index: 5, n: 4 })
        ));
    }

    #[test]
    fn enumeration_visits_every_vector_once() {
        let f = gf(4);
        let s = Subspace::from_vectors(&f, Layout::Plain, 3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let mut seen = alloc::collections::BTreeSet::new();
        s.for_each_vector(&f, |x, _| {
            assert!(s.contains(&f, x));
            seen.insert(x.to_vec());
        });
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn complement_uses_non_pivot_columns() {
        let f = gf(2);
        let c = Subspace::from_vectors(&f, Layout::Symplectic, 4, &[v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1])]).unwrap();
        let comp = c.complement_in(&f, &Subspace::full(Layout::Symplectic, 4)).unwrap();
        assert_eq!(comp, MatrixFq::from_u32_rows(4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]).unwrap());
    }
}
