//! Dense state-vector simulation of the encoding, used as an independent
//! oracle for secrecy, reconstructability and advance sharing.
//!
//! Reduced states are kept as weighted lists of vectors
//! `ρ = Σ w_j |v_j><v_j|` (columns of the reshaped pure states) and only
//! turned into dense matrices when the list is longer than the dimension.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::classical::for_each_tuple;
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::scheme::{is_advance_shareable, leakage_dim, Scheme};
use crate::shares::ShareSet;
use crate::symplectic::{css_parts, CodeTriple};

pub const MAX_AMPLITUDES: u64 = 1 << 16;

/// Reduced states up to this side length are stored densely.
const DENSE_SIDE: usize = 256;

fn state_len(q: u32, n: usize) -> Result<usize> {
    let len = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if len > MAX_AMPLITUDES {
        return Err(Error::StateTooLarge { amplitudes: len });
    }
    Ok(len as usize)
}

/// Amplitudes indexed by `F_q^n` with share 1 as the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    n: usize,
    q: u32,
    amps: Vec<C64>,
}

impl QuantumState {
    pub fn from_amplitudes(n: usize, q: u32, amps: Vec<C64>) -> Result<Self> {
        let len = state_len(q, n)?;
        if amps.len() != len {
            return Err(Error::DimensionMismatch(len, amps.len()));
        }
        Ok(QuantumState { n, q, amps })
    }

    pub fn basis(n: usize, q: u32, x: &[Fq]) -> Result<Self> {
        let len = state_len(q, n)?;
        if x.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: x.len() });
        }
        let mut amps = vec![C64::new(0.0, 0.0); len];
        amps[index_of(q, x)] = C64::new(1.0, 0.0);
        Ok(QuantumState { n, q, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amps.iter().map(|a| a.norm_sqr()).sum())
    }

    /// `<self|other>`
    pub fn inner(&self, other: &QuantumState) -> Result<C64> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::DimensionMismatch(self.amps.len(), other.amps.len()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `X(a)Z(b)|x> = ω^{<b', x'>} |x + a>` where `b'` and `x'` are the `F_p`
    /// expansions and `ω = e^{2πi/p}`.
    pub fn apply_pauli(&self, field: &Field, v: &[Fq]) -> Result<QuantumState> {
        let n = self.n;
        if v.len() != 2 * n {
            return Err(Error::AmbientMismatch(2 * n, v.len()));
        }
        if field.order() != self.q {
            return Err(Error::DimensionMismatch(self.q as usize, field.order() as usize));
        }
        let p = field.p();
        let m = field.m() as usize;
        let q = self.q as usize;
        let omega = roots_of_unity(p);
        let ex = field.phi_expand(v)?;
        let bexp = &ex[n * m..];
        let mut phase = vec![0u32; n * q];
        let mut shift = vec![0u32; n * q];
        for i in 0..n {
            for x in 0..q {
                let c = field.coords(Fq(x as u32));
                let dot: u64 = c.iter().zip(&bexp[i * m..(i + 1) * m]).map(|(&a, &b)| a as u64 * b as u64).sum();
                phase[i * q + x] = (dot % p as u64) as u32;
                shift[i * q + x] = field.add(Fq(x as u32), v[i]).0;
            }
        }
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        let mut digits = vec![0usize; n];
        for (idx, &amp) in self.amps.iter().enumerate() {
            if idx > 0 {
                increment(&mut digits, q);
            }
            if amp == C64::new(0.0, 0.0) {
                continue;
            }
            let mut e = 0u32;
            let mut dest = 0usize;
            for (i, &d) in digits.iter().enumerate() {
                e += phase[i * q + d];
                dest = dest * q + shift[i * q + d] as usize;
            }
            out[dest] = amp * omega[(e % p) as usize];
        }
        Ok(QuantumState { n, q: self.q, amps: out })
    }

    /// `Tr_{Ā} |ψ><ψ|`
    pub fn reduce(&self, a: ShareSet) -> SubsystemDensity {
        let q = self.q as usize;
        let inside = a.indices();
        let da = q.pow(inside.len() as u32);
        let db = q.pow((self.n - inside.len()) as u32);
        let mut cols = vec![vec![C64::new(0.0, 0.0); da]; db];
        let mut digits = vec![0usize; self.n];
        for (idx, &amp) in self.amps.iter().enumerate() {
            if idx > 0 {
                increment(&mut digits, q);
            }
            if amp == C64::new(0.0, 0.0) {
                continue;
            }
            let (mut ia, mut ib) = (0, 0);
            for (i, &d) in digits.iter().enumerate() {
                if a.contains(i) {
                    ia = ia * q + d;
                } else {
                    ib = ib * q + d;
                }
            }
            cols[ib][ia] = amp;
        }
        SubsystemDensity::from_weighted(a, da, cols.into_iter().map(|c| (1.0, c)).collect())
    }
}

fn increment(digits: &mut [usize], q: usize) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return;
        }
        *d = 0;
    }
}

fn index_of(q: u32, x: &[Fq]) -> usize {
    x.iter().fold(0usize, |acc, d| acc * q as usize + d.0 as usize)
}

fn roots_of_unity(p: u32) -> Vec<C64> {
    (0..p)
        .map(|e| {
            let t = 2.0 * PI * e as f64 / p as f64;
            C64::new(libm::cos(t), libm::sin(t))
        })
        .collect()
}

#[derive(Clone, Debug)]
enum Repr {
    Dense(DMatrix<C64>),
    Factored(Vec<(f64, Vec<C64>)>),
}

/// A density operator on the shares in `set`, of side `q^|set|`.
#[derive(Clone, Debug)]
pub struct SubsystemDensity {
    set: ShareSet,
    dim: usize,
    repr: Repr,
}

fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn outer_sum(dim: usize, vecs: &[(f64, Vec<C64>)]) -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (w, v) in vecs {
        for j in 0..dim {
            if v[j] == C64::new(0.0, 0.0) {
                continue;
            }
            let c = v[j].conj() * *w;
            for i in 0..dim {
                m[(i, j)] += v[i] * c;
            }
        }
    }
    m
}

fn hermitian_eigenvalues(m: DMatrix<C64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
}

impl SubsystemDensity {
    /// `Σ w_j |v_j><v_j|`; zero vectors are dropped.
    pub fn from_weighted(set: ShareSet, dim: usize, vecs: Vec<(f64, Vec<C64>)>) -> Self {
        let vecs: Vec<_> =
            vecs.into_iter().filter(|(w, v)| *w != 0.0 && v.iter().any(|x| x.norm_sqr() > 0.0)).collect();
        let repr = if dim <= DENSE_SIDE || vecs.len() > dim {
            Repr::Dense(outer_sum(dim, &vecs))
        } else {
            Repr::Factored(vecs)
        };
        SubsystemDensity { set, dim, repr }
    }

    pub fn from_matrix(set: ShareSet, m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
        }
        let d = SubsystemDensity { set, dim: m.nrows(), repr: Repr::Dense(m) };
        d.validate()?;
        Ok(d)
    }

    pub fn set(&self) -> ShareSet {
        self.set
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Factored(v) => outer_sum(self.dim, v),
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => m.diagonal().iter().map(|x| x.re).sum(),
            Repr::Factored(v) => v.iter().map(|(w, x)| w * x.iter().map(|a| a.norm_sqr()).sum::<f64>()).sum(),
        }
    }

    /// Nonzero part of the spectrum (plus zeros when stored densely).
    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Dense(m) => hermitian_eigenvalues(m.clone()),
            Repr::Factored(v) => {
                let k = v.len();
                let mut g = DMatrix::<C64>::zeros(k, k);
                for i in 0..k {
                    for j in i..k {
                        let x = dot(&v[i].1, &v[j].1) * libm::sqrt(v[i].0 * v[j].0);
                        g[(i, j)] = x;
                        g[(j, i)] = x.conj();
                    }
                }
                hermitian_eigenvalues(g)
            }
        }
    }

    /// Von Neumann entropy with logarithms to `base`.
    pub fn entropy(&self, base: f64) -> f64 {
        let lb = libm::log(base);
        self.eigenvalues().into_iter().filter(|&l| l > 1e-14).map(|l| -l * libm::log(l) / lb).sum()
    }

    /// Trace 1 within `1e-10`, Hermitian within `1e-12`, spectrum above
    /// `-1e-10`.
    pub fn validate(&self) -> Result<()> {
        if libm::fabs(self.trace() - 1.0) > 1e-10 {
            return Err(Error::NotADensity("trace differs from 1"));
        }
        if let Repr::Dense(m) = &self.repr {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-12 {
                        return Err(Error::NotADensity("not Hermitian"));
                    }
                }
            }
        }
        if self.eigenvalues().iter().any(|&l| l < -1e-10) {
            return Err(Error::NotADensity("negative eigenvalue"));
        }
        Ok(())
    }

    /// `Σ p_i ρ_i`
    pub fn mixture(items: &[(f64, &SubsystemDensity)]) -> Result<SubsystemDensity> {
        let first = items.first().ok_or(Error::NotADensity("empty ensemble"))?.1;
        let (set, dim) = (first.set, first.dim);
        let mut vecs = Vec::new();
        let mut dense: Option<DMatrix<C64>> = None;
        for (p, d) in items {
            if d.dim != dim {
                return Err(Error::DimensionMismatch(dim, d.dim));
            }
            match &d.repr {
                Repr::Factored(v) => vecs.extend(v.iter().map(|(w, x)| (w * p, x.clone()))),
                Repr::Dense(m) => {
                    let acc = dense.get_or_insert_with(|| DMatrix::zeros(dim, dim));
                    *acc += m * C64::new(*p, 0.0);
                }
            }
        }
        Ok(match dense {
            None => SubsystemDensity::from_weighted(set, dim, vecs),
            Some(mut m) => {
                m += outer_sum(dim, &vecs);
                SubsystemDensity { set, dim, repr: Repr::Dense(m) }
            }
        })
    }
}

fn same_dim(a: &SubsystemDensity, b: &SubsystemDensity) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    Ok(())
}

/// `½ ||ρ - σ||_1`
pub fn trace_distance(rho: &SubsystemDensity, sigma: &SubsystemDensity) -> Result<f64> {
    same_dim(rho, sigma)?;
    let eig = match (&rho.repr, &sigma.repr) {
        (Repr::Factored(a), Repr::Factored(b)) if a.len() + b.len() < rho.dim => {
            let signed: Vec<(f64, &[C64])> =
                a.iter().map(|(w, v)| (*w, &v[..])).chain(b.iter().map(|(w, v)| (-*w, &v[..]))).collect();
            let basis = orthonormal_basis(signed.iter().map(|(_, v)| *v));
            let r = basis.len();
            let mut m = DMatrix::<C64>::zeros(r, r);
            for (w, v) in &signed {
                let coords: Vec<C64> = basis.iter().map(|e| dot(e, v)).collect();
                for i in 0..r {
                    for j in 0..r {
                        m[(i, j)] += coords[i] * coords[j].conj() * *w;
                    }
                }
            }
            hermitian_eigenvalues(m)
        }
        _ => hermitian_eigenvalues(rho.to_matrix() - sigma.to_matrix()),
    };
    Ok(0.5 * eig.iter().map(|x| libm::fabs(*x)).sum::<f64>())
}

fn orthonormal_basis<'a>(vs: impl Iterator<Item = &'a [C64]>) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vs {
        let scale = libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum());
        let mut u = v.to_vec();
        for _ in 0..2 {
            for e in &basis {
                let c = dot(e, &u);
                for (x, y) in u.iter_mut().zip(e) {
                    *x -= c * y;
                }
            }
        }
        let nu = libm::sqrt(u.iter().map(|x| x.norm_sqr()).sum());
        if nu > 1e-10 * scale.max(1e-300) {
            for x in &mut u {
                *x /= nu;
            }
            basis.push(u);
        }
    }
    basis
}

/// `Tr(ρσ)`
pub fn overlap(rho: &SubsystemDensity, sigma: &SubsystemDensity) -> Result<f64> {
    same_dim(rho, sigma)?;
    let quad = |m: &DMatrix<C64>, vs: &[(f64, Vec<C64>)]| -> f64 {
        vs.iter()
            .map(|(w, v)| {
                let mv = m * nalgebra::DVector::from_column_slice(v);
                w * dot(v, mv.as_slice()).re
            })
            .sum()
    };
    Ok(match (&rho.repr, &sigma.repr) {
        (Repr::Factored(a), Repr::Factored(b)) => {
            a.iter().map(|(w, u)| b.iter().map(|(x, v)| w * x * dot(u, v).norm_sqr()).sum::<f64>()).sum()
        }
        (Repr::Dense(m), Repr::Factored(v)) | (Repr::Factored(v), Repr::Dense(m)) => quad(m, v),
        (Repr::Dense(a), Repr::Dense(b)) => a.iter().zip(b.transpose().iter()).map(|(x, y)| (x * y).re).sum(),
    })
}

pub fn von_neumann_entropy(rho: &SubsystemDensity, base: f64) -> f64 {
    rho.entropy(base)
}

/// `χ = S(Σ p_i ρ_i) - Σ p_i S(ρ_i)`
pub fn holevo(ensemble: &[(f64, SubsystemDensity)], base: f64) -> Result<f64> {
    let refs: Vec<(f64, &SubsystemDensity)> = ensemble.iter().map(|(p, d)| (*p, d)).collect();
    let mean = SubsystemDensity::mixture(&refs)?;
    let avg: f64 = ensemble.iter().map(|(p, d)| p * d.entropy(base)).sum();
    Ok(mean.entropy(base) - avg)
}

/// `|C_X|^{-1/2} Σ_{c ∈ C_X} |c>` for `C_max = C_X × {0} ⊕ {0} × C_Z`.
pub fn phi_state(t: &CodeTriple) -> Result<QuantumState> {
    let f = &t.field;
    let len = state_len(f.order(), t.n)?;
    let (cx, _) = css_parts(f, &t.c_max).ok_or(Error::NotCss)?;
    let size = (f.order() as f64).powi(cx.dim() as i32);
    let a = C64::new(1.0 / libm::sqrt(size), 0.0);
    let mut amps = vec![C64::new(0.0, 0.0); len];
    cx.for_each_vector(f, |c, _| amps[index_of(f.order(), c)] = a);
    QuantumState::from_amplitudes(t.n, f.order(), amps)
}

/// Codewords for every secret and randomness choice, in integer order of
/// `(m, r)`. With `advance`, each label is first replaced by its advance
/// representative.
pub struct EncodedStates {
    pub secrets: Vec<Vec<Fq>>,
    pub states: Vec<Vec<QuantumState>>,
}

pub fn encode_states(sch: &Scheme, advance: bool) -> Result<EncodedStates> {
    let t = &sch.triple;
    let f = &t.field;
    let phi = phi_state(t)?;
    let mut secrets = Vec::new();
    let mut states = Vec::new();
    let mut err = None;
    for_each_tuple(f, t.k, |m| {
        let mut row = Vec::new();
        for_each_tuple(f, t.s, |r| {
            let res = sch.encode_label(m, r).and_then(|l| {
                let v = if advance { sch.advance_rep(&l.vector)? } else { l.vector };
                phi.apply_pauli(f, &v)
            });
            match res {
                Ok(st) => row.push(st),
                Err(e) => err = err.take().or(Some(e)),
            }
        });
        secrets.push(m.to_vec());
        states.push(row);
    });
    match err {
        Some(e) => Err(e),
        None => Ok(EncodedStates { secrets, states }),
    }
}

fn secret_density(states: &[QuantumState], a: ShareSet) -> SubsystemDensity {
    let w = 1.0 / states.len() as f64;
    let parts: Vec<SubsystemDensity> = states.iter().map(|s| s.reduce(a)).collect();
    let refs: Vec<(f64, &SubsystemDensity)> = parts.iter().map(|d| (w, d)).collect();
    SubsystemDensity::mixture(&refs).expect("equal dimensions")
}

/// `ρ_m^A = q^{-s} Σ_r Tr_Ā |enc(m, r)><enc(m, r)|` for each requested `A`.
pub fn encode_density(sch: &Scheme, m: &[Fq], subsets: &[ShareSet]) -> Result<Vec<SubsystemDensity>> {
    let t = &sch.triple;
    if m.len() != t.k {
        return Err(Error::LengthMismatch { expected: t.k, actual: m.len() });
    }
    let phi = phi_state(t)?;
    let mut states = Vec::new();
    let mut err = None;
    for_each_tuple(&t.field, t.s, |r| {
        match sch.encode_label(m, r).and_then(|l| phi.apply_pauli(&t.field, &l.vector)) {
            Ok(s) => states.push(s),
            Err(e) => err = err.take().or(Some(e)),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(subsets.iter().map(|&a| secret_density(&states, a)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetCertificate {
    pub set: ShareSet,
    pub leakage: usize,
    /// `max_m D(ρ_m, ρ_0)`
    pub secrecy: f64,
    /// `max_{m ≠ m'} Tr(ρ_m ρ_m')`
    pub distinguishability: f64,
    /// Holevo quantity of the uniform secret ensemble, base `q`.
    pub chi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub subsets: Vec<SubsetCertificate>,
    /// `max_{m,r} D(Tr_B̄ enc(m,r), Tr_B̄ φ)` over advance encodings, when the
    /// advance set is advance-shareable.
    pub advance_invariance: Option<f64>,
}

pub fn verify_protocol(sch: &Scheme, subsets: &[ShareSet]) -> Result<SimReport> {
    let t = &sch.triple;
    let q = t.field.order() as f64;
    let enc = encode_states(sch, false)?;
    let mut out = Vec::new();
    for &a in subsets {
        let leakage = leakage_dim(t, a)?;
        let rhos: Vec<SubsystemDensity> = enc.states.iter().map(|row| secret_density(row, a)).collect();
        let mut secrecy: f64 = 0.0;
        let mut distinguishability: f64 = 0.0;
        for (i, r) in rhos.iter().enumerate() {
            secrecy = secrecy.max(trace_distance(r, &rhos[0])?);
            for r2 in &rhos[i + 1..] {
                distinguishability = distinguishability.max(overlap(r, r2)?);
            }
        }
        let w = 1.0 / rhos.len() as f64;
        let ens: Vec<(f64, SubsystemDensity)> = rhos.into_iter().map(|r| (w, r)).collect();
        let chi = holevo(&ens, q)?;
        out.push(SubsetCertificate { set: a, leakage, secrecy, distinguishability, chi });
    }
    let advance_invariance = if is_advance_shareable(t, sch.advance)? {
        let phi = phi_state(t)?.reduce(sch.advance);
        let adv = encode_states(sch, true)?;
        let mut worst: f64 = 0.0;
        for st in adv.states.iter().flatten() {
            worst = worst.max(trace_distance(&st.reduce(sch.advance), &phi)?);
        }
        Some(worst)
    } else {
        None
    };
    Ok(SimReport { subsets: out, advance_invariance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scheme::build_scheme;

    #[test]
    fn bell_state() {
        let t = fixtures::gottesman();
        let phi = phi_state(&t).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let want = [h, 0.0, 0.0, h];
        for (a, w) in phi.amplitudes().iter().zip(want) {
            assert!((a - C64::new(w, 0.0)).norm() < 1e-12);
        }
        let x = phi.apply_pauli(&t.field, &[Fq(0), Fq(1), Fq(0), Fq(0)]).unwrap();
        let want = [0.0, h, h, 0.0];
        for (a, w) in x.amplitudes().iter().zip(want) {
            assert!((a - C64::new(w, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn gottesman_protocol() {
        let t = fixtures::gottesman();
        let s = build_scheme(&t, ShareSet::prefix(1)).unwrap();
        let r = verify_protocol(&s, &[ShareSet::prefix(1), ShareSet::full(2)]).unwrap();
        assert!(r.subsets[0].secrecy < 1e-9);
        assert!(r.subsets[0].chi.abs() < 1e-9);
        assert!(r.subsets[1].distinguishability < 1e-9);
        assert!((r.subsets[1].chi - 2.0).abs() < 1e-9);
        assert!(r.advance_invariance.unwrap() < 1e-9);
    }

    #[test]
    fn maximally_mixed_entropy() {
        let m = DMatrix::<C64>::identity(3, 3) * C64::new(1.0 / 3.0, 0.0);
        let d = SubsystemDensity::from_matrix(ShareSet::prefix(1), m).unwrap();
        assert!((d.entropy(3.0) - 1.0).abs() < 1e-12);
        assert!(trace_distance(&d, &d).unwrap() < 1e-15);
    }
}
