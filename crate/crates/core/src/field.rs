//! Arithmetic in `GF(p^m)`.
//!
//! Elements are stored as integers `0..q` whose base-`p` digits are the
//! coefficients of the polynomial representative, lowest degree first. The
//! fixed `F_p`-basis is the polynomial basis `1, x, .., x^(m-1)`, so the
//! coordinates of an element are exactly its digits.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Largest order for which a full addition table is precomputed.
const ADD_TABLE_LIMIT: u32 = 256;

/// A field element, encoded as described in the module docs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients lowest degree first (length `m + 1`).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    /// `gram[i][j] = Tr(x^i x^j)`, row-major `m x m` over `F_p`.
    gram: Vec<u32>,
    gram_inv: Vec<u32>,
}

/// The field `F_q`, `q = p^m`, together with its trace Gram matrix.
///
/// Cloning is cheap; the lookup tables are shared.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)?;
        if self.inner.m > 1 {
            write!(f, " mod {:?}", self.inner.modulus)?;
        }
        Ok(())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut m = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

// --- polynomial helpers over F_p (coefficients lowest degree first) ---

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is small; Fermat
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `b` (b nonzero, trimmed).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] as u64 * lead_inv as u64 % p as u64;
        for (i, &bc) in b.iter().enumerate() {
            let idx = shift + i;
            let sub = factor * bc as u64 % p as u64;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    poly_trim(&mut f);
    let deg = match f.len() {
        0 => return false,
        n => n - 1,
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut e = low;
            for _ in 0..d {
                g.push((e % p as u64) as u32);
                e /= p as u64;
            }
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `m` over `F_p`, ordering candidates by
/// the integer whose base-`p` digits are the low coefficients.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut g = Vec::with_capacity(m as usize + 1);
        let mut e = low;
        for _ in 0..m {
            g.push((e % p as u64) as u32);
            e /= p as u64;
        }
        g.push(1);
        if is_irreducible(&g, p) {
            return g;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn invert_fp_matrix(mat: &[u32], m: usize, p: u32) -> Option<Vec<u32>> {
    let w = 2 * m;
    let mut a = vec![0u32; m * w];
    for i in 0..m {
        for j in 0..m {
            a[i * w + j] = mat[i * m + j];
        }
        a[i * w + m + i] = 1;
    }
    for col in 0..m {
        let pivot = (col..m).find(|&r| a[r * w + col] != 0)?;
        if pivot != col {
            for j in 0..w {
                a.swap(pivot * w + j, col * w + j);
            }
        }
        let inv = inv_mod_p(a[col * w + col], p) as u64;
        for j in 0..w {
            a[col * w + j] = (a[col * w + j] as u64 * inv % p as u64) as u32;
        }
        for r in 0..m {
            if r != col && a[r * w + col] != 0 {
                let f = a[r * w + col] as u64;
                for j in 0..w {
                    let sub = f * a[col * w + j] as u64 % p as u64;
                    a[r * w + j] = ((a[r * w + j] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
    }
    let mut out = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            out[i * m + j] = a[i * w + m + j];
        }
    }
    Some(out)
}

impl Field {
    /// Builds `GF(p^m)`. With `modulus = None` the least irreducible is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameters("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge { p, m }),
        };
        let modulus = match modulus {
            Some(poly) if m > 1 => {
                let mut f: Vec<u32> = poly.iter().map(|&c| c % p).collect();
                poly_trim(&mut f);
                if f.len() != m as usize + 1 || f[m as usize] != 1 || !is_irreducible(&f, p) {
                    return Err(Error::ReducibleModulus);
                }
                f
            }
            _ => default_modulus(p, m),
        };
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, m);
                }
            }
            t
        });
        let mut field =
            Inner { p, m, q, modulus, exp: Vec::new(), log: Vec::new(), add, gram: Vec::new(), gram_inv: Vec::new() };
        build_log_tables(&mut field);
        let mut f = Field { inner: Arc::new(field) };
        let mm = m as usize;
        let mut gram = vec![0u32; mm * mm];
        for i in 0..mm {
            for j in 0..mm {
                let gi = Fq(p.pow(i as u32));
                let gj = Fq(p.pow(j as u32));
                gram[i * mm + j] = f.trace(f.mul(gi, gj)).0;
            }
        }
        let gram_inv = invert_fp_matrix(&gram, mm, p)
            .ok_or_else(|| Error::InvalidParameters("trace Gram matrix is singular".into()))?;
        let inner = Arc::get_mut(&mut f.inner).expect("freshly built");
        inner.gram = gram;
        inner.gram_inv = gram_inv;
        Ok(f)
    }

    /// `GF(q)` for a prime power `q`, default modulus.
    pub fn with_order(q: u32) -> Result<Field> {
        match prime_power(q as u64) {
            Some((p, m)) => Field::new(p, m, None),
            None => Err(Error::NonPrimeCharacteristic(q)),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }
    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.m
    }
    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Trace Gram matrix `M`, row-major `m x m` over `F_p`.
    pub fn gram(&self) -> &[u32] {
        &self.inner.gram
    }
    pub fn gram_inverse(&self) -> &[u32] {
        &self.inner.gram_inv
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.inner.q).map(Fq)
    }

    pub fn contains(&self, x: Fq) -> bool {
        x.0 < self.inner.q
    }

    pub fn element(&self, v: u32) -> Result<Fq> {
        if v < self.inner.q {
            Ok(Fq(v))
        } else {
            Err(Error::InvalidElement { value: v, order: self.inner.q })
        }
    }

    /// Embeds an integer through `F_p` (reduces mod `p`).
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.inner.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let f = &*self.inner;
        if f.m == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= f.p { s - f.p } else { s });
        }
        match &f.add {
            Some(t) => Fq(t[(a.0 * f.q + b.0) as usize]),
            None => Fq(digit_add(a.0, b.0, f.p, f.m)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let f = &*self.inner;
        if f.m == 1 {
            return Fq(if a.0 == 0 { 0 } else { f.p - a.0 });
        }
        let mut out = 0;
        let mut scale = 1;
        let mut x = a.0;
        for _ in 0..f.m {
            let d = x % f.p;
            out += ((f.p - d) % f.p) * scale;
            x /= f.p;
            scale *= f.p;
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let f = &*self.inner;
        if f.m == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % f.p as u64) as u32);
        }
        let e = f.log[a.0 as usize] + f.log[b.0 as usize];
        let n = f.q - 1;
        Fq(f.exp[(if e >= n { e - n } else { e }) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        let f = &*self.inner;
        let n = f.q - 1;
        let l = f.log[a.0 as usize];
        Some(Fq(f.exp[((n - l) % n) as usize]))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let f = &*self.inner;
        let n = (f.q - 1) as u64;
        let l = f.log[a.0 as usize] as u64;
        Fq(f.exp[((l * (e % n)) % n) as usize])
    }

    /// `Tr(x) = x + x^p + .. + x^(p^(m-1))`, an element of the prime field.
    pub fn trace(&self, x: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        let mut y = x;
        for _ in 0..self.inner.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.inner.p as u64);
        }
        debug_assert!(acc.0 < self.inner.p);
        acc
    }

    /// Coordinates of `x` in the polynomial basis.
    pub fn coords(&self, x: Fq) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = x.0;
        (0..self.inner.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> Fq {
        let p = self.inner.p;
        Fq(c.iter().rev().fold(0, |acc, &d| acc * p + d % p))
    }

    /// `F_p`-linear expansion of a symplectic vector `(a|b)` of length `2n`
    /// into `F_p^(2mn)`. The `b` coordinates are multiplied by the Gram
    /// matrix so that the `F_p` symplectic form agrees with the trace of the
    /// `F_q` form.
    pub fn phi_expand(&self, v: &[Fq]) -> Result<Vec<u32>> {
        if v.len() % 2 != 0 {
            return Err(Error::OddLengthVector(v.len()));
        }
        let n = v.len() / 2;
        let m = self.inner.m as usize;
        let p = self.inner.p as u64;
        let mut out = Vec::with_capacity(2 * m * n);
        for &a in &v[..n] {
            out.extend(self.coords(a));
        }
        for &b in &v[n..] {
            let c = self.coords(b);
            for j in 0..m {
                let mut s = 0u64;
                for (l, &cl) in c.iter().enumerate() {
                    s += cl as u64 * self.inner.gram[l * m + j] as u64;
                }
                out.push((s % p) as u32);
            }
        }
        Ok(out)
    }

    /// Inverse of [`Field::phi_expand`].
    pub fn phi_compress(&self, u: &[u32]) -> Result<Vec<Fq>> {
        let m = self.inner.m as usize;
        if u.len() % (2 * m) != 0 {
            return Err(Error::OddLengthVector(u.len()));
        }
        let n = u.len() / (2 * m);
        let p = self.inner.p as u64;
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            out.push(self.from_coords(&u[i * m..(i + 1) * m]));
        }
        for i in 0..n {
            let b = &u[(n + i) * m..(n + i + 1) * m];
            let mut c = vec![0u32; m];
            for (j, cj) in c.iter_mut().enumerate() {
                let mut s = 0u64;
                for (l, &bl) in b.iter().enumerate() {
                    s += bl as u64 * self.inner.gram_inv[l * m + j] as u64;
                }
                *cj = (s % p) as u32;
            }
            out.push(self.from_coords(&c));
        }
        Ok(out)
    }

    /// Polynomial multiplication modulo the field modulus, without tables.
    #[cfg(test)]
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        mul_poly_mod(a, b, f.p, f.m, &f.modulus)
    }
}

fn digit_add(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn mul_poly_mod(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let m = m as usize;
    let da: Vec<u32> = {
        let mut x = a;
        (0..m)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let db: Vec<u32> = {
        let mut x = b;
        (0..m)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let mut prod = vec![0u32; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = ((prod[i + j] as u64 + da[i] as u64 * db[j] as u64) % p as u64) as u32;
        }
    }
    let r = poly_rem(&prod, modulus, p);
    r.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn build_log_tables(f: &mut Inner) {
    let q = f.q;
    let n = q - 1;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            factors.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    let mulf = |a: u32, b: u32| -> u32 {
        if f.m == 1 {
            ((a as u64 * b as u64) % f.p as u64) as u32
        } else {
            mul_poly_mod(a, b, f.p, f.m, &f.modulus)
        }
    };
    let powf = |a: u32, mut e: u32| -> u32 {
        let mut r = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                r = mulf(r, base);
            }
            base = mulf(base, base);
            e >>= 1;
        }
        r
    };
    let generator =
        (1..q).find(|&g| factors.iter().all(|&r| powf(g, n / r) != 1)).expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1;
    for i in 0..n {
        exp[i as usize] = x;
        log[x as usize] = i;
        x = mulf(x, generator);
    }
    f.exp = exp;
    f.log = log;
}
