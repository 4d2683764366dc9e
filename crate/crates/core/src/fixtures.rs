//! Small schemes used throughout the tests and the CLI demos.

use alloc::vec::Vec;

use crate::field::{Field, Fq};
use crate::linalg::{Layout, Subspace};
use crate::symplectic::{validate_triple, CodeTriple};

fn sp(field: &Field, n: usize, rows: &[&[u32]]) -> Subspace {
    let vs: Vec<Vec<Fq>> = rows.iter().map(|r| r.iter().map(|&x| Fq(x)).collect()).collect();
    Subspace::from_vectors(field, Layout::Symplectic, 2 * n, &vs).expect("fixture rows")
}

/// Two-qubit scheme: secret of two bits, Bell state `(|00> + |11>)/√2`.
pub fn gottesman() -> CodeTriple {
    let f = Field::with_order(2).unwrap();
    let c_max = sp(&f, 2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
    let c_s = Subspace::zero(Layout::Symplectic, 4);
    validate_triple(&f, c_s, c_max.clone(), c_max, 2, 2, 0).unwrap()
}

pub const V1: [u32; 4] = [1, 1, 1, 0];
pub const V2: [u32; 4] = [2, 1, 0, 1];

/// `q = 3, n = 4, k = s = 2` over the doubly-extended `[4, 2, 3]_3`
/// Reed–Solomon code spanned by `V1`, `V2`.
pub fn example3b() -> CodeTriple {
    let f = Field::with_order(3).unwrap();
    let z = [0u32; 4];
    let cat = |a: &[u32; 4], b: &[u32; 4]| -> Vec<u32> { a.iter().chain(b).copied().collect() };
    let (r1, r2, r3, r4) = (cat(&V1, &z), cat(&z, &V1), cat(&V2, &z), cat(&z, &V2));
    let c_r = sp(&f, 4, &[&r1, &r2]);
    let c_max = sp(&f, 4, &[&r1, &r3, &r2, &r4]);
    let c_s = Subspace::zero(Layout::Symplectic, 8);
    validate_triple(&f, c_s, c_r, c_max, 4, 2, 2).unwrap()
}
