//! Exact algebra for quantum secret sharing with advance sharing of shares.
//!
//! Finite fields `GF(p^m)`, linear algebra over them, symplectic codes and
//! code triples, the encoding and its access-structure classifiers, the
//! Reed–Solomon family, classical linear schemes, existence bounds, and a
//! small dense qudit simulator used as an independent oracle.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classical;
mod error;
pub mod field;
pub mod fixtures;
pub mod gv;
pub mod info;
pub mod linalg;
pub mod rs;
pub mod scheme;
pub mod shares;
pub mod sim;
pub mod symplectic;

pub use error::{Error, Result, Violation};
pub use field::{Field, Fq};
pub use linalg::{Layout, MatrixFq, Subspace};
pub use scheme::{Access, Scheme};
pub use shares::ShareSet;
pub use symplectic::CodeTriple;

/// Cap on exhaustive enumerations, in bits (`log2` of the number of items).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimit {
    pub max_log2: u32,
}

impl Default for EnumLimit {
    fn default() -> Self {
        EnumLimit { max_log2: 20 }
    }
}

impl EnumLimit {
    pub const UNLIMITED: EnumLimit = EnumLimit { max_log2: 64 };

    pub fn check(self, size_log2: f64) -> Result<()> {
        if size_log2 > self.max_log2 as f64 + 1e-9 {
            Err(Error::EnumerationTooLarge { size_log2, limit_log2: self.max_log2 })
        } else {
            Ok(())
        }
    }
}
