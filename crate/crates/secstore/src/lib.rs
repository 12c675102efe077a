//! Collusion-secure distributed storage codes with small access complexity.
//!
//! A scheme built here spreads `k_d` file symbols over `n` storage nodes so
//! that no coalition of up to `t` nodes learns anything about the files,
//! every file is recoverable by reading at most `r` nodes, and any
//! `n - d + 1` surviving nodes determine everything. The crate provides:
//!
//! - exact prime-field arithmetic and dense linear algebra ([`gf`], [`matrix`]);
//! - the code families behind the schemes: Reed-Solomon/Vandermonde and
//!   binary Reed-Muller codes, duals, and exhaustive distance scans
//!   ([`codes`]);
//! - the scheme constructions with explicit access structures, load
//!   balancing, and a seeded random search, plus the exhaustive verifier
//!   ([`secure`]);
//! - capacity, classical converse bounds, and the asymptotic rate
//!   envelopes ([`bounds`]);
//! - an operational simulator deciding secrecy, recovery and erasure
//!   tolerance by exact enumeration ([`sim`]);
//! - a plain-text code file format ([`codefile`]) shared with the
//!   companion command-line tool.
//!
//! Each major capability has a runnable example under `examples/`; start
//! with `grs_scheme` and `balanced_access`.

pub mod bounds;
pub mod codefile;
pub mod codes;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod report;
pub mod secure;
pub mod sim;

pub(crate) mod rng;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use matrix::Matrix;
pub use codes::LinearCode;
pub use report::VerificationReport;
pub use secure::SecureStorageCode;
