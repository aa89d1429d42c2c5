// SPDX-License-Identifier: Apache-2.0

//! Trace-based repair of Reed-Solomon and Hermitian codes.
//!
//! A failed node storing one symbol of GF(q) is rebuilt from base-field
//! sub-symbols downloaded from helper nodes. The crate is layered bottom-up:
//!
//! - [`galois`]: fields GF(q) over a subfield GF(Q), relative traces, dual
//!   bases and subspace polynomials.
//! - [`linalg`]: exact elimination, rank, nullspace and solving.
//! - [`codes`]: Reed-Solomon and Hermitian evaluation codes, erasure decoding
//!   and dual vectors with prescribed support.
//! - [`repair`]: repair schemes, helper responses and reconstruction.
//! - [`params`]: closed-form bandwidth and storage bounds.
//! - [`sim`]: an in-memory storage cluster and experiment driver.

pub mod codes;
pub mod error;
pub mod galois;
pub mod linalg;
pub mod params;
pub mod repair;
pub mod sim;

pub use error::{Error, Result};
