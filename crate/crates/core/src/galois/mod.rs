// SPDX-License-Identifier: Apache-2.0

//! Finite fields, relative traces, dual bases and subspace polynomials.

mod field;
mod linearized;
mod tower;

pub use field::{prime_power, Elem, Field, FieldOp, MAX_ORDER};
pub use linearized::LinearizedMap;
pub use tower::FieldTower;
