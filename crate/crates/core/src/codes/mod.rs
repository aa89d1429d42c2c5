// SPDX-License-Identifier: Apache-2.0

//! Reed-Solomon and Hermitian one-point evaluation codes.

mod code;
mod decode;
mod descriptor;
mod dual;
mod hermitian;

pub use code::{CodeKind, CurveFunction, EvalCode, Monomial, Point};
pub use decode::{erasure_decode, ErasureDecoder};
pub use descriptor::{CodeDescriptor, PointDigits};
pub use dual::{dual_support_vector, unit_function_generic, UnitFunction};
pub use hermitian::{rr_basis, HermitianCurve, VanishingLine};
