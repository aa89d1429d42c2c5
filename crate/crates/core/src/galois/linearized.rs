// SPDX-License-Identifier: Apache-2.0

//! Subspace polynomials `L_V(x) = prod_{a in V} (x - a)` for a base-field
//! subspace `V` of GF(q).

use crate::error::{Error, Result};
use crate::galois::{Elem, Field, FieldTower};
use crate::linalg::rank_over_base;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedMap {
    basis: Vec<Elem>,
    kernel: Vec<Elem>,
    constant: Elem,
}

impl LinearizedMap {
    /// Builds `L_V` for `V = span(basis)` over the tower's base field.
    pub fn new(tower: &FieldTower, basis: Vec<Elem>) -> Result<Self> {
        let f = tower.field();
        for &b in &basis {
            f.check(b)?;
        }
        if basis.len() > tower.degree() || rank_over_base(tower, &basis) != basis.len() {
            return Err(Error::DependentBasis);
        }
        let mut kernel = vec![Elem::ZERO];
        for &b in &basis {
            let mut next = Vec::with_capacity(kernel.len() * tower.base_order() as usize);
            for &c in tower.base_elements() {
                let shift = f.mul(c, b);
                next.extend(kernel.iter().map(|&v| f.add(v, shift)));
            }
            kernel = next;
        }
        kernel.sort();
        let constant = kernel
            .iter()
            .filter(|v| !v.is_zero())
            .fold(Elem::ONE, |acc, &a| f.mul(acc, f.neg(a)));
        Ok(LinearizedMap { basis, kernel, constant })
    }

    /// `V = span(dual_1, .., dual_l)`.
    pub fn from_dual_prefix(tower: &FieldTower, l: usize) -> Result<Self> {
        if l > tower.degree() {
            return Err(Error::InvalidParameter(format!(
                "subspace dimension {l} exceeds extension degree {}",
                tower.degree()
            )));
        }
        Self::new(tower, tower.dual()[..l].to_vec())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    /// All `Q^l` elements of `V`, sorted.
    pub fn kernel(&self) -> &[Elem] {
        &self.kernel
    }

    /// `c = prod_{0 != a in V} (-a)`, the value of `L_V(x) / x` at zero.
    pub fn constant(&self) -> Elem {
        self.constant
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.kernel.iter().fold(Elem::ONE, |acc, &a| f.mul(acc, f.sub(x, a)))
    }

    /// `L_V(x) / x`, continued to `x = 0` with the value `c`.
    pub fn eval_over_x(&self, f: &Field, x: Elem) -> Elem {
        self.kernel
            .iter()
            .filter(|a| !a.is_zero())
            .fold(Elem::ONE, |acc, &a| f.mul(acc, f.sub(x, a)))
    }
}
