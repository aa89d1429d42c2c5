// SPDX-License-Identifier: Apache-2.0

//! The extension GF(q) / GF(Q) with q = Q^t, together with a fixed primal
//! basis of GF(q) over GF(Q) and its trace-dual basis.
//!
//! GF(Q) is usually the prime field, but any subfield works: repair
//! sub-symbols are elements of GF(Q), so GF(64) over GF(8) downloads 3-bit
//! sub-symbols.

use crate::error::{Error, Result};
use crate::galois::field::{prime_power, Elem, Field};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone)]
pub struct FieldTower {
    field: Field,
    base_degree: usize,
    base_order: u32,
    degree: usize,
    base_elements: Vec<Elem>,
    primal: Vec<Elem>,
    dual: Vec<Elem>,
}

impl FieldTower {
    /// GF(base_order^degree) over GF(base_order), with the default modulus
    /// and the polynomial basis `1, x, .., x^(degree-1)` as primal basis.
    pub fn new(base_order: u32, degree: usize) -> Result<Self> {
        let (p, a) = prime_power(base_order)
            .ok_or_else(|| Error::UnsupportedField(format!("{base_order} is not a prime power")))?;
        if degree == 0 {
            return Err(Error::UnsupportedField("extension degree must be at least 1".into()));
        }
        let field = Field::new(p, a * degree)?;
        Self::over_field(field, a)
    }

    /// Views `field` as an extension of its subfield of degree `base_degree`
    /// over the prime field.
    pub fn over_field(field: Field, base_degree: usize) -> Result<Self> {
        if base_degree == 0 || !field.degree().is_multiple_of(base_degree) {
            return Err(Error::UnsupportedField(format!(
                "GF({}) has no subfield of degree {base_degree}",
                field.order()
            )));
        }
        let degree = field.degree() / base_degree;
        let base_order = field.characteristic().pow(base_degree as u32);
        let base_elements = if base_degree == 1 {
            (0..base_order).map(Elem).collect()
        } else {
            field
                .elements()
                .filter(|&x| field.pow(x, base_order as u64) == x)
                .collect()
        };
        let root = field.basis_root();
        let primal: Vec<Elem> = (0..degree).map(|k| field.pow(root, k as u64)).collect();
        let mut tower = FieldTower {
            field,
            base_degree,
            base_order,
            degree,
            base_elements,
            primal: Vec::new(),
            dual: Vec::new(),
        };
        tower.dual = tower.dual_basis(&primal)?;
        tower.primal = primal;
        Ok(tower)
    }

    /// Replaces the primal basis (and recomputes its dual).
    pub fn with_primal(mut self, primal: Vec<Elem>) -> Result<Self> {
        self.dual = self.dual_basis(&primal)?;
        self.primal = primal;
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Extension degree `t` of GF(q) over the base field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Order `Q` of the base field.
    pub fn base_order(&self) -> u32 {
        self.base_order
    }

    /// Degree of the base field over the prime field.
    pub fn base_degree(&self) -> usize {
        self.base_degree
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Bits carried by one base-field symbol, `log2 Q`.
    pub fn bits_per_subsymbol(&self) -> f64 {
        (self.base_order as f64).log2()
    }

    pub fn bits_per_symbol(&self) -> f64 {
        (self.order() as f64).log2()
    }

    pub fn primal(&self) -> &[Elem] {
        &self.primal
    }

    pub fn dual(&self) -> &[Elem] {
        &self.dual
    }

    /// Elements of the base field, in increasing packed order.
    pub fn base_elements(&self) -> &[Elem] {
        &self.base_elements
    }

    pub fn is_base(&self, x: Elem) -> bool {
        self.field.pow(x, self.base_order as u64) == x
    }

    /// Relative trace `x + x^Q + .. + x^(Q^(t-1))`.
    pub fn trace(&self, x: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.degree {
            acc = f.add(acc, y);
            y = f.pow(y, self.base_order as u64);
        }
        acc
    }

    /// Gram matrix `Tr(b_i b_j)`.
    pub fn gram(&self, basis: &[Elem]) -> Matrix {
        let f = &self.field;
        let rows = basis
            .iter()
            .map(|&a| basis.iter().map(|&b| self.trace(f.mul(a, b))).collect())
            .collect();
        Matrix::from_rows(rows).expect("square")
    }

    /// The basis `theta` with `Tr(primal_i theta_j) = [i == j]`.
    pub fn dual_basis(&self, primal: &[Elem]) -> Result<Vec<Elem>> {
        if primal.len() != self.degree {
            return Err(Error::WrongLength { expected: self.degree, got: primal.len() });
        }
        for &z in primal {
            self.field.check(z)?;
        }
        let f = &self.field;
        // The trace form is nondegenerate, so the Gram matrix is invertible
        // exactly when the input is a basis.
        let inv = linalg::invert(f, &self.gram(primal)).ok_or(Error::DependentBasis)?;
        Ok((0..self.degree)
            .map(|j| f.sum((0..self.degree).map(|k| f.mul(inv.get(j, k), primal[k]))))
            .collect())
    }

    /// Base-field coordinates `Tr(x zeta_j)`; `x` is their combination with
    /// the dual basis.
    pub fn coordinates(&self, x: Elem) -> Vec<Elem> {
        self.primal.iter().map(|&z| self.trace(self.field.mul(x, z))).collect()
    }

    /// Rebuilds `x = sum_j traces_j theta_j` from `traces_j = Tr(x zeta_j)`.
    pub fn trace_reconstruct(&self, traces: &[Elem]) -> Result<Elem> {
        if traces.len() != self.degree {
            return Err(Error::WrongLength { expected: self.degree, got: traces.len() });
        }
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (&tr, &theta) in traces.iter().zip(&self.dual) {
            f.check(tr)?;
            if !self.is_base(tr) {
                return Err(Error::NotInBaseField);
            }
            acc = f.mul_add(acc, tr, theta);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Frobenius sum written out directly, over the prime field.
    fn frob_trace(f: &Field, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..f.degree() {
            acc = f.add(acc, y);
            y = f.frobenius(y);
        }
        acc
    }

    #[test]
    fn gf4_trace_and_dual() {
        let tower = FieldTower::new(2, 2).unwrap();
        let g = Elem(2);
        assert_eq!(tower.trace(Elem::ZERO), Elem::ZERO);
        assert_eq!(tower.trace(g), Elem::ONE);
        assert_eq!(tower.primal(), &[Elem::ONE, g]);
        // {1, g} -> {g + 1, 1}
        assert_eq!(tower.dual(), &[Elem(3), Elem::ONE]);
        assert_eq!(tower.coordinates(g), vec![Elem::ONE, Elem::ONE]);
        assert_eq!(tower.trace_reconstruct(&[Elem::ONE, Elem::ONE]).unwrap(), g);
    }

    #[test]
    fn gf4_dual_matches_brute_force() {
        let tower = FieldTower::new(2, 2).unwrap();
        let f = tower.field();
        let primal = tower.primal().to_vec();
        let found: Vec<Vec<Elem>> = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| vec![a, b]))
            .filter(|cand| {
                (0..2).all(|i| {
                    (0..2).all(|j| {
                        let want = if i == j { Elem::ONE } else { Elem::ZERO };
                        frob_trace(f, f.mul(primal[i], cand[j])) == want
                    })
                })
            })
            .collect();
        assert_eq!(found, vec![tower.dual().to_vec()]);
    }

    #[test]
    fn trace_zero_count() {
        for (p, t) in [(2, 4), (3, 2), (5, 2), (2, 8)] {
            let tower = FieldTower::new(p, t).unwrap();
            let f = tower.field();
            let zeros = f.elements().filter(|&a| tower.trace(a).is_zero()).count();
            assert_eq!(zeros as u32, tower.order() / p);
            for a in f.elements() {
                assert_eq!(tower.trace(a), frob_trace(f, a));
            }
        }
    }

    #[test]
    fn biduality() {
        let tower = FieldTower::new(3, 3).unwrap();
        let dual = tower.dual().to_vec();
        assert_eq!(tower.dual_basis(&dual).unwrap(), tower.primal());
    }

    #[test]
    fn self_dual_iff_identity_gram() {
        let tower = FieldTower::new(2, 3).unwrap();
        let f = tower.field();
        let all: Vec<Elem> = f.elements().skip(1).collect();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    let basis = vec![a, b, c];
                    let Ok(dual) = tower.dual_basis(&basis) else { continue };
                    let identity = tower.gram(&basis) == Matrix::identity(3);
                    assert_eq!(dual == basis, identity);
                }
            }
        }
    }

    #[test]
    fn dependent_basis_rejected() {
        let tower = FieldTower::new(2, 3).unwrap();
        assert_eq!(tower.dual_basis(&[Elem(1), Elem(2), Elem(3)]), Err(Error::DependentBasis));
        assert!(tower.dual_basis(&[Elem(1)]).is_err());
        assert!(tower.trace_reconstruct(&[Elem(1)]).is_err());
    }

    #[test]
    fn subfield_tower() {
        let tower = FieldTower::new(8, 2).unwrap();
        assert_eq!(tower.order(), 64);
        assert_eq!(tower.base_elements().len(), 8);
        assert!((tower.bits_per_subsymbol() - 3.0).abs() < 1e-12);
        let f = tower.field();
        for x in f.elements() {
            assert!(tower.is_base(tower.trace(x)));
            assert_eq!(tower.trace_reconstruct(&tower.coordinates(x)).unwrap(), x);
        }
        assert_eq!(tower.trace_reconstruct(&[Elem(2), Elem(0)]), Err(Error::NotInBaseField));
    }
}
