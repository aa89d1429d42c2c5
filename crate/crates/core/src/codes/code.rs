// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;

use crate::codes::hermitian::{rr_basis, HermitianCurve};
use crate::error::{Error, Result};
use crate::galois::{Elem, Field, FieldTower};
use crate::linalg::{self, Matrix};

/// An evaluation point. Reed-Solomon points use only `x` (with `y = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Elem,
    pub y: Elem,
}

impl Point {
    pub fn affine(x: Elem, y: Elem) -> Self {
        Point { x, y }
    }

    pub fn line(x: Elem) -> Self {
        Point { x, y: Elem::ZERO }
    }
}

/// The monomial `x^i y^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn eval(self, f: &Field, p: Point) -> Elem {
        f.mul(f.pow(p.x, self.i as u64), f.pow(p.y, self.j as u64))
    }
}

/// A function given as a combination of monomials, with its pole order at
/// infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFunction {
    terms: Vec<(Monomial, Elem)>,
    pole_order: usize,
}

impl CurveFunction {
    pub fn new(terms: Vec<(Monomial, Elem)>, pole_order: usize) -> Self {
        CurveFunction { terms, pole_order }
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    pub fn eval(&self, f: &Field, p: Point) -> Elem {
        self.terms
            .iter()
            .fold(Elem::ZERO, |acc, &(m, c)| f.mul_add(acc, c, m.eval(f, p)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    ReedSolomon,
    Hermitian { r: u32 },
}

impl CodeKind {
    /// Pole order at infinity of `x^i y^j`.
    pub fn weight(self, m: Monomial) -> usize {
        match self {
            CodeKind::ReedSolomon => m.i as usize,
            CodeKind::Hermitian { r } => (m.i * r + m.j * (r + 1)) as usize,
        }
    }
}

/// A one-point evaluation code: the values of every function with pole order
/// at most `pole_degree` at a list of points.
#[derive(Debug, Clone)]
pub struct EvalCode {
    kind: CodeKind,
    tower: Arc<FieldTower>,
    points: Vec<Point>,
    pole_degree: usize,
    monomials: Vec<Monomial>,
    generator: Matrix,
    basis_rows: Vec<usize>,
    genus: usize,
}

impl EvalCode {
    /// Reed-Solomon code of dimension `k` on distinct points.
    pub fn reed_solomon(tower: Arc<FieldTower>, points: Vec<Elem>, k: usize) -> Result<Self> {
        let n = points.len();
        if k == 0 {
            return Err(Error::InvalidCode("dimension must be positive".into()));
        }
        if k > n {
            return Err(Error::InvalidCode(format!("dimension {k} exceeds length {n}")));
        }
        if n as u64 > tower.order() as u64 {
            return Err(Error::InvalidCode(format!("length {n} exceeds field order")));
        }
        for &a in &points {
            tower.field().check(a)?;
        }
        let mut seen = HashSet::new();
        if let Some(dup) = points.iter().find(|&&a| !seen.insert(a)) {
            return Err(Error::InvalidCode(format!("duplicate evaluation point {}", dup.value())));
        }
        let points = points.into_iter().map(Point::line).collect();
        Ok(Self::build(CodeKind::ReedSolomon, tower, points, k - 1, 0))
    }

    /// Reed-Solomon code on the first `n` field elements (in packed order).
    pub fn reed_solomon_prefix(tower: Arc<FieldTower>, n: usize, k: usize) -> Result<Self> {
        if n as u64 > tower.order() as u64 {
            return Err(Error::InvalidCode(format!("length {n} exceeds field order")));
        }
        let points = (0..n as u32).map(Elem).collect();
        Self::reed_solomon(tower, points, k)
    }

    /// Hermitian code `C_L(s P_inf)` on a subset of the affine curve points.
    pub fn hermitian(curve: &HermitianCurve, points: Vec<Point>, s: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCode("no evaluation points".into()));
        }
        for &p in &points {
            if !curve.contains(p) {
                return Err(Error::NotOnCurve { x: p.x.value(), y: p.y.value() });
            }
        }
        let mut seen = HashSet::new();
        if points.iter().any(|p| !seen.insert(*p)) {
            return Err(Error::InvalidCode("duplicate curve point".into()));
        }
        let kind = CodeKind::Hermitian { r: curve.r() };
        Ok(Self::build(kind, curve.tower().clone(), points, s, curve.genus()))
    }

    /// Hermitian code on the first `n` points of the curve's ordering.
    pub fn hermitian_prefix(curve: &HermitianCurve, n: usize, s: usize) -> Result<Self> {
        if n > curve.points().len() {
            return Err(Error::InvalidCode(format!(
                "length {n} exceeds the {} affine points",
                curve.points().len()
            )));
        }
        Self::hermitian(curve, curve.points()[..n].to_vec(), s)
    }

    /// Same points and family, different pole degree. Used for the product
    /// code that holds `h * f`.
    pub fn with_pole_degree(&self, s: usize) -> Self {
        Self::build(self.kind, self.tower.clone(), self.points.clone(), s, self.genus)
    }

    fn build(kind: CodeKind, tower: Arc<FieldTower>, points: Vec<Point>, s: usize, genus: usize) -> Self {
        let monomials = match kind {
            CodeKind::ReedSolomon => (0..=s as u32).map(|i| Monomial { i, j: 0 }).collect(),
            CodeKind::Hermitian { r } => rr_basis(r, s),
        };
        let f = tower.field();
        let rows = monomials
            .iter()
            .map(|m| points.iter().map(|&p| m.eval(f, p)).collect())
            .collect();
        let generator = Matrix::from_rows(rows).expect("rectangular");
        // A nonzero function with pole order at most s has at most s zeros,
        // so evaluation is injective when s < n.
        let basis_rows = if s < points.len() {
            (0..monomials.len()).collect()
        } else {
            let mut t = generator.transpose();
            linalg::rref(f, &mut t)
        };
        EvalCode { kind, tower, points, pole_degree: s, monomials, generator, basis_rows, genus }
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn field(&self) -> &Field {
        self.tower.field()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn pole_degree(&self) -> usize {
        self.pole_degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Dimension of the code (rank of the generator matrix).
    pub fn dimension(&self) -> usize {
        self.basis_rows.len()
    }

    /// Indices of generator rows forming a basis of the code.
    pub fn basis_rows(&self) -> &[usize] {
        &self.basis_rows
    }

    /// Number of coordinates that always determine a codeword (`k` for
    /// Reed-Solomon, `s + 1` for Hermitian codes).
    pub fn determination_threshold(&self) -> usize {
        self.pole_degree + 1
    }

    /// Evaluates the function `sum message_k monomial_k` at every point.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.monomials.len() {
            return Err(Error::WrongLength { expected: self.monomials.len(), got: message.len() });
        }
        for &m in message {
            self.field().check(m)?;
        }
        Ok(self.generator.vec_mul(self.field(), message))
    }

    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        let q = self.tower.order();
        (0..self.monomials.len()).map(|_| Elem(rng.gen_range(0..q))).collect()
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        let msg = self.random_message(rng);
        self.generator.vec_mul(self.field(), &msg)
    }

    /// Membership test by rank (intended for small codes and tests).
    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.len() {
            return false;
        }
        let g = self.generator.select_rows(&self.basis_rows);
        linalg::solve(self.field(), &g.transpose(), word)
            .map(|s| s.is_some())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(2, 2).unwrap())
    }

    #[test]
    fn rs_example_over_gf4() {
        let code = EvalCode::reed_solomon_prefix(gf4(), 4, 2).unwrap();
        let g = Elem(2);
        // f(x) = g x
        let cw = code.encode(&[Elem::ZERO, g]).unwrap();
        assert_eq!(cw, vec![Elem::ZERO, g, Elem(3), Elem::ONE]);
        let ones = code.encode(&[Elem::ONE, Elem::ZERO]).unwrap();
        assert!(ones.iter().all(|&v| v == Elem::ONE));
        assert!(code.encode(&[Elem::ZERO, Elem::ZERO]).unwrap().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn rs_rejects_bad_parameters() {
        assert!(EvalCode::reed_solomon(gf4(), vec![Elem(1), Elem(1)], 1).is_err());
        assert!(EvalCode::reed_solomon_prefix(gf4(), 4, 0).is_err());
        assert!(EvalCode::reed_solomon_prefix(gf4(), 4, 5).is_err());
        assert!(EvalCode::reed_solomon_prefix(gf4(), 5, 2).is_err());
    }

    #[test]
    fn hermitian_x_codeword() {
        let curve = HermitianCurve::for_r(2).unwrap();
        let code = EvalCode::hermitian_prefix(&curve, 8, 5).unwrap();
        assert_eq!(code.dimension(), 5);
        let pos = code.monomials().iter().position(|m| *m == Monomial { i: 1, j: 0 }).unwrap();
        let mut msg = vec![Elem::ZERO; 5];
        msg[pos] = Elem::ONE;
        let cw = code.encode(&msg).unwrap();
        let xs: Vec<Elem> = curve.points().iter().map(|p| p.x).collect();
        assert_eq!(cw, xs);
    }

    #[test]
    fn encode_is_linear() {
        let curve = HermitianCurve::for_r(3).unwrap();
        let code = EvalCode::hermitian_prefix(&curve, 27, 9).unwrap();
        let f = code.field();
        let mut rng = rand::thread_rng();
        let a = code.random_message(&mut rng);
        let b = code.random_message(&mut rng);
        let sum: Vec<Elem> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
        let ca = code.encode(&a).unwrap();
        let cb = code.encode(&b).unwrap();
        let cs = code.encode(&sum).unwrap();
        for k in 0..code.len() {
            assert_eq!(cs[k], f.add(ca[k], cb[k]));
        }
        assert!(code.contains(&cs));
    }

    #[test]
    fn oversized_pole_degree_has_smaller_dimension() {
        let curve = HermitianCurve::for_r(2).unwrap();
        let code = EvalCode::hermitian_prefix(&curve, 8, 8).unwrap();
        // L(8 P_inf) has dimension 8; the kernel contains x^4 - x.
        assert_eq!(code.monomials().len(), 8);
        assert_eq!(code.dimension(), 7);
    }
}
