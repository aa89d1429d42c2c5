// SPDX-License-Identifier: Apache-2.0

//! The Hermitian curve `y^r + y = x^(r+1)` over GF(r^2).

use std::sync::Arc;

use crate::codes::code::{CurveFunction, Monomial, Point};
use crate::error::{Error, Result};
use crate::galois::{prime_power, Elem, Field, FieldTower};

#[derive(Debug, Clone)]
pub struct HermitianCurve {
    tower: Arc<FieldTower>,
    r: u32,
    points: Vec<Point>,
}

impl HermitianCurve {
    /// The curve over the field of `tower`, which must have order `r^2`.
    pub fn new(tower: Arc<FieldTower>, r: u32) -> Result<Self> {
        if r < 2 || (r as u64) * (r as u64) != tower.order() as u64 {
            return Err(Error::InvalidCode(format!(
                "Hermitian curve with r = {r} needs a field of order r^2, got {}",
                tower.order()
            )));
        }
        let f = tower.field();
        let r64 = r as u64;
        // fibres[v] = every y with y^r + y = v, ascending
        let mut fibres: Vec<Vec<Elem>> = vec![Vec::new(); tower.order() as usize];
        for y in f.elements() {
            fibres[f.add(f.pow(y, r64), y).value() as usize].push(y);
        }
        let mut points = Vec::with_capacity((r as usize).pow(3));
        for x in f.elements() {
            let rhs = f.pow(x, r64 + 1);
            points.extend(fibres[rhs.value() as usize].iter().map(|&y| Point::affine(x, y)));
        }
        Ok(HermitianCurve { tower, r, points })
    }

    /// The curve over GF(r^2) viewed over its prime field.
    pub fn for_r(r: u32) -> Result<Self> {
        let (p, a) = prime_power(r)
            .ok_or_else(|| Error::InvalidCode(format!("r = {r} is not a prime power")))?;
        let tower = FieldTower::new(p, 2 * a)?;
        Self::new(Arc::new(tower), r)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn genus(&self) -> usize {
        (self.r * (self.r - 1) / 2) as usize
    }

    /// The `r^3` affine rational points, ordered by `(x, y)` packed values.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: Point) -> bool {
        let f = self.tower.field();
        let r = self.r as u64;
        f.contains(p.x) && f.contains(p.y) && f.add(f.pow(p.y, r), p.y) == f.pow(p.x, r + 1)
    }

    /// The tangent line at `p`, whose divisor is `(r+1)(p - P_inf)`.
    pub fn vanishing_line(&self, p: Point) -> Result<VanishingLine> {
        if !self.contains(p) {
            return Err(Error::NotOnCurve { x: p.x.value(), y: p.y.value() });
        }
        Ok(VanishingLine::through(self.tower.field(), self.r, p))
    }
}

/// `h = y + alpha x - gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VanishingLine {
    pub alpha: Elem,
    pub gamma: Elem,
    r: u32,
}

impl VanishingLine {
    /// The line through a point already known to lie on the curve.
    pub(crate) fn through(f: &Field, r: u32, p: Point) -> Self {
        let r64 = r as u64;
        // Frobenius is bijective, so a = -alpha^r has the solution (-a)^r.
        let alpha = f.pow(f.neg(p.x), r64);
        let gamma = f.sub(p.y, f.pow(alpha, r64 + 1));
        VanishingLine { alpha, gamma, r }
    }

    pub fn eval(&self, f: &Field, p: Point) -> Elem {
        f.sub(f.add(p.y, f.mul(self.alpha, p.x)), self.gamma)
    }

    pub fn function(&self, f: &Field) -> CurveFunction {
        CurveFunction::new(
            vec![
                (Monomial { i: 0, j: 0 }, f.neg(self.gamma)),
                (Monomial { i: 1, j: 0 }, self.alpha),
                (Monomial { i: 0, j: 1 }, Elem::ONE),
            ],
            (self.r + 1) as usize,
        )
    }
}

/// Monomials `x^i y^j` with `i r + j (r+1) <= s` and `j < r`, sorted by pole
/// order (distinct for `j < r`).
pub fn rr_basis(r: u32, s: usize) -> Vec<Monomial> {
    let s = s as u64;
    let (r64, r1) = (r as u64, r as u64 + 1);
    let mut out: Vec<Monomial> = (0..r as u64)
        .take_while(|&j| j * r1 <= s)
        .flat_map(|j| (0..=(s - j * r1) / r64).map(move |i| Monomial { i: i as u32, j: j as u32 }))
        .collect();
    out.sort_by_key(|m| (m.i as u64 * r64 + m.j as u64 * r1, m.j));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_points() {
        let curve = HermitianCurve::for_r(2).unwrap();
        let (g, g1) = (Elem(2), Elem(3));
        let expected = vec![
            Point::affine(Elem(0), Elem(0)),
            Point::affine(Elem(0), Elem(1)),
            Point::affine(Elem(1), g),
            Point::affine(Elem(1), g1),
            Point::affine(g, g),
            Point::affine(g, g1),
            Point::affine(g1, g),
            Point::affine(g1, g1),
        ];
        assert_eq!(curve.points(), expected.as_slice());
        assert_eq!(curve.genus(), 1);
    }

    #[test]
    fn point_counts() {
        for r in [2u32, 3, 4, 8] {
            let curve = HermitianCurve::for_r(r).unwrap();
            assert_eq!(curve.points().len(), (r as usize).pow(3));
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(HermitianCurve::for_r(6).is_err());
        assert!(HermitianCurve::for_r(512).is_err());
        let tower = Arc::new(FieldTower::new(2, 3).unwrap());
        assert!(HermitianCurve::new(tower, 2).is_err());
    }

    #[test]
    fn rr_basis_examples() {
        assert_eq!(rr_basis(2, 0), vec![Monomial { i: 0, j: 0 }]);
        let m = |i, j| Monomial { i, j };
        assert_eq!(rr_basis(2, 5), vec![m(0, 0), m(1, 0), m(0, 1), m(2, 0), m(1, 1)]);
        assert_eq!(rr_basis(8, 475).len(), 448);
        for r in [2u32, 3, 4] {
            let genus = (r * (r - 1) / 2) as usize;
            for s in (2 * genus).saturating_sub(1)..60 {
                assert_eq!(rr_basis(r, s).len(), s - genus + 1, "r={r} s={s}");
            }
        }
    }

    #[test]
    fn vanishing_line_example() {
        let curve = HermitianCurve::for_r(2).unwrap();
        let f = curve.tower().field();
        let p = Point::affine(Elem(1), Elem(2));
        let line = curve.vanishing_line(p).unwrap();
        assert_eq!(line.alpha, Elem(1));
        assert_eq!(line.gamma, Elem(3));
        let h = line.function(f);
        let zeros: Vec<Point> =
            curve.points().iter().copied().filter(|&q| h.eval(f, q).is_zero()).collect();
        assert_eq!(zeros, vec![p]);
    }

    #[test]
    fn vanishing_lines_vanish_once() {
        for r in [2u32, 3, 4] {
            let curve = HermitianCurve::for_r(r).unwrap();
            let f = curve.tower().field();
            let rr = r as u64;
            for &p in curve.points() {
                let line = curve.vanishing_line(p).unwrap();
                // gamma lies in Z_{-alpha^(r+1)}
                let lhs = f.add(f.pow(line.gamma, rr), line.gamma);
                assert_eq!(lhs, f.neg(f.pow(line.alpha, rr + 1)));
                let h = line.function(f);
                let zeros = curve.points().iter().filter(|&&q| h.eval(f, q).is_zero()).count();
                assert_eq!(zeros, 1);
                assert!(h.eval(f, p).is_zero());
            }
        }
    }

    #[test]
    fn off_curve_point_rejected() {
        let curve = HermitianCurve::for_r(2).unwrap();
        assert!(curve.vanishing_line(Point::affine(Elem(1), Elem(0))).is_err());
    }
}
