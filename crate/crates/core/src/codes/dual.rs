// SPDX-License-Identifier: Apache-2.0

//! Dual vectors with prescribed support and low-degree functions vanishing at
//! a chosen point, both computed by explicit linear algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{rr_basis, CodeKind, CurveFunction, EvalCode};
use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::linalg::{self, Matrix};

/// A vector `w` with `<w, c> = 0` for every codeword `c` of `code`,
/// `w[target] != 0`, and `w[j] = 0` outside `helpers + {target}`.
///
/// Among such vectors the one returned has as few zeros on the helper set as
/// greedy passes and a seeded random search over the nullspace find; helpers
/// with `w[j] = 0` contribute nothing to a repair.
pub fn dual_support_vector(code: &EvalCode, target: usize, helpers: &[usize]) -> Result<Vec<Elem>> {
    let n = code.len();
    if target >= n || helpers.iter().any(|&j| j >= n || j == target) {
        return Err(Error::InvalidParameter("helper set must exclude the target and lie in range".into()));
    }
    let mut support = helpers.to_vec();
    support.push(target);
    support.sort_unstable();
    support.dedup();
    let f = code.field();
    let restricted = code.generator().select_columns(&support);
    let basis = linalg::nullspace(f, &restricted);
    let t = support.binary_search(&target).expect("target is in the support");

    let Some(first) = basis.iter().position(|v| !v[t].is_zero()) else {
        return Err(Error::NoDualVector(target));
    };
    let full_weight = support.len();
    let mut w = basis[first].clone();
    greedy_fill(f, &basis, t, &mut w);
    if weight(&w) < full_weight {
        // Random combinations reach full support with probability near
        // ((q-1)/q)^|support| each; the stream is fixed by the inputs.
        let mut rng = ChaCha8Rng::seed_from_u64(((target as u64) << 32) ^ support.len() as u64);
        for _ in 0..RANDOM_TRIES {
            let mut cand = vec![Elem::ZERO; w.len()];
            for b in &basis {
                let c = f.elem(rng.gen_range(0..f.order())).expect("in range");
                for (x, &y) in cand.iter_mut().zip(b) {
                    *x = f.mul_add(*x, c, y);
                }
            }
            if cand[t].is_zero() {
                continue;
            }
            greedy_fill(f, &basis, t, &mut cand);
            if weight(&cand) > weight(&w) {
                w = cand;
                if weight(&w) == full_weight {
                    break;
                }
            }
        }
    }

    let mut full = vec![Elem::ZERO; n];
    for (&pos, &v) in support.iter().zip(&w) {
        full[pos] = v;
    }
    Ok(full)
}

const RANDOM_TRIES: usize = 4096;

fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Adds multiples of basis vectors to `w` while that raises its weight,
/// never zeroing `w[t]`.
fn greedy_fill(f: &Field, basis: &[Vec<Elem>], t: usize, w: &mut [Elem]) {
    loop {
        let before = weight(w);
        for b in basis {
            if weight(w) == w.len() {
                return;
            }
            let mut best = (weight(w), Elem::ZERO);
            for c in f.elements().skip(1) {
                if f.mul_add(w[t], c, b[t]).is_zero() {
                    continue;
                }
                let cand = w.iter().zip(b).filter(|(&x, &y)| !f.mul_add(x, c, y).is_zero()).count();
                if cand > best.0 {
                    best = (cand, c);
                }
            }
            if !best.1.is_zero() {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = f.mul_add(*x, best.1, y);
                }
            }
        }
        if weight(w) == before {
            return;
        }
    }
}

/// A nonzero function of pole order at most `genus + 1` vanishing at a point,
/// with its values on the code's points.
#[derive(Debug, Clone)]
pub struct UnitFunction {
    pub function: CurveFunction,
    pub values: Vec<Elem>,
    /// Positions other than the target where the function also vanishes.
    pub extra_zeros: Vec<usize>,
}

/// Picks `h` in `L((genus + 1) P_inf)` with `h(P_target) = 0`: the first
/// nullspace vector of the single evaluation constraint.
pub fn unit_function_generic(code: &EvalCode, target: usize) -> Result<UnitFunction> {
    let CodeKind::Hermitian { r } = code.kind() else {
        return Err(Error::InvalidParameter("generic unit functions need a Hermitian code".into()));
    };
    if target >= code.len() {
        return Err(Error::InvalidParameter(format!("position {target} out of range")));
    }
    let f = code.field();
    let pole_bound = code.genus() + 1;
    let monomials = rr_basis(r, pole_bound);
    let at = code.points()[target];
    let row: Vec<Elem> = monomials.iter().map(|m| m.eval(f, at)).collect();
    let constraint = Matrix::from_rows(vec![row])?;
    let coeffs = linalg::nullspace(f, &constraint)
        .into_iter()
        .next()
        .ok_or(Error::NoUnitFunction(target))?;
    let pole_order = monomials
        .iter()
        .zip(&coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&m, _)| code.kind().weight(m))
        .max()
        .unwrap_or(0);
    let function = CurveFunction::new(monomials.into_iter().zip(coeffs).collect(), pole_order);
    let values: Vec<Elem> = code.points().iter().map(|&p| function.eval(f, p)).collect();
    let extra_zeros = (0..code.len())
        .filter(|&j| j != target && values[j].is_zero())
        .collect();
    Ok(UnitFunction { function, values, extra_zeros })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{HermitianCurve, Monomial};
    use crate::galois::FieldTower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn full_length_hermitian_dual_is_all_ones() {
        for r in [2u32, 3] {
            let curve = HermitianCurve::for_r(r).unwrap();
            let n = curve.points().len();
            let g = curve.genus();
            let aug = EvalCode::hermitian_prefix(&curve, n, n + 2 * g - 2).unwrap();
            let f = aug.field();
            for row in 0..aug.generator().rows() {
                assert!(f.sum(aug.generator().row(row).iter().copied()).is_zero());
            }
        }
    }

    #[test]
    fn rs_full_support_dual() {
        let tower = Arc::new(FieldTower::new(2, 3).unwrap());
        let code = EvalCode::reed_solomon_prefix(tower, 8, 7).unwrap();
        let helpers: Vec<usize> = (1..8).collect();
        let w = dual_support_vector(&code, 0, &helpers).unwrap();
        assert!(!w[0].is_zero());
        let g = code.generator();
        for row in 0..g.rows() {
            assert!(linalg::dot(code.field(), g.row(row), &w).is_zero());
        }
    }

    #[test]
    fn support_restricted_to_helpers() {
        let curve = HermitianCurve::for_r(3).unwrap();
        let code = EvalCode::hermitian_prefix(&curve, 27, 12).unwrap();
        let helpers = [1usize, 3, 4, 7, 9, 10, 12, 15, 16, 18, 20, 21, 22, 23, 25, 26];
        let w = dual_support_vector(&code, 5, &helpers).unwrap();
        assert!(!w[5].is_zero());
        for j in 0..27 {
            if j != 5 && !helpers.contains(&j) {
                assert!(w[j].is_zero());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let cw = code.random_codeword(&mut rng);
            assert!(linalg::dot(code.field(), &cw, &w).is_zero());
        }
    }

    #[test]
    fn too_few_helpers() {
        let tower = Arc::new(FieldTower::new(2, 3).unwrap());
        let code = EvalCode::reed_solomon_prefix(tower, 8, 4).unwrap();
        assert_eq!(dual_support_vector(&code, 0, &[1, 2, 3]), Err(Error::NoDualVector(0)));
    }

    #[test]
    fn r2_unit_function_is_vertical_line() {
        let curve = HermitianCurve::for_r(2).unwrap();
        let code = EvalCode::hermitian_prefix(&curve, 8, 3).unwrap();
        let f = code.field();
        for i in 0..8 {
            let u = unit_function_generic(&code, i).unwrap();
            let a = code.points()[i].x;
            // h = x - a_i
            let expected = vec![
                (Monomial { i: 0, j: 0 }, f.neg(a)),
                (Monomial { i: 1, j: 0 }, Elem::ONE),
            ];
            assert_eq!(u.function.terms(), expected.as_slice());
            assert!(u.values[i].is_zero());
            assert_eq!(u.extra_zeros.len(), 1);
        }
    }

    #[test]
    fn unit_function_zero_count_bounded_by_genus() {
        for r in [2u32, 3] {
            let curve = HermitianCurve::for_r(r).unwrap();
            let n = curve.points().len();
            let code = EvalCode::hermitian_prefix(&curve, n, 4).unwrap();
            for i in 0..n {
                let u = unit_function_generic(&code, i).unwrap();
                assert!(u.values.iter().any(|v| !v.is_zero()));
                assert!(u.values[i].is_zero());
                assert!(u.extra_zeros.len() <= curve.genus());
            }
        }
    }
}
