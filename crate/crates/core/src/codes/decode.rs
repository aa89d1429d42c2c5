// SPDX-License-Identifier: Apache-2.0

//! Erasure decoding: recover a codeword from a subset of its coordinates by
//! solving the generator system on the known columns.

use crate::codes::EvalCode;
use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::linalg::{self, Matrix};

/// Decoder prepared for a fixed set of known positions, so that many
/// codewords can be decoded for the price of one elimination.
#[derive(Debug, Clone)]
pub struct ErasureDecoder<'a> {
    code: &'a EvalCode,
    positions: Vec<usize>,
    /// Indices into `positions` of an information set.
    info: Vec<usize>,
    /// Inverse of the generator restricted to the information set.
    inverse: Matrix,
    basis: Matrix,
}

impl<'a> ErasureDecoder<'a> {
    pub fn new(code: &'a EvalCode, positions: &[usize]) -> Result<Self> {
        let mut seen = vec![false; code.len()];
        for &p in positions {
            if p >= code.len() {
                return Err(Error::InvalidParameter(format!("position {p} out of range")));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(format!("position {p} given twice")));
            }
        }
        let f = code.field();
        let basis = code.generator().select_rows(code.basis_rows());
        let k = basis.rows();
        let mut restricted = basis.select_columns(positions);
        let info = linalg::rref(f, &mut restricted);
        if info.len() < k {
            return Err(Error::Underdetermined { rank: info.len(), needed: k });
        }
        let square = basis.select_columns(&info.iter().map(|&c| positions[c]).collect::<Vec<_>>());
        let inverse = linalg::invert(f, &square).expect("information set is invertible");
        Ok(ErasureDecoder { code, positions: positions.to_vec(), info, inverse, basis })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// `values[k]` is the symbol at `positions()[k]`.
    pub fn decode(&self, values: &[Elem]) -> Result<Vec<Elem>> {
        if values.len() != self.positions.len() {
            return Err(Error::WrongLength { expected: self.positions.len(), got: values.len() });
        }
        let f = self.code.field();
        for &v in values {
            f.check(v)?;
        }
        let info_values: Vec<Elem> = self.info.iter().map(|&k| values[k]).collect();
        let message = self.inverse.vec_mul(f, &info_values);
        let codeword = self.basis.vec_mul(f, &message);
        if self.positions.iter().zip(values).any(|(&p, &v)| codeword[p] != v) {
            return Err(Error::Inconsistent);
        }
        Ok(codeword)
    }
}

/// Recovers the unique codeword agreeing with `known`.
pub fn erasure_decode(code: &EvalCode, known: &[(usize, Elem)]) -> Result<Vec<Elem>> {
    let positions: Vec<usize> = known.iter().map(|&(p, _)| p).collect();
    let values: Vec<Elem> = known.iter().map(|&(_, v)| v).collect();
    ErasureDecoder::new(code, &positions)?.decode(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::HermitianCurve;
    use crate::galois::FieldTower;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn rs_any_two_coordinates() {
        let code = EvalCode::reed_solomon_prefix(Arc::new(FieldTower::new(2, 2).unwrap()), 4, 2).unwrap();
        let cw = code.encode(&[Elem::ZERO, Elem(2)]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    let out = erasure_decode(&code, &[(a, cw[a]), (b, cw[b])]).unwrap();
                    assert_eq!(out, cw);
                }
            }
        }
        let full: Vec<(usize, Elem)> = cw.iter().copied().enumerate().collect();
        assert_eq!(erasure_decode(&code, &full).unwrap(), cw);
    }

    #[test]
    fn hermitian_six_of_eight() {
        let curve = HermitianCurve::for_r(2).unwrap();
        let code = EvalCode::hermitian_prefix(&curve, 8, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut idx: Vec<usize> = (0..8).collect();
        for _ in 0..100 {
            let cw = code.random_codeword(&mut rng);
            idx.shuffle(&mut rng);
            let known: Vec<(usize, Elem)> = idx[..6].iter().map(|&p| (p, cw[p])).collect();
            assert_eq!(erasure_decode(&code, &known).unwrap(), cw);
        }
    }

    #[test]
    fn distinguishes_failures() {
        let code = EvalCode::reed_solomon_prefix(Arc::new(FieldTower::new(2, 3).unwrap()), 6, 3).unwrap();
        let cw = code.encode(&[Elem(1), Elem(2), Elem(3)]).unwrap();
        let few = [(0, cw[0]), (1, cw[1])];
        assert!(matches!(erasure_decode(&code, &few), Err(Error::Underdetermined { rank: 2, needed: 3 })));
        let mut bad: Vec<(usize, Elem)> = (0..4).map(|p| (p, cw[p])).collect();
        bad[3].1 = code.field().add(bad[3].1, Elem::ONE);
        assert_eq!(erasure_decode(&code, &bad), Err(Error::Inconsistent));
        assert!(erasure_decode(&code, &[(0, cw[0]), (0, cw[0]), (1, cw[1])]).is_err());
    }
}
