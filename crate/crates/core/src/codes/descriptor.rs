// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::{CodeKind, EvalCode, HermitianCurve, Point};
use crate::error::{Error, Result};
use crate::galois::{Field, FieldTower};

/// Digit vectors (prime-field digits, least significant first) of a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDigits {
    pub x: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<u32>>,
}

/// JSON form of an [`EvalCode`].
///
/// `p` is the order of the base field (a prime power) and `t` the extension
/// degree over it, so the code alphabet has `p^t` elements. `modulus` is the
/// defining polynomial of the alphabet over its prime field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub kind: String,
    pub p: u32,
    pub t: usize,
    pub modulus: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub s: usize,
    pub points: Vec<PointDigits>,
    pub monomials: Vec<[u32; 2]>,
}

impl EvalCode {
    pub fn descriptor(&self) -> CodeDescriptor {
        let f = self.field();
        let tower = self.tower();
        let (kind, r) = match self.kind() {
            CodeKind::ReedSolomon => ("rs", None),
            CodeKind::Hermitian { r } => ("hermitian", Some(r)),
        };
        let points = self
            .points()
            .iter()
            .map(|pt| PointDigits {
                x: f.digits(pt.x),
                y: r.map(|_| f.digits(pt.y)),
            })
            .collect();
        CodeDescriptor {
            kind: kind.to_string(),
            p: tower.base_order(),
            t: tower.degree(),
            modulus: f.modulus().to_vec(),
            r,
            s: self.pole_degree(),
            points,
            monomials: self.monomials().iter().map(|m| [m.i, m.j]).collect(),
        }
    }

    pub fn from_descriptor(desc: &CodeDescriptor) -> Result<Self> {
        let tower = Arc::new(FieldTower::new(desc.p, desc.t)?);
        let f = tower.field();
        if f.modulus() != desc.modulus.as_slice() {
            return Err(Error::InvalidCode(format!(
                "modulus {:?} differs from the built-in {:?}",
                desc.modulus,
                f.modulus()
            )));
        }
        let code = match desc.kind.as_str() {
            "rs" => {
                let xs = desc
                    .points
                    .iter()
                    .map(|pt| f.from_digits(&pt.x))
                    .collect::<Result<Vec<_>>>()?;
                Self::reed_solomon(tower.clone(), xs, desc.s + 1)?
            }
            "hermitian" => {
                let r = desc
                    .r
                    .ok_or_else(|| Error::InvalidCode("Hermitian code without r".into()))?;
                let curve = HermitianCurve::new(tower.clone(), r)?;
                let points = desc
                    .points
                    .iter()
                    .map(|pt| point_from_digits(f, pt))
                    .collect::<Result<Vec<_>>>()?;
                Self::hermitian(&curve, points, desc.s)?
            }
            other => return Err(Error::InvalidCode(format!("unknown code kind {other:?}"))),
        };
        let monomials: Vec<[u32; 2]> = code.monomials().iter().map(|m| [m.i, m.j]).collect();
        if monomials != desc.monomials {
            return Err(Error::InvalidCode("monomial list does not match the pole degree".into()));
        }
        Ok(code)
    }
}

fn point_from_digits(f: &Field, pt: &PointDigits) -> Result<Point> {
    let y = pt
        .y
        .as_ref()
        .ok_or_else(|| Error::InvalidCode("curve point without y".into()))?;
    Ok(Point::affine(f.from_digits(&pt.x)?, f.from_digits(y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        let curve = HermitianCurve::for_r(3).unwrap();
        let code = EvalCode::hermitian_prefix(&curve, 20, 7).unwrap();
        let json = serde_json::to_string(&code.descriptor()).unwrap();
        let back: CodeDescriptor = serde_json::from_str(&json).unwrap();
        let rebuilt = EvalCode::from_descriptor(&back).unwrap();
        assert_eq!(rebuilt.points(), code.points());
        assert_eq!(rebuilt.generator(), code.generator());
    }

    #[test]
    fn rs_descriptor_shape() {
        let tower = Arc::new(FieldTower::new(2, 2).unwrap());
        let code = EvalCode::reed_solomon_prefix(tower, 4, 2).unwrap();
        let desc = code.descriptor();
        assert_eq!(desc.kind, "rs");
        assert_eq!(desc.points[2], PointDigits { x: vec![0, 1], y: None });
        assert_eq!(desc.monomials, vec![[0, 0], [1, 0]]);
        let mut bad = desc.clone();
        bad.monomials.pop();
        assert!(EvalCode::from_descriptor(&bad).is_err());
        let mut off = desc;
        off.modulus = vec![1, 0, 1];
        assert!(EvalCode::from_descriptor(&off).is_err());
    }
}
