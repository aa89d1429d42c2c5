// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{EvalCode, HermitianCurve};
use crate::galois::FieldTower;
use crate::repair::{SchemeOptions, Variant};
use crate::sim::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    Rs,
    Hermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HelperPolicy {
    /// Every other node.
    #[default]
    Full,
    /// `d` other nodes chosen uniformly at random.
    RandomD,
}

/// Experiment description, read from JSON.
///
/// `p` is the order of the base field (a prime power) and `t` the extension
/// degree, so symbols live in GF(p^t).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub kind: CodeFamily,
    pub p: u32,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    /// Pole degree; for Reed-Solomon codes `k = s + 1` may be given instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Code length; defaults to every available point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub l: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub helpers: HelperPolicy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

fn default_trials() -> usize {
    1
}

impl SimConfig {
    pub fn load(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| SimError::Config(format!("{}: {e}", path.display())))
    }

    pub fn build_code(&self) -> Result<EvalCode, SimError> {
        let tower = Arc::new(FieldTower::new(self.p, self.t)?);
        let code = match self.kind {
            CodeFamily::Rs => {
                let k = match (self.k, self.s) {
                    (Some(k), None) => k,
                    (None, Some(s)) => s + 1,
                    (Some(k), Some(s)) if k == s + 1 => k,
                    (Some(_), Some(_)) => return Err(SimError::Config("k and s disagree (k = s + 1)".into())),
                    (None, None) => return Err(SimError::Config("Reed-Solomon config needs k or s".into())),
                };
                let n = self.n.unwrap_or(tower.order() as usize);
                EvalCode::reed_solomon_prefix(tower, n, k)?
            }
            CodeFamily::Hermitian => {
                let r = self.r.ok_or_else(|| SimError::Config("Hermitian config needs r".into()))?;
                let s = self.s.ok_or_else(|| SimError::Config("Hermitian config needs s".into()))?;
                if self.k.is_some() {
                    return Err(SimError::Config("Hermitian config takes s, not k".into()));
                }
                let curve = HermitianCurve::new(tower, r)?;
                let n = self.n.unwrap_or(curve.points().len());
                EvalCode::hermitian_prefix(&curve, n, s)?
            }
        };
        if let (HelperPolicy::RandomD, None) = (self.helpers, self.d) {
            return Err(SimError::Config("helper policy random-d needs d".into()));
        }
        Ok(code)
    }

    pub fn scheme_options(&self, code: &EvalCode) -> SchemeOptions {
        SchemeOptions::new(self.l, self.variant.unwrap_or_else(|| Variant::for_code(code)))
    }

    /// Helper set for `target` under the configured policy.
    pub fn pick_helpers<R: Rng + ?Sized>(&self, n: usize, target: usize, rng: &mut R) -> Result<Vec<usize>, SimError> {
        match self.helpers {
            HelperPolicy::Full => Ok((0..n).filter(|&j| j != target).collect()),
            HelperPolicy::RandomD => {
                let d = self.d.ok_or_else(|| SimError::Config("helper policy random-d needs d".into()))?;
                random_helpers(n, target, d, rng)
            }
        }
    }
}

/// `d` distinct positions other than `target`, sorted.
pub fn random_helpers<R: Rng + ?Sized>(n: usize, target: usize, d: usize, rng: &mut R) -> Result<Vec<usize>, SimError> {
    let others: Vec<usize> = (0..n).filter(|&j| j != target).collect();
    if d == 0 || d > others.len() {
        return Err(SimError::Config(format!("d = {d} must lie in 1..={}", others.len())));
    }
    let mut set: Vec<usize> = others.choose_multiple(rng, d).copied().collect();
    set.sort_unstable();
    Ok(set)
}
