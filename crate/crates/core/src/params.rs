// SPDX-License-Identifier: Apache-2.0

//! Closed-form bandwidth and storage bounds.
//!
//! All logarithms are base 2. `q` is the alphabet size, `p` the order of the
//! subfield whose elements are downloaded, and `bits = log q`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A formula value, or the reason its hypotheses fail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Outcome {
    Value { value: f64 },
    Inapplicable { reason: String },
}

impl Outcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            Outcome::Value { value } => Some(*value),
            Outcome::Inapplicable { .. } => None,
        }
    }

    fn when(ok: bool, reason: impl FnOnce() -> String, value: impl FnOnce() -> f64) -> Self {
        if ok {
            Outcome::Value { value: value() }
        } else {
            Outcome::Inapplicable { reason: reason() }
        }
    }
}

fn log2(x: f64) -> f64 {
    x.log2()
}

fn int_sqrt(q: u64) -> Option<u64> {
    let s = (q as f64).sqrt().round() as u64;
    (s * s == q).then_some(s)
}

/// Minimum bandwidth of a functional-repair MSR code: `d bits / (d - m + 1)`.
pub fn cutset_bound(d: u64, m: u64, bits: f64) -> Result<f64> {
    if m == 0 || d < m {
        return Err(Error::InvalidParameter(format!("cut-set bound needs d >= m >= 1, got d = {d}, m = {m}")));
    }
    Ok(d as f64 * bits / (d - m + 1) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaiveBounds {
    /// `dual_distance - 2 + bits`.
    pub privacy: f64,
    /// `n - distance + 1`, clamped at zero.
    pub reconstruction: f64,
}

pub fn naive_bounds(n: u64, distance: u64, dual_distance: u64, bits: f64) -> Result<NaiveBounds> {
    let range = 1..=n + 1;
    if !range.contains(&distance) || !range.contains(&dual_distance) {
        return Err(Error::InvalidParameter(format!(
            "distances must lie in 1..={}, got {distance} and {dual_distance}",
            n + 1
        )));
    }
    Ok(NaiveBounds {
        privacy: dual_distance as f64 - 2.0 + bits,
        reconstruction: (n + 1).saturating_sub(distance) as f64,
    })
}

/// `(n-1) log((n-1)/(dual_distance-1))`.
pub fn linear_repair_lb(n: u64, dual_distance: u64) -> Result<f64> {
    if dual_distance < 2 || dual_distance > n {
        return Err(Error::InvalidParameter(format!("dual distance must lie in 2..={n}, got {dual_distance}")));
    }
    Ok((n - 1) as f64 * log2((n - 1) as f64 / (dual_distance - 1) as f64))
}

/// `(n-1) log((n-1)/(n-k+g-2))`.
pub fn linear_repair_lb_genus(n: u64, k: u64, genus: u64) -> Outcome {
    let denom = (n + genus) as i64 - k as i64 - 2;
    Outcome::when(
        denom >= 1 && n >= 2,
        || format!("n - k + g - 2 = {denom} must be positive"),
        || (n - 1) as f64 * log2((n - 1) as f64 / denom as f64),
    )
}

/// `(n-1)(1/2 - tau) log q`.
pub fn linear_repair_lb_asymptotic(n: u64, q: u64, tau: f64) -> Outcome {
    Outcome::when(
        tau > 0.0 && tau < 0.5,
        || format!("tau = {tau} must lie in (0, 1/2)"),
        || (n as f64 - 1.0) * (0.5 - tau) * log2(q as f64),
    )
}

/// Weak repair on any curve: `d log q - (d - g) l log p`,
/// valid for `2g <= m <= d - (p^l - 1)(g + 1)`.
pub fn thm33_b(d: u64, m: u64, genus: u64, q: u64, p: u64, l: u32) -> Outcome {
    let need = p.pow(l) - 1;
    let upper = d as i64 - (need * (genus + 1)) as i64;
    Outcome::when(
        2 * genus <= m && (m as i64) <= upper && l as f64 <= log2(q as f64) / log2(p as f64) + 1e-9,
        || format!("needs 2g = {} <= m = {m} <= d - (p^l - 1)(g + 1) = {upper}", 2 * genus),
        || d as f64 * log2(q as f64) - (d as f64 - genus as f64) * l as f64 * log2(p as f64),
    )
}

/// Weak repair on the Garcia-Stichtenoth tower at level `e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerBound {
    pub n: u64,
    pub bandwidth: Outcome,
    /// Storage per node of an MSR code with the same length and rate.
    pub msr_storage: Outcome,
}

/// `B = d log q - (d - q^(e/2)) l log p` for `n = q^(e/2)(sqrt q - 1)` and
/// `2 q^(e/2) <= m <= d - (p^l - 1)(q^(e/2) + 1)`.
pub fn thm34_b(q: u64, p: u64, e: u32, m: u64, d: u64, l: u32) -> TowerBound {
    let Some(root) = int_sqrt(q) else {
        let reason = format!("q = {q} is not a perfect square");
        return TowerBound {
            n: 0,
            bandwidth: Outcome::Inapplicable { reason: reason.clone() },
            msr_storage: Outcome::Inapplicable { reason },
        };
    };
    let g = (q as f64).powf(e as f64 / 2.0);
    let n = (g * (root as f64 - 1.0)).round() as u64;
    let need = (p.pow(l) - 1) as f64;
    let upper = d as f64 - need * (g + 1.0);
    let ok = 2.0 * g <= m as f64 && m as f64 <= upper && d < n;
    let reason = || format!("needs 2q^(e/2) = {} <= m = {m} <= d - (p^l - 1)(q^(e/2) + 1) = {upper} and d < n = {n}", 2.0 * g);
    let bits = log2(q as f64);
    let bandwidth = Outcome::when(ok, reason, || d as f64 * bits - (d as f64 - g) * l as f64 * log2(p as f64));
    let rate = (m as f64 - g) / n as f64;
    let msr_storage = Outcome::when(ok, reason, || msr_storage_equiv(rate, q));
    TowerBound { n, bandwidth, msr_storage }
}

/// The open interval of `epsilon` admitted by the tower construction:
/// `(p / (sqrt q - 1), 1 - 1 / (sqrt q - 1))`.
pub fn cor35_interval(q: u64, p: u64) -> (f64, f64) {
    let s = (q as f64).sqrt() - 1.0;
    (p as f64 / s, 1.0 - 1.0 / s)
}

/// `(n-1)(log q / 2 + log(1/epsilon))` for epsilon in [`cor35_interval`].
pub fn cor35_b(n: u64, q: u64, p: u64, epsilon: f64) -> Outcome {
    let (lo, hi) = cor35_interval(q, p);
    Outcome::when(
        int_sqrt(q).is_some() && epsilon > lo && epsilon < hi,
        || format!("epsilon = {epsilon} outside ({lo}, {hi}) for q = {q}, p = {p}"),
        || (n as f64 - 1.0) * (log2(q as f64) / 2.0 + log2(1.0 / epsilon)),
    )
}

/// Storage of an MSR code with the tower rate `1 - epsilon`:
/// `(1 - epsilon) / (1 - epsilon + 2^(-bits/2)) bits`.
pub fn cor35_msr_storage(q: u64, epsilon: f64) -> f64 {
    let bits = log2(q as f64);
    (1.0 - epsilon) / (1.0 - epsilon + (-bits / 2.0).exp2()) * bits
}

/// Bandwidth of the asymptotic construction of rate `1 - epsilon`,
/// `epsilon = 2^((tau - 1/2) log q) >= 2 / (sqrt q - 1)`:
/// `(n-1)(1 - tau) log q`.
pub fn main_result_b(n: u64, q: u64, tau: f64) -> Outcome {
    let bits = log2(q as f64);
    let epsilon = ((tau - 0.5) * bits).exp2();
    let floor = 2.0 / ((q as f64).sqrt() - 1.0);
    Outcome::when(
        tau > 0.0 && tau < 0.5 && epsilon >= floor - 1e-12,
        || format!("needs tau in (0, 1/2) and epsilon = {epsilon} >= 2/(sqrt q - 1) = {floor}"),
        || (n as f64 - 1.0) * (1.0 - tau) * bits,
    )
}

/// `epsilon = 2^((tau - 1/2) log q)`.
pub fn epsilon_from_tau(q: u64, tau: f64) -> f64 {
    ((tau - 0.5) * log2(q as f64)).exp2()
}

/// Storage per node of an MSR code of rate `rate` over GF(q):
/// `rate / (rate + 1/sqrt q) log q`.
pub fn msr_storage_equiv(rate: f64, q: u64) -> f64 {
    rate / (rate + 1.0 / (q as f64).sqrt()) * log2(q as f64)
}

/// Reed-Solomon repair: `d (log q - l log p)` for `m <= d - p^l + 1`.
pub fn thm41_b(d: u64, m: u64, q: u64, p: u64, l: u32) -> Outcome {
    let upper = d as i64 - p.pow(l) as i64 + 1;
    Outcome::when(
        m as i64 <= upper && p.pow(l) <= q,
        || format!("needs m = {m} <= d - p^l + 1 = {upper}"),
        || d as f64 * (log2(q as f64) - l as f64 * log2(p as f64)),
    )
}

/// Full-length Reed-Solomon repair: `(n-1) log p` for `n = q`, `m <= n (1 - 1/p)`.
pub fn cor42_b(n: u64, m: u64, q: u64, p: u64) -> Outcome {
    Outcome::when(
        n == q && m * p <= n * (p - 1),
        || format!("needs n = q (n = {n}, q = {q}) and m = {m} <= n (1 - 1/p) = {}", n as f64 * (1.0 - 1.0 / p as f64)),
        || (n as f64 - 1.0) * log2(p as f64),
    )
}

/// Hermitian repair with tangent lines: `d (log q - l log p)` for
/// `m <= d - (p^l - 1)(r + 1)`, `q = r^2`.
pub fn thm45_b(d: u64, m: u64, r: u64, p: u64, l: u32) -> Outcome {
    let q = r * r;
    let upper = d as i64 - ((p.pow(l) - 1) * (r + 1)) as i64;
    Outcome::when(
        m as i64 <= upper && m <= d,
        || format!("needs m = {m} <= d - (p^l - 1)(r + 1) = {upper}"),
        || d as f64 * (log2(q as f64) - l as f64 * log2(p as f64)),
    )
}

/// Full-length Hermitian repair: `(n-1)(log q - l log p)` for `n = r^3` and
/// `m <= n + r(r-1) - 2 - (p^l - 1)(r + 1)`.
pub fn thm46_b(n: u64, m: u64, r: u64, p: u64, l: u32) -> Outcome {
    let q = r * r;
    let upper = (n + r * (r - 1)) as i64 - 2 - ((p.pow(l) - 1) * (r + 1)) as i64;
    Outcome::when(
        n == r.pow(3) && m as i64 <= upper,
        || format!("needs n = r^3 = {} (got {n}) and m = {m} <= n + r(r-1) - 2 - (p^l - 1)(r + 1) = {upper}", r.pow(3)),
        || (n as f64 - 1.0) * (log2(q as f64) - l as f64 * log2(p as f64)),
    )
}

/// Parameters for a [`BoundReport`]; absent values make the formulas that need
/// them inapplicable.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub d: Option<u64>,
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub l: Option<u32>,
    pub r: Option<u64>,
    pub genus: Option<u64>,
    pub k: Option<u64>,
    pub distance: Option<u64>,
    pub dual_distance: Option<u64>,
    pub epsilon: Option<f64>,
    pub tau: Option<f64>,
    pub e: Option<u32>,
    pub rate: Option<f64>,
}

/// Named bound evaluations for one parameter tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    pub bits: Option<f64>,
    pub outputs: BTreeMap<String, Outcome>,
}

impl BoundReport {
    pub fn evaluate(inputs: &BoundInputs) -> Self {
        let i = inputs;
        let bits = i.q.map(|q| log2(q as f64));
        let mut out = BTreeMap::new();
        let missing = |names: &str| Outcome::Inapplicable { reason: format!("requires {names}") };
        let from_result = |r: Result<f64>| match r {
            Ok(value) => Outcome::Value { value },
            Err(e) => Outcome::Inapplicable { reason: e.to_string() },
        };

        out.insert(
            "msr_cutset".into(),
            match (i.d, i.m, bits) {
                (Some(d), Some(m), Some(b)) => from_result(cutset_bound(d, m, b)),
                _ => missing("d, m, q"),
            },
        );
        let naive = match (i.n, i.distance, i.dual_distance, bits) {
            (Some(n), Some(dd), Some(dp), Some(b)) => naive_bounds(n, dd, dp, b).map_err(|e| e.to_string()),
            _ => Err("requires n, distance, dual_distance, q".to_string()),
        };
        let (privacy, reconstruction) = match naive {
            Ok(nb) => (Outcome::Value { value: nb.privacy }, Outcome::Value { value: nb.reconstruction }),
            Err(reason) => (Outcome::Inapplicable { reason: reason.clone() }, Outcome::Inapplicable { reason }),
        };
        out.insert("privacy_naive".into(), privacy);
        out.insert("reconstruction_naive".into(), reconstruction);
        out.insert(
            "linear_repair_lb".into(),
            match (i.n, i.dual_distance) {
                (Some(n), Some(dp)) => from_result(linear_repair_lb(n, dp)),
                _ => missing("n, dual_distance"),
            },
        );
        out.insert(
            "linear_repair_lb_genus".into(),
            match (i.n, i.k, i.genus) {
                (Some(n), Some(k), Some(g)) => linear_repair_lb_genus(n, k, g),
                _ => missing("n, k, genus"),
            },
        );
        out.insert(
            "linear_repair_lb_asymptotic".into(),
            match (i.n, i.q, i.tau) {
                (Some(n), Some(q), Some(t)) => linear_repair_lb_asymptotic(n, q, t),
                _ => missing("n, q, tau"),
            },
        );
        out.insert(
            "thm33_B".into(),
            match (i.d, i.m, i.genus, i.q, i.p, i.l) {
                (Some(d), Some(m), Some(g), Some(q), Some(p), Some(l)) => thm33_b(d, m, g, q, p, l),
                _ => missing("d, m, genus, q, p, l"),
            },
        );
        let tower = match (i.q, i.p, i.e, i.m, i.d, i.l) {
            (Some(q), Some(p), Some(e), Some(m), Some(d), Some(l)) => Some(thm34_b(q, p, e, m, d, l)),
            _ => None,
        };
        out.insert(
            "thm34_B".into(),
            tower.as_ref().map_or_else(|| missing("q, p, e, m, d, l"), |t| t.bandwidth.clone()),
        );
        out.insert(
            "thm34_msr_storage".into(),
            tower.as_ref().map_or_else(|| missing("q, p, e, m, d, l"), |t| t.msr_storage.clone()),
        );
        out.insert(
            "cor35_B".into(),
            match (i.n, i.q, i.p, i.epsilon) {
                (Some(n), Some(q), Some(p), Some(eps)) => cor35_b(n, q, p, eps),
                _ => missing("n, q, p, epsilon"),
            },
        );
        out.insert(
            "main_result_B".into(),
            match (i.n, i.q, i.tau) {
                (Some(n), Some(q), Some(t)) => main_result_b(n, q, t),
                _ => missing("n, q, tau"),
            },
        );
        out.insert(
            "thm41_B".into(),
            match (i.d, i.m, i.q, i.p, i.l) {
                (Some(d), Some(m), Some(q), Some(p), Some(l)) => thm41_b(d, m, q, p, l),
                _ => missing("d, m, q, p, l"),
            },
        );
        out.insert(
            "cor42_B".into(),
            match (i.n, i.m, i.q, i.p) {
                (Some(n), Some(m), Some(q), Some(p)) => cor42_b(n, m, q, p),
                _ => missing("n, m, q, p"),
            },
        );
        out.insert(
            "thm45_B".into(),
            match (i.d, i.m, i.r, i.p, i.l) {
                (Some(d), Some(m), Some(r), Some(p), Some(l)) => thm45_b(d, m, r, p, l),
                _ => missing("d, m, r, p, l"),
            },
        );
        out.insert(
            "thm46_B".into(),
            match (i.n, i.m, i.r, i.p, i.l) {
                (Some(n), Some(m), Some(r), Some(p), Some(l)) => thm46_b(n, m, r, p, l),
                _ => missing("n, m, r, p, l"),
            },
        );
        out.insert(
            "msr_storage_equiv".into(),
            match (i.rate, i.q) {
                (Some(rate), Some(q)) if rate > 0.0 && rate <= 1.0 => Outcome::Value { value: msr_storage_equiv(rate, q) },
                (Some(rate), Some(_)) => Outcome::Inapplicable { reason: format!("rate {rate} outside (0, 1]") },
                _ => missing("rate, q"),
            },
        );
        BoundReport { inputs: inputs.clone(), bits, outputs: out }
    }

    /// `name,status,value,reason` rows.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["name", "status", "value", "reason"])?;
        for (name, outcome) in &self.outputs {
            match outcome {
                Outcome::Value { value } => wr.write_record([name.as_str(), "value", &value.to_string(), ""])?,
                Outcome::Inapplicable { reason } => wr.write_record([name.as_str(), "inapplicable", "", reason])?,
            }
        }
        wr.flush()?;
        Ok(())
    }
}
