// SPDX-License-Identifier: Apache-2.0

//! Running a repair: helper responses, reconstruction and download accounting.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::EvalCode;
use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::repair::{RepairScheme, SchemeOptions};

/// Sub-symbols sent by one helper, in ascending order of its basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperResponse {
    pub node: usize,
    pub values: Vec<Elem>,
}

/// What helper `node` sends when it stores `symbol`.
pub fn helper_response(scheme: &RepairScheme, node: usize, symbol: Elem) -> Result<HelperResponse> {
    let plan = scheme
        .plan(node)
        .ok_or_else(|| Error::InvalidRepair(format!("node {node} is not a helper for target {}", scheme.target())))?;
    let tower = scheme.tower();
    let f = tower.field();
    f.check(symbol)?;
    let values = plan.coefficients.iter().map(|&mu| tower.trace(f.mul(mu, symbol))).collect();
    Ok(HelperResponse { node, values })
}

/// Rebuilds the target symbol from the responses of every helper.
pub fn reconstruct(scheme: &RepairScheme, responses: &[HelperResponse]) -> Result<Elem> {
    let tower = scheme.tower();
    let f = tower.field();
    let by_node: BTreeMap<usize, &HelperResponse> = responses.iter().map(|r| (r.node, r)).collect();
    let t = tower.degree();
    let mut traces = vec![Elem::ZERO; t];
    for plan in scheme.plans() {
        if plan.is_pruned() {
            continue;
        }
        let resp = by_node.get(&plan.node).ok_or(Error::MissingResponse(plan.node))?;
        if resp.values.len() != plan.download() || resp.values.iter().any(|&v| !tower.is_base(v)) {
            return Err(Error::MissingResponse(plan.node));
        }
        for (u, acc) in traces.iter_mut().enumerate() {
            for (&lambda, &value) in plan.expansion[u].iter().zip(&resp.values) {
                *acc = f.mul_add(*acc, lambda, value);
            }
        }
    }
    for acc in &mut traces {
        *acc = f.neg(*acc);
    }
    tower.trace_reconstruct(&traces)
}

/// Responses of every helper for one codeword.
pub fn collect_responses(scheme: &RepairScheme, codeword: &[Elem]) -> Result<Vec<HelperResponse>> {
    scheme
        .plans()
        .iter()
        .map(|plan| {
            let symbol = *codeword
                .get(plan.node)
                .ok_or_else(|| Error::InvalidRepair(format!("codeword has no position {}", plan.node)))?;
            helper_response(scheme, plan.node, symbol)
        })
        .collect()
}

/// Download accounting for one repair.
#[derive(Debug, Clone, PartialEq)]
pub struct Bandwidth {
    /// Base-field sub-symbols downloaded.
    pub symbols: usize,
    pub bits: f64,
}

impl Bandwidth {
    fn new(symbols: usize, bits_per_subsymbol: f64) -> Self {
        Bandwidth { symbols, bits: symbols as f64 * bits_per_subsymbol }
    }
}

/// Bandwidth a scheme incurs, from its plan alone.
pub fn bandwidth(scheme: &RepairScheme) -> Bandwidth {
    let symbols = scheme.plans().iter().map(|p| p.download()).sum();
    Bandwidth::new(symbols, scheme.tower().bits_per_subsymbol())
}

/// Everything downloaded during one repair.
#[derive(Debug, Clone, PartialEq)]
pub struct RepairTranscript {
    pub target: usize,
    pub responses: Vec<HelperResponse>,
    pub bits_per_subsymbol: f64,
}

impl RepairTranscript {
    pub fn symbols_per_helper(&self) -> Vec<(usize, usize)> {
        self.responses.iter().map(|r| (r.node, r.values.len())).collect()
    }

    pub fn bandwidth(&self) -> Bandwidth {
        Bandwidth::new(self.responses.iter().map(|r| r.values.len()).sum(), self.bits_per_subsymbol)
    }
}

/// Repairs `scheme.target()` from a codeword whose target symbol is not read.
pub fn run_repair(scheme: &RepairScheme, codeword: &[Elem]) -> Result<(Elem, RepairTranscript)> {
    let responses = collect_responses(scheme, codeword)?;
    let value = reconstruct(scheme, &responses)?;
    let transcript = RepairTranscript {
        target: scheme.target(),
        responses,
        bits_per_subsymbol: scheme.tower().bits_per_subsymbol(),
    };
    Ok((value, transcript))
}

/// Largest bandwidth over a family of `(target, helper set)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxBandwidth {
    pub bandwidth: Bandwidth,
    pub target: usize,
    pub helpers: Vec<usize>,
    pub instances: usize,
    /// Whether every pair was visited or only a random sample.
    pub exhaustive: bool,
}

/// Pairs visited exhaustively before switching to sampling.
pub const EXHAUSTIVE_LIMIT: u64 = 2_000;

/// Maximum bandwidth over all targets and all helper sets of size `d`, or over
/// `samples` random pairs when there are more than [`EXHAUSTIVE_LIMIT`].
pub fn max_bandwidth<R: Rng + ?Sized>(
    code: &EvalCode,
    d: usize,
    opts: &SchemeOptions,
    samples: usize,
    rng: &mut R,
) -> Result<MaxBandwidth> {
    let n = code.len();
    if d == 0 || d >= n {
        return Err(Error::InvalidParameter(format!("helper count {d} must lie in 1..{n}")));
    }
    let total = binomial(n as u64 - 1, d as u64).saturating_mul(n as u64);
    let exhaustive = total <= EXHAUSTIVE_LIMIT;
    let mut best: Option<MaxBandwidth> = None;
    let mut instances = 0;
    let mut visit = |target: usize, helpers: Vec<usize>| -> Result<()> {
        let scheme = RepairScheme::build(code, target, &helpers, opts)?;
        let bw = bandwidth(&scheme);
        instances += 1;
        if best.as_ref().is_none_or(|b| bw.symbols > b.bandwidth.symbols) {
            best = Some(MaxBandwidth { bandwidth: bw, target, helpers, instances: 0, exhaustive });
        }
        Ok(())
    };
    if exhaustive {
        for target in 0..n {
            let others: Vec<usize> = (0..n).filter(|&j| j != target).collect();
            for_each_subset(&others, d, &mut |set| visit(target, set.to_vec()))?;
        }
    } else {
        for _ in 0..samples.max(1) {
            let target = rng.gen_range(0..n);
            let others: Vec<usize> = (0..n).filter(|&j| j != target).collect();
            let mut helpers: Vec<usize> = others.choose_multiple(rng, d).copied().collect();
            helpers.sort_unstable();
            visit(target, helpers)?;
        }
    }
    let mut best = best.expect("at least one instance visited");
    best.instances = instances;
    Ok(best)
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() == k {
            return f(cur);
        }
        for idx in start..=items.len() - (k - cur.len()) {
            cur.push(items[idx]);
            rec(items, k, idx + 1, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// JSON view of a helper plan; field elements are digit vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HelperPlanRecord {
    pub node: usize,
    pub weight: Vec<u32>,
    pub rank: usize,
    pub basis: Vec<usize>,
    pub coefficients: Vec<Vec<u32>>,
    pub expansion: Vec<Vec<Vec<u32>>>,
}

/// JSON view of a [`RepairScheme`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeRecord {
    pub target: usize,
    pub variant: crate::repair::Variant,
    pub l: usize,
    pub subspace: Vec<Vec<u32>>,
    pub constant: Vec<u32>,
    pub dual_source: crate::repair::DualSource,
    pub aug_pole_degree: usize,
    pub target_weight: Vec<u32>,
    pub vanishing_helpers: Vec<usize>,
    pub table: Vec<Vec<Vec<u32>>>,
    pub helpers: Vec<HelperPlanRecord>,
}

/// JSON view of a [`RepairTranscript`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub target: usize,
    pub helpers: Vec<ResponseRecord>,
    pub symbols: usize,
    pub bits: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub node: usize,
    pub count: usize,
    pub values: Vec<Vec<u32>>,
}

impl RepairScheme {
    pub fn record(&self) -> SchemeRecord {
        let f = self.tower().field();
        let digits = |xs: &[Elem]| xs.iter().map(|&x| f.digits(x)).collect::<Vec<_>>();
        SchemeRecord {
            target: self.target(),
            variant: self.variant(),
            l: self.l(),
            subspace: digits(self.subspace().basis()),
            constant: f.digits(self.subspace().constant()),
            dual_source: self.dual_source(),
            aug_pole_degree: self.aug_pole_degree(),
            target_weight: f.digits(self.target_weight()),
            vanishing_helpers: self.vanishing_helpers().to_vec(),
            table: self.table().iter().map(|row| digits(row)).collect(),
            helpers: self
                .plans()
                .iter()
                .map(|p| HelperPlanRecord {
                    node: p.node,
                    weight: f.digits(p.weight),
                    rank: p.rank,
                    basis: p.basis.clone(),
                    coefficients: digits(&p.coefficients),
                    expansion: p.expansion.iter().map(|row| digits(row)).collect(),
                })
                .collect(),
        }
    }
}

impl RepairTranscript {
    pub fn record(&self, scheme: &RepairScheme) -> TranscriptRecord {
        let f = scheme.tower().field();
        let bw = self.bandwidth();
        TranscriptRecord {
            target: self.target,
            helpers: self
                .responses
                .iter()
                .map(|r| ResponseRecord {
                    node: r.node,
                    count: r.values.len(),
                    values: r.values.iter().map(|&v| f.digits(v)).collect(),
                })
                .collect(),
            symbols: bw.symbols,
            bits: bw.bits,
        }
    }
}
