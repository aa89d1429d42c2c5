// SPDX-License-Identifier: Apache-2.0

//! An in-memory storage cluster: `n` nodes, each holding one symbol per stripe.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{CodeDescriptor, EvalCode};
use crate::galois::Elem;
use crate::repair::{helper_response, reconstruct, HelperResponse, RepairScheme, RepairTranscript, SchemeOptions};
use crate::sim::SimError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct Cluster {
    code: EvalCode,
    /// `nodes[j][s]`: symbol of node `j` in stripe `s`; empty while `j` is down.
    nodes: Vec<Vec<Elem>>,
    stripes: usize,
    failure: Option<Failure>,
    seed: u64,
}

/// A failed node and the symbols it held, kept only to check repairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub node: usize,
    withheld: Vec<Elem>,
}

impl Failure {
    pub fn withheld(&self) -> &[Elem] {
        &self.withheld
    }
}

/// Result of repairing every stripe of a failed node.
#[derive(Debug, Clone)]
pub struct ClusterRepair {
    pub scheme: RepairScheme,
    pub transcripts: Vec<RepairTranscript>,
    pub repaired: Vec<Elem>,
    /// Whether each repaired symbol equals the withheld one.
    pub matches: Vec<bool>,
}

impl Cluster {
    /// `stripes` random codewords drawn from `seed`.
    pub fn encode_random(code: EvalCode, stripes: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words: Vec<Vec<Elem>> = (0..stripes).map(|_| code.random_codeword(&mut rng)).collect();
        Self::from_codewords(code, &words, seed).expect("random codewords are valid")
    }

    pub fn from_codewords(code: EvalCode, words: &[Vec<Elem>], seed: u64) -> Result<Self, SimError> {
        for (s, w) in words.iter().enumerate() {
            if w.len() != code.len() || !code.contains(w) {
                return Err(SimError::State(format!("stripe {s} is not a codeword")));
            }
        }
        let nodes = (0..code.len()).map(|j| words.iter().map(|w| w[j]).collect()).collect();
        Ok(Cluster { code, nodes, stripes: words.len(), failure: None, seed })
    }

    pub fn code(&self) -> &EvalCode {
        &self.code
    }

    pub fn stripes(&self) -> usize {
        self.stripes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn failure(&self) -> Option<&Failure> {
        self.failure.as_ref()
    }

    /// Symbols stored on `node`, or `None` while it is down.
    pub fn node(&self, node: usize) -> Option<&[Elem]> {
        match &self.failure {
            Some(f) if f.node == node => None,
            _ => self.nodes.get(node).map(Vec::as_slice),
        }
    }

    pub fn fail(&mut self, node: usize) -> Result<(), SimError> {
        if node >= self.code.len() {
            return Err(SimError::State(format!("node {node} does not exist (n = {})", self.code.len())));
        }
        if let Some(f) = &self.failure {
            return Err(SimError::State(format!("node {} is already down; only one failure is supported", f.node)));
        }
        let withheld = std::mem::take(&mut self.nodes[node]);
        self.failure = Some(Failure { node, withheld });
        Ok(())
    }

    /// Repairs the failed node from `helpers`; each helper only sees the
    /// scheme and its own symbols.
    pub fn repair(&mut self, opts: &SchemeOptions, helpers: &[usize]) -> Result<ClusterRepair, SimError> {
        let failure = self.failure.as_ref().ok_or(SimError::NothingToRepair)?;
        let target = failure.node;
        let scheme = RepairScheme::build(&self.code, target, helpers, opts)?;
        let bits = scheme.tower().bits_per_subsymbol();
        let mut transcripts = Vec::with_capacity(self.stripes);
        let mut repaired = Vec::with_capacity(self.stripes);
        for s in 0..self.stripes {
            let responses = scheme
                .plans()
                .iter()
                .map(|plan| helper_response(&scheme, plan.node, self.nodes[plan.node][s]))
                .collect::<crate::Result<Vec<HelperResponse>>>()?;
            repaired.push(reconstruct(&scheme, &responses)?);
            transcripts.push(RepairTranscript { target, responses, bits_per_subsymbol: bits });
        }
        let matches = repaired.iter().zip(failure.withheld()).map(|(a, b)| a == b).collect();
        self.nodes[target] = repaired.clone();
        self.failure = None;
        Ok(ClusterRepair { scheme, transcripts, repaired, matches })
    }

    /// Random stream for choosing the failed node's helpers, derived from
    /// the cluster seed and the node id.
    pub fn helper_rng(&self) -> Result<ChaCha8Rng, SimError> {
        let failure = self.failure.as_ref().ok_or(SimError::NothingToRepair)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(1 + failure.node as u64);
        Ok(rng)
    }

    pub fn to_file(&self) -> StripeFile {
        let f = self.code.field();
        let digits = |xs: &[Elem]| xs.iter().map(|&x| f.digits(x)).collect::<Vec<_>>();
        StripeFile {
            schema_version: SCHEMA_VERSION,
            code: self.code.descriptor(),
            seed: self.seed,
            stripes: self.stripes,
            nodes: (0..self.code.len())
                .map(|j| NodeRecord { id: j, symbols: self.node(j).map(digits) })
                .collect(),
            failure: self.failure.as_ref().map(|fl| FailureRecord { node: fl.node, withheld: digits(&fl.withheld) }),
        }
    }

    pub fn from_file(file: &StripeFile) -> Result<Self, SimError> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(SimError::Schema { expected: SCHEMA_VERSION, found: file.schema_version });
        }
        let code = EvalCode::from_descriptor(&file.code)?;
        let f = code.field();
        let n = code.len();
        if file.nodes.len() != n || file.nodes.iter().enumerate().any(|(j, rec)| rec.id != j) {
            return Err(SimError::State(format!("expected node records 0..{n} in order")));
        }
        let parse = |xs: &[Vec<u32>]| -> Result<Vec<Elem>, SimError> {
            if xs.len() != file.stripes {
                return Err(SimError::State(format!("expected {} symbols per node, got {}", file.stripes, xs.len())));
            }
            Ok(xs.iter().map(|d| f.from_digits(d)).collect::<Result<_, _>>()?)
        };
        let failed = file.failure.as_ref().map(|fl| fl.node);
        let mut words = vec![vec![Elem::ZERO; n]; file.stripes];
        for rec in &file.nodes {
            let symbols = match (&rec.symbols, &file.failure) {
                (None, Some(fl)) if fl.node == rec.id => parse(&fl.withheld)?,
                (Some(s), _) if failed != Some(rec.id) => parse(s)?,
                _ => return Err(SimError::State(format!("node {} disagrees with the failure record", rec.id))),
            };
            for (s, v) in symbols.into_iter().enumerate() {
                words[s][rec.id] = v;
            }
        }
        let mut cluster = Self::from_codewords(code, &words, file.seed)?;
        if let Some(node) = failed {
            cluster.fail(node)?;
        }
        Ok(cluster)
    }

    pub fn save(&self, path: &Path) -> Result<(), SimError> {
        let text = serde_json::to_string_pretty(&self.to_file()).map_err(|e| SimError::State(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| SimError::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
        let file: StripeFile =
            serde_json::from_str(&text).map_err(|e| SimError::State(format!("{}: {e}", path.display())))?;
        Self::from_file(&file)
    }
}

/// On-disk form of a [`Cluster`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripeFile {
    pub schema_version: u32,
    pub code: CodeDescriptor,
    pub seed: u64,
    pub stripes: usize,
    pub nodes: Vec<NodeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    /// `None` while the node is down.
    pub symbols: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub node: usize,
    pub withheld: Vec<Vec<u32>>,
}
