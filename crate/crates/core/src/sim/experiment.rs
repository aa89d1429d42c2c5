// SPDX-License-Identifier: Apache-2.0

//! Repeated repair trials with exact download accounting.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{erasure_decode, EvalCode};
use crate::repair::{bandwidth, run_repair, RepairScheme};
use crate::sim::{SimConfig, SimError};

/// RNG for trial `trial`: the seed selects the key, the trial the stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// One repair: a random codeword, target and helper set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub target: usize,
    pub d: usize,
    pub symbols: usize,
    pub bits: f64,
    pub bound_bits: f64,
    pub equal: bool,
}

/// Outcome of an experiment together with the configuration that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: SimConfig,
    pub rows: Vec<TrialRow>,
    /// Whether every repaired symbol matched.
    pub pass: bool,
    /// Whether every trial also agreed with erasure decoding (verify only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoder_agrees: Option<bool>,
    pub wall_time_secs: f64,
}

impl ExperimentRecord {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), SimError> {
        let mut wr = csv::Writer::from_writer(w);
        for row in &self.rows {
            wr.serialize(row)?;
        }
        wr.flush().map_err(|e| SimError::Csv(e.to_string()))?;
        Ok(())
    }
}

struct Trial {
    row: TrialRow,
    codeword: Vec<crate::galois::Elem>,
    helpers: Vec<usize>,
    repaired: crate::galois::Elem,
}

fn run_trial(cfg: &SimConfig, code: &EvalCode, trial: usize) -> Result<Trial, SimError> {
    let mut rng = trial_rng(cfg.seed, trial);
    let codeword = code.random_codeword(&mut rng);
    let target = rng.gen_range(0..code.len());
    let helpers = cfg.pick_helpers(code.len(), target, &mut rng)?;
    let scheme = RepairScheme::build(code, target, &helpers, &cfg.scheme_options(code))?;
    let (repaired, transcript) = run_repair(&scheme, &codeword)?;
    let measured = transcript.bandwidth();
    debug_assert_eq!(measured, bandwidth(&scheme));
    let per = scheme.tower().bits_per_subsymbol();
    let row = TrialRow {
        target,
        d: helpers.len(),
        symbols: measured.symbols,
        bits: measured.bits,
        bound_bits: scheme.bound_symbols() as f64 * per,
        equal: repaired == codeword[target],
    };
    Ok(Trial { row, codeword, helpers, repaired })
}

/// Runs `cfg.trials` independent repairs.
pub fn bench(cfg: &SimConfig) -> Result<ExperimentRecord, SimError> {
    let start = Instant::now();
    let code = cfg.build_code()?;
    let rows = (0..cfg.trials)
        .map(|t| run_trial(cfg, &code, t).map(|tr| tr.row))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(|r| r.equal);
    Ok(ExperimentRecord {
        config: cfg.clone(),
        rows,
        pass,
        decoder_agrees: None,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Like [`bench`], and also decodes each codeword from its helper
/// coordinates to check the repaired symbol against the erasure decoder.
pub fn verify(cfg: &SimConfig) -> Result<ExperimentRecord, SimError> {
    let start = Instant::now();
    let code = cfg.build_code()?;
    let mut rows = Vec::with_capacity(cfg.trials);
    let mut agrees = true;
    for t in 0..cfg.trials {
        let trial = run_trial(cfg, &code, t)?;
        let known: Vec<_> = trial.helpers.iter().map(|&j| (j, trial.codeword[j])).collect();
        let decoded = erasure_decode(&code, &known)?;
        agrees &= decoded[trial.row.target] == trial.repaired;
        rows.push(trial.row);
    }
    let pass = rows.iter().all(|r| r.equal);
    Ok(ExperimentRecord {
        config: cfg.clone(),
        rows,
        pass,
        decoder_agrees: Some(agrees),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> SimConfig {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn rs_bench_rows() {
        let c = cfg(r#"{"kind":"rs","p":2,"t":4,"k":8,"l":3,"seed":3,"trials":6}"#);
        let rec = bench(&c).unwrap();
        assert!(rec.pass);
        for row in &rec.rows {
            assert_eq!((row.d, row.symbols, row.bits, row.bound_bits), (15, 15, 15.0, 15.0));
        }
        let mut buf = Vec::new();
        rec.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "target,d,symbols,bits,bound_bits,equal");
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn deterministic_per_seed() {
        let c = cfg(r#"{"kind":"hermitian","p":3,"t":2,"r":3,"s":8,"l":1,"seed":5,"trials":5,"helpers":"random-d","d":20}"#);
        let a = bench(&c).unwrap();
        let b = bench(&c).unwrap();
        assert_eq!(a.rows, b.rows);
        let mut c2 = c.clone();
        c2.seed = 6;
        assert_ne!(bench(&c2).unwrap().rows, a.rows);
    }

    #[test]
    fn verify_agrees_with_decoder() {
        let c = cfg(r#"{"kind":"hermitian","p":2,"t":2,"r":2,"s":5,"l":1,"seed":1,"trials":30}"#);
        let rec = verify(&c).unwrap();
        assert!(rec.pass);
        assert_eq!(rec.decoder_agrees, Some(true));
    }

    #[test]
    fn precondition_failure_is_reported() {
        let c = cfg(r#"{"kind":"rs","p":2,"t":4,"k":10,"l":3,"trials":1}"#);
        let err = bench(&c).unwrap_err();
        assert!(err.to_string().contains("k <= d - p^l + 1"), "{err}");
    }
}
