// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use agrepair::codes::ErasureDecoder;
use agrepair::params::{BoundInputs, BoundReport};
use agrepair::repair::{SchemeOptions, Variant};
use agrepair::sim::{self, output_path, Cluster, SimConfig};

/// Trace repair of Reed-Solomon and Hermitian codes in a simulated storage cluster.
#[derive(Parser)]
#[command(name = "agrepair", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate bandwidth and storage bounds.
    Params(ParamsArgs),
    /// Encode random stripes into a new cluster state file.
    Encode {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        stripes: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mark one node of a cluster as failed.
    Fail {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        node: usize,
    },
    /// Repair the failed node of a cluster and write the state back.
    Repair {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        opts: RepairArgs,
        /// Write every transcript as JSON.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Check repairs against the erasure decoder.
    Verify {
        /// Run the trials of an experiment config.
        #[arg(long, conflicts_with = "state", required_unless_present = "state")]
        config: Option<PathBuf>,
        /// Check the failed node of a cluster without modifying the file.
        #[arg(long)]
        state: Option<PathBuf>,
        #[command(flatten)]
        opts: RepairArgs,
    },
    /// Run repair trials and write one CSV row per trial.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RepairArgs {
    /// Dimension of the subspace over the base field.
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Use `d` random helpers instead of every other node.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    ReedSolomon,
    HermitianLine,
    HermitianGenericWeak,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::ReedSolomon => Variant::ReedSolomon,
            VariantArg::HermitianLine => Variant::HermitianLine,
            VariantArg::HermitianGenericWeak => Variant::HermitianGenericWeak,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    genus: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    distance: Option<u64>,
    #[arg(long)]
    dual_distance: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Params(args) => params(args),
        Command::Encode { config, stripes, out } => {
            let cfg = SimConfig::load(&config)?;
            let cluster = Cluster::encode_random(cfg.build_code()?, stripes, cfg.seed);
            let path = output_path(&out);
            cluster.save(&path)?;
            println!("{}", json!({ "state": path, "n": cluster.code().len(), "stripes": stripes }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fail { state, node } => {
            let mut cluster = Cluster::load(&state)?;
            cluster.fail(node)?;
            cluster.save(&state)?;
            println!("{}", json!({ "failed": node }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Repair { state, opts, transcript } => {
            let mut cluster = Cluster::load(&state)?;
            let (options, helpers) = repair_plan(&cluster, &opts)?;
            let outcome = cluster.repair(&options, &helpers)?;
            if let Some(path) = transcript {
                let records: Vec<_> = outcome.transcripts.iter().map(|t| t.record(&outcome.scheme)).collect();
                write_json(&output_path(&path), &json!({ "scheme": outcome.scheme.record(), "transcripts": records }))?;
            }
            cluster.save(&state)?;
            let symbols: usize = outcome.transcripts.iter().map(|t| t.bandwidth().symbols).sum();
            let bits: f64 = outcome.transcripts.iter().map(|t| t.bandwidth().bits).sum();
            let ok = outcome.matches.iter().all(|&m| m);
            println!(
                "{}",
                json!({
                    "target": outcome.scheme.target(),
                    "d": helpers.len(),
                    "stripes": outcome.repaired.len(),
                    "symbols": symbols,
                    "bits": bits,
                    "bound_bits_per_stripe": outcome.scheme.bound_symbols() as f64 * outcome.scheme.tower().bits_per_subsymbol(),
                    "equal": ok,
                })
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Verify { config: Some(config), .. } => {
            let record = sim::verify(&SimConfig::load(&config)?)?;
            let ok = record.pass && record.decoder_agrees == Some(true);
            println!(
                "{}",
                json!({ "trials": record.rows.len(), "pass": record.pass, "decoder_agrees": record.decoder_agrees })
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Verify { state: Some(state), opts, .. } => verify_state(&state, &opts),
        Command::Verify { .. } => bail!("verify needs --config or --state"),
        Command::Bench { config, out } => {
            let record = sim::bench(&SimConfig::load(&config)?)?;
            let csv_path = output_path(&out);
            let file = File::create(&csv_path).with_context(|| format!("creating {}", csv_path.display()))?;
            record.write_csv(file)?;
            write_json(&csv_path.with_extension("json"), &serde_json::to_value(&record)?)?;
            println!("{}", json!({ "csv": csv_path, "trials": record.rows.len(), "pass": record.pass }));
            Ok(if record.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn params(args: ParamsArgs) -> Result<ExitCode> {
    let inputs = BoundInputs {
        n: args.n,
        m: args.m,
        d: args.d,
        q: args.q,
        p: args.p,
        l: args.l,
        r: args.r,
        genus: args.genus,
        k: args.k,
        distance: args.distance,
        dual_distance: args.dual_distance,
        epsilon: args.epsilon,
        tau: args.tau,
        e: args.e,
        rate: args.rate,
    };
    let report = BoundReport::evaluate(&inputs);
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => {
            let path = output_path(path);
            Box::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?)
        }
        None => Box::new(io::stdout()),
    };
    match args.format {
        Format::Json => writeln!(sink, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => report.write_csv(&mut sink)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn repair_plan(cluster: &Cluster, opts: &RepairArgs) -> Result<(SchemeOptions, Vec<usize>)> {
    let code = cluster.code();
    let variant = opts.variant.map(Variant::from).unwrap_or_else(|| Variant::for_code(code));
    let failure = cluster.failure().ok_or(sim::SimError::NothingToRepair)?;
    let helpers = match opts.d {
        None => (0..code.len()).filter(|&j| j != failure.node).collect(),
        Some(d) => sim::random_helpers(code.len(), failure.node, d, &mut cluster.helper_rng()?)?,
    };
    Ok((SchemeOptions::new(opts.l, variant), helpers))
}

fn verify_state(path: &Path, opts: &RepairArgs) -> Result<ExitCode> {
    let original = Cluster::load(path)?;
    let Some(failure) = original.failure() else {
        bail!(sim::SimError::NothingToRepair);
    };
    let target = failure.node;
    let withheld = failure.withheld().to_vec();
    let (options, helpers) = repair_plan(&original, opts)?;
    let helper_symbols: Vec<Vec<_>> = helpers
        .iter()
        .map(|&j| original.node(j).expect("helpers are live").to_vec())
        .collect();
    let mut cluster = original.clone();
    let outcome = cluster.repair(&options, &helpers)?;
    let decoder = ErasureDecoder::new(original.code(), &helpers)?;
    let mut agrees = true;
    for s in 0..original.stripes() {
        let values: Vec<_> = helper_symbols.iter().map(|col| col[s]).collect();
        agrees &= decoder.decode(&values)?[target] == outcome.repaired[s];
    }
    let pass = outcome.repaired == withheld;
    println!("{}", json!({ "target": target, "stripes": withheld.len(), "pass": pass, "decoder_agrees": agrees }));
    Ok(if pass && agrees { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}
