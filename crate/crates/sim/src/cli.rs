//! The `pac` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pac_core::{
    pac_encode, rm_profile, total_time_steps, CodeConfig, ImpulseResponse, PacDecoder, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SimError};
use crate::harness::{parse_ebn0_range, run_fer, SimConfig, DEFAULT_MAX_FRAMES, DEFAULT_MIN_ERRORS};
use crate::profile_file::{format_profile, read_profile};
use crate::report::{latency_json, latency_table, write_csv, write_json};

#[derive(Parser, Debug)]
#[command(name = "pac", version, about = "Fast list decoding of polarization-adjusted convolutional codes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate the frame error rate over an Eb/N0 sweep.
    Simulate(SimulateArgs),
    /// Report decoding latency in time steps.
    Latency(LatencyArgs),
    /// Print a rate profile, optionally with its node decomposition.
    Profile(ProfileArgs),
    /// Encode random frames and check that every decoder recovers them noiselessly.
    EncodeCheck(EncodeCheckArgs),
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Code length (power of two).
    #[arg(long)]
    n: Option<usize>,
    /// Information length.
    #[arg(long)]
    k: Option<usize>,
    /// `rm` or `file:PATH`.
    #[arg(long, default_value = "rm")]
    profile: String,
    /// Impulse response coefficients, c0 first.
    #[arg(long, default_value = "1,0,1,1,0,1,1", value_delimiter = ',')]
    conv: Vec<u8>,
}

impl CodeArgs {
    fn build(&self) -> Result<CodeConfig> {
        let profile = if self.profile == "rm" {
            let (Some(n), Some(k)) = (self.n, self.k) else {
                return Err(SimError::param("--n and --k are required with the rm profile"));
            };
            rm_profile(n, k)?
        } else if let Some(path) = self.profile.strip_prefix("file:") {
            let p = read_profile(path.as_ref())?;
            if self.n.is_some_and(|n| n != p.len()) || self.k.is_some_and(|k| k != p.info_len()) {
                return Err(SimError::param(format!(
                    "profile file describes ({}, {}), which contradicts --n/--k",
                    p.len(),
                    p.info_len()
                )));
            }
            p
        } else {
            return Err(SimError::param(format!(
                "unknown profile `{}`, expected rm or file:PATH",
                self.profile
            )));
        };
        Ok(CodeConfig::new(profile, ImpulseResponse::new(&self.conv)?))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    List,
    Fast3,
    Fast4,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::List => Variant::List,
            VariantArg::Fast3 => Variant::Fast3,
            VariantArg::Fast4 => Variant::Fast4,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SimFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    list_size: usize,
    #[arg(long, value_enum, default_value = "list")]
    variant: VariantArg,
    /// `start:step:stop` in dB, or a single value.
    #[arg(long)]
    ebn0: String,
    #[arg(long, default_value_t = DEFAULT_MIN_ERRORS)]
    min_errors: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_FRAMES)]
    max_frames: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: SimFormat,
}

#[derive(Args, Debug)]
struct LatencyArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    list_size: usize,
    /// One variant; all three when omitted.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Also list the constituent nodes chosen by this variant.
    #[arg(long, value_enum)]
    plan: Option<VariantArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EncodeCheckArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value_t = 4)]
    list_size: usize,
    #[arg(long, default_value_t = 100)]
    frames: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Latency(a) => latency(a),
        Command::Profile(a) => profile(a),
        Command::EncodeCheck(a) => encode_check(a),
    }
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| SimError::Io {
            path: p.clone(),
            source,
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let code = a.code.build()?;
    let mut cfg = SimConfig::new(code, a.list_size, a.variant.into(), parse_ebn0_range(&a.ebn0)?);
    cfg.min_errors = a.min_errors;
    cfg.max_frames = a.max_frames;
    cfg.seed = a.seed;
    if let Some(w) = a.workers {
        cfg.workers = w;
    }
    let records = run_fer(&cfg)?;
    let mut out = open_output(a.out.as_ref())?;
    match a.format {
        SimFormat::Csv => write_csv(&mut out, &records)?,
        SimFormat::Json => write_json(&mut out, &records)?,
    }
    out.flush().map_err(SimError::Output)
}

fn latency(a: LatencyArgs) -> Result<()> {
    let code = a.code.build()?;
    let variants: Vec<Variant> = match a.variant {
        Some(v) => vec![v.into()],
        None => Variant::ALL.to_vec(),
    };
    let reports = variants
        .into_iter()
        .map(|v| total_time_steps(code.profile(), a.list_size, v))
        .collect::<pac_core::Result<Vec<_>>>()?;
    let text = match a.format {
        TextFormat::Text => latency_table(&reports),
        TextFormat::Json => {
            let values: Vec<_> = reports.iter().map(latency_json).collect();
            serde_json::to_string_pretty(&values)? + "\n"
        }
    };
    io::stdout().write_all(text.as_bytes()).map_err(SimError::Output)
}

fn profile(a: ProfileArgs) -> Result<()> {
    let code = a.code.build()?;
    let mut text = format_profile(code.profile());
    if let Some(v) = a.plan {
        let plan = pac_core::classify(code.profile(), Variant::from(v).kinds());
        for node in plan.nodes() {
            let r = node.range();
            text += &format!("{} {} {}\n", r.start, r.end - 1, node.kind);
        }
    }
    let mut out = open_output(a.out.as_ref())?;
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(SimError::Output)
}

fn encode_check(a: EncodeCheckArgs) -> Result<()> {
    let code = a.code.build()?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut decoders = Variant::ALL
        .iter()
        .map(|&v| PacDecoder::new(code.clone(), a.list_size, v))
        .collect::<pac_core::Result<Vec<_>>>()?;
    for frame in 0..a.frames {
        let d: Vec<u8> = (0..code.info_len()).map(|_| rng.gen_range(0..=1)).collect();
        let x = pac_encode(&d, &code)?;
        let llr: Vec<f64> = x.iter().map(|&b| if b == 0 { 20.0 } else { -20.0 }).collect();
        for (dec, variant) in decoders.iter_mut().zip(Variant::ALL) {
            let out = dec.decode(&llr)?;
            if out.bits != d {
                return Err(SimError::CheckFailed(format!("{variant} decoder, frame {frame}")));
            }
        }
    }
    println!(
        "ok: {} frames of PAC({}, {}) recovered by list, fast3 and fast4 (L = {})",
        a.frames,
        code.len(),
        code.info_len(),
        a.list_size
    );
    Ok(())
}
