use std::fs::OpenOptions;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cvpolar::channel::{channel_by_name, Channel};
use cvpolar::construction::{build_cvpc, build_cvps_with, genie_reliability, selection_by_name};
use cvpolar::decoder::{decoder_by_name, SoftInput};
use cvpolar::distance::{compute_weights, delta_tables, min_distance_bound};
use cvpolar::oracle;
use cvpolar::sim::{run_fer, SimOptions, SimResult};
use cvpolar::subspace::{enumerate_subspaces, s3, tau_tables, Subspace, S3_COUNT};
use cvpolar::{BitVector, CodeSpec};

#[derive(Parser, Debug)]
#[command(name = "cvpolar", version, about = "Convolutional polar codes: construction, coding, simulation and oracles")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code (f = 0) or subcode (f > 0) and write its description
    Construct(ConstructArgs),
    /// Encode information bits read from stdin, one frame per line
    Encode {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Decode LLRs read from stdin (n values per frame)
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        list: usize,
        #[arg(long, default_value = "scl")]
        decoder: String,
    },
    /// Estimate the frame error rate by simulation
    Simulate(SimulateArgs),
    /// Subchannel weights `i,d` (or the distance bound of a code)
    Mindist {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, conflicts_with = "m")]
        spec: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exhaustive small-length computations
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args, Debug)]
struct ChannelArgs {
    #[arg(long, value_parser = ["bec", "awgn"])]
    channel: String,
    /// Eb/N0 in dB (awgn)
    #[arg(long, allow_negative_numbers = true)]
    ebn0: Option<f64>,
    /// Erasure probability (bec)
    #[arg(long)]
    pe: Option<f64>,
}

impl ChannelArgs {
    fn build(&self, rate: f64) -> Result<Box<dyn Channel>> {
        let param = match self.channel.as_str() {
            "awgn" => self.ebn0.context("--channel awgn needs --ebn0")?,
            _ => self.pe.context("--channel bec needs --pe")?,
        };
        Ok(channel_by_name(&self.channel, param, rate)?)
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    f: usize,
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Dynamic frozen index rule
    #[arg(long, default_value = "largest-index")]
    selection: String,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    spec: PathBuf,
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long, default_value_t = 1)]
    list: usize,
    #[arg(long, default_value = "scl")]
    decoder: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// 0 runs all trials
    #[arg(long, default_value_t = 0)]
    target_errors: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Recoverable coefficient space for an erasure set
    Chi {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        phi: isize,
        #[arg(long)]
        j: usize,
        /// Erased positions, comma separated
        #[arg(long, default_value = "")]
        erased: String,
    },
    /// Every erasure set with the given recoverable space
    Xi {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        phi: isize,
        #[arg(long)]
        j: usize,
        /// Subspace such as `<010,001>`
        #[arg(long)]
        space: String,
    },
    /// Least number of erasures with the given recoverable space
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        phi: isize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        space: String,
    },
    /// Minimum weight of a generalized coset
    Coset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        phi: usize,
        /// Coefficient vector such as `100`
        #[arg(long)]
        p: String,
    },
    /// Minimum distance of a code by enumeration
    MindistExhaustive {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Coset minimum weight against the erasure-configuration minimum
    VerifyTheorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "p")]
        phi: Option<usize>,
        #[arg(long, requires = "phi")]
        p: Option<String>,
    },
    /// Recursive tables against exhaustive tables for every phase
    VerifyTheorem2 {
        #[arg(long)]
        n: usize,
    },
    /// Composition tables as CSV `i,j,parity,mask`
    VerifyTau,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_spec(path: &Path) -> Result<CodeSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CodeSpec::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

fn bits_line(v: &BitVector) -> String {
    v.to_string()
}

fn parse_bits(text: &str) -> Result<BitVector> {
    let bits = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t {
            "0" => Ok(0u8),
            "1" => Ok(1u8),
            other => bail!("expected a bit, got '{other}'"),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BitVector::from_bits(&bits))
}

fn parse_llr(t: &str) -> Result<f64> {
    match t {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => t.parse::<f64>().with_context(|| format!("bad LLR '{t}'")),
    }
}

fn parse_positions(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad position '{t}'")))
        .collect()
}

fn format_set(e: &[usize]) -> String {
    let parts: Vec<String> = e.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn append_csv(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    if fresh {
        writeln!(f, "{header}")?;
    }
    for r in rows {
        writeln!(f, "{r}")?;
    }
    Ok(())
}

fn run(command: Command) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Construct(a) => {
            eprintln!("seed {}", a.seed);
            let channel = a.channel.build(a.k as f64 / a.n as f64)?;
            let prof = genie_reliability(a.n, channel.as_ref(), a.trials, a.seed, a.threads)?;
            let selection = selection_by_name(&a.selection)?;
            let code = if a.f == 0 {
                build_cvpc(a.n, a.k, &prof)?
            } else {
                let m = a.n.trailing_zeros();
                let weights = compute_weights(m)?;
                let built = build_cvps_with(a.n, a.k, a.f, &prof, &weights, a.seed, selection.as_ref())?;
                if !built.degenerate.is_empty() {
                    eprintln!("warning: dynamic frozen indices with empty constraints: {:?}", built.degenerate);
                }
                built.code
            };
            match a.out {
                Some(path) => std::fs::write(&path, code.serialize()).with_context(|| format!("writing {}", path.display()))?,
                None => write!(out, "{}", code.serialize())?,
            }
        }
        Command::Encode { spec } => {
            let code = read_spec(&spec)?;
            for line in read_stdin()?.lines().filter(|l| !l.trim().is_empty()) {
                let info = parse_bits(line)?;
                writeln!(out, "{}", bits_line(&code.encode(&info)?))?;
            }
        }
        Command::Decode { spec, list, decoder } => {
            let code = read_spec(&spec)?;
            let mut dec = decoder_by_name(&decoder, list)?;
            let values = read_stdin()?
                .split_whitespace()
                .map(parse_llr)
                .collect::<Result<Vec<f64>>>()?;
            if values.is_empty() || values.len() % code.n() != 0 {
                bail!("expected a multiple of {} LLRs, got {}", code.n(), values.len());
            }
            for frame in values.chunks(code.n()) {
                let best = dec.decode(&code, &SoftInput::new(frame.to_vec())?)?;
                writeln!(out, "{}", bits_line(&code.info_bits(&best[0].u)))?;
                writeln!(out, "metric {}", best[0].metric)?;
            }
        }
        Command::Simulate(a) => {
            eprintln!("seed {}", a.seed);
            let code = read_spec(&a.spec)?;
            let channel = a.channel.build(code.rate())?;
            let opts = SimOptions {
                decoder: a.decoder,
                list: a.list,
                max_trials: a.trials,
                target_errors: a.target_errors,
                seed: a.seed,
                threads: a.threads,
            };
            let r = run_fer(&code, channel.as_ref(), &opts)?;
            writeln!(out, "{}", SimResult::CSV_HEADER)?;
            writeln!(out, "{}", r.csv_row())?;
            eprintln!(
                "{:.3} s, generator {}, gaussian {}",
                r.wall_time.as_secs_f64(),
                r.generator,
                r.gaussian
            );
            if let Some(path) = a.csv {
                append_csv(&path, SimResult::CSV_HEADER, &[r.csv_row()])?;
            }
        }
        Command::Mindist { m, spec, csv } => match (m, spec) {
            (Some(m), None) => {
                let w = compute_weights(m)?;
                let rows: Vec<String> = w.d.iter().enumerate().map(|(i, d)| format!("{i},{d}")).collect();
                for r in &rows {
                    writeln!(out, "{r}")?;
                }
                if let Some(path) = csv {
                    append_csv(&path, "i,d", &rows)?;
                }
            }
            (None, Some(path)) => {
                let code = read_spec(&path)?;
                let w = compute_weights(code.n().trailing_zeros())?;
                writeln!(out, "{}", min_distance_bound(&w, &code.info_set())?)?;
            }
            _ => bail!("mindist needs --m or --spec"),
        },
        Command::Oracle(o) => run_oracle(o, &mut out)?,
    }
    Ok(())
}

fn run_oracle(command: OracleCommand, out: &mut impl Write) -> Result<()> {
    match command {
        OracleCommand::Chi { n, phi, j, erased } => {
            let s = oracle::chi(n, phi, j, &parse_positions(&erased)?)?;
            writeln!(out, "{s}")?;
        }
        OracleCommand::Xi { n, phi, j, space } => {
            let s = Subspace::parse(j, &space)?;
            for e in oracle::xi(n, phi, j, &s)? {
                writeln!(out, "{}", format_set(&e))?;
            }
        }
        OracleCommand::Delta { n, phi, j, space } => {
            let s = Subspace::parse(j, &space)?;
            writeln!(out, "{}", oracle::delta_min(n, phi, j, &s)?)?;
        }
        OracleCommand::Coset { n, phi, p } => {
            writeln!(out, "{}", oracle::coset_min_weight(n, phi, &parse_bits(&spaced(&p))?)?)?;
        }
        OracleCommand::MindistExhaustive { spec } => {
            writeln!(out, "{}", oracle::exhaustive_min_distance(&read_spec(&spec)?)?)?;
        }
        OracleCommand::VerifyTheorem1 { n, phi, p } => {
            let cases: Vec<(usize, BitVector)> = match (phi, p) {
                (Some(phi), Some(p)) => vec![(phi, parse_bits(&spaced(&p))?)],
                _ => (0..n)
                    .flat_map(|phi| {
                        (1..=3usize).flat_map(move |j| (1u64..(1 << j)).map(move |key| (phi, BitVector::from_u64(key, j))))
                    })
                    .collect(),
            };
            let mut failures = 0;
            for (phi, p) in cases {
                let (lhs, rhs) = oracle::theorem1_sides(n, phi, &p)?;
                let ok = lhs == rhs;
                failures += usize::from(!ok);
                writeln!(out, "{phi},{},{lhs},{rhs},{}", compact(&p), if ok { "ok" } else { "FAIL" })?;
            }
            if failures > 0 {
                bail!("{failures} mismatches");
            }
        }
        OracleCommand::VerifyTheorem2 { n } => {
            if n == 0 || !n.is_power_of_two() {
                bail!("length {n} is not a power of two");
            }
            let tables = delta_tables(n.trailing_zeros())?;
            let mut failures = 0;
            for (slot, t) in tables.iter().enumerate() {
                let phi = slot as isize - 1;
                let reference = oracle::delta_table(n, phi)?;
                for l in 0..S3_COUNT {
                    if t[l] != reference[l] {
                        failures += 1;
                        writeln!(out, "{phi},{},{},{},FAIL", s3(l), t[l], reference[l])?;
                    }
                }
            }
            if failures > 0 {
                bail!("{failures} mismatches");
            }
            writeln!(out, "ok: {} phases x {S3_COUNT} subspaces", tables.len())?;
        }
        OracleCommand::VerifyTau => {
            let tau = tau_tables();
            let subspaces = enumerate_subspaces(3)?;
            writeln!(out, "i,j,parity,mask")?;
            for parity in [0usize, 1] {
                for i in 0..subspaces.len() {
                    for j in 0..subspaces.len() {
                        let l = tau.get(parity, i, j);
                        writeln!(out, "{i},{j},{},{}", if parity == 0 { "even" } else { "odd" }, s3(l).mask())?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `101` -> `1 0 1`.
fn spaced(p: &str) -> String {
    p.chars().map(|c| format!("{c} ")).collect()
}

fn compact(p: &BitVector) -> String {
    p.iter().map(|b| if b { '1' } else { '0' }).collect()
}
