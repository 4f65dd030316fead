//! Batch front-end: argument parsing, dispatch and CSV emission.
//!
//! Every CSV starts with a `#` line naming the crate version and the full
//! canonical command, so rerunning that command reproduces the file byte for
//! byte. The worker count never appears in the header; results do not
//! depend on it.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::capacity::capacity_sweep;
use crate::channel::{qber, ChannelParams, PhotonOutcome};
use crate::error::Error;
use crate::ldpc::{construct_code, to_alist, CodeSpec, DEFAULT_MAX_ITERS};
use crate::metrics::bimo_llr;
use crate::montecarlo::{
    records_to_csv, ChannelModelKind, OperatingPoint, SimConfig, Simulation, DEFAULT_MAX_FRAMES,
    DEFAULT_MIN_FRAME_ERRORS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_SIMULATION: i32 = 3;

/// Default output directory when `--out` is not given.
pub const OUT_DIR_ENV: &str = "PHOTONCOUNT_OUT_DIR";

const PROGRAM: &str = "photoncount";
const MAX_LLR_TABLE_CAP: u32 = 10_000;

/// A list of values: `a,b,c` or an arithmetic grid `start:stop:step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    text: String,
    values: Vec<f64>,
}

impl Grid {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

impl std::str::FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_grid(s).map(|values| Grid {
            text: s.trim().to_string(),
            values,
        })
    }
}

fn parse_number(tok: &str) -> Result<f64, String> {
    let v: f64 = tok
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {tok:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {tok:?}"))
    }
}

/// Expands `start:stop:step` (start included, stop excluded up to a
/// rounding guard of `1e-9 * step`) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(format!("grid {s:?} must be start:stop:step"));
        };
        let (start, stop, step) = (parse_number(start)?, parse_number(stop)?, parse_number(step)?);
        if step <= 0.0 {
            return Err(format!("grid step must be positive, got {step}"));
        }
        let count = ((stop - start) / step - 1e-9).ceil().max(0.0) as usize;
        if count > 1_000_000 {
            return Err(format!("grid {s:?} has too many points"));
        }
        Ok((0..count)
            .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
            .collect())
    } else {
        s.split(',').map(parse_number).collect()
    }
}

#[derive(Debug, Parser)]
#[command(name = PROGRAM, version, about = "Photon-counting channel statistics, capacity and coded BER simulation")]
struct Cli {
    /// Output file (default: $PHOTONCOUNT_OUT_DIR/<subcommand>.<ext>, else stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Master seed recorded in the header and used by seeded subcommands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (results do not depend on this)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: RawCommand,
}

#[derive(Debug, Args)]
struct ChannelGridArgs {
    /// Mean photon numbers (list or start:stop:step)
    #[arg(long = "nc", visible_alias = "nc-grid", allow_hyphen_values = true)]
    nc: Grid,
    /// Phase-diffusion widths in radians (list or start:stop:step)
    #[arg(long = "delta", visible_alias = "delta-grid", default_value = "0", allow_hyphen_values = true)]
    delta: Grid,
}

#[derive(Debug, Subcommand)]
enum RawCommand {
    /// Capacity of the photon-counting channel and of its hard-decision BSC
    Capacity(ChannelGridArgs),
    /// Raw bit error rate of the hard-decision receiver
    Qber(ChannelGridArgs),
    /// Soft metric for every outcome with n0 + n1 <= cap
    LlrTable {
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long)]
        cap: u32,
    },
    /// Coded BER/FER simulation
    BerSim {
        /// Code rate label: 0.5, 0.61 or 0.75
        #[arg(long)]
        rate: String,
        /// Channel models, comma separated: bimo, bsc, awgn
        #[arg(long, default_value = "bimo")]
        model: String,
        /// Target uncoded QBER values
        #[arg(long, conflicts_with = "nc", required_unless_present = "nc")]
        qber: Option<Grid>,
        /// Mean photon numbers instead of QBER targets
        #[arg(long)]
        nc: Option<Grid>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta: Grid,
        #[arg(long, default_value_t = DEFAULT_MAX_FRAMES)]
        max_frames: u64,
        #[arg(long, default_value_t = DEFAULT_MIN_FRAME_ERRORS)]
        min_frame_errors: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
        /// Seed of the parity-check matrix construction
        #[arg(long, default_value_t = 1)]
        code_seed: u64,
    },
    /// Emit the parity-check matrix of a standard code in alist format
    CodeGen {
        #[arg(long)]
        rate: String,
    },
}

/// Sweep axis of a `ber-sim` run.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepAxis {
    Qber(Grid),
    PhotonNumber(Grid),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Capacity { nc: Grid, delta: Grid },
    Qber { nc: Grid, delta: Grid },
    LlrTable { delta: f64, cap: u32 },
    BerSim(Box<BerSimArgs>),
    CodeGen { rate_label: String, spec: CodeSpec },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BerSimArgs {
    pub rate_label: String,
    pub spec: CodeSpec,
    pub models: Vec<ChannelModelKind>,
    pub axis: SweepAxis,
    pub delta: Grid,
    pub max_frames: u64,
    pub min_frame_errors: u64,
    pub max_iters: usize,
    pub code_seed: u64,
}

/// Validated command line.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub master_seed: u64,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UsageError {
    pub message: String,
    /// `--help`/`--version`: print and exit successfully.
    pub informational: bool,
}

impl UsageError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            informational: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.informational {
            EXIT_OK
        } else {
            EXIT_USAGE
        }
    }
}

fn supported_rates() -> String {
    CodeSpec::STANDARD
        .iter()
        .map(|(label, s)| format!("{label} (L={}, r={})", s.info_len, s.parity_len))
        .collect::<Vec<_>>()
        .join(", ")
}

fn lookup_rate(label: &str) -> Result<CodeSpec, UsageError> {
    CodeSpec::from_rate_label(label).ok_or_else(|| {
        UsageError::new(format!(
            "--rate {label}: no matching code; supported: {}",
            supported_rates()
        ))
    })
}

fn check_nonnegative(flag: &str, grid: &Grid) -> Result<(), UsageError> {
    if grid.values.is_empty() {
        return Err(UsageError::new(format!("--{flag} {}: empty grid", grid.text)));
    }
    match grid.values.iter().find(|v| **v < 0.0) {
        Some(v) => Err(UsageError::new(format!("--{flag}: value {v} must be >= 0"))),
        None => Ok(()),
    }
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        UsageError {
            message: e.to_string(),
            informational: matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion),
        }
    })?;

    let command = match cli.command {
        RawCommand::Capacity(g) => {
            check_nonnegative("nc", &g.nc)?;
            check_nonnegative("delta", &g.delta)?;
            Command::Capacity { nc: g.nc, delta: g.delta }
        }
        RawCommand::Qber(g) => {
            check_nonnegative("nc", &g.nc)?;
            check_nonnegative("delta", &g.delta)?;
            Command::Qber { nc: g.nc, delta: g.delta }
        }
        RawCommand::LlrTable { delta, cap } => {
            if !(delta.is_finite() && delta >= 0.0) {
                return Err(UsageError::new(format!("--delta {delta}: must be finite and >= 0")));
            }
            if cap > MAX_LLR_TABLE_CAP {
                return Err(UsageError::new(format!("--cap {cap}: at most {MAX_LLR_TABLE_CAP}")));
            }
            Command::LlrTable { delta, cap }
        }
        RawCommand::BerSim {
            rate,
            model,
            qber,
            nc,
            delta,
            max_frames,
            min_frame_errors,
            max_iters,
            code_seed,
        } => {
            let spec = lookup_rate(&rate)?;
            let models = model
                .split(',')
                .map(|m| {
                    ChannelModelKind::parse(m).ok_or_else(|| {
                        UsageError::new(format!("--model {m}: expected bimo, bsc or awgn"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            check_nonnegative("delta", &delta)?;
            let axis = match (qber, nc) {
                (Some(q), None) => {
                    if let Some(bad) = q.values.iter().find(|v| !(**v > 0.0 && **v < 0.5)) {
                        return Err(UsageError::new(format!("--qber: {bad} must lie in (0, 0.5)")));
                    }
                    if q.values.is_empty() {
                        return Err(UsageError::new("--qber: empty grid"));
                    }
                    SweepAxis::Qber(q)
                }
                (None, Some(n)) => {
                    check_nonnegative("nc", &n)?;
                    SweepAxis::PhotonNumber(n)
                }
                _ => return Err(UsageError::new("exactly one of --qber or --nc is required")),
            };
            if max_frames == 0 || min_frame_errors == 0 || max_iters == 0 {
                return Err(UsageError::new(
                    "--max-frames, --min-frame-errors and --max-iters must be >= 1",
                ));
            }
            Command::BerSim(Box::new(BerSimArgs {
                rate_label: rate,
                spec,
                models,
                axis,
                delta,
                max_frames,
                min_frame_errors,
                max_iters,
                code_seed,
            }))
        }
        RawCommand::CodeGen { rate } => {
            let spec = lookup_rate(&rate)?;
            Command::CodeGen {
                rate_label: rate,
                spec,
            }
        }
    };
    if cli.threads == Some(0) {
        return Err(UsageError::new("--threads must be >= 1"));
    }
    Ok(CliConfig {
        command,
        output: cli.out,
        master_seed: cli.seed,
        threads: cli.threads,
    })
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Capacity { .. } => "capacity",
            Command::Qber { .. } => "qber",
            Command::LlrTable { .. } => "llr-table",
            Command::BerSim(_) => "ber-sim",
            Command::CodeGen { .. } => "code-gen",
        }
    }

    fn extension(&self) -> &'static str {
        match self {
            Command::CodeGen { .. } => "alist",
            _ => "csv",
        }
    }
}

impl CliConfig {
    /// Canonical command line reproducing this configuration (output path
    /// and worker count excluded).
    pub fn canonical_command(&self) -> String {
        let mut cmd = format!("{PROGRAM} {}", self.command.name());
        match &self.command {
            Command::Capacity { nc, delta } | Command::Qber { nc, delta } => {
                write!(cmd, " --nc {} --delta {}", nc.text, delta.text).unwrap();
            }
            Command::LlrTable { delta, cap } => write!(cmd, " --delta {delta} --cap {cap}").unwrap(),
            Command::BerSim(a) => {
                let models: Vec<&str> = a.models.iter().map(|m| m.tag()).collect();
                write!(cmd, " --rate {} --model {}", a.rate_label, models.join(",").to_lowercase()).unwrap();
                match &a.axis {
                    SweepAxis::Qber(g) => write!(cmd, " --qber {}", g.text).unwrap(),
                    SweepAxis::PhotonNumber(g) => write!(cmd, " --nc {}", g.text).unwrap(),
                }
                write!(
                    cmd,
                    " --delta {} --max-frames {} --min-frame-errors {} --max-iters {} --code-seed {}",
                    a.delta.text, a.max_frames, a.min_frame_errors, a.max_iters, a.code_seed
                )
                .unwrap();
            }
            Command::CodeGen { rate_label, .. } => write!(cmd, " --rate {rate_label}").unwrap(),
        }
        write!(cmd, " --seed {}", self.master_seed).unwrap();
        cmd
    }

    fn header(&self) -> String {
        format!(
            "# {PROGRAM} {} | command: {} | seed: {}\n",
            env!("CARGO_PKG_VERSION"),
            self.canonical_command(),
            self.master_seed
        )
    }
}

fn channel_grid(nc: &Grid, delta: &Grid) -> Result<Vec<ChannelParams>, Error> {
    let mut grid = Vec::with_capacity(nc.values.len() * delta.values.len());
    for &d in &delta.values {
        for &n in &nc.values {
            grid.push(ChannelParams::new(n, d)?);
        }
    }
    Ok(grid)
}

fn ber_sim(args: &BerSimArgs, master_seed: u64) -> Result<String, Error> {
    let mut points = Vec::new();
    for &delta in &args.delta.values {
        match &args.axis {
            SweepAxis::Qber(g) => points.extend(g.values.iter().map(|&target| OperatingPoint::Qber { target, delta })),
            SweepAxis::PhotonNumber(g) => {
                points.extend(g.values.iter().map(|&nc| OperatingPoint::PhotonNumber { nc, delta }))
            }
        }
    }
    let code = construct_code(args.spec, args.code_seed)?;
    let mut sims = Vec::with_capacity(args.models.len());
    for &model in &args.models {
        let config = SimConfig {
            code_spec: args.spec,
            code_seed: args.code_seed,
            model,
            points: points.clone(),
            max_frames: args.max_frames,
            min_frame_errors: args.min_frame_errors,
            max_iters: args.max_iters,
            master_seed,
        };
        let sim = Simulation::with_code(config, code.clone())?;
        // domain errors surface here, before any frame is simulated
        let resolved = sim.resolve_all()?;
        sims.push((sim, resolved));
    }
    let mut records = Vec::new();
    for (sim, resolved) in &sims {
        records.extend(resolved.iter().enumerate().map(|(i, r)| sim.run_resolved(i, r)));
    }
    Ok(records_to_csv(&records))
}

/// Produces the body (without header) for a validated configuration.
pub fn render(config: &CliConfig) -> Result<String, Error> {
    let mut out = String::new();
    match &config.command {
        Command::Capacity { nc, delta } => {
            let rows = capacity_sweep(&channel_grid(nc, delta)?)?;
            out.push_str("N_c,Delta,qber,capacity_bimo,capacity_bsc\n");
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.params.mean_photon_number(),
                    r.params.phase_diffusion(),
                    r.qber,
                    r.bimo_capacity,
                    r.bsc_capacity
                )
                .unwrap();
            }
        }
        Command::Qber { nc, delta } => {
            out.push_str("N_c,Delta,qber\n");
            for p in channel_grid(nc, delta)? {
                writeln!(out, "{},{},{}", p.mean_photon_number(), p.phase_diffusion(), qber(&p)).unwrap();
            }
        }
        Command::LlrTable { delta, cap } => {
            // the soft metric does not depend on the photon number
            let params = ChannelParams::new(1.0, *delta)?;
            out.push_str("n0,n1,llr_nat,llr_log2\n");
            for n in 0..=*cap {
                for n0 in 0..=n {
                    let llr = bimo_llr(&params, PhotonOutcome::new(n0, n - n0))?;
                    writeln!(out, "{},{},{},{}", n0, n - n0, llr.nat(), llr.log2()).unwrap();
                }
            }
        }
        Command::BerSim(args) => out.push_str(&ber_sim(args, config.master_seed)?),
        Command::CodeGen { spec, .. } => {
            let code = construct_code(*spec, config.master_seed)?;
            out.push_str(&to_alist(code.parity_check()));
        }
    }
    Ok(out)
}

/// Full file contents: header comment (CSV outputs only) plus body.
pub fn render_with_header(config: &CliConfig) -> Result<String, Error> {
    let body = render(config)?;
    Ok(match config.command {
        // alist readers do not accept comment lines
        Command::CodeGen { .. } => body,
        _ => config.header() + &body,
    })
}

/// Exit status for a module error.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::AtGridPoint { source, .. } => exit_code_for(source),
        Error::InvalidParameter(_) | Error::TargetUnreachable { .. } | Error::DegenerateChannel(_) => EXIT_DOMAIN,
        Error::ConstructionFailed { .. } | Error::LengthMismatch { .. } | Error::Alist(_) => EXIT_SIMULATION,
    }
}

fn output_path(config: &CliConfig) -> Option<PathBuf> {
    config.output.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| {
            PathBuf::from(dir).join(format!("{}.{}", config.command.name(), config.command.extension()))
        })
    })
}

/// Runs a validated configuration, writing to the chosen destination.
pub fn execute(config: &CliConfig) -> i32 {
    let rendered = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| render_with_header(config)),
            Err(e) => {
                eprintln!("{PROGRAM}: cannot start worker pool: {e}");
                return EXIT_SIMULATION;
            }
        },
        None => render_with_header(config),
    };
    let path = output_path(config);
    let text = match rendered {
        Ok(text) => text,
        Err(e) => {
            eprintln!("{PROGRAM}: {e}");
            if let Some(p) = &path {
                let _ = std::fs::remove_file(p);
            }
            return exit_code_for(&e);
        }
    };
    let written = match &path {
        Some(p) => std::fs::write(p, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{PROGRAM}: write failed: {e}");
            if let Some(p) = &path {
                let _ = std::fs::remove_file(p);
            }
            EXIT_SIMULATION
        }
    }
}

/// Entry point used by the binary.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => execute(&config),
        Err(e) => {
            if e.informational {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
                if !e.message.ends_with('\n') {
                    eprintln!();
                }
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<CliConfig, UsageError> {
        parse_args(std::iter::once(PROGRAM).chain(args.split_whitespace()))
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("0,0.5").unwrap(), vec![0.0, 0.5]);
        assert_eq!(parse_grid("1:2:0.25").unwrap(), vec![1.0, 1.25, 1.5, 1.75]);
        assert_eq!(parse_grid("0.1:0.4:0.1").unwrap(), vec![0.1, 0.2, 0.3]);
        assert_eq!(parse_grid("0.1:15:0.1").unwrap().len(), 149);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:2:0").is_err());
        assert!(parse_grid("a").is_err());
        assert!(parse_grid("nan").is_err());
    }

    #[test]
    fn capacity_sweep_config() {
        let cfg = parse("capacity --nc-grid 0.1:15:0.1 --delta 0,0.5").unwrap();
        let Command::Capacity { nc, delta } = &cfg.command else {
            panic!("wrong command");
        };
        assert_eq!(nc.values().len(), 149);
        assert_eq!(delta.values(), &[0.0, 0.5]);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(parse("").unwrap_err().exit_code(), EXIT_USAGE);
        let err = parse("ber-sim --rate 0.9 --qber 0.1").unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        for label in ["0.5", "0.61", "0.75"] {
            assert!(err.message.contains(label), "{}", err.message);
        }
        assert!(parse("qber --nc 5 --bogus 1").is_err());
        assert!(parse("qber --nc -1").is_err());
        assert!(parse("ber-sim --rate 0.5 --qber 0.5").is_err());
        assert!(parse("ber-sim --rate 0.5 --qber 0.1 --model foo").is_err());
        assert!(parse("ber-sim --rate 0.5").is_err());
        assert!(parse("llr-table --delta 0 --cap 10 --threads 0").is_err());
        assert!(parse("--help").unwrap_err().informational);
    }

    #[test]
    fn qber_single_row() {
        let cfg = parse("qber --nc 5 --delta 0").unwrap();
        let body = render(&cfg).unwrap();
        let lines: Vec<&str> = body.lines().collect();
        assert_eq!(lines.len(), 2);
        let value: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
        assert!((value - 0.049_177_338_142_375_18).abs() < 1e-13);
    }

    #[test]
    fn llr_table_row_count() {
        let cfg = parse("llr-table --delta 0 --cap 10").unwrap();
        let body = render(&cfg).unwrap();
        assert_eq!(body.lines().count() - 1, 11 * 12 / 2);
    }

    #[test]
    fn header_records_canonical_command() {
        let cfg = parse("capacity --nc 1,2 --delta 0 --seed 7 --threads 2").unwrap();
        let text = render_with_header(&cfg).unwrap();
        let first = text.lines().next().unwrap();
        assert!(first.starts_with("# photoncount "));
        assert!(first.contains("command: photoncount capacity --nc 1,2 --delta 0 --seed 7"));
        assert!(!first.contains("threads"));
        // the recorded command parses back to the same configuration
        let recorded = first.split("command: ").nth(1).unwrap().split(" | ").next().unwrap();
        let again = parse_args(recorded.split_whitespace()).unwrap();
        assert_eq!(again.command, cfg.command);
        assert_eq!(render_with_header(&again).unwrap(), text);
    }

    #[test]
    fn domain_errors_map_to_exit_two() {
        let cfg = parse("ber-sim --rate 0.5 --model bimo --qber 0.1 --delta 3").unwrap();
        let err = render(&cfg).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_DOMAIN);
        assert_eq!(
            exit_code_for(&Error::ConstructionFailed { info_len: 1, parity_len: 1, attempts: 1 }),
            EXIT_SIMULATION
        );
    }
}
