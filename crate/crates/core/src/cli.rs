//! The `jcq` command line: argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;

use crate::capacity::{anti_degrading_map, classify, degrading_defect, degrading_map, DegradabilityStatus};
use crate::error::{Error, Result};
use crate::jc::{JcParams, JointState};
use crate::lindblad::{closed_form_state, integrate_master_equation, DecayParams};
use crate::qmat::QubitInput;
use crate::sweep::{
    build_channel, format_number, run_capacity, run_sweep, write_records, Axis, ConfigFile, Mode, OutputFormat, Param,
    ParamSet, SweepSpec,
};
use crate::verify::{probe_inputs, run_verify, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "jcq",
    version,
    about = "Quantum capacity of Jaynes-Cummings state-transfer channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity of a single channel
    #[command(allow_negative_numbers = true)]
    Capacity {
        #[command(flatten)]
        channel: ChannelFlags,
        /// Print one JSON object instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Capacity over a grid of up to three swept parameters
    #[command(allow_negative_numbers = true)]
    Sweep(SweepFlags),
    /// Dump the decaying photon-to-atom trajectory
    #[command(allow_negative_numbers = true)]
    Evolve(EvolveFlags),
    /// Print the (anti-)degrading map of a channel and check it
    #[command(allow_negative_numbers = true)]
    Degrade {
        #[command(flatten)]
        channel: ChannelFlags,
        #[arg(long)]
        json: bool,
    },
    /// Run the oracle cross-checks
    Verify {
        #[arg(default_value = "quick", value_parser = ["quick", "full"])]
        level: String,
    },
}

#[derive(Debug, Args)]
struct ChannelFlags {
    /// conversion, concat or decayed
    #[arg(long)]
    mode: Option<String>,
    /// Coupling of the (first) interaction
    #[arg(long)]
    g: Option<f64>,
    /// Detuning ω − ν of the (first) interaction
    #[arg(long)]
    delta: Option<f64>,
    /// Duration of the (first) interaction
    #[arg(long)]
    t: Option<f64>,
    /// Coupling at the receiver (concat)
    #[arg(long)]
    g2: Option<f64>,
    #[arg(long)]
    delta2: Option<f64>,
    #[arg(long)]
    t2: Option<f64>,
    /// Fiber transmittance (concat)
    #[arg(long = "T")]
    transmittance: Option<f64>,
    /// Cavity decay rate (decayed)
    #[arg(long)]
    kappa: Option<f64>,
    /// Atomic decay rate (decayed)
    #[arg(long)]
    gamma: Option<f64>,
    /// Field frequency; only phases depend on it
    #[arg(long)]
    nu: Option<f64>,
    /// TOML file of flat keys named like the flags; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepFlags {
    #[command(flatten)]
    channel: ChannelFlags,
    /// axis:start:stop:count, repeatable up to three times
    #[arg(long = "sweep")]
    axes: Vec<String>,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON lines instead of CSV
    #[arg(long)]
    json: bool,
    /// Worker threads (default: one per core)
    #[arg(long)]
    threads: Option<usize>,
    /// Add a generation timestamp line
    #[arg(long)]
    stamp: bool,
}

#[derive(Debug, Args)]
struct EvolveFlags {
    #[arg(long)]
    g: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    /// Final time
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// Initial photon population
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Initial real coherence between |0⟩ and |1⟩
    #[arg(long, default_value_t = 0.0)]
    r: f64,
    /// Number of time samples from 0 to t
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Integrate the master equation instead of using the closed form
    #[arg(long)]
    integrate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Output streams and exit code for one invocation.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", describe(&e));
            EXIT_USAGE
        }
    }
}

fn describe(e: &Failure) -> String {
    match e {
        Failure::Lib(Error::InvalidParameter { name, reason }) => format!("--{name}: {reason}"),
        Failure::Lib(e) => e.to_string(),
        Failure::Io(e) => e.to_string(),
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match command {
        Command::Capacity { channel, json } => {
            let (mode, params, _) = resolve(&channel)?;
            let record = run_capacity(mode, &params)?;
            if json {
                let mut value = record.to_json();
                value["wall_time_s"] = record.wall_time.as_secs_f64().into();
                writeln!(stdout, "{value}")?;
            } else {
                let rows = [
                    ("mode", mode.to_string()),
                    ("h_keep_sq", format_number(record.h_keep_sq)),
                    ("h_env_sq", format_number(record.h_env_sq)),
                    ("status", record.status.to_string()),
                    ("Q", format_number(record.q)),
                    ("p_star", format_number(record.p_star)),
                    ("wall_time", format!("{:.6}s", record.wall_time.as_secs_f64())),
                ];
                for (k, v) in rows {
                    writeln!(stdout, "{k:<10} {v}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sweep(flags) => sweep(flags, stdout),
        Command::Evolve(flags) => evolve(flags, stdout),
        Command::Degrade { channel, json } => degrade(&channel, json, stdout),
        Command::Verify { level } => {
            let level: Level = level
                .parse()
                .map_err(|reason| Error::InvalidParameter { name: "level", reason })?;
            let reports = run_verify(level);
            for r in &reports {
                writeln!(stdout, "{r}")?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed == 0 {
                writeln!(stdout, "all {} suites passed", reports.len())?;
                Ok(EXIT_OK)
            } else {
                writeln!(stdout, "{failed} of {} suites failed", reports.len())?;
                Ok(EXIT_VERIFY_FAILED)
            }
        }
    }
}

/// Merges the config file (if any) under the flags.
fn resolve(flags: &ChannelFlags) -> Result<(Mode, ParamSet, ConfigFile)> {
    let config = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::InvalidParameter {
                name: "config",
                reason: format!("{}: {e}", path.display()),
            })?;
            ConfigFile::parse(&text)?
        }
        None => ConfigFile::default(),
    };
    let pairs = [
        (Param::G, flags.g),
        (Param::Delta, flags.delta),
        (Param::T, flags.t),
        (Param::G2, flags.g2),
        (Param::Delta2, flags.delta2),
        (Param::T2, flags.t2),
        (Param::Transmittance, flags.transmittance),
        (Param::Kappa, flags.kappa),
        (Param::Gamma, flags.gamma),
        (Param::Nu, flags.nu),
    ];
    let mut from_flags = ParamSet::new();
    for (p, v) in pairs {
        if let Some(v) = v {
            from_flags.set(p, v);
        }
    }
    let mode = match &flags.mode {
        Some(m) => m.parse()?,
        None => config.mode.unwrap_or(Mode::Conversion),
    };
    Ok((mode, config.params().merged(&from_flags), config))
}

fn sweep(flags: SweepFlags, stdout: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let (mode, fixed, config) = resolve(&flags.channel)?;
    let axis_text = if flags.axes.is_empty() {
        &config.sweep
    } else {
        &flags.axes
    };
    let axes = axis_text
        .iter()
        .map(|s| s.parse::<Axis>())
        .collect::<Result<Vec<_>>>()?;
    let spec = SweepSpec { mode, axes, fixed };
    let threads = flags.threads.or(config.threads).unwrap_or(0);
    let format = if flags.json || config.json.unwrap_or(false) {
        OutputFormat::JsonLines
    } else {
        OutputFormat::Csv
    };
    let stamp = (flags.stamp || config.stamp.unwrap_or(false)).then(timestamp);
    let out = flags.out.or_else(|| config.out.map(PathBuf::from));

    let records = run_sweep(&spec, threads)?;
    match out {
        Some(path) => write_file(&path, |w| write_records(w, &records, format, stamp.as_deref()))?,
        None => write_records(&mut *stdout, &records, format, stamp.as_deref())?,
    }
    Ok(EXIT_OK)
}

/// Writes through a buffer; the file is removed if anything fails.
fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<fs::File>) -> io::Result<()>) -> io::Result<()> {
    let mut writer = BufWriter::new(fs::File::create(path)?);
    let result = body(&mut writer).and_then(|()| writer.flush());
    if result.is_err() {
        drop(writer);
        let _ = fs::remove_file(path);
    }
    result
}

fn timestamp() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

pub const EVOLVE_HEADER: [&str; 10] = [
    "t", "p_d0", "p_u0", "p_d1", "re_d0_u0", "im_d0_u0", "re_d0_d1", "im_d0_d1", "re_u0_d1", "im_u0_d1",
];

fn evolve(flags: EvolveFlags, stdout: &mut dyn Write) -> std::result::Result<i32, Failure> {
    if flags.samples < 1 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: "must be >= 1".into(),
        }
        .into());
    }
    let jc = JcParams::with_detuning(flags.g, flags.delta, flags.nu, flags.t)?;
    let decay = DecayParams::new(flags.kappa, flags.gamma)?;
    let init = QubitInput::new(flags.p, C64::new(flags.r, 0.0))?;
    let start = JointState::photon_with_ground_atom(&init);
    let mut rows = Vec::with_capacity(flags.samples);
    for i in 0..flags.samples {
        let time = if flags.samples == 1 {
            flags.t
        } else {
            flags.t * i as f64 / (flags.samples - 1) as f64
        };
        let at = jc.at_time(time)?;
        let state = if flags.integrate {
            integrate_master_equation(&at, &decay, &start)?
        } else {
            closed_form_state(&at, &decay, &init)?
        };
        // basis indices: 0 = |↓0⟩, 1 = |↓1⟩, 2 = |↑0⟩
        let m = state.to_mat();
        let mut row = vec![time, m.0[0][0].re, m.0[2][2].re, m.0[1][1].re];
        for (i, j) in [(0, 2), (0, 1), (2, 1)] {
            row.extend([m.0[i][j].re, m.0[i][j].im]);
        }
        rows.push(row);
    }
    let emit = |w: &mut dyn Write| -> io::Result<()> {
        let mut writer = csv::Writer::from_writer(w);
        writer.write_record(EVOLVE_HEADER)?;
        for row in &rows {
            writer.write_record(row.iter().map(|x| format_number(*x)))?;
        }
        writer.flush()
    };
    match flags.out {
        Some(path) => write_file(&path, |w| emit(w))?,
        None => emit(stdout)?,
    }
    Ok(EXIT_OK)
}

fn degrade(flags: &ChannelFlags, json: bool, stdout: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let (mode, params, _) = resolve(flags)?;
    let channel = build_channel(mode, &params)?;
    let status = classify(&channel);
    let (kind, map, defect) = if status == DegradabilityStatus::AntiDegradable {
        let map = anti_degrading_map(&channel)?;
        (
            "anti-degrading",
            map,
            degrading_defect(&channel.complement(), &map, &probe_inputs())?,
        )
    } else {
        let map = degrading_map(&channel)?;
        ("degrading", map, degrading_defect(&channel, &map, &probe_inputs())?)
    };
    if json {
        let value = serde_json::json!({
            "mode": mode.as_str(),
            "status": status.as_str(),
            "map": kind,
            "g": map.g,
            "nu": map.nu,
            "delta": map.delta(),
            "t": map.t,
            "trace_distance": defect,
        });
        writeln!(stdout, "{value}")?;
    } else {
        let rows = [
            ("mode", mode.to_string()),
            ("status", status.to_string()),
            ("map", kind.to_string()),
            ("g'", format_number(map.g)),
            ("nu'", format_number(map.nu)),
            ("delta'", format_number(map.delta())),
            ("t'", format_number(map.t)),
            ("distance", format!("{defect:.3e}")),
        ];
        for (k, v) in rows {
            writeln!(stdout, "{k:<9} {v}")?;
        }
    }
    Ok(EXIT_OK)
}
