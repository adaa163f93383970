//! Single-point capacity evaluation, parameter grids, and the CSV /
//! JSON-lines record formats.
//!
//! Records are always emitted in row-major grid order (first axis slowest),
//! whatever the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{quantum_capacity, DegradabilityStatus};
use crate::channel::{concatenate, LossChannel, TransferChannel};
use crate::error::{Error, Result};
use crate::jc::JcParams;
use crate::lindblad::{decayed_conversion, DecayParams};

pub const MAX_AXES: usize = 3;

/// CSV column order.
pub const CSV_HEADER: [&str; 15] = [
    "mode",
    "g",
    "delta",
    "t",
    "g2",
    "delta2",
    "t2",
    "T",
    "kappa",
    "gamma",
    "h_keep_sq",
    "h_env_sq",
    "status",
    "Q",
    "p_star",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Conversion,
    Concat,
    Decayed,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Conversion => "conversion",
            Mode::Concat => "concat",
            Mode::Decayed => "decayed",
        }
    }

    fn required(&self) -> &'static [Param] {
        match self {
            Mode::Conversion => &[Param::G, Param::T],
            Mode::Concat => &[Param::G, Param::T, Param::Transmittance, Param::G2, Param::T2],
            Mode::Decayed => &[Param::G, Param::T, Param::Kappa],
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conversion" => Ok(Mode::Conversion),
            "concat" => Ok(Mode::Concat),
            "decayed" => Ok(Mode::Decayed),
            other => Err(Error::InvalidParameter {
                name: "mode",
                reason: format!("expected conversion, concat or decayed, got `{other}`"),
            }),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Physical parameters addressable by flags, config keys and sweep axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    G,
    Delta,
    T,
    G2,
    Delta2,
    T2,
    Transmittance,
    Kappa,
    Gamma,
    Nu,
}

impl Param {
    pub const ALL: [Param; 10] = [
        Param::G,
        Param::Delta,
        Param::T,
        Param::G2,
        Param::Delta2,
        Param::T2,
        Param::Transmittance,
        Param::Kappa,
        Param::Gamma,
        Param::Nu,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Param::G => "g",
            Param::Delta => "delta",
            Param::T => "t",
            Param::G2 => "g2",
            Param::Delta2 => "delta2",
            Param::T2 => "t2",
            Param::Transmittance => "T",
            Param::Kappa => "kappa",
            Param::Gamma => "gamma",
            Param::Nu => "nu",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        if name == "gamma_at" {
            return Ok(Param::Gamma);
        }
        Param::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::InvalidParameter {
                name: "sweep",
                reason: format!("unknown parameter `{name}`"),
            })
    }
}

/// A partial assignment of parameter values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamSet(BTreeMap<Param, f64>);

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, param: Param, value: f64) -> Self {
        self.set(param, value);
        self
    }

    pub fn set(&mut self, param: Param, value: f64) {
        self.0.insert(param, value);
    }

    pub fn get(&self, param: Param) -> Option<f64> {
        self.0.get(&param).copied()
    }

    /// Values in `other` win.
    pub fn merged(&self, other: &ParamSet) -> ParamSet {
        let mut out = self.clone();
        out.0.extend(other.0.iter().map(|(k, v)| (*k, *v)));
        out
    }

    fn require(&self, param: Param) -> Result<f64> {
        self.get(param).ok_or_else(|| Error::InvalidParameter {
            name: param.name(),
            reason: format!("required but neither set nor swept (--{})", param.name()),
        })
    }

    fn or_zero(&self, param: Param) -> f64 {
        self.get(param).unwrap_or(0.0)
    }
}

/// Builds the channel a mode describes.
pub fn build_channel(mode: Mode, params: &ParamSet) -> Result<TransferChannel> {
    for p in mode.required() {
        params.require(*p)?;
    }
    let nu = params.or_zero(Param::Nu);
    let first = JcParams::with_detuning(
        params.or_zero(Param::G),
        params.or_zero(Param::Delta),
        nu,
        params.or_zero(Param::T),
    )?;
    match mode {
        Mode::Conversion => Ok(TransferChannel::atom_to_field(&first)),
        Mode::Concat => {
            let second = JcParams::with_detuning(
                params.or_zero(Param::G2),
                params.or_zero(Param::Delta2),
                nu,
                params.or_zero(Param::T2),
            )?;
            let loss = LossChannel::new(params.or_zero(Param::Transmittance))?;
            Ok(concatenate(&first, &loss, &second))
        }
        Mode::Decayed => {
            let decay = DecayParams::new(params.or_zero(Param::Kappa), params.or_zero(Param::Gamma))?;
            Ok(decayed_conversion(&first, &decay)?.to_channel())
        }
    }
}

/// One evaluated grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub mode: Mode,
    pub params: ParamSet,
    pub h_keep_sq: f64,
    pub h_env_sq: f64,
    pub status: DegradabilityStatus,
    pub q: f64,
    pub p_star: f64,
    pub wall_time: Duration,
}

pub fn run_capacity(mode: Mode, params: &ParamSet) -> Result<RunRecord> {
    let start = Instant::now();
    let channel = build_channel(mode, params)?;
    let result = quantum_capacity(&channel);
    Ok(RunRecord {
        mode,
        params: params.clone(),
        h_keep_sq: channel.keep_sq(),
        h_env_sq: channel.env_sq(),
        status: result.status,
        q: result.q,
        p_star: result.p_star,
        wall_time: start.elapsed(),
    })
}

/// Shortest decimal text that parses back to the same `f64`.
/// Negative zero is printed as `0.0`.
pub fn format_number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:?}")
}

/// CSV columns that carry input parameters, in header order.
const CSV_PARAMS: [Param; 9] = [
    Param::G,
    Param::Delta,
    Param::T,
    Param::G2,
    Param::Delta2,
    Param::T2,
    Param::Transmittance,
    Param::Kappa,
    Param::Gamma,
];

impl RunRecord {
    fn csv_row(&self) -> Vec<String> {
        let mut row = vec![self.mode.as_str().to_string()];
        row.extend(
            CSV_PARAMS
                .iter()
                .map(|p| self.params.get(*p).map(format_number).unwrap_or_default()),
        );
        row.push(format_number(self.h_keep_sq));
        row.push(format_number(self.h_env_sq));
        row.push(self.status.to_string());
        row.push(format_number(self.q));
        row.push(format_number(self.p_star));
        row
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("mode".into(), self.mode.as_str().into());
        for p in Param::ALL {
            if let Some(v) = self.params.get(p) {
                map.insert(p.name().into(), v.into());
            }
        }
        map.insert("h_keep_sq".into(), self.h_keep_sq.into());
        map.insert("h_env_sq".into(), self.h_env_sq.into());
        map.insert("status".into(), self.status.as_str().into());
        map.insert("Q".into(), self.q.into());
        map.insert("p_star".into(), self.p_star.into());
        serde_json::Value::Object(map)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

/// Writes records; `stamp`, when given, becomes a leading comment/header
/// line and is the only non-deterministic part of the output.
pub fn write_records<W: Write>(
    out: W,
    records: &[RunRecord],
    format: OutputFormat,
    stamp: Option<&str>,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(out, records, stamp),
        OutputFormat::JsonLines => write_json_lines(out, records, stamp),
    }
}

fn write_csv<W: Write>(mut out: W, records: &[RunRecord], stamp: Option<&str>) -> io::Result<()> {
    if let Some(stamp) = stamp {
        writeln!(out, "# generated {stamp}")?;
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for r in records {
        writer.write_record(r.csv_row())?;
    }
    writer.flush()
}

fn write_json_lines<W: Write>(mut out: W, records: &[RunRecord], stamp: Option<&str>) -> io::Result<()> {
    if let Some(stamp) = stamp {
        writeln!(out, "{}", serde_json::json!({ "generated": stamp }))?;
    }
    for r in records {
        writeln!(out, "{}", r.to_json())?;
    }
    out.flush()
}

/// A record read back from CSV output.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedRecord {
    pub mode: Mode,
    pub params: ParamSet,
    pub status: DegradabilityStatus,
    pub q: f64,
    pub p_star: f64,
}

/// Parses CSV produced by [`write_records`]; `#` comment lines are skipped.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ParsedRecord>> {
    let bad = |reason: String| Error::InvalidState(format!("malformed CSV: {reason}"));
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(bad(format!("unexpected header {header:?}")));
    }
    let number = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("`{s}`: {e}")));
    let mut rows = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let mut params = ParamSet::new();
        for (i, p) in CSV_PARAMS.iter().enumerate() {
            let field = &row[i + 1];
            if !field.is_empty() {
                params.set(*p, number(field)?);
            }
        }
        rows.push(ParsedRecord {
            mode: row[0].parse()?,
            params,
            status: row[12].parse().map_err(bad)?,
            q: number(&row[13])?,
            p_star: number(&row[14])?,
        });
    }
    Ok(rows)
}

/// One swept parameter: `count` evenly spaced values from `start` to `stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// `name:start:stop:count`
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidParameter { name: "sweep", reason };
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(bad(format!("expected axis:start:stop:count, got `{s}`")));
        }
        let num = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| bad(format!("`{x}` is not a number in `{s}`")))
        };
        let axis = Axis {
            param: Param::from_name(parts[0])?,
            start: num(parts[1])?,
            stop: num(parts[2])?,
            count: parts[3]
                .parse()
                .map_err(|_| bad(format!("`{}` is not a count in `{s}`", parts[3])))?,
        };
        Ok(axis)
    }
}

/// A grid of channel evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub mode: Mode,
    pub axes: Vec<Axis>,
    pub fixed: ParamSet,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidParameter { name: "sweep", reason });
        if self.axes.len() > MAX_AXES {
            return bad(format!("at most {MAX_AXES} axes, got {}", self.axes.len()));
        }
        for (i, axis) in self.axes.iter().enumerate() {
            if axis.count < 1 {
                return bad(format!("axis `{}` needs count >= 1", axis.param.name()));
            }
            if !(axis.start.is_finite() && axis.stop.is_finite()) || axis.start > axis.stop {
                return bad(format!("axis `{}` needs finite start <= stop", axis.param.name()));
            }
            if self.axes[..i].iter().any(|a| a.param == axis.param) {
                return bad(format!("axis `{}` given twice", axis.param.name()));
            }
        }
        for p in self.mode.required() {
            if self.fixed.get(*p).is_none() && !self.axes.iter().any(|a| a.param == *p) {
                return Err(Error::InvalidParameter {
                    name: p.name(),
                    reason: format!("required but neither set nor swept (--{})", p.name()),
                });
            }
        }
        Ok(())
    }

    /// Grid points in row-major order of the axis indices.
    pub fn points(&self) -> Vec<ParamSet> {
        let mut points = vec![self.fixed.clone()];
        for axis in &self.axes {
            let values = axis.values();
            points = points
                .into_iter()
                .flat_map(|base| values.iter().map(move |v| base.clone().with(axis.param, *v)))
                .collect();
        }
        points
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Evaluates every grid point on a pool of `threads` workers (`0` = one per
/// core). Output order is the grid order.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<Vec<RunRecord>> {
    spec.validate()?;
    let points = spec.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter {
            name: "threads",
            reason: e.to_string(),
        })?;
    pool.install(|| points.par_iter().map(|p| run_capacity(spec.mode, p)).collect())
}

/// Flat key/value configuration mirroring the flag names.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub mode: Option<Mode>,
    pub g: Option<f64>,
    pub delta: Option<f64>,
    pub t: Option<f64>,
    pub g2: Option<f64>,
    pub delta2: Option<f64>,
    pub t2: Option<f64>,
    #[serde(rename = "T")]
    pub transmittance: Option<f64>,
    pub kappa: Option<f64>,
    pub gamma: Option<f64>,
    pub nu: Option<f64>,
    #[serde(default)]
    pub sweep: Vec<String>,
    pub out: Option<String>,
    pub json: Option<bool>,
    pub threads: Option<usize>,
    pub stamp: Option<bool>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParameter {
            name: "config",
            reason: e.to_string(),
        })
    }

    pub fn params(&self) -> ParamSet {
        let pairs = [
            (Param::G, self.g),
            (Param::Delta, self.delta),
            (Param::T, self.t),
            (Param::G2, self.g2),
            (Param::Delta2, self.delta2),
            (Param::T2, self.t2),
            (Param::Transmittance, self.transmittance),
            (Param::Kappa, self.kappa),
            (Param::Gamma, self.gamma),
            (Param::Nu, self.nu),
        ];
        let mut set = ParamSet::new();
        for (p, v) in pairs {
            if let Some(v) = v {
                set.set(p, v);
            }
        }
        set
    }
}
