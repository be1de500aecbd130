//! Parameter sweeps, figure presets and output files.
//!
//! A sweep evaluates every requested protocol on the cartesian grid
//! `l x n x d x |alpha|^2`, in parallel, and emits rows ordered by
//! `(protocol, l, n, d, alpha_sq)`. Output is byte-for-byte reproducible.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::fisher_bounds::{
    heisenberg_limit, mean_photon_pacs, qcrb_independent, qcrb_linear, qcrb_nonlinear,
    qcrb_trace_inverse, qfi_independent, qfim_linear, standard_quantum_limit, FisherMatrix,
    Protocol,
};
use crate::fock_oracle::{
    generators_on_modes, qfim_numeric, reference_bounds, ReferenceConstruction, Spectrum,
};
use crate::homodyne::{variance_homodyne, MarginalParams, QuadratureGrid};
use crate::states::{ghz_pacs_state, Parity, StateParams};

/// Exact CSV header.
pub const CSV_HEADER: [&str; 11] = [
    "protocol",
    "l",
    "n",
    "d",
    "alpha_sq",
    "qcrb",
    "qcrb_trace_inverse",
    "mean_photon",
    "hl",
    "sql",
    "flags",
];

/// Significant digits of every numeric field in the output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Environment variable naming an optional `key=value` config file.
pub const CONFIG_ENV: &str = "QMETRO_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid {field}: {reason}")]
    Spec { field: &'static str, reason: String },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl SweepError {
    fn spec(field: &'static str, reason: impl Into<String>) -> Self {
        SweepError::Spec {
            field,
            reason: reason.into(),
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        SweepError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// 2 for a rejected spec, 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Spec { .. } => 2,
            SweepError::Io { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(SweepError::spec(
                "format",
                format!("expected csv or json, got `{other}`"),
            )),
        }
    }
}

/// `steps` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaRange {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl AlphaRange {
    pub fn point(value: f64) -> Self {
        Self {
            start: value,
            stop: value,
            steps: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let i = i as f64;
                (self.start * (last - i) + self.stop * i) / last
            })
            .collect()
    }
}

impl FromStr for AlphaRange {
    type Err = SweepError;

    /// `start:stop:steps` or a single value.
    fn from_str(s: &str) -> Result<Self, SweepError> {
        let bad = |reason: String| SweepError::spec("alpha_sq", reason);
        let number = |t: &str| -> Result<f64, SweepError> {
            t.trim()
                .parse()
                .map_err(|_| bad(format!("`{t}` is not a number")))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Self::point(number(v)?)),
            [a, b, n] => Ok(Self {
                start: number(a)?,
                stop: number(b)?,
                steps: n
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("`{n}` is not a step count")))?,
            }),
            _ => Err(bad(format!("expected start:stop:steps, got `{s}`"))),
        }
    }
}

/// Comma-separated integers; items may be inclusive ranges `a..=b`.
fn parse_list<T: TryFrom<u64>>(field: &'static str, s: &str) -> Result<Vec<T>, SweepError> {
    let item = |t: &str| -> Result<u64, SweepError> {
        t.trim()
            .parse()
            .map_err(|_| SweepError::spec(field, format!("`{t}` is not a non-negative integer")))
    };
    let narrow = |v: u64| {
        T::try_from(v).map_err(|_| SweepError::spec(field, format!("{v} is out of range")))
    };
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        if let Some((a, b)) = part.split_once("..=") {
            let (a, b) = (item(a)?, item(b)?);
            if b < a {
                return Err(SweepError::spec(field, format!("empty range `{part}`")));
            }
            for v in a..=b {
                out.push(narrow(v)?);
            }
        } else {
            out.push(narrow(item(part)?)?);
        }
    }
    Ok(out)
}

fn parse_protocols(s: &str) -> Result<Vec<Protocol>, SweepError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim().parse::<Protocol>().map_err(|_| {
                SweepError::spec("protocols", format!("unknown protocol `{}`", p.trim()))
            })
        })
        .collect()
}

/// A validated sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub protocols: Vec<Protocol>,
    pub alpha_sq: AlphaRange,
    pub d: Vec<usize>,
    pub n: Vec<u32>,
    pub l: Vec<u8>,
    pub cutoff_override: Option<usize>,
    pub output_path: PathBuf,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.protocols.is_empty() {
            return Err(SweepError::spec(
                "protocols",
                "at least one protocol is required",
            ));
        }
        let AlphaRange { start, stop, steps } = self.alpha_sq;
        if steps == 0 {
            return Err(SweepError::spec("alpha_sq", "steps must be at least 1"));
        }
        if !(start.is_finite() && stop.is_finite()) || start < 0.0 || stop < start {
            return Err(SweepError::spec(
                "alpha_sq",
                format!("need 0 <= start <= stop, got {start}:{stop}"),
            ));
        }
        if steps == 1 && stop != start {
            return Err(SweepError::spec(
                "alpha_sq",
                "a single step needs start == stop",
            ));
        }
        if self.d.is_empty() || self.d.contains(&0) {
            return Err(SweepError::spec(
                "d",
                "need a non-empty list of positive integers",
            ));
        }
        if self.n.is_empty() {
            return Err(SweepError::spec("n", "need a non-empty list"));
        }
        if self.l.is_empty() || self.l.iter().any(|&l| l > 1) {
            return Err(SweepError::spec(
                "l",
                "need a non-empty list drawn from {0, 1}",
            ));
        }
        if self.cutoff_override == Some(0) {
            return Err(SweepError::spec("cutoff", "must be positive"));
        }
        Ok(())
    }
}

/// Raw sweep settings as read from flags or a config file, before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOptions {
    pub protocols: Option<String>,
    pub alpha_sq: Option<String>,
    pub d: Option<String>,
    pub n: Option<String>,
    pub l: Option<String>,
    pub cutoff: Option<String>,
    pub out: Option<String>,
    pub format: Option<String>,
}

impl SweepOptions {
    /// `key=value` lines; `#` starts a comment. Keys match the long flag names.
    pub fn from_config(text: &str) -> Result<Self, SweepError> {
        let mut opts = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(SweepError::spec(
                    "config",
                    format!("line {}: expected key=value", lineno + 1),
                ));
            };
            let value = Some(value.trim().to_string());
            match key.trim().replace('_', "-").as_str() {
                "protocols" => opts.protocols = value,
                "alpha-sq" => opts.alpha_sq = value,
                "d" => opts.d = value,
                "n" => opts.n = value,
                "l" => opts.l = value,
                "cutoff" => opts.cutoff = value,
                "out" => opts.out = value,
                "format" => opts.format = value,
                other => {
                    return Err(SweepError::spec(
                        "config",
                        format!("line {}: unknown key `{other}`", lineno + 1),
                    ))
                }
            }
        }
        Ok(opts)
    }

    /// Reads the file named by [`CONFIG_ENV`], if set.
    pub fn from_env() -> Result<Self, SweepError> {
        match std::env::var_os(CONFIG_ENV) {
            None => Ok(Self::default()),
            Some(path) => {
                let path = PathBuf::from(path);
                let text = std::fs::read_to_string(&path).map_err(|e| SweepError::io(&path, e))?;
                Self::from_config(&text)
            }
        }
    }

    /// Fields set in `flags` replace those in `self`.
    pub fn overridden_by(self, flags: SweepOptions) -> Self {
        Self {
            protocols: flags.protocols.or(self.protocols),
            alpha_sq: flags.alpha_sq.or(self.alpha_sq),
            d: flags.d.or(self.d),
            n: flags.n.or(self.n),
            l: flags.l.or(self.l),
            cutoff: flags.cutoff.or(self.cutoff),
            out: flags.out.or(self.out),
            format: flags.format.or(self.format),
        }
    }

    /// Unset fields fall back to the fig. 1(a) axes with the three
    /// closed-form protocols, written as CSV to stdout.
    pub fn into_spec(self) -> Result<SweepSpec, SweepError> {
        let spec = SweepSpec {
            protocols: parse_protocols(
                self.protocols
                    .as_deref()
                    .unwrap_or("independent,linear,nonlinear"),
            )?,
            alpha_sq: self.alpha_sq.as_deref().unwrap_or("0.1:8:80").parse()?,
            d: parse_list("d", self.d.as_deref().unwrap_or("5"))?,
            n: parse_list("n", self.n.as_deref().unwrap_or("0,1,4,7,10"))?,
            l: parse_list("l", self.l.as_deref().unwrap_or("0"))?,
            cutoff_override: self
                .cutoff
                .as_deref()
                .map(|c| {
                    c.trim()
                        .parse()
                        .map_err(|_| SweepError::spec("cutoff", format!("`{c}` is not an integer")))
                })
                .transpose()?,
            output_path: PathBuf::from(self.out.as_deref().unwrap_or("-")),
            format: self.format.as_deref().unwrap_or("csv").parse()?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Why a numeric column is empty, or what kind of row this is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    PsdViolation,
    DegenerateState,
    ZeroDerivative,
    SingularQfim,
    InsufficientTruncation,
    GridInadequate,
    DivisionByZero,
    NoPhotons,
    InvalidParameter,
    ReferenceConstruction,
    Noon,
    Ecs,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::PsdViolation => "psd_violation",
            Flag::DegenerateState => "degenerate_state",
            Flag::ZeroDerivative => "zero_derivative",
            Flag::SingularQfim => "singular_qfim",
            Flag::InsufficientTruncation => "insufficient_truncation",
            Flag::GridInadequate => "grid_inadequate",
            Flag::DivisionByZero => "division_by_zero",
            Flag::NoPhotons => "no_photons",
            Flag::InvalidParameter => "invalid_parameter",
            Flag::ReferenceConstruction => "reference_construction",
            Flag::Noon => "noon",
            Flag::Ecs => "ecs",
        }
    }

    fn from_error(err: &Error) -> Self {
        match err {
            Error::PsdViolation { .. } => Flag::PsdViolation,
            Error::DegenerateState(_) => Flag::DegenerateState,
            Error::ZeroDerivative { .. } => Flag::ZeroDerivative,
            Error::SingularMatrix { .. } => Flag::SingularQfim,
            Error::InsufficientTruncation { .. } => Flag::InsufficientTruncation,
            Error::GridInadequate { .. } => Flag::GridInadequate,
            Error::DivisionByZero(_) => Flag::DivisionByZero,
            _ => Flag::InvalidParameter,
        }
    }
}

/// One output line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub protocol: Protocol,
    pub l: u8,
    pub n: u32,
    pub d: usize,
    pub alpha_sq: f64,
    pub qcrb: Option<f64>,
    pub qcrb_trace_inverse: Option<f64>,
    pub mean_photon: Option<f64>,
    pub hl: Option<f64>,
    pub sql: Option<f64>,
    pub flags: Vec<Flag>,
}

impl SweepRow {
    fn empty(protocol: Protocol, l: u8, n: u32, d: usize, alpha_sq: f64) -> Self {
        Self {
            protocol,
            l,
            n,
            d,
            alpha_sq,
            qcrb: None,
            qcrb_trace_inverse: None,
            mean_photon: None,
            hl: None,
            sql: None,
            flags: Vec::new(),
        }
    }

    fn keep(&mut self, value: crate::Result<f64>) -> Option<f64> {
        match value {
            Ok(v) if v.is_finite() => Some(v),
            Ok(_) => {
                self.flag(Flag::DivisionByZero);
                None
            }
            Err(e) => {
                self.flag(Flag::from_error(&e));
                None
            }
        }
    }

    fn flag(&mut self, flag: Flag) {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
    }

    fn set_photons(&mut self, mean_photon: f64) {
        self.mean_photon = Some(mean_photon).filter(|v| v.is_finite());
        self.hl = self.keep(heisenberg_limit(mean_photon));
        if self.hl.is_none() {
            self.flags.retain(|f| *f != Flag::InvalidParameter);
            self.flag(Flag::NoPhotons);
        }
        self.sql = standard_quantum_limit(mean_photon).ok();
    }

    pub fn flags_joined(&self) -> String {
        self.flags
            .iter()
            .map(|f| f.as_str())
            .collect::<Vec<_>>()
            .join(";")
    }

    fn sort_key(&self) -> (&'static str, u8, u32, usize) {
        (self.protocol.as_str(), self.l, self.n, self.d)
    }
}

/// One grid point to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Job {
    Ghz {
        protocol: Protocol,
        l: u8,
        n: u32,
        d: usize,
        alpha_sq: f64,
        cutoff: Option<usize>,
    },
    /// Reference construction, one row per closed-form protocol; `axis`
    /// fills the `alpha_sq` column.
    Reference {
        construction: ReferenceConstruction,
        d: usize,
        axis: f64,
    },
}

fn spec_jobs(spec: &SweepSpec) -> Vec<Job> {
    let alphas = spec.alpha_sq.values();
    let mut jobs = Vec::new();
    for &protocol in &spec.protocols {
        for &l in &spec.l {
            for &n in &spec.n {
                for &d in &spec.d {
                    for &alpha_sq in &alphas {
                        jobs.push(Job::Ghz {
                            protocol,
                            l,
                            n,
                            d,
                            alpha_sq,
                            cutoff: spec.cutoff_override,
                        });
                    }
                }
            }
        }
    }
    jobs
}

fn ghz_row(
    protocol: Protocol,
    l: u8,
    n: u32,
    d: usize,
    alpha_sq: f64,
    cutoff: Option<usize>,
) -> SweepRow {
    let mut row = SweepRow::empty(protocol, l, n, d, alpha_sq);
    let parity = if l == 0 {
        Parity::Symmetric
    } else {
        Parity::Antisymmetric
    };
    let params = match StateParams::from_alpha_sq(alpha_sq, n, d, parity) {
        Ok(p) => p,
        Err(e) => {
            row.flag(Flag::from_error(&e));
            return row;
        }
    };
    row.set_photons(mean_photon_pacs(alpha_sq, n));
    match protocol {
        Protocol::Independent => {
            row.qcrb = row.keep(qcrb_independent(&params).map(|b| b.value));
            let diag = qfi_independent(&params).map(|f| FisherMatrix::structured(d, f, 0.0));
            row.qcrb_trace_inverse =
                row.keep(diag.and_then(|f| qcrb_trace_inverse(&f)).map(|b| b.value));
        }
        Protocol::Linear => {
            row.qcrb = row.keep(qcrb_linear(&params).map(|b| b.value));
            let fisher = qfim_linear(&params);
            row.qcrb_trace_inverse =
                row.keep(fisher.and_then(|f| qcrb_trace_inverse(&f)).map(|b| b.value));
        }
        Protocol::Nonlinear => {
            row.qcrb = row.keep(qcrb_nonlinear(&params).map(|b| b.value));
        }
        Protocol::Homodyne => {
            let value = MarginalParams::new(params, 0.0).and_then(|m| {
                let grid = QuadratureGrid::for_joint(&params)?;
                variance_homodyne(&m, &grid).map(|b| b.value)
            });
            row.qcrb = row.keep(value);
        }
        Protocol::OracleTraceInverse => {
            let value = oracle_trace_inverse(&params, cutoff, Spectrum::Number);
            row.qcrb = row.keep(value.clone());
            row.qcrb_trace_inverse = value.ok();
        }
    }
    row
}

/// `Tr(F^{-1})` of the brute-force QFIM with generators on modes `1..=d`.
pub fn oracle_trace_inverse(
    params: &StateParams,
    cutoff: Option<usize>,
    spectrum: Spectrum,
) -> crate::Result<f64> {
    let state = ghz_pacs_state(params, cutoff)?;
    let fisher = qfim_numeric(&state, &generators_on_modes(1..=params.d, spectrum))?;
    Ok(qcrb_trace_inverse(&fisher)?.value)
}

fn reference_rows(construction: ReferenceConstruction, d: usize, axis: f64) -> Vec<SweepRow> {
    let bounds = reference_bounds(construction, d);
    [Protocol::Independent, Protocol::Linear, Protocol::Nonlinear]
        .into_iter()
        .map(|protocol| {
            let mut row = SweepRow::empty(protocol, 0, 0, d, axis);
            row.flag(Flag::ReferenceConstruction);
            row.flag(match construction {
                ReferenceConstruction::Noon { .. } => Flag::Noon,
                ReferenceConstruction::Ecs { .. } => Flag::Ecs,
            });
            match &bounds {
                Ok(b) => {
                    row.set_photons(b.mean_photons);
                    let value = match protocol {
                        Protocol::Independent => b.independent_linear,
                        Protocol::Nonlinear => b.simultaneous_nonlinear,
                        _ => b.simultaneous_linear,
                    };
                    row.qcrb = row.keep(Ok(value));
                    row.qcrb_trace_inverse = row.qcrb;
                }
                Err(e) => row.flag(Flag::from_error(e)),
            }
            row
        })
        .collect()
}

fn evaluate(jobs: &[Job]) -> Vec<SweepRow> {
    let mut rows: Vec<SweepRow> = jobs
        .par_iter()
        .flat_map_iter(|job| match *job {
            Job::Ghz {
                protocol,
                l,
                n,
                d,
                alpha_sq,
                cutoff,
            } => vec![ghz_row(protocol, l, n, d, alpha_sq, cutoff)],
            Job::Reference {
                construction,
                d,
                axis,
            } => reference_rows(construction, d, axis),
        })
        .collect();
    rows.sort_by(|a, b| {
        a.sort_key()
            .cmp(&b.sort_key())
            .then(a.alpha_sq.total_cmp(&b.alpha_sq))
            .then_with(|| a.flags.cmp(&b.flags))
    });
    rows
}

/// Evaluates a sweep without writing anything.
pub fn compute_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    Ok(evaluate(&spec_jobs(spec)))
}

/// Evaluates a sweep and writes it to `spec.output_path`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    let rows = compute_sweep(spec)?;
    write_output(&render(&rows, spec.format), &spec.output_path)?;
    Ok(rows)
}

/// `%g`-style formatting with [`SIGNIFICANT_DIGITS`] significant digits.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent in scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exponent < -4 || exponent >= SIGNIFICANT_DIGITS as i32 {
        format!("{}e{}", trim(mantissa), exponent)
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

fn rounded(x: Option<f64>) -> Option<f64> {
    x.map(|v| format_number(v).parse().expect("formatted number parses"))
}

fn csv_field(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

/// Serialises rows; JSON carries the same rounded values as the CSV.
pub fn render(rows: &[SweepRow], format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(CSV_HEADER).expect("write to memory");
            for row in rows {
                writer
                    .write_record([
                        row.protocol.as_str().to_string(),
                        row.l.to_string(),
                        row.n.to_string(),
                        row.d.to_string(),
                        format_number(row.alpha_sq),
                        csv_field(row.qcrb),
                        csv_field(row.qcrb_trace_inverse),
                        csv_field(row.mean_photon),
                        csv_field(row.hl),
                        csv_field(row.sql),
                        row.flags_joined(),
                    ])
                    .expect("write to memory");
            }
            writer.into_inner().expect("flush to memory")
        }
        OutputFormat::Json => {
            let mirrored: Vec<SweepRow> = rows
                .iter()
                .map(|r| SweepRow {
                    alpha_sq: rounded(Some(r.alpha_sq)).unwrap_or(r.alpha_sq),
                    qcrb: rounded(r.qcrb),
                    qcrb_trace_inverse: rounded(r.qcrb_trace_inverse),
                    mean_photon: rounded(r.mean_photon),
                    hl: rounded(r.hl),
                    sql: rounded(r.sql),
                    ..r.clone()
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&mirrored).expect("rows serialise");
            out.push(b'\n');
            out
        }
    }
}

/// Writes `bytes` to `path`, or to stdout when `path` is `-`.
pub fn write_output(bytes: &[u8], path: &Path) -> Result<(), SweepError> {
    if path == Path::new("-") {
        let mut stdout = io::stdout().lock();
        return stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| SweepError::io(path, e));
    }
    File::create(path)
        .and_then(|mut f| f.write_all(bytes))
        .map_err(|e| SweepError::io(path, e))
}

/// Named sweeps matching the published figure axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig1d,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig7,
    Fig8,
    Section4Anchors,
}

impl Preset {
    pub const ALL: [Preset; 15] = [
        Preset::Fig1a,
        Preset::Fig1b,
        Preset::Fig1c,
        Preset::Fig1d,
        Preset::Fig2a,
        Preset::Fig2b,
        Preset::Fig2c,
        Preset::Fig2d,
        Preset::Fig3a,
        Preset::Fig3b,
        Preset::Fig3c,
        Preset::Fig3d,
        Preset::Fig7,
        Preset::Fig8,
        Preset::Section4Anchors,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1a => "fig1a",
            Preset::Fig1b => "fig1b",
            Preset::Fig1c => "fig1c",
            Preset::Fig1d => "fig1d",
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig2c => "fig2c",
            Preset::Fig2d => "fig2d",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
            Preset::Fig3c => "fig3c",
            Preset::Fig3d => "fig3d",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::Section4Anchors => "section4_anchors",
        }
    }

    fn figure_spec(protocol: Protocol, l: u8, over_d: bool) -> SweepSpec {
        SweepSpec {
            protocols: vec![protocol],
            alpha_sq: if over_d {
                AlphaRange::point(4.0)
            } else {
                AlphaRange {
                    start: 0.1,
                    stop: 8.0,
                    steps: 80,
                }
            },
            d: if over_d { (1..=12).collect() } else { vec![5] },
            n: vec![0, 1, 4, 7, 10],
            l: vec![l],
            cutoff_override: None,
            output_path: PathBuf::from("-"),
            format: OutputFormat::Csv,
        }
    }

    fn jobs(self) -> Vec<Job> {
        use Protocol::{Independent, Linear, Nonlinear};
        let figure = |protocol, l, over_d| spec_jobs(&Self::figure_spec(protocol, l, over_d));
        let reference = |constructions: Vec<(ReferenceConstruction, usize, f64)>| -> Vec<Job> {
            constructions
                .into_iter()
                .map(|(construction, d, axis)| Job::Reference {
                    construction,
                    d,
                    axis,
                })
                .collect()
        };
        match self {
            Preset::Fig1a => figure(Independent, 0, false),
            Preset::Fig1b => figure(Independent, 1, false),
            Preset::Fig1c => figure(Independent, 0, true),
            Preset::Fig1d => figure(Independent, 1, true),
            Preset::Fig2a => figure(Linear, 0, false),
            Preset::Fig2b => figure(Linear, 1, false),
            Preset::Fig2c => figure(Linear, 0, true),
            Preset::Fig2d => figure(Linear, 1, true),
            Preset::Fig3a => figure(Nonlinear, 0, false),
            Preset::Fig3b => figure(Nonlinear, 1, false),
            Preset::Fig3c => figure(Nonlinear, 0, true),
            Preset::Fig3d => figure(Nonlinear, 1, true),
            Preset::Fig7 => {
                // ECS on a |alpha|^2 grid; NOON with N = 5k photons, k in the alpha_sq column.
                let d = 5;
                let mut constructions: Vec<_> = (1..=16)
                    .map(|k| {
                        let alpha_sq = 0.5 * k as f64;
                        (ReferenceConstruction::Ecs { alpha_sq }, d, alpha_sq)
                    })
                    .collect();
                constructions.extend(
                    (1..=8).map(|k| (ReferenceConstruction::Noon { photons: d * k }, d, k as f64)),
                );
                reference(constructions)
            }
            Preset::Fig8 => {
                let mut constructions: Vec<_> = (1..=12)
                    .map(|d| (ReferenceConstruction::Ecs { alpha_sq: 4.0 }, d, 4.0))
                    .collect();
                constructions.extend(
                    (1..=12).map(|d| (ReferenceConstruction::Noon { photons: 4 * d }, d, 4.0)),
                );
                reference(constructions)
            }
            Preset::Section4Anchors => [(4, 4.0), (10, 10.0)]
                .into_iter()
                .map(|(n, alpha_sq)| Job::Ghz {
                    protocol: Independent,
                    l: 0,
                    n,
                    d: 1,
                    alpha_sq,
                    cutoff: None,
                })
                .collect(),
        }
    }

    pub fn compute(self) -> Vec<SweepRow> {
        evaluate(&self.jobs())
    }
}

impl FromStr for Preset {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                SweepError::spec(
                    "preset",
                    format!("unknown preset `{s}`; expected one of {}", names.join(", ")),
                )
            })
    }
}

/// Evaluates a preset and writes it to `out`.
pub fn run_preset(
    preset: Preset,
    out: &Path,
    format: OutputFormat,
) -> Result<Vec<SweepRow>, SweepError> {
    let rows = preset.compute();
    write_output(&render(&rows, format), out)?;
    Ok(rows)
}

/// Human-readable one-line summary of a row set, for logs.
pub fn summarize(rows: &[SweepRow]) -> String {
    let flagged = rows.iter().filter(|r| r.qcrb.is_none()).count();
    let mut s = format!("{} rows", rows.len());
    if flagged > 0 {
        let _ = write!(s, ", {flagged} without a bound");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_point(protocols: &str) -> SweepSpec {
        SweepOptions {
            protocols: Some(protocols.into()),
            alpha_sq: Some("4".into()),
            d: Some("5".into()),
            n: Some("1".into()),
            l: Some("0".into()),
            ..Default::default()
        }
        .into_spec()
        .unwrap()
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(4.0), "4");
        assert_eq!(format_number(4.000000000000001), "4");
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(10.388730582), "10.388730582");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(-2.5e-7), "-2.5e-7");
        assert_eq!(format_number(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_number(0.0001234), "0.0001234");
    }

    #[test]
    fn alpha_grid_hits_round_values() {
        let values = AlphaRange {
            start: 0.1,
            stop: 8.0,
            steps: 80,
        }
        .values();
        assert_eq!(values.len(), 80);
        assert_eq!(values[0], 0.1);
        assert_eq!(values[79], 8.0);
        assert_eq!(format_number(values[39]), "4");
        assert_eq!(format_number(values[49]), "5");
    }

    #[test]
    fn validation_names_the_field() {
        let field_of = |opts: SweepOptions| match opts.into_spec() {
            Err(SweepError::Spec { field, .. }) => field,
            other => panic!("expected a spec error, got {other:?}"),
        };
        assert_eq!(
            field_of(SweepOptions {
                protocols: Some("".into()),
                ..Default::default()
            }),
            "protocols"
        );
        assert_eq!(
            field_of(SweepOptions {
                protocols: Some("fast".into()),
                ..Default::default()
            }),
            "protocols"
        );
        assert_eq!(
            field_of(SweepOptions {
                alpha_sq: Some("3:1:4".into()),
                ..Default::default()
            }),
            "alpha_sq"
        );
        assert_eq!(
            field_of(SweepOptions {
                alpha_sq: Some("1:2:0".into()),
                ..Default::default()
            }),
            "alpha_sq"
        );
        assert_eq!(
            field_of(SweepOptions {
                alpha_sq: Some("-1".into()),
                ..Default::default()
            }),
            "alpha_sq"
        );
        assert_eq!(
            field_of(SweepOptions {
                d: Some("0".into()),
                ..Default::default()
            }),
            "d"
        );
        assert_eq!(
            field_of(SweepOptions {
                l: Some("2".into()),
                ..Default::default()
            }),
            "l"
        );
        assert_eq!(
            field_of(SweepOptions {
                n: Some("".into()),
                ..Default::default()
            }),
            "n"
        );
        assert_eq!(
            field_of(SweepOptions {
                format: Some("xml".into()),
                ..Default::default()
            }),
            "format"
        );
        let err = SweepOptions {
            d: Some("x".into()),
            ..Default::default()
        }
        .into_spec()
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn list_syntax() {
        assert_eq!(
            parse_list::<usize>("d", "1..=4,7").unwrap(),
            vec![1, 2, 3, 4, 7]
        );
        assert!(parse_list::<usize>("d", "4..=1").is_err());
        assert!(parse_list::<u32>("n", "-1").is_err());
    }

    #[test]
    fn config_file_and_flag_precedence() {
        let file =
            SweepOptions::from_config("# comment\nprotocols = linear\nalpha_sq=1:2:3\nd=2\n")
                .unwrap();
        let flags = SweepOptions {
            d: Some("3".into()),
            ..Default::default()
        };
        let spec = file.overridden_by(flags).into_spec().unwrap();
        assert_eq!(spec.protocols, vec![Protocol::Linear]);
        assert_eq!(
            spec.alpha_sq,
            AlphaRange {
                start: 1.0,
                stop: 2.0,
                steps: 3
            }
        );
        assert_eq!(spec.d, vec![3]);
        assert!(SweepOptions::from_config("bogus=1").is_err());
        assert!(SweepOptions::from_config("no equals sign").is_err());
    }

    #[test]
    fn one_row_per_protocol_for_a_single_point() {
        let spec = single_point("independent,linear,nonlinear,homodyne,oracle");
        let rows = compute_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 5);
        let labels: Vec<_> = rows.iter().map(|r| r.protocol.as_str()).collect();
        assert_eq!(
            labels,
            ["homodyne", "independent", "linear", "nonlinear", "oracle"]
        );
        for row in &rows {
            assert!(row.qcrb.is_some() || !row.flags.is_empty(), "{row:?}");
        }
        let homodyne = &rows[0];
        assert_eq!(homodyne.flags, vec![Flag::ZeroDerivative]);
        let linear = &rows[2];
        assert!(linear.qcrb.is_some());
        assert!(linear.qcrb_trace_inverse.is_none());
        assert!(linear.flags.contains(&Flag::PsdViolation));
        let independent = &rows[1];
        assert!(
            (independent.qcrb.unwrap() - independent.qcrb_trace_inverse.unwrap()).abs() <= 1e-12
        );
    }

    #[test]
    fn degenerate_points_are_flagged() {
        let mut spec = single_point("independent,linear");
        spec.alpha_sq = AlphaRange::point(0.0);
        spec.l = vec![1];
        spec.n = vec![0];
        let rows = compute_sweep(&spec).unwrap();
        for row in rows {
            assert!(row.qcrb.is_none());
            assert!(row.flags.contains(&Flag::DegenerateState));
            assert!(row.flags.contains(&Flag::NoPhotons));
        }
    }

    #[test]
    fn small_cutoff_override_is_flagged() {
        let mut spec = single_point("oracle");
        spec.cutoff_override = Some(3);
        let rows = compute_sweep(&spec).unwrap();
        assert_eq!(rows[0].flags, vec![Flag::InsufficientTruncation]);
    }

    #[test]
    fn csv_header_and_json_mirror() {
        let rows = compute_sweep(&single_point("independent,nonlinear")).unwrap();
        let csv = String::from_utf8(render(&rows, OutputFormat::Csv)).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "protocol,l,n,d,alpha_sq,qcrb,qcrb_trace_inverse,mean_photon,hl,sql,flags"
        );
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..5], ["independent", "0", "1", "5", "4"]);
        let json: serde_json::Value =
            serde_json::from_slice(&render(&rows, OutputFormat::Json)).unwrap();
        assert_eq!(json[0]["protocol"], "independent");
        assert_eq!(
            format_number(json[1]["qcrb"].as_f64().unwrap()),
            first_field(&csv, 2, 5)
        );
        assert!(json[1]["qcrb_trace_inverse"].is_null());
    }

    fn first_field(csv: &str, line: usize, column: usize) -> String {
        csv.lines()
            .nth(line)
            .unwrap()
            .split(',')
            .nth(column)
            .unwrap()
            .to_string()
    }

    #[test]
    fn presets_parse_and_unknown_names_fail() {
        for preset in Preset::ALL {
            assert_eq!(preset.name().parse::<Preset>().unwrap(), preset);
        }
        let err = "fig9".parse::<Preset>().unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unwritable_output_is_an_io_error() {
        let err = write_output(b"x", Path::new("/nonexistent-dir/out.csv")).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
