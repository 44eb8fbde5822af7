//! Table-producing commands behind the `ckstates` binary.
//!
//! Configuration is layered: built-in defaults, then a `key = value` config
//! file, then command-line flags. Every command writes into any
//! [`Write`], so the whole surface is testable without a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::modes::{make_params, PhysicalParams, SqueezeParams};
use crate::observables::{
    coherent_hamiltonian_expectation, hamiltonian_expectation, uncertainty_product,
};
use crate::oracle::grid::{make_grid_with, MAX_GRID_POINTS, MIN_GRID_POINTS};
use crate::oracle::report::{Status, ValidationReport};
use crate::oracle::tolerances::Tolerances;
use crate::oracle::validate::{validate_with, Check, LatticePoint, Schedule, ValidationOptions};
use crate::states::{BConvention, StateSpec, WaveFunction, MAX_HERMITE_ORDER};

pub const EXIT_SUCCESS: u8 = 0;
pub const EXIT_VALIDATION_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    /// One JSON object per line; the first line describes the columns.
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Number,
    Coherent,
}

#[derive(Debug, Parser)]
#[command(
    name = "ckstates",
    version,
    about = "Exact states of the Caldirola-Kanai oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Δq, Δp, their product and the bound over the time window.
    Uncertainty(Flags),
    /// Re Ψ, Im Ψ and |Ψ|² on the oracle grid at t0.
    Wavefunction(Flags),
    /// Coherent-state phase-space trajectory and ⟨H⟩.
    Trajectory(Flags),
    /// ⟨H⟩ over the time window.
    Hamiltonian(Flags),
    /// Run the numerical validation suite.
    Validate(Flags),
}

/// Flags shared by every subcommand; unset flags fall back to the config
/// file and then to the defaults of [`RunConfig`].
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Damping rate γ, 0 ≤ γ < 2ω0 [default: 1.2]
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Natural frequency ω0 [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub omega0: Option<f64>,
    /// Mass at t = 0 [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub m0: Option<f64>,
    /// Reduced Planck constant [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    /// Squeeze magnitude [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Squeeze phase [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Number-state index [default: 0]
    #[arg(long)]
    pub n: Option<usize>,
    /// Coherent ⟨q⟩ at t0; setting it selects a coherent state
    #[arg(long, allow_hyphen_values = true)]
    pub qc: Option<f64>,
    /// Coherent ⟨p⟩ at t0; setting it selects a coherent state
    #[arg(long, allow_hyphen_values = true)]
    pub pc: Option<f64>,
    /// State kind; inferred from --qc/--pc when absent
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Start of the time window [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// End of the time window [default: 10]
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    /// Number of times in the window, end points included [default: 101]
    #[arg(long)]
    pub nt: Option<usize>,
    /// Minimum grid size; rounded up to 2^k + 1 [default: adaptive, ≥ 513]
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `key = value` config file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `key = value` file of tolerance overrides
    #[arg(long)]
    pub tol_overrides: Option<PathBuf>,
    /// Evaluate states with the wrong sign of Re B (negative control).
    #[arg(long, hide = true)]
    pub debug_flip_b: bool,
}

/// Fully resolved run settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub m0: f64,
    pub gamma: f64,
    pub omega0: f64,
    pub hbar: f64,
    pub r: f64,
    pub phi: f64,
    pub n: usize,
    pub kind: Kind,
    pub qc: f64,
    pub pc: f64,
    pub t0: f64,
    pub t1: f64,
    pub nt: usize,
    pub grid_points: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tolerances: Tolerances,
    /// Validate only `(γ, r, φ)` instead of the default lattice.
    pub single_point: bool,
    pub flip_b: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m0: 1.0,
            gamma: 1.2,
            omega0: 1.0,
            hbar: 1.0,
            r: 0.0,
            phi: 0.0,
            n: 0,
            kind: Kind::Number,
            qc: 0.0,
            pc: 0.0,
            t0: 0.0,
            t1: 10.0,
            nt: 101,
            grid_points: None,
            format: Format::Csv,
            out: None,
            tolerances: Tolerances::default(),
            single_point: false,
            flip_b: false,
        }
    }
}

fn usage(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse<T: std::str::FromStr>(field: &str, value: &str) -> Result<T, Error> {
    value
        .trim()
        .parse()
        .map_err(|_| usage(field, format!("cannot parse `{}`", value.trim())))
}

/// `key = value` lines; blank lines and `#` comments are ignored.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>, Error> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(&format!("line {}", i + 1), "expected `key = value`"))?;
        out.push((key.trim().replace('_', "-"), value.trim().to_string()));
    }
    Ok(out)
}

fn read_file(field: &str, path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| usage(field, format!("{}: {e}", path.display())))
}

#[derive(Default)]
struct Pending {
    kind: Option<Kind>,
    displaced: bool,
    tol_overrides: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults, then `flags.config`, then the flags themselves.
    pub fn resolve(flags: &Flags) -> Result<Self, Error> {
        let mut cfg = Self::default();
        let mut pending = Pending::default();
        if let Some(path) = &flags.config {
            for (key, value) in parse_key_values(&read_file("config", path)?)? {
                cfg.set(&key, &value, &mut pending)?;
            }
        }
        cfg.apply_flags(flags, &mut pending);
        cfg.kind = pending.kind.unwrap_or(if pending.displaced {
            Kind::Coherent
        } else {
            Kind::Number
        });
        if let Some(path) = flags
            .tol_overrides
            .as_ref()
            .or(pending.tol_overrides.as_ref())
        {
            for (key, value) in parse_key_values(&read_file("tol-overrides", path)?)? {
                let key = key.replace('-', "_");
                let v = parse(&key, &value)?;
                cfg.tolerances.set(&key, v)?;
            }
        }
        cfg.check()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str, pending: &mut Pending) -> Result<(), Error> {
        match key {
            "gamma" => self.gamma = parse(key, value)?,
            "omega0" => self.omega0 = parse(key, value)?,
            "m0" => self.m0 = parse(key, value)?,
            "hbar" => self.hbar = parse(key, value)?,
            "r" => {
                self.r = parse(key, value)?;
                self.single_point = true;
            }
            "phi" => {
                self.phi = parse(key, value)?;
                self.single_point = true;
            }
            "n" => self.n = parse(key, value)?,
            "qc" => {
                self.qc = parse(key, value)?;
                pending.displaced = true;
            }
            "pc" => {
                self.pc = parse(key, value)?;
                pending.displaced = true;
            }
            "kind" => {
                pending.kind = Some(
                    Kind::from_str(value, true)
                        .map_err(|_| usage(key, "expected `number` or `coherent`"))?,
                )
            }
            "t0" => self.t0 = parse(key, value)?,
            "t1" => self.t1 = parse(key, value)?,
            "nt" => self.nt = parse(key, value)?,
            "grid-points" => self.grid_points = Some(parse(key, value)?),
            "format" => {
                self.format = Format::from_str(value, true)
                    .map_err(|_| usage(key, "expected `csv` or `json`"))?
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "tol-overrides" => pending.tol_overrides = Some(PathBuf::from(value)),
            _ => return Err(usage(key, "unknown key")),
        }
        Ok(())
    }

    fn apply_flags(&mut self, f: &Flags, pending: &mut Pending) {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = f.$field { self.$field = v; })*
            };
        }
        take!(gamma, omega0, m0, hbar, r, phi, n, qc, pc, t0, t1, nt);
        if f.r.is_some() || f.phi.is_some() {
            self.single_point = true;
        }
        if f.qc.is_some() || f.pc.is_some() {
            pending.displaced = true;
        }
        if f.kind.is_some() {
            pending.kind = f.kind;
        }
        if f.grid_points.is_some() {
            self.grid_points = f.grid_points;
        }
        if let Some(format) = f.format {
            self.format = format;
        }
        if f.out.is_some() {
            self.out = f.out.clone();
        }
        self.flip_b |= f.debug_flip_b;
    }

    fn check(&self) -> Result<(), Error> {
        self.params()?;
        self.squeeze()?;
        if self.n > MAX_HERMITE_ORDER {
            return Err(usage("n", format!("must be at most {MAX_HERMITE_ORDER}")));
        }
        for (name, v) in [
            ("qc", self.qc),
            ("pc", self.pc),
            ("t0", self.t0),
            ("t1", self.t1),
        ] {
            if !v.is_finite() {
                return Err(usage(name, "must be finite"));
            }
        }
        if self.t1 < self.t0 {
            return Err(usage("t1", "must not precede t0"));
        }
        if self.nt == 0 {
            return Err(usage("nt", "must be at least 1"));
        }
        if matches!(self.grid_points, Some(g) if g > MAX_GRID_POINTS) {
            return Err(usage(
                "grid-points",
                format!("must be at most {MAX_GRID_POINTS}"),
            ));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<PhysicalParams, Error> {
        make_params(self.m0, self.gamma, self.omega0, self.hbar).map_err(|e| match e {
            Error::InvalidParameter { name, .. } => usage(name, e.to_string()),
            Error::NotUnderdamped { .. } => usage("gamma", e.to_string()),
            other => other,
        })
    }

    pub fn squeeze(&self) -> Result<SqueezeParams, Error> {
        SqueezeParams::new(self.r, self.phi).map_err(|e| match e {
            Error::InvalidParameter { name, .. } => usage(name, e.to_string()),
            other => other,
        })
    }

    pub fn spec(&self) -> Result<StateSpec, Error> {
        match self.kind {
            Kind::Number => StateSpec::number(self.n, self.squeeze()?),
            Kind::Coherent => StateSpec::coherent(self.qc, self.pc, self.squeeze()?),
        }
    }

    /// `nt` evenly spaced times from `t0` to `t1` inclusive.
    pub fn times(&self) -> Vec<f64> {
        if self.nt == 1 {
            return vec![self.t0];
        }
        let step = (self.t1 - self.t0) / (self.nt - 1) as f64;
        (0..self.nt).map(|k| self.t0 + k as f64 * step).collect()
    }

    fn convention(&self) -> BConvention {
        if self.flip_b {
            BConvention::FlippedSign
        } else {
            BConvention::Normalizable
        }
    }

    fn wave(&self) -> Result<WaveFunction, Error> {
        Ok(WaveFunction::new(&self.params()?, &self.spec()?, self.t0)
            .with_convention(self.convention()))
    }
}

/// Rows of numbers under a `name[unit]` header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<(&'static str, &'static str)>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// Column `name` as a vector.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|(c, _)| *c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                let header: Vec<String> = self
                    .columns
                    .iter()
                    .map(|(n, u)| format!("{n}[{u}]"))
                    .collect();
                writeln!(w, "{}", header.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
                    writeln!(w, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let columns: Vec<_> = self
                    .columns
                    .iter()
                    .map(|(n, u)| serde_json::json!({ "name": n, "unit": u }))
                    .collect();
                writeln!(
                    w,
                    "{}",
                    serde_json::json!({ "command": self.command, "columns": columns })
                )?;
                for row in &self.rows {
                    let mut line = String::from("{");
                    for (i, ((name, _), v)) in self.columns.iter().zip(row).enumerate() {
                        if i > 0 {
                            line.push(',');
                        }
                        let _ = write!(
                            line,
                            "\"{name}\":{}",
                            serde_json::to_string(v).expect("f64 serializes")
                        );
                    }
                    line.push('}');
                    writeln!(w, "{line}")?;
                }
            }
        }
        Ok(())
    }
}

/// `(t, dq, dp, product, bound, product/bound)` with
/// `bound = (ħ/2)σ0(2n+1)`. Coherent states share the `n = 0` values.
pub fn cmd_uncertainty(cfg: &RunConfig) -> Result<Table, Error> {
    let params = cfg.params()?;
    let squeeze = cfg.squeeze()?;
    let n = match cfg.kind {
        Kind::Number => cfg.n,
        Kind::Coherent => 0,
    };
    let rows = cfg
        .times()
        .par_iter()
        .map(|&t| {
            let rec = uncertainty_product(&params, n, &squeeze, t)?;
            let bound = rec.bound * (2 * n + 1) as f64;
            Ok(vec![
                t,
                rec.dq,
                rec.dp,
                rec.product,
                bound,
                rec.product / bound,
            ])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table {
        command: "uncertainty",
        columns: vec![
            ("t", "time"),
            ("dq", "length"),
            ("dp", "momentum"),
            ("product", "action"),
            ("bound", "action"),
            ("ratio", "1"),
        ],
        rows,
    })
}

/// `(q, Re Ψ, Im Ψ, |Ψ|²)` at `t0` on the oracle grid.
pub fn cmd_wavefunction(cfg: &RunConfig) -> Result<Table, Error> {
    let params = cfg.params()?;
    let spec = cfg.spec()?;
    let grid = make_grid_with(
        &params,
        &spec,
        cfg.t0,
        cfg.grid_points.unwrap_or(MIN_GRID_POINTS),
    );
    let qs = grid.points();
    let psi = cfg.wave()?.sample(cfg.t0, &qs);
    let rows = qs
        .iter()
        .zip(&psi)
        .map(|(&q, v)| vec![q, v.re, v.im, v.norm_sqr()])
        .collect();
    Ok(Table {
        command: "wavefunction",
        columns: vec![
            ("q", "length"),
            ("re_psi", "length^-1/2"),
            ("im_psi", "length^-1/2"),
            ("density", "length^-1"),
        ],
        rows,
    })
}

/// `(t, q_c, p_c, ⟨H⟩)`; needs a coherent state.
pub fn cmd_trajectory(cfg: &RunConfig) -> Result<Table, Error> {
    if cfg.kind != Kind::Coherent {
        return Err(usage(
            "kind",
            "trajectory needs a coherent state; set --qc/--pc or --kind coherent",
        ));
    }
    let params = cfg.params()?;
    let squeeze = cfg.squeeze()?;
    let wave = cfg.wave()?;
    let alpha = wave.alpha().expect("coherent profile");
    let rows = cfg
        .times()
        .par_iter()
        .map(|&t| {
            let (qc, pc) = wave.phase_point(t);
            vec![
                t,
                qc,
                pc,
                coherent_hamiltonian_expectation(&params, &squeeze, alpha, t),
            ]
        })
        .collect();
    Ok(Table {
        command: "trajectory",
        columns: vec![
            ("t", "time"),
            ("qc", "length"),
            ("pc", "momentum"),
            ("energy", "energy"),
        ],
        rows,
    })
}

/// `(t, ⟨H⟩)` for the configured state.
pub fn cmd_hamiltonian(cfg: &RunConfig) -> Result<Table, Error> {
    let params = cfg.params()?;
    let squeeze = cfg.squeeze()?;
    let alpha = cfg.wave()?.alpha();
    let rows = cfg
        .times()
        .par_iter()
        .map(|&t| {
            let energy = match alpha {
                Some(a) => coherent_hamiltonian_expectation(&params, &squeeze, a, t),
                None => hamiltonian_expectation(&params, cfg.n, &squeeze, t)?,
            };
            Ok(vec![t, energy])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table {
        command: "hamiltonian",
        columns: vec![("t", "time"), ("energy", "energy")],
        rows,
    })
}

/// Runs the suite on the default lattice, or on `(γ, r, φ)` alone when
/// `r` or `φ` was given.
pub fn cmd_validate(cfg: &RunConfig) -> Result<ValidationReport, Error> {
    let params = cfg.params()?;
    let schedule = if cfg.single_point {
        Schedule {
            points: vec![LatticePoint {
                gamma: cfg.gamma,
                r: cfg.r,
                phi: cfg.phi,
            }],
            checks: Check::ALL.to_vec(),
        }
    } else {
        Schedule::default_for(&params)
    };
    let options = ValidationOptions {
        tolerances: cfg.tolerances,
        convention: cfg.convention(),
        min_grid_points: cfg.grid_points.unwrap_or(MIN_GRID_POINTS),
    };
    Ok(validate_with(&params, &schedule, &options))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Report as JSON, or as CSV with one row per entry.
pub fn write_report(
    report: &ValidationReport,
    format: Format,
    w: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Json => writeln!(w, "{}", report.to_json()),
        Format::Csv => {
            writeln!(
                w,
                "check,parameters,measured,expected,tolerance,status,note"
            )?;
            for e in &report.entries {
                let params: Vec<String> = e
                    .parameter_tuple
                    .iter()
                    .map(|p| format!("{}={}", p.name, p.value))
                    .collect();
                let status = match e.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                    Status::Info => "info",
                };
                writeln!(
                    w,
                    "{},{},{:.16e},{:.16e},{:.16e},{},{}",
                    e.check_name,
                    csv_field(&params.join(" ")),
                    e.measured,
                    e.expected,
                    e.tolerance,
                    status,
                    csv_field(e.note.as_deref().unwrap_or(""))
                )?;
            }
            Ok(())
        }
    }
}

fn execute(
    command: &Command,
    out: &mut Vec<u8>,
    stderr: &mut dyn Write,
) -> Result<(RunConfig, u8), Error> {
    let flags = match command {
        Command::Uncertainty(f)
        | Command::Wavefunction(f)
        | Command::Trajectory(f)
        | Command::Hamiltonian(f)
        | Command::Validate(f) => f,
    };
    let cfg = RunConfig::resolve(flags)?;
    let io_err = |e: io::Error| usage("out", e.to_string());
    let table = match command {
        Command::Uncertainty(_) => cmd_uncertainty(&cfg)?,
        Command::Wavefunction(_) => cmd_wavefunction(&cfg)?,
        Command::Trajectory(_) => cmd_trajectory(&cfg)?,
        Command::Hamiltonian(_) => cmd_hamiltonian(&cfg)?,
        Command::Validate(_) => {
            let report = cmd_validate(&cfg)?;
            write_report(&report, cfg.format, out).map_err(io_err)?;
            let s = &report.summary;
            let _ = writeln!(
                stderr,
                "validation: {} entries, {} passed, {} failed, {} skipped, {} info",
                s.total, s.passed, s.failed, s.skipped, s.info
            );
            let code = if report.all_passed() {
                EXIT_SUCCESS
            } else {
                EXIT_VALIDATION_FAILURE
            };
            return Ok((cfg, code));
        }
    };
    table.write(cfg.format, out).map_err(io_err)?;
    Ok((cfg, EXIT_SUCCESS))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 success, 1 validation failure, 2 usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{text}");
            return EXIT_SUCCESS;
        }
    };
    let mut buffer = Vec::new();
    let (cfg, code) = match execute(&cli.command, &mut buffer, stderr) {
        Ok(done) => done,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cfg.out {
        Some(path) => fs::write(path, &buffer).map_err(|e| (path.display().to_string(), e)),
        None => stdout
            .write_all(&buffer)
            .map_err(|e| ("stdout".to_string(), e)),
    };
    if let Err((target, e)) = written {
        let _ = writeln!(stderr, "error: cannot write {target}: {e}");
        return EXIT_USAGE;
    }
    code
}
