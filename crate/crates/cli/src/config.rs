//! Flags, the optional key=value file, and the resolved run configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qlandau::spectral::{GridSpec, MIN_POINTS};

#[derive(Parser, Debug)]
#[command(
    name = "qlandau",
    version,
    about = "Quaternionic Landau operator: exact identities, canonical frames and spectra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Discretize and eigensolve H_ν (or one planar factor with --factor2d).
    Spectrum,
    /// Rotate Ω_ν to ‖ν‖·i and report the rotation.
    Canonicalize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Heisenberg,
    Weyl,
    Canonical,
    Translations,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Heisenberg => "heisenberg",
            Suite::Weyl => "weyl",
            Suite::Canonical => "canonical",
            Suite::Translations => "translations",
            Suite::All => "all",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Field ν as `a,b,c`.
    #[arg(long, global = true, value_parser = parse_nu, allow_hyphen_values = true)]
    pub nu: Option<[f64; 3]>,
    /// Field strength of the planar factor.
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Box half-width: the grid covers [−L, L]^d.
    #[arg(long = "L", global = true)]
    pub half_width: Option<f64>,
    /// Interior grid points per axis (at least 8).
    #[arg(long = "N", global = true)]
    pub points: Option<usize>,
    /// Number of eigenvalues.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Eigensolver residual tolerance, relative to max(1, |λ|).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Relative tolerance for --compare-fock.
    #[arg(long = "compare-tol", global = true)]
    pub compare_tol: Option<f64>,
    /// Shift-invert about this value (must lie below the spectrum).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub shift: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the eigensolver; 0 uses every core.
    #[arg(long, global = true, env = "QLANDAU_THREADS")]
    pub threads: Option<usize>,
    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Solve the 2-D canonical factor instead of H_ν.
    #[arg(long, global = true)]
    pub factor2d: bool,
    /// Compare the eigenvalues with the oscillator levels.
    #[arg(long = "compare-fock", global = true)]
    pub compare_fock: bool,
    /// A key=value file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

fn parse_nu(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated reals, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
    }
    Ok(out)
}

/// Why a configuration was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    /// Bad value; the message names the field.
    Usage(String),
    /// The config file could not be read.
    Io(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Usage(m) | ConfigError::Io(m) => f.write_str(m),
        }
    }
}

fn usage(field: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError::Usage(format!("{field}: {msg}"))
}

const FILE_KEYS: [&str; 14] = [
    "nu",
    "mu",
    "L",
    "N",
    "k",
    "tol",
    "compare-tol",
    "shift",
    "seed",
    "threads",
    "out",
    "format",
    "factor2d",
    "compare-fock",
];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage("config", format!("line {}: expected key=value", n + 1)))?;
        let k = k.trim();
        if !FILE_KEYS.contains(&k) {
            return Err(usage("config", format!("line {}: unknown key {k:?}", n + 1)));
        }
        map.insert(k.to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn from_file<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    map.get(key)
        .map(|v| v.parse::<T>().map_err(|e| usage(key, format!("{v:?}: {e}"))))
        .transpose()
}

fn file_bool(map: &BTreeMap<String, String>, key: &str) -> Result<bool, ConfigError> {
    Ok(from_file::<bool>(map, key)?.unwrap_or(false))
}

/// Everything a run needs, after defaults and validation. Echoed in reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    pub nu: Option<[f64; 3]>,
    pub mu: Option<f64>,
    #[serde(rename = "L")]
    pub half_width: Option<f64>,
    #[serde(rename = "N")]
    pub points: Option<usize>,
    pub dim: Option<usize>,
    pub k: Option<usize>,
    pub tol: Option<f64>,
    pub compare_tol: Option<f64>,
    pub shift: Option<f64>,
    pub seed: u64,
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub factor2d: bool,
    pub compare_fock: bool,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_COMPARE_TOL: f64 = 0.02;

impl RunConfig {
    /// Merges flags over the config file and checks every field the command uses.
    pub fn resolve(cli: &Cli) -> Result<Self, ConfigError> {
        let file = match &cli.flags.config {
            Some(p) => read_config(p)?,
            None => BTreeMap::new(),
        };
        let f = &cli.flags;
        let nu = match f.nu {
            Some(v) => Some(v),
            None => file
                .get("nu")
                .map(|s| parse_nu(s).map_err(|e| usage("nu", e)))
                .transpose()?,
        };
        let mut cfg = RunConfig {
            command: String::new(),
            suite: None,
            nu,
            mu: f.mu.or(from_file(&file, "mu")?),
            half_width: f.half_width.or(from_file(&file, "L")?),
            points: f.points.or(from_file(&file, "N")?),
            dim: None,
            k: f.k.or(from_file(&file, "k")?),
            tol: f.tol.or(from_file(&file, "tol")?),
            compare_tol: f.compare_tol.or(from_file(&file, "compare-tol")?),
            shift: f.shift.or(from_file(&file, "shift")?),
            seed: f.seed.or(from_file(&file, "seed")?).unwrap_or(DEFAULT_SEED),
            threads: f.threads.or(from_file(&file, "threads")?).unwrap_or(0),
            out: f.out.clone().or(from_file(&file, "out")?),
            format: match f.format {
                Some(fm) => fm,
                None => match file.get("format").map(String::as_str) {
                    None | Some("json") => Format::Json,
                    Some("csv") => Format::Csv,
                    Some(other) => return Err(usage("format", format!("expected json or csv, got {other:?}"))),
                },
            },
            factor2d: f.factor2d || file_bool(&file, "factor2d")?,
            compare_fock: f.compare_fock || file_bool(&file, "compare-fock")?,
        };
        if let Some(v) = cfg.nu {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(usage("nu", "components must be finite"));
            }
        }
        match &cli.command {
            Command::Verify { suite } => {
                cfg.command = "verify".into();
                cfg.suite = Some(*suite);
                cfg.require_json()?;
            }
            Command::Canonicalize => {
                cfg.command = "canonicalize".into();
                if cfg.nu.is_none() {
                    return Err(usage("nu", "canonicalize needs --nu a,b,c"));
                }
                cfg.require_json()?;
            }
            Command::Spectrum => {
                cfg.command = "spectrum".into();
                cfg.resolve_spectrum()?;
            }
        }
        Ok(cfg)
    }

    fn require_json(&self) -> Result<(), ConfigError> {
        if self.format == Format::Csv {
            return Err(usage(
                "format",
                format!("csv output is only available for spectrum, not {}", self.command),
            ));
        }
        Ok(())
    }

    fn resolve_spectrum(&mut self) -> Result<(), ConfigError> {
        let field_strength = if self.factor2d {
            let mu = self.mu.ok_or_else(|| usage("mu", "--factor2d needs --mu"))?;
            if !(mu.is_finite() && mu > 0.0) {
                return Err(usage("mu", format!("must be positive, got {mu}")));
            }
            self.dim = Some(2);
            self.nu = None;
            mu
        } else {
            let nu = self
                .nu
                .ok_or_else(|| usage("nu", "spectrum needs --nu a,b,c (or --factor2d --mu x)"))?;
            self.dim = Some(4);
            self.mu = None;
            nu.iter().map(|v| v * v).sum::<f64>().sqrt()
        };
        let dim = self.dim.unwrap_or(4);
        let l = match self.half_width {
            Some(l) => l,
            None if field_strength > 0.0 => GridSpec::default_half_width(field_strength),
            None => 5.0,
        };
        if !(l.is_finite() && l > 0.0) {
            return Err(usage("L", format!("must be positive, got {l}")));
        }
        self.half_width = Some(l);
        let n = self.points.unwrap_or(if dim == 2 { 96 } else { 16 });
        if n < MIN_POINTS {
            return Err(usage("N", format!("must be at least {MIN_POINTS}, got {n}")));
        }
        self.points = Some(n);
        let k = self.k.unwrap_or(if dim == 2 { 6 } else { 4 });
        if k == 0 {
            return Err(usage("k", "must be at least 1"));
        }
        self.k = Some(k);
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(usage("tol", format!("must be positive, got {tol}")));
        }
        self.tol = Some(tol);
        if self.compare_fock {
            if field_strength <= 0.0 {
                return Err(usage("compare-fock", "the oscillator levels need a nonzero field"));
            }
            let ct = self.compare_tol.unwrap_or(DEFAULT_COMPARE_TOL);
            if !(ct.is_finite() && ct > 0.0) {
                return Err(usage("compare-tol", format!("must be positive, got {ct}")));
            }
            self.compare_tol = Some(ct);
        }
        // the planar factor is banded enough for shift-invert; zero lies below its spectrum
        if self.shift.is_none() && dim == 2 {
            self.shift = Some(0.0);
        }
        if let Some(s) = self.shift {
            if !s.is_finite() {
                return Err(usage("shift", "must be finite"));
            }
        }
        Ok(())
    }
}
