//! The three subcommands. Each builds its records, writes its output and
//! reports whether every record passed.

use std::fmt;
use std::io::Write;

use serde_json::json;

use qlandau::algebra::Vec3;
use qlandau::canonicalize::canonical_report;
use qlandau::spectral::{
    assemble_canonical_2d, assemble_landau, compare_to_levels, eigensolve, fock_spectrum, landau_levels_2d,
    spectrum_csv, EigenOptions, GridSpec, SpectralError, SpectrumReport,
};

use crate::config::{Format, RunConfig};
use crate::report::{Record, Report};
use crate::suites;

/// Why a command stopped before producing a clean result.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Io(String),
    /// The partial output has already been written.
    NonConvergence(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::NonConvergence(m) => f.write_str(m),
        }
    }
}

/// Runs the configured command; `Ok(true)` when every check passed.
pub fn execute(cfg: &RunConfig) -> Result<bool, Failure> {
    match cfg.command.as_str() {
        "verify" => verify(cfg),
        "canonicalize" => canonicalize(cfg),
        "spectrum" => spectrum(cfg),
        other => Err(Failure::Usage(format!("unknown command {other:?}"))),
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), Failure> {
    match &cfg.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn finish(cfg: &RunConfig, records: Vec<Record>, results: Option<serde_json::Value>) -> Result<bool, Failure> {
    let report = Report::new(cfg.clone(), records, results);
    emit(cfg, &report.to_json())?;
    Ok(report.records.iter().all(Record::passed))
}

pub fn verify(cfg: &RunConfig) -> Result<bool, Failure> {
    let suite = cfg.suite.ok_or_else(|| Failure::Usage("verify needs a suite".into()))?;
    let records = suites::run(suite, cfg.seed, cfg.nu);
    finish(cfg, records, None)
}

pub fn canonicalize(cfg: &RunConfig) -> Result<bool, Failure> {
    let nu = Vec3(
        cfg.nu
            .ok_or_else(|| Failure::Usage("nu: canonicalize needs --nu a,b,c".into()))?,
    );
    let rep = canonical_report(&nu);
    let records = vec![
        Record::check(
            "canonicalize.orthogonality",
            rep.orthogonality_residual,
            suites::FLOAT_TOL,
        ),
        Record::check(
            "canonicalize.determinant",
            (rep.determinant - 1.0).abs(),
            suites::FLOAT_TOL,
        ),
        Record::check(
            "canonicalize.conjugation",
            rep.conjugation_residual / nu.norm().max(1.0),
            1e-10,
        ),
        Record::check("canonicalize.char-poly", rep.char_poly_residual, 1e-10),
    ];
    let results = serde_json::to_value(&rep).ok();
    finish(cfg, records, results)
}

/// Lowest Dirichlet eigenvalue of the d-dimensional 5-point Laplacian.
pub fn dirichlet_ground_state(grid: &GridSpec) -> f64 {
    let h = grid.spacing();
    let s = (std::f64::consts::PI / (2.0 * (grid.points as f64 + 1.0))).sin();
    grid.dim as f64 * 4.0 / (h * h) * s * s
}

fn usage(e: SpectralError) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn spectrum(cfg: &RunConfig) -> Result<bool, Failure> {
    let dim = cfg.dim.unwrap_or(4);
    let (l, n, k, tol) = match (cfg.half_width, cfg.points, cfg.k, cfg.tol) {
        (Some(l), Some(n), Some(k), Some(t)) => (l, n, k, t),
        _ => return Err(Failure::Usage("spectrum configuration is incomplete".into())),
    };
    let grid = GridSpec::new(dim, l, n).map_err(usage)?;
    let (op, strength) = if dim == 2 {
        let mu = cfg.mu.unwrap_or_default();
        (assemble_canonical_2d(mu, &grid).map_err(usage)?, mu)
    } else {
        let nu = Vec3(cfg.nu.unwrap_or_default());
        (assemble_landau(&nu, &grid).map_err(usage)?, nu.norm())
    };
    let mut records = vec![Record::check(
        "spectrum.hermiticity",
        op.hermiticity_residual(),
        suites::FLOAT_TOL,
    )];
    let opts = EigenOptions {
        seed: cfg.seed,
        threads: cfg.threads,
        shift: cfg.shift,
        ..EigenOptions::default()
    };
    let tag = |mut r: SpectrumReport| {
        r.grid = Some(grid);
        r.nu = if dim == 4 { cfg.nu } else { None };
        r.mu = if dim == 2 { cfg.mu } else { None };
        r
    };
    let (rep, converged) = match eigensolve(&op, k, tol, &opts) {
        Ok(r) => (tag(r), true),
        Err(SpectralError::NonConvergence(r)) => (tag(*r), false),
        Err(e) => return Err(usage(e)),
    };

    let worst = rep
        .eigenvalues
        .iter()
        .zip(&rep.residuals)
        .map(|(v, r)| r / v.abs().max(1.0))
        .fold(0.0, f64::max);
    records.push(Record::check("spectrum.residuals", worst, tol));
    if strength == 0.0 {
        let want = dirichlet_ground_state(&grid);
        let got = rep.eigenvalues.first().copied().unwrap_or(f64::NAN);
        records.push(
            Record::check(
                "spectrum.dirichlet-closed-form",
                (got - want).abs() / want.max(1.0),
                1e-10,
            )
            .with_detail(json!({ "expected": want, "computed": got })),
        );
    }
    if cfg.compare_fock {
        let ct = cfg.compare_tol.unwrap_or(crate::config::DEFAULT_COMPARE_TOL);
        let levels = if dim == 2 {
            landau_levels_2d(strength, k)
        } else {
            fock_spectrum(strength, k).map_err(usage)?.energies()
        };
        let cmp = compare_to_levels(&rep.eigenvalues, &levels, ct);
        records.push(Record::check("spectrum.compare-fock", cmp.max_relative_deviation, ct).with_detail(&cmp));
    }

    let text = match cfg.format {
        Format::Csv => spectrum_csv(&rep),
        Format::Json => Report::new(cfg.clone(), records.clone(), serde_json::to_value(&rep).ok()).to_json(),
    };
    emit(cfg, &text)?;
    if !converged {
        return Err(Failure::NonConvergence(format!(
            "eigensolver did not converge: {} of {k} pairs met the tolerance",
            rep.eigenvalues.len()
        )));
    }
    Ok(records.iter().all(Record::passed))
}
