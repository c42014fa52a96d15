use serde::Serialize;

use super::SpectralError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FockLevel {
    pub n: usize,
    pub energy: f64,
    pub multiplicity: usize,
}

/// Levels of 4(a₁†a₁ + a₂†a₂) + 4μ: energy 4μ(n + 1) for n = n₁ + n₂, counted
/// with the n + 1 splittings (n₁, n₂).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FockSpectrum {
    pub mu: f64,
    pub n_max: usize,
    pub levels: Vec<FockLevel>,
}

impl FockSpectrum {
    /// Energies repeated by multiplicity, ascending.
    pub fn energies(&self) -> Vec<f64> {
        self.levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.energy, l.multiplicity))
            .collect()
    }

    pub fn distinct_energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

pub fn fock_spectrum(mu: f64, n_max: usize) -> Result<FockSpectrum, SpectralError> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(SpectralError::InvalidArgument(format!(
            "field strength must be positive, got {mu}"
        )));
    }
    let levels = (0..=n_max)
        .map(|n| FockLevel {
            n,
            energy: 4.0 * mu * (n as f64 + 1.0),
            multiplicity: n + 1,
        })
        .collect();
    Ok(FockSpectrum { mu, n_max, levels })
}

/// Landau levels 2μ(2n + 1) of one planar factor (effective field 2μ).
pub fn landau_levels_2d(mu: f64, n_max: usize) -> Vec<f64> {
    (0..=n_max).map(|n| 2.0 * mu * (2.0 * n as f64 + 1.0)).collect()
}

/// The `k` smallest pairwise sums a_i + b_j: the spectrum of a Kronecker sum.
pub fn kronecker_sum_levels(a: &[f64], b: &[f64], k: usize) -> Vec<f64> {
    let mut sums: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
    sums.sort_by(f64::total_cmp);
    sums.truncate(k);
    sums
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairedValue {
    pub left: f64,
    pub right: f64,
    pub relative_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub pairs: Vec<PairedValue>,
    pub max_relative_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn finish(pairs: Vec<PairedValue>, tolerance: f64) -> SpectrumComparison {
    let max_relative_deviation = pairs.iter().map(|p| p.relative_deviation).fold(0.0, f64::max);
    SpectrumComparison {
        pass: !pairs.is_empty() && max_relative_deviation <= tolerance,
        pairs,
        max_relative_deviation,
        tolerance,
    }
}

/// Pairs the two sorted lists index by index (up to the shorter length).
pub fn compare_spectra(a: &[f64], b: &[f64], rel_tol: f64) -> SpectrumComparison {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let pairs = a
        .iter()
        .zip(&b)
        .map(|(&l, &r)| PairedValue {
            left: l,
            right: r,
            relative_deviation: rel(l, r),
        })
        .collect();
    finish(pairs, rel_tol)
}

/// Pairs each value with the nearest reference level; suited to grid
/// eigenvalues against degenerate continuum levels.
pub fn compare_to_levels(values: &[f64], levels: &[f64], rel_tol: f64) -> SpectrumComparison {
    let pairs = values
        .iter()
        .filter_map(|&v| {
            levels
                .iter()
                .copied()
                .min_by(|x, y| (x - v).abs().total_cmp(&(y - v).abs()))
                .map(|r| PairedValue {
                    left: v,
                    right: r,
                    relative_deviation: rel(v, r),
                })
        })
        .collect();
    finish(pairs, rel_tol)
}

/// Value at h = 0 of the polynomial in h² through the samples (h, λ)
/// (Neville's scheme); with two samples this is classic Richardson.
pub fn richardson_extrapolate(samples: &[(f64, f64)]) -> f64 {
    let t: Vec<f64> = samples.iter().map(|(h, _)| h * h).collect();
    let mut p: Vec<f64> = samples.iter().map(|&(_, v)| v).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ti, tj) = (t[i], t[i + level]);
            p[i] = (tj * p[i] - ti * p[i + 1]) / (tj - ti);
        }
    }
    p.first().copied().unwrap_or(f64::NAN)
}
