use num::complex::Complex64;

use super::sparse::SparseOperator;
use super::SpectralError;

/// Cholesky factor L (M − σ = L Lᴴ) of a Hermitian positive definite banded
/// operator. Row i stores L[i, i−b ..= i], padded with zeros before column 0.
#[derive(Clone, Debug)]
pub struct BandedCholesky {
    n: usize,
    band: usize,
    rows: Vec<Complex64>,
}

impl BandedCholesky {
    /// max |i − j| over stored entries.
    pub fn bandwidth(op: &SparseOperator) -> usize {
        (0..op.dim())
            .flat_map(|i| op.row(i).map(move |(j, _)| i.abs_diff(j)))
            .max()
            .unwrap_or(0)
    }

    /// Bytes of the factor for `op`.
    pub fn estimated_bytes(op: &SparseOperator) -> u128 {
        op.dim() as u128 * (Self::bandwidth(op) as u128 + 1) * 16
    }

    /// Factors M − σ. Fails if a pivot is not positive, i.e. σ is not below the spectrum.
    pub fn factor(op: &SparseOperator, shift: f64) -> Result<Self, SpectralError> {
        let n = op.dim();
        let b = Self::bandwidth(op);
        let w = b + 1;
        let mut rows = vec![Complex64::new(0.0, 0.0); n * w];
        for i in 0..n {
            for (j, v) in op.row(i) {
                if j <= i {
                    rows[i * w + (j + b - i)] = v;
                }
            }
            rows[i * w + b] -= shift;
        }
        for i in 0..n {
            let lo = i.saturating_sub(b);
            for j in lo..=i {
                // columns k in lo..j are shared by rows i and j
                let (ri, rj) = (i * w + b - i, j * w + b - j);
                let mut s = rows[ri + j];
                for k in lo.max(j.saturating_sub(b))..j {
                    s -= rows[ri + k] * rows[rj + k].conj();
                }
                if j < i {
                    rows[ri + j] = s / rows[rj + j].re;
                } else if s.re > 0.0 && s.re.is_finite() {
                    rows[ri + i] = Complex64::new(s.re.sqrt(), 0.0);
                } else {
                    return Err(SpectralError::InvalidArgument(format!(
                        "shifted operator is not positive definite (shift {shift}, pivot {i})"
                    )));
                }
            }
        }
        Ok(Self { n, band: b, rows })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// x ← (M − σ)⁻¹ x.
    pub fn solve_in_place(&self, x: &mut [Complex64]) {
        let (n, b, w) = (self.n, self.band, self.band + 1);
        assert_eq!(x.len(), n);
        for i in 0..n {
            let ri = i * w + b - i;
            let mut s = x[i];
            for k in i.saturating_sub(b)..i {
                s -= self.rows[ri + k] * x[k];
            }
            x[i] = s / self.rows[ri + i].re;
        }
        for i in (0..n).rev() {
            let ri = i * w + b - i;
            x[i] /= self.rows[ri + i].re;
            let xi = x[i];
            for k in i.saturating_sub(b)..i {
                x[k] -= self.rows[ri + k].conj() * xi;
            }
        }
    }
}
