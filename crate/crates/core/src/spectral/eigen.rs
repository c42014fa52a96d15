use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::assemble::DEFAULT_MEMORY_BUDGET;
use super::banded::BandedCholesky;
use super::grid::GridSpec;
use super::sparse::SparseOperator;
use super::SpectralError;

/// Knobs for [`eigensolve`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenOptions {
    pub seed: u64,
    /// Krylov basis size per restart cycle (raised to at least 2k + 10).
    pub basis_size: usize,
    /// Cap on restart cycles per inner solve.
    pub max_restarts: usize,
    /// Worker threads for matrix-vector products; 0 means the rayon default.
    pub threads: usize,
    /// Shift-invert about σ: Lanczos runs on −(M − σ)⁻¹ through a banded
    /// Cholesky factor, which needs σ below the spectrum. Worth it when the
    /// wanted eigenvalues sit in a tight cluster.
    pub shift: Option<f64>,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            seed: 42,
            basis_size: 48,
            max_restarts: 400,
            threads: 1,
            shift: None,
        }
    }
}

/// Lowest eigenpairs of a Hermitian operator with their residual norms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// ‖Mv − λv‖ for unit v.
    pub residuals: Vec<f64>,
    /// Operator applications used (triangular solve pairs in shift-invert mode).
    pub matvecs: usize,
    pub restarts: usize,
    pub tolerance: f64,
    pub converged: bool,
    pub grid: Option<GridSpec>,
    pub nu: Option<[f64; 3]>,
    pub mu: Option<f64>,
}

impl SpectrumReport {
    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }
}

type Vector = Vec<Complex64>;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(alpha: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scale(a: &mut [Complex64], s: f64) {
    for v in a {
        *v *= s;
    }
}

/// Classical Gram–Schmidt against `locked` and `basis`, repeated once when
/// the first pass cancels most of `w` (the DGKS criterion); returns the
/// accumulated coefficients on `basis`.
fn orthogonalize(w: &mut [Complex64], locked: &[Vector], basis: &[Vector]) -> Vec<Complex64> {
    let mut coef = vec![Complex64::new(0.0, 0.0); basis.len()];
    for pass in 0..2 {
        let before = norm(w);
        for l in locked {
            let c = dot(l, w);
            axpy(-c, l, w);
        }
        let cs: Vec<Complex64> = basis.iter().map(|v| dot(v, w)).collect();
        for (v, c) in basis.iter().zip(&cs) {
            axpy(-c, v, w);
        }
        for (acc, c) in coef.iter_mut().zip(cs) {
            *acc += c;
        }
        if pass == 0 && norm(w) > std::f64::consts::FRAC_1_SQRT_2 * before {
            break;
        }
    }
    coef
}

struct Solver<'a> {
    op: &'a SparseOperator,
    inverse: Option<(BandedCholesky, f64)>,
    rng: ChaCha8Rng,
    tol: f64,
    opts: &'a EigenOptions,
    matvecs: usize,
    restarts: usize,
}

struct Pair {
    value: f64,
    vector: Vector,
    residual: f64,
}

impl Solver<'_> {
    fn matvec(&mut self, x: &[Complex64]) -> Vector {
        let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
        self.op.matvec(x, &mut y);
        self.matvecs += 1;
        y
    }

    /// The operator Lanczos sees: M, or −(M − σ)⁻¹. Both order eigenvalues the same way.
    fn apply(&mut self, x: &[Complex64]) -> Vector {
        match &self.inverse {
            None => self.matvec(x),
            Some((chol, _)) => {
                let mut y = x.to_vec();
                chol.solve_in_place(&mut y);
                for v in &mut y {
                    *v = -*v;
                }
                self.matvecs += 1;
                y
            }
        }
    }

    /// Eigenvalue of M for a Ritz value θ of the Lanczos operator.
    fn value_of(&self, theta: f64) -> f64 {
        match &self.inverse {
            None => theta,
            Some((_, shift)) => shift - 1.0 / theta,
        }
    }

    /// Rough ‖Mv − λv‖ from the Lanczos residual estimate (the residual of
    /// −(M − σ)⁻¹ is scaled by about 1/θ² near the wanted end).
    fn estimate_of(&self, theta: f64, estimate: f64) -> f64 {
        match &self.inverse {
            None => estimate,
            Some(_) => estimate / (theta * theta),
        }
    }

    /// A unit vector orthogonal to `locked` and `basis`, or `None` if they span the space.
    fn fresh_vector(&mut self, locked: &[Vector], basis: &[Vector]) -> Option<Vector> {
        let n = self.op.dim();
        for _ in 0..4 {
            let mut v: Vector = (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut self.rng);
                    let im: f64 = StandardNormal.sample(&mut self.rng);
                    Complex64::new(re, im)
                })
                .collect();
            let before = norm(&v);
            orthogonalize(&mut v, locked, basis);
            let after = norm(&v);
            if after > 1e-8 * before {
                scale(&mut v, 1.0 / after);
                return Some(v);
            }
        }
        None
    }

    fn converged(&self, value: f64, residual: f64) -> bool {
        residual <= self.tol * value.abs().max(1.0)
    }

    fn explicit_residual(&mut self, value: f64, v: &[Complex64]) -> f64 {
        let mut r = self.matvec(v);
        axpy(Complex64::new(-value, 0.0), v, &mut r);
        norm(&r)
    }

    /// Thick-restart Lanczos (full reorthogonalization) for the `want` lowest
    /// eigenpairs of the operator restricted to the complement of `locked`.
    fn lowest(&mut self, locked: &[Vector], want: usize) -> Result<Vec<Pair>, Vec<Pair>> {
        let avail = self.op.dim() - locked.len();
        let want = want.min(avail);
        if want == 0 {
            return Ok(Vec::new());
        }
        let m = self.opts.basis_size.max(2 * want + 10).min(avail);
        let keep = (want + (m - want) / 2).min(m - 1).max(want.min(m - 1));
        let Some(v0) = self.fresh_vector(locked, &[]) else {
            return Ok(Vec::new());
        };
        let mut basis: Vec<Vector> = vec![v0];
        let mut h = DMatrix::<Complex64>::zeros(m, m);
        let mut start = 0;
        let mut best: Vec<Pair> = Vec::new();
        for cycle in 0..self.opts.max_restarts.max(1) {
            self.restarts += usize::from(cycle > 0);
            let mut tail: Option<(Vector, f64)> = None;
            for j in start..m {
                let mut w = self.apply(&basis[j]);
                let coef = orthogonalize(&mut w, locked, &basis);
                for (i, c) in coef.iter().enumerate() {
                    h[(i, j)] = *c;
                }
                let beta = norm(&w);
                let scale_ref = coef.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
                if j + 1 < m {
                    if beta > 1e-12 * scale_ref {
                        scale(&mut w, 1.0 / beta);
                        h[(j + 1, j)] = Complex64::new(beta, 0.0);
                        basis.push(w);
                    } else {
                        // invariant subspace: continue with a new direction
                        match self.fresh_vector(locked, &basis) {
                            Some(v) => basis.push(v),
                            None => {
                                tail = Some((vec![Complex64::new(0.0, 0.0); w.len()], 0.0));
                                break;
                            }
                        }
                    }
                } else {
                    tail = Some((w, beta));
                }
            }
            let size = basis.len();
            let (f, beta_f) = tail.unwrap_or_else(|| (vec![Complex64::new(0.0, 0.0); self.op.dim()], 0.0));
            let hs = h.view((0, 0), (size, size)).into_owned();
            let hs = (&hs + hs.adjoint()) * Complex64::new(0.5, 0.0);
            let eig = hs.symmetric_eigen();
            let mut order: Vec<usize> = (0..size).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let ritz = |k: usize| -> Vector {
                let col = order[k];
                let mut x = vec![Complex64::new(0.0, 0.0); self.op.dim()];
                for (i, v) in basis.iter().enumerate() {
                    axpy(eig.eigenvectors[(i, col)], v, &mut x);
                }
                x
            };
            let estimate = |k: usize| beta_f * eig.eigenvectors[(size - 1, order[k])].norm();
            let got = want.min(size);
            let all_estimated = (0..got).all(|k| {
                let theta = eig.eigenvalues[order[k]];
                self.converged(self.value_of(theta), self.estimate_of(theta, estimate(k)))
            });
            if all_estimated || size < m {
                let mut pairs = Vec::with_capacity(got);
                for k in 0..got {
                    let mut x = ritz(k);
                    let nx = norm(&x);
                    scale(&mut x, 1.0 / nx);
                    let value = self.value_of(eig.eigenvalues[order[k]]);
                    let residual = self.explicit_residual(value, &x);
                    pairs.push(Pair {
                        value,
                        vector: x,
                        residual,
                    });
                }
                if pairs.iter().all(|p| self.converged(p.value, p.residual)) {
                    return Ok(pairs);
                }
                best = pairs;
            }
            // thick restart on the `keep` lowest Ritz vectors plus the residual direction
            let keep_now = keep.min(size.saturating_sub(1)).max(1);
            let mut new_basis: Vec<Vector> = (0..keep_now)
                .map(|k| {
                    let mut x = ritz(k);
                    let nx = norm(&x);
                    scale(&mut x, 1.0 / nx);
                    x
                })
                .collect();
            h.fill(Complex64::new(0.0, 0.0));
            for k in 0..keep_now {
                h[(k, k)] = Complex64::new(eig.eigenvalues[order[k]], 0.0);
            }
            let mut fhat = f;
            orthogonalize(&mut fhat, locked, &new_basis);
            let nf = norm(&fhat);
            if beta_f > 0.0 && nf > 1e-10 * beta_f {
                scale(&mut fhat, 1.0 / nf);
                for k in 0..keep_now {
                    let y = eig.eigenvectors[(size - 1, order[k])];
                    h[(keep_now, k)] = y * beta_f;
                }
                new_basis.push(fhat);
            } else {
                match self.fresh_vector(locked, &new_basis) {
                    Some(v) => new_basis.push(v),
                    None => return Err(best),
                }
            }
            basis = new_basis;
            start = keep_now;
        }
        Err(best)
    }
}

/// The `k` smallest eigenvalues of a Hermitian operator.
///
/// Thick-restart Lanczos with full reorthogonalization finds the lowest
/// pairs of the complement of the locked set; converged pairs are locked and
/// a final pass from a fresh random vector checks that no eigenvalue below
/// the locked ones was missed (exact degeneracies are invisible to a single
/// Krylov sequence). Residual criterion: ‖Mv − λv‖ ≤ tol·max(1, |λ|).
pub fn eigensolve(
    op: &SparseOperator,
    k: usize,
    tol: f64,
    opts: &EigenOptions,
) -> Result<SpectrumReport, SpectralError> {
    if k == 0 || k > op.dim() {
        return Err(SpectralError::InvalidArgument(format!(
            "eigenvalue count must be in 1..={}, got {k}",
            op.dim()
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpectralError::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| SpectralError::InvalidArgument(format!("thread pool: {e}")))?;
    let inverse = match opts.shift {
        None => None,
        Some(shift) if shift.is_finite() => {
            let needed = BandedCholesky::estimated_bytes(op);
            if needed > DEFAULT_MEMORY_BUDGET {
                return Err(SpectralError::MemoryBudget {
                    needed,
                    budget: DEFAULT_MEMORY_BUDGET,
                });
            }
            Some((BandedCholesky::factor(op, shift)?, shift))
        }
        Some(shift) => {
            return Err(SpectralError::InvalidArgument(format!(
                "shift must be finite, got {shift}"
            )))
        }
    };
    pool.install(|| solve(op, inverse, k, tol, opts))
}

fn solve(
    op: &SparseOperator,
    inverse: Option<(BandedCholesky, f64)>,
    k: usize,
    tol: f64,
    opts: &EigenOptions,
) -> Result<SpectrumReport, SpectralError> {
    let mut s = Solver {
        op,
        inverse,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        tol,
        opts,
        matvecs: 0,
        restarts: 0,
    };
    let mut locked: Vec<Pair> = Vec::new();
    let report = |locked: &[Pair], s: &Solver, converged: bool| {
        let mut idx: Vec<usize> = (0..locked.len()).collect();
        idx.sort_by(|&a, &b| locked[a].value.total_cmp(&locked[b].value));
        SpectrumReport {
            eigenvalues: idx.iter().map(|&i| locked[i].value).collect(),
            residuals: idx.iter().map(|&i| locked[i].residual).collect(),
            matvecs: s.matvecs,
            restarts: s.restarts,
            tolerance: tol,
            converged,
            grid: None,
            nu: None,
            mu: None,
        }
    };
    let max_passes = 4 * k + 8;
    for _ in 0..max_passes {
        let vecs: Vec<Vector> = locked.iter().map(|p| p.vector.clone()).collect();
        if locked.len() < k {
            match s.lowest(&vecs, k - locked.len()) {
                Ok(pairs) if pairs.is_empty() => break,
                Ok(pairs) => locked.extend(pairs),
                Err(partial) => {
                    locked.extend(partial.into_iter().filter(|p| s.converged(p.value, p.residual)));
                    let mut rep = report(&locked, &s, false);
                    rep.eigenvalues.truncate(k);
                    rep.residuals.truncate(k);
                    return Err(SpectralError::NonConvergence(Box::new(rep)));
                }
            }
            continue;
        }
        // verification: the lowest eigenvalue of the complement must not undercut the locked set
        let top = locked.iter().map(|p| p.value).fold(f64::NEG_INFINITY, f64::max);
        match s.lowest(&vecs, 1) {
            Ok(pairs) => match pairs.into_iter().next() {
                Some(p) if p.value < top - 2.0 * tol * top.abs().max(1.0) => {
                    let worst = (0..locked.len())
                        .max_by(|&a, &b| locked[a].value.total_cmp(&locked[b].value))
                        .expect("locked set is non-empty");
                    locked.remove(worst);
                    locked.push(p);
                }
                _ => return Ok(report(&locked, &s, true)),
            },
            Err(_) => return Err(SpectralError::NonConvergence(Box::new(report(&locked, &s, false)))),
        }
    }
    let done = locked.len() >= k;
    let rep = report(&locked, &s, done);
    if done {
        Ok(rep)
    } else {
        Err(SpectralError::NonConvergence(Box::new(rep)))
    }
}
