use num::Zero;
use serde::Serialize;

use super::chart::{chart_transform, Direction};
use super::coeff::{int, real, Rational};
use super::diffop::{op_commutator, Chart, DiffOp};
use super::operators::build_canonical;
use super::WeylError;

const C: Chart = Chart::CanonicalComplex4;

fn z(j: usize) -> DiffOp {
    DiffOp::coord(C, 2 * j)
}
fn zb(j: usize) -> DiffOp {
    DiffOp::coord(C, 2 * j + 1)
}
fn dz(j: usize) -> DiffOp {
    DiffOp::deriv(C, 2 * j)
}
fn dzb(j: usize) -> DiffOp {
    DiffOp::deriv(C, 2 * j + 1)
}

/// Annihilation and creation operators for the two complex modes.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub mu: Rational,
    pub a: [DiffOp; 2],
    pub a_dag: [DiffOp; 2],
}

impl Ladder {
    /// Σ_j a_j† a_j.
    pub fn number_operator(&self) -> DiffOp {
        &(&self.a_dag[0] * &self.a[0]) + &(&self.a_dag[1] * &self.a[1])
    }

    /// 4 Σ a_j† a_j + 4μ.
    pub fn oscillator_form(&self) -> DiffOp {
        let four = int(4);
        &self.number_operator().scale(&four) + &DiffOp::scalar(C, &four * real(self.mu.clone()))
    }

    /// True iff [a_i, a_j†] = μδ_ij and the a's (resp. a†'s) commute, exactly.
    pub fn commutators_hold(&self) -> bool {
        let mu = DiffOp::scalar(C, real(self.mu.clone()));
        (0..2).all(|i| {
            (0..2).all(|j| {
                let want = if i == j { mu.clone() } else { DiffOp::zero(C) };
                op_commutator(&self.a[i], &self.a_dag[j])
                    .map(|b| b == want)
                    .unwrap_or(false)
                    && op_commutator(&self.a[i], &self.a[j])
                        .map(|b| b.is_zero())
                        .unwrap_or(false)
                    && op_commutator(&self.a_dag[i], &self.a_dag[j])
                        .map(|b| b.is_zero())
                        .unwrap_or(false)
            })
        })
    }
}

fn check_positive(mu: &Rational) -> Result<(), WeylError> {
    if *mu <= Rational::zero() {
        Err(WeylError::NonPositiveField(mu.to_string()))
    } else {
        Ok(())
    }
}

/// a_j = ∂/∂z̄_j + (μ/2) z_j and a_j† = −∂/∂z_j + (μ/2) z̄_j.
pub fn build_ladder(mu: &Rational) -> Result<Ladder, WeylError> {
    build_oriented_ladder(mu, 1)
}

/// The ladder adapted to chirality `s`: `s >= 0` gives [`build_ladder`],
/// `s < 0` exchanges z_j and z̄_j.
pub fn build_oriented_ladder(mu: &Rational, s: i8) -> Result<Ladder, WeylError> {
    check_positive(mu)?;
    let h = real(mu / Rational::from_integer(2.into()));
    type Var = fn(usize) -> DiffOp;
    let (hol, anti, dhol, danti): (Var, Var, Var, Var) = if s >= 0 { (z, zb, dz, dzb) } else { (zb, z, dzb, dz) };
    Ok(Ladder {
        mu: mu.clone(),
        a: std::array::from_fn(|j| &danti(j) + &hol(j).scale(&h)),
        a_dag: std::array::from_fn(|j| &-&dhol(j) + &anti(j).scale(&h)),
    })
}

/// −4{∂₁∂̄₁ + ∂₂∂̄₂ + s(μ/2)Σ(z_j∂_j − z̄_j∂̄_j) − (μ/2)²(|z₁|² + |z₂|²)}.
/// `s = 1` is the form as usually printed.
pub fn complex_canonical_form(mu: &Rational, s: i8) -> DiffOp {
    let h = real(mu / Rational::from_integer(2.into()));
    let sh = if s >= 0 { h.clone() } else { -h.clone() };
    let mut inner = DiffOp::zero(C);
    for j in 0..2 {
        inner = &inner + &(&dz(j) * &dzb(j));
        inner = &inner + &(&(&z(j) * &dz(j)) - &(&zb(j) * &dzb(j))).scale(&sh);
        inner = &inner - &(&z(j) * &zb(j)).scale(&(&h * &h));
    }
    inner.scale(&int(-4))
}

/// Outcome of the chirality comparison.
#[derive(Clone, Debug, Serialize)]
pub struct ChiralityReport {
    pub mu: String,
    /// Sign s for which the transformed canonical operator equals `complex_canonical_form(μ, s)`.
    pub sign: i8,
    /// Sign for which 4Σa†a + 4μ with the unoriented ladder equals `complex_canonical_form(μ, s)`.
    pub ladder_sign: Option<i8>,
    /// Whether the oriented ladder reproduces the canonical operator exactly.
    pub oriented_ladder_exact: bool,
    /// The sign required after exchanging z and z̄.
    pub conjugate_sign: Option<i8>,
    pub commutators_hold: bool,
}

/// Finds s ∈ {+1, −1} with `op == complex_canonical_form(μ, s)`.
pub fn resolve_chirality_of(op: &DiffOp, mu: &Rational) -> Result<i8, WeylError> {
    if op.chart() != C {
        return Err(WeylError::WrongChart {
            expected: C,
            found: op.chart(),
        });
    }
    [1i8, -1]
        .into_iter()
        .find(|&s| *op == complex_canonical_form(mu, s))
        .ok_or(WeylError::NoChirality)
}

/// Transforms the canonical operator to (z1, z̄1, z2, z̄2) and settles the
/// sign of its angular term against `complex_canonical_form` and the ladder factorization.
pub fn resolve_chirality(mu: &Rational) -> Result<ChiralityReport, WeylError> {
    check_positive(mu)?;
    let canon = chart_transform(&build_canonical(mu)?, Direction::RealToComplex)?;
    let sign = resolve_chirality_of(&canon, mu)?;
    let plain = build_ladder(mu)?;
    let ladder_sign = resolve_chirality_of(&plain.oscillator_form(), mu).ok();
    let oriented = build_oriented_ladder(mu, sign)?;
    let conj = chart_transform(&canon, Direction::Conjugate)?;
    Ok(ChiralityReport {
        mu: mu.to_string(),
        sign,
        ladder_sign,
        oriented_ladder_exact: oriented.oscillator_form() == canon,
        conjugate_sign: resolve_chirality_of(&conj, mu).ok(),
        commutators_hold: plain.commutators_hold() && oriented.commutators_hold(),
    })
}
