use super::coeff::{imag_unit, rat, real};
use super::diffop::{Chart, DiffOp};
use super::WeylError;

/// Which substitution to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// (x0..x3) → (z1, z̄1, z2, z̄2), also (y0..y3) → (z1, z̄1, z2, z̄2).
    RealToComplex,
    /// The inverse of [`Direction::RealToComplex`].
    ComplexToReal,
    /// z_j ↔ z̄_j on a complex chart.
    Conjugate,
}

/// A linear substitution of coordinates and derivatives that preserves
/// the Weyl relations, hence extends to an algebra homomorphism.
#[derive(Clone, Debug)]
pub struct ChartMap {
    source: Chart,
    target: Chart,
    coords: Vec<DiffOp>,
    derivs: Vec<DiffOp>,
}

fn complex_partner(c: Chart) -> Option<Chart> {
    match c {
        Chart::Real4 => Some(Chart::Complex4),
        Chart::Canonical4 => Some(Chart::CanonicalComplex4),
        _ => None,
    }
}

fn real_partner(c: Chart) -> Option<Chart> {
    match c {
        Chart::Complex4 => Some(Chart::Real4),
        Chart::CanonicalComplex4 => Some(Chart::Canonical4),
        _ => None,
    }
}

impl ChartMap {
    pub fn new(source: Chart, direction: Direction) -> Result<Self, WeylError> {
        let half = real(rat(1, 2));
        let i = imag_unit();
        match direction {
            Direction::RealToComplex => {
                let t = complex_partner(source).ok_or(WeylError::WrongChart {
                    expected: Chart::Real4,
                    found: source,
                })?;
                let z = |k| DiffOp::coord(t, k);
                let d = |k| DiffOp::deriv(t, k);
                let mut coords = Vec::new();
                let mut derivs = Vec::new();
                for p in [0, 2] {
                    // x_re = (z + z̄)/2, x_im = (z − z̄)/(2i)
                    coords.push((&z(p) + &z(p + 1)).scale(&half));
                    coords.push((&z(p) - &z(p + 1)).scale(&(-&i * &half)));
                    // ∂_re = ∂z + ∂z̄, ∂_im = i(∂z − ∂z̄)
                    derivs.push(&d(p) + &d(p + 1));
                    derivs.push((&d(p) - &d(p + 1)).scale(&i));
                }
                Ok(Self {
                    source,
                    target: t,
                    coords,
                    derivs,
                })
            }
            Direction::ComplexToReal => {
                let t = real_partner(source).ok_or(WeylError::WrongChart {
                    expected: Chart::Complex4,
                    found: source,
                })?;
                let x = |k| DiffOp::coord(t, k);
                let d = |k| DiffOp::deriv(t, k);
                let mut coords = Vec::new();
                let mut derivs = Vec::new();
                for p in [0, 2] {
                    coords.push(&x(p) + &x(p + 1).scale(&i));
                    coords.push(&x(p) - &x(p + 1).scale(&i));
                    derivs.push((&d(p) - &d(p + 1).scale(&i)).scale(&half));
                    derivs.push((&d(p) + &d(p + 1).scale(&i)).scale(&half));
                }
                Ok(Self {
                    source,
                    target: t,
                    coords,
                    derivs,
                })
            }
            Direction::Conjugate => {
                if real_partner(source).is_none() {
                    return Err(WeylError::WrongChart {
                        expected: Chart::Complex4,
                        found: source,
                    });
                }
                let perm = [1, 0, 3, 2];
                Ok(Self {
                    source,
                    target: source,
                    coords: perm.iter().map(|&k| DiffOp::coord(source, k)).collect(),
                    derivs: perm.iter().map(|&k| DiffOp::deriv(source, k)).collect(),
                })
            }
        }
    }

    pub fn source(&self) -> Chart {
        self.source
    }

    pub fn target(&self) -> Chart {
        self.target
    }

    pub fn apply(&self, p: &DiffOp) -> Result<DiffOp, WeylError> {
        if p.chart() != self.source {
            return Err(WeylError::WrongChart {
                expected: self.source,
                found: p.chart(),
            });
        }
        let mut out = DiffOp::zero(self.target);
        for (m, c) in p.terms() {
            let mut term = DiffOp::scalar(self.target, c.clone());
            for (k, &e) in m.coords.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &self.coords[k];
                }
            }
            for (k, &e) in m.derivs.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &self.derivs[k];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Applies the substitution for `direction` to `p`, inferring the target chart.
pub fn chart_transform(p: &DiffOp, direction: Direction) -> Result<DiffOp, WeylError> {
    ChartMap::new(p.chart(), direction)?.apply(p)
}
