//! The quaternionic Heisenberg group N_ω = ℝ³ ×_ω ℝ⁴, its affine 8×8
//! representation ζ and the 7-dimensional Lie algebra spanned by F0..F3, T1..T3.

use nalgebra::SMatrix;
use serde::Serialize;

use crate::algebra::{omega_form, two, Scalar, Vec3, Vec4};

pub type HeisMatrix<T = f64> = SMatrix<T, 8, 8>;

/// A point (t, x) of N_ω; t is the central coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeisElement<T = f64> {
    pub t: Vec3<T>,
    pub x: Vec4<T>,
}

impl<T: Scalar> HeisElement<T> {
    pub fn new(t: Vec3<T>, x: Vec4<T>) -> Self {
        Self { t, x }
    }

    pub fn identity() -> Self {
        Self::new(Vec3::zero(), Vec4::zero())
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.t.clone(), -self.x.clone())
    }
}

/// (t,x)·(t′,x′) = (t + t′ + ω(x,x′), x + x′)
pub fn heis_mul<T: Scalar>(g: &HeisElement<T>, h: &HeisElement<T>) -> HeisElement<T> {
    HeisElement::new(
        g.t.clone() + h.t.clone() + omega_form(&g.x, &h.x),
        g.x.clone() + h.x.clone(),
    )
}

/// ζ(t, x): identity, the 3×4 block x ↦ ω(x, ·) in rows 0..3 / columns 3..7,
/// and the translation column (t, x, 1).
pub fn heis_matrix<T: Scalar + 'static>(g: &HeisElement<T>) -> HeisMatrix<T> {
    let [x0, x1, x2, x3] = g.x.0.clone();
    let mut m = HeisMatrix::<T>::identity();
    let block = [
        [-x1.clone(), x0.clone(), -x3.clone(), x2.clone()],
        [-x2.clone(), x3.clone(), x0.clone(), -x1.clone()],
        [-x3.clone(), -x2.clone(), x1.clone(), x0.clone()],
    ];
    for (r, row) in block.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            m[(r, 3 + c)] = v;
        }
        m[(r, 7)] = g.t.0[r].clone();
    }
    for a in 0..4 {
        m[(3 + a, 7)] = g.x.0[a].clone();
    }
    m
}

/// Generators of the Lie algebra, in the order F0, F1, F2, F3, T1, T2, T3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    F0,
    F1,
    F2,
    F3,
    T1,
    T2,
    T3,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::F0,
        Generator::F1,
        Generator::F2,
        Generator::F3,
        Generator::T1,
        Generator::T2,
        Generator::T3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_central(self) -> bool {
        self.index() >= 4
    }

    pub fn name(self) -> &'static str {
        ["F0", "F1", "F2", "F3", "T1", "T2", "T3"][self.index()]
    }
}

/// Coefficients of an element of 𝔥 on (F0..F3, T1..T3).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T = f64>(pub [T; 7]);

impl<T: Scalar + 'static> AlgebraElement<T> {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| T::zero()))
    }

    pub fn generator(g: Generator) -> Self {
        let mut e = Self::zero();
        e.0[g.index()] = T::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn to_matrix(&self) -> HeisMatrix<T> {
        let gens = generator_matrices::<T>();
        let mut m = HeisMatrix::<T>::zeros();
        for (c, g) in self.0.iter().zip(gens.iter()) {
            m += g * c.clone();
        }
        m
    }

    /// Reads coefficients off a matrix of the algebra. Returns `None` when the
    /// matrix does not lie in the span of the generators.
    pub fn from_matrix(m: &HeisMatrix<T>) -> Option<Self> {
        let mut e = Self::zero();
        for a in 0..4 {
            e.0[a] = m[(3 + a, 7)].clone();
        }
        for l in 0..3 {
            e.0[4 + l] = m[(l, 7)].clone();
        }
        (e.to_matrix() == *m).then_some(e)
    }
}

/// F_α = d/ds ζ(0, s e_α) and T_λ = d/ds ζ(s e′_λ, 0) at s = 0.
///
/// ζ is affine in (t, x), so the derivative is ζ(t, x) − I₈ at the unit vector.
pub fn generator_matrices<T: Scalar + 'static>() -> [HeisMatrix<T>; 7] {
    let id = HeisMatrix::<T>::identity();
    std::array::from_fn(|n| {
        let g = if n < 4 {
            HeisElement::new(Vec3::zero(), Vec4::basis(n))
        } else {
            HeisElement::new(Vec3::basis(n - 4), Vec4::zero())
        };
        heis_matrix(&g) - id.clone()
    })
}

pub fn matrix_bracket<T: Scalar + 'static>(a: &HeisMatrix<T>, b: &HeisMatrix<T>) -> HeisMatrix<T> {
    a * b - b * a
}

/// The bracket relations of 𝔥 as stated for this algebra:
/// [F0, Fγ] = 2Tγ, [Fα, Fβ] = 2Tγ for (αβγ) cyclic in (123), everything
/// involving a T vanishes.
pub fn expected_bracket<T: Scalar + 'static>(x: Generator, y: Generator) -> AlgebraElement<T> {
    use Generator::*;
    let (target, sign) = match (x, y) {
        (F0, F1) | (F2, F3) => (Some(T1), 1),
        (F0, F2) | (F3, F1) => (Some(T2), 1),
        (F0, F3) | (F1, F2) => (Some(T3), 1),
        (F1, F0) | (F3, F2) => (Some(T1), -1),
        (F2, F0) | (F1, F3) => (Some(T2), -1),
        (F3, F0) | (F2, F1) => (Some(T3), -1),
        _ => (None, 0),
    };
    let mut e = AlgebraElement::zero();
    if let Some(t) = target {
        e.0[t.index()] = if sign > 0 { two() } else { -two::<T>() };
    }
    e
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub left: Generator,
    pub right: Generator,
    /// Coefficients of [left, right] on (F0..F3, T1..T3).
    pub coefficients: [f64; 7],
    pub matches_expected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// All 21 brackets [X, Y] with X before Y.
    pub brackets: Vec<BracketEntry>,
    /// Brackets that differ from [`expected_bracket`].
    pub bracket_violations: usize,
    /// Brackets whose result left the span of the generators.
    pub closure_violations: usize,
    /// Nonzero [[X, Y], Z] over all 343 triples.
    pub nilpotency_violations: usize,
    /// Nonzero [T_λ, X].
    pub center_violations: usize,
    /// Largest entry of any computed bracket minus its expected value.
    pub max_residual: f64,
}

impl StructureReport {
    pub fn violations(&self) -> usize {
        self.bracket_violations + self.closure_violations + self.nilpotency_violations + self.center_violations
    }
}

/// Computes the full bracket table of 𝔥 from ζ over a given scalar type.
pub fn bracket_table<T: Scalar + 'static>() -> Vec<(Generator, Generator, Option<AlgebraElement<T>>)> {
    let gens = generator_matrices::<T>();
    let mut out = Vec::new();
    for (i, &x) in Generator::ALL.iter().enumerate() {
        for &y in &Generator::ALL[i + 1..] {
            let br = matrix_bracket(&gens[x.index()], &gens[y.index()]);
            out.push((x, y, AlgebraElement::from_matrix(&br)));
        }
    }
    out
}

/// Exhaustive check of the structure constants in exact integer arithmetic.
pub fn verify_structure() -> StructureReport {
    type Q = num::BigRational;
    let gens = generator_matrices::<Q>();
    let to_f64 = |q: &Q| -> f64 { num::ToPrimitive::to_f64(q).unwrap_or(f64::NAN) };

    let mut brackets = Vec::new();
    let (mut bracket_violations, mut closure_violations) = (0, 0);
    let mut max_residual: f64 = 0.0;
    for (x, y, el) in bracket_table::<Q>() {
        let expected = expected_bracket::<Q>(x, y);
        let (coefficients, ok) = match el {
            Some(el) => {
                let diff: Vec<Q> = el.0.iter().zip(expected.0.iter()).map(|(a, b)| a - b).collect();
                for d in &diff {
                    max_residual = max_residual.max(to_f64(d).abs());
                }
                let ok = diff.iter().all(num::Zero::is_zero);
                (std::array::from_fn(|n| to_f64(&el.0[n])), ok)
            }
            None => {
                closure_violations += 1;
                max_residual = f64::INFINITY;
                ([f64::NAN; 7], false)
            }
        };
        if !ok {
            bracket_violations += 1;
        }
        brackets.push(BracketEntry {
            left: x,
            right: y,
            coefficients,
            matches_expected: ok,
        });
    }

    let mut nilpotency_violations = 0;
    let mut center_violations = 0;
    for x in Generator::ALL {
        for y in Generator::ALL {
            let xy = matrix_bracket(&gens[x.index()], &gens[y.index()]);
            if x.is_central() && !num::Zero::is_zero(&xy) {
                center_violations += 1;
            }
            for z in Generator::ALL {
                if !num::Zero::is_zero(&matrix_bracket(&xy, &gens[z.index()])) {
                    nilpotency_violations += 1;
                }
            }
        }
    }

    StructureReport {
        brackets,
        bracket_violations,
        closure_violations,
        nilpotency_violations,
        center_violations,
        max_residual,
    }
}
