//! Magnetic translations T_a f(x) = e^{i⟨A(a),x⟩} f(x + a), checked pointwise
//! on a family of functions that the translations map into itself.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{vector_potential, Vec3, Vec4};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TranslationError {
    #[error("Gaussian width must be positive and finite, got {0}")]
    InvalidWidth(f64),
    #[error("non-finite parameter")]
    NonFinite,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Value, gradient and Hessian at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub grad: [Complex64; 4],
    pub hess: [[Complex64; 4]; 4],
}

/// s · P(x − p) · e^{i⟨w,x⟩} · e^{−σ‖x − c‖²}.
///
/// Shifting the argument moves p and c and folds e^{i⟨w,a⟩} into s;
/// multiplying by a plane wave adds to w. Both are exact on the parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestFunction {
    /// Monomials (exponents of y = x − p) with coefficients.
    pub terms: Vec<([u32; 4], Complex64)>,
    pub origin: Vec4,
    pub scale: Complex64,
    pub wave: Vec4,
    pub sigma: f64,
    pub center: Vec4,
}

fn finite4(v: &Vec4) -> bool {
    v.0.iter().all(|x| x.is_finite())
}

fn powi(y: f64, e: u32) -> f64 {
    y.powi(e as i32)
}

impl TestFunction {
    pub fn new(terms: Vec<([u32; 4], Complex64)>, sigma: f64, center: Vec4) -> Result<Self, TranslationError> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(TranslationError::InvalidWidth(sigma));
        }
        if !finite4(&center) || terms.iter().any(|(_, c)| !c.is_finite()) {
            return Err(TranslationError::NonFinite);
        }
        Ok(Self {
            terms,
            origin: center,
            scale: Complex64::new(1.0, 0.0),
            wave: Vec4::zero(),
            sigma,
            center,
        })
    }

    pub fn gaussian(sigma: f64, center: Vec4) -> Result<Self, TranslationError> {
        Self::new(vec![([0; 4], Complex64::new(1.0, 0.0))], sigma, center)
    }

    /// x ↦ f(x + a).
    pub fn shifted(&self, a: &Vec4) -> Self {
        let mut g = self.clone();
        g.origin = self.origin - *a;
        g.center = self.center - *a;
        g.scale = self.scale * (I * self.wave.dot(a)).exp();
        g
    }

    /// x ↦ e^{i⟨w,x⟩} f(x).
    pub fn modulated(&self, w: &Vec4) -> Self {
        let mut g = self.clone();
        g.wave = self.wave + *w;
        g
    }

    pub fn value(&self, x: &Vec4) -> Complex64 {
        self.jet(x).value
    }

    /// Closed-form value, first and second derivatives.
    pub fn jet(&self, x: &Vec4) -> Jet {
        let y: [f64; 4] = std::array::from_fn(|k| x.0[k] - self.origin.0[k]);
        // polynomial part
        let mut p = zero();
        let mut dp = [zero(); 4];
        let mut ddp = [[zero(); 4]; 4];
        for (e, c) in &self.terms {
            let pw: [f64; 4] = std::array::from_fn(|k| powi(y[k], e[k]));
            let d1: [f64; 4] = std::array::from_fn(|k| {
                if e[k] == 0 {
                    0.0
                } else {
                    e[k] as f64 * powi(y[k], e[k] - 1)
                }
            });
            let d2: [f64; 4] = std::array::from_fn(|k| {
                if e[k] < 2 {
                    0.0
                } else {
                    (e[k] * (e[k] - 1)) as f64 * powi(y[k], e[k] - 2)
                }
            });
            let prod = |f: &dyn Fn(usize) -> f64| (0..4).map(f).product::<f64>();
            p += c * prod(&|k| pw[k]);
            for a in 0..4 {
                dp[a] += c * prod(&|k| if k == a { d1[k] } else { pw[k] });
                for b in 0..4 {
                    let v = if a == b {
                        prod(&|k| if k == a { d2[k] } else { pw[k] })
                    } else {
                        prod(&|k| if k == a || k == b { d1[k] } else { pw[k] })
                    };
                    ddp[a][b] += c * v;
                }
            }
        }
        // exponential part e^φ, φ = i⟨w,x⟩ − σ‖x − c‖²
        let d: [f64; 4] = std::array::from_fn(|k| x.0[k] - self.center.0[k]);
        let r2: f64 = d.iter().map(|v| v * v).sum();
        let e = self.scale * (I * self.wave.dot(x) - self.sigma * r2).exp();
        let dphi: [Complex64; 4] = std::array::from_fn(|k| I * self.wave.0[k] - 2.0 * self.sigma * d[k]);
        let value = p * e;
        let grad = std::array::from_fn(|a| (dp[a] + p * dphi[a]) * e);
        let hess = std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let ddphi = if a == b { -2.0 * self.sigma } else { 0.0 };
                (ddp[a][b] + dp[a] * dphi[b] + dp[b] * dphi[a] + p * (dphi[a] * dphi[b] + ddphi)) * e
            })
        });
        Jet { value, grad, hess }
    }
}

/// T_a for the field ν.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MagneticTranslation {
    pub a: Vec4,
    pub nu: Vec3,
}

impl MagneticTranslation {
    pub fn new(a: Vec4, nu: Vec3) -> Self {
        Self { a, nu }
    }

    /// A(a) = Ω_ν a.
    pub fn phase_vector(&self) -> Vec4 {
        vector_potential(&self.nu, &self.a)
    }

    /// T_{−a}, which is the inverse because ⟨Ω_ν a, a⟩ = 0.
    pub fn inverse(&self) -> Self {
        Self {
            a: -self.a,
            nu: self.nu,
        }
    }

    pub fn apply(&self, f: &TestFunction) -> TestFunction {
        apply_translation(self, f)
    }
}

pub fn apply_translation(t: &MagneticTranslation, f: &TestFunction) -> TestFunction {
    f.shifted(&t.a).modulated(&t.phase_vector())
}

/// e^{i⟨A(a),x⟩} f(x + a) evaluated straight from the definition.
pub fn translate_direct(t: &MagneticTranslation, f: &TestFunction, x: &Vec4) -> Complex64 {
    (I * t.phase_vector().dot(x)).exp() * f.value(&(*x + t.a))
}

/// (H_ν f)(x) = −Δf − 2i⟨Ω_ν x, ∇f⟩ + ‖ν‖²‖x‖² f.
pub fn landau_apply(nu: &Vec3, f: &TestFunction, x: &Vec4) -> Complex64 {
    let j = f.jet(x);
    let a = vector_potential(nu, x);
    let lap: Complex64 = (0..4).map(|k| j.hess[k][k]).sum();
    let drift: Complex64 = (0..4).map(|k| a.0[k] * j.grad[k]).sum();
    -lap - 2.0 * I * drift + nu.norm_sqr() * x.dot(x) * j.value
}

/// ∇_α f = ∂_α f + i A_α f.
pub fn covariant_derivative(nu: &Vec3, f: &TestFunction, alpha: usize, x: &Vec4) -> Complex64 {
    let j = f.jet(x);
    j.grad[alpha] + I * vector_potential(nu, x).0[alpha] * j.value
}

/// `count` points from a seeded Gaussian cloud of radius 3/√σ around the center.
pub fn sample_points(f: &TestFunction, count: usize, seed: u64) -> Vec<Vec4> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = 1.0 / f.sigma.sqrt();
    (0..count)
        .map(|_| {
            Vec4(std::array::from_fn(|k| {
                let g: f64 = StandardNormal.sample(&mut rng);
                f.center.0[k] + s * g
            }))
        })
        .collect()
}

/// max |lhs − rhs| / max |rhs| over the points.
fn relative_gap(points: &[Vec4], pair: impl Fn(&Vec4) -> (Complex64, Complex64)) -> f64 {
    let mut gap: f64 = 0.0;
    let mut size: f64 = 0.0;
    for x in points {
        let (l, r) = pair(x);
        gap = gap.max((l - r).norm());
        size = size.max(r.norm());
    }
    if size == 0.0 {
        gap
    } else {
        gap / size
    }
}

/// Closed-form T_a f against the defining formula.
pub fn translation_check(t: &MagneticTranslation, f: &TestFunction, points: &[Vec4]) -> f64 {
    let g = apply_translation(t, f);
    relative_gap(points, |x| (g.value(x), translate_direct(t, f, x)))
}

/// T_b T_a f against e^{i⟨A(a),b⟩} e^{i⟨A(a+b),x⟩} f(x + a + b).
pub fn composition_check(a: &Vec4, b: &Vec4, nu: &Vec3, f: &TestFunction, points: &[Vec4]) -> f64 {
    let ta = MagneticTranslation::new(*a, *nu);
    let tb = MagneticTranslation::new(*b, *nu);
    let g = tb.apply(&ta.apply(f));
    let cocycle = (I * ta.phase_vector().dot(b)).exp();
    let sum = MagneticTranslation::new(*a + *b, *nu);
    relative_gap(points, |x| (g.value(x), cocycle * translate_direct(&sum, f, x)))
}

/// e^{2i⟨Ω_ν a, b⟩}, the scalar T_b⁻¹ T_a⁻¹ T_b T_a.
pub fn commutator_phase(a: &Vec4, b: &Vec4, nu: &Vec3) -> Complex64 {
    (2.0 * I * vector_potential(nu, a).dot(b)).exp()
}

/// Applies T_a, T_b, T_a⁻¹, T_b⁻¹ in turn and compares with the closed-form phase times f.
pub fn commutator_check(a: &Vec4, b: &Vec4, nu: &Vec3, f: &TestFunction, points: &[Vec4]) -> f64 {
    let ta = MagneticTranslation::new(*a, *nu);
    let tb = MagneticTranslation::new(*b, *nu);
    let g = tb.inverse().apply(&ta.inverse().apply(&tb.apply(&ta.apply(f))));
    let phase = commutator_phase(a, b, nu);
    relative_gap(points, |x| (g.value(x), phase * f.value(x)))
}

/// H_ν(T_a f) against T_a(H_ν f), normalized by max |H_ν f| over the shifted points.
pub fn intertwine_check(nu: &Vec3, a: &Vec4, f: &TestFunction, points: &[Vec4]) -> f64 {
    let t = MagneticTranslation::new(*a, *nu);
    let g = t.apply(f);
    let mut gap: f64 = 0.0;
    let mut size: f64 = 0.0;
    for x in points {
        let hf = landau_apply(nu, f, &(*x + *a));
        let lhs = landau_apply(nu, &g, x);
        let rhs = (I * t.phase_vector().dot(x)).exp() * hf;
        gap = gap.max((lhs - rhs).norm());
        size = size.max(hf.norm());
    }
    if size == 0.0 {
        gap
    } else {
        gap / size
    }
}

/// max over α of ∇_α(T_a f) against T_a(∇_α f).
pub fn covariance_check(nu: &Vec3, a: &Vec4, f: &TestFunction, points: &[Vec4]) -> f64 {
    let t = MagneticTranslation::new(*a, *nu);
    let g = t.apply(f);
    (0..4)
        .map(|alpha| {
            relative_gap(points, |x| {
                let lhs = covariant_derivative(nu, &g, alpha, x);
                let rhs = (I * t.phase_vector().dot(x)).exp() * covariant_derivative(nu, f, alpha, &(*x + *a));
                (lhs, rhs)
            })
        })
        .fold(0.0, f64::max)
}

/// Closed-form derivatives against sixth-order central differences (of the
/// value for the gradient, of the exact gradient for the Hessian).
pub fn derivative_self_test(f: &TestFunction, points: &[Vec4]) -> f64 {
    const W: [(f64, f64); 6] = [
        (-3.0, -1.0),
        (-2.0, 9.0),
        (-1.0, -45.0),
        (1.0, 45.0),
        (2.0, -9.0),
        (3.0, 1.0),
    ];
    let h = 1e-2 / f.sigma.sqrt().max(1.0);
    let diff = |g: &dyn Fn(&Vec4) -> Complex64, x: &Vec4, k: usize| -> Complex64 {
        W.iter()
            .map(|&(s, w)| {
                let mut y = *x;
                y.0[k] += s * h;
                g(&y) * w
            })
            .sum::<Complex64>()
            / (60.0 * h)
    };
    let mut hess: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            hess = hess.max(relative_gap(points, |x| {
                (diff(&|y| f.jet(y).grad[a], x, b), f.jet(x).hess[a][b])
            }));
        }
    }
    let grad = (0..4)
        .map(|k| relative_gap(points, |x| (diff(&|y| f.value(y), x, k), f.jet(x).grad[k])))
        .fold(0.0, f64::max);
    grad.max(hess)
}

/// One random draw for the translation identities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TranslationCase {
    pub nu: Vec3,
    pub a: Vec4,
    pub b: Vec4,
    pub f: TestFunction,
}

/// Seeded draws: ν ∈ [−2, 2]³, a, b ∈ [−1, 1]⁴, σ ∈ [0.3, 1], a complex
/// polynomial of degree ≤ 2 and a plane wave with |w_k| ≤ 1.
pub fn random_cases(seed: u64, count: usize) -> Vec<TranslationCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v4 = |rng: &mut ChaCha8Rng, r: f64| Vec4(std::array::from_fn(|_| rng.random_range(-r..=r)));
    (0..count)
        .map(|_| {
            let nu = Vec3(std::array::from_fn(|_| rng.random_range(-2.0..=2.0)));
            let a = v4(&mut rng, 1.0);
            let b = v4(&mut rng, 1.0);
            let center = v4(&mut rng, 1.0);
            let wave = v4(&mut rng, 1.0);
            let sigma = rng.random_range(0.3..=1.0);
            let mut terms = vec![([0; 4], Complex64::new(1.0, 0.0))];
            for k in 0..4 {
                let mut e = [0u32; 4];
                e[k] = 1;
                terms.push((
                    e,
                    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)),
                ));
                let j = rng.random_range(0..4);
                e[j] += 1;
                terms.push((
                    e,
                    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)),
                ));
            }
            let f = TestFunction::new(terms, sigma, center)
                .expect("valid draw")
                .modulated(&wave);
            TranslationCase { nu, a, b, f }
        })
        .collect()
}
