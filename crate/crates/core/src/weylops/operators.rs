use num::Zero;

use super::coeff::{self, imag_unit, int, real, Coeff, Rational};
use super::diffop::{Chart, DiffOp, Monomial};
use super::WeylError;
use crate::algebra::{field_matrix_entries, Bivector, Vec3};
use crate::heisenberg::Generator;

const H: Chart = Chart::Heisenberg;
const R4: Chart = Chart::Real4;

fn t_deriv(lambda: usize) -> DiffOp {
    DiffOp::deriv(H, lambda)
}

fn hx(alpha: usize) -> DiffOp {
    DiffOp::coord(H, 3 + alpha)
}

/// Exact rational copy of a float field vector.
pub fn exact_nu(nu: &Vec3) -> Result<Vec3<Rational>, WeylError> {
    let conv = |v: f64| coeff::rational_from_f64(v).ok_or(WeylError::NonFinite);
    Ok(Vec3([conv(nu.0[0])?, conv(nu.0[1])?, conv(nu.0[2])?]))
}

/// F0..F3, T1..T3 on (t1, t2, t3, x0, x1, x2, x3), in [`Generator`] order.
pub fn build_heisenberg_fields() -> [DiffOp; 7] {
    let lin = |terms: &[(i64, usize, usize)], alpha: usize| {
        // ∂x_alpha + Σ sign · x_β ∂t_λ
        let mut op = DiffOp::deriv(H, 3 + alpha);
        for &(s, beta, lambda) in terms {
            op = &op + &(&hx(beta) * &t_deriv(lambda)).scale(&int(s));
        }
        op
    };
    [
        lin(&[(-1, 1, 0), (-1, 2, 1), (-1, 3, 2)], 0),
        lin(&[(1, 0, 0), (1, 3, 1), (-1, 2, 2)], 1),
        lin(&[(-1, 3, 0), (1, 0, 1), (1, 1, 2)], 2),
        lin(&[(1, 2, 0), (-1, 1, 1), (1, 0, 2)], 3),
        t_deriv(0),
        t_deriv(1),
        t_deriv(2),
    ]
}

/// Writes a first-order operator as Σ c_k G_k over the Heisenberg fields,
/// or `None` if it is not in their span.
pub fn decompose_in_fields(op: &DiffOp) -> Option<[Coeff; 7]> {
    if op.chart() != H {
        return None;
    }
    let fields = build_heisenberg_fields();
    let mut c: [Coeff; 7] = std::array::from_fn(|_| int(0));
    let mut rest = op.clone();
    for alpha in 0..4 {
        let mut m = Monomial::one(7);
        m.derivs[3 + alpha] = 1;
        c[alpha] = op.coefficient(&m);
        rest = &rest - &fields[alpha].scale(&c[alpha]);
    }
    for lambda in 0..3 {
        let mut m = Monomial::one(7);
        m.derivs[lambda] = 1;
        c[4 + lambda] = rest.coefficient(&m);
        rest = &rest - &fields[4 + lambda].scale(&c[4 + lambda]);
    }
    rest.is_zero().then_some(c)
}

/// All 21 brackets of the symbolic fields, decomposed on the generators.
pub fn symbolic_bracket_table() -> Vec<(Generator, Generator, Option<[Coeff; 7]>)> {
    let f = build_heisenberg_fields();
    let mut out = Vec::with_capacity(21);
    for (a, ga) in Generator::ALL.iter().enumerate() {
        for (b, gb) in Generator::ALL.iter().enumerate().skip(a + 1) {
            let br = &(&f[a] * &f[b]) - &(&f[b] * &f[a]);
            out.push((*ga, *gb, decompose_in_fields(&br)));
        }
    }
    out
}

/// Q = F0² + F1² + F2² + F3² + T1² + T2² + T3².
pub fn build_laplace_element() -> DiffOp {
    build_heisenberg_fields()
        .iter()
        .fold(DiffOp::zero(H), |acc, f| &acc + &(f * f))
}

/// Δ_sub = F0² + F1² + F2² + F3².
pub fn sub_laplacian() -> DiffOp {
    build_heisenberg_fields()[..4]
        .iter()
        .fold(DiffOp::zero(H), |acc, f| &acc + &(f * f))
}

/// Replaces ∂/∂t_λ by iν_λ; the result lives on (x0..x3).
pub fn partial_fourier(p: &DiffOp, nu: &Vec3<Rational>) -> Result<DiffOp, WeylError> {
    if p.chart() != H {
        return Err(WeylError::WrongChart {
            expected: H,
            found: p.chart(),
        });
    }
    let inu: Vec<Coeff> = nu.0.iter().map(|v| Coeff::new(Rational::zero(), v.clone())).collect();
    let mut out = DiffOp::zero(R4);
    for (m, c) in p.terms() {
        if let Some(l) = (0..3).find(|&l| m.coords[l] != 0) {
            return Err(WeylError::CentralCoordinate(l + 1));
        }
        let mut c = c.clone();
        for l in 0..3 {
            for _ in 0..m.derivs[l] {
                c = &c * &inu[l];
            }
        }
        let mono = Monomial {
            coords: m.coords[3..].to_vec(),
            derivs: m.derivs[3..].to_vec(),
        };
        out = &out + &DiffOp::from_terms(R4, [(mono, c)]);
    }
    Ok(out)
}

/// Δ on a chart with real coordinates.
pub fn laplacian(chart: Chart) -> DiffOp {
    (0..chart.len()).fold(DiffOp::zero(chart), |acc, k| &acc + &DiffOp::deriv(chart, k).pow(2))
}

/// A_α = (Ω_ν x)_α as multiplication operators on `chart`.
fn potential(nu: &Vec3<Rational>, chart: Chart) -> [DiffOp; 4] {
    let om = field_matrix_entries(nu);
    std::array::from_fn(|a| {
        (0..4).fold(DiffOp::zero(chart), |acc, b| {
            &acc + &DiffOp::coord(chart, b).scale(&real(om[a][b].clone()))
        })
    })
}

fn landau_on(nu: &Vec3<Rational>, chart: Chart) -> DiffOp {
    let a = potential(nu, chart);
    let i = imag_unit();
    let mut h = -&laplacian(chart);
    for (alpha, a_alpha) in a.iter().enumerate() {
        // div A = 0, so A_α ∂_α needs no symmetrization
        h = &h - &(a_alpha * &DiffOp::deriv(chart, alpha)).scale(&(&i * int(2)));
        h = &h + &(a_alpha * a_alpha);
    }
    h
}

/// H_ν = −Δ − 2i⟨Ω_ν x, ∇⟩ + ‖Ω_ν x‖².
pub fn build_landau(nu: &Vec3<Rational>) -> DiffOp {
    landau_on(nu, R4)
}

/// H_ν = −Σ_α (∂_α + iA_α)², composed rather than expanded.
pub fn build_landau_covariant(nu: &Vec3<Rational>) -> DiffOp {
    let a = potential(nu, R4);
    let i = imag_unit();
    a.iter().enumerate().fold(DiffOp::zero(R4), |acc, (alpha, a_alpha)| {
        let cov = &DiffOp::deriv(R4, alpha) + &a_alpha.scale(&i);
        &acc - &(&cov * &cov)
    })
}

/// The canonical operator with field μ along the first axis, on (y0..y3).
pub fn build_canonical(mu: &Rational) -> Result<DiffOp, WeylError> {
    if *mu < Rational::zero() {
        return Err(WeylError::NegativeField(mu.to_string()));
    }
    let y = |k| DiffOp::coord(Chart::Canonical4, k);
    let d = |k| DiffOp::deriv(Chart::Canonical4, k);
    let imu = Coeff::new(Rational::zero(), mu.clone());
    let factors = [
        &d(0) - &y(1).scale(&imu),
        &d(1) + &y(0).scale(&imu),
        &d(2) - &y(3).scale(&imu),
        &d(3) + &y(2).scale(&imu),
    ];
    Ok(factors
        .iter()
        .fold(DiffOp::zero(Chart::Canonical4), |acc, f| &acc - &(f * f)))
}

/// x̂ ∧ ∂̂ as a bivector with operator coefficients, order (01, 02, 03, 23, 31, 12).
pub fn angular_momentum_bivector() -> Bivector<DiffOp> {
    let w = |a: usize, b: usize| {
        &(&DiffOp::coord(R4, a) * &DiffOp::deriv(R4, b)) - &(&DiffOp::coord(R4, b) * &DiffOp::deriv(R4, a))
    };
    Bivector([w(0, 1), w(0, 2), w(0, 3), w(2, 3), w(3, 1), w(1, 2)])
}

/// (l1, l2, l3) = −i (x̂∧∂̂ + ⋆(x̂∧∂̂)) on the self-dual basis, ħ = 1.
pub fn build_angular_momentum() -> [DiffOp; 3] {
    let b = angular_momentum_bivector();
    let s = b.hodge_star();
    let mi = -imag_unit();
    std::array::from_fn(|k| (&b.0[k] + &s.0[k]).scale(&mi))
}

/// (l̂x, l̂y, l̂z) on ℝ³ with ħ = 1.
pub fn build_angular_momentum_3d() -> [DiffOp; 3] {
    let c = Chart::Real3;
    let w = |a: usize, b: usize| {
        (&(&DiffOp::coord(c, a) * &DiffOp::deriv(c, b)) - &(&DiffOp::coord(c, b) * &DiffOp::deriv(c, a)))
            .scale(&-imag_unit())
    };
    [w(1, 2), w(2, 0), w(0, 1)]
}

/// The complex-chart expressions of l1, l2, l3 exactly as displayed, on
/// (z′1, z̄′1, z′2, z̄′2). Used to compare against the transformed real forms.
pub fn complex_momenta_display() -> [DiffOp; 3] {
    let c = Chart::Complex4;
    let zd = |a: usize, b: usize| &DiffOp::coord(c, a) * &DiffOp::deriv(c, b);
    let (z1, zb1, z2, zb2) = (0, 1, 2, 3);
    let l1 = &(&(&zd(z1, z1) - &zd(zb1, zb1)) + &zd(z2, z2)) - &zd(zb2, zb2);
    let inner2 = &(&(&zd(zb1, z2) - &zd(zb2, z1)) - &zd(z2, zb1)) + &zd(z1, zb2);
    let l3 = &(&(&zd(zb1, z2) - &zd(zb2, z1)) - &zd(z1, zb2)) + &zd(z2, zb1);
    [l1, inner2.scale(&-imag_unit()), l3]
}
