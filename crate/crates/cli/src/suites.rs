//! The verification suites behind `qlandau verify`.
//!
//! Every suite is a pure function of the seed (and of ν for the Weyl suite),
//! so two runs with the same inputs give identical records.

use nalgebra::Matrix4;
use num::complex::Complex64;
use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qlandau::algebra::*;
use qlandau::canonicalize::{canonical_report, canonical_rotation, frame3, Branch};
use qlandau::heisenberg::*;
use qlandau::translations::*;
use qlandau::weylops::*;

use crate::config::Suite;
use crate::report::Record;

pub const FLOAT_TOL: f64 = 1e-12;
pub const DRAWS: usize = 1000;
pub const CANONICAL_DRAWS: usize = 10_000;
pub const TRANSFORM_DRAWS: usize = 100;
pub const TRANSLATION_DRAWS: usize = 100;
pub const TRANSLATION_POINTS: usize = 100;

/// Field strengths used by the ladder checks.
pub fn ladder_mus() -> Vec<Rational> {
    vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(7, 2)]
}

fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

/// Independent streams per suite so that adding draws to one leaves the others alone.
fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn run(suite: Suite, seed: u64, nu: Option<[f64; 3]>) -> Vec<Record> {
    match suite {
        Suite::Algebra => algebra(seed),
        Suite::Heisenberg => heisenberg(seed),
        Suite::Weyl => weyl(seed, nu),
        Suite::Canonical => canonical(seed),
        Suite::Translations => translations(seed),
        Suite::All => {
            let mut out = algebra(seed);
            out.extend(heisenberg(seed));
            out.extend(weyl(seed, nu));
            out.extend(canonical(seed));
            out.extend(translations(seed));
            out
        }
    }
}

// ---------------------------------------------------------------- algebra

fn quat(r: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        r.random_range(-3.0..3.0),
        r.random_range(-3.0..3.0),
        r.random_range(-3.0..3.0),
        r.random_range(-3.0..3.0),
    )
}

fn vec4(r: &mut ChaCha8Rng, s: f64) -> Vec4 {
    Vec4(std::array::from_fn(|_| r.random_range(-s..s)))
}

fn vec3(r: &mut ChaCha8Rng, s: f64) -> Vec3 {
    Vec3(std::array::from_fn(|_| r.random_range(-s..s)))
}

fn qgap(p: &Quaternion, q: &Quaternion) -> f64 {
    (*p - *q).norm()
}

fn mat_of(q: &Quaternion) -> nalgebra::Vector4<f64> {
    nalgebra::Vector4::new(q.w, q.x, q.y, q.z)
}

pub fn algebra(seed: u64) -> Vec<Record> {
    let mut r = rng(seed, 1);
    let (one, i, j, k) = (Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k());
    let m1 = one.scale(-1.0);
    let table = [
        (quat_mul(&i, &i), m1),
        (quat_mul(&j, &j), m1),
        (quat_mul(&k, &k), m1),
        (quat_mul(&i, &j), k),
        (quat_mul(&j, &i), k.scale(-1.0)),
        (quat_mul(&j, &k), i),
        (quat_mul(&k, &j), i.scale(-1.0)),
        (quat_mul(&k, &i), j),
        (quat_mul(&i, &k), j.scale(-1.0)),
        (quat_mul(&quat_mul(&i, &j), &k), m1),
    ];
    let basis = table.iter().map(|(a, b)| qgap(a, b)).fold(0.0, f64::max);

    let (mut assoc, mut conj, mut units): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let (mut square, mut skew, mut anti, mut dual, mut orth): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut hodge = 0usize;
    for _ in 0..DRAWS {
        let (p, q, s) = (quat(&mut r), quat(&mut r), quat(&mut r));
        let scale = p.norm().max(1.0) * q.norm().max(1.0) * s.norm().max(1.0);
        assoc = assoc.max(qgap(&quat_mul(&quat_mul(&p, &q), &s), &quat_mul(&p, &quat_mul(&q, &s))) / scale);
        let n = Quaternion::new(p.norm_sqr(), 0.0, 0.0, 0.0);
        conj = conj.max(qgap(&quat_mul(&p.conj(), &p), &n) / p.norm_sqr().max(1.0));
        // the unit matrices act as left multiplication
        for (u, m) in [(i, QuatUnit::I), (j, QuatUnit::J), (k, QuatUnit::K)] {
            let lhs = unit_matrix(m) * mat_of(&p);
            units = units.max((lhs - mat_of(&quat_mul(&u, &p))).amax() / p.norm().max(1.0));
        }

        let nu = vec3(&mut r, 10.0);
        let om = field_matrix(&nu);
        square = square.max(om.square_residual(&nu) / nu.norm_sqr().max(1.0));
        skew = skew.max(om.antisymmetry_residual());
        let (x, y) = (vec4(&mut r, 3.0), vec4(&mut r, 3.0));
        let sxy = x.norm().max(1.0) * y.norm().max(1.0);
        anti = anti.max((omega_form(&x, &y) + omega_form(&y, &x)).norm() / sxy);
        dual = dual.max((omega_form(&x, &y) - omega_quaternionic(&x, &y)).norm() / sxy);
        orth = orth.max(vector_potential(&nu, &x).dot(&x).abs() / (nu.norm().max(1.0) * x.dot(&x).max(1.0)));

        let b = Bivector(std::array::from_fn(|_| r.random_range(-5.0..5.0)));
        hodge += usize::from(b.hodge_star().hodge_star() != b);
    }
    let id = Matrix4::<f64>::identity();
    let (mi, mj, mk) = (
        unit_matrix(QuatUnit::I),
        unit_matrix(QuatUnit::J),
        unit_matrix(QuatUnit::K),
    );
    for m in [mi, mj, mk] {
        units = units.max((m * m + id).amax());
    }
    units = units
        .max((mi * mj - mk).amax())
        .max((mj * mk - mi).amax())
        .max((mk * mi - mj).amax());
    for n in 0..6 {
        let mut c = [0.0; 6];
        c[n] = 1.0;
        let b = Bivector(c);
        hodge += usize::from(b.hodge_star().hodge_star() != b || b.hodge_star().0[(n + 3) % 6] != 1.0);
    }
    // ⋆F = F for Ω_{E,B} exactly when E = B
    let mut duality = 0usize;
    for _ in 0..100 {
        let b = vec3(&mut r, 3.0);
        let e = vec3(&mut r, 3.0);
        duality += usize::from(!Bivector::from_matrix(&field_matrix_eb(&b, &b)).is_self_dual());
        duality += usize::from(Bivector::from_matrix(&field_matrix_eb(&e, &b)).is_self_dual());
    }
    vec![
        Record::check("algebra.quaternion-basis-table", basis, FLOAT_TOL),
        Record::check("algebra.quaternion-associativity", assoc, FLOAT_TOL),
        Record::check("algebra.quaternion-conjugate-norm", conj, FLOAT_TOL),
        Record::check("algebra.unit-matrices", units, FLOAT_TOL),
        Record::check("algebra.field-matrix-square", square, FLOAT_TOL),
        Record::check("algebra.field-matrix-antisymmetry", skew, FLOAT_TOL),
        Record::check("algebra.omega-antisymmetry", anti, FLOAT_TOL),
        Record::check("algebra.omega-dual-agreement", dual, FLOAT_TOL),
        Record::check("algebra.vector-potential-orthogonality", orth, FLOAT_TOL),
        Record::count("algebra.hodge-involution", hodge),
        Record::count("algebra.hodge-self-duality", duality),
    ]
}

// ---------------------------------------------------------------- heisenberg

fn qrand(r: &mut ChaCha8Rng) -> Rational {
    rat(r.random_range(-60..60), r.random_range(1..10))
}

fn heis(r: &mut ChaCha8Rng) -> HeisElement<Rational> {
    HeisElement::new(
        Vec3(std::array::from_fn(|_| qrand(r))),
        Vec4(std::array::from_fn(|_| qrand(r))),
    )
}

#[derive(Serialize)]
struct BracketLine {
    bracket: String,
    value: String,
}

fn describe(coeffs: &[f64; 7]) -> String {
    let terms: Vec<String> = Generator::ALL
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| **c != 0.0)
        .map(|(g, c)| format!("{c} {}", g.name()))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn heisenberg(seed: u64) -> Vec<Record> {
    let mut r = rng(seed, 2);
    let (mut hom, mut assoc, mut inv, mut witness) = (0usize, 0usize, 0usize, 0usize);
    let id8 = HeisMatrix::<Rational>::identity();
    let two = Rational::from_integer(2.into());
    for _ in 0..DRAWS {
        let (g, h, c) = (heis(&mut r), heis(&mut r), heis(&mut r));
        let gh = heis_mul(&g, &h);
        hom += usize::from(heis_matrix(&g) * heis_matrix(&h) != heis_matrix(&gh));
        assoc += usize::from(heis_mul(&gh, &c) != heis_mul(&g, &heis_mul(&h, &c)));
        inv += usize::from(heis_matrix(&g) * heis_matrix(&g.inverse()) != id8);
        let hg = heis_mul(&h, &g);
        witness += usize::from(gh.t.clone() - hg.t != omega_form(&g.x, &h.x).scale(two.clone()));
    }
    let rep = verify_structure();
    let table: Vec<BracketLine> = rep
        .brackets
        .iter()
        .map(|b| BracketLine {
            bracket: format!("[{}, {}]", b.left.name(), b.right.name()),
            value: describe(&b.coefficients),
        })
        .collect();
    // symbolic vector fields against the matrix algebra
    let sym = symbolic_bracket_table();
    let mat = bracket_table::<Rational>();
    let mut mismatch = usize::from(sym.len() != mat.len());
    for ((ga, gb, s), (ha, hb, m)) in sym.iter().zip(&mat) {
        let same = match (s, m) {
            (Some(s), Some(m)) => (ga, gb) == (ha, hb) && s.iter().zip(&m.0).all(|(c, q)| c.im.is_zero() && c.re == *q),
            _ => false,
        };
        mismatch += usize::from(!same);
    }
    vec![
        Record::count("heisenberg.zeta-homomorphism", hom),
        Record::count("heisenberg.associativity", assoc),
        Record::count("heisenberg.inverse", inv),
        Record::count("heisenberg.noncommutativity-witness", witness),
        Record::count(
            "heisenberg.bracket-table",
            rep.bracket_violations + rep.closure_violations,
        )
        .with_detail(table),
        Record::count("heisenberg.nilpotency", rep.nilpotency_violations),
        Record::count("heisenberg.center", rep.center_violations),
        Record::count("heisenberg.symbolic-matrix-agreement", mismatch),
    ]
}

// ---------------------------------------------------------------- weyl

fn rational_nu(r: &mut ChaCha8Rng) -> Vec3<Rational> {
    Vec3(std::array::from_fn(|_| qrand(r)))
}

/// −F(Δ_sub) = H_ν, exactly. Returns the number of coefficient mismatches.
pub fn transform_mismatches(nu: &Vec3<Rational>, sub: &DiffOp) -> usize {
    match partial_fourier(sub, nu) {
        Ok(f) => {
            let diff = &(-&f) - &build_landau(nu);
            diff.terms().count()
        }
        Err(_) => usize::MAX,
    }
}

/// The transform identity on `count` random rational fields.
pub fn transform_random(seed: u64, count: usize) -> Record {
    let mut r = rng(seed, 3);
    let sub = sub_laplacian();
    let bad: usize = (0..count)
        .map(|_| usize::from(transform_mismatches(&rational_nu(&mut r), &sub) != 0))
        .sum();
    Record::count("weyl.transform-identity-random", bad).with_detail(serde_json::json!({ "fields": count }))
}

fn landau_angular_mismatches(n: &Vec3<Rational>) -> usize {
    let r4 = Chart::Real4;
    let l = build_angular_momentum();
    let nn = n.0.iter().fold(Rational::zero(), |acc, v| acc + v * v);
    let r2 = (0..4).fold(DiffOp::zero(r4), |acc, k| &acc + &DiffOp::coord(r4, k).pow(2));
    let mut rhs = &(-&laplacian(r4)) + &r2.scale(&coeff::real(nn));
    for (k, lk) in l.iter().enumerate() {
        rhs = &rhs + &lk.scale(&coeff::real(&n.0[k] * rat(2, 1)));
    }
    (&build_landau(n) - &rhs).terms().count()
}

fn complex_landau_mismatches(n: &Vec3<Rational>) -> usize {
    let Ok(hz) = chart_transform(&build_landau(n), Direction::RealToComplex) else {
        return usize::MAX;
    };
    let c = Chart::Complex4;
    let disp = complex_momenta_display();
    let nn = n.0.iter().fold(Rational::zero(), |acc, v| acc + v * v);
    let dd = |a: usize, b: usize| &DiffOp::deriv(c, a) * &DiffOp::deriv(c, b);
    let zz = |a: usize, b: usize| &DiffOp::coord(c, a) * &DiffOp::coord(c, b);
    let mut want = (&dd(0, 1) + &dd(2, 3)).scale(&coeff::int(-4));
    for (k, lk) in disp.iter().enumerate() {
        want = &want + &lk.scale(&coeff::real(&n.0[k] * rat(2, 1)));
    }
    want = &want + &(&zz(0, 1) + &zz(2, 3)).scale(&coeff::real(nn));
    (&hz - &want).terms().count()
}

#[derive(Serialize)]
struct ChiralityLine {
    mu: String,
    sign: i8,
    ladder_sign: Option<i8>,
    conjugate_sign: Option<i8>,
}

pub fn weyl(seed: u64, nu: Option<[f64; 3]>) -> Vec<Record> {
    let mut r = rng(seed, 4);
    let mut out = Vec::new();

    let [lx, ly, lz] = build_angular_momentum_3d();
    let i = coeff::imag_unit();
    let so3 = [(&lx, &ly, &lz), (&ly, &lz, &lx), (&lz, &lx, &ly)]
        .iter()
        .filter(|(a, b, c)| op_commutator(a, b).map(|x| x != c.scale(&i)).unwrap_or(true))
        .count();
    out.push(Record::count("weyl.angular-momentum-3d", so3));

    let fields = build_heisenberg_fields();
    let mut field_bad = 0;
    for a in 0..7 {
        for b in 0..7 {
            let want = expected_bracket::<Rational>(Generator::ALL[a], Generator::ALL[b]);
            let got = op_commutator(&fields[a], &fields[b])
                .ok()
                .and_then(|op| decompose_in_fields(&op));
            let ok = got.is_some_and(|g| g.iter().zip(&want.0).all(|(c, q)| c.im.is_zero() && c.re == *q));
            field_bad += usize::from(!ok);
        }
    }
    out.push(Record::count("weyl.field-brackets", field_bad));

    let sub = sub_laplacian();
    let given = match nu {
        Some(v) => exact_nu(&Vec3(v)).ok(),
        None => None,
    };
    let sample = given.clone().unwrap_or_else(|| Vec3([rat(1, 1), rat(2, 1), rat(2, 1)]));
    let label: Vec<String> = sample.0.iter().map(|v| v.to_string()).collect();
    let mismatches = transform_mismatches(&sample, &sub);
    out.push(
        Record::check("weyl.transform-identity", mismatches as f64, 0.0)
            .with_detail(serde_json::json!({ "nu": label, "terms": build_landau(&sample).terms().count() })),
    );
    out.push(transform_random(seed, TRANSFORM_DRAWS));

    let mut angular = landau_angular_mismatches(&sample);
    let mut covariant = usize::from(build_landau(&sample) != build_landau_covariant(&sample));
    let mut complex = complex_landau_mismatches(&sample);
    let mut roundtrip = 0usize;
    for _ in 0..5 {
        let n = rational_nu(&mut r);
        angular += landau_angular_mismatches(&n);
        covariant += usize::from(build_landau(&n) != build_landau_covariant(&n));
        complex += complex_landau_mismatches(&n);
        let h = build_landau(&n);
        let back =
            chart_transform(&h, Direction::RealToComplex).and_then(|z| chart_transform(&z, Direction::ComplexToReal));
        roundtrip += usize::from(back.as_ref() != Ok(&h));
    }
    out.push(Record::count("weyl.landau-angular-form", angular));
    out.push(Record::count("weyl.landau-covariant-form", covariant));
    out.push(Record::count("weyl.complex-landau-form", complex));
    out.push(Record::count("weyl.chart-roundtrip", roundtrip));

    let l = build_angular_momentum();
    let disp = complex_momenta_display();
    let lbad = l
        .iter()
        .zip(&disp)
        .filter(|(lk, dk)| chart_transform(lk, Direction::RealToComplex).as_ref() != Ok(*dk))
        .count();
    out.push(Record::count("weyl.complex-angular-momentum", lbad));

    out.extend(ladder_records());
    out
}

/// Ladder commutators, the chirality sign and the oscillator form.
pub fn ladder_records() -> Vec<Record> {
    let mut comm = 0usize;
    let mut osc = 0usize;
    let mut lines = Vec::new();
    let mut signs = Vec::new();
    for mu in ladder_mus() {
        match resolve_chirality(&mu) {
            Ok(rep) => {
                comm += usize::from(!rep.commutators_hold);
                signs.push(rep.sign);
                let canon = build_canonical(&mu).and_then(|h| chart_transform(&h, Direction::RealToComplex));
                let ladder = build_oriented_ladder(&mu, rep.sign);
                let exact = match (canon, ladder) {
                    (Ok(h), Ok(lad)) => (&h - &lad.oscillator_form()).is_zero(),
                    _ => false,
                };
                osc += usize::from(!exact);
                lines.push(ChiralityLine {
                    mu: rep.mu,
                    sign: rep.sign,
                    ladder_sign: rep.ladder_sign,
                    conjugate_sign: rep.conjugate_sign,
                });
            }
            Err(_) => {
                comm += 1;
                osc += 1;
            }
        }
    }
    let consistent = signs.len() == ladder_mus().len() && signs.windows(2).all(|w| w[0] == w[1]);
    vec![
        Record::count("weyl.ladder-commutators", comm),
        Record::count("weyl.chirality-sign", usize::from(!consistent)).with_detail(lines),
        Record::count("weyl.oscillator-form", osc),
    ]
}

// ---------------------------------------------------------------- canonical

/// Seeded fields over four magnitudes, with a tenth of them pushed next to the first axis.
pub fn canonical_fields(seed: u64, count: usize) -> Vec<Vec3> {
    let mut r = rng(seed, 5);
    let mut out = Vec::with_capacity(count + 6);
    for n in 0..count {
        let dir = vec3(&mut r, 1.0);
        let scale = [1e-8, 1.0, 1e8, r.random_range(0.1..10.0)][n % 4];
        let mut nu = dir.scale(scale / dir.norm().max(1e-300));
        if n % 10 == 0 {
            let eps = 10f64.powi(-r.random_range(8..14));
            nu = Vec3::new(
                nu.0[0],
                eps * nu.0[0] * r.random_range(-1.0..1.0),
                eps * nu.0[0] * r.random_range(-1.0..1.0),
            );
        }
        out.push(nu);
    }
    out.extend([
        Vec3::zero(),
        Vec3::new(5.0, 0.0, 0.0),
        Vec3::new(-5.0, 0.0, 0.0),
        Vec3::new(1.0, 1e-13, 0.0),
        Vec3::new(-1.0, 0.0, 1e-13),
        Vec3::new(1.0, 2.0, 2.0),
    ]);
    out
}

#[derive(Serialize, Default)]
struct BranchCounts {
    degenerate_zero: usize,
    identity: usize,
    flip: usize,
    generic: usize,
}

pub fn canonical(seed: u64) -> Vec<Record> {
    let (mut orth, mut det, mut conj, mut cp, mut frame): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut counts = BranchCounts::default();
    for nu in canonical_fields(seed, CANONICAL_DRAWS) {
        let rot = canonical_rotation(&nu);
        orth = orth.max(rot.orthogonality_residual());
        det = det.max((rot.determinant() - 1.0).abs());
        conj = conj.max(rot.conjugation_residual(&nu) / nu.norm().max(1.0));
        cp = cp.max(canonical_report(&nu).char_poly_residual);
        match rot.branch {
            Branch::DegenerateZero => counts.degenerate_zero += 1,
            Branch::Identity => counts.identity += 1,
            Branch::Flip => counts.flip += 1,
            Branch::Generic => counts.generic += 1,
        }
        if let Ok(f) = frame3(&nu) {
            frame = frame.max(f.gram_residual()).max((f.determinant() - 1.0).abs());
        }
    }
    let missing = [counts.degenerate_zero, counts.identity, counts.flip, counts.generic]
        .iter()
        .filter(|c| **c == 0)
        .count();
    let first_axis = canonical_rotation(&Vec3::new(5.0, 0.0, 0.0));
    let zero = canonical_rotation(&Vec3::zero());
    let fixed = usize::from(
        first_axis.branch != Branch::Identity || first_axis.conjugation_residual(&Vec3::new(5.0, 0.0, 0.0)) != 0.0,
    ) + usize::from(zero.branch != Branch::DegenerateZero || zero.matrix != Matrix4::identity());
    vec![
        Record::check("canonical.orthogonality", orth, FLOAT_TOL),
        Record::check("canonical.determinant", det, FLOAT_TOL),
        Record::check("canonical.conjugation", conj, 1e-10),
        Record::check("canonical.char-poly", cp, 1e-10),
        Record::check("canonical.frame3", frame, FLOAT_TOL),
        Record::count("canonical.branch-coverage", missing).with_detail(counts),
        Record::count("canonical.fixed-examples", fixed),
    ]
}

// ---------------------------------------------------------------- translations

pub fn translations(seed: u64) -> Vec<Record> {
    let cases = random_cases(seed, TRANSLATION_DRAWS);
    let (mut closed, mut comp, mut comm, mut anti, mut cov, mut inter, mut deriv): (f64, f64, f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for (n, c) in cases.iter().enumerate() {
        let pts = sample_points(&c.f, TRANSLATION_POINTS, seed.wrapping_add(n as u64));
        let t = MagneticTranslation::new(c.a, c.nu);
        closed = closed.max(translation_check(&t, &c.f, &pts));
        comp = comp.max(composition_check(&c.a, &c.b, &c.nu, &c.f, &pts));
        comm = comm.max(commutator_check(&c.a, &c.b, &c.nu, &c.f, &pts));
        anti = anti.max((commutator_phase(&c.a, &c.b, &c.nu) * commutator_phase(&c.b, &c.a, &c.nu) - 1.0).norm());
        cov = cov.max(covariance_check(&c.nu, &c.a, &c.f, &pts));
        inter = inter.max(intertwine_check(&c.nu, &c.a, &c.f, &pts));
        if n < 20 {
            deriv = deriv.max(derivative_self_test(&c.f, &pts[..20]));
        }
    }
    // ν = e′3, a = e1, b = e2: the pairing is the (2, 1) entry of Ω
    let nu = Vec3::new(0.0, 0.0, 1.0);
    let entry = field_matrix(&nu).matrix()[(2, 1)];
    let axis =
        (commutator_phase(&Vec4::basis(1), &Vec4::basis(2), &nu) - Complex64::new(0.0, 2.0 * entry).exp()).norm();
    vec![
        Record::check("translations.closed-form", closed, 1e-14),
        Record::check("translations.composition", comp, FLOAT_TOL),
        Record::check("translations.commutator-phase", comm, FLOAT_TOL),
        Record::check("translations.phase-antisymmetry", anti, FLOAT_TOL),
        Record::check("translations.axis-phase", axis, FLOAT_TOL).with_detail(serde_json::json!({ "pairing": entry })),
        Record::check("translations.covariance", cov, 1e-10),
        Record::check("translations.intertwine", inter, 1e-10),
        Record::check("translations.derivative-self-test", deriv, 1e-8),
    ]
}
