use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, One};

use super::coeff::{self, Coeff};
use super::WeylError;

/// An ordered set of variables on which operators live. Operators on
/// different charts never mix; [`super::ChartMap`] is the only bridge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    /// (t1, t2, t3, x0, x1, x2, x3) on the Heisenberg group.
    Heisenberg,
    /// (x1, x2, x3) on ℝ³.
    Real3,
    /// (x0, x1, x2, x3) on ℝ⁴.
    Real4,
    /// (y0, y1, y2, y3): ℝ⁴ after the canonical rotation.
    Canonical4,
    /// (z′1, z̄′1, z′2, z̄′2) with z′1 = x0 + i x1, z′2 = x2 + i x3.
    Complex4,
    /// (z1, z̄1, z2, z̄2) with z1 = y0 + i y1, z2 = y2 + i y3.
    CanonicalComplex4,
}

impl Chart {
    pub fn variables(self) -> &'static [&'static str] {
        match self {
            Chart::Heisenberg => &["t1", "t2", "t3", "x0", "x1", "x2", "x3"],
            Chart::Real3 => &["x1", "x2", "x3"],
            Chart::Real4 => &["x0", "x1", "x2", "x3"],
            Chart::Canonical4 => &["y0", "y1", "y2", "y3"],
            Chart::Complex4 => &["z'1", "zb'1", "z'2", "zb'2"],
            Chart::CanonicalComplex4 => &["z1", "zb1", "z2", "zb2"],
        }
    }

    #[allow(clippy::len_without_is_empty)] // a chart always has variables
    pub fn len(self) -> usize {
        self.variables().len()
    }

    pub fn index_of(self, name: &str) -> Option<usize> {
        self.variables().iter().position(|v| *v == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::Heisenberg => "heisenberg",
            Chart::Real3 => "real3",
            Chart::Real4 => "real4",
            Chart::Canonical4 => "canonical4",
            Chart::Complex4 => "complex4",
            Chart::CanonicalComplex4 => "canonical-complex4",
        }
    }
}

/// x^coords ∂^derivs with all coordinate factors to the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub coords: Vec<u32>,
    pub derivs: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self {
            coords: vec![0; n],
            derivs: vec![0; n],
        }
    }

    pub fn order(&self) -> u32 {
        self.derivs.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.coords.iter().sum()
    }

    fn render(&self, chart: Chart) -> String {
        let vars = chart.variables();
        let mut parts = Vec::new();
        for (v, &e) in vars.iter().zip(&self.coords) {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        for (v, &e) in vars.iter().zip(&self.derivs) {
            match e {
                0 => {}
                1 => parts.push(format!("d[{v}]")),
                _ => parts.push(format!("d[{v}]^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A normal-ordered element of the Weyl algebra over a [`Chart`].
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    chart: Chart,
    terms: BTreeMap<Monomial, Coeff>,
}

impl DiffOp {
    pub fn zero(chart: Chart) -> Self {
        Self {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(chart: Chart, c: Coeff) -> Self {
        let mut op = Self::zero(chart);
        op.add_term(Monomial::one(chart.len()), c);
        op
    }

    pub fn identity(chart: Chart) -> Self {
        Self::scalar(chart, coeff::int(1))
    }

    /// Multiplication by the `var`-th coordinate.
    pub fn coord(chart: Chart, var: usize) -> Self {
        let mut m = Monomial::one(chart.len());
        m.coords[var] = 1;
        Self::from_terms(chart, [(m, coeff::int(1))])
    }

    /// ∂ with respect to the `var`-th coordinate.
    pub fn deriv(chart: Chart, var: usize) -> Self {
        let mut m = Monomial::one(chart.len());
        m.derivs[var] = 1;
        Self::from_terms(chart, [(m, coeff::int(1))])
    }

    /// Coordinate by name; panics on an unknown name (a programming error).
    pub fn var(chart: Chart, name: &str) -> Self {
        let idx = chart
            .index_of(name)
            .unwrap_or_else(|| panic!("no variable {name} in chart {}", chart.name()));
        Self::coord(chart, idx)
    }

    /// ∂ by variable name.
    pub fn d(chart: Chart, name: &str) -> Self {
        let idx = chart
            .index_of(name)
            .unwrap_or_else(|| panic!("no variable {name} in chart {}", chart.name()));
        Self::deriv(chart, idx)
    }

    pub fn from_terms(chart: Chart, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut op = Self::zero(chart);
        for (m, c) in terms {
            assert_eq!(m.coords.len(), chart.len(), "monomial arity");
            assert_eq!(m.derivs.len(), chart.len(), "monomial arity");
            op.add_term(m, c);
        }
        op
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if coeff::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if coeff::is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| coeff::int(0))
    }

    /// Coefficient of the monomial described by `(name, coord exp, deriv exp)` triples.
    pub fn coefficient_of(&self, factors: &[(&str, u32, u32)]) -> Coeff {
        let mut m = Monomial::one(self.chart.len());
        for &(name, c, d) in factors {
            let i = self.chart.index_of(name).expect("variable in chart");
            m.coords[i] += c;
            m.derivs[i] += d;
        }
        self.coefficient(&m)
    }

    /// The constant term, if the operator is a scalar multiple of the identity.
    pub fn as_scalar(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(coeff::int(0)),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.order() == 0 && m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, s: &Coeff) -> Self {
        let mut op = Self::zero(self.chart);
        for (m, c) in &self.terms {
            op.add_term(m.clone(), c * s);
        }
        op
    }

    pub fn map_coefficients(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        Self::from_terms(self.chart, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self::from_terms(
            self.chart,
            self.terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Reinterprets the operator on a chart with the same number of variables
    /// (for instance y ↦ x after a change of basis has been accounted for).
    pub fn relabel(&self, target: Chart) -> Result<Self, WeylError> {
        if target.len() != self.chart.len() {
            return Err(WeylError::ChartMismatch {
                left: self.chart,
                right: target,
            });
        }
        Ok(Self {
            chart: target,
            terms: self.terms.clone(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, WeylError> {
        self.same_chart(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.try_add(&-other)
    }

    fn same_chart(&self, other: &Self) -> Result<(), WeylError> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(WeylError::ChartMismatch {
                left: self.chart,
                right: other.chart,
            })
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.chart);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Coefficients rounded to double precision, for numeric evaluation.
    pub fn to_f64_terms(&self) -> Vec<(Monomial, Complex64)> {
        self.terms.iter().map(|(m, c)| (m.clone(), coeff::to_c64(c))).collect()
    }
}

/// Falling factorial n (n−1) ⋯ (n−k+1).
fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j))
}

fn binomial(n: u32, k: u32) -> BigInt {
    falling(n, k) / falling(k, k)
}

/// ∂^b x^c = Σ_k C(b,k) c!/(c−k)! x^(c−k) ∂^(b−k), one variable at a time.
fn reorder_terms(b: &[u32], c: &[u32]) -> Vec<(Vec<u32>, BigInt)> {
    let mut acc: Vec<(Vec<u32>, BigInt)> = vec![(Vec::with_capacity(b.len()), BigInt::one())];
    for (&bi, &ci) in b.iter().zip(c) {
        let top = bi.min(ci);
        let mut next = Vec::with_capacity(acc.len() * (top as usize + 1));
        for (ks, w) in &acc {
            for k in 0..=top {
                let mut ks2 = ks.clone();
                ks2.push(k);
                next.push((ks2, w * binomial(bi, k) * falling(ci, k)));
            }
        }
        acc = next;
    }
    acc
}

/// P ∘ Q in normal order.
pub fn op_compose(p: &DiffOp, q: &DiffOp) -> Result<DiffOp, WeylError> {
    p.same_chart(q)?;
    let n = p.chart.len();
    let mut out = DiffOp::zero(p.chart);
    for (m1, c1) in &p.terms {
        for (m2, c2) in &q.terms {
            let c12 = c1 * c2;
            for (k, w) in reorder_terms(&m1.derivs, &m2.coords) {
                let m = Monomial {
                    coords: (0..n).map(|i| m1.coords[i] + m2.coords[i] - k[i]).collect(),
                    derivs: (0..n).map(|i| m1.derivs[i] - k[i] + m2.derivs[i]).collect(),
                };
                out.add_term(m, &c12 * coeff::from_bigint(w));
            }
        }
    }
    Ok(out)
}

/// [P, Q] = P∘Q − Q∘P.
pub fn op_commutator(p: &DiffOp, q: &DiffOp) -> Result<DiffOp, WeylError> {
    op_compose(p, q)?.try_sub(&op_compose(q, p)?)
}

impl Add for &DiffOp {
    type Output = DiffOp;
    /// Panics if the charts differ; use [`DiffOp::try_add`] for a fallible sum.
    fn add(self, rhs: &DiffOp) -> DiffOp {
        self.try_add(rhs).expect("chart mismatch in DiffOp addition")
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self.try_sub(rhs).expect("chart mismatch in DiffOp subtraction")
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    /// Composition; panics if the charts differ (see [`op_compose`]).
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        op_compose(self, rhs).expect("chart mismatch in DiffOp composition")
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.map_coefficients(|c| -c.clone())
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        &self + &rhs
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        &self - &rhs
    }
}

impl Mul for DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: DiffOp) -> DiffOp {
        &self * &rhs
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

impl fmt::Display for DiffOp {
    /// One `coefficient<TAB>monomial` line per term, in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# chart {} ({})",
            self.chart.name(),
            self.chart.variables().join(", ")
        )?;
        for (m, c) in &self.terms {
            writeln!(f, "{}\t{}", coeff::format(c), m.render(self.chart))?;
        }
        Ok(())
    }
}

/// A polynomial function on a chart, acted on by [`DiffOp`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl Polynomial {
    pub fn zero(chart: Chart) -> Self {
        Self {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(chart: Chart, terms: impl IntoIterator<Item = (Vec<u32>, Coeff)>) -> Self {
        let mut p = Self::zero(chart);
        for (e, c) in terms {
            assert_eq!(e.len(), chart.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Coeff) {
        if coeff::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| coeff::int(0));
        *entry = &*entry + c;
        if coeff::is_zero(entry) {
            self.terms.retain(|_, v| !coeff::is_zero(v));
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluation at a real point in double precision.
    pub fn eval_f64(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product();
                coeff::to_c64(c) * mono
            })
            .sum()
    }
}

/// The action of an operator on the polynomial ring.
pub fn op_apply(op: &DiffOp, p: &Polynomial) -> Result<Polynomial, WeylError> {
    if op.chart != p.chart {
        return Err(WeylError::ChartMismatch {
            left: op.chart,
            right: p.chart,
        });
    }
    let mut out = Polynomial::zero(p.chart);
    for (m, c) in &op.terms {
        'terms: for (e, pc) in &p.terms {
            let mut w = BigInt::one();
            let mut exps = Vec::with_capacity(e.len());
            for i in 0..e.len() {
                if m.derivs[i] > e[i] {
                    continue 'terms;
                }
                w *= falling(e[i], m.derivs[i]);
                exps.push(e[i] - m.derivs[i] + m.coords[i]);
            }
            out.add_term(exps, c * pc * coeff::from_bigint(w));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylops::coeff::{imag_unit, int};

    const R4: Chart = Chart::Real4;

    fn x(i: usize) -> DiffOp {
        DiffOp::coord(R4, i)
    }

    fn d(i: usize) -> DiffOp {
        DiffOp::deriv(R4, i)
    }

    #[test]
    fn defining_relation() {
        let lhs = &d(0) * &x(0);
        assert_eq!(lhs, &(&x(0) * &d(0)) + &DiffOp::identity(R4));
        let br = op_commutator(&d(0), &x(0)).unwrap();
        assert_eq!(br, DiffOp::identity(R4));
        assert!(op_commutator(&d(0), &x(1)).unwrap().is_zero());
    }

    #[test]
    fn identity_is_neutral() {
        let p = &(&x(0) * &d(1)) + &(&x(2) * &x(2)).scale(&imag_unit());
        assert_eq!(&p * &DiffOp::identity(R4), p);
        assert_eq!(&DiffOp::identity(R4) * &p, p);
        assert!(op_commutator(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn rotation_generator_bracket() {
        // (x0∂1)(x1∂0) − (x1∂0)(x0∂1) = x0∂0 − x1∂1, expanded by hand
        let a = &x(0) * &d(1);
        let b = &x(1) * &d(0);
        let lhs = op_commutator(&a, &b).unwrap();
        assert_eq!(lhs, &(&x(0) * &d(0)) - &(&x(1) * &d(1)));
    }

    #[test]
    fn second_order_reordering() {
        // ∂² x² = x²∂² + 4x∂ + 2
        let lhs = &d(0).pow(2) * &x(0).pow(2);
        let rhs = &(&(&x(0).pow(2) * &d(0).pow(2)) + &(&x(0) * &d(0)).scale(&int(4))) + &DiffOp::scalar(R4, int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let a = DiffOp::coord(Chart::Real4, 0);
        let b = DiffOp::coord(Chart::Canonical4, 0);
        assert!(matches!(op_compose(&a, &b), Err(WeylError::ChartMismatch { .. })));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn apply_to_polynomial() {
        // (x1 ∂0²)(x0³) = 6 x0 x1
        let op = &x(1) * &d(0).pow(2);
        let p = Polynomial::from_terms(R4, [(vec![3, 0, 0, 0], int(1))]);
        let out = op_apply(&op, &p).unwrap();
        assert_eq!(out, Polynomial::from_terms(R4, [(vec![1, 1, 0, 0], int(6))]));
    }

    #[test]
    fn display_is_sorted_term_list() {
        let op = &(&x(0) * &d(1)) - &DiffOp::scalar(R4, imag_unit());
        let s = op.to_string();
        assert!(s.starts_with("# chart real4"));
        assert!(s.contains("-1i\t1"));
        assert!(s.contains("1\tx0*d[x1]"));
    }
}
