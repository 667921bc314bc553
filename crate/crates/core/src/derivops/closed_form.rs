//! Closed-form pre-derivations of the first and second families together
//! with their constraint systems.
//!
//! Each constraint line is evaluated separately and reported with a label,
//! so that a failing line can be located in the displayed system. Both the
//! operator and the residuals are linear in the free coefficients, which
//! lets [`closed_form_span_f1`] recover the whole solution space from unit
//! coefficient vectors.

use num_traits::Zero;

use super::OperatorSubspace;
use crate::error::{Error, Result};
use crate::exactlin::{frac, rat, EchelonBuilder, MatrixQ, Rational};
use crate::families::{F1Params, F2Params};

/// Smallest dimension for which the closed forms are used.
pub const MIN_CLOSED_FORM_DIM: usize = 6;

/// Free coefficients `a_1…a_n`, `b_{n−1}`, `b_n`, `c_2…c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreDerivCoeffsF1 {
    pub a: Vec<Rational>,
    pub b_n_minus_1: Rational,
    pub b_n: Rational,
    /// `c_2 … c_n`, so `c[0]` is `c_2`.
    pub c: Vec<Rational>,
}

/// Free coefficients `a_1…a_n`, `b_2`, `b_{n−1}`, `b_n`, `c_2…c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreDerivCoeffsF2 {
    pub a: Vec<Rational>,
    pub b_2: Rational,
    pub b_n_minus_1: Rational,
    pub b_n: Rational,
    pub c: Vec<Rational>,
}

impl PreDerivCoeffsF1 {
    pub fn zero(n: usize) -> Self {
        PreDerivCoeffsF1 {
            a: vec![Rational::zero(); n],
            b_n_minus_1: Rational::zero(),
            b_n: Rational::zero(),
            c: vec![Rational::zero(); n - 1],
        }
    }

    /// Number of free coefficients, `2n + 1`.
    pub fn count(n: usize) -> usize {
        2 * n + 1
    }

    /// Unpacks the order `a_1…a_n, b_{n−1}, b_n, c_2…c_n`.
    pub fn from_flat(n: usize, v: &[Rational]) -> Self {
        assert_eq!(v.len(), Self::count(n));
        PreDerivCoeffsF1 {
            a: v[..n].to_vec(),
            b_n_minus_1: v[n].clone(),
            b_n: v[n + 1].clone(),
            c: v[n + 2..].to_vec(),
        }
    }

    fn a(&self, t: usize) -> Rational {
        idx(&self.a, t, 1)
    }

    fn c(&self, t: usize) -> Rational {
        idx(&self.c, t, 2)
    }
}

impl PreDerivCoeffsF2 {
    pub fn zero(n: usize) -> Self {
        PreDerivCoeffsF2 {
            a: vec![Rational::zero(); n],
            b_2: Rational::zero(),
            b_n_minus_1: Rational::zero(),
            b_n: Rational::zero(),
            c: vec![Rational::zero(); n - 1],
        }
    }

    /// Number of free coefficients, `2n + 2`.
    pub fn count(n: usize) -> usize {
        2 * n + 2
    }

    /// Unpacks the order `a_1…a_n, b_2, b_{n−1}, b_n, c_2…c_n`.
    pub fn from_flat(n: usize, v: &[Rational]) -> Self {
        assert_eq!(v.len(), Self::count(n));
        PreDerivCoeffsF2 {
            a: v[..n].to_vec(),
            b_2: v[n].clone(),
            b_n_minus_1: v[n + 1].clone(),
            b_n: v[n + 2].clone(),
            c: v[n + 3..].to_vec(),
        }
    }

    fn a(&self, t: usize) -> Rational {
        idx(&self.a, t, 1)
    }

    fn c(&self, t: usize) -> Rational {
        idx(&self.c, t, 2)
    }
}

/// `v[t − first]`, or zero when `t` is out of range.
fn idx(v: &[Rational], t: usize, first: usize) -> Rational {
    if t >= first && t - first < v.len() {
        v[t - first].clone()
    } else {
        Rational::zero()
    }
}

/// One evaluated constraint line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub label: String,
    pub value: Rational,
}

/// A closed-form operator and its constraint residuals; it is a
/// pre-derivation when every residual vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub operator: MatrixQ,
    pub residuals: Vec<Residual>,
}

impl ClosedForm {
    pub fn satisfied(&self) -> bool {
        self.residuals.iter().all(|r| r.value.is_zero())
    }

    pub fn failing(&self) -> impl Iterator<Item = &Residual> {
        self.residuals.iter().filter(|r| !r.value.is_zero())
    }
}

fn r(x: i64) -> Rational {
    rat(x)
}

fn ri(x: usize) -> Rational {
    rat(x as i64)
}

fn check_len(name: &str, got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!(
            "{name} must have {want} entries (got {got})"
        )))
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < MIN_CLOSED_FORM_DIM {
        Err(Error::Domain(format!(
            "closed forms are used only for n >= {MIN_CLOSED_FORM_DIM} (got {n})"
        )))
    } else {
        Ok(())
    }
}

/// Column-wise builder: `set(k, t, v)` puts `v` as the `e_t` coefficient of
/// `P(e_k)` (both 1-based).
struct Columns(MatrixQ);

impl Columns {
    fn new(n: usize) -> Self {
        Columns(MatrixQ::zeros(n, n))
    }

    fn set(&mut self, k: usize, t: usize, v: Rational) {
        self.0[(t - 1, k - 1)] = v;
    }
}

struct Lines(Vec<Residual>);

impl Lines {
    fn push(&mut self, label: impl Into<String>, value: Rational) {
        self.0.push(Residual {
            label: label.into(),
            value,
        });
    }
}

/// Pre-derivation candidate of `F1(α, θ)` built from its closed form, with
/// the residual of every constraint line.
pub fn closed_form_prederivation_f1(p: &F1Params, c: &PreDerivCoeffsF1) -> Result<ClosedForm> {
    p.validate()?;
    let n = p.n;
    check_dim(n)?;
    check_len("a", c.a.len(), n)?;
    check_len("c", c.c.len(), n - 1)?;
    let al = |k: usize| p.alpha(k);
    let (a1, a2, c2, c3) = (c.a(1), c.a(2), c.c(2), c.c(3));

    let mut m = Columns::new(n);
    for t in 1..=n {
        m.set(1, t, c.a(t));
    }
    m.set(2, 2, &a1 + &a2);
    for t in 3..=n - 2 {
        m.set(2, t, c.a(t));
    }
    m.set(2, n - 1, c.b_n_minus_1.clone());
    m.set(2, n, c.b_n.clone());
    for t in 2..=n {
        m.set(3, t, c.c(t));
    }
    for i in 2..=n / 2 {
        let k = 2 * i;
        m.set(k, k, ri(2 * i - 1) * &a1 + &a2);
        for t in k + 1..=n {
            m.set(k, t, c.a(t - k + 2) + ri(2 * i - 2) * &a2 * al(t - k + 3));
        }
    }
    for i in 2..=(n - 1) / 2 {
        let k = 2 * i + 1;
        m.set(k, 2 * i, c2.clone());
        m.set(k, k, ri(2 * i - 2) * &a1 + &c3);
        for t in k + 1..=n {
            m.set(k, t, c.c(t - 2 * i + 2) + ri(2 * i - 2) * &a2 * al(t - 2 * i + 2));
        }
    }

    let mut lines = Lines(Vec::new());
    let parity = if n % 2 == 0 { r(2) } else { r(0) };
    lines.push("(1+(-1)^n)c_2", parity * &c2);
    for t in 4..n {
        lines.push(format!("c_2*alpha_{t}"), &c2 * al(t));
    }
    lines.push("(a_1-a_2)alpha_4", (&a1 - &a2) * al(4));
    lines.push("(3a_1-c_3)alpha_4", (r(3) * &a1 - &c3) * al(4));
    for k in 3..=(n - 1) / 2 {
        let mut s = Rational::zero();
        for t in 3..=k {
            s += (c.a(2 * k - 2 * t + 3) - c.c(2 * k - 2 * t + 4) + &a2 * al(2 * k - 2 * t + 4))
                * al(2 * t - 2);
        }
        lines.push(format!("odd-sum k={k}"), s);
    }
    for k in 3..=(n / 2).saturating_sub(1) {
        let mut s = (r(2) * &a1 + &a2 - &c3) * al(2 * k);
        for t in 3..=k {
            s += (c.a(2 * k - 2 * t + 4) - c.c(2 * k - 2 * t + 5) + &a2 * al(2 * k - 2 * t + 5))
                * al(2 * t - 2);
        }
        lines.push(format!("even-sum k={k}"), s);
    }
    for k in 5..=n - 2 {
        let mut conv = Rational::zero();
        for t in 5..=k {
            conv += al(t - 1) * al(k - t + 4);
        }
        let lhs = (&a2 - ri(k - 3) * &a1) * al(k);
        let rhs = frac(k as i64 - 1, 2) * &a2 * conv;
        lines.push(format!("convolution k={k}"), lhs - rhs);
    }
    if n % 2 == 0 {
        let lhs = (&a2 - ri(n - 4) * &a1) * al(n - 1);
        let mut rhs = Rational::zero();
        for t in 3..=(n - 2) / 2 {
            rhs += &a2 * ri(2 * t - 3) * al(n - 2 * t + 3) * al(2 * t - 1);
        }
        for t in 2..=(n - 2) / 2 {
            rhs += (c.c(n - 2 * t + 2) - c.a(n - 2 * t + 1)
                + ri(2 * t - 3) * &a2 * al(n - 2 * t + 2))
                * al(2 * t);
        }
        lines.push("last line (n even)", lhs - rhs);
    } else {
        let lhs = (r(2) * &a2 - &c3 - (ri(n) - r(6)) * &a1) * al(n - 1);
        let mut rhs = Rational::zero();
        for t in 3..=(n - 1) / 2 {
            rhs += &a2 * ri(2 * t - 3) * al(n - 2 * t + 3) * al(2 * t - 1);
        }
        for t in 2..=(n - 3) / 2 {
            rhs += (c.c(n - 2 * t + 2) - c.a(n - 2 * t + 1)
                + ri(2 * t - 3) * &a2 * al(n - 2 * t + 2))
                * al(2 * t);
        }
        lines.push("last line (n odd)", lhs - rhs);
    }

    Ok(ClosedForm {
        operator: m.0,
        residuals: lines.0,
    })
}

/// Pre-derivation candidate of `F2(β, γ)` built from its closed form, with
/// the residual of every constraint line.
pub fn closed_form_prederivation_f2(p: &F2Params, c: &PreDerivCoeffsF2) -> Result<ClosedForm> {
    p.validate()?;
    let n = p.n;
    check_dim(n)?;
    check_len("a", c.a.len(), n)?;
    check_len("c", c.c.len(), n - 1)?;
    let be = |k: usize| p.beta(k);
    let (a1, a2, c2, c3, b2) = (c.a(1), c.a(2), c.c(2), c.c(3), c.b_2.clone());

    let mut m = Columns::new(n);
    for t in 1..=n {
        m.set(1, t, c.a(t));
    }
    m.set(2, 2, b2.clone());
    m.set(2, n - 1, c.b_n_minus_1.clone());
    m.set(2, n, c.b_n.clone());
    for t in 2..=n {
        m.set(3, t, c.c(t));
    }
    for i in 2..=n / 2 {
        let k = 2 * i;
        m.set(k, k, ri(2 * i - 1) * &a1);
        for t in k + 1..=n {
            m.set(k, t, c.a(t - k + 2) + ri(2 * i - 2) * &a2 * be(t - k + 3));
        }
    }
    for i in 2..=(n - 1) / 2 {
        let k = 2 * i + 1;
        m.set(k, k, ri(2 * i - 2) * &a1 + &c3);
        for t in k + 1..=n {
            m.set(k, t, c.c(t - 2 * i + 2) + ri(2 * i - 2) * &a2 * be(t - 2 * i + 2));
        }
    }

    let mut lines = Lines(Vec::new());
    lines.push("(c_3-2a_1)beta_4", (&c3 - r(2) * &a1) * be(4));
    lines.push("(b_2-2a_1)beta_4", (&b2 - r(2) * &a1) * be(4));
    for t in 4..n {
        lines.push(format!("c_2*beta_{t}"), &c2 * be(t));
    }
    for k in 3..=(n - 1) / 2 {
        let mut s = Rational::zero();
        for t in 3..=k {
            s += (c.a(2 * k - 2 * t + 3) - c.c(2 * k - 2 * t + 4) + &a2 * be(2 * k - 2 * t + 4))
                * be(2 * t - 2);
        }
        lines.push(format!("odd-sum k={k}"), s);
    }
    for k in 3..=(n / 2).saturating_sub(1) {
        let lhs = (&c3 - r(2) * &a1) * be(2 * k);
        let mut rhs = Rational::zero();
        for t in 3..=k {
            rhs += (c.a(2 * k - 2 * t + 4) - c.c(2 * k - 2 * t + 5) + &a2 * be(2 * k - 2 * t + 5))
                * be(2 * t - 2);
        }
        lines.push(format!("even-sum k={k}"), lhs - rhs);
    }
    for k in 5..=n - 2 {
        let mut conv = Rational::zero();
        for t in 5..=k {
            conv += be(t - 1) * be(k - t + 4);
        }
        let lhs = (&b2 - ri(k - 2) * &a1) * be(k);
        let rhs = frac(k as i64 - 1, 2) * &a2 * conv;
        lines.push(format!("convolution k={k}"), lhs - rhs);
    }
    if n % 2 == 1 {
        let lhs = (&b2 - &c3 - ri(n - 5) * &a1) * be(n - 1);
        let mut rhs = Rational::zero();
        for t in 3..=(n - 1) / 2 {
            rhs += &a2 * ri(2 * t - 3) * be(n - 2 * t + 3) * be(2 * t - 1);
        }
        for t in 2..=(n - 3) / 2 {
            rhs += (c.c(n - 2 * t + 2) - c.a(n - 2 * t + 1)
                + ri(2 * t - 3) * &a2 * be(n - 2 * t + 2))
                * be(2 * t);
        }
        lines.push("last line (n odd)", lhs - rhs);
    } else {
        let lhs = (&b2 - ri(n - 3) * &a1) * be(n - 1);
        let mut rhs = Rational::zero();
        for t in 3..=(n - 2) / 2 {
            rhs += &a2 * ri(2 * t - 3) * be(n - 2 * t + 3) * be(2 * t - 1);
        }
        for t in 2..=(n - 2) / 2 {
            rhs += (c.c(n - 2 * t + 2) - c.a(n - 2 * t + 1)
                + ri(2 * t - 3) * &a2 * be(n - 2 * t + 2))
                * be(2 * t);
        }
        lines.push("last line (n even)", lhs - rhs);
    }

    Ok(ClosedForm {
        operator: m.0,
        residuals: lines.0,
    })
}

/// Span of the closed-form operators over the solution space of the
/// constraint lines. Relies on linearity in the coefficients.
fn solution_span<F>(n: usize, count: usize, eval: F) -> Result<OperatorSubspace>
where
    F: Fn(&[Rational]) -> Result<ClosedForm>,
{
    let mut columns = Vec::with_capacity(count);
    let mut operators = Vec::with_capacity(count);
    for u in 0..count {
        let mut e = vec![Rational::zero(); count];
        e[u] = rat(1);
        let cf = eval(&e)?;
        columns.push(cf.residuals.into_iter().map(|r| r.value).collect::<Vec<_>>());
        operators.push(cf.operator);
    }
    let lines = columns.first().map_or(0, Vec::len);
    let mut system = EchelonBuilder::new(count);
    for row in 0..lines {
        system.push(columns.iter().map(|col| col[row].clone()).collect());
    }
    let solutions = system.kernel();
    let ops: Vec<MatrixQ> = solutions
        .basis()
        .iter()
        .map(|x| {
            x.iter()
                .zip(&operators)
                .filter(|(c, _)| !c.is_zero())
                .fold(MatrixQ::zeros(n, n), |acc, (c, op)| &acc + &op.scale(c))
        })
        .collect();
    OperatorSubspace::span(n, &ops)
}

/// Span of all closed-form pre-derivations of `F1(α, θ)` whose coefficients
/// satisfy the constraint system.
pub fn closed_form_span_f1(p: &F1Params) -> Result<OperatorSubspace> {
    let n = p.n;
    solution_span(n, PreDerivCoeffsF1::count(n), |v| {
        closed_form_prederivation_f1(p, &PreDerivCoeffsF1::from_flat(n, v))
    })
}

/// Span of all closed-form pre-derivations of `F2(β, γ)` whose coefficients
/// satisfy the constraint system.
pub fn closed_form_span_f2(p: &F2Params) -> Result<OperatorSubspace> {
    let n = p.n;
    solution_span(n, PreDerivCoeffsF2::count(n), |v| {
        closed_form_prederivation_f2(p, &PreDerivCoeffsF2::from_flat(n, v))
    })
}
