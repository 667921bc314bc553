//! The three families of filiform Leibniz algebras, and generators for the
//! parameter vectors that give characteristically nilpotent but
//! non-strongly nilpotent members.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, OutMap, SparseVec};
use crate::classify::catalan::catalan_rational;
use crate::error::{Error, Result};
use crate::exactlin::{rat, serde_rational, Rational};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn zeros(len: usize) -> Vec<Rational> {
    vec![Rational::zero(); len]
}

/// Parameters of `F1(α_4, …, α_n, θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F1Params {
    pub n: usize,
    /// `α_4 … α_n`, so `alpha[0]` is `α_4`.
    pub alpha: Vec<Rational>,
    pub theta: Rational,
}

impl F1Params {
    pub fn zero(n: usize) -> Self {
        F1Params {
            n,
            alpha: zeros(n.saturating_sub(3)),
            theta: Rational::zero(),
        }
    }

    /// `α_k` for `4 ≤ k ≤ n`; zero outside that range.
    pub fn alpha(&self, k: usize) -> Rational {
        coeff(&self.alpha, k)
    }

    pub fn set_alpha(&mut self, k: usize, v: Rational) {
        self.alpha[k - 4] = v;
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        if self.alpha.len() != self.n - 3 {
            return Err(invalid(format!(
                "alpha count must be n-3 = {} (got {})",
                self.n - 3,
                self.alpha.len()
            )));
        }
        Ok(())
    }
}

/// Parameters of `F2(β_4, …, β_n, γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Params {
    pub n: usize,
    /// `β_4 … β_n`, so `beta[0]` is `β_4`.
    pub beta: Vec<Rational>,
    pub gamma: Rational,
}

impl F2Params {
    pub fn zero(n: usize) -> Self {
        F2Params {
            n,
            beta: zeros(n.saturating_sub(3)),
            gamma: Rational::zero(),
        }
    }

    pub fn beta(&self, k: usize) -> Rational {
        coeff(&self.beta, k)
    }

    pub fn set_beta(&mut self, k: usize, v: Rational) {
        self.beta[k - 4] = v;
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        if self.beta.len() != self.n - 3 {
            return Err(invalid(format!(
                "beta count must be n-3 = {} (got {})",
                self.n - 3,
                self.beta.len()
            )));
        }
        Ok(())
    }
}

/// Parameters of `F3(θ_1, θ_2, θ_3)` together with the skew block
/// `[e_i, e_j] = −[e_j, e_i]`, `2 ≤ i < j ≤ n−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F3Params {
    pub n: usize,
    pub theta1: Rational,
    pub theta2: Rational,
    pub theta3: Rational,
    pub alpha_flag: bool,
    /// `(i, j)` with `i < j` mapped to the coefficients of `[e_i, e_j]`.
    pub skew: BTreeMap<(usize, usize), SparseVec>,
}

impl F3Params {
    pub fn new(n: usize, theta: [Rational; 3]) -> Self {
        let [theta1, theta2, theta3] = theta;
        F3Params {
            n,
            theta1,
            theta2,
            theta3,
            alpha_flag: false,
            skew: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        if self.alpha_flag && self.n % 2 == 1 {
            return Err(invalid("alpha=0 for odd n"));
        }
        for (&(i, j), out) in &self.skew {
            if !(2 <= i && i < j && j < self.n) {
                return Err(invalid(format!(
                    "skew pair ({i},{j}) must satisfy 2 <= i < j <= n-1"
                )));
            }
            if let Some((&k, _)) = out.iter().find(|(&k, _)| k < i + j + 1 || k > self.n) {
                return Err(invalid(format!(
                    "skew product [e_{i},e_{j}] may only involve e_{}..e_{}, got e_{k}",
                    i + j + 1,
                    self.n
                )));
            }
        }
        Ok(())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        Err(invalid(format!("n must be at least 4 (got {n})")))
    } else {
        Ok(())
    }
}

fn coeff(v: &[Rational], k: usize) -> Rational {
    if k >= 4 && k - 4 < v.len() {
        v[k - 4].clone()
    } else {
        Rational::zero()
    }
}

fn one() -> Rational {
    Rational::one()
}

/// ```text
/// [e_1,e_1] = e_3
/// [e_i,e_1] = e_{i+1}                      2 ≤ i ≤ n−1
/// [e_1,e_2] = Σ_{t=4}^{n−1} α_t e_t + θ e_n
/// [e_j,e_2] = Σ_{t=j+2}^{n} α_{t−j+2} e_t  2 ≤ j ≤ n−2
/// ```
pub fn build_f1(p: &F1Params) -> Result<Algebra> {
    p.validate()?;
    let n = p.n;
    let mut a = Algebra::new(n)?;
    a.add_product(1, 1, 3, one())?;
    for i in 2..n {
        a.add_product(i, 1, i + 1, one())?;
    }
    for t in 4..n {
        a.add_product(1, 2, t, p.alpha(t))?;
    }
    a.add_product(1, 2, n, p.theta.clone())?;
    for j in 2..=n - 2 {
        for t in j + 2..=n {
            a.add_product(j, 2, t, p.alpha(t - j + 2))?;
        }
    }
    Ok(a)
}

/// ```text
/// [e_1,e_1] = e_3
/// [e_i,e_1] = e_{i+1}                      3 ≤ i ≤ n−1
/// [e_1,e_2] = Σ_{t=4}^{n} β_t e_t
/// [e_2,e_2] = γ e_n
/// [e_j,e_2] = Σ_{t=j+2}^{n} β_{t−j+2} e_t  3 ≤ j ≤ n−2
/// ```
pub fn build_f2(p: &F2Params) -> Result<Algebra> {
    p.validate()?;
    let n = p.n;
    let mut a = Algebra::new(n)?;
    a.add_product(1, 1, 3, one())?;
    for i in 3..n {
        a.add_product(i, 1, i + 1, one())?;
    }
    for t in 4..=n {
        a.add_product(1, 2, t, p.beta(t))?;
    }
    a.add_product(2, 2, n, p.gamma.clone())?;
    for j in 3..=n - 2 {
        for t in j + 2..=n {
            a.add_product(j, 2, t, p.beta(t - j + 2))?;
        }
    }
    Ok(a)
}

/// Assembles the third family and checks the Leibniz identity; inadmissible
/// skew coefficients are reported as [`Error::LeibnizViolation`].
pub fn build_f3(p: &F3Params) -> Result<Algebra> {
    p.validate()?;
    let n = p.n;
    let mut a = Algebra::new(n)?;
    for i in 2..n {
        a.add_product(i, 1, i + 1, one())?;
    }
    for i in 3..n {
        a.add_product(1, i, i + 1, -one())?;
    }
    a.add_product(1, 1, n, p.theta1.clone())?;
    a.add_product(1, 2, 3, -one())?;
    a.add_product(1, 2, n, p.theta2.clone())?;
    a.add_product(2, 2, n, p.theta3.clone())?;
    for (&(i, j), out) in &p.skew {
        for (&k, c) in out {
            a.add_product(i, j, k, c.clone())?;
            a.add_product(j, i, k, -c.clone())?;
        }
    }
    if p.alpha_flag {
        for i in 2..n {
            let sign = if (i + 1) % 2 == 0 { one() } else { -one() };
            a.add_product(i, n + 1 - i, n, sign)?;
        }
    }
    let violations = a.leibniz_violations();
    if !violations.is_empty() {
        return Err(Error::LeibnizViolation(violations));
    }
    Ok(a)
}

/// The cases of the non-strong-nilpotency theorems for the first family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum F1Case {
    /// Catalan sequence driven by `α_4 ≠ 0`.
    I,
    /// `C^{2s−2}` sequence driven by `α_{2s}`, `s ≥ 3`.
    Ii,
    /// All even-indexed `α` vanish.
    Iii,
    /// `C^{2s−1}` sequence driven by `α_{2s+1}` (odd `n` only).
    Iv,
}

impl std::str::FromStr for F1Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(F1Case::I),
            "ii" => Ok(F1Case::Ii),
            "iii" => Ok(F1Case::Iii),
            "iv" => Ok(F1Case::Iv),
            other => Err(invalid(format!("unknown case `{other}`"))),
        }
    }
}

/// Caller-chosen values for the slots a theorem case leaves free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct F1Seed {
    /// `s` for cases ii and iv.
    pub s: Option<usize>,
    /// `α_4` (case i), `α_{2s}` (case ii) or `α_{2s+1}` (case iv).
    pub leading: Rational,
    /// Case iii: the odd-indexed entries `α_5, α_7, …` up to the last
    /// constrained index; missing entries are zero.
    pub odd: Vec<Rational>,
    pub alpha_n_minus_1: Rational,
    pub alpha_n: Rational,
    pub theta: Rational,
}

fn check_generator_n(n: usize) -> Result<()> {
    if n < 7 {
        Err(invalid(format!("theorem generators need n >= 7 (got {n})")))
    } else {
        Ok(())
    }
}

/// Range of `s` allowed for case ii (`2s ≤ n−2`, and `2s ≤ n−3` for odd n).
pub fn f1_case_ii_s_range(n: usize) -> std::ops::RangeInclusive<usize> {
    3..=(n - 2) / 2
}

/// Range of `s` allowed for case iv (`2s+1 ≤ n−2`).
pub fn f1_case_iv_s_range(n: usize) -> std::ops::RangeInclusive<usize> {
    2..=(n - 3) / 2
}

/// Canonical non-strongly-nilpotent parameter vector for the first family.
pub fn gen_f1_nsn(n: usize, case: F1Case, seed: &F1Seed) -> Result<F1Params> {
    check_generator_n(n)?;
    let mut p = F1Params::zero(n);
    let odd_n = n % 2 == 1;
    match case {
        F1Case::I => {
            if seed.leading.is_zero() {
                return Err(invalid("case i requires alpha_4 != 0"));
            }
            for (k, v) in f1_case_i_sequence(n, &seed.leading) {
                p.set_alpha(k, v);
            }
        }
        F1Case::Ii => {
            let s = seed.s.ok_or_else(|| invalid("case ii requires s"))?;
            if !f1_case_ii_s_range(n).contains(&s) {
                return Err(invalid(format!(
                    "case ii requires 3 <= s <= {} for n = {n}",
                    (n - 2) / 2
                )));
            }
            for (k, v) in fuss_catalan_sequence(n, 2 * s, 2 * s - 3, (2 * s - 2) as u32, &seed.leading) {
                p.set_alpha(k, v);
            }
        }
        F1Case::Iii => {
            let odd_slots: Vec<usize> = (5..=n - 2).step_by(2).filter(|&k| k < n - 1).collect();
            if seed.odd.len() > odd_slots.len() {
                return Err(invalid(format!(
                    "case iii takes at most {} odd entries for n = {n}",
                    odd_slots.len()
                )));
            }
            for (&k, v) in odd_slots.iter().zip(&seed.odd) {
                p.set_alpha(k, v.clone());
            }
        }
        F1Case::Iv => {
            if !odd_n {
                return Err(invalid("case iv requires odd n"));
            }
            let s = seed.s.ok_or_else(|| invalid("case iv requires s"))?;
            if !f1_case_iv_s_range(n).contains(&s) {
                return Err(invalid(format!(
                    "case iv requires 2 <= s <= {} for n = {n}",
                    (n - 3) / 2
                )));
            }
            for (k, v) in fuss_catalan_sequence(n, 2 * s + 1, 2 * s - 2, (2 * s - 1) as u32, &seed.leading)
            {
                p.set_alpha(k, v);
            }
        }
    }
    // Case iii for odd n forces α_{n−1} = 0 (it is an even index).
    let tail_free = !(odd_n && case == F1Case::Iii);
    if tail_free {
        p.set_alpha(n - 1, seed.alpha_n_minus_1.clone());
    }
    p.set_alpha(n, seed.alpha_n.clone());
    p.theta = seed.theta.clone();
    Ok(p)
}

/// `α_k` for `4 ≤ k ≤ n−2` in case i, starting from `α_4`.
pub fn f1_case_i_sequence(n: usize, alpha4: &Rational) -> Vec<(usize, Rational)> {
    fuss_catalan_sequence(n, 4, 1, 2, alpha4)
}

/// Entries `α_{step·t+3} = (−1)^{t+1} C^p_t · lead^t` for `t ≥ 1` with
/// index at most `n−2`; the remaining indices in `4..=n−2` are zero. The
/// first entry (`t = 1`) sits at `first = step + 3` and equals `lead`.
pub fn fuss_catalan_sequence(
    n: usize,
    first: usize,
    step: usize,
    p: u32,
    lead: &Rational,
) -> Vec<(usize, Rational)> {
    debug_assert_eq!(first, step + 3);
    let mut out: Vec<(usize, Rational)> = (4..=n - 2).map(|k| (k, Rational::zero())).collect();
    let mut t = 1usize;
    let mut power = lead.clone();
    while step * t + 3 <= n - 2 {
        let k = step * t + 3;
        let sign = if t % 2 == 1 { rat(1) } else { rat(-1) };
        let value = sign * catalan_rational(p, t as u32) * &power;
        out[k - 4].1 = value;
        t += 1;
        power *= lead;
    }
    out
}

/// Shapes of the second-family normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F2Form {
    /// A single unit `β_j = 1` among `β_4 … β_{n−2}`.
    Single { j: usize },
    /// Even-indexed `β` vanish; odd entries `β_5, β_7, …` as given.
    OddOnly { odd: Vec<Rational> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct F2Tail {
    pub beta_n_minus_1: Rational,
    pub beta_n: Rational,
    pub gamma: Rational,
}

/// Normal forms listed for non-strongly nilpotent members of the second
/// family.
pub fn gen_f2_nsn(n: usize, form: &F2Form, tail: &F2Tail) -> Result<F2Params> {
    check_generator_n(n)?;
    let odd_n = n % 2 == 1;
    let mut p = F2Params::zero(n);
    match form {
        F2Form::Single { j } => {
            let j = *j;
            if !(4..=n - 2).contains(&j) {
                return Err(invalid(format!("single index must satisfy 4 <= j <= n-2 (got {j})")));
            }
            if !odd_n && j % 2 == 1 {
                return Err(invalid(format!(
                    "single index must be even (2s) for even n (got {j})"
                )));
            }
            p.set_beta(j, one());
            p.set_beta(n - 1, tail.beta_n_minus_1.clone());
        }
        F2Form::OddOnly { odd } => {
            let last = if odd_n { n - 2 } else { n - 3 };
            let slots: Vec<usize> = (5..=last).step_by(2).collect();
            if odd.len() > slots.len() {
                return Err(invalid(format!(
                    "odd-only form takes at most {} entries for n = {n}",
                    slots.len()
                )));
            }
            for (&k, v) in slots.iter().zip(odd) {
                p.set_beta(k, v.clone());
            }
            if !odd_n {
                p.set_beta(n - 1, tail.beta_n_minus_1.clone());
            }
        }
    }
    p.set_beta(n, tail.beta_n.clone());
    p.gamma = tail.gamma.clone();
    Ok(p)
}

/// Tagged parameter record used on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    F1(F1Params),
    F2(F2Params),
    F3(F3Params),
}

impl FamilyParams {
    pub fn n(&self) -> usize {
        match self {
            FamilyParams::F1(p) => p.n,
            FamilyParams::F2(p) => p.n,
            FamilyParams::F3(p) => p.n,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilyParams::F1(_) => "F1",
            FamilyParams::F2(_) => "F2",
            FamilyParams::F3(_) => "F3",
        }
    }

    pub fn build(&self) -> Result<Algebra> {
        match self {
            FamilyParams::F1(p) => build_f1(p),
            FamilyParams::F2(p) => build_f2(p),
            FamilyParams::F3(p) => build_f3(p),
        }
    }

    pub fn to_json(&self) -> FamilyParamsJson {
        let sparse = |v: &[Rational]| {
            OutMap(
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i + 4, c.clone()))
                    .collect(),
            )
        };
        let mut j = FamilyParamsJson {
            family: self.tag().to_string(),
            n: self.n(),
            ..Default::default()
        };
        match self {
            FamilyParams::F1(p) => {
                j.alpha = Some(sparse(&p.alpha));
                j.theta = Some(p.theta.clone());
            }
            FamilyParams::F2(p) => {
                j.beta = Some(sparse(&p.beta));
                j.gamma = Some(p.gamma.clone());
            }
            FamilyParams::F3(p) => {
                j.theta1 = Some(p.theta1.clone());
                j.theta2 = Some(p.theta2.clone());
                j.theta3 = Some(p.theta3.clone());
                j.alpha_flag = Some(u8::from(p.alpha_flag));
                j.skew = Some(
                    p.skew
                        .iter()
                        .map(|(&(i, jj), out)| crate::algebra::ProductJson {
                            i,
                            j: jj,
                            out: OutMap(out.clone()),
                        })
                        .collect(),
                );
            }
        }
        j
    }

    pub fn from_json(j: &FamilyParamsJson) -> Result<Self> {
        let n = j.n;
        check_n(n)?;
        let dense = |m: &Option<OutMap>, name: &str| -> Result<Vec<Rational>> {
            let mut v = zeros(n - 3);
            if let Some(m) = m {
                for (&k, c) in &m.0 {
                    if !(4..=n).contains(&k) {
                        return Err(invalid(format!("{name} index {k} outside 4..={n}")));
                    }
                    v[k - 4] = c.clone();
                }
            }
            Ok(v)
        };
        let or_zero = |q: &Option<Rational>| q.clone().unwrap_or_else(Rational::zero);
        let p = match j.family.as_str() {
            "F1" => FamilyParams::F1(F1Params {
                n,
                alpha: dense(&j.alpha, "alpha")?,
                theta: or_zero(&j.theta),
            }),
            "F2" => FamilyParams::F2(F2Params {
                n,
                beta: dense(&j.beta, "beta")?,
                gamma: or_zero(&j.gamma),
            }),
            "F3" => {
                let flag = match j.alpha_flag.unwrap_or(0) {
                    0 => false,
                    1 => true,
                    other => return Err(invalid(format!("alpha_flag must be 0 or 1 (got {other})"))),
                };
                let mut skew = BTreeMap::new();
                for pj in j.skew.iter().flatten() {
                    skew.insert((pj.i, pj.j), pj.out.0.clone());
                }
                FamilyParams::F3(F3Params {
                    n,
                    theta1: or_zero(&j.theta1),
                    theta2: or_zero(&j.theta2),
                    theta3: or_zero(&j.theta3),
                    alpha_flag: flag,
                    skew,
                })
            }
            other => return Err(invalid(format!("unknown family `{other}`"))),
        };
        Ok(p)
    }
}

/// Reads family parameters back off a structure table, if the table is
/// literally one of the three families in the given basis.
pub fn detect_family(a: &Algebra) -> Option<FamilyParams> {
    let n = a.dim();
    if n < 4 {
        return None;
    }
    let e12 = a.basis_product(1, 2);
    let e22 = a.basis_product(2, 2);

    let mut p1 = F1Params::zero(n);
    for t in 4..n {
        p1.set_alpha(t, e12[t - 1].clone());
    }
    p1.set_alpha(n, e22[n - 1].clone());
    p1.theta = e12[n - 1].clone();
    if build_f1(&p1).ok().as_ref() == Some(a) {
        return Some(FamilyParams::F1(p1));
    }

    let mut p2 = F2Params::zero(n);
    for t in 4..=n {
        p2.set_beta(t, e12[t - 1].clone());
    }
    p2.gamma = e22[n - 1].clone();
    if build_f2(&p2).ok().as_ref() == Some(a) {
        return Some(FamilyParams::F2(p2));
    }

    let mut p3 = F3Params::new(
        n,
        [
            a.basis_product(1, 1)[n - 1].clone(),
            e12[n - 1].clone(),
            e22[n - 1].clone(),
        ],
    );
    // [e_2, e_{n−1}] = −α e_n; skew entries never reach that pair.
    let flag = -a.basis_product(2, n - 1)[n - 1].clone();
    if flag.is_one() {
        p3.alpha_flag = true;
    } else if !flag.is_zero() {
        return None;
    }
    for i in 2..n {
        for j in i + 1..n {
            let out: SparseVec = a
                .basis_product(i, j)
                .into_iter()
                .enumerate()
                .filter(|(k, c)| !c.is_zero() && *k + 1 > i + j)
                .map(|(k, c)| (k + 1, c))
                .collect();
            if !out.is_empty() {
                p3.skew.insert((i, j), out);
            }
        }
    }
    if build_f3(&p3).ok().as_ref() == Some(a) {
        return Some(FamilyParams::F3(p3));
    }
    None
}

/// Wire form, e.g. `{"family": "F1", "n": 10, "alpha": {"4": "1"}, "theta": "0"}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FamilyParamsJson {
    pub family: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<OutMap>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub theta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<OutMap>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub gamma: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub theta1: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub theta2: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub theta3: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_flag: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew: Option<Vec<crate::algebra::ProductJson>>,
}

mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::serde_rational;
    use crate::exactlin::Rational;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => serde_rational::serialize(q, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "serde_rational")] Rational);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}
