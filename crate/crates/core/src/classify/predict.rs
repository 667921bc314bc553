//! Parameter-level predictions of strong nilpotency for the first and
//! second families, and the isomorphism that normalizes second-family
//! parameters.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{rat, MatrixQ, Rational};
use crate::families::{
    build_f2, f1_case_i_sequence, f1_case_ii_s_range, f1_case_iv_s_range, fuss_catalan_sequence,
    F1Case, F1Params, F2Params,
};

/// Smallest dimension the predictors accept.
pub const MIN_PREDICTOR_DIM: usize = 7;

fn check_n(n: usize) -> Result<()> {
    if n < MIN_PREDICTOR_DIM {
        Err(Error::Domain(format!(
            "predictors need n >= {MIN_PREDICTOR_DIM} (got {n})"
        )))
    } else {
        Ok(())
    }
}

/// Why a first-family parameter vector is predicted non-strongly nilpotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum F1Reason {
    /// `α_4 = … = α_{n−1} = 0`.
    AllZero,
    Case(F1Case),
}

fn follows(p: &F1Params, seq: &[(usize, Rational)]) -> bool {
    seq.iter().all(|(k, v)| &p.alpha(*k) == v)
}

/// The first matching non-strong-nilpotency condition, or `None` when the
/// parameters are predicted strongly nilpotent.
///
/// Sequences are compared on `α_4 … α_{n−2}`; `α_{n−1}`, `α_n` and `θ` are
/// free except where a case pins `α_{n−1}` (case iii for odd `n`). The
/// case-iv leading entry may be zero, which covers odd `n` with only
/// `α_{n−1}` nonzero among the constrained slots.
pub fn f1_nsn_reason(p: &F1Params) -> Result<Option<F1Reason>> {
    p.validate()?;
    let n = p.n;
    check_n(n)?;
    let odd = n % 2 == 1;
    if (4..n).all(|k| p.alpha(k).is_zero()) {
        return Ok(Some(F1Reason::AllZero));
    }
    let a4 = p.alpha(4);
    if !a4.is_zero() && follows(p, &f1_case_i_sequence(n, &a4)) {
        return Ok(Some(F1Reason::Case(F1Case::I)));
    }
    for s in f1_case_ii_s_range(n) {
        let lead = p.alpha(2 * s);
        if !lead.is_zero()
            && follows(p, &fuss_catalan_sequence(n, 2 * s, 2 * s - 3, (2 * s - 2) as u32, &lead))
        {
            return Ok(Some(F1Reason::Case(F1Case::Ii)));
        }
    }
    let last_even = if odd { n - 1 } else { n - 2 };
    if (4..=last_even).step_by(2).all(|k| p.alpha(k).is_zero()) {
        return Ok(Some(F1Reason::Case(F1Case::Iii)));
    }
    if odd {
        for s in f1_case_iv_s_range(n) {
            let lead = p.alpha(2 * s + 1);
            if follows(p, &fuss_catalan_sequence(n, 2 * s + 1, 2 * s - 2, (2 * s - 1) as u32, &lead)) {
                return Ok(Some(F1Reason::Case(F1Case::Iv)));
            }
        }
    }
    Ok(None)
}

/// `true` when every pre-derivation of `F1(p)` is predicted nilpotent.
pub fn predict_f1_strongly_nilpotent(p: &F1Params) -> Result<bool> {
    Ok(f1_nsn_reason(p)?.is_none())
}

/// Result of [`normalize_f2_with_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Normalization {
    pub params: F2Params,
    /// Index `j` of the leading entry, now equal to one.
    pub leading: usize,
    /// New basis vectors as columns, in the old coordinates.
    pub basis: MatrixQ,
}

fn leading_index(p: &F2Params) -> Option<usize> {
    (4..=p.n - 2).find(|&k| !p.beta(k).is_zero())
}

/// Second-family parameters of `F2(p)` in the basis
/// `f_1 = e_1 + B e_2`, `f_2 = D e_2 − DBγ e_{n−1}`, `f_3 = [f_1, f_1]`,
/// `f_{i+1} = [f_i, f_1]`, together with that basis (as columns). `D` must
/// be nonzero.
pub fn f2_change_basis(p: &F2Params, b: &Rational, d: &Rational) -> Result<(F2Params, MatrixQ)> {
    if d.is_zero() {
        return Err(Error::Domain("scaling D must be nonzero".into()));
    }
    let n = p.n;
    let a = build_f2(p)?;
    let mut cols: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    cols[0][0] = Rational::one();
    cols[0][1] = b.clone();
    cols[1][1] = d.clone();
    cols[1][n - 2] = -(d * b * &p.gamma);
    cols[2] = a.product(&cols[0], &cols[0])?;
    for i in 3..n {
        cols[i] = a.product(&cols[i - 1], &cols[0])?;
    }
    let mut t = MatrixQ::zeros(n, n);
    for (c, v) in cols.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            t[(r, c)] = x.clone();
        }
    }
    let image = a.change_basis(&t)?;

    let mut q = F2Params::zero(n);
    let f1f2 = image.basis_product(1, 2);
    for k in 4..=n {
        q.set_beta(k, f1f2[k - 1].clone());
    }
    q.gamma = image.basis_product(2, 2)[n - 1].clone();
    if build_f2(&q)? != image {
        return Err(Error::Inconsistent(
            "change of basis left the second family".into(),
        ));
    }
    Ok((q, t))
}

/// Normalizes second-family parameters with [`f2_change_basis`].
///
/// With leading entry `β_j` (first nonzero among `β_4 … β_{n−2}`) the
/// scalars are `D = 1/β_j` and `B = β_{2j−3} / ((j−2) β_j²)`, which send
/// `β_j` to 1 and `β_{2j−3}` to 0 (`B = 0` when `2j−3 ≥ n`). For even `n`
/// the leading index must be even.
pub fn normalize_f2_with_basis(p: &F2Params) -> Result<F2Normalization> {
    p.validate()?;
    let n = p.n;
    let j = leading_index(p).ok_or_else(|| {
        Error::Domain("normalization needs a nonzero entry among beta_4..beta_{n-2}".into())
    })?;
    if n % 2 == 0 && j % 2 == 1 {
        return Err(Error::Domain(format!(
            "leading entry beta_{j} has odd index; even n needs an even leading index"
        )));
    }
    let lead = p.beta(j);
    let d = Rational::one() / &lead;
    let coupled = 2 * j - 3;
    let b = if coupled < n {
        p.beta(coupled) / (rat(j as i64 - 2) * &lead * &lead)
    } else {
        Rational::zero()
    };

    let (q, t) = f2_change_basis(p, &b, &d)?;
    if !q.beta(j).is_one() || (coupled < n && !q.beta(coupled).is_zero()) {
        return Err(Error::Inconsistent(format!(
            "normalization failed to reach beta_{j} = 1, beta_{coupled} = 0"
        )));
    }
    Ok(F2Normalization {
        params: q,
        leading: j,
        basis: t,
    })
}

/// [`normalize_f2_with_basis`] without the basis.
pub fn normalize_f2(p: &F2Params) -> Result<F2Params> {
    Ok(normalize_f2_with_basis(p)?.params)
}

/// Why a second-family parameter vector is predicted non-strongly nilpotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum F2Reason {
    /// `β_4 = … = β_{n−1} = 0`.
    AllZero,
    /// Isomorphic to the form with a single `β_j = 1` among `β_4 … β_{n−2}`.
    Single { j: usize },
    /// Even-indexed entries vanish (through `β_{n−2}` for even `n`, through
    /// `β_{n−1}` for odd `n`).
    OddOnly,
    /// Odd `n`, `β_4 = … = β_{n−2} = 0` and `β_{n−1} ≠ 0`. Not among the
    /// listed normal forms, but every such algebra has a non-nilpotent
    /// pre-derivation (the second-family analogue of the first family's
    /// `α_{n−1} ≠ 0` branch).
    TailOnly,
}

/// The listed normal form the parameters reduce to, or `None` when they
/// are predicted strongly nilpotent.
pub fn f2_nsn_reason(p: &F2Params) -> Result<Option<F2Reason>> {
    p.validate()?;
    let n = p.n;
    check_n(n)?;
    let odd = n % 2 == 1;
    if (4..n).all(|k| p.beta(k).is_zero()) {
        return Ok(Some(F2Reason::AllZero));
    }
    let last_even = if odd { n - 1 } else { n - 2 };
    if (4..=last_even).step_by(2).all(|k| p.beta(k).is_zero()) {
        return Ok(Some(F2Reason::OddOnly));
    }
    let Some(j) = leading_index(p) else {
        return Ok(odd.then_some(F2Reason::TailOnly));
    };
    if !odd && j % 2 == 1 {
        return Ok(None);
    }
    let q = normalize_f2(p)?;
    if (4..=n - 2).all(|k| k == j || q.beta(k).is_zero()) {
        Ok(Some(F2Reason::Single { j }))
    } else {
        Ok(None)
    }
}

/// `true` when every pre-derivation of `F2(p)` is predicted nilpotent.
pub fn predict_f2_strongly_nilpotent(p: &F2Params) -> Result<bool> {
    Ok(f2_nsn_reason(p)?.is_none())
}
