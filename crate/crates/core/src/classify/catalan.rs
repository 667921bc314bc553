//! Fuss–Catalan numbers `C^p_n = binom(pn, n) / ((p−1)n + 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{serde_rational, Rational};

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C^p_n`; `C^p_0 = 1`.
pub fn catalan(p: u32, n: u32) -> Result<BigInt> {
    if p < 2 {
        return Err(Error::Domain(format!("catalan order p must be >= 2 (got {p})")));
    }
    let (p, n) = (u64::from(p), u64::from(n));
    let num = binomial(p * n, n);
    let den = BigInt::from((p - 1) * n + 1);
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `C^p_n` as a rational, for use in parameter formulas. Panics on `p < 2`.
pub fn catalan_rational(p: u32, n: u32) -> Rational {
    Rational::from_integer(catalan(p, n).expect("catalan order checked by caller"))
}

/// Both sides of a convolution identity for `C^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionCheck {
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub equal: bool,
}

fn rhs(p: u32, n: u32) -> Result<Rational> {
    let (pp, nn) = (i64::from(p), i64::from(n));
    let factor = Rational::new(BigInt::from(2 * nn), BigInt::from((pp - 1) * nn + pp + 1));
    Ok(factor * Rational::from_integer(catalan(p, n + 1)?))
}

fn check(p: u32, n: u32, shift: u32) -> Result<ConvolutionCheck> {
    if n < 1 {
        return Err(Error::Domain("convolution identity needs n >= 1".into()));
    }
    let mut lhs = BigInt::zero();
    for k in 1..=n {
        lhs += catalan(p, k)? * catalan(p, n + shift - k)?;
    }
    let lhs = Rational::from_integer(lhs);
    let rhs = rhs(p, n)?;
    let equal = lhs == rhs;
    Ok(ConvolutionCheck { lhs, rhs, equal })
}

/// `Σ_{k=1}^{n} C^p_k C^p_{n+1−k}` against `2n/((p−1)n+p+1) · C^p_{n+1}`.
pub fn catalan_convolution_check(p: u32, n: u32) -> Result<ConvolutionCheck> {
    check(p, n, 1)
}

/// The same right-hand side against `Σ_{k=1}^{n} C^p_k C^p_{n−k}`, the
/// index pattern that does not hold in general (e.g. `p = 2, n = 2`).
pub fn catalan_convolution_check_printed(p: u32, n: u32) -> Result<ConvolutionCheck> {
    check(p, n, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn small_values() {
        assert_eq!(catalan(2, 0).unwrap(), BigInt::from(1));
        assert_eq!(catalan(5, 0).unwrap(), BigInt::from(1));
        assert_eq!(catalan(2, 3).unwrap(), BigInt::from(5));
        assert_eq!(catalan(3, 4).unwrap(), BigInt::from(55));
        assert!(catalan(1, 3).is_err());
    }

    #[test]
    fn convolution_examples() {
        let c = catalan_convolution_check(2, 2).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.equal), (rat(4), rat(4), true));
        let c = catalan_convolution_check(3, 3).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.equal), (rat(33), rat(33), true));
        let c = catalan_convolution_check(2, 1).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.equal), (rat(1), rat(1), true));
    }

    #[test]
    fn printed_form_fails_at_two_two() {
        let c = catalan_convolution_check_printed(2, 2).unwrap();
        assert_eq!(c.lhs, rat(3));
        assert_eq!(c.rhs, rat(4));
        assert!(!c.equal);
    }
}
