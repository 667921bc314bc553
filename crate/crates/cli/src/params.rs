//! Parsing of family parameters given on the command line.

use std::collections::BTreeMap;

use filiform::algebra::SparseVec;
use filiform::exactlin::parse_rational;
use filiform::families::{F1Params, F2Params, F3Params, FamilyParams};
use filiform::{Error, Rational, Result};

/// `k=v,k=v` (sparse, unlisted entries zero) or `v,v,…` (dense, listing
/// every entry from index 4 up to `n`).
pub fn coefficient_vector(arg: Option<&str>, n: usize, name: &str) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::default(); n.saturating_sub(3)];
    let Some(arg) = arg else {
        return Ok(v);
    };
    if arg.is_empty() {
        return Ok(v);
    }
    if !arg.contains('=') {
        let dense = arg
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        return Ok(dense);
    }
    for item in arg.split(',') {
        let (k, c) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("expected index=value in --{name}, got `{item}`")))?;
        let k: usize = k
            .parse()
            .map_err(|_| bad(format!("bad index `{k}` in --{name}")))?;
        if !(4..=n).contains(&k) {
            return Err(bad(format!("{name} index {k} outside 4..={n}")));
        }
        v[k - 4] = parse_rational(c)?;
    }
    Ok(v)
}

/// `i,j:k=v,k=v`, the coefficients of `[e_i, e_j]` for one skew pair.
pub fn skew_entry(arg: &str) -> Result<((usize, usize), SparseVec)> {
    let (pair, coeffs) = arg
        .split_once(':')
        .ok_or_else(|| bad(format!("expected i,j:k=v,... in --skew, got `{arg}`")))?;
    let (i, j) = pair
        .split_once(',')
        .ok_or_else(|| bad(format!("expected i,j before `:` in --skew, got `{pair}`")))?;
    let index = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(format!("bad index `{s}` in --skew")))
    };
    let mut out = BTreeMap::new();
    for item in coeffs.split(',').filter(|s| !s.is_empty()) {
        let (k, c) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("expected k=v in --skew, got `{item}`")))?;
        out.insert(index(k)?, parse_rational(c)?);
    }
    Ok(((index(i)?, index(j)?), out))
}

fn bad(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

fn scalar(s: Option<&str>) -> Result<Rational> {
    s.map_or_else(|| Ok(Rational::default()), parse_rational)
}

/// Raw parameter flags, before interpretation for a particular family.
#[derive(Debug, Default)]
pub struct RawParams<'a> {
    pub alpha: Option<&'a str>,
    pub theta: Option<&'a str>,
    pub beta: Option<&'a str>,
    pub gamma: Option<&'a str>,
    pub theta1: Option<&'a str>,
    pub theta2: Option<&'a str>,
    pub theta3: Option<&'a str>,
    pub alpha_flag: Option<u8>,
    pub skew: &'a [String],
}

/// Interprets the flags for `family`, rejecting flags that belong to
/// another family, and validates the result.
pub fn family_params(family: &str, n: usize, raw: &RawParams) -> Result<FamilyParams> {
    let foreign = |names: &[(&str, bool)]| -> Result<()> {
        match names.iter().find(|(_, set)| *set) {
            Some((name, _)) => Err(bad(format!("--{name} does not apply to family {family}"))),
            None => Ok(()),
        }
    };
    let f3_flags = [
        ("theta1", raw.theta1.is_some()),
        ("theta2", raw.theta2.is_some()),
        ("theta3", raw.theta3.is_some()),
        ("alpha-flag", raw.alpha_flag.is_some()),
        ("skew", !raw.skew.is_empty()),
    ];
    let p = match family {
        "F1" => {
            foreign(&[("beta", raw.beta.is_some()), ("gamma", raw.gamma.is_some())])?;
            foreign(&f3_flags)?;
            FamilyParams::F1(F1Params {
                n,
                alpha: coefficient_vector(raw.alpha, n, "alpha")?,
                theta: scalar(raw.theta)?,
            })
        }
        "F2" => {
            foreign(&[("alpha", raw.alpha.is_some()), ("theta", raw.theta.is_some())])?;
            foreign(&f3_flags)?;
            FamilyParams::F2(F2Params {
                n,
                beta: coefficient_vector(raw.beta, n, "beta")?,
                gamma: scalar(raw.gamma)?,
            })
        }
        "F3" => {
            foreign(&[
                ("alpha", raw.alpha.is_some()),
                ("theta", raw.theta.is_some()),
                ("beta", raw.beta.is_some()),
                ("gamma", raw.gamma.is_some()),
            ])?;
            let mut p = F3Params::new(
                n,
                [scalar(raw.theta1)?, scalar(raw.theta2)?, scalar(raw.theta3)?],
            );
            p.alpha_flag = match raw.alpha_flag.unwrap_or(0) {
                0 => false,
                1 => true,
                other => return Err(bad(format!("alpha-flag must be 0 or 1 (got {other})"))),
            };
            for s in raw.skew {
                let (pair, out) = skew_entry(s)?;
                p.skew.insert(pair, out);
            }
            FamilyParams::F3(p)
        }
        other => return Err(bad(format!("unknown family `{other}` (expected F1, F2 or F3)"))),
    };
    match &p {
        FamilyParams::F1(q) => q.validate()?,
        FamilyParams::F2(q) => q.validate()?,
        FamilyParams::F3(q) => q.validate()?,
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use filiform::exactlin::{frac, rat};

    #[test]
    fn sparse_and_dense_vectors() {
        let v = coefficient_vector(Some("4=1,6=-2"), 8, "alpha").unwrap();
        assert_eq!(v, vec![rat(1), rat(0), rat(-2), rat(0), rat(0)]);
        let v = coefficient_vector(Some("1/2,0,3"), 6, "beta").unwrap();
        assert_eq!(v, vec![frac(1, 2), rat(0), rat(3)]);
        assert!(coefficient_vector(Some("9=1"), 8, "alpha").is_err());
        assert!(coefficient_vector(None, 8, "alpha").unwrap().iter().all(|x| *x == rat(0)));
    }

    #[test]
    fn dense_count_is_checked_by_validation() {
        let raw = RawParams {
            alpha: Some("1,2"),
            ..Default::default()
        };
        let err = family_params("F1", 8, &raw).unwrap_err().to_string();
        assert!(err.contains("alpha count must be n-3"), "{err}");
    }

    #[test]
    fn skew_syntax() {
        let ((i, j), out) = skew_entry("2,3:6=1,7=-1/2").unwrap();
        assert_eq!((i, j), (2, 3));
        assert_eq!(out.get(&7), Some(&frac(-1, 2)));
        assert!(skew_entry("2:6=1").is_err());
    }

    #[test]
    fn foreign_flags_rejected() {
        let raw = RawParams {
            beta: Some("4=1"),
            ..Default::default()
        };
        assert!(family_params("F1", 8, &raw).is_err());
    }
}
