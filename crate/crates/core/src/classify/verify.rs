//! Sampling verifiers for the strong-nilpotency classification, and a
//! small census over random family members.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::predict::{
    f2_change_basis, predict_f1_strongly_nilpotent, predict_f2_strongly_nilpotent,
    MIN_PREDICTOR_DIM,
};
use super::report::{classify, TOOL_VERSION};
use crate::derivops::prederivation_space;
use crate::error::{Error, Result};
use crate::exactlin::{rat, subspace_equal, Rational};
use crate::families::{
    build_f3, f1_case_ii_s_range, f1_case_iv_s_range, gen_f1_nsn, gen_f2_nsn, F1Case, F1Params,
    F1Seed, F2Form, F2Params, F2Tail, F3Params, FamilyParams, FamilyParamsJson,
};

/// Claims that [`verify_theorem`] can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// First family, `α_4 = … = α_{n−1} = 0` gives a non-strongly nilpotent
    /// algebra.
    P41,
    /// First family, even `n`.
    T42,
    /// First family, odd `n`.
    T43,
    /// Second family, `β_4 = … = β_{n−1} = 0`.
    P44,
    /// Second family, even `n`, up to isomorphism.
    T45,
    /// Second family, odd `n`, up to isomorphism.
    T46,
    /// Third family: the pre-derivation space does not depend on `θ`.
    P47,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::P41,
        TheoremId::T42,
        TheoremId::T43,
        TheoremId::P44,
        TheoremId::T45,
        TheoremId::T46,
        TheoremId::P47,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::P41 => "4.1",
            TheoremId::T42 => "4.2",
            TheoremId::T43 => "4.3",
            TheoremId::P44 => "4.4",
            TheoremId::T45 => "4.5",
            TheoremId::T46 => "4.6",
            TheoremId::P47 => "4.7",
        }
    }

    /// Checks that `n` lies in the claim's range.
    pub fn check_n(self, n: usize) -> Result<()> {
        let (min, parity) = match self {
            TheoremId::P41 | TheoremId::P44 => (MIN_PREDICTOR_DIM, None),
            TheoremId::T42 | TheoremId::T45 => (MIN_PREDICTOR_DIM, Some(0)),
            TheoremId::T43 | TheoremId::T46 => (MIN_PREDICTOR_DIM, Some(1)),
            TheoremId::P47 => (4, None),
        };
        if n < min {
            return Err(Error::Domain(format!(
                "theorem {self} needs n >= {min} (got {n})"
            )));
        }
        match parity {
            Some(0) if n % 2 == 1 => Err(Error::Domain(format!(
                "theorem {self} requires even n (got {n})"
            ))),
            Some(1) if n % 2 == 0 => Err(Error::Domain(format!(
                "theorem {self} requires odd n (got {n})"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    /// Drawn from the claim's own parameter families.
    On,
    /// An on-family draw with one constrained entry increased by one.
    Off,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub kind: SampleKind,
    pub params: FamilyParamsJson,
    pub predicted: bool,
    pub computed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremVerdict {
    pub tool_version: String,
    pub theorem: TheoremId,
    pub n: usize,
    pub seed: u64,
    /// The boolean being predicted for each sample.
    pub property: &'static str,
    pub samples_on: usize,
    pub samples_off: usize,
    pub tested: usize,
    /// Samples whose computed property was true.
    pub computed_true: usize,
    pub mismatches: Vec<Mismatch>,
}

impl TheoremVerdict {
    pub fn reproduced(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Numerator in `-4..=4`, denominator in `1..=3`.
fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-4i64..=4)),
        BigInt::from(rng.gen_range(1i64..=3)),
    )
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

fn f1_on_family(id: TheoremId, n: usize, rng: &mut ChaCha8Rng) -> Result<F1Params> {
    if id == TheoremId::P41 {
        let mut p = F1Params::zero(n);
        p.set_alpha(n, small_rational(rng));
        p.theta = small_rational(rng);
        return Ok(p);
    }
    let mut cases = vec![F1Case::I, F1Case::Iii];
    if !f1_case_ii_s_range(n).is_empty() {
        cases.push(F1Case::Ii);
    }
    if n % 2 == 1 && !f1_case_iv_s_range(n).is_empty() {
        cases.push(F1Case::Iv);
    }
    let case = *cases.choose(rng).expect("nonempty");
    let s = match case {
        F1Case::Ii => Some(rng.gen_range(f1_case_ii_s_range(n))),
        F1Case::Iv => Some(rng.gen_range(f1_case_iv_s_range(n))),
        _ => None,
    };
    let odd_slots = (5..n - 1).step_by(2).count();
    let seed = F1Seed {
        s,
        leading: nonzero_rational(rng),
        odd: (0..odd_slots).map(|_| small_rational(rng)).collect(),
        alpha_n_minus_1: small_rational(rng),
        alpha_n: small_rational(rng),
        theta: small_rational(rng),
    };
    gen_f1_nsn(n, case, &seed)
}

fn f2_on_family(id: TheoremId, n: usize, rng: &mut ChaCha8Rng) -> Result<F2Params> {
    let tail = F2Tail {
        beta_n_minus_1: small_rational(rng),
        beta_n: small_rational(rng),
        gamma: small_rational(rng),
    };
    if id == TheoremId::P44 {
        let mut p = F2Params::zero(n);
        p.set_beta(n, tail.beta_n);
        p.gamma = tail.gamma;
        return Ok(p);
    }
    let form = if rng.gen_bool(0.5) {
        let singles: Vec<usize> = (4..=n - 2).filter(|j| n % 2 == 1 || j % 2 == 0).collect();
        F2Form::Single {
            j: *singles.choose(rng).expect("n >= 7 leaves a slot"),
        }
    } else {
        let last = if n % 2 == 1 { n - 2 } else { n - 3 };
        F2Form::OddOnly {
            odd: (5..=last).step_by(2).map(|_| small_rational(rng)).collect(),
        }
    };
    let normal = gen_f2_nsn(n, &form, &tail)?;
    // Move away from the normal form by a random isomorphism.
    let (p, _) = f2_change_basis(&normal, &small_rational(rng), &nonzero_rational(rng))?;
    Ok(p)
}

fn constrained_slots(n: usize) -> Vec<usize> {
    let last = if n % 2 == 1 { n - 1 } else { n - 2 };
    (4..=last).collect()
}

enum Sample {
    F1(F1Params),
    F2(F2Params),
}

impl Sample {
    fn bump(&mut self, k: usize) {
        match self {
            Sample::F1(p) => p.set_alpha(k, p.alpha(k) + rat(1)),
            Sample::F2(p) => p.set_beta(k, p.beta(k) + rat(1)),
        }
    }

    fn params(&self) -> FamilyParams {
        match self {
            Sample::F1(p) => FamilyParams::F1(p.clone()),
            Sample::F2(p) => FamilyParams::F2(p.clone()),
        }
    }

    fn evaluate(&self) -> Result<(bool, bool)> {
        let (predicted, algebra) = match self {
            Sample::F1(p) => (predict_f1_strongly_nilpotent(p)?, crate::families::build_f1(p)?),
            Sample::F2(p) => (predict_f2_strongly_nilpotent(p)?, crate::families::build_f2(p)?),
        };
        Ok((predicted, classify(&algebra)?.strongly_nilpotent))
    }
}

/// Samples `samples` on-family and `samples` perturbed parameter vectors,
/// classifies each built algebra, and records every disagreement with the
/// predictor. For `4.7` it instead compares pre-derivation spaces of the
/// third family (zero skew block) across `θ`.
///
/// Samples are drawn sequentially from a ChaCha8 stream seeded with
/// `seed`, then evaluated in parallel; results keep sample order.
pub fn verify_theorem(id: TheoremId, n: usize, samples: usize, seed: u64) -> Result<TheoremVerdict> {
    id.check_n(n)?;
    if id == TheoremId::P47 {
        return verify_theta_independence(n, samples, seed);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first_family = matches!(id, TheoremId::P41 | TheoremId::T42 | TheoremId::T43);
    let draw = |rng: &mut ChaCha8Rng| -> Result<Sample> {
        Ok(if first_family {
            Sample::F1(f1_on_family(id, n, rng)?)
        } else {
            Sample::F2(f2_on_family(id, n, rng)?)
        })
    };
    let slots = constrained_slots(n);
    let mut drawn: Vec<(SampleKind, Sample)> = Vec::with_capacity(2 * samples);
    for _ in 0..samples {
        drawn.push((SampleKind::On, draw(&mut rng)?));
    }
    for _ in 0..samples {
        let mut s = draw(&mut rng)?;
        s.bump(*slots.choose(&mut rng).expect("n >= 7"));
        drawn.push((SampleKind::Off, s));
    }
    let outcomes: Vec<Result<(bool, bool)>> = drawn.par_iter().map(|(_, s)| s.evaluate()).collect();
    let mut mismatches = Vec::new();
    let mut computed_true = 0;
    for (index, ((kind, sample), outcome)) in drawn.iter().zip(outcomes).enumerate() {
        let (predicted, computed) = outcome?;
        computed_true += usize::from(computed);
        if predicted != computed {
            mismatches.push(Mismatch {
                index,
                kind: *kind,
                params: sample.params().to_json(),
                predicted,
                computed,
            });
        }
    }
    Ok(TheoremVerdict {
        tool_version: TOOL_VERSION.to_string(),
        theorem: id,
        n,
        seed,
        property: "strongly_nilpotent",
        samples_on: samples,
        samples_off: samples,
        tested: drawn.len(),
        computed_true,
        mismatches,
    })
}

/// `θ` values always included in the third-family check.
pub const FIXED_THETAS: [[i64; 3]; 3] = [[0, 0, 0], [1, 2, 3], [-1, 0, 5]];

/// Whether `prederivation_space` of `base` with `θ` replaced by each entry
/// of `thetas` equals that of `θ = (0,0,0)`; one flag per entry.
pub fn theta_independence(base: &F3Params, thetas: &[[Rational; 3]]) -> Result<Vec<bool>> {
    let with = |t: &[Rational; 3]| -> Result<F3Params> {
        let mut p = base.clone();
        [p.theta1, p.theta2, p.theta3] = t.clone();
        Ok(p)
    };
    let zero = [Rational::zero(), Rational::zero(), Rational::zero()];
    let reference = prederivation_space(&build_f3(&with(&zero)?)?);
    let spaces: Vec<Result<bool>> = thetas
        .par_iter()
        .map(|t| {
            let s = prederivation_space(&build_f3(&with(t)?)?);
            subspace_equal(reference.space(), s.space())
        })
        .collect();
    spaces.into_iter().collect()
}

fn verify_theta_independence(n: usize, samples: usize, seed: u64) -> Result<TheoremVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut thetas: Vec<[Rational; 3]> = FIXED_THETAS
        .iter()
        .map(|t| [rat(t[0]), rat(t[1]), rat(t[2])])
        .collect();
    for _ in 0..samples {
        thetas.push([
            small_rational(&mut rng),
            small_rational(&mut rng),
            small_rational(&mut rng),
        ]);
    }
    let base = F3Params::new(n, [Rational::zero(), Rational::zero(), Rational::zero()]);
    let equal = theta_independence(&base, &thetas)?;
    let mismatches = thetas
        .iter()
        .zip(&equal)
        .enumerate()
        .filter(|(_, (_, &eq))| !eq)
        .map(|(index, (t, _))| {
            let mut p = base.clone();
            [p.theta1, p.theta2, p.theta3] = t.clone();
            Mismatch {
                index,
                kind: SampleKind::On,
                params: FamilyParams::F3(p).to_json(),
                predicted: true,
                computed: false,
            }
        })
        .collect();
    Ok(TheoremVerdict {
        tool_version: TOOL_VERSION.to_string(),
        theorem: TheoremId::P47,
        n,
        seed,
        property: "prederivations_equal_theta_zero",
        samples_on: thetas.len(),
        samples_off: 0,
        tested: thetas.len(),
        computed_true: equal.iter().filter(|&&e| e).count(),
        mismatches,
    })
}

/// Verdict counts over random members of one family.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Census {
    pub tool_version: String,
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub filiform: usize,
    pub characteristically_nilpotent: usize,
    pub strongly_nilpotent: usize,
    /// Samples on which the parameter predictor was available and agreed
    /// with the computed verdict (first and second family, `n >= 7`).
    pub predictor_agreements: Option<usize>,
}

/// Classifies `samples` random members of `family`: half drawn from the
/// non-strongly nilpotent parameter families (`n >= 7`), half with every
/// free parameter random. The third family uses a zero skew block.
pub fn census(family: &str, n: usize, samples: usize, seed: u64) -> Result<Census> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let predictable = n >= MIN_PREDICTOR_DIM;
    let mut drawn: Vec<FamilyParams> = Vec::with_capacity(samples);
    for i in 0..samples {
        let structured = predictable && i % 2 == 0;
        let p = match family {
            "F1" => FamilyParams::F1(if structured {
                let id = if n % 2 == 0 { TheoremId::T42 } else { TheoremId::T43 };
                f1_on_family(id, n, &mut rng)?
            } else {
                let mut p = F1Params::zero(n);
                for k in 4..=n {
                    p.set_alpha(k, small_rational(&mut rng));
                }
                p.theta = small_rational(&mut rng);
                p
            }),
            "F2" => FamilyParams::F2(if structured {
                let id = if n % 2 == 0 { TheoremId::T45 } else { TheoremId::T46 };
                f2_on_family(id, n, &mut rng)?
            } else {
                let mut p = F2Params::zero(n);
                for k in 4..=n {
                    p.set_beta(k, small_rational(&mut rng));
                }
                p.gamma = small_rational(&mut rng);
                p
            }),
            "F3" => FamilyParams::F3(F3Params::new(
                n,
                [
                    small_rational(&mut rng),
                    small_rational(&mut rng),
                    small_rational(&mut rng),
                ],
            )),
            other => {
                return Err(Error::InvalidParameters(format!("unknown family `{other}`")))
            }
        };
        drawn.push(p);
    }
    let rows: Vec<Result<(bool, bool, bool, Option<bool>)>> = drawn
        .par_iter()
        .map(|p| {
            let r = classify(&p.build()?)?;
            let predicted = match (p, predictable) {
                (FamilyParams::F1(q), true) => Some(predict_f1_strongly_nilpotent(q)?),
                (FamilyParams::F2(q), true) => Some(predict_f2_strongly_nilpotent(q)?),
                _ => None,
            };
            Ok((
                r.filiform,
                r.characteristically_nilpotent,
                r.strongly_nilpotent,
                predicted.map(|x| x == r.strongly_nilpotent),
            ))
        })
        .collect();
    let mut c = Census {
        tool_version: TOOL_VERSION.to_string(),
        family: family.to_string(),
        n,
        seed,
        samples,
        ..Default::default()
    };
    for row in rows {
        let (fil, cn, sn, agree) = row?;
        c.filiform += usize::from(fil);
        c.characteristically_nilpotent += usize::from(cn);
        c.strongly_nilpotent += usize::from(sn);
        if let Some(a) = agree {
            *c.predictor_agreements.get_or_insert(0) += usize::from(a);
        }
    }
    Ok(c)
}
