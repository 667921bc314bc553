//! Per-algebra verdicts: nilpotency, filiformity, characteristic and strong
//! nilpotency, with witnesses.

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::algebra::Algebra;
use crate::derivops::{
    all_nilpotent, derivation_space, is_derivation, is_nilpotent_operator, is_prederivation,
    prederivation_space, trace_poly_all_nilpotent, Flat, NilpotencyVerdict, OperatorSubspace,
};
use crate::error::{Error, Result};
use crate::exactlin::MatrixQ;
use crate::families::{detect_family, FamilyParamsJson};

/// Version string embedded in every report.
pub const TOOL_VERSION: &str = concat!("filiform ", env!("CARGO_PKG_VERSION"));

/// Hex SHA-256 of the compact algebra JSON.
pub fn algebra_sha256(a: &Algebra) -> String {
    let text = serde_json::to_string(&a.to_json()).expect("algebra JSON is always serializable");
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

fn rows<S: Serializer>(m: &Option<MatrixQ>, s: S) -> Result<S::Ok, S::Error> {
    let rows: Option<Vec<Flat>> = m
        .as_ref()
        .map(|m| m.row_vecs().into_iter().map(Flat).collect());
    rows.serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub tool_version: String,
    pub algebra_sha256: String,
    pub dim: usize,
    /// `"F1"`, `"F2"` or `"F3"` when the table is literally a family member.
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<FamilyParamsJson>,
    pub lcs_dims: Vec<usize>,
    pub nilpotent: bool,
    pub filiform: bool,
    pub der_dim: usize,
    pub preder_dim: usize,
    pub der_engel_flag: Vec<usize>,
    pub preder_engel_flag: Vec<usize>,
    pub characteristically_nilpotent: bool,
    pub strongly_nilpotent: bool,
    /// Rows of a non-nilpotent derivation.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "rows")]
    pub witness_derivation: Option<MatrixQ>,
    /// Rows of a non-nilpotent pre-derivation.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "rows")]
    pub witness_prederivation: Option<MatrixQ>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

/// A report together with the operator spaces it was computed from.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: ClassificationReport,
    pub der: OperatorSubspace,
    pub preder: OperatorSubspace,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::Inconsistent(msg.into())
}

fn check_witness(
    a: &Algebra,
    v: &NilpotencyVerdict,
    belongs: fn(&Algebra, &MatrixQ) -> bool,
    what: &str,
) -> Result<()> {
    match (&v.witness, v.all_nilpotent) {
        (None, true) => Ok(()),
        (Some(w), false) if belongs(a, w) && !is_nilpotent_operator(w) => Ok(()),
        (Some(_), false) => Err(inconsistent(format!("{what} witness failed re-verification"))),
        _ => Err(inconsistent(format!("{what} verdict and witness disagree"))),
    }
}

/// Computes both operator spaces and every verdict.
pub fn analyze(a: &Algebra) -> Result<Analysis> {
    let (der, preder) = rayon::join(|| derivation_space(a), || prederivation_space(a));
    if !preder.contains_space(&der) {
        return Err(inconsistent("derivation space not contained in pre-derivations"));
    }
    let dv = all_nilpotent(&der)?;
    let pv = all_nilpotent(&preder)?;
    check_witness(a, &dv, is_derivation, "derivation")?;
    check_witness(a, &pv, is_prederivation, "pre-derivation")?;
    if pv.all_nilpotent && !dv.all_nilpotent {
        return Err(inconsistent("strongly nilpotent but not characteristically nilpotent"));
    }
    let family = detect_family(a);
    let report = ClassificationReport {
        tool_version: TOOL_VERSION.to_string(),
        algebra_sha256: algebra_sha256(a),
        dim: a.dim(),
        family: family.as_ref().map(|f| f.tag().to_string()),
        params: family.as_ref().map(|f| f.to_json()),
        lcs_dims: a.lcs_dims(),
        nilpotent: a.is_nilpotent(),
        filiform: a.is_filiform(),
        der_dim: der.dim(),
        preder_dim: preder.dim(),
        der_engel_flag: dv.flag,
        preder_engel_flag: pv.flag,
        characteristically_nilpotent: dv.all_nilpotent,
        strongly_nilpotent: pv.all_nilpotent,
        witness_derivation: dv.witness,
        witness_prederivation: pv.witness,
        cross_check: None,
    };
    Ok(Analysis {
        report,
        der,
        preder,
    })
}

/// [`analyze`] without the spaces.
pub fn classify(a: &Algebra) -> Result<ClassificationReport> {
    Ok(analyze(a)?.report)
}

/// Engel-flag verdict against the symbolic trace oracle for one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub basis_size: usize,
    pub engel: bool,
    /// `None` when the basis exceeds the symbolic limit.
    pub trace: Option<bool>,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.trace.map_or(true, |t| t == self.engel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub derivations: OracleComparison,
    pub prederivations: OracleComparison,
    pub agree: bool,
}

fn compare(s: &OperatorSubspace, engel: bool) -> Result<OracleComparison> {
    let trace = match trace_poly_all_nilpotent(s) {
        Ok(t) => Some(t),
        Err(Error::BasisTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(OracleComparison {
        basis_size: s.dim(),
        engel,
        trace,
    })
}

/// Runs the trace-polynomial oracle on both spaces of an analysis and
/// attaches the comparison to its report.
pub fn cross_check(analysis: &mut Analysis) -> Result<&CrossCheck> {
    let r = &analysis.report;
    let derivations = compare(&analysis.der, r.characteristically_nilpotent)?;
    let prederivations = compare(&analysis.preder, r.strongly_nilpotent)?;
    let agree = derivations.agrees() && prederivations.agrees();
    analysis.report.cross_check = Some(CrossCheck {
        derivations,
        prederivations,
        agree,
    });
    Ok(analysis.report.cross_check.as_ref().expect("just set"))
}
