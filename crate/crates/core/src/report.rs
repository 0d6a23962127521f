//! Serializable summaries of a classification and of a normal form.

use serde::{Deserialize, Serialize};

use crate::classifier::{analyze_pair, Analysis, Certificate, VerdictKind};
use crate::collinearity::{Orientation, ZSet};
use crate::error::Result;
use crate::invariants::{normal_form, CaseTag, SystemPair};
use crate::linalg2::Mat2;
use crate::tolerance::Tolerances;
use crate::VERSION;

/// A system description: two row-major 2×2 matrices and an optional label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(rename = "A")]
    pub a: [[f64; 2]; 2],
    #[serde(rename = "B")]
    pub b: [[f64; 2]; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl InputDocument {
    pub fn pair(&self) -> Result<SystemPair> {
        Ok(SystemPair::new(Mat2::from_rows(self.a)?, Mat2::from_rows(self.b)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub eta: f64,
    pub rho: f64,
    pub k: f64,
    pub delta: f64,
    pub delta_sign: i8,
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    #[serde(rename = "Delta_sign")]
    pub big_delta_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub label: Option<String>,
    /// The second input matrix is the nondiagonalizable one.
    pub swapped: bool,
    pub invariants: Option<InvariantSummary>,
    pub case: Option<CaseTag>,
    pub orientation: Option<Orientation>,
    pub slopes: Option<ZSet>,
    pub alpha_plus: Option<f64>,
    pub alpha_minus: Option<f64>,
    pub verdict: VerdictKind,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
    pub version: String,
    pub tolerances: Tolerances,
}

impl Report {
    pub fn from_analysis(label: Option<String>, analysis: &Analysis, tol: &Tolerances) -> Report {
        let nf = analysis.nf.as_ref();
        let data = analysis.collinearity.as_ref();
        let invariants = match (nf, data) {
            (Some(nf), Some(d)) => Some(InvariantSummary {
                eta: nf.inv.eta,
                rho: nf.inv.rho,
                k: nf.inv.k,
                delta: nf.inv.delta,
                delta_sign: nf.inv.delta_sign,
                big_delta: d.big_delta,
                big_delta_sign: d.big_delta_sign,
            }),
            _ => None,
        };
        Report {
            label,
            swapped: nf.is_some_and(|n| n.swapped),
            invariants,
            case: nf.map(|n| n.case),
            orientation: data.map(|d| d.orientation),
            slopes: data.map(|d| d.zset),
            alpha_plus: data.and_then(|d| d.alpha_plus),
            alpha_minus: data.and_then(|d| d.alpha_minus),
            verdict: analysis.verdict.kind,
            certificate: analysis.verdict.certificate.clone(),
            warnings: analysis.verdict.warnings.clone(),
            version: VERSION.to_string(),
            tolerances: *tol,
        }
    }
}

/// Classify a document and summarize the result.
pub fn classify_document(doc: &InputDocument, tol: &Tolerances) -> Result<Report> {
    let analysis = analyze_pair(&doc.pair()?, tol)?;
    Ok(Report::from_analysis(doc.label.clone(), &analysis, tol))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalFormReport {
    pub label: Option<String>,
    pub case: CaseTag,
    pub swapped: bool,
    pub eta: f64,
    pub rho: f64,
    pub k: f64,
    pub delta: f64,
    pub tau: f64,
    #[serde(rename = "T")]
    pub t: [[f64; 2]; 2],
    #[serde(rename = "A_nf")]
    pub a_nf: [[f64; 2]; 2],
    #[serde(rename = "B_nf")]
    pub b_nf: [[f64; 2]; 2],
    /// `‖T⁻¹(A/τ)T − A_nf‖` and the same for `B`, max-entry norm.
    pub residual_a: f64,
    pub residual_b: f64,
    pub warnings: Vec<String>,
    pub version: String,
    pub tolerances: Tolerances,
}

pub fn normal_form_document(doc: &InputDocument, tol: &Tolerances) -> Result<NormalFormReport> {
    let pair = doc.pair()?;
    let nf = normal_form(&pair, tol)?;
    let (residual_a, residual_b) = nf.residuals_user(&pair);
    Ok(NormalFormReport {
        label: doc.label.clone(),
        case: nf.case,
        swapped: nf.swapped,
        eta: nf.inv.eta,
        rho: nf.inv.rho,
        k: nf.inv.k,
        delta: nf.inv.delta,
        tau: nf.tau,
        t: nf.t.rows(),
        a_nf: nf.a_nf.rows(),
        b_nf: nf.b_nf.rows(),
        residual_a,
        residual_b,
        warnings: nf.notes.iter().map(|n| n.message()).collect(),
        version: VERSION.to_string(),
        tolerances: *tol,
    })
}
