//! Semidualizing and dualizing certificates, G_C-dimension, Auslander
//! class membership and instance verifiers for the type formula, the
//! dualizing criteria, finite injective dimension results, the
//! Auslander–Reiten case, the Betti–Bass convolution and the ν formula.
//!
//! Every verifier returns a [`VerificationReport`] with a four-valued
//! verdict. A hypothesis that could not be established at the bound makes
//! the verdict HYPOTHESES-NOT-MET; one that is only likely makes it
//! UNCERTIFIED. PASS and FAIL are issued only from certified inputs.

mod certify;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::invariants::FinitenessStatus;

pub use certify::{
    dualizing_verdict, gcdim, gcdim_complex, gcdim_module, in_auslander_class, is_g_perfect,
    semidualizing_certificate, semidualizing_certificate_chain,
};
pub use verify::{
    verify_auslander_reiten, verify_betti_bass_convolution, verify_dualizing_criteria,
    verify_ext_id_descent, verify_finite_id_complex, verify_nu_formula, verify_type_formula, HomMode,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value")]
pub enum SdcVerdict {
    SemidualizingUpTo(usize),
    Failed(String),
}

/// Outcome of the homothety and Ext-vanishing checks for C.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdcCertificate {
    pub bound: usize,
    pub homothety_ok: bool,
    pub ext_vanishing_ok: bool,
    pub verdict: SdcVerdict,
}

impl SdcCertificate {
    pub fn ok(&self) -> bool {
        matches!(self.verdict, SdcVerdict::SemidualizingUpTo(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value")]
pub enum DualizingStatus {
    Dualizing,
    NotSemidualizing(String),
    /// Semidualizing, but no vanishing Bass number was seen up to the value.
    InjectiveDimensionUnknown(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualizingVerdict {
    pub certificate: SdcCertificate,
    pub injective_dimension: FinitenessStatus,
    pub status: DualizingStatus,
    /// G_C-dimension of k at the same bound.
    pub gcdim_k: GcdimVerdict,
    /// Dualizing exactly when G_C-dim k is certified finite.
    pub coherent: bool,
}

impl DualizingVerdict {
    pub fn is_dualizing(&self) -> bool {
        self.status == DualizingStatus::Dualizing
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value")]
pub enum GcdimValue {
    FiniteEquals(i64),
    Infinite(String),
    UncertifiedUpTo(usize),
}

/// G_C-dimension together with the quantities it is tied to when finite:
/// `depth R - depth X`, the observed `inf RHom(X, C)` and
/// `depth X - depth C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdimVerdict {
    pub value: GcdimValue,
    pub depth_formula: Option<i64>,
    pub inf_rhom: Option<i64>,
    pub depth_difference: Option<i64>,
}

impl GcdimVerdict {
    pub fn finite(&self) -> Option<i64> {
        match self.value {
            GcdimValue::FiniteEquals(g) => Some(g),
            _ => None,
        }
    }

    /// For a finite value: `g = depth R - depth X` and
    /// `inf RHom(X, C) = depth X - depth C`. Vacuous otherwise.
    pub fn identities_hold(&self) -> bool {
        match self.finite() {
            Some(g) => {
                self.depth_formula == Some(g)
                    && self.inf_rhom.is_some()
                    && self.inf_rhom == self.depth_difference
            }
            None => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value")]
pub enum AuslanderVerdict {
    MemberAtBound(usize),
    NotMember(String),
    Uncertified(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "HYPOTHESES-NOT-MET")]
    HypothesesNotMet,
    #[serde(rename = "UNCERTIFIED")]
    Uncertified,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::HypothesesNotMet => "HYPOTHESES-NOT-MET",
            Verdict::Uncertified => "UNCERTIFIED",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisStatus {
    Met,
    Failed,
    Uncertified,
}

impl HypothesisStatus {
    pub fn from_bool(b: bool) -> Self {
        if b {
            HypothesisStatus::Met
        } else {
            HypothesisStatus::Failed
        }
    }

    /// Certified finite: met; likely finite: uncertified; otherwise the
    /// finiteness hypothesis is not established.
    pub fn from_finiteness(s: &FinitenessStatus) -> Self {
        match s {
            FinitenessStatus::FiniteCertified(_) => HypothesisStatus::Met,
            FinitenessStatus::FiniteLikely(_) => HypothesisStatus::Uncertified,
            FinitenessStatus::UnknownAtLeast(_) => HypothesisStatus::Failed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypothesisStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Value {
    None,
    Int(i64),
    Table(BTreeMap<i64, i64>),
    Bool(bool),
    Finiteness(FinitenessStatus),
    Text(String),
}

/// A secondary identity checked alongside the main one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub left: Value,
    pub right: Value,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub left: Value,
    pub right: Value,
    pub checks: Vec<Check>,
    pub evidence: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub bound: usize,
}

impl VerificationReport {
    pub(crate) fn new(theorem: &str, bound: usize) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            hypotheses: Vec::new(),
            left: Value::None,
            right: Value::None,
            checks: Vec::new(),
            evidence: BTreeMap::new(),
            verdict: Verdict::Uncertified,
            bound,
        }
    }

    pub(crate) fn hyp(&mut self, name: &str, status: HypothesisStatus, detail: impl Into<String>) -> HypothesisStatus {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            status,
            detail: detail.into(),
        });
        status
    }

    pub(crate) fn check(&mut self, name: &str, left: Value, right: Value, holds: bool) -> bool {
        self.checks.push(Check {
            name: name.into(),
            left,
            right,
            holds,
        });
        holds
    }

    /// HYPOTHESES-NOT-MET if any hypothesis failed, UNCERTIFIED if any is
    /// uncertified, `None` when all are met.
    pub(crate) fn gate(&self) -> Option<Verdict> {
        if self.hypotheses.iter().any(|h| h.status == HypothesisStatus::Failed) {
            Some(Verdict::HypothesesNotMet)
        } else if self.hypotheses.iter().any(|h| h.status == HypothesisStatus::Uncertified) {
            Some(Verdict::Uncertified)
        } else {
            None
        }
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Theorem identifiers used in reports and filters.
pub mod theorem {
    pub const TYPE_FORMULA: &str = "type-formula";
    pub const DUALIZING_CRITERIA: &str = "dualizing-criteria";
    pub const FINITE_ID_COMPLEX: &str = "finite-id-complex";
    pub const EXT_ID_DESCENT: &str = "ext-id-descent";
    pub const AUSLANDER_REITEN: &str = "auslander-reiten";
    pub const BETTI_BASS_CONVOLUTION: &str = "betti-bass-convolution";
    pub const NU_FORMULA: &str = "nu-formula";
    pub const ALL: [&str; 7] = [
        TYPE_FORMULA,
        DUALIZING_CRITERIA,
        FINITE_ID_COMPLEX,
        EXT_ID_DESCENT,
        AUSLANDER_REITEN,
        BETTI_BASS_CONVOLUTION,
        NU_FORMULA,
    ];
}
