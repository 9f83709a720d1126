//! Task operations and their results.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use gradhom::dcat::{homology_dims, shift, HomologyDims};
use gradhom::invariants::{
    bass_table, betti_table, depth, ext_dims, id_verdict, is_cohen_macaulay, nu, pd_verdict, ring_depth,
    tor_dims, type_of, FinitenessVerdict, HilbertDims, InvariantTable, Object,
};
use gradhom::oracle::{oracle_invariants, realize, FiniteModule, OracleInvariants};
use gradhom::sdc::{
    dualizing_verdict, gcdim, in_auslander_class, is_g_perfect, semidualizing_certificate, theorem,
    verify_auslander_reiten, verify_betti_bass_convolution, verify_dualizing_criteria, verify_ext_id_descent,
    verify_finite_id_complex, verify_nu_formula, verify_type_formula, AuslanderVerdict, Check, DualizingVerdict,
    GcdimVerdict, HomMode, SdcCertificate, Value, VerificationReport,
};
use gradhom::Field;

use crate::build::Env;
use crate::problem::Task;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// Module or complex.
    Object,
    Module,
    Int,
    Choice(&'static [&'static str]),
}

/// (name, kind, required)
pub type Param = (&'static str, ParamKind, bool);

const X: Param = ("x", ParamKind::Object, true);
const Y: Param = ("y", ParamKind::Object, true);
const C: Param = ("c", ParamKind::Object, true);
const M: Param = ("m", ParamKind::Module, true);

macro_rules! ops {
    ($($v:ident = $name:literal [$($p:expr),*] $(=> $thm:expr)?;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum Op { $($v),* }

        impl Op {
            pub const ALL: &'static [Op] = &[$(Op::$v),*];

            pub fn name(&self) -> &'static str {
                match self { $(Op::$v => $name),* }
            }

            pub fn params(&self) -> &'static [Param] {
                match self { $(Op::$v => &[$($p),*]),* }
            }

            /// Theorem identifier for verifier operations.
            pub fn theorem(&self) -> Option<&'static str> {
                match self { $(Op::$v => { None $(.or(Some($thm)))? }),* }
            }
        }
    };
}

ops! {
    Betti = "betti" [X];
    Bass = "bass" [X];
    Depth = "depth" [X];
    Type = "type" [X];
    Nu = "nu" [M];
    CohenMacaulay = "cohen_macaulay" [X];
    Pd = "pd" [X];
    Id = "id" [X];
    Ext = "ext" [X, Y];
    Tor = "tor" [X, Y];
    Hilbert = "hilbert" [M];
    Homology = "homology" [X];
    Semidualizing = "semidualizing" [C];
    Dualizing = "dualizing" [C];
    Gcdim = "gcdim" [X, C];
    AuslanderClass = "auslander_class" [X, C];
    GPerfect = "g_perfect" [X, C];
    Oracle = "oracle" [M, ("n", ParamKind::Module, false)];
    Properties = "properties" [X];
    VerifyTypeFormula = "verify_type_formula" [("z", ParamKind::Object, true), C] => theorem::TYPE_FORMULA;
    VerifyDualizingCriteria = "verify_dualizing_criteria" [X, C] => theorem::DUALIZING_CRITERIA;
    VerifyFiniteIdComplex = "verify_finite_id_complex" [X] => theorem::FINITE_ID_COMPLEX;
    VerifyExtIdDescent = "verify_ext_id_descent"
        [M, ("n", ParamKind::Module, true), ("tail", ParamKind::Int, false)] => theorem::EXT_ID_DESCENT;
    VerifyAuslanderReiten = "verify_auslander_reiten"
        [M, ("mode", ParamKind::Choice(&["hom-MR", "hom-MM"]), true)] => theorem::AUSLANDER_REITEN;
    VerifyBettiBassConvolution = "verify_betti_bass_convolution" [X, C] => theorem::BETTI_BASS_CONVOLUTION;
    VerifyNuFormula = "verify_nu_formula" [M, ("c", ParamKind::Module, true)] => theorem::NU_FORMULA;
}

impl Op {
    pub fn from_name(s: &str) -> Option<Op> {
        Op::ALL.iter().copied().find(|o| o.name() == s)
    }
}

/// Homology of an object, one entry per degree with nonzero homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub inf: Option<i64>,
    pub sup: Option<i64>,
    pub degrees: BTreeMap<i64, HilbertDims>,
}

impl From<HomologyDims> for HomologySummary {
    fn from(h: HomologyDims) -> Self {
        HomologySummary {
            inf: h.inf,
            sup: h.sup,
            degrees: h
                .degrees
                .into_iter()
                .filter(|d| d.krull_dim.is_some())
                .map(|d| {
                    (
                        d.degree,
                        HilbertDims {
                            length: d.length,
                            krull_dim: d.krull_dim,
                        },
                    )
                })
                .collect(),
        }
    }
}

/// Seeded structural checks on one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub seed: u64,
    pub shift: i64,
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum TaskResult {
    Report(VerificationReport),
    Table(InvariantTable),
    Finiteness(FinitenessVerdict),
    Int(i64),
    Bool(bool),
    Dims(BTreeMap<i64, HilbertDims>),
    Series(BTreeMap<i64, i64>),
    Homology(HomologySummary),
    Certificate(SdcCertificate),
    Dualizing(Box<DualizingVerdict>),
    Gcdim(GcdimVerdict),
    Auslander(AuslanderVerdict),
    Oracle(OracleInvariants),
    Properties(PropertyReport),
    Error(String),
}

fn table_values(t: &InvariantTable) -> BTreeMap<i64, i64> {
    t.values.iter().map(|(&i, &v)| (i, v as i64)).collect()
}

fn check(name: &str, left: Value, right: Value) -> Check {
    let holds = left == right;
    Check {
        name: name.into(),
        left,
        right,
        holds,
    }
}

/// ∂∂ = 0 on the resolution, the shift rules for β, μ and depth, and the
/// Auslander–Buchsbaum and Bass formulas when pd or id is certified.
fn properties<K: Field>(x: &Object<K>, bound: usize, seed: u64) -> Result<PropertyReport, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: i64 = rng.random_range(-3..=3);
    let mut checks = Vec::new();
    let res = x.resolution(bound);
    checks.push(check(
        "∂∂ = 0 on the resolution",
        Value::Bool(res.validate().is_ok()),
        Value::Bool(true),
    ));
    let shifted = Object::Complex(shift(&x.exact_model(), n));
    let (b, bs) = (betti_table(x, bound), betti_table(&shifted, bound));
    let moved = table_values(&b).into_iter().map(|(i, v)| (i + n, v)).collect();
    checks.push(check(
        "β_i(Σⁿ X) = β_{i-n}(X)",
        Value::Table(table_values(&bs)),
        Value::Table(moved),
    ));
    let (m, ms) = (bass_table(x, bound), bass_table(&shifted, bound));
    let common: Vec<i64> = ms.values.keys().copied().filter(|i| m.values.contains_key(&(i + n))).collect();
    let lhs = common.iter().map(|&i| (i, ms.values[&i] as i64)).collect();
    let rhs = common.iter().map(|&i| (i, m.values[&(i + n)] as i64)).collect();
    checks.push(check("μ^i(Σⁿ X) = μ^{i+n}(X)", Value::Table(lhs), Value::Table(rhs)));
    let dx = depth(x).map_err(|e| e.to_string())?;
    let ds = depth(&shifted).map_err(|e| e.to_string())?;
    checks.push(check("depth Σⁿ X = depth X - n", Value::Int(ds), Value::Int(dx - n)));
    let dr = ring_depth(x.ring()).map_err(|e| e.to_string())?;
    if let Some(p) = pd_verdict(x, bound).certified() {
        checks.push(check("pd X = depth R - depth X", Value::Int(p), Value::Int(dr - dx)));
    }
    if let Some(i) = id_verdict(x, bound).certified() {
        let inf = homology_dims(&x.exact_model()).inf.unwrap_or(0);
        checks.push(check("id X = depth R - inf X", Value::Int(i), Value::Int(dr - inf)));
    }
    Ok(PropertyReport { seed, shift: n, checks })
}

fn hilbert_coefficients(hs: &gradhom::groebner::HilbertSeries, lo: i64, hi: i64) -> BTreeMap<i64, i64> {
    hs.coefficients(lo, hi)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (lo + i as i64, c))
        .collect()
}

/// Runs one task. Errors are returned as text and recorded by the caller.
pub fn execute<K: Field>(env: &Env<K>, task: &Task, bound: usize, seed: u64) -> Result<TaskResult, String> {
    let obj = |k: &str| env.object(task.name_arg(k).expect("validated argument"));
    let module = |k: &str| env.module(task.name_arg(k).expect("validated argument"));
    let err = |e: gradhom::Error| e.to_string();
    Ok(match task.op {
        Op::Betti => TaskResult::Table(betti_table(&obj("x")?, bound)),
        Op::Bass => TaskResult::Table(bass_table(&obj("x")?, bound)),
        Op::Depth => TaskResult::Int(depth(&obj("x")?).map_err(err)?),
        Op::Type => TaskResult::Int(type_of(&obj("x")?).map_err(err)? as i64),
        Op::Nu => TaskResult::Int(nu(&module("m")?).map_err(err)? as i64),
        Op::CohenMacaulay => TaskResult::Bool(is_cohen_macaulay(&obj("x")?).map_err(err)?),
        Op::Pd => TaskResult::Finiteness(pd_verdict(&obj("x")?, bound)),
        Op::Id => TaskResult::Finiteness(id_verdict(&obj("x")?, bound)),
        Op::Ext => TaskResult::Dims(ext_dims(&obj("x")?, &obj("y")?, 0, bound as i64)),
        Op::Tor => TaskResult::Dims(tor_dims(&obj("x")?, &obj("y")?, 0, bound as i64)),
        Op::Hilbert => {
            let m = module("m")?;
            let lo = m.gens.twists.iter().copied().min().unwrap_or(0);
            TaskResult::Series(hilbert_coefficients(&m.hilbert_series(), lo, lo + bound as i64))
        }
        Op::Homology => {
            let x = obj("x")?;
            TaskResult::Homology(homology_dims(&x.exact_model()).into())
        }
        Op::Semidualizing => TaskResult::Certificate(semidualizing_certificate(&obj("c")?, bound)),
        Op::Dualizing => TaskResult::Dualizing(Box::new(dualizing_verdict(&obj("c")?, bound))),
        Op::Gcdim => TaskResult::Gcdim(gcdim(&obj("x")?, &obj("c")?, bound).map_err(err)?),
        Op::AuslanderClass => TaskResult::Auslander(in_auslander_class(&obj("x")?, &obj("c")?, bound).map_err(err)?),
        Op::GPerfect => TaskResult::Bool(is_g_perfect(&obj("x")?, &obj("c")?, bound).map_err(err)?),
        Op::Oracle => {
            let m = module("m")?;
            let n = match task.name_arg("n") {
                Some(name) => env.module(name)?,
                None => gradhom::modops::ModulePresentation::ring_module(env.ring.clone()),
            };
            let alg = realize(&env.ring).map_err(err)?;
            let fm = FiniteModule::from_presentation(&alg, &m).map_err(err)?;
            let fnm = FiniteModule::from_presentation(&alg, &n).map_err(err)?;
            TaskResult::Oracle(oracle_invariants(&fm, &fnm, bound))
        }
        Op::Properties => TaskResult::Properties(properties(&obj("x")?, bound, seed)?),
        Op::VerifyTypeFormula => TaskResult::Report(verify_type_formula(&obj("z")?, &obj("c")?, bound)),
        Op::VerifyDualizingCriteria => TaskResult::Report(verify_dualizing_criteria(&obj("x")?, &obj("c")?, bound)),
        Op::VerifyFiniteIdComplex => TaskResult::Report(verify_finite_id_complex(&obj("x")?, bound)),
        Op::VerifyExtIdDescent => {
            let tail = task.int_arg("tail").map(|t| t.max(0) as usize);
            TaskResult::Report(verify_ext_id_descent(&module("m")?, &module("n")?, bound, tail))
        }
        Op::VerifyAuslanderReiten => {
            let mode = match task.name_arg("mode") {
                Some("hom-MM") => HomMode::HomMM,
                _ => HomMode::HomMR,
            };
            TaskResult::Report(verify_auslander_reiten(&module("m")?, mode, bound))
        }
        Op::VerifyBettiBassConvolution => {
            TaskResult::Report(verify_betti_bass_convolution(&obj("x")?, &obj("c")?, bound))
        }
        Op::VerifyNuFormula => TaskResult::Report(verify_nu_formula(&module("m")?, &module("c")?, bound)),
    })
}

