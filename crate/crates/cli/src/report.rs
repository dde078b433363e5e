//! Serializable reports and their text rendering.
//!
//! Every report is built as a JSON value first; the text form is a plain
//! rendering of that value, so both carry exactly the same numbers.

use rcm_core::invariants::HilbertSeries;
use rcm_core::local_cohomology::{KxModule, ComponentResolution};
use rcm_core::oracle::CrossCheckReport;
use rcm_core::rcm::{DescentChain, IdealReport, MaximalRcmVerdict, RCMReport, RegularElementCertificate};
use rcm_core::{BihomMatrix, FreeModule, FreeResolution, Result};
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealJson {
    pub grade: usize,
    pub cd: usize,
    pub rcm: bool,
    pub rdim: Option<usize>,
}

impl From<&IdealReport> for IdealJson {
    fn from(r: &IdealReport) -> Self {
        IdealJson { grade: r.grade, cd: r.cd, rcm: r.is_rcm, rdim: r.rdim }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub applicable: bool,
    pub holds: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertJson {
    pub shift: i32,
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
}

impl From<&HilbertSeries> for HilbertJson {
    fn from(h: &HilbertSeries) -> Self {
        HilbertJson { shift: h.shift, numerator: h.numerator.clone(), denominator_exponent: h.denominator_exponent }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub dim: usize,
    pub depth: usize,
    pub cohen_macaulay: bool,
    pub projective_dimension: usize,
    pub multiplicity: Option<u64>,
    pub regularity: Option<i32>,
    pub hilbert: HilbertJson,
    pub betti: Vec<usize>,
    #[serde(rename = "P")]
    pub p: IdealJson,
    #[serde(rename = "Q")]
    pub q: IdealJson,
    pub checks: Vec<CheckJson>,
}

impl AnalyzeReport {
    pub fn new(report: &RCMReport, res: &FreeResolution) -> Self {
        let hs = HilbertSeries::from_resolution(res);
        AnalyzeReport {
            dim: report.dim,
            depth: report.depth,
            cohen_macaulay: report.is_cm,
            projective_dimension: report.projective_dimension,
            multiplicity: hs.multiplicity(),
            regularity: rcm_core::invariants::regularity_from(res),
            hilbert: (&hs).into(),
            betti: res.betti(),
            p: (&report.p).into(),
            q: (&report.q).into(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.into(),
                    applicable: c.applicable,
                    holds: c.holds,
                    witness: c.witness.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub rcm: bool,
    pub rdim: Option<usize>,
}

impl From<&IdealReport> for Verdict {
    fn from(r: &IdealReport) -> Self {
        Verdict { rcm: r.is_rcm, rdim: r.rdim }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RcmVerdict {
    #[serde(rename = "Q")]
    pub q: Verdict,
    #[serde(rename = "P")]
    pub p: Verdict,
}

impl RcmVerdict {
    pub fn new(report: &RCMReport) -> Self {
        RcmVerdict { q: (&report.q).into(), p: (&report.p).into() }
    }

    pub fn text(&self) -> String {
        let part = |r: &Verdict| match (r.rcm, r.rdim) {
            (true, Some(d)) => format!("yes, rdim {d}"),
            _ => "no".to_string(),
        };
        format!("RCM w.r.t. Q: {}; w.r.t. P: {}\n", part(&self.q), part(&self.p))
    }
}

/// Entries of a matrix as strings, `rows x cols`.
pub fn matrix_strings(m: &BihomMatrix) -> Vec<Vec<String>> {
    let ring = m.ring();
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m.entry(r, c).display(ring).to_string()).collect()).collect()
}

fn twists(f: &FreeModule) -> Vec<[i32; 2]> {
    f.twists().iter().map(|t| [t.dx, t.dy]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcRecord {
    pub j: i32,
    pub i: usize,
    pub generators: usize,
    pub relations: usize,
    pub generator_degrees: Vec<i32>,
    pub relation_matrix: Vec<Vec<String>>,
    pub reg: Option<i32>,
    pub mu: usize,
    pub multiplicity: Option<u64>,
    pub dim: Option<usize>,
}

impl LcRecord {
    pub fn new(i: usize, j: i32, h: &KxModule) -> Result<Self> {
        let pres = h.presentation();
        let res = h.resolution()?;
        let hs = HilbertSeries::from_resolution(&res);
        Ok(LcRecord {
            j,
            i,
            generators: pres.ambient().rank(),
            relations: pres.relations().ncols(),
            generator_degrees: pres.ambient().twists().iter().map(|t| t.dx).collect(),
            relation_matrix: matrix_strings(pres.relations()),
            reg: rcm_core::invariants::regularity_from(&res),
            mu: res.modules()[0].rank(),
            multiplicity: hs.multiplicity(),
            dim: hs.dimension(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionJson {
    pub length: usize,
    pub betti: Vec<usize>,
    pub twists: Vec<Vec<[i32; 2]>>,
    pub maps: Vec<Vec<Vec<String>>>,
}

impl From<&FreeResolution> for ResolutionJson {
    fn from(r: &FreeResolution) -> Self {
        ResolutionJson {
            length: r.length(),
            betti: r.betti(),
            twists: r.modules().iter().map(twists).collect(),
            maps: r.maps().iter().map(matrix_strings).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentResolutionJson {
    pub q: usize,
    pub j: i32,
    pub kernel_rank: usize,
    pub kernel_free: bool,
    pub kernel_generators: Vec<Vec<String>>,
    pub resolution: ResolutionJson,
}

impl From<&ComponentResolution> for ComponentResolutionJson {
    fn from(t: &ComponentResolution) -> Self {
        ComponentResolutionJson {
            q: t.q,
            j: t.j,
            kernel_rank: t.kernel_generators.ncols(),
            kernel_free: t.kernel_is_free(),
            kernel_generators: matrix_strings(&t.kernel_generators),
            resolution: (&t.resolution).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MismatchJson {
    pub k: i32,
    pub j: i32,
    pub i: usize,
    pub pipeline_dim: u64,
    pub oracle_dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckJson {
    pub mismatch_count: usize,
    pub checked: usize,
    pub k_window: [i32; 2],
    pub j_window: [i32; 2],
    pub mismatches: Vec<MismatchJson>,
}

impl From<&CrossCheckReport> for CrossCheckJson {
    fn from(r: &CrossCheckReport) -> Self {
        CrossCheckJson {
            mismatch_count: r.mismatches.len(),
            checked: r.checked,
            k_window: [r.k_window.0, r.k_window.1],
            j_window: [r.j_window.0, r.j_window.1],
            mismatches: r
                .mismatches
                .iter()
                .map(|m| MismatchJson { k: m.k, j: m.j, i: m.i, pipeline_dim: m.pipeline_dim, oracle_dim: m.oracle_dim })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub z: String,
    pub coefficients: Vec<u32>,
    pub seed: u64,
    pub attempts: usize,
    pub colon_generators_checked: usize,
    pub quotient_dimension: usize,
}

impl CertificateJson {
    pub fn new(c: &RegularElementCertificate, ring: &rcm_core::Ring) -> Self {
        CertificateJson {
            z: c.z.display(ring).to_string(),
            coefficients: c.coefficients.clone(),
            seed: c.seed,
            attempts: c.attempts,
            colon_generators_checked: c.colon_generators_checked,
            quotient_dimension: c.quotient_dimension,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentStepJson {
    pub rdim_q: Option<usize>,
    pub dim: usize,
    pub grade_q: usize,
    pub cd_p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentJson {
    pub steps: Vec<DescentStepJson>,
    pub certificates: Vec<CertificateJson>,
}

impl DescentJson {
    pub fn new(chain: &DescentChain, ring: &rcm_core::Ring) -> Self {
        DescentJson {
            steps: chain
                .reports
                .iter()
                .map(|r| DescentStepJson { rdim_q: r.q.rdim, dim: r.dim, grade_q: r.q.grade, cd_p: r.p.cd })
                .collect(),
            certificates: chain.certificates.iter().map(|c| CertificateJson::new(c, ring)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalJson {
    pub maximal_q: bool,
    pub y_sequence: bool,
    pub maximal_p: bool,
    pub projective_dimension: usize,
    pub free: bool,
}

impl From<&MaximalRcmVerdict> for MaximalJson {
    fn from(v: &MaximalRcmVerdict) -> Self {
        MaximalJson {
            maximal_q: v.maximal_q,
            y_sequence: v.y_sequence,
            maximal_p: v.maximal_p,
            projective_dimension: v.projective_dimension,
            free: v.free,
        }
    }
}

/// Renders a JSON value as indented `key: value` lines.
pub fn render_text(v: &Value) -> String {
    let mut s = String::new();
    render(v, 0, &mut s);
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.is_array() && scalar(x).is_some()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap());
        }
    }
}
