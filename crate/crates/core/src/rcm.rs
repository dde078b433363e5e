//! Relative Cohen–Macaulay decisions and the structural checks around them.
//!
//! `M` is relative Cohen–Macaulay with respect to an irrelevant ideal `I` when
//! `grade(I, M) = cd(I, M)`; the common value is the relative dimension.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Ideal, Result};
use crate::free::{BihomMatrix, FreeModule, ModuleVector};
use crate::groebner::kernel_of_map;
use crate::invariants::{self, ideal_generators};
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, FreeResolution, PresentedModule};
use crate::ring::BiDegree;

/// Random linear forms tried per regular-element search.
pub const REGULAR_ELEMENT_ATTEMPTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub grade: usize,
    pub cd: usize,
    pub is_rcm: bool,
    pub rdim: Option<usize>,
}

impl IdealReport {
    fn new(grade: usize, cd: usize) -> Self {
        let is_rcm = grade == cd;
        IdealReport { grade, cd, is_rcm, rdim: is_rcm.then_some(grade) }
    }
}

/// A named structural identity: `applicable` says whether its hypothesis
/// holds for this module, `holds` is the verdict (true when not applicable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub applicable: bool,
    pub holds: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCMReport {
    pub dim: usize,
    pub depth: usize,
    pub is_cm: bool,
    pub projective_dimension: usize,
    pub p: IdealReport,
    pub q: IdealReport,
    pub checks: Vec<IdentityCheck>,
}

impl RCMReport {
    pub fn ideal(&self, which: Ideal) -> &IdealReport {
        match which {
            Ideal::P => &self.p,
            Ideal::Q => &self.q,
        }
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn identity_checks(dim: usize, depth: usize, p: &IdealReport, q: &IdealReport) -> Vec<IdentityCheck> {
    let is_cm = depth == dim;
    let mut out = Vec::new();

    // dim M/PM = cd(Q, M) and dim M/QM = cd(P, M)
    let bound_p = dim - q.cd;
    let bound_q = dim - p.cd;
    let ineq = p.grade <= bound_p && q.grade <= bound_q;
    let eq = p.grade == bound_p && q.grade == bound_q;
    out.push(IdentityCheck {
        name: "grade-bound",
        applicable: true,
        holds: ineq && (!is_cm || eq),
        witness: format!(
            "grade(P)={} <= dim-dim M/PM={}, grade(Q)={} <= dim-dim M/QM={}",
            p.grade, bound_p, q.grade, bound_q
        ),
    });

    let both = p.is_rcm && q.is_rcm;
    let sum_ok = !both || p.grade + q.grade == dim;
    out.push(IdentityCheck {
        name: "cm-rcm-symmetry",
        applicable: is_cm,
        holds: !is_cm || (p.is_rcm == q.is_rcm && sum_ok),
        witness: format!(
            "rcm(P)={}, rcm(Q)={}, rdim sum {}",
            p.is_rcm,
            q.is_rcm,
            if both { format!("{}", p.grade + q.grade) } else { String::from("-") }
        ),
    });

    let dsum = p.cd + q.cd;
    out.push(IdentityCheck {
        name: "cm-dimension-sum",
        applicable: is_cm,
        holds: !is_cm || ((p.is_rcm || q.is_rcm) == (dsum == dim)),
        witness: format!("dim M/QM + dim M/PM = {} vs dim {}", dsum, dim),
    });

    out.push(IdentityCheck {
        name: "rdim-plus-cd",
        applicable: q.is_rcm,
        holds: !q.is_rcm || q.grade + p.cd == dim,
        witness: format!("rdim(Q)+cd(P) = {} vs dim {}", q.grade + p.cd, dim),
    });

    out.push(IdentityCheck {
        name: "rcm-both-cm",
        applicable: both,
        holds: !both || is_cm,
        witness: format!("depth {} vs dim {}", depth, dim),
    });
    out
}

fn grade_or_zero(which: Ideal, module: &PresentedModule) -> Result<usize> {
    match invariants::grade(which, module) {
        Err(Error::GradeInfinite) => Err(Error::ZeroModule),
        r => r,
    }
}

/// Full relative Cohen–Macaulay report for a nonzero module.
pub fn rcm_report(module: &PresentedModule) -> Result<RCMReport> {
    let res = free_resolution(module)?;
    rcm_report_with(module, &res)
}

pub fn rcm_report_with(module: &PresentedModule, res: &FreeResolution) -> Result<RCMReport> {
    let dim = invariants::dimension_from(res).ok_or(Error::ZeroModule)?;
    let depth = invariants::depth_from(res)?;
    let p = IdealReport::new(
        grade_or_zero(Ideal::P, module)?,
        invariants::cohomological_dimension(Ideal::P, module)?,
    );
    let q = IdealReport::new(
        grade_or_zero(Ideal::Q, module)?,
        invariants::cohomological_dimension(Ideal::Q, module)?,
    );
    let checks = identity_checks(dim, depth, &p, &q);
    Ok(RCMReport { dim, depth, is_cm: depth == dim, projective_dimension: res.length(), p, q, checks })
}

/// Whether multiplication by the bihomogeneous `z` is injective on `M`.
pub fn is_nonzerodivisor(module: &PresentedModule, z: &Polynomial) -> Result<bool> {
    Ok(colon_generators(module, z)?.is_empty())
}

/// Generators of `(0 :_M z)` that are nonzero in `M`.
fn colon_generators(module: &PresentedModule, z: &Polynomial) -> Result<Vec<ModuleVector>> {
    let ring = *module.ring();
    let mult = BihomMatrix::scalar(ring, module.ambient().clone(), z)?;
    let pre = kernel_of_map(&mult, Some(module.relations()))?;
    let gb = module.groebner();
    Ok(pre.into_columns().into_iter().filter(|v| !gb.contains(v)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularElementCertificate {
    pub z: Polynomial,
    /// `z = Σ coefficients[i] y_i`.
    pub coefficients: Vec<u32>,
    pub seed: u64,
    pub attempts: usize,
    /// Generators of `(0 :_M z)` examined; all reduced to zero in `M`.
    pub colon_generators_checked: usize,
    /// `dim M/(P + z)M`.
    pub quotient_dimension: usize,
}

/// Searches random `z = Σ c_i y_i` with `(0 :_M z) = 0` and
/// `dim M/(P + z)M = cd(Q, M) - 1`, for `M` relative Cohen–Macaulay with
/// respect to `Q` of positive relative dimension.
pub fn find_regular_element(module: &PresentedModule, seed: u64) -> Result<RegularElementCertificate> {
    let report = rcm_report(module)?;
    if !report.q.is_rcm {
        return Err(Error::NotRelativeCm(Ideal::Q));
    }
    if report.q.grade == 0 {
        return Err(Error::Precondition("relative dimension is 0: no regular element of degree (0,1)".into()));
    }
    search_regular_element(module, report.q.cd, seed)
}

fn search_regular_element(module: &PresentedModule, cd_q: usize, seed: u64) -> Result<RegularElementCertificate> {
    let ring = *module.ring();
    let f = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = ideal_generators(&ring, Ideal::P);
    for attempt in 1..=REGULAR_ELEMENT_ATTEMPTS {
        let coefficients: Vec<u32> = (0..ring.n()).map(|_| rng.next_u32() % f.modulus()).collect();
        if coefficients.iter().all(|&c| c == 0) {
            continue;
        }
        let z = Polynomial::from_terms(f, coefficients.iter().enumerate().map(|(i, &c)| (ring.y(i), c)));
        let colon = kernel_of_map(&BihomMatrix::scalar(ring, module.ambient().clone(), &z)?, Some(module.relations()))?;
        let gb = module.groebner();
        if !colon.columns().iter().all(|v| gb.contains(v)) {
            continue;
        }
        xs.push(z.clone());
        let quotient = module.quotient_by_elements(&xs)?;
        xs.pop();
        let qd = invariants::dimension(&quotient);
        let quotient_dimension = match qd {
            Ok(d) => d,
            Err(Error::ZeroModule) => continue,
            Err(e) => return Err(e),
        };
        if quotient_dimension + 1 != cd_q {
            continue;
        }
        return Ok(RegularElementCertificate {
            z,
            coefficients,
            seed,
            attempts: attempt,
            colon_generators_checked: colon.ncols(),
            quotient_dimension,
        });
    }
    Err(Error::SearchExhausted { attempts: REGULAR_ELEMENT_ATTEMPTS })
}

/// `M / zM` for `z` of bidegree `(0,1)`.
pub fn quotient_by_element(module: &PresentedModule, z: &Polynomial) -> Result<PresentedModule> {
    if z.bidegree() != Some(BiDegree::new(0, 1)) {
        return Err(Error::Precondition("element must have bidegree (0,1)".into()));
    }
    module.quotient_by_elements(core::slice::from_ref(z))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentChain {
    /// `reports[0]` describes `M`, `reports[s]` the quotient after `s` steps.
    pub reports: Vec<RCMReport>,
    pub certificates: Vec<RegularElementCertificate>,
}

/// Quotients by regular linear forms in `y` down to relative dimension 0,
/// asserting that each step lowers relative dimension, dimension and
/// `grade(Q)` by one while keeping `cd(P)`. Step `s` uses seed `seed + s`.
pub fn descent_chain(module: &PresentedModule, seed: u64) -> Result<DescentChain> {
    let first = rcm_report(module)?;
    if !first.q.is_rcm {
        return Err(Error::NotRelativeCm(Ideal::Q));
    }
    let mut reports = alloc::vec![first];
    let mut certificates = Vec::new();
    let mut current = module.clone();
    loop {
        let last = reports.last().unwrap();
        if last.q.grade == 0 {
            break;
        }
        let step = certificates.len() as u64;
        let cert = search_regular_element(&current, last.q.cd, seed.wrapping_add(step))?;
        current = quotient_by_element(&current, &cert.z)?;
        let next = rcm_report(&current)?;
        let ok = next.q.is_rcm
            && next.q.grade + 1 == last.q.grade
            && next.dim + 1 == last.dim
            && next.p.cd == last.p.cd;
        if !ok {
            return Err(Error::Internal(format!(
                "descent step {}: (rdim, dim, grade Q, cd P) went from ({:?}, {}, {}, {}) to ({:?}, {}, {}, {})",
                step + 1,
                last.q.rdim,
                last.dim,
                last.q.grade,
                last.p.cd,
                next.q.rdim,
                next.dim,
                next.q.grade,
                next.p.cd
            )));
        }
        certificates.push(cert);
        reports.push(next);
    }
    Ok(DescentChain { reports, certificates })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalRcmVerdict {
    /// Relative Cohen–Macaulay w.r.t. `Q` with `rdim = n`, from grade and cd.
    pub maximal_q: bool,
    /// `y_1, ..., y_n` is an `M`-sequence, checked directly.
    pub y_sequence: bool,
    /// Relative Cohen–Macaulay w.r.t. `P` with `rdim = m`.
    pub maximal_p: bool,
    pub projective_dimension: usize,
    /// Maximal w.r.t. both ideals and `pd M = 0`.
    pub free: bool,
}

/// `g_1, ..., g_t` is an `M`-sequence.
pub fn is_regular_sequence(module: &PresentedModule, seq: &[Polynomial]) -> Result<bool> {
    let mut current = module.clone();
    for g in seq {
        if !is_nonzerodivisor(&current, g)? {
            return Ok(false);
        }
        current = current.quotient_by_elements(core::slice::from_ref(g))?;
    }
    Ok(!current.is_zero())
}

pub fn maximal_rcm_check(module: &PresentedModule) -> Result<MaximalRcmVerdict> {
    let ring = *module.ring();
    let report = rcm_report(module)?;
    let maximal_q = report.q.is_rcm && report.q.grade == ring.n();
    let maximal_p = report.p.is_rcm && report.p.grade == ring.m();
    let y_sequence = is_regular_sequence(module, &ideal_generators(&ring, Ideal::Q))?;
    let pd = report.projective_dimension;
    Ok(MaximalRcmVerdict {
        maximal_q,
        y_sequence,
        maximal_p,
        projective_dimension: pd,
        free: maximal_p && maximal_q && pd == 0,
    })
}

/// `Ext^c(M, S(-m,-n))`, `c = pd M`, for Cohen–Macaulay `M`: the cokernel of
/// the transpose of the last map of the minimal resolution. The dual of a
/// summand `S(-a,-b)` is `S(a-m, b-n)`.
pub fn canonical_dual(module: &PresentedModule) -> Result<PresentedModule> {
    let res = free_resolution(module)?;
    if res.modules()[0].is_zero() {
        return Err(Error::ZeroModule);
    }
    let dim = invariants::dimension_from(&res).ok_or(Error::ZeroModule)?;
    if invariants::depth_from(&res)? != dim {
        return Err(Error::NotCohenMacaulay);
    }
    let ring = *module.ring();
    let (m, n) = (ring.m() as i32, ring.n() as i32);
    let dual = |f: &FreeModule| {
        FreeModule::new(f.twists().iter().map(|t| BiDegree::new(m - t.dx, n - t.dy)).collect())
    };
    let c = res.length();
    let top = res.modules()[c].clone();
    let ambient = dual(&top);
    let cols = match res.map(c) {
        None => Vec::new(),
        Some(phi) => (0..phi.nrows())
            .map(|u| ModuleVector::from_entries((0..phi.ncols()).map(|v| phi.entry(u, v).clone()).collect()))
            .collect(),
    };
    PresentedModule::from_columns(ring, ambient, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn mono(r: &Ring, e: &[u16]) -> Polynomial {
        Polynomial::monomial(r.monomial_from_slice(e))
    }

    fn ex35() -> PresentedModule {
        let r = Ring::standard(2, 2);
        PresentedModule::cyclic(r, &[mono(&r, &[2, 0, 0, 0]), mono(&r, &[1, 1, 0, 0])]).unwrap()
    }

    fn ex36(m: usize) -> PresentedModule {
        let r = Ring::standard(m, 1);
        let mut gens: Vec<Polynomial> = (0..m).map(|i| Polynomial::monomial(r.x(i).mul(&r.y(0)))).collect();
        gens.push(Polynomial::monomial(r.y(0).mul(&r.y(0))));
        PresentedModule::cyclic(r, &gens).unwrap()
    }

    #[test]
    fn example_reports() {
        let r = rcm_report(&ex35()).unwrap();
        assert!(r.q.is_rcm && r.q.rdim == Some(2));
        assert!(!r.p.is_rcm);
        assert!(r.all_checks_hold());

        let r = rcm_report(&ex36(2)).unwrap();
        assert!(r.q.is_rcm && r.q.rdim == Some(0));
        assert!(!r.p.is_rcm);
        assert_eq!((r.p.grade, r.p.cd), (0, 2));
        assert!(r.all_checks_hold());

        let ring = Ring::standard(1, 1);
        let h = PresentedModule::cyclic(ring, &[mono(&ring, &[1, 1])]).unwrap();
        let r = rcm_report(&h).unwrap();
        assert!(r.is_cm);
        assert!(!r.q.is_rcm);
        assert_eq!((r.q.grade, r.q.cd), (0, 1));
        assert!(r.all_checks_hold());
    }

    #[test]
    fn regular_elements() {
        let cert = find_regular_element(&ex35(), 1).unwrap();
        assert_eq!(cert.z.bidegree(), Some(BiDegree::new(0, 1)));
        assert!(is_nonzerodivisor(&ex35(), &cert.z).unwrap());
        let r = Ring::standard(1, 2);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        assert!(find_regular_element(&s, 0).is_ok());
        assert!(matches!(find_regular_element(&ex36(1), 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn descent() {
        let chain = descent_chain(&ex35(), 7).unwrap();
        let dims: Vec<usize> = chain.reports.iter().map(|r| r.dim).collect();
        assert_eq!(dims, alloc::vec![3, 2, 1]);
        assert_eq!(chain.certificates.len(), 2);
        assert_eq!(descent_chain(&ex36(2), 0).unwrap().certificates.len(), 0);
        let r = Ring::standard(1, 2);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        let chain = descent_chain(&s, 3).unwrap();
        assert_eq!(chain.reports.last().unwrap().q.rdim, Some(0));
        assert_eq!(chain.certificates.len(), 2);
    }

    #[test]
    fn descent_is_deterministic() {
        assert_eq!(descent_chain(&ex35(), 11).unwrap(), descent_chain(&ex35(), 11).unwrap());
    }

    #[test]
    fn quotient_by_y() {
        let r = Ring::standard(1, 1);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        let q = quotient_by_element(&s, &Polynomial::monomial(r.y(0))).unwrap();
        assert_eq!(invariants::dimension(&q).unwrap(), 1);
        assert!(quotient_by_element(&s, &Polynomial::monomial(r.x(0))).is_err());
        let q = quotient_by_element(&ex35(), &Polynomial::monomial(Ring::standard(2, 2).y(0))).unwrap();
        assert_eq!(rcm_report(&q).unwrap().q.rdim, Some(1));
    }

    #[test]
    fn maximality() {
        let r = Ring::standard(2, 2);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        let v = maximal_rcm_check(&s).unwrap();
        assert!(v.maximal_q && v.maximal_p && v.y_sequence && v.free);

        let r1 = PresentedModule::cyclic(r, &[mono(&r, &[2, 0, 0, 0])]).unwrap();
        let v = maximal_rcm_check(&r1).unwrap();
        assert!(v.maximal_q && v.y_sequence && !v.free);

        let v = maximal_rcm_check(&ex36(1)).unwrap();
        assert!(!v.maximal_q && !v.y_sequence);
    }

    #[test]
    fn canonical_duals() {
        let r = Ring::standard(1, 1);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        let d = canonical_dual(&s).unwrap();
        assert_eq!(d.ambient().twists(), &[BiDegree::new(1, 1)]);

        let h = PresentedModule::cyclic(r, &[mono(&r, &[1, 1])]).unwrap();
        let d = canonical_dual(&h).unwrap();
        assert_eq!(d.ambient().twists(), &[BiDegree::new(0, 0)]);
        assert_eq!(d.relations().ncols(), 1);
        assert_eq!(invariants::hilbert_series(&d).unwrap(), invariants::hilbert_series(&h).unwrap());

        let r2 = Ring::standard(2, 2);
        let sp = PresentedModule::cyclic(r2, &ideal_generators(&r2, Ideal::P)).unwrap();
        let d = canonical_dual(&sp).unwrap();
        let (a, b) = (rcm_report(&sp).unwrap(), rcm_report(&d).unwrap());
        assert_eq!((a.p.rdim, a.q.rdim), (b.p.rdim, b.q.rdim));
        assert_eq!(b.q.rdim, Some(2));

        assert_eq!(canonical_dual(&ex36(1)), Err(Error::NotCohenMacaulay));
    }
}
