//! Acceptance criteria over the fixtures and the built-in corpus.
//!
//! Every criterion produces a [`CriterionOutcome`]; the JSON form of a
//! [`SuiteReport`] leaves out wall-clock timings so that reruns with the
//! same seed are byte-identical.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rcm_core::corpus::{corpus, CorpusEntry};
use rcm_core::local_cohomology::{
    component_resolution_from, default_j_window, default_k_window, lc_component_from, regularity_bound,
};
use rcm_core::oracle::{cross_check_with, strand_invariants};
use rcm_core::rcm::{descent_chain, maximal_rcm_check, rcm_report_with, RCMReport, REGULAR_ELEMENT_ATTEMPTS};
use rcm_core::{free_resolution, Error, FreeResolution, PresentedModule, PrimeField};
use serde::Serialize;

use crate::format::parse_module_file;

pub const FIXTURE_EX35: &str = include_str!("../fixtures/ex35.mod");
pub const FIXTURE_EX36: [&str; 3] = [
    include_str!("../fixtures/ex36_1.mod"),
    include_str!("../fixtures/ex36_2.mod"),
    include_str!("../fixtures/ex36_3.mod"),
];

pub const FIXTURE_TIME_LIMIT: Duration = Duration::from_secs(5);
pub const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(120);
/// Minimum number of relative Cohen-Macaulay (w.r.t. `Q`) entries for the
/// dimension identity.
pub const MIN_RCM_ENTRIES: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub number: u32,
    pub title: String,
    pub passed: bool,
    pub summary: String,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub field: u32,
    pub seed: u64,
    pub criteria: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("suite report serializes");
        s.push('\n');
        s
    }

    /// One line per criterion, followed by indented failure details.
    pub fn lines(&self) -> String {
        let mut s = String::new();
        for c in &self.criteria {
            let _ = writeln!(
                s,
                "criterion {:>2}: {} {} ({}; {:.2}s)",
                c.number,
                if c.passed { "PASS" } else { "FAIL" },
                c.title,
                c.summary,
                c.elapsed.as_secs_f64()
            );
            for f in &c.failures {
                let _ = writeln!(s, "    {f}");
            }
        }
        s
    }
}

struct Analyzed {
    entry: CorpusEntry,
    res: FreeResolution,
    report: RCMReport,
}

impl Analyzed {
    fn name(&self) -> &str {
        &self.entry.name
    }

    fn module(&self) -> &PresentedModule {
        &self.entry.module
    }

    fn rdim_q(&self) -> Option<usize> {
        self.report.q.rdim
    }
}

fn analyze_corpus(field: PrimeField) -> Result<Vec<Analyzed>, String> {
    corpus(field)
        .into_iter()
        .map(|entry| {
            let res = free_resolution(&entry.module).map_err(|e| format!("{}: {e}", entry.name))?;
            let report = rcm_report_with(&entry.module, &res).map_err(|e| format!("{}: {e}", entry.name))?;
            Ok(Analyzed { entry, res, report })
        })
        .collect()
}

struct Tally {
    failures: Vec<String>,
    checked: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { failures: Vec::new(), checked: 0 }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn error(&mut self, who: &str, e: Error) {
        self.checked += 1;
        self.failures.push(format!("{who}: {e}"));
    }

    fn finish(self, number: u32, title: &str, summary: String, start: Instant) -> CriterionOutcome {
        CriterionOutcome {
            number,
            title: title.into(),
            passed: self.failures.is_empty(),
            summary,
            failures: self.failures,
            elapsed: start.elapsed(),
        }
    }
}

struct FixtureValues {
    dim: usize,
    depth: usize,
    grade_p: usize,
    cd_p: usize,
    grade_q: usize,
    cd_q: usize,
    rcm_q: bool,
    rdim_q: Option<usize>,
    rcm_p: bool,
}

fn fixture_values(text: &str, field: PrimeField) -> Result<(FixtureValues, Duration), String> {
    let start = Instant::now();
    let m = parse_module_file(text, Some(field.modulus())).map_err(|e| e.to_string())?;
    let res = free_resolution(&m).map_err(|e| e.to_string())?;
    let r = rcm_report_with(&m, &res).map_err(|e| e.to_string())?;
    Ok((
        FixtureValues {
            dim: r.dim,
            depth: r.depth,
            grade_p: r.p.grade,
            cd_p: r.p.cd,
            grade_q: r.q.grade,
            cd_q: r.q.cd,
            rcm_q: r.q.is_rcm,
            rdim_q: r.q.rdim,
            rcm_p: r.p.is_rcm,
        },
        start.elapsed(),
    ))
}

fn compare(t: &mut Tally, who: &str, pairs: &[(&str, String, String)]) {
    for (name, want, got) in pairs {
        t.check(want == got, || format!("{who}: {name} expected {want}, got {got}"));
    }
}

fn criterion_1(field: PrimeField) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    match fixture_values(FIXTURE_EX35, field) {
        Ok((v, elapsed)) => {
            compare(
                &mut t,
                "ex35",
                &[
                    ("dim", "3".into(), v.dim.to_string()),
                    ("depth", "2".into(), v.depth.to_string()),
                    ("grade(P)", "0".into(), v.grade_p.to_string()),
                    ("cd(P)", "1".into(), v.cd_p.to_string()),
                    ("grade(Q)", "2".into(), v.grade_q.to_string()),
                    ("cd(Q)", "2".into(), v.cd_q.to_string()),
                    ("rcm(Q)", "true".into(), v.rcm_q.to_string()),
                    ("rdim(Q)", "Some(2)".into(), format!("{:?}", v.rdim_q)),
                    ("rcm(P)", "false".into(), v.rcm_p.to_string()),
                ],
            );
            t.check(elapsed < FIXTURE_TIME_LIMIT, || format!("ex35: took {:.2}s", elapsed.as_secs_f64()));
        }
        Err(e) => t.failures.push(format!("ex35: {e}")),
    }
    let summary = format!("{} values checked", t.checked);
    t.finish(1, "ideal-in-x fixture", summary, start)
}

fn criterion_2(field: PrimeField) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for (idx, text) in FIXTURE_EX36.iter().enumerate() {
        let m = idx + 1;
        let who = format!("ex36_{m}");
        match fixture_values(text, field) {
            Ok((v, elapsed)) => {
                compare(
                    &mut t,
                    &who,
                    &[
                        ("dim", m.to_string(), v.dim.to_string()),
                        ("depth", "0".into(), v.depth.to_string()),
                        ("grade(Q)", "0".into(), v.grade_q.to_string()),
                        ("cd(Q)", "0".into(), v.cd_q.to_string()),
                        ("cd(P)", m.to_string(), v.cd_p.to_string()),
                        ("rcm(Q)", "true".into(), v.rcm_q.to_string()),
                        ("rcm(P)", "false".into(), v.rcm_p.to_string()),
                    ],
                );
                t.check(elapsed < FIXTURE_TIME_LIMIT, || format!("{who}: took {:.2}s", elapsed.as_secs_f64()));
            }
            Err(e) => t.failures.push(format!("{who}: {e}")),
        }
    }
    let summary = format!("{} values checked over m = 1, 2, 3", t.checked);
    t.finish(2, "nilpotent-y fixtures", summary, start)
}

fn criterion_3(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut names = Vec::new();
    for a in entries.iter().filter(|a| a.report.q.is_rcm) {
        let r = &a.report;
        names.push(a.name().to_string());
        t.check(r.q.grade + r.p.cd == r.dim, || {
            format!("{}: rdim(Q) {} + cd(P) {} != dim {}", a.name(), r.q.grade, r.p.cd, r.dim)
        });
    }
    let has = |pred: &dyn Fn(&str) -> bool| names.iter().any(|n| pred(n));
    t.check(names.len() >= MIN_RCM_ENTRIES, || {
        format!("only {} relative Cohen-Macaulay entries, need {MIN_RCM_ENTRIES}", names.len())
    });
    t.check(has(&|n| n.starts_with("tensor_")), || "no tensor entry is relative Cohen-Macaulay".into());
    t.check(has(&|n| n == "ex35"), || "ex35 missing".into());
    t.check(has(&|n| n.starts_with("ex36_")), || "ex36 family missing".into());
    let summary = format!("{} entries", names.len());
    t.finish(3, "rdim(Q) + cd(P) = dim", summary, start)
}

fn criterion_4(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut applicable = 0;
    for a in entries {
        for c in &a.report.checks {
            if !matches!(c.name, "grade-bound" | "cm-rcm-symmetry" | "cm-dimension-sum" | "rcm-both-cm") {
                continue;
            }
            if c.applicable {
                applicable += 1;
            }
            t.check(c.holds, || format!("{}: {} fails ({})", a.name(), c.name, c.witness));
        }
    }
    let summary = format!("{} entries, {applicable} applicable verdicts", entries.len());
    t.finish(4, "Cohen-Macaulay verdict suites", summary, start)
}

fn criterion_5(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut values = 0;
    for a in entries {
        let kw = default_k_window(&a.res);
        let jw = default_j_window(&a.res);
        match cross_check_with(a.module(), &a.res, kw, jw) {
            Ok(rep) => {
                values += rep.checked;
                t.checked += 1;
                for m in rep.mismatches {
                    t.failures.push(format!(
                        "{}: k {} j {} i {}: pipeline {} oracle {}",
                        a.name(),
                        m.k,
                        m.j,
                        m.i,
                        m.pipeline_dim,
                        m.oracle_dim
                    ));
                }
            }
            Err(e) => t.error(a.name(), e),
        }
    }
    let elapsed = start.elapsed();
    t.check(elapsed < ORACLE_TIME_LIMIT, || format!("took {:.1}s", elapsed.as_secs_f64()));
    let summary = format!("{} entries, {values} graded dimensions compared", entries.len());
    t.finish(5, "local cohomology vs strand duality", summary, start)
}

fn j_range(res: &FreeResolution) -> std::ops::RangeInclusive<i32> {
    let (lo, hi) = default_j_window(res);
    lo..=hi
}

fn criterion_6(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for a in entries {
        let Some(q) = a.rdim_q() else { continue };
        let n = a.module().ring().n();
        for j in j_range(&a.res) {
            for i in (0..=n).filter(|&i| i != q) {
                match lc_component_from(&a.res, i, j) {
                    Ok(h) => t.check(h.is_zero(), || format!("{}: H^{i}_Q(M)_{j} is nonzero", a.name())),
                    Err(e) => t.error(a.name(), e),
                }
            }
        }
        let (klo, khi) = default_k_window(&a.res);
        for k in klo..=khi {
            match strand_invariants(a.module(), k) {
                Ok((dim, depth)) => t.check(dim == q && depth == q, || {
                    format!("{}: strand {k} has dim {dim}, depth {depth}, expected {q}", a.name())
                }),
                Err(Error::ZeroModule) => {}
                Err(e) => t.error(a.name(), e),
            }
        }
    }
    let summary = format!("{} vanishing and strand checks", t.checked);
    t.finish(6, "single nonvanishing degree and Cohen-Macaulay strands", summary, start)
}

fn criterion_7(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for a in entries {
        let Some(q) = a.rdim_q() else { continue };
        let m = a.module().ring().m();
        for j in j_range(&a.res) {
            match component_resolution_from(&a.res, q, j) {
                Ok(c) => {
                    t.check(c.length() <= m, || format!("{}: j {j}: length {} > m = {m}", a.name(), c.length()));
                    t.check(c.kernel_is_free(), || {
                        format!("{}: j {j}: kernel has {} syzygies", a.name(), c.kernel_syzygies.ncols())
                    });
                }
                Err(e) => t.error(a.name(), e),
            }
        }
    }
    let summary = format!("{} structural checks", t.checked);
    t.finish(7, "explicit component resolutions", summary, start)
}

fn criterion_8(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut nonzero = 0;
    for a in entries {
        let Some(q) = a.rdim_q() else { continue };
        let Some(c) = regularity_bound(&a.res) else { continue };
        for j in j_range(&a.res) {
            match lc_component_from(&a.res, q, j).and_then(|h| h.regularity()) {
                Ok(Some(reg)) => {
                    nonzero += 1;
                    t.check(reg <= c, || format!("{}: j {j}: reg {reg} > c = {c}", a.name()));
                }
                Ok(None) => {}
                Err(e) => t.error(a.name(), e),
            }
        }
    }
    let summary = format!("{nonzero} nonzero components bounded");
    t.finish(8, "regularity bound", summary, start)
}

/// `values` agree with a polynomial of degree `<= deg` iff their
/// `(deg + 1)`-th finite differences vanish.
pub fn fits_polynomial(values: &[i128], deg: usize) -> bool {
    let mut d = values.to_vec();
    for _ in 0..=deg {
        if d.len() <= 1 {
            return true;
        }
        d = d.windows(2).map(|w| w[1] - w[0]).collect();
    }
    d.iter().all(|&v| v == 0)
}

fn criterion_9(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for a in entries {
        let Some(q) = a.rdim_q() else { continue };
        if q == 0 {
            continue;
        }
        let count = 2 * (q + 2);
        let mut mus = Vec::with_capacity(count);
        for j in j_range(&a.res).take(count) {
            match lc_component_from(&a.res, q, j).and_then(|h| h.minimal_generator_count()) {
                Ok(mu) => mus.push(mu as i128),
                Err(e) => {
                    t.error(a.name(), e);
                    break;
                }
            }
        }
        if mus.len() == count {
            t.check(fits_polynomial(&mus, q), || format!("{}: mu {mus:?} is not of degree <= {q}", a.name()));
        }
    }
    let summary = format!("{} entries fitted", t.checked);
    t.finish(9, "generator counts are polynomial in j", summary, start)
}

fn criterion_10(entries: &[Analyzed], seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut steps = 0;
    for a in entries {
        match a.rdim_q() {
            Some(q) if q > 0 => {}
            _ => continue,
        }
        match descent_chain(a.module(), seed) {
            Ok(chain) => {
                for (s, w) in chain.reports.windows(2).enumerate() {
                    steps += 1;
                    let (before, after) = (&w[0], &w[1]);
                    let ok = after.q.is_rcm
                        && after.q.rdim.map(|r| r + 1) == before.q.rdim
                        && after.dim + 1 == before.dim
                        && after.q.grade + 1 == before.q.grade
                        && after.p.cd == before.p.cd;
                    t.check(ok, || format!("{}: step {} changes invariants wrongly", a.name(), s + 1));
                    let attempts = chain.certificates[s].attempts;
                    t.check(attempts <= REGULAR_ELEMENT_ATTEMPTS, || {
                        format!("{}: step {} needed {attempts} attempts", a.name(), s + 1)
                    });
                }
                t.check(chain.reports.last().and_then(|r| r.q.rdim) == Some(0), || {
                    format!("{}: descent stopped before relative dimension 0", a.name())
                });
            }
            Err(e) => t.error(a.name(), e),
        }
    }
    let summary = format!("{steps} descent steps");
    t.finish(10, "regular-element descent", summary, start)
}

fn criterion_11(entries: &[Analyzed]) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for a in entries {
        match maximal_rcm_check(a.module()) {
            Ok(v) => {
                t.check(v.maximal_q == v.y_sequence, || {
                    format!("{}: maximal(Q) {} but y-sequence {}", a.name(), v.maximal_q, v.y_sequence)
                });
                let both = v.maximal_p && v.maximal_q;
                t.check(both == (v.projective_dimension == 0), || {
                    format!("{}: maximal for both {} with projective dimension {}", a.name(), both, v.projective_dimension)
                });
            }
            Err(e) => t.error(a.name(), e),
        }
    }
    let summary = format!("{} entries", entries.len());
    t.finish(11, "maximal relative Cohen-Macaulay verdicts", summary, start)
}

fn corpus_failure(number: u32, title: &str, msg: &str) -> CriterionOutcome {
    CriterionOutcome {
        number,
        title: title.into(),
        passed: false,
        summary: "corpus analysis failed".into(),
        failures: vec![msg.to_string()],
        elapsed: Duration::ZERO,
    }
}

/// Criteria 1 to 11.
pub fn run_criteria(field: PrimeField, seed: u64) -> Vec<CriterionOutcome> {
    let mut out = vec![criterion_1(field), criterion_2(field)];
    match analyze_corpus(field) {
        Ok(entries) => {
            out.push(criterion_3(&entries));
            out.push(criterion_4(&entries));
            out.push(criterion_5(&entries));
            out.push(criterion_6(&entries));
            out.push(criterion_7(&entries));
            out.push(criterion_8(&entries));
            out.push(criterion_9(&entries));
            out.push(criterion_10(&entries, seed));
            out.push(criterion_11(&entries));
        }
        Err(msg) => {
            for n in 3..=11 {
                out.push(corpus_failure(n, "corpus", &msg));
            }
        }
    }
    out
}

/// Runs criteria 1 to 11 twice and adds criterion 12, byte equality of the
/// two JSON reports.
pub fn run_all(field: PrimeField, seed: u64) -> SuiteReport {
    let first = SuiteReport { field: field.modulus(), seed, criteria: run_criteria(field, seed) };
    let start = Instant::now();
    let second = SuiteReport { field: field.modulus(), seed, criteria: run_criteria(field, seed) };
    let (a, b) = (first.to_json(), second.to_json());
    let mut failures = Vec::new();
    if a != b {
        let line = a.lines().zip(b.lines()).position(|(x, y)| x != y).unwrap_or(a.lines().count().min(b.lines().count()));
        failures.push(format!("reports differ from line {}", line + 1));
    }
    let mut report = first;
    report.criteria.push(CriterionOutcome {
        number: 12,
        title: "deterministic reports".into(),
        passed: failures.is_empty(),
        summary: format!("{} bytes compared", a.len()),
        failures,
        elapsed: start.elapsed(),
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_fit() {
        assert!(fits_polynomial(&[1, 2, 3, 4, 5, 6], 1));
        assert!(!fits_polynomial(&[1, 4, 9, 16, 25, 36], 1));
        assert!(fits_polynomial(&[1, 4, 9, 16, 25, 36], 2));
        assert!(fits_polynomial(&[7, 7, 7, 7], 0));
        assert!(!fits_polynomial(&[7, 7, 8, 7], 2));
    }

    #[test]
    fn fixtures_parse() {
        let f = PrimeField::new(rcm_core::DEFAULT_PRIME).unwrap();
        assert!(parse_module_file(FIXTURE_EX35, None).is_ok());
        for t in FIXTURE_EX36 {
            assert!(parse_module_file(t, Some(f.modulus())).is_ok());
        }
    }
}
