//! Module files: a line-oriented text format and its JSON equivalent.
//!
//! Text format (the canonical sample is `fixtures/ex35.mod`):
//!
//! ```text
//! # K[x1,x2,y1,y2]/(x1^2, x1*x2)
//! ring p=32003 m=2 n=2
//! twist 0 0
//! relation x1^2
//! relation x1*x2
//! ```
//!
//! One `twist a b` line per generator of the ambient free module (the
//! generator lives in bidegree `(a, b)`), then one `relation` line per
//! relation column with one entry per generator, separated by `;`.
//!
//! JSON: `{"ring": {"p": 32003, "m": 2, "n": 2}, "module": {"twists": [[0, 0]],
//! "relations": [["x1^2", "x1*x2"]]}}`, where `relations[i][c]` is the entry
//! of relation `c` on generator `i`.

use rcm_core::{
    BiDegree, FreeModule, ModuleVector, Polynomial, PresentedModule, PrimeField, Ring, DEFAULT_PRIME,
};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("relation column {0} is not bihomogeneous of a single degree")]
    DegreeInconsistent(usize),
    #[error("{0}")]
    Invalid(String),
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, col, msg: msg.into() }
}

/// Parses `3*x1^2*y2 - x2*y1 + 5`. Errors carry the 1-based column.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, (usize, String)> {
    let f = ring.field();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        text[start..*pos].parse().ok()
    };
    let mut terms = Vec::new();
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err((1, "empty polynomial".into()));
    }
    let mut first = true;
    while pos < bytes.len() {
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err((pos + 1, "expected '+' or '-'".into()));
        }
        first = false;
        let mut coeff: u32 = 1;
        let mut exps = vec![0u16; ring.nvars()];
        let mut factors = 0;
        loop {
            skip_ws(&mut pos);
            let at = pos;
            match bytes.get(pos) {
                Some(c) if c.is_ascii_digit() => {
                    let v = number(&mut pos).ok_or((at + 1, "number too large".to_string()))?;
                    coeff = f.mul(coeff, (v % f.modulus() as u64) as u32);
                }
                Some(&c) if c == b'x' || c == b'y' => {
                    pos += 1;
                    let idx = number(&mut pos).ok_or((at + 1, "expected variable index".to_string()))?;
                    let (count, offset) = if c == b'x' { (ring.m(), 0) } else { (ring.n(), ring.m()) };
                    if idx == 0 || idx as usize > count {
                        return Err((at + 1, format!("no variable {}{} in this ring", c as char, idx)));
                    }
                    skip_ws(&mut pos);
                    let mut e: u64 = 1;
                    if bytes.get(pos) == Some(&b'^') {
                        pos += 1;
                        skip_ws(&mut pos);
                        let eat = pos;
                        e = number(&mut pos).ok_or((eat + 1, "expected exponent".to_string()))?;
                    }
                    let slot = &mut exps[offset + idx as usize - 1];
                    let total = *slot as u64 + e;
                    if total > u16::MAX as u64 {
                        return Err((at + 1, "exponent too large".into()));
                    }
                    *slot = total as u16;
                }
                _ => return Err((at + 1, "expected a coefficient or a variable".into())),
            }
            factors += 1;
            skip_ws(&mut pos);
            if bytes.get(pos) == Some(&b'*') {
                pos += 1;
                continue;
            }
            break;
        }
        debug_assert!(factors > 0);
        if negative {
            coeff = f.neg(coeff);
        }
        let (xs, ys) = exps.split_at(ring.m());
        terms.push((ring.monomial(xs, ys), coeff));
        skip_ws(&mut pos);
    }
    Ok(Polynomial::from_terms(f, terms))
}

fn build(ring: Ring, twists: Vec<BiDegree>, columns: Vec<ModuleVector>) -> Result<PresentedModule, FormatError> {
    let ambient = FreeModule::new(twists);
    for (c, col) in columns.iter().enumerate() {
        if !col.is_zero() && col.bidegree(&ambient).is_err() {
            return Err(FormatError::DegreeInconsistent(c));
        }
    }
    PresentedModule::from_columns(ring, ambient, columns).map_err(|e| FormatError::Invalid(e.to_string()))
}

fn make_ring(p: u32, m: usize, n: usize) -> Result<Ring, String> {
    let field = PrimeField::new(p).map_err(|e| e.to_string())?;
    Ring::new(field, m, n).map_err(|e| e.to_string())
}

/// Parses the text format. `field_override` replaces the prime of the file.
pub fn parse_text(text: &str, field_override: Option<u32>) -> Result<PresentedModule, FormatError> {
    let mut ring: Option<Ring> = None;
    let mut twists: Vec<BiDegree> = Vec::new();
    let mut columns: Vec<ModuleVector> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + keyword.len() + 2;
        match keyword {
            "ring" => {
                if ring.is_some() {
                    return Err(perr(line_no, indent + 1, "duplicate ring line"));
                }
                let (mut p, mut m, mut n) = (DEFAULT_PRIME, None, None);
                for tok in rest.split_whitespace() {
                    let col = raw.find(tok).map_or(rest_col, |c| c + 1);
                    let (k, v) = tok.split_once('=').ok_or_else(|| perr(line_no, col, "expected key=value"))?;
                    let val: u64 = v.parse().map_err(|_| perr(line_no, col, format!("bad value for {k}")))?;
                    match k {
                        "p" => p = u32::try_from(val).map_err(|_| perr(line_no, col, "prime too large"))?,
                        "m" => m = Some(val as usize),
                        "n" => n = Some(val as usize),
                        _ => return Err(perr(line_no, col, format!("unknown ring key {k}"))),
                    }
                }
                let m = m.ok_or_else(|| perr(line_no, indent + 1, "ring line needs m="))?;
                let n = n.ok_or_else(|| perr(line_no, indent + 1, "ring line needs n="))?;
                ring = Some(make_ring(field_override.unwrap_or(p), m, n).map_err(|e| perr(line_no, indent + 1, e))?);
            }
            "twist" => {
                if ring.is_none() {
                    return Err(perr(line_no, indent + 1, "twist before ring line"));
                }
                if !columns.is_empty() {
                    return Err(perr(line_no, indent + 1, "twist after relation lines"));
                }
                let nums: Vec<&str> = rest.split_whitespace().collect();
                if nums.len() != 2 {
                    return Err(perr(line_no, rest_col, "twist needs two integers"));
                }
                let mut d = [0i32; 2];
                for (k, s) in nums.iter().enumerate() {
                    d[k] = s.parse().map_err(|_| perr(line_no, raw.find(s).map_or(rest_col, |c| c + 1), "bad integer"))?;
                }
                twists.push(BiDegree::new(d[0], d[1]));
            }
            "relation" => {
                let r = ring.as_ref().ok_or_else(|| perr(line_no, indent + 1, "relation before ring line"))?;
                let mut entries = Vec::with_capacity(twists.len());
                let mut offset = indent + keyword.len() + 1;
                for part in rest.split(';') {
                    let p = parse_polynomial(r, part).map_err(|(c, msg)| perr(line_no, offset + c, msg))?;
                    entries.push(p);
                    offset += part.len() + 1;
                }
                if entries.len() != twists.len() {
                    return Err(perr(
                        line_no,
                        rest_col,
                        format!("{} entries for {} generators", entries.len(), twists.len()),
                    ));
                }
                columns.push(ModuleVector::from_entries(entries));
            }
            other => return Err(perr(line_no, indent + 1, format!("unknown keyword {other}"))),
        }
    }
    let ring = ring.ok_or_else(|| perr(1, 1, "missing ring line"))?;
    build(ring, twists, columns)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u32,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub twists: Vec<[i32; 2]>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// The JSON module file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: RingSpec,
    pub module: ModuleSpec,
}

impl ModuleFile {
    pub fn from_module(module: &PresentedModule) -> Self {
        let ring = module.ring();
        let rel = module.relations();
        let relations = (0..rel.nrows())
            .map(|i| (0..rel.ncols()).map(|c| rel.entry(i, c).display(ring).to_string()).collect())
            .collect();
        ModuleFile {
            ring: RingSpec { p: ring.field().modulus(), m: ring.m(), n: ring.n() },
            module: ModuleSpec {
                twists: module.ambient().twists().iter().map(|t| [t.dx, t.dy]).collect(),
                relations,
            },
        }
    }

    pub fn to_module(&self, field_override: Option<u32>) -> Result<PresentedModule, FormatError> {
        let ring = make_ring(field_override.unwrap_or(self.ring.p), self.ring.m, self.ring.n)
            .map_err(FormatError::Invalid)?;
        let rows = self.module.twists.len();
        let rels: Vec<&Vec<String>> = self.module.relations.iter().filter(|r| !r.is_empty()).collect();
        if !rels.is_empty() && rels.len() != rows {
            return Err(FormatError::Invalid(format!("{} relation rows for {} generators", rels.len(), rows)));
        }
        let ncols = rels.first().map_or(0, |r| r.len());
        if rels.iter().any(|r| r.len() != ncols) {
            return Err(FormatError::Invalid("relation rows have different lengths".into()));
        }
        let mut columns = Vec::with_capacity(ncols);
        for c in 0..ncols {
            let mut entries = Vec::with_capacity(rows);
            for (i, row) in rels.iter().enumerate() {
                let p = parse_polynomial(&ring, &row[c]).map_err(|(col, msg)| {
                    FormatError::Invalid(format!("relations[{i}][{c}], column {col}: {msg}"))
                })?;
                entries.push(p);
            }
            columns.push(ModuleVector::from_entries(entries));
        }
        let twists = self.module.twists.iter().map(|t| BiDegree::new(t[0], t[1])).collect();
        build(ring, twists, columns)
    }
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_module_file(text: &str, field_override: Option<u32>) -> Result<PresentedModule, FormatError> {
    if text.trim_start().starts_with('{') {
        let file: ModuleFile = serde_json::from_str(text).map_err(|e| FormatError::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })?;
        file.to_module(field_override)
    } else {
        parse_text(text, field_override)
    }
}

/// Canonical text form; `parse_text(write_text(M)) == M` for modules whose
/// relation columns are nonzero.
pub fn write_text(module: &PresentedModule) -> String {
    let ring = module.ring();
    let mut s = String::new();
    let _ = writeln!(s, "ring p={} m={} n={}", ring.field().modulus(), ring.m(), ring.n());
    for t in module.ambient().twists() {
        let _ = writeln!(s, "twist {} {}", t.dx, t.dy);
    }
    for col in module.relations().columns() {
        let _ = writeln!(s, "relation {}", col.display(ring));
    }
    s
}

pub fn write_json(module: &PresentedModule) -> String {
    serde_json::to_string_pretty(&ModuleFile::from_module(module)).expect("module files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX35: &str = "# comment\nring p=32003 m=2 n=2\ntwist 0 0\nrelation x1^2\nrelation x1*x2\n";

    #[test]
    fn polynomials() {
        let r = Ring::standard(2, 1);
        let p = parse_polynomial(&r, "3*x1^2*y1 - x2*x1 *y1+ 2 * x1*x1*y1").unwrap();
        assert_eq!(p.display(&r).to_string(), "5*x1^2*y1 - x1*x2*y1");
        assert_eq!(parse_polynomial(&r, "0").unwrap(), Polynomial::zero());
        assert_eq!(parse_polynomial(&r, "-1").unwrap().display(&r).to_string(), "-1");
        assert!(parse_polynomial(&r, "x3").is_err());
        assert!(parse_polynomial(&r, "x1 x2").is_err());
        assert_eq!(parse_polynomial(&r, "x1 + ?").unwrap_err().0, 6);
    }

    #[test]
    fn text_and_json_agree() {
        let a = parse_module_file(EX35, None).unwrap();
        let json = r#"{"ring":{"p":32003,"m":2,"n":2},"module":{"twists":[[0,0]],"relations":[["x1^2","x1*x2"]]}}"#;
        let b = parse_module_file(json, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.relations().ncols(), 2);
        assert_eq!(parse_module_file(&write_json(&a), None).unwrap(), a);
        assert_eq!(parse_text(&write_text(&a), None).unwrap(), a);
    }

    #[test]
    fn free_module_without_relations() {
        let m = parse_module_file("ring m=1 n=1\ntwist 0 0\n", None).unwrap();
        assert_eq!(m.relations().ncols(), 0);
        let j = parse_module_file(r#"{"ring":{"p":7,"m":1,"n":1},"module":{"twists":[[0,0]],"relations":[]}}"#, None)
            .unwrap();
        assert_eq!(j.ring().field().modulus(), 7);
    }

    #[test]
    fn degree_errors() {
        let e = parse_module_file("ring m=1 n=1\ntwist 0 0\nrelation x1\nrelation x1 + y1\n", None).unwrap_err();
        assert_eq!(e, FormatError::DegreeInconsistent(1));
        let e = parse_module_file("ring m=1 n=1\ntwist 0 0\ntwist 0 0\nrelation x1; y1\n", None).unwrap_err();
        assert_eq!(e, FormatError::DegreeInconsistent(0));
    }

    #[test]
    fn parse_error_positions() {
        let e = parse_module_file("ring m=1 n=1\ntwist 0 0\nrelation x1 + z\n", None).unwrap_err();
        assert_eq!(e, FormatError::Parse { line: 3, col: 15, msg: "expected a coefficient or a variable".into() });
        let e = parse_module_file("ring m=1 n=1\nbogus\n", None).unwrap_err();
        assert!(matches!(e, FormatError::Parse { line: 2, col: 1, .. }));
        assert!(matches!(parse_module_file("twist 0 0\n", None), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_module_file("{\"ring\": 3}", None), Err(FormatError::Parse { .. })));
    }

    #[test]
    fn field_override() {
        let m = parse_module_file(EX35, Some(101)).unwrap();
        assert_eq!(m.ring().field().modulus(), 101);
        assert!(parse_module_file(EX35, Some(100)).is_err());
    }
}
