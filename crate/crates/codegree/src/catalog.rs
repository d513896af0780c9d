//! Catalog files: one construction spec per line, with optional expected
//! codegree-set and expected case annotations, verified in bulk.
//!
//! Line format: `spec [; expect_cod = {a,b,c,d}] [; expect_case = "2a"]`,
//! `#` starts a comment (outside string literals), blank lines are skipped.

use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{self, BuiltGroup};
use crate::chartab;
use crate::classify;
use crate::dsl::{self, GroupSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub line: usize,
    pub text: String,
    pub spec: GroupSpec,
    pub expect_cod: Option<Vec<u64>>,
    pub expect_case: Option<String>,
}

/// Short annotation forms ("2a", "not4", "prime-power") normalize to the
/// verdict labels the classifier produces.
pub fn normalize_case_label(s: &str) -> String {
    match s {
        "not4" | "NotFourCodegrees" => "NotFourCodegrees".to_string(),
        "prime-power" | "PrimePowerOutOfScope" => "PrimePowerOutOfScope".to_string(),
        other if other.starts_with("Case") => other.to_string(),
        other => format!("Case{}", other),
    }
}

/// Cut a line at the first `#` that is not inside a string literal.
fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

fn parse_cod_annotation(body: &str, line: usize) -> Result<Vec<u64>> {
    let body = body.trim();
    let inner = body
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::Parse {
            line,
            col: 1,
            msg: "expect_cod wants a braced set like {1,2,4,9}".to_string(),
        })?;
    let mut out = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse::<u64>().map_err(|_| Error::Parse {
            line,
            col: 1,
            msg: format!("expect_cod entry '{}' is not an integer", part),
        })?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut segments = line.split(';');
        let spec_text = segments.next().unwrap().trim().to_string();
        let spec = dsl::parse_spec(&spec_text)?;
        let mut expect_cod = None;
        let mut expect_case = None;
        for seg in segments {
            let seg = seg.trim();
            if seg.is_empty() {
                continue;
            }
            let (key, value) = seg.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                col: 1,
                msg: format!("annotation '{}' is not key = value", seg),
            })?;
            match key.trim() {
                "expect_cod" => expect_cod = Some(parse_cod_annotation(value, line_no)?),
                "expect_case" => {
                    let v = value.trim();
                    let v = v
                        .strip_prefix('"')
                        .and_then(|s| s.strip_suffix('"'))
                        .ok_or_else(|| Error::Parse {
                            line: line_no,
                            col: 1,
                            msg: "expect_case wants a quoted label".to_string(),
                        })?;
                    expect_case = Some(normalize_case_label(v));
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        msg: format!("unknown annotation key '{}'", other),
                    });
                }
            }
        }
        entries.push(CatalogEntry {
            line: line_no,
            text: spec_text,
            spec,
            expect_cod,
            expect_case,
        });
    }
    Ok(entries)
}

pub fn load_catalog(path: &std::path::Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read catalog {}: {}", path.display(), e)))?;
    parse_catalog(&text)
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub line: usize,
    pub entry: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "codSet", skip_serializing_if = "Option::is_none")]
    pub cod_set: Option<Vec<u64>>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundTripReport {
    pub results: Vec<EntryResult>,
    pub failures: usize,
}

fn check_entry(entry: &CatalogEntry) -> EntryResult {
    let mut failures = Vec::new();
    let built: Option<BuiltGroup> = match builders::build(&entry.spec) {
        Ok(b) => Some(b),
        Err(e) => {
            failures.push(format!("build failed: {}", e));
            None
        }
    };
    let mut label = None;
    let mut cod_set = None;
    if let Some(b) = built {
        match chartab::codegree_report(&b.group) {
            Ok(report) => {
                if let Some(want) = &entry.expect_cod {
                    if &report.cod_set != want {
                        failures.push(format!(
                            "codegree set {:?} does not match expected {:?}",
                            report.cod_set, want
                        ));
                    }
                }
                cod_set = Some(report.cod_set.clone());
                // Any group with four codegrees and non-prime-power order must
                // classify without error, annotated or not.
                match classify::classify_built(&b) {
                    Ok(verdict) => {
                        if let Some(want) = &entry.expect_case {
                            if &verdict.label != want {
                                failures.push(format!(
                                    "classified as {} but expected {}",
                                    verdict.label, want
                                ));
                            }
                        }
                        label = Some(verdict.label);
                    }
                    Err(e) => failures.push(format!("classify failed: {}", e)),
                }
            }
            Err(e) => failures.push(format!("codegree computation failed: {}", e)),
        }
    }
    EntryResult {
        line: entry.line,
        entry: entry.text.clone(),
        label,
        cod_set,
        failures,
    }
}

/// Verify every entry: build, compute codegrees, classify, and compare with
/// the annotations. Entries fan out across threads; results keep file order.
pub fn classification_round_trip(entries: &[CatalogEntry], jobs: usize) -> Result<RoundTripReport> {
    let run = || -> Vec<EntryResult> { entries.par_iter().map(check_entry).collect() };
    let results = if jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Input(format!("cannot build thread pool: {}", e)))?;
        pool.install(run)
    } else {
        run()
    };
    let failures = results.iter().filter(|r| !r.failures.is_empty()).count();
    Ok(RoundTripReport { results, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_annotated_lines_and_comments() {
        let text = r#"
# a comment
dirprod(elemab(2,1),elemab(3,1)) ; expect_cod = {1,2,3,6} ; expect_case = "1"
sl2(2) ; expect_case = "7"  # trailing comment
named("D8onC3sq")
"#;
        let entries = parse_catalog(text).unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[0].expect_cod, Some(vec![1, 2, 3, 6]));
        assert_eq!(entries[0].expect_case, Some("Case1".to_string()));
        assert_eq!(entries[1].expect_case, Some("Case7".to_string()));
        assert!(entries[2].expect_cod.is_none());
    }

    #[test]
    fn empty_catalog_gives_empty_report() {
        let entries = parse_catalog("# nothing here\n").unwrap();
        let report = classification_round_trip(&entries, 0).unwrap();
        assert_eq!(report.results.len(), 0);
        assert_eq!(report.failures, 0);
    }

    #[test]
    fn wrong_expectation_names_the_entry() {
        let entries =
            parse_catalog("dirprod(elemab(2,1),elemab(3,1)) ; expect_cod = {1,2,3,7}\n").unwrap();
        let report = classification_round_trip(&entries, 0).unwrap();
        assert_eq!(report.failures, 1);
        assert_eq!(report.results[0].line, 1);
        assert!(!report.results[0].failures.is_empty());
    }

    #[test]
    fn small_round_trip_passes() {
        let text = r#"
dirprod(elemab(2,1),elemab(3,1)) ; expect_cod = {1,2,3,6} ; expect_case = "1"
named("HomocyclicInv",3,2,1) ; expect_cod = {1,2,3,9} ; expect_case = "2c"
dirprod(cyclic(4),cyclic(3)) ; expect_case = "not4"
"#;
        let entries = parse_catalog(text).unwrap();
        let report = classification_round_trip(&entries, 2).unwrap();
        assert_eq!(report.failures, 0, "{:?}", report.results);
    }
}
