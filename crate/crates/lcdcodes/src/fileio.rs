//! Text formats: code files, classification databases, seed/ceiling lists,
//! and bounds tables.
//!
//! Code file: the first non-comment line is `n k`; the next `k` non-comment
//! lines are generator rows over {0,1} of length `n`. `#` starts a comment.
//! A file may hold several codes back to back. Database files additionally
//! carry a metrics comment per record and a `---` separator line.

use std::io::Read;

use crate::bounds::BoundsTable;
use crate::canonical::canonical_form;
use crate::classifier::ClassificationRecord;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Strips a trailing comment; returns the content part.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses every code record in the text. Separator lines `---` between
/// records are accepted and ignored.
pub fn parse_code_file(text: &str) -> Result<Vec<LinearCode>> {
    let mut codes = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    loop {
        // find the next header
        let (header_no, header) = loop {
            match lines.next() {
                None => return Ok(codes),
                Some((i, raw)) => {
                    let c = content(raw);
                    if !c.is_empty() && c != "---" {
                        break (i + 1, c.to_string());
                    }
                }
            }
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(header_no, "expected header `n k`"));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(header_no, "bad length in header"))?;
        let k: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(header_no, "bad dimension in header"))?;
        if n == 0 || k == 0 || k > n {
            return Err(parse_err(header_no, "need 1 <= k <= n"));
        }
        let mut m = BinaryMatrix::zero(k, n);
        let mut row = 0;
        while row < k {
            let Some((i, raw)) = lines.next() else {
                return Err(parse_err(header_no, format!("expected {k} rows")));
            };
            let c = content(raw);
            if c.is_empty() {
                continue;
            }
            if c.len() != n {
                return Err(parse_err(
                    i + 1,
                    format!("row has {} symbols, expected {n}", c.len()),
                ));
            }
            for (j, ch) in c.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(row, j, true),
                    _ => return Err(parse_err(i + 1, format!("illegal symbol {ch:?}"))),
                }
            }
            row += 1;
        }
        let code = LinearCode::from_generator(&m);
        if code.k() != k {
            return Err(parse_err(
                header_no,
                format!("rows are rank deficient: rank {} < {k}", code.k()),
            ));
        }
        codes.push(code);
    }
}

pub fn format_code(code: &LinearCode) -> String {
    let mut out = format!("{} {}\n", code.n(), code.k());
    for r in 0..code.k() {
        for j in 0..code.n() {
            out.push(if code.generator().get(r, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// One database record: a code plus the metrics stored alongside it.
#[derive(Clone, Debug)]
pub struct DbRecord {
    pub code: LinearCode,
    pub d: usize,
    pub d_dual: usize,
    pub hull_dim: usize,
}

/// Serializes classification output. The byte output is deterministic;
/// `reproducible` suppresses the timestamp comment.
pub fn write_code_db(records: &[ClassificationRecord], reproducible: bool) -> String {
    let mut out = String::from("# lcdcodes code database\n");
    if !reproducible {
        out.push_str(&format!(
            "# generated {}\n",
            chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ")
        ));
    }
    out.push_str(&format!("# count={}\n", records.len()));
    for rec in records {
        let m = &rec.metrics;
        out.push_str(&format!(
            "# d={} ddual={} hull={}\n",
            m.d, m.d_dual, m.hull_dim
        ));
        out.push_str(&format_code(&rec.code()));
        out.push_str("---\n");
    }
    out
}

/// Parses a database file, keeping the stored metrics for verification.
pub fn parse_code_db(text: &str) -> Result<Vec<DbRecord>> {
    let mut records = Vec::new();
    let mut pending: Option<(usize, usize, usize)> = None;
    let mut chunk = String::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix('#') {
            let rest = rest.trim();
            if rest.starts_with("d=") {
                let mut d = None;
                let mut dd = None;
                let mut h = None;
                for field in rest.split_whitespace() {
                    let (key, val) = field
                        .split_once('=')
                        .ok_or_else(|| parse_err(i + 1, "bad metrics comment"))?;
                    let val: usize = val
                        .parse()
                        .map_err(|_| parse_err(i + 1, "bad metrics value"))?;
                    match key {
                        "d" => d = Some(val),
                        "ddual" => dd = Some(val),
                        "hull" => h = Some(val),
                        _ => return Err(parse_err(i + 1, format!("unknown key {key:?}"))),
                    }
                }
                match (d, dd, h) {
                    (Some(d), Some(dd), Some(h)) => pending = Some((d, dd, h)),
                    _ => return Err(parse_err(i + 1, "metrics comment needs d, ddual, hull")),
                }
            }
            continue;
        }
        if trimmed == "---" {
            let codes = parse_code_file(&chunk)?;
            if codes.len() != 1 {
                return Err(parse_err(i + 1, "expected exactly one code per record"));
            }
            let (d, d_dual, hull_dim) =
                pending.ok_or_else(|| parse_err(i + 1, "record is missing its metrics"))?;
            records.push(DbRecord {
                code: codes.into_iter().next().unwrap(),
                d,
                d_dual,
                hull_dim,
            });
            pending = None;
            chunk.clear();
            continue;
        }
        chunk.push_str(raw);
        chunk.push('\n');
    }
    if !content(&chunk).is_empty() {
        return Err(parse_err(
            text.lines().count(),
            "trailing record without `---` terminator",
        ));
    }
    Ok(records)
}

/// Round-trip check used by tests: certificates survive serialization.
pub fn db_round_trips(records: &[ClassificationRecord]) -> Result<bool> {
    let parsed = parse_code_db(&write_code_db(records, true))?;
    if parsed.len() != records.len() {
        return Ok(false);
    }
    for (rec, back) in records.iter().zip(&parsed) {
        if canonical_form(&back.code).certificate != rec.canonical.certificate {
            return Ok(false);
        }
        let m = &rec.metrics;
        if (back.d, back.d_dual, back.hull_dim) != (m.d, m.d_dual, m.hull_dim) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses a seeds or ceilings list: lines `n k value`, `#` comments.
pub fn parse_triples(text: &str) -> Result<Vec<(usize, usize, usize)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let c = content(raw);
        if c.is_empty() {
            continue;
        }
        let fields: Vec<&str> = c.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(i + 1, "expected `n k value`"));
        }
        let parse = |s: &str, what: &str| -> Result<usize> {
            s.parse().map_err(|_| parse_err(i + 1, format!("bad {what}")))
        };
        let n = parse(fields[0], "n")?;
        let k = parse(fields[1], "k")?;
        let v = parse(fields[2], "value")?;
        if k == 0 || k > n || v == 0 {
            return Err(parse_err(i + 1, "need 1 <= k <= n and value >= 1"));
        }
        out.push((n, k, v));
    }
    Ok(out)
}

/// Serializes a bounds table as TSV with a comment header.
pub fn write_bounds_tsv(table: &BoundsTable, reproducible: bool) -> String {
    let mut out = String::from("# n\tk\tlower\tupper\tstatus\tprovenance\n");
    if !reproducible {
        out.push_str(&format!(
            "# generated {}\n",
            chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ")
        ));
    }
    for cell in table.cells.values() {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            cell.n,
            cell.k,
            cell.lower,
            cell.upper,
            cell.status(),
            cell.provenance_summary()
        ));
    }
    out
}

/// Reads a file, or stdin when the path is `-`.
pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Writes a file, or stdout when the path is `-`.
pub fn write_output(path: &str, contents: &str) -> Result<()> {
    if path == "-" {
        use std::io::Write;
        std::io::stdout().write_all(contents.as_bytes())?;
        Ok(())
    } else {
        Ok(std::fs::write(path, contents)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, SearchSpec};

    #[test]
    fn parse_single_codes() {
        let codes = parse_code_file("2 1\n11\n").unwrap();
        assert_eq!(codes, vec![LinearCode::repetition(2)]);

        let codes = parse_code_file("6 2\n111000\n111111\n").unwrap();
        assert_eq!(codes[0], LinearCode::from_rows_str(&["111000", "111111"]));

        let codes = parse_code_file("# two records\n2 1\n11\n---\n3 1\n111\n").unwrap();
        assert_eq!(codes.len(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_code_file("3 2\n110\n110\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let err = parse_code_file("3 2\n110\n1x0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        let err = parse_code_file("3 2\n1101\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_code_file("3\n110\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let err = parse_code_file("3 2\n110\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn db_round_trip_on_classifier_output() {
        let records = classify(&SearchSpec::new(8, 4, 3, 2)).unwrap();
        assert_eq!(records.len(), 1);
        assert!(db_round_trips(&records).unwrap());

        let empty: Vec<ClassificationRecord> = Vec::new();
        let text = write_code_db(&empty, true);
        assert!(text.starts_with("# lcdcodes code database\n"));
        assert!(parse_code_db(&text).unwrap().is_empty());
    }

    #[test]
    fn db_output_is_reproducible() {
        let records = classify(&SearchSpec::new(7, 3, 2, 1)).unwrap();
        assert!(!records.is_empty());
        assert_eq!(
            write_code_db(&records, true),
            write_code_db(&records, true)
        );
        assert!(db_round_trips(&records).unwrap());
    }

    #[test]
    fn triples_parse() {
        let t = parse_triples("# ceilings\n25 7 10\n25 14 6 # exact\n").unwrap();
        assert_eq!(t, vec![(25, 7, 10), (25, 14, 6)]);
        assert!(parse_triples("25 7\n").is_err());
        assert!(parse_triples("7 25 3\n").is_err());
    }

    #[test]
    fn bounds_tsv_shape() {
        let table = crate::bounds::build_table(6, &[], &[]).unwrap();
        let text = write_bounds_tsv(&table, true);
        let lines: Vec<&str> = text.lines().collect();
        // 21 cells plus one header comment
        assert_eq!(lines.len(), 22);
        assert!(lines[1].starts_with("1\t1\t1\t1\texact"));
    }
}
