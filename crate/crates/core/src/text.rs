//! Plain-text matroid files.
//!
//! ```text
//! p e r m
//! <r lines of m space-separated element encodings>
//! <optional line of m labels>
//! ```
//!
//! The writer always emits the label line, so `write(read(write(M)))` is
//! byte-identical to `write(M)`. Files without a label line get labels `0..m`.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::matroid::{Label, RepMatroid};

pub fn to_text(m: &RepMatroid) -> String {
    let f = m.field();
    let mut out = format!("{} {} {} {}\n", f.characteristic(), f.degree(), m.rows(), m.len());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.len()).map(|c| m.column_at(c)[r].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let labels: Vec<String> = m.labels().iter().map(|l| l.to_string()).collect();
    out.push_str(&labels.join(" "));
    out.push('\n');
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_ints<T: std::str::FromStr>(line_no: usize, line: &str, expected: usize) -> Result<Vec<T>> {
    let vals: Vec<T> = line
        .split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| parse_err(line_no, format!("bad integer {t:?}"))))
        .collect::<Result<_>>()?;
    if vals.len() != expected {
        return Err(parse_err(line_no, format!("expected {expected} entries, found {}", vals.len())));
    }
    Ok(vals)
}

pub fn from_text(text: &str) -> Result<RepMatroid> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (hl, header) = *lines.first().ok_or_else(|| parse_err(1, "empty input"))?;
    let h: Vec<u64> = parse_ints(hl, header, 4)?;
    let (p, e, r, m) = (h[0], h[1], h[2] as usize, h[3] as usize);
    let field = FieldSpec::new(
        u32::try_from(p).map_err(|_| parse_err(hl, "characteristic too large"))?,
        u32::try_from(e).map_err(|_| parse_err(hl, "degree too large"))?,
    )?;
    let field = Arc::new(field);
    let body = &lines[1..];
    if m == 0 && body.is_empty() {
        return RepMatroid::new(field, r, Vec::new(), Vec::new());
    }
    let has_label_line = if r == 0 { body.len() == 1 && m > 0 } else { body.len() == r + 1 };
    if body.len() != r + usize::from(has_label_line) {
        return Err(parse_err(hl, format!("expected {r} matrix rows and an optional label line")));
    }
    let mut columns = vec![Vec::with_capacity(r); m];
    for &(ln, line) in &body[..r] {
        let row: Vec<u32> = parse_ints(ln, line, m)?;
        for (c, v) in row.into_iter().enumerate() {
            columns[c].push(field.element(v).map_err(|_| parse_err(ln, format!("{v} is not in GF({})", field.order())))?);
        }
    }
    let labels: Vec<Label> = if has_label_line {
        let (ln, line) = body[r];
        parse_ints(ln, line, m)?
    } else {
        (0..m as Label).collect()
    };
    let columns: Vec<Vec<FieldElem>> = columns;
    RepMatroid::new(field, r, columns, labels)
}

pub fn read_file(path: impl AsRef<Path>) -> Result<RepMatroid> {
    from_text(&std::fs::read_to_string(path)?)
}

pub fn write_file(m: &RepMatroid, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_text(m))?;
    Ok(())
}
