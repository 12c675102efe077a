//! Plain-text code files: a short parameter header followed by the three
//! matrices of the scheme. The format is line oriented and diff friendly,
//! and writing is canonical so that write -> read -> write is
//! byte-identical.
//!
//! ```text
//! q 7
//! n 6
//! kd 2
//! ks 2
//! t 2
//! d 3
//! r 3
//! GD 2 6
//! 2 0 5 3 1 6
//! 0 6 5 4 3 2
//! GS 2 6
//! ...
//! B 2 6
//! ...
//! ```

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matrix::Matrix;
use crate::secure::SecureStorageCode;

/// Renders a scheme in the canonical text format.
pub fn write_code(code: &SecureStorageCode) -> String {
    let mut out = String::new();
    out.push_str(&format!("q {}\n", code.field().modulus()));
    out.push_str(&format!("n {}\n", code.n()));
    out.push_str(&format!("kd {}\n", code.k_d()));
    out.push_str(&format!("ks {}\n", code.k_s()));
    out.push_str(&format!("t {}\n", code.t()));
    out.push_str(&format!("d {}\n", code.d()));
    out.push_str(&format!("r {}\n", code.r()));
    write_matrix(&mut out, "GD", code.data_generator());
    write_matrix(&mut out, "GS", code.secrecy_generator());
    write_matrix(&mut out, "B", code.access_matrix());
    out
}

fn write_matrix(out: &mut String, label: &str, m: &Matrix) {
    out.push_str(&format!("{} {} {}\n", label, m.rows(), m.cols()));
    for r in 0..m.rows() {
        let row = m
            .row(r)
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&row);
        out.push('\n');
    }
}

/// Parses a code file. Syntactic problems and violated structural
/// invariants both surface as parse errors.
pub fn read_code(text: &str) -> Result<SecureStorageCode> {
    let mut lines = text.lines().map(str::trim_end);
    let q = read_param(&mut lines, "q")?;
    let n = read_param(&mut lines, "n")? as usize;
    let k_d = read_param(&mut lines, "kd")? as usize;
    let k_s = read_param(&mut lines, "ks")? as usize;
    let t = read_param(&mut lines, "t")? as usize;
    let d = read_param(&mut lines, "d")? as usize;
    let r = read_param(&mut lines, "r")? as usize;
    let field = Field::new(q).map_err(|e| Error::Parse(format!("invalid modulus: {e}")))?;
    let g_d = read_matrix(&mut lines, "GD", k_d, n, &field)?;
    let g_s = read_matrix(&mut lines, "GS", k_s, n, &field)?;
    let b = read_matrix(&mut lines, "B", k_d, n, &field)?;
    if lines.next().is_some_and(|l| !l.is_empty()) {
        return Err(Error::Parse("trailing content after the B block".into()));
    }
    SecureStorageCode::from_parts(field, g_d, g_s, b, t, d, r)
        .map_err(|e| Error::Parse(format!("structurally invalid code: {e}")))
}

fn read_param<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<u64> {
    let line = lines
        .next()
        .ok_or_else(|| Error::Parse(format!("missing '{key}' line")))?;
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => v
            .parse()
            .map_err(|_| Error::Parse(format!("invalid value for '{key}': '{v}'"))),
        _ => Err(Error::Parse(format!("expected '{key} <int>', got '{line}'"))),
    }
}

fn read_matrix<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
    label: &str,
    rows: usize,
    cols: usize,
    field: &Field,
) -> Result<Matrix> {
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse(format!("missing '{label}' block")))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != label {
        return Err(Error::Parse(format!(
            "expected '{label} <rows> <cols>', got '{header}'"
        )));
    }
    let (r, c): (usize, usize) = match (parts[1].parse(), parts[2].parse()) {
        (Ok(r), Ok(c)) => (r, c),
        _ => return Err(Error::Parse(format!("invalid dimensions in '{header}'"))),
    };
    if r != rows || c != cols {
        return Err(Error::Parse(format!(
            "{label} block is {r}x{c} but the header declares {rows}x{cols}"
        )));
    }
    let mut data = Vec::with_capacity(rows);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("{label} block ends after {i} rows")))?;
        let row: Vec<u64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid entry '{tok}' in {label}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "{label} row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        if row.iter().any(|&v| v >= field.modulus()) {
            return Err(Error::Parse(format!(
                "{label} row {i} has an entry outside GF({})",
                field.modulus()
            )));
        }
        data.push(row);
    }
    Matrix::from_rows(field, &data).map_err(|e| Error::Parse(e.to_string()))
}
