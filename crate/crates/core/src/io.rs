//! Text formats for truth tables and lookup tables.
//!
//! A `BF` file holds one Boolean function:
//!
//! ```text
//! BF n=4 field=13
//! 8778
//! ```
//!
//! Hex digit `i` packs `f(4i) + 2 f(4i+1) + 4 f(4i+2) + 8 f(4i+3)`, indices
//! ascending, 64 digits per line; whitespace between digits is ignored.
//!
//! A `VF` file holds a vectorial function, one line per input:
//!
//! ```text
//! VF n=4 m=2 t=1 field=13
//! 0.0
//! 1.1
//! ...
//! ```
//!
//! Each line is the subfield value in hex, followed by `.` and the appended
//! bits in hex when `t > 0`.

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2n::FieldSpec;
use crate::vectorial::VectorialFunction;

const DIGITS_PER_LINE: usize = 64;

/// A parsed table file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableFile {
    Boolean(BooleanFunction),
    Vectorial(VectorialFunction),
}

pub fn write_bf(f: &BooleanFunction) -> String {
    let mut out = format!("BF n={} field={:x}\n", f.n(), f.field().modulus());
    let digits = f.len().div_ceil(4);
    let mut line = String::with_capacity(DIGITS_PER_LINE);
    for i in 0..digits {
        let nibble = (0..4)
            .filter(|j| 4 * i + j < f.len() && f.get((4 * i + j) as u32))
            .fold(0u32, |acc, j| acc | 1 << j);
        line.push(char::from_digit(nibble, 16).expect("nibble"));
        if line.len() == DIGITS_PER_LINE {
            out.push_str(&line);
            out.push('\n');
            line.clear();
        }
    }
    if !line.is_empty() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_vf(f: &VectorialFunction) -> String {
    let mut out = format!(
        "VF n={} m={} t={} field={:x}\n",
        f.n(),
        f.m(),
        f.t(),
        f.field().modulus()
    );
    for x in 0..f.field().size() as u32 {
        let (y, bits) = f.value(x);
        if f.t() > 0 {
            out.push_str(&format!("{y:x}.{bits:x}\n"));
        } else {
            out.push_str(&format!("{y:x}\n"));
        }
    }
    out
}

/// Header `MAGIC key=value ...` with the keys in the given order.
fn parse_header(line: &str, magic: &str, keys: &[&str]) -> Result<Vec<u32>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    let col = |byte: usize| line[..byte].chars().count() + 1;
    match tokens.first() {
        Some((_, m)) if *m == magic => {}
        Some((s, m)) => {
            return Err(Error::parse(
                1,
                col(*s),
                format!("expected {magic:?}, found {m:?}"),
            ))
        }
        None => return Err(Error::parse(1, 1, format!("expected {magic:?} header"))),
    }
    let mut values = Vec::new();
    for (idx, key) in keys.iter().enumerate() {
        let Some(&(s, tok)) = tokens.get(idx + 1) else {
            return Err(Error::parse(1, col(line.len()), format!("missing {key}=")));
        };
        let Some(v) = tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')) else {
            return Err(Error::parse(
                1,
                col(s),
                format!("expected {key}=, found {tok:?}"),
            ));
        };
        let radix = if *key == "field" { 16 } else { 10 };
        let parsed = u32::from_str_radix(v, radix).map_err(|_| {
            Error::parse(
                1,
                col(s) + key.len() + 1,
                format!("invalid value {v:?} for {key}"),
            )
        })?;
        values.push(parsed);
    }
    if let Some(&(s, tok)) = tokens.get(keys.len() + 1) {
        return Err(Error::parse(
            1,
            col(s),
            format!("unexpected {tok:?} in header"),
        ));
    }
    Ok(values)
}

fn field_from_header(n: u32, modulus: u32) -> Result<FieldSpec> {
    FieldSpec::with_modulus(n, modulus).map_err(|e| Error::parse(1, 1, e.to_string()))
}

pub fn read_bf(text: &str) -> Result<BooleanFunction> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let v = parse_header(header, "BF", &["n", "field"])?;
    let field = field_from_header(v[0], v[1])?;
    let size = field.size();
    let digits = size.div_ceil(4);
    let mut bits = vec![false; size];
    let mut seen = 0usize;
    let mut last = (1, header.chars().count() + 1);
    for (li, line) in lines.enumerate() {
        let line_no = li + 2;
        for (ci, c) in line.chars().enumerate() {
            if c.is_whitespace() {
                continue;
            }
            let Some(nibble) = c.to_digit(16) else {
                return Err(Error::parse(
                    line_no,
                    ci + 1,
                    format!("invalid hex digit {c:?}"),
                ));
            };
            if seen == digits {
                return Err(Error::parse(
                    line_no,
                    ci + 1,
                    "more digits than the table holds",
                ));
            }
            for j in 0..4 {
                let idx = 4 * seen + j;
                if nibble >> j & 1 == 1 {
                    if idx >= size {
                        return Err(Error::parse(line_no, ci + 1, "bit beyond the table"));
                    }
                    bits[idx] = true;
                }
            }
            seen += 1;
        }
        last = (line_no, line.chars().count() + 1);
    }
    if seen != digits {
        return Err(Error::parse(
            last.0,
            last.1,
            format!("expected {digits} hex digits, found {seen}"),
        ));
    }
    BooleanFunction::from_bits(&field, &bits)
}

fn parse_hex(tok: &str, line: usize, column: usize) -> Result<u32> {
    if tok.is_empty() {
        return Err(Error::parse(line, column, "missing hex value"));
    }
    if let Some(pos) = tok.find(|c: char| !c.is_ascii_hexdigit()) {
        return Err(Error::parse(line, column + pos, "invalid hex digit"));
    }
    u32::from_str_radix(tok, 16).map_err(|_| Error::parse(line, column, "value out of range"))
}

pub fn read_vf(text: &str) -> Result<VectorialFunction> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let v = parse_header(header, "VF", &["n", "m", "t", "field"])?;
    let (n, m, t) = (v[0], v[1], v[2]);
    let field = field_from_header(n, v[3])?;
    let size = field.size();
    let mut outputs = Vec::with_capacity(size);
    let mut extra = Vec::with_capacity(size);
    let mut last = 1;
    for (li, line) in lines.enumerate() {
        let line_no = li + 2;
        last = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = line.find(trimmed).unwrap_or(0) + 1;
        if outputs.len() == size {
            return Err(Error::parse(
                line_no,
                column,
                "more lines than the table holds",
            ));
        }
        let (y, bits) = match trimmed.split_once('.') {
            Some((a, b)) => {
                if t == 0 {
                    return Err(Error::parse(
                        line_no,
                        column + a.len(),
                        "bits given with t=0",
                    ));
                }
                let y = parse_hex(a, line_no, column)?;
                (y, parse_hex(b, line_no, column + a.len() + 1)?)
            }
            None => {
                if t > 0 {
                    return Err(Error::parse(
                        line_no,
                        column + trimmed.len(),
                        "expected '.' and appended bits",
                    ));
                }
                (parse_hex(trimmed, line_no, column)?, 0)
            }
        };
        outputs.push(y);
        extra.push(bits);
    }
    if outputs.len() != size {
        return Err(Error::parse(
            last + 1,
            1,
            format!("expected {size} value lines, found {}", outputs.len()),
        ));
    }
    VectorialFunction::from_parts(&field, m, outputs, t, extra)
}

/// Read either format, dispatching on the first token.
pub fn read_table(text: &str) -> Result<TableFile> {
    let head = text.trim_start();
    if head.starts_with("BF") {
        read_bf(text).map(TableFile::Boolean)
    } else if head.starts_with("VF") {
        read_vf(text).map(TableFile::Vectorial)
    } else {
        Err(Error::parse(1, 1, "expected a BF or VF header"))
    }
}
