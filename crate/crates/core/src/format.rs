//! Plain-text complex format.
//!
//! ```text
//! complex rp2 dim=2
//! cells 0: p
//! cells 1: e
//! cells 2: s
//! boundary 1:
//! e = 0*p
//! boundary 2:
//! s = 2*e
//! ```
//!
//! Every boundary block has exactly one line per cell. Omitted faces have
//! coefficient zero; an explicit `0*face` records that the attaching map
//! touches `face`, which may then be of any lower dimension (write `d:id` if
//! the id also names a cell one dimension down). `e = 0` attaches `e` to the
//! first 0-cell. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::complex::{resolve_face, CellComplex, CellRef};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Parses the text format. Structural errors carry a 1-based line and column;
/// chain-complex violations are reported by validation.
pub fn parse(text: &str) -> Result<CellComplex> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing `complex <name> dim=<k>` header"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (name, k) = match words.as_slice() {
        ["complex", name, dim] => {
            let k = dim
                .strip_prefix("dim=")
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(hl, column_of(header, dim), "expected `dim=<k>`"))?;
            (name.to_string(), k)
        }
        _ => return Err(Error::parse(hl, 1, "expected `complex <name> dim=<k>`")),
    };

    let mut last = hl;
    let mut ids: Vec<Vec<String>> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last + 1, 1, format!("missing `cells {j}:` line")))?;
        last = ln;
        let prefix = format!("cells {j}:");
        let rest = line
            .trim_start()
            .strip_prefix(&prefix)
            .ok_or_else(|| Error::parse(ln, 1, format!("expected `{prefix}`")))?;
        let level: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        for id in &level {
            if id.contains(['*', '=', '+', '-', ':']) {
                return Err(Error::parse(ln, column_of(line, id), format!("invalid cell id `{id}`")));
            }
        }
        ids.push(level);
    }
    let index: Vec<HashMap<&str, usize>> = ids
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
        .collect();

    let mut boundary = Vec::with_capacity(k);
    let mut attach: Vec<Vec<Vec<CellRef>>> = ids.iter().map(|l| vec![Vec::new(); l.len()]).collect();
    for j in 1..=k {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last + 1, 1, format!("missing `boundary {j}:` block")))?;
        last = ln;
        if line.trim() != format!("boundary {j}:") {
            return Err(Error::parse(ln, 1, format!("expected `boundary {j}:`")));
        }
        let mut m = IntMatrix::zeros(ids[j - 1].len(), ids[j].len());
        let mut seen = vec![false; ids[j].len()];
        for _ in 0..ids[j].len() {
            let (ln, line) = lines.next().ok_or_else(|| {
                Error::parse(last + 1, 1, format!("boundary {j} needs one line per cell"))
            })?;
            last = ln;
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(ln, 1, "expected `<cell> = <terms>`"))?;
            let id = lhs.trim();
            let &col = index[j].get(id).ok_or_else(|| {
                Error::parse(ln, column_of(line, id), format!("`{id}` is not a {j}-cell"))
            })?;
            if std::mem::replace(&mut seen[col], true) {
                return Err(Error::parse(ln, column_of(line, id), format!("second boundary line for `{id}`")));
            }
            let offset = lhs.len() + 1;
            for (coef, face, at) in parse_terms(rhs, ln, offset)? {
                let face_ref = match face.split_once(':') {
                    Some((d, fid)) if d.parse::<usize>().is_ok() => {
                        let d: usize = d.parse().expect("digits");
                        let hit = (d < j).then(|| index[d].get(fid)).flatten();
                        match hit {
                            Some(&i) if d == j - 1 || coef.is_zero() => Some(CellRef::new(d, i)),
                            _ => None,
                        }
                    }
                    _ => resolve_face(&index, j, &face, if coef.is_zero() { 0 } else { 1 }),
                };
                let f = face_ref.ok_or_else(|| {
                    Error::parse(ln, at, format!("`{face}` is not a face of a {j}-cell"))
                })?;
                if f.dim == j - 1 {
                    let v = m.get(f.index, col) + &coef;
                    m.set(f.index, col, v);
                }
                attach[j][col].push(f);
            }
        }
        boundary.push(m);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, 1, "unexpected content after the last boundary block"));
    }
    CellComplex::new(name, ids, boundary, Some(attach))
}

/// 1-based column of `needle` within `line` (by byte offset of its first occurrence).
fn column_of(line: &str, needle: &str) -> usize {
    line.find(needle).map_or(1, |p| line[..p].chars().count() + 1)
}

/// Parses `0`, or `[-] c*face (+|-) c*face ...`; a bare `face` means coefficient 1.
/// Returns `(coefficient, face, column)`.
fn parse_terms(rhs: &str, line: usize, offset: usize) -> Result<Vec<(BigInt, String, usize)>> {
    let chars: Vec<char> = rhs.chars().collect();
    let mut pos = 0;
    let col = |p: usize| offset + p + 1;
    let skip = |p: &mut usize| {
        while *p < chars.len() && chars[*p].is_whitespace() {
            *p += 1;
        }
    };
    let mut out = Vec::new();
    skip(&mut pos);
    if chars[pos..].iter().collect::<String>().trim() == "0" {
        return Ok(out);
    }
    let mut first = true;
    loop {
        skip(&mut pos);
        if pos >= chars.len() {
            if first {
                return Err(Error::parse(line, col(pos), "expected boundary terms or `0`"));
            }
            return Ok(out);
        }
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
            skip(&mut pos);
        } else if !first {
            return Err(Error::parse(line, col(pos), "expected `+` or `-` between terms"));
        }
        first = false;
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coef = BigInt::from(1);
        if pos > start {
            coef = chars[start..pos].iter().collect::<String>().parse().expect("digits");
            skip(&mut pos);
            if pos >= chars.len() || chars[pos] != '*' {
                return Err(Error::parse(line, col(pos), "expected `*` after coefficient"));
            }
            pos += 1;
            skip(&mut pos);
        }
        let fstart = pos;
        while pos < chars.len() && !chars[pos].is_whitespace() && !matches!(chars[pos], '+' | '*' | '=') {
            if chars[pos] == '-' && pos > fstart {
                break;
            }
            pos += 1;
        }
        if pos == fstart || chars[fstart] == '-' {
            return Err(Error::parse(line, col(fstart), "expected a face id"));
        }
        let face: String = chars[fstart..pos].iter().collect();
        if negative {
            coef = -coef;
        }
        out.push((coef, face, col(fstart)));
    }
}

/// Canonical text form; `parse(&serialize(k))` reproduces `k`.
pub fn serialize(k: &CellComplex) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "complex {} dim={}", k.name(), k.dim());
    for j in 0..=k.dim() {
        let _ = write!(s, "cells {j}:");
        for id in k.ids(j) {
            let _ = write!(s, " {id}");
        }
        s.push('\n');
    }
    for j in 1..=k.dim() {
        let _ = writeln!(s, "boundary {j}:");
        for cell in k.cells(j) {
            let _ = write!(s, "{} =", k.id(cell));
            for (n, &face) in k.attach(cell).iter().enumerate() {
                let c = k.coefficient(cell, face);
                let mut name = k.id(face).to_string();
                if face.dim + 1 != j && k.find(j - 1, &name).is_some() {
                    name = format!("{}:{name}", face.dim);
                }
                if n == 0 {
                    let _ = write!(s, " {c}*{name}");
                } else if c.is_negative() {
                    let _ = write!(s, " - {}*{name}", c.abs());
                } else {
                    let _ = write!(s, " + {c}*{name}");
                }
            }
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::test_family;

    #[test]
    fn every_builtin_round_trips() {
        for k in test_family() {
            let text = serialize(&k);
            let back = parse(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", k.name()));
            assert_eq!(back, k, "{}", k.name());
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn rp2_text() {
        let k = crate::catalog::builtin("rp2").unwrap();
        assert_eq!(
            serialize(&k),
            "complex rp2 dim=2\ncells 0: p\ncells 1: e\ncells 2: s\nboundary 1:\ne = 0*p\nboundary 2:\ns = 2*e\n"
        );
    }

    #[test]
    fn lenient_input() {
        let text = "# a disc\ncomplex d dim=2\ncells 0: p\ncells 1: e\ncells 2: s\n\nboundary 1:\ne = 0\nboundary 2:\ns = e # glued once\n";
        let k = parse(text).unwrap();
        assert_eq!(k.boundary(2), &IntMatrix::from_rows(&[[1]]));
        let text = "complex t dim=1\ncells 0: p q\ncells 1: a\nboundary 1:\na = - 1*p + q\n";
        assert_eq!(parse(text).unwrap().boundary(1), &IntMatrix::from_rows(&[[-1], [1]]));
    }

    #[test]
    fn missing_line_is_a_parse_error() {
        let text = "complex t dim=1\ncells 0: p q\ncells 1: a b\nboundary 1:\na = -1*p + 1*q\n";
        let err = parse(text).unwrap_err();
        assert_eq!(err.code(), "ParseError");
        assert!(matches!(err, Error::Parse { line: 6, .. }), "{err:?}");
        let text = "complex t dim=1\ncells 0: p q\n";
        assert!(matches!(parse(text).unwrap_err(), Error::Parse { line: 3, .. }));
    }

    #[test]
    fn errors_carry_positions() {
        let text = "complex t dim=1\ncells 0: p q\ncells 1: a\nboundary 1:\na = -1*p + 1*r\n";
        assert_eq!(parse(text).unwrap_err(), Error::parse(5, 14, "`r` is not a face of a 1-cell"));
        let text = "complex t dim=1\ncells 0: p q\ncells 1: a\nboundary 1:\na = -1*p 1*q\n";
        assert_eq!(parse(text).unwrap_err().code(), "ParseError");
        let text = "complex t dim=x\n";
        assert!(matches!(parse(text).unwrap_err(), Error::Parse { line: 1, column: 11, .. }));
    }

    #[test]
    fn chain_violations_come_from_validation() {
        let text = "complex t dim=2\ncells 0: p q\ncells 1: e\ncells 2: s\nboundary 1:\ne = -1*p + 1*q\nboundary 2:\ns = 1*e\n";
        assert_eq!(parse(text).unwrap_err().code(), "BoundarySquareNonzero");
    }
}
