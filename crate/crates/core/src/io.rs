//! Text formats.
//!
//! **Matrix**: a header line `n k`, then `n` lines of exactly `k` characters
//! from `{0,1}`. Every line ends with `\n`; nothing else is accepted.
//!
//! ```text
//! 3 2
//! 10
//! 11
//! 01
//! ```
//!
//! **Vector**: one line of `0`/`1` characters.
//!
//! **Partial linear space**: a header `v b`, then `b` lines each listing the
//! point indices of one line, ascending, separated by single spaces.
//!
//! **Scheme descriptor**:
//!
//! ```text
//! resgt-scheme 1
//! source W(2)
//! certified_d 2
//! matrix
//! <matrix block>
//! ```
//!
//! `source` and `certified_d` are optional but, when present, appear in
//! that order. `source` is free text up to the end of its line. Reading a
//! descriptor re-verifies `certified_d`.

use std::fmt::Write as _;

use crate::boolsemi::{BoolMatrix, BoolVec};
use crate::error::{Error, Result};
use crate::geometry::{validate_pls, PartialLinearSpace};
use crate::residuation::TestingScheme;

pub const SCHEME_MAGIC: &str = "resgt-scheme 1";

/// Splits into `\n`-terminated lines; a missing final newline or a `\r` is an error.
fn strict_lines(text: &str) -> Result<Vec<&str>> {
    if text.is_empty() {
        return Err(Error::format(1, "empty input"));
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(Error::format(
            text.lines().count(),
            "missing newline at end of input",
        ));
    };
    let lines: Vec<&str> = body.split('\n').collect();
    if let Some(i) = lines.iter().position(|l| l.contains('\r')) {
        return Err(Error::format(i + 1, "carriage return not allowed"));
    }
    Ok(lines)
}

fn parse_dims(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let bad = || Error::format(lineno, format!("expected two positive integers, got {line:?}"));
    let mut parts = line.split(' ');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(bad());
    };
    let num = |s: &str| {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
            return Err(bad());
        }
        s.parse::<usize>().map_err(|_| bad())
    };
    let (a, b) = (num(a)?, num(b)?);
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_bits(line: &str, lineno: usize, expected: usize) -> Result<BoolVec> {
    if line.len() != expected {
        return Err(Error::format(
            lineno,
            format!("expected {expected} characters, got {}", line.len()),
        ));
    }
    line.parse::<BoolVec>().map_err(|e| match e {
        Error::Format { message, .. } => Error::format(lineno, message),
        other => other,
    })
}

fn matrix_from_lines(lines: &[&str], first_line: usize) -> Result<BoolMatrix> {
    let header = lines
        .first()
        .ok_or_else(|| Error::format(first_line, "missing matrix header"))?;
    let (n, k) = parse_dims(header, first_line)?;
    if lines.len() != n + 1 {
        return Err(Error::format(
            first_line + lines.len().min(n + 1),
            format!("expected {n} matrix rows, got {}", lines.len() - 1),
        ));
    }
    let rows = lines[1..]
        .iter()
        .enumerate()
        .map(|(i, l)| parse_bits(l, first_line + 1 + i, k))
        .collect::<Result<Vec<_>>>()?;
    BoolMatrix::from_rows(rows)
}

pub fn read_matrix(text: &str) -> Result<BoolMatrix> {
    matrix_from_lines(&strict_lines(text)?, 1)
}

pub fn write_matrix(h: &BoolMatrix) -> String {
    let mut out = format!("{} {}\n", h.nrows(), h.ncols());
    for r in h.rows() {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn read_vector(text: &str) -> Result<BoolVec> {
    let lines = strict_lines(text)?;
    if lines.len() != 1 || lines[0].is_empty() {
        return Err(Error::format(1, "expected a single nonempty line of 0/1"));
    }
    parse_bits(lines[0], 1, lines[0].len())
}

pub fn write_vector(v: &BoolVec) -> String {
    format!("{v}\n")
}

pub fn read_pls(text: &str) -> Result<PartialLinearSpace> {
    let lines = strict_lines(text)?;
    let (v, b) = parse_dims(lines[0], 1)?;
    if lines.len() != b + 1 {
        return Err(Error::format(
            lines.len(),
            format!("expected {b} lines, got {}", lines.len() - 1),
        ));
    }
    let mut blocks = Vec::with_capacity(b);
    for (i, l) in lines[1..].iter().enumerate() {
        let lineno = i + 2;
        let pts = l
            .split(' ')
            .map(|t| {
                if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(Error::format(lineno, format!("bad point index {t:?}")));
                }
                t.parse::<usize>()
                    .map_err(|_| Error::format(lineno, format!("bad point index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if pts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::format(lineno, "point indices must be strictly ascending"));
        }
        blocks.push(pts);
    }
    validate_pls(v, blocks)
}

pub fn write_pls(pls: &PartialLinearSpace) -> String {
    let mut out = format!("{} {}\n", pls.points(), pls.lines().len());
    for l in pls.lines() {
        let pts: Vec<String> = l.iter().map(usize::to_string).collect();
        out.push_str(&pts.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_scheme(scheme: &TestingScheme) -> String {
    let mut out = format!("{SCHEME_MAGIC}\n");
    if let Some(src) = scheme.source() {
        let _ = writeln!(out, "source {src}");
    }
    if let Some(d) = scheme.certified_d() {
        let _ = writeln!(out, "certified_d {d}");
    }
    out.push_str("matrix\n");
    out.push_str(&write_matrix(scheme.matrix()));
    out
}

/// Parses a scheme descriptor, re-checking `certified_d` with `workers` threads.
pub fn read_scheme(text: &str, workers: usize) -> Result<TestingScheme> {
    let lines = strict_lines(text)?;
    if lines[0] != SCHEME_MAGIC {
        return Err(Error::format(1, format!("expected {SCHEME_MAGIC:?}")));
    }
    let mut i = 1;
    let mut source = None;
    let mut certified = None;
    if let Some(rest) = lines.get(i).and_then(|l| l.strip_prefix("source ")) {
        if rest.is_empty() {
            return Err(Error::format(i + 1, "empty source"));
        }
        source = Some(rest.to_string());
        i += 1;
    }
    if let Some(rest) = lines.get(i).and_then(|l| l.strip_prefix("certified_d ")) {
        if rest.is_empty() || !rest.bytes().all(|c| c.is_ascii_digit()) || (rest.len() > 1 && rest.starts_with('0')) {
            return Err(Error::format(i + 1, format!("bad certified_d {rest:?}")));
        }
        certified = Some(
            rest.parse::<usize>()
                .map_err(|_| Error::format(i + 1, format!("bad certified_d {rest:?}")))?,
        );
        i += 1;
    }
    if lines.get(i) != Some(&"matrix") {
        return Err(Error::format(i + 1, "expected \"matrix\""));
    }
    let h = matrix_from_lines(&lines[i + 1..], i + 2)?;
    let mut scheme = TestingScheme::new(h)?;
    if let Some(src) = source {
        scheme = scheme.with_source(src);
    }
    if let Some(d) = certified {
        scheme = scheme.certify(d, workers)?;
    }
    Ok(scheme)
}

/// Reads either a bare matrix or a scheme descriptor.
pub fn read_matrix_or_scheme(text: &str, workers: usize) -> Result<TestingScheme> {
    if text.starts_with(SCHEME_MAGIC) {
        read_scheme(text, workers)
    } else {
        TestingScheme::new(read_matrix(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{construct_grid, construct_symplectic};

    #[test]
    fn matrix_round_trip() {
        let text = "3 2\n10\n11\n01\n";
        let h = read_matrix(text).unwrap();
        assert_eq!(h, BoolMatrix::parse_rows(&["10", "11", "01"]).unwrap());
        assert_eq!(write_matrix(&h), text);
    }

    #[test]
    fn matrix_rejects() {
        for bad in [
            "",
            "3 2\n10\n11\n01",
            "3 2\n10\n11\n",
            "3 2\n10\n11\n01\n\n",
            "3 2\n10\n1 1\n01\n",
            "3 2\n10\n111\n01\n",
            "3 2\n10\n12\n01\n",
            "3  2\n10\n11\n01\n",
            "3 2 \n10\n11\n01\n",
            "03 2\n10\n11\n01\n",
            "0 2\n",
            "3 2\r\n10\r\n11\r\n01\r\n",
            "x\n",
        ] {
            assert!(read_matrix(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn matrix_error_line_numbers() {
        assert_eq!(
            read_matrix("2 2\n10\n1x\n").unwrap_err(),
            Error::format(3, "unexpected character 'x' at column 2")
        );
    }

    #[test]
    fn vectors() {
        assert_eq!(read_vector("0110\n").unwrap(), "0110".parse().unwrap());
        assert_eq!(write_vector(&"101".parse().unwrap()), "101\n");
        assert!(read_vector("\n").is_err());
        assert!(read_vector("01\n10\n").is_err());
        assert!(read_vector("012\n").is_err());
    }

    #[test]
    fn pls_round_trip() {
        let g = construct_grid(2).unwrap();
        let text = write_pls(g.pls());
        assert!(text.starts_with("9 6\n0 1 2\n"));
        let back = read_pls(&text).unwrap();
        assert_eq!(&back, g.pls());
        assert_eq!(write_pls(&back), text);
        assert!(read_pls("3 1\n2 1\n").is_err());
        assert!(read_pls("3 1\n0  1\n").is_err());
        assert!(read_pls("4 2\n0 1 2\n1 2 3\n").is_err());
    }

    #[test]
    fn scheme_round_trip() {
        let s = construct_symplectic(2).unwrap().to_testing_scheme(1).unwrap();
        let text = write_scheme(&s);
        assert!(text.starts_with("resgt-scheme 1\nsource W(2)\ncertified_d 2\nmatrix\n15 15\n"));
        let back = read_scheme(&text, 1).unwrap();
        assert_eq!(back, s);
        assert_eq!(write_scheme(&back), text);

        let bare = TestingScheme::new(BoolMatrix::identity(2)).unwrap();
        let text = write_scheme(&bare);
        assert_eq!(text, "resgt-scheme 1\nmatrix\n2 2\n10\n01\n");
        assert_eq!(read_scheme(&text, 1).unwrap(), bare);
    }

    #[test]
    fn scheme_rejects() {
        // certified_d that does not hold
        let lie = "resgt-scheme 1\ncertified_d 1\nmatrix\n3 2\n10\n11\n01\n";
        assert_eq!(read_scheme(lie, 1), Err(Error::Certification { d: 1 }));
        // fields out of order
        let swapped = "resgt-scheme 1\ncertified_d 0\nsource x\nmatrix\n1 1\n1\n";
        assert!(read_scheme(swapped, 1).is_err());
        assert!(read_scheme("resgt-scheme 2\nmatrix\n1 1\n1\n", 1).is_err());
        assert!(read_scheme("resgt-scheme 1\nmatrix\n1 1\n1\n1\n", 1).is_err());
    }

    #[test]
    fn either_format() {
        let m = read_matrix_or_scheme("1 1\n1\n", 1).unwrap();
        assert_eq!(m.certified_d(), None);
        let s = read_matrix_or_scheme("resgt-scheme 1\ncertified_d 0\nmatrix\n1 1\n1\n", 1)
            .unwrap();
        assert_eq!(s.certified_d(), Some(0));
    }
}
