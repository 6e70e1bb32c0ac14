//! Matrix Market coordinate reader and writers.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eliminator::HermitianInput;
use crate::error::{Error, Result};
use crate::pattern::SparsityPattern;

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixMarket {
    Hermitian(HermitianInput),
    Pattern(SparsityPattern),
}

impl MatrixMarket {
    pub fn pattern(&self) -> SparsityPattern {
        match self {
            MatrixMarket::Hermitian(a) => a.pattern(),
            MatrixMarket::Pattern(p) => p.clone(),
        }
    }

    /// Numeric matrix, or an error for pattern-only files.
    pub fn into_hermitian(self) -> Result<HermitianInput> {
        match self {
            MatrixMarket::Hermitian(a) => Ok(a),
            MatrixMarket::Pattern(_) => Err(Error::InvalidInput(
                "a pattern file has no values; a real symmetric or complex hermitian file is needed".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Complex,
    Pattern,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<MatrixMarket> {
    parse_matrix_market(&std::fs::read_to_string(path)?)
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses coordinate files with `real|integer symmetric`,
/// `complex hermitian` or `pattern symmetric` headers. Indices are 1-based
/// in the file; duplicate entries are summed.
pub fn parse_matrix_market(text: &str) -> Result<MatrixMarket> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
    let words: Vec<String> = header.split_whitespace().map(|w| w.to_ascii_lowercase()).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(perr(
            hline,
            "expected `%%MatrixMarket matrix coordinate <field> <symmetry>`",
        ));
    }
    if words[2] != "coordinate" {
        return Err(perr(
            hline,
            format!("unsupported format `{}`; only coordinate is read", words[2]),
        ));
    }
    let field = match words[3].as_str() {
        "real" | "integer" => Field::Real,
        "complex" => Field::Complex,
        "pattern" => Field::Pattern,
        f => return Err(perr(hline, format!("unsupported field `{f}`"))),
    };
    let expected = match field {
        Field::Complex => "hermitian",
        _ => "symmetric",
    };
    if words[4] != expected {
        return Err(perr(
            hline,
            format!(
                "symmetry `{}` not supported for this field; expected `{expected}`",
                words[4]
            ),
        ));
    }

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (sline, size) = body.next().ok_or_else(|| perr(hline, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| perr(sline, format!("bad size entry `{w}`"))))
        .collect::<Result<_>>()?;
    if dims.len() != 3 {
        return Err(perr(sline, "size line needs rows, columns and entry count"));
    }
    let (rows, cols, nnz) = (dims[0], dims[1], dims[2]);
    if rows != cols {
        return Err(perr(
            sline,
            format!("{expected} matrix must be square, got {rows}x{cols}"),
        ));
    }
    let n = rows;

    let mut herm = HermitianInput::new(n);
    let mut pat = SparsityPattern::new(n, n);
    let mut count = 0;
    for (ln, l) in body {
        let w: Vec<&str> = l.split_whitespace().collect();
        let want = match field {
            Field::Pattern => 2,
            Field::Real => 3,
            Field::Complex => 4,
        };
        if w.len() != want {
            return Err(perr(ln, format!("expected {want} fields, found {}", w.len())));
        }
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| perr(ln, format!("bad index `{s}`")))?;
            if v == 0 || v > n {
                return Err(perr(ln, format!("index {v} outside 1..={n}")));
            }
            Ok(v - 1)
        };
        let num = |s: &str| -> Result<f64> { s.parse().map_err(|_| perr(ln, format!("bad value `{s}`"))) };
        let (i, j) = (idx(w[0])?, idx(w[1])?);
        if i < j {
            return Err(perr(
                ln,
                format!("entry ({}, {}) above the diagonal in a {expected} file", i + 1, j + 1),
            ));
        }
        match field {
            Field::Pattern => {
                pat.insert(i, j)?;
                pat.insert(j, i)?;
            }
            Field::Real => herm
                .add(i, j, Complex64::new(num(w[2])?, 0.0))
                .map_err(|e| perr(ln, e.to_string()))?,
            Field::Complex => herm
                .add(i, j, Complex64::new(num(w[2])?, num(w[3])?))
                .map_err(|e| perr(ln, e.to_string()))?,
        }
        count += 1;
    }
    if count != nnz {
        return Err(perr(
            sline,
            format!("size line announces {nnz} entries, file has {count}"),
        ));
    }
    Ok(match field {
        Field::Pattern => MatrixMarket::Pattern(pat),
        _ => MatrixMarket::Hermitian(herm),
    })
}

/// Symmetric pattern as a `pattern symmetric` file (lower triangle).
pub fn write_pattern(p: &SparsityPattern) -> String {
    let entries: Vec<(usize, usize)> = p.iter().filter(|&(i, j)| i >= j).collect();
    let mut s = String::from("%%MatrixMarket matrix coordinate pattern symmetric\n");
    let _ = writeln!(s, "{} {} {}", p.n_rows(), p.n_cols(), entries.len());
    for (i, j) in entries {
        let _ = writeln!(s, "{} {}", i + 1, j + 1);
    }
    s
}

/// `complex hermitian` file, or `real symmetric` when every value is real.
pub fn write_hermitian(a: &HermitianInput) -> String {
    let real = a.lower_entries().all(|(_, _, v)| v.im == 0.0);
    let mut entries: Vec<(usize, usize, Complex64)> = (0..a.n())
        .filter(|&i| a.diag()[i] != 0.0)
        .map(|i| (i, i, Complex64::new(a.diag()[i], 0.0)))
        .collect();
    entries.extend(a.lower_entries());
    entries.sort_by_key(|&(i, j, _)| (j, i));
    let mut s = String::from(if real {
        "%%MatrixMarket matrix coordinate real symmetric\n"
    } else {
        "%%MatrixMarket matrix coordinate complex hermitian\n"
    });
    let _ = writeln!(s, "{} {} {}", a.n(), a.n(), entries.len());
    for (i, j, v) in entries {
        if real {
            let _ = writeln!(s, "{} {} {:e}", i + 1, j + 1, v.re);
        } else {
            let _ = writeln!(s, "{} {} {:e} {:e}", i + 1, j + 1, v.re, v.im);
        }
    }
    s
}

/// Dense complex matrix in `array complex general` format (column-major).
pub fn write_array(q: &DMatrix<Complex64>) -> String {
    let mut s = String::from("%%MatrixMarket matrix array complex general\n");
    let _ = writeln!(s, "{} {}", q.nrows(), q.ncols());
    for j in 0..q.ncols() {
        for i in 0..q.nrows() {
            let v = q[(i, j)];
            let _ = writeln!(s, "{:e} {:e}", v.re, v.im);
        }
    }
    s
}

/// One value per line, shortest representation that round-trips.
pub fn write_eigenvalues(lambda: &[f64]) -> String {
    let mut s = String::new();
    for v in lambda {
        let _ = writeln!(s, "{v:e}");
    }
    s
}
