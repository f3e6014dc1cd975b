//! Text formats for states, bases and eigenvalue curves.
//!
//! A state file is a sequence of `key = value` lines followed by the real
//! and imaginary parts of a matrix, one row per line:
//!
//! ```text
//! kind = state
//! dims = 2 4
//! rows = 8
//! cols = 8
//! meta.a = 2
//! matrix_re
//! 1.7750000000000000e-1 0.0000000000000000e0 ...
//! matrix_im
//! ...
//! ```
//!
//! Numbers carry 17 significant digits, enough to reproduce every `f64`
//! exactly. Lines starting with `#` are comments.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use sepfaces::path::EigenvalueCurves;
use sepfaces::{BipartiteState, Complex64, ComplexMatrix, Dims, Subspace, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.field, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, field: &str, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

/// What the rows of a [`StateFile`] matrix mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    /// A density matrix.
    State,
    /// Rows spanning a subspace.
    Basis,
    /// Rows are product vectors `x ⊗ y`.
    Vectors,
}

impl FileKind {
    fn as_str(&self) -> &'static str {
        match self {
            FileKind::State => "state",
            FileKind::Basis => "basis",
            FileKind::Vectors => "vectors",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "state" => Some(FileKind::State),
            "basis" => Some(FileKind::Basis),
            "vectors" => Some(FileKind::Vectors),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateFile {
    pub kind: FileKind,
    pub dims: Dims,
    pub matrix: ComplexMatrix,
    pub metadata: BTreeMap<String, String>,
}

pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

impl StateFile {
    pub fn from_state(state: &BipartiteState) -> Self {
        Self {
            kind: FileKind::State,
            dims: state.dims(),
            matrix: state.matrix().clone(),
            metadata: BTreeMap::new(),
        }
    }

    /// One row per orthonormal basis vector. Fails for the zero subspace.
    pub fn from_subspace(subspace: &Subspace, dims: Dims) -> Option<Self> {
        Some(Self {
            kind: FileKind::Basis,
            dims,
            matrix: subspace.basis_matrix()?.transpose(),
            metadata: BTreeMap::new(),
        })
    }

    pub fn from_vectors(vectors: &[Vec<Complex64>], dims: Dims) -> Option<Self> {
        Some(Self {
            kind: FileKind::Vectors,
            dims,
            matrix: ComplexMatrix::from_rows(vectors).ok()?,
            metadata: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("kind = {}\n", self.kind.as_str()));
        out.push_str(&format!("dims = {} {}\n", self.dims.m, self.dims.n));
        out.push_str(&format!("rows = {}\n", self.matrix.rows()));
        out.push_str(&format!("cols = {}\n", self.matrix.cols()));
        for (k, v) in &self.metadata {
            out.push_str(&format!("meta.{k} = {v}\n"));
        }
        for (name, part) in [("matrix_re", 0), ("matrix_im", 1)] {
            out.push_str(name);
            out.push('\n');
            for i in 0..self.matrix.rows() {
                let row: Vec<String> = (0..self.matrix.cols())
                    .map(|j| {
                        let z = self.matrix[(i, j)];
                        format_number(if part == 0 { z.re } else { z.im })
                    })
                    .collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let mut header: BTreeMap<String, (usize, String)> = BTreeMap::new();
        let mut metadata = BTreeMap::new();
        let mut arrays: Vec<(usize, &str)> = Vec::new();
        for (no, line) in lines.by_ref() {
            if line == "matrix_re" {
                arrays.push((no, line));
                break;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(no, line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(m) = key.strip_prefix("meta.") {
                metadata.insert(m.to_string(), value.to_string());
            } else if header.insert(key.to_string(), (no, value.to_string())).is_some() {
                return Err(err(no, key, "duplicate key"));
            }
        }
        if arrays.is_empty() {
            return Err(err(text.lines().count(), "matrix_re", "missing array"));
        }

        let header_end = arrays[0].0;
        let field = |key: &str| -> Result<&(usize, String), ParseError> {
            header.get(key).ok_or_else(|| err(header_end, key, "missing key"))
        };
        let count = |key: &str| -> Result<usize, ParseError> {
            let (no, v) = field(key)?;
            v.parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| err(*no, key, format!("expected a positive integer, got `{v}`")))
        };

        let (no, kind_text) = field("kind")?;
        let kind = FileKind::parse(kind_text)
            .ok_or_else(|| err(*no, "kind", format!("unknown kind `{kind_text}`")))?;
        let (dims_line, dims_text) = field("dims")?;
        let dims_parts: Vec<usize> = dims_text
            .split_whitespace()
            .map(|s| s.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err(*dims_line, "dims", format!("expected two integers, got `{dims_text}`")))?;
        let &[m, n] = dims_parts.as_slice() else {
            return Err(err(*dims_line, "dims", format!("expected two integers, got `{dims_text}`")));
        };
        let rows = count("rows")?;
        let cols = count("cols")?;
        if cols != m * n {
            return Err(err(field("cols")?.0, "cols", format!("{cols} does not match dims {m} x {n}")));
        }
        if kind == FileKind::State && rows != cols {
            return Err(err(field("rows")?.0, "rows", "a state must be square"));
        }

        let re = read_block(&mut lines, "matrix_re", rows, cols)?;
        match lines.next() {
            Some((_, "matrix_im")) => {}
            Some((no, line)) => return Err(err(no, "matrix_im", format!("expected `matrix_im`, got `{line}`"))),
            None => return Err(err(0, "matrix_im", "missing array")),
        }
        let im = read_block(&mut lines, "matrix_im", rows, cols)?;
        if let Some((no, line)) = lines.next() {
            return Err(err(no, line, "unexpected trailing content"));
        }

        let data = re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let matrix = ComplexMatrix::new(rows, cols, data).map_err(|e| err(0, "matrix", e.to_string()))?;
        if kind == FileKind::State {
            let dev = matrix.hermitian_deviation();
            if dev > Tolerance::default().match_tol {
                return Err(err(0, "matrix", format!("state is not Hermitian (deviation {dev:.3e})")));
            }
        }
        Ok(Self {
            kind,
            dims: Dims::new(m, n),
            matrix,
            metadata,
        })
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<(), String> {
        std::fs::write(path, self.to_text()).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn to_state(&self, tol: &Tolerance) -> Result<BipartiteState, String> {
        if self.kind != FileKind::State {
            return Err(format!("expected a state file, got kind `{}`", self.kind.as_str()));
        }
        BipartiteState::new(self.dims, self.matrix.clone(), tol).map_err(|e| e.to_string())
    }

    /// Span of the rows.
    pub fn to_subspace(&self, tol: &Tolerance) -> Result<Subspace, String> {
        if self.kind == FileKind::State {
            return Err("expected a basis file, got a state".into());
        }
        let rows: Vec<_> = (0..self.matrix.rows()).map(|i| self.matrix.row(i)).collect();
        Subspace::span(self.matrix.cols(), &rows, tol).map_err(|e| e.to_string())
    }

    pub fn meta_f64(&self, key: &str) -> Option<f64> {
        self.metadata.get(key)?.parse().ok()
    }
}

fn read_block<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    name: &str,
    rows: usize,
    cols: usize,
) -> Result<Vec<f64>, ParseError> {
    let mut values = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (no, line) = lines
            .next()
            .ok_or_else(|| err(0, name, format!("expected {rows} rows, found {r}")))?;
        let row: Vec<f64> = line
            .split_whitespace()
            .enumerate()
            .map(|(c, s)| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(no, &format!("{name}[{r}][{c}]"), format!("bad number `{s}`")))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(err(no, &format!("{name}[{r}]"), format!("expected {cols} values, got {}", row.len())));
        }
        values.extend(row);
    }
    Ok(values)
}

pub fn curve_header(size: usize) -> String {
    let mut cols = vec!["t".to_string()];
    cols.extend((1..=size).map(|k| format!("l{k}")));
    cols.extend((1..=size).map(|k| format!("m{k}")));
    cols.join(",")
}

pub fn curves_to_csv(curves: &EigenvalueCurves) -> String {
    let size = curves.lambda.first().map_or(0, Vec::len);
    let mut out = curve_header(size);
    out.push('\n');
    for ((t, l), m) in curves.ts.iter().zip(&curves.lambda).zip(&curves.mu) {
        let row: Vec<String> = std::iter::once(t).chain(l).chain(m).map(|&v| format_number(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn curves_from_csv(text: &str) -> Result<EigenvalueCurves, ParseError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| err(1, "header", "empty file"))?;
    let width = header.split(',').count();
    if width < 3 || width % 2 == 0 || header != curve_header((width - 1) / 2) {
        return Err(err(1, "header", format!("unexpected header `{header}`")));
    }
    let size = (width - 1) / 2;
    let mut curves = EigenvalueCurves {
        ts: Vec::new(),
        lambda: Vec::new(),
        mu: Vec::new(),
    };
    for (no, line) in lines.filter(|(_, l)| !l.is_empty()) {
        let values: Vec<f64> = line
            .split(',')
            .enumerate()
            .map(|(c, s)| s.parse::<f64>().map_err(|_| err(no, &format!("column {}", c + 1), format!("bad number `{s}`"))))
            .collect::<Result<_, _>>()?;
        if values.len() != width {
            return Err(err(no, "row", format!("expected {width} columns, got {}", values.len())));
        }
        if curves.ts.last().is_some_and(|&prev| values[0] <= prev) {
            return Err(err(no, "t", "parameters must increase strictly"));
        }
        curves.ts.push(values[0]);
        curves.lambda.push(values[1..=size].to_vec());
        curves.mu.push(values[size + 1..].to_vec());
    }
    Ok(curves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> StateFile {
        let m = ComplexMatrix::from_fn(8, 8, |i, j| {
            let re = 1.0 / (1.0 + i as f64 + j as f64);
            let im = if i == j { 0.0 } else { (i as f64 - j as f64) / 7.0 };
            Complex64::new(re, im)
        });
        StateFile {
            kind: FileKind::State,
            dims: Dims::QUBIT_QUDIT,
            matrix: m,
            metadata: BTreeMap::new(),
        }
        .with_meta("a", 2)
    }

    #[test]
    fn round_trip_is_exact() {
        let f = sample();
        let back = StateFile::parse(&f.to_text()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_text(), f.to_text());
    }

    #[test]
    fn errors_name_line_and_field() {
        let text = sample().to_text().replacen("dims = 2 4", "dims = 2 x", 1);
        let e = StateFile::parse(&text).unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (2, "dims"));

        let mut lines: Vec<String> = sample().to_text().lines().map(String::from).collect();
        let row = lines.iter().position(|l| l == "matrix_re").unwrap() + 3;
        lines[row] = lines[row].replacen(' ', " oops ", 1);
        let e = StateFile::parse(&lines.join("\n")).unwrap_err();
        assert_eq!(e.line, row + 1);
        assert!(e.field.starts_with("matrix_re[2]"), "{e}");
    }

    #[test]
    fn non_hermitian_state_is_rejected() {
        let mut f = sample();
        f.matrix[(0, 1)] = Complex64::new(5.0, 0.0);
        assert!(StateFile::parse(&f.to_text()).unwrap_err().message.contains("Hermitian"));
    }

    #[test]
    fn curves_round_trip() {
        let c = EigenvalueCurves {
            ts: vec![0.0, 0.5],
            lambda: vec![vec![0.25, 0.75], vec![0.5, 0.5]],
            mu: vec![vec![0.1, 0.9], vec![0.3, 0.7]],
        };
        let text = curves_to_csv(&c);
        assert!(text.starts_with("t,l1,l2,m1,m2\n"));
        assert_eq!(curves_from_csv(&text).unwrap(), c);
    }
}
