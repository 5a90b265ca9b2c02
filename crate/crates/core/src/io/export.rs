//! Sparse check-matrix files: MatrixMarket coordinate patterns and alist.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::codegen::{PauliType, StabilizerCode};
use crate::gf2::BitMatrix;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{kind} check matrix is empty ({rows}x{cols})")]
    Empty {
        kind: PauliType,
        rows: usize,
        cols: usize,
    },
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    MatrixMarket,
    Alist,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::MatrixMarket => "mtx",
            ExportFormat::Alist => "alist",
        }
    }
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mm" | "mtx" | "matrixmarket" => Ok(ExportFormat::MatrixMarket),
            "alist" => Ok(ExportFormat::Alist),
            _ => Err(format!("unknown format `{s}` (expected mm or alist)")),
        }
    }
}

/// Coordinate-pattern MatrixMarket text, entries sorted by row then column.
pub fn to_matrix_market(m: &BitMatrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate pattern general\n");
    writeln!(out, "{} {} {}", m.num_rows(), m.num_cols(), m.count_ones()).unwrap();
    for (r, row) in m.rows().iter().enumerate() {
        for c in row.ones() {
            writeln!(out, "{} {}", r + 1, c + 1).unwrap();
        }
    }
    out
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// alist text: sizes, maximum degrees, degree lists, then 1-based column and
/// row adjacency lists. Lists are not zero padded.
pub fn to_alist(m: &BitMatrix) -> String {
    let t = m.transpose();
    let col_deg: Vec<usize> = t.rows().iter().map(|c| c.weight()).collect();
    let row_deg: Vec<usize> = m.rows().iter().map(|r| r.weight()).collect();
    let mut out = String::new();
    writeln!(out, "{} {}", m.num_cols(), m.num_rows()).unwrap();
    writeln!(
        out,
        "{} {}",
        col_deg.iter().max().unwrap_or(&0),
        row_deg.iter().max().unwrap_or(&0)
    )
    .unwrap();
    writeln!(out, "{}", join(col_deg)).unwrap();
    writeln!(out, "{}", join(row_deg)).unwrap();
    for col in t.rows() {
        writeln!(out, "{}", join(col.ones().map(|r| r + 1))).unwrap();
    }
    for row in m.rows() {
        writeln!(out, "{}", join(row.ones().map(|c| c + 1))).unwrap();
    }
    out
}

pub fn render_matrix(m: &BitMatrix, format: ExportFormat) -> String {
    match format {
        ExportFormat::MatrixMarket => to_matrix_market(m),
        ExportFormat::Alist => to_alist(m),
    }
}

/// Writes `hx.<ext>` and `hz.<ext>` into `dir` and returns their paths.
pub fn export_checks(
    code: &StabilizerCode,
    format: ExportFormat,
    dir: &Path,
) -> Result<[PathBuf; 2], ExportError> {
    for kind in [PauliType::X, PauliType::Z] {
        let m = code.checks(kind);
        if m.num_rows() == 0 || m.num_cols() == 0 {
            return Err(ExportError::Empty {
                kind,
                rows: m.num_rows(),
                cols: m.num_cols(),
            });
        }
    }
    std::fs::create_dir_all(dir).map_err(|source| ExportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let write = |kind: PauliType, name: &str| -> Result<PathBuf, ExportError> {
        let path = dir.join(format!("{name}.{}", format.extension()));
        std::fs::write(&path, render_matrix(code.checks(kind), format)).map_err(|source| {
            ExportError::Io {
                path: path.clone(),
                source,
            }
        })?;
        Ok(path)
    };
    Ok([write(PauliType::X, "hx")?, write(PauliType::Z, "hz")?])
}
