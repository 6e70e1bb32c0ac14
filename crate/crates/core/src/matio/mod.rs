//! File formats, graph generators and report writers.

mod config;
mod generate;
mod mm;

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::eliminator::HermitianInput;
use crate::error::Result;
use crate::hypergraph::Hypergraph;

pub use config::{ExperimentConfig, GraphSource};
pub use generate::{connected_components, generate, random_decomposition, random_hermitian, GraphSpec};
pub use mm::{
    parse_matrix_market, read_matrix_market, write_array, write_eigenvalues, write_hermitian, write_pattern,
    MatrixMarket,
};

/// A graph loaded from disk, with values when the file had them.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub hypergraph: Hypergraph,
    pub matrix: Option<HermitianInput>,
}

/// Reads a Matrix Market file (by its `%%MatrixMarket` header) or the
/// hypergraph text format.
pub fn load_graph(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().to_ascii_lowercase().starts_with("%%matrixmarket") {
        let mm = parse_matrix_market(&text)?;
        let hypergraph = Hypergraph::from_matrix_pattern(&mm.pattern())?;
        let matrix = match mm {
            MatrixMarket::Hermitian(a) => Some(a),
            MatrixMarket::Pattern(_) => None,
        };
        Ok(LoadedGraph { hypergraph, matrix })
    } else {
        Ok(LoadedGraph {
            hypergraph: Hypergraph::from_text(&text)?,
            matrix: None,
        })
    }
}

/// Comma-separated table with a header line.
pub fn csv_table<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<&str> = row.iter().map(|c| c.as_ref()).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// Writes `text`, creating parent directories.
pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    write_text(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let t = csv_table(&["a", "b"], &[vec!["1".to_string(), "2".to_string()]]);
        assert_eq!(t, "a,b\n1,2\n");
    }
}
