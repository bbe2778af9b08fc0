//! Operator files: JSON with `n_qubits`, row-major `entries` of `[re, im]`
//! pairs, and an optional free-form `meta` object.
//!
//! Files are written in one canonical layout (one matrix row per line,
//! shortest round-trip numbers, sorted meta keys) so that load → save
//! reproduces the input byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use popmap::linalg::{ComplexMatrix, MAX_QUBITS};
use popmap::HermitianOperator;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFile {
    pub operator: HermitianOperator,
    pub meta: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    n_qubits: usize,
    entries: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    meta: Map<String, Value>,
}

impl OperatorFile {
    pub fn new(operator: HermitianOperator) -> Self {
        Self {
            operator,
            meta: Map::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let raw: Raw = serde_json::from_str(text)?;
        if raw.n_qubits == 0 || raw.n_qubits > MAX_QUBITS {
            return Err(CliError::Format(format!("n_qubits = {} outside 1..={MAX_QUBITS}", raw.n_qubits)));
        }
        let dim = 1usize << raw.n_qubits;
        if raw.entries.len() != dim {
            return Err(CliError::Format(format!("expected {dim} rows, found {}", raw.entries.len())));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in raw.entries.iter().enumerate() {
            if row.len() != dim {
                return Err(CliError::Format(format!("row {i}: expected {dim} entries, found {}", row.len())));
            }
            data.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        let operator = HermitianOperator::new(ComplexMatrix::from_vec(dim, data)?)?;
        Ok(Self { operator, meta: raw.meta })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn render(&self) -> CliResult<String> {
        let m = self.operator.matrix();
        let dim = m.dim();
        let mut out = String::new();
        writeln!(out, "{{").unwrap();
        writeln!(out, "  \"n_qubits\": {},", self.operator.n_qubits()).unwrap();
        writeln!(out, "  \"entries\": [").unwrap();
        for i in 0..dim {
            let cells = (0..dim)
                .map(|j| {
                    let z = m[(i, j)];
                    Ok(format!("[{}, {}]", number(z.re)?, number(z.im)?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let sep = if i + 1 < dim { "," } else { "" };
            writeln!(out, "    [{}]{sep}", cells.join(", ")).unwrap();
        }
        if self.meta.is_empty() {
            writeln!(out, "  ]").unwrap();
        } else {
            writeln!(out, "  ],").unwrap();
            writeln!(out, "  \"meta\": {}", serde_json::to_string(&self.meta)?).unwrap();
        }
        writeln!(out, "}}").unwrap();
        Ok(out)
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, self.render()?).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn number(x: f64) -> CliResult<String> {
    if !x.is_finite() {
        return Err(CliError::Format(format!("cannot store non-finite entry {x}")));
    }
    Ok(serde_json::to_string(&x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use popmap::states;

    #[test]
    fn round_trip_is_byte_identical() {
        let op = states::horodecki_b(0.1).unwrap().into_operator();
        let file = OperatorFile::new(op).with_meta("generator", "horodecki-b");
        let a = file.render().unwrap();
        let back = OperatorFile::parse(&a).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.render().unwrap(), a);
    }

    #[test]
    fn rejects_bad_shapes_and_non_hermitian() {
        assert!(OperatorFile::parse(r#"{"n_qubits": 1, "entries": [[[1,0],[0,0]]]}"#).is_err());
        assert!(OperatorFile::parse(r#"{"n_qubits": 1, "entries": [[[1,0],[0,1]],[[0,0],[0,0]]]}"#).is_err());
        assert!(OperatorFile::parse(r#"{"n_qubits": 1, "entries": [[[1,0],[0,0]],[[0,0],[0,0]]], "x": 1}"#).is_err());
        let ok = OperatorFile::parse(r#"{"n_qubits": 1, "entries": [[[0.5,0],[0,0.1]],[[0,-0.1],[0.5,0]]]}"#).unwrap();
        assert!(ok.meta.is_empty());
    }
}
