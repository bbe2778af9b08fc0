//! `qubit:kind[,qubit:kind...]` or `all:kind`.

use popmap::maps::{MapKind, MapSpec};

use crate::{CliError, CliResult};

/// Parses a map spec against an operator on `n_qubits` qubits.
pub fn parse_map_spec(text: &str, n_qubits: usize) -> CliResult<MapSpec> {
    let bad = |msg: String| CliError::Usage(format!("bad map spec `{text}`: {msg}"));
    let text = text.trim();
    if text.is_empty() {
        return Err(bad("empty".into()));
    }
    let mut pairs = Vec::new();
    for item in text.split(',') {
        let (lhs, rhs) = item.split_once(':').ok_or_else(|| bad(format!("`{}` is not qubit:kind", item.trim())))?;
        let kind: MapKind = rhs.parse().map_err(|e| bad(format!("{e}")))?;
        let lhs = lhs.trim();
        if lhs.eq_ignore_ascii_case("all") {
            if text.contains(',') {
                return Err(bad("`all:` cannot be combined with other assignments".into()));
            }
            return Ok(MapSpec::all(n_qubits, kind));
        }
        let k: usize = lhs.parse().map_err(|_| bad(format!("`{lhs}` is not a qubit index")))?;
        pairs.push((k, kind));
    }
    let spec = MapSpec::new(pairs).map_err(|e| bad(e.to_string()))?;
    spec.validate(n_qubits)?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_and_shorthand() {
        let s = parse_map_spec("1:P, 3:t", 3).unwrap();
        assert_eq!(s.assignments(), &[(1, MapKind::P), (3, MapKind::T)]);
        assert_eq!(parse_map_spec("all:P", 3).unwrap(), MapSpec::all(3, MapKind::P));
        assert_eq!(parse_map_spec("1:Identity", 1).unwrap().assignments(), &[(1, MapKind::Identity)]);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1", "1:Q", "x:P", "0:P", "4:P", "1:P,1:T", "all:P,1:T"] {
            assert!(parse_map_spec(s, 3).is_err(), "{s}");
        }
    }
}
