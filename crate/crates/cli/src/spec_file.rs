//! The hand-written graph input format.

use std::fmt;
use std::path::Path;

use cospectral::group::AbelianGroup;
use cospectral::spectral::{validate_connection_set, CayleyGraph};
use serde::{Deserialize, Serialize};

/// `{"group": [orders...], "connection_set": [[tuple...], ...]}`, tuple
/// entry `i` being the coordinate in factor `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpecFile {
    pub group: Vec<u64>,
    pub connection_set: Vec<Vec<u64>>,
}

/// Input that could not be read, parsed or validated. Maps to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl GraphSpecFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            // serde_json appends " at line L column C"; report position first instead
            let msg = msg.rfind(" at line ").map_or(msg.as_str(), |i| &msg[..i]).to_string();
            InputError(format!("line {}, column {}: {msg}", e.line(), e.column()))
        })
    }

    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    pub fn from_graph(graph: &CayleyGraph) -> Self {
        Self {
            group: graph.group().orders().to_vec(),
            connection_set: graph.connection_set().iter().map(|s| s.as_slice().to_vec()).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<CayleyGraph, InputError> {
        let group = AbelianGroup::new(self.group.clone()).map_err(|e| InputError(format!("group: {e}")))?;
        let set = self
            .connection_set
            .iter()
            .enumerate()
            .map(|(i, t)| group.element(t.clone()).map_err(|e| InputError(format!("connection_set[{i}]: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        validate_connection_set(&group, set).map_err(|e| InputError(format!("connection_set: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let s = GraphSpecFile::parse(r#"{"group": [4], "connection_set": [[1], [3]]}"#).unwrap();
        assert_eq!(s.to_graph().unwrap().degree(), 2);
        assert_eq!(GraphSpecFile::from_graph(&s.to_graph().unwrap()), s);
    }

    #[test]
    fn diagnostics_name_the_position_and_field() {
        let e = GraphSpecFile::parse("{\"group\": [4],\n \"connection_set\": [[1], [\"x\"]]}").unwrap_err();
        assert!(e.0.starts_with("line 2, column"), "{e}");
        let e = GraphSpecFile::parse(r#"{"group": [4]}"#).unwrap_err();
        assert!(e.0.contains("missing field `connection_set`"), "{e}");
        let e = GraphSpecFile::parse(r#"{"group": [4], "connection_set": [], "extra": 1}"#).unwrap_err();
        assert!(e.0.contains("unknown field `extra`"), "{e}");
        let s = GraphSpecFile::parse(r#"{"group": [8], "connection_set": [[1], [9]]}"#).unwrap();
        assert!(s.to_graph().unwrap_err().0.starts_with("connection_set[1]"));
        let s = GraphSpecFile::parse(r#"{"group": [8], "connection_set": [[1], [2], [7]]}"#).unwrap();
        assert!(s.to_graph().unwrap_err().0.contains("inverse"));
        let s = GraphSpecFile::parse(r#"{"group": [8, 1], "connection_set": [[1, 0]]}"#).unwrap();
        assert!(s.to_graph().unwrap_err().0.starts_with("group:"));
    }
}
