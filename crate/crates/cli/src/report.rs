//! Report structure shared by every analysis command, with JSON and text
//! renderings of the same content.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::spec_file::GraphSpecFile;

/// Subgroup element lists are cut to this many entries.
pub const ELEMENT_CAP: usize = 64;

/// Tuple for general groups; bitmask plus tuple on `F_2^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Tuple(Vec<u64>),
    Bits { hex: String, tuple: Vec<u64> },
}

impl ElementRepr {
    pub fn bits(n: usize, bits: u64) -> Self {
        Self::Bits { hex: format!("{bits:#x}"), tuple: (0..n).map(|i| bits >> i & 1).collect() }
    }

    fn text(&self) -> String {
        let tuple = |t: &[u64]| format!("({})", t.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        match self {
            Self::Tuple(t) => tuple(t),
            Self::Bits { hex, tuple: t } => format!("{hex}{}", tuple(t)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Heterocyclic {
        exponents: Vec<u32>,
    },
    Cubelike {
        dims: Vec<u32>,
        n: u32,
        meets_ebound: bool,
        connection_set_size: u64,
        determination: DeterminationSection,
    },
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminationSection {
    pub holds: bool,
    pub hyperplanes: u64,
    pub distinct_totals: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSection {
    pub orders: Vec<u64>,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Exact value in powers of `z = zeta_N`, or an integer.
    pub value: String,
    pub numeric: f64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub method: String,
    pub modulus: u64,
    pub class_count: u64,
    /// Ascending by numeric value.
    pub classes: Vec<ClassEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSection {
    pub order: u64,
    pub generators: Vec<ElementRepr>,
    /// The smallest elements in canonical order, at most [`ELEMENT_CAP`].
    pub elements: Vec<ElementRepr>,
    pub elements_truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionSection {
    pub order: u64,
    pub generators: Vec<ElementRepr>,
    pub contained: bool,
    pub equal: bool,
    /// Computed subgroup strictly larger than predicted; informational.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePathResult {
    /// `agree`, `disagree` or `skipped`.
    pub status: String,
    pub order: Option<u64>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub dense: OraclePathResult,
    pub character_projector: OraclePathResult,
    pub max_eigenvalue_error: Option<f64>,
    /// No path that ran disagreed.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub command: String,
    pub construction: Construction,
    /// Echo of the analyzed graph; omitted for very large connection sets.
    pub graph: Option<GraphSpecFile>,
    pub group: GroupSection,
    pub degree: u64,
    pub components: u64,
    pub spectrum: SpectrumSection,
    pub sc_subgroup: SubgroupSection,
    pub predicted: Option<PredictionSection>,
    pub oracle: Option<OracleSection>,
    pub verdict: bool,
    pub seconds: f64,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Same report with timing zeroed, for comparisons.
    pub fn without_timing(&self) -> Self {
        Self { seconds: 0.0, ..self.clone() }
    }

    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        let mut row = |k: &str, v: String| rows.push((k.to_string(), v));
        let list = |xs: &[ElementRepr]| xs.iter().map(ElementRepr::text).collect::<Vec<_>>().join(" ");
        let nums = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");

        row("command", self.command.clone());
        match &self.construction {
            Construction::Heterocyclic { exponents } => {
                row("construction", "heterocyclic".into());
                row("exponents", exponents.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
            }
            Construction::Cubelike { dims, n, meets_ebound, connection_set_size, determination } => {
                row("construction", "cubelike".into());
                row("dims", dims.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
                row("n", n.to_string());
                row("meets ebound", meets_ebound.to_string());
                row("connection set size", connection_set_size.to_string());
                row("determination holds", determination.holds.to_string());
                row("hyperplanes", determination.hyperplanes.to_string());
                row("distinct totals", determination.distinct_totals.to_string());
            }
            Construction::Custom => row("construction", "custom".into()),
        }
        row("group orders", nums(&self.group.orders));
        row("group order", self.group.order.to_string());
        row("degree", self.degree.to_string());
        row("components", self.components.to_string());
        row("spectral method", self.spectrum.method.clone());
        row("cyclotomic modulus", self.spectrum.modulus.to_string());
        row("eigenvalue classes", self.spectrum.class_count.to_string());
        let sc = &self.sc_subgroup;
        row("sc order", sc.order.to_string());
        row("sc generators", list(&sc.generators));
        row("sc elements", list(&sc.elements));
        row("sc truncated", sc.elements_truncated.to_string());
        if let Some(p) = &self.predicted {
            row("predicted order", p.order.to_string());
            row("predicted generators", list(&p.generators));
            row("predicted contained", p.contained.to_string());
            row("predicted equal", p.equal.to_string());
            row("strict containment", p.strict.to_string());
        }
        if let Some(o) = &self.oracle {
            let path = |r: &OraclePathResult| {
                let mut s = r.status.clone();
                if let Some(order) = r.order {
                    let _ = write!(s, " order {order}");
                }
                if let Some(reason) = &r.reason {
                    let _ = write!(s, " ({reason})");
                }
                s
            };
            row("oracle dense", path(&o.dense));
            row("oracle projector", path(&o.character_projector));
            row("oracle max error", o.max_eigenvalue_error.map_or("n/a".into(), |e| e.to_string()));
            row("oracle agrees", o.agrees.to_string());
        }
        row("verdict", self.verdict.to_string());
        row("seconds", self.seconds.to_string());
        if let Some(g) = &self.graph {
            row("graph", serde_json::to_string(g).expect("spec serializes"));
        }

        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        let vw = self.spectrum.classes.iter().map(|c| c.value.len()).max().unwrap_or(0).max(5);
        let _ = writeln!(out, "\n{:<vw$}  {:>24}  multiplicity", "value", "numeric");
        for c in &self.spectrum.classes {
            let _ = writeln!(out, "{:<vw$}  {:>24}  {}", c.value, c.numeric, c.multiplicity);
        }
        out
    }
}
