//! Report builders behind each subcommand.

use std::collections::BTreeSet;
use std::time::Instant;

use cospectral::corpus::{fixed_corpus, random_corpus};
use cospectral::cubelike::{analyze_construction, build_cubelike, determination_check, CubelikeSpec};
use cospectral::f2::F2Basis;
use cospectral::group::{AbelianGroup, GroupElement, Subgroup};
use cospectral::hetero::{build_heterocyclic, predicted_sc_subgroup, HeteroSpec};
use cospectral::oracle::{brute_force_sc_set, spectrum_agreement, ScOraclePath, DENSE_LIMIT};
use cospectral::spectral::{analyze, bits_element, element_bits, CayleyGraph};
use serde::{Deserialize, Serialize};

use crate::report::*;
use crate::spec_file::{GraphSpecFile, InputError};

/// Largest group analyzed exactly by `hetero` and `analyze`.
pub const EXACT_LIMIT: u64 = 1 << 25;
/// Largest ambient dimension analyzed by `cubelike`.
pub const CUBELIKE_DIM_LIMIT: u32 = 26;
/// Connection sets larger than this are not echoed in reports.
pub const ECHO_LIMIT: usize = 4096;
/// The projector oracle costs about `|G|^2`; keep it interactive.
pub const PROJECTOR_CLI_LIMIT: u64 = 1 << 12;

fn input(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

fn render(group: &AbelianGroup, x: &GroupElement) -> ElementRepr {
    if group.is_elementary_abelian_2() {
        ElementRepr::bits(group.factor_count(), element_bits(x))
    } else {
        ElementRepr::Tuple(x.as_slice().to_vec())
    }
}

/// Elements in report order: by bitmask on `F_2^n`, else lexicographic.
fn canonical(group: &AbelianGroup, elements: &[GroupElement]) -> Vec<GroupElement> {
    let mut v = elements.to_vec();
    if group.is_elementary_abelian_2() {
        v.sort_by_key(element_bits);
    } else {
        v.sort();
    }
    v
}

fn subgroup_section(group: &AbelianGroup, sc: &Subgroup) -> SubgroupSection {
    let elements = canonical(group, sc.elements());
    SubgroupSection {
        order: sc.order() as u64,
        generators: sc.generators().iter().map(|g| render(group, g)).collect(),
        elements: elements.iter().take(ELEMENT_CAP).map(|e| render(group, e)).collect(),
        elements_truncated: elements.len() > ELEMENT_CAP,
    }
}

/// The smallest `ELEMENT_CAP` elements of a span over `F_2`, ascending.
///
/// With rows reduced so each pivot is its row's top bit and appears in no
/// other row, an element's order is fixed by which pivots it uses, so the
/// smallest ones come from the rows with the lowest pivots.
fn span_prefix(basis: &[u64]) -> (Vec<u64>, bool) {
    let reduced = F2Basis::from_vectors(basis.iter().copied());
    let mut rows = reduced.rows().to_vec();
    rows.sort_unstable();
    let k = rows.len().min(ELEMENT_CAP.trailing_zeros() as usize);
    let mut out: Vec<u64> = (0..1u64 << k)
        .map(|m| (0..k).filter(|i| m >> i & 1 == 1).fold(0, |a, i| a ^ rows[i]))
        .collect();
    out.sort_unstable();
    (out, rows.len() > k)
}

fn oracle_section(graph: &CayleyGraph, exact: &[GroupElement]) -> OracleSection {
    let size = graph.group().size() as u64;
    let exact: BTreeSet<&GroupElement> = exact.iter().collect();
    let mut agrees = true;
    let mut run = |path: ScOraclePath, limit: u64| {
        if size > limit {
            return OraclePathResult {
                status: "skipped".into(),
                order: None,
                reason: Some(format!("|G| = {size} exceeds {limit}")),
            };
        }
        match brute_force_sc_set(graph, path) {
            Ok(found) => {
                let same = found.elements().iter().collect::<BTreeSet<_>>() == exact;
                agrees &= same;
                OraclePathResult {
                    status: if same { "agree" } else { "disagree" }.into(),
                    order: Some(found.order() as u64),
                    reason: None,
                }
            }
            Err(e) => {
                agrees = false;
                OraclePathResult { status: "disagree".into(), order: None, reason: Some(e.to_string()) }
            }
        }
    };
    let dense = run(ScOraclePath::Dense, DENSE_LIMIT);
    let character_projector = run(ScOraclePath::CharacterProjector, PROJECTOR_CLI_LIMIT);
    let max_eigenvalue_error = if size <= DENSE_LIMIT {
        match spectrum_agreement(graph) {
            Ok(e) => Some(e),
            Err(_) => {
                agrees = false;
                None
            }
        }
    } else {
        None
    };
    OracleSection { dense, character_projector, max_eigenvalue_error, agrees }
}

fn prediction_section(group: &AbelianGroup, predicted: &Subgroup, sc: &Subgroup) -> PredictionSection {
    let contained = predicted.is_subset_of(sc);
    let equal = predicted.same_elements(sc);
    PredictionSection {
        order: predicted.order() as u64,
        generators: predicted.generators().iter().map(|g| render(group, g)).collect(),
        contained,
        equal,
        strict: contained && !equal,
    }
}

fn echo(graph: &CayleyGraph) -> Option<GraphSpecFile> {
    (graph.degree() <= ECHO_LIMIT).then(|| GraphSpecFile::from_graph(graph))
}

/// Exact analysis of an explicit graph, with an optional prediction.
fn graph_report(
    command: &str,
    construction: Construction,
    graph: &CayleyGraph,
    predicted: Option<&Subgroup>,
    require_equal: bool,
    verify_oracle: bool,
) -> Result<ReportFile, InputError> {
    let start = Instant::now();
    let group = graph.group();
    let size = group.bounded_size(EXACT_LIMIT).map_err(input)?;
    let report = analyze(graph).map_err(input)?;
    let mut classes: Vec<ClassEntry> = report
        .classes
        .iter()
        .map(|c| ClassEntry {
            value: c.value().to_string(),
            numeric: c.value().to_complex().re,
            multiplicity: c.multiplicity(),
        })
        .collect();
    classes.sort_by(|a, b| a.numeric.total_cmp(&b.numeric).then_with(|| a.value.cmp(&b.value)));
    let sc = &report.sc_subgroup;
    let predicted = predicted.map(|p| prediction_section(group, p, sc));
    let oracle = verify_oracle.then(|| oracle_section(graph, sc.elements()));
    let verdict = predicted.as_ref().is_none_or(|p| if require_equal { p.equal } else { p.contained })
        && oracle.as_ref().is_none_or(|o| o.agrees);
    Ok(ReportFile {
        command: command.into(),
        construction,
        graph: echo(graph),
        group: GroupSection { orders: group.orders().to_vec(), order: size },
        degree: graph.degree() as u64,
        components: report.component_count(graph.degree()),
        spectrum: SpectrumSection {
            method: report.method.name().into(),
            modulus: group.exponent(),
            class_count: classes.len() as u64,
            classes,
        },
        sc_subgroup: subgroup_section(group, sc),
        predicted,
        oracle,
        verdict,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn hetero_report(exponents: Vec<u32>, verify_oracle: bool) -> Result<ReportFile, InputError> {
    let spec = HeteroSpec::new(exponents).map_err(input)?;
    let total: u32 = spec.exponents().iter().sum();
    if total > EXACT_LIMIT.trailing_zeros() {
        return Err(InputError(format!("group order 2^{total} exceeds the exact-analysis limit 2^25")));
    }
    let graph = build_heterocyclic(&spec).map_err(input)?;
    let predicted = predicted_sc_subgroup(&spec).map_err(input)?;
    let construction = Construction::Heterocyclic { exponents: spec.exponents().to_vec() };
    graph_report("hetero", construction, &graph, Some(&predicted), true, verify_oracle)
}

/// Resolves `--levels` or `--dims`, enforcing the separation bound unless forced.
pub fn cubelike_spec(levels: Option<usize>, dims: Option<Vec<u32>>, force: bool) -> Result<CubelikeSpec, InputError> {
    match (levels, dims) {
        (Some(k), None) => CubelikeSpec::levels(k).map_err(input),
        (None, Some(d)) if force => CubelikeSpec::exploratory(d).map_err(input),
        (None, Some(d)) => CubelikeSpec::new(d).map_err(|e| InputError(format!("{e} (pass --force to analyze anyway)"))),
        _ => Err(InputError("give exactly one of --levels and --dims".into())),
    }
}

pub fn cubelike_report(spec: &CubelikeSpec, verify_oracle: bool) -> Result<ReportFile, InputError> {
    let start = Instant::now();
    let c = build_cubelike(spec).map_err(input)?;
    let n = c.n();
    if n > CUBELIKE_DIM_LIMIT {
        return Err(InputError(format!("ambient dimension {n} exceeds the limit {CUBELIKE_DIM_LIMIT}")));
    }
    let a = analyze_construction(&c).map_err(input)?;
    let det = determination_check(&c).map_err(input)?;
    let size = c.connection_set_size() as u64;
    let (elements, truncated) = span_prefix(&a.sc_basis);
    let bits = |b: &u64| ElementRepr::bits(n as usize, *b);
    let graph = if size as usize <= ECHO_LIMIT || verify_oracle { Some(c.cayley_graph().map_err(input)?) } else { None };
    let oracle = match (&graph, verify_oracle) {
        (Some(g), true) => {
            let exact: Vec<GroupElement> = a.sc_elements().into_iter().map(|b| bits_element(n, b)).collect();
            Some(oracle_section(g, &exact))
        }
        _ => None,
    };
    let components = a.value_counts.iter().find(|v| v.0 == size as i64).map_or(0, |v| v.1);
    let verdict = a.contains_predicted
        && (det.holds() || !spec.meets_ebound())
        && oracle.as_ref().is_none_or(|o| o.agrees);
    let predicted_order = 1u64 << a.predicted_rank;
    Ok(ReportFile {
        command: "cubelike".into(),
        construction: Construction::Cubelike {
            dims: spec.dims().to_vec(),
            n,
            meets_ebound: spec.meets_ebound(),
            connection_set_size: size,
            determination: DeterminationSection {
                holds: det.holds(),
                hyperplanes: det.hyperplanes,
                distinct_totals: det.distinct_totals as u64,
            },
        },
        graph: graph.as_ref().and_then(echo),
        group: GroupSection { orders: vec![2; n as usize], order: 1 << n },
        degree: size,
        components,
        spectrum: SpectrumSection {
            method: "walsh-hadamard".into(),
            modulus: 2,
            class_count: a.value_counts.len() as u64,
            classes: a
                .value_counts
                .iter()
                .map(|&(v, m)| ClassEntry { value: v.to_string(), numeric: v as f64, multiplicity: m })
                .collect(),
        },
        sc_subgroup: SubgroupSection {
            order: a.sc_order() as u64,
            generators: a.sc_basis.iter().map(bits).collect(),
            elements: elements.iter().map(bits).collect(),
            elements_truncated: truncated,
        },
        predicted: Some(PredictionSection {
            order: predicted_order,
            generators: a.predicted.iter().map(bits).collect(),
            contained: a.contains_predicted,
            equal: a.contains_predicted && a.sc_order() == predicted_order as u128,
            strict: a.strict,
        }),
        oracle,
        verdict,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn analyze_report(spec: &GraphSpecFile, verify_oracle: bool, command: &str) -> Result<ReportFile, InputError> {
    let graph = spec.to_graph()?;
    graph_report(command, Construction::Custom, &graph, None, false, verify_oracle)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<SelfCheck>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("seed {}\n", self.seed);
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

/// Constructions against their predictions and the corpus against both oracles.
pub fn selftest(seed: u64, random_graphs: usize) -> Result<SelftestReport, InputError> {
    let mut checks = Vec::new();
    for j in [vec![3], vec![3, 4], vec![3, 4, 5]] {
        let r = hetero_report(j.clone(), false)?;
        checks.push(SelfCheck {
            name: format!("hetero {j:?}"),
            passed: r.verdict,
            detail: format!("G_sc order {}, two-torsion order {}", r.sc_subgroup.order, r.predicted.unwrap().order),
        });
    }
    for k in [1, 2] {
        let r = cubelike_report(&CubelikeSpec::levels(k).map_err(input)?, false)?;
        let p = r.predicted.as_ref().unwrap();
        checks.push(SelfCheck {
            name: format!("cubelike levels {k}"),
            passed: r.verdict,
            detail: format!("G_sc order {}, predicted order {}, contained {}", r.sc_subgroup.order, p.order, p.contained),
        });
    }
    let mut corpus = fixed_corpus().map_err(input)?;
    corpus.extend(random_corpus(seed, random_graphs).map_err(input)?);
    for entry in corpus {
        let spec = GraphSpecFile::from_graph(&entry.graph);
        let r = analyze_report(&spec, true, "selftest")?;
        let o = r.oracle.as_ref().unwrap();
        checks.push(SelfCheck {
            name: format!("oracle {}", entry.name),
            passed: o.agrees,
            detail: format!("G_sc order {}, dense {}, projector {}", r.sc_subgroup.order, o.dense.status, o.character_projector.status),
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(SelftestReport { seed, checks, passed })
}
