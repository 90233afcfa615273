//! Numeric, definition-level checks of strong cospectrality for small graphs.
//!
//! Vertices `0` and `z` are strongly cospectral when `E e_0 = +-E e_z` for
//! every spectral idempotent `E` of the adjacency matrix. Two independent
//! routes get at the idempotents:
//!
//! * [`ScOraclePath::Dense`] builds the adjacency matrix and diagonalizes it
//!   with cyclic Jacobi rotations. Nothing is shared with the exact path.
//! * [`ScOraclePath::CharacterProjector`] uses the exact eigenvalue classes
//!   to group characters, then evaluates `|G| E e_0 = sum_{a in C} chi_a`
//!   numerically and compares it with its shift by `z`.
//!
//! Both scale projector columns by `|G|` so that a single tolerance
//! `tol * |G|` applies to either.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement, Subgroup};
use crate::spectral::{eigenvalue_classes, CayleyGraph, EigenvalueClass};

/// Largest order handled by the dense eigensolver.
pub const DENSE_LIMIT: u64 = 512;
/// Largest group handled by the character-projector check.
pub const PROJECTOR_LIMIT: u64 = 1 << 16;
/// Entrywise tolerance, scaled by `|G|` at comparison time.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Allowed distance between a dense eigenvalue and its exact counterpart.
pub const SPECTRUM_TOL: f64 = 1e-6;

const ADJACENCY_LIMIT: u64 = 1 << 11;
const MAX_SWEEPS: usize = 64;
const JACOBI_TOL: f64 = 1e-14;

/// Symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseSymMatrix {
    /// Rejects non-square or non-symmetric input (exact comparison).
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::ShapeMismatch { expected: order * order, found: entries.len() });
        }
        for i in 0..order {
            for j in 0..i {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(Error::OracleMismatch(format!("matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { order, entries })
    }

    /// Adjacency matrix with rows and columns in canonical element order.
    pub fn adjacency(graph: &CayleyGraph) -> Result<Self> {
        let group = graph.group();
        let n = group.bounded_size(ADJACENCY_LIMIT)? as usize;
        let mut entries = vec![0.0; n * n];
        for x in 0..n as u64 {
            let ex = group.element_at(x);
            for s in graph.connection_set() {
                let y = group.index_of(group.add(&ex, s)?.as_slice()) as usize;
                entries[x as usize * n + y] = 1.0;
            }
        }
        Ok(Self { order: n, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn frobenius(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// One cluster of numerically equal eigenvalues with an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpace {
    pub value: f64,
    /// Basis vectors, each of length equal to the matrix order.
    pub basis: Vec<Vec<f64>>,
}

impl EigenSpace {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }

    /// `E e_i`, the projector onto this space applied to a basis vector.
    pub fn projector_column(&self, i: usize) -> Vec<f64> {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![0.0; n];
        for b in &self.basis {
            let w = b[i];
            for (o, &bx) in out.iter_mut().zip(b) {
                *o += w * bx;
            }
        }
        out
    }
}

/// Eigenvalue clusters in ascending order.
///
/// Off-diagonal mass is driven below `tol` relative to the Frobenius norm;
/// clusters are split at gaps above `1e-6 * (1 + max |lambda|)`. The result
/// is rejected unless `|A - V L V^T|_max < 1e-8 |A|_max`.
pub fn dense_eigendecomposition(a: &DenseSymMatrix, tol: f64) -> Result<Vec<EigenSpace>> {
    let n = a.order;
    if n as u64 > DENSE_LIMIT {
        return Err(Error::TooLarge { what: "dense matrix order", size: n as u128, limit: DENSE_LIMIT as u128 });
    }
    let (values, vectors) = jacobi(a, tol)?;

    // reconstruction residual
    let scale = a.max_abs();
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for k in 0..n {
                s += vectors[k * n + i] * values[k] * vectors[k * n + j];
            }
            residual = residual.max((a.get(i, j) - s).abs());
        }
    }
    if residual > 0.0 && residual >= 1e-8 * scale {
        return Err(Error::OracleMismatch(format!("reconstruction residual {residual:e} at scale {scale}")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let gap = 1e-6 * (1.0 + values.iter().fold(0.0f64, |m, x| m.max(x.abs())));
    let mut spaces: Vec<(Vec<f64>, Vec<Vec<f64>>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for k in order {
        let v = vectors[k * n..(k + 1) * n].to_vec();
        if values[k] - last > gap || spaces.is_empty() {
            spaces.push((Vec::new(), Vec::new()));
        }
        let space = spaces.last_mut().expect("pushed above");
        space.0.push(values[k]);
        space.1.push(v);
        last = values[k];
    }
    Ok(spaces
        .into_iter()
        .map(|(vals, basis)| EigenSpace { value: vals.iter().sum::<f64>() / vals.len() as f64, basis })
        .collect())
}

/// Cyclic Jacobi. Returns eigenvalues and eigenvectors, vector `k` stored
/// in `vectors[k * n..(k + 1) * n]`.
fn jacobi(a: &DenseSymMatrix, tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = a.order;
    let mut m = a.entries.clone();
    // v holds the accumulated rotations, column k is eigenvector k
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = tol * a.frobenius().max(1.0);
    let off = |m: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&m) >= threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (kp, kq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * kp - s * kq;
                    m[k * n + q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * pk - s * qk;
                    m[q * n + k] = s * pk + c * qk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let (kp, kq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * kp - s * kq;
                    v[k * n + q] = s * kp + c * kq;
                }
            }
        }
    }
    let values = (0..n).map(|i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for k in 0..n {
        for i in 0..n {
            vectors[k * n + i] = v[i * n + k];
        }
    }
    Ok((values, vectors))
}

/// `u` equals `+v` or `-v` entrywise within `tol`. The sign comes from the
/// first entry of `u` larger than `tol` in magnitude.
fn signed_match<T>(u: &[T], v: &[T], tol: f64, norm: impl Fn(&T) -> f64, diff: impl Fn(&T, &T, f64) -> f64) -> bool {
    let sign = match u.iter().zip(v).find(|(x, _)| norm(x) > tol) {
        None => return v.iter().all(|y| norm(y) <= tol),
        Some((x, y)) => {
            if diff(x, y, 1.0) <= diff(x, y, -1.0) {
                1.0
            } else {
                -1.0
            }
        }
    };
    u.iter().zip(v).all(|(x, y)| diff(x, y, sign) <= tol)
}

/// One exact class with `u(x) = sum_{a in C} chi_a(x)` sampled at every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorClass {
    pub eigenvalue: f64,
    pub multiplicity: u64,
    /// `|G| E e_0`, indexed by canonical element index.
    pub at_identity: Vec<Complex64>,
}

/// Scaled projector columns `|G| E e_0` for every exact eigenvalue class.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorBundle {
    group: AbelianGroup,
    pub classes: Vec<ProjectorClass>,
}

impl ProjectorBundle {
    pub fn new(graph: &CayleyGraph) -> Result<Self> {
        graph.group().bounded_size(PROJECTOR_LIMIT)?;
        let classes = eigenvalue_classes(graph)?;
        Self::from_classes(graph.group(), &classes)
    }

    pub fn from_classes(group: &AbelianGroup, classes: &[EigenvalueClass]) -> Result<Self> {
        let size = group.bounded_size(PROJECTOR_LIMIT)?;
        let exponent = group.exponent();
        let roots: Vec<Complex64> = (0..exponent)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / exponent as f64))
            .collect();
        let elements: Vec<Vec<u64>> = (0..size).map(|x| group.coords_at(x)).collect();
        let classes = classes
            .par_iter()
            .map(|class| {
                let chars: Vec<Vec<u64>> = class.member_indices().iter().map(|&i| group.coords_at(i)).collect();
                let at_identity = elements
                    .iter()
                    .map(|x| chars.iter().map(|a| roots[group.pairing_unchecked(a, x) as usize]).sum())
                    .collect();
                ProjectorClass {
                    eigenvalue: class.value().to_complex().re,
                    multiplicity: class.multiplicity(),
                    at_identity,
                }
            })
            .collect();
        Ok(Self { group: group.clone(), classes })
    }

    /// Largest entry of `sum_r u_r - |G| e_0`.
    pub fn identity_residual(&self) -> f64 {
        let n = self.group.size() as usize;
        (0..n)
            .map(|x| {
                let s: Complex64 = self.classes.iter().map(|c| c.at_identity[x]).sum();
                let target = if x == 0 { n as f64 } else { 0.0 };
                (s - target).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Definition check for `z` against the identity.
    pub fn strongly_cospectral(&self, z: &GroupElement, tol: f64) -> Result<bool> {
        if !self.group.is_involution_or_identity(z)? {
            return Err(Error::NotInvolution);
        }
        let n = self.group.size() as usize;
        // shifted[x] = index of x - z
        let shifted: Vec<usize> = (0..n as u64)
            .map(|x| {
                let ex = self.group.element_at(x);
                self.group.index_of(self.group.sub(&ex, z).expect("same group").as_slice()) as usize
            })
            .collect();
        let tol = tol * n as f64;
        Ok(self.classes.par_iter().all(|c| {
            let v: Vec<Complex64> = shifted.iter().map(|&i| c.at_identity[i]).collect();
            signed_match(&c.at_identity, &v, tol, |x| x.norm(), |x, y, s| (x - y * s).norm())
        }))
    }
}

/// Character-projector check of `E e_0 = +-E e_z` over the exact classes.
pub fn projector_check(graph: &CayleyGraph, z: &GroupElement, tol: f64) -> Result<bool> {
    let group = graph.group();
    group.bounded_size(PROJECTOR_LIMIT)?;
    if !group.is_involution_or_identity(z)? {
        return Err(Error::NotInvolution);
    }
    ProjectorBundle::new(graph)?.strongly_cospectral(z, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScOraclePath {
    /// Jacobi eigenspaces of the adjacency matrix, every vertex tested.
    Dense,
    /// Exact classes turned into numeric projectors, involutions tested.
    CharacterProjector,
}

impl ScOraclePath {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dense => "dense-eigensolver",
            Self::CharacterProjector => "character-projector",
        }
    }
}

/// Every vertex strongly cospectral with the identity, found by sweeping
/// the definition. Errors if the set found is not a subgroup.
pub fn brute_force_sc_set(graph: &CayleyGraph, path: ScOraclePath) -> Result<Subgroup> {
    let group = graph.group();
    let found = match path {
        ScOraclePath::Dense => {
            let size = group.bounded_size(DENSE_LIMIT)?;
            let spaces = dense_eigendecomposition(&DenseSymMatrix::adjacency(graph)?, JACOBI_TOL)?;
            dense_sc_set(&spaces, size as usize, DEFAULT_TOL)
                .into_iter()
                .map(|i| group.element_at(i as u64))
                .collect()
        }
        ScOraclePath::CharacterProjector => {
            let bundle = ProjectorBundle::new(graph)?;
            let mut found = Vec::new();
            for z in group.two_torsion().elements() {
                if bundle.strongly_cospectral(z, DEFAULT_TOL)? {
                    found.push(z.clone());
                }
            }
            found
        }
    };
    as_subgroup(group, found)
}

/// Vertex indices `b` with `E e_0 = +-E e_b` for every eigenspace.
pub fn dense_sc_set(spaces: &[EigenSpace], size: usize, tol: f64) -> Vec<usize> {
    let scale = size as f64;
    let columns: Vec<Vec<f64>> =
        spaces.iter().map(|s| s.projector_column(0).into_iter().map(|x| x * scale).collect()).collect();
    let tol = tol * scale;
    (0..size)
        .into_par_iter()
        .filter(|&b| {
            spaces.iter().zip(&columns).all(|(s, u)| {
                let v: Vec<f64> = s.projector_column(b).into_iter().map(|x| x * scale).collect();
                signed_match(u, &v, tol, |x| x.abs(), |x, y, s| (x - y * s).abs())
            })
        })
        .collect()
}

fn as_subgroup(group: &AbelianGroup, mut found: Vec<GroupElement>) -> Result<Subgroup> {
    found.sort();
    let mut generators: Vec<GroupElement> = Vec::new();
    let mut span = group.subgroup_generated(Vec::new())?;
    for z in &found {
        if !span.contains(z) {
            generators.push(z.clone());
            span = group.subgroup_generated(generators.clone())?;
        }
    }
    if span.elements() != found.as_slice() {
        return Err(Error::OracleMismatch(format!(
            "{} strongly cospectral vertices do not form a subgroup (closure has {})",
            found.len(),
            span.order()
        )));
    }
    Ok(span)
}

/// Pairs dense clusters with exact classes in ascending order, checking
/// multiplicities and values. Returns the largest value discrepancy.
pub fn cross_check_spectrum(classes: &[EigenvalueClass], spaces: &[EigenSpace]) -> Result<f64> {
    let mut exact: Vec<(f64, u64)> = classes.iter().map(|c| (c.value().to_complex().re, c.multiplicity())).collect();
    exact.sort_by(|a, b| a.0.total_cmp(&b.0));
    if exact.len() != spaces.len() {
        return Err(Error::OracleMismatch(format!(
            "{} exact eigenvalues but {} numeric clusters",
            exact.len(),
            spaces.len()
        )));
    }
    let mut worst: f64 = 0.0;
    for ((value, mult), space) in exact.iter().zip(spaces) {
        if *mult != space.multiplicity() as u64 {
            return Err(Error::OracleMismatch(format!(
                "eigenvalue {value}: exact multiplicity {mult}, numeric {}",
                space.multiplicity()
            )));
        }
        worst = worst.max((value - space.value).abs());
    }
    if worst > SPECTRUM_TOL {
        return Err(Error::OracleMismatch(format!("eigenvalues differ by {worst:e}")));
    }
    Ok(worst)
}

/// Dense eigenvalues of the graph, cross-checked against its exact classes.
pub fn spectrum_agreement(graph: &CayleyGraph) -> Result<f64> {
    graph.group().bounded_size(DENSE_LIMIT)?;
    let spaces = dense_eigendecomposition(&DenseSymMatrix::adjacency(graph)?, JACOBI_TOL)?;
    cross_check_spectrum(&eigenvalue_classes(graph)?, &spaces)
}
