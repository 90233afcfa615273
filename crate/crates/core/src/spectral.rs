//! Exact spectra of abelian Cayley graphs and their strongly cospectral subgroup.
//!
//! The eigenvectors of `Cay(G, S)` for abelian `G` are the characters, with
//! eigenvalue `chi_a(S)`. Characters are grouped into classes of equal exact
//! eigenvalue; an involution `z` lies in the strongly cospectral subgroup iff
//! `chi_a(z)` is constant on every class.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::cyclotomic::{CyclotomicInteger, CyclotomicRing, ExactKey};
use crate::error::{Error, Result};
use crate::f2::F2Basis;
use crate::group::{AbelianGroup, Character, GroupElement, Subgroup};
use crate::walsh;

/// Largest group whose character table is swept exhaustively.
pub const MAX_ENUMERATED: u64 = 1 << 32;

/// Two-torsion orders above this switch the subgroup computation to the
/// orthogonal-complement method.
pub const SWEEP_LIMIT: usize = 1 << 20;

/// `Cay(G, S)` with `S` sorted, duplicate-free, inverse-closed and identity-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    group: AbelianGroup,
    connection_set: Vec<GroupElement>,
}

impl CayleyGraph {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn connection_set(&self) -> &[GroupElement] {
        &self.connection_set
    }

    pub fn degree(&self) -> usize {
        self.connection_set.len()
    }

    /// Connection set as bitmasks (bit `i` = coordinate `i`), for graphs on `F_2^n`.
    pub fn cubelike_bits(&self) -> Option<Vec<u64>> {
        if !self.group.is_elementary_abelian_2() || self.group.factor_count() > 64 {
            return None;
        }
        Some(self.connection_set.iter().map(element_bits).collect())
    }
}

pub fn validate_connection_set(group: &AbelianGroup, set: Vec<GroupElement>) -> Result<CayleyGraph> {
    for s in &set {
        group.check_shape(s.as_slice())?;
    }
    if set.is_empty() {
        return Err(Error::EmptyConnectionSet);
    }
    let mut set = set;
    set.sort();
    if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0].to_string()));
    }
    if set.iter().any(|s| s.is_zero()) {
        return Err(Error::IdentityInConnectionSet);
    }
    for s in &set {
        let inv = group.neg_unchecked(s);
        if set.binary_search(&inv).is_err() {
            return Err(Error::MissingInverse { element: s.to_string(), inverse: inv.to_string() });
        }
    }
    Ok(CayleyGraph { group: group.clone(), connection_set: set })
}

/// Bitmask of an `F_2^n` element, coordinate `i` in bit `i`.
pub fn element_bits(x: &GroupElement) -> u64 {
    x.as_slice().iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c & 1) << i)
}

/// Inverse of [`element_bits`] in dimension `n`.
pub fn bits_element(n: u32, bits: u64) -> GroupElement {
    GroupElement::from_vec((0..n).map(|i| bits >> i & 1).collect())
}

/// Evaluates `chi_a(S)` exactly for many characters of one graph.
struct CharacterSums {
    ring: CyclotomicRing,
    // s_i * (N / d_i) for every s in S
    scaled: Vec<Vec<u64>>,
}

impl CharacterSums {
    fn new(graph: &CayleyGraph) -> Result<Self> {
        let group = &graph.group;
        let n = group.exponent();
        let ring = CyclotomicRing::new(n)?;
        let scaled = graph
            .connection_set
            .iter()
            .map(|s| s.as_slice().iter().zip(group.orders()).map(|(&x, &d)| x * (n / d)).collect())
            .collect();
        Ok(Self { ring, scaled })
    }

    fn key(&self, a: &[u64]) -> ExactKey {
        let n = self.ring.modulus() as u128;
        let mut counts = vec![0i64; n as usize];
        for s in &self.scaled {
            let e = a.iter().zip(s).fold(0u128, |acc, (&ai, &si)| (acc + ai as u128 * si as u128) % n);
            counts[e as usize] += 1;
        }
        self.ring.reduce_counts(counts)
    }
}

/// `chi_a(S)` as an exact element of `Z[zeta_N]`.
pub fn eigenvalue(graph: &CayleyGraph, a: &Character) -> Result<CyclotomicInteger> {
    graph.group.check_shape(a.as_slice())?;
    let sums = CharacterSums::new(graph)?;
    Ok(sums.key(a.as_slice()).into_value(graph.group.exponent()))
}

/// One distinct eigenvalue and the characters attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueClass {
    value: CyclotomicInteger,
    members: Vec<u64>,
}

impl EigenvalueClass {
    pub fn value(&self) -> &CyclotomicInteger {
        &self.value
    }

    /// Canonical indices of the member characters, ascending.
    pub fn member_indices(&self) -> &[u64] {
        &self.members
    }

    pub fn multiplicity(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn characters<'g>(&'g self, group: &'g AbelianGroup) -> impl Iterator<Item = Character> + 'g {
        self.members.iter().map(move |&i| group.character_at(i))
    }
}

const CHUNK: u64 = 1 << 12;

/// All characters partitioned by exact eigenvalue, classes in canonical order.
///
/// Runs on the current rayon pool; the result does not depend on scheduling.
pub fn eigenvalue_classes(graph: &CayleyGraph) -> Result<Vec<EigenvalueClass>> {
    let size = graph.group.bounded_size(MAX_ENUMERATED)?;
    let sums = CharacterSums::new(graph)?;
    let chunks = size.div_ceil(CHUNK);
    let merged: HashMap<ExactKey, Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local: HashMap<ExactKey, Vec<u64>> = HashMap::new();
            for idx in c * CHUNK..((c + 1) * CHUNK).min(size) {
                let a = graph.group.coords_at(idx);
                local.entry(sums.key(&a)).or_default().push(idx);
            }
            local
        })
        .reduce(HashMap::new, |mut acc, part| {
            for (k, mut v) in part {
                acc.entry(k).or_default().append(&mut v);
            }
            acc
        });
    let n = graph.group.exponent();
    let mut classes: Vec<(ExactKey, Vec<u64>)> = merged.into_iter().collect();
    classes.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(classes
        .into_iter()
        .map(|(key, mut members)| {
            members.sort_unstable();
            EigenvalueClass { value: key.into_value(n), members }
        })
        .collect())
}

/// How the strongly cospectral subgroup was derived from the classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScMethod {
    /// Test every two-torsion element against every class.
    CandidateSweep,
    /// `D^perp`, with `D` spanned by parity differences inside classes.
    OrthogonalComplement,
}

impl ScMethod {
    pub fn name(self) -> &'static str {
        match self {
            ScMethod::CandidateSweep => "candidate-sweep",
            ScMethod::OrthogonalComplement => "orthogonal-complement",
        }
    }
}

/// Eigenvalue classes plus the strongly cospectral subgroup.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub classes: Vec<EigenvalueClass>,
    pub sc_subgroup: Subgroup,
    pub method: ScMethod,
}

impl SpectralReport {
    /// Number of connected components: the multiplicity of the eigenvalue `|S|`.
    pub fn component_count(&self, degree: usize) -> u64 {
        self.classes
            .iter()
            .find(|c| c.value.as_integer().is_some_and(|v| *v == degree.into()))
            .map_or(0, EigenvalueClass::multiplicity)
    }
}

pub fn strongly_cospectral_subgroup(graph: &CayleyGraph) -> Result<Subgroup> {
    Ok(analyze(graph)?.sc_subgroup)
}

/// Full analysis, picking the Walsh transform for large graphs on `F_2^n`.
pub fn analyze(graph: &CayleyGraph) -> Result<SpectralReport> {
    let group = &graph.group;
    if group.is_elementary_abelian_2() && group.size() > SWEEP_LIMIT as u128 {
        let n = group.factor_count() as u32;
        let bits = graph.cubelike_bits().expect("elementary abelian");
        let spectrum = cubelike_spectrum_wht(n, &bits)?;
        let classes = classes_from_spectrum(n, &spectrum);
        let basis = cubelike_sc_basis(n, &spectrum);
        let sc_subgroup = subgroup_from_f2_basis(group, &(0..n as usize).collect::<Vec<_>>(), &basis)?;
        return Ok(SpectralReport { classes, sc_subgroup, method: ScMethod::OrthogonalComplement });
    }
    let classes = eigenvalue_classes(graph)?;
    let method = if group.two_torsion_order() > SWEEP_LIMIT as u128 {
        ScMethod::OrthogonalComplement
    } else {
        ScMethod::CandidateSweep
    };
    let sc_subgroup = sc_subgroup_from_classes(group, &classes, method)?;
    Ok(SpectralReport { classes, sc_subgroup, method })
}

/// Strongly cospectral subgroup from precomputed classes, by the chosen method.
pub fn sc_subgroup_from_classes(
    group: &AbelianGroup,
    classes: &[EigenvalueClass],
    method: ScMethod,
) -> Result<Subgroup> {
    match method {
        ScMethod::CandidateSweep => candidate_sweep(group, classes),
        ScMethod::OrthogonalComplement => orthogonal_complement(group, classes),
    }
}

fn candidate_sweep(group: &AbelianGroup, classes: &[EigenvalueClass]) -> Result<Subgroup> {
    let torsion = group.two_torsion();
    let members: Vec<Vec<Vec<u64>>> = classes
        .iter()
        .map(|c| c.members.iter().map(|&i| group.coords_at(i)).collect())
        .collect();
    let mut found = Vec::new();
    'candidates: for z in torsion.elements() {
        for class in &members {
            let first = group.pairing_unchecked(&class[0], z.as_slice());
            if class[1..].iter().any(|a| group.pairing_unchecked(a, z.as_slice()) != first) {
                continue 'candidates;
            }
        }
        found.push(z.clone());
    }
    let even = group.even_factors();
    let mut basis = F2Basis::new();
    let generators = found
        .iter()
        .filter(|z| basis.insert(torsion_bits(&even, group, z.as_slice())))
        .cloned()
        .collect();
    Ok(Subgroup::from_parts(generators, found))
}

// bit j set iff the j-th even factor carries d/2 (for elements) or an odd residue (for characters)
fn torsion_bits(even: &[usize], group: &AbelianGroup, z: &[u64]) -> u64 {
    even.iter().enumerate().fold(0, |acc, (j, &i)| acc | ((z[i] == group.orders()[i] / 2) as u64) << j)
}

fn parity_bits(even: &[usize], a: &[u64]) -> u64 {
    even.iter().enumerate().fold(0, |acc, (j, &i)| acc | (a[i] & 1) << j)
}

fn orthogonal_complement(group: &AbelianGroup, classes: &[EigenvalueClass]) -> Result<Subgroup> {
    let even = group.even_factors();
    if even.len() > 64 {
        return Err(Error::TooLarge { what: "two-torsion rank", size: even.len() as u128, limit: 64 });
    }
    let mut diffs = F2Basis::new();
    'classes: for class in classes {
        let first = parity_bits(&even, &group.coords_at(class.members[0]));
        for &m in &class.members[1..] {
            diffs.insert(parity_bits(&even, &group.coords_at(m)) ^ first);
            if diffs.rank() == even.len() {
                break 'classes;
            }
        }
    }
    let basis = diffs.orthogonal_complement(even.len() as u32);
    subgroup_from_f2_basis(group, &even, &basis)
}

/// Subgroup of the two-torsion spanned by `basis`, bit `j` meaning `d/2` in factor `factors[j]`.
fn subgroup_from_f2_basis(group: &AbelianGroup, factors: &[usize], basis: &[u64]) -> Result<Subgroup> {
    if basis.len() > 24 {
        return Err(Error::TooLarge { what: "strongly cospectral subgroup", size: 1 << basis.len(), limit: 1 << 24 });
    }
    let to_element = |bits: u64| {
        let mut c = vec![0; group.factor_count()];
        for (j, &i) in factors.iter().enumerate() {
            if bits >> j & 1 == 1 {
                c[i] = group.orders()[i] / 2;
            }
        }
        GroupElement::from_vec(c)
    };
    let mut generators: Vec<GroupElement> = basis.iter().map(|&b| to_element(b)).collect();
    generators.sort();
    let elements = F2Basis::from_vectors(basis.iter().copied()).span().into_iter().map(to_element).collect();
    Ok(Subgroup::from_parts(generators, elements))
}

/// `chi_w(S)` for every `w in F_2^n`, by one Walsh-Hadamard transform of the indicator of `S`.
pub fn cubelike_spectrum_wht(n: u32, set: &[u64]) -> Result<Vec<i64>> {
    if n > 32 {
        return Err(Error::TooLarge { what: "cubelike dimension", size: n as u128, limit: 32 });
    }
    let len = 1usize << n;
    let mut data = vec![0i64; len];
    if set.is_empty() {
        return Err(Error::EmptyConnectionSet);
    }
    for &s in set {
        if s == 0 {
            return Err(Error::IdentityInConnectionSet);
        }
        if s >= len as u64 {
            return Err(Error::VectorOutOfRange(s));
        }
        if data[s as usize] != 0 {
            return Err(Error::DuplicateElement(format!("{s:#x}")));
        }
        data[s as usize] = 1;
    }
    walsh::fwht(&mut data);
    Ok(data)
}

/// Basis of the strongly cospectral subgroup of a cubelike graph, from its spectrum.
pub fn cubelike_sc_basis(n: u32, spectrum: &[i64]) -> Vec<u64> {
    let mut first: HashMap<i64, u64> = HashMap::new();
    let mut diffs = F2Basis::new();
    for (w, &value) in spectrum.iter().enumerate() {
        let w = w as u64;
        let f = *first.entry(value).or_insert(w);
        if f != w && diffs.rank() < n as usize {
            diffs.insert(f ^ w);
        }
    }
    diffs.orthogonal_complement(n)
}

/// Distinct values of a cubelike spectrum with their multiplicities, ascending.
pub fn spectrum_value_counts(spectrum: &[i64]) -> Vec<(i64, u64)> {
    let mut counts: HashMap<i64, u64> = HashMap::new();
    for &v in spectrum {
        *counts.entry(v).or_default() += 1;
    }
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort_unstable();
    out
}

fn classes_from_spectrum(n: u32, spectrum: &[i64]) -> Vec<EigenvalueClass> {
    let ring = CyclotomicRing::new(2).expect("modulus 2");
    let mut by_value: HashMap<i64, Vec<u64>> = HashMap::new();
    // canonical index r has coordinate 0 as its most significant digit
    for r in 0..spectrum.len() as u64 {
        let w = if n == 0 { 0 } else { r.reverse_bits() >> (64 - n) };
        by_value.entry(spectrum[w as usize]).or_default().push(r);
    }
    let mut classes: Vec<(i64, Vec<u64>)> = by_value.into_iter().collect();
    classes.sort_unstable_by_key(|c| c.0);
    classes
        .into_iter()
        .map(|(v, members)| EigenvalueClass { value: ring.integer(v), members })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn graph(orders: &[u64], set: &[&[u64]]) -> Result<CayleyGraph> {
        let g = AbelianGroup::new(orders.to_vec()).unwrap();
        let s = set.iter().map(|c| g.element(c.to_vec()).unwrap()).collect();
        validate_connection_set(&g, s)
    }

    fn int(x: &CyclotomicInteger) -> i64 {
        x.as_integer().and_then(|v| i64::try_from(v).ok()).expect("rational integer")
    }

    #[test]
    fn validation_examples() {
        assert!(graph(&[8], &[&[1], &[7]]).is_ok());
        assert!(matches!(graph(&[8], &[&[1], &[2], &[7]]), Err(Error::MissingInverse { .. })));
        assert!(matches!(graph(&[8], &[&[1], &[2]]), Err(Error::MissingInverse { .. })));
        assert_eq!(graph(&[8], &[&[0], &[1], &[7]]), Err(Error::IdentityInConnectionSet));
        assert!(matches!(graph(&[8], &[&[1], &[7], &[1]]), Err(Error::DuplicateElement(_))));
        assert_eq!(graph(&[8], &[]), Err(Error::EmptyConnectionSet));
        let g = AbelianGroup::new(vec![8]).unwrap();
        let foreign = AbelianGroup::new(vec![8, 8]).unwrap().element(vec![1, 0]).unwrap();
        assert!(matches!(validate_connection_set(&g, vec![foreign]), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn eigenvalue_examples() {
        let c4 = graph(&[4], &[&[1], &[3]]).unwrap();
        let g = c4.group().clone();
        assert_eq!(int(&eigenvalue(&c4, &g.trivial_character()).unwrap()), 2);
        assert!(eigenvalue(&c4, &g.character(vec![1]).unwrap()).unwrap().is_zero());
        let t3 = graph(&[8], &[&[1], &[7]]).unwrap();
        assert!(eigenvalue(&t3, &t3.group().character(vec![2]).unwrap()).unwrap().is_zero());
        let bad = AbelianGroup::new(vec![4, 4]).unwrap().trivial_character();
        assert!(eigenvalue(&c4, &bad).is_err());
    }

    #[test]
    fn class_examples() {
        let k2 = graph(&[2], &[&[1]]).unwrap();
        let values: Vec<i64> = eigenvalue_classes(&k2).unwrap().iter().map(|c| int(c.value())).collect();
        assert_eq!(values, vec![-1, 1]);

        let c4 = graph(&[4], &[&[1], &[3]]).unwrap();
        let mut vm: Vec<(i64, u64)> =
            eigenvalue_classes(&c4).unwrap().iter().map(|c| (int(c.value()), c.multiplicity())).collect();
        vm.sort();
        assert_eq!(vm, vec![(-2, 1), (0, 2), (2, 1)]);

        let t3 = graph(&[8], &[&[1], &[7]]).unwrap();
        let classes = eigenvalue_classes(&t3).unwrap();
        assert_eq!(classes.len(), 5);
        let mut by_members: Vec<(Vec<u64>, f64)> =
            classes.iter().map(|c| (c.member_indices().to_vec(), c.value().to_complex().re)).collect();
        by_members.sort_by(|a, b| a.0.cmp(&b.0));
        let s2 = 2f64.sqrt();
        let expected = [(vec![0], 2.0), (vec![1, 7], s2), (vec![2, 6], 0.0), (vec![3, 5], -s2), (vec![4], -2.0)];
        for ((m, v), (em, ev)) in by_members.iter().zip(expected.iter()) {
            assert_eq!(m, em);
            assert!((v - ev).abs() < 1e-12);
        }
    }

    #[test]
    fn sc_subgroup_examples() {
        let k2 = graph(&[2], &[&[1]]).unwrap();
        assert_eq!(strongly_cospectral_subgroup(&k2).unwrap().order(), 2);
        let c4 = graph(&[4], &[&[1], &[3]]).unwrap();
        let sc = strongly_cospectral_subgroup(&c4).unwrap();
        assert_eq!(sc.elements(), c4.group().two_torsion().elements());
        let t3 = graph(&[8], &[&[1], &[7]]).unwrap();
        let sc = strongly_cospectral_subgroup(&t3).unwrap();
        let g = t3.group();
        assert_eq!(sc.elements(), &[g.identity(), g.element(vec![4]).unwrap()]);
        assert_eq!(sc.generators(), &[g.element(vec![4]).unwrap()]);
        // C_6 has antipodal strong cospectrality too
        let c6 = graph(&[6], &[&[1], &[5]]).unwrap();
        assert_eq!(strongly_cospectral_subgroup(&c6).unwrap().order(), 2);
        // the 8-cycle with chords {1,2,6,7}
        let x = graph(&[8], &[&[1], &[2], &[6], &[7]]).unwrap();
        let classes = eigenvalue_classes(&x).unwrap();
        let a = sc_subgroup_from_classes(x.group(), &classes, ScMethod::CandidateSweep).unwrap();
        let b = sc_subgroup_from_classes(x.group(), &classes, ScMethod::OrthogonalComplement).unwrap();
        assert!(a.same_elements(&b));
    }

    #[test]
    fn wht_examples() {
        assert_eq!(cubelike_spectrum_wht(1, &[1]).unwrap(), vec![1, -1]);
        // d=3 quadric plus nucleus: (1,0,0),(0,1,0),(1,1,1),(0,0,1)
        let s = [0b001, 0b010, 0b111, 0b100];
        assert_eq!(cubelike_spectrum_wht(3, &s).unwrap()[0], 4);
        assert_eq!(cubelike_spectrum_wht(3, &[0, 1]), Err(Error::IdentityInConnectionSet));
        assert_eq!(cubelike_spectrum_wht(3, &[8]), Err(Error::VectorOutOfRange(8)));
        assert!(cubelike_spectrum_wht(33, &[1]).is_err());
    }

    #[test]
    fn fast_and_generic_classes_agree() {
        // large enough to route `analyze` through the transform
        let n = 21u32;
        let g = AbelianGroup::elementary_abelian(n as usize).unwrap();
        let bits = [1u64, 3, 1 << 20, 0b101 << 10, (1 << 21) - 1];
        let set = bits.iter().map(|&b| bits_element(n, b)).collect();
        let x = validate_connection_set(&g, set).unwrap();
        let report = analyze(&x).unwrap();
        assert_eq!(report.method, ScMethod::OrthogonalComplement);
        let total: u64 = report.classes.iter().map(|c| c.multiplicity()).sum();
        assert_eq!(total, 1 << n);
        // spot-check member characters against the generic evaluator
        for class in &report.classes {
            for &idx in class.member_indices().iter().step_by(50_000) {
                let v = eigenvalue(&x, &g.character_at(idx)).unwrap();
                assert_eq!(&v, class.value());
                assert_eq!(v.as_integer(), Some(&BigInt::from(int(class.value()))));
            }
        }
        // sigma = xor of S lies in G_sc
        let sigma = bits.iter().fold(0, |a, b| a ^ b);
        assert!(report.sc_subgroup.contains(&bits_element(n, sigma)));
    }

    #[test]
    fn component_count_uses_top_eigenvalue() {
        let x = graph(&[8], &[&[2], &[6]]).unwrap();
        assert_eq!(analyze(&x).unwrap().component_count(2), 2);
        let y = graph(&[8], &[&[1], &[7]]).unwrap();
        assert_eq!(analyze(&y).unwrap().component_count(2), 1);
    }
}
