//! Quadrics over `F_2` and the cubelike construction built from them.
//!
//! On `V = F_2^d`, `d = 2e + 1`, with coordinates `x_1..x_d` stored in bits
//! `0..d-1`, the form is `q(x) = x_d + sum_{i<=e} x_i x_{e+i}`. Its quadric
//! `Q` (nonzero zeros) together with the nucleus `p = e_d` gives the block
//! `S' = Q + {p}`, whose elements sum to `p` once `d >= 5`.
//!
//! The full construction places blocks of dimensions `n_1 < ... < n_k` in
//! consecutive coordinate ranges of `F_2^n`, `V_1` in the lowest bits.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::f2::{self, F2Basis};
use crate::spectral::{
    bits_element, cubelike_sc_basis, cubelike_spectrum_wht, spectrum_value_counts, validate_connection_set,
    CayleyGraph,
};

/// A vector of `F_2^dim`, `dim <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    bits: u64,
    dim: u32,
}

impl F2Vector {
    pub fn new(bits: u64, dim: u32) -> Result<Self> {
        if dim > 64 {
            return Err(Error::TooLarge { what: "F2 dimension", size: dim as u128, limit: 64 });
        }
        if dim < 64 && bits >> dim != 0 {
            return Err(Error::VectorOutOfRange(bits));
        }
        Ok(Self { bits, dim })
    }

    pub fn zero(dim: u32) -> Self {
        Self { bits: 0, dim }
    }

    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        let bits = coords.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c & 1) as u64) << i);
        Self::new(bits, coords.len() as u32)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn dim(self) -> u32 {
        self.dim
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn add(self, other: Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(Self { bits: self.bits ^ other.bits, dim: self.dim })
    }

    pub fn dot(self, other: Self) -> Result<u32> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(f2::dot(self.bits, other.bits))
    }

    /// The same vector placed at bit `offset` of `F_2^total`.
    pub fn embed(self, offset: u32, total: u32) -> Result<Self> {
        if offset + self.dim > total {
            return Err(Error::DimensionMismatch { expected: total, found: offset + self.dim });
        }
        Self::new(self.bits << offset, total)
    }

    pub fn coords(self) -> Vec<u8> {
        (0..self.dim).map(|i| (self.bits >> i & 1) as u8).collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}/{}", self.bits, self.dim)
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

/// `F_2^d`, `d = 2e + 1`, with the form `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticSpace {
    d: u32,
    e: u32,
}

impl QuadraticSpace {
    pub fn new(d: u32) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) || d > 63 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self { d, e: (d - 1) / 2 })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Half the dimension of the hyperbolic part; the Witt index of `q` restricted to `x_d = 0`.
    pub fn e(&self) -> u32 {
        self.e
    }

    pub(crate) fn q_bits(&self, v: u64) -> u64 {
        let mask = (1u64 << self.e) - 1;
        let products = (v & mask & (v >> self.e)).count_ones() as u64;
        (v >> (self.d - 1) & 1) ^ (products & 1)
    }

    fn check(&self, v: F2Vector) -> Result<()> {
        if v.dim != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: v.dim });
        }
        Ok(())
    }

    pub fn eval_q(&self, v: F2Vector) -> Result<u8> {
        self.check(v)?;
        Ok(self.q_bits(v.bits) as u8)
    }

    /// `b(u, v) = q(u + v) + q(u) + q(v)`
    pub fn bilinear(&self, u: F2Vector, v: F2Vector) -> Result<u8> {
        self.check(u)?;
        self.check(v)?;
        Ok((self.q_bits(u.bits ^ v.bits) ^ self.q_bits(u.bits) ^ self.q_bits(v.bits)) as u8)
    }

    /// Bits of the nonzero zeros of `q`, ascending.
    pub(crate) fn quadric_bits(&self) -> Result<Vec<u64>> {
        if self.d > 32 {
            return Err(Error::TooLarge { what: "quadric dimension", size: self.d as u128, limit: 32 });
        }
        Ok((1..1u64 << self.d).filter(|&v| self.q_bits(v) == 0).collect())
    }

    /// `Q`: the `2^(d-1) - 1` nonzero zeros of `q`. Enumerates `2^d` vectors.
    pub fn quadric_points(&self) -> Result<Vec<F2Vector>> {
        Ok(self.quadric_bits()?.into_iter().map(|bits| F2Vector { bits, dim: self.d }).collect())
    }

    /// `p = (0, ..., 0, 1)`, spanning the radical of the bilinear form.
    pub fn nucleus(&self) -> F2Vector {
        F2Vector { bits: 1 << (self.d - 1), dim: self.d }
    }

    /// `S' = Q + {p}` as sorted bits.
    pub(crate) fn block_bits(&self) -> Result<Vec<u64>> {
        let mut s = self.quadric_bits()?;
        s.push(self.nucleus().bits);
        s.sort_unstable();
        Ok(s)
    }

    pub fn block_points(&self) -> Result<Vec<F2Vector>> {
        Ok(self.block_bits()?.into_iter().map(|bits| F2Vector { bits, dim: self.d }).collect())
    }
}

/// Sum in `F_2^dim` of all vectors in `set`.
pub fn sigma_of_set(dim: u32, set: &[F2Vector]) -> Result<F2Vector> {
    set.iter().try_fold(F2Vector::zero(dim), |acc, &v| acc.add(v))
}

/// How the hyperplanes of `V` cut `S' = Q + {p}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneProfile {
    /// `|H cap S'|` for the `2^d - 1` hyperplanes `H` of `V`, with frequencies.
    pub counts: BTreeMap<u64, u64>,
    /// `|S'| = 2^(d-1)`, the section by a hyperplane of a larger space containing `V`.
    pub full_containment: u64,
    /// Smallest gap between distinct observed counts once `full_containment` is adjoined.
    pub min_gap: u64,
}

pub const MAX_PROFILE_DIM: u32 = 21;

/// Counts `|H_w cap S'|` for every nonzero `w`, as `(|S'| + chi_w(S')) / 2`.
///
/// Only hyperplanes of `V` itself occur here, so the value `2^(d-1)` is not
/// observed; it is adjoined for the gap, where it stands for hyperplanes of
/// an ambient space that contain `V`.
pub fn hyperplane_profile(space: &QuadraticSpace) -> Result<HyperplaneProfile> {
    if space.d > MAX_PROFILE_DIM {
        return Err(Error::TooLarge { what: "profile dimension", size: space.d as u128, limit: MAX_PROFILE_DIM as u128 });
    }
    let block = space.block_bits()?;
    let size = block.len() as i64;
    let spectrum = cubelike_spectrum_wht(space.d, &block)?;
    let mut counts = BTreeMap::new();
    for &chi in &spectrum[1..] {
        *counts.entry(((size + chi) / 2) as u64).or_insert(0u64) += 1;
    }
    let full = 1u64 << (space.d - 1);
    let mut values: Vec<u64> = counts.keys().copied().chain([full]).collect();
    values.sort_unstable();
    values.dedup();
    let min_gap = values.windows(2).map(|w| w[1] - w[0]).min().unwrap_or(0);
    Ok(HyperplaneProfile { counts, full_containment: full, min_gap })
}

/// `2^(e-1)`, the separation unit the block-dimension bound is phrased in.
///
/// The measured [`HyperplaneProfile::min_gap`] is one less once `e >= 2`:
/// hyperplanes through the nucleus but not containing `V` meet `S'` in
/// `2^(d-2)` points, which sits `2^(e-1) - 1` above the elliptic count.
pub fn epsilon(space: &QuadraticSpace) -> u64 {
    1 << (space.e - 1)
}

fn check_block_dims(dims: &[u32]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::MalformedDims("no blocks".into()));
    }
    if let Some(d) = dims.iter().find(|&&d| d < 5 || d % 2 == 0) {
        return Err(Error::MalformedDims(format!("{d} is not an odd dimension of at least 5")));
    }
    Ok(())
}

/// Whether `epsilon_i >= 2^(n_{i-1} + 2)` for every level `i >= 2`.
pub fn verify_ebound(dims: &[u32]) -> Result<bool> {
    Ok(first_ebound_failure(dims)?.is_none())
}

/// Level (0-based) of the first block violating the bound.
fn first_ebound_failure(dims: &[u32]) -> Result<Option<usize>> {
    check_block_dims(dims)?;
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedDims(format!("{dims:?} is not strictly increasing")));
    }
    // log2 epsilon_i = (n_i - 1)/2 - 1
    Ok(dims.windows(2).position(|w| (w[1] - 1) / 2 - 1 < w[0] + 2).map(|i| i + 1))
}

/// Smallest dimensions meeting the bound: `n_1 = 5`, `n_i = 2 n_{i-1} + 7`.
pub fn min_dims(k: usize) -> Result<Vec<u32>> {
    if k < 1 {
        return Err(Error::MalformedDims("need at least one level".into()));
    }
    let mut dims = vec![5u32];
    while dims.len() < k {
        let next = dims.last().unwrap().checked_mul(2).and_then(|x| x.checked_add(7));
        dims.push(next.ok_or_else(|| Error::MalformedDims("dimension overflow".into()))?);
    }
    Ok(dims)
}

/// Block dimensions for the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubelikeSpec {
    dims: Vec<u32>,
    meets_ebound: bool,
}

impl CubelikeSpec {
    /// Dimensions that satisfy the separation bound.
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if let Some(level) = first_ebound_failure(&dims)? {
            return Err(Error::EboundViolation { dims, level });
        }
        Ok(Self { dims, meets_ebound: true })
    }

    /// Any odd dimensions `>= 5`; the bound is recorded, not enforced.
    pub fn exploratory(dims: Vec<u32>) -> Result<Self> {
        check_block_dims(&dims)?;
        let meets_ebound = matches!(first_ebound_failure(&dims), Ok(None));
        Ok(Self { dims, meets_ebound })
    }

    pub fn levels(k: usize) -> Result<Self> {
        Self::new(min_dims(k)?)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn meets_ebound(&self) -> bool {
        self.meets_ebound
    }
}

/// Assembled cubelike instance. `S` is held implicitly; see [`connection_set`](Self::connection_set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubelikeConstruction {
    spec: CubelikeSpec,
    spaces: Vec<QuadraticSpace>,
    offsets: Vec<u32>,
    n: u32,
}

/// Cap on materialized connection sets.
pub const MAX_MATERIALIZED: u128 = 1 << 27;

pub fn build_cubelike(spec: &CubelikeSpec) -> Result<CubelikeConstruction> {
    let mut offsets = Vec::with_capacity(spec.dims.len());
    let mut n = 0u32;
    let mut spaces = Vec::with_capacity(spec.dims.len());
    for &d in &spec.dims {
        offsets.push(n);
        spaces.push(QuadraticSpace::new(d)?);
        n += d;
    }
    if n > 64 {
        return Err(Error::TooLarge { what: "total dimension", size: n as u128, limit: 64 });
    }
    Ok(CubelikeConstruction { spec: spec.clone(), spaces, offsets, n })
}

impl CubelikeConstruction {
    pub fn spec(&self) -> &CubelikeSpec {
        &self.spec
    }

    pub fn dims(&self) -> &[u32] {
        &self.spec.dims
    }

    /// Ambient dimension `n = sum n_i`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    /// `|S| = sum 2^(n_i - 1)`
    pub fn connection_set_size(&self) -> u128 {
        self.spec.dims.iter().map(|&d| 1u128 << (d - 1)).sum()
    }

    /// The embedded nuclei `p_1, ..., p_k`.
    pub fn predicted_generators(&self) -> Vec<F2Vector> {
        self.spaces
            .iter()
            .zip(&self.offsets)
            .map(|(s, &o)| s.nucleus().embed(o, self.n).expect("block fits"))
            .collect()
    }

    /// Rank over `F_2` of the predicted generators.
    pub fn predicted_rank(&self) -> usize {
        f2::rank(self.predicted_generators().iter().map(|p| p.bits()))
    }

    fn check_materializable(&self) -> Result<()> {
        let size = self.connection_set_size();
        if size > MAX_MATERIALIZED {
            return Err(Error::TooLarge { what: "connection set", size, limit: MAX_MATERIALIZED });
        }
        Ok(())
    }

    /// Each `S_i` in its local coordinates of `F_2^(n_i)`.
    pub fn local_blocks(&self) -> Result<Vec<Vec<u64>>> {
        self.check_materializable()?;
        self.spaces.iter().map(QuadraticSpace::block_bits).collect()
    }

    /// `S` as sorted bitmasks of `F_2^n`.
    pub fn connection_set(&self) -> Result<Vec<u64>> {
        self.check_materializable()?;
        let mut out = Vec::with_capacity(self.connection_set_size() as usize);
        for (block, &o) in self.local_blocks()?.iter().zip(&self.offsets) {
            out.extend(block.iter().map(|b| b << o));
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn cayley_graph(&self) -> Result<CayleyGraph> {
        let group = crate::group::AbelianGroup::elementary_abelian(self.n as usize)?;
        let set = self.connection_set()?.into_iter().map(|b| bits_element(self.n, b)).collect();
        validate_connection_set(&group, set)
    }
}

/// Result of analyzing a construction through its Walsh spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubelikeAnalysis {
    pub n: u32,
    /// Distinct eigenvalues with multiplicities, ascending.
    pub value_counts: Vec<(i64, u64)>,
    /// Basis of the computed strongly cospectral subgroup.
    pub sc_basis: Vec<u64>,
    pub predicted: Vec<u64>,
    pub predicted_rank: usize,
    /// Every predicted generator lies in the computed subgroup.
    pub contains_predicted: bool,
    /// The computed subgroup is strictly larger than the predicted one.
    pub strict: bool,
    /// Sum of all elements of `S`.
    pub sigma: u64,
    pub sigma_in_sc: bool,
}

impl CubelikeAnalysis {
    pub fn sc_order(&self) -> u128 {
        1u128 << self.sc_basis.len()
    }

    /// Elements of the computed subgroup, ascending.
    pub fn sc_elements(&self) -> Vec<u64> {
        let mut v = F2Basis::from_vectors(self.sc_basis.iter().copied()).span();
        v.sort_unstable();
        v
    }
}

pub fn analyze_construction(c: &CubelikeConstruction) -> Result<CubelikeAnalysis> {
    let set = c.connection_set()?;
    analyze_cubelike_set(c.n, &set, c.predicted_generators().iter().map(|p| p.bits()).collect())
}

/// Spectrum, computed subgroup and comparison against `predicted` for any set in `F_2^n`.
pub fn analyze_cubelike_set(n: u32, set: &[u64], predicted: Vec<u64>) -> Result<CubelikeAnalysis> {
    let spectrum = cubelike_spectrum_wht(n, set)?;
    let sc_basis = cubelike_sc_basis(n, &spectrum);
    let sc = F2Basis::from_vectors(sc_basis.iter().copied());
    let predicted_rank = f2::rank(predicted.iter().copied());
    let sigma = set.iter().fold(0, |a, b| a ^ b);
    Ok(CubelikeAnalysis {
        n,
        value_counts: spectrum_value_counts(&spectrum),
        contains_predicted: predicted.iter().all(|&p| sc.contains(p)),
        strict: sc.rank() > predicted_rank,
        sigma_in_sc: sc.contains(sigma),
        sc_basis,
        predicted,
        predicted_rank,
        sigma,
    })
}

/// Outcome of checking that `|H cap S|` determines every `|H cap S_i|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Determination {
    pub hyperplanes: u64,
    pub distinct_totals: usize,
    /// A total count reached by two different block-count tuples, if any.
    pub collision: Option<(u64, Vec<u64>, Vec<u64>)>,
    /// Block counts summed to the total at every hyperplane.
    pub additive: bool,
}

impl Determination {
    pub fn holds(&self) -> bool {
        self.collision.is_none() && self.additive
    }
}

/// Exhaustive check over all `2^n - 1` hyperplanes `H_w`. The total count
/// comes from the spectrum of `S` on `F_2^n`; each block count from the
/// spectrum of `S_i` on its own `F_2^(n_i)`, evaluated at `w` restricted to
/// the block.
pub fn determination_check(c: &CubelikeConstruction) -> Result<Determination> {
    let set = c.connection_set()?;
    let total_spectrum = cubelike_spectrum_wht(c.n, &set)?;
    let blocks = c.local_blocks()?;
    let block_spectra: Vec<Vec<i64>> = blocks
        .iter()
        .zip(c.dims())
        .map(|(b, &d)| cubelike_spectrum_wht(d, b))
        .collect::<Result<_>>()?;
    let total_size = set.len() as i64;
    let mut seen: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut collision = None;
    let mut additive = true;
    let mut tuple = vec![0u64; blocks.len()];
    for w in 1..total_spectrum.len() {
        let total = ((total_size + total_spectrum[w]) / 2) as u64;
        for (i, ((spec, block), (&o, &d))) in
            block_spectra.iter().zip(&blocks).zip(c.offsets().iter().zip(c.dims())).enumerate()
        {
            let local = (w as u64 >> o) & ((1u64 << d) - 1);
            tuple[i] = ((block.len() as i64 + spec[local as usize]) / 2) as u64;
        }
        additive &= tuple.iter().sum::<u64>() == total;
        match seen.get(&total) {
            Some(prev) if *prev != tuple => {
                if collision.is_none() {
                    collision = Some((total, prev.clone(), tuple.clone()));
                }
            }
            Some(_) => {}
            None => {
                seen.insert(total, tuple.clone());
            }
        }
    }
    Ok(Determination {
        hyperplanes: total_spectrum.len() as u64 - 1,
        distinct_totals: seen.len(),
        collision,
        additive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u8]) -> F2Vector {
        F2Vector::from_coords(c).unwrap()
    }

    #[test]
    fn eval_q_examples() {
        let s = QuadraticSpace::new(3).unwrap();
        assert_eq!(s.eval_q(v(&[1, 0, 0])).unwrap(), 0);
        assert_eq!(s.eval_q(v(&[0, 0, 1])).unwrap(), 1);
        assert_eq!(s.eval_q(v(&[1, 1, 1])).unwrap(), 0);
        assert!(matches!(s.eval_q(v(&[1, 0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn space_validation() {
        assert_eq!(QuadraticSpace::new(4), Err(Error::InvalidDimension(4)));
        assert_eq!(QuadraticSpace::new(1), Err(Error::InvalidDimension(1)));
        assert_eq!(QuadraticSpace::new(9).unwrap().e(), 4);
    }

    #[test]
    fn quadric_examples() {
        let q3 = QuadraticSpace::new(3).unwrap().quadric_points().unwrap();
        let mut expected = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 1])];
        expected.sort();
        assert_eq!(q3, expected);
        assert_eq!(QuadraticSpace::new(5).unwrap().quadric_points().unwrap().len(), 15);
        assert_eq!(QuadraticSpace::new(7).unwrap().quadric_points().unwrap().len(), 63);
        for d in (3..=13).step_by(2) {
            let n = QuadraticSpace::new(d).unwrap().quadric_points().unwrap().len();
            assert_eq!(n, (1 << (d - 1)) - 1, "d = {d}");
        }
    }

    #[test]
    fn nucleus_spans_the_radical() {
        assert_eq!(QuadraticSpace::new(3).unwrap().nucleus(), v(&[0, 0, 1]));
        assert_eq!(QuadraticSpace::new(5).unwrap().nucleus(), v(&[0, 0, 0, 0, 1]));
        for d in [3u32, 5, 7, 9] {
            let s = QuadraticSpace::new(d).unwrap();
            let all: Vec<F2Vector> = (0..1u64 << d).map(|b| F2Vector::new(b, d).unwrap()).collect();
            let radical: Vec<F2Vector> = all
                .iter()
                .copied()
                .filter(|&x| !x.is_zero() && all.iter().all(|&u| s.bilinear(x, u).unwrap() == 0))
                .collect();
            assert_eq!(radical, vec![s.nucleus()], "d = {d}");
            assert_eq!(s.eval_q(s.nucleus()).unwrap(), 1);
        }
    }

    #[test]
    fn sigma_examples() {
        let s3 = QuadraticSpace::new(3).unwrap();
        assert_eq!(sigma_of_set(3, &s3.quadric_points().unwrap()).unwrap(), v(&[0, 0, 1]));
        for d in (5..=13).step_by(2) {
            let s = QuadraticSpace::new(d).unwrap();
            assert!(sigma_of_set(d, &s.quadric_points().unwrap()).unwrap().is_zero(), "d = {d}");
            assert_eq!(sigma_of_set(d, &s.block_points().unwrap()).unwrap(), s.nucleus());
        }
        assert!(sigma_of_set(3, &[v(&[1, 0])]).is_err());
    }

    /// `|H_w cap S'|` by direct counting, for comparison with the transform.
    fn profile_by_counting(s: &QuadraticSpace) -> BTreeMap<u64, u64> {
        let block = s.block_bits().unwrap();
        let mut counts = BTreeMap::new();
        for w in 1..1u64 << s.d() {
            let c = block.iter().filter(|&&x| f2::dot(w, x) == 0).count() as u64;
            *counts.entry(c).or_insert(0) += 1;
        }
        counts
    }

    #[test]
    fn profile_examples() {
        let p = hyperplane_profile(&QuadraticSpace::new(5).unwrap()).unwrap();
        assert_eq!(p.counts.keys().copied().collect::<Vec<_>>(), vec![5, 8, 9]);
        assert_eq!((p.full_containment, p.min_gap), (16, 1));
        let p = hyperplane_profile(&QuadraticSpace::new(7).unwrap()).unwrap();
        assert_eq!(p.counts.keys().copied().collect::<Vec<_>>(), vec![27, 32, 35]);
        assert_eq!((p.full_containment, p.min_gap), (64, 3));
        let p = hyperplane_profile(&QuadraticSpace::new(3).unwrap()).unwrap();
        assert_eq!(p.counts.keys().copied().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(p.min_gap, 2);
        for d in [3u32, 5, 7, 9, 11] {
            let s = QuadraticSpace::new(d).unwrap();
            assert_eq!(hyperplane_profile(&s).unwrap().counts, profile_by_counting(&s));
            assert_eq!(hyperplane_profile(&s).unwrap().counts.values().sum::<u64>(), (1 << d) - 1);
        }
        assert!(hyperplane_profile(&QuadraticSpace::new(23).unwrap()).is_err());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&QuadraticSpace::new(5).unwrap()), 2);
        assert_eq!(epsilon(&QuadraticSpace::new(7).unwrap()), 4);
        assert_eq!(epsilon(&QuadraticSpace::new(17).unwrap()), 128);
    }

    #[test]
    fn ebound_examples() {
        assert!(verify_ebound(&[5]).unwrap());
        assert!(verify_ebound(&[5, 17]).unwrap());
        assert!(!verify_ebound(&[5, 15]).unwrap());
        assert!(verify_ebound(&[5, 17, 41]).unwrap());
        assert!(verify_ebound(&[5, 3]).is_err());
        assert!(verify_ebound(&[17, 5]).is_err());
        assert!(verify_ebound(&[]).is_err());
        // bound in its original form: epsilon_i >= 2^(n_{i-1} + 2)
        for a in (5u32..=13).step_by(2) {
            for b in (a + 2..=40).step_by(2) {
                let eps = epsilon(&QuadraticSpace::new(b).unwrap());
                assert_eq!(verify_ebound(&[a, b]).unwrap(), eps >= 1 << (a + 2), "{a},{b}");
            }
        }
    }

    #[test]
    fn min_dims_examples() {
        assert_eq!(min_dims(1).unwrap(), vec![5]);
        assert_eq!(min_dims(2).unwrap(), vec![5, 17]);
        assert_eq!(min_dims(3).unwrap(), vec![5, 17, 41]);
        assert!(min_dims(0).is_err());
        for k in 1..=6 {
            let dims = min_dims(k).unwrap();
            assert!(verify_ebound(&dims).unwrap());
            // minimal: shrinking any later block by 2 breaks the bound
            for i in 1..k {
                let mut smaller = dims.clone();
                smaller[i] -= 2;
                assert!(!matches!(verify_ebound(&smaller), Ok(true)));
            }
        }
    }

    #[test]
    fn spec_constructors() {
        assert!(matches!(CubelikeSpec::new(vec![5, 15]), Err(Error::EboundViolation { level: 1, .. })));
        let forced = CubelikeSpec::exploratory(vec![5, 15]).unwrap();
        assert!(!forced.meets_ebound());
        assert!(CubelikeSpec::new(vec![3]).is_err());
        assert!(CubelikeSpec::exploratory(vec![3]).is_err());
    }

    #[test]
    fn build_examples() {
        let c = build_cubelike(&CubelikeSpec::new(vec![5]).unwrap()).unwrap();
        assert_eq!((c.n(), c.connection_set_size()), (5, 16));
        assert_eq!(c.predicted_generators(), vec![v(&[0, 0, 0, 0, 1])]);
        let c = build_cubelike(&CubelikeSpec::levels(2).unwrap()).unwrap();
        assert_eq!((c.n(), c.connection_set_size()), (22, 65552));
        assert_eq!(c.predicted_rank(), 2);
        assert_eq!(c.predicted_generators()[1].bits(), 1 << 21);
        let c = build_cubelike(&CubelikeSpec::levels(3).unwrap()).unwrap();
        assert_eq!(c.n(), 63);
        assert_eq!(c.predicted_rank(), 3);
        assert!(matches!(c.connection_set(), Err(Error::TooLarge { .. })));
        assert!(build_cubelike(&CubelikeSpec::levels(4).unwrap()).is_err());
    }

    #[test]
    fn single_block_analysis() {
        let c = build_cubelike(&CubelikeSpec::new(vec![5]).unwrap()).unwrap();
        let a = analyze_construction(&c).unwrap();
        let values: Vec<i64> = a.value_counts.iter().map(|x| x.0).collect();
        assert_eq!(values, vec![-6, 0, 2, 16]);
        assert!(a.contains_predicted && a.sigma_in_sc);
        assert_eq!(a.sigma, 1 << 4);
        let d = determination_check(&c).unwrap();
        assert!(d.holds());
        assert_eq!(d.hyperplanes, 31);
    }

    #[test]
    fn two_blocks_violating_the_bound_still_analyze() {
        let c = build_cubelike(&CubelikeSpec::exploratory(vec![5, 7]).unwrap()).unwrap();
        let a = analyze_construction(&c).unwrap();
        assert_eq!(a.n, 12);
        let d = determination_check(&c).unwrap();
        assert!(d.additive);
        assert_eq!(a.value_counts.iter().map(|x| x.1).sum::<u64>(), 1 << 12);
    }
}
