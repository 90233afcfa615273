//! Products of cyclic 2-groups `G_J = (+)_{j in J} Z_{2^j}` with connection
//! set `S_J`, the union of the sets `T_j` of odd residues
//! `+-1, +-3, ..., +-(2^(j-2) - 1)` placed in their own factors.
//!
//! For these graphs every involution is strongly cospectral with the
//! identity, so the predicted subgroup is the full two-torsion.

use crate::cyclotomic::{CyclotomicInteger, CyclotomicRing};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character, Subgroup};
use crate::spectral::{validate_connection_set, CayleyGraph, EigenvalueClass};

/// The exponent set `J`, sorted ascending, entries distinct and at least 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeteroSpec {
    exponents: Vec<u32>,
}

impl HeteroSpec {
    pub fn new(mut exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if let Some(&j) = exponents.iter().find(|&&j| j < 3) {
            return Err(Error::InvalidExponent(j));
        }
        if let Some(&j) = exponents.iter().find(|&&j| j > 63) {
            return Err(Error::TooLarge { what: "cyclic factor exponent", size: j as u128, limit: 63 });
        }
        exponents.sort_unstable();
        if let Some(w) = exponents.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedExponent(w[0]));
        }
        Ok(Self { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn orders(&self) -> Vec<u64> {
        self.exponents.iter().map(|&j| 1u64 << j).collect()
    }

    pub fn group(&self) -> Result<AbelianGroup> {
        AbelianGroup::new(self.orders())
    }

    /// `sum_j 2^(j-2)`
    pub fn connection_set_size(&self) -> u64 {
        self.exponents.iter().map(|&j| 1u64 << (j - 2)).sum()
    }
}

/// `T_m` as residues mod `2^m`, ascending.
pub fn build_tm(m: u32) -> Result<Vec<u64>> {
    if m < 3 {
        return Err(Error::InvalidExponent(m));
    }
    if m > 63 {
        return Err(Error::TooLarge { what: "cyclic factor exponent", size: m as u128, limit: 63 });
    }
    let modulus = 1u64 << m;
    let low: Vec<u64> = (0..1u64 << (m - 3)).map(|i| 2 * i + 1).collect();
    let high = low.iter().rev().map(|&r| modulus - r);
    Ok(low.iter().copied().chain(high).collect())
}

pub fn build_heterocyclic(spec: &HeteroSpec) -> Result<CayleyGraph> {
    let group = spec.group()?;
    let k = spec.exponents.len();
    let mut set = Vec::with_capacity(spec.connection_set_size() as usize);
    for (pos, &j) in spec.exponents.iter().enumerate() {
        for r in build_tm(j)? {
            let mut c = vec![0; k];
            c[pos] = r;
            set.push(group.element(c)?);
        }
    }
    validate_connection_set(&group, set)
}

/// `[a](T_m) = sum_{t in T_m} zeta_{2^m}^(a t)`, exactly.
pub fn character_sum_tm(m: u32, a: u64) -> Result<CyclotomicInteger> {
    let tm = build_tm(m)?;
    let modulus = 1u64 << m;
    let ring = CyclotomicRing::new(modulus)?;
    let a = a % modulus;
    Ok(ring.root_power_sum(tm.iter().map(|&t| (a as u128 * t as u128 % modulus as u128) as u64)))
}

/// The full two-torsion of `G_J`, of order `2^|J|`.
pub fn predicted_sc_subgroup(spec: &HeteroSpec) -> Result<Subgroup> {
    Ok(spec.group()?.two_torsion())
}

/// Two characters in one eigenvalue class that break an expected pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassViolation {
    pub value: String,
    pub first: Character,
    pub second: Character,
}

/// Checks that characters sharing an eigenvalue have equal coordinate
/// parities at every position.
pub fn check_parity_dichotomy(graph: &CayleyGraph, classes: &[EigenvalueClass]) -> Option<ClassViolation> {
    let group = graph.group();
    for class in classes {
        let mut chars = class.characters(group);
        let first = chars.next()?;
        let parity = |c: &Character| c.as_slice().iter().map(|x| x & 1).collect::<Vec<_>>();
        let p0 = parity(&first);
        if let Some(second) = chars.find(|c| parity(c) != p0) {
            return Some(ClassViolation { value: class.value().to_string(), first, second });
        }
    }
    None
}

/// Largest factor position holding an odd coordinate, with `[a_m](T_m)` there.
pub fn top_odd_signature(spec: &HeteroSpec, a: &Character) -> Result<Option<(usize, CyclotomicInteger)>> {
    let Some(pos) = a.as_slice().iter().rposition(|x| x & 1 == 1) else {
        return Ok(None);
    };
    Ok(Some((pos, character_sum_tm(spec.exponents[pos], a.as_slice()[pos])?)))
}

/// Checks that, for characters sharing an eigenvalue, the largest position
/// where either is odd has both odd with equal `T_m` character sums.
///
/// Pairwise agreement is equivalent to every member of a class having the
/// same [`top_odd_signature`], which is what gets compared.
pub fn check_top_odd_agreement(
    spec: &HeteroSpec,
    graph: &CayleyGraph,
    classes: &[EigenvalueClass],
) -> Result<Option<ClassViolation>> {
    let group = graph.group();
    for class in classes {
        let mut chars = class.characters(group);
        let Some(first) = chars.next() else { continue };
        let sig0 = top_odd_signature(spec, &first)?;
        for c in chars {
            if top_odd_signature(spec, &c)? != sig0 {
                return Ok(Some(ClassViolation { value: class.value().to_string(), first, second: c }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn tm_examples() {
        assert_eq!(build_tm(3).unwrap(), vec![1, 7]);
        assert_eq!(build_tm(4).unwrap(), vec![1, 3, 13, 15]);
        assert_eq!(build_tm(5).unwrap(), vec![1, 3, 5, 7, 25, 27, 29, 31]);
        assert_eq!(build_tm(2), Err(Error::InvalidExponent(2)));
        for m in 3..=12 {
            let t = build_tm(m).unwrap();
            assert_eq!(t.len(), 1 << (m - 2));
            assert!(t.iter().all(|x| x % 2 == 1));
            assert!(t.iter().all(|x| t.contains(&((1 << m) - x))));
        }
    }

    #[test]
    fn spec_validation() {
        assert_eq!(HeteroSpec::new(vec![5, 3]).unwrap().exponents(), &[3, 5]);
        assert_eq!(HeteroSpec::new(vec![2]), Err(Error::InvalidExponent(2)));
        assert_eq!(HeteroSpec::new(vec![3, 3]), Err(Error::RepeatedExponent(3)));
        assert_eq!(HeteroSpec::new(vec![]), Err(Error::EmptyGroup));
    }

    #[test]
    fn build_examples() {
        let x = build_heterocyclic(&HeteroSpec::new(vec![3]).unwrap()).unwrap();
        assert_eq!(x.group().orders(), &[8]);
        let s: Vec<u64> = x.connection_set().iter().map(|e| e.as_slice()[0]).collect();
        assert_eq!(s, vec![1, 7]);
        let x = build_heterocyclic(&HeteroSpec::new(vec![3, 4]).unwrap()).unwrap();
        assert_eq!((x.group().size(), x.degree()), (128, 6));
        let x = build_heterocyclic(&HeteroSpec::new(vec![3, 4, 5]).unwrap()).unwrap();
        assert_eq!((x.group().size(), x.degree()), (4096, 14));
    }

    #[test]
    fn character_sum_examples() {
        let v = |m, a| character_sum_tm(m, a).unwrap();
        assert_eq!(v(4, 0).as_integer(), Some(&BigInt::from(4)));
        assert_eq!(v(4, 8).as_integer(), Some(&BigInt::from(-4)));
        assert!(v(4, 2).is_zero());
        assert!(v(3, 2).is_zero());
    }

    #[test]
    fn predicted_orders() {
        for (j, order) in [(vec![3], 2), (vec![3, 4], 4), (vec![3, 4, 5], 8)] {
            assert_eq!(predicted_sc_subgroup(&HeteroSpec::new(j).unwrap()).unwrap().order(), order);
        }
    }
}
