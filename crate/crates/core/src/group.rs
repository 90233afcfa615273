//! Finite abelian groups written as products of cyclic factors.
//!
//! A group `Z_{d_1} x ... x Z_{d_k}` is self-dual, so elements and characters
//! share one residue-tuple representation. The tuple type is tagged with a
//! role marker so the two cannot be mixed up by accident.

use std::collections::BTreeSet;
use std::fmt;
use std::marker::PhantomData;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Marker for tuples that are group elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementRole {}

/// Marker for tuples that are characters of the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharacterRole {}

/// A residue tuple `(x_1, ..., x_k)` with `0 <= x_i < d_i`.
///
/// Ordering is lexicographic on the coordinates, which is the canonical order
/// used for every listing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coords<R> {
    coords: Vec<u64>,
    _role: PhantomData<R>,
}

pub type GroupElement = Coords<ElementRole>;
pub type Character = Coords<CharacterRole>;

impl<R> Coords<R> {
    pub(crate) fn from_vec(coords: Vec<u64>) -> Self {
        Self { coords, _role: PhantomData }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl GroupElement {
    /// The character with the same coordinates (self-duality of the group).
    pub fn to_character(&self) -> Character {
        Character::from_vec(self.coords.clone())
    }
}

impl Character {
    pub fn to_element(&self) -> GroupElement {
        GroupElement::from_vec(self.coords.clone())
    }
}

impl<R> fmt::Debug for Coords<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R> fmt::Display for Coords<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `Z_{d_1} x ... x Z_{d_k}` with every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    exponent: u64,
    size: u128,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyGroup);
        }
        let mut exponent = 1u64;
        let mut size = 1u128;
        for (index, &order) in orders.iter().enumerate() {
            if order < 2 {
                return Err(Error::InvalidOrder { index, order });
            }
            exponent = exponent.lcm(&order);
            size = size.checked_mul(order as u128).ok_or(Error::GroupTooLarge)?;
        }
        Ok(Self { orders, exponent, size })
    }

    /// `F_2^n` as the product of `n` copies of `Z_2`.
    pub fn elementary_abelian(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn factor_count(&self) -> usize {
        self.orders.len()
    }

    /// `N = lcm(d_1, ..., d_k)`; every character takes values in the `N`-th roots of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.orders.iter().all(|&d| d == 2)
    }

    /// The group order as a `u64`, or an error when it exceeds `limit`.
    pub fn bounded_size(&self, limit: u64) -> Result<u64> {
        if self.size > limit as u128 {
            return Err(Error::TooLarge { what: "group", size: self.size, limit: limit as u128 });
        }
        Ok(self.size as u64)
    }

    pub(crate) fn check_shape(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.orders.len() {
            return Err(Error::ShapeMismatch { expected: self.orders.len(), found: coords.len() });
        }
        for (index, (&value, &order)) in coords.iter().zip(&self.orders).enumerate() {
            if value >= order {
                return Err(Error::CoordinateOutOfRange { index, value, order });
            }
        }
        Ok(())
    }

    /// Validated element; coordinates must already be reduced.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        self.check_shape(&coords)?;
        Ok(GroupElement::from_vec(coords))
    }

    /// Element from arbitrary integers, reduced coordinate-wise.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::ShapeMismatch { expected: self.orders.len(), found: coords.len() });
        }
        Ok(GroupElement::from_vec(
            coords.iter().zip(&self.orders).map(|(&c, &d)| c.rem_euclid(d as i64) as u64).collect(),
        ))
    }

    pub fn character(&self, coords: Vec<u64>) -> Result<Character> {
        self.check_shape(&coords)?;
        Ok(Character::from_vec(coords))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::from_vec(vec![0; self.orders.len()])
    }

    pub fn trivial_character(&self) -> Character {
        Character::from_vec(vec![0; self.orders.len()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_shape(a.as_slice())?;
        self.check_shape(b.as_slice())?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::from_vec(
            a.coords
                .iter()
                .zip(&b.coords)
                .zip(&self.orders)
                .map(|((&x, &y), &d)| ((x as u128 + y as u128) % d as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_shape(a.as_slice())?;
        Ok(self.neg_unchecked(a))
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement::from_vec(
            a.coords.iter().zip(&self.orders).map(|(&x, &d)| if x == 0 { 0 } else { d - x }).collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn is_involution_or_identity(&self, z: &GroupElement) -> Result<bool> {
        let twice = self.add(z, z)?;
        Ok(twice.is_zero())
    }

    /// Exponent `e` with `chi_a(x) = zeta_N^e`, namely `sum_i a_i x_i (N / d_i) mod N`.
    pub fn pairing_exponent(&self, a: &Character, x: &GroupElement) -> Result<u64> {
        self.check_shape(a.as_slice())?;
        self.check_shape(x.as_slice())?;
        Ok(self.pairing_unchecked(a.as_slice(), x.as_slice()))
    }

    pub(crate) fn pairing_unchecked(&self, a: &[u64], x: &[u64]) -> u64 {
        let n = self.exponent as u128;
        let mut e = 0u128;
        for ((&ai, &xi), &d) in a.iter().zip(x).zip(&self.orders) {
            let scale = (self.exponent / d) as u128;
            e = (e + (ai as u128 * xi as u128 % d as u128) * scale) % n;
        }
        e as u64
    }

    /// Position of a tuple in the canonical (lexicographic) order.
    pub fn index_of(&self, coords: &[u64]) -> u64 {
        coords.iter().zip(&self.orders).fold(0u64, |acc, (&c, &d)| acc * d + c)
    }

    /// Inverse of [`index_of`](Self::index_of); the caller keeps `index < size`.
    pub fn coords_at(&self, mut index: u64) -> Vec<u64> {
        let mut coords = vec![0; self.orders.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = index % d;
            index /= d;
        }
        coords
    }

    pub fn element_at(&self, index: u64) -> GroupElement {
        GroupElement::from_vec(self.coords_at(index))
    }

    pub fn character_at(&self, index: u64) -> Character {
        Character::from_vec(self.coords_at(index))
    }

    /// All elements in canonical order. Fails for groups beyond `2^32` elements.
    pub fn elements(&self) -> Result<impl Iterator<Item = GroupElement> + '_> {
        let size = self.bounded_size(1 << 32)?;
        Ok((0..size).map(|i| self.element_at(i)))
    }

    /// Positions `i` with even `d_i`; these carry the two-torsion.
    pub fn even_factors(&self) -> Vec<usize> {
        self.orders.iter().enumerate().filter(|(_, &d)| d % 2 == 0).map(|(i, _)| i).collect()
    }

    pub fn two_torsion_order(&self) -> u128 {
        1u128.checked_shl(self.even_factors().len() as u32).unwrap_or(u128::MAX)
    }

    /// The subgroup `{z : 2z = 0}`, of order `2^(number of even d_i)`.
    pub fn two_torsion(&self) -> Subgroup {
        let gens = self
            .even_factors()
            .into_iter()
            .map(|i| {
                let mut c = vec![0; self.orders.len()];
                c[i] = self.orders[i] / 2;
                GroupElement::from_vec(c)
            })
            .collect();
        self.subgroup_generated_unchecked(gens)
    }

    /// Closure of `gens` under addition.
    pub fn subgroup_generated(&self, gens: Vec<GroupElement>) -> Result<Subgroup> {
        for g in &gens {
            self.check_shape(g.as_slice())?;
        }
        Ok(self.subgroup_generated_unchecked(gens))
    }

    fn subgroup_generated_unchecked(&self, gens: Vec<GroupElement>) -> Subgroup {
        let mut elements: BTreeSet<GroupElement> = BTreeSet::new();
        elements.insert(self.identity());
        for g in &gens {
            if elements.contains(g) {
                continue;
            }
            // multiples of g up to the first one already in the subgroup
            // are coset representatives
            let mut cycle = Vec::new();
            let mut m = g.clone();
            while !elements.contains(&m) {
                cycle.push(m.clone());
                m = self.add_unchecked(&m, g);
            }
            let mut grown = elements.clone();
            for h in &elements {
                for c in &cycle {
                    grown.insert(self.add_unchecked(h, c));
                }
            }
            elements = grown;
        }
        Subgroup { generators: gens, elements: elements.into_iter().collect() }
    }
}

/// A subgroup with its generators and full element list in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    /// Build from a known closed, sorted element list.
    pub(crate) fn from_parts(generators: Vec<GroupElement>, mut elements: Vec<GroupElement>) -> Self {
        elements.sort();
        elements.dedup();
        Self { generators, elements }
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    /// Same element set, generators ignored.
    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }

    pub fn is_closed(&self, group: &AbelianGroup) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&group.add_unchecked(a, b))))
    }
}
