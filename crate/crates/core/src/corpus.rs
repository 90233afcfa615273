//! Test graphs: a fixed set of small named examples plus seeded random
//! abelian Cayley graphs and cubelike connection sets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubelike::{build_cubelike, CubelikeSpec};
use crate::error::Result;
use crate::group::{AbelianGroup, GroupElement};
use crate::hetero::{build_heterocyclic, HeteroSpec};
use crate::spectral::{validate_connection_set, CayleyGraph};

pub const DEFAULT_SEED: u64 = 0x5eed_c05e;

/// Upper bound on the order of random groups.
pub const RANDOM_ORDER_LIMIT: u64 = 200;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: CayleyGraph,
}

fn cyclic(order: u64, set: &[u64]) -> Result<CayleyGraph> {
    let g = AbelianGroup::new(vec![order])?;
    let s = set.iter().map(|&x| g.element(vec![x])).collect::<Result<Vec<_>>>()?;
    validate_connection_set(&g, s)
}

/// `K_2`, `C_4`, `Cay(Z_8, {1, 7})`, the heterocyclic graph for `{3, 4}` and
/// the single-block cubelike graph of dimension 5.
pub fn fixed_corpus() -> Result<Vec<CorpusEntry>> {
    let entry = |name: &str, graph| CorpusEntry { name: name.to_string(), graph };
    Ok(vec![
        entry("K2", cyclic(2, &[1])?),
        entry("C4", cyclic(4, &[1, 3])?),
        entry("Z8 {1,7}", cyclic(8, &[1, 7])?),
        entry("hetero {3,4}", build_heterocyclic(&HeteroSpec::new(vec![3, 4])?)?),
        entry("cubelike [5]", build_cubelike(&CubelikeSpec::new(vec![5])?)?.cayley_graph()?),
    ])
}

/// Random group with one to three cyclic factors of orders 2..=16 and total
/// order at most [`RANDOM_ORDER_LIMIT`], with a random inverse-closed
/// connection set.
pub fn random_abelian_graph(rng: &mut impl Rng) -> Result<CayleyGraph> {
    let orders = loop {
        let k = rng.gen_range(1..=3);
        let orders: Vec<u64> = (0..k).map(|_| rng.gen_range(2..=16)).collect();
        if orders.iter().product::<u64>() <= RANDOM_ORDER_LIMIT {
            break orders;
        }
    };
    let group = AbelianGroup::new(orders)?;
    let density: f64 = rng.gen_range(0.1..0.6);
    let mut chosen: Vec<GroupElement> = Vec::new();
    let elements: Vec<GroupElement> = group.elements()?.skip(1).collect();
    for x in &elements {
        let inv = group.neg(x)?;
        // visit each inverse pair once, from its smaller member
        if inv < *x {
            continue;
        }
        if rng.gen_bool(density) {
            if inv != *x {
                chosen.push(inv);
            }
            chosen.push(x.clone());
        }
    }
    if chosen.is_empty() {
        let x = elements.choose(rng).expect("group has a non-identity element").clone();
        let inv = group.neg(&x)?;
        if inv != x {
            chosen.push(inv);
        }
        chosen.push(x);
    }
    validate_connection_set(&group, chosen)
}

pub fn random_corpus(seed: u64, count: usize) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let graph = random_abelian_graph(&mut rng)?;
            Ok(CorpusEntry { name: format!("random #{i} {:?}", graph.group().orders()), graph })
        })
        .collect()
}

/// Random nonempty subset of the nonzero vectors of `F_2^n`, as bitmasks.
pub fn random_cubelike_set(rng: &mut impl Rng, n: u32) -> Vec<u64> {
    let density: f64 = rng.gen_range(0.05..0.7);
    let mut set: Vec<u64> = (1..1u64 << n).filter(|_| rng.gen_bool(density)).collect();
    if set.is_empty() {
        set.push(rng.gen_range(1..1u64 << n));
    }
    set
}
