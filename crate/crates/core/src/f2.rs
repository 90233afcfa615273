//! Linear algebra over `F_2` on vectors packed into a `u64` (dimension <= 64).

/// Row-reduced basis of a subspace of `F_2^n`.
///
/// Every row has a distinct pivot (its highest set bit) and no other row has
/// that bit set, so membership and orthogonal complements are direct.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct F2Basis {
    rows: Vec<u64>,
}

impl F2Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = u64>>(vectors: I) -> Self {
        let mut basis = Self::new();
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    fn reduce(&self, mut v: u64) -> u64 {
        for &row in &self.rows {
            let pivot = 63 - row.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pivot = 63 - r.leading_zeros();
        for row in &mut self.rows {
            if *row >> pivot & 1 == 1 {
                *row ^= r;
            }
        }
        self.rows.push(r);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Basis of `{z in F_2^n : z . d = 0 for all d in the span}`.
    pub fn orthogonal_complement(&self, n: u32) -> Vec<u64> {
        let pivots: u64 = self.rows.iter().map(|r| 1u64 << (63 - r.leading_zeros())).fold(0, |a, b| a | b);
        (0..n)
            .filter(|&f| pivots >> f & 1 == 0)
            .map(|f| {
                let mut z = 1u64 << f;
                for &row in &self.rows {
                    if row >> f & 1 == 1 {
                        z |= 1u64 << (63 - row.leading_zeros());
                    }
                }
                z
            })
            .collect()
    }

    /// All `2^rank` vectors of the span, unsorted.
    pub fn span(&self) -> Vec<u64> {
        let mut out = vec![0u64];
        for &row in &self.rows {
            let len = out.len();
            for i in 0..len {
                out.push(out[i] ^ row);
            }
        }
        out
    }
}

pub fn dot(a: u64, b: u64) -> u32 {
    (a & b).count_ones() & 1
}

pub fn rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    F2Basis::from_vectors(vectors).rank()
}
