//! In-place fast Walsh-Hadamard transform.

/// Replaces `data[w]` by `sum_x (-1)^(w.x) data[x]`. `data.len()` must be a power of two.
pub fn fwht(data: &mut [i64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "transform length must be a power of two");
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}
