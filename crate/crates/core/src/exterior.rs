//! Subset-basis bookkeeping for exterior algebras on up to 32 generators.
//!
//! A basis element of `Λ(g_0, …, g_{m-1})` is the wedge of a sorted subset
//! of generators, encoded as a bitmask. Signs are permutation parities of
//! the sorting merge.

/// Number of transpositions needed to move every generator of `b` past the
/// generators of `a` that exceed it, i.e. the inversion count of the
/// concatenation `a ++ b`. Returns `None` when the supports overlap.
pub(crate) fn wedge(a: u32, b: u32) -> Option<(i32, u32)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        // generators of `a` strictly above `bit`
        inversions += (a >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, a | b))
}

/// All masks over `m` generators with exactly `low` bits among the first
/// `n` and `high` bits among the rest, ascending.
pub(crate) fn masks_by_bidegree(n: u32, low: u32, high: u32) -> Vec<u32> {
    let total = 2 * n;
    let mut out = Vec::new();
    for mask in 0u32..(1 << total) {
        let low_bits = (mask & ((1 << n) - 1)).count_ones();
        let high_bits = (mask >> n).count_ones();
        if low_bits == low && high_bits == high {
            out.push(mask);
        }
    }
    out
}

/// Generator indices of a mask, ascending.
pub(crate) fn bits(mask: u32) -> impl Iterator<Item = u32> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let bit = rest.trailing_zeros();
            rest &= rest - 1;
            Some(bit)
        }
    })
}
