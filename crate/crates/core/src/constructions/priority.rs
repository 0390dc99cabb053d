//! Fixed enumerations behind requirement priorities.

use crate::error::{Error, Result};
use crate::pattern::{pair_count, Pattern};

/// Position of `p` among patterns of size at least 2, ordered by `(size, bitstring)`.
pub fn pattern_index(p: &Pattern) -> Result<u64> {
    if p.size() < 2 {
        return Err(Error::PatternTooSmall {
            needed: 2,
            actual: p.size(),
        });
    }
    if pair_count(p.size()) > 63 {
        return Err(Error::Guard(format!(
            "size {} is too large to index",
            p.size()
        )));
    }
    let below: u64 = (2..p.size()).map(|k| 1u64 << pair_count(k)).sum();
    Ok(below + p.code())
}

/// Inverse of [`pattern_index`].
pub fn index_pattern(mut index: u64) -> Pattern {
    let mut size = 2;
    loop {
        let block = 1u64 << pair_count(size);
        if index < block {
            return Pattern::from_code(size, index);
        }
        index -= block;
        size += 1;
    }
}

pub fn cantor_pair(a: u64, b: u64) -> u64 {
    (a + b) * (a + b + 1) / 2 + b
}

pub fn cantor_unpair(z: u64) -> (u64, u64) {
    // Largest w with w(w+1)/2 <= z.
    let mut w = (((8 * z + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let b = z - w * (w + 1) / 2;
    (w - b, b)
}

/// Number of elements that requirements of higher priority than `k` may
/// restrain: the sum of `|q⁻|` over every ordinal `k' < k`, where `q` is the
/// pattern component of `k'`.
pub fn h_bound(k: u64) -> u64 {
    (0..k)
        .map(|kp| index_pattern(cantor_unpair(kp).0).size() as u64 - 1)
        .sum()
}
