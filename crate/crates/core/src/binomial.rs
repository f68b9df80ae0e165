use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row `i` of Pascal's triangle, `C(i, 0..=i)`.
pub(crate) fn big_row(i: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for r in 0..i {
        let mut next = Vec::with_capacity(r + 2);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

/// `C(n, k)` over the integers, zero outside `0 <= k <= n`.
pub(crate) fn big(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}
