use num_bigint::BigUint;
use num_traits::{One, Zero};

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of full binary trees with `n + 1` leaves.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Trees with `n` internal nodes and `k` leaves that are left children.
pub fn narayana(n: u64, k: u64) -> BigUint {
    match (n, k) {
        (0, 0) => BigUint::one(),
        (_, 0) => BigUint::zero(),
        _ if k > n => BigUint::zero(),
        _ => binomial(n, k) * binomial(n, k - 1) / n,
    }
}

/// `[N(n, 1), .., N(n, n)]`.
pub fn narayana_row(n: u64) -> Vec<BigUint> {
    (1..=n).map(|k| narayana(n, k)).collect()
}

/// Smallest base `b` with `C_{b-1} > (p-1)^2`.
pub fn b_max(p: &BigUint) -> u64 {
    let order = {
        let pm1 = p - 1u32;
        &pm1 * &pm1
    };
    let mut b = 1u64;
    let mut c = BigUint::one();
    while c <= order {
        // C_{n+1} = C_n * 2(2n+1) / (n+2) with n = b - 1
        let n = b - 1;
        c = c * (2 * (2 * n + 1)) / (n + 2);
        b += 1;
    }
    b.max(2)
}
