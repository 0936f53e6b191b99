//! Closed-form answers stated for the exterior and symmetric powers, used as
//! the "predicted" column of scans and as acceptance targets.

/// Good filtration on `Λ^k(W)`: `n = 1` and `k = ps + r` with `m ≤ r < p`.
pub fn exterior_good(m: usize, n: usize, p: u64, k: usize) -> bool {
    n == 1 && k >= m && (k as u64 % p) >= m as u64
}

/// Weyl filtration on `Λ^k(W)`: stated with the same condition as the good one.
pub fn exterior_weyl(m: usize, n: usize, p: u64, k: usize) -> bool {
    exterior_good(m, n, p, k)
}

/// Good and Weyl filtrations on `S^k(W)`: `m = 1` and `n ≤ k < p`.
pub fn symmetric(m: usize, n: usize, p: u64, k: usize) -> bool {
    m == 1 && n <= k && (k as u64) < p
}
