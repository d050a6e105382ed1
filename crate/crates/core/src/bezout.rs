//! Constructive Bezout representatives.

use crate::error::{Error, Result};

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    extended_gcd(a, b).0
}

/// Returns `(c, d)` with `0 <= c < n`, `0 <= d < m` and
/// `g ≡ n d - m c (mod n m)`.
///
/// Takes `x n + y m = 1`, then `d = g x mod m` and `c = -g y mod n`, so that
/// `g = (n d - m c) + (k - l) n m` for the quotients `k`, `l`. Any coprime
/// pair with `n, m >= 1` is accepted.
pub fn bezout_rep(g: i64, n: i64, m: i64) -> Result<(i64, i64)> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidParameter(format!(
            "bezout_rep needs n, m >= 1 (got n = {n}, m = {m})"
        )));
    }
    let (one, x, y) = extended_gcd(n, m);
    if one != 1 {
        return Err(Error::Precondition(format!("GCD({n}, {m}) = {one}, not 1")));
    }
    let (g, x, y, n128, m128) = (g as i128, x as i128, y as i128, n as i128, m as i128);
    let d = (g * x).rem_euclid(m128);
    let c = (-g * y).rem_euclid(n128);
    Ok((c as i64, d as i64))
}
