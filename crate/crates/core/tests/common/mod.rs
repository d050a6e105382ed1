#![allow(dead_code)]

use std::collections::BTreeSet;

use nielsen_core::{LiftBranch, MultiMap, Rational};
use proptest::prelude::*;

pub fn r(p: i128, q: i128) -> Rational {
    Rational::frac(p, q)
}

/// Graph intersection points of `phi_{n,a}` and `phi_{m,b}`, found by solving
/// `(a x + u) / n = (b x + v) / m + k` for every branch pair and integer `k`.
pub fn power_pair_graph_oracle(
    n: i128,
    a: i128,
    m: i128,
    b: i128,
) -> Option<BTreeSet<(Rational, Rational)>> {
    let slope = r(a, n) - r(b, m);
    if slope.is_zero() {
        return None;
    }
    let reach = a.abs() + b.abs() + 2;
    let mut out = BTreeSet::new();
    for u in 0..n {
        for v in 0..m {
            for k in -reach..=reach {
                let x = (r(v, m) + Rational::from_int(k) - r(u, n)) / slope;
                if x >= Rational::ZERO && x < Rational::ONE {
                    let y =
                        (Rational::from_int(a) * x + Rational::from_int(u)) / Rational::from_int(n);
                    out.insert((x, y.fract()));
                }
            }
        }
    }
    Some(out)
}

pub fn power_pair_domain_oracle(n: i128, a: i128, m: i128, b: i128) -> Option<BTreeSet<Rational>> {
    power_pair_graph_oracle(n, a, m, b).map(|s| s.into_iter().map(|(x, _)| x).collect())
}

/// Membership of `v` in the lattice spanned by `e1`, `e2`, by Cramer's rule.
pub fn in_lattice(v: (i64, i64), e1: (i64, i64), e2: (i64, i64)) -> bool {
    let det = e1.0 * e2.1 - e1.1 * e2.0;
    assert_ne!(det, 0);
    let s = v.0 * e2.1 - v.1 * e2.0;
    let t = e1.0 * v.1 - e1.1 * v.0;
    s % det == 0 && t % det == 0
}

/// Lift vector of a graph intersection of two connected power maps: the difference of the
/// loop parameters and heights at which each loop passes through `(x, y)`.
pub fn power_loop_vector(n: i64, a: i64, m: i64, b: i64, x: Rational, y: Rational) -> (i64, i64) {
    let on_loop = |n: i64, a: i64| {
        (0..n)
            .map(|i| x + Rational::from(i))
            .find(|&s| (Rational::from(a) * s / Rational::from(n) - y).is_integer())
            .expect("point lies on the loop")
    };
    let (s, t) = (on_loop(n, a), on_loop(m, b));
    let du = s - t;
    let dv = Rational::from(a) * s / Rational::from(n) - Rational::from(b) * t / Rational::from(m);
    assert!(du.is_integer() && dv.is_integer());
    (du.numer() as i64, dv.numer() as i64)
}

/// `phi_{n,d}` plus bumps that vanish at the ends and stay below `1 / (2n)`,
/// shifted vertically by `shift`. Branch differences then stay strictly between
/// consecutive integers, so the result is valid and homotopic to `phi_{n,d}`.
pub fn perturbed_power_map(
    n: usize,
    d: i64,
    bumps: &[Vec<(i128, i128)>],
    shift: Rational,
) -> MultiMap {
    let scale = 2 * n as i128 * 64;
    let branches = (0..n)
        .map(|u| {
            let base = |t: Rational| {
                (Rational::from(d) * t + Rational::from(u)) / Rational::from(n) + shift
            };
            let mut ts: Vec<(Rational, Rational)> = bumps
                .get(u)
                .map(|b| {
                    b.iter()
                        .map(|&(t, amp)| (r(t, 101), r(amp, scale)))
                        .collect()
                })
                .unwrap_or_default();
            ts.sort();
            ts.dedup_by_key(|p| p.0);
            let mut points = vec![(Rational::ZERO, base(Rational::ZERO))];
            points.extend(ts.into_iter().map(|(t, amp)| (t, base(t) + amp)));
            points.push((Rational::ONE, base(Rational::ONE)));
            LiftBranch::new(points).expect("well-formed branch")
        })
        .collect();
    MultiMap::canonical(branches).expect("bumps below 1/(2n) keep branches disjoint")
}

/// Interior breakpoints `t = k / 101` with amplitudes strictly inside `(-1/(2n), 1/(2n))`.
pub fn arb_bumps(n: usize) -> impl Strategy<Value = Vec<Vec<(i128, i128)>>> {
    prop::collection::vec(prop::collection::vec((1i128..101, -63i128..64), 0..4), n)
}

pub fn arb_perturbed(n: usize, d: i64) -> impl Strategy<Value = MultiMap> {
    (arb_bumps(n), 0i128..97)
        .prop_map(move |(bumps, s)| perturbed_power_map(n, d, &bumps, r(s, 97)))
}
