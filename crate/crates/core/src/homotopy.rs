//! Straight-line homotopies between multimaps of equal degree, and count sweeps along them.

use serde::Serialize;

use crate::coincidence::{graph_intersections, project_to_domain, Count};
use crate::error::{Error, Result};
use crate::io::multimap_from_json;
use crate::multimap::{LiftBranch, MultiMap};
use crate::par::{map_ordered, Strategy};
use crate::rational::Rational;
use crate::torus::nielsen_number;

/// `H_tau = (1 - tau) F + tau M`, where `M` is a branch-wise matching of the target lifts.
///
/// The constructor certifies that every slice is a valid multimap, so `slice` never fails for
/// `tau` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearHomotopy {
    source: MultiMap,
    target: MultiMap,
    matched: Vec<LiftBranch>,
}

impl LinearHomotopy {
    pub fn source(&self) -> &MultiMap {
        &self.source
    }

    pub fn target(&self) -> &MultiMap {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn degree(&self) -> i64 {
        self.source.degree()
    }

    pub fn slice(&self, tau: Rational) -> Result<MultiMap> {
        if tau < Rational::ZERO || tau > Rational::ONE {
            return Err(Error::InvalidParameter(format!(
                "homotopy time {tau} outside [0, 1]"
            )));
        }
        let branches = self
            .source
            .branches()
            .iter()
            .zip(&self.matched)
            .map(|(f, m)| f.interpolate(m, tau))
            .collect();
        MultiMap::canonical(branches)
    }
}

// Lifts of target branch (j + r) mod n, shifted so the pairing is continuous across the wrap.
fn rotated(target: &MultiMap, r: i64) -> Vec<LiftBranch> {
    let n = target.n() as i64;
    (0..n)
        .map(|j| {
            let k = j + r;
            target
                .branch(k.rem_euclid(n) as usize)
                .shifted(Rational::from(k.div_euclid(n)))
        })
        .collect()
}

fn successions_agree(source: &MultiMap, matched: &[LiftBranch]) -> bool {
    (0..source.n()).all(|j| {
        let (s, jump) = source.successor(j);
        matched[j].end() - matched[s].start() == Rational::from_int(jump)
    })
}

// Where on the segment from u (param 0) to v (param 1) the value k is hit.
fn hit(u: Rational, v: Rational, k: Rational) -> Option<Rational> {
    if (u <= k && k <= v) || (v <= k && k <= u) {
        Some(if u == v {
            Rational::ZERO
        } else {
            (k - u) / (v - u)
        })
    } else {
        None
    }
}

// The difference of two interpolated branches is bilinear on each cell of the merged partition,
// so its range over the cell is the hull of the four corner values.
fn first_collision(
    f: &[LiftBranch],
    m: &[LiftBranch],
    i: usize,
    j: usize,
) -> Option<(Rational, Rational)> {
    let mut ts: Vec<Rational> = [&f[i], &f[j], &m[i], &m[j]]
        .iter()
        .flat_map(|b| b.ts())
        .collect();
    ts.sort();
    ts.dedup();
    let a = |t: Rational| f[i].eval(t) - f[j].eval(t);
    let b = |t: Rational| m[i].eval(t) - m[j].eval(t);
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let corners = [a(t0), a(t1), b(t0), b(t1)];
        let lo = corners.iter().copied().fold(corners[0], Rational::min);
        let hi = corners.iter().copied().fold(corners[0], Rational::max);
        if lo.ceil() > hi.floor() {
            continue;
        }
        let k = Rational::from_int(lo.ceil());
        let lerp = |s: Rational| t0 + (t1 - t0) * s;
        let edges = [
            (Rational::ZERO, corners[0], corners[1], true),
            (Rational::ONE, corners[2], corners[3], true),
            (t0, corners[0], corners[2], false),
            (t1, corners[1], corners[3], false),
        ];
        for (fixed, u, v, along_t) in edges {
            if let Some(s) = hit(u, v, k) {
                return Some(if along_t {
                    (fixed, lerp(s))
                } else {
                    (s, fixed)
                });
            }
        }
        unreachable!("an integer in the corner hull lies on the boundary");
    }
    None
}

fn collision(
    source: &MultiMap,
    matched: &[LiftBranch],
) -> Option<(usize, usize, Rational, Rational)> {
    let n = source.n();
    let f = source.branches();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find_map(|(i, j)| first_collision(f, matched, i, j).map(|(tau, t)| (i, j, tau, t)))
}

/// Builds the straight-line homotopy from `f0` to `f1`, trying every rotation of the target
/// branches whose wrap structure agrees with the source.
pub fn make_linear_homotopy(f0: &MultiMap, f1: &MultiMap) -> Result<LinearHomotopy> {
    if f0.n() != f1.n() {
        return Err(Error::NotHomotopic(format!(
            "{}-valued vs {}-valued",
            f0.n(),
            f1.n()
        )));
    }
    if f0.degree() != f1.degree() {
        return Err(Error::NotHomotopic(format!(
            "degree {} vs degree {}",
            f0.degree(),
            f1.degree()
        )));
    }
    let n = f0.n() as i64;
    let mut witness = None;
    for r in 0..n {
        let matched = rotated(f1, r);
        if !successions_agree(f0, &matched) {
            continue;
        }
        match collision(f0, &matched) {
            None => {
                return Ok(LinearHomotopy {
                    source: f0.clone(),
                    target: f1.clone(),
                    matched,
                })
            }
            Some(w) => {
                witness.get_or_insert(w);
            }
        }
    }
    match witness {
        Some((i, j, time, t)) => Err(Error::MatchingFailure { i, j, time, t }),
        None => Err(Error::NotHomotopic(
            "no rotation of the target branches matches the wrap structure".into(),
        )),
    }
}

/// Whether `f` and `g` are joined by a valid straight-line homotopy.
pub fn homotopic(f: &MultiMap, g: &MultiMap) -> bool {
    make_linear_homotopy(f, g).is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub t: Rational,
    pub domain: Count,
    pub graph: Count,
}

pub fn sweep_counts(
    hf: &LinearHomotopy,
    hg: &LinearHomotopy,
    times: &[Rational],
) -> Result<Vec<SweepRow>> {
    sweep_counts_with(hf, hg, times, Strategy::default())
}

/// Coincidence counts at each time; fails if a graph count drops below the Nielsen number.
pub fn sweep_counts_with(
    hf: &LinearHomotopy,
    hg: &LinearHomotopy,
    times: &[Rational],
    strategy: Strategy,
) -> Result<Vec<SweepRow>> {
    let nielsen = nielsen_number(hf.n(), hf.degree(), hg.n(), hg.degree())?;
    let rows = map_ordered(times, strategy, |&t| -> Result<SweepRow> {
        let g = graph_intersections(&hf.slice(t)?, &hg.slice(t)?);
        Ok(SweepRow {
            t,
            domain: project_to_domain(&g).count(),
            graph: g.count(),
        })
    });
    rows.into_iter()
        .map(|row| {
            let row = row?;
            match row.graph {
                Count::Finite(c) if c < nielsen => Err(Error::LowerBoundViolated {
                    time: row.t,
                    observed: c,
                    nielsen,
                }),
                _ => Ok(row),
            }
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("t,domain_count,graph_count\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.t, r.domain, r.graph));
    }
    out
}

/// Pairs whose domain coincidence count falls below the Nielsen number of the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexamplePairs {
    /// The power map `phi_{2,1}`.
    pub f: MultiMap,
    /// Degree -1, three domain coincidences, five graph intersections with `f`.
    pub g_three: MultiMap,
    /// Degree -1, four domain coincidences, five graph intersections with `f`.
    pub g_four: MultiMap,
}

pub fn counterexample_pairs() -> CounterexamplePairs {
    let load = |s: &str| multimap_from_json(s).expect("stored counterexample is valid");
    CounterexamplePairs {
        f: load(include_str!("../../../data/counterexample/f.json")),
        g_three: load(include_str!("../../../data/counterexample/g_three.json")),
        g_four: load(include_str!("../../../data/counterexample/g_four.json")),
    }
}

/// Adds `amp * sin`-like tent bumps to every branch, vanishing at the ends, so the result stays
/// homotopic to `f`. Valid whenever `|amp| < 1 / (2n)`.
pub fn wiggle(f: &MultiMap, amps: &[Rational]) -> Result<MultiMap> {
    if amps.len() != f.n() {
        return Err(Error::InvalidParameter(format!(
            "{} amplitudes for {} branches",
            amps.len(),
            f.n()
        )));
    }
    let half = Rational::frac(1, 2 * f.n() as i128);
    if let Some(a) = amps.iter().find(|a| a.abs() >= half) {
        return Err(Error::InvalidParameter(format!(
            "amplitude {a} must be below {half}"
        )));
    }
    let branches = f
        .branches()
        .iter()
        .zip(amps)
        .map(|(b, &amp)| {
            let mut ts: Vec<Rational> = b.ts().collect();
            ts.push(Rational::frac(1, 2));
            ts.sort();
            ts.dedup();
            let bump =
                |t: Rational| amp * (Rational::ONE - (Rational::from(2) * t - Rational::ONE).abs());
            LiftBranch::new(ts.into_iter().map(|t| (t, b.eval(t) + bump(t))).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    MultiMap::canonical(branches)
}
