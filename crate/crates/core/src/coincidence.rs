//! Exact domain coincidences and graph intersections of an (n,m)-valued pair.
//!
//! For each branch pair `(i, j)` and each segment of the merged breakpoint
//! partition, `lift_i - lift_j` is linear, so `y ∈ f(x) ∩ g(x)` reduces to
//! finitely many linear equations `lift_i(t) - lift_j(t) = k`, one per
//! integer `k` between the endpoint values of the difference.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bezout::gcd;
use crate::error::{Error, Result};
use crate::multimap::{
    merged_ts, power_map, restrict_bottom_block, LiftBranch, MultiMap, UnitPoint,
};
use crate::par::{map_ordered, Strategy};
use crate::rational::Rational;

/// A cardinality that may be infinite because solutions form arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Count {
    Finite(u64),
    Continuum,
}

impl Count {
    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(k) => Some(k),
            Count::Continuum => None,
        }
    }

    pub fn is_continuum(self) -> bool {
        self == Count::Continuum
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(k) => write!(f, "{k}"),
            Count::Continuum => write!(f, "continuum"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(k) => s.serialize_u64(*k),
            Count::Continuum => s.serialize_str("continuum"),
        }
    }
}

/// A point `(x, y)` with `y = lift_f(x) mod 1 = lift_g(x) mod 1`, recorded
/// with the branches that meet there and `offset = lift_f(x) - lift_g(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphIntersection {
    pub x: UnitPoint,
    pub y: UnitPoint,
    pub f_branch: usize,
    pub g_branch: usize,
    pub offset: i128,
}

/// Branches `f_branch` and `g_branch` agree (up to `offset`) on the whole of
/// `[x_start, x_end]`, `0 <= x_start < x_end <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcPiece {
    pub x_start: Rational,
    pub x_end: Rational,
    pub f_branch: usize,
    pub g_branch: usize,
    pub offset: i128,
}

/// A connected arc of common graph points, possibly wrapping across
/// `x = 1 ~ 0` several times; `closed` when it returns to its start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphArc {
    pub pieces: Vec<ArcPiece>,
    pub closed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphCoincidences {
    pub points: Vec<GraphIntersection>,
    pub arcs: Vec<GraphArc>,
}

impl GraphCoincidences {
    pub fn count(&self) -> Count {
        if self.arcs.is_empty() {
            Count::Finite(self.points.len() as u64)
        } else {
            Count::Continuum
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.arcs.is_empty()
    }
}

/// A closed arc of the domain circle. When `start > end` it wraps through
/// 0; `start = 0, end = 1` is the whole circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DomainInterval {
    pub start: Rational,
    pub end: Rational,
}

impl DomainInterval {
    pub fn is_full(&self) -> bool {
        self.start == Rational::ZERO && self.end == Rational::ONE
    }

    pub fn contains(&self, x: Rational) -> bool {
        if self.start <= self.end {
            (self.start <= x && x <= self.end) || (x == Rational::ZERO && self.end == Rational::ONE)
        } else {
            x >= self.start || x <= self.end
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DomainCoincidences {
    pub points: Vec<UnitPoint>,
    pub intervals: Vec<DomainInterval>,
}

impl DomainCoincidences {
    pub fn count(&self) -> Count {
        if self.intervals.is_empty() {
            Count::Finite(self.points.len() as u64)
        } else {
            Count::Continuum
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.intervals.is_empty()
    }
}

struct PairSolution {
    points: Vec<(Rational, i128)>,
    pieces: Vec<(Rational, Rational, i128)>,
}

fn solve_pair(fb: &LiftBranch, gb: &LiftBranch) -> PairSolution {
    let ts = merged_ts(fb, gb);
    let diffs: Vec<Rational> = ts.iter().map(|&t| fb.eval(t) - gb.eval(t)).collect();
    let mut points: Vec<(Rational, i128)> = Vec::new();
    let mut pieces: Vec<(Rational, Rational, i128)> = Vec::new();
    for s in 0..ts.len() - 1 {
        let (t0, t1) = (ts[s], ts[s + 1]);
        let (d0, d1) = (diffs[s], diffs[s + 1]);
        if d0 == d1 {
            if d0.is_integer() {
                let k = d0.numer();
                match pieces.last_mut() {
                    Some(last) if last.1 == t0 && last.2 == k => last.1 = t1,
                    _ => pieces.push((t0, t1, k)),
                }
            }
            continue;
        }
        let (lo, hi) = (d0.min(d1), d0.max(d1));
        for k in lo.ceil()..=hi.floor() {
            let t = t0 + (Rational::from_int(k) - d0) * (t1 - t0) / (d1 - d0);
            points.push((t, k));
        }
    }
    points.sort();
    points.dedup();
    points.retain(|&(t, k)| !pieces.iter().any(|&(a, b, pk)| pk == k && a <= t && t <= b));
    PairSolution { points, pieces }
}

/// Every point of `Γ(f) ∩ Γ(g)` on the torus, exactly. Isolated solutions are
/// returned as points; overlapping stretches of branches as arcs. Output is
/// sorted, independent of scheduling.
pub fn graph_intersections(f: &MultiMap, g: &MultiMap) -> GraphCoincidences {
    graph_intersections_with(f, g, Strategy::default())
}

pub fn graph_intersections_with(
    f: &MultiMap,
    g: &MultiMap,
    strategy: Strategy,
) -> GraphCoincidences {
    let pairs: Vec<(usize, usize)> = (0..f.n())
        .flat_map(|i| (0..g.n()).map(move |j| (i, j)))
        .collect();
    let solutions = map_ordered(&pairs, strategy, |&(i, j)| {
        solve_pair(f.branch(i), g.branch(j))
    });

    let mut points: Vec<GraphIntersection> = Vec::new();
    let mut pieces: Vec<ArcPiece> = Vec::new();
    for (&(i, j), sol) in pairs.iter().zip(solutions) {
        for (x, k) in sol.points {
            if x == Rational::ONE {
                // same torus point as x = 0 on the successor branches
                continue;
            }
            points.push(GraphIntersection {
                x: UnitPoint::wrap(x),
                y: UnitPoint::wrap(f.branch(i).eval(x)),
                f_branch: i,
                g_branch: j,
                offset: k,
            });
        }
        pieces.extend(sol.pieces.into_iter().map(|(a, b, k)| ArcPiece {
            x_start: a,
            x_end: b,
            f_branch: i,
            g_branch: j,
            offset: k,
        }));
    }

    let succ = |p: &ArcPiece| (f.successor(p.f_branch).0, g.successor(p.g_branch).0);
    let wrapping: BTreeSet<(usize, usize)> = pieces
        .iter()
        .filter(|p| p.x_end == Rational::ONE)
        .map(succ)
        .collect();
    points.retain(|p| {
        !(p.x.value() == Rational::ZERO && wrapping.contains(&(p.f_branch, p.g_branch)))
    });
    points.sort();

    GraphCoincidences {
        points,
        arcs: link_arcs(pieces, succ),
    }
}

fn link_arcs(
    mut pieces: Vec<ArcPiece>,
    succ: impl Fn(&ArcPiece) -> (usize, usize),
) -> Vec<GraphArc> {
    pieces.sort();
    let next: Vec<Option<usize>> = pieces
        .iter()
        .map(|p| {
            if p.x_end != Rational::ONE {
                return None;
            }
            let key = succ(p);
            pieces
                .iter()
                .position(|q| q.x_start == Rational::ZERO && (q.f_branch, q.g_branch) == key)
        })
        .collect();
    let mut has_pred = vec![false; pieces.len()];
    for &n in next.iter().flatten() {
        has_pred[n] = true;
    }
    let mut seen = vec![false; pieces.len()];
    let mut arcs = Vec::new();
    let walk = |start: usize, seen: &mut Vec<bool>| {
        let mut chain = Vec::new();
        let mut cur = Some(start);
        let mut closed = false;
        while let Some(c) = cur {
            if seen[c] {
                closed = c == start;
                break;
            }
            seen[c] = true;
            chain.push(pieces[c]);
            cur = next[c];
        }
        GraphArc {
            pieces: chain,
            closed,
        }
    };
    for s in 0..pieces.len() {
        if !has_pred[s] && !seen[s] {
            arcs.push(walk(s, &mut seen));
        }
    }
    for s in 0..pieces.len() {
        if !seen[s] {
            arcs.push(walk(s, &mut seen));
        }
    }
    arcs
}

/// Projection of the graph intersection set to the domain circle.
pub fn domain_coincidences(f: &MultiMap, g: &MultiMap) -> DomainCoincidences {
    project_to_domain(&graph_intersections(f, g))
}

pub fn project_to_domain(graph: &GraphCoincidences) -> DomainCoincidences {
    let mut spans: Vec<(Rational, Rational)> = graph
        .arcs
        .iter()
        .flat_map(|a| a.pieces.iter().map(|p| (p.x_start, p.x_end)))
        .collect();
    spans.sort();
    let mut merged: Vec<DomainInterval> = Vec::new();
    for (a, b) in spans {
        match merged.last_mut() {
            Some(last) if a <= last.end => last.end = last.end.max(b),
            _ => merged.push(DomainInterval { start: a, end: b }),
        }
    }
    if merged.len() >= 2
        && merged[0].start == Rational::ZERO
        && merged[merged.len() - 1].end == Rational::ONE
    {
        let first = merged.remove(0);
        let last = merged.last_mut().expect("at least one left");
        last.end = first.end;
    }
    merged.sort();

    let mut xs: Vec<UnitPoint> = graph
        .points
        .iter()
        .map(|p| p.x)
        .filter(|x| !merged.iter().any(|iv| iv.contains(x.value())))
        .collect();
    xs.sort();
    xs.dedup();
    DomainCoincidences {
        points: xs,
        intervals: merged,
    }
}

/// Closed-form counts for the power pair `(φ_{n,a}, φ_{m,b})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountPrediction {
    pub n: usize,
    pub a: i64,
    pub m: usize,
    pub b: i64,
    /// `|a m - b n|`
    pub k: u64,
    /// `GCD(n, m)`
    pub w: u64,
    pub domain_count: Count,
    pub graph_count: Count,
    /// `|a m - b n| / GCD(n, m)`, the older domain-count formula.
    pub bk_value: Count,
}

fn check_valences(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "valences must be positive (n = {n}, m = {m})"
        )));
    }
    Ok(())
}

pub(crate) fn cross(n: usize, a: i64, m: usize, b: i64) -> i64 {
    a * m as i64 - b * n as i64
}

pub fn predict_counts(n: usize, a: i64, m: usize, b: i64) -> Result<CountPrediction> {
    check_valences(n, m)?;
    let k = cross(n, a, m, b).unsigned_abs();
    let w = gcd(n as i64, m as i64) as u64;
    let (domain_count, graph_count) = if k == 0 {
        (Count::Continuum, Count::Continuum)
    } else {
        (Count::Finite(k / w), Count::Finite(k))
    };
    Ok(CountPrediction {
        n,
        a,
        m,
        b,
        k,
        w,
        domain_count,
        graph_count,
        bk_value: Count::Finite(k / w),
    })
}

/// `{0, w/k, 2w/k, ..., (k - w)/k}`, or `None` when `a m = b n`.
pub fn predicted_domain_points(
    n: usize,
    a: i64,
    m: usize,
    b: i64,
) -> Result<Option<Vec<UnitPoint>>> {
    let p = predict_counts(n, a, m, b)?;
    if p.k == 0 {
        return Ok(None);
    }
    let (k, w) = (p.k as i128, p.w as i128);
    Ok(Some(
        (0..k / w)
            .map(|j| UnitPoint::new(Rational::frac(j * w, k)).expect("below 1"))
            .collect(),
    ))
}

/// `(φ_{n,a}, φ_{m,b} + 1/(2nm))` for a slope-aligned pair `a m = b n`; the
/// translate has no domain coincidences with `φ_{n,a}`.
pub fn epsilon_separation(n: usize, a: i64, m: usize, b: i64) -> Result<(MultiMap, MultiMap)> {
    check_valences(n, m)?;
    if cross(n, a, m, b) != 0 {
        return Err(Error::Precondition(format!(
            "epsilon separation needs a m = b n (got {} vs {})",
            a * m as i64,
            b * n as i64
        )));
    }
    let eps = Rational::frac(1, 2 * n as i128 * m as i128);
    Ok((power_map(n, a)?, power_map(m, b)?.translate_vertical(eps)))
}

/// Domain coincidences of the bottom-block restrictions of `φ_{n,a}` and
/// `φ_{m,b}` with `w = GCD(n, m) > 1`.
pub fn bottom_block_coincidences(n: usize, a: i64, m: usize, b: i64) -> Result<DomainCoincidences> {
    check_valences(n, m)?;
    if cross(n, a, m, b) == 0 {
        return Err(Error::Precondition("bottom blocks need a m != b n".into()));
    }
    let w = gcd(n as i64, m as i64) as usize;
    if w == 1 {
        return Err(Error::Precondition(format!(
            "GCD({n}, {m}) = 1; no bottom block"
        )));
    }
    let fb = restrict_bottom_block(&power_map(n, a)?, w)?;
    let gb = restrict_bottom_block(&power_map(m, b)?, w)?;
    // rescaling the block [0, 1/w) to the unit circle is a bijection in y,
    // so the domain coincidence set is unchanged
    Ok(domain_coincidences(
        &fb.to_unit_multimap(),
        &gb.to_unit_multimap(),
    ))
}

/// Solver counts for one power pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub a: i64,
    pub m: usize,
    pub b: i64,
    pub graph: GraphCoincidences,
    pub domain: DomainCoincidences,
}

/// Runs the exact solver on every power pair `(φ_{n,a}, φ_{m,b})` listed.
pub fn power_pair_census(
    quads: &[(usize, i64, usize, i64)],
    strategy: Strategy,
) -> Result<Vec<CensusRow>> {
    let rows = map_ordered(quads, strategy, |&(n, a, m, b)| -> Result<CensusRow> {
        let f = power_map(n, a)?;
        let g = power_map(m, b)?;
        let graph = graph_intersections_with(&f, &g, Strategy::Sequential);
        let domain = project_to_domain(&graph);
        Ok(CensusRow {
            n,
            a,
            m,
            b,
            graph,
            domain,
        })
    });
    rows.into_iter().collect()
}
