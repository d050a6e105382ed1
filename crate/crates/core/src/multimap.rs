//! Piecewise-linear n-valued self-maps of the circle, stored as lifts.
//!
//! A [`MultiMap`] holds `n` continuous lifts `[0, 1] -> R`. The circle is
//! `R / Z`; a branch value `y` denotes the point `y mod 1`. Every `MultiMap`
//! is valid by construction: starts are in `[0, 1)` and strictly ascending,
//! no two branches ever differ by an integer, and the end values reduce to
//! the same set as the start values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A point of the circle, represented by its coordinate in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Rational", into = "Rational")]
pub struct UnitPoint(Rational);

impl UnitPoint {
    pub fn new(value: Rational) -> Result<Self> {
        if value < Rational::ZERO || value >= Rational::ONE {
            return Err(Error::InvalidParameter(format!("{value} is not in [0, 1)")));
        }
        Ok(UnitPoint(value))
    }

    /// Reduces any real coordinate mod 1.
    pub fn wrap(value: Rational) -> Self {
        UnitPoint(value.fract())
    }

    pub fn value(&self) -> Rational {
        self.0
    }
}

impl TryFrom<Rational> for UnitPoint {
    type Error = Error;
    fn try_from(value: Rational) -> Result<Self> {
        UnitPoint::new(value)
    }
}

impl From<UnitPoint> for Rational {
    fn from(p: UnitPoint) -> Rational {
        p.0
    }
}

impl fmt::Display for UnitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A continuous piecewise-linear function on `[0, 1]`, given by its
/// breakpoints. Collinear interior breakpoints are dropped on construction,
/// so two branches are equal as functions iff they are equal as values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LiftBranch {
    points: Vec<(Rational, Rational)>,
}

impl LiftBranch {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(
                "a branch needs at least two breakpoints".into(),
            ));
        }
        if points[0].0 != Rational::ZERO || points[points.len() - 1].0 != Rational::ONE {
            return Err(Error::InvalidParameter(
                "branch breakpoints must run from t = 0 to t = 1".into(),
            ));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidParameter(format!(
                "breakpoint t-coordinates not strictly increasing at t = {}",
                w[1].0
            )));
        }
        Ok(LiftBranch {
            points: simplify(points),
        })
    }

    /// The straight branch from `(0, start)` to `(1, end)`.
    pub fn line(start: Rational, end: Rational) -> Self {
        LiftBranch {
            points: vec![(Rational::ZERO, start), (Rational::ONE, end)],
        }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn ts(&self) -> impl Iterator<Item = Rational> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn start(&self) -> Rational {
        self.points[0].1
    }

    pub fn end(&self) -> Rational {
        self.points[self.points.len() - 1].1
    }

    pub fn displacement(&self) -> Rational {
        self.end() - self.start()
    }

    /// Value of the lift at `t`, for `t` in `[0, 1]`.
    pub fn eval(&self, t: Rational) -> Rational {
        let pts = &self.points;
        let idx = pts.partition_point(|p| p.0 <= t);
        if idx == 0 {
            return pts[0].1;
        }
        if idx >= pts.len() {
            return pts[pts.len() - 1].1;
        }
        let (t0, y0) = pts[idx - 1];
        let (t1, y1) = pts[idx];
        y0 + (y1 - y0) * (t - t0) / (t1 - t0)
    }

    pub fn shifted(&self, c: Rational) -> Self {
        LiftBranch {
            points: self.points.iter().map(|&(t, y)| (t, y + c)).collect(),
        }
    }

    pub fn scaled(&self, k: Rational) -> Self {
        LiftBranch::new(self.points.iter().map(|&(t, y)| (t, y * k)).collect())
            .expect("scaling keeps the t-partition")
    }

    /// Pointwise `(1 - s) * self + s * other`, exact on the merged partition.
    pub fn interpolate(&self, other: &LiftBranch, s: Rational) -> Self {
        let pts = merged_ts(self, other)
            .into_iter()
            .map(|t| (t, (Rational::ONE - s) * self.eval(t) + s * other.eval(t)))
            .collect();
        LiftBranch {
            points: simplify(pts),
        }
    }
}

pub(crate) fn simplify(points: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 {
            let (t0, y0) = out[out.len() - 2];
            let (t1, y1) = out[out.len() - 1];
            if (y1 - y0) * (p.0 - t1) == (p.1 - y1) * (t1 - t0) {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// Sorted union of the breakpoint t-coordinates of two branches.
pub fn merged_ts(a: &LiftBranch, b: &LiftBranch) -> Vec<Rational> {
    let mut ts: Vec<Rational> = a.ts().chain(b.ts()).collect();
    ts.sort();
    ts.dedup();
    ts
}

/// The first structural condition a candidate list of branches violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    CountMismatch {
        declared: usize,
        found: usize,
    },
    BranchShape {
        branch: usize,
        reason: String,
    },
    StartOutOfRange {
        branch: usize,
        start: Rational,
    },
    UnsortedStarts {
        branch: usize,
    },
    /// Branches `i` and `j` satisfy `lift_i(t) - lift_j(t) = offset`.
    Crossing {
        i: usize,
        j: usize,
        t: Rational,
        offset: i128,
    },
    /// Start and end values mod 1, each sorted.
    Closure {
        starts: Vec<Rational>,
        ends: Vec<Rational>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "no branches"),
            Violation::CountMismatch { declared, found } => {
                write!(f, "declared n = {declared} but found {found} branches")
            }
            Violation::BranchShape { branch, reason } => write!(f, "branch {branch}: {reason}"),
            Violation::StartOutOfRange { branch, start } => {
                write!(f, "branch {branch} starts at {start}, outside [0, 1)")
            }
            Violation::UnsortedStarts { branch } => {
                write!(
                    f,
                    "branch {branch} does not start strictly above branch {}",
                    branch - 1
                )
            }
            Violation::Crossing { i, j, t, offset } => write!(
                f,
                "branches {i} and {j} meet on the circle at t = {t} (lift difference {offset})"
            ),
            Violation::Closure { starts, ends } => {
                write!(
                    f,
                    "end values {ends:?} do not match start values {starts:?} mod 1"
                )
            }
        }
    }
}

/// First integer value attained by `a - b` on `[0, 1]`, with its witness `t`.
pub(crate) fn first_integer_difference(a: &LiftBranch, b: &LiftBranch) -> Option<(Rational, i128)> {
    let ts = merged_ts(a, b);
    let diffs: Vec<Rational> = ts.iter().map(|&t| a.eval(t) - b.eval(t)).collect();
    for s in 0..ts.len() - 1 {
        let (t0, t1) = (ts[s], ts[s + 1]);
        let (d0, d1) = (diffs[s], diffs[s + 1]);
        let k = d0.min(d1).ceil();
        if Rational::from_int(k) <= d0.max(d1) {
            let t = if d0 == d1 {
                t0
            } else {
                t0 + (Rational::from_int(k) - d0) * (t1 - t0) / (d1 - d0)
            };
            return Some((t, k));
        }
    }
    None
}

/// Checks every structural invariant of a multimap on raw branch data.
pub fn validate(branches: &[LiftBranch]) -> std::result::Result<(), Violation> {
    if branches.is_empty() {
        return Err(Violation::Empty);
    }
    for (j, b) in branches.iter().enumerate() {
        let s = b.start();
        if s < Rational::ZERO || s >= Rational::ONE {
            return Err(Violation::StartOutOfRange {
                branch: j,
                start: s,
            });
        }
        if j > 0 && branches[j - 1].start() >= s {
            return Err(Violation::UnsortedStarts { branch: j });
        }
    }
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            if let Some((t, offset)) = first_integer_difference(&branches[i], &branches[j]) {
                return Err(Violation::Crossing { i, j, t, offset });
            }
        }
    }
    let starts: Vec<Rational> = branches.iter().map(|b| b.start()).collect();
    let mut ends: Vec<Rational> = branches.iter().map(|b| b.end().fract()).collect();
    ends.sort();
    if starts != ends {
        return Err(Violation::Closure { starts, ends });
    }
    Ok(())
}

/// `n v + J` read off the first branch; fails when no start value matches
/// the first branch's end value mod 1.
pub fn lift_degree(branches: &[LiftBranch]) -> Result<i64> {
    let first = branches.first().ok_or(Violation::Empty)?;
    let end = first.end();
    for (j, b) in branches.iter().enumerate() {
        let v = end - b.start();
        if v.is_integer() {
            return Ok(branches.len() as i64 * v.numer() as i64 + j as i64);
        }
    }
    let starts = branches.iter().map(|b| b.start()).collect();
    let mut ends: Vec<Rational> = branches.iter().map(|b| b.end().fract()).collect();
    ends.sort();
    Err(Violation::Closure { starts, ends }.into())
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiMap {
    branches: Vec<LiftBranch>,
}

impl MultiMap {
    /// Accepts branches only if they already satisfy every invariant,
    /// including canonical order.
    pub fn new(branches: Vec<LiftBranch>) -> Result<Self> {
        validate(&branches)?;
        Ok(MultiMap { branches })
    }

    /// Shifts each branch by an integer so it starts in `[0, 1)`, sorts by
    /// start value, then validates.
    pub fn canonical(branches: Vec<LiftBranch>) -> Result<Self> {
        let mut branches: Vec<LiftBranch> = branches
            .into_iter()
            .map(|b| {
                let k = b.start().floor();
                b.shifted(-Rational::from_int(k))
            })
            .collect();
        branches.sort_by_key(LiftBranch::start);
        MultiMap::new(branches)
    }

    pub(crate) fn from_valid(branches: Vec<LiftBranch>) -> Self {
        debug_assert!(validate(&branches).is_ok());
        MultiMap { branches }
    }

    pub fn n(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[LiftBranch] {
        &self.branches
    }

    pub fn branch(&self, j: usize) -> &LiftBranch {
        &self.branches[j]
    }

    /// The `n` distinct image points of `x`, sorted.
    pub fn evaluate(&self, x: UnitPoint) -> Vec<UnitPoint> {
        let mut out: Vec<UnitPoint> = self
            .branches
            .iter()
            .map(|b| UnitPoint::wrap(b.eval(x.value())))
            .collect();
        out.sort();
        out
    }

    pub fn degree(&self) -> i64 {
        lift_degree(&self.branches).expect("valid multimap has a degree")
    }

    /// `sum_j (lift_j(1) - lift_j(0))`; equals the degree for valid maps.
    pub fn displacement_sum(&self) -> Rational {
        self.branches.iter().map(|b| b.displacement()).sum()
    }

    /// Index of the branch that continues branch `j` across `t = 1 ~ 0`,
    /// together with the integer jump `lift_j(1) - lift_next(0)`.
    pub fn successor(&self, j: usize) -> (usize, i128) {
        let end = self.branches[j].end();
        let target = end.fract();
        let next = self
            .branches
            .binary_search_by(|b| b.start().cmp(&target))
            .expect("closure invariant");
        (next, (end - self.branches[next].start()).numer())
    }

    pub fn translate_vertical(&self, c: Rational) -> MultiMap {
        MultiMap::canonical(self.branches.iter().map(|b| b.shifted(c)).collect())
            .expect("vertical translation preserves validity")
    }

    /// Whether the graph is invariant under vertical shifts by `1/w, ..., (w-1)/w`.
    pub fn block_invariant(&self, w: usize) -> Result<bool> {
        check_divisor(self.n(), w)?;
        Ok((1..w).all(|t| self.translate_vertical(Rational::frac(t as i128, w as i128)) == *self))
    }

    pub fn is_power_map(&self) -> bool {
        power_map(self.n(), self.degree()).is_ok_and(|p| p == *self)
    }
}

fn check_divisor(n: usize, w: usize) -> Result<()> {
    if w == 0 || !n.is_multiple_of(w) {
        return Err(Error::InvalidParameter(format!("{w} does not divide {n}")));
    }
    Ok(())
}

/// The n-valued power map of degree `d`: branches `(d/n) t + u/n`.
pub fn power_map(n: usize, d: i64) -> Result<MultiMap> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let n_i = n as i128;
    let branches = (0..n_i)
        .map(|u| LiftBranch::line(Rational::frac(u, n_i), Rational::frac(d as i128 + u, n_i)))
        .collect();
    Ok(MultiMap::from_valid(branches))
}

/// The branches of a power map that start in the bottom block `[0, 1/w)`,
/// read modulo `1/w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottomBlock {
    w: usize,
    branches: Vec<LiftBranch>,
}

impl BottomBlock {
    pub fn height(&self) -> Rational {
        Rational::frac(1, self.w as i128)
    }

    pub fn branches(&self) -> &[LiftBranch] {
        &self.branches
    }

    /// `f(x)` intersected with `[0, 1/w)`, sorted.
    pub fn evaluate(&self, x: UnitPoint) -> Vec<Rational> {
        let h = self.height();
        let mut out: Vec<Rational> = self
            .branches
            .iter()
            .map(|b| b.eval(x.value()).rem_euclid(h))
            .collect();
        out.sort();
        out
    }

    /// Rescales the block `[0, 1/w)` onto the whole circle.
    pub fn to_unit_multimap(&self) -> MultiMap {
        let k = Rational::from_int(self.w as i128);
        MultiMap::canonical(self.branches.iter().map(|b| b.scaled(k)).collect())
            .expect("rescaled bottom block is a valid multimap")
    }
}

pub fn restrict_bottom_block(m: &MultiMap, w: usize) -> Result<BottomBlock> {
    check_divisor(m.n(), w)?;
    if !m.is_power_map() {
        return Err(Error::InvalidParameter(
            "bottom-block restriction is defined for power maps only".into(),
        ));
    }
    let h = Rational::frac(1, w as i128);
    let branches = m
        .branches
        .iter()
        .filter(|b| b.start() < h)
        .cloned()
        .collect();
    Ok(BottomBlock { w, branches })
}
