//! JSON encodings of multimaps, loops and solver results.

use serde::{Deserialize, Serialize};

use crate::coincidence::{Count, DomainInterval, GraphArc, GraphCoincidences, GraphIntersection};
use crate::error::{Error, Result};
use crate::multimap::{LiftBranch, MultiMap, UnitPoint, Violation};
use crate::rational::Rational;
use crate::torus::TorusLoop;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchJson {
    pub points: Vec<[Rational; 2]>,
}

/// `{ "n": 2, "branches": [ { "points": [["0", "0"], ["1", "1/2"]] }, ... ] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiMapJson {
    pub n: usize,
    pub branches: Vec<BranchJson>,
}

impl From<&MultiMap> for MultiMapJson {
    fn from(m: &MultiMap) -> Self {
        MultiMapJson {
            n: m.n(),
            branches: m
                .branches()
                .iter()
                .map(|b| BranchJson {
                    points: b.points().iter().map(|&(t, y)| [t, y]).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<MultiMapJson> for MultiMap {
    type Error = Error;

    fn try_from(j: MultiMapJson) -> Result<MultiMap> {
        if j.n != j.branches.len() {
            return Err(Violation::CountMismatch {
                declared: j.n,
                found: j.branches.len(),
            }
            .into());
        }
        let branches = j
            .branches
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                LiftBranch::new(b.points.into_iter().map(|[t, y]| (t, y)).collect()).map_err(|e| {
                    let reason = match e {
                        Error::InvalidParameter(s) => s,
                        other => other.to_string(),
                    };
                    Error::from(Violation::BranchShape { branch: i, reason })
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MultiMap::new(branches)
    }
}

pub fn multimap_to_json(m: &MultiMap) -> String {
    serde_json::to_string_pretty(&MultiMapJson::from(m)).expect("serializable")
}

pub fn multimap_from_json(s: &str) -> Result<MultiMap> {
    let j: MultiMapJson = serde_json::from_str(s)?;
    MultiMap::try_from(j)
}

/// `{ "end": [n, a], "points": [["p/q", "p/q"], ...] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopJson {
    pub end: [i64; 2],
    pub points: Vec<[Rational; 2]>,
}

impl From<&TorusLoop> for LoopJson {
    fn from(l: &TorusLoop) -> Self {
        let (n, a) = l.class();
        LoopJson {
            end: [n, a],
            points: l.points().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<LoopJson> for TorusLoop {
    type Error = Error;

    fn try_from(j: LoopJson) -> Result<TorusLoop> {
        let l = TorusLoop::new(j.points.into_iter().map(|[u, v]| (u, v)).collect())?;
        if l.class() != (j.end[0], j.end[1]) {
            return Err(Error::InvalidLoop(format!(
                "declared class {:?} but path has class {:?}",
                j.end,
                l.class()
            )));
        }
        Ok(l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountsJson {
    pub domain: Count,
    pub graph: Count,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DomainPointJson {
    pub x: UnitPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PointsJson {
    Graph(Vec<GraphIntersection>),
    Domain(Vec<DomainPointJson>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum IntervalsJson {
    Graph(Vec<GraphArc>),
    Domain(Vec<DomainInterval>),
}

/// Solver output in either graph or domain form, with both counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport {
    pub points: PointsJson,
    pub intervals: IntervalsJson,
    pub counts: CountsJson,
    pub continuum: bool,
}

impl CoincidenceReport {
    pub fn graph(g: &GraphCoincidences) -> Self {
        let d = crate::coincidence::project_to_domain(g);
        CoincidenceReport {
            points: PointsJson::Graph(g.points.clone()),
            intervals: IntervalsJson::Graph(g.arcs.clone()),
            counts: CountsJson {
                domain: d.count(),
                graph: g.count(),
            },
            continuum: g.count().is_continuum(),
        }
    }

    pub fn domain(g: &GraphCoincidences) -> Self {
        let d = crate::coincidence::project_to_domain(g);
        CoincidenceReport {
            points: PointsJson::Domain(d.points.iter().map(|&x| DomainPointJson { x }).collect()),
            intervals: IntervalsJson::Domain(d.intervals.clone()),
            counts: CountsJson {
                domain: d.count(),
                graph: g.count(),
            },
            continuum: d.count().is_continuum(),
        }
    }
}
