//! Graphs of circle multimaps as loops on the torus, Nielsen class indices
//! and the Nielsen number.

use serde::{Serialize, Serializer};

use crate::bezout::extended_gcd;
use crate::coincidence::{cross, graph_intersections, Count, GraphIntersection};
use crate::error::{Error, Result};
use crate::multimap::{simplify, LiftBranch, MultiMap};
use crate::rational::Rational;

/// Cycles of the branch succession `j -> successor(j)`, each listed in chain
/// order from its smallest branch index; cycles sorted by that index.
pub fn graph_components(f: &MultiMap) -> Vec<Vec<usize>> {
    let mut seen = vec![false; f.n()];
    let mut out = Vec::new();
    for start in 0..f.n() {
        if seen[start] {
            continue;
        }
        let mut chain = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            chain.push(j);
            j = f.successor(j).0;
        }
        out.push(chain);
    }
    out
}

/// Splits a disconnected graph into one multimap per component.
pub fn graph_split(f: &MultiMap) -> Result<Vec<MultiMap>> {
    let comps = graph_components(f);
    if comps.len() == 1 {
        return Err(Error::NothingToSplit);
    }
    comps
        .into_iter()
        .map(|c| {
            let mut idx = c;
            idx.sort();
            MultiMap::new(idx.into_iter().map(|j| f.branch(j).clone()).collect())
        })
        .collect()
}

/// Where each branch sits on the loop lift of its component.
#[derive(Clone, Debug)]
struct ChainLayout {
    component: Vec<usize>,
    position: Vec<i64>,
    shift: Vec<i128>,
    classes: Vec<(i64, i64)>,
    chains: Vec<Vec<usize>>,
}

impl ChainLayout {
    fn new(f: &MultiMap) -> Self {
        let chains = graph_components(f);
        let n = f.n();
        let mut component = vec![0; n];
        let mut position = vec![0; n];
        let mut shift = vec![0i128; n];
        let mut classes = Vec::with_capacity(chains.len());
        for (c, chain) in chains.iter().enumerate() {
            let mut s = 0i128;
            for (pos, &j) in chain.iter().enumerate() {
                component[j] = c;
                position[j] = pos as i64;
                shift[j] = s;
                s += f.successor(j).1;
            }
            let rise: Rational = chain.iter().map(|&j| f.branch(j).displacement()).sum();
            debug_assert!(rise.is_integer());
            classes.push((chain.len() as i64, rise.numer() as i64));
        }
        ChainLayout {
            component,
            position,
            shift,
            classes,
            chains,
        }
    }
}

/// A PL path in the plane with strictly increasing first coordinate, from
/// `(0, v0)` with `v0` in `[0, 1)` to `(n, v0 + a)`; it covers a loop on the
/// torus of homology class `(n, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusLoop {
    points: Vec<(Rational, Rational)>,
}

impl TorusLoop {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidLoop(msg.to_string()));
        if points.len() < 2 {
            return bad("a loop needs at least two points");
        }
        let (u0, v0) = points[0];
        if u0 != Rational::ZERO {
            return bad("a loop must start at u = 0");
        }
        if v0 < Rational::ZERO || v0 >= Rational::ONE {
            return bad("a loop must start at height in [0, 1)");
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return bad("first coordinate must be strictly increasing");
        }
        let (u1, v1) = points[points.len() - 1];
        if !u1.is_integer() || !(v1 - v0).is_integer() {
            return bad("the end point must differ from the start by an integer vector");
        }
        Ok(TorusLoop {
            points: simplify(points),
        })
    }

    /// The straight path from `(0, 0)` to `(n, a)`.
    pub fn straight(n: i64, a: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter(format!(
                "loop class needs n >= 1, got {n}"
            )));
        }
        TorusLoop::new(vec![
            (Rational::ZERO, Rational::ZERO),
            (Rational::from(n), Rational::from(a)),
        ])
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Homology class `(n, a)`: end point minus start point.
    pub fn class(&self) -> (i64, i64) {
        let (u0, v0) = self.points[0];
        let (u1, v1) = self.points[self.points.len() - 1];
        ((u1 - u0).numer() as i64, (v1 - v0).numer() as i64)
    }

    pub fn eval(&self, u: Rational) -> Rational {
        let pts = &self.points;
        let idx = pts.partition_point(|p| p.0 <= u).clamp(1, pts.len() - 1);
        let (u0, v0) = pts[idx - 1];
        let (u1, v1) = pts[idx];
        v0 + (v1 - v0) * (u - u0) / (u1 - u0)
    }

    /// Whether `(x, y)` (read mod 1) lies on the image of the loop.
    pub fn contains_mod1(&self, x: Rational, y: Rational) -> bool {
        let (x, y) = (x.fract(), y.fract());
        let n = self.class().0;
        (0..n).any(|j| (self.eval(x + Rational::from(j)) - y).is_integer())
    }

    /// Cuts the path at integer `u` and reads each unit piece as a branch.
    pub fn to_multimap(&self) -> Result<MultiMap> {
        let n = self.class().0;
        let mut branches = Vec::with_capacity(n as usize);
        for j in 0..n {
            let (lo, hi) = (Rational::from(j), Rational::from(j + 1));
            let mut piece = vec![(Rational::ZERO, self.eval(lo))];
            piece.extend(
                self.points
                    .iter()
                    .filter(|p| p.0 > lo && p.0 < hi)
                    .map(|&(u, v)| (u - lo, v)),
            );
            piece.push((Rational::ONE, self.eval(hi)));
            branches.push(LiftBranch::new(piece)?);
        }
        MultiMap::canonical(branches)
    }
}

/// Concatenates the branch lifts of a connected graph in succession order,
/// starting from branch 0.
pub fn loop_from_multimap(f: &MultiMap) -> Result<TorusLoop> {
    let layout = ChainLayout::new(f);
    if layout.chains.len() != 1 {
        return Err(Error::Disconnected(layout.chains));
    }
    let mut points = Vec::new();
    for (pos, &j) in layout.chains[0].iter().enumerate() {
        let du = Rational::from(pos);
        let dv = Rational::from_int(layout.shift[j]);
        let skip = usize::from(pos > 0);
        points.extend(
            f.branch(j)
                .points()
                .iter()
                .skip(skip)
                .map(|&(t, y)| (t + du, y + dv)),
        );
    }
    TorusLoop::new(points)
}

/// Number of intersection points of the images of two loops on the torus.
pub fn loop_intersection_count(l1: &TorusLoop, l2: &TorusLoop) -> Result<Count> {
    Ok(graph_intersections(&l1.to_multimap()?, &l2.to_multimap()?).count())
}

/// Hermite form `{(d1, e), (0, d2)}` of the lattice spanned by two vectors,
/// used to pick canonical coset representatives of `Z^2 / L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetLattice {
    d1: i64,
    e: i64,
    d2: i64,
    det: i64,
}

impl CosetLattice {
    pub fn new(v1: (i64, i64), v2: (i64, i64)) -> Result<Self> {
        let det = v1.0 * v2.1 - v1.1 * v2.0;
        if det == 0 {
            return Err(Error::DegenerateLattice(v1.0, v1.1, v2.0, v2.1));
        }
        let (d1, x, y) = extended_gcd(v1.0, v2.0);
        // (v2.0 / d1) v1 - (v1.0 / d1) v2 = (0, -det / d1)
        let d2 = (det / d1).abs();
        let e = (x * v1.1 + y * v2.1).rem_euclid(d2);
        Ok(CosetLattice { d1, e, d2, det })
    }

    /// Signed determinant of the spanning vectors.
    pub fn det(&self) -> i64 {
        self.det
    }

    /// Index of the lattice in `Z^2`.
    pub fn order(&self) -> u64 {
        self.det.unsigned_abs()
    }

    /// Canonical representative: `0 <= p < d1`, `0 <= q < d2`.
    pub fn reduce(&self, v: (i64, i64)) -> (i64, i64) {
        let t = v.0.div_euclid(self.d1);
        let p = v.0 - t * self.d1;
        let q = (v.1 - t * self.e).rem_euclid(self.d2);
        (p, q)
    }

    pub fn representatives(&self) -> Vec<(i64, i64)> {
        (0..self.d1)
            .flat_map(|p| (0..self.d2).map(move |q| (p, q)))
            .collect()
    }
}

/// Label of a graph intersection class: the components of `f` and `g`
/// whose loops meet there, and a coset of `Z^2` modulo the lattice spanned by
/// the two component classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassIndex {
    pub f_component: usize,
    pub g_component: usize,
    pub rep: (i64, i64),
    pub det: i64,
}

impl Serialize for ClassIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ClassIndex", 3)?;
        st.serialize_field("rep", &[self.rep.0, self.rep.1])?;
        st.serialize_field("det", &self.det)?;
        st.serialize_field("components", &[self.f_component, self.g_component])?;
        st.end()
    }
}

/// Precomputed loop layouts for indexing many intersections of one pair.
pub struct ClassIndexer {
    f: ChainLayout,
    g: ChainLayout,
    lattices: Vec<Vec<Result<CosetLattice>>>,
}

impl ClassIndexer {
    pub fn new(f: &MultiMap, g: &MultiMap) -> Self {
        let f = ChainLayout::new(f);
        let g = ChainLayout::new(g);
        let lattices = f
            .classes
            .iter()
            .map(|&cf| {
                g.classes
                    .iter()
                    .map(|&cg| CosetLattice::new(cf, cg))
                    .collect()
            })
            .collect();
        ClassIndexer { f, g, lattices }
    }

    pub fn index(&self, p: &GraphIntersection) -> Result<ClassIndex> {
        let (i, j) = (p.f_branch, p.g_branch);
        let (cf, cg) = (self.f.component[i], self.g.component[j]);
        let lattice = self.lattices[cf][cg].clone()?;
        // lifted point on the f-loop minus lifted point on the g-loop
        let dv = p.offset + self.f.shift[i] - self.g.shift[j];
        let v = (self.f.position[i] - self.g.position[j], dv as i64);
        Ok(ClassIndex {
            f_component: cf,
            g_component: cg,
            rep: lattice.reduce(v),
            det: lattice.det(),
        })
    }
}

pub fn class_index(p: &GraphIntersection, f: &MultiMap, g: &MultiMap) -> Result<ClassIndex> {
    ClassIndexer::new(f, g).index(p)
}

/// Common local intersection sign of the straight loops of classes `(n, a)`
/// and `(m, b)`: `sign(n b - a m)`.
pub fn intersection_sign(n: i64, a: i64, m: i64, b: i64) -> i32 {
    (n * b - a * m).signum() as i32
}

/// `N(f:g) = |a m - b n|` for an n-valued map of degree `a` and an m-valued
/// map of degree `b`.
pub fn nielsen_number(n: usize, a: i64, m: usize, b: i64) -> Result<u64> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "valences must be positive (n = {n}, m = {m})"
        )));
    }
    Ok(cross(n, a, m, b).unsigned_abs())
}
