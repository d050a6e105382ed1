//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{arb_perturbed, r};
use nielsen_core::bezout::{bezout_rep, gcd};
use nielsen_core::coincidence::{
    epsilon_separation, predict_counts, predicted_domain_points, project_to_domain,
};
use nielsen_core::homotopy::counterexample_pairs;
use nielsen_core::torus::{
    graph_components, loop_from_multimap, loop_intersection_count, ClassIndexer, CosetLattice,
};
use nielsen_core::{
    domain_coincidences, graph_intersections, graph_split, make_linear_homotopy, nielsen_number,
    power_map, Count, MultiMap, Rational, TorusLoop, UnitPoint,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

/// Whole-suite wall clock budget.
const SUITE_BUDGET: Duration = Duration::from_secs(60);
/// Budget for the coincidence-set sweep of criterion 2.
const FORMULA_BUDGET: Duration = Duration::from_secs(20);
/// Randomized slices drawn for criterion 10.
const HOMOTOPY_SAMPLES: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn power_pair(n: usize, a: i64, m: usize, b: i64) -> (MultiMap, MultiMap) {
    (power_map(n, a).unwrap(), power_map(m, b).unwrap())
}

fn criterion_1() -> Outcome {
    let mut cases = 0;
    for n in 1..=8 {
        for d in -8..=8 {
            let deg = power_map(n, d).map_err(|e| e.to_string())?.degree();
            check(deg == d, || format!("degree(phi_{{{n},{d}}}) = {deg}"))?;
            cases += 1;
        }
    }
    check(cases == 136, || format!("{cases} cases"))?;
    Ok(format!("{cases} power maps, exact degree"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=6usize {
        for m in 1..=6usize {
            for a in -6..=6i64 {
                for b in -6..=6i64 {
                    if a * m as i64 == b * n as i64 {
                        continue;
                    }
                    let (f, g) = power_pair(n, a, m, b);
                    let gi = graph_intersections(&f, &g);
                    let d = project_to_domain(&gi);
                    let p = predict_counts(n, a, m, b).unwrap();
                    let expected: BTreeSet<Rational> = (0..p.k / p.w)
                        .map(|j| Rational::frac(j as i128 * p.w as i128, p.k as i128))
                        .collect();
                    let got: BTreeSet<Rational> = d.points.iter().map(UnitPoint::value).collect();
                    check(got == expected && d.intervals.is_empty(), || {
                        format!("({n},{a},{m},{b}): domain set {got:?} != {expected:?}")
                    })?;
                    check(d.count() == Count::Finite(p.k / p.w), || {
                        format!("({n},{a},{m},{b}) domain count")
                    })?;
                    check(gi.count() == Count::Finite(p.k), || {
                        format!("({n},{a},{m},{b}) graph count")
                    })?;
                    check(
                        predicted_domain_points(n, a, m, b)
                            .unwrap()
                            .unwrap()
                            .iter()
                            .map(UnitPoint::value)
                            .collect::<BTreeSet<_>>()
                            == expected,
                        || format!("({n},{a},{m},{b}) closed form"),
                    )?;
                    cases += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < FORMULA_BUDGET, || {
        format!("took {elapsed:?}, budget {FORMULA_BUDGET:?}")
    })?;
    Ok(format!(
        "{cases} pairs, exact set equality, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_3() -> Outcome {
    let mut quads = Vec::new();
    for n in 1..=6usize {
        for m in 1..=6usize {
            for a in -6..=6i64 {
                if (a * m as i64) % n as i64 == 0 {
                    let b = a * m as i64 / n as i64;
                    if b.abs() <= 6 {
                        quads.push((n, a, m, b));
                    }
                }
            }
        }
    }
    let step = quads.len() / 20;
    let picked: Vec<_> = quads.iter().step_by(step).take(20).copied().collect();
    check(picked.len() == 20, || {
        "fewer than 20 slope-aligned quadruples".into()
    })?;
    for &(n, a, m, b) in &picked {
        let (f, g) = power_pair(n, a, m, b);
        let gi = graph_intersections(&f, &g);
        check(gi.count() == Count::Continuum, || {
            format!("({n},{a},{m},{b}) not a continuum")
        })?;
        check(project_to_domain(&gi).count() == Count::Continuum, || {
            format!("({n},{a},{m},{b}) domain")
        })?;
        let (f, g) = epsilon_separation(n, a, m, b).unwrap();
        check(domain_coincidences(&f, &g).is_empty(), || {
            format!("({n},{a},{m},{b}) translate not empty")
        })?;
        check(graph_intersections(&f, &g).is_empty(), || {
            format!("({n},{a},{m},{b}) translate graph")
        })?;
    }
    Ok("20 slope-aligned pairs: continuum, empty after 1/(2nm) translate".into())
}

fn criterion_4() -> Outcome {
    let mut cases = 0;
    for n in 2..=10i64 {
        for m in 2..=n {
            if gcd(n, m) != 1 {
                continue;
            }
            for g in 0..n * m {
                let (c, d) = bezout_rep(g, n, m).map_err(|e| e.to_string())?;
                check((0..n).contains(&c) && (0..m).contains(&d), || {
                    format!("({g},{n},{m}) out of range")
                })?;
                check((n * d - m * c - g).rem_euclid(n * m) == 0, || {
                    format!("({g},{n},{m}) congruence")
                })?;
                let brute: Vec<_> = (0..n)
                    .flat_map(|c| (0..m).map(move |d| (c, d)))
                    .filter(|&(c, d)| (n * d - m * c - g).rem_euclid(n * m) == 0)
                    .collect();
                check(brute == vec![(c, d)], || {
                    format!("({g},{n},{m}) brute force {brute:?}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} residues, matches enumeration"))
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for n in 1..=8usize {
        for a in -8..=8i64 {
            let f = power_map(n, a).unwrap();
            let w = gcd(n as i64, a) as usize;
            let comps = graph_components(&f).len();
            check(comps == w, || {
                format!("phi_{{{n},{a}}}: {comps} components, expected {w}")
            })?;
            let pieces = if w == 1 {
                vec![f.clone()]
            } else {
                graph_split(&f).map_err(|e| e.to_string())?
            };
            check(pieces.len() == w, || {
                format!("phi_{{{n},{a}}}: {} pieces", pieces.len())
            })?;
            for p in &pieces {
                check(p.n() == n / w && p.degree() == a / w as i64, || {
                    format!("phi_{{{n},{a}}}: piece ({}, {})", p.n(), p.degree())
                })?;
            }
            for k in 0..4 * n as i128 {
                let x = UnitPoint::wrap(Rational::frac(k, 4 * n as i128));
                let mut union: Vec<_> = pieces.iter().flat_map(|p| p.evaluate(x)).collect();
                union.sort();
                check(union == f.evaluate(x), || {
                    format!("phi_{{{n},{a}}}: pieces overlap at {}", x.value())
                })?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} power maps, components and partition"))
}

fn criterion_6() -> Outcome {
    let mut maps = 0;
    let mut pairs = 0;
    let coprime: Vec<(i64, i64)> = (1..=6)
        .flat_map(|n| (-6..=6).map(move |a| (n, a)))
        .filter(|&(n, a)| gcd(n, a) == 1)
        .collect();
    for &(n, a) in &coprime {
        let f = power_map(n as usize, a).unwrap();
        let l = loop_from_multimap(&f).map_err(|e| e.to_string())?;
        check(l == TorusLoop::straight(n, a).unwrap(), || {
            format!("loop of phi_{{{n},{a}}} not straight")
        })?;
        check(l.to_multimap().unwrap() == f, || {
            format!("phi_{{{n},{a}}} round trip")
        })?;
        // breakpoints of the loop sit at integer u; probe those and the midpoints between them
        for k in 0..2 * n as i128 {
            let x = Rational::frac(k, 2);
            let fx = x.fract();
            for y in f.evaluate(UnitPoint::wrap(fx)) {
                check(l.contains_mod1(fx, y.value()), || {
                    format!("phi_{{{n},{a}}} at {fx}")
                })?;
            }
            check(
                f.evaluate(UnitPoint::wrap(fx))
                    .contains(&UnitPoint::wrap(l.eval(x))),
                || format!("loop of class ({n},{a}) leaves the graph at u = {x}"),
            )?;
        }
        maps += 1;
    }
    for &(n, a) in &coprime {
        for &(m, b) in &coprime {
            if a * m == b * n {
                continue;
            }
            let c = loop_intersection_count(
                &TorusLoop::straight(n, a).unwrap(),
                &TorusLoop::straight(m, b).unwrap(),
            )
            .map_err(|e| e.to_string())?;
            let k = (a * m - b * n).unsigned_abs();
            check(c == Count::Finite(k), || {
                format!("loops ({n},{a}), ({m},{b}): {c}, expected {k}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{maps} loops match graphs, {pairs} loop pairs meet |am-bn| times"
    ))
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    for n in 1..=5i64 {
        for m in 1..=5i64 {
            for a in -5..=5i64 {
                for b in -5..=5i64 {
                    if gcd(n, a) != 1 || gcd(m, b) != 1 || a * m == b * n {
                        continue;
                    }
                    let (f, g) = power_pair(n as usize, a, m as usize, b);
                    let pts = graph_intersections(&f, &g).points;
                    let indexer = ClassIndexer::new(&f, &g);
                    let classes: BTreeSet<_> = pts
                        .iter()
                        .map(|p| indexer.index(p).map(|c| c.rep))
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    let k = (a * m - b * n).unsigned_abs();
                    check(pts.len() as u64 == k && classes.len() == pts.len(), || {
                        format!(
                            "({n},{a},{m},{b}): {} points, {} classes",
                            pts.len(),
                            classes.len()
                        )
                    })?;
                    let order = CosetLattice::new((n, a), (m, b)).unwrap().order();
                    check(order == k, || {
                        format!("({n},{a},{m},{b}): coset order {order}")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} connected pairs, pairwise distinct classes"
    ))
}

fn criterion_8() -> Outcome {
    let mut cases = 0;
    for n in 1..=6usize {
        for m in 1..=6usize {
            for a in -6..=6i64 {
                for b in -6..=6i64 {
                    let k = (a * m as i64 - b * n as i64).unsigned_abs();
                    let nn = nielsen_number(n, a, m, b).map_err(|e| e.to_string())?;
                    check(nn == k, || format!("({n},{a},{m},{b}): N = {nn}"))?;
                    let (f, g) = if k == 0 {
                        epsilon_separation(n, a, m, b).unwrap()
                    } else {
                        power_pair(n, a, m, b)
                    };
                    let c = graph_intersections(&f, &g).count();
                    check(c == Count::Finite(k), || {
                        format!("({n},{a},{m},{b}): graph count {c}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} pairs, N = |am-bn| = minimal graph count"))
}

fn criterion_9() -> Outcome {
    let c = counterexample_pairs();
    let bk = predict_counts(2, 1, 3, -1).unwrap().bk_value;
    check(c.f == power_map(2, 1).unwrap(), || {
        "f is not phi_{2,1}".into()
    })?;
    let mut observed = Vec::new();
    for (name, g, expected) in [("g_three", &c.g_three, 3u64), ("g_four", &c.g_four, 4)] {
        check(g.n() == 3 && g.degree() == -1, || {
            format!("{name} is not 3-valued of degree -1")
        })?;
        make_linear_homotopy(&power_map(3, -1).unwrap(), g).map_err(|e| format!("{name}: {e}"))?;
        let gi = graph_intersections(&c.f, g);
        let d = project_to_domain(&gi);
        check(gi.count() == Count::Finite(5), || {
            format!("{name}: graph count {}", gi.count())
        })?;
        check(d.count() == Count::Finite(expected), || {
            format!("{name}: domain count {}", d.count())
        })?;
        check(bk.finite().is_some_and(|v| v > expected), || {
            format!("{name}: BK value {bk} does not exceed {expected}")
        })?;
        observed.push(expected);
    }
    Ok(format!(
        "domain counts {observed:?}, graph count 5, BK value {bk}"
    ))
}

fn criterion_10() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let strategy = (1usize..=4, -4i64..=4, 1usize..=4, -4i64..=4, 0i128..=24).prop_flat_map(
        |(n, a, m, b, t)| {
            (arb_perturbed(n, a), arb_perturbed(m, b))
                .prop_map(move |(f1, g1)| (n, a, m, b, t, f1, g1))
        },
    );
    for _ in 0..HOMOTOPY_SAMPLES {
        let (n, a, m, b, t, f1, g1) = strategy
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        let tau = r(t, 24);
        let hf = make_linear_homotopy(&power_map(n, a).unwrap(), &f1).map_err(|e| e.to_string())?;
        let hg = make_linear_homotopy(&power_map(m, b).unwrap(), &g1).map_err(|e| e.to_string())?;
        let c = graph_intersections(&hf.slice(tau).unwrap(), &hg.slice(tau).unwrap()).count();
        let k = (a * m as i64 - b * n as i64).unsigned_abs();
        if let Count::Finite(c) = c {
            check(c >= k, || {
                format!("({n},{a},{m},{b}) at t = {tau}: {c} < {k}")
            })?;
        }
    }
    Ok(format!(
        "{HOMOTOPY_SAMPLES} random slices, graph count never below |am-bn|"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("degree law", criterion_1),
        ("coincidence-set formula", criterion_2),
        ("am = bn degeneracy", criterion_3),
        ("Bezout representation", criterion_4),
        ("components and splitting", criterion_5),
        ("loop correspondence", criterion_6),
        ("class distinctness", criterion_7),
        ("Nielsen number and Wecken realization", criterion_8),
        ("counterexample certification", criterion_9),
        ("homotopy lower bound", criterion_10),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{secs:.2} s]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    let total = suite.elapsed();
    if total > SUITE_BUDGET {
        failed += 1;
        println!(
            "suite FAIL  took {:.2} s, budget {} s",
            total.as_secs_f64(),
            SUITE_BUDGET.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.2} s",
        10 - failed.min(10),
        10,
        total.as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
