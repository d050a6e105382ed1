//! `nielsen`: command-line front end for exact coincidence computations.

mod render;

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nielsen_core::coincidence::{predict_counts, project_to_domain};
use nielsen_core::homotopy::{counterexample_pairs, sweep_counts, sweep_csv};
use nielsen_core::io::{
    multimap_from_json, multimap_to_json, CoincidenceReport, LoopJson, MultiMapJson,
};
use nielsen_core::torus::intersection_sign;
use nielsen_core::{
    graph_intersections, graph_split, make_linear_homotopy, nielsen_number, power_map, Error,
    MultiMap, Rational, TorusLoop,
};
use serde_json::json;

use crate::render::{render_svg, RenderSpec};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{context}{source}")]
    Core { context: String, source: Error },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

impl From<Error> for CliError {
    fn from(source: Error) -> Self {
        CliError::Core {
            context: String::new(),
            source,
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "nielsen",
    version,
    about = "Exact coincidence theory for multivalued circle maps"
)]
struct Cli {
    /// Emit JSON instead of text where a command has both forms.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Domain,
    Graph,
}

#[derive(Subcommand)]
enum Command {
    /// Print the n-valued power map of degree d as JSON.
    #[command(allow_negative_numbers = true)]
    Power { n: usize, d: i64 },
    /// Solve for coincidences of two multimaps given as JSON files.
    Coincide {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_enum, default_value = "graph")]
        mode: Mode,
    },
    /// Nielsen number and the older domain-count formula for a power pair.
    #[command(allow_negative_numbers = true)]
    Nielsen { n: usize, a: i64, m: usize, b: i64 },
    /// Split a multimap into its connected pieces (a power map, or --file).
    #[command(allow_negative_numbers = true)]
    Split {
        #[arg(required_unless_present = "file")]
        n: Option<usize>,
        #[arg(required_unless_present = "file")]
        a: Option<i64>,
        #[arg(long, conflicts_with_all = ["n", "a"])]
        file: Option<PathBuf>,
    },
    /// The straight torus loop of class (n, a).
    #[command(allow_negative_numbers = true)]
    Loop { n: i64, a: i64 },
    /// Coincidence counts along straight-line homotopies F0 -> F1 and G0 -> G1, as CSV.
    Sweep {
        f0: PathBuf,
        f1: PathBuf,
        g0: PathBuf,
        g1: PathBuf,
        /// Comma-separated rationals in [0, 1].
        #[arg(long, default_value = "0,1/4,1/2,3/4,1")]
        times: String,
    },
    /// Draw one or two multimaps on the unit square, circling graph intersections.
    Render {
        f: PathBuf,
        g: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the stored counterexample pairs and their counts.
    DemoCounterexample,
}

struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Self {
        Style {
            color: std::env::var_os("NIELSEN_NO_COLOR").is_none()
                && std::io::stdout().is_terminal(),
        }
    }

    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

fn read_map(path: &Path) -> CliResult<MultiMap> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    multimap_from_json(&text).map_err(|source| CliError::Core {
        context: format!("{}: ", path.display()),
        source,
    })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn parse_times(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(CliError::from))
        .collect()
}

fn cmd_nielsen(n: usize, a: i64, m: usize, b: i64, json: bool, style: &Style) -> CliResult<String> {
    let p = predict_counts(n, a, m, b)?;
    let nn = nielsen_number(n, a, m, b)?;
    let bk = p.k / p.w;
    let sign = intersection_sign(n as i64, a, m as i64, b);
    let discrepancy = bk != nn;
    if json {
        return Ok(pretty(&json!({
            "n": n, "a": a, "m": m, "b": b,
            "nielsen": nn, "bk": bk, "gcd": p.w, "sign": sign,
            "discrepancy": discrepancy,
        })));
    }
    let mut out = format!(
        "N = {nn}\nBK = {bk}\n|am - bn| = {}, GCD(n, m) = {}, intersection sign {sign}\n",
        p.k, p.w
    );
    let witness = if nn == 0 {
        "a vertical translate of the power pair"
    } else {
        "the power pair"
    };
    out.push_str(&format!(
        "every pair homotopic to (phi_{{{n},{a}}}, phi_{{{m},{b}}}) has at least {nn} graph intersection points; \
         {witness} attains it\n"
    ));
    if discrepancy {
        out.push_str(&style.paint(
            "33",
            &format!(
                "discrepancy: BK = {bk} differs from N = {nn}; BK counts domain coincidences of the power pair, \
                 N counts graph intersection classes"
            ),
        ));
        out.push('\n');
    }
    Ok(out)
}

fn cmd_demo(json: bool, style: &Style) -> CliResult<String> {
    let c = counterexample_pairs();
    let nn = nielsen_number(2, 1, 3, -1)?;
    let bk = predict_counts(2, 1, 3, -1)?.k / predict_counts(2, 1, 3, -1)?.w;
    let rows: Vec<(&str, &MultiMap)> = vec![("g_three", &c.g_three), ("g_four", &c.g_four)];
    let mut table = Vec::new();
    for (name, g) in &rows {
        let gi = graph_intersections(&c.f, g);
        table.push((*name, project_to_domain(&gi).count(), gi.count()));
    }
    if json {
        let pairs: Vec<_> = rows
            .iter()
            .zip(&table)
            .map(|((_, g), (name, d, gr))| {
                json!({
                    "name": name,
                    "f": MultiMapJson::from(&c.f),
                    "g": MultiMapJson::from(*g),
                    "bk": bk, "nielsen": nn, "domain": d, "graph": gr,
                })
            })
            .collect();
        return Ok(pretty(&json!({ "pairs": pairs })));
    }
    let mut out = String::from("f = phi_{2,1}, g homotopic to phi_{3,-1}\n");
    out.push_str("pair       BK   N  domain  graph\n");
    for (name, d, g) in &table {
        out.push_str(&format!(
            "{name:<9} {bk:>3} {nn:>3} {:>7} {:>6}\n",
            d.to_string(),
            g.to_string()
        ));
    }
    let observed: Vec<String> = table.iter().map(|r| r.1.to_string()).collect();
    out.push_str(&style.paint(
        "33",
        &format!(
            "BK = {bk} exceeds the observed domain counts {}; graph intersections stay at N = {nn}",
            observed.join(" and ")
        ),
    ));
    out.push('\n');
    Ok(out)
}

fn run(cli: Cli, style: &Style) -> CliResult<String> {
    let json = cli.json;
    match cli.command {
        Command::Power { n, d } => Ok(multimap_to_json(&power_map(n, d)?)),
        Command::Coincide { f, g, mode } => {
            let gi = graph_intersections(&read_map(&f)?, &read_map(&g)?);
            let report = match mode {
                Mode::Graph => CoincidenceReport::graph(&gi),
                Mode::Domain => CoincidenceReport::domain(&gi),
            };
            Ok(pretty(&report))
        }
        Command::Nielsen { n, a, m, b } => cmd_nielsen(n, a, m, b, json, style),
        Command::Split { n, a, file } => {
            let f = match (file, n, a) {
                (Some(path), _, _) => read_map(&path)?,
                (None, Some(n), Some(a)) => power_map(n, a)?,
                _ => return Err(CliError::Input("split needs N and A, or --file".into())),
            };
            let pieces = match graph_split(&f) {
                Ok(p) => p,
                Err(Error::NothingToSplit) => vec![f],
                Err(e) => return Err(e.into()),
            };
            let out: Vec<MultiMapJson> = pieces.iter().map(MultiMapJson::from).collect();
            Ok(pretty(&out))
        }
        Command::Loop { n, a } => {
            let l = TorusLoop::straight(n, a)?;
            if json {
                return Ok(pretty(&LoopJson::from(&l)));
            }
            let path: Vec<String> = l
                .points()
                .iter()
                .map(|(u, v)| format!("({u}, {v})"))
                .collect();
            Ok(format!("{}\nclass ({n}, {a})", path.join(" -> ")))
        }
        Command::Sweep {
            f0,
            f1,
            g0,
            g1,
            times,
        } => {
            let times = parse_times(&times)?;
            let hf = make_linear_homotopy(&read_map(&f0)?, &read_map(&f1)?)?;
            let hg = make_linear_homotopy(&read_map(&g0)?, &read_map(&g1)?)?;
            let rows = sweep_counts(&hf, &hg, &times)?;
            if json {
                return Ok(pretty(&rows));
            }
            Ok(sweep_csv(&rows).trim_end().to_string())
        }
        Command::Render { f, g, out } => {
            let fm = read_map(&f)?;
            let gm = g.as_deref().map(read_map).transpose()?;
            let (maps, marks) = match &gm {
                Some(gm) => (vec![&fm, gm], graph_intersections(&fm, gm).points),
                None => (vec![&fm], Vec::new()),
            };
            let svg = render_svg(&RenderSpec::default(), &maps, &marks);
            fs::write(&out, svg).map_err(|source| CliError::Io {
                path: out.clone(),
                source,
            })?;
            Ok(format!("wrote {} ({} markers)", out.display(), marks.len()))
        }
        Command::DemoCounterexample => cmd_demo(json, style),
    }
}

fn report(err: &CliError, style: &Style) {
    eprintln!("{} {err}", style.paint("31", "error:"));
    if let CliError::Core {
        source: Error::InvalidMultiMap(v),
        ..
    } = err
    {
        eprintln!("{}", serde_json::to_string(v).expect("serializable"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style::detect();
    match run(cli, &style) {
        Ok(out) => {
            println!("{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            report(&e, &style);
            ExitCode::from(e.exit_code())
        }
    }
}
