use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use plumbing_sw::builders::{
    hj_continued_fraction, parse_knots, surgery_graph, torus_knot_graph, KnotSpec, ResolutionGraph, SurgeryGraph,
};
use plumbing_sw::covers::{uac_graph, uac_surgery};
use plumbing_sw::format::{
    big_json, cap_json, cover_json, eu_json, graph_to_json, integral_table_json, parse_graph, serialize_graph,
    sw_report_json,
};
use plumbing_sw::latcoh::{lattice_eu, EuConfig, EuStatus};
use plumbing_sw::sw::{
    alexander_polynomial, cap_check, delta_invariant, integral_surgery_table, knot_alexander, surgery_classes,
    surgery_s_values, sw_table_with, SwEngine,
};
use plumbing_sw::{Error, Lattice};

/// Seiberg–Witten invariants of negative definite plumbed 3-manifolds.
#[derive(Parser)]
#[command(name = "plumbing-sw", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hirzebruch–Jung continued fraction of p/q.
    Hj { p: i64, q: i64 },
    /// Embedded resolution graph of the (a,b) torus knot.
    KnotGraph { a: i64, b: i64 },
    /// Plumbing graph of -p/q surgery along a connected sum of knots.
    Surgery {
        #[command(flatten)]
        spec: SurgerySpec,
        /// Also tabulate s_h for h = 0..p-1 (classes h·[E_u'^*]).
        #[arg(long)]
        table: bool,
        /// Write the graph to this file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Universal abelian cover graph of a graph with cyclic H.
    Uac { file: PathBuf },
    /// Table of r_h, i_h, s_h and sw_h.
    Sw {
        file: PathBuf,
        /// Class as residues for the invariant factors, e.g. `1` or `1,0`.
        #[arg(long)]
        class: Option<String>,
    },
    /// Euler characteristic of lattice cohomology, per class.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        class: Option<String>,
        /// Largest accepted number of vertices.
        #[arg(long, default_value_t = EuConfig::default().max_vertices)]
        max_vertices: usize,
    },
    /// Alexander polynomial of the knot given by the single arrow of a graph.
    Alexander { file: PathBuf },
    /// Covering additivity check: s_0 of the cover against Σ_h s_h.
    Cap {
        /// Graph file with cyclic H (ignored with --surgery).
        file: Option<PathBuf>,
        /// Torus knots such as "(6,7)+(2,9)".
        #[arg(long)]
        surgery: Option<String>,
        /// Surgery numerator p.
        #[arg(short)]
        p: Option<i64>,
        /// Surgery denominator q.
        #[arg(short, default_value_t = 1)]
        q: i64,
        /// Exit with status 3 when the property fails.
        #[arg(long)]
        expect_hold: bool,
    },
    /// Run the worked-example checks.
    Selftest,
}

#[derive(Args)]
struct SurgerySpec {
    /// Torus knot `a,b`; repeat for connected sums.
    #[arg(long = "knot", value_name = "A,B")]
    knots: Vec<String>,
    /// Resolution graph file (one arrow and a multiplicity system); repeatable.
    #[arg(long = "resolution", value_name = "FILE")]
    resolutions: Vec<PathBuf>,
    /// Surgery numerator p.
    #[arg(short)]
    p: i64,
    /// Surgery denominator q.
    #[arg(short, default_value_t = 1)]
    q: i64,
}

/// `println!` that ends the process quietly once stdout is closed.
macro_rules! out {
    ($($t:tt)*) => {
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    };
}

enum Failure {
    Input(Error),
    Inconclusive(String),
    CapFails,
    SelftestFails,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::CapFails) => ExitCode::from(3),
        Err(Failure::SelftestFails) => ExitCode::from(1),
    }
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Hj { p, q } => hj(cli.json, *p, *q),
        Command::KnotGraph { a, b } => knot_graph(cli.json, *a, *b),
        Command::Surgery { spec, table, output } => surgery(cli.json, spec, *table, output.as_ref()),
        Command::Uac { file } => uac(cli.json, file),
        Command::Sw { file, class } => sw(cli.json, file, class.as_deref()),
        Command::Lattice { file, class, max_vertices } => lattice(cli.json, file, class.as_deref(), *max_vertices),
        Command::Alexander { file } => alexander(cli.json, file),
        Command::Cap { file, surgery, p, q, expect_hold } => {
            cap(cli.json, file.as_ref(), surgery.as_deref(), *p, *q, *expect_hold)
        }
        Command::Selftest => selftest(cli.json),
    }
}

fn hj(as_json: bool, p: i64, q: i64) -> Outcome {
    let ks = hj_continued_fraction(p, q)?;
    if as_json {
        print_json(&json!({ "p": p, "q": q, "continued_fraction": ks }));
    } else {
        let items: Vec<String> = ks.iter().map(ToString::to_string).collect();
        out!("[{}]", items.join(","));
    }
    Ok(())
}

fn knot_graph(as_json: bool, a: i64, b: i64) -> Outcome {
    let spec = KnotSpec::new(a, b)?;
    let r = torus_knot_graph(spec);
    let alex = knot_alexander(&r)?;
    if as_json {
        print_json(&json!({
            "knot": [spec.a, spec.b],
            "graph": graph_to_json(r.graph()),
            "alexander": alex.coeffs().iter().map(big_json).collect::<Vec<_>>(),
            "delta": big_json(&delta_invariant(&alex)),
        }));
    } else {
        out!("# torus knot {spec}, Δ(t) = {alex}, δ = {}", delta_invariant(&alex));
        out!("{}", serialize_graph(r.graph()));
    }
    Ok(())
}

fn build_surgery(spec: &SurgerySpec) -> Result<SurgeryGraph, Failure> {
    let mut knots: Vec<ResolutionGraph> = Vec::new();
    for k in &spec.knots {
        for s in parse_knots(k)? {
            knots.push(torus_knot_graph(s));
        }
    }
    for path in &spec.resolutions {
        knots.push(ResolutionGraph::new(parse_graph(path)?)?);
    }
    Ok(surgery_graph(&knots, spec.p, spec.q)?)
}

fn surgery(as_json: bool, spec: &SurgerySpec, table: bool, output: Option<&PathBuf>) -> Outcome {
    let sg = build_surgery(spec)?;
    if let Some(path) = output {
        plumbing_sw::format::write_graph(&sg.graph, path)?;
    }
    let mut doc = json!({
        "p": sg.p,
        "q": sg.q,
        "continued_fraction": sg.continued_fraction,
        "u": sg.graph.id(sg.u),
        "u_prime": sg.graph.id(sg.u_prime),
        "u_j": sg.u_j.iter().map(|&v| sg.graph.id(v)).collect::<Vec<_>>(),
        "graph": graph_to_json(&sg.graph),
    });
    let mut text = vec![format!(
        "# surgery -{}/{} : [{}], u = {}, u' = {}",
        sg.p,
        sg.q,
        sg.continued_fraction.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        sg.graph.id(sg.u),
        sg.graph.id(sg.u_prime)
    )];
    if table {
        let mut engine = SwEngine::new();
        let values = surgery_s_values(&mut engine, &sg)?;
        let total: num_bigint::BigInt = values.iter().sum();
        doc["s"] = Value::Array(values.iter().map(big_json).collect());
        doc["total_s"] = big_json(&total);
        for (h, s) in values.iter().enumerate() {
            text.push(format!("# s_{h} = {s}"));
        }
        text.push(format!("# Σ s_h = {total}"));
        if sg.q == 1 {
            let t = integral_surgery_table(&sg)?;
            text.push(format!("# Δ(t) = {}, Q(1) = {}, Σ c_h = {}", t.alexander, t.q_at_one, t.c_total));
            doc["integral"] = integral_table_json(&t);
        }
    }
    if as_json {
        print_json(&doc);
    } else {
        for line in text {
            out!("{line}");
        }
        if output.is_none() {
            out!("{}", serialize_graph(&sg.graph));
        }
    }
    Ok(())
}

fn uac(as_json: bool, file: &Path) -> Outcome {
    let g = parse_graph(file)?;
    let cover = uac_graph(&g)?;
    if as_json {
        print_json(&cover_json(&cover));
    } else {
        let det = Lattice::new(&cover.graph.bare())?.det().clone();
        out!("# cover with {} vertices, det {det}", cover.graph.len());
        out!("{}", serialize_graph(&cover.graph));
    }
    Ok(())
}

fn parse_class(lat: &Lattice, class: &str) -> Result<usize, Failure> {
    let group = lat.homology().group();
    let residues: Vec<u64> = class
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Input(format!("bad class residue '{s}'"))))
        .collect::<Result<_, _>>()?;
    let factors = group.factors();
    if residues.len() != factors.len().max(1) && !(factors.is_empty() && residues == [0]) {
        return Err(
            Error::Input(format!("class needs {} residues for invariant factors {factors:?}", factors.len())).into()
        );
    }
    if factors.is_empty() {
        return Ok(0);
    }
    if residues.iter().zip(factors).any(|(r, f)| r >= f) {
        return Err(Error::Input(format!("residues {residues:?} out of range for {factors:?}")).into());
    }
    Ok(group.index(&residues))
}

fn sw(as_json: bool, file: &Path, class: Option<&str>) -> Outcome {
    let g = parse_graph(file)?;
    let mut engine = SwEngine::new();
    let lat = engine.lattice(&g)?;
    let only = class.map(|c| parse_class(&lat, c)).transpose()?;
    let report = sw_table_with(&mut engine, &g, only)?;
    if as_json {
        print_json(&sw_report_json(&report));
        return Ok(());
    }
    out!("# H = {}, invariant factors {:?}, det {}", group_name(&report.factors), report.factors, lat.det());
    out!("{:<12} {:>12} {:>8} {:>14}", "class", "i_h", "s_h", "sw_h");
    for row in &report.rows {
        out!(
            "{:<12} {:>12} {:>8} {:>14}",
            format!("{:?}", row.residues),
            row.i.to_string(),
            row.s.to_string(),
            row.sw.to_string()
        );
    }
    if only.is_none() {
        out!("total s = {}", report.total);
    }
    Ok(())
}

fn group_name(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|f| format!("Z_{f}")).collect::<Vec<_>>().join(" x ")
    }
}

fn lattice(as_json: bool, file: &Path, class: Option<&str>, max_vertices: usize) -> Outcome {
    let g = parse_graph(file)?;
    let lat = Lattice::new(&g.bare())?;
    let classes: Vec<usize> = match class {
        Some(c) => vec![parse_class(&lat, c)?],
        None => (0..lat.order() as usize).collect(),
    };
    let config = EuConfig { max_vertices, ..EuConfig::default() };
    let mut docs = Vec::new();
    let mut inconclusive = Vec::new();
    for h in classes {
        let r = lattice_eu(&g, &lat.minimal_representative(h), config)?;
        let residues = lat.homology().group().element(h);
        match (&r.status, &r.eu) {
            (EuStatus::Converged { bounds }, Some(eu)) => {
                if !as_json {
                    out!("class {residues:?}: eu = {eu} (min w = {}, box {bounds:?})", r.min_weight);
                }
            }
            (EuStatus::Inconclusive { last_bounds }, _) => {
                if !as_json {
                    out!("class {residues:?}: inconclusive (last box {last_bounds:?})");
                }
                inconclusive.push(h);
            }
            (EuStatus::Converged { .. }, None) => unreachable!("converged results carry a value"),
        }
        docs.push(eu_json(h, &r));
    }
    if as_json {
        print_json(&json!({ "classes": docs }));
    }
    if inconclusive.is_empty() {
        Ok(())
    } else {
        Err(Failure::Inconclusive(format!("box limits reached for classes {inconclusive:?}")))
    }
}

fn alexander(as_json: bool, file: &Path) -> Outcome {
    let g = parse_graph(file)?;
    let [arrow] = g.arrows() else {
        return Err(Error::Input("the graph must carry exactly one arrow marking the knot".into()).into());
    };
    let marked = arrow.vertex;
    let delta_poly = alexander_polynomial(&g.bare(), marked)?;
    let delta = delta_invariant(&delta_poly);
    if as_json {
        print_json(&json!({
            "marked": g.id(marked),
            "alexander": delta_poly.coeffs().iter().map(big_json).collect::<Vec<_>>(),
            "delta": big_json(&delta),
        }));
    } else {
        out!("Δ(t) = {delta_poly}");
        out!("δ = {delta}");
    }
    Ok(())
}

fn cap(
    as_json: bool,
    file: Option<&PathBuf>,
    surgery_knots: Option<&str>,
    p: Option<i64>,
    q: i64,
    expect_hold: bool,
) -> Outcome {
    let mut engine = SwEngine::new();
    let (report, classes) = match (surgery_knots, file) {
        (Some(spec), _) => {
            let p = p.ok_or_else(|| Error::Input("--surgery needs -p".into()))?;
            let knots: Vec<ResolutionGraph> = parse_knots(spec)?.into_iter().map(torus_knot_graph).collect();
            let sg = surgery_graph(&knots, p, q)?;
            let cover = uac_surgery(&sg)?;
            let report = cap_check(&mut engine, &sg.graph, &cover.graph)?;
            let lat = engine.lattice(&sg.graph)?;
            (report, Some(surgery_classes(&sg, &lat)))
        }
        (None, Some(path)) => {
            let g = parse_graph(path)?;
            let cover = match uac_graph(&g) {
                Ok(c) => c,
                Err(Error::NotRationalHomologySphere(msg)) => {
                    return Err(Failure::Inconclusive(format!("UAC not a QHS3 ({msg}); no verdict")));
                }
                Err(e) => return Err(e.into()),
            };
            (cap_check(&mut engine, &g, &cover.graph)?, None)
        }
        (None, None) => return Err(Error::Input("give a graph file or --surgery".into()).into()),
    };
    if as_json {
        let mut doc = cap_json(&report);
        if let Some(order) = &classes {
            // s_h in the order h = 0..p-1 of [h E_u'^*].
            doc["surgery_s"] = Value::Array(order.iter().map(|&c| big_json(&report.base_values[c])).collect());
        }
        print_json(&doc);
    } else {
        let values: Vec<&num_bigint::BigInt> = match &classes {
            Some(order) => order.iter().map(|&c| &report.base_values[c]).collect(),
            None => report.base_values.iter().collect(),
        };
        let terms: Vec<String> = values.iter().map(ToString::to_string).collect();
        out!("Σ s_h = {} = {}", terms.join(" + "), report.base_total);
        out!("s_0(cover) = {}", report.cover_s0);
        if report.holds {
            out!("{} = {} CAP holds", report.base_total, report.cover_s0);
        } else {
            out!("{} != {} CAP fails", report.base_total, report.cover_s0);
        }
    }
    if expect_hold && !report.holds {
        return Err(Failure::CapFails);
    }
    Ok(())
}

fn selftest(as_json: bool) -> Outcome {
    let checks = plumbing_sw::selftest::run();
    if as_json {
        let items: Vec<Value> =
            checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
        print_json(&json!({ "checks": items }));
    } else {
        out!("{}", plumbing_sw::selftest::render(&checks).trim_end());
    }
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::SelftestFails)
    }
}
