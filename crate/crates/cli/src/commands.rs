use std::io::Read;

use multicirc::circulant::{detect_directions, detect_directions_by_neighbourhood, CirculantGraph, JumpSet, Mode};
use multicirc::dimension::{analyze, dimension_bounds, is_circulant_2step, with_bruteforce, DimensionReport};
use multicirc::graph::Graph;
use multicirc::intmat::{
    determinantal_divisors, hermite_normal_form, parse_vector, parse_vectors, smith_normal_form, IntMatrix,
};
use multicirc::oracle::Limits;
use multicirc::quotient::QuotientGroup;
use multicirc::sweep;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::args::{CirculantArgs, Command, ElementArgs, Method, ModeArg};
use crate::error::CliError;

/// What a command produced, in every format it supports.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    /// Exit status 1 even though the output is complete.
    pub failed: Option<CliError>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            dot: None,
            failed: None,
        }
    }
}

fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| bigs(m.row(i))).collect())
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Digraph => Mode::Digraph,
        ModeArg::Graph => Mode::Graph,
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn parse_matrix(text: &str) -> Result<IntMatrix, CliError> {
    Ok(IntMatrix::parse(text)?)
}

fn circulant(m: &str, jumps: &str, mode_arg: ModeArg) -> Result<CirculantGraph, CliError> {
    let m = parse_matrix(m)?;
    let g = QuotientGroup::new(&m)?;
    let set = JumpSet::new(&g, &parse_vectors(jumps)?, mode(mode_arg))?;
    Ok(CirculantGraph::build(g, set)?)
}

fn from_args(a: &CirculantArgs) -> Result<CirculantGraph, CliError> {
    circulant(&a.matrix.matrix, &a.jumps, a.mode)
}

fn element(a: &ElementArgs) -> Result<(QuotientGroup, multicirc::quotient::GroupElement), CliError> {
    let g = QuotientGroup::new(&parse_matrix(&a.matrix.matrix)?)?;
    let x = g.canonicalize(&parse_vector(&a.element)?)?;
    Ok((g, x))
}

fn circulant_json(c: &CirculantGraph) -> Value {
    json!({
        "matrix": matrix(c.group().matrix()),
        "mode": c.mode(),
        "group": c.group().summary(),
        "generators": c.jump_set().generators(),
        "jumps": c.jump_set().jumps(),
        "vertices": c.vertices(),
        "graph": c.graph().to_edge_list(),
    })
}

fn circulant_text(c: &CirculantGraph) -> String {
    format!(
        "G(M; A) over {} with {} vertices, {} {}s\nA = {{{}}}",
        c.group(),
        c.graph().n_vertices(),
        c.graph().edge_count(),
        if c.graph().is_directed() { "arc" } else { "edge" },
        c.jump_set()
            .jumps()
            .iter()
            .map(|a| format!("({a})"))
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn with_dot(mut out: Output, c: &CirculantGraph) -> Output {
    out.dot = Some(c.graph().to_dot("G", Some(&c.vertex_labels())));
    out
}

fn report_text(r: &DimensionReport) -> String {
    let mut lines = vec![
        format!("order {} ({})", r.order, r.mode),
        format!(
            "bounds: rank {}, prime exponent {}, generators {}",
            r.snf_rank_bound, r.prime_exponent_bound, r.generator_bound
        ),
        format!("components: {}", r.alpha),
    ];
    if let Some(v) = r.circulant {
        lines.push(format!("circulant: {} (rule {:?})", v.is_circulant, v.rule));
    }
    if let Some(eta) = r.exceptional_eta {
        lines.push(format!("exceptional case, eta = {eta}"));
    }
    match r.exact_dimension {
        Some(d) => lines.push(format!("dimension: {} ({:?})", d.value, d.provenance)),
        None => lines.push(format!("dimension: at most {}", r.min_bound())),
    }
    if let Some(b) = r.bruteforce_dimension {
        lines.push(format!("exhaustive search: {b}"));
    }
    lines.join("\n")
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    let io = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    Ok(Graph::from_json(&text)?)
}

pub fn run(command: &Command, limits: &Limits) -> Result<Output, CliError> {
    match command {
        Command::Snf(a) => {
            let m = parse_matrix(&a.matrix)?;
            let sd = smith_normal_form(&m)?;
            let json = json!({
                "S": bigs(&sd.s.diagonal()),
                "U": matrix(&sd.u),
                "V": matrix(&sd.v),
                "divisors": bigs(&sd.divisors),
            });
            let text = format!("S = diag({})\nU = {}\nV = {}", join(&sd.s.diagonal()), sd.u, sd.v);
            Ok(Output::new(json, text))
        }
        Command::Hnf(a) => {
            let m = parse_matrix(&a.matrix)?;
            let hd = hermite_normal_form(&m)?;
            let json = json!({ "H": matrix(&hd.h), "V": matrix(&hd.v) });
            Ok(Output::new(json, format!("H = {}\nV = {}", hd.h, hd.v)))
        }
        Command::Divisors(a) => {
            let m = parse_matrix(&a.matrix)?;
            let d = determinantal_divisors(&m)?;
            let s = smith_normal_form(&m)?.factors;
            let json = json!({ "divisors": bigs(&d), "invariant_factors": bigs(&s) });
            Ok(Output::new(json, format!("d = {}\ns = {}", join(&d), join(&s))))
        }
        Command::Group { matrix: a, elements } => {
            let g = QuotientGroup::new(&parse_matrix(&a.matrix)?)?;
            let mut json = serde_json::to_value(g.summary()).expect("plain data");
            let mut text = format!("{g} (order {})", g.order());
            if *elements {
                let all = g.elements();
                json["elements"] = serde_json::to_value(&all).expect("plain data");
                text.push('\n');
                text.push_str(&all.iter().map(|e| format!("({e})")).collect::<Vec<_>>().join(" "));
            }
            Ok(Output::new(json, text))
        }
        Command::Order(a) => {
            let (g, x) = element(a)?;
            let order = g.element_order(&x);
            Ok(Output::new(json!({ "element": x, "order": order }), order.to_string()))
        }
        Command::Canon(a) => {
            let (g, x) = element(a)?;
            let snf = g.to_snf_coords(&x);
            let json = json!({ "element": x, "index": g.index_of(&x), "snf_coords": snf });
            Ok(Output::new(json, format!("({x}) -> ({}) in {g}", join(&snf))))
        }
        Command::Build(a) => {
            let c = from_args(a)?;
            Ok(with_dot(Output::new(circulant_json(&c), circulant_text(&c)), &c))
        }
        Command::Components(a) => {
            let c = from_args(a)?;
            let comps = c.components()?;
            let mut json = json!({ "alpha": comps.alpha, "components": comps.sets });
            let mut text = format!("{} component(s) of size {}", comps.alpha, comps.sets[0].len());
            if comps.alpha > 1 {
                let r = c.reduce_disconnected()?;
                text.push_str(&format!(
                    "\ncomponent: M' = {:?}, A' = {:?}\npresentation: M = {:?}, A = {:?}",
                    r.component_matrix, r.component_jumps, r.matrix, r.jumps
                ));
                json["reduction"] = serde_json::to_value(r).expect("plain data");
            }
            Ok(Output::new(json, text))
        }
        Command::Product { matrices, jumps, mode: m } => {
            if matrices.len() != jumps.len() {
                return Err(CliError::usage(
                    "--jumps",
                    format!("{} matrices but {} jump sets", matrices.len(), jumps.len()),
                ));
            }
            let mut acc: Option<CirculantGraph> = None;
            for (mx, js) in matrices.iter().zip(jumps) {
                let c = circulant(mx, js, *m)?;
                acc = Some(match acc {
                    None => c,
                    Some(prev) => prev.cartesian_product(&c)?,
                });
            }
            let c = acc.expect("at least one factor");
            Ok(with_dot(Output::new(circulant_json(&c), circulant_text(&c)), &c))
        }
        Command::AdamCanon(a) => {
            let c = from_args(a)?;
            let form = c.adam_canonical();
            let text = format!(
                "{} with A = {{{}}}",
                form.factors.iter().map(|s| format!("Z_{s}")).collect::<Vec<_>>().join(" x "),
                form.jumps.iter().map(|j| format!("({})", join(j))).collect::<Vec<_>>().join(", ")
            );
            let canon = form.to_circulant()?;
            let json = serde_json::to_value(&form).expect("plain data");
            Ok(with_dot(Output::new(json, text), &canon))
        }
        Command::Directions {
            graph,
            matrix: m,
            jumps,
            mode: md,
            root,
            method,
        } => {
            let g = match (graph, m, jumps) {
                (Some(path), _, _) => read_graph(path)?,
                (None, Some(m), Some(j)) => circulant(m, j, *md)?.graph().clone(),
                _ => return Err(CliError::usage("--graph", "give --graph or both -m and --jumps")),
            };
            if *root >= g.n_vertices() {
                return Err(CliError::usage("--root", format!("graph has {} vertices", g.n_vertices())));
            }
            let p = match method {
                Method::Cycles => detect_directions(&g, *root)?,
                Method::Neighbourhood => detect_directions_by_neighbourhood(&g, *root)?,
            };
            let sizes: Vec<usize> = p.copies.iter().map(|c| c.first().map_or(0, Vec::len)).collect();
            let text = format!("{} directions, factor sizes {}", p.n_directions, join(&sizes));
            let json = json!({ "n_directions": p.n_directions, "factor_sizes": sizes, "edges": p.edges });
            Ok(Output::new(json, text))
        }
        Command::Bounds(a) => {
            let r = dimension_bounds(&from_args(a)?)?;
            Ok(Output::new(serde_json::to_value(&r).expect("plain data"), report_text(&r)))
        }
        Command::IsCirculant(a) => {
            let c = from_args(a)?;
            let v = is_circulant_2step(c.group(), c.jump_set().generators(), c.mode())?;
            let eta = multicirc::dimension::exceptional_case(c.group(), c.jump_set().generators(), c.mode())?;
            let json = json!({ "is_circulant": v.is_circulant, "rule": v.rule, "exceptional_eta": eta });
            Ok(Output::new(json, format!("{} (rule {:?})", v.is_circulant, v.rule)))
        }
        Command::Dimension { circulant: a, exact } => {
            let c = from_args(a)?;
            let mut r = analyze(&c)?;
            if *exact {
                r = with_bruteforce(r, &c, limits)?;
            }
            Ok(Output::new(serde_json::to_value(&r).expect("plain data"), report_text(&r)))
        }
        Command::Verify { only } => {
            if let Some(bad) = only.iter().find(|&&k| !(1..=11).contains(&k)) {
                return Err(CliError::usage("--only", format!("no criterion {bad}")));
            }
            let outcomes: Vec<_> = sweep::run_all(limits)
                .into_iter()
                .filter(|o| only.is_empty() || only.contains(&o.id))
                .collect();
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            let json = json!({
                "passed": failed == 0,
                "criteria": outcomes.iter().map(|o| json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed(),
                    "checked": o.checked,
                    "failures": o.failures,
                })).collect::<Vec<_>>(),
            });
            let text = outcomes.iter().map(|o| o.summary_line()).collect::<Vec<_>>().join("\n");
            let mut out = Output::new(json, text);
            if failed > 0 {
                out.failed = Some(CliError::SweepsFailed(failed));
            }
            Ok(out)
        }
    }
}
