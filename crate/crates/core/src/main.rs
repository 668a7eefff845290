use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use galois_trees::format::{
    bigint_json, cyc_poly_json, cyc_unipoly_json, cycint_json, graph_json, int_poly_json, parse_document,
    serialize_spec, spec_to_doc, unipoly_json, Document, LabelledGraph, SCHEMA,
};
use galois_trees::jacobian::{
    eval_at_lengths, jacobian_group, labelled_polynomial, pushforward_jacobian, specialized_cover_polynomial,
};
use galois_trees::matroid::{bases, Twist};
use galois_trees::verify::{verify_main_theorem, VerificationReport};
use galois_trees::zeta::{
    artin_l_reciprocal_threeterm, closed_path_census, edge_matrix_traces, ihara_zeta_reciprocal, l_taylor,
    metric_l_reciprocal, metric_zeta_reciprocal, twisted_laplacian_det, zeta_taylor,
};
use galois_trees::{Character, Cover, CoverSpec, Error, Graph};

#[derive(Parser)]
#[command(name = "galois-trees", version, about = "Spanning trees, matroids and zeta functions of abelian graph covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// Spec file (JSON).
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cover graph with its projections.
    Build(Input),
    /// Critical group of the base, or of the cover with --cover.
    Jacobian {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cover: bool,
    },
    /// Jacobian polynomial of the base, or the specialized one of the cover.
    Jacpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cover: bool,
        /// Evaluate at integer lengths, e.g. `e1=2,e3=1`.
        #[arg(long, value_parser = parse_lengths)]
        lengths: Option<HashMap<String, i64>>,
    },
    /// Bases and weights of the twisted (or, without --character, untwisted) matroid.
    Matroid {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        character: Option<usize>,
    },
    /// Zeta reciprocals of the base, its expansion at s = 1, and a path census.
    Zeta {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_lengths)]
        lengths: Option<HashMap<String, i64>>,
        /// Census of closed reduced paths up to this length.
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// L-function reciprocals of a free cover at one character.
    Lfunction {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        character: usize,
        #[arg(long, value_parser = parse_lengths)]
        lengths: Option<HashMap<String, i64>>,
    },
    /// Free resolution: a free spec whose loop contraction gives this one.
    Resolve(Input),
    /// Check the factorization of the cover's Jacobian polynomial.
    Verify(Input),
}

fn parse_lengths(text: &str) -> Result<HashMap<String, i64>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected `edge=length`, got `{pair}`"))?;
            let n: i64 = v.trim().parse().map_err(|_| format!("bad length `{v}`"))?;
            Ok((k.trim().to_string(), n))
        })
        .collect()
}

/// Failure modes mapped to exit codes.
enum Failure {
    Input(String),
    Mismatch(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn load(input: &Input) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(&input.file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", input.file.display())))?;
    Ok(parse_document(&text)?)
}

fn load_spec(input: &Input) -> Result<CoverSpec, Failure> {
    match load(input)? {
        Document::Spec(s) => Ok(s),
        Document::Labelled(_) => Err(Failure::Input("this command needs a voltage spec, not a labelled graph".into())),
    }
}

fn character(spec: &CoverSpec, index: usize) -> Result<Character, Failure> {
    let chars = spec.group().characters();
    chars.get(index).cloned().ok_or_else(|| {
        Failure::from(Error::CharacterOutOfRange {
            index,
            order: spec.group().order(),
        })
    })
}

fn report(command: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        out.extend(fields);
    }
    Value::Object(out)
}

fn edge_lists(g: &Graph, sets: &[Vec<usize>]) -> Value {
    json!(sets.iter().map(|b| g.edge_ids(b)).collect::<Vec<_>>())
}

fn run_build(input: &Input) -> Outcome {
    let spec = load_spec(input)?;
    let cover = Cover::build(&spec);
    let total = cover.total();
    let base = cover.base();
    let vertex_map: Map<String, Value> = total
        .vertices()
        .iter()
        .zip(cover.vertex_projection())
        .map(|(v, &b)| (v.clone(), json!(base.vertices()[b])))
        .collect();
    let edge_map: Map<String, Value> = total
        .edges()
        .iter()
        .zip(cover.edge_projection())
        .map(|(e, &b)| (e.id.clone(), json!(base.edges()[b].id)))
        .collect();
    Ok(report(
        "build",
        json!({
            "cover": graph_json(total),
            "vertex_projection": vertex_map,
            "edge_projection": edge_map,
            "num_vertices": total.num_vertices(),
            "num_edges": total.num_edges(),
            "connected": cover.is_connected(),
            "harmonic": cover.is_harmonic(),
        }),
    ))
}

fn run_jacobian(input: &Input, on_cover: bool) -> Outcome {
    let (graph, cover) = match load(input)? {
        Document::Labelled(lg) => (lg.graph, None),
        Document::Spec(spec) if on_cover => {
            let cover = Cover::build(&spec);
            (cover.total().clone(), Some(cover))
        }
        Document::Spec(spec) => (spec.base().clone(), None),
    };
    let jac = jacobian_group(&graph)?;
    let mut body = json!({
        "graph": if on_cover { "cover" } else { "base" },
        "invariant_factors": jac.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
        "order": bigint_json(&jac.order),
    });
    if let Some(cover) = cover {
        let p = pushforward_jacobian(&cover)?;
        body["pushforward"] = json!({
            "surjective": p.surjective,
            "well_defined": p.well_defined,
            "image_order": bigint_json(&p.image_order),
            "kernel_order": bigint_json(&p.kernel_order),
        });
    }
    Ok(report("jacobian", body))
}

fn labelled_report(lg: &LabelledGraph) -> Result<galois_trees::algebra::MultiPoly<num_bigint::BigInt>, Failure> {
    Ok(labelled_polynomial(&lg.graph, &lg.labels, &lg.names)?)
}

fn run_jacpoly(input: &Input, on_cover: bool, lengths: Option<&HashMap<String, i64>>) -> Outcome {
    let (poly, which) = match load(input)? {
        Document::Labelled(lg) => (labelled_report(&lg)?, "labelled"),
        Document::Spec(spec) if on_cover => (specialized_cover_polynomial(&Cover::build(&spec))?, "cover"),
        Document::Spec(spec) => {
            let g = spec.base();
            let ids = g.edge_id_list();
            let identity: Vec<usize> = (0..ids.len()).collect();
            (labelled_polynomial(g, &identity, &ids)?, "base")
        }
    };
    let mut body = json!({
        "graph": which,
        "polynomial": int_poly_json(&poly),
        "value_at_ones": bigint_json(&eval_at_lengths(&poly, &HashMap::new())),
    });
    if let Some(l) = lengths {
        body["value"] = bigint_json(&eval_at_lengths(&poly, l));
    }
    Ok(report("jacpoly", body))
}

fn run_matroid(input: &Input, index: Option<usize>) -> Outcome {
    let spec = load_spec(input)?;
    let g = spec.base();
    let body = match index {
        None => {
            let m = bases(&spec, &Twist::Untwisted)?;
            json!({
                "twist": "untwisted",
                "rank": m.rank,
                "num_bases": m.bases.len(),
                "bases": edge_lists(g, &m.bases),
            })
        }
        Some(k) => {
            let rho = character(&spec, k)?;
            let w = galois_trees::matroid::weight_polynomial(&spec, &rho)?;
            let listed: Vec<Value> = w
                .bases
                .iter()
                .zip(&w.weights)
                .map(|(b, wt)| json!({ "edges": g.edge_ids(b), "weight": cycint_json(wt) }))
                .collect();
            json!({
                "twist": { "character": k, "exponents": rho.exponents() },
                "rank": w.rank,
                "num_bases": w.bases.len(),
                "bases": listed,
                "weight_polynomial": cyc_poly_json(&w.polynomial),
                "scalar_weight": cycint_json(&w.scalar),
            })
        }
    };
    Ok(report("matroid", body))
}

fn run_zeta(input: &Input, lengths: Option<&HashMap<String, i64>>, max_length: Option<usize>) -> Outcome {
    let graph = match load(input)? {
        Document::Spec(s) => s.base().clone(),
        Document::Labelled(lg) => lg.graph,
    };
    let lengths = lengths.cloned().unwrap_or_default();
    let metric = metric_zeta_reciprocal(&graph, &lengths)?;
    let mut body = json!({
        "metric_reciprocal": unipoly_json(&metric),
        "ihara_reciprocal": unipoly_json(&ihara_zeta_reciprocal(&graph)?),
    });
    match zeta_taylor(&graph, &lengths) {
        Ok(t) => {
            body["taylor_at_1"] = json!({
                "order": t.order,
                "coefficient": bigint_json(&t.coefficient),
                "predicted_order": t.predicted_order,
                "predicted": bigint_json(&t.predicted),
                "holds": t.holds(),
            })
        }
        Err(Error::GenusTooSmall(g)) => {
            body["taylor_at_1"] = json!({ "skipped": format!("genus {g} < 2") });
        }
        Err(e) => return Err(e.into()),
    }
    if let Some(max) = max_length {
        let census = closed_path_census(&graph, max)?;
        let traces = edge_matrix_traces(&graph, max);
        let table: Map<String, Value> = census
            .iter()
            .enumerate()
            .map(|(i, n)| ((i + 1).to_string(), json!(n)))
            .collect();
        let agrees = census.iter().zip(&traces).all(|(n, t)| num_bigint::BigInt::from(*n) == *t);
        body["census"] = json!({ "counts": table, "matches_trace": agrees });
    }
    Ok(report("zeta", body))
}

fn run_lfunction(input: &Input, index: usize, lengths: Option<&HashMap<String, i64>>) -> Outcome {
    let spec = load_spec(input)?;
    let rho = character(&spec, index)?;
    let lengths = lengths.cloned().unwrap_or_default();
    let metric = metric_l_reciprocal(&spec, &rho, &lengths)?;
    let unit = metric_l_reciprocal(&spec, &rho, &HashMap::new())?;
    let three = artin_l_reciprocal_threeterm(&spec, &rho)?;
    let mut body = json!({
        "character": index,
        "metric_reciprocal": cyc_unipoly_json(&metric),
        "threeterm_reciprocal": cyc_unipoly_json(&three),
        "two_term_equals_three_term": unit == three,
    });
    if !rho.is_trivial() {
        let t = l_taylor(&spec, &rho, &lengths)?;
        body["taylor_at_1"] = json!({
            "order": t.order,
            "coefficient": cycint_json(&t.coefficient),
            "predicted_order": t.predicted_order,
            "predicted": cycint_json(&t.predicted),
            "holds": t.holds(),
        });
        body["twisted_laplacian_det"] = cycint_json(&twisted_laplacian_det(&spec, &rho)?);
    }
    Ok(report("lfunction", body))
}

fn run_resolve(input: &Input) -> Outcome {
    let spec = load_spec(input)?;
    let (free, added) = spec.free_resolution();
    let doc = serde_json::to_value(spec_to_doc(&free)).expect("spec documents serialize");
    debug_assert!(!serialize_spec(&free).is_empty());
    Ok(report("resolve", json!({ "spec": doc, "added_loops": added })))
}

fn verification_json(r: &VerificationReport, g: &Graph) -> Value {
    let characters: Vec<Value> = r
        .characters
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "exponents": c.exponents,
                "rank": c.weights.rank,
                "num_bases": c.weights.bases.len(),
                "bases": edge_lists(g, &c.weights.bases),
                "weight_polynomial": cyc_poly_json(&c.weights.polynomial),
                "scalar_weight": cycint_json(&c.weights.scalar),
            })
        })
        .collect();
    let opt = |x: &Option<num_bigint::BigInt>| x.as_ref().map(bigint_json).unwrap_or(Value::Null);
    json!({
        "equal": r.equal,
        "holds": r.holds(),
        "group_order": r.group_order,
        "base": {
            "tree_count": bigint_json(&r.base_tree_count),
            "jacobian_polynomial": int_poly_json(&r.base_polynomial),
        },
        "characters": characters,
        "galois_orbits": r.orbits,
        "prefactor": {
            "numerator": bigint_json(&r.prefactor_numerator),
            "denominator": bigint_json(&r.prefactor_denominator),
        },
        "rhs": r.rhs.as_ref().map(int_poly_json).unwrap_or(Value::Null),
        "lhs": int_poly_json(&r.lhs),
        "tree_counts": {
            "cofactor": bigint_json(&r.cover_tree_count),
            "smith": bigint_json(&r.cover_jacobian_order),
            "theorem": opt(&r.theorem_tree_count),
        },
    })
}

fn run_verify(input: &Input) -> Outcome {
    let spec = load_spec(input)?;
    let r = verify_main_theorem(&spec)?;
    let body = report("verify", verification_json(&r, spec.base()));
    if r.holds() {
        Ok(body)
    } else {
        Err(Failure::Mismatch(body))
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_text(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

/// Writes the report; a closed stdout (say, piped into `head`) is not an error.
fn emit(v: &Value, format: OutputFormat) {
    let text = match format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("reports serialize")),
        OutputFormat::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            s
        }
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Build(i) => run_build(i),
        Command::Jacobian { input, cover } => run_jacobian(input, *cover),
        Command::Jacpoly { input, cover, lengths } => run_jacpoly(input, *cover, lengths.as_ref()),
        Command::Matroid { input, character } => run_matroid(input, *character),
        Command::Zeta {
            input,
            lengths,
            max_length,
        } => run_zeta(input, lengths.as_ref(), *max_length),
        Command::Lfunction {
            input,
            character,
            lengths,
        } => run_lfunction(input, *character, lengths.as_ref()),
        Command::Resolve(i) => run_resolve(i),
        Command::Verify(i) => run_verify(i),
    };
    match outcome {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(v)) => {
            emit(&v, cli.format);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
