use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use normset_lab::class_groups::class_group;
use normset_lab::hfd::{carlitz_verdict, classification_check, elasticity_via_davenport, order_hfd_witness, HfdError};
use normset_lab::monoid::{davenport, elasticity_window, AbelianGroup};
use normset_lab::normset::{
    factor_in_normset, irreducibles_up_to, is_saturated, is_strictly_saturated_window, is_ufd, norm_group_window, Answer,
    BackendPolicy, NormsetHandle,
};
use normset_lab::quadratic::{order_fundamental_unit, OrderMonoid, QuadElem, QuadraticOrder};
use normset_lab::valnet::{self, Index, ValNet};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "normset-lab", version, about = "Norms, normsets, class groups and factorization in quadratic orders")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Field {
    /// Squarefree integer d of the field Q(sqrt(d)).
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
}

#[derive(Args)]
struct Order {
    #[command(flatten)]
    field: Field,
    /// Conductor of the order.
    #[arg(long, default_value_t = 1)]
    n: i64,
}

impl Order {
    fn build(&self) -> Result<QuadraticOrder, String> {
        if self.n < 1 {
            return Err(format!("--n must be at least 1, got {}", self.n));
        }
        QuadraticOrder::new(self.field.d, self.n).map_err(|e| format!("--d {}: {e}", self.field.d))
    }
}

impl Field {
    fn build(&self) -> Result<QuadraticOrder, String> {
        QuadraticOrder::maximal(self.d).map_err(|e| format!("--d {}: {e}", self.d))
    }
}

fn parse_bound(text: &str) -> Result<u64, String> {
    let b: u64 = text.parse().map_err(|_| format!("'{text}' is not a non-negative integer"))?;
    if b < 4 {
        return Err(format!("bound must be at least 4, got {b}"));
    }
    Ok(b)
}

#[derive(Args)]
struct Bound {
    /// Search bound for window computations.
    #[arg(long, env = "NORMSET_LAB_BOUND", default_value = "500", value_parser = parse_bound)]
    bound: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Class group of the maximal order.
    Classgroup(Field),
    /// Norm, trace and conjugate of an element `a+b*w`.
    Norm {
        #[command(flatten)]
        order: Order,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Membership, atoms and factorizations in the normset.
    #[command(subcommand)]
    Normset(NormsetCommand),
    /// Unique factorization through norms of small primes.
    Ufd(Field),
    /// Saturation, strict-saturation window and norm-group window.
    Saturation {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        bound: Bound,
    },
    /// Half-factoriality of an imaginary order.
    Hfd(Order),
    /// The imaginary quadratic HFD classification table.
    ClassifyHfd,
    /// Elasticity from the Davenport constant and over element windows.
    Elasticity {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        bound: Bound,
    },
    /// Davenport constant of a finite abelian group given by cyclic orders.
    Davenport {
        /// Comma-separated cyclic orders, e.g. `3,3`.
        #[arg(long)]
        group: String,
    },
    /// Queries against a net-monoid description file.
    Valnet {
        file: PathBuf,
        /// Query name followed by its arguments, e.g. `chain w1 10`. Quote nets containing spaces.
        #[arg(required = true, num_args = 1..)]
        query: Vec<String>,
        /// Depth limit for searches in infinite divisor posets.
        #[arg(long, default_value_t = 50)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum NormsetCommand {
    /// Whether a value is the norm of an element.
    Member {
        #[command(flatten)]
        order: Order,
        #[command(flatten)]
        bound: Bound,
        #[arg(long, allow_hyphen_values = true)]
        value: i64,
    },
    /// Atoms of the normset up to the bound.
    Atoms {
        #[command(flatten)]
        order: Order,
        #[command(flatten)]
        bound: Bound,
    },
    /// Every factorization of a value into normset atoms.
    Factor {
        #[command(flatten)]
        order: Order,
        #[command(flatten)]
        bound: Bound,
        #[arg(long, allow_hyphen_values = true)]
        value: i64,
    },
}

/// A finished report: its body and whether a verdict stayed unknown.
struct Report {
    command: &'static str,
    body: Value,
    unknown: bool,
}

impl Report {
    fn new(command: &'static str, body: Value) -> Self {
        Report { command, body, unknown: false }
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run(command: Command) -> Result<Report, String> {
    Ok(match command {
        Command::Classgroup(field) => {
            let order = field.build()?;
            let cg = class_group(order.discriminant()).map_err(|e| e.to_string())?;
            Report::new(
                "classgroup",
                json!({
                    "order": to_json(&order),
                    "discriminant": cg.discriminant,
                    "kind": to_json(&cg.kind),
                    "class_number": cg.class_number(),
                    "structure": cg.structure.to_string(),
                    "classes": to_json(&cg.classes),
                }),
            )
        }
        Command::Norm { order, elem } => {
            let order = order.build()?;
            let x = QuadElem::parse(order, &elem).map_err(|e| format!("--elem {elem}: {e}"))?;
            let mut body = json!({
                "order": to_json(&order),
                "element": to_json(&x),
                "norm": x.norm().to_string(),
                "trace": x.trace().to_string(),
                "conjugate": to_json(&x.conj()),
                "is_unit": x.is_unit(),
            });
            if !order.is_imaginary() {
                let unit = order_fundamental_unit(&order).map_err(|e| e.to_string())?;
                body["fundamental_unit"] = to_json(&unit.unit);
                body["fundamental_unit_norm"] = json!(unit.norm_sign);
            }
            Report::new("norm", body)
        }
        Command::Normset(cmd) => run_normset(cmd)?,
        Command::Ufd(field) => {
            let cert = is_ufd(&field.build()?).map_err(|e| e.to_string())?;
            Report::new("ufd", to_json(&cert))
        }
        Command::Saturation { field, bound } => {
            let order = field.build()?;
            let sat = is_saturated(&order).map_err(|e| e.to_string())?;
            let strict = is_strictly_saturated_window(&order, bound.bound).map_err(|e| e.to_string())?;
            let group = norm_group_window(&order, bound.bound).map_err(|e| e.to_string())?;
            Report::new(
                "saturation",
                json!({
                    "order": to_json(&order),
                    "saturated": to_json(&sat),
                    "strict_window": to_json(&strict),
                    "norm_group_window": to_json(&group),
                }),
            )
        }
        Command::Hfd(order) => {
            let order = order.build()?;
            let verdict = if order.is_maximal() { carlitz_verdict(&order) } else { order_hfd_witness(&order) };
            match verdict {
                Ok(v) => Report::new("hfd", to_json(&v)),
                Err(HfdError::WitnessSearchExhausted { bound, .. }) => Report {
                    command: "hfd",
                    body: json!({"order": to_json(&order), "verdict": "not_hfd", "witness": null, "bound_used": bound}),
                    unknown: true,
                },
                Err(e) => return Err(e.to_string()),
            }
        }
        Command::ClassifyHfd => {
            let report = classification_check().map_err(|e| e.to_string())?;
            Report::new("classify-hfd", json!({"all_pass": report.all_pass(), "rows": to_json(&report.rows)}))
        }
        Command::Elasticity { field, bound } => {
            let order = field.build()?;
            let rho = elasticity_via_davenport(&order).map_err(|e| e.to_string())?;
            let ns = NormsetHandle::new(order).map_err(|e| e.to_string())?;
            let in_normset = elasticity_window(&ns, bound.bound);
            let mut body = json!({
                "order": to_json(&order),
                "bound": bound.bound,
                "davenport": rho.to_string(),
                "normset_window": in_normset.value.to_string(),
                "normset_witness": in_normset.witness.as_ref().map(|w| w.0),
            });
            if order.is_imaginary() {
                let monoid = OrderMonoid::new(order).map_err(|e| e.to_string())?;
                let in_ring = elasticity_window(&monoid, bound.bound);
                body["ring_window"] = json!(in_ring.value.to_string());
                body["ring_witness"] = to_json(&in_ring.witness.as_ref().map(|w| w.0));
            }
            Report::new("elasticity", body)
        }
        Command::Davenport { group } => {
            let orders: Vec<u64> = group
                .split(',')
                .map(|t| t.trim().parse::<u64>().ok().filter(|&n| n >= 1))
                .collect::<Option<_>>()
                .ok_or_else(|| format!("--group {group}: expected comma-separated positive integers"))?;
            let g = AbelianGroup::from_cyclic_orders(&orders);
            let cert = davenport(&g).map_err(|e| e.to_string())?;
            Report::new(
                "davenport",
                json!({"group": g.to_string(), "value": cert.value, "witness": to_json(&cert.witness)}),
            )
        }
        Command::Valnet { file, query, depth } => run_valnet(&file, &query, depth)?,
    })
}

fn run_normset(cmd: NormsetCommand) -> Result<Report, String> {
    let handle = |order: &Order, bound: &Bound| -> Result<NormsetHandle, String> {
        let order = order.build()?;
        let policy = NormsetHandle::new(order).map_err(|e| e.to_string())?.policy();
        NormsetHandle::with_policy(order, policy, bound.bound).map_err(|e| e.to_string())
    };
    Ok(match cmd {
        NormsetCommand::Member { order, bound, value } => {
            let ns = handle(&order, &bound)?;
            let v = ns.contains(value).map_err(|e| format!("--value {value}: {e}"))?;
            let unknown = v.answer == Answer::Unknown;
            Report { command: "normset member", body: to_json(&v), unknown }
        }
        NormsetCommand::Atoms { order, bound } => {
            let ns = handle(&order, &bound)?;
            let atoms = irreducibles_up_to(&ns, bound.bound);
            let backend: BackendPolicy = ns.policy();
            Report::new(
                "normset atoms",
                json!({"order": to_json(&ns.order()), "bound": bound.bound, "backend": to_json(&backend), "atoms": atoms}),
            )
        }
        NormsetCommand::Factor { order, bound, value } => {
            let ns = handle(&order, &bound)?;
            let set = factor_in_normset(&ns, value).map_err(|e| format!("--value {value}: {e}"))?;
            let lengths: Vec<usize> = set.lengths().into_iter().collect();
            Report {
                command: "normset factor",
                body: json!({
                    "order": to_json(&ns.order()),
                    "value": value,
                    "factorizations": set.factorizations.iter().map(|f| f.atoms().to_vec()).collect::<Vec<_>>(),
                    "lengths": lengths,
                    "complete": set.complete,
                }),
                unknown: !set.complete,
            }
        }
    })
}

fn run_valnet(file: &PathBuf, query: &[String], depth: usize) -> Result<Report, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let m = valnet::parse_monoid(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let set = m.index_set();
    let arity = match query[0].as_str() {
        "idempotent-cover" => 0,
        "member" | "length" | "bounded" | "max" | "sb" | "factor" | "ffd" => 1,
        _ => 2,
    };
    if query.len() != arity + 1 {
        return Err(format!("query '{}' takes {arity} argument(s), got {}", query[0], query.len() - 1));
    }
    let net = |i: usize| -> Result<ValNet, String> {
        let t = query.get(i).ok_or_else(|| format!("query '{}' needs more arguments", query[0]))?;
        valnet::parse_net(set, t).map_err(|e| format!("'{t}': {e}"))
    };
    let count = |i: usize| -> Result<usize, String> {
        let t = query.get(i).ok_or_else(|| format!("query '{}' needs a count", query[0]))?;
        t.parse().map_err(|_| format!("'{t}' is not a count"))
    };
    let err = |e: valnet::ValnetError| e.to_string();
    let search = |name: &'static str, s: Value, exhausted: bool| Report {
        command: "valnet",
        body: json!({"query": name, "depth": depth, "result": s}),
        unknown: exhausted,
    };
    let plain = |name: &'static str, v: Value| Report::new("valnet", json!({"query": name, "depth": depth, "result": v}));
    Ok(match query[0].as_str() {
        "member" => plain("member", json!(m.contains(&net(1)?).map_err(err)?)),
        "add" => plain("add", to_json(&valnet::net_add(&net(1)?, &net(2)?).map_err(err)?)),
        "divides" => plain("divides", json!(valnet::divides(&net(1)?, &net(2)?).map_err(err)?)),
        "length" => plain("length", to_json(&net(1)?.length())),
        "bounded" => {
            let b = net(1)?;
            plain(
                "bounded",
                json!({"bounded": b.is_bounded(), "uniformly_bounded": b.is_uniformly_bounded(), "eta": b.value_bound().to_string()}),
            )
        }
        "max" => plain("max", to_json(&net(1)?.max_of())),
        "sb" => {
            let b = net(1)?;
            let s = valnet::s_b(&m, &b, depth).map_err(err)?;
            let inf = valnet::inf_s_b(&m, &b, depth).map_err(err)?;
            let bound = valnet::bfd_bound(&m, &b, depth).map_err(err)?;
            plain("sb", json!({"lengths": to_json(&s.lengths), "complete": s.complete, "inf": to_json(&inf), "bfd_bound": bound}))
        }
        "factor" => {
            let s = valnet::find_atomic_factorization(&m, &net(1)?, depth).map_err(err)?;
            search("factor", to_json(&s), s.is_depth_exhausted())
        }
        "chain" => {
            let chain = valnet::accp_chain(&m, &net(1)?, count(2)?).map_err(err)?;
            plain("chain", to_json(&chain))
        }
        "comaximal" => {
            let s = valnet::comaximal_family(&m, &net(1)?, count(2)?, depth).map_err(err)?;
            search("comaximal", to_json(&s), s.is_depth_exhausted())
        }
        "cover" => {
            let b = net(1)?;
            let labels = query.get(2).ok_or("query 'cover' needs a comma-separated index list")?;
            let indices: Vec<Index> = labels
                .split(',')
                .map(|l| set.index_of(l.trim()).ok_or_else(|| format!("unknown index '{l}'")))
                .collect::<Result<_, _>>()?;
            plain("cover", json!(valnet::finite_cover_check(&m, &b, &indices, depth).map_err(err)?))
        }
        "idempotent-cover" => plain("idempotent-cover", json!(valnet::idempotent_cover_check(&m))),
        "ffd" => {
            let s = valnet::ffd_window(&m, &net(1)?, depth).map_err(err)?;
            search("ffd", to_json(&s), s.is_depth_exhausted())
        }
        other => return Err(format!("unknown valnet query '{other}'")),
    })
}

fn with_header(report: &Report) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(report.command));
    map.insert("unknown".into(), json!(report.unknown));
    match &report.body {
        Value::Object(body) => map.extend(body.clone()),
        other => {
            map.insert("result".into(), other.clone());
        }
    }
    Value::Object(map)
}

/// `key: value` lines, nested objects indented.
fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render_text(item, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let report = match run(cli.command) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let value = with_header(&report);
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
        Format::Text => {
            let mut out = String::new();
            render_text(&value, 0, &mut out);
            out
        }
    };
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    if report.unknown {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
