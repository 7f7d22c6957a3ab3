//! Command-line front end: parses tree expressions, runs the algebraic
//! operations and the verification suites, and prints text or JSON.
//!
//! Exit codes: 0 on success, 1 when a `check` suite finds an identity
//! failure, 2 on usage or configuration errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use treedeform::applications::{antipode_lc, delta_na, delta_rc, delta_rn, AntipodeKind};
use treedeform::coproducts::{delta1, delta2, delta_dck};
use treedeform::grafting::{deformed_graft, graft, theta_lc, theta_inv};
use treedeform::index::{MultiIndex, Q, Scaling};
use treedeform::lincomb::{bilinear, pairing, LinComb};
use treedeform::plugging::{insert, plug, star1, star2, star_plain, VertexMode};
use treedeform::session::{EdgeKindConfig, SessionConfig};
use treedeform::suites;
use treedeform::text;
use treedeform::tree::{enumerate_trees, DecoratedTree, EdgeLabel, Forest, PlantedForest};

#[derive(Parser)]
#[command(name = "treedeform", version, about = "Exact algebra of decorated rooted trees")]
struct Cli {
    /// Path to a JSON session configuration
    #[arg(long, global = true)]
    config: Option<String>,
    /// Override the multi-index dimension
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Polynomial budget for truncated coproducts
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Order cap for the order-filtered coproduct
    #[arg(long, global = true)]
    order: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    All,
    Root,
    NonRoot,
}

#[derive(Subcommand)]
enum Command {
    /// List the basis trees at the configured desk scale
    Enumerate {
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Graft the first tree onto the second through a decorated edge
    Graft { sigma: String, edge: String, tau: String },
    /// Deformed grafting with binomial decoration transfers
    DeformGraft { sigma: String, edge: String, tau: String },
    /// Apply the decoration-shift isomorphism (or its inverse)
    Theta {
        expr: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Plug the first tree into vertices of the second
    Plug {
        sigma: String,
        tau: String,
        #[arg(long)]
        deformed: bool,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// Insert the first tree at vertices of the second
    Insert {
        sigma: String,
        tau: String,
        #[arg(long)]
        deformed: bool,
    },
    /// Associative products: 0 (planted forests), 1 (forests), 2 or plain (trees)
    Star { variant: String, left: String, right: String },
    /// Coproducts: dck, d2, d1, na, rc, rn
    Coproduct { variant: String, expr: String },
    /// Symmetry-factor pairing of two tree expressions
    Pair { left: String, right: String },
    /// Antipode on planted forests
    Antipode {
        expr: String,
        #[arg(long, default_value = "na")]
        variant: String,
    },
    /// Run a verification suite (or `all`)
    Check {
        suite: String,
        #[arg(long)]
        max_edges: Option<usize>,
    },
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    dimension: Option<usize>,
    scaling: Option<Vec<u32>>,
    edge_kinds: Option<Vec<EdgeKindFile>>,
    generators: Option<Vec<String>>,
    default_budget: Option<u64>,
    max_edges: Option<usize>,
    node_cap: Option<Vec<u32>>,
    edge_cap: Option<Vec<u32>>,
}

#[derive(Deserialize)]
struct EdgeKindFile {
    name: String,
    /// Rational degree, e.g. "2" or "-3/2"
    #[serde(default)]
    degree: Option<String>,
    #[serde(default)]
    integration: bool,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_config(cli: &Cli) -> Result<SessionConfig, String> {
    let mut cfg = SessionConfig::default();
    if let Some(path) = &cli.config {
        let raw = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let file: ConfigFile = serde_json::from_str(&raw).map_err(|e| format!("{path}: {e}"))?;
        if let Some(d) = file.dimension {
            cfg.dimension = d;
            cfg.scaling = Scaling::ones(d);
            cfg.node_cap = MultiIndex::new(vec![1; d]);
            cfg.edge_cap = MultiIndex::new(vec![1; d]);
        }
        if let Some(s) = file.scaling {
            cfg.scaling = Scaling::new(s);
        }
        if let Some(kinds) = file.edge_kinds {
            cfg.edge_kinds = kinds
                .into_iter()
                .map(|k| {
                    let degree = match k.degree {
                        None => Ok(Q::from_integer(0.into())),
                        Some(d) => d.parse::<Q>().map_err(|e| format!("degree {d:?}: {e}")),
                    }?;
                    Ok(EdgeKindConfig { name: k.name, degree, integration: k.integration })
                })
                .collect::<Result<_, String>>()?;
        }
        if let Some(g) = file.generators {
            cfg.generators = g;
        }
        if let Some(b) = file.default_budget {
            cfg.default_budget = b;
        }
        if let Some(m) = file.max_edges {
            cfg.max_edges = m;
        }
        if let Some(c) = file.node_cap {
            cfg.node_cap = MultiIndex::new(c);
        }
        if let Some(c) = file.edge_cap {
            cfg.edge_cap = MultiIndex::new(c);
        }
    }
    if let Some(d) = cli.dim {
        cfg.dimension = d;
        cfg.scaling = Scaling::ones(d);
        cfg.node_cap = MultiIndex::new(vec![1; d]);
        cfg.edge_cap = MultiIndex::new(vec![1; d]);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_edge(cfg: &SessionConfig, s: &str) -> Result<EdgeLabel, String> {
    let padded = format!("{s}->X^({})", vec!["0"; cfg.dimension].join(","));
    let lc = text::parse_planted_forest(cfg, &padded).map_err(|e| e.to_string())?;
    let (f, _) = lc.iter().next().ok_or("empty edge")?;
    Ok(f.trees()[0].edge.clone())
}

fn json_terms(terms: Vec<(String, Q)>) -> serde_json::Value {
    serde_json::json!({
        "schema": "treedeform/1",
        "terms": terms
            .iter()
            .map(|(b, c)| serde_json::json!({"coeff": text::format_q(c), "basis": b}))
            .collect::<Vec<_>>(),
    })
}

fn emit<B: Ord + Clone>(
    format: Format,
    x: &LinComb<B>,
    basis: impl Fn(&B) -> String,
) -> ExitCode {
    match format {
        Format::Text => println!("{}", text::format_lincomb(x, basis)),
        Format::Json => {
            let terms = x.iter().map(|(b, c)| (basis(b), c.clone())).collect();
            println!("{}", json_terms(terms));
        }
    }
    ExitCode::SUCCESS
}

fn parse_trees(cfg: &SessionConfig, s: &str) -> Result<LinComb<DecoratedTree>, String> {
    text::parse_tree(cfg, s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> ExitCode {
    let cfg = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let budget = cfg.budget(cli.budget);
    let tree_str = |t: &DecoratedTree| text::format_tree(&cfg, t);
    // coproduct legs follow the usual convention of writing the unit as 1
    let leg_str = |t: &DecoratedTree| {
        if t.is_unit() {
            "1".into()
        } else {
            text::format_tree(&cfg, t)
        }
    };
    let forest_str = |f: &Forest| text::format_forest(&cfg, f);
    let planted_str = |f: &PlantedForest| text::format_planted_forest(&cfg, f);

    macro_rules! try_parse {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return usage_error(e),
            }
        };
    }

    match cli.command {
        Command::Enumerate { max_edges } => {
            let trees = enumerate_trees(
                max_edges.unwrap_or(cfg.max_edges),
                &cfg.node_cap,
                &cfg.edge_cap,
                &cfg.kinds(),
            );
            match cli.format {
                Format::Text => {
                    for t in &trees {
                        println!("{}", tree_str(t));
                    }
                }
                Format::Json => {
                    let names: Vec<String> = trees.iter().map(|t| tree_str(t)).collect();
                    println!(
                        "{}",
                        serde_json::json!({"schema": "treedeform/1", "trees": names})
                    );
                }
            }
            ExitCode::SUCCESS
        }
        Command::Graft { sigma, edge, tau } => {
            let s = try_parse!(parse_trees(&cfg, &sigma));
            let t = try_parse!(parse_trees(&cfg, &tau));
            let e = try_parse!(parse_edge(&cfg, &edge));
            let out = bilinear(&s, &t, |a, b| graft(a, &e, b));
            emit(cli.format, &out, tree_str)
        }
        Command::DeformGraft { sigma, edge, tau } => {
            let s = try_parse!(parse_trees(&cfg, &sigma));
            let t = try_parse!(parse_trees(&cfg, &tau));
            let e = try_parse!(parse_edge(&cfg, &edge));
            let out = bilinear(&s, &t, |a, b| deformed_graft(a, &e, b));
            emit(cli.format, &out, tree_str)
        }
        Command::Theta { expr, inverse } => {
            let x = try_parse!(parse_trees(&cfg, &expr));
            let out = if inverse { theta_inv(&x) } else { theta_lc(&x) };
            emit(cli.format, &out, tree_str)
        }
        Command::Plug { sigma, tau, deformed, mode } => {
            let s = try_parse!(parse_trees(&cfg, &sigma));
            let t = try_parse!(parse_trees(&cfg, &tau));
            let m = match mode {
                Mode::All => VertexMode::All,
                Mode::Root => VertexMode::Root,
                Mode::NonRoot => VertexMode::NonRoot,
            };
            let out = bilinear(&s, &t, |a, b| plug(a, b, m, deformed));
            emit(cli.format, &out, tree_str)
        }
        Command::Insert { sigma, tau, deformed } => {
            let s = try_parse!(parse_trees(&cfg, &sigma));
            let t = try_parse!(parse_trees(&cfg, &tau));
            let out = bilinear(&s, &t, |a, b| insert(a, b, VertexMode::All, deformed));
            emit(cli.format, &out, tree_str)
        }
        Command::Star { variant, left, right } => match variant.as_str() {
            "0" => {
                let l = try_parse!(text::parse_planted_forest(&cfg, &left).map_err(|e| e.to_string()));
                let r = try_parse!(text::parse_planted_forest(&cfg, &right).map_err(|e| e.to_string()));
                let out = bilinear(&l, &r, treedeform::guin_oudom::star0);
                emit(cli.format, &out, planted_str)
            }
            "1" => {
                let l = try_parse!(text::parse_forest(&cfg, &left).map_err(|e| e.to_string()));
                let r = try_parse!(text::parse_forest(&cfg, &right).map_err(|e| e.to_string()));
                let out = bilinear(&l, &r, star1);
                emit(cli.format, &out, forest_str)
            }
            "2" | "plain" => {
                let l = try_parse!(parse_trees(&cfg, &left));
                let r = try_parse!(parse_trees(&cfg, &right));
                let f = if variant == "2" { star2 } else { star_plain };
                let out = bilinear(&l, &r, f);
                emit(cli.format, &out, tree_str)
            }
            other => usage_error(format!("unknown star variant {other:?}")),
        },
        Command::Coproduct { variant, expr } => match variant.as_str() {
            "dck" | "na" => {
                let x = try_parse!(text::parse_planted_forest(&cfg, &expr).map_err(|e| e.to_string()));
                let deg = cli.order.map(|r| {
                    let mut d = cfg.degree_assignment();
                    d.order_cap = Some(r);
                    d
                });
                let out = x.map(|f| {
                    if variant == "dck" {
                        delta_dck(f, &budget)
                    } else {
                        delta_na(f, &budget, deg.as_ref())
                    }
                });
                emit(cli.format, &out, |(l, r)| {
                    text::format_tensor_pair(planted_str(l), planted_str(r))
                })
            }
            "d2" | "rc" => {
                let x = try_parse!(parse_trees(&cfg, &expr));
                let out = x.map(|t| {
                    if variant == "d2" {
                        delta2(t, &budget)
                    } else {
                        delta_rc(t, &budget)
                    }
                });
                emit(cli.format, &out, |(l, r)| {
                    text::format_tensor_pair(leg_str(l), leg_str(r))
                })
            }
            "d1" | "rn" => {
                let x = try_parse!(parse_trees(&cfg, &expr));
                let out = x.map(|t| {
                    if variant == "d1" {
                        delta1(t, &budget)
                    } else {
                        delta_rn(t, &budget)
                    }
                });
                emit(cli.format, &out, |(l, r)| {
                    text::format_tensor_pair(forest_str(l), leg_str(r))
                })
            }
            other => usage_error(format!("unknown coproduct {other:?}")),
        },
        Command::Pair { left, right } => {
            let l = try_parse!(parse_trees(&cfg, &left));
            let r = try_parse!(parse_trees(&cfg, &right));
            let value = pairing(&l, &r);
            match cli.format {
                Format::Text => println!("{}", text::format_q(&value)),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"schema": "treedeform/1", "value": text::format_q(&value)})
                ),
            }
            ExitCode::SUCCESS
        }
        Command::Antipode { expr, variant } => {
            let kind = match variant.as_str() {
                "na" => AntipodeKind::Na,
                "dck" => AntipodeKind::Dck,
                other => return usage_error(format!("unknown antipode variant {other:?}")),
            };
            let x = try_parse!(text::parse_planted_forest(&cfg, &expr).map_err(|e| e.to_string()));
            let out = antipode_lc(&x, &budget, kind);
            emit(cli.format, &out, planted_str)
        }
        Command::Check { suite, max_edges } => {
            let mut cfg = cfg;
            if let Some(m) = max_edges {
                cfg.max_edges = m;
            }
            let reports = if suite == "all" {
                suites::run_all(&cfg)
            } else {
                match suites::run_suite(&cfg, &suite) {
                    Some(r) => vec![r],
                    None => {
                        return usage_error(format!(
                            "unknown suite {suite:?}; available: {}, all",
                            suites::SUITE_NAMES.join(", ")
                        ))
                    }
                }
            };
            let all_passed = reports.iter().all(|r| r.passed());
            match cli.format {
                Format::Text => {
                    for r in &reports {
                        println!("{}", r.line());
                    }
                }
                Format::Json => {
                    let items: Vec<_> = reports
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "name": r.name,
                                "passed": r.passed(),
                                "checks": r.checks,
                                "failures": r.failures,
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"schema": "treedeform/1", "suites": items})
                    );
                }
            }
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
