//! Command-line front end. [`run`] does all the work and returns the text
//! destined for stdout/stderr plus an exit code, so it can be tested without
//! spawning a process.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalogue::{run_catalogue, DEFAULT_CATALOGUE_ORDER};
use crate::cayley::{export_dot, group_ring_product_check, is_perfect_code_graph, CayleyGraph, ConnectionSet};
use crate::classify::{decide, enumerate_codes, is_code_perfect, Limits, Mode};
use crate::dsl::parse_spec;
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::families::{build_group_with, BuildOptions};
use crate::group::{FiniteGroup, Validation};
use crate::labels::resolve_list;
use crate::subgroups::{all_subgroups, generated_subgroup, is_normal, Subgroup};

#[derive(Debug, Parser)]
#[command(
    name = "perfcode",
    version,
    about = "Subgroup perfect codes in Cayley graphs of finite groups"
)]
pub struct Cli {
    /// Check associativity exhaustively regardless of group order.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Largest group order for subgroup enumeration (overrides PERFCODE_ORDER_BOUND).
    #[arg(long, global = true, value_name = "N")]
    pub order_bound: Option<usize>,

    /// Node budget for the transversal search.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is every subgroup a perfect code?
    Classify {
        spec: String,
        /// Also decide every subgroup and cross-check with exhaustive search.
        #[arg(long)]
        verify: bool,
    },
    /// List all subgroups as JSON lines.
    Subgroups { spec: String },
    /// Decide every subgroup, one JSON line each.
    Codes { spec: String },
    /// Decide whether the subgroup generated by GENS is a perfect code.
    Decide {
        spec: String,
        #[arg(long, value_name = "GENS")]
        subgroup: String,
    },
    /// Like `decide`, with the witness spelled out in labels and re-checked.
    Witness {
        spec: String,
        #[arg(long, value_name = "GENS")]
        subgroup: String,
    },
    /// Check a connection set and code by group-ring product and by graph domination.
    Verify {
        spec: String,
        #[arg(long = "s", value_name = "ELEMENTS")]
        connection: String,
        #[arg(long, value_name = "ELEMENTS")]
        code: String,
    },
    /// Write Cay(G, S) as Graphviz DOT.
    Graph {
        spec: String,
        #[arg(long = "s", value_name = "ELEMENTS")]
        connection: String,
        #[arg(long, value_name = "ELEMENTS", default_value = "")]
        highlight: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Cross-check every built-in group up to the given order.
    Catalogue {
        #[arg(long, default_value_t = DEFAULT_CATALOGUE_ORDER)]
        max_order: usize,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, positive: bool) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code: if positive { 0 } else { 1 },
        }
    }

    fn error(e: &Error) -> Self {
        let body = json!({ "error": e.kind(), "message": e.to_string() });
        Output {
            stdout: String::new(),
            stderr: format!("{body}\n"),
            code: 2,
        }
    }
}

pub fn run(cli: &Cli) -> Output {
    match execute(cli) {
        Ok(out) => out,
        Err(e) => Output::error(&e),
    }
}

fn limits(cli: &Cli) -> Result<Limits> {
    let mut limits = Limits::from_env()?;
    if let Some(b) = cli.order_bound {
        limits.subgroup_bound = b;
    }
    if let Some(b) = cli.budget {
        limits.node_budget = b;
    }
    Ok(limits)
}

fn load(cli: &Cli, spec: &str) -> Result<FiniteGroup> {
    let opts = BuildOptions {
        validation: if cli.strict {
            Validation::Strict
        } else {
            Validation::Standard
        },
        ..BuildOptions::default()
    };
    build_group_with(&parse_spec(spec)?, &opts)
}

fn element_set(g: &FiniteGroup, text: &str) -> Result<ElementSet> {
    ElementSet::from_ids(g.order(), resolve_list(g, text)?)
}

fn labels_of(g: &FiniteGroup, ids: impl IntoIterator<Item = ElementId>) -> Vec<String> {
    ids.into_iter().map(|e| g.label(e).to_string()).collect()
}

fn subgroup_json(g: &FiniteGroup, h: &Subgroup) -> Value {
    json!({
        "order": h.order(),
        "elements": h.elements(),
        "labels": h.labels(g),
    })
}

fn execute(cli: &Cli) -> Result<Output> {
    let limits = limits(cli)?;
    match &cli.command {
        Command::Classify { spec, verify } => {
            let g = load(cli, spec)?;
            let mode = if *verify { Mode::Verify } else { Mode::Fast };
            let d = is_code_perfect(&g, mode, &limits)?;
            let body = json!({
                "group": spec,
                "order": g.order(),
                "code_perfect": d.code_perfect,
                "reason": d.reason,
                "order4_element": d.order4_element.map(|y| g.label(y).to_string()),
                "rejected_subgroup": d.rejected_subgroup.as_ref().map(|h| subgroup_json(&g, h)),
                "subgroups_checked": d.subgroups_checked,
            });
            Ok(Output::ok(format!("{body}\n"), d.code_perfect))
        }
        Command::Subgroups { spec } => {
            let g = load(cli, spec)?;
            let mut out = String::new();
            for h in all_subgroups(&g, limits.subgroup_bound)? {
                let mut line = subgroup_json(&g, &h);
                line["normal"] = json!(is_normal(&g, &h));
                let _ = writeln!(out, "{line}");
            }
            Ok(Output::ok(out, true))
        }
        Command::Codes { spec } => {
            let g = load(cli, spec)?;
            let mut out = String::new();
            for (h, d) in enumerate_codes(&g, &limits)? {
                let mut line = subgroup_json(&g, &h);
                line["decision"] = serde_json::to_value(&d).expect("decision serializes");
                let _ = writeln!(out, "{line}");
            }
            Ok(Output::ok(out, true))
        }
        Command::Decide { spec, subgroup } => {
            let g = load(cli, spec)?;
            let h = generated_subgroup(&g, resolve_list(&g, subgroup)?)?;
            let d = decide(&g, &h, &limits)?;
            let body = serde_json::to_string(&d).expect("decision serializes");
            Ok(Output::ok(format!("{body}\n"), d.verdict))
        }
        Command::Witness { spec, subgroup } => {
            let g = load(cli, spec)?;
            let h = generated_subgroup(&g, resolve_list(&g, subgroup)?)?;
            let d = decide(&g, &h, &limits)?;
            let mut body = serde_json::to_value(&d).expect("decision serializes");
            body["subgroup"] = subgroup_json(&g, &h);
            match &d.witness {
                Some(s) => {
                    body["witness_labels"] = json!(labels_of(&g, s.elements().iter()));
                    body["multiplicity"] = json!(group_ring_product_check(&g, s, h.elements()));
                }
                None => {
                    body["witness_labels"] = Value::Null;
                    body["multiplicity"] = Value::Null;
                }
            }
            Ok(Output::ok(format!("{body}\n"), d.witness.is_some()))
        }
        Command::Verify { spec, connection, code } => {
            let g = load(cli, spec)?;
            let s = ConnectionSet::new(&g, element_set(&g, connection)?)?;
            let c = element_set(&g, code)?;
            let mu = group_ring_product_check(&g, &s, &c);
            let ring = mu.is_all_ones();
            let graph = is_perfect_code_graph(&CayleyGraph::new(&g, s), &c);
            let body = json!({
                "multiplicity": mu,
                "group_ring": ring,
                "graph_domination": graph,
                "agreement": ring == graph,
            });
            if ring != graph {
                return Err(Error::Disagreement(format!(
                    "group-ring product says {ring}, graph domination says {graph}"
                )));
            }
            Ok(Output::ok(format!("{body}\n"), ring))
        }
        Command::Graph {
            spec,
            connection,
            highlight,
            out,
        } => {
            let g = load(cli, spec)?;
            let graph = CayleyGraph::new(&g, ConnectionSet::new(&g, element_set(&g, connection)?)?);
            let highlight = element_set(&g, highlight)?;
            let dot = export_dot(&graph, &highlight);
            match out {
                None => Ok(Output::ok(dot, true)),
                Some(path) => {
                    std::fs::write(path, &dot).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    let body = json!({
                        "path": path,
                        "nodes": graph.vertex_count(),
                        "edges": graph.edge_count(),
                        "highlighted": highlight.len(),
                    });
                    Ok(Output::ok(format!("{body}\n"), true))
                }
            }
        }
        Command::Catalogue { max_order } => {
            let rows = run_catalogue(*max_order, &limits);
            let mut out = String::new();
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in &rows {
                let verdict = match r.code_perfect {
                    Some(true) => "code-perfect",
                    Some(false) => "not code-perfect",
                    None => "-",
                };
                let _ = write!(
                    out,
                    "{} {:width$} order {:>3}  {:<16}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    r.order,
                    verdict,
                );
                if let Some(n) = r.subgroups {
                    let _ = write!(out, "  subgroups {n}");
                }
                if let Some(e) = &r.error {
                    let _ = write!(out, "  error: {e}");
                }
                out.push('\n');
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            let _ = writeln!(
                out,
                "{} groups, {} passed, {} failed",
                rows.len(),
                rows.len() - failed,
                failed
            );
            Ok(Output::ok(out, failed == 0))
        }
    }
}
