use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use tropex::cones::ConeComplex;
use tropex::io::{self, fan_from_json, read_json, tagged, write_json};
use tropex::moduli::DEFAULT_BUDGET;

mod docs;

const EXIT_INVALID: u8 = 2;
const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 64;

/// Exact tropical and polyhedral computations on JSON documents.
#[derive(Parser)]
#[command(name = "tropex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Where to write the JSON result; stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Upper bound on worker threads for enumerations.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Common refinement of two fans with the same support.
    Refine {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Star of a ray, given by its index in the sorted ray list.
    Star {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        ray: usize,
    },
    /// Minimal polyhedral structure of an embedded graph.
    Minimize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        fan: PathBuf,
    },
    /// Cone over an embedded graph with integral vertices.
    Conify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        fan: PathBuf,
    },
    /// Least dilation making every vertex integral.
    Dilation {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Tropical curve of a polynomial, refined along a fan (default: the plane).
    Tropicalize {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        fan: Option<PathBuf>,
    },
    /// Balancing defects of a weighted curve.
    Balance {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Flat limit: minimal structure, base change order and expansion.
    Limit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        fan: PathBuf,
    },
    /// Dual complex of the expansion of an embedded graph.
    Expand {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        fan: PathBuf,
    },
    /// Cone of realizations of a combinatorial graph.
    Xg {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        fan: PathBuf,
    },
    /// Image types of realizations of a combinatorial graph.
    Surjections {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        fan: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Cone-space fragment over a closed family of graph types.
    Modspace {
        #[arg(long, conflicts_with = "lines", required_unless_present = "lines")]
        family: Option<PathBuf>,
        /// Build the family of tropical lines from apexes in [-R, R]².
        #[arg(long)]
        lines: Option<i64>,
        #[arg(long)]
        fan: Option<PathBuf>,
    },
    /// Secondary fan of dΔ₂, or the subdivision induced by heights.
    Secondary {
        #[arg(long)]
        d: usize,
        /// JSON array of rational heights, one per lattice point.
        #[arg(long)]
        heights: Option<PathBuf>,
        /// Alias of --out.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Recompute a document from its embedded inputs and compare.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        fan: Option<PathBuf>,
    },
}

/// A computed document and whether it passed its own checks.
struct Outcome {
    doc: Value,
    valid: bool,
    summary: String,
}

/// An input path that does not exist; reported like a bad flag.
#[derive(Debug, thiserror::Error)]
#[error("no such input file: {0}")]
struct MissingInput(String);

fn load(path: &Path) -> Result<Value> {
    if !path.exists() {
        return Err(MissingInput(path.display().to_string()).into());
    }
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(read_json(&text)?)
}

fn load_fan(path: &Path) -> Result<ConeComplex> {
    Ok(fan_from_json(&load(path)?)?)
}

fn count(doc: &Value, key: &str) -> usize {
    doc[key].as_array().map_or(0, Vec::len)
}

fn ok(doc: Value, summary: String) -> Outcome {
    Outcome {
        doc,
        valid: true,
        summary,
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::Refine { a, b } => {
            let doc = docs::refine(&load_fan(a)?, &load_fan(b)?)?;
            let s = format!("refine: {} maximal cones", count(&doc, "cones"));
            ok(doc, s)
        }
        Command::Star { fan, ray } => {
            let doc = docs::star(&load_fan(fan)?, *ray)?;
            let s = format!("star: {} maximal cones", count(&doc, "cones"));
            ok(doc, s)
        }
        Command::Minimize { graph, fan } => {
            let doc = docs::minimize(&io::graph_from_json(&load(graph)?)?, &load_fan(fan)?)?;
            let s = format!(
                "minimize: {} vertices, {} edges, {} rays",
                count(&doc, "vertices"),
                count(&doc, "edges"),
                count(&doc, "rays")
            );
            ok(doc, s)
        }
        Command::Conify { graph, fan } => {
            let doc = docs::conify(&io::graph_from_json(&load(graph)?)?, &load_fan(fan)?)?;
            let s = format!("conify: {} maximal cones", count(&doc, "cones"));
            ok(doc, s)
        }
        Command::Dilation { graph } => {
            let doc = docs::dilation(&io::graph_from_json(&load(graph)?)?)?;
            let s = format!("dilation: b = {}", doc["b"]);
            ok(doc, s)
        }
        Command::Tropicalize { poly, fan } => {
            let fan = docs::default_fan(fan.as_deref().map(load_fan).transpose()?);
            let doc = docs::tropicalize(&io::polynomial_from_json(&load(poly)?)?, &fan)?;
            let s = format!(
                "tropicalize: {} vertices, {} edges, {} rays",
                count(&doc, "vertices"),
                count(&doc, "edges"),
                count(&doc, "rays")
            );
            ok(doc, s)
        }
        Command::Balance { curve } => {
            let doc = docs::balance(&io::curve_from_json(&load(curve)?)?);
            let valid = doc["balanced"] == json!(true);
            let summary = format!("balance: {} defects", count(&doc, "defects"));
            Outcome {
                doc,
                valid,
                summary,
            }
        }
        Command::Limit { graph, fan } => {
            let doc = docs::limit(&io::graph_from_json(&load(graph)?)?, &load_fan(fan)?)?;
            let s = format!(
                "limit: b = {}, {} components",
                doc["base_change_order"],
                count(&doc["expansion"], "components")
            );
            ok(doc, s)
        }
        Command::Expand { graph, fan } => {
            let doc = docs::expand(&io::graph_from_json(&load(graph)?)?, &load_fan(fan)?)?;
            let s = format!(
                "expand: {} components, {} double divisors",
                count(&doc, "components"),
                count(&doc, "double_divisors")
            );
            ok(doc, s)
        }
        Command::Xg { graph, fan } => {
            let doc = docs::xg(
                &io::combinatorial_from_json(&load(graph)?)?,
                &load_fan(fan)?,
            )?;
            let s = format!("xg: {} rays", count(&doc["cone"], "rays"));
            ok(doc, s)
        }
        Command::Surjections { graph, fan, budget } => {
            let doc = docs::surjections(
                &io::combinatorial_from_json(&load(graph)?)?,
                &load_fan(fan)?,
                *budget,
            )?;
            let s = format!(
                "surjections: {} image types over {} cells",
                count(&doc, "types"),
                doc["cells"]
            );
            ok(doc, s)
        }
        Command::Modspace { family, lines, fan } => {
            let fan = docs::default_fan(fan.as_deref().map(load_fan).transpose()?);
            let fam = match (family, lines) {
                (Some(p), _) => docs::family_from_json(&load(p)?)?,
                (None, Some(r)) => docs::line_family(&fan, *r)?,
                (None, None) => unreachable!("clap requires one of --family and --lines"),
            };
            let (doc, _) = docs::modspace(&fan, fam)?;
            let s = format!(
                "modspace: {} graph types, {} cones, {} face morphisms",
                count(&doc, "family"),
                count(&doc, "cones"),
                count(&doc, "morphisms")
            );
            ok(doc, s)
        }
        Command::Secondary {
            d, heights, budget, ..
        } => match heights {
            Some(p) => {
                let h = io::qvec_from_json(&load(p)?)?;
                let doc = docs::subdivision(*d, &h)?;
                let s = format!("secondary: {} cells", count(&doc, "cells"));
                ok(doc, s)
            }
            None => {
                let (doc, valid) = docs::secondary(*d, *budget)?;
                let summary = format!("secondary: {} maximal cones", doc["count"]);
                Outcome {
                    doc,
                    valid,
                    summary,
                }
            }
        },
        Command::Validate { input, fan } => {
            let doc = load(input)?;
            let kind = io::schema_kind(&doc)?;
            let hint = fan.as_deref().map(load_fan).transpose()?;
            let mut problems = docs::semantic_problems(&kind, &doc);
            match docs::recompute(&kind, &doc, hint.as_ref()) {
                Ok(again) if again == doc => {}
                Ok(_) => problems.push("the document differs from its recomputation".into()),
                Err(e) => problems.push(format!("{e:#}")),
            }
            let valid = problems.is_empty();
            let summary = format!("validate: {kind} {}", if valid { "ok" } else { "invalid" });
            Outcome {
                doc: tagged(
                    "validation",
                    json!({"kind": kind, "valid": valid, "problems": problems}),
                ),
                valid,
                summary,
            }
        }
    })
}

fn error_kind(e: &tropex::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{'])
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn emit(cli: &Cli, doc: &Value, summary: &str) -> Result<()> {
    let out = match &cli.command {
        Command::Secondary {
            report: Some(r), ..
        } => Some(r),
        _ => cli.out.as_ref(),
    };
    match out {
        Some(path) => {
            fs::write(path, write_json(doc))
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{}", write_json(doc));
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli) {
        Ok(o) => {
            if let Err(e) = emit(&cli, &o.doc, &o.summary) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            if o.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INVALID)
            }
        }
        Err(e) => match e.downcast_ref::<tropex::Error>() {
            Some(te) => {
                let report = tagged(
                    "error",
                    json!({"error": error_kind(te), "message": te.to_string()}),
                );
                let _ = emit(&cli, &report, &format!("error: {te}"));
                ExitCode::from(EXIT_INVALID)
            }
            None if e.is::<MissingInput>() => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(EXIT_INTERNAL)
            }
        },
    }
}
