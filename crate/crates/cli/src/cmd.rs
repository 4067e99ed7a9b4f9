//! Command-line parsing and dispatch.
//!
//! Exit codes: 0 success, 1 usage, parse or I/O error, 2 mathematical
//! failure (non-contractible graph, invalid quotient, failed gluing).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use dualgraph_core::catalog::{check_elephant, glue, template, ElephantGraph, GermKind, GermTemplateSpec, Matching, TemplateParams};
use dualgraph_core::k2a::{is_feasible, search, K2AConfig, SearchMode};
use dualgraph_core::quotient::CyclicQuotient;

use crate::dot::emit_dot;
use crate::dsl::{parse, render, Context, GraphDocument};
use crate::report::{self, analyze, hj_report, k2a_report, to_json, ConfigJson, GlueReport, SearchReport, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dualgraph", version, about = "Intersection theory on weighted dual graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Codiscrepancy, degrees and Dynkin data of a graph file.
    Analyze {
        file: PathBuf,
        /// JSON report (the default).
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Graphviz output instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Writes the elephant graph of a germ template.
    Template {
        /// One of IC, IIB, kAD, k3A, k2A.
        kind: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glues two elephant graphs along white components.
    Glue {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        comp1: usize,
        #[arg(long)]
        comp2: usize,
        /// Traverse the second component backwards.
        #[arg(long)]
        flip: bool,
    },
    /// Hirzebruch-Jung data of 1/n(1,q).
    Hj { n: u64, q: u64 },
    /// Feasibility of one two-curve configuration.
    K2a {
        #[arg(long, value_parser = parse_triple)]
        p0: (u64, u64, u64),
        #[arg(long, value_parser = parse_triple)]
        p1: (u64, u64, u64),
        #[arg(long, value_parser = parse_triple)]
        p2: (u64, u64, u64),
    },
    /// Exhaustive sweep of two-curve configurations.
    K2aSearch {
        #[arg(long)]
        max_m: u64,
        #[arg(long)]
        max_p: u64,
        /// Drop the index-two restriction.
        #[arg(long)]
        exploratory: bool,
    },
}

fn parse_triple(s: &str) -> Result<(u64, u64, u64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [m, p, a] = parts.as_slice() else {
        return Err(format!("expected m,p,a, got {s:?}"));
    };
    let num = |x: &str| x.parse::<u64>().map_err(|_| format!("{x:?} is not a non-negative integer"));
    Ok((num(m)?, num(p)?, num(a)?))
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn read_document(path: &Path) -> Result<GraphDocument, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: {}: {e}", path.display())))
}

fn read_elephant(path: &Path) -> Result<ElephantGraph, Outcome> {
    let doc = read_document(path)?;
    ElephantGraph::new(doc.graph).map_err(|e| Outcome::fail(EXIT_MATH, format!("error: {}: {e}", path.display())))
}

pub fn execute(command: Command) -> Outcome {
    let result = match command {
        Command::Analyze { file, dot, .. } => cmd_analyze(&file, dot),
        Command::Template { kind, m, k, n, l, out } => cmd_template(&kind, TemplateParams { m, k, n, l }, out.as_deref()),
        Command::Glue {
            first,
            second,
            comp1,
            comp2,
            flip,
        } => cmd_glue(&first, &second, comp1, comp2, flip),
        Command::Hj { n, q } => CyclicQuotient::new(n, q)
            .map(|s| Outcome::ok(to_json(&hj_report(s))))
            .map_err(|e| Outcome::fail(EXIT_MATH, format!("error: {e}"))),
        Command::K2a { p0, p1, p2 } => K2AConfig::from_triples(p0, p1, p2)
            .map(|cfg| Outcome::ok(to_json(&k2a_report(&cfg, &is_feasible(&cfg)))))
            .map_err(|e| Outcome::fail(EXIT_MATH, format!("error: {e}"))),
        Command::K2aSearch {
            max_m,
            max_p,
            exploratory,
        } => Ok(cmd_search(max_m, max_p, exploratory)),
    };
    result.unwrap_or_else(|e| e)
}

fn cmd_analyze(file: &Path, dot: bool) -> Result<Outcome, Outcome> {
    let doc = read_document(file)?;
    if dot {
        return Ok(Outcome::ok(emit_dot(&doc.graph)));
    }
    match analyze(&doc) {
        Ok(rep) => Ok(Outcome::ok(to_json(&rep))),
        Err(err) => Err(Outcome {
            code: EXIT_MATH,
            stdout: to_json(&*err),
            stderr: format!("error: {}\n", err.error.message),
        }),
    }
}

fn cmd_template(kind: &str, params: TemplateParams, out: Option<&Path>) -> Result<Outcome, Outcome> {
    let spec = kind
        .parse::<GermKind>()
        .and_then(|k| GermTemplateSpec::from_params(k, params))
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: {e}")))?;
    let g = template(&spec).map_err(|e| Outcome::fail(EXIT_MATH, format!("error: {e}")))?;
    let text = render(&GraphDocument::new(Context::Elephant, g.into_graph()));
    match out {
        None => Ok(Outcome::ok(text)),
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

fn cmd_glue(first: &Path, second: &Path, comp1: usize, comp2: usize, flip: bool) -> Result<Outcome, Outcome> {
    let g1 = read_elephant(first)?;
    let g2 = read_elephant(second)?;
    let matching = if flip { Matching::Reversed } else { Matching::Forward };
    let glued = glue(&g1, &g2, comp1, comp2, &matching).map_err(|e| Outcome::fail(EXIT_MATH, format!("error: {e}")))?;
    let check = check_elephant(&glued);
    let rep = GlueReport {
        schema: SCHEMA,
        ade: report::ade_name(check.ade),
        unchecked: report::GLUE_UNCHECKED,
        dynkin: check.into(),
        marked_black: glued.marked_black().to_vec(),
        dsl: render(&GraphDocument::new(Context::Elephant, glued.graph().clone())),
    };
    Ok(Outcome::ok(to_json(&rep)))
}

fn cmd_search(max_m: u64, max_p: u64, exploratory: bool) -> Outcome {
    let mode = if exploratory {
        SearchMode::Exploratory
    } else {
        SearchMode::IndexTwo
    };
    let outcome = search(max_m, max_p, mode);
    let config = |c: &K2AConfig| ConfigJson {
        p0: c.p0.into(),
        p1: c.p1.into(),
        p2: c.p2.into(),
    };
    Outcome::ok(to_json(&SearchReport {
        schema: SCHEMA,
        max_m,
        max_p,
        mode: if exploratory { "exploratory" } else { "index_two" },
        examined: outcome.examined,
        feasible: outcome.feasible.iter().map(config).collect(),
    }))
}
