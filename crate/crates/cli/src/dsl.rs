//! Line-oriented graph description language.
//!
//! ```text
//! # comment
//! surface section
//! vertex e1 white selfint=-3
//! vertex C1 black
//! edge e1 C1
//! ```
//!
//! `surface` is optional and defaults to `elephant`; when present it must
//! precede every vertex. Edges may name vertices declared further down.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use dualgraph_core::{Color, Graph, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Context {
    /// Crepant context: every curve is a (-2)-curve unless stated.
    #[default]
    Elephant,
    /// Hyperplane section: central curves default to (-1)-curves.
    Section,
}

impl Context {
    pub fn default_self_intersection(self, color: Color) -> i64 {
        match (self, color) {
            (Context::Section, Color::Black) => -1,
            _ => -2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Context::Elephant => "elephant",
            Context::Section => "section",
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Context {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "elephant" => Ok(Context::Elephant),
            "section" => Ok(Context::Section),
            _ => Err(format!("unknown surface {s:?}, expected elephant or section")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub context: Context,
    pub graph: Graph,
}

impl GraphDocument {
    pub fn new(context: Context, graph: Graph) -> Self {
        GraphDocument { context, graph }
    }
}

pub fn parse(text: &str) -> Result<GraphDocument, ParseError> {
    let mut context: Option<Context> = None;
    let mut vertices: Vec<(usize, Vertex)> = Vec::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = words.split_first() else {
            continue;
        };
        match keyword {
            "surface" => {
                let [name] = args else {
                    return Err(err(line, "expected `surface <elephant|section>`"));
                };
                if !vertices.is_empty() {
                    return Err(err(line, "surface must come before any vertex"));
                }
                if context.is_some() {
                    return Err(err(line, "surface declared twice"));
                }
                context = Some(name.parse().map_err(|m: String| err(line, m))?);
            }
            "vertex" => {
                let (id, color, rest) = match args {
                    [id, color, rest @ ..] if rest.len() <= 1 => (*id, *color, rest),
                    _ => {
                        return Err(err(
                            line,
                            "expected `vertex <id> <white|black> [selfint=<negative int>]`",
                        ))
                    }
                };
                let color = match color {
                    "white" => Color::White,
                    "black" => Color::Black,
                    other => return Err(err(line, format!("unknown color {other:?}"))),
                };
                let ctx = *context.get_or_insert(Context::default());
                let self_intersection = match rest.first() {
                    None => ctx.default_self_intersection(color),
                    Some(opt) => parse_selfint(opt).map_err(|m| err(line, m))?,
                };
                if let Some((first, _)) = vertices.iter().find(|(_, v)| v.id == id) {
                    return Err(err(line, format!("duplicate vertex {id:?} (first declared on line {first})")));
                }
                vertices.push((line, Vertex::new(id, color, self_intersection)));
            }
            "edge" => {
                let [a, b] = args else {
                    return Err(err(line, "expected `edge <id> <id>`"));
                };
                edges.push((line, a.to_string(), b.to_string()));
            }
            other => return Err(err(line, format!("unknown statement {other:?}"))),
        }
    }

    let mut builder = Graph::builder();
    for (line, v) in &vertices {
        builder
            .vertex(v.id.clone(), v.color, v.self_intersection)
            .map_err(|e| err(*line, e.to_string()))?;
    }
    for (line, a, b) in &edges {
        builder.edge(a, b).map_err(|e| {
            err(
                *line,
                match e {
                    GraphError::Loop(id) => format!("loop at vertex {id:?}"),
                    GraphError::MultiEdge(x, y) => format!("edge {x} -- {y} declared twice"),
                    other => other.to_string(),
                },
            )
        })?;
    }
    Ok(GraphDocument {
        context: context.unwrap_or_default(),
        graph: builder.build(),
    })
}

fn parse_selfint(opt: &str) -> Result<i64, String> {
    let value = opt
        .strip_prefix("selfint=")
        .ok_or_else(|| format!("unexpected {opt:?}, expected selfint=<negative int>"))?;
    let n: i64 = value
        .parse()
        .map_err(|_| format!("selfint {value:?} is not an integer"))?;
    if n >= 0 {
        return Err(format!("selfint must be negative, got {n}"));
    }
    Ok(n)
}

/// Renders a document back to the DSL. Vertices appear in id order, and
/// `selfint=` is written only where it differs from the context default.
pub fn render(doc: &GraphDocument) -> String {
    let mut out = String::new();
    writeln!(out, "surface {}", doc.context).unwrap();
    for v in doc.graph.vertices() {
        write!(out, "vertex {} {}", v.id, v.color).unwrap();
        if v.self_intersection != doc.context.default_self_intersection(v.color) {
            write!(out, " selfint={}", v.self_intersection).unwrap();
        }
        out.push('\n');
    }
    for (a, b) in doc.graph.edge_ids() {
        writeln!(out, "edge {a} {b}").unwrap();
    }
    out
}
