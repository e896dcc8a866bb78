//! Plain-text embedded-graph files.
//!
//! ```text
//! # theta graph on the torus
//! vertex 0: sector (0.0 1.0 2.0)
//! vertex 1: sector (0.1 1.1 2.1)
//! edge 0: 0 1 sign +
//! edge 1: 0 1 sign +
//! edge 2: 0 1 sign +
//! cellular
//! ```
//!
//! * `vertex <id>:` followed by one or more `sector (<half-edges>)` groups.
//!   A half-edge is written `<edge>.<end>`; end 0 sits at the edge's first
//!   endpoint. A vertex line with no sectors has a single empty sector.
//! * `edge <id>: <u> <v> sign <+|->`.
//! * `region <id>: genus <g> circles <c1,c2,...>` where circle indices are
//!   those printed by `topotutte trace`.
//! * `cellular` gives every boundary circle its own disc region. It cannot
//!   be combined with `region` lines.
//!
//! `#` starts a comment. Blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{EmbeddedGraph, EmbeddingError, Region};
use crate::edgeset::{EdgeId, VertexId, MAX_EDGES};
use crate::graph::{GraphError, Multigraph};
use crate::ribbon::{HalfEdge, RibbonError, RotationSystem, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: EmbeddingError },
    #[error("{0}")]
    Embedding(#[from] EmbeddingError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_num(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    s.trim()
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{}`", s.trim())))
}

fn parse_half_edge(line: usize, s: &str) -> Result<HalfEdge, FormatError> {
    let (e, end) = s
        .split_once('.')
        .ok_or_else(|| syntax(line, format!("expected half-edge `<edge>.<end>`, found `{s}`")))?;
    let e = parse_num(line, e, "edge id")?;
    match end {
        "0" => Ok(HalfEdge::new(e, 0)),
        "1" => Ok(HalfEdge::new(e, 1)),
        _ => Err(syntax(line, format!("half-edge end must be 0 or 1, found `{end}`"))),
    }
}

/// `<keyword> <id>: <rest>`
fn split_header<'a>(line: usize, rest: &'a str, keyword: &str) -> Result<(usize, &'a str), FormatError> {
    let (id, body) = rest
        .split_once(':')
        .ok_or_else(|| syntax(line, format!("expected `{keyword} <id>: ...`")))?;
    Ok((parse_num(line, id, &format!("{keyword} id"))?, body.trim()))
}

fn parse_sectors(line: usize, mut body: &str) -> Result<Vec<Vec<HalfEdge>>, FormatError> {
    let mut sectors = Vec::new();
    loop {
        body = body.trim_start();
        if body.is_empty() {
            break;
        }
        let after = body
            .strip_prefix("sector")
            .ok_or_else(|| syntax(line, format!("expected `sector (...)`, found `{body}`")))?
            .trim_start();
        let inner = after
            .strip_prefix('(')
            .ok_or_else(|| syntax(line, "expected `(` after `sector`"))?;
        let close = inner.find(')').ok_or_else(|| syntax(line, "unclosed sector"))?;
        let sector = inner[..close]
            .split_whitespace()
            .map(|t| parse_half_edge(line, t))
            .collect::<Result<Vec<_>, _>>()?;
        sectors.push(sector);
        body = &inner[close + 1..];
    }
    if sectors.is_empty() {
        sectors.push(Vec::new());
    }
    Ok(sectors)
}

pub fn parse(text: &str) -> Result<EmbeddedGraph, FormatError> {
    let mut vertices: BTreeMap<VertexId, (usize, Vec<Vec<HalfEdge>>)> = BTreeMap::new();
    let mut edges: BTreeMap<EdgeId, (usize, VertexId, VertexId, Sign)> = BTreeMap::new();
    let mut regions: Vec<(usize, Region)> = Vec::new();
    let mut cellular: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match keyword {
            "vertex" => {
                let (id, body) = split_header(line, rest, "vertex")?;
                let sectors = parse_sectors(line, body)?;
                if vertices.insert(id, (line, sectors)).is_some() {
                    return Err(syntax(line, format!("vertex {id} declared twice")));
                }
            }
            "edge" => {
                let (id, body) = split_header(line, rest, "edge")?;
                if id >= MAX_EDGES {
                    return Err(FormatError::Invalid {
                        line,
                        source: GraphError::TooManyEdges(id).into(),
                    });
                }
                let tokens: Vec<&str> = body.split_whitespace().collect();
                let [u, v, kw, s] = tokens[..] else {
                    return Err(syntax(line, "expected `edge <id>: <u> <v> sign <+|->`"));
                };
                if kw != "sign" {
                    return Err(syntax(line, format!("expected `sign`, found `{kw}`")));
                }
                let sign = match s {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(syntax(line, format!("sign must be + or -, found `{s}`"))),
                };
                let (u, v) = (parse_num(line, u, "vertex id")?, parse_num(line, v, "vertex id")?);
                if edges.insert(id, (line, u, v, sign)).is_some() {
                    return Err(syntax(line, format!("edge {id} declared twice")));
                }
            }
            "region" => {
                let (id, body) = split_header(line, rest, "region")?;
                let tokens: Vec<&str> = body.splitn(4, char::is_whitespace).collect();
                let [gkw, g, ckw, list] = tokens[..] else {
                    return Err(syntax(line, "expected `region <id>: genus <g> circles <c1,c2,...>`"));
                };
                if gkw != "genus" || ckw != "circles" {
                    return Err(syntax(line, "expected `region <id>: genus <g> circles <c1,c2,...>`"));
                }
                if g.trim().starts_with('-') {
                    return Err(FormatError::Invalid {
                        line,
                        source: EmbeddingError::NegativeGenus(id),
                    });
                }
                let genus = parse_num(line, g, "genus")?;
                let circles = list
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_num(line, t, "circle index"))
                    .collect::<Result<Vec<_>, _>>()?;
                regions.push((line, Region { id, genus, circles }));
            }
            "cellular" => {
                if !rest.trim().is_empty() {
                    return Err(syntax(line, "`cellular` takes no arguments"));
                }
                cellular = Some(line);
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }

    let mut graph = Multigraph::new();
    for &v in vertices.keys() {
        graph.add_vertex(v).expect("distinct keys");
    }
    let mut signs = Vec::new();
    for (&id, &(line, u, v, sign)) in &edges {
        graph
            .add_edge_with_id(id, u, v)
            .map_err(|e| FormatError::Invalid { line, source: e.into() })?;
        if signs.len() <= id {
            signs.resize(id + 1, Sign::Plus);
        }
        signs[id] = sign;
    }
    let vertex_lines: BTreeMap<VertexId, usize> = vertices.iter().map(|(&v, (l, _))| (v, *l)).collect();
    let sectors = vertices.into_values().map(|(_, s)| s).collect();
    let rotation = RotationSystem::new(graph, sectors, signs).map_err(|e| match &e {
        RibbonError::MalformedRotation { vertex, .. } => FormatError::Invalid {
            line: vertex_lines.get(vertex).copied().unwrap_or(0),
            source: e.into(),
        },
        _ => FormatError::Embedding(e.into()),
    })?;

    match (cellular, regions.is_empty()) {
        (Some(line), false) => Err(syntax(line, "`cellular` cannot be combined with region lines")),
        (Some(_), true) => Ok(EmbeddedGraph::cellular(rotation)?),
        (None, true) => Err(syntax(text.lines().count().max(1), "no regions: add region lines or `cellular`")),
        (None, false) => {
            let lines: BTreeMap<usize, usize> = regions.iter().map(|(l, r)| (r.id, *l)).collect();
            let circle_line = |c: usize| {
                regions
                    .iter()
                    .find(|(_, r)| r.circles.contains(&c))
                    .map_or(0, |(l, _)| *l)
            };
            EmbeddedGraph::new(rotation, regions.iter().map(|(_, r)| r.clone()).collect()).map_err(|e| {
                let line = match &e {
                    EmbeddingError::DuplicateRegion(id) | EmbeddingError::EmptyRegion(id) => {
                        regions.iter().filter(|(_, r)| r.id == *id).map(|(l, _)| *l).max().unwrap_or(0)
                    }
                    EmbeddingError::UnknownCircle { region, .. } => lines.get(region).copied().unwrap_or(0),
                    EmbeddingError::DoublyCoveredCircle(c) => regions
                        .iter()
                        .filter(|(_, r)| r.circles.contains(c))
                        .map(|(l, _)| *l)
                        .max()
                        .unwrap_or(0),
                    EmbeddingError::UncoveredCircle(c) => circle_line(*c),
                    _ => 0,
                };
                if line == 0 {
                    FormatError::Embedding(e)
                } else {
                    FormatError::Invalid { line, source: e }
                }
            })
        }
    }
}

/// Canonical text for an embedding. Cellular embeddings whose region ids
/// equal their circle indices are written with `cellular`.
pub fn write(emb: &EmbeddedGraph) -> String {
    let mut out = String::new();
    let rot = emb.rotation();
    let g = rot.graph();
    for (i, &v) in g.vertices().iter().enumerate() {
        write!(out, "vertex {v}:").unwrap();
        for sec in rot.sectors_at(i) {
            let hs: Vec<String> = sec.iter().map(|h| h.to_string()).collect();
            write!(out, " sector ({})", hs.join(" ")).unwrap();
        }
        out.push('\n');
    }
    for e in g.edges() {
        let [u, v] = g.endpoints(e).expect("present");
        writeln!(out, "edge {e}: {u} {v} sign {}", rot.sign(e)).unwrap();
    }
    let plain = emb.is_cellular() && emb.regions().iter().all(|r| r.circles == [r.id]);
    if plain {
        out.push_str("cellular\n");
    } else {
        for r in emb.regions() {
            let cs: Vec<String> = r.circles.iter().map(|c| c.to_string()).collect();
            writeln!(out, "region {}: genus {} circles {}", r.id, r.genus, cs.join(",")).unwrap();
        }
    }
    out
}
