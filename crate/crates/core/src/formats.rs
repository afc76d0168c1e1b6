//! Bit-exact text formats.
//!
//! Hypergraph files (`.hg`): a sequence of edge clauses in the common
//! benchmark style, `name(v1,v2,...)` — every clause but the last ends with
//! `,`, the last ends with `.`. Names are `[A-Za-z0-9_:]+`, whitespace is
//! insignificant between tokens, and `%` starts a comment running to the end
//! of the line. The empty file is the empty hypergraph.
//!
//! Decomposition files (`.ghd`): line-oriented. `node <id> bag{v1,...}
//! cover{e1,...}` declares a node (ids are positive integers; the root is
//! the smallest id) and `edge <id> <id>` declares an undirected tree edge.
//! `%` comments are allowed. Names a decomposition uses are not checked
//! against any hypergraph here; the validator owns that.
//!
//! Serialization is canonical: byte-identical across runs and platforms,
//! with `\n` line endings (CRLF is accepted on input).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::decomposition::{
    validate, Decomposition, DecompositionError, DecompositionNode, NodeId, ValidationReport,
};
use crate::hypergraph::{Hypergraph, HypergraphError};

/// Position and message of a syntax error; line and column are 1-based and
/// the column counts bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HgParseError {
    #[error("syntax error at {0}")]
    Syntax(ParseDiagnostic),
    #[error("edge {0:?} has an empty vertex set")]
    EmptyEdge(String),
    #[error("duplicate edge name {0:?}")]
    DuplicateEdgeName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GhdParseError {
    #[error("syntax error at {0}")]
    Syntax(ParseDiagnostic),
    #[error("tree edge references unknown node id {0}")]
    DanglingTreeEdge(NodeId),
    #[error("tree edges do not form a tree")]
    CyclicTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DotError {
    #[error("decomposition fails validation")]
    InvalidDecomposition(Box<ValidationReport>),
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b':'
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn diagnostic(&self, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn bump(&mut self) {
        if self.bytes[self.pos] == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        self.pos += 1;
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'%' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.bump();
                    }
                }
                b if b.is_ascii_whitespace() => self.bump(),
                _ => break,
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos >= self.bytes.len()
    }

    fn name(&mut self, what: &str) -> Result<String, ParseDiagnostic> {
        self.skip_trivia();
        let start = self.pos;
        while self.pos < self.bytes.len() && is_name_byte(self.bytes[self.pos]) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.diagnostic(format!("expected {what}")));
        }
        Ok(String::from_utf8(self.bytes[start..self.pos].to_vec()).expect("ascii"))
    }

    fn punct(&mut self, allowed: &[u8]) -> Result<u8, ParseDiagnostic> {
        self.skip_trivia();
        if self.pos < self.bytes.len() && allowed.contains(&self.bytes[self.pos]) {
            let b = self.bytes[self.pos];
            self.bump();
            return Ok(b);
        }
        let shown: Vec<String> = allowed
            .iter()
            .map(|&b| format!("'{}'", b as char))
            .collect();
        Err(self.diagnostic(format!("expected {}", shown.join(" or "))))
    }
}

/// Parses the `.hg` edge-clause format.
pub fn parse_hg(text: &str) -> Result<Hypergraph, HgParseError> {
    let mut scanner = Scanner::new(text);
    let mut clauses: Vec<(String, Vec<String>)> = Vec::new();
    if !scanner.at_end() {
        loop {
            let name = scanner.name("edge name").map_err(HgParseError::Syntax)?;
            scanner.punct(b"(").map_err(HgParseError::Syntax)?;
            let mut vertices = vec![scanner.name("vertex name").map_err(HgParseError::Syntax)?];
            while scanner.punct(b",)").map_err(HgParseError::Syntax)? == b',' {
                vertices.push(scanner.name("vertex name").map_err(HgParseError::Syntax)?);
            }
            clauses.push((name, vertices));
            if scanner.punct(b",.").map_err(HgParseError::Syntax)? == b'.' {
                if !scanner.at_end() {
                    return Err(HgParseError::Syntax(
                        scanner.diagnostic("expected end of input after '.'"),
                    ));
                }
                break;
            }
        }
    }
    Hypergraph::build(clauses).map_err(|e| match e {
        HypergraphError::EmptyEdge(name) => HgParseError::EmptyEdge(name),
        HypergraphError::DuplicateEdgeName(name) => HgParseError::DuplicateEdgeName(name),
        other => unreachable!("grammar rules this out: {other}"),
    })
}

/// Canonical `.hg` form: one edge clause per line in canonical edge order,
/// vertices in canonical order; the empty hypergraph is the empty string.
pub fn serialize_hg(h: &Hypergraph) -> String {
    let count = h.edge_count();
    (0..count)
        .map(|e| {
            let vertices: Vec<&str> = h.edge_vertex_names(e).collect();
            format!(
                "{}({}){}",
                h.edge_name(e),
                vertices.join(","),
                if e + 1 == count { "." } else { "," }
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

struct LineScanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> LineScanner<'a> {
    fn diagnostic(&self, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_spaces(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_spaces();
        self.pos >= self.bytes.len()
    }

    fn name(&mut self, what: &str) -> Result<String, ParseDiagnostic> {
        self.skip_spaces();
        let start = self.pos;
        while self.pos < self.bytes.len() && is_name_byte(self.bytes[self.pos]) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.diagnostic(format!("expected {what}")));
        }
        Ok(String::from_utf8(self.bytes[start..self.pos].to_vec()).expect("ascii"))
    }

    fn node_id(&mut self) -> Result<NodeId, ParseDiagnostic> {
        self.skip_spaces();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.diagnostic("expected node id"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let id: NodeId = text.parse().map_err(|_| ParseDiagnostic {
            line: self.line,
            column: start + 1,
            message: format!("node id {text} is out of range"),
        })?;
        if id == 0 {
            return Err(ParseDiagnostic {
                line: self.line,
                column: start + 1,
                message: "node ids must be positive".into(),
            });
        }
        Ok(id)
    }

    fn punct(&mut self, expected: u8) -> Result<(), ParseDiagnostic> {
        self.skip_spaces();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == expected {
            self.pos += 1;
            return Ok(());
        }
        Err(self.diagnostic(format!("expected '{}'", expected as char)))
    }

    fn peek_is(&mut self, expected: u8) -> bool {
        self.skip_spaces();
        self.pos < self.bytes.len() && self.bytes[self.pos] == expected
    }

    fn name_set(&mut self, what: &str) -> Result<BTreeSet<String>, ParseDiagnostic> {
        self.punct(b'{')?;
        let mut names = BTreeSet::new();
        if self.peek_is(b'}') {
            self.punct(b'}')?;
            return Ok(names);
        }
        loop {
            names.insert(self.name(what)?);
            if self.peek_is(b',') {
                self.punct(b',')?;
            } else {
                self.punct(b'}')?;
                return Ok(names);
            }
        }
    }
}

/// Parses the line-oriented `.ghd` format.
pub fn parse_ghd(text: &str) -> Result<Decomposition, GhdParseError> {
    let mut nodes: BTreeMap<NodeId, DecompositionNode> = BTreeMap::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('%').next().unwrap_or("");
        let mut scanner = LineScanner {
            bytes: content.as_bytes(),
            pos: 0,
            line: idx + 1,
        };
        if scanner.at_end() {
            continue;
        }
        let keyword = scanner
            .name("'node' or 'edge'")
            .map_err(GhdParseError::Syntax)?;
        match keyword.as_str() {
            "node" => {
                let id = scanner.node_id().map_err(GhdParseError::Syntax)?;
                let bag_kw = scanner.name("'bag'").map_err(GhdParseError::Syntax)?;
                if bag_kw != "bag" {
                    return Err(GhdParseError::Syntax(scanner.diagnostic("expected 'bag'")));
                }
                let bag = scanner
                    .name_set("vertex name")
                    .map_err(GhdParseError::Syntax)?;
                let cover_kw = scanner.name("'cover'").map_err(GhdParseError::Syntax)?;
                if cover_kw != "cover" {
                    return Err(GhdParseError::Syntax(
                        scanner.diagnostic("expected 'cover'"),
                    ));
                }
                let cover = scanner
                    .name_set("edge name")
                    .map_err(GhdParseError::Syntax)?;
                if !scanner.at_end() {
                    return Err(GhdParseError::Syntax(
                        scanner.diagnostic("expected end of line"),
                    ));
                }
                if nodes.insert(id, DecompositionNode { bag, cover }).is_some() {
                    return Err(GhdParseError::Syntax(ParseDiagnostic {
                        line: idx + 1,
                        column: 1,
                        message: format!("duplicate node id {id}"),
                    }));
                }
            }
            "edge" => {
                let a = scanner.node_id().map_err(GhdParseError::Syntax)?;
                let b = scanner.node_id().map_err(GhdParseError::Syntax)?;
                if !scanner.at_end() {
                    return Err(GhdParseError::Syntax(
                        scanner.diagnostic("expected end of line"),
                    ));
                }
                edges.push((a, b));
            }
            other => {
                return Err(GhdParseError::Syntax(ParseDiagnostic {
                    line: idx + 1,
                    column: 1,
                    message: format!("expected 'node' or 'edge', found {other:?}"),
                }));
            }
        }
    }
    Decomposition::new(nodes, edges).map_err(|e| match e {
        DecompositionError::DanglingTreeEdge(id) => GhdParseError::DanglingTreeEdge(id),
        DecompositionError::CyclicTree => GhdParseError::CyclicTree,
    })
}

/// Canonical `.ghd` form: node lines in preorder from the root (children in
/// ascending id order, forest components in ascending root order), then edge
/// lines as `edge <parent> <child>` in discovery order.
pub fn serialize_ghd(d: &Decomposition) -> String {
    if d.is_empty() {
        return String::new();
    }
    let mut node_lines = Vec::with_capacity(d.node_count());
    let mut edge_lines = Vec::new();
    let mut visited: BTreeSet<NodeId> = BTreeSet::new();
    let ids: Vec<NodeId> = d.nodes().keys().copied().collect();
    for &root in &ids {
        if visited.contains(&root) {
            continue;
        }
        visited.insert(root);
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            let node = d.node(id).expect("traversal stays inside the tree");
            let bag: Vec<&str> = node.bag.iter().map(String::as_str).collect();
            let cover: Vec<&str> = node.cover.iter().map(String::as_str).collect();
            node_lines.push(format!(
                "node {id} bag{{{}}} cover{{{}}}",
                bag.join(","),
                cover.join(",")
            ));
            let children: Vec<NodeId> =
                d.neighbors(id).filter(|nb| !visited.contains(nb)).collect();
            for &child in &children {
                visited.insert(child);
                edge_lines.push(format!("edge {id} {child}"));
            }
            for &child in children.iter().rev() {
                stack.push(child);
            }
        }
    }
    node_lines.extend(edge_lines);
    node_lines.join("\n")
}

/// Input selector for DOT export.
#[derive(Debug, Clone, Copy)]
pub enum DotInput<'a> {
    Hypergraph(&'a Hypergraph),
    Decomposition(&'a Decomposition),
    Pair {
        hypergraph: &'a Hypergraph,
        decomposition: &'a Decomposition,
    },
}

const PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
    "#dede00", "#17becf",
];

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn hypergraph_cluster(out: &mut Vec<String>, h: &Hypergraph) {
    out.push("  subgraph cluster_hypergraph {".into());
    out.push("    label=\"hypergraph\";".into());
    // unary edges cannot be drawn as cliques; show their names beside the vertex
    let mut unary: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for e in 0..h.edge_count() {
        if h.edge_members(e).len() == 1 {
            let v = h.edge_vertex_names(e).next().expect("unary edge");
            unary.entry(v).or_default().push(h.edge_name(e));
        }
    }
    for v in h.vertex_names() {
        let mut attrs = format!("label=\"{}\"", dot_escape(v));
        if let Some(names) = unary.get(v.as_str()) {
            attrs.push_str(&format!(", xlabel=\"{}\"", dot_escape(&names.join(","))));
        }
        out.push(format!("    \"v:{}\" [{attrs}];", dot_escape(v)));
    }
    for e in 0..h.edge_count() {
        let color = PALETTE[e % PALETTE.len()];
        let members: Vec<&str> = h.edge_vertex_names(e).collect();
        let mut labeled = false;
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let mut attrs = format!("dir=none, color=\"{color}\"");
                if !labeled {
                    attrs.push_str(&format!(", label=\"{}\"", dot_escape(h.edge_name(e))));
                    labeled = true;
                }
                out.push(format!(
                    "    \"v:{}\" -> \"v:{}\" [{attrs}];",
                    dot_escape(members[i]),
                    dot_escape(members[j])
                ));
            }
        }
    }
    out.push("  }".into());
}

fn decomposition_cluster(out: &mut Vec<String>, d: &Decomposition) {
    out.push("  subgraph cluster_decomposition {".into());
    out.push("    label=\"decomposition\";".into());
    for (&id, node) in d.nodes() {
        let bag: Vec<&str> = node.bag.iter().map(String::as_str).collect();
        let cover: Vec<&str> = node.cover.iter().map(String::as_str).collect();
        out.push(format!(
            "    \"t:{id}\" [shape=box, label=\"χ: {{{}}}\\nλ: {{{}}}\"];",
            dot_escape(&bag.join(",")),
            dot_escape(&cover.join(","))
        ));
    }
    for (a, b) in d.tree_edges() {
        out.push(format!("    \"t:{a}\" -> \"t:{b}\" [dir=none];"));
    }
    out.push("  }".into());
}

/// Renders a DOT digraph with a cluster per given object: hypergraph
/// vertices with hyperedges drawn as edge-colored cliques on the left,
/// decomposition tree on the right. A hypergraph/decomposition pair must
/// validate.
pub fn to_dot(input: DotInput<'_>) -> Result<String, DotError> {
    if let DotInput::Pair {
        hypergraph,
        decomposition,
    } = input
    {
        let report = validate(hypergraph, decomposition);
        if !report.valid() {
            return Err(DotError::InvalidDecomposition(Box::new(report)));
        }
    }
    let mut out = vec!["digraph ghd {".to_string(), "  rankdir=LR;".to_string()];
    match input {
        DotInput::Hypergraph(h) => hypergraph_cluster(&mut out, h),
        DotInput::Decomposition(d) => decomposition_cluster(&mut out, d),
        DotInput::Pair {
            hypergraph,
            decomposition,
        } => {
            hypergraph_cluster(&mut out, hypergraph);
            decomposition_cluster(&mut out, decomposition);
        }
    }
    out.push("}".into());
    let mut text = out.join("\n");
    text.push('\n');
    Ok(text)
}
