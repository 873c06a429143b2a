//! `decomposition <kind> <m>`, then `he a b` host edges (omitted for paths)
//! and one `bag a : v1 v2 ...` line per node. Several blocks may follow each
//! other in one text.

use std::fmt::Write as _;

use super::{Decomposition, DecompositionError, Kind};
use crate::graph::{parse_number, strip_comment, Graph};
use crate::VertexSet;

pub fn write_decompositions(decs: &[Decomposition]) -> String {
    let mut out = String::new();
    for d in decs {
        writeln!(out, "decomposition {} {}", d.kind(), d.node_count()).unwrap();
        if d.kind() != Kind::Path {
            for (a, b) in d.host().edges() {
                writeln!(out, "he {a} {b}").unwrap();
            }
        }
        for (a, bag) in d.bags().iter().enumerate() {
            write!(out, "bag {a} :").unwrap();
            for v in bag {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

struct Block {
    kind: Kind,
    header_line: usize,
    edges: Vec<(usize, usize)>,
    bags: Vec<Option<VertexSet>>,
}

impl Block {
    fn finish(self) -> Result<Decomposition, DecompositionError> {
        let err = |message: String| DecompositionError::Parse { line: self.header_line, message };
        let mut bags = Vec::with_capacity(self.bags.len());
        for (a, b) in self.bags.into_iter().enumerate() {
            bags.push(b.ok_or_else(|| err(format!("missing bag {a}")))?);
        }
        if self.kind == Kind::Path {
            return Ok(Decomposition::path(bags));
        }
        let host = Graph::from_edges(bags.len(), self.edges).map_err(|e| err(e.to_string()))?;
        Decomposition::new(self.kind, host, bags)
    }
}

pub fn parse_decompositions(text: &str) -> Result<Vec<Decomposition>, DecompositionError> {
    let mut done = Vec::new();
    let mut current: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let err = |message: String| DecompositionError::Parse { line: line_no, message };
        let (head, rest) = match line.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (line, None),
        };
        let mut tokens = head.split_whitespace();
        match tokens.next() {
            Some("decomposition") => {
                if let Some(block) = current.take() {
                    done.push(block.finish()?);
                }
                let kind_tok = tokens.next().ok_or_else(|| err("missing kind".into()))?;
                let kind = Kind::from_name(kind_tok)
                    .ok_or_else(|| err(format!("unknown kind `{kind_tok}`")))?;
                let m = parse_number(tokens.next(), "host node count").map_err(err)?;
                if tokens.next().is_some() || rest.is_some() {
                    return Err(err("trailing tokens after header".into()));
                }
                current = Some(Block { kind, header_line: line_no, edges: Vec::new(), bags: vec![None; m] });
            }
            Some("he") => {
                let block = current.as_mut().ok_or_else(|| err("host edge before header".into()))?;
                if block.kind == Kind::Path {
                    return Err(err("path decompositions have implicit host edges".into()));
                }
                let a = parse_number(tokens.next(), "host node").map_err(err)?;
                let b = parse_number(tokens.next(), "host node").map_err(err)?;
                if tokens.next().is_some() || rest.is_some() {
                    return Err(err("trailing tokens after host edge".into()));
                }
                if a >= b {
                    return Err(err(format!("host edge must satisfy a < b, got {a} {b}")));
                }
                block.edges.push((a, b));
            }
            Some("bag") => {
                let block = current.as_mut().ok_or_else(|| err("bag before header".into()))?;
                let a = parse_number(tokens.next(), "host node").map_err(err)?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens before `:`".into()));
                }
                let rest = rest.ok_or_else(|| err("missing `:` in bag".into()))?;
                if a >= block.bags.len() {
                    return Err(err(format!("bag {a} out of range")));
                }
                if block.bags[a].is_some() {
                    return Err(err(format!("duplicate bag {a}")));
                }
                let mut bag = VertexSet::new();
                for tok in rest.split_whitespace() {
                    let v = parse_number(Some(tok), "vertex").map_err(err)?;
                    if !bag.insert(v) {
                        return Err(err(format!("vertex {v} repeated in bag {a}")));
                    }
                }
                block.bags[a] = Some(bag);
            }
            Some(tok) => return Err(err(format!("unknown record `{tok}`"))),
            None => return Err(err("empty record".into())),
        }
    }
    if let Some(block) = current.take() {
        done.push(block.finish()?);
    }
    Ok(done)
}
