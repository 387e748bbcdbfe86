//! The `.smap` text format.
//!
//! ```text
//! V <n>
//! E <id> <u> <v> <+|->
//! R <v>: <dart> <dart> ...
//! ```
//!
//! `#` starts a comment. Dart `2e` leaves the first endpoint of edge `e`,
//! dart `2e + 1` the second.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::surface_map::{Edge, Sign, SurfaceMap};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

pub fn parse_smap(text: &str) -> Result<SurfaceMap> {
    let mut vertex_count = None;
    let mut edges: Vec<Option<Edge>> = Vec::new();
    let mut rotation: Vec<Option<Vec<usize>>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let tag = toks.next().unwrap_or("");
        match tag {
            "V" => {
                if vertex_count.is_some() {
                    return Err(parse_err(line, "duplicate V line"));
                }
                let n = number(line, toks.next(), "vertex count")?;
                vertex_count = Some(n);
                rotation = vec![None; n];
            }
            "E" => {
                let n = vertex_count.ok_or_else(|| parse_err(line, "E before V"))?;
                let id = number(line, toks.next(), "edge id")?;
                let u = number(line, toks.next(), "endpoint")?;
                let v = number(line, toks.next(), "endpoint")?;
                let sign = match toks.next() {
                    Some("+") => Sign::Plus,
                    Some("-") => Sign::Minus,
                    Some(t) => return Err(parse_err(line, format!("bad sign `{t}`"))),
                    None => return Err(parse_err(line, "missing sign")),
                };
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("endpoint out of range 0..{n}")));
                }
                if edges.len() <= id {
                    edges.resize(id + 1, None);
                }
                if edges[id].is_some() {
                    return Err(parse_err(line, format!("duplicate edge {id}")));
                }
                edges[id] = Some(Edge::new(u, v, sign));
            }
            "R" => {
                let n = vertex_count.ok_or_else(|| parse_err(line, "R before V"))?;
                let head = toks.next().ok_or_else(|| parse_err(line, "missing vertex"))?;
                let v = number(line, head.strip_suffix(':').or(Some("")), "vertex")
                    .map_err(|_| parse_err(line, format!("expected `<v>:` got `{head}`")))?;
                if v >= n {
                    return Err(parse_err(line, format!("vertex {v} out of range")));
                }
                if rotation[v].is_some() {
                    return Err(parse_err(line, format!("duplicate rotation for {v}")));
                }
                let darts = toks
                    .map(|t| number(line, Some(t), "dart"))
                    .collect::<Result<Vec<_>>>()?;
                rotation[v] = Some(darts);
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    let end = last_line + 1;
    let n = vertex_count.ok_or_else(|| parse_err(end, "missing V line"))?;
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| parse_err(end, format!("edge {i} missing"))))
        .collect::<Result<Vec<_>>>()?;
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| parse_err(end, format!("rotation of vertex {v} missing"))))
        .collect::<Result<Vec<_>>>()?;
    SurfaceMap::build(n, edges, rotation)
}

pub fn write_smap(map: &SurfaceMap) -> String {
    let mut out = String::new();
    writeln!(out, "V {}", map.vertex_count()).unwrap();
    for (i, e) in map.edges().iter().enumerate() {
        writeln!(out, "E {} {} {} {}", i, e.ends[0], e.ends[1], e.sign.symbol()).unwrap();
    }
    for v in 0..map.vertex_count() {
        write!(out, "R {v}:").unwrap();
        for d in map.rotation(v) {
            write!(out, " {d}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, k6_projective};

    #[test]
    fn round_trip() {
        for m in [cube(), k6_projective()] {
            let text = write_smap(&m);
            let back = parse_smap(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(write_smap(&back), text);
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a triangle\nV 3\n\nE 0 0 1 +\nE 1 1 2 +  # second\nE 2 2 0 +\nR 0: 0 5\nR 1: 2 1\nR 2: 4 3\n";
        let m = parse_smap(text).unwrap();
        assert_eq!(m.face_count(), 2);
        assert_eq!(m.euler_char(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_smap("V 2\nE 0 0 1 *\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_smap("V 2\nE 0 0 1 +\nR 0: 0\n") {
            Err(Error::Parse { line: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_smap("E 0 0 1 +"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_smap("V 2\nE 0 0 1 +\nR 0: 0\nR 1: 0\n"),
            Err(Error::MalformedRotation(_))
        ));
    }
}
