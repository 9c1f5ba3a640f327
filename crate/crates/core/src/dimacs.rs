//! DIMACS shortest-path (`.gr`) reader and writer.
//!
//! ```text
//! c comment
//! p sp <n> <m>
//! a <u> <v> <w>      (1-based ids, integer weight)
//! ```

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug)]
pub struct DimacsOptions {
    /// Insert every arc in both directions (minimum weight wins).
    pub symmetrize: bool,
}

impl Default for DimacsOptions {
    fn default() -> Self {
        DimacsOptions { symmetrize: true }
    }
}

pub fn parse_dimacs<R: BufRead>(reader: R, options: DimacsOptions) -> Result<Graph> {
    let mut vertex_count: Option<usize> = None;
    let mut arcs: Vec<(VertexId, VertexId, f64)> = Vec::new();

    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        let mut fields = line.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match tag {
            "c" => {}
            "p" => {
                if vertex_count.is_some() {
                    return Err(parse_err("second problem line".into()));
                }
                let rest: Vec<&str> = fields.collect();
                if rest.len() != 3 || rest[0] != "sp" {
                    return Err(parse_err(format!("expected `p sp <n> <m>`, got `{line}`")));
                }
                let n: usize = rest[1]
                    .parse()
                    .map_err(|_| parse_err(format!("bad vertex count `{}`", rest[1])))?;
                let m: usize = rest[2]
                    .parse()
                    .map_err(|_| parse_err(format!("bad arc count `{}`", rest[2])))?;
                vertex_count = Some(n);
                arcs.reserve(m);
            }
            "a" => {
                let n = vertex_count.ok_or_else(|| parse_err("arc before problem line".into()))?;
                let rest: Vec<&str> = fields.collect();
                if rest.len() != 3 {
                    return Err(parse_err(format!("expected `a <u> <v> <w>`, got `{line}`")));
                }
                let endpoint = |s: &str| -> Result<VertexId> {
                    let id: u64 = s
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex id `{s}`")))?;
                    if id == 0 || id > n as u64 {
                        return Err(Error::VertexOutOfRange {
                            line: line_no,
                            id,
                            n,
                        });
                    }
                    Ok((id - 1) as VertexId)
                };
                let u = endpoint(rest[0])?;
                let v = endpoint(rest[1])?;
                let w: i64 = rest[2]
                    .parse()
                    .map_err(|_| parse_err(format!("bad weight `{}`", rest[2])))?;
                if w < 0 {
                    return Err(Error::NegativeWeight {
                        line: line_no,
                        weight: w,
                    });
                }
                arcs.push((u, v, w as f64));
            }
            other => return Err(parse_err(format!("unknown line type `{other}`"))),
        }
    }

    let n = vertex_count.ok_or(Error::Parse {
        line: 0,
        message: "missing problem line".into(),
    })?;
    Graph::from_edges(n, arcs, options.symmetrize)
}

pub fn parse_dimacs_str(text: &str, options: DimacsOptions) -> Result<Graph> {
    parse_dimacs(text.as_bytes(), options)
}

/// Writes every stored arc. Weights must be integral.
pub fn write_dimacs<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    if !g.has_integer_weights() {
        return Err(Error::domain(
            "DIMACS arcs carry integer weights; use the binary graph format",
        ));
    }
    writeln!(out, "p sp {} {}", g.vertex_count(), g.arc_count())?;
    for (u, v, w) in g.arcs() {
        writeln!(out, "a {} {} {}", u + 1, v + 1, w as i64)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str) -> Result<Graph> {
        parse_dimacs_str(text, DimacsOptions::default())
    }

    #[test]
    fn single_arc_is_symmetrized() {
        let g = parse("p sp 2 1\na 1 2 3").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_weight(0, 1), Some(3.0));
        assert_eq!(g.edge_weight(1, 0), Some(3.0));
        assert!(g.is_symmetric());
    }

    #[test]
    fn single_vertex_no_arcs() {
        let g = parse("c empty\np sp 1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.arc_count(), 0);
    }

    #[test]
    fn keep_directed() {
        let g = parse_dimacs_str("p sp 2 1\na 1 2 3", DimacsOptions { symmetrize: false }).unwrap();
        assert!(!g.is_symmetric());
        assert_eq!(g.edge_weight(1, 0), None);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse("p sp 2 1\nc ok\na 1 x 3") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("p sp 2 1\na 1 3 3") {
            Err(Error::VertexOutOfRange {
                line: 2,
                id: 3,
                n: 2,
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse("p sp 2 1\na 0 1 3") {
            Err(Error::VertexOutOfRange { id: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("p sp 2 1\na 1 2 -4") {
            Err(Error::NegativeWeight {
                line: 2,
                weight: -4,
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("a 1 2 3"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse("x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("c only"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse("p sp 2 1\na 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    fn arb_dimacs() -> impl Strategy<Value = String> {
        (1usize..12).prop_flat_map(|n| {
            prop::collection::vec((1..=n, 1..=n, 0i64..50), 0..30).prop_map(move |arcs| {
                let mut s = format!("c generated\np sp {n} {}\n", arcs.len());
                for (u, v, w) in arcs {
                    s += &format!("a {u} {v} {w}\n");
                }
                s
            })
        })
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(text in arb_dimacs(), symmetrize in any::<bool>()) {
            let opts = DimacsOptions { symmetrize };
            let g = parse_dimacs_str(&text, opts).unwrap();
            let mut out = Vec::new();
            write_dimacs(&g, &mut out).unwrap();
            let again = parse_dimacs(out.as_slice(), opts).unwrap();
            prop_assert_eq!(again, g);
        }
    }
}
