//! Plain-text file formats.
//!
//! * graph: header `n m r`, then `m` black edges and `r` red edges, one
//!   `u v` per line, ids in `0..n`;
//! * sequence: one `c u v` line per contraction;
//! * parallel sequence: blocks of `u v` lines separated by `--`;
//! * matrix: header `rows cols`, then one line of `0`/`1`/`r` per row;
//! * ordering: one vertex id per line;
//! * layout: header `queue|stack parts`, a line `order v0 v1 ...`, then one
//!   `u v part` line per edge.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::constructions::layout::{Layout, LayoutKind};
use crate::error::{Error, Result};
use crate::matrix::{Entry, TriMatrix};
use crate::sequence::{ContractionSequence, ContractionStep, ParallelSequence, ParallelStep};
use crate::trigraph::{Trigraph, Vertex};

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<T: FromStr>(line: usize, text: &str, count: usize) -> Result<Vec<T>> {
    let out: Vec<T> = text
        .split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| Error::parse(line, format!("`{w}` is not a number")))
        })
        .collect::<Result<_>>()?;
    if out.len() != count {
        return Err(Error::parse(
            line,
            format!("expected {count} fields, found {}", out.len()),
        ));
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Trigraph> {
    let mut it = lines(text);
    let (hl, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `n m r`"))?;
    let h: Vec<usize> = numbers(hl, header, 3)?;
    let (n, m, r) = (h[0], h[1], h[2]);
    let mut black = Vec::with_capacity(m);
    let mut red = Vec::with_capacity(r);
    for i in 0..m + r {
        let (ln, l) = it
            .next()
            .ok_or_else(|| Error::parse(hl, format!("expected {} edges, found {i}", m + r)))?;
        let e: Vec<Vertex> = numbers(ln, l, 2)?;
        if e[0] >= n || e[1] >= n {
            return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
        }
        if e[0] == e[1] {
            return Err(Error::parse(ln, format!("self-loop on {}", e[0])));
        }
        if i < m { &mut black } else { &mut red }.push((e[0], e[1]));
    }
    if let Some((ln, _)) = it.next() {
        return Err(Error::parse(ln, "unexpected trailing line"));
    }
    Trigraph::from_edges(n, black, red).map_err(|e| Error::parse(hl, e.to_string()))
}

/// Writes the graph with `n` = capacity; removed vertices become isolated.
pub fn write_graph(g: &Trigraph) -> String {
    let black = g.black_edges();
    let red = g.red_edges();
    let mut s = format!("{} {} {}\n", g.capacity(), black.len(), red.len());
    for (u, v) in black.into_iter().chain(red) {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn parse_sequence(text: &str) -> Result<ContractionSequence> {
    let mut steps = Vec::new();
    for (ln, l) in lines(text) {
        let mut words = l.split_whitespace();
        if words.next() != Some("c") {
            return Err(Error::parse(ln, "expected `c u v`"));
        }
        let rest: Vec<&str> = words.collect();
        let e: Vec<Vertex> = numbers(ln, &rest.join(" "), 2)?;
        steps.push(ContractionStep::new(e[0], e[1]));
    }
    Ok(ContractionSequence::new(steps))
}

pub fn write_sequence(seq: &ContractionSequence) -> String {
    let mut s = String::new();
    for st in &seq.steps {
        writeln!(s, "c {} {}", st.u, st.v).unwrap();
    }
    s
}

pub fn parse_parallel(text: &str) -> Result<ParallelSequence> {
    let mut steps = Vec::new();
    let mut block: Vec<(Vertex, Vertex)> = Vec::new();
    let mut start = 1;
    let mut close = |block: &mut Vec<(Vertex, Vertex)>, ln: usize| -> Result<()> {
        if !block.is_empty() {
            let step =
                ParallelStep::new(block.drain(..)).map_err(|e| Error::parse(ln, e.to_string()))?;
            steps.push(step);
        }
        Ok(())
    };
    for (ln, l) in lines(text) {
        if l == "--" {
            close(&mut block, start)?;
            start = ln + 1;
            continue;
        }
        let e: Vec<Vertex> = numbers(ln, l, 2)?;
        block.push((e[0], e[1]));
    }
    close(&mut block, start)?;
    Ok(ParallelSequence::new(steps))
}

pub fn write_parallel(pseq: &ParallelSequence) -> String {
    let mut s = String::new();
    for (i, step) in pseq.steps.iter().enumerate() {
        if i > 0 {
            s.push_str("--\n");
        }
        for &(u, v) in step.pairs() {
            writeln!(s, "{u} {v}").unwrap();
        }
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<TriMatrix> {
    let mut it = lines(text);
    let (hl, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `rows cols`"))?;
    let h: Vec<usize> = numbers(hl, header, 2)?;
    let (rows, cols) = (h[0], h[1]);
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let (ln, l) = it
            .next()
            .ok_or_else(|| Error::parse(hl, format!("expected {rows} rows, found {i}")))?;
        let row: Vec<char> = l.chars().filter(|c| !c.is_whitespace()).collect();
        if row.len() != cols {
            return Err(Error::parse(
                ln,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for c in row {
            entries.push(
                Entry::from_symbol(c)
                    .ok_or_else(|| Error::parse(ln, format!("`{c}` is not one of 0, 1, r")))?,
            );
        }
    }
    if let Some((ln, _)) = it.next() {
        return Err(Error::parse(ln, "unexpected trailing line"));
    }
    TriMatrix::from_entries(rows, cols, entries)
}

pub fn write_matrix(m: &TriMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for row in m.to_strings() {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

pub fn parse_ordering(text: &str) -> Result<Vec<Vertex>> {
    lines(text)
        .map(|(ln, l)| Ok(numbers::<Vertex>(ln, l, 1)?[0]))
        .collect()
}

pub fn write_ordering(order: &[Vertex]) -> String {
    order.iter().map(|v| format!("{v}\n")).collect()
}

pub fn parse_layout(text: &str) -> Result<Layout> {
    let mut it = lines(text);
    let (hl, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `queue|stack parts`"))?;
    let mut words = header.split_whitespace();
    let kind = match words.next() {
        Some("queue") => LayoutKind::Queue,
        Some("stack") => LayoutKind::Stack,
        _ => return Err(Error::parse(hl, "layout kind must be `queue` or `stack`")),
    };
    let parts: usize = numbers(hl, &words.collect::<Vec<_>>().join(" "), 1)?[0];
    let (ol, order_line) = it
        .next()
        .ok_or_else(|| Error::parse(hl, "missing `order` line"))?;
    let order_ids = order_line
        .strip_prefix("order")
        .ok_or_else(|| Error::parse(ol, "expected `order v0 v1 ...`"))?;
    let order: Vec<Vertex> = order_ids
        .split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| Error::parse(ol, format!("`{w}` is not a number")))
        })
        .collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for (ln, l) in it {
        let e: Vec<usize> = numbers(ln, l, 3)?;
        if e[2] >= parts {
            return Err(Error::parse(
                ln,
                format!("part {} out of range 0..{parts}", e[2]),
            ));
        }
        edges.push(((e[0], e[1]), e[2]));
    }
    Layout::new(kind, order, parts, edges)
}

pub fn write_layout(layout: &Layout) -> String {
    let kind = match layout.kind {
        LayoutKind::Queue => "queue",
        LayoutKind::Stack => "stack",
    };
    let mut s = format!("{kind} {}\norder", layout.parts);
    for v in &layout.order {
        write!(s, " {v}").unwrap();
    }
    s.push('\n');
    for &((u, v), p) in &layout.edges {
        writeln!(s, "{u} {v} {p}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Trigraph::from_edges(4, [(0, 1), (2, 3)], [(1, 2)]).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "4 2 1\n0 1\n2 3\n1 2\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(matches!(
            parse_graph("3 1 0\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_graph("3 2 0\n0 1\n").is_err());
        assert!(parse_graph("# comment\n2 1 0\n\n0 1\n").is_ok());
    }

    #[test]
    fn sequence_round_trips() {
        let seq = ContractionSequence::from_pairs([(0, 1), (0, 2)]);
        assert_eq!(parse_sequence(&write_sequence(&seq)).unwrap(), seq);
        assert!(parse_sequence("x 0 1").is_err());
        let p = ParallelSequence::new(vec![
            ParallelStep::new([(0, 1), (2, 3)]).unwrap(),
            ParallelStep::new([(0, 2)]).unwrap(),
        ]);
        let text = write_parallel(&p);
        assert_eq!(text, "0 1\n2 3\n--\n0 2\n");
        assert_eq!(parse_parallel(&text).unwrap(), p);
        assert!(parse_parallel("0 1\n1 2\n").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = TriMatrix::from_strs(&["01r", "110"]).unwrap();
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("1 2\n0x\n").is_err());
    }
}
