//! graph6 and plain edge-list text formats.
//!
//! graph6 follows the published format definition bit-exactly: N(n) then the
//! upper triangle of the adjacency matrix in column order x_{0,1}, x_{0,2},
//! x_{1,2}, x_{0,3}, …, packed into 6-bit groups, each offset by 63. The
//! edge-list format is a first line `n m` followed by m lines `u v`
//! (0-based). Encoders compact the graph (dead ids are dropped).

use crate::error::Error;
use crate::graph::Graph;

fn compact(g: &Graph) -> Graph {
    if g.n() == g.id_bound() {
        g.clone()
    } else {
        g.induced(&g.vertices()).expect("live vertices").0
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let g = compact(g);
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(b'~');
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        out.push(b'~');
        out.push(b'~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut group = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i as u32, j as u32) as u8;
            used += 1;
            if used == 6 {
                out.push(group + 63);
                group = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((group << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("printable")
}

pub fn from_graph6(line: &str) -> Result<Graph, Error> {
    let line = line.trim_end();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let bad = |col: usize, msg: &str| Error::Parse {
        line: 1,
        col: col + 1,
        msg: msg.to_string(),
    };
    if bytes.is_empty() {
        return Err(bad(0, "empty graph6 line"));
    }
    let pos;
    let n: usize = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            if bytes.len() < 8 {
                return Err(bad(bytes.len(), "truncated graph6 size"));
            }
            pos = 8;
            bytes[2..8]
                .iter()
                .try_fold(0usize, |acc, &b| {
                    if !(63..=126).contains(&b) {
                        return Err(bad(pos, "invalid graph6 byte"));
                    }
                    Ok(acc << 6 | (b - 63) as usize)
                })?
        } else {
            if bytes.len() < 4 {
                return Err(bad(bytes.len(), "truncated graph6 size"));
            }
            pos = 4;
            bytes[1..4]
                .iter()
                .try_fold(0usize, |acc, &b| {
                    if !(63..=126).contains(&b) {
                        return Err(bad(pos, "invalid graph6 byte"));
                    }
                    Ok(acc << 6 | (b - 63) as usize)
                })?
        }
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(bad(0, "invalid graph6 byte"));
        }
        pos = 1;
        (bytes[0] - 63) as usize
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() - pos != bytes_needed {
        return Err(bad(
            bytes.len(),
            &format!(
                "expected {} data bytes for n = {}, found {}",
                bytes_needed,
                n,
                bytes.len() - pos
            ),
        ));
    }
    let mut g = Graph::new(n);
    let mut bit_idx = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + bit_idx / 6];
            if !(63..=126).contains(&byte) {
                return Err(bad(pos + bit_idx / 6, "invalid graph6 byte"));
            }
            let group = byte - 63;
            let bit = group >> (5 - bit_idx % 6) & 1;
            if bit == 1 {
                g.set_edge(i as u32, j as u32, true);
            }
            bit_idx += 1;
            if bit_idx == bits_needed {
                break 'outer;
            }
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let g = compact(g);
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Graph, Error> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        })?;
    let parse_num = |line_no: usize, tok: &str, col: usize| -> Result<usize, Error> {
        tok.parse().map_err(|_| Error::Parse {
            line: line_no + 1,
            col,
            msg: format!("expected a number, found `{tok}`"),
        })
    };
    let mut head_tokens = header.split_whitespace();
    let n = parse_num(0, head_tokens.next().unwrap_or(""), 1)?;
    let m = parse_num(
        0,
        head_tokens.next().ok_or_else(|| Error::Parse {
            line: 1,
            col: header.len() + 1,
            msg: "header must be `n m`".into(),
        })?,
        2,
    )?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (idx, line) = lines.next().ok_or_else(|| Error::Parse {
            line: m + 1,
            col: 1,
            msg: format!("expected {m} edge lines"),
        })?;
        let mut toks = line.split_whitespace();
        let u = parse_num(idx, toks.next().unwrap_or(""), 1)? as u32;
        let v = parse_num(
            idx,
            toks.next().ok_or_else(|| Error::Parse {
                line: idx + 1,
                col: line.len() + 1,
                msg: "edge line must be `u v`".into(),
            })?,
            2,
        )? as u32;
        if u as usize >= n || v as usize >= n {
            return Err(Error::Parse {
                line: idx + 1,
                col: 1,
                msg: format!("edge {u} {v} out of range for n = {n}"),
            });
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

/// Auto-detect: edge lists start with a digit, graph6 never does (its first
/// byte is at least 63, or the `>>graph6<<` header).
pub fn parse_auto(text: &str) -> Result<Graph, Error> {
    let first = text
        .trim_start()
        .bytes()
        .next()
        .ok_or_else(|| Error::Parse {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        })?;
    if first.is_ascii_digit() {
        from_edge_list(text)
    } else {
        from_graph6(text.trim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn known_encodings() {
        // hand-packed instances of the published format
        assert_eq!(to_graph6(&complete_graph(4)), "C~");
        let p = crate::graph::path_graph(2);
        assert_eq!(to_graph6(&p), "A_");
        let c5 = from_graph6("Dhc").unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.vertices().iter().all(|&v| c5.degree(v) == 2));
    }

    #[test]
    fn round_trip() {
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..100 {
            let n = rng.gen_range(0..40);
            let mut g = Graph::new(n);
            for i in 0..n as u32 {
                for j in i + 1..n as u32 {
                    if rng.gen_bool(0.3) {
                        g.set_edge(i, j, true);
                    }
                }
            }
            let enc = to_graph6(&g);
            let dec = from_graph6(&enc).unwrap();
            assert_eq!(dec, g);
            assert_eq!(to_graph6(&dec), enc);
            let el = to_edge_list(&g);
            assert_eq!(from_edge_list(&el).unwrap(), g);
        }
    }

    #[test]
    fn medium_size_header() {
        let g = cycle_graph(100);
        let enc = to_graph6(&g);
        assert!(enc.starts_with('~'));
        assert_eq!(from_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn auto_detect() {
        let g = cycle_graph(5);
        assert_eq!(parse_auto(&to_graph6(&g)).unwrap(), g);
        assert_eq!(parse_auto(&to_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_auto(&format!(">>graph6<<{}", to_graph6(&g))).unwrap(), g);
    }

    #[test]
    fn parse_errors_name_position() {
        match from_edge_list("3 2\n0 1\n0 x\n") {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(col, 2);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
