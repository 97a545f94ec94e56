//! graph6 text format (one graph per line), following the format
//! description distributed with nauty. Loops and directed edges are not
//! representable; the parser reports the byte offset of any malformed input.

use super::Graph;
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 10_000;

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        msg: msg.into(),
    }
}

/// Parses a single graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest, HEADER.len()),
        None => (line, 0),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(err(base, "empty graph6 string"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + i, format!("byte {b} outside graph6 range 63..=126")));
        }
    }

    // size header
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 36-bit form, always beyond our vertex cap
            return Err(err(base, "graph too large (36-bit size header)"));
        }
        if bytes.len() < 4 {
            return Err(err(base + bytes.len(), "truncated 18-bit size header"));
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(err(base, format!("n={n} exceeds limit {MAX_VERTICES}")));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = (nbits + 5) / 6;
    if bytes.len() - pos < nbytes {
        return Err(err(
            base + bytes.len(),
            format!(
                "truncated bit stream: need {} data bytes, found {}",
                nbytes,
                bytes.len() - pos
            ),
        ));
    }
    if bytes.len() - pos > nbytes {
        return Err(err(base + pos + nbytes, "trailing bytes after bit stream"));
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                cur = bytes[pos] - 63;
                pos += 1;
            }
            let set = (cur >> (5 - bit % 6)) & 1 == 1;
            if set {
                g.adj[i * n + j] = true;
                g.adj[j * n + i] = true;
            }
            bit += 1;
        }
    }
    // padding bits must be zero
    if bit % 6 != 0 {
        let pad = cur & ((1 << (6 - bit % 6)) - 1);
        if pad != 0 {
            return Err(err(base + pos - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Serializes a graph to its canonical graph6 string (no header).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_VERTICES, "n exceeds graph6 limit");
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut cur = 0u8;
    let mut fill = 0;
    for j in 1..n {
        for i in 0..j {
            cur <<= 1;
            if g.has_edge(i, j) {
                cur |= 1;
            }
            fill += 1;
            if fill == 6 {
                out.push(63 + cur);
                cur = 0;
                fill = 0;
            }
        }
    }
    if fill > 0 {
        out.push(63 + (cur << (6 - fill)));
    }
    String::from_utf8(out).unwrap()
}
