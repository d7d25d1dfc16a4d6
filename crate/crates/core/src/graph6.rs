//! graph6 encoding.
//!
//! Header: one byte `n + 63` for `n <= 62`, otherwise `126` followed by three
//! bytes carrying `n` as an 18-bit big-endian number. Body: the upper
//! triangle `x(0,1), x(0,2), x(1,2), x(0,3), ..` (column by column), packed
//! into 6-bit big-endian groups, zero padded, each group offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("malformed size header at offset {offset}")]
    BadHeader { offset: usize },
    #[error("vertex count {n} unsupported (1..=64)")]
    Size { n: usize },
    #[error("body truncated at offset {offset}: expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("unexpected trailing bytes starting at offset {offset}")]
    Trailing { offset: usize },
    #[error("non-zero padding bits in final byte at offset {offset}")]
    Padding { offset: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses one graph6 string. An optional `>>graph6<<` prefix is accepted;
/// surrounding whitespace is not (callers trim lines).
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let (bytes, base) = match text.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (text.as_bytes(), 0),
    };
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte { offset: base + i, byte: b });
        }
    }
    let (n, body_start) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader { offset: base + bytes.len() });
        }
        if bytes[1] == 126 {
            // 8-byte header for n >= 258048; far beyond the supported range
            return Err(Graph6Error::Size { n: usize::MAX });
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n <= 62 {
            return Err(Graph6Error::BadHeader { offset: base + 1 });
        }
        (n, 4)
    };
    if n == 0 || n > 64 {
        return Err(Graph6Error::Size { n });
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < expected {
        return Err(Graph6Error::Truncated { offset: base + bytes.len(), expected });
    }
    if body.len() > expected {
        return Err(Graph6Error::Trailing { offset: base + body_start + expected });
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                rows[i] |= 1u64 << j;
                rows[j] |= 1u64 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding { offset: base + body_start + expected - 1 });
        }
    }
    Ok(Graph::from_rows(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, path};

    #[test]
    fn known_strings() {
        // reference strings as produced by nauty's geng/showg
        assert_eq!(encode(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(encode(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(encode(&cycle(5).unwrap()), "Dhc");
        assert_eq!(encode(&path(4).unwrap()), "Ch");
        assert_eq!(encode(&complete_bipartite(3, 3).unwrap()), "EFz_");
        assert_eq!(encode(&Graph::empty(2).unwrap()), "A?");
        assert_eq!(encode(&Graph::new(2, &[(0, 1)]).unwrap()), "A_");
    }

    #[test]
    fn long_header_roundtrip() {
        let mut edges = Vec::new();
        for v in 1..64 {
            edges.push((v - 1, v));
        }
        for n in [63usize, 64] {
            let g = Graph::new(n, &edges[..n - 1]).unwrap();
            let s = encode(&g);
            assert_eq!(s.as_bytes()[0], 126);
            assert_eq!(decode(&s).unwrap(), g);
        }
        let g62 = Graph::complete(62).unwrap();
        assert_eq!(decode(&encode(&g62)).unwrap(), g62);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("B"), Err(Graph6Error::Truncated { offset: 1, expected: 1 }));
        assert_eq!(decode("Bww"), Err(Graph6Error::Trailing { offset: 2 }));
        assert_eq!(decode("B w"), Err(Graph6Error::BadByte { offset: 1, byte: b' ' }));
        // 'x' = 57+63: 111001 sets a padding bit
        assert_eq!(decode("Bx"), Err(Graph6Error::Padding { offset: 1 }));
        assert_eq!(decode("?"), Err(Graph6Error::Size { n: 0 }));
        assert!(matches!(decode("~??"), Err(Graph6Error::BadHeader { .. })));
        assert!(matches!(decode("~??}"), Err(Graph6Error::BadHeader { .. })));
        assert!(matches!(decode("~?AA"), Err(Graph6Error::Size { .. })));
        assert_eq!(decode(">>graph6<<Bw").unwrap(), Graph::complete(3).unwrap());
    }
}
