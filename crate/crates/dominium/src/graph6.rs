//! graph6 codec, bit-exact.
//!
//! Layout: header byte `n+63` for `n <= 62`; for larger orders the header is
//! `'~'` followed by three bytes carrying `n` in 18 bits, six per byte, each
//! offset by +63. The body packs the upper triangle column-major — the bit
//! for pair `(i,j)` with `i < j` ordered by `j` then `i` — six bits per byte
//! most-significant first, zero-padded to a byte boundary, each byte +63.
//!
//! The long header form is accepted on input for any order up to 64; output
//! uses the short form whenever it fits, so round-trips are byte-identical
//! for canonical input.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

/// Decode failures, each carrying the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte 0x{byte:02x} at offset {offset} (expected 63..=126)")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated header: long form needs 3 bytes after '~' at offset {offset}")]
    TruncatedHeader { offset: usize },
    #[error("order {n} out of range (supported: 1..={MAX_ORDER})")]
    OrderOutOfRange { n: usize },
    #[error("truncated body: expected {expected} bytes after the header, found {found}")]
    TruncatedBody { expected: usize, found: usize },
    #[error("trailing garbage starting at offset {offset}")]
    TrailingGarbage { offset: usize },
    #[error("nonzero padding bits in final body byte at offset {offset}")]
    NonzeroPadding { offset: usize },
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    let byte = bytes[offset];
    if !(63..=126).contains(&byte) {
        return Err(Graph6Error::InvalidByte { offset, byte });
    }
    Ok(u64::from(byte - 63))
}

/// Number of body bytes for an order-`n` graph.
fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Decodes one graph6 string.
pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }

    // Header: short form is a single byte; '~' switches to the 3-byte form.
    let (n, body_start) = if bytes[0] == b'~' {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader { offset: 0 });
        }
        let a = sextet(bytes, 1)?;
        let b = sextet(bytes, 2)?;
        let c = sextet(bytes, 3)?;
        (((a << 12) | (b << 6) | c) as usize, 4)
    } else {
        (sextet(bytes, 0)? as usize, 1)
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::OrderOutOfRange { n });
    }

    let expected = body_len(n);
    let found = bytes.len() - body_start;
    if found < expected {
        return Err(Graph6Error::TruncatedBody { expected, found });
    }
    if found > expected {
        return Err(Graph6Error::TrailingGarbage {
            offset: body_start + expected,
        });
    }

    let mut adj = vec![0u64; n];
    let pairs = n * (n - 1) / 2;
    let mut pair = 0usize;
    for j in 1..n {
        for i in 0..j {
            let chunk = sextet(bytes, body_start + pair / 6)?;
            if chunk >> (5 - pair % 6) & 1 == 1 {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            pair += 1;
        }
    }
    if pairs % 6 != 0 && expected > 0 {
        let last = body_start + expected - 1;
        let chunk = sextet(bytes, last)?;
        let pad_bits = 6 - pairs % 6;
        if chunk & ((1 << pad_bits) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding { offset: last });
        }
    }
    Ok(Graph::from_rows(n, adj))
}

/// Encodes a graph as its canonical graph6 string.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(b'~');
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }

    let mut chunk = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            chunk <<= 1;
            if g.has_edge(i, j) {
                chunk |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (chunk << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
