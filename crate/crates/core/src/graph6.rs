//! graph6 encoding.
//!
//! Header: `n + 63` for `n <= 62`, otherwise `126` followed by `n` as 18 bits
//! in three 6-bit groups. Payload: the upper-triangle bits `x(i, j)`, `i < j`,
//! in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed big-endian six at
//! a time and zero-padded.

use crate::error::Graph6Error;
use crate::graph::Graph;

const OFFSET: u8 = 63;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let col = g.neighbors(j).0;
        for i in 0..j {
            acc = acc << 1 | (col >> i & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    // every byte lies in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { byte, offset });
        }
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Graph6Error::BadHeader);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - OFFSET) as usize);
        (n, &bytes[4..])
    };
    let mut g = Graph::empty(n)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::Trailing {
            expected,
            found: body.len(),
        });
    }
    let bit = |k: usize| (body[k / 6] - OFFSET) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.link(i, j);
            }
            k += 1;
        }
    }
    if (k..expected * 6).any(bit) {
        return Err(Graph6Error::NonzeroPadding);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference encoder written directly from the bit layout, one bit per
    /// `char` before packing.
    fn reference_encode(g: &Graph) -> String {
        let n = g.order();
        let mut bits = String::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(if g.has_edge(i, j) { '1' } else { '0' });
            }
        }
        while !bits.len().is_multiple_of(6) {
            bits.push('0');
        }
        let mut s = String::new();
        if n <= 62 {
            s.push((n as u8 + 63) as char);
        } else {
            s.push('~');
            s.push(((n >> 12) as u8 + 63) as char);
            s.push((((n >> 6) & 63) as u8 + 63) as char);
            s.push(((n & 63) as u8 + 63) as char);
        }
        for chunk in bits.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            s.push((v + 63) as char);
        }
        s
    }

    #[test]
    fn known_strings() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(reference_encode(&k4), "C~");
        assert_eq!(encode(&k4), "C~");
        assert_eq!(encode(&Graph::empty(2).unwrap()), "A?");
        assert_eq!(decode("C~").unwrap(), k4);
        assert_eq!(decode("A?").unwrap(), Graph::empty(2).unwrap());
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        // petgraph's fixture: edges ac, ae, bd, de on 5 vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn long_header() {
        for n in [62, 63, 64] {
            let g = Graph::path(n).unwrap();
            let s = encode(&g);
            assert_eq!(s, reference_encode(&g));
            assert_eq!(decode(&s).unwrap(), g);
        }
        assert!(encode(&Graph::empty(63).unwrap()).starts_with("~??~"));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert!(matches!(decode("C"), Err(Graph6Error::Truncated { .. })));
        assert!(matches!(decode("C~~"), Err(Graph6Error::Trailing { .. })));
        // n=2 has one data bit; '@' = 000001 sets a padding bit
        assert_eq!(decode("A@"), Err(Graph6Error::NonzeroPadding));
        assert!(matches!(decode("C\x20"), Err(Graph6Error::BadByte { .. })));
        assert!(matches!(decode("~~"), Err(Graph6Error::BadHeader)));
        assert!(decode("?").is_err());
        // 65 vertices
        assert!(decode(&format!("~?A@{}", "?".repeat(347))).is_err());
    }

    #[test]
    fn matches_reference_on_paths_and_complements() {
        for n in 1..20 {
            let p = Graph::path(n).unwrap();
            assert_eq!(encode(&p), reference_encode(&p));
            assert_eq!(encode(&p.complement()), reference_encode(&p.complement()));
        }
    }
}
