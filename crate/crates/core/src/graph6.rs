//! graph6 and sparse6 encodings.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("byte {offset}: {message}")]
    Malformed { offset: usize, message: String },
}

fn malformed(offset: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed { offset, message: message.into() }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Returns the vertex count and the number of bytes consumed.
fn decode_size(data: &[u8], start: usize) -> Result<(usize, usize), FormatError> {
    let byte = |i: usize| -> Result<usize, FormatError> {
        let b = *data.get(i).ok_or_else(|| malformed(i, "truncated vertex count"))?;
        if !(63..=126).contains(&b) {
            return Err(malformed(i, format!("byte {b} outside the printable range 63..=126")));
        }
        Ok((b - 63) as usize)
    };
    let first = byte(start)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if byte(start + 1)? < 63 {
        let mut n = 0;
        for i in 1..=3 {
            n = n << 6 | byte(start + i)?;
        }
        return Ok((n, 4));
    }
    let mut n = 0;
    for i in 2..=7 {
        n = n << 6 | byte(start + i)?;
    }
    Ok((n, 8))
}

fn push_bits(bits: &[bool], out: &mut Vec<u8>) {
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for i in 0..6 {
            x = x << 1 | u8::from(chunk.get(i).copied().unwrap_or(false));
        }
        out.push(x + 63);
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    push_bits(&bits, &mut out);
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph, FormatError> {
    let data = text.trim_end().as_bytes();
    let start = if data.starts_with(b">>graph6<<") { 10 } else { 0 };
    let (n, used) = decode_size(data, start)?;
    let body = start + used;
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if data.len() != body + need {
        let offset = data.len().min(body + need);
        return Err(malformed(offset, format!("expected {need} data bytes for {n} vertices, found {}", data.len() - body)));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let off = body + k / 6;
            let b = data[off];
            if !(63..=126).contains(&b) {
                return Err(malformed(off, format!("byte {b} outside the printable range 63..=126")));
            }
            if (b - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("decoded edges are in range"))
}

fn bit_width(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

pub fn to_sparse6(g: &Graph) -> String {
    let n = g.n();
    let mut out = vec![b':'];
    encode_size(n, &mut out);
    let k = bit_width(n);
    let mut edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (v, u)).collect();
    edges.sort_unstable();
    let mut bits: Vec<bool> = Vec::new();
    let push = |bits: &mut Vec<bool>, x: usize| {
        for i in (0..k).rev() {
            bits.push(x >> i & 1 == 1);
        }
    };
    let mut curv = 0usize;
    for &(v, u) in &edges {
        if v == curv {
            bits.push(false);
            push(&mut bits, u);
        } else if v == curv + 1 {
            curv += 1;
            bits.push(true);
            push(&mut bits, u);
        } else {
            curv = v;
            bits.push(true);
            push(&mut bits, v);
            bits.push(false);
            push(&mut bits, u);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == 1 << k && pad >= k && curv < n - 1 {
        bits.push(false);
        bits.extend(std::iter::repeat_n(true, pad - 1));
    } else {
        bits.extend(std::iter::repeat_n(true, pad));
    }
    push_bits(&bits, &mut out);
    String::from_utf8(out).expect("sparse6 is ASCII")
}

pub fn from_sparse6(text: &str) -> Result<Graph, FormatError> {
    let data = text.trim_end().as_bytes();
    let start = if data.starts_with(b">>sparse6<<") { 11 } else { 0 };
    if data.get(start) != Some(&b':') {
        return Err(malformed(start, "sparse6 strings start with ':'"));
    }
    let (n, used) = decode_size(data, start + 1)?;
    let body = start + 1 + used;
    let mut bits = Vec::new();
    for (i, &b) in data[body..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(malformed(body + i, format!("byte {b} outside the printable range 63..=126")));
        }
        for s in (0..6).rev() {
            bits.push((b - 63) >> s & 1 == 1);
        }
    }
    let k = bit_width(n);
    let mut edges = Vec::new();
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let x = bits[pos + 1..pos + 1 + k].iter().fold(0usize, |acc, &bit| acc << 1 | usize::from(bit));
        pos += 1 + k;
        if b {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            edges.push((x, v));
        }
    }
    let mut g = Graph::empty(n);
    if !edges.is_empty() {
        let loops = edges.iter().find(|(x, y)| x == y);
        if let Some(&(x, _)) = loops {
            return Err(malformed(body, format!("self-loop at vertex {x} is not supported")));
        }
        g = Graph::from_edges(n, edges).expect("decoded edges are in range");
    }
    Ok(g)
}

/// Decodes either format, chosen by the leading `:`.
pub fn decode(text: &str) -> Result<Graph, FormatError> {
    let t = text.trim_start_matches(">>sparse6<<");
    if t.starts_with(':') {
        from_sparse6(text)
    } else {
        from_graph6(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::small::*;

    #[test]
    fn known_graph6_strings() {
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        // Petersen graph as numbered by networkx
        let petersen = Graph::from_edges(
            10,
            [(0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (2, 3), (2, 7), (3, 4), (3, 8), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9), (7, 9)],
        )
        .unwrap();
        assert_eq!(to_graph6(&petersen), "IheA@GUAo");
        assert_eq!(from_graph6("IheA@GUAo").unwrap(), petersen);
    }

    #[test]
    fn known_sparse6_strings() {
        // reference strings from networkx
        assert_eq!(to_sparse6(&complete(4)), ":CcKI");
        assert_eq!(to_sparse6(&Graph::empty(1)), ":@");
        assert_eq!(from_sparse6(":CcKI").unwrap(), complete(4));
        for (n, s6) in [(8, ":GaV"), (16, ":O`F"), (5, ":Da^")] {
            let g = Graph::from_edges(n, [(0, 1), (1, 2)]).unwrap();
            assert_eq!(to_sparse6(&g), s6);
            assert_eq!(from_sparse6(s6).unwrap(), g);
        }
    }

    #[test]
    fn round_trips_large() {
        for n in [62, 63, 64, 100, 300] {
            let g = cycle(n);
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g, "graph6 n={n}");
            assert_eq!(from_sparse6(&to_sparse6(&g)).unwrap(), g, "sparse6 n={n}");
            assert_eq!(decode(&to_sparse6(&g)).unwrap(), g);
        }
        assert!(to_graph6(&cycle(100)).starts_with("~?@chC"));
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        assert_eq!(from_graph6("C~~"), Err(malformed(2, "expected 1 data bytes for 4 vertices, found 2")));
        assert!(matches!(from_graph6("C\x01"), Err(FormatError::Malformed { offset: 1, .. })));
        assert!(matches!(from_graph6(""), Err(FormatError::Malformed { offset: 0, .. })));
        assert!(matches!(from_sparse6("C~"), Err(FormatError::Malformed { offset: 0, .. })));
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap(), complete(4));
    }
}
