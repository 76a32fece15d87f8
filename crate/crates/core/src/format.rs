//! Text file formats.
//!
//! `GSF/1` holds one colored graph:
//!
//! ```text
//! GSF 1 <n> <k>
//! <n(n-1)/2 structure bits as 0/1, triangle order>
//! <n space-separated colors>          (only when k > 1)
//! ```
//!
//! `GSH/1` holds one share as `key=value` lines in a fixed order. Shamir
//! payloads are comma-separated lowercase hex field elements, KGH payloads
//! comma-separated decimal digits. Unknown, duplicate or missing keys are
//! errors, and the payload must have exactly the length the metadata implies.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{parse_bit_string, triangle_len, ColoredGraph, Coloring, Graph, Predicate};
use crate::protocol::{GraphShare, SecretDescriptor, SecretKind};
use crate::schemes::{
    radix_block_count, FieldPrime, KghParams, Scheme, ShamirParams, Share, SharePayload,
};

pub const GSF_MAGIC: &str = "GSF";
pub const GSH_FORMAT: &str = "GSH/1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn render_graph(cg: &ColoredGraph) -> String {
    let mut out = format!(
        "{} 1 {} {}\n{}\n",
        GSF_MAGIC,
        cg.vertex_count(),
        cg.palette(),
        cg.graph().bit_string()
    );
    if cg.palette() > 1 {
        let colors: Vec<String> = cg.coloring().colors().iter().map(u32::to_string).collect();
        out.push_str(&colors.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| parse_err(text.lines().count().max(1), "missing final newline"))?;
    let lines: Vec<&str> = body.split('\n').collect();
    for (i, line) in lines.iter().enumerate() {
        if line.ends_with([' ', '\t', '\r']) {
            return Err(parse_err(i + 1, "trailing whitespace"));
        }
    }

    let header: Vec<&str> = lines[0].split(' ').collect();
    if header.len() != 4 || header[0] != GSF_MAGIC || header[1] != "1" {
        return Err(parse_err(1, "expected header `GSF 1 <n> <k>`"));
    }
    let n: usize = parse_number(header[2], 1, "vertex count")?;
    let k: u32 = parse_number(header[3], 1, "palette size")?;
    if n == 0 || k == 0 {
        return Err(parse_err(
            1,
            "vertex count and palette size must be positive",
        ));
    }

    let expected_lines = if k > 1 { 3 } else { 2 };
    if lines.len() != expected_lines {
        return Err(parse_err(
            lines.len().min(expected_lines + 1),
            format!(
                "expected {expected_lines} lines for k={k}, found {}",
                lines.len()
            ),
        ));
    }

    let bits = parse_bit_string(lines[1]).map_err(|e| parse_err(2, e.to_string()))?;
    if bits.len() != triangle_len(n) {
        return Err(parse_err(
            2,
            format!(
                "expected {} structure bits, found {}",
                triangle_len(n),
                bits.len()
            ),
        ));
    }
    let graph = Graph::new(n, bits).map_err(|e| parse_err(2, e.to_string()))?;

    let coloring = if k > 1 {
        let colors: Vec<u32> = lines[2]
            .split(' ')
            .map(|c| parse_number(c, 3, "color"))
            .collect::<Result<_>>()?;
        if colors.len() != n {
            return Err(parse_err(
                3,
                format!("expected {n} colors, found {}", colors.len()),
            ));
        }
        Coloring::new(k, colors).map_err(|e| parse_err(3, e.to_string()))?
    } else {
        Coloring::uncolored(n)?
    };
    ColoredGraph::new(graph, coloring)
}

/// Canonical unsigned decimal: no sign, no leading zeros.
fn parse_number<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    let canonical =
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    if !canonical {
        return Err(parse_err(
            line,
            format!("{what} `{s}` is not a canonical number"),
        ));
    }
    s.parse()
        .map_err(|_| parse_err(line, format!("{what} `{s}` is out of range")))
}

fn render_radices(radices: &[u32]) -> String {
    let mut runs: Vec<(u32, usize)> = Vec::new();
    for &r in radices {
        match runs.last_mut() {
            Some((radix, count)) if *radix == r => *count += 1,
            _ => runs.push((r, 1)),
        }
    }
    runs.iter()
        .map(|(r, c)| format!("{r}x{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_radices(s: &str, line: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    if s.is_empty() {
        return Ok(out);
    }
    for run in s.split(',') {
        let (r, c) = run.split_once('x').ok_or_else(|| {
            parse_err(line, format!("radix run `{run}` is not `<radix>x<count>`"))
        })?;
        let r: u32 = parse_number(r, line, "radix")?;
        let c: usize = parse_number(c, line, "radix count")?;
        out.extend(std::iter::repeat_n(r, c));
    }
    Ok(out)
}

const SHARE_KEYS: [&str; 14] = [
    "format",
    "scheme",
    "prime",
    "radices",
    "mode",
    "participant_index",
    "threshold",
    "n_participants",
    "kind",
    "n",
    "k",
    "declared_length",
    "predicate",
    "payload",
];

pub fn render_share(s: &GraphShare) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: &dyn std::fmt::Display| {
        writeln!(out, "{k}={v}").expect("writing to a String");
    };
    kv("format", &GSH_FORMAT);
    kv("scheme", &s.share.scheme.name());
    match &s.share.scheme {
        Scheme::Shamir(p) => {
            kv("prime", &p.prime());
            kv(
                "mode",
                &if p.prime().is_test() {
                    "test"
                } else {
                    "production"
                },
            );
        }
        Scheme::Kgh(p) => {
            kv("radices", &render_radices(p.radices()));
            kv("mode", &"production");
        }
    }
    kv("participant_index", &s.share.index);
    kv("threshold", &s.share.scheme.threshold());
    kv("n_participants", &s.share.scheme.participants());
    let d = &s.descriptor;
    kv("kind", &d.kind);
    kv("n", &d.vertices);
    kv("k", &d.palette);
    if let Some(l) = d.declared_length {
        kv("declared_length", &l);
    }
    kv("predicate", &d.predicate);
    let payload = match &s.share.payload {
        SharePayload::Blocks(b) => b.iter().map(|x| format!("{x:x}")).collect::<Vec<_>>(),
        SharePayload::Digits(d) => d.iter().map(u32::to_string).collect(),
    };
    kv("payload", &payload.join(","));
    out
}

pub fn parse_share(text: &str) -> Result<GraphShare> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| parse_err(text.lines().count().max(1), "missing final newline"))?;
    let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
    for (i, line) in body.split('\n').enumerate() {
        let lineno = i + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(lineno, "expected `key=value`"))?;
        if !SHARE_KEYS.contains(&key) {
            return Err(parse_err(lineno, format!("unknown key `{key}`")));
        }
        if fields.insert(key, (lineno, value)).is_some() {
            return Err(parse_err(lineno, format!("duplicate key `{key}`")));
        }
    }
    let last_line = body.split('\n').count();
    let get = |key: &str| -> Result<(usize, &str)> {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| parse_err(last_line, format!("missing key `{key}`")))
    };
    let reject_key = |key: &str, why: &str| -> Result<()> {
        match fields.get(key) {
            Some(&(line, _)) => Err(parse_err(line, format!("key `{key}` {why}"))),
            None => Ok(()),
        }
    };

    let (line, format) = get("format")?;
    if format != GSH_FORMAT {
        return Err(parse_err(line, format!("unsupported format `{format}`")));
    }

    let field = |key: &str| -> Result<(usize, usize)> {
        let (line, v) = get(key)?;
        Ok((line, parse_number(v, line, key)?))
    };
    let (_, index) = field("participant_index")?;
    let (t_line, threshold) = field("threshold")?;
    let (_, participants) = field("n_participants")?;
    let (kind_line, kind) = get("kind")?;
    let kind: SecretKind = kind
        .parse()
        .map_err(|e: Error| parse_err(kind_line, e.to_string()))?;
    let (_, vertices) = field("n")?;
    let (k_line, palette) = get("k")?;
    let palette: u32 = parse_number(palette, k_line, "k")?;
    let declared_length = match fields.get("declared_length") {
        Some(&(line, v)) => Some(parse_number::<usize>(v, line, "declared_length")?),
        None => None,
    };
    let (p_line, predicate) = get("predicate")?;
    let predicate: Predicate = predicate
        .parse()
        .map_err(|e: Error| parse_err(p_line, e.to_string()))?;
    let descriptor = SecretDescriptor::new(kind, vertices, palette, declared_length, predicate)
        .map_err(|e| parse_err(kind_line, e.to_string()))?;
    let radices = descriptor.radices();

    let (s_line, scheme_name) = get("scheme")?;
    let (m_line, mode) = get("mode")?;
    let (pay_line, payload) = get("payload")?;
    let items: Vec<&str> = if payload.is_empty() {
        Vec::new()
    } else {
        payload.split(',').collect()
    };
    let (scheme, payload) = match scheme_name {
        "shamir" => {
            reject_key("radices", "is not used by shamir shares")?;
            let (pr_line, prime) = get("prime")?;
            let prime = FieldPrime::new(parse_number(prime, pr_line, "prime")?)
                .map_err(|e| parse_err(pr_line, e.to_string()))?;
            let expected_mode = if prime.is_test() {
                "test"
            } else {
                "production"
            };
            if mode != expected_mode {
                return Err(parse_err(
                    m_line,
                    format!("prime {prime} requires mode={expected_mode}"),
                ));
            }
            let params = ShamirParams::new(threshold, participants, prime)
                .map_err(|e| parse_err(t_line, e.to_string()))?;
            let blocks: Vec<u64> = items
                .iter()
                .map(|h| {
                    let lower_hex = !h.is_empty()
                        && h.len() <= 16
                        && h.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'))
                        && (*h == "0" || !h.starts_with('0'));
                    if !lower_hex {
                        return Err(parse_err(
                            pay_line,
                            format!("`{h}` is not a lowercase hex block"),
                        ));
                    }
                    let v = u64::from_str_radix(h, 16).expect("validated hex");
                    if v >= prime.value() {
                        return Err(parse_err(
                            pay_line,
                            format!("block `{h}` is not below the prime"),
                        ));
                    }
                    Ok(v)
                })
                .collect::<Result<_>>()?;
            let expected = radix_block_count(&radices, prime);
            if blocks.len() != expected {
                return Err(parse_err(
                    pay_line,
                    format!("expected {expected} blocks, found {}", blocks.len()),
                ));
            }
            (Scheme::Shamir(params), SharePayload::Blocks(blocks))
        }
        "kgh" => {
            reject_key("prime", "is not used by kgh shares")?;
            if mode != "production" {
                return Err(parse_err(m_line, "kgh shares use mode=production"));
            }
            let (r_line, declared) = get("radices")?;
            let declared = parse_radices(declared, r_line)?;
            if declared != radices {
                return Err(parse_err(
                    r_line,
                    format!("radices do not match {kind} secret with n={vertices}, k={palette}"),
                ));
            }
            if threshold != participants {
                return Err(parse_err(t_line, "kgh threshold must equal n_participants"));
            }
            let params = KghParams::new(participants, radices.clone())
                .map_err(|e| parse_err(t_line, e.to_string()))?;
            let digits: Vec<u32> = items
                .iter()
                .map(|d| parse_number(d, pay_line, "digit"))
                .collect::<Result<_>>()?;
            if digits.len() != radices.len() {
                return Err(parse_err(
                    pay_line,
                    format!("expected {} digits, found {}", radices.len(), digits.len()),
                ));
            }
            if let Some(pos) = digits.iter().zip(&radices).position(|(d, r)| d >= r) {
                return Err(parse_err(
                    pay_line,
                    format!(
                        "digit {} at position {} is not below radix {}",
                        digits[pos], pos, radices[pos]
                    ),
                ));
            }
            (Scheme::Kgh(params), SharePayload::Digits(digits))
        }
        other => return Err(parse_err(s_line, format!("unknown scheme `{other}`"))),
    };
    if index == 0 || index > participants {
        let (line, _) = get("participant_index")?;
        return Err(parse_err(
            line,
            format!("participant index outside 1..={participants}"),
        ));
    }
    Ok(GraphShare {
        share: Share {
            scheme,
            index: index as u32,
            payload,
        },
        descriptor,
    })
}
