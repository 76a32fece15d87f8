//! Conversion between graphs, mixed-radix digit strings and integers.
//!
//! A colored graph on `n` vertices with palette `k` becomes the digit string
//! `a21 a31 a32 a41 ... a_n(n-1) a11 a22 ... a_nn`: the lower triangle of the
//! adjacency matrix (radix 2) followed by the diagonal, which holds the vertex
//! colors (radix `k`). With `k = 1` the diagonal is all zeros and is omitted.
//!
//! The digit string is read as a mixed-radix number, most significant digit
//! first. `(n, k)` always travel next to the value; they are never inferred
//! from it, so leading zeros stay significant.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{triangle_len, ColoredGraph, Coloring, Graph};

/// The fixed-length digit image of a colored graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    n: usize,
    k: u32,
    structure: Vec<u8>,
    colors: Vec<u32>,
}

impl DigitString {
    pub fn new(n: usize, k: u32, structure: Vec<u8>, colors: Vec<u32>) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::MalformedDigits(format!(
                "vertex count and palette must be positive (n={n}, k={k})"
            )));
        }
        if structure.len() != triangle_len(n) {
            return Err(Error::MalformedDigits(format!(
                "expected {} structure digits for n={}, got {}",
                triangle_len(n),
                n,
                structure.len()
            )));
        }
        let color_len = if k > 1 { n } else { 0 };
        if colors.len() != color_len {
            return Err(Error::MalformedDigits(format!(
                "expected {} color digits for n={}, k={}, got {}",
                color_len,
                n,
                k,
                colors.len()
            )));
        }
        if let Some(pos) = structure.iter().position(|&d| d > 1) {
            return Err(Error::MalformedDigits(format!(
                "structure digit {} at position {} is not binary",
                structure[pos], pos
            )));
        }
        if let Some(pos) = colors.iter().position(|&d| d >= k) {
            return Err(Error::MalformedDigits(format!(
                "color digit {} at position {} is not below k={}",
                colors[pos], pos, k
            )));
        }
        Ok(DigitString {
            n,
            k,
            structure,
            colors,
        })
    }

    /// Builds a digit string from the flat digit sequence for `(n, k)`.
    pub fn from_digits(n: usize, k: u32, digits: &[u32]) -> Result<Self> {
        let t = triangle_len(n);
        if digits.len() < t {
            return Err(Error::MalformedDigits(format!(
                "expected at least {} digits, got {}",
                t,
                digits.len()
            )));
        }
        let (s, c) = digits.split_at(t);
        let structure = s
            .iter()
            .map(|&d| u8::try_from(d).unwrap_or(u8::MAX))
            .collect();
        DigitString::new(n, k, structure, c.to_vec())
    }

    /// The all-zero digit string for `(n, k)`.
    pub fn zero(n: usize, k: u32) -> Result<Self> {
        let colors = if k > 1 { vec![0; n] } else { Vec::new() };
        DigitString::new(n, k, vec![0; triangle_len(n)], colors)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> u32 {
        self.k
    }

    pub fn structure_digits(&self) -> &[u8] {
        &self.structure
    }

    pub fn color_digits(&self) -> &[u32] {
        &self.colors
    }

    /// Total digit count `|m|`.
    pub fn len(&self) -> usize {
        self.structure.len() + self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn digits(&self) -> Vec<u32> {
        self.structure
            .iter()
            .map(|&d| u32::from(d))
            .chain(self.colors.iter().copied())
            .collect()
    }

    pub fn radices(&self) -> Vec<u32> {
        radices(self.n, self.k)
    }

    /// Parses the rendering produced by `Display`.
    pub fn parse(s: &str, n: usize, k: u32) -> Result<Self> {
        let digits: Vec<u32> = if k <= 10 {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10).ok_or_else(|| {
                        Error::MalformedDigits(format!("{ch:?} is not a decimal digit"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            let (bits, colors) = s
                .split_once('|')
                .ok_or_else(|| Error::MalformedDigits("missing `|` before color digits".into()))?;
            let mut digits: Vec<u32> = bits
                .chars()
                .map(|ch| ch.to_digit(2).unwrap_or(u32::MAX))
                .collect();
            for part in colors.split('.') {
                digits.push(part.parse().map_err(|_| {
                    Error::MalformedDigits(format!("{part:?} is not a color digit"))
                })?);
            }
            digits
        };
        if digits.len() != digit_count(n, k) {
            return Err(Error::MalformedDigits(format!(
                "expected {} digits for n={}, k={}, got {}",
                digit_count(n, k),
                n,
                k,
                digits.len()
            )));
        }
        Self::from_digits(n, k, &digits)
    }
}

/// Digits are concatenated while every radix fits in one decimal digit
/// (`0111010021`); for `k > 10` the colors follow a `|`, separated by `.`.
impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.structure {
            write!(f, "{d}")?;
        }
        if self.k <= 10 {
            for &d in &self.colors {
                write!(f, "{d}")?;
            }
        } else {
            f.write_str("|")?;
            for (i, d) in self.colors.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

/// Position radices for `(n, k)`: 2 for each triangle entry, then `k` per
/// vertex when `k > 1`.
pub fn radices(n: usize, k: u32) -> Vec<u32> {
    let mut r = vec![2; triangle_len(n)];
    if k > 1 {
        r.extend(std::iter::repeat_n(k, n));
    }
    r
}

pub fn digit_count(n: usize, k: u32) -> usize {
    triangle_len(n) + if k > 1 { n } else { 0 }
}

/// Number of distinct digit strings for `(n, k)`: `2^(n(n-1)/2) * k^n`.
pub fn digit_space_size(n: usize, k: u32) -> BigUint {
    gamma(n) * BigUint::from(k).pow(n as u32)
}

/// Number of labeled graphs on `n` vertices, `2^(n(n-1)/2)`.
pub fn gamma(n: usize) -> BigUint {
    BigUint::one() << triangle_len(n)
}

/// Mixed-radix value of `digits` under `radices`, most significant first.
pub fn radix_value(digits: &[u32], radices: &[u32]) -> BigUint {
    digits
        .iter()
        .zip(radices)
        .fold(BigUint::zero(), |acc, (&d, &r)| acc * r + d)
}

/// Number of distinct digit vectors under `radices`.
pub fn radix_space(radices: &[u32]) -> BigUint {
    radices.iter().fold(BigUint::one(), |acc, &r| acc * r)
}

/// Inverse of [`radix_value`].
pub fn radix_digits(v: &BigUint, radices: &[u32]) -> Result<Vec<u32>> {
    let space = radix_space(radices);
    if *v >= space {
        return Err(Error::OutOfRange {
            space: space.to_string(),
        });
    }
    let mut rest = v.clone();
    let mut digits = vec![0; radices.len()];
    for (slot, &r) in digits.iter_mut().zip(radices).rev() {
        let (q, rem) = rest.div_rem(&BigUint::from(r));
        *slot = rem.to_u32().expect("remainder below radix");
        rest = q;
    }
    Ok(digits)
}

pub fn encode_graph(cg: &ColoredGraph) -> DigitString {
    let structure = cg.graph().bits().iter().map(|&b| u8::from(b)).collect();
    let colors = if cg.palette() > 1 {
        cg.coloring().colors().to_vec()
    } else {
        Vec::new()
    };
    DigitString {
        n: cg.vertex_count(),
        k: cg.palette(),
        structure,
        colors,
    }
}

pub fn decode_graph(d: &DigitString) -> Result<ColoredGraph> {
    let graph = Graph::new(d.n, d.structure.iter().map(|&b| b == 1).collect())?;
    let coloring = if d.k > 1 {
        Coloring::new(d.k, d.colors.clone())?
    } else {
        Coloring::uncolored(d.n)?
    };
    ColoredGraph::new(graph, coloring)
}

/// Mixed-radix value of the digits, most significant digit first.
pub fn digits_to_integer(d: &DigitString) -> BigUint {
    let mut v = BigUint::zero();
    for &digit in &d.structure {
        v <<= 1;
        v += u32::from(digit);
    }
    for &digit in &d.colors {
        v *= d.k;
        v += digit;
    }
    v
}

/// Exact inverse of [`digits_to_integer`] for fixed `(n, k)`.
pub fn integer_to_digits(v: &BigUint, n: usize, k: u32) -> Result<DigitString> {
    if n == 0 || k == 0 {
        return Err(Error::MalformedDigits(format!(
            "vertex count and palette must be positive (n={n}, k={k})"
        )));
    }
    let space = digit_space_size(n, k);
    if *v >= space {
        return Err(Error::OutOfRange {
            space: space.to_string(),
        });
    }
    let mut rest = v.clone();
    let mut colors = Vec::new();
    if k > 1 {
        colors = vec![0; n];
        let radix = BigUint::from(k);
        for slot in colors.iter_mut().rev() {
            let (q, r) = rest.div_rem(&radix);
            *slot = r.to_u32().expect("remainder below k");
            rest = q;
        }
    }
    let t = triangle_len(n);
    let structure = (0..t)
        .map(|pos| u8::from(rest.bit((t - 1 - pos) as u64)))
        .collect();
    Ok(DigitString {
        n,
        k,
        structure,
        colors,
    })
}

/// A bit string to be shared as a graph, remembering its true length.
///
/// Only the `declared_length` meaningful bits are stored; padding added when
/// the bits are laid out on a triangle is implicit and always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitPayload {
    bits: Vec<bool>,
}

impl BitPayload {
    pub fn new(bits: Vec<bool>) -> Self {
        BitPayload { bits }
    }

    /// `bits` carrying zero padding past `declared_length`.
    pub fn with_padding(mut bits: Vec<bool>, declared_length: usize) -> Result<Self> {
        if declared_length > bits.len() {
            return Err(Error::InvalidParams(format!(
                "declared length {} exceeds {} bits",
                declared_length,
                bits.len()
            )));
        }
        if let Some(pos) = bits[declared_length..].iter().position(|&b| b) {
            return Err(Error::PaddingViolated {
                position: declared_length + pos,
                declared: declared_length,
            });
        }
        bits.truncate(declared_length);
        Ok(BitPayload { bits })
    }

    /// Binary form of `v`, most significant bit first, without leading zeros.
    pub fn from_integer(v: &BigUint) -> Self {
        let len = v.bits();
        BitPayload {
            bits: (0..len).rev().map(|i| v.bit(i)).collect(),
        }
    }

    pub fn to_integer(&self) -> BigUint {
        self.bits
            .iter()
            .fold(BigUint::zero(), |acc, &b| (acc << 1u8) + u8::from(b))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn declared_length(&self) -> usize {
        self.bits.len()
    }

    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// Smallest vertex count whose triangle holds `l` bits.
pub fn vertices_for_length(l: usize) -> usize {
    let mut n = 1;
    while triangle_len(n) < l {
        n += 1;
    }
    n
}

/// Lays the payload bits on the smallest triangle that holds them, padding
/// the remaining highest positions with zeros.
pub fn number_to_graph(p: &BitPayload) -> Graph {
    let n = vertices_for_length(p.declared_length());
    let mut bits = p.bits.clone();
    bits.resize(triangle_len(n), false);
    Graph::new(n, bits).expect("triangle sized for n")
}

/// Reads the first `l` triangle bits back, requiring the rest to be zero.
pub fn graph_to_number(g: &Graph, l: usize) -> Result<BitPayload> {
    if l > g.bits().len() {
        return Err(Error::InvalidParams(format!(
            "declared length {} exceeds the {} triangle positions of a {}-vertex graph",
            l,
            g.bits().len(),
            g.vertex_count()
        )));
    }
    BitPayload::with_padding(g.bits().to_vec(), l)
}
