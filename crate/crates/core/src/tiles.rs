//! Stabilizer tiles: edge subsets of a `W×H` box, the X/Z duality between
//! them, exhaustive candidate enumeration and polynomial (hypergraph-product)
//! tiles.
//!
//! A box anchored at vertex `(0, 0)` owns the horizontal edges `H(x, y)` and
//! vertical edges `V(x, y)` with `0 ≤ x < W`, `0 ≤ y < H`. Edges on the top
//! row of horizontals and the rightmost column of verticals are simply not
//! representable, so every `Tile` satisfies the box confinement rule by
//! construction.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    /// Segment from `(x, y)` to `(x + 1, y)`.
    H,
    /// Segment from `(x, y)` to `(x, y + 1)`.
    V,
}

/// A lattice edge, i.e. a physical qubit.
///
/// Ordering is the canonical qubit order: horizontal before vertical, then
/// `y`, then `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeCoord {
    pub orientation: Orientation,
    pub x: i32,
    pub y: i32,
}

impl EdgeCoord {
    pub const fn h(x: i32, y: i32) -> Self {
        Self {
            orientation: Orientation::H,
            x,
            y,
        }
    }

    pub const fn v(x: i32, y: i32) -> Self {
        Self {
            orientation: Orientation::V,
            x,
            y,
        }
    }

    pub const fn translate(self, dx: i32, dy: i32) -> Self {
        Self {
            orientation: self.orientation,
            x: self.x + dx,
            y: self.y + dy,
        }
    }
}

impl Ord for EdgeCoord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.orientation, self.y, self.x).cmp(&(other.orientation, other.y, other.x))
    }
}

impl PartialOrd for EdgeCoord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::H => "H",
            Orientation::V => "V",
        };
        write!(f, "{o}({},{})", self.x, self.y)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("box size must be at least 1x1, got {width}x{height}")]
    InvalidBox { width: i32, height: i32 },
    #[error("edge {edge} lies outside the {width}x{height} box")]
    OutOfBox { edge: EdgeCoord, width: i32, height: i32 },
    #[error("degenerate tile: a tile needs at least one edge")]
    DegenerateTile,
    #[error("X tile is {x_width}x{x_height} but Z tile is {z_width}x{z_height}")]
    BoxMismatch {
        x_width: i32,
        x_height: i32,
        z_width: i32,
        z_height: i32,
    },
    #[error("Z tile is not the dual of the X tile: missing edge {0}")]
    MissingDualEdge(EdgeCoord),
    #[error("Z tile is not the dual of the X tile: unexpected edge {0}")]
    UnexpectedDualEdge(EdgeCoord),
    #[error("weight {weight} out of range 1..={max} for a {width}x{height} box")]
    WeightOutOfRange {
        weight: usize,
        max: usize,
        width: i32,
        height: i32,
    },
    #[error("zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    #[error("polynomial degree must be at least 1: {0}")]
    ConstantPolynomial(&'static str),
    #[error("cannot parse polynomial {text:?} at position {position}: {reason}")]
    PolynomialSyntax {
        text: String,
        position: usize,
        reason: String,
    },
}

/// Support of one stabilizer type inside a `W×H` box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TileFragment", into = "TileFragment")]
pub struct Tile {
    width: i32,
    height: i32,
    h_edges: BTreeSet<(i32, i32)>,
    v_edges: BTreeSet<(i32, i32)>,
}

impl Tile {
    pub fn new(
        width: i32,
        height: i32,
        h_edges: impl IntoIterator<Item = (i32, i32)>,
        v_edges: impl IntoIterator<Item = (i32, i32)>,
    ) -> Result<Self, TileError> {
        let tile = Self::new_unchecked_weight(width, height, h_edges, v_edges)?;
        if tile.weight() == 0 {
            return Err(TileError::DegenerateTile);
        }
        Ok(tile)
    }

    fn new_unchecked_weight(
        width: i32,
        height: i32,
        h_edges: impl IntoIterator<Item = (i32, i32)>,
        v_edges: impl IntoIterator<Item = (i32, i32)>,
    ) -> Result<Self, TileError> {
        if width < 1 || height < 1 {
            return Err(TileError::InvalidBox { width, height });
        }
        let h_edges: BTreeSet<_> = h_edges.into_iter().collect();
        let v_edges: BTreeSet<_> = v_edges.into_iter().collect();
        let in_box = |&(x, y): &(i32, i32)| (0..width).contains(&x) && (0..height).contains(&y);
        if let Some(&(x, y)) = h_edges.iter().find(|e| !in_box(e)) {
            return Err(TileError::OutOfBox {
                edge: EdgeCoord::h(x, y),
                width,
                height,
            });
        }
        if let Some(&(x, y)) = v_edges.iter().find(|e| !in_box(e)) {
            return Err(TileError::OutOfBox {
                edge: EdgeCoord::v(x, y),
                width,
                height,
            });
        }
        Ok(Self {
            width,
            height,
            h_edges,
            v_edges,
        })
    }

    /// Builds a tile from box-relative edges.
    pub fn from_edges(
        width: i32,
        height: i32,
        edges: impl IntoIterator<Item = EdgeCoord>,
    ) -> Result<Self, TileError> {
        let mut h = Vec::new();
        let mut v = Vec::new();
        for e in edges {
            match e.orientation {
                Orientation::H => h.push((e.x, e.y)),
                Orientation::V => v.push((e.x, e.y)),
            }
        }
        Self::new(width, height, h, v)
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn h_edges(&self) -> &BTreeSet<(i32, i32)> {
        &self.h_edges
    }

    pub fn v_edges(&self) -> &BTreeSet<(i32, i32)> {
        &self.v_edges
    }

    pub fn weight(&self) -> usize {
        self.h_edges.len() + self.v_edges.len()
    }

    pub fn contains(&self, e: EdgeCoord) -> bool {
        match e.orientation {
            Orientation::H => self.h_edges.contains(&(e.x, e.y)),
            Orientation::V => self.v_edges.contains(&(e.x, e.y)),
        }
    }

    /// Box-relative edges in canonical order.
    pub fn edges(&self) -> Vec<EdgeCoord> {
        let mut out: Vec<EdgeCoord> = self
            .h_edges
            .iter()
            .map(|&(x, y)| EdgeCoord::h(x, y))
            .chain(self.v_edges.iter().map(|&(x, y)| EdgeCoord::v(x, y)))
            .collect();
        out.sort();
        out
    }

    /// Edges of the tile placed with its box anchored at `(ax, ay)`.
    pub fn placed(&self, ax: i32, ay: i32) -> impl Iterator<Item = EdgeCoord> + '_ {
        self.h_edges
            .iter()
            .map(move |&(x, y)| EdgeCoord::h(x + ax, y + ay))
            .chain(
                self.v_edges
                    .iter()
                    .map(move |&(x, y)| EdgeCoord::v(x + ax, y + ay)),
            )
    }

    /// The partner tile: point reflection through the box center combined with
    /// an orientation swap.
    pub fn dual(&self) -> Tile {
        let (w, h) = (self.width, self.height);
        Tile {
            width: w,
            height: h,
            h_edges: self
                .v_edges
                .iter()
                .map(|&(x, y)| (w - 1 - x, h - 1 - y))
                .collect(),
            v_edges: self
                .h_edges
                .iter()
                .map(|&(x, y)| (w - 1 - x, h - 1 - y))
                .collect(),
        }
    }

    /// Compact one-line form, e.g. `3x3 H[(0,0),(2,1)] V[(0,2)]`.
    pub fn short(&self) -> String {
        let list = |s: &BTreeSet<(i32, i32)>| {
            s.iter()
                .map(|(x, y)| format!("({x},{y})"))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{}x{} H[{}] V[{}]",
            self.width,
            self.height,
            list(&self.h_edges),
            list(&self.v_edges)
        )
    }
}

/// Wire form of a tile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileFragment {
    pub w: i32,
    pub h: i32,
    pub h_edges: Vec<[i32; 2]>,
    pub v_edges: Vec<[i32; 2]>,
}

impl TryFrom<TileFragment> for Tile {
    type Error = TileError;

    fn try_from(f: TileFragment) -> Result<Self, Self::Error> {
        Tile::new(
            f.w,
            f.h,
            f.h_edges.iter().map(|&[x, y]| (x, y)),
            f.v_edges.iter().map(|&[x, y]| (x, y)),
        )
    }
}

impl From<Tile> for TileFragment {
    fn from(t: Tile) -> Self {
        TileFragment {
            w: t.width,
            h: t.height,
            h_edges: t.h_edges.iter().map(|&(x, y)| [x, y]).collect(),
            v_edges: t.v_edges.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }
}

/// Checks that `z` is exactly the dual of `x` and neither tile is empty.
///
/// Dual edges absent from `z` are reported before surplus edges in `z`.
pub fn validate_tile_pair(x: &Tile, z: &Tile) -> Result<(), TileError> {
    if x.weight() == 0 || z.weight() == 0 {
        return Err(TileError::DegenerateTile);
    }
    if x.width != z.width || x.height != z.height {
        return Err(TileError::BoxMismatch {
            x_width: x.width,
            x_height: x.height,
            z_width: z.width,
            z_height: z.height,
        });
    }
    let expected = x.dual();
    if let Some(e) = expected.edges().into_iter().find(|&e| !z.contains(e)) {
        return Err(TileError::MissingDualEdge(e));
    }
    if let Some(e) = z.edges().into_iter().find(|&e| !expected.contains(e)) {
        return Err(TileError::UnexpectedDualEdge(e));
    }
    Ok(())
}

/// An X tile together with its dual Z tile.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TilePair {
    x_tile: Tile,
    z_tile: Tile,
}

impl TilePair {
    pub fn new(x_tile: Tile, z_tile: Tile) -> Result<Self, TileError> {
        validate_tile_pair(&x_tile, &z_tile)?;
        Ok(Self { x_tile, z_tile })
    }

    pub fn from_x_tile(x_tile: Tile) -> Self {
        let z_tile = x_tile.dual();
        Self { x_tile, z_tile }
    }

    pub fn x_tile(&self) -> &Tile {
        &self.x_tile
    }

    pub fn z_tile(&self) -> &Tile {
        &self.z_tile
    }

    pub fn width(&self) -> i32 {
        self.x_tile.width
    }

    pub fn height(&self) -> i32 {
        self.x_tile.height
    }

    /// The pair with X and Z roles exchanged. Still a valid pair since the dual map is an involution.
    pub fn swapped(&self) -> TilePair {
        TilePair {
            x_tile: self.z_tile.clone(),
            z_tile: self.x_tile.clone(),
        }
    }

    /// Overlap between the X tile at the origin and the Z tile anchored at `(dx, dy)`.
    pub fn overlap(&self, dx: i32, dy: i32) -> Overlap {
        let count = self
            .z_tile
            .placed(dx, dy)
            .filter(|&e| self.x_tile.contains(e))
            .count();
        Overlap { count }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overlap {
    pub count: usize,
}

impl Overlap {
    pub fn is_odd(self) -> bool {
        self.count % 2 == 1
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// All `w`-subsets of the `2·W·H` box edges, in lexicographic order of the
/// index tuples over the canonically ordered candidate edges.
///
/// The stream can start at any rank, so workers can split the range.
#[derive(Debug, Clone)]
pub struct TileEnumerator {
    width: i32,
    height: i32,
    candidates: Vec<EdgeCoord>,
    current: Option<Vec<usize>>,
    rank: u128,
    total: u128,
}

impl TileEnumerator {
    pub fn new(width: i32, height: i32, weight: usize) -> Result<Self, TileError> {
        Self::starting_at(width, height, weight, 0)
    }

    pub fn starting_at(
        width: i32,
        height: i32,
        weight: usize,
        start: u128,
    ) -> Result<Self, TileError> {
        if width < 1 || height < 1 {
            return Err(TileError::InvalidBox { width, height });
        }
        let candidates = box_edges(width, height);
        let max = candidates.len();
        if weight == 0 || weight > max {
            return Err(TileError::WeightOutOfRange {
                weight,
                max,
                width,
                height,
            });
        }
        let total = binomial(max as u64, weight as u64);
        let current = (start < total).then(|| unrank_combination(max, weight, start));
        Ok(Self {
            width,
            height,
            candidates,
            current,
            rank: start,
            total,
        })
    }

    /// Number of tiles in the full stream.
    pub fn total(&self) -> u128 {
        self.total
    }

    fn tile_for(&self, combo: &[usize]) -> Tile {
        Tile::from_edges(
            self.width,
            self.height,
            combo.iter().map(|&i| self.candidates[i]),
        )
        .expect("candidate edges lie inside the box")
    }
}

impl Iterator for TileEnumerator {
    /// `(rank, tile)`
    type Item = (u128, Tile);

    fn next(&mut self) -> Option<Self::Item> {
        let combo = self.current.take()?;
        let tile = self.tile_for(&combo);
        let rank = self.rank;
        self.rank += 1;
        self.current = next_combination(combo, self.candidates.len());
        Some((rank, tile))
    }
}

/// Position of `tile` in the [`TileEnumerator`] stream for its box and weight.
pub fn tile_rank(tile: &Tile) -> u128 {
    let candidates = box_edges(tile.width(), tile.height());
    let m = candidates.len() as u64;
    let w = tile.weight() as u64;
    let combo: Vec<u64> = candidates
        .iter()
        .enumerate()
        .filter(|(_, e)| tile.contains(**e))
        .map(|(i, _)| i as u64)
        .collect();
    let mut rank = 0u128;
    let mut next = 0u64;
    for (i, &c) in combo.iter().enumerate() {
        for skipped in next..c {
            rank += binomial(m - 1 - skipped, w - 1 - i as u64);
        }
        next = c + 1;
    }
    rank
}

/// Every edge of a `W×H` box in canonical order.
pub fn box_edges(width: i32, height: i32) -> Vec<EdgeCoord> {
    let mut out = Vec::with_capacity((2 * width * height).max(0) as usize);
    for y in 0..height {
        for x in 0..width {
            out.push(EdgeCoord::h(x, y));
        }
    }
    for y in 0..height {
        for x in 0..width {
            out.push(EdgeCoord::v(x, y));
        }
    }
    out
}

fn next_combination(mut combo: Vec<usize>, n: usize) -> Option<Vec<usize>> {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return Some(combo);
        }
    }
    None
}

fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut combo = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let with_next = binomial((n - next - 1) as u64, remaining as u64);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        combo.push(next);
        next += 1;
    }
    combo
}

/// Coefficients of `a(x)` and `b(y)`; index `i` holds the coefficient of the degree-`i` term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolynomialSpec {
    pub a_coeffs: Vec<bool>,
    pub b_coeffs: Vec<bool>,
}

impl PolynomialSpec {
    pub fn new(a_coeffs: Vec<bool>, b_coeffs: Vec<bool>) -> Self {
        Self { a_coeffs, b_coeffs }
    }

    /// Parses e.g. `"1+x+x^2"` and `"1+y^3"`.
    pub fn parse(a: &str, b: &str) -> Result<Self, TileError> {
        Ok(Self {
            a_coeffs: parse_polynomial(a, 'x')?,
            b_coeffs: parse_polynomial(b, 'y')?,
        })
    }

    pub fn deg_a(&self) -> Option<usize> {
        degree(&self.a_coeffs)
    }

    pub fn deg_b(&self) -> Option<usize> {
        degree(&self.b_coeffs)
    }
}

fn degree(coeffs: &[bool]) -> Option<usize> {
    coeffs.iter().rposition(|&c| c)
}

/// Parses a sum of distinct monomials `1`, `v`, `v^k` in the variable `var`.
pub fn parse_polynomial(text: &str, var: char) -> Result<Vec<bool>, TileError> {
    let err = |position: usize, reason: String| TileError::PolynomialSyntax {
        text: text.to_string(),
        position,
        reason,
    };
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err(0, "empty polynomial".into()));
    }
    let mut coeffs: Vec<bool> = Vec::new();
    let mut i = 0;
    loop {
        let Some(&(pos, c)) = chars.get(i) else {
            return Err(err(text.len(), "expected a monomial".into()));
        };
        let exponent = if c == '1' && chars.get(i + 1).is_none_or(|&(_, n)| n == '+') {
            i += 1;
            0
        } else if c == var {
            i += 1;
            if chars.get(i).is_some_and(|&(_, n)| n == '^') {
                i += 1;
                let start = i;
                while chars.get(i).is_some_and(|(_, d)| d.is_ascii_digit()) {
                    i += 1;
                }
                if start == i {
                    let p = chars.get(i).map_or(text.len(), |&(p, _)| p);
                    return Err(err(p, "expected an exponent".into()));
                }
                let digits: String = chars[start..i].iter().map(|&(_, d)| d).collect();
                digits
                    .parse::<usize>()
                    .ok()
                    .filter(|&e| e <= 64)
                    .ok_or_else(|| err(chars[start].0, format!("exponent {digits} too large")))?
            } else {
                1
            }
        } else {
            return Err(err(pos, format!("unexpected {c:?}, expected '1', '{var}' or '{var}^k'")));
        };
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, false);
        }
        if coeffs[exponent] {
            return Err(err(pos, format!("repeated monomial of degree {exponent}")));
        }
        coeffs[exponent] = true;
        match chars.get(i) {
            None => break,
            Some(&(_, '+')) => i += 1,
            Some(&(p, c)) => return Err(err(p, format!("unexpected {c:?}, expected '+'"))),
        }
    }
    Ok(coeffs)
}

/// Renders coefficients back into `1+x+x^2` form.
pub fn format_polynomial(coeffs: &[bool], var: char) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(i, _)| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Tile pair of the planar hypergraph-product construction.
///
/// The box is `(deg a + 1) × (deg b + 1)`. In the X tile the coefficient of
/// `x^i` colors the top-row horizontal edge `i` steps in from the right, and
/// the coefficient of `y^j` colors the right-column vertical edge `j` steps
/// down from the top. The Z tile is the dual, which puts `x^i` on the bottom
/// vertical edge at `x = i` and `y^j` on the left horizontal edge at `y = j`.
pub fn tiles_from_polynomials(spec: &PolynomialSpec) -> Result<TilePair, TileError> {
    let deg_a = spec.deg_a().ok_or(TileError::ZeroPolynomial("a"))?;
    let deg_b = spec.deg_b().ok_or(TileError::ZeroPolynomial("b"))?;
    if deg_a == 0 {
        return Err(TileError::ConstantPolynomial("a"));
    }
    if deg_b == 0 {
        return Err(TileError::ConstantPolynomial("b"));
    }
    let w = deg_a as i32 + 1;
    let h = deg_b as i32 + 1;
    let h_edges = spec
        .a_coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(i, _)| (w - 1 - i as i32, h - 1));
    let v_edges = spec
        .b_coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(j, _)| (w - 1, h - 1 - j as i32));
    let x_tile = Tile::new(w, h, h_edges, v_edges)?;
    Ok(TilePair::from_x_tile(x_tile))
}
