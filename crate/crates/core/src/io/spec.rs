//! JSON code description documents.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "box": {"w": 3, "h": 3},
//!   "x_tile": {"h_edges": [[0,0],[2,1],[2,2]], "v_edges": [[0,2],[1,2],[2,0]]},
//!   "layout": {"kind": "unrotated", "L": 10, "M": 10},
//!   "distance": {"trials": 20000, "seed": 7}
//! }
//! ```
//!
//! `z_tile` may be given explicitly, in which case it must equal the dual of
//! `x_tile`. Unrotated boundary layers default to `H−1` rows and `W−1` columns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::layouts::{Layout, LayoutSpec};
use crate::tiles::{Tile, TileError, TilePair};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSize {
    pub w: i32,
    pub h: i32,
}

/// Tile edges relative to the document's box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileEdges {
    pub h_edges: Vec<[i32; 2]>,
    pub v_edges: Vec<[i32; 2]>,
}

impl TileEdges {
    pub fn from_tile(t: &Tile) -> Self {
        TileEdges {
            h_edges: t.h_edges().iter().map(|&(x, y)| [x, y]).collect(),
            v_edges: t.v_edges().iter().map(|&(x, y)| [x, y]).collect(),
        }
    }

    fn to_tile(&self, size: BoxSize) -> Result<Tile, TileError> {
        Tile::new(
            size.w,
            size.h,
            self.h_edges.iter().map(|&[x, y]| (x, y)),
            self.v_edges.iter().map(|&[x, y]| (x, y)),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Node budget for the exact search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecDocument {
    pub format_version: u32,
    #[serde(rename = "box")]
    pub box_size: BoxSize,
    pub x_tile: TileEdges,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_tile: Option<TileEdges>,
    pub layout: LayoutSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceSettings>,
}

/// Error with the JSON path of the offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for SpecError {}

fn at(path: &str, message: impl fmt::Display) -> SpecError {
    SpecError {
        path: path.to_string(),
        message: message.to_string(),
    }
}

/// Validated contents of a code document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSpec {
    pub pair: TilePair,
    pub layout: Layout,
    pub distance: DistanceSettings,
    pub document: CodeSpecDocument,
}

impl CodeSpecDocument {
    pub fn new(pair: &TilePair, layout: LayoutSpec) -> Self {
        CodeSpecDocument {
            format_version: FORMAT_VERSION,
            box_size: BoxSize {
                w: pair.width(),
                h: pair.height(),
            },
            x_tile: TileEdges::from_tile(pair.x_tile()),
            z_tile: None,
            layout,
            distance: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Resolves defaults and validates the tiles and layout.
    pub fn resolve(&self) -> Result<ParsedSpec, SpecError> {
        if self.format_version != FORMAT_VERSION {
            return Err(at(
                "format_version",
                format!("unsupported version {}", self.format_version),
            ));
        }
        let size = self.box_size;
        if size.w < 1 || size.h < 1 {
            return Err(at("box", format!("box {}x{} is empty", size.w, size.h)));
        }
        let x = self.x_tile.to_tile(size).map_err(|e| at("x_tile", e))?;
        let pair = match &self.z_tile {
            Some(z) => {
                let z = z.to_tile(size).map_err(|e| at("z_tile", e))?;
                TilePair::new(x, z).map_err(|e| at("z_tile", e))?
            }
            None => TilePair::from_x_tile(x),
        };
        let layout = self
            .layout
            .build(size.w, size.h)
            .map_err(|e| at("layout", e))?;
        Ok(ParsedSpec {
            pair,
            layout,
            distance: self.distance.unwrap_or_default(),
            document: self.clone(),
        })
    }
}

/// Parses and validates a code document.
pub fn parse_spec(text: &str) -> Result<ParsedSpec, SpecError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: CodeSpecDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        at(&path, e.into_inner())
    })?;
    doc.resolve()
}
