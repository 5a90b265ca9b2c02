//! Layouts: which vertices carry stabilizer tiles, and which edges are qubits.
//!
//! The qubit set is always the union of the boxes of the bulk (`Both`)
//! anchors, so bulk stabilizers are never truncated. Boundary anchors carry a
//! single stabilizer type whose tile is cut down to the available qubits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tiles::EdgeCoord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AnchorRole {
    /// Bulk anchor: both an X and a Z tile (black).
    #[serde(rename = "both")]
    Both,
    /// X tile only (red).
    #[serde(rename = "x")]
    XOnly,
    /// Z tile only (blue).
    #[serde(rename = "z")]
    ZOnly,
}

impl AnchorRole {
    pub fn has_x(self) -> bool {
        matches!(self, AnchorRole::Both | AnchorRole::XOnly)
    }

    pub fn has_z(self) -> bool {
        matches!(self, AnchorRole::Both | AnchorRole::ZOnly)
    }

    pub fn is_boundary(self) -> bool {
        self != AnchorRole::Both
    }
}

impl fmt::Display for AnchorRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnchorRole::Both => "both",
            AnchorRole::XOnly => "x",
            AnchorRole::ZOnly => "z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LayoutKind {
    Unrotated { l: u32, m: u32 },
    Rotated { r: u32 },
    Custom,
}

/// Boundary layer counts: X-only rows below/above the bulk, Z-only columns left/right of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryLayers {
    pub bottom: u32,
    pub top: u32,
    pub left: u32,
    pub right: u32,
}

impl BoundaryLayers {
    /// `H−1` X layers on top and bottom, `W−1` Z layers left and right.
    pub fn default_for(width: i32, height: i32) -> Self {
        let x = (height - 1).max(0) as u32;
        let z = (width - 1).max(0) as u32;
        Self::symmetric(x, z)
    }

    pub fn symmetric(x_layers: u32, z_layers: u32) -> Self {
        Self {
            bottom: x_layers,
            top: x_layers,
            left: z_layers,
            right: z_layers,
        }
    }

    /// X layers below the bulk and Z layers to its right only.
    pub fn one_sided(x_layers: u32, z_layers: u32) -> Self {
        Self {
            bottom: x_layers,
            top: 0,
            left: 0,
            right: z_layers,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutError {
    #[error("box size must be at least 1x1, got {width}x{height}")]
    InvalidBox { width: i32, height: i32 },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("layout has no bulk anchors")]
    EmptyBulk,
    #[error("rotated layouts need a square box, got {width}x{height}")]
    NonSquareRotated { width: i32, height: i32 },
    #[error(
        "boxes at X anchor ({},{}) and Z anchor ({},{}) share edge {edge}, which is not a qubit",
        x_anchor.0, x_anchor.1, z_anchor.0, z_anchor.1
    )]
    OverlapOutsideQubits {
        x_anchor: (i32, i32),
        z_anchor: (i32, i32),
        edge: EdgeCoord,
    },
}

/// Anchored stabilizer positions plus the derived qubit edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    width: i32,
    height: i32,
    anchors: BTreeMap<(i32, i32), AnchorRole>,
    qubits: BTreeSet<EdgeCoord>,
    kind: LayoutKind,
}

/// Edges of the `W×H` box anchored at `(ax, ay)`.
pub fn box_at(ax: i32, ay: i32, width: i32, height: i32) -> impl Iterator<Item = EdgeCoord> {
    (0..height).flat_map(move |j| {
        (0..width).flat_map(move |i| [EdgeCoord::h(ax + i, ay + j), EdgeCoord::v(ax + i, ay + j)])
    })
}

/// Union of the boxes over all bulk anchors.
pub fn derive_qubits<'a>(
    bulk: impl IntoIterator<Item = &'a (i32, i32)>,
    width: i32,
    height: i32,
) -> Result<BTreeSet<EdgeCoord>, LayoutError> {
    if width < 1 || height < 1 {
        return Err(LayoutError::InvalidBox { width, height });
    }
    let mut out = BTreeSet::new();
    let mut any = false;
    for &(ax, ay) in bulk {
        any = true;
        out.extend(box_at(ax, ay, width, height));
    }
    if !any {
        return Err(LayoutError::EmptyBulk);
    }
    Ok(out)
}

impl Layout {
    /// Arbitrary anchor map. Not validated; call [`Layout::validate`].
    pub fn custom(
        width: i32,
        height: i32,
        anchors: impl IntoIterator<Item = ((i32, i32), AnchorRole)>,
    ) -> Result<Self, LayoutError> {
        Self::assemble(width, height, anchors.into_iter().collect(), LayoutKind::Custom)
    }

    fn assemble(
        width: i32,
        height: i32,
        anchors: BTreeMap<(i32, i32), AnchorRole>,
        kind: LayoutKind,
    ) -> Result<Self, LayoutError> {
        let bulk: Vec<(i32, i32)> = anchors
            .iter()
            .filter(|(_, r)| **r == AnchorRole::Both)
            .map(|(&p, _)| p)
            .collect();
        let qubits = derive_qubits(&bulk, width, height)?;
        Ok(Self {
            width,
            height,
            anchors,
            qubits,
            kind,
        })
    }

    /// Rectangular `L×M` bulk with X-only rows above/below and Z-only columns left/right.
    pub fn unrotated(
        l: u32,
        m: u32,
        width: i32,
        height: i32,
        layers: BoundaryLayers,
    ) -> Result<Self, LayoutError> {
        if l == 0 {
            return Err(LayoutError::NonPositive("L"));
        }
        if m == 0 {
            return Err(LayoutError::NonPositive("M"));
        }
        let (l, m) = (l as i32, m as i32);
        let mut anchors = BTreeMap::new();
        for x in 0..l {
            for y in 0..m {
                anchors.insert((x, y), AnchorRole::Both);
            }
            for y in -(layers.bottom as i32)..0 {
                anchors.insert((x, y), AnchorRole::XOnly);
            }
            for y in m..m + layers.top as i32 {
                anchors.insert((x, y), AnchorRole::XOnly);
            }
        }
        for y in 0..m {
            for x in -(layers.left as i32)..0 {
                anchors.insert((x, y), AnchorRole::ZOnly);
            }
            for x in l..l + layers.right as i32 {
                anchors.insert((x, y), AnchorRole::ZOnly);
            }
        }
        let layout = Self::assemble(
            width,
            height,
            anchors,
            LayoutKind::Unrotated {
                l: l as u32,
                m: m as u32,
            },
        )?;
        layout.validate()?;
        Ok(layout)
    }

    /// Unrotated layout with the default `H−1` / `W−1` boundary layers on every side.
    pub fn unrotated_default(l: u32, m: u32, width: i32, height: i32) -> Result<Self, LayoutError> {
        Self::unrotated(l, m, width, height, BoundaryLayers::default_for(width, height))
    }

    /// Diamond bulk `|x|+|y| ≤ r` with staircase boundaries: X-only in the
    /// upper-right and lower-left quadrants, Z-only in the upper-left and
    /// lower-right, each reaching `B−1` rows or columns past the diamond tip.
    pub fn rotated(r: u32, width: i32, height: i32) -> Result<Self, LayoutError> {
        if r == 0 {
            return Err(LayoutError::NonPositive("r"));
        }
        if width != height {
            return Err(LayoutError::NonSquareRotated { width, height });
        }
        if width < 1 {
            return Err(LayoutError::InvalidBox { width, height });
        }
        let r = r as i32;
        let reach = r + width - 1;
        let mut anchors = BTreeMap::new();
        for x in -r..=r {
            for y in -r..=r {
                if x.abs() + y.abs() <= r {
                    anchors.insert((x, y), AnchorRole::Both);
                }
            }
        }
        for x in 0..=r {
            for y in (r - x + 1)..=reach {
                anchors.insert((x, y), AnchorRole::XOnly);
                anchors.insert((-x, -y), AnchorRole::XOnly);
            }
        }
        for y in 0..=r {
            for x in -reach..=(y - r - 1) {
                anchors.insert((x, y), AnchorRole::ZOnly);
                anchors.insert((-x, -y), AnchorRole::ZOnly);
            }
        }
        let layout = Self::assemble(width, height, anchors, LayoutKind::Rotated { r: r as u32 })?;
        layout.validate()?;
        Ok(layout)
    }

    /// Copy with one anchor added or its role replaced. The qubit set is re-derived.
    pub fn with_anchor(&self, x: i32, y: i32, role: AnchorRole) -> Result<Self, LayoutError> {
        let mut anchors = self.anchors.clone();
        anchors.insert((x, y), role);
        Self::assemble(self.width, self.height, anchors, LayoutKind::Custom)
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn anchors(&self) -> &BTreeMap<(i32, i32), AnchorRole> {
        &self.anchors
    }

    pub fn qubits(&self) -> &BTreeSet<EdgeCoord> {
        &self.qubits
    }

    pub fn count_role(&self, role: AnchorRole) -> usize {
        self.anchors.values().filter(|&&r| r == role).count()
    }

    /// Anchors with the given role, in `(x, y)` order.
    pub fn anchors_with(&self, role: AnchorRole) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.anchors
            .iter()
            .filter(move |(_, &r)| r == role)
            .map(|(&p, _)| p)
    }

    /// Checks the boundary overlap rule: for every X-carrying anchor `p` and
    /// Z-carrying anchor `q`, at least one of them a boundary anchor, the
    /// edges shared by their boxes are all qubits.
    ///
    /// Pairs are scanned in `(p, q)` coordinate order, so the reported failure
    /// is the lexicographically first one.
    pub fn validate(&self) -> Result<(), LayoutError> {
        let (w, h) = (self.width, self.height);
        let z_anchors: Vec<((i32, i32), AnchorRole)> = self
            .anchors
            .iter()
            .filter(|(_, r)| r.has_z())
            .map(|(&p, &r)| (p, r))
            .collect();
        for (&p, &pr) in self.anchors.iter().filter(|(_, r)| r.has_x()) {
            for &(q, qr) in &z_anchors {
                if !pr.is_boundary() && !qr.is_boundary() {
                    continue;
                }
                if (p.0 - q.0).abs() >= w || (p.1 - q.1).abs() >= h {
                    continue;
                }
                let (x0, x1) = (p.0.max(q.0), p.0.min(q.0) + w - 1);
                let (y0, y1) = (p.1.max(q.1), p.1.min(q.1) + h - 1);
                for y in y0..=y1 {
                    for x in x0..=x1 {
                        for edge in [EdgeCoord::h(x, y), EdgeCoord::v(x, y)] {
                            if !self.qubits.contains(&edge) {
                                return Err(LayoutError::OverlapOutsideQubits {
                                    x_anchor: p,
                                    z_anchor: q,
                                    edge,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Wire form of a layout. The box size comes from the enclosing document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LayoutSpec {
    Unrotated {
        #[serde(rename = "L")]
        l: u32,
        #[serde(rename = "M")]
        m: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x_layers: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        z_layers: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x_layers_bottom: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x_layers_top: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        z_layers_left: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        z_layers_right: Option<u32>,
    },
    Rotated {
        r: u32,
    },
    Custom {
        anchors: Vec<(i32, i32, AnchorRole)>,
    },
}

impl LayoutSpec {
    pub fn unrotated(l: u32, m: u32) -> Self {
        LayoutSpec::Unrotated {
            l,
            m,
            x_layers: None,
            z_layers: None,
            x_layers_bottom: None,
            x_layers_top: None,
            z_layers_left: None,
            z_layers_right: None,
        }
    }

    /// Resolved boundary layers for an unrotated spec; per-side values override the symmetric ones.
    pub fn layers(&self, width: i32, height: i32) -> Option<BoundaryLayers> {
        match *self {
            LayoutSpec::Unrotated {
                x_layers,
                z_layers,
                x_layers_bottom,
                x_layers_top,
                z_layers_left,
                z_layers_right,
                ..
            } => {
                let d = BoundaryLayers::default_for(width, height);
                let x = x_layers.unwrap_or(d.bottom);
                let z = z_layers.unwrap_or(d.left);
                Some(BoundaryLayers {
                    bottom: x_layers_bottom.unwrap_or(x),
                    top: x_layers_top.unwrap_or(x),
                    left: z_layers_left.unwrap_or(z),
                    right: z_layers_right.unwrap_or(z),
                })
            }
            _ => None,
        }
    }

    /// Builds and validates the layout for a `W×H` box.
    pub fn build(&self, width: i32, height: i32) -> Result<Layout, LayoutError> {
        match self {
            LayoutSpec::Unrotated { l, m, .. } => {
                let layers = self.layers(width, height).expect("unrotated spec");
                Layout::unrotated(*l, *m, width, height, layers)
            }
            LayoutSpec::Rotated { r } => Layout::rotated(*r, width, height),
            LayoutSpec::Custom { anchors } => {
                let layout = Layout::custom(
                    width,
                    height,
                    anchors.iter().map(|&(x, y, role)| ((x, y), role)),
                )?;
                layout.validate()?;
                Ok(layout)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_box_qubits() {
        assert_eq!(derive_qubits(&[(0, 0)], 3, 3).unwrap().len(), 18);
        assert_eq!(derive_qubits(&[], 3, 3), Err(LayoutError::EmptyBulk));
    }

    #[test]
    fn square_bulk_qubit_counts() {
        let bulk: Vec<_> = (0..10).flat_map(|x| (0..10).map(move |y| (x, y))).collect();
        let q = derive_qubits(&bulk, 3, 3).unwrap();
        assert_eq!(q.len(), 288);
        assert!(q.iter().all(|e| (0..=11).contains(&e.x) && (0..=11).contains(&e.y)));
        let bulk: Vec<_> = (0..13).flat_map(|x| (0..13).map(move |y| (x, y))).collect();
        assert_eq!(derive_qubits(&bulk, 4, 4).unwrap().len(), 512);
    }

    #[test]
    fn rectangular_qubit_count_formula() {
        for (l, m, w, h) in [(1, 1, 1, 1), (3, 2, 2, 3), (5, 4, 4, 2), (2, 7, 3, 3)] {
            let layout = Layout::unrotated_default(l, m, w, h).unwrap();
            let expected = 2 * (l as i32 + w - 1) * (m as i32 + h - 1);
            assert_eq!(layout.qubits().len(), expected as usize);
        }
    }

    #[test]
    fn unrotated_anchor_counts() {
        let layout = Layout::unrotated_default(10, 10, 3, 3).unwrap();
        assert_eq!(layout.count_role(AnchorRole::Both), 100);
        assert_eq!(layout.count_role(AnchorRole::XOnly), 40);
        assert_eq!(layout.count_role(AnchorRole::ZOnly), 40);
        let red_rows: BTreeSet<i32> = layout.anchors_with(AnchorRole::XOnly).map(|p| p.1).collect();
        assert_eq!(red_rows, BTreeSet::from([-2, -1, 10, 11]));
        let blue_cols: BTreeSet<i32> = layout.anchors_with(AnchorRole::ZOnly).map(|p| p.0).collect();
        assert_eq!(blue_cols, BTreeSet::from([-2, -1, 10, 11]));

        let smallest = Layout::unrotated_default(1, 1, 2, 2).unwrap();
        assert_eq!(smallest.count_role(AnchorRole::Both), 1);
        assert_eq!(smallest.count_role(AnchorRole::XOnly), 2);
        assert_eq!(smallest.count_role(AnchorRole::ZOnly), 2);
    }

    #[test]
    fn distance_four_surface_layout() {
        let layout = Layout::unrotated(3, 3, 2, 2, BoundaryLayers::one_sided(1, 1)).unwrap();
        assert_eq!(layout.count_role(AnchorRole::Both), 9);
        let red: Vec<_> = layout.anchors_with(AnchorRole::XOnly).collect();
        assert_eq!(red, vec![(0, -1), (1, -1), (2, -1)]);
        let blue: Vec<_> = layout.anchors_with(AnchorRole::ZOnly).collect();
        assert_eq!(blue, vec![(3, 0), (3, 1), (3, 2)]);
    }

    #[test]
    fn unrotated_rejects_nonpositive() {
        assert_eq!(
            Layout::unrotated_default(0, 3, 2, 2),
            Err(LayoutError::NonPositive("L"))
        );
        assert_eq!(
            Layout::unrotated_default(3, 0, 2, 2),
            Err(LayoutError::NonPositive("M"))
        );
    }

    #[test]
    fn extra_boundary_layers_add_no_qubits() {
        // A third X layer sits a full box height away from every Z-only box.
        let wide = Layout::unrotated(4, 4, 3, 3, BoundaryLayers::symmetric(3, 2)).unwrap();
        let plain = Layout::unrotated_default(4, 4, 3, 3).unwrap();
        assert_eq!(wide.qubits(), plain.qubits());
        assert_eq!(wide.count_role(AnchorRole::XOnly), 24);
    }

    #[test]
    fn rotated_counts() {
        let layout = Layout::rotated(2, 3, 3).unwrap();
        assert_eq!(layout.count_role(AnchorRole::Both), 13);
        assert_eq!(layout.count_role(AnchorRole::XOnly), 18);
        assert_eq!(layout.count_role(AnchorRole::ZOnly), 18);
        let upper_right: BTreeSet<_> = layout
            .anchors_with(AnchorRole::XOnly)
            .filter(|p| p.0 >= 0 && p.1 > 0)
            .collect();
        let expected: BTreeSet<_> = [
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
        ]
        .into();
        assert_eq!(upper_right, expected);
        assert_eq!(Layout::rotated(1, 2, 2).unwrap().count_role(AnchorRole::Both), 5);
        assert_eq!(Layout::rotated(0, 2, 2), Err(LayoutError::NonPositive("r")));
        assert!(matches!(
            Layout::rotated(2, 2, 3),
            Err(LayoutError::NonSquareRotated { .. })
        ));
    }

    #[test]
    fn rotated_layouts_validate_and_are_point_symmetric() {
        for r in 1..=5 {
            for b in 1..=4 {
                let layout = Layout::rotated(r, b, b)
                    .unwrap_or_else(|e| panic!("r={r} B={b}: {e}"));
                for (&(x, y), role) in layout.anchors() {
                    assert_eq!(layout.anchors().get(&(-x, -y)), Some(role));
                }
            }
        }
    }

    #[test]
    fn extra_z_anchor_above_bulk_rejected() {
        let layout = Layout::unrotated_default(10, 10, 3, 3).unwrap();
        assert!(layout.validate().is_ok());
        for y in [11, 12] {
            let bad = layout.with_anchor(0, y, AnchorRole::ZOnly).unwrap();
            assert!(matches!(
                bad.validate(),
                Err(LayoutError::OverlapOutsideQubits { .. })
            ));
        }
    }

    #[test]
    fn reported_failure_is_first_in_order() {
        let layout = Layout::unrotated_default(3, 3, 3, 3).unwrap();
        let bad = layout
            .with_anchor(0, 5, AnchorRole::ZOnly)
            .unwrap()
            .with_anchor(2, 5, AnchorRole::ZOnly)
            .unwrap();
        let Err(LayoutError::OverlapOutsideQubits { x_anchor, z_anchor, .. }) = bad.validate()
        else {
            panic!("expected overlap failure");
        };
        assert_eq!(x_anchor, (0, 3));
        assert_eq!(z_anchor, (0, 5));
    }

    #[test]
    fn bulk_only_layout_accepted() {
        let layout = Layout::custom(3, 3, [((0, 0), AnchorRole::Both), ((1, 0), AnchorRole::Both)]).unwrap();
        assert!(layout.validate().is_ok());
    }

    #[test]
    fn layout_spec_json() {
        let spec: LayoutSpec =
            serde_json::from_str(r#"{"kind":"unrotated","L":3,"M":3,"x_layers_top":0,"z_layers_left":0,"x_layers":1,"z_layers":1}"#)
                .unwrap();
        assert_eq!(spec.layers(2, 2), Some(BoundaryLayers::one_sided(1, 1)));
        let layout = spec.build(2, 2).unwrap();
        assert_eq!(layout.count_role(AnchorRole::XOnly), 3);

        let custom: LayoutSpec =
            serde_json::from_str(r#"{"kind":"custom","anchors":[[0,0,"both"],[0,-1,"x"],[-1,0,"z"]]}"#).unwrap();
        let layout = custom.build(2, 2).unwrap();
        assert_eq!(layout.kind(), LayoutKind::Custom);
        assert_eq!(layout.anchors().len(), 3);

        let text = serde_json::to_string(&LayoutSpec::Rotated { r: 2 }).unwrap();
        assert_eq!(text, r#"{"kind":"rotated","r":2}"#);
        assert!(serde_json::from_str::<LayoutSpec>(r#"{"kind":"hexagonal"}"#).is_err());
    }
}
