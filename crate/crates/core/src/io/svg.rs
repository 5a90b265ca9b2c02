//! SVG drawings of layouts and placed tiles.
//!
//! Lattice `y` points up. Qubits are gray edges, anchors are dots colored by
//! role, and an optional highlighted anchor shows its box and tile edges,
//! with edges that fall outside the qubit set drawn dotted.

use std::fmt::Write as _;

use crate::layouts::{AnchorRole, Layout};
use crate::tiles::{EdgeCoord, Orientation, Tile, TilePair};

pub const UNIT: i32 = 24;
const MARGIN: i32 = 1;

/// Fixed palette.
pub mod colors {
    pub const X: &str = "#d62728";
    pub const Z: &str = "#1f77b4";
    pub const BOTH: &str = "#000000";
    pub const QUBIT: &str = "#9a9a9a";
    pub const HIGHLIGHT_FILL: &str = "#fff3b0";
}

fn role_color(role: AnchorRole) -> &'static str {
    match role {
        AnchorRole::Both => colors::BOTH,
        AnchorRole::XOnly => colors::X,
        AnchorRole::ZOnly => colors::Z,
    }
}

fn role_class(role: AnchorRole) -> &'static str {
    match role {
        AnchorRole::Both => "both",
        AnchorRole::XOnly => "x",
        AnchorRole::ZOnly => "z",
    }
}

struct Frame {
    x0: i32,
    y1: i32,
}

impl Frame {
    fn px(&self, x: i32) -> i32 {
        (x - self.x0 + MARGIN) * UNIT
    }

    fn py(&self, y: i32) -> i32 {
        (self.y1 - y + MARGIN) * UNIT
    }

    fn edge(&self, e: EdgeCoord) -> (i32, i32, i32, i32) {
        let (dx, dy) = match e.orientation {
            Orientation::H => (1, 0),
            Orientation::V => (0, 1),
        };
        (self.px(e.x), self.py(e.y), self.px(e.x + dx), self.py(e.y + dy))
    }
}

/// Renders `layout`; when `highlight` names an anchor and `pair` is given,
/// the tiles placed there are drawn on top.
pub fn render_svg(layout: &Layout, pair: Option<&TilePair>, highlight: Option<(i32, i32)>) -> String {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for e in layout.qubits() {
        xs.extend([e.x, e.x + 1]);
        ys.extend([e.y, e.y + 1]);
    }
    for &(x, y) in layout.anchors().keys() {
        xs.push(x);
        ys.push(y);
    }
    if let Some((ax, ay)) = highlight {
        xs.extend([ax, ax + layout.width()]);
        ys.extend([ay, ay + layout.height()]);
    }
    let (x0, x1) = (*xs.iter().min().unwrap_or(&0), *xs.iter().max().unwrap_or(&0));
    let (y0, y1) = (*ys.iter().min().unwrap_or(&0), *ys.iter().max().unwrap_or(&0));
    let frame = Frame { x0, y1 };
    let width = (x1 - x0 + 2 * MARGIN) * UNIT;
    let height = (y1 - y0 + 2 * MARGIN) * UNIT;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();

    let placed = highlight.and_then(|(ax, ay)| {
        let role = layout.anchors().get(&(ax, ay)).copied();
        pair.map(|p| (ax, ay, role, p))
    });
    if let Some((ax, ay, _, _)) = placed {
        writeln!(
            s,
            r#"<rect class="tile-box" x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
            frame.px(ax),
            frame.py(ay + layout.height()),
            layout.width() * UNIT,
            layout.height() * UNIT,
            colors::HIGHLIGHT_FILL
        )
        .unwrap();
    }

    writeln!(s, r#"<g stroke="{}" stroke-width="2">"#, colors::QUBIT).unwrap();
    for &e in layout.qubits() {
        let (a, b, c, d) = frame.edge(e);
        writeln!(s, r#"<line class="qubit" x1="{a}" y1="{b}" x2="{c}" y2="{d}"/>"#).unwrap();
    }
    writeln!(s, "</g>").unwrap();

    if let Some((ax, ay, role, p)) = placed {
        let mut tiles: Vec<(&Tile, &str, &str)> = Vec::new();
        let role = role.unwrap_or(AnchorRole::Both);
        if role.has_x() {
            tiles.push((p.x_tile(), colors::X, "x"));
        }
        if role.has_z() {
            tiles.push((p.z_tile(), colors::Z, "z"));
        }
        for (tile, color, class) in tiles {
            for e in tile.placed(ax, ay) {
                let (a, b, c, d) = frame.edge(e);
                let (extra, dash) = if layout.qubits().contains(&e) {
                    ("", "")
                } else {
                    (" truncated", r#" stroke-dasharray="2 4""#)
                };
                writeln!(
                    s,
                    r#"<line class="tile-edge {class}{extra}" x1="{a}" y1="{b}" x2="{c}" y2="{d}" stroke="{color}" stroke-width="4"{dash}/>"#
                )
                .unwrap();
            }
        }
    }

    for (&(x, y), &role) in layout.anchors() {
        writeln!(
            s,
            r#"<circle class="anchor {}" cx="{}" cy="{}" r="4" fill="{}"/>"#,
            role_class(role),
            frame.px(x),
            frame.py(y),
            role_color(role)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    fn row1() -> TilePair {
        TilePair::from_x_tile(
            Tile::new(3, 3, [(0, 0), (2, 1), (2, 2)], [(0, 2), (1, 2), (2, 0)]).unwrap(),
        )
    }

    #[test]
    fn unrotated_counts() {
        let layout = Layout::unrotated_default(10, 10, 3, 3).unwrap();
        let svg = render_svg(&layout, None, None);
        assert_eq!(count(&svg, r#"class="qubit""#), 288);
        assert_eq!(count(&svg, r#"class="anchor both""#), 100);
        assert_eq!(count(&svg, r#"class="anchor x""#), 40);
        assert_eq!(count(&svg, r#"class="anchor z""#), 40);
        assert_eq!(count(&svg, &format!(r#"fill="{}""#, colors::X)), 40);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn boundary_highlight_is_dotted() {
        let layout = Layout::unrotated_default(4, 4, 3, 3).unwrap();
        let svg = render_svg(&layout, Some(&row1()), Some((0, -2)));
        assert!(count(&svg, "truncated") > 0);
        assert_eq!(count(&svg, r#"class="tile-edge z"#), 0);
        let bulk = render_svg(&layout, Some(&row1()), Some((1, 1)));
        assert_eq!(count(&bulk, "truncated"), 0);
        assert_eq!(count(&bulk, "tile-edge"), 12);
    }

    #[test]
    fn rotated_diamond() {
        let layout = Layout::rotated(2, 3, 3).unwrap();
        let svg = render_svg(&layout, None, None);
        assert_eq!(count(&svg, r#"class="anchor both""#), 13);
        assert_eq!(count(&svg, r#"class="anchor x""#), 18);
        assert_eq!(count(&svg, r#"class="anchor z""#), 18);
        assert_eq!(count(&svg, r#"class="qubit""#), layout.qubits().len());
        assert_eq!(svg, render_svg(&layout, None, None));
    }

    #[test]
    fn y_axis_points_up() {
        let layout = Layout::unrotated_default(1, 2, 2, 2).unwrap();
        let svg = render_svg(&layout, None, None);
        let cy = |line: &str| -> i32 {
            let start = line.find("cy=\"").unwrap() + 4;
            line[start..].split('"').next().unwrap().parse().unwrap()
        };
        let lines: Vec<&str> = svg.lines().filter(|l| l.contains("anchor both")).collect();
        // Anchors are listed by (x, y): (0,0) then (0,1), and (0,1) sits higher.
        assert!(cy(lines[1]) < cy(lines[0]));
    }
}
