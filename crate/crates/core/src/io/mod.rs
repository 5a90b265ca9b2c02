//! Code documents, matrix exports and SVG rendering.

pub mod export;
pub mod spec;
pub mod svg;

pub use export::{export_checks, ExportError, ExportFormat};
pub use spec::{parse_spec, CodeSpecDocument, ParsedSpec, SpecError};
pub use svg::render_svg;
