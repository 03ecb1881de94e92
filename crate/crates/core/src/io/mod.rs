//! Curve specs, result documents and SVG rendering.

mod document;
mod spec;
mod svg;

pub use document::{
    measure, BoundComparison, ClassSummary, ConfigurationRecord, PolygonSummary, Recertification, RecordSource,
    ResultDocument, RECERTIFY_TOL,
};
pub use spec::{CurveSpec, Harmonic, ParsedCurve};
pub use svg::render_svg;
