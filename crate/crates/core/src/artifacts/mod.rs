//! Exports of validated diagrams: SVG drawings, dual graphs and censuses.

pub mod census;
pub mod dual;
pub mod render;

pub use census::{census_report, CensusReport};
pub use dual::{DualError, DualGraph};
pub use render::{render_svg, Layout, LayoutOptions, RenderError, Smoothing};
