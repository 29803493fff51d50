//! Comparing, serializing and plotting persistence diagrams.

mod bottleneck;
mod json;
mod svg;

pub use bottleneck::{bottleneck_distance, BottleneckResult, MatchEnd, MatchedPair};
pub use json::{diagram_from_json, diagram_to_json};
pub use svg::{render_svg, SvgOptions};
