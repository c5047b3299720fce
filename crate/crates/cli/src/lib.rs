//! IO companion of `flipsig-core`: the element text format, SVG rendering,
//! and the seeded property battery driven by the `flipsig` binary.

pub mod format;
pub mod svg;
pub mod verify;
