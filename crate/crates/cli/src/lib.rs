//! Claim scripts, the randomized property runner and the SVG renderer.

pub mod dsl;
pub mod render;
pub mod report;
pub mod run;
pub mod suite;

pub use dsl::{parse_script, print_script, ParseError};
pub use render::{render, RenderError, Style};
pub use report::{Report, Verdict};
pub use run::run_script;
pub use suite::random_suite;
