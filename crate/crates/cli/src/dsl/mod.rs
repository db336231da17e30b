//! The claim-script language: AST, parser and pretty-printer.

pub mod ast;
pub mod parser;
pub mod printer;

pub use parser::{parse_script, ParseError};
pub use printer::print_script;
