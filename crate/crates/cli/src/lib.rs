//! Script language, command dispatch and certificate documents for `csl`.

pub mod build;
pub mod document;
pub mod lexer;
pub mod parser;
pub mod run;

pub use document::{CertificateDocument, DocError};
pub use parser::{parse_script, ParseError, Script};
pub use run::{run_command, run_script, verify_document, Outcome, RunOptions};
