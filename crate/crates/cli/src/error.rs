use std::io;
use std::path::PathBuf;

use lcanet_core::format::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}:{}", path.display(), located(source))]
    Parse { path: PathBuf, source: ParseError },
}

/// `LINE: cause` for line errors, ` cause` otherwise.
fn located(e: &ParseError) -> String {
    match e {
        ParseError::Line { line, message } => format!("{line}: {message}"),
        ParseError::Input(inner) => format!(" {inner}"),
    }
}
