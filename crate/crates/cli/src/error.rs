use std::path::PathBuf;
use std::process::ExitCode;

use tensor_index_core::syntax;
use thiserror::Error;

/// Everything the command line can fail with. Each variant has a stable
/// category string and exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Read(#[from] syntax::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    TensorFile { path: PathBuf, message: String },
    #[error("{0}")]
    NotEqual(String),
    #[error("{0}")]
    ChecksFailed(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Read(e) => e.category(),
            CliError::Io { .. } => "io",
            CliError::TensorFile { .. } => "tensor-file",
            CliError::NotEqual(_) => "not-equal",
            CliError::ChecksFailed(_) => "checks-failed",
        }
    }

    pub fn exit_code(&self) -> u8 {
        exit_code(self.category())
    }
}

/// Exit codes by category.
pub const EXIT_CODES: [(&str, u8); 13] = [
    ("ok", 0),
    ("not-equal", 1),
    ("checks-failed", 1),
    ("usage", 2),
    ("parse", 3),
    ("elaborate-arity", 4),
    ("elaborate-duality", 5),
    ("elaborate-multiplicity", 6),
    ("elaborate-free-index", 7),
    ("env-missing", 8),
    ("io", 9),
    ("elaborate-type", 10),
    ("tensor-file", 11),
];

pub fn exit_code(category: &str) -> u8 {
    EXIT_CODES
        .iter()
        .find(|(c, _)| *c == category)
        .map(|(_, code)| *code)
        .unwrap_or(1)
}

pub fn report(e: &CliError, json: bool) -> ExitCode {
    eprintln!("error[{}]: {e}", e.category());
    if json {
        let mut obj = serde_json::json!({
            "error": { "category": e.category(), "message": e.to_string() }
        });
        if let CliError::Read(r) = e {
            let span = match r {
                syntax::Error::Syntax(s) => Some(s.span),
                syntax::Error::Elab(el) => el.span(),
            };
            if let Some(s) = span {
                obj["error"]["span"] = serde_json::json!([s.start, s.end]);
            }
        }
        println!("{obj}");
    }
    ExitCode::from(e.exit_code())
}
