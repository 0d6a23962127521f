use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};

use planar_switch::report::InputDocument;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("malformed input {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error(transparent)]
    Core(planar_switch::Error),
}

impl From<planar_switch::Error> for CliError {
    fn from(e: planar_switch::Error) -> Self {
        if e.is_out_of_scope() {
            CliError::OutOfScope(e.to_string())
        } else {
            CliError::Core(e)
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::OutOfScope(_) => 2,
            _ => 1,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    let err = |source| CliError::Read { path: path.to_path_buf(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(err)
    }
}

/// Parse a system description; errors carry line and column.
pub fn parse_document(text: &str, path: &Path) -> Result<InputDocument, CliError> {
    let doc: InputDocument =
        serde_json::from_str(text).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })?;
    let finite = doc.a.iter().chain(doc.b.iter()).flatten().all(|v| v.is_finite());
    if !finite {
        return Err(CliError::Parse { path: path.to_path_buf(), message: "matrix entries must be finite".into() });
    }
    Ok(doc)
}

pub fn read_document(path: &Path) -> Result<InputDocument, CliError> {
    parse_document(&read_text(path)?, path)
}

/// Write to `path` through a temporary file in the same directory, or to
/// standard output.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Write { path: PathBuf::from("-"), source })
        }
        Some(path) => write_atomic(path, bytes),
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let err = |source| CliError::Write { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(bytes).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

/// Colors only for a terminal on standard output, and never with `NO_COLOR`.
pub fn use_color(to_file: bool) -> bool {
    !to_file && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stdout().is_terminal()
}
