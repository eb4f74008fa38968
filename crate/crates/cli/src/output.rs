//! Exit codes and atomic file output.

use std::io::Write;
use std::path::Path;

use pstlab::Error;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VERTICES: u8 = 3;
pub const EXIT_WEIGHTS: u8 = 4;
pub const EXIT_INVARIANT: u8 = 5;
pub const EXIT_OUTPUT: u8 = 6;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: String) -> Self {
        Failure {
            code: EXIT_PARSE,
            message,
        }
    }

    pub fn vertices(message: String) -> Self {
        Failure {
            code: EXIT_VERTICES,
            message,
        }
    }

    pub fn invariant(message: String) -> Self {
        Failure {
            code: EXIT_INVARIANT,
            message,
        }
    }

    pub fn output(message: String) -> Self {
        Failure {
            code: EXIT_OUTPUT,
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::ParameterOutOfRange(_) => EXIT_PARSE,
            Error::VertexOutOfRange { .. } | Error::NotAnEdge { .. } | Error::Precondition(_) => EXIT_VERTICES,
            Error::NonIntegerWeights => EXIT_WEIGHTS,
            _ => EXIT_INVARIANT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure::output(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
