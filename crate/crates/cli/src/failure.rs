use std::fmt::Display;
use std::path::Path;

use cabcoh::Error;

/// A failed run, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Validation(String),
    /// A configured cap was exceeded: exit code 3.
    Cap(String),
    /// An internal assertion failed: exit code 4.
    Assertion(String),
    /// Writing output failed: exit code 1.
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Assertion(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Cap(m) | Failure::Assertion(m) | Failure::Io(m) => m,
        }
    }

    pub fn validation(msg: impl Display) -> Self {
        Failure::Validation(msg.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::CapExceeded { .. } => Failure::Cap(msg),
            Error::Assertion(_) => Failure::Assertion(msg),
            _ => Failure::Validation(msg),
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
