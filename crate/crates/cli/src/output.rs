//! CSV emission: UTF-8, Unix newlines, header row, shortest
//! round-trip decimal formatting (Rust's default f64 display), written to
//! stdout or to `--out`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::CliError;

pub struct CsvWriter {
    sink: Box<dyn Write>,
    path: Option<PathBuf>,
}

impl CsvWriter {
    pub fn create(out: Option<&Path>, header: &str) -> Result<Self, CliError> {
        let (sink, path): (Box<dyn Write>, _) = match out {
            Some(p) => {
                let file = File::create(p)
                    .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                (Box::new(BufWriter::new(file)), Some(p.to_path_buf()))
            }
            None => (Box::new(io::stdout().lock()), None),
        };
        let mut w = Self { sink, path };
        w.line(header)?;
        Ok(w)
    }

    pub fn line(&mut self, s: &str) -> Result<(), CliError> {
        self.sink
            .write_all(s.as_bytes())
            .and_then(|_| self.sink.write_all(b"\n"))
            .map_err(|e| self.io_err(e))
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.sink.flush().map_err(|e| self.io_err(e))
    }

    fn io_err(&self, e: io::Error) -> CliError {
        match &self.path {
            Some(p) => CliError::Io(format!("{}: {e}", p.display())),
            None => CliError::Io(format!("stdout: {e}")),
        }
    }
}

/// Joins already-formatted fields with commas.
pub fn row(fields: &[String]) -> String {
    fields.join(",")
}

/// Shortest round-trip decimal for one value.
pub fn num(x: f64) -> String {
    format!("{x}")
}
