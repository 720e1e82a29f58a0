//! CSV writers and readers.
//!
//! Data files start with `# key = value` lines echoing the configuration,
//! followed by a header row. Floats are written with 17 significant digits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use qcghost::bounds::BoundReport;

use crate::error::CliError;

pub const TRAJECTORY_HEADER: &str = "t,n,x,y,Dy";
pub const REPORT_HEADER: &str = "check,params,quantity,bound,margin,passed";

/// One `t,n,x,y,Dy` row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub t: f64,
    pub n: i64,
    pub x: f64,
    pub y: f64,
    pub dy: f64,
}

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub struct CsvWriter {
    path: PathBuf,
    inner: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(path: &Path, echo: &[String], header: &str) -> Result<Self, CliError> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(io_err(parent))?;
        }
        let file = File::create(path).map_err(io_err(path))?;
        let mut w = CsvWriter {
            path: path.to_path_buf(),
            inner: BufWriter::new(file),
        };
        for line in echo {
            w.line(&format!("# {line}"))?;
        }
        w.line(header)?;
        Ok(w)
    }

    pub fn line(&mut self, text: &str) -> Result<(), CliError> {
        self.inner.write_all(text.as_bytes()).map_err(io_err(&self.path))?;
        self.inner.write_all(b"\n").map_err(io_err(&self.path))
    }

    pub fn row(&mut self, r: &Row) -> Result<(), CliError> {
        let text = format!("{},{},{},{},{}", float(r.t), r.n, float(r.x), float(r.y), float(r.dy));
        self.line(&text)
    }

    pub fn report(&mut self, r: &BoundReport) -> Result<(), CliError> {
        let text = format!(
            "{},{},{},{},{},{}",
            r.check,
            r.params,
            float(r.quantity),
            float(r.bound),
            float(r.margin),
            r.passed
        );
        self.line(&text)
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.inner.flush().map_err(io_err(&self.path))
    }
}

/// Reads the rows of a `t,n,x,y,Dy` file, skipping `#` lines.
pub fn read_trajectory(path: &Path) -> Result<Vec<Row>, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    let bad = |message: String| CliError::Csv {
        path: path.to_path_buf(),
        message,
    };
    let mut rows = Vec::new();
    let mut seen_header = false;
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        if !seen_header {
            if line != TRAJECTORY_HEADER {
                return Err(bad(format!("expected header '{TRAJECTORY_HEADER}', found '{line}'")));
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(bad(format!("line {}: expected 5 fields", idx + 1)));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("line {}: '{s}' is not a number", idx + 1)));
        rows.push(Row {
            t: num(fields[0])?,
            n: fields[1]
                .parse()
                .map_err(|_| bad(format!("line {}: '{}' is not a site index", idx + 1, fields[1])))?,
            x: num(fields[2])?,
            y: num(fields[3])?,
            dy: num(fields[4])?,
        });
    }
    if !seen_header {
        return Err(bad("missing header".into()));
    }
    Ok(rows)
}
