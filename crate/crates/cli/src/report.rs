//! Artifact plumbing: a sink that writes named files into the output
//! directory (or stdout), CSV assembly with full-precision floats, and the
//! format switch.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::Deserialize;

use crate::Failure;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Doubles are written with 17 significant digits so they round-trip exactly.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV artifact under construction: header first, then rows of
/// preformatted cells.
pub struct Csv(String);

impl Csv {
    pub fn new(columns: &[&str]) -> Self {
        let mut s = columns.join(",");
        s.push('\n');
        Csv(s)
    }

    pub fn push(&mut self, cells: &[String]) {
        self.0.push_str(&cells.join(","));
        self.0.push('\n');
    }

    pub fn finish(self) -> String {
        self.0
    }
}

pub struct Sink {
    out_dir: Option<PathBuf>,
    pub format: Format,
}

impl Sink {
    pub fn new(out_dir: Option<PathBuf>, format: Format) -> Result<Self, Failure> {
        if let Some(d) = &out_dir {
            std::fs::create_dir_all(d)
                .map_err(|e| Failure::Validation(format!("out dir {}: {e}", d.display())))?;
        }
        Ok(Sink { out_dir, format })
    }

    /// Write one artifact. `stem` gets the format extension appended. With an
    /// output directory the content goes to a file and the path is announced;
    /// otherwise the content is printed under a `# name` banner.
    pub fn emit(&self, stem: &str, content: &str) -> Result<(), Failure> {
        let name = format!("{stem}.{}", self.format.extension());
        match &self.out_dir {
            Some(d) => {
                let path = d.join(&name);
                std::fs::write(&path, content)
                    .map_err(|e| Failure::Validation(format!("writing {}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            None => {
                println!("# {name}");
                print!("{content}");
            }
        }
        Ok(())
    }

    /// Serialize a JSON artifact with a trailing newline.
    pub fn emit_json(&self, stem: &str, value: &serde_json::Value) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| Failure::Validation(format!("serializing {stem}: {e}")))?;
        text.push('\n');
        self.emit(stem, &text)
    }
}
