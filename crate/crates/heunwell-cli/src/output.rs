//! Deterministic CSV emission: 15 significant digits, '.' decimal
//! separator, '\n' line endings, ordered single-threaded writes.

use std::io::Write;

/// A number rendered with exactly 15 significant digits.
pub fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

pub struct CsvWriter {
    out: std::io::BufWriter<std::fs::File>,
}

impl CsvWriter {
    pub fn create(path: &std::path::Path) -> Result<CsvWriter, String> {
        let file = std::fs::File::create(path)
            .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
        Ok(CsvWriter {
            out: std::io::BufWriter::new(file),
        })
    }

    pub fn comment(&mut self, text: &str) -> Result<(), String> {
        writeln!(self.out, "# {text}").map_err(|e| e.to_string())
    }

    pub fn header(&mut self, columns: &[&str]) -> Result<(), String> {
        writeln!(self.out, "{}", columns.join(",")).map_err(|e| e.to_string())
    }

    pub fn row(&mut self, fields: &[String]) -> Result<(), String> {
        writeln!(self.out, "{}", fields.join(",")).map_err(|e| e.to_string())
    }

    pub fn finish(mut self) -> Result<(), String> {
        self.out.flush().map_err(|e| e.to_string())
    }
}
