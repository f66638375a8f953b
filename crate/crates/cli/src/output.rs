//! CSV tables with `#` metadata lines, written atomically.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

pub struct Table {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(meta: Vec<(String, String)>, header: &[&str]) -> Self {
        Table {
            meta,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_header(meta: Vec<(String, String)>, header: Vec<String>) -> Self {
        Table {
            meta,
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|x| format!("{x:e}")).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn write(&self, dir: &Path, name: &str) -> std::io::Result<PathBuf> {
        write_atomic(dir, name, &self.render())
    }
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    let path = dir.join(name);
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_has_metadata_then_header() {
        let mut t = Table::new(vec![("system".into(), "burgers".into())], &["s", "sigma"]);
        t.push(vec![0.5, 0.75]);
        assert_eq!(t.render(), "# system: burgers\ns,sigma\n5e-1,7.5e-1\n");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        write_atomic(dir.path(), "a.csv", "first").unwrap();
        let p = write_atomic(dir.path(), "a.csv", "second").unwrap();
        assert_eq!(std::fs::read_to_string(p).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
