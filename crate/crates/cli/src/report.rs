//! Deterministic text output: one optional table followed by verdict lines.

use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned columns and `key: value` verdicts.
    Table,
    /// Comma-separated rows and `# key=value` verdicts.
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Format as ValueEnum>::from_str(s, true)
            .map_err(|_| format!("unknown format '{s}' (table or csv)"))
    }
}

#[derive(Debug, Default)]
pub struct Report {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    verdicts: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn columns(&mut self, header: &[&str]) {
        self.header = header.iter().map(|h| h.to_string()).collect();
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = impl ToString>) {
        let row: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn verdict(&mut self, key: &str, value: impl ToString) {
        self.verdicts.push((key.to_string(), value.to_string()));
    }

    /// Free text, printed after the verdicts (prefixed with `#` in CSV).
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Table => {
                if !self.header.is_empty() {
                    let widths: Vec<usize> = (0..self.header.len())
                        .map(|k| {
                            self.rows
                                .iter()
                                .map(|r| r[k].len())
                                .chain([self.header[k].len()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    let line = |cells: &[String]| {
                        cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, w)| format!("{c:>w$}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    writeln!(out, "{}", line(&self.header)).unwrap();
                    for r in &self.rows {
                        writeln!(out, "{}", line(r)).unwrap();
                    }
                }
                for (k, v) in &self.verdicts {
                    writeln!(out, "{k}: {v}").unwrap();
                }
                for n in &self.notes {
                    writeln!(out, "{n}").unwrap();
                }
            }
            Format::Csv => {
                if !self.header.is_empty() {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(&self.header).unwrap();
                    for r in &self.rows {
                        w.write_record(r).unwrap();
                    }
                    out.push_str(&String::from_utf8(w.into_inner().unwrap()).unwrap());
                }
                for (k, v) in &self.verdicts {
                    writeln!(out, "# {}={v}", k.replace(' ', "_")).unwrap();
                }
                for n in &self.notes {
                    writeln!(out, "# {n}").unwrap();
                }
            }
        }
        out
    }
}
