use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

/// Result of a subcommand: a JSON payload, a main table and a pass/fail status.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub result: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, result: Value) -> Self {
        Report { command: command.to_string(), ok: true, result, header: vec![], rows: vec![], notes: vec![] }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = json!({ "schema": "1", "command": self.command, "ok": self.ok, "result": self.result });
                let mut s = serde_json::to_string_pretty(&v).expect("serializable report");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(vec![]);
                if self.header.is_empty() {
                    w.write_record(["key", "value"]).expect("in-memory write");
                    w.write_record(["ok", &self.ok.to_string()]).expect("in-memory write");
                } else {
                    w.write_record(&self.header).expect("in-memory write");
                    for r in &self.rows {
                        w.write_record(r).expect("in-memory write");
                    }
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
            }
            Format::Text => {
                let mut s = format!("{}: {}\n", self.command, if self.ok { "ok" } else { "FAILED" });
                for n in &self.notes {
                    s.push_str(&format!("  {n}\n"));
                }
                if !self.header.is_empty() {
                    let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
                    for r in &self.rows {
                        for (w, c) in widths.iter_mut().zip(r) {
                            *w = (*w).max(c.len());
                        }
                    }
                    let line = |cells: &[String]| {
                        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                        format!("  {}\n", parts.join("  ").trim_end())
                    };
                    s.push_str(&line(&self.header));
                    for r in &self.rows {
                        s.push_str(&line(r));
                    }
                }
                s
            }
        }
    }
}
