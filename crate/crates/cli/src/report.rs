//! Report assembly: ordered `key=value` records for machine output and
//! free-form lines for people.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Text,
    Machine,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    records: Vec<(String, String)>,
    text: Vec<String>,
}

impl Report {
    pub fn kv(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        let v = value.to_string().replace('\\', "\\\\").replace('\n', "\\n");
        self.records.push((key.into(), v));
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn records(&self) -> &[(String, String)] {
        &self.records
    }

    /// Machine output has one record per line. Text output uses the free
    /// lines when any were given, else the records as `key: value`.
    pub fn render(&self, mode: Mode) -> String {
        let mut out = String::new();
        match mode {
            Mode::Machine => {
                for (k, v) in &self.records {
                    out.push_str(k);
                    out.push('=');
                    out.push_str(v);
                    out.push('\n');
                }
            }
            Mode::Text if !self.text.is_empty() => {
                for l in &self.text {
                    out.push_str(l);
                    out.push('\n');
                }
            }
            Mode::Text => {
                for (k, v) in &self.records {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            }
        }
        out
    }
}
