//! Verification reports and their text, markdown and tab-separated forms.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::Error;

/// One assertion with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A rendered table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Txt,
    Md,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "txt" => Ok(Format::Txt),
            "md" => Ok(Format::Md),
            "tsv" => Ok(Format::Tsv),
            _ => Err(Error::Parse(format!("unknown format `{s}` (md, txt, tsv)"))),
        }
    }
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Txt => self.txt(),
            Format::Md => self.md(),
            Format::Tsv => self.tsv(),
        }
    }

    fn verdict(&self) -> String {
        let n = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.pass).count();
        format!("{ok}/{n} checks passed")
    }

    fn txt(&self) -> String {
        let mut s = format!("== {} ==\n", self.title);
        if self.checks.is_empty() && self.tables.is_empty() {
            return s;
        }
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}{}", if c.pass { "pass" } else { "FAIL" }, c.name, suffix(&c.detail));
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n{}", t.title);
            let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
            for r in &t.rows {
                for (i, x) in r.iter().enumerate() {
                    if i < widths.len() {
                        widths[i] = widths[i].max(x.chars().count());
                    }
                }
            }
            let line = |cells: &[String]| {
                let parts: Vec<String> = cells
                    .iter()
                    .enumerate()
                    .map(|(i, x)| format!("{x:<w$}", w = widths.get(i).copied().unwrap_or(0)))
                    .collect();
                parts.join("  ").trim_end().to_string()
            };
            let _ = writeln!(s, "{}", line(&t.header));
            for r in &t.rows {
                let _ = writeln!(s, "{}", line(r));
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\n{}", self.verdict());
        }
        s
    }

    fn md(&self) -> String {
        let mut s = format!("## {}\n", self.title);
        if self.checks.is_empty() && self.tables.is_empty() {
            return s;
        }
        if !self.checks.is_empty() {
            s.push_str("\n| check | result | detail |\n|---|---|---|\n");
            for c in &self.checks {
                let _ = writeln!(s, "| {} | {} | {} |", c.name, if c.pass { "pass" } else { "**FAIL**" }, c.detail.replace('|', "\\|"));
            }
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n### {}\n", t.title);
            let _ = writeln!(s, "| {} |", t.header.join(" | "));
            let _ = writeln!(s, "|{}", "---|".repeat(t.header.len()));
            for r in &t.rows {
                let _ = writeln!(s, "| {} |", r.join(" | "));
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\n{}", self.verdict());
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = format!("# {}\n", self.title);
        for c in &self.checks {
            let _ = writeln!(s, "check\t{}\t{}\t{}", c.name, if c.pass { "pass" } else { "fail" }, c.detail);
        }
        for t in &self.tables {
            let _ = writeln!(s, "table\t{}\t{}", t.title, t.header.join("\t"));
            for r in &t.rows {
                let _ = writeln!(s, "row\t{}\t{}", t.title, r.join("\t"));
            }
        }
        s
    }
}

fn suffix(detail: &str) -> String {
    if detail.is_empty() {
        String::new()
    } else {
        format!(": {detail}")
    }
}
