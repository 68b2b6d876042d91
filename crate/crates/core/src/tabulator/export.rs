use std::fmt::Write as _;
use std::path::Path;

use super::BoundTable;
use crate::bounds::{method, BoundRecord};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Markdown,
}

const HEADER: [&str; 5] = ["n", "d", "lower", "method", "upper"];

/// Method tag, with the construction named for witness cells.
fn method_label(r: &BoundRecord) -> String {
    match (&r.note, r.method.as_str()) {
        (Some(tag), method::WITNESS) => format!("{}:{tag}", r.method),
        _ => r.method.clone(),
    }
}

fn rows(table: &BoundTable) -> impl Iterator<Item = [String; 5]> + '_ {
    table.cells.iter().map(|(&(n, d), c)| {
        [n.to_string(), d.to_string(), c.lower.value.to_string(), method_label(&c.lower), c.upper.value.to_string()]
    })
}

pub fn to_csv(table: &BoundTable) -> String {
    let mut out = HEADER.join(",") + "\n";
    for r in rows(table) {
        out += &r.join(",");
        out.push('\n');
    }
    out
}

pub fn to_markdown(table: &BoundTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", HEADER.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(HEADER.len()));
    for r in rows(table) {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out
}

pub fn export(table: &BoundTable, format: ExportFormat, path: &Path) -> Result<()> {
    let text = match format {
        ExportFormat::Csv => to_csv(table),
        ExportFormat::Markdown => to_markdown(table),
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let t = BoundTable::default();
        assert_eq!(to_csv(&t), "n,d,lower,method,upper\n");
        assert_eq!(to_markdown(&t).lines().count(), 2);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        export(&t, ExportFormat::Csv, &p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "n,d,lower,method,upper\n");
    }
}
