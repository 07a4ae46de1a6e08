use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::GroupExpr;
use crate::abelian::IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedEntry {
    pub p: u32,
    pub q: u32,
    pub group: GroupExpr,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialRecord {
    pub r: u32,
    pub source: (u32, u32),
    pub target: (u32, u32),
    pub matrix: IntegerMatrix,
    pub note: String,
}

/// One page of a first-quadrant spectral sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BigradedPage {
    pub r: u32,
    /// Highest row shown, so that empty rows between entries are drawn.
    pub max_q: u32,
    #[serde(serialize_with = "entries_as_list")]
    pub entries: BTreeMap<(u32, u32), BigradedEntry>,
    pub differentials: Vec<DifferentialRecord>,
}

fn entries_as_list<S: serde::Serializer>(
    entries: &BTreeMap<(u32, u32), BigradedEntry>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(entries.values())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageFormat {
    Text,
    Latex,
}

impl BigradedPage {
    pub fn new(r: u32, max_q: u32) -> Self {
        BigradedPage { r, max_q, ..Default::default() }
    }

    pub fn insert(&mut self, entry: BigradedEntry) {
        self.max_q = self.max_q.max(entry.q);
        self.entries.insert((entry.p, entry.q), entry);
    }

    pub fn get(&self, p: u32, q: u32) -> Option<&BigradedEntry> {
        self.entries.get(&(p, q))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn columns(&self) -> Vec<u32> {
        match (self.entries.keys().map(|k| k.0).min(), self.entries.keys().map(|k| k.0).max()) {
            (Some(lo), Some(hi)) => (lo..=hi).collect(),
            _ => Vec::new(),
        }
    }
}

/// Converts a label like `x4^2*x7` to `x_{4}^2x_{7}`.
fn latex_label(label: &str) -> String {
    let mut out = String::new();
    let mut chars = label.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '*' => {}
            '^' => {
                out.push('^');
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                if digits.len() > 1 {
                    let _ = write!(out, "{{{digits}}}");
                } else {
                    out.push_str(&digits);
                }
            }
            c if c.is_ascii_alphabetic() => {
                out.push(c);
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                if !digits.is_empty() {
                    let _ = write!(out, "_{{{digits}}}");
                }
            }
            c => out.push(c),
        }
    }
    out
}

fn cell(entry: Option<&BigradedEntry>, format: PageFormat) -> String {
    let Some(e) = entry else { return String::new() };
    match format {
        PageFormat::Text => {
            let g = e.group.to_ascii();
            if e.labels.is_empty() {
                g
            } else {
                format!("{g}<{}>", e.labels.join(","))
            }
        }
        PageFormat::Latex => {
            let g = e.group.to_latex();
            let body = if e.labels.is_empty() {
                g
            } else {
                let labels: Vec<String> = e.labels.iter().map(|l| latex_label(l)).collect();
                format!("{g}\\langle {}\\rangle", labels.join(",~"))
            };
            if body == "0" {
                body
            } else {
                format!("${body}$")
            }
        }
    }
}

/// Draws the page as a grid with rows `q` from the top down and a bottom
/// row of column degrees.
pub fn render_page(page: &BigradedPage, format: PageFormat) -> String {
    let cols = page.columns();
    let rows: Vec<u32> = if page.is_empty() { Vec::new() } else { (0..=page.max_q).rev().collect() };
    let mut grid: Vec<Vec<String>> = rows
        .iter()
        .map(|&q| {
            let mut row = vec![q.to_string()];
            row.extend(cols.iter().map(|&p| cell(page.get(p, q), format)));
            row
        })
        .collect();
    let mut header = vec![match format {
        PageFormat::Text => "q\\p".to_string(),
        PageFormat::Latex => String::new(),
    }];
    header.extend(cols.iter().map(u32::to_string));

    let mut out = String::new();
    match format {
        PageFormat::Text => {
            grid.push(header);
            let widths: Vec<usize> = (0..=cols.len())
                .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
                .collect();
            let n = grid.len();
            for (i, row) in grid.iter().enumerate() {
                let cells: Vec<String> =
                    row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
                if i + 2 == n {
                    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                    let _ = writeln!(out, "{}", rule.join("-+-"));
                }
            }
            for d in &page.differentials {
                let _ = writeln!(
                    out,
                    "d_{}: ({},{}) -> ({},{}) {}",
                    d.r, d.source.0, d.source.1, d.target.0, d.target.1, d.note
                );
            }
        }
        PageFormat::Latex => {
            let spec = std::iter::once("c").chain(cols.iter().map(|_| "c")).collect::<Vec<_>>().join("|");
            let _ = writeln!(out, "\\begin{{tabular}}{{{spec}}}");
            let last = format!("\\cline{{1-{}}}", cols.len() + 1);
            for row in &grid {
                let _ = writeln!(out, "{}\\\\{last}", row.join(" & "));
            }
            let _ = writeln!(out, "{}\\\\", header.join("&"));
            out.push_str("\\end{tabular}\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_page_has_header_only() {
        let page = BigradedPage::new(2, 0);
        assert_eq!(render_page(&page, PageFormat::Text), "q\\p\n");
    }

    #[test]
    fn latex_labels() {
        assert_eq!(latex_label("x4^2*x7"), "x_{4}^2x_{7}");
        assert_eq!(latex_label("y3^10"), "y_{3}^{10}");
        assert_eq!(latex_label("1"), "1");
    }
}
