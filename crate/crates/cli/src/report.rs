use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttractorEntry {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttractorRow {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub size: usize,
    pub states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttractorsReport {
    pub network: String,
    pub attractors: Vec<AttractorRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasinsReport {
    pub network: String,
    pub attractor: usize,
    pub weak: Vec<String>,
    pub strong: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlEntry {
    pub nodes: Vec<String>,
    pub values: Vec<u8>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSets {
    pub zero: Vec<String>,
    pub one: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathEntry {
    pub mode: String,
    pub intermediates: Vec<usize>,
    pub controls: Vec<NodeSets>,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathsReport {
    pub network: String,
    pub source: usize,
    pub target: usize,
    pub source_policy: String,
    pub attractors: Vec<AttractorEntry>,
    pub paths: Vec<PathEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathVerdict {
    pub index: usize,
    pub ok: bool,
    pub failing_step: Option<usize>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub paths: Vec<PathVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub network: String,
    pub seed: u64,
    pub trajectory: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PerMode<T> {
    #[serde(rename = "ASI")]
    pub asi: T,
    #[serde(rename = "AST")]
    pub ast: T,
    #[serde(rename = "ASP")]
    pub asp: T,
}

impl<T> PerMode<T> {
    pub fn iter(&self) -> impl Iterator<Item = &T> {
        [&self.asi, &self.ast, &self.asp].into_iter()
    }
}

/// One benchmark line: network size, then per sequential mode the smallest
/// path total, the number of paths and the wall time.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub network: String,
    pub nodes: usize,
    pub edges: usize,
    pub attractors: usize,
    pub source: Option<usize>,
    pub target: Option<usize>,
    pub perturbations: PerMode<Option<usize>>,
    pub paths: PerMode<usize>,
    pub time_seconds: PerMode<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub(crate) const BENCH_GROUPS: [&str; 3] = ["#perturbations", "# paths", "time (seconds)"];

/// Left-aligned text table. `group` is an optional header line above the
/// column names, given as (label, spanned column count).
pub(crate) fn render_table(
    group: &[(&str, usize)],
    headers: &[String],
    rows: &[Vec<String>],
) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    if !group.is_empty() {
        let mut col = 0;
        let mut cells = Vec::new();
        for &(label, span) in group {
            let width = widths[col..col + span].iter().sum::<usize>() + 2 * (span - 1);
            cells.push(format!("{label:<width$}"));
            col += span;
        }
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    for row in std::iter::once(headers).chain(rows.iter().map(Vec::as_slice)) {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let headers = vec!["a".to_string(), "bb".to_string(), "c".to_string()];
        let rows = vec![vec!["xyz".to_string(), "1".to_string(), "2".to_string()]];
        let t = render_table(&[("", 1), ("grp", 2)], &headers, &rows);
        assert_eq!(t, "     grp\na    bb  c\nxyz  1   2\n");
    }

    #[test]
    fn per_mode_keys() {
        let v = serde_json::to_string(&PerMode {
            asi: 1,
            ast: 2,
            asp: 3,
        })
        .unwrap();
        assert_eq!(v, r#"{"ASI":1,"AST":2,"ASP":3}"#);
    }
}
