//! Result tables and their serializations (csv, json, gnuplot).
//!
//! Formatting is deterministic: floats print in shortest round-trip form, so
//! identical values give byte-identical files regardless of thread count.

use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub enum Cell {
    U(u128),
    F(f64),
    S(String),
    Null,
}

impl Cell {
    fn write_plain(&self, out: &mut String) {
        match self {
            Cell::U(v) => write!(out, "{v}").unwrap(),
            Cell::F(v) => write!(out, "{v}").unwrap(),
            Cell::S(v) => write!(out, "{v}").unwrap(),
            Cell::Null => {}
        }
    }

    fn write_gnuplot(&self, out: &mut String) {
        match self {
            Cell::Null => out.push_str("nan"),
            other => other.write_plain(out),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::U(v) => {
                if let Ok(small) = u64::try_from(*v) {
                    serde_json::Value::from(small)
                } else {
                    serde_json::Value::from(v.to_string())
                }
            }
            Cell::F(v) => serde_json::Value::from(*v),
            Cell::S(v) => serde_json::Value::from(v.clone()),
            Cell::Null => serde_json::Value::Null,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Gnuplot,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
            Format::Gnuplot => self.render_gnuplot(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# ddelta {} schema=1 columns={}",
            self.name,
            self.columns.join(",")
        )
        .unwrap();
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                cell.write_plain(&mut out);
            }
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.clone(), cell.to_json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({
            "schema": 1,
            "table": self.name,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("static structure");
        s.push('\n');
        s
    }

    /// Numeric columns only, whitespace-separated, ready for `plot using`.
    fn render_gnuplot(&self) -> String {
        let numeric: Vec<usize> = (0..self.columns.len())
            .filter(|&c| {
                self.rows
                    .iter()
                    .all(|row| !matches!(row[c], Cell::S(_)))
            })
            .collect();
        let mut out = String::new();
        let names: Vec<&str> = numeric.iter().map(|&c| self.columns[c].as_str()).collect();
        writeln!(out, "# ddelta {} columns: {}", self.name, names.join(" ")).unwrap();
        for row in &self.rows {
            let mut first = true;
            for &c in &numeric {
                if !first {
                    out.push(' ');
                }
                first = false;
                row[c].write_gnuplot(&mut out);
            }
            out.push('\n');
        }
        out
    }
}
