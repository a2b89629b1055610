//! Tables rendered identically as TSV and JSON.

use serde_json::{Map, Value};

use cubeword::FieldNumber;

pub const DECIMALS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    /// Fixed-point rendering with the given number of digits.
    Float(f64, usize),
    Empty,
}

impl Cell {
    fn tsv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Float(v, d) if v.is_finite() => format!("{v:.d$}"),
            Cell::Float(..) | Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(v) => Value::from(v.clone()),
            // the JSON number is the TSV text parsed back
            Cell::Float(v, _) if v.is_finite() => Value::from(self.tsv().parse::<f64>().expect("own output")),
            Cell::Float(..) | Cell::Empty => Value::Null,
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Exact text and its decimal expansion.
pub fn field(x: &FieldNumber) -> [Cell; 2] {
    [Cell::Text(x.to_string()), Cell::Text(x.to_decimal(DECIMALS))]
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Key/value facts followed by tables. The first table is printed first in TSV so
/// its header is the first line.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub facts: Vec<(String, Cell)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn fact(&mut self, key: &str, value: impl Into<Cell>) {
        self.facts.push((key.to_string(), value.into()));
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn tsv(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push_str(&format!("\n# {}\n", t.name));
            }
            out.push_str(&t.columns.join("\t"));
            out.push('\n');
            for r in &t.rows {
                let cells: Vec<String> = r.iter().map(Cell::tsv).collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        if !self.facts.is_empty() {
            if !self.tables.is_empty() {
                out.push('\n');
            }
            for (k, v) in &self.facts {
                out.push_str(&format!("# {k}\t{}\n", v.tsv()));
            }
        }
        out
    }

    pub fn json(&self) -> String {
        let mut root = Map::new();
        for (k, v) in &self.facts {
            root.insert(k.clone(), v.json());
        }
        for t in &self.tables {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = t.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect();
            root.insert(t.name.clone(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        s.push('\n');
        s
    }
}
