use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    List(Vec<f64>),
    Missing,
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Missing, Field::Num)
    }
}

impl From<bool> for Field {
    fn from(x: bool) -> Self {
        Field::Bool(x)
    }
}

impl From<usize> for Field {
    fn from(x: usize) -> Self {
        Field::Int(x as u64)
    }
}

impl From<u64> for Field {
    fn from(x: u64) -> Self {
        Field::Int(x)
    }
}

impl From<String> for Field {
    fn from(x: String) -> Self {
        Field::Text(x)
    }
}

impl From<&str> for Field {
    fn from(x: &str) -> Self {
        Field::Text(x.to_string())
    }
}

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn num(x: f64) -> String {
    let r = sig12(x);
    let a = r.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

impl Field {
    fn plain(&self) -> String {
        match self {
            Field::Num(x) => num(*x),
            Field::Int(x) => x.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
            Field::List(xs) => xs.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" "),
            Field::Missing => String::new(),
        }
    }

    fn json(&self) -> String {
        let number = |x: f64| {
            let r = sig12(x);
            if r.is_finite() {
                serde_json::to_string(&r).unwrap()
            } else {
                "null".to_string()
            }
        };
        match self {
            Field::Num(x) => number(*x),
            Field::Int(x) => x.to_string(),
            Field::Text(s) => serde_json::to_string(s).unwrap(),
            Field::Bool(b) => b.to_string(),
            Field::List(xs) => format!("[{}]", xs.iter().map(|x| number(*x)).collect::<Vec<_>>().join(",")),
            Field::Missing => "null".to_string(),
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn single(pairs: Vec<(&'static str, Field)>) -> Self {
        let (columns, row) = pairs.into_iter().unzip();
        Self { columns, rows: vec![row] }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
            Format::Jsonl => self.render_jsonl(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        if self.rows.len() == 1 {
            let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (c, f) in self.columns.iter().zip(&self.rows[0]) {
                let v = f.plain();
                let v = if v.is_empty() { "-".to_string() } else { v };
                writeln!(out, "{c:<width$}  {v}").unwrap();
            }
            return out;
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|f| if *f == Field::Missing { "-".into() } else { f.plain() }).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| cells.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap())
            .collect();
        let line = |vals: Vec<&str>| {
            vals.iter()
                .zip(&widths)
                .map(|(v, w)| format!("{v:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(self.columns.clone())).unwrap();
        for r in &cells {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).unwrap();
        for r in &self.rows {
            w.write_record(r.iter().map(Field::plain)).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    fn render_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let body: Vec<String> = self
                .columns
                .iter()
                .zip(r)
                .map(|(c, f)| format!("{}:{}", serde_json::to_string(c).unwrap(), f.json()))
                .collect();
            writeln!(out, "{{{}}}", body.join(",")).unwrap();
        }
        out
    }
}
