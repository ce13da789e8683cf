use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u32),
    Text(&'static str),
}

impl Value {
    fn render(&self, out: &mut String) {
        match self {
            // shortest representation that round-trips, so output is stable
            Value::Num(x) => write!(out, "{x:?}").unwrap(),
            Value::Int(n) => write!(out, "{n}").unwrap(),
            Value::Text(s) => out.push_str(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: &[&str], rows: Vec<Vec<Value>>) -> Self {
        Self::with_header(header.iter().map(|h| h.to_string()).collect(), rows)
    }

    pub fn with_header(header: Vec<String>, rows: Vec<Vec<Value>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == header.len()));
        Self { header, rows }
    }

    /// First non-finite cell as `(row, column)`.
    pub fn first_non_finite(&self) -> Option<(usize, &str)> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            row.iter()
                .position(|v| matches!(v, Value::Num(x) if !x.is_finite()))
                .map(|j| (i, self.header[j].as_str()))
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                v.render(&mut out);
            }
            out.push('\n');
        }
        out
    }

    /// Time series for plotting: one `(label, xs, ys)` per numeric column and
    /// per distinct combination of the non-numeric key columns. Empty when
    /// the first column is not `kappa_t`.
    pub fn series(&self) -> Vec<(String, Vec<f64>, Vec<f64>)> {
        if self.header.first().map(String::as_str) != Some("kappa_t") {
            return Vec::new();
        }
        let Some(first) = self.rows.first() else {
            return Vec::new();
        };
        let numeric: Vec<usize> = (1..first.len())
            .filter(|&j| matches!(first[j], Value::Num(_)))
            .collect();
        let key = |row: &[Value]| -> String {
            let mut parts = Vec::new();
            for v in row.iter().skip(1) {
                match v {
                    Value::Int(n) => parts.push(n.to_string()),
                    Value::Text(s) => parts.push(s.to_string()),
                    Value::Num(_) => {}
                }
            }
            parts.join("_")
        };
        let mut keys: Vec<String> = Vec::new();
        for row in &self.rows {
            let k = key(row);
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
        let mut out = Vec::new();
        for k in &keys {
            let rows: Vec<&Vec<Value>> = self.rows.iter().filter(|r| &key(r) == k).collect();
            let xs: Vec<f64> = rows.iter().map(|r| num(&r[0])).collect();
            for &j in &numeric {
                let ys = rows.iter().map(|r| num(&r[j])).collect();
                let label = if k.is_empty() {
                    self.header[j].clone()
                } else {
                    format!("{}_{k}", self.header[j])
                };
                out.push((label, xs.clone(), ys));
            }
        }
        out
    }
}

fn num(v: &Value) -> f64 {
    match v {
        Value::Num(x) => *x,
        _ => f64::NAN,
    }
}
