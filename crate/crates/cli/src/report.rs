//! JSON run reports with a fixed key order. Vertex ids are printed 1-based
//! and numbers are rounded to 12 significant digits.

use std::time::Duration;

use diamaug_core::Solution;
use serde_json::{Map, Value};

pub enum Row {
    Vertex(&'static str, usize),
    Number(&'static str, f64),
}

#[derive(Default)]
pub struct Report {
    extras: Vec<Row>,
    fields: Map<String, Value>,
}

/// `x` rounded to 12 significant digits. Whole numbers print without a
/// fractional part.
pub fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded.fract() == 0.0 && rounded.abs() < 9.0e15 {
        Value::from(rounded as i64)
    } else {
        Value::from(rounded)
    }
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Adds a field printed after the standard ones.
    pub fn extra(&mut self, row: Row) {
        self.extras.push(row);
    }

    /// Fills the standard fields. A missing solution prints as nulls.
    pub fn solution(
        mut self,
        mode: &str,
        n: usize,
        sol: Option<&Solution>,
        before: f64,
        elapsed: Duration,
    ) -> Self {
        let f = &mut self.fields;
        match sol {
            Some(s) => {
                f.insert("u".into(), Value::from(s.u + 1));
                f.insert("v".into(), Value::from(s.v + 1));
                f.insert("cost".into(), number(s.cost));
            }
            None => {
                for key in ["u", "v", "cost"] {
                    f.insert(key.into(), Value::Null);
                }
            }
        }
        f.insert("diameter_before".into(), number(before));
        f.insert(
            "diameter_after".into(),
            sol.map_or(Value::Null, |s| number(s.diameter)),
        );
        f.insert("mode".into(), Value::from(mode));
        f.insert("n".into(), Value::from(n));
        for row in self.extras.drain(..) {
            match row {
                Row::Vertex(key, v) => f.insert(key.into(), Value::from(v + 1)),
                Row::Number(key, x) => f.insert(key.into(), number(x)),
            };
        }
        f.insert("wall_time_ms".into(), number(elapsed.as_secs_f64() * 1e3));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.fields).expect("maps of plain values serialize")
    }
}
