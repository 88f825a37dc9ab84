//! JSON emission with every float rounded to 15 significant digits.

use serde::Serialize;
use serde_json::Value;

pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round15).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    let mut v = serde_json::to_value(x).expect("report types serialize");
    round_value(&mut v);
    v
}

pub fn print<T: Serialize>(x: &T) {
    println!("{}", serde_json::to_string_pretty(&to_value(x)).expect("values serialize"));
}
