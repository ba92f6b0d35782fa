use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use kcanon::signatures::format_f64;

/// A double written with 17 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        raw(format_f64(self.0)).serialize(s)
    }
}

impl std::fmt::Display for F17 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_f64(self.0))
    }
}

/// Pre-serialized JSON embedded verbatim.
#[derive(Debug, Clone)]
pub struct Json(pub String);

impl Serialize for Json {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        raw(self.0.clone()).serialize(s)
    }
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("valid JSON fragment")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
