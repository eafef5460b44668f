//! Deterministic JSON rendering for reports.
//!
//! Floats are written with 17 significant digits in exponent form so that
//! repeated runs with the same seed produce byte-identical, diffable output.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if !value.is_finite() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "non-finite float in report",
            ));
        }
        // 17 significant digits: 1 before the point, 16 after.
        write!(writer, "{:.16e}", value)
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize a JSON value with deterministic float formatting.
pub fn to_json_string(value: &serde_json::Value) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
