//! Deterministic JSON rendering and the run manifest.

use std::io;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// JSON formatter that prints every float with 17 significant digits, so
/// reruns are byte-identical and values round-trip exactly.
struct SeventeenDigits;

impl serde_json::ser::Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(ldoi::io::format_f64(value).as_bytes())
    }
}

/// Compact single-line JSON with fixed float formatting.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization of plain data cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seeds: Vec<u64>,
    pub version: String,
    pub wall_time_seconds: f64,
    /// SHA-256 over stdout followed by every written file, in write order.
    pub output_sha256: String,
}

pub fn sha256_hex(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
