//! Records and their two renderings: JSON lines for machines, short text
//! lines for people.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

/// One self-contained result line.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Record {
    pub instance: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub millis: u64,
}

impl Record {
    pub fn new(instance: impl Into<String>, verdict: impl Into<String>) -> Record {
        Record { instance: instance.into(), verdict: verdict.into(), witness: None, millis: 0 }
    }

    pub fn with_witness(mut self, w: Value) -> Record {
        self.witness = Some(w);
        self
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Writes either JSON lines or text. With `timing` off every `millis` is 0,
/// which makes reports byte-comparable across runs.
pub struct Reporter<W: Write> {
    out: W,
    pub json: bool,
    pub timing: bool,
}

impl<W: Write> Reporter<W> {
    pub fn new(out: W, json: bool, timing: bool) -> Self {
        Reporter { out, json, timing }
    }

    /// `text` is what a person sees; the record is what a program sees.
    pub fn emit(&mut self, mut r: Record, millis: u64, text: &str) -> std::io::Result<()> {
        r.millis = if self.timing { millis } else { 0 };
        if self.json {
            writeln!(self.out, "{}", r.to_line())
        } else {
            writeln!(self.out, "{text}")
        }
    }

    /// Free text, skipped in JSON mode.
    pub fn note(&mut self, text: &str) -> std::io::Result<()> {
        if self.json {
            Ok(())
        } else {
            write!(self.out, "{text}")
        }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_is_optional() {
        let r = Record::new("t", "accept");
        assert_eq!(r.to_line(), r#"{"instance":"t","verdict":"accept","millis":0}"#);
        let r = r.with_witness(serde_json::json!([1]));
        assert_eq!(r.to_line(), r#"{"instance":"t","verdict":"accept","witness":[1],"millis":0}"#);
    }

    #[test]
    fn timing_switch() {
        let mut rep = Reporter::new(Vec::new(), true, false);
        rep.emit(Record::new("a", "b"), 42, "ignored").unwrap();
        rep.note("ignored").unwrap();
        let s = String::from_utf8(rep.into_inner()).unwrap();
        assert_eq!(s, "{\"instance\":\"a\",\"verdict\":\"b\",\"millis\":0}\n");
        let mut rep = Reporter::new(Vec::new(), false, true);
        rep.emit(Record::new("a", "b"), 42, "text").unwrap();
        assert_eq!(rep.into_inner(), b"text\n");
    }
}
