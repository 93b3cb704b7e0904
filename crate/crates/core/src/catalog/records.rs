//! Line-oriented record format shared by the catalog files: `key: value`
//! lines, free body lines, and `#` comments. A record starts at its head key.

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct Record {
    /// Value of the head key (empty for the preamble).
    pub head: String,
    pub fields: Vec<(String, String)>,
    /// Lines that are not `key: value` pairs.
    pub body: Vec<String>,
    /// Comment lines directly preceding the record or inside it.
    pub comments: Vec<String>,
    pub line: usize,
}

impl Record {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all(&self, key: &str) -> Vec<&str> {
        self.fields.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect()
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| self.error(&format!("missing `{key}:`")))
    }

    pub fn error(&self, msg: &str) -> Error {
        Error::Input(format!("record at line {}: {msg}", self.line))
    }
}

/// Lowercase keys with digits and hyphens; anything else is a body line.
fn split_key(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    let mut chars = k.chars();
    let first = chars.next()?;
    if !first.is_ascii_lowercase() || !chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-') {
        return None;
    }
    Some((k, v.trim()))
}

/// Split `text` into a preamble and records headed by `head:` lines.
pub fn parse_records(text: &str, head: &str) -> Result<(Record, Vec<Record>)> {
    let mut pre = Record { line: 1, ..Default::default() };
    let mut recs: Vec<Record> = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            pending.push(c.trim().to_string());
            continue;
        }
        let line = line.split(" #").next().unwrap().trim();
        let cur = recs.last_mut().unwrap_or(&mut pre);
        match split_key(line) {
            Some((k, v)) if k == head => {
                recs.push(Record {
                    head: v.to_string(),
                    comments: std::mem::take(&mut pending),
                    line: i + 1,
                    ..Default::default()
                });
            }
            Some((k, v)) => {
                cur.comments.append(&mut pending);
                cur.fields.push((k.to_string(), v.to_string()));
            }
            None => {
                cur.comments.append(&mut pending);
                cur.body.push(line.to_string());
            }
        }
    }
    if let Some(last) = recs.last_mut() {
        last.comments.append(&mut pending);
    } else {
        pre.comments.append(&mut pending);
    }
    Ok((pre, recs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_and_preamble() {
        let text = "# title\ntable: t\n\n# note\nrow: a\nfaithful: yes\nP = d1\nX1: xi_t = 1\nrow: b\n";
        let (pre, recs) = parse_records(text, "row").unwrap();
        assert_eq!(pre.get("table"), Some("t"));
        assert_eq!(pre.comments, ["title"]);
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].head, "a");
        assert_eq!(recs[0].comments, ["note"]);
        assert_eq!(recs[0].body, ["P = d1", "X1: xi_t = 1"]);
        assert!(recs[1].require("faithful").is_err());
    }
}
