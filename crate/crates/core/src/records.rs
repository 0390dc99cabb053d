//! One-line structured records: `kind key:value key:value …`.
//!
//! Values never contain whitespace. A value is split from its key at the
//! first `:`, so pattern strings such as `3:010` survive unchanged. Lists of
//! vertices are comma separated, lists of blocks are `;` separated, and an
//! empty list is written `-`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Record {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    /// Appends a field. Whitespace inside the value is replaced by `_`.
    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        debug_assert!(!key.contains(':') && !key.contains(char::is_whitespace));
        let value: String = value
            .to_string()
            .chars()
            .map(|c| if c.is_whitespace() { '_' } else { c })
            .collect();
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str, line: usize) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Parse {
            line,
            reason: format!("`{}` record is missing `{key}`", self.kind),
        })
    }

    pub fn require_usize(&self, key: &str, line: usize) -> Result<usize> {
        let raw = self.require(key, line)?;
        raw.parse().map_err(|_| Error::Parse {
            line,
            reason: format!("`{key}:{raw}` is not a nonnegative integer"),
        })
    }

    pub fn optional_usize(&self, key: &str, line: usize) -> Result<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(_) => self.require_usize(key, line).map(Some),
        }
    }

    pub fn require_list(&self, key: &str, line: usize) -> Result<Vec<usize>> {
        parse_list(self.require(key, line)?, line)
    }

    pub fn parse_line(text: &str, line: usize) -> Result<Record> {
        let mut parts = text.split_whitespace();
        let kind = parts.next().ok_or(Error::Parse {
            line,
            reason: "empty record".into(),
        })?;
        let mut record = Record::new(kind);
        for part in parts {
            let (key, value) = part.split_once(':').ok_or_else(|| Error::Parse {
                line,
                reason: format!("field `{part}` has no `:`"),
            })?;
            record.fields.push((key.to_string(), value.to_string()));
        }
        Ok(record)
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind)?;
        for (k, v) in &self.fields {
            write!(f, " {k}:{v}")?;
        }
        Ok(())
    }
}

/// Parses every non-blank line not starting with `#`, with 1-based line numbers.
pub fn parse_records(text: &str) -> Result<Vec<(usize, Record)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| Record::parse_line(l, i + 1).map(|r| (i + 1, r)))
        .collect()
}

pub fn format_list(items: &[usize]) -> String {
    if items.is_empty() {
        return "-".into();
    }
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_list(value: &str, line: usize) -> Result<Vec<usize>> {
    if value.is_empty() || value == "-" {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|item| {
            item.parse().map_err(|_| Error::Parse {
                line,
                reason: format!("`{item}` is not a vertex"),
            })
        })
        .collect()
}

pub fn format_blocks(blocks: &[Vec<usize>]) -> String {
    if blocks.is_empty() {
        return "-".into();
    }
    blocks
        .iter()
        .map(|b| format_list(b))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn parse_blocks(value: &str, line: usize) -> Result<Vec<Vec<usize>>> {
    if value.is_empty() || value == "-" {
        return Ok(Vec::new());
    }
    value.split(';').map(|b| parse_list(b, line)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = Record::new("pattern")
            .with("p", "3:010")
            .with("set", format_list(&[1, 4]))
            .with("note", "a b");
        let line = r.to_string();
        assert_eq!(line, "pattern p:3:010 set:1,4 note:a_b");
        let back = Record::parse_line(&line, 1).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.get("p"), Some("3:010"));
        assert_eq!(back.require_list("set", 1).unwrap(), vec![1, 4]);
    }

    #[test]
    fn lists_and_blocks() {
        assert_eq!(format_list(&[]), "-");
        assert_eq!(parse_list("-", 1).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_list("", 1).unwrap(), Vec::<usize>::new());
        let blocks = vec![vec![0, 1], vec![5]];
        assert_eq!(format_blocks(&blocks), "0,1;5");
        assert_eq!(parse_blocks("0,1;5", 1).unwrap(), blocks);
        assert!(parse_list("1,x", 3).is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_records("# comment\n\nok a:1\nbad field\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                reason: "field `field` has no `:`".into()
            }
        );
        let r = Record::parse_line("x a:1", 7).unwrap();
        assert!(matches!(
            r.require("b", 7),
            Err(Error::Parse { line: 7, .. })
        ));
        assert!(r.require_usize("a", 7).is_ok());
    }
}
