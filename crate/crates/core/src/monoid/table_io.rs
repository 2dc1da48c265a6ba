//! Plain-text multiplication tables: a header line `n identity`, then `n`
//! rows of `n` whitespace-separated 0-based indices.

use std::fmt::Write;

use super::FiniteMonoid;
use crate::error::{Error, Result};

impl FiniteMonoid {
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedTable("missing header".into()))?;
        let nums = parse_indices(header)?;
        let [n, identity] = nums[..] else {
            return Err(Error::MalformedTable("header must be `n identity`".into()));
        };
        let mut table = Vec::with_capacity(n * n);
        for row in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::MalformedTable(format!("missing row {row}")))?;
            let entries = parse_indices(line)?;
            if entries.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {row} has {} entries, expected {n}",
                    entries.len()
                )));
            }
            for v in entries {
                let v = u16::try_from(v)
                    .map_err(|_| Error::MalformedTable(format!("entry {v} too large")))?;
                table.push(v);
            }
        }
        if lines.next().is_some() {
            return Err(Error::MalformedTable("trailing rows".into()));
        }
        FiniteMonoid::new(n, table, identity)
    }

    pub fn to_table_string(&self) -> String {
        let mut out = format!("{} {}\n", self.size(), self.identity());
        for row in self.table().chunks(self.size()) {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn parse_indices(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::MalformedTable(format!("not an index: {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let text = "3 0\n0 1 2\n1 1 1\n2 1 2\n";
        let m = FiniteMonoid::parse_table(text).unwrap();
        assert_eq!(m.mul(1, 2), 1);
        assert_eq!(m.to_table_string(), text);
    }

    #[test]
    fn reports_short_rows() {
        let err = FiniteMonoid::parse_table("2 0\n0 1\n1\n").unwrap_err();
        assert!(matches!(err, Error::MalformedTable(_)));
        assert!(FiniteMonoid::parse_table("2 0\n0 x\n1 0\n").is_err());
    }
}
