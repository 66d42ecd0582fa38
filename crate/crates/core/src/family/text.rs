//! Family file format.
//!
//! ```text
//! # comment
//! n 4
//! -
//! 0,1
//! 2
//! ```
//!
//! The first non-comment line is `n <int>`. Every later non-blank, non-comment line
//! is one set: strictly ascending comma-separated elements, or `-` for the empty set.

use std::collections::HashMap;
use std::fmt;

use super::{Family, GroundSet, SubsetMask, MAX_GROUND};
use crate::error::{parse_err, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at line {}", self.message, self.line)
    }
}

#[derive(Clone, Debug)]
pub struct ParsedFamily {
    pub family: Family,
    pub warnings: Vec<ParseWarning>,
}

/// Iterates `(line_number, trimmed_content)` over lines that carry data.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_header(line: usize, content: &str) -> Result<GroundSet> {
    let rest = content
        .strip_prefix('n')
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| parse_err(line, format!("expected header 'n <int>', found '{content}'")))?;
    let n: usize = rest
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("malformed ground size '{}'", rest.trim())))?;
    if !(1..=MAX_GROUND).contains(&n) {
        return Err(parse_err(line, format!("n={n} outside [1,{MAX_GROUND}]")));
    }
    GroundSet::new(n)
}

/// Parses a comma-separated element list. With `ascending`, elements must be
/// strictly increasing; otherwise they must merely be distinct, and their order is
/// returned as written.
pub(crate) fn parse_elements(token: &str, ground: GroundSet, line: usize, ascending: bool) -> Result<Vec<u32>> {
    let token = token.trim();
    if token == "-" {
        return Ok(Vec::new());
    }
    let n = ground.size();
    let mut out: Vec<u32> = Vec::new();
    for part in token.split(',') {
        let part = part.trim();
        let e: u32 = part
            .parse()
            .map_err(|_| parse_err(line, format!("malformed element '{part}'")))?;
        if e as usize >= n {
            return Err(parse_err(line, format!("element {e} ≥ n={n}")));
        }
        if ascending {
            if out.last().is_some_and(|&prev| prev >= e) {
                return Err(parse_err(line, "elements not strictly ascending"));
            }
        } else if out.contains(&e) {
            return Err(parse_err(line, format!("repeated element {e}")));
        }
        out.push(e);
    }
    Ok(out)
}

pub(crate) fn parse_set(token: &str, ground: GroundSet, line: usize) -> Result<SubsetMask> {
    parse_elements(token, ground, line, true).map(SubsetMask::from_elements)
}

pub fn parse_family(text: &str) -> Result<ParsedFamily> {
    let mut lines = data_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(text.lines().count().max(1), "missing header 'n <int>'"))?;
    let ground = parse_header(hline, header)?;

    let mut seen: HashMap<SubsetMask, usize> = HashMap::new();
    let mut sets = Vec::new();
    let mut warnings = Vec::new();
    for (line, content) in lines {
        let set = parse_set(content, ground, line)?;
        if let Some(&first) = seen.get(&set) {
            warnings.push(ParseWarning {
                line,
                message: format!("duplicate set {set} (first at line {first}) merged"),
            });
            continue;
        }
        seen.insert(set, line);
        sets.push(set);
    }
    Ok(ParsedFamily {
        family: Family::new(ground, sets)?,
        warnings,
    })
}

pub fn serialize_family(family: &Family) -> String {
    let mut out = format!("n {}\n", family.ground().size());
    for s in family.iter() {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_family(s).map(|p| p.family)
    }
}
