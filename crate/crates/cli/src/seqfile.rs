//! Line-oriented description of a finite sequence of abelian groups.
//!
//! ```text
//! # comment
//! term KU0 = Z
//! term A = unknown{0, Z, Z/2}
//! map r : KU0 -> A = [[2]]
//! map s : A -> B = unknown
//! check exact at A
//! solve bound = 2
//! ```
//!
//! Matrix rows are the images of the source generators written in target
//! coordinates. An all-zero matrix of any shape means the zero map.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use cliffk::abgroup::{IntMatrix, MapSlot, Sequence, Slot};
use cliffk::FGAbelianGroup;
use num::{BigInt, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermValue {
    Known(FGAbelianGroup),
    Unknown(Vec<FGAbelianGroup>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermDecl {
    pub name: String,
    pub value: TermValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapValue {
    /// One row per source generator.
    Rows(Vec<Vec<BigInt>>),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub value: MapValue,
}

/// Terms in declaration order; `maps[i]` goes from `terms[i]` to
/// `terms[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFile {
    pub terms: Vec<TermDecl>,
    pub maps: Vec<MapDecl>,
    pub checks: Vec<String>,
    pub bound: Option<u64>,
}

impl SequenceFile {
    pub fn is_template(&self) -> bool {
        self.terms.iter().any(|t| matches!(t.value, TermValue::Unknown(_)))
            || self.maps.iter().any(|m| matches!(m.value, MapValue::Unknown))
    }

    pub fn to_sequence(&self) -> cliffk::Result<Sequence> {
        let terms = self
            .terms
            .iter()
            .map(|t| match &t.value {
                TermValue::Known(g) => Slot::Known(g.clone()),
                TermValue::Unknown(c) => Slot::Unknown(c.clone()),
            })
            .collect();
        let maps = self
            .maps
            .iter()
            .map(|m| match &m.value {
                MapValue::Rows(rows) => MapSlot::Known(rows_to_matrix(rows)),
                MapValue::Unknown => MapSlot::Unknown,
            })
            .collect();
        let index: HashMap<&str, usize> = self.terms.iter().enumerate().map(|(i, t)| (t.name.as_str(), i)).collect();
        let checks = self.checks.iter().map(|c| index[c.as_str()]).collect();
        Sequence::new(terms, maps)?
            .with_labels(
                self.terms.iter().map(|t| t.name.clone()).collect(),
                self.maps.iter().map(|m| m.name.clone()).collect(),
            )?
            .with_checks(checks)
    }
}

/// File rows (one per source generator) to the column convention of the
/// library.
pub fn rows_to_matrix(rows: &[Vec<BigInt>]) -> IntMatrix {
    let cols = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut m = IntMatrix::zeros(width, cols);
    for (j, row) in rows.iter().enumerate() {
        for (i, x) in row.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

pub fn matrix_to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.columns()
}

pub fn format_rows(rows: &[Vec<BigInt>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(BigInt::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", inner.join(", "))
}

fn format_group_list(groups: &[FGAbelianGroup]) -> String {
    let parts: Vec<String> = groups.iter().map(ToString::to_string).collect();
    format!("unknown{{{}}}", parts.join(", "))
}

impl fmt::Display for SequenceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            match &t.value {
                TermValue::Known(g) => writeln!(f, "term {} = {g}", t.name)?,
                TermValue::Unknown(c) => writeln!(f, "term {} = {}", t.name, format_group_list(c))?,
            }
        }
        for m in &self.maps {
            let value = match &m.value {
                MapValue::Rows(rows) => format_rows(rows),
                MapValue::Unknown => "unknown".to_string(),
            };
            writeln!(f, "map {} : {} -> {} = {value}", m.name, m.source, m.target)?;
        }
        if !self.checks.is_empty() {
            writeln!(f, "check exact at {}", self.checks.join(", "))?;
        }
        if let Some(b) = self.bound {
            writeln!(f, "solve bound = {b}")?;
        }
        Ok(())
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_name(s: &str, line: usize, what: &str) -> Result<String, ParseError> {
    let s = s.trim();
    if is_name(s) {
        Ok(s.to_string())
    } else {
        err(line, format!("invalid {what} name '{s}'"))
    }
}

fn parse_positive(s: &str, line: usize) -> Result<BigInt, ParseError> {
    match BigInt::from_str(s.trim()) {
        Ok(d) if d >= BigInt::from(2) => Ok(d),
        Ok(d) => err(line, format!("cyclic order must be at least 2, got {d}")),
        Err(_) => err(line, format!("expected an integer, got '{}'", s.trim())),
    }
}

/// `0`, `Z`, `Z^r`, `Z/d` and `+`-sums of these. Torsion summands must be
/// listed as a divisibility chain, so the generators are those of the
/// canonical form.
pub fn parse_group(s: &str, line: usize) -> Result<FGAbelianGroup, ParseError> {
    let mut rank = 0usize;
    let mut torsion: Vec<BigInt> = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        if part == "0" {
            continue;
        } else if part == "Z" {
            rank += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            match r.trim().parse::<usize>() {
                Ok(r) => rank += r,
                Err(_) => return err(line, format!("bad exponent in '{part}'")),
            }
        } else if let Some(d) = part.strip_prefix("Z/") {
            torsion.push(parse_positive(d, line)?);
        } else {
            return err(line, format!("cannot parse group summand '{part}'"));
        }
    }
    FGAbelianGroup::new(rank, torsion).map_err(|e| ParseError {
        line,
        message: format!("{e}; list torsion summands as a divisibility chain"),
    })
}

fn parse_term_value(s: &str, line: usize) -> Result<TermValue, ParseError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("unknown") {
        let inner = rest
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| ParseError {
                line,
                message: "expected unknown{G1, G2, ...}".into(),
            })?;
        let groups = inner
            .split(',')
            .map(|g| parse_group(g, line))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TermValue::Unknown(groups))
    } else {
        Ok(TermValue::Known(parse_group(s, line)?))
    }
}

fn parse_matrix(s: &str, line: usize) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ParseError {
            line,
            message: format!("expected a matrix like [[1,0],[0,1]], got '{}'", s.trim()),
        })?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let rows_src = inner
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ParseError {
            line,
            message: "matrix rows must be bracketed".into(),
        })?;
    let mut rows = Vec::new();
    for row in rows_src.split("],[") {
        if row.contains('[') || row.contains(']') {
            return err(line, "malformed matrix row");
        }
        let cells = if row.is_empty() {
            Vec::new()
        } else {
            row.split(',')
                .map(|c| BigInt::from_str(c).map_err(|_| ParseError {
                    line,
                    message: format!("matrix entry '{c}' is not an integer"),
                }))
                .collect::<Result<Vec<_>, _>>()?
        };
        rows.push(cells);
    }
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return err(line, "matrix rows have different lengths");
    }
    Ok(rows)
}

fn parse_map(rest: &str, line: usize) -> Result<MapDecl, ParseError> {
    let (head, value) = rest.split_once('=').ok_or_else(|| ParseError {
        line,
        message: "expected 'map NAME : SRC -> DST = VALUE'".into(),
    })?;
    let (name, arrow) = head.split_once(':').ok_or_else(|| ParseError {
        line,
        message: "expected ':' after the map name".into(),
    })?;
    let (source, target) = arrow.split_once("->").ok_or_else(|| ParseError {
        line,
        message: "expected 'SRC -> DST'".into(),
    })?;
    let value = match value.trim() {
        "unknown" => MapValue::Unknown,
        v => MapValue::Rows(parse_matrix(v, line)?),
    };
    Ok(MapDecl {
        name: parse_name(name, line, "map")?,
        source: parse_name(source, line, "term")?,
        target: parse_name(target, line, "term")?,
        value,
    })
}

pub fn parse(text: &str) -> Result<SequenceFile, ParseError> {
    let mut terms: Vec<TermDecl> = Vec::new();
    let mut term_lines: HashMap<String, usize> = HashMap::new();
    let mut maps: Vec<(usize, MapDecl)> = Vec::new();
    let mut checks: Vec<(usize, String)> = Vec::new();
    let mut bound = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("term ") {
            let (name, value) = rest.split_once('=').ok_or_else(|| ParseError {
                line,
                message: "expected 'term NAME = GROUP'".into(),
            })?;
            let name = parse_name(name, line, "term")?;
            if let Some(prev) = term_lines.insert(name.clone(), line) {
                return err(line, format!("term '{name}' already declared on line {prev}"));
            }
            terms.push(TermDecl {
                name,
                value: parse_term_value(value, line)?,
            });
        } else if let Some(rest) = content.strip_prefix("map ") {
            maps.push((line, parse_map(rest, line)?));
        } else if let Some(rest) = content.strip_prefix("check exact at ") {
            for name in rest.split(',') {
                checks.push((line, parse_name(name, line, "term")?));
            }
        } else if let Some(rest) = content.strip_prefix("solve bound") {
            let value = rest.trim().strip_prefix('=').map(str::trim).unwrap_or("");
            match value.parse::<u64>() {
                Ok(b) if b > 0 => bound = Some(b),
                _ => return err(line, format!("expected 'solve bound = N' with N ≥ 1, got '{content}'")),
            }
        } else {
            return err(line, format!("unrecognised directive '{content}'"));
        }
    }

    if terms.is_empty() {
        return err(text.lines().count().max(1), "no terms declared");
    }
    let index: HashMap<String, usize> = terms.iter().enumerate().map(|(i, t)| (t.name.clone(), i)).collect();
    let mut slots: Vec<Option<MapDecl>> = vec![None; terms.len() - 1];
    for (line, m) in maps {
        let (Some(&s), Some(&t)) = (index.get(&m.source), index.get(&m.target)) else {
            let missing = if index.contains_key(&m.source) { &m.target } else { &m.source };
            return err(line, format!("map '{}' refers to undeclared term '{missing}'", m.name));
        };
        if t != s + 1 {
            return err(
                line,
                format!("map '{}' must go from a term to the next declared term", m.name),
            );
        }
        if slots[s].is_some() {
            return err(line, format!("a second map out of '{}'", m.source));
        }
        if let (MapValue::Rows(rows), TermValue::Known(src), TermValue::Known(dst)) =
            (&m.value, &terms[s].value, &terms[t].value)
        {
            let zero = rows.iter().all(|r| r.iter().all(Zero::is_zero));
            let shape_ok = rows.len() == src.ngens() && rows.iter().all(|r| r.len() == dst.ngens());
            if !zero && !shape_ok {
                return err(
                    line,
                    format!(
                        "map '{}' needs {} row(s) of length {} for {src} -> {dst}",
                        m.name,
                        src.ngens(),
                        dst.ngens()
                    ),
                );
            }
        }
        slots[s] = Some(m);
    }
    let mut ordered = Vec::with_capacity(slots.len());
    for (i, slot) in slots.into_iter().enumerate() {
        match slot {
            Some(m) => ordered.push(m),
            None => {
                return err(
                    text.lines().count().max(1),
                    format!("no map from '{}' to '{}'", terms[i].name, terms[i + 1].name),
                )
            }
        }
    }
    let mut names = Vec::new();
    for (line, name) in checks {
        match index.get(&name) {
            None => return err(line, format!("check refers to undeclared term '{name}'")),
            Some(&i) if i == 0 || i + 1 == terms.len() => {
                return err(line, format!("'{name}' is an end term; exactness is checked at inner terms"))
            }
            Some(_) if names.contains(&name) => {}
            Some(_) => names.push(name),
        }
    }
    Ok(SequenceFile {
        terms,
        maps: ordered,
        checks: names,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOTT: &str = "term KU0 = Z\nterm KO0 = Z\nterm KOm1 = Z/2\nterm KU1 = 0\n\
        map r : KU0 -> KO0 = [[2]]\nmap eta : KO0 -> KOm1 = [[1]]\nmap c : KOm1 -> KU1 = [[0]]\n\
        check exact at KO0, KOm1\n";

    #[test]
    fn parses_the_bott_file() {
        let f = parse(BOTT).unwrap();
        assert_eq!(f.terms.len(), 4);
        assert_eq!(f.maps[1].name, "eta");
        assert_eq!(f.checks, ["KO0", "KOm1"]);
        assert!(!f.is_template());
        assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn crlf_and_comments() {
        let text = BOTT.replace('\n', "\r\n") + "# trailing comment\r\n";
        assert_eq!(parse(&text).unwrap(), parse(BOTT).unwrap());
    }

    #[test]
    fn groups() {
        assert_eq!(parse_group("0", 1).unwrap(), FGAbelianGroup::trivial());
        assert_eq!(parse_group("Z + Z/2 + Z^2", 1).unwrap().to_string(), "Z^3 + Z/2");
        assert!(parse_group("Z/4 + Z/2", 1).is_err());
        assert!(parse_group("Z/1", 1).is_err());
        assert!(parse_group("Q", 1).is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("[[1, -2], [3, 4]]", 1).unwrap().len(), 2);
        assert_eq!(parse_matrix("[]", 1).unwrap(), Vec::<Vec<BigInt>>::new());
        assert!(parse_matrix("[[1],[2,3]]", 1).is_err());
        assert!(parse_matrix("[[x]]", 1).is_err());
        let rows = vec![vec![BigInt::from(1), BigInt::from(2)]];
        let m = rows_to_matrix(&rows);
        assert_eq!(m.shape(), (2, 1));
        assert_eq!(matrix_to_rows(&m), rows);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("term A = Z\nterm B = Z/q\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse("term A = Z\nterm B = Z\nmap f : A -> C = [[1]]\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse("term A = Z\nterm B = Z\nmap f : A -> B = [[1, 2]]\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse("term A = Z\nbogus\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse("term A = Z\nterm B = Z\nterm C = Z\nmap f : A -> B = [[1]]\nmap g : B -> C = [[1]]\ncheck exact at A\n")
            .unwrap_err();
        assert_eq!(e.line, 6);
    }

    #[test]
    fn template_round_trip() {
        let text = "term A = Z\nterm B = unknown{0, Z, Z/2}\nterm C = Z\nmap f : A -> B = unknown\n\
            map g : B -> C = unknown\ncheck exact at B\nsolve bound = 2\n";
        let f = parse(text).unwrap();
        assert!(f.is_template());
        assert_eq!(f.to_string(), text);
    }
}
