//! The line-oriented structure file format.
//!
//! ```text
//! # comment
//! dim 4                  # required first directive
//! scalar rational        # optional: rational (default) | float
//! C 1 2 3 1/2            # C^3_{12} = 1/2, so [e1,e2] = 1/2 e3; C 2 1 3 is implied
//! g 1 1 1                # symmetric metric entry g_11
//! J 3 1 1                # J^3_1: J e1 has e3-component 1
//! ```
//!
//! Indices are 1-based. Values are integers or `p/q`; plain decimals are
//! accepted only after `scalar float` and are converted exactly. Omitted
//! entries are zero. Repeating an entry with the same value is allowed, a
//! different value is an error naming both lines.
//!
//! [`export`] writes the canonical form: `C` with `i < j` sorted
//! lexicographically, the upper triangle of `g`, `J` row-major, zero
//! entries omitted, rationals in lowest terms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::Zero;
use thiserror::Error;

use crate::field::{format_rational, parse_rational, Mode, Rational, Scalar};
use crate::structure::{NordenStructure, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `dim <n>` before any other directive")]
    MissingDim { line: usize },
    #[error("input is empty: `dim <n>` is required")]
    Empty,
    #[error("line {line}: `dim` given twice (first on line {first})")]
    DuplicateDim { line: usize, first: usize },
    #[error("line {line}: invalid dimension `{text}`")]
    BadDim { line: usize, text: String },
    #[error("line {line}: dimension {dim} exceeds the cap of {MAX_DIM}")]
    DimTooLarge { line: usize, dim: usize },
    #[error("line {line}: unknown directive `{word}`")]
    UnknownDirective { line: usize, word: String },
    #[error("line {line}: `{directive}` expects {expected} fields")]
    Arity { line: usize, directive: &'static str, expected: usize },
    #[error("line {line}: index `{text}` is not in 1..={dim}")]
    BadIndex { line: usize, text: String, dim: usize },
    #[error("line {line}: invalid value `{text}`")]
    BadValue { line: usize, text: String },
    #[error("line {line}: invalid scalar mode `{text}`")]
    BadMode { line: usize, text: String },
    #[error("lines {first} and {second}: conflicting values for {entry}")]
    Conflict { first: usize, second: usize, entry: String },
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::MissingDim { line }
            | ParseError::DuplicateDim { line, .. }
            | ParseError::BadDim { line, .. }
            | ParseError::DimTooLarge { line, .. }
            | ParseError::UnknownDirective { line, .. }
            | ParseError::Arity { line, .. }
            | ParseError::BadIndex { line, .. }
            | ParseError::BadValue { line, .. }
            | ParseError::BadMode { line, .. } => Some(*line),
            ParseError::Conflict { second, .. } => Some(*second),
        }
    }
}

/// Parsed but unvalidated input. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawSpec {
    pub dim: usize,
    pub mode: Mode,
    /// `(i, j, k) -> C^k_{ij}`, with antisymmetric partners filled in.
    pub constants: BTreeMap<(usize, usize, usize), Rational>,
    /// `(i, j) -> g_ij` for `i <= j`.
    pub metric: BTreeMap<(usize, usize), Rational>,
    /// `(i, j) -> J^i_j`.
    pub complex: BTreeMap<(usize, usize), Rational>,
}

struct Entries<K> {
    values: BTreeMap<K, (Rational, usize)>,
}

impl<K: Ord + Copy> Entries<K> {
    fn new() -> Self {
        Entries { values: BTreeMap::new() }
    }

    fn insert(&mut self, key: K, value: Rational, line: usize, label: impl Fn() -> String) -> Result<(), ParseError> {
        match self.values.get(&key) {
            Some((old, first)) if *old != value => {
                Err(ParseError::Conflict { first: *first, second: line, entry: label() })
            }
            Some(_) => Ok(()),
            None => {
                self.values.insert(key, (value, line));
                Ok(())
            }
        }
    }

    fn into_map(self) -> BTreeMap<K, Rational> {
        self.values.into_iter().map(|(k, (v, _))| (k, v)).collect()
    }
}

pub fn parse(text: &str) -> Result<RawSpec, ParseError> {
    let mut dim: Option<(usize, usize)> = None;
    let mut mode = Mode::Rational;
    let mut constants = Entries::new();
    let mut metric = Entries::new();
    let mut complex = Entries::new();

    for (no, raw_line) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let directive = fields[0];
        if directive != "dim" && dim.is_none() {
            return Err(ParseError::MissingDim { line });
        }
        let n = dim.map(|(d, _)| d).unwrap_or(0);
        let index = |text: &str| -> Result<usize, ParseError> {
            match text.parse::<usize>() {
                Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
                _ => Err(ParseError::BadIndex { line, text: text.to_string(), dim: n }),
            }
        };
        let allow_decimal = mode == Mode::Float;
        let value = |text: &str| -> Result<Rational, ParseError> {
            parse_rational(text, allow_decimal).ok_or_else(|| ParseError::BadValue { line, text: text.to_string() })
        };
        let arity = |expected: usize, name: &'static str| -> Result<(), ParseError> {
            if fields.len() != expected + 1 {
                Err(ParseError::Arity { line, directive: name, expected })
            } else {
                Ok(())
            }
        };
        match directive {
            "dim" => {
                if let Some((_, first)) = dim {
                    return Err(ParseError::DuplicateDim { line, first });
                }
                arity(1, "dim")?;
                let d: usize =
                    fields[1].parse().map_err(|_| ParseError::BadDim { line, text: fields[1].to_string() })?;
                if d > MAX_DIM {
                    return Err(ParseError::DimTooLarge { line, dim: d });
                }
                dim = Some((d, line));
            }
            "scalar" => {
                arity(1, "scalar")?;
                mode = fields[1].parse().map_err(|_| ParseError::BadMode { line, text: fields[1].to_string() })?;
            }
            "C" => {
                arity(4, "C")?;
                let (i, j, k) = (index(fields[1])?, index(fields[2])?, index(fields[3])?);
                let v = value(fields[4])?;
                let label = || format!("C {} {} {}", i + 1, j + 1, k + 1);
                if i != j {
                    constants.insert((j, i, k), -v.clone(), line, label)?;
                }
                constants.insert((i, j, k), v, line, label)?;
            }
            "g" => {
                arity(3, "g")?;
                let (i, j) = (index(fields[1])?, index(fields[2])?);
                let v = value(fields[3])?;
                metric.insert((i.min(j), i.max(j)), v, line, || format!("g {} {}", i + 1, j + 1))?;
            }
            "J" => {
                arity(3, "J")?;
                let (i, j) = (index(fields[1])?, index(fields[2])?);
                let v = value(fields[3])?;
                complex.insert((i, j), v, line, || format!("J {} {}", i + 1, j + 1))?;
            }
            other => return Err(ParseError::UnknownDirective { line, word: other.to_string() }),
        }
    }
    let (dim, _) = dim.ok_or(ParseError::Empty)?;
    Ok(RawSpec {
        dim,
        mode,
        constants: constants.into_map(),
        metric: metric.into_map(),
        complex: complex.into_map(),
    })
}

impl RawSpec {
    pub fn from_structure(s: &NordenStructure<Rational>, mode: Mode) -> Self {
        let n = s.dim();
        let mut raw = RawSpec { dim: n, mode, ..Default::default() };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = s.frame.c(k, i, j);
                    if !v.is_zero() {
                        raw.constants.insert((i, j, k), v.clone());
                    }
                }
                let jv = &s.j[[i, j]];
                if !jv.is_zero() {
                    raw.complex.insert((i, j), jv.clone());
                }
                if i <= j && !s.g()[[i, j]].is_zero() {
                    raw.metric.insert((i, j), s.g()[[i, j]].clone());
                }
            }
        }
        raw
    }
}

/// Canonical serialization.
pub fn export(raw: &RawSpec) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", raw.dim).unwrap();
    writeln!(out, "scalar {}", raw.mode).unwrap();
    for (&(i, j, k), v) in &raw.constants {
        if i <= j && !v.is_zero() {
            writeln!(out, "C {} {} {} {}", i + 1, j + 1, k + 1, format_rational(v)).unwrap();
        }
    }
    for (&(i, j), v) in &raw.metric {
        if !v.is_zero() {
            writeln!(out, "g {} {} {}", i + 1, j + 1, format_rational(v)).unwrap();
        }
    }
    for (&(i, j), v) in &raw.complex {
        if !v.is_zero() {
            writeln!(out, "J {} {} {}", i + 1, j + 1, format_rational(v)).unwrap();
        }
    }
    out
}

/// Canonical text for a validated exact structure.
pub fn export_structure(s: &NordenStructure<Rational>) -> String {
    export(&RawSpec::from_structure(s, Mode::Rational))
}

/// Converts a rational-mode structure to another scalar field by
/// re-validating its canonical form.
pub fn reinterpret<T: Scalar>(s: &NordenStructure<Rational>) -> Result<NordenStructure<T>, crate::structure::StructureError> {
    crate::structure::validate(&RawSpec::from_structure(s, T::MODE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use proptest::prelude::*;

    #[test]
    fn dim_must_come_first() {
        assert_eq!(parse("# hi\ng 1 1 1\n"), Err(ParseError::MissingDim { line: 2 }));
        assert_eq!(parse("  \n# only comments\n"), Err(ParseError::Empty));
    }

    #[test]
    fn conflicting_metric_duplicate_names_both_lines() {
        let err = parse("dim 2\ng 1 2 1\n\ng 2 1 3\n").unwrap_err();
        assert_eq!(err, ParseError::Conflict { first: 2, second: 4, entry: "g 2 1".into() });
        assert!(err.to_string().contains("lines 2 and 4"));
        assert!(parse("dim 2\ng 1 2 1\ng 2 1 1\n").is_ok());
    }

    #[test]
    fn antisymmetric_partner_is_implied() {
        let raw = parse("dim 2\nC 1 2 1 3\n").unwrap();
        assert_eq!(raw.constants[&(1, 0, 0)], rat(-3, 1));
        assert!(parse("dim 2\nC 1 2 1 3\nC 2 1 1 -3\n").is_ok());
        let err = parse("dim 2\nC 1 2 1 3\nC 2 1 1 3\n").unwrap_err();
        assert!(matches!(err, ParseError::Conflict { first: 2, second: 3, .. }));
    }

    #[test]
    fn index_and_value_errors() {
        assert!(matches!(parse("dim 2\ng 1 3 1\n"), Err(ParseError::BadIndex { line: 2, .. })));
        assert!(matches!(parse("dim 2\ng 1 0 1\n"), Err(ParseError::BadIndex { .. })));
        assert!(matches!(parse("dim 2\ng 1 1 x\n"), Err(ParseError::BadValue { .. })));
        assert!(matches!(parse("dim 2\ng 1 1 0.5\n"), Err(ParseError::BadValue { .. })));
        assert!(parse("dim 2\nscalar float\ng 1 1 0.5\n").is_ok());
        assert!(matches!(parse("dim 2\nh 1\n"), Err(ParseError::UnknownDirective { .. })));
        assert!(matches!(parse("dim 2\ng 1 1\n"), Err(ParseError::Arity { .. })));
        assert!(matches!(parse("dim 14\n"), Err(ParseError::DimTooLarge { .. })));
    }

    #[test]
    fn export_is_canonical() {
        let raw = parse("dim 2\n# x\nJ 1 2 -1\nJ 2 1 1\nC 2 1 1 -2/4\ng 2 2 -1\ng 1 1 1\n").unwrap();
        let text = export(&raw);
        assert_eq!(text, "dim 2\nscalar rational\nC 1 2 1 1/2\ng 1 1 1\ng 2 2 -1\nJ 1 2 -1\nJ 2 1 1\n");
        assert_eq!(export(&parse(&text).unwrap()), text);
    }

    fn small_value() -> impl Strategy<Value = (i64, i64)> {
        (-6i64..=6, 1i64..=4)
    }

    proptest! {
        #[test]
        fn parse_export_parse_is_stable(
            cs in proptest::collection::vec((0usize..4, 0usize..4, 0usize..4, small_value()), 0..8),
            gs in proptest::collection::vec((0usize..4, 0usize..4, small_value()), 0..6),
        ) {
            let mut text = String::from("dim 4\n");
            let mut seen_c = std::collections::BTreeMap::new();
            for (i, j, k, (p, q)) in cs {
                if i == j || seen_c.contains_key(&(i.min(j), i.max(j), k)) { continue; }
                seen_c.insert((i.min(j), i.max(j), k), ());
                text.push_str(&format!("C {} {} {} {}/{}\n", i + 1, j + 1, k + 1, p, q));
            }
            let mut seen_g = std::collections::BTreeMap::new();
            for (i, j, (p, q)) in gs {
                if seen_g.insert((i.min(j), i.max(j)), ()).is_some() { continue; }
                text.push_str(&format!("g {} {} {}/{}\n", i + 1, j + 1, p, q));
            }
            let first = parse(&text).unwrap();
            let exported = export(&first);
            let second = parse(&exported).unwrap();
            // zero entries are dropped by export, compare without them
            let strip = |r: &RawSpec| {
                let mut r = r.clone();
                r.constants.retain(|_, v| !v.is_zero());
                r.metric.retain(|_, v| !v.is_zero());
                r.complex.retain(|_, v| !v.is_zero());
                r
            };
            prop_assert_eq!(strip(&first), strip(&second));
            prop_assert_eq!(export(&second), exported);
        }
    }
}
