//! Residuals and the identity report.
//!
//! Machine format: one line per entry, `check_id<TAB>anchor<TAB>status<TAB>residual`.
//! Text format: an aligned table with gates and details.

use std::fmt::{self, Write as _};

use crate::field::Scalar;
use crate::tensor::FrameTensor;

/// A residual together with the magnitude of the quantities it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<S> {
    pub value: S,
    pub scale: S,
}

impl<S: Scalar> Residual<S> {
    pub fn new(value: S, scale: S) -> Self {
        Residual { value: value.magnitude(), scale: scale.magnitude() }
    }

    pub fn exact_zero() -> Self {
        Residual { value: S::zero(), scale: S::zero() }
    }

    /// Max-abs entry of `diff`, scaled by the largest entry among `operands`.
    pub fn of_tensor(diff: &FrameTensor<S>, operands: &[&FrameTensor<S>]) -> Self {
        let scale = operands.iter().map(|t| t.max_abs()).fold(S::zero(), max_of);
        Residual::new(diff.max_abs(), scale)
    }

    /// Residual of `lhs - rhs` for two tensors of equal shape.
    pub fn between(lhs: &FrameTensor<S>, rhs: &FrameTensor<S>) -> Self {
        Self::of_tensor(&lhs.sub(rhs), &[lhs, rhs])
    }

    /// Residual of a scalar relation whose terms are `terms`.
    pub fn of_scalar(value: S, terms: &[&S]) -> Self {
        let scale = terms.iter().map(|t| t.magnitude()).fold(S::zero(), max_of);
        Residual::new(value, scale)
    }

    pub fn vanishes(&self) -> bool {
        S::negligible(&self.value, &self.scale)
    }

    /// Combines two residuals into the larger one.
    pub fn max(self, other: Self) -> Self {
        Residual {
            value: max_of(self.value, other.value),
            scale: max_of(self.scale, other.scale),
        }
    }
}

pub(crate) fn max_of<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}

/// Largest ratio between two nonzero float residuals that still counts as
/// agreement in a biconditional.
pub const BICONDITIONAL_RATIO: f64 = 100.0;

/// Outcome of a biconditional `A == 0 <=> B == 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Biconditional<S> {
    pub left: Residual<S>,
    pub right: Residual<S>,
}

impl<S: Scalar> Biconditional<S> {
    pub fn new(left: Residual<S>, right: Residual<S>) -> Self {
        Biconditional { left, right }
    }

    /// Both sides zero or both nonzero. In float mode two nonzero sides must
    /// also agree within two orders of magnitude, so a near-degenerate value
    /// on one side is not mistaken for a genuine nonzero.
    pub fn holds(&self) -> bool {
        match (self.left.vanishes(), self.right.vanishes()) {
            (true, true) => true,
            (false, false) => {
                if S::MODE == crate::field::Mode::Rational {
                    return true;
                }
                let (a, b) = (self.left.value.to_f64(), self.right.value.to_f64());
                let ratio = if a > b { a / b } else { b / a };
                ratio <= BICONDITIONAL_RATIO
            }
            _ => false,
        }
    }

    pub fn both_zero(&self) -> bool {
        self.left.vanishes() && self.right.vanishes()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Informational,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::Informational => "informational",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub check_id: &'static str,
    pub anchor: &'static str,
    pub status: Status,
    /// Rendered exactly in rational mode, as a decimal in float mode.
    pub residual: String,
    /// Gate flags; for `NotApplicable` the first one is the failed gate.
    pub gates: Vec<&'static str>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IdentityReport {
    pub entries: Vec<ReportEntry>,
}

impl IdentityReport {
    pub fn get(&self, check_id: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    pub fn has_failures(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            writeln!(out, "{}\t{}\t{}\t{}", e.check_id, e.anchor, e.status, e.residual).unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        let w_id = self.entries.iter().map(|e| e.check_id.len()).max().unwrap_or(5).max(5);
        let w_anchor = self.entries.iter().map(|e| e.anchor.len()).max().unwrap_or(6).max(6);
        let w_res = self.entries.iter().map(|e| e.residual.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        writeln!(
            out,
            "{:<w_id$}  {:<w_anchor$}  {:<14}  {:>w_res$}  notes",
            "check", "anchor", "status", "residual"
        )
        .unwrap();
        for e in &self.entries {
            let mut notes = String::new();
            if !e.gates.is_empty() {
                let label = if e.status == Status::NotApplicable { "failed gate" } else { "gates" };
                write!(notes, "[{label}: {}]", e.gates.join(",")).unwrap();
            }
            if !e.detail.is_empty() {
                if !notes.is_empty() {
                    notes.push(' ');
                }
                notes.push_str(&e.detail);
            }
            let line = format!(
                "{:<w_id$}  {:<w_anchor$}  {:<14}  {:>w_res$}  {}",
                e.check_id,
                e.anchor,
                e.status.to_string(),
                e.residual,
                notes
            );
            writeln!(out, "{}", line.trim_end()).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    #[test]
    fn exact_biconditional() {
        let z = Residual::<Rational>::exact_zero();
        let nz = Residual::new(rat(3, 2), rat(1, 1));
        assert!(Biconditional::new(z.clone(), z.clone()).holds());
        assert!(Biconditional::new(nz.clone(), Residual::new(rat(1, 1000), rat(1, 1))).holds());
        assert!(!Biconditional::new(z, nz).holds());
    }

    #[test]
    fn float_biconditional_needs_comparable_magnitudes() {
        let a = Residual::new(1.0, 1.0);
        let b = Residual::new(1e-4, 1.0);
        assert!(!Biconditional::new(a.clone(), b).holds());
        assert!(Biconditional::new(a, Residual::new(0.5, 1.0)).holds());
    }

    #[test]
    fn machine_lines_are_tab_separated() {
        let report = IdentityReport {
            entries: vec![ReportEntry {
                check_id: "x",
                anchor: "Eq 0",
                status: Status::NotApplicable,
                residual: "0".into(),
                gates: vec!["is_W3"],
                detail: String::new(),
            }],
        };
        assert_eq!(report.to_machine(), "x\tEq 0\tnot-applicable\t0\n");
        assert!(report.to_text().contains("[failed gate: is_W3]"));
    }
}
