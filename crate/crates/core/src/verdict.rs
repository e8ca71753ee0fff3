//! Shared verdict type returned by every class checker.

use serde::Serialize;

/// Witness data attached to a failing verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// 1-based row index at which the class condition first fails, when the
    /// failure is localized to a row.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// Left-hand side of the violated strict inequality, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    /// Right-hand side of the violated strict inequality.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    pub message: String,
}

impl Violation {
    pub fn at(index: usize, lhs: f64, rhs: f64, message: impl Into<String>) -> Self {
        Self {
            index: Some(index),
            lhs: Some(lhs),
            rhs: Some(rhs),
            message: message.into(),
        }
    }

    pub fn plain(message: impl Into<String>) -> Self {
        Self {
            index: None,
            lhs: None,
            rhs: None,
            message: message.into(),
        }
    }
}

/// Outcome of a membership test for one tensor class.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassVerdict {
    Holds,
    Fails {
        #[serde(flatten)]
        violation: Violation,
    },
    NotApplicable { reason: String },
}

impl ClassVerdict {
    pub fn fails(violation: Violation) -> Self {
        ClassVerdict::Fails { violation }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        ClassVerdict::NotApplicable {
            reason: reason.into(),
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, ClassVerdict::Holds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_serializes_to_spec_strings() {
        let holds = serde_json::to_value(ClassVerdict::Holds).unwrap();
        assert_eq!(holds["verdict"], "holds");
        let fails =
            serde_json::to_value(ClassVerdict::fails(Violation::at(1, 10.0, 122.0, "x"))).unwrap();
        assert_eq!(fails["verdict"], "fails");
        assert_eq!(fails["index"], 1);
        let na = serde_json::to_value(ClassVerdict::not_applicable("why")).unwrap();
        assert_eq!(na["verdict"], "not_applicable");
    }
}
