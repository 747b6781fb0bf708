use serde::{Deserialize, Serialize};

/// Structured notices attached to a result for the human reviewer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// A later line matched a subject that was already taken.
    DuplicateSubject {
        subject: String,
        line_index: usize,
        first_line_index: usize,
    },
    /// A numeral on a subject line was discarded as a mark.
    RejectedCandidate {
        subject: String,
        line_index: usize,
        token_index: usize,
        text: String,
        reason: String,
    },
    /// Preprocessing refused the page; no marks were extracted.
    OrientationRejected { detail: String },
    /// Most resolved marks are at most 10, which suggests a grade sheet.
    GradeSheetSuspected { low_marks: usize, resolved: usize },
}
