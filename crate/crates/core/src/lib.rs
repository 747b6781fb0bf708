//! Structured mark extraction from scanned school marksheets.
//!
//! A page comes in either as a raster image (cleaned up by [`preprocess`]
//! and handed to an external OCR engine) or as a ready-made OCR token dump.
//! Tokens are grouped into text lines, the issuing state board is detected,
//! subject names are matched against a per-state lexicon, and the mark for
//! each subject is read from the numerals and number words to its right.
//!
//! ```
//! use marksheet_core::{fixtures, Lexicon, Pipeline, PipelineConfig};
//!
//! let pipeline = Pipeline::new(Lexicon::builtin(), PipelineConfig::default());
//! let result = pipeline.parse_bytes("gj", fixtures::GUJARAT_DUMP.as_bytes()).unwrap();
//! assert_eq!(result.detected_state, "Gujarat");
//! assert_eq!(result.mark_of("MATHS"), Some(40));
//! ```

pub mod diagnostic;
pub mod eval;
pub mod fixtures;
pub mod layout;
pub mod lexicon;
pub mod marks;
pub mod ocr;
pub mod pipeline;
pub mod preprocess;
pub mod synth;

pub use diagnostic::Diagnostic;
pub use eval::{evaluate_corpus, load_gold, render_table, EvalError, EvalReport, Gold, Percent};
pub use layout::{group_lines, LayoutConfig, TextLine};
pub use lexicon::{Lexicon, MatchConfig};
pub use marks::{MarkRecord, MarksheetResult};
pub use ocr::{load_token_dump, EngineConfig, OcrToken, TokenStream};
pub use pipeline::{Pipeline, PipelineConfig, PipelineError, VersionPreset};
