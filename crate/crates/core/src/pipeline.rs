//! End-to-end orchestration: image or token dump in, [`MarksheetResult`] out.

use crate::diagnostic::Diagnostic;
use crate::layout::{group_lines, LayoutConfig};
use crate::lexicon::{detect_state, match_subjects, Lexicon, MatchConfig, OTHER_STATE};
use crate::marks::{extract_marksheet, MarksheetResult, Stages};
use crate::ocr::{load_token_dump, run_external_engine, DumpParseError, EngineConfig, OcrError, TokenStream};
use crate::preprocess::{decode_gray, encode_png, preprocess, PreprocessConfig, PreprocessError};
use rayon::prelude::*;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input not found: {0}")]
    InputNotFound(PathBuf),
    #[error("image input needs an OCR engine command")]
    EngineNotConfigured,
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error(transparent)]
    Dump(#[from] DumpParseError),
    #[error(transparent)]
    Ocr(OcrError),
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl From<OcrError> for PipelineError {
    fn from(e: OcrError) -> Self {
        match e {
            OcrError::Dump(d) => PipelineError::Dump(d),
            other => PipelineError::Ocr(other),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// The three configurations compared in the ablation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VersionPreset {
    /// Raw OCR output, exact alias matching.
    V3,
    /// Adds image preprocessing.
    V3A,
    /// Adds lexicon post-processing (spell correction and segmentation).
    V4,
}

impl VersionPreset {
    pub const ALL: [VersionPreset; 3] = [VersionPreset::V3, VersionPreset::V3A, VersionPreset::V4];

    pub fn preprocess(self) -> bool {
        !matches!(self, VersionPreset::V3)
    }

    pub fn postprocess(self) -> bool {
        matches!(self, VersionPreset::V4)
    }
}

impl fmt::Display for VersionPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VersionPreset::V3 => "v3",
            VersionPreset::V3A => "v3a",
            VersionPreset::V4 => "v4",
        })
    }
}

impl FromStr for VersionPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v3" => Ok(VersionPreset::V3),
            "v3a" => Ok(VersionPreset::V3A),
            "v4" => Ok(VersionPreset::V4),
            other => Err(format!("unknown version preset {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub preprocess: bool,
    pub postprocess: bool,
    pub layout: LayoutConfig,
    /// `spell_correction` is forced to follow `postprocess`.
    pub matching: MatchConfig,
    pub preprocessing: PreprocessConfig,
    /// Needed only for image inputs.
    pub engine: Option<EngineConfig>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self::preset(VersionPreset::V4)
    }
}

impl PipelineConfig {
    pub fn preset(version: VersionPreset) -> Self {
        Self {
            preprocess: version.preprocess(),
            postprocess: version.postprocess(),
            layout: LayoutConfig::default(),
            matching: MatchConfig::default(),
            preprocessing: PreprocessConfig::default(),
            engine: None,
        }
    }

    pub fn with_engine(mut self, engine: EngineConfig) -> Self {
        self.engine = Some(engine);
        self
    }

    fn stages(&self) -> Stages {
        Stages {
            preprocess: self.preprocess,
            postprocess: self.postprocess,
        }
    }

    fn match_config(&self) -> MatchConfig {
        MatchConfig {
            spell_correction: self.postprocess,
            ..self.matching.clone()
        }
    }
}

/// What a byte payload looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    TokenDump,
    Image,
}

/// Sniffs the payload: JSON object → dump, PNG or PNM magic → image.
pub fn sniff_input(bytes: &[u8]) -> Option<InputKind> {
    let trimmed = bytes.trim_ascii_start();
    if trimmed.first() == Some(&b'{') {
        Some(InputKind::TokenDump)
    } else if bytes.starts_with(b"\x89PNG\r\n\x1a\n")
        || (bytes.len() > 2 && bytes[0] == b'P' && matches!(bytes[1], b'4' | b'5' | b'6'))
    {
        Some(InputKind::Image)
    } else {
        None
    }
}

/// `scans/gj-01.ocr.json` → `gj-01`.
pub fn source_id_from_name(name: &str) -> String {
    let file = Path::new(name)
        .file_name()
        .and_then(|f| f.to_str())
        .unwrap_or(name);
    let stem = file
        .strip_suffix(".ocr.json")
        .or_else(|| file.rsplit_once('.').map(|(s, _)| s))
        .unwrap_or(file);
    stem.to_string()
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    lexicon: Arc<Lexicon>,
    config: PipelineConfig,
}

impl Pipeline {
    pub fn new(lexicon: Lexicon, config: PipelineConfig) -> Self {
        Self::shared(Arc::new(lexicon), config)
    }

    pub fn shared(lexicon: Arc<Lexicon>, config: PipelineConfig) -> Self {
        Self { lexicon, config }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    /// Same lexicon, different toggles.
    pub fn with_config(&self, config: PipelineConfig) -> Self {
        Self::shared(Arc::clone(&self.lexicon), config)
    }

    /// Layout, state detection, subject matching and mark extraction.
    pub fn process_stream(&self, stream: &TokenStream) -> MarksheetResult {
        let lines = group_lines(stream, &self.config.layout);
        let matching = self.config.match_config();
        let state = detect_state(&lines, &self.lexicon, &matching);
        let outcome = match_subjects(&lines, &state, &self.lexicon, &matching);
        let mut result = extract_marksheet(&stream.source_id, &lines, &state, &outcome.matches, &self.lexicon);
        let mut diagnostics = outcome.diagnostics;
        diagnostics.append(&mut result.diagnostics);
        result.diagnostics = diagnostics;
        result.stages = self.config.stages();
        result
    }

    pub fn parse_document(&self, path: &Path) -> Result<MarksheetResult, PipelineError> {
        if !path.is_file() {
            return Err(PipelineError::InputNotFound(path.to_path_buf()));
        }
        let bytes = std::fs::read(path).map_err(io_err(path))?;
        let name = path.to_string_lossy();
        match sniff_input(&bytes) {
            Some(InputKind::TokenDump) => self.parse_dump(&bytes),
            Some(InputKind::Image) if !self.config.preprocess => {
                let engine = self.engine()?;
                let stream = run_external_engine(path, engine)?;
                Ok(self.image_result(stream, &name))
            }
            Some(InputKind::Image) => self.parse_image(&name, &bytes),
            None => Err(PipelineError::UnsupportedInput(name.into_owned())),
        }
    }

    /// Same as [`parse_document`](Self::parse_document) for an uploaded
    /// payload; `name` supplies the source id for images.
    pub fn parse_bytes(&self, name: &str, bytes: &[u8]) -> Result<MarksheetResult, PipelineError> {
        match sniff_input(bytes) {
            Some(InputKind::TokenDump) => self.parse_dump(bytes),
            Some(InputKind::Image) => self.parse_image(name, bytes),
            None if bytes.is_empty() => Err(PipelineError::UnsupportedInput("empty payload".into())),
            None => Err(PipelineError::UnsupportedInput(format!(
                "{name}: neither a token dump nor a PNG/PNM image"
            ))),
        }
    }

    fn parse_dump(&self, bytes: &[u8]) -> Result<MarksheetResult, PipelineError> {
        let stream = load_token_dump(bytes)?;
        Ok(self.process_stream(&stream))
    }

    fn engine(&self) -> Result<&EngineConfig, PipelineError> {
        self.config.engine.as_ref().ok_or(PipelineError::EngineNotConfigured)
    }

    fn parse_image(&self, name: &str, bytes: &[u8]) -> Result<MarksheetResult, PipelineError> {
        let engine = self.engine()?;
        let dir = tempfile::tempdir().map_err(io_err(Path::new("tempdir")))?;
        let engine_input = if self.config.preprocess {
            let gray = decode_gray(bytes)?;
            let cleaned = match preprocess(&gray, &self.config.preprocessing) {
                Ok(p) => p,
                Err(PreprocessError::OrientationUnsupported(detail)) => {
                    return Ok(self.rejected(name, detail));
                }
                Err(e) => return Err(e.into()),
            };
            let path = dir.path().join("page.png");
            std::fs::write(&path, encode_png(&cleaned.image)?).map_err(io_err(&path))?;
            path
        } else {
            let file = Path::new(name)
                .file_name()
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("page"));
            let path = dir.path().join(file);
            std::fs::write(&path, bytes).map_err(io_err(&path))?;
            path
        };
        let stream = run_external_engine(&engine_input, engine)?;
        Ok(self.image_result(stream, name))
    }

    /// Engines often print a placeholder source id; the input name wins.
    fn image_result(&self, mut stream: TokenStream, name: &str) -> MarksheetResult {
        stream.source_id = source_id_from_name(name);
        self.process_stream(&stream)
    }

    fn rejected(&self, name: &str, detail: String) -> MarksheetResult {
        MarksheetResult {
            source_id: source_id_from_name(name),
            detected_state: OTHER_STATE.to_string(),
            records: Vec::new(),
            diagnostics: vec![Diagnostic::OrientationRejected { detail }],
            stages: self.config.stages(),
        }
    }

    /// Every `.ocr.json`, `.png` and `.pgm` file in `dir`, parsed on up to
    /// `jobs` threads, returned in `source_id` order.
    pub fn run_corpus(&self, dir: &Path, jobs: usize) -> Result<Vec<MarksheetResult>, PipelineError> {
        let mut inputs = corpus_inputs(dir)?;
        inputs.sort();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool");
        let mut results = pool.install(|| {
            inputs
                .par_iter()
                .map(|p| self.parse_document(p))
                .collect::<Result<Vec<_>, _>>()
        })?;
        results.sort_by(|a, b| a.source_id.cmp(&b.source_id));
        Ok(results)
    }
}

fn corpus_inputs(dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    if !dir.is_dir() {
        return Err(PipelineError::InputNotFound(dir.to_path_buf()));
    }
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        let wanted = name.ends_with(".ocr.json") || name.ends_with(".png") || name.ends_with(".pgm");
        if wanted && path.is_file() {
            out.push(path);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::GUJARAT_DUMP;
    use crate::ocr::to_token_dump;
    use crate::synth;

    fn pipeline(v: VersionPreset) -> Pipeline {
        Pipeline::new(Lexicon::builtin(), PipelineConfig::preset(v))
    }

    #[test]
    fn presets_map_to_toggles() {
        let t: Vec<(bool, bool)> = VersionPreset::ALL
            .iter()
            .map(|v| (v.preprocess(), v.postprocess()))
            .collect();
        assert_eq!(t, [(false, false), (true, false), (true, true)]);
        assert_eq!("V3A".parse::<VersionPreset>(), Ok(VersionPreset::V3A));
        assert!("v5".parse::<VersionPreset>().is_err());
    }

    #[test]
    fn gujarat_fixture() {
        let r = pipeline(VersionPreset::V4).parse_bytes("x", GUJARAT_DUMP.as_bytes()).unwrap();
        assert_eq!(r.detected_state, "Gujarat");
        let marks: Vec<(&str, Option<u8>)> = r
            .records
            .iter()
            .map(|r| (r.canonical_subject.as_str(), r.final_mark))
            .collect();
        assert_eq!(
            marks,
            [
                ("ENGLISH", Some(63)),
                ("LANGUAGE", Some(77)),
                ("SOCIAL SCIENCE", Some(63)),
                ("SCIENCE", Some(62)),
                ("MATHS", Some(40)),
            ]
        );
        assert!(r.stages.postprocess && r.stages.preprocess);
    }

    #[test]
    fn merged_subject_needs_postprocess() {
        let doc = synth::gujarat_marksheet_merged();
        let bytes = to_token_dump(&doc.stream);
        let off = pipeline(VersionPreset::V3).parse_bytes("x", &bytes).unwrap();
        assert!(off.records.len() <= 4);
        assert_eq!(off.mark_of("SOCIAL SCIENCE"), None);
        let on = pipeline(VersionPreset::V4).parse_bytes("x", &bytes).unwrap();
        assert_eq!(on.records.len(), 5);
        assert_eq!(on.mark_of("SOCIAL SCIENCE"), Some(63));
    }

    #[test]
    fn preprocess_toggle_is_inert_for_dumps() {
        let a = pipeline(VersionPreset::V3).parse_bytes("x", GUJARAT_DUMP.as_bytes()).unwrap();
        let b = pipeline(VersionPreset::V3A).parse_bytes("x", GUJARAT_DUMP.as_bytes()).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.diagnostics, b.diagnostics);
    }

    #[test]
    fn image_without_engine() {
        let png = crate::preprocess::encode_png(&synth::ruled_text_page(1)).unwrap();
        let err = pipeline(VersionPreset::V4).parse_bytes("p.png", &png).unwrap_err();
        assert!(matches!(err, PipelineError::EngineNotConfigured));
    }

    #[test]
    fn unsupported_and_missing() {
        let p = pipeline(VersionPreset::V4);
        assert!(matches!(p.parse_bytes("x", b""), Err(PipelineError::UnsupportedInput(_))));
        assert!(matches!(p.parse_bytes("x", b"GIF89a"), Err(PipelineError::UnsupportedInput(_))));
        assert!(matches!(
            p.parse_bytes("x", b"{\"tokens\": 3}"),
            Err(PipelineError::Dump(_))
        ));
        assert!(matches!(
            p.parse_document(Path::new("/definitely/not/here.ocr.json")),
            Err(PipelineError::InputNotFound(_))
        ));
    }

    #[test]
    fn source_ids() {
        assert_eq!(source_id_from_name("a/b/gj-01.ocr.json"), "gj-01");
        assert_eq!(source_id_from_name("scan.png"), "scan");
        assert_eq!(source_id_from_name("noext"), "noext");
    }
}
