//! The `marksheet` command line: `parse`, `eval` and `serve`.

use crate::service::{self, ServiceConfig};
use clap::{Args, Parser, Subcommand};
use marksheet_core::{evaluate_corpus, load_gold, render_table, EngineConfig, EvalError, EvalReport, Pipeline, PipelineConfig, VersionPreset};
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "marksheet", version, about = "Extract subject marks from scanned marksheets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse one image or `.ocr.json` token dump and print the result JSON.
    Parse(ParseArgs),
    /// Run a corpus against a gold file and print the bucket table.
    Eval(EvalArgs),
    /// Start the HTTP service (settings from DATA_DIR, BIND_ADDR, ENGINE_CMD, LEXICON_PATH).
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    pub input: PathBuf,
    /// Binarize, denoise and deskew images before OCR (default).
    #[arg(long, overrides_with = "no_pre")]
    pub pre: bool,
    #[arg(long, overrides_with = "pre")]
    pub no_pre: bool,
    /// Spell-correct and segment subject names (default).
    #[arg(long, overrides_with = "no_post")]
    pub post: bool,
    #[arg(long, overrides_with = "post")]
    pub no_post: bool,
    /// Lexicon JSON replacing the built-in one.
    #[arg(long, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    /// OCR command for image inputs; `{input}` marks the image path.
    #[arg(long, value_name = "CMD")]
    pub engine: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("preset").args(["v3", "v3a", "v4"])))]
pub struct EvalArgs {
    pub corpus: PathBuf,
    pub gold: PathBuf,
    /// Exact matching, no preprocessing.
    #[arg(long)]
    pub v3: bool,
    /// Preprocessing, exact matching.
    #[arg(long)]
    pub v3a: bool,
    /// Preprocessing and lexicon post-processing (default).
    #[arg(long)]
    pub v4: bool,
    #[arg(long, default_value_t = 1, value_name = "N")]
    pub jobs: usize,
    #[arg(long, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    #[arg(long, value_name = "CMD")]
    pub engine: Option<String>,
    /// JSON report path; defaults to `<gold stem>.<preset>.report.json`
    /// next to the gold file.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

impl EvalArgs {
    pub fn preset(&self) -> VersionPreset {
        if self.v3 {
            VersionPreset::V3
        } else if self.v3a {
            VersionPreset::V3A
        } else {
            VersionPreset::V4
        }
    }
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Overrides BIND_ADDR.
    #[arg(long)]
    pub bind: Option<SocketAddr>,
    /// Overrides DATA_DIR.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
}

/// Report file written by `eval`.
#[derive(Debug, Serialize)]
pub struct EvalOutput<'a> {
    pub version: String,
    #[serde(flatten)]
    pub report: &'a EvalReport,
}

/// Runs the CLI and returns the process exit code: 0 success, 1 pipeline
/// or evaluation failure, 2 usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if e.use_stderr() { e.render().to_string() } else { e.to_string() };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Parse(a) => cmd_parse(&a, stdout),
        Command::Eval(a) => cmd_eval(&a, stdout),
        Command::Serve(a) => cmd_serve(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

fn pipeline(lexicon: Option<&Path>, engine: Option<&str>, config: PipelineConfig) -> anyhow::Result<Pipeline> {
    let mut config = config;
    config.engine = engine.map(EngineConfig::new);
    Ok(Pipeline::new(service::load_lexicon(lexicon)?, config))
}

pub fn cmd_parse(args: &ParseArgs, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let mut config = PipelineConfig::preset(VersionPreset::V4);
    config.preprocess = !args.no_pre;
    config.postprocess = !args.no_post;
    let pipeline = pipeline(args.lexicon.as_deref(), args.engine.as_deref(), config)?;
    let result = pipeline.parse_document(&args.input)?;
    let mut json = serde_json::to_string_pretty(&result)?;
    json.push('\n');
    match &args.out {
        Some(path) => std::fs::write(path, json).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?,
        None => stdout.write_all(json.as_bytes())?,
    }
    Ok(())
}

pub fn default_report_path(gold: &Path, preset: VersionPreset) -> PathBuf {
    let name = gold.file_name().and_then(|n| n.to_str()).unwrap_or("gold.json");
    let stem = name
        .strip_suffix(".gold.json")
        .or_else(|| name.strip_suffix(".json"))
        .unwrap_or(name);
    gold.with_file_name(format!("{stem}.{preset}.report.json"))
}

pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> anyhow::Result<()> {
    let preset = args.preset();
    let gold_bytes =
        std::fs::read(&args.gold).map_err(|e| anyhow::anyhow!("{}: {e}", args.gold.display()))?;
    let gold = load_gold(&gold_bytes)?;
    let pipeline = pipeline(args.lexicon.as_deref(), args.engine.as_deref(), PipelineConfig::preset(preset))?;
    let results = pipeline.run_corpus(&args.corpus, args.jobs)?;
    let report = match evaluate_corpus(&results, &gold) {
        Ok(r) => r,
        Err(EvalError::MissingGold(ids)) => {
            anyhow::bail!("gold file has no entry for {} document(s): {}", ids.len(), ids.join(", "))
        }
        Err(e) => return Err(e.into()),
    };
    let label = preset.to_string();
    write!(stdout, "{}", render_table(&[(label.as_str(), &report)]))?;

    let out = EvalOutput { version: label, report: &report };
    let mut json = serde_json::to_string_pretty(&out)?;
    json.push('\n');
    let path = args.report.clone().unwrap_or_else(|| default_report_path(&args.gold, preset));
    std::fs::write(&path, json).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    writeln!(stdout, "report: {}", path.display())?;
    Ok(())
}

fn cmd_serve(args: ServeArgs) -> anyhow::Result<()> {
    let mut cfg = ServiceConfig::from_env()?;
    if let Some(b) = args.bind {
        cfg.bind_addr = b;
    }
    if let Some(d) = args.data_dir {
        cfg.data_dir = d;
    }
    let _ = tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .try_init();
    tokio::runtime::Runtime::new()?.block_on(service::serve(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_path_sits_next_to_gold() {
        assert_eq!(
            default_report_path(Path::new("/c/gold.json"), VersionPreset::V3),
            PathBuf::from("/c/gold.v3.report.json")
        );
        assert_eq!(
            default_report_path(Path::new("x.gold.json"), VersionPreset::V4),
            PathBuf::from("x.v4.report.json")
        );
    }

    #[test]
    fn flag_pairs_and_presets() {
        let cli = Cli::try_parse_from(["marksheet", "parse", "f", "--no-pre", "--pre", "--no-post"]).unwrap();
        let Command::Parse(p) = cli.command else { panic!() };
        assert!(!p.no_pre && p.no_post);

        let cli = Cli::try_parse_from(["marksheet", "eval", "c", "g", "--v3a"]).unwrap();
        let Command::Eval(e) = cli.command else { panic!() };
        assert_eq!(e.preset(), VersionPreset::V3A);
        assert!(Cli::try_parse_from(["marksheet", "eval", "c", "g", "--v3", "--v4"]).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["marksheet", "parse", "--bogus"], &mut out, &mut err), 2);
        assert!(String::from_utf8_lossy(&err).contains("Usage"));
        assert_eq!(run(["marksheet", "--help"], &mut out, &mut err), 0);
    }
}
