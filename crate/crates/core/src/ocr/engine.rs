use super::{load_token_dump, OcrError, TokenStream};
use std::io::Read;
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

const INPUT_PLACEHOLDER: &str = "{input}";

/// External OCR engine invocation.
///
/// `command` is split shell-style. Every `{input}` is replaced by the image
/// path; without a placeholder the path is appended as the last argument.
/// The engine must print a token dump on stdout and exit 0.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub command: String,
    pub timeout: Duration,
}

impl EngineConfig {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            timeout: Duration::from_secs(120),
        }
    }

    fn argv(&self, image: &Path) -> Result<Vec<String>, OcrError> {
        let mut argv = shlex::split(&self.command)
            .filter(|a| !a.is_empty())
            .ok_or_else(|| OcrError::InvalidCommand(self.command.clone()))?;
        let path = image.to_string_lossy();
        if self.command.contains(INPUT_PLACEHOLDER) {
            for arg in &mut argv {
                *arg = arg.replace(INPUT_PLACEHOLDER, &path);
            }
        } else {
            argv.push(path.into_owned());
        }
        Ok(argv)
    }
}

fn drain<R: Read + Send + 'static>(mut r: R) -> thread::JoinHandle<Vec<u8>> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = r.read_to_end(&mut buf);
        buf
    })
}

/// Runs the engine on `image` and parses its stdout as a token dump.
pub fn run_external_engine(image: &Path, engine: &EngineConfig) -> Result<TokenStream, OcrError> {
    let argv = engine.argv(image)?;
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    let stdout = drain(child.stdout.take().expect("stdout piped"));
    let stderr = drain(child.stderr.take().expect("stderr piped"));

    let deadline = Instant::now() + engine.timeout;
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if Instant::now() >= deadline {
            let _ = child.kill();
            let _ = child.wait();
            return Err(OcrError::EngineTimeout(engine.timeout));
        }
        thread::sleep(Duration::from_millis(5));
    };
    let out = stdout.join().unwrap_or_default();
    let err = stderr.join().unwrap_or_default();
    if !status.success() {
        return Err(OcrError::EngineFailure {
            status: status.to_string(),
            stderr: String::from_utf8_lossy(&err).trim().to_string(),
        });
    }
    Ok(load_token_dump(&out)?)
}

#[cfg(all(test, unix))]
mod tests {
    use super::*;
    use std::io::Write;
    use std::os::unix::fs::PermissionsExt;

    fn script(dir: &Path, name: &str, body: &str) -> String {
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "#!/bin/sh\n{body}").unwrap();
        drop(f);
        std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn echo_engine_passes_dump_through() {
        let dir = tempfile::tempdir().unwrap();
        let dump = dir.path().join("d.ocr.json");
        std::fs::write(&dump, crate::fixtures::GUJARAT_DUMP).unwrap();
        let cmd = script(dir.path(), "eng.sh", &format!("cat '{}'", dump.display()));
        let stream = run_external_engine(Path::new("page.png"), &EngineConfig::new(cmd)).unwrap();
        let expected = load_token_dump(crate::fixtures::GUJARAT_DUMP.as_bytes()).unwrap();
        assert_eq!(stream, expected);
    }

    #[test]
    fn placeholder_is_substituted() {
        let dir = tempfile::tempdir().unwrap();
        let dump = dir.path().join("page.ocr.json");
        std::fs::write(&dump, r#"{"source_id":"p","page":1,"tokens":[]}"#).unwrap();
        let cfg = EngineConfig::new("cat {input}");
        let stream = run_external_engine(&dump, &cfg).unwrap();
        assert_eq!(stream.source_id, "p");
    }

    #[test]
    fn nonzero_exit_is_engine_failure() {
        let dir = tempfile::tempdir().unwrap();
        let cmd = script(dir.path(), "fail.sh", "echo boom >&2; exit 1");
        match run_external_engine(Path::new("x.png"), &EngineConfig::new(cmd)) {
            Err(OcrError::EngineFailure { stderr, .. }) => assert_eq!(stderr, "boom"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn slow_engine_times_out() {
        let dir = tempfile::tempdir().unwrap();
        let cmd = script(dir.path(), "slow.sh", "sleep 5");
        let cfg = EngineConfig {
            command: cmd,
            timeout: Duration::from_millis(200),
        };
        let start = Instant::now();
        assert!(matches!(
            run_external_engine(Path::new("x.png"), &cfg),
            Err(OcrError::EngineTimeout(_))
        ));
        assert!(start.elapsed() < Duration::from_secs(4));
    }

    #[test]
    fn garbage_output_is_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let cmd = script(dir.path(), "junk.sh", "echo not-a-dump");
        assert!(matches!(
            run_external_engine(Path::new("x.png"), &EngineConfig::new(cmd)),
            Err(OcrError::Dump(_))
        ));
    }

    #[test]
    fn empty_command_is_rejected() {
        assert!(matches!(
            run_external_engine(Path::new("x.png"), &EngineConfig::new("  ")),
            Err(OcrError::InvalidCommand(_))
        ));
    }
}
