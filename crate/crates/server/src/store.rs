//! Append-only result persistence: one directory per result id, one JSON
//! file per state change, never rewritten.
//!
//! ```text
//! DATA_DIR/
//!   3f2a…c1/
//!     0001-extracted.json
//!     0002-confirmed.json
//! ```

use chrono::{DateTime, Utc};
use marksheet_core::MarksheetResult;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Extracted,
    Confirmed,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Extracted => "extracted",
            Status::Confirmed => "confirmed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredResult {
    pub result_id: String,
    pub result: MarksheetResult,
    pub status: Status,
    /// Reviewer-edited subject → mark pairs; empty until confirmed.
    pub corrections: BTreeMap<String, u8>,
    pub created_at: DateTime<Utc>,
    pub confirmed_at: Option<DateTime<Utc>>,
}

impl StoredResult {
    pub fn to_bytes(&self) -> Vec<u8> {
        serde_json::to_vec_pretty(self).expect("stored result serializes")
    }
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("no result with id {0}")]
    NotFound(String),
    #[error("result {0} is already confirmed with different corrections")]
    Conflict(String),
    #[error("corrupt record {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("store i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Outcome of a confirm call.
#[derive(Debug, Clone, PartialEq)]
pub enum Confirmed {
    /// First confirmation; a new record was appended.
    New(Vec<u8>),
    /// Identical replay of an earlier confirmation.
    Replay(Vec<u8>),
}

impl Confirmed {
    pub fn bytes(&self) -> &[u8] {
        match self {
            Confirmed::New(b) | Confirmed::Replay(b) => b,
        }
    }
}

pub struct Store {
    root: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

/// Ids are 32 lowercase hex digits; anything else can never name a record.
pub fn is_valid_id(id: &str) -> bool {
    id.len() == 32 && id.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
}

fn new_id() -> String {
    format!("{:032x}", rand::thread_rng().gen::<u128>())
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root = root.into();
        std::fs::create_dir_all(&root)?;
        Ok(Self {
            root,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn lock_for(&self, id: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|e| e.into_inner());
        Arc::clone(locks.entry(id.to_string()).or_default())
    }

    /// Persists a fresh extraction and returns the exact bytes written.
    pub fn create(&self, result: MarksheetResult) -> Result<(StoredResult, Vec<u8>), StoreError> {
        loop {
            let id = new_id();
            let dir = self.root.join(&id);
            match std::fs::create_dir(&dir) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
                Err(e) => return Err(e.into()),
            }
            let lock = self.lock_for(&id);
            let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
            let stored = StoredResult {
                result_id: id,
                result,
                status: Status::Extracted,
                corrections: BTreeMap::new(),
                created_at: Utc::now(),
                confirmed_at: None,
            };
            let bytes = stored.to_bytes();
            append(&dir, 1, Status::Extracted, &bytes)?;
            return Ok((stored, bytes));
        }
    }

    /// Current bytes of a record, exactly as last written.
    pub fn get_bytes(&self, id: &str) -> Result<Vec<u8>, StoreError> {
        if !is_valid_id(id) {
            return Err(StoreError::NotFound(id.to_string()));
        }
        let lock = self.lock_for(id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let (_, path) = self.latest(id)?;
        Ok(std::fs::read(path)?)
    }

    pub fn get(&self, id: &str) -> Result<StoredResult, StoreError> {
        let bytes = self.get_bytes(id)?;
        parse_record(&self.root.join(id), &bytes)
    }

    /// Moves `extracted → confirmed`. A repeat with the same corrections is
    /// answered from the stored record; a different body is a conflict.
    pub fn confirm(&self, id: &str, corrections: BTreeMap<String, u8>) -> Result<Confirmed, StoreError> {
        if !is_valid_id(id) {
            return Err(StoreError::NotFound(id.to_string()));
        }
        let lock = self.lock_for(id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let (seq, path) = self.latest(id)?;
        let bytes = std::fs::read(&path)?;
        let mut stored = parse_record(&path, &bytes)?;
        match stored.status {
            Status::Confirmed if stored.corrections == corrections => Ok(Confirmed::Replay(bytes)),
            Status::Confirmed => Err(StoreError::Conflict(id.to_string())),
            Status::Extracted => {
                stored.status = Status::Confirmed;
                stored.corrections = corrections;
                stored.confirmed_at = Some(Utc::now());
                let bytes = stored.to_bytes();
                append(&self.root.join(id), seq + 1, Status::Confirmed, &bytes)?;
                Ok(Confirmed::New(bytes))
            }
        }
    }

    fn latest(&self, id: &str) -> Result<(u32, PathBuf), StoreError> {
        let dir = self.root.join(id);
        let entries = match std::fs::read_dir(&dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(StoreError::NotFound(id.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        let mut best: Option<(u32, PathBuf)> = None;
        for entry in entries {
            let path = entry?.path();
            let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
                continue;
            };
            if !name.ends_with(".json") {
                continue;
            }
            let Some(seq) = name.split('-').next().and_then(|s| s.parse::<u32>().ok()) else {
                continue;
            };
            if best.as_ref().is_none_or(|(b, _)| seq > *b) {
                best = Some((seq, path));
            }
        }
        best.ok_or_else(|| StoreError::NotFound(id.to_string()))
    }
}

fn parse_record(path: &Path, bytes: &[u8]) -> Result<StoredResult, StoreError> {
    serde_json::from_slice(bytes).map_err(|e| StoreError::Corrupt {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

/// Writes to a temporary name and renames into place, so readers never see
/// a partial record; `create_new` refuses to reuse a sequence number.
fn append(dir: &Path, seq: u32, status: Status, bytes: &[u8]) -> Result<(), StoreError> {
    let name = format!("{seq:04}-{}.json", status.as_str());
    let tmp = dir.join(format!(".{name}.tmp"));
    let mut f = std::fs::OpenOptions::new().write(true).create_new(true).open(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    let target = dir.join(&name);
    if target.exists() {
        let _ = std::fs::remove_file(&tmp);
        return Err(std::io::Error::new(std::io::ErrorKind::AlreadyExists, name).into());
    }
    std::fs::rename(&tmp, &target)?;
    Ok(())
}
