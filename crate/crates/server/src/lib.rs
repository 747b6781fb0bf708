//! HTTP service and command-line front end for marksheet extraction.
//!
//! The service stores every parse under `DATA_DIR` and lets a reviewer
//! confirm or correct the extracted marks:
//!
//! ```no_run
//! # async fn boot() -> anyhow::Result<()> {
//! let cfg = marksheet_server::service::ServiceConfig::from_env()?;
//! marksheet_server::service::serve(cfg).await
//! # }
//! ```

pub mod cli;
pub mod service;
pub mod store;

pub use service::{router, AppState, ServiceConfig};
pub use store::{Status, Store, StoredResult};
