//! File formats and the command-line driver for `quadfact-core`.

pub mod app;
pub mod format;

pub use app::run;
