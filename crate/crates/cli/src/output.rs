use std::path::{Path, PathBuf};

use anyhow::Context;

/// Environment variable naming the root under which default output
/// directories are created.
pub const OUT_ENV: &str = "SPECGAME_OUT";

pub fn output_root() -> PathBuf {
    std::env::var_os(OUT_ENV).map_or_else(|| PathBuf::from("specgame-out"), PathBuf::from)
}

/// Creates and returns `explicit`, or `<root>/<name>` when none is given.
pub(crate) fn prepare(explicit: Option<&Path>, name: impl FnOnce() -> String) -> anyhow::Result<PathBuf> {
    let dir = match explicit {
        Some(d) => d.to_owned(),
        None => output_root().join(name()),
    };
    std::fs::create_dir_all(&dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
    Ok(dir)
}

/// Writes to stdout, ignoring a closed pipe: the files on disk are the
/// command's real output.
pub(crate) fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
