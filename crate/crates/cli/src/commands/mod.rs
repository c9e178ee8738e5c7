pub mod analyze;
pub mod fit;
pub mod report;
pub mod run;
pub mod sweep;

use anyhow::Context;
use specgame::io::read_document;
use specgame::GameConfig;
use std::path::Path;

/// Loads `path` or the defaults, then applies flag overrides and validates.
pub(crate) fn load_config(path: Option<&Path>, apply: impl FnOnce(&mut GameConfig)) -> anyhow::Result<GameConfig> {
    let mut config = match path {
        Some(p) => read_document(p).with_context(|| format!("cannot load config {}", p.display()))?,
        None => GameConfig::default(),
    };
    apply(&mut config);
    config.validate()?;
    Ok(config)
}


/// Zero disables the bootstrap; otherwise it needs enough replicates for a
/// meaningful p-value.
pub(crate) fn check_bootstrap(n: usize) -> anyhow::Result<()> {
    let min = specgame::powerlaw::MIN_BOOTSTRAP;
    if n > 0 && n < min {
        anyhow::bail!("--bootstrap must be 0 or at least {min}, got {n}");
    }
    Ok(())
}
