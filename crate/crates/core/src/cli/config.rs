use std::path::Path;

use crate::error::{Error, Result};
use crate::Limits;

/// Environment variable naming the result-cache directory.
pub const CACHE_ENV: &str = "AUGRING_CACHE_DIR";

/// Reads caps from a TOML file; absent keys keep their defaults.
///
/// ```toml
/// max_order = 512
/// max_depth = 16
/// torsion_bound = 100
/// ```
pub fn load_limits(path: &Path) -> Result<Limits> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_limits(&text)
}

pub fn parse_limits(text: &str) -> Result<Limits> {
    let limits: Limits = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    if limits.max_order == 0 || limits.max_depth == 0 {
        return Err(Error::Config("caps must be positive".into()));
    }
    Ok(limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_and_bad_configs() {
        let l = parse_limits("max_depth = 8\n").unwrap();
        assert_eq!(l, Limits { max_depth: 8, ..Limits::default() });
        assert_eq!(parse_limits("").unwrap(), Limits::default());
        assert!(parse_limits("max_depth = \"deep\"").is_err());
        assert!(parse_limits("max_order = 0").is_err());
        assert!(parse_limits("surprise = 1").is_err());
    }
}
