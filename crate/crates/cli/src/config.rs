//! Optional `key=value` defaults file.

use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub depth: Option<usize>,
    pub max_depth: usize,
    pub monoid_cap: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            depth: None,
            max_depth: 1024,
            monoid_cap: bifix_core::syntactic::DEFAULT_MONOID_CAP,
            seed: 0,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut c = Config::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", n + 1))?;
            let value = value.trim();
            let num = || value.parse::<u64>().map_err(|e| format!("line {}: {key}: {e}", n + 1));
            match key.trim() {
                "depth" => c.depth = Some(num()? as usize),
                "max_depth" => c.max_depth = num()? as usize,
                "monoid_cap" => c.monoid_cap = num()? as usize,
                "seed" => c.seed = num()?,
                other => return Err(format!("line {}: unknown key {other}", n + 1)),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }
}
