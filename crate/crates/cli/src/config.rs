//! Optional `key = value` configuration; `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
            let key = k.trim().trim_start_matches("--").replace('_', "-");
            let val = v.trim().trim_matches('"').to_string();
            if key.is_empty() {
                return Err(format!("line {}: empty key", i + 1));
            }
            values.insert(key, val);
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Config::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn flag(&self, key: &str) -> Result<bool, String> {
        match self.get(key) {
            None => Ok(false),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => Err(format!("--{key}: expected a boolean in config, got '{v}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let c = Config::parse("# defaults\nfamily = B\nmax_rank=3 # inline\n\njson = true\n").unwrap();
        assert_eq!(c.get("family"), Some("B"));
        assert_eq!(c.get("max-rank"), Some("3"));
        assert_eq!(c.flag("json"), Ok(true));
        assert_eq!(c.flag("tsv"), Ok(false));
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Config::parse("family B").is_err());
        assert!(Config::parse("= 3").is_err());
        assert!(Config::parse("json = maybe").unwrap().flag("json").is_err());
    }
}
