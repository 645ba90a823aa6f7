//! `key = value` settings files. Blank lines and `#` comments are ignored;
//! command-line flags take precedence over file values.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

const KNOWN_KEYS: &[&str] = &[
    "genus",
    "k",
    "surface",
    "budget",
    "time_limit",
    "json",
    "mirror_twists",
    "timings",
    "gmin",
    "gmax",
    "kinds",
    "props",
    "out",
    "jobs",
];

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected key = value", n + 1));
            };
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key {key:?}", n + 1));
            }
            map.insert(key, value.trim().to_owned());
        }
        Ok(Self(map))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.0.get(key).map(|v| v.parse::<T>().map_err(|e| format!("setting {key} = {v:?}: {e}"))).transpose()
    }

    pub fn flag(&self, key: &str) -> Result<bool, String> {
        match self.0.get(key).map(String::as_str) {
            None | Some("false") | Some("0") | Some("no") => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some(v) => Err(format!("setting {key} = {v:?} is not a boolean")),
        }
    }

    /// A comma-separated list.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.0
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<T>().map_err(|e| format!("setting {key}: {e}")))
                    .collect()
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_values() {
        let s = Settings::parse("# defaults\ngenus = 4\n\nkinds = closed, bordered # two kinds\nmirror-twists=yes\n")
            .unwrap();
        assert_eq!(s.get::<usize>("genus").unwrap(), Some(4));
        assert_eq!(s.get::<usize>("k").unwrap(), None);
        assert_eq!(s.list::<String>("kinds").unwrap().unwrap(), vec!["closed", "bordered"]);
        assert!(s.flag("mirror_twists").unwrap());
        assert!(!s.flag("timings").unwrap());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Settings::parse("genus 4").is_err());
        assert!(Settings::parse("colour = red").is_err());
        let s = Settings::parse("genus = four\ntimings = maybe").unwrap();
        assert!(s.get::<usize>("genus").is_err());
        assert!(s.flag("timings").is_err());
    }
}
