use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distinguishing::{DEFAULT_EXACT_CAP, DEFAULT_NODE_LIMIT};
use crate::error::{Error, Result};
use crate::symmetry::{DEFAULT_ELEMENT_CAP, DEFAULT_ORACLE_CAP};
use crate::vectorspace::DEFAULT_VERTEX_CAP;

pub const CONFIG_ENV: &str = "NZC_CONFIG";
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    #[default]
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Structural,
    Oracle,
    Both,
}

macro_rules! parse_lowercase {
    ($ty:ty, $($name:literal => $variant:expr),+) => {
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($variant),)+
                    other => Err(format!("unknown value `{other}`")),
                }
            }
        }
    };
}

parse_lowercase!(Format, "json" => Format::Json, "dot" => Format::Dot, "table" => Format::Table);
parse_lowercase!(Engine, "structural" => Engine::Structural, "oracle" => Engine::Oracle, "both" => Engine::Both);

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Engine::Structural => "structural",
            Engine::Oracle => "oracle",
            Engine::Both => "both",
        };
        f.write_str(s)
    }
}

/// Optional settings read from the file named by `NZC_CONFIG`. Keys match
/// the long flag names with `-` replaced by `_`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub q: Option<u32>,
    pub format: Option<Format>,
    pub engine: Option<Engine>,
    pub seed: Option<u64>,
    pub vertex_cap: Option<usize>,
    pub oracle_cap: Option<usize>,
    pub exact_cap: Option<usize>,
    pub element_cap: Option<usize>,
    pub samples: Option<usize>,
    pub node_limit: Option<u64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParams(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Reads `NZC_CONFIG` if it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Self::load(Path::new(&path)),
            None => Ok(Self::default()),
        }
    }
}

/// Effective settings for one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub vertex_cap: usize,
    pub oracle_cap: usize,
    pub exact_cap: usize,
    pub element_cap: usize,
    pub samples: usize,
    pub node_limit: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            format: Format::Table,
            seed: 0,
            vertex_cap: DEFAULT_VERTEX_CAP,
            oracle_cap: DEFAULT_ORACLE_CAP,
            exact_cap: DEFAULT_EXACT_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
            samples: DEFAULT_SAMPLES,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

impl RunConfig {
    /// File values over defaults.
    pub fn from_file(file: &FileConfig) -> Result<Self> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            format: file.format.unwrap_or(d.format),
            seed: file.seed.unwrap_or(d.seed),
            vertex_cap: file.vertex_cap.unwrap_or(d.vertex_cap),
            oracle_cap: file.oracle_cap.unwrap_or(d.oracle_cap),
            exact_cap: file.exact_cap.unwrap_or(d.exact_cap),
            element_cap: file.element_cap.unwrap_or(d.element_cap),
            samples: file.samples.unwrap_or(d.samples),
            node_limit: file.node_limit.unwrap_or(d.node_limit),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("vertex cap", self.vertex_cap),
            ("oracle cap", self.oracle_cap),
            ("exact cap", self.exact_cap),
            ("element cap", self.element_cap),
        ];
        if let Some((name, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidParams(format!("{name} must be positive")));
        }
        if self.node_limit == 0 {
            return Err(Error::InvalidParams("node limit must be positive".into()));
        }
        Ok(())
    }
}

/// Inclusive integer range written as `a`, `a..b` or `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusiveRange {
    pub start: u64,
    pub end: u64,
}

impl InclusiveRange {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad range bound `{x}`: {e}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range `{s}`"));
        }
        Ok(InclusiveRange { start, end })
    }
}
