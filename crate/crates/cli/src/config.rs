use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use cir_core::{Language, Norm, QueryWeighting, VsmOptions, DEFAULT_HOPS};
use serde::Deserialize;

/// Stop-word directory override; sits between the flag and the config file.
pub const STOPWORDS_ENV: &str = "CONCEPT_IR_STOPWORDS_DIR";
pub const DEFAULT_TOPK: usize = 10;

/// Optional TOML settings file. Relative paths resolve against the file's
/// directory. Command-line flags win over every value here.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub corpus: Option<PathBuf>,
    pub ontology: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub language: Option<String>,
    pub hops: Option<u32>,
    pub topk: Option<usize>,
    pub query_weighting: Option<String>,
    pub norm: Option<String>,
    pub log: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg: FileConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.corpus, &mut cfg.ontology, &mut cfg.index, &mut cfg.stopwords]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Values after merging flags, config file, environment and defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub corpus: Option<PathBuf>,
    pub ontology: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub language: Language,
    pub hops: u32,
    pub topk: usize,
    pub vsm: VsmOptions,
    pub log: Option<String>,
}

/// Flag values that may also come from the config file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub corpus: Option<PathBuf>,
    pub ontology: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub language: Option<Language>,
    pub hops: Option<u32>,
    pub topk: Option<usize>,
    pub query_weighting: Option<QueryWeighting>,
    pub norm: Option<Norm>,
}

fn parse_field<T: std::str::FromStr<Err = String>>(name: &str, value: Option<&str>) -> Result<Option<T>> {
    value
        .map(|v| {
            v.parse::<T>()
                .map_err(|e| anyhow::Error::new(crate::UsageError(format!("config `{name}`: {e}"))))
        })
        .transpose()
}

impl Settings {
    pub fn resolve(flags: Overrides, file: FileConfig) -> Result<Self> {
        let language = match flags.language {
            Some(l) => l,
            None => parse_field("language", file.language.as_deref())?.unwrap_or_default(),
        };
        let weighting = match flags.query_weighting {
            Some(w) => w,
            None => parse_field("query-weighting", file.query_weighting.as_deref())?.unwrap_or_default(),
        };
        let norm = match flags.norm {
            Some(n) => n,
            None => parse_field("norm", file.norm.as_deref())?.unwrap_or_default(),
        };
        Ok(Settings {
            corpus: flags.corpus.or(file.corpus),
            ontology: flags.ontology.or(file.ontology),
            index: flags.index.or(file.index),
            stopwords: flags.stopwords.or(file.stopwords),
            language,
            hops: flags.hops.or(file.hops).unwrap_or(DEFAULT_HOPS),
            topk: flags.topk.or(file.topk).unwrap_or(DEFAULT_TOPK),
            vsm: VsmOptions { weighting, norm },
            log: file.log,
        })
    }
}
