use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

use super::Language;

const ENGLISH: &str = include_str!("../../resources/stopwords/english.txt");
const ARABIC: &str = include_str!("../../resources/stopwords/arabic.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWordList {
    language: Language,
    words: HashSet<String>,
}

impl StopWordList {
    /// Parses one word per line. Blank lines and `#` comments are skipped.
    /// Entries are normalized the same way pipeline words are before lookup.
    pub fn parse(language: Language, text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|w| super::normalize_word(w, language))
            .collect();
        StopWordList { language, words }
    }

    pub fn load(language: Language, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(language, &text))
    }

    pub fn builtin(language: Language) -> Self {
        match language {
            Language::Arabic => Self::parse(language, ARABIC),
            _ => Self::parse(Language::English, ENGLISH),
        }
    }

    pub fn builtin_text(language: Language) -> &'static str {
        match language {
            Language::Arabic => ARABIC,
            _ => ENGLISH,
        }
    }

    pub fn language(&self) -> Language {
        self.language
    }

    /// Exact match against an already-normalized word.
    pub fn contains(&self, normalized: &str) -> bool {
        self.words.contains(normalized)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}
