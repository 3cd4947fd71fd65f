//! Word normalization: case folding, Arabic letter folding, stop-word
//! removal and light stemming.

mod arabic;
mod english;
mod stopwords;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

pub use arabic::{normalize_arabic, stem_arabic};
pub use english::stem_english;
pub use stopwords::StopWordList;

use crate::corpus::{split_words, Phrase};
use crate::error::Result;

/// Which rules apply to a word. `Auto` picks per word from its script.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Language {
    #[default]
    Auto,
    English,
    Arabic,
}

impl Language {
    pub fn of_word(word: &str) -> Language {
        if word.chars().any(arabic::is_arabic_letter) {
            Language::Arabic
        } else {
            Language::English
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Auto => "auto",
            Language::English => "english",
            Language::Arabic => "arabic",
        })
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Language::Auto),
            "en" | "english" => Ok(Language::English),
            "ar" | "arabic" => Ok(Language::Arabic),
            other => Err(format!("unknown language `{other}`")),
        }
    }
}

pub(crate) fn normalize_word(word: &str, language: Language) -> String {
    match language {
        Language::Arabic => normalize_arabic(word),
        Language::English => word.to_lowercase(),
        Language::Auto => normalize_word(word, Language::of_word(word)),
    }
}

#[derive(Debug, Clone)]
pub struct TextPipeline {
    language: Language,
    english: StopWordList,
    arabic: StopWordList,
}

impl Default for TextPipeline {
    fn default() -> Self {
        TextPipeline {
            language: Language::Auto,
            english: StopWordList::builtin(Language::English),
            arabic: StopWordList::builtin(Language::Arabic),
        }
    }
}

impl TextPipeline {
    pub fn new(language: Language) -> Self {
        TextPipeline {
            language,
            ..Default::default()
        }
    }

    /// Replaces the built-in lists with `english.txt` and/or `arabic.txt`
    /// from `dir`, when present.
    pub fn with_stopwords_dir(mut self, dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let en = dir.join("english.txt");
        if en.is_file() {
            self.english = StopWordList::load(Language::English, en)?;
        }
        let ar = dir.join("arabic.txt");
        if ar.is_file() {
            self.arabic = StopWordList::load(Language::Arabic, ar)?;
        }
        Ok(self)
    }

    pub fn with_stopwords(mut self, list: StopWordList) -> Self {
        match list.language() {
            Language::Arabic => self.arabic = list,
            _ => self.english = list,
        }
        self
    }

    pub fn language(&self) -> Language {
        self.language
    }

    fn word_language(&self, word: &str) -> Language {
        match self.language {
            Language::Auto => Language::of_word(word),
            lang => lang,
        }
    }

    pub fn normalize(&self, word: &str) -> String {
        normalize_word(word, self.word_language(word))
    }

    pub fn is_stop_word(&self, word: &str) -> bool {
        let lang = self.word_language(word);
        let norm = normalize_word(word, lang);
        match lang {
            Language::Arabic => self.arabic.contains(&norm),
            _ => self.english.contains(&norm),
        }
    }

    /// Order-preserving filter over raw words.
    pub fn remove_stop_words<S: AsRef<str>>(&self, words: &[S]) -> Vec<String> {
        words
            .iter()
            .map(AsRef::as_ref)
            .filter(|w| !self.is_stop_word(w))
            .map(str::to_owned)
            .collect()
    }

    pub fn stem(&self, word: &str) -> String {
        match self.word_language(word) {
            Language::Arabic => stem_arabic(word),
            _ => stem_english(&word.to_lowercase()),
        }
    }

    /// Normalizes one word into an index term, or `None` for stop words.
    pub fn term(&self, word: &str) -> Option<String> {
        if self.is_stop_word(word) {
            return None;
        }
        let t = self.stem(word);
        (!t.is_empty()).then_some(t)
    }

    pub fn process_words<S: AsRef<str>>(&self, words: &[S]) -> Vec<String> {
        words.iter().filter_map(|w| self.term(w.as_ref())).collect()
    }

    pub fn pipeline(&self, phrase: &Phrase) -> Vec<String> {
        self.process_words(&phrase.words)
    }

    /// Treats free text as a single phrase.
    pub fn query_terms(&self, text: &str) -> Vec<String> {
        self.process_words(&split_words(text))
    }
}
