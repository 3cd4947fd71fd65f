//! Document collection: JSON-lines loading and phrase segmentation.

use std::collections::HashSet;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Characters that end a phrase.
const PHRASE_DELIMITERS: &[char] = &['.', '!', '?', '\u{061F}', '\u{06D4}', '\n'];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phrase {
    pub words: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: u32,
    pub text: String,
    pub phrases: Vec<Phrase>,
}

impl Document {
    pub fn new(doc_id: u32, text: impl Into<String>) -> Self {
        let text = text.into();
        let phrases = segment_phrases(&text);
        Document { doc_id, text, phrases }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Collection {
    documents: Vec<Document>,
}

#[derive(Serialize, Deserialize)]
struct Record<'a> {
    id: u32,
    #[serde(borrow)]
    text: std::borrow::Cow<'a, str>,
}

impl Collection {
    /// Builds a collection, rejecting duplicate or zero ids.
    pub fn new(documents: Vec<Document>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(documents.len());
        for doc in &documents {
            if doc.doc_id == 0 {
                return Err(Error::InvariantViolation("doc_id must be positive".into()));
            }
            if !seen.insert(doc.doc_id) {
                return Err(Error::DuplicateDocId(doc.doc_id));
            }
        }
        Ok(Collection { documents })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn n_docs(&self) -> usize {
        self.documents.len()
    }

    pub fn get(&self, doc_id: u32) -> Option<&Document> {
        self.documents.iter().find(|d| d.doc_id == doc_id)
    }

    pub fn from_jsonl(input: impl BufRead) -> Result<Self> {
        let mut documents = Vec::new();
        let mut seen = HashSet::new();
        for (i, line) in input.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::parse(lineno, e.to_string()))?;
            if line.trim().is_empty() {
                return Err(Error::parse(lineno, "blank line"));
            }
            let rec: Record<'_> = serde_json::from_str(&line).map_err(|e| Error::parse(lineno, e.to_string()))?;
            if rec.id == 0 {
                return Err(Error::parse(lineno, "id must be a positive integer"));
            }
            if !seen.insert(rec.id) {
                return Err(Error::DuplicateDocId(rec.id));
            }
            documents.push(Document::new(rec.id, rec.text.into_owned()));
        }
        if documents.is_empty() {
            return Err(Error::EmptyCollection);
        }
        Ok(Collection { documents })
    }

    pub fn write_jsonl(&self, mut out: impl Write) -> std::io::Result<()> {
        for doc in &self.documents {
            let rec = Record {
                id: doc.doc_id,
                text: doc.text.as_str().into(),
            };
            serde_json::to_writer(&mut out, &rec)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

pub fn load_collection(path: impl AsRef<Path>) -> Result<Collection> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Collection::from_jsonl(BufReader::new(file))
}

fn is_word_char(c: char) -> bool {
    // Arabic harakat and the superscript alef are combining marks, not alphanumeric.
    c.is_alphanumeric() || matches!(c, '\u{064B}'..='\u{065F}' | '\u{0670}')
}

/// Splits `text` into words: maximal runs of letters, digits and Arabic marks.
pub fn split_words(text: &str) -> Vec<String> {
    text.split(|c: char| !is_word_char(c))
        .filter(|w| !w.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Splits text on sentence punctuation, then each phrase into words.
/// Phrases without any word are dropped.
pub fn segment_phrases(text: &str) -> Vec<Phrase> {
    text.split(PHRASE_DELIMITERS)
        .map(split_words)
        .filter(|words| !words.is_empty())
        .map(|words| Phrase { words })
        .collect()
}
