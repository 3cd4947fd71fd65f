//! Line-oriented index file.
//!
//! ```text
//! CIRIDX v1 N=<n_docs>
//! <term>\t<rc>\t<doc>:<tf>,<doc>:<tf>,...
//! ```
//!
//! One line per semantic posting, sorted by term then rc, with an empty rc
//! field for UNKNOWN. Traditional postings are rebuilt on load.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{IndexPair, Posting};
use crate::error::{Error, Result};
use crate::ontology::Rc;

pub const FORMAT_MAGIC: &str = "CIRIDX";
pub const FORMAT_VERSION: &str = "v1";

impl IndexPair {
    pub fn to_text(&self) -> String {
        let mut out = format!("{FORMAT_MAGIC} {FORMAT_VERSION} N={}\n", self.n_docs);
        for ((term, rc), posting) in &self.semantic {
            out.push_str(term);
            out.push('\t');
            out.push_str(rc.id().unwrap_or(""));
            out.push('\t');
            for (i, (d, tf)) in posting.entries().iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{d}:{tf}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        let mut parts = header.split_whitespace();
        if parts.next() != Some(FORMAT_MAGIC) || parts.next() != Some(FORMAT_VERSION) {
            return Err(Error::VersionMismatch(header.to_owned()));
        }
        let n_docs = parts
            .next()
            .and_then(|p| p.strip_prefix("N="))
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| Error::parse(1, "header needs N=<count>"))?;
        if parts.next().is_some() {
            return Err(Error::parse(1, "trailing header fields"));
        }

        let mut semantic = BTreeMap::new();
        for (i, line) in lines {
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [term, rc, entries] = fields[..] else {
                return Err(Error::parse(lineno, "expected term, rc and entries"));
            };
            if term.is_empty() {
                return Err(Error::parse(lineno, "empty term"));
            }
            let rc = if rc.is_empty() { Rc::Unknown } else { Rc::concept(rc) };
            let posting = parse_entries(entries, n_docs).map_err(|m| Error::parse(lineno, m))?;
            if semantic.insert((term.to_owned(), rc), posting).is_some() {
                return Err(Error::parse(lineno, "duplicate (term, rc) key"));
            }
        }
        Ok(IndexPair::from_semantic(n_docs, semantic))
    }
}

fn parse_entries(s: &str, n_docs: usize) -> std::result::Result<Posting, String> {
    let mut entries = Vec::new();
    for item in s.split(',') {
        let (d, tf) = item.split_once(':').ok_or_else(|| format!("bad entry `{item}`"))?;
        let d: u32 = d.parse().map_err(|_| format!("bad doc id `{d}`"))?;
        let tf: u32 = tf.parse().map_err(|_| format!("bad tf `{tf}`"))?;
        if d == 0 || tf == 0 {
            return Err(format!("doc id and tf must be positive in `{item}`"));
        }
        if entries.last().is_some_and(|&(prev, _)| prev >= d) {
            return Err("doc ids must be strictly ascending".into());
        }
        entries.push((d, tf));
    }
    if entries.len() > n_docs {
        return Err(format!("{} entries exceed N={n_docs}", entries.len()));
    }
    Ok(Posting { entries })
}

pub fn save_index(ix: &IndexPair, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, ix.to_text()).map_err(|e| Error::io(path, e))
}

pub fn load_index(path: impl AsRef<Path>) -> Result<IndexPair> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    IndexPair::parse(&text)
}
