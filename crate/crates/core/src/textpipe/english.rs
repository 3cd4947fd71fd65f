//! Rule-based English suffix stripping.
//!
//! Rules are tried in order and the first that applies wins:
//!
//! 1. `-ies` becomes `-y`, except after `e` or `a` (`eies`, `aies`)
//! 2. `-es` drops the `s`
//! 3. a consonant other than `s` followed by `s` drops the `s`
//! 4. `-ing` is removed unless what remains is a single letter or `th`
//! 5. `-ed` after a consonant is removed unless a single letter remains
//!
//! `y` counts as a consonant. A rule never empties the word.

fn is_consonant(c: u8) -> bool {
    c.is_ascii_alphabetic() && !matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

pub fn stem_english(word: &str) -> String {
    let b = word.as_bytes();
    let n = b.len();

    if let Some(stem) = word.strip_suffix("ies") {
        if !stem.is_empty() && !stem.ends_with('e') && !stem.ends_with('a') {
            return format!("{stem}y");
        }
    }
    if n > 2 && word.ends_with("es") {
        return word[..n - 1].to_owned();
    }
    if n > 1 && b[n - 1] == b's' && b[n - 2] != b's' && is_consonant(b[n - 2]) {
        return word[..n - 1].to_owned();
    }
    if let Some(stem) = word.strip_suffix("ing") {
        if stem.chars().count() > 1 && stem != "th" {
            return stem.to_owned();
        }
        return word.to_owned();
    }
    if let Some(stem) = word.strip_suffix("ed") {
        let sb = stem.as_bytes();
        if sb.len() > 1 && is_consonant(sb[sb.len() - 1]) {
            return stem.to_owned();
        }
    }
    word.to_owned()
}
