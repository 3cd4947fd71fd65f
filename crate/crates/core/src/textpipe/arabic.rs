//! Arabic letter normalization and light stemming.

const ARTICLES: &[&str] = &["وال", "بال", "كال", "فال", "لل", "ال"];
const SUFFIXES: &[&str] = &["ات", "ون", "ين", "ها", "ان", "ة", "ي"];
const TA_MARBUTA: &str = "ة";

pub(crate) fn is_arabic_letter(c: char) -> bool {
    matches!(c, '\u{0600}'..='\u{06FF}' | '\u{0750}'..='\u{077F}' | '\u{FB50}'..='\u{FDFF}' | '\u{FE70}'..='\u{FEFF}')
}

/// Drops harakat, superscript alef and tatweel, and folds letter variants:
/// hamza-carrying alefs to bare alef, alef maqsura to ya, hamza on waw or ya
/// to the bare hamza.
pub fn normalize_arabic(word: &str) -> String {
    word.chars()
        .filter(|c| !matches!(c, '\u{064B}'..='\u{0652}' | '\u{0670}' | '\u{0640}'))
        .map(|c| match c {
            'أ' | 'إ' | 'آ' => 'ا',
            'ى' => 'ي',
            'ؤ' | 'ئ' => 'ء',
            c => c,
        })
        .collect()
}

fn len(s: &str) -> usize {
    s.chars().count()
}

/// Light stemmer over a normalized word.
///
/// At most one article prefix (or, failing that, a leading `و`) and at most
/// one suffix are removed. A stem left with four letters and `ي` in third
/// position after dropping `ة` loses the `ي` (`مدينة` and `مدن` collide).
pub fn stem_arabic(word: &str) -> String {
    let word = normalize_arabic(word);
    let mut stem: &str = &word;

    let mut stripped_article = false;
    for art in ARTICLES {
        if let Some(rest) = stem.strip_prefix(art) {
            if len(rest) >= 2 {
                stem = rest;
                stripped_article = true;
                break;
            }
        }
    }
    if !stripped_article {
        if let Some(rest) = stem.strip_prefix('و') {
            if len(rest) >= 3 {
                stem = rest;
            }
        }
    }

    let mut dropped_ta_marbuta = false;
    for suf in SUFFIXES {
        if let Some(rest) = stem.strip_suffix(suf) {
            if len(rest) >= 3 {
                stem = rest;
                dropped_ta_marbuta = *suf == TA_MARBUTA;
                break;
            }
        }
    }

    let chars: Vec<char> = stem.chars().collect();
    if dropped_ta_marbuta && chars.len() == 4 && chars[2] == 'ي' {
        return [chars[0], chars[1], chars[3]].iter().collect();
    }
    stem.to_owned()
}
