//! JSON encoding of one-dimensional substitutions:
//! `{"alphabet": ["a", "b"], "rules": {"a": "ab", "b": "a"}}`.
//! An image is a string of single-character letters or an array of letter
//! names.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Alphabet, Substitution, SubstitutionError, Word};

#[derive(Debug, Error)]
pub enum SubstitutionIoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error("no rule for letter {0:?}")]
    MissingRule(String),
    #[error("rule for {0:?}, which is not in the alphabet")]
    ExtraRule(String),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawImage {
    Text(String),
    Tokens(Vec<String>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubstitution {
    alphabet: Vec<String>,
    rules: BTreeMap<String, RawImage>,
}

pub fn parse_substitution(text: &str) -> Result<Substitution, SubstitutionIoError> {
    let raw: RawSubstitution = serde_json::from_str(text)?;
    let alphabet = Alphabet::new(raw.alphabet.iter().cloned())?;
    if let Some(extra) = raw.rules.keys().find(|k| alphabet.index(k).is_none()) {
        return Err(SubstitutionIoError::ExtraRule(extra.clone()));
    }
    let images = alphabet
        .names()
        .iter()
        .map(|name| match raw.rules.get(name) {
            None => Err(SubstitutionIoError::MissingRule(name.clone())),
            Some(RawImage::Text(t)) => Ok(alphabet.parse_word(t)?),
            Some(RawImage::Tokens(ts)) => Ok(Word(
                ts.iter()
                    .map(|t| alphabet.index(t).ok_or_else(|| SubstitutionError::UnknownLetter(t.clone())))
                    .collect::<Result<_, _>>()?,
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Substitution::new(alphabet, images)?)
}

pub fn to_json(s: &Substitution) -> String {
    let names = s.alphabet().names();
    let single = names.iter().all(|n| n.chars().count() == 1);
    let rules = names
        .iter()
        .zip(s.images())
        .map(|(n, img)| {
            let image = if single {
                RawImage::Text(s.format_word(img))
            } else {
                RawImage::Tokens(img.iter().map(|&a| names[a].clone()).collect())
            };
            (n.clone(), image)
        })
        .collect();
    let raw = RawSubstitution { alphabet: names.to_vec(), rules };
    serde_json::to_string(&raw).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::super::builtins::{by_name, NAMES};
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let s = parse_substitution(r#"{"alphabet": ["a","b"], "rules": {"a": "ab", "b": "a"}}"#).unwrap();
        assert_eq!(s.to_string(), "a -> ab, b -> a");
    }

    #[test]
    fn multi_character_letters() {
        let s = parse_substitution(r#"{"alphabet": ["x1","x2"], "rules": {"x1": ["x1","x2"], "x2": "x1"}}"#).unwrap();
        assert_eq!(s.format_word(s.image(0)), "x1.x2");
        assert_eq!(parse_substitution(&to_json(&s)).unwrap(), s);
    }

    #[test]
    fn round_trip_builtins() {
        for n in NAMES {
            let s = by_name(n).unwrap();
            assert_eq!(parse_substitution(&to_json(&s)).unwrap(), s);
        }
    }

    #[test]
    fn errors() {
        let missing = parse_substitution(r#"{"alphabet": ["a","b"], "rules": {"a": "ab"}}"#);
        assert!(matches!(missing, Err(SubstitutionIoError::MissingRule(n)) if n == "b"));
        let extra = parse_substitution(r#"{"alphabet": ["a"], "rules": {"a": "a", "c": "a"}}"#);
        assert!(matches!(extra, Err(SubstitutionIoError::ExtraRule(_))));
        let unknown = parse_substitution(r#"{"alphabet": ["a"], "rules": {"a": "ax"}}"#);
        assert!(matches!(unknown, Err(SubstitutionIoError::Substitution(SubstitutionError::UnknownLetter(_)))));
        match parse_substitution("{\n \"alphabet\": [") {
            Err(SubstitutionIoError::Json(e)) => assert_eq!(e.line(), 2),
            other => panic!("{other:?}"),
        }
    }
}
