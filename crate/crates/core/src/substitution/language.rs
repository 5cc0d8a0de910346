use std::collections::{BTreeSet, HashSet};

use super::{Letter, Substitution, SubstitutionError, Word};

/// All length-`n` factors of the language of a primitive substitution.
///
/// Starts from the factors of `φ^K(a)` with `|φ^K(a)| ≥ n` and closes the
/// set under "substitute and collect factors".
pub fn factor_language(s: &Substitution, n: usize) -> Result<BTreeSet<Word>, SubstitutionError> {
    if !s.is_primitive() {
        return Err(SubstitutionError::NotPrimitive);
    }
    if n == 0 {
        return Ok(BTreeSet::from([Word::empty()]));
    }
    let mut seed: Vec<Letter> = vec![0];
    while seed.len() < n {
        seed = s.apply_unchecked(&seed).into_letters();
    }
    let mut known: HashSet<Vec<Letter>> = seed.windows(n).map(<[Letter]>::to_vec).collect();
    let mut frontier: Vec<Vec<Letter>> = known.iter().cloned().collect();
    while let Some(w) = frontier.pop() {
        let img = s.apply_unchecked(&w);
        for f in img.windows(n) {
            if !known.contains(f) {
                known.insert(f.to_vec());
                frontier.push(f.to_vec());
            }
        }
    }
    Ok(known.into_iter().map(Word).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::tests::{fibonacci, tau1, thue_morse};

    fn names(s: &Substitution, set: &BTreeSet<Word>) -> Vec<String> {
        set.iter().map(|w| s.format_word(w)).collect()
    }

    #[test]
    fn fibonacci_pairs() {
        let f = fibonacci();
        assert_eq!(names(&f, &factor_language(&f, 2).unwrap()), ["aa", "ab", "ba"]);
    }

    #[test]
    fn thue_morse_pairs() {
        let t = thue_morse();
        assert_eq!(names(&t, &factor_language(&t, 2).unwrap()), ["aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn single_letters_are_the_alphabet() {
        for s in [fibonacci(), thue_morse(), tau1()] {
            assert_eq!(factor_language(&s, 1).unwrap().len(), s.size());
        }
    }

    #[test]
    fn complexity_of_sturmian_and_thue_morse() {
        // Sturmian: p(n) = n + 1; Thue–Morse: p(3) = 6; Tribonacci: p(n) = 2n + 1.
        assert_eq!(factor_language(&fibonacci(), 3).unwrap().len(), 4);
        assert_eq!(factor_language(&fibonacci(), 7).unwrap().len(), 8);
        assert_eq!(factor_language(&thue_morse(), 3).unwrap().len(), 6);
        assert_eq!(factor_language(&tau1(), 5).unwrap().len(), 11);
    }

    #[test]
    fn non_primitive_is_rejected() {
        let s = Substitution::from_rules(&[("a", "a"), ("b", "ab")]).unwrap();
        assert!(matches!(factor_language(&s, 2), Err(SubstitutionError::NotPrimitive)));
    }
}
