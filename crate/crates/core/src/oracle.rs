//! Brute-force reference implementation of bounded-length MAW sets.
//!
//! Deliberately slow and deliberately independent of the suffix-tree and
//! automaton machinery: it enumerates factors by sliding windows and tests
//! the MAW conditions directly against the factor set. Every differential
//! suite in the crate checks against this module.

use crate::text::{Alphabet, Block, MawSet, MawWord};
use std::collections::HashSet;

/// MAWs of length at most `ell` of `text`, which may contain separator
/// bytes. Words containing the separator are never produced: factors are
/// collected from separator-free windows only, and extension letters range
/// over the alphabet.
pub fn oracle_maws(text: &[u8], ell: usize, alphabet: &Alphabet) -> MawSet {
    assert!(ell >= 1, "ell must be >= 1");
    let sep = alphabet.separator();

    // separator-free factors of length 1..=ell
    let mut factors: HashSet<&[u8]> = HashSet::new();
    for start in 0..text.len() {
        for len in 1..=ell.min(text.len() - start) {
            let w = &text[start..start + len];
            if w[len - 1] == sep {
                break;
            }
            factors.insert(w);
        }
    }

    let mut out: Vec<MawWord> = Vec::new();
    for &c in alphabet.letters() {
        if !factors.contains(&[c][..]) {
            out.push(MawWord::new(vec![c]));
        }
    }

    // aub with u drawn from the factors (or empty); if aub is a MAW then u
    // is a factor, so this candidate pool is exhaustive.
    let mut candidates: Vec<&[u8]> = factors.iter().copied().filter(|u| u.len() + 2 <= ell).collect();
    if ell >= 2 {
        candidates.push(b"");
    }
    let mut word = Vec::with_capacity(ell);
    for u in candidates {
        for &a in alphabet.letters() {
            for &b in alphabet.letters() {
                word.clear();
                word.push(a);
                word.extend_from_slice(u);
                word.push(b);
                let au = &word[..word.len() - 1];
                let ub = &word[1..];
                if factors.contains(au) && factors.contains(ub) && !factors.contains(&word[..]) {
                    out.push(MawWord::new(word.clone()));
                }
            }
        }
    }
    MawSet::from_words(out)
}

/// Joins blocks with the separator and delegates to [`oracle_maws`].
pub fn oracle_concat(blocks: &[&Block], ell: usize, alphabet: &Alphabet) -> MawSet {
    let total: usize = blocks.iter().map(|b| b.len()).sum::<usize>() + blocks.len().saturating_sub(1);
    let mut text = Vec::with_capacity(total);
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            text.push(alphabet.separator());
        }
        text.extend_from_slice(b.data());
    }
    oracle_maws(&text, ell, alphabet)
}
