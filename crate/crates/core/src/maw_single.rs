//! MAWs of a single block, in constant-space tuple form.

use crate::automaton::enumerate_maws;
use crate::text::{Alphabet, Block, MawTupleRef};

/// `M^ell` of one block: the length-one part as absent letters, the rest
/// as `<i1, i2, alpha>` tuples into the block.
#[derive(Debug, Clone)]
pub struct SingleMawOutput {
    pub tuples: Vec<MawTupleRef>,
    pub absent_letters: Vec<u8>,
}

/// Computes `M^ell` of `block` in time linear in the block length for a
/// constant-sized alphabet. Tuples are emitted from one canonical
/// occurrence each, so the output carries no duplicates.
pub fn compute_maws(block: &Block, ell: usize, alphabet: &Alphabet) -> SingleMawOutput {
    compute_maws_counted(block, ell, alphabet).0
}

/// As [`compute_maws`], additionally reporting the automaton state count
/// for space instrumentation.
pub(crate) fn compute_maws_counted(
    block: &Block,
    ell: usize,
    alphabet: &Alphabet,
) -> (SingleMawOutput, usize) {
    assert!(ell >= 1, "ell must be >= 1");
    let mut tuples = Vec::new();
    let states = enumerate_maws(block.data(), alphabet.letters(), ell, |i1, i2, alpha| {
        tuples.push(MawTupleRef { block_id: block.id(), i1, i2, alpha });
    });
    let absent = absent_letters(block, alphabet);
    (SingleMawOutput { tuples, absent_letters: absent }, states)
}

/// Letters of the alphabet with no occurrence in the block.
pub fn absent_letters(block: &Block, alphabet: &Alphabet) -> Vec<u8> {
    let mut seen = [false; 256];
    for &b in block.data() {
        seen[b as usize] = true;
    }
    alphabet.letters().iter().copied().filter(|&c| !seen[c as usize]).collect()
}
