//! Input data model: alphabets, blocks, corpora, and MAW representations.

use crate::error::{AntidictError, Result};
use std::cmp::Ordering;
use std::fmt;

/// A finite ordered set of letters plus a separator byte used to join
/// blocks. The separator is never part of any emitted word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<u8>,
    separator: u8,
    // rank+1 per byte, 0 = not a letter
    lut: [u8; 256],
}

impl Alphabet {
    /// Builds an alphabet from distinct letters and a separator byte.
    /// Letters are stored in increasing byte order; word comparisons
    /// throughout the crate use that order.
    pub fn new(letters: &[u8], separator: u8) -> Result<Alphabet> {
        if letters.is_empty() {
            return Err(AntidictError::BadAlphabet("no letters".into()));
        }
        if letters.len() > 255 {
            return Err(AntidictError::BadAlphabet("more than 255 letters".into()));
        }
        let mut sorted = letters.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != letters.len() {
            return Err(AntidictError::BadAlphabet("duplicate letters".into()));
        }
        if sorted.contains(&separator) {
            return Err(AntidictError::BadAlphabet(format!(
                "separator 0x{separator:02x} is also a letter"
            )));
        }
        let mut lut = [0u8; 256];
        for (i, &b) in sorted.iter().enumerate() {
            lut[b as usize] = (i + 1) as u8;
        }
        Ok(Alphabet { letters: sorted, separator, lut })
    }

    /// `{A, C, G, T}` with a NUL separator.
    pub fn dna() -> Alphabet {
        Alphabet::new(b"ACGT", 0x00).expect("static alphabet")
    }

    /// `{0, 1}` with `#` as separator.
    pub fn binary() -> Alphabet {
        Alphabet::new(b"01", b'#').expect("static alphabet")
    }

    /// Custom letters with `#` as separator, falling back to NUL when `#`
    /// is itself a letter.
    pub fn custom(letters: &[u8]) -> Result<Alphabet> {
        let sep = if letters.contains(&b'#') { 0x00 } else { b'#' };
        Alphabet::new(letters, sep)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn separator(&self) -> u8 {
        self.separator
    }

    pub fn contains(&self, byte: u8) -> bool {
        self.lut[byte as usize] != 0
    }

    /// Rank of a letter in alphabet order, if it is a letter.
    pub fn rank(&self, byte: u8) -> Option<usize> {
        match self.lut[byte as usize] {
            0 => None,
            r => Some(r as usize - 1),
        }
    }
}

/// One input document. Blocks are identified by their 1-based ordinal in
/// the corpus and hold letters of a single alphabet; the separator byte
/// never appears inside a block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    id: u32,
    data: Vec<u8>,
}

impl Block {
    /// Validates that `data` is non-empty and entirely made of letters.
    pub fn new(id: u32, data: Vec<u8>, alphabet: &Alphabet) -> Result<Block> {
        if data.is_empty() {
            return Err(AntidictError::EmptyInput);
        }
        for (i, &b) in data.iter().enumerate() {
            if !alphabet.contains(b) {
                return Err(AntidictError::ByteOutsideAlphabet { position: i, byte: b });
            }
        }
        Ok(Block { id, data })
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

/// An ordered collection of blocks sharing one alphabet.
#[derive(Debug, Clone)]
pub struct Corpus {
    alphabet: Alphabet,
    blocks: Vec<Block>,
}

impl Corpus {
    /// Blocks must already carry ids `1..=k` in order.
    pub fn new(alphabet: Alphabet, blocks: Vec<Block>) -> Result<Corpus> {
        if blocks.is_empty() {
            return Err(AntidictError::EmptyInput);
        }
        for (i, b) in blocks.iter().enumerate() {
            debug_assert_eq!(b.id() as usize, i + 1, "block ids must be 1..=k in order");
        }
        Ok(Corpus { alphabet, blocks })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Reads a raw byte stream into a single block: ASCII whitespace is
/// dropped, everything else must be a letter. The reported error position
/// refers to the original stream.
pub fn ingest_raw(bytes: &[u8], alphabet: &Alphabet, id: u32) -> Result<Block> {
    let mut data = Vec::with_capacity(bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        if b.is_ascii_whitespace() {
            continue;
        }
        if !alphabet.contains(b) {
            return Err(AntidictError::ByteOutsideAlphabet { position: i, byte: b });
        }
        data.push(b);
    }
    if data.is_empty() {
        return Err(AntidictError::EmptyInput);
    }
    Ok(Block { id, data })
}

/// Parses FASTA input into one block per record, in file order. Sequence
/// lines are concatenated, uppercased, and stripped of whitespace.
pub fn ingest_fasta(bytes: &[u8], alphabet: &Alphabet) -> Result<Corpus> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut current: Option<Vec<u8>> = None;
    let mut pos = 0usize;
    for line in bytes.split(|&b| b == b'\n') {
        let line_start = pos;
        pos += line.len() + 1;
        let trimmed: &[u8] = {
            let mut l = line;
            while let Some((&last, rest)) = l.split_last() {
                if last.is_ascii_whitespace() {
                    l = rest;
                } else {
                    break;
                }
            }
            l
        };
        if trimmed.is_empty() {
            continue;
        }
        if trimmed[0] == b'>' {
            if let Some(seq) = current.take() {
                push_fasta_record(&mut blocks, seq)?;
            }
            current = Some(Vec::new());
            continue;
        }
        let seq = current
            .as_mut()
            .ok_or_else(|| AntidictError::MalformedFasta("sequence data before first header".into()))?;
        for (j, &b) in trimmed.iter().enumerate() {
            if b.is_ascii_whitespace() {
                continue;
            }
            let up = b.to_ascii_uppercase();
            if !alphabet.contains(up) {
                return Err(AntidictError::ByteOutsideAlphabet { position: line_start + j, byte: b });
            }
            seq.push(up);
        }
    }
    match current {
        Some(seq) => push_fasta_record(&mut blocks, seq)?,
        None => return Err(AntidictError::MalformedFasta("no records".into())),
    }
    Corpus::new(alphabet.clone(), blocks)
}

fn push_fasta_record(blocks: &mut Vec<Block>, seq: Vec<u8>) -> Result<()> {
    if seq.is_empty() {
        return Err(AntidictError::MalformedFasta(format!(
            "record {} has no sequence",
            blocks.len() + 1
        )));
    }
    let id = blocks.len() as u32 + 1;
    blocks.push(Block { id, data: seq });
    Ok(())
}

/// Splits a block into `k` contiguous pieces whose lengths differ by at
/// most one and concatenate back to the original data. The first
/// `len % k` pieces take the extra byte.
pub fn split_into_blocks(block: &Block, k: usize, alphabet: &Alphabet) -> Result<Corpus> {
    let n = block.len();
    if k == 0 || k > n {
        return Err(AntidictError::BadBlockCount { requested: k, data_len: n });
    }
    let base = n / k;
    let extra = n % k;
    let mut blocks = Vec::with_capacity(k);
    let mut off = 0usize;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        blocks.push(Block { id: i as u32 + 1, data: block.data[off..off + len].to_vec() });
        off += len;
    }
    debug_assert_eq!(off, n);
    Corpus::new(alphabet.clone(), blocks)
}

/// A MAW stored explicitly. Words of length one are the letters absent
/// from the text; longer words have the shape `a·u·b` with `au` and `ub`
/// occurring and `aub` absent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MawWord {
    bytes: Box<[u8]>,
}

impl MawWord {
    pub fn new(bytes: impl Into<Box<[u8]>>) -> MawWord {
        let bytes = bytes.into();
        debug_assert!(!bytes.is_empty());
        MawWord { bytes }
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Debug for MawWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", String::from_utf8_lossy(&self.bytes))
    }
}

impl Ord for MawWord {
    /// Canonical order: by length first, then lexicographically. Letters
    /// are stored in increasing byte order, so byte comparison is
    /// alphabet-order comparison.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.bytes.cmp(&other.bytes))
    }
}

impl PartialOrd for MawWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&[u8]> for MawWord {
    fn from(b: &[u8]) -> MawWord {
        MawWord::new(b.to_vec())
    }
}

/// Constant-space reference to a MAW of length at least two: the word is
/// `block[i1..=i2]` followed by `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MawTupleRef {
    pub block_id: u32,
    pub i1: u32,
    pub i2: u32,
    pub alpha: u8,
}

impl MawTupleRef {
    /// Length of the denoted word.
    pub fn word_len(&self) -> usize {
        (self.i2 - self.i1) as usize + 2
    }
}

/// Expands a tuple reference against its block.
pub fn materialize(r: &MawTupleRef, block: &Block) -> Result<MawWord> {
    if r.block_id != block.id() {
        return Err(AntidictError::BlockIdMismatch { expected: r.block_id, got: block.id() });
    }
    let (i1, i2) = (r.i1 as usize, r.i2 as usize);
    if i1 > i2 || i2 >= block.len() {
        return Err(AntidictError::IndexOutOfRange { i1, i2, len: block.len() });
    }
    let mut bytes = Vec::with_capacity(i2 - i1 + 2);
    bytes.extend_from_slice(&block.data()[i1..=i2]);
    bytes.push(r.alpha);
    Ok(MawWord::new(bytes))
}

/// A deduplicated antifactorial set of MAWs, kept in canonical
/// `(length, lexicographic)` order. `total_length` is the sum of element
/// lengths, the size measure the space and time bounds are stated in.
#[derive(Debug, Clone, Default)]
pub struct MawSet {
    words: Vec<MawWord>,
    origins: Vec<Option<MawTupleRef>>,
    total_length: usize,
}

impl MawSet {
    pub fn empty() -> MawSet {
        MawSet::default()
    }

    /// Builds a set from words, sorting and deduplicating. When duplicates
    /// collide the first origin wins.
    pub fn from_entries(entries: Vec<(MawWord, Option<MawTupleRef>)>) -> MawSet {
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        entries.dedup_by(|a, b| a.0 == b.0);
        let total_length = entries.iter().map(|(w, _)| w.len()).sum();
        let (words, origins) = entries.into_iter().unzip();
        MawSet { words, origins, total_length }
    }

    pub fn from_words(words: Vec<MawWord>) -> MawSet {
        MawSet::from_entries(words.into_iter().map(|w| (w, None)).collect())
    }

    /// Elements in canonical order.
    pub fn words(&self) -> &[MawWord] {
        &self.words
    }

    /// Per-element constant-space reference into an input block, when one
    /// is known. Aligned with `words()`. Length-one elements never occur
    /// in any block, so they carry no reference.
    pub fn origins(&self) -> &[Option<MawTupleRef>] {
        &self.origins
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn total_length(&self) -> usize {
        self.total_length
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.words
            .binary_search_by(|w| {
                w.len().cmp(&word.len()).then_with(|| w.bytes().cmp(word))
            })
            .is_ok()
    }

    /// Quadratic antifactoriality check, for tests and debugging.
    pub fn is_antifactorial(&self) -> bool {
        for (i, a) in self.words.iter().enumerate() {
            for (j, b) in self.words.iter().enumerate() {
                if i != j && is_factor(a.bytes(), b.bytes()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Returns the elements of a set in canonical `(length, lexicographic)`
/// order. Sets already store elements that way; this is the stable public
/// accessor used for emission.
pub fn canonical_order(set: &MawSet) -> Vec<MawWord> {
    set.words().to_vec()
}

pub(crate) fn is_factor(needle: &[u8], hay: &[u8]) -> bool {
    if needle.len() > hay.len() {
        return false;
    }
    hay.windows(needle.len()).any(|w| w == needle)
}
