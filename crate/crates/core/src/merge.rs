//! The incremental step: merging the MAW set of the running concatenation
//! with a new block.
//!
//! Writing `prev` for `M^ell` of `y1#...#y_{N-1}` and `new` for `M^ell` of
//! the new block `yN`, a word of `prev ∪ new` survives into the merged set
//! exactly when it is a superword of some element of the other side
//! (self-superwording covers the intersection). Every other merged MAW is
//! a MAW of some pairwise concatenation `yi#yN` whose prefix is witnessed
//! by one reduced set and whose suffix by the other, subject to the
//! overlap bound `|u| >= max(|r1|, |r2|) - 1`.

use crate::automaton::enumerate_maws;
use crate::error::Result;
use crate::maw_single::{compute_maws_counted, SingleMawOutput};
use crate::pipeline::{BlockSource, SpaceMeter};
use crate::queries::{
    batch_weighted_ancestors, matching_statistics_with_loci, WeightedAncestorQuery,
};
use crate::suffix_tree::{NodeAggregates, SuffixTree};
use crate::text::{materialize, Alphabet, Block, MawSet, MawTupleRef, MawWord};
use std::collections::HashSet;

/// What is left of the two input sets after removing mutual superwords.
/// The previous side is explicit; the new side stays in tuple form, plus
/// any length-one MAWs of the new block that occur earlier (those cannot
/// be expressed as block slices).
#[derive(Debug, Clone, Default)]
pub struct ReducedSets {
    pub r_prev: Vec<MawWord>,
    pub r_new: Vec<MawTupleRef>,
    pub r_new_letters: Vec<u8>,
}

/// Outcome of the superword phase: the surviving (Case 1) elements and the
/// reduced sets feeding the pairwise (Case 2) phase.
#[derive(Debug, Clone)]
pub struct Case1Result {
    pub kept: MawSet,
    pub reduced: ReducedSets,
}

/// A MAW of a pairwise concatenation `x = yi#yN` in constant-space form:
/// the word is `a·x[i1..=i2]·b`, where `x[i1-1] = a` marks an actual
/// occurrence of `a·u`. The middle slice is empty when `i1 == i2 + 1`.
#[derive(Debug, Clone, Copy)]
pub struct PairMaw {
    pub a: u8,
    pub i1: u32,
    pub i2: u32,
    pub b: u8,
}

impl PairMaw {
    pub fn u_len(&self) -> usize {
        (self.i2 + 1 - self.i1) as usize
    }

    pub fn word(&self, x: &[u8]) -> MawWord {
        let mut w = Vec::with_capacity(self.u_len() + 2);
        w.push(self.a);
        w.extend_from_slice(&x[self.i1 as usize..(self.i2 as usize + 1)]);
        w.push(self.b);
        MawWord::new(w)
    }
}

/// Everything `merge_step` produces: the merged set plus the intermediate
/// structure the property suites inspect.
#[derive(Debug, Clone)]
pub struct MergeOutcome {
    pub merged: MawSet,
    pub case1: Case1Result,
    pub case2: Vec<MawWord>,
}

/// Marks the elements of the previous set that are superwords of some MAW
/// of the new block (including its absent letters). Returns one flag per
/// element of `prev`, aligned with `prev.words()`.
///
/// Tuple words are found in the generalized tree over the previous
/// elements and the block: the locus of `yN[i1..=i2]` comes from one
/// batched weighted ancestor query on the terminal of suffix `i1`, one
/// more letter is spelled, and the subtree below the resulting point is
/// swept for occurrences inside previous elements. MAW sets are
/// prefix-free, so the swept subtrees are pairwise disjoint.
pub fn mark_prev_superwords(
    prev: &MawSet,
    new_block: &Block,
    new_out: &SingleMawOutput,
) -> Result<Vec<bool>> {
    Ok(mark_prev_superwords_counted(prev, new_block, new_out)?.0)
}

pub(crate) fn mark_prev_superwords_counted(
    prev: &MawSet,
    new_block: &Block,
    new_out: &SingleMawOutput,
) -> Result<(Vec<bool>, usize)> {
    let mut marks = vec![false; prev.len()];
    if prev.is_empty() {
        return Ok((marks, 0));
    }

    // absent letters of the block are its length-one MAWs
    let mut absent = [false; 256];
    for &c in &new_out.absent_letters {
        absent[c as usize] = true;
    }
    for (i, w) in prev.words().iter().enumerate() {
        if w.bytes().iter().any(|&b| absent[b as usize]) {
            marks[i] = true;
        }
    }

    if new_out.tuples.is_empty() {
        return Ok((marks, 0));
    }

    let word_count = prev.len();
    let mut texts: Vec<&[u8]> = prev.words().iter().map(|w| w.bytes()).collect();
    texts.push(new_block.data());
    let t1 = SuffixTree::build_generalized(&texts)?;
    let block_start = t1.text_start(word_count);

    let queries: Vec<WeightedAncestorQuery> = new_out
        .tuples
        .iter()
        .map(|t| WeightedAncestorQuery {
            node: t1.leaf_for_suffix(block_start + t.i1 as usize),
            target_weight: t.i2 - t.i1 + 1,
        })
        .collect();
    let loci = batch_weighted_ancestors(&t1, &queries)?;

    let mut starts = Vec::new();
    for (tuple, locus) in new_out.tuples.iter().zip(&loci) {
        let Some(point) = t1.spell(*locus, tuple.alpha) else {
            continue; // the word occurs in no previous element
        };
        starts.clear();
        t1.subtree_leaf_starts(point.node, &mut starts);
        for &s in &starts {
            let t = t1.text_index_of(s as usize);
            debug_assert!(t < word_count, "a MAW of the block cannot occur in the block");
            if t < word_count {
                marks[t] = true;
            }
        }
    }
    Ok((marks, t1.node_count()))
}

/// Marks the new-block tuples whose word contains some element of the
/// previous set. Returns one flag per tuple, aligned with `tuples`, which
/// must be sorted by `(i1, i2)`.
///
/// Containment inside the block slice is decided from the matching
/// statistics of the block against the tree of the previous elements:
/// prefix-freeness means at most one element starts at each block
/// position, found as the unique end-of-element mark on the matched path.
/// Containment ending on the extension letter is decided by membership of
/// `z·alpha` for each suffix `z` of the slice.
pub fn mark_new_superwords(
    prev: &MawSet,
    new_block: &Block,
    tuples: &[MawTupleRef],
) -> Result<Vec<bool>> {
    Ok(mark_new_superwords_counted(prev, new_block, tuples)?.0)
}

pub(crate) fn mark_new_superwords_counted(
    prev: &MawSet,
    new_block: &Block,
    tuples: &[MawTupleRef],
) -> Result<(Vec<bool>, usize)> {
    debug_assert!(tuples.windows(2).all(|w| (w[0].i1, w[0].i2) <= (w[1].i1, w[1].i2)));
    let mut marks = vec![false; tuples.len()];
    if prev.is_empty() || tuples.is_empty() {
        return Ok((marks, 0));
    }

    let texts: Vec<&[u8]> = prev.words().iter().map(|w| w.bytes()).collect();
    let t2 = SuffixTree::build_generalized(&texts)?;
    let full_len = element_starts(new_block.data(), prev, &t2);

    let mut prev_letter = [false; 256];
    let mut long_words: HashSet<&[u8]> = HashSet::new();
    for w in prev.words() {
        if w.len() == 1 {
            prev_letter[w.bytes()[0] as usize] = true;
        } else {
            long_words.insert(w.bytes());
        }
    }

    let data = new_block.data();
    let mut key = Vec::new();
    for (t_idx, t) in tuples.iter().enumerate() {
        let (i1, i2) = (t.i1 as usize, t.i2 as usize);
        // an element inside the slice y[i1..=i2]
        let mut hit = (i1..=i2).any(|p| {
            let l = full_len[p] as usize;
            l > 0 && p + l - 1 <= i2
        });
        // or an element ending on alpha: z·alpha for a suffix z of the slice
        if !hit && prev_letter[t.alpha as usize] {
            hit = true;
        }
        if !hit {
            for m in 1..=(i2 - i1 + 1) {
                key.clear();
                key.extend_from_slice(&data[i2 + 1 - m..=i2]);
                key.push(t.alpha);
                if long_words.contains(key.as_slice()) {
                    hit = true;
                    break;
                }
            }
        }
        marks[t_idx] = hit;
    }
    Ok((marks, t2.node_count()))
}

/// For each block position, the length of the unique previous-set element
/// starting there (0 if none), derived from matching statistics against
/// the generalized tree of the elements.
fn element_starts(data: &[u8], prev: &MawSet, t2: &SuffixTree) -> Vec<u32> {
    // end-of-element marks: the point at depth |w| on the path of each
    // word's whole-text suffix
    let mut elem_mark = vec![0u32; t2.node_count()];
    for j in 0..prev.len() {
        let leaf = t2.leaf_for_suffix(t2.text_start(j));
        let n = &t2.nodes[leaf as usize];
        let word_len = prev.words()[j].len() as u32;
        if n.end - n.start == 1 {
            // terminator-only edge: the parent is the end point
            let p = n.parent;
            debug_assert_eq!(t2.depth(p), word_len);
            elem_mark[p as usize] = word_len;
        } else {
            debug_assert_eq!(t2.depth(leaf), word_len + 1);
            elem_mark[leaf as usize] = word_len;
        }
    }
    // antifactorial sets put at most one mark on any root path
    let mut inherited = vec![0u32; t2.node_count()];
    let mut order = t2.post_order();
    order.reverse();
    for v in order {
        if v == t2.root() {
            continue;
        }
        let own = elem_mark[v as usize];
        let up = inherited[t2.parent(v) as usize];
        debug_assert!(own == 0 || up == 0, "nested elements in an antifactorial set");
        inherited[v as usize] = if own != 0 { own } else { up };
    }

    let (ms, loci) = matching_statistics_with_loci(data, t2);
    let mut full_len = vec![0u32; data.len()];
    for (p, (entry, locus)) in ms.entries.iter().zip(&loci).enumerate() {
        let ml = inherited[locus.node as usize];
        if ml > 0 && ml <= entry.0 {
            full_len[p] = ml;
        }
    }
    full_len
}

/// Applies the superword marks: marked elements of both sides survive into
/// the merged set, unmarked ones form the reduced sets. Length-one
/// elements never enter `kept` here; the merged set's length-one part is
/// decided from the letters seen so far by the caller.
pub fn build_case1(
    prev: &MawSet,
    new_block: &Block,
    new_out: &SingleMawOutput,
    prev_marks: &[bool],
    new_marks: &[bool],
) -> Result<Case1Result> {
    let mut kept: Vec<(MawWord, Option<MawTupleRef>)> = Vec::new();
    let mut r_prev = Vec::new();
    for (i, w) in prev.words().iter().enumerate() {
        if prev_marks[i] {
            if w.len() >= 2 {
                kept.push((w.clone(), prev.origins()[i]));
            }
        } else {
            r_prev.push(w.clone());
        }
    }
    let mut r_new = Vec::new();
    for (t, &marked) in new_out.tuples.iter().zip(new_marks) {
        if marked {
            kept.push((materialize(t, new_block)?, Some(*t)));
        } else {
            r_new.push(*t);
        }
    }
    let r_new_letters: Vec<u8> = new_out
        .absent_letters
        .iter()
        .copied()
        .filter(|&c| !prev.contains(&[c]))
        .collect();
    Ok(Case1Result {
        kept: MawSet::from_entries(kept),
        reduced: ReducedSets { r_prev, r_new, r_new_letters },
    })
}

/// All MAWs of the pairwise concatenation `x = yi#yN` with length in
/// `[2, ell]`, excluding words that touch the separator. Returns the list
/// and the automaton state count for instrumentation.
pub fn compute_pair_maws(
    x: &[u8],
    sep_pos: usize,
    ell: usize,
    alphabet: &Alphabet,
) -> (Vec<PairMaw>, usize) {
    let mut symbols = alphabet.letters().to_vec();
    symbols.push(alphabet.separator());
    let sep = alphabet.separator();
    let mut out = Vec::new();
    let states = enumerate_maws(x, &symbols, ell, |i1, i2, b| {
        if b == sep || (i1 as usize <= sep_pos && sep_pos <= i2 as usize) {
            return;
        }
        out.push(PairMaw { a: x[i1 as usize], i1: i1 + 1, i2, b });
    });
    (out, states)
}

/// Per-position occurrence structure of a reduced set inside one side of
/// the pair: the length of the unique element starting (resp. ending) at
/// each position, 0 when none. Uniqueness is antifactoriality.
#[derive(Debug, Clone)]
pub struct OccurrenceIndex {
    pub start_len: Vec<u32>,
    pub end_len: Vec<u32>,
}

impl OccurrenceIndex {
    pub fn new(side_len: usize) -> OccurrenceIndex {
        OccurrenceIndex { start_len: vec![0; side_len], end_len: vec![0; side_len] }
    }

    pub fn record(&mut self, start: usize, len: usize) {
        debug_assert!(self.start_len[start] == 0 || self.start_len[start] == len as u32);
        self.start_len[start] = len as u32;
        self.end_len[start + len - 1] = len as u32;
    }
}

/// The Case-2 filter. For each pair-MAW `a·u·b` of `x = yi#yN`, decides
/// from the subtree position aggregates which sides `au` and `ub` occur
/// on, and keeps the word when an element of the reduced new set starts
/// where `au` starts in `yi` while an element of the reduced previous set
/// ends where `ub` ends in `yN` — or the converse orientation — subject to
/// `|u| >= max(|r1|, |r2|) - 1`. Loci of `au` and `ub` come from one batch
/// of weighted ancestor queries. Returns indices into `pair_maws`.
pub fn classify_and_filter_case2(
    sep_pos: usize,
    pair_maws: &[PairMaw],
    r_new_occs_in_yi: &OccurrenceIndex,
    r_prev_occs_in_yn: &OccurrenceIndex,
    tree_x: &SuffixTree,
    aggregates: &NodeAggregates,
) -> Result<Vec<u32>> {
    // batched loci of au and of u (ub is one spelled letter below u)
    let mut queries = Vec::with_capacity(2 * pair_maws.len());
    for pm in pair_maws {
        let au_start = pm.i1 as usize - 1;
        queries.push(WeightedAncestorQuery {
            node: tree_x.leaf_for_suffix(au_start),
            target_weight: pm.u_len() as u32 + 1,
        });
        if pm.u_len() > 0 {
            queries.push(WeightedAncestorQuery {
                node: tree_x.leaf_for_suffix(pm.i1 as usize),
                target_weight: pm.u_len() as u32,
            });
        }
    }
    let loci = batch_weighted_ancestors(tree_x, &queries)?;

    let mut accepted = Vec::new();
    let mut qi = 0usize;
    for (idx, pm) in pair_maws.iter().enumerate() {
        let au_locus = loci[qi];
        qi += 1;
        let ub_locus = if pm.u_len() > 0 {
            let u_locus = loci[qi];
            qi += 1;
            tree_x.spell(u_locus, pm.b)
        } else {
            tree_x.spell(tree_x.root_locus(), pm.b)
        };
        let Some(ub_locus) = ub_locus else {
            debug_assert!(false, "ub is a factor of x by MAW minimality");
            continue;
        };

        let side_len = pm.u_len() + 1; // |au| = |ub|
        let max_witness = pm.u_len() as u32 + 1; // |u| >= |r| - 1
        let au_min = aggregates.min_start[au_locus.node as usize] as usize;
        let au_max = aggregates.max_start[au_locus.node as usize] as usize;
        let ub_min = aggregates.min_start[ub_locus.node as usize] as usize;
        let ub_max = aggregates.max_start[ub_locus.node as usize] as usize;

        // orientation 1: au occurs in yi, ub occurs in yN
        let mut keep = false;
        if au_min < sep_pos && ub_max > sep_pos {
            let g = au_min;
            let ub_end_in_yn = (ub_max - sep_pos - 1) + side_len - 1;
            let l1 = r_new_occs_in_yi.start_len[g];
            let l2 = r_prev_occs_in_yn.end_len[ub_end_in_yn];
            if l1 >= 1 && l1 <= max_witness && l2 >= 1 && l2 <= max_witness {
                keep = true;
            }
        }
        // orientation 2: au occurs in yN, ub occurs in yi
        if !keep && au_max > sep_pos && ub_min < sep_pos {
            let g = au_max - sep_pos - 1;
            let ub_end_in_yi = ub_min + side_len - 1;
            debug_assert!(ub_end_in_yi < sep_pos);
            let l1 = r_prev_occs_in_yn.start_len[g];
            let l2 = r_new_occs_in_yi.end_len[ub_end_in_yi];
            if l1 >= 1 && l1 <= max_witness && l2 >= 1 && l2 <= max_witness {
                keep = true;
            }
        }
        if keep {
            accepted.push(idx as u32);
        }
    }
    Ok(accepted)
}

/// One incremental step: from `M^ell` of `y1#...#y_{N-1}` and the new
/// block `yN` (id `N >= 2`), computes `M^ell` of `y1#...#yN`. Earlier
/// blocks are re-read one at a time from `earlier`; at no point are two of
/// them resident together. `seen_letters` are the letters occurring in
/// blocks `1..N-1`.
pub fn merge_step(
    prev: &MawSet,
    new_block: &Block,
    earlier: &mut dyn BlockSource,
    ell: usize,
    seen_letters: &[bool; 256],
    alphabet: &Alphabet,
    meter: &mut SpaceMeter,
) -> Result<MergeOutcome> {
    assert!(new_block.id() >= 2, "step 1 is compute_maws, not a merge");
    assert!(ell >= 1);
    let n_id = new_block.id();

    // M^ell of the new block, tuples sorted for the superword phase
    let (mut new_out, auto_states) = compute_maws_counted(new_block, ell, alphabet);
    meter.note_transient_nodes(auto_states);
    new_out.tuples.sort_unstable_by_key(|t| (t.i1, t.i2));
    meter.add_elements(new_out.tuples.len());

    // Case 1: mutual superword marking
    let (prev_marks, t1_nodes) = mark_prev_superwords_counted(prev, new_block, &new_out)?;
    meter.note_transient_nodes(t1_nodes);
    let (new_marks, t2_nodes) = mark_new_superwords_counted(prev, new_block, &new_out.tuples)?;
    meter.note_transient_nodes(t2_nodes);
    let case1 = build_case1(prev, new_block, &new_out, &prev_marks, &new_marks)?;

    let mut merged: Vec<(MawWord, Option<MawTupleRef>)> = Vec::new();
    for (w, o) in case1.kept.words().iter().zip(case1.kept.origins()) {
        merged.push((w.clone(), *o));
    }

    // Case 2 preparation: occurrences of the reduced previous set in yN
    let tree_n = SuffixTree::build(new_block.data())?;
    meter.add_nodes(tree_n.node_count());
    let r_prev_slices: Vec<&[u8]> = case1.reduced.r_prev.iter().map(|w| w.bytes()).collect();
    let mut r_prev_occs = OccurrenceIndex::new(new_block.len());
    for (w, occs) in
        case1.reduced.r_prev.iter().zip(tree_n.locate_prefix_free_patterns(&r_prev_slices))
    {
        for p in occs {
            r_prev_occs.record(p as usize, w.len());
        }
    }

    // materialized reduced new set (words stay short: length <= ell)
    let mut r_new_words: Vec<MawWord> =
        Vec::with_capacity(case1.reduced.r_new.len() + case1.reduced.r_new_letters.len());
    for t in &case1.reduced.r_new {
        r_new_words.push(materialize(t, new_block)?);
    }
    for &c in &case1.reduced.r_new_letters {
        r_new_words.push(MawWord::new(vec![c]));
    }
    meter.add_elements(r_new_words.len());

    let prev_words_hash: HashSet<&[u8]> = prev.words().iter().map(|w| w.bytes()).collect();
    let sep = alphabet.separator();

    let mut case2_entries: Vec<(MawWord, Option<MawTupleRef>)> = Vec::new();
    for i in 1..n_id {
        let y_i = earlier.read_block(i as usize)?;
        meter.add_blocks(y_i.len());
        let sep_pos = y_i.len();
        let mut x = Vec::with_capacity(y_i.len() + 1 + new_block.len());
        x.extend_from_slice(y_i.data());
        x.push(sep);
        x.extend_from_slice(new_block.data());
        meter.add_blocks(x.len());

        let (pairs, pair_states) = compute_pair_maws(&x, sep_pos, ell, alphabet);
        meter.note_transient_nodes(pair_states);
        meter.add_elements(pairs.len());
        let pairs_total = pairs.len();

        // Case 2 is defined by exclusion: drop pair-MAWs already in
        // prev ∪ M(yN); membership in M(yN) is three factor walks on the
        // tree of yN
        let mut word_buf = Vec::with_capacity(ell + 1);
        let candidates: Vec<PairMaw> = pairs
            .into_iter()
            .filter(|pm| {
                word_buf.clear();
                word_buf.push(pm.a);
                word_buf.extend_from_slice(&x[pm.i1 as usize..(pm.i2 as usize + 1)]);
                word_buf.push(pm.b);
                if prev_words_hash.contains(word_buf.as_slice()) {
                    return false;
                }
                let au = &word_buf[..word_buf.len() - 1];
                let ub = &word_buf[1..];
                let in_new = tree_n.locus_of_word(&word_buf).is_none()
                    && tree_n.locus_of_word(au).is_some()
                    && tree_n.locus_of_word(ub).is_some();
                !in_new
            })
            .collect();

        let tree_x = SuffixTree::build(&x)?;
        meter.add_nodes(tree_x.node_count());
        let aggregates = tree_x.compute_aggregates();

        let r_new_slices: Vec<&[u8]> = r_new_words.iter().map(|w| w.bytes()).collect();
        let mut r_new_occs = OccurrenceIndex::new(sep_pos);
        for (w, occs) in
            r_new_words.iter().zip(tree_x.locate_prefix_free_patterns(&r_new_slices))
        {
            for p in occs {
                if (p as usize) < sep_pos {
                    r_new_occs.record(p as usize, w.len());
                }
            }
        }

        let accepted = classify_and_filter_case2(
            sep_pos,
            &candidates,
            &r_new_occs,
            &r_prev_occs,
            &tree_x,
            &aggregates,
        )?;
        for idx in accepted {
            let pm = &candidates[idx as usize];
            let word = pm.word(&x);
            // the au occurrence lies entirely on one side of the
            // separator; reference the word against that block
            let au_start = pm.i1 as usize - 1;
            let origin = if (pm.i2 as usize) < sep_pos {
                MawTupleRef { block_id: y_i.id(), i1: au_start as u32, i2: pm.i2, alpha: pm.b }
            } else {
                debug_assert!(au_start > sep_pos);
                MawTupleRef {
                    block_id: n_id,
                    i1: (au_start - sep_pos - 1) as u32,
                    i2: pm.i2 - sep_pos as u32 - 1,
                    alpha: pm.b,
                }
            };
            case2_entries.push((word, Some(origin)));
        }

        meter.sub_nodes(tree_x.node_count());
        meter.sub_elements(pairs_total);
        meter.sub_blocks(x.len());
        meter.sub_blocks(y_i.len());
    }
    meter.sub_nodes(tree_n.node_count());
    meter.sub_elements(r_new_words.len());
    meter.sub_elements(new_out.tuples.len());

    // deduplicate Case-2 words found via different earlier blocks
    case2_entries.sort_by(|a, b| a.0.cmp(&b.0));
    case2_entries.dedup_by(|a, b| a.0 == b.0);
    let case2: Vec<MawWord> = case2_entries.iter().map(|(w, _)| w.clone()).collect();
    merged.extend(case2_entries);

    // length-one MAWs of the concatenation: letters absent from every
    // block so far
    let mut seen = *seen_letters;
    for &b in new_block.data() {
        seen[b as usize] = true;
    }
    for &c in alphabet.letters() {
        if !seen[c as usize] {
            merged.push((MawWord::new(vec![c]), None));
        }
    }

    Ok(MergeOutcome { merged: MawSet::from_entries(merged), case1, case2 })
}
