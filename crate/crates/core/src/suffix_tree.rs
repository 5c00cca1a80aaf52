//! Compact suffix trees over one or many byte texts.
//!
//! Construction is the online left-to-right algorithm with suffix links,
//! processing each text in turn against the growing tree. Texts are mapped
//! into a widened symbol space: content bytes keep their value and the
//! terminator of the j-th text becomes the symbol `SENTINEL_BASE + j`, so
//! terminators never match each other across texts and the number of texts
//! is not limited by the byte space. Terminal nodes are recovered as
//! `(text index, offset)` from their global suffix start.
//!
//! Each node keeps two child lists: one for edges starting with a content
//! byte (walked on lookups, at most alphabet-sized) and one for edges
//! starting with a terminator (never walked on lookups; a terminator can
//! only be found as the most recent insertion, which sits at the head).

use crate::error::{AntidictError, Result};

pub const NIL: u32 = u32::MAX;
/// First symbol value reserved for text terminators.
pub const SENTINEL_BASE: u32 = 256;

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub(crate) parent: u32,
    pub(crate) start: u32,
    pub(crate) end: u32,
    pub(crate) slink: u32,
    pub(crate) depth: u32,
    pub(crate) child: u32,  // head of byte-children list
    pub(crate) schild: u32, // head of sentinel-children list
    pub(crate) sib: u32,
}

/// An explicit-or-implicit tree position: the point at word-depth `depth`
/// on the edge into `node`, with `D(parent(node)) < depth <= D(node)`.
/// The root locus is `(root, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locus {
    pub node: u32,
    pub depth: u32,
}

/// Per-node minimum and maximum starting positions (global suffix starts)
/// of the occurrences of the node's subword.
#[derive(Debug, Clone)]
pub struct NodeAggregates {
    pub min_start: Vec<u32>,
    pub max_start: Vec<u32>,
}

pub struct SuffixTree {
    pub(crate) syms: Vec<u32>,
    pub(crate) nodes: Vec<Node>,
    /// End offset (exclusive, terminator included) of each text.
    text_bounds: Vec<u32>,
    /// Leaf node per global suffix start.
    leaf_at: Vec<u32>,
    /// Any suffix start in the node's subtree; witness occurrences.
    pub(crate) sample_start: Vec<u32>,
}

impl SuffixTree {
    /// Suffix tree of a single text with one terminator appended. The
    /// terminator lives outside the byte space, so it cannot collide with
    /// content.
    pub fn build(text: &[u8]) -> Result<SuffixTree> {
        SuffixTree::build_generalized(&[text])
    }

    /// Generalized suffix tree over several texts, each closed by its own
    /// terminator symbol.
    pub fn build_generalized(texts: &[&[u8]]) -> Result<SuffixTree> {
        if texts.is_empty() || texts.iter().any(|t| t.is_empty()) {
            return Err(AntidictError::EmptyInput);
        }
        let total: usize = texts.iter().map(|t| t.len() + 1).sum();
        let mut syms = Vec::with_capacity(total);
        let mut text_bounds = Vec::with_capacity(texts.len());
        for (j, t) in texts.iter().enumerate() {
            syms.extend(t.iter().map(|&b| b as u32));
            syms.push(SENTINEL_BASE + j as u32);
            text_bounds.push(syms.len() as u32);
        }

        let mut tree = SuffixTree {
            syms,
            nodes: Vec::with_capacity(2 * total),
            text_bounds,
            leaf_at: Vec::new(),
            sample_start: Vec::new(),
        };
        tree.nodes.push(Node {
            parent: NIL,
            start: 0,
            end: 0,
            slink: NIL,
            depth: 0,
            child: NIL,
            schild: NIL,
            sib: NIL,
        });

        let mut t_start = 0usize;
        for &bound in &tree.text_bounds.clone() {
            let t_end = bound as usize;
            let mut s = 0u32;
            let mut k = t_start;
            for i in t_start..t_end {
                let (s2, k2) = tree.update(s, k, i, t_end);
                let (s3, k3) = tree.canonize(s2, k2, i as isize);
                s = s3;
                k = k3;
            }
            t_start = t_end;
        }

        tree.finalize();
        Ok(tree)
    }

    // One extension phase: make sure every pending suffix extended by
    // syms[i] is represented.
    fn update(&mut self, mut s: u32, mut k: usize, i: usize, t_end: usize) -> (u32, usize) {
        let t = self.syms[i];
        let mut oldr = 0u32;
        let (mut endpoint, mut r) = self.test_and_split(s, k, i as isize - 1, t);
        while !endpoint {
            // new leaf for the pending suffix; edge runs to the end of the
            // current text, which is fully known
            let leaf = self.nodes.len() as u32;
            let depth = self.nodes[r as usize].depth + (t_end - i) as u32;
            self.nodes.push(Node {
                parent: r,
                start: i as u32,
                end: t_end as u32,
                slink: NIL,
                depth,
                child: NIL,
                schild: NIL,
                sib: NIL,
            });
            self.attach(r, leaf, t);
            if oldr != 0 {
                self.nodes[oldr as usize].slink = r;
            }
            oldr = r;
            if s == 0 {
                k += 1;
            } else {
                s = self.nodes[s as usize].slink;
                debug_assert_ne!(s, NIL);
            }
            let (s2, k2) = self.canonize(s, k, i as isize - 1);
            s = s2;
            k = k2;
            let (e2, r2) = self.test_and_split(s, k, i as isize - 1, t);
            endpoint = e2;
            r = r2;
        }
        if oldr != 0 {
            self.nodes[oldr as usize].slink = s;
        }
        (s, k)
    }

    // Tests whether the point (s, window syms[k..=p]) already continues
    // with symbol t; if the point is mid-edge and does not, splits the
    // edge. Returns (endpoint, node owning the point).
    fn test_and_split(&mut self, s: u32, k: usize, p: isize, t: u32) -> (bool, u32) {
        if (k as isize) <= p {
            let first = self.syms[k];
            let child = self.child_of(s, first);
            debug_assert_ne!(child, NIL, "window must be present under the active node");
            let wlen = (p - k as isize + 1) as u32;
            let split_pos = self.nodes[child as usize].start + wlen;
            if self.syms[split_pos as usize] == t {
                return (true, s);
            }
            // split: s --[start..split_pos)--> r --[split_pos..end)--> child
            let r = self.nodes.len() as u32;
            let cstart = self.nodes[child as usize].start;
            let depth = self.nodes[s as usize].depth + wlen;
            self.nodes.push(Node {
                parent: s,
                start: cstart,
                end: split_pos,
                slink: NIL,
                depth,
                child: NIL,
                schild: NIL,
                sib: NIL,
            });
            self.replace_child(s, child, r, first);
            self.nodes[child as usize].start = split_pos;
            self.nodes[child as usize].parent = r;
            let key = self.syms[split_pos as usize];
            self.attach(r, child, key);
            (false, r)
        } else if self.child_of(s, t) != NIL {
            (true, s)
        } else {
            (false, s)
        }
    }

    // Walks the window down from s so that it fits strictly inside one edge.
    fn canonize(&self, mut s: u32, mut k: usize, p: isize) -> (u32, usize) {
        while (k as isize) <= p {
            let child = self.child_of(s, self.syms[k]);
            debug_assert_ne!(child, NIL);
            let elen = (self.nodes[child as usize].end - self.nodes[child as usize].start) as usize;
            if elen as isize <= p - k as isize + 1 {
                k += elen;
                s = child;
            } else {
                break;
            }
        }
        (s, k)
    }

    #[inline]
    pub(crate) fn child_of(&self, s: u32, sym: u32) -> u32 {
        if sym < SENTINEL_BASE {
            let mut c = self.nodes[s as usize].child;
            while c != NIL {
                if self.syms[self.nodes[c as usize].start as usize] == sym {
                    return c;
                }
                c = self.nodes[c as usize].sib;
            }
            NIL
        } else {
            // a terminator can only match the most recent insertion
            let head = self.nodes[s as usize].schild;
            if head != NIL && self.syms[self.nodes[head as usize].start as usize] == sym {
                head
            } else {
                NIL
            }
        }
    }

    fn attach(&mut self, parent: u32, node: u32, key: u32) {
        if key < SENTINEL_BASE {
            self.nodes[node as usize].sib = self.nodes[parent as usize].child;
            self.nodes[parent as usize].child = node;
        } else {
            self.nodes[node as usize].sib = self.nodes[parent as usize].schild;
            self.nodes[parent as usize].schild = node;
        }
    }

    fn replace_child(&mut self, parent: u32, old: u32, new: u32, key: u32) {
        debug_assert!(key < SENTINEL_BASE, "terminator edges never split");
        self.nodes[new as usize].sib = self.nodes[old as usize].sib;
        self.nodes[old as usize].sib = NIL;
        let head = self.nodes[parent as usize].child;
        if head == old {
            self.nodes[parent as usize].child = new;
            return;
        }
        let mut c = head;
        while c != NIL {
            if self.nodes[c as usize].sib == old {
                self.nodes[c as usize].sib = new;
                return;
            }
            c = self.nodes[c as usize].sib;
        }
        unreachable!("old child not found under parent");
    }

    fn finalize(&mut self) {
        self.leaf_at = vec![NIL; self.syms.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            if n.child == NIL && n.schild == NIL && id != 0 {
                let start = n.end - n.depth;
                self.leaf_at[start as usize] = id as u32;
            }
        }
        debug_assert!(self.leaf_at.iter().all(|&l| l != NIL), "every suffix has a leaf");

        self.sample_start = vec![NIL; self.nodes.len()];
        for v in self.post_order() {
            let n = &self.nodes[v as usize];
            if n.child == NIL && n.schild == NIL && v != 0 {
                self.sample_start[v as usize] = n.end - n.depth;
            } else {
                let mut c = n.child;
                let mut sample = NIL;
                while c != NIL && sample == NIL {
                    sample = self.sample_start[c as usize];
                    c = self.nodes[c as usize].sib;
                }
                let mut c = n.schild;
                while c != NIL && sample == NIL {
                    sample = self.sample_start[c as usize];
                    c = self.nodes[c as usize].sib;
                }
                self.sample_start[v as usize] = sample;
            }
        }
    }

    /// Node ids in an order where every child precedes its parent.
    pub(crate) fn post_order(&self) -> Vec<u32> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            order.push(v);
            let mut c = self.nodes[v as usize].child;
            while c != NIL {
                stack.push(c);
                c = self.nodes[c as usize].sib;
            }
            let mut c = self.nodes[v as usize].schild;
            while c != NIL {
                stack.push(c);
                c = self.nodes[c as usize].sib;
            }
        }
        order.reverse();
        order
    }

    pub fn root(&self) -> u32 {
        0
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_texts(&self) -> usize {
        self.text_bounds.len()
    }

    pub fn depth(&self, v: u32) -> u32 {
        self.nodes[v as usize].depth
    }

    pub fn parent(&self, v: u32) -> u32 {
        self.nodes[v as usize].parent
    }

    pub fn suffix_link(&self, v: u32) -> u32 {
        self.nodes[v as usize].slink
    }

    pub fn is_leaf(&self, v: u32) -> bool {
        let n = &self.nodes[v as usize];
        v != 0 && n.child == NIL && n.schild == NIL
    }

    /// Global start of the text with the given index.
    pub fn text_start(&self, text_index: usize) -> usize {
        if text_index == 0 {
            0
        } else {
            self.text_bounds[text_index - 1] as usize
        }
    }

    /// Content length of a text, terminator excluded.
    pub fn text_content_len(&self, text_index: usize) -> usize {
        self.text_bounds[text_index] as usize - self.text_start(text_index) - 1
    }

    /// The terminal node whose path-label is the suffix starting at the
    /// given global position.
    pub fn leaf_for_suffix(&self, global_pos: usize) -> u32 {
        self.leaf_at[global_pos]
    }

    /// Global suffix start of a terminal node.
    pub fn suffix_start(&self, leaf: u32) -> usize {
        debug_assert!(self.is_leaf(leaf));
        let n = &self.nodes[leaf as usize];
        (n.end - n.depth) as usize
    }

    /// `(text index, offset)` label of a terminal node.
    pub fn terminal_label(&self, leaf: u32) -> (usize, usize) {
        let pos = self.suffix_start(leaf);
        let t = self.text_index_of(pos);
        (t, pos - self.text_start(t))
    }

    /// Index of the text containing a global position.
    pub fn text_index_of(&self, global_pos: usize) -> usize {
        self.text_bounds.partition_point(|&b| b as usize <= global_pos)
    }

    pub fn root_locus(&self) -> Locus {
        Locus { node: 0, depth: 0 }
    }

    /// Extends a locus by one content byte, if that word is a factor.
    pub fn spell(&self, from: Locus, letter: u8) -> Option<Locus> {
        let sym = letter as u32;
        let n = &self.nodes[from.node as usize];
        if from.depth < n.depth {
            let parent_depth = self.nodes[n.parent as usize].depth;
            let offset = n.start + (from.depth - parent_depth);
            if self.syms[offset as usize] == sym {
                Some(Locus { node: from.node, depth: from.depth + 1 })
            } else {
                None
            }
        } else {
            let child = self.child_of(from.node, sym);
            if child == NIL {
                None
            } else {
                Some(Locus { node: child, depth: from.depth + 1 })
            }
        }
    }

    /// Walks a whole word from the root.
    pub fn locus_of_word(&self, word: &[u8]) -> Option<Locus> {
        let mut locus = self.root_locus();
        for &b in word {
            locus = self.spell(locus, b)?;
        }
        Some(locus)
    }

    /// Bottom-up min/max propagation of terminal start positions.
    pub fn compute_aggregates(&self) -> NodeAggregates {
        let mut min_start = vec![u32::MAX; self.nodes.len()];
        let mut max_start = vec![0u32; self.nodes.len()];
        for v in self.post_order() {
            let n = &self.nodes[v as usize];
            if self.is_leaf(v) {
                let s = n.end - n.depth;
                min_start[v as usize] = s;
                max_start[v as usize] = s;
            } else {
                let fold = |c: u32, min_start: &mut Vec<u32>, max_start: &mut Vec<u32>| {
                    min_start[v as usize] = min_start[v as usize].min(min_start[c as usize]);
                    max_start[v as usize] = max_start[v as usize].max(max_start[c as usize]);
                };
                let mut c = n.child;
                while c != NIL {
                    fold(c, &mut min_start, &mut max_start);
                    c = self.nodes[c as usize].sib;
                }
                let mut c = n.schild;
                while c != NIL {
                    fold(c, &mut min_start, &mut max_start);
                    c = self.nodes[c as usize].sib;
                }
            }
        }
        NodeAggregates { min_start, max_start }
    }

    /// Starting positions (global) of all suffixes below a node.
    pub fn subtree_leaf_starts(&self, node: u32, out: &mut Vec<u32>) {
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            if self.is_leaf(v) {
                let n = &self.nodes[v as usize];
                out.push(n.end - n.depth);
                continue;
            }
            let mut c = self.nodes[v as usize].child;
            while c != NIL {
                stack.push(c);
                c = self.nodes[c as usize].sib;
            }
            let mut c = self.nodes[v as usize].schild;
            while c != NIL {
                stack.push(c);
                c = self.nodes[c as usize].sib;
            }
        }
    }

    /// For each pattern, all starting positions of its occurrences in the
    /// indexed text. Patterns must be pairwise prefix-free, which makes the
    /// matched subtrees disjoint and the total cost linear in tree size
    /// plus occurrences; antifactorial MAW sets satisfy this by
    /// construction. Prefix-freeness is asserted in debug builds only.
    pub fn locate_prefix_free_patterns(&self, patterns: &[&[u8]]) -> Vec<Vec<u32>> {
        #[cfg(debug_assertions)]
        {
            let mut sorted: Vec<&[u8]> = patterns.to_vec();
            sorted.sort();
            for w in sorted.windows(2) {
                debug_assert!(
                    !w[1].starts_with(w[0]),
                    "patterns must be prefix-free: {:?} prefixes {:?}",
                    String::from_utf8_lossy(w[0]),
                    String::from_utf8_lossy(w[1])
                );
            }
        }
        let mut results = Vec::with_capacity(patterns.len());
        for &pat in patterns {
            let mut occs = Vec::new();
            if let Some(locus) = self.locus_of_word(pat) {
                self.subtree_leaf_starts(locus.node, &mut occs);
                occs.sort_unstable();
            }
            results.push(occs);
        }
        results
    }

    /// Reconstructs the symbol sequence of the path to a node. Terminator
    /// symbols appear as values `>= SENTINEL_BASE`.
    pub fn path_symbols(&self, v: u32) -> Vec<u32> {
        let mut parts = Vec::new();
        let mut cur = v;
        while cur != 0 {
            let n = &self.nodes[cur as usize];
            parts.push((n.start, n.end));
            cur = n.parent;
        }
        let mut out = Vec::new();
        for (s, e) in parts.into_iter().rev() {
            out.extend_from_slice(&self.syms[s as usize..e as usize]);
        }
        out
    }

    /// DOT rendering for debugging and docs.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::from("digraph suffix_tree {\n  node [shape=point];\n");
        for (id, n) in self.nodes.iter().enumerate() {
            if id == 0 {
                continue;
            }
            let label: String = self.syms[n.start as usize..n.end as usize]
                .iter()
                .map(|&c| {
                    if c < SENTINEL_BASE {
                        (c as u8 as char).to_string()
                    } else {
                        format!("${}", c - SENTINEL_BASE)
                    }
                })
                .collect();
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", n.parent, id, label);
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Naive O(n^2) suffix-trie: the oracle for structural checks. Stores
    /// one node per distinct prefix-of-suffix; compact-tree-equivalent
    /// nodes are the root, branching nodes, and suffix ends.
    struct NaiveTrie {
        children: Vec<std::collections::BTreeMap<u32, usize>>,
        terminal: Vec<bool>,
    }

    impl NaiveTrie {
        fn build(texts: &[&[u8]]) -> NaiveTrie {
            let mut t = NaiveTrie { children: vec![Default::default()], terminal: vec![false] };
            for (j, text) in texts.iter().enumerate() {
                let mut syms: Vec<u32> = text.iter().map(|&b| b as u32).collect();
                syms.push(SENTINEL_BASE + j as u32);
                for i in 0..syms.len() {
                    let mut cur = 0usize;
                    for &c in &syms[i..] {
                        let next = t.children[cur].get(&c).copied();
                        cur = match next {
                            Some(n) => n,
                            None => {
                                t.children.push(Default::default());
                                t.terminal.push(false);
                                let id = t.children.len() - 1;
                                t.children[cur].insert(c, id);
                                id
                            }
                        };
                    }
                    t.terminal[cur] = true;
                }
            }
            t
        }

        /// Path labels of root, branching, and terminal nodes.
        fn explicit_labels(&self) -> BTreeSet<Vec<u32>> {
            let mut out = BTreeSet::new();
            let mut stack = vec![(0usize, Vec::new())];
            while let Some((v, label)) = stack.pop() {
                if v == 0 || self.children[v].len() >= 2 || self.terminal[v] {
                    out.insert(label.clone());
                }
                for (&c, &n) in &self.children[v] {
                    let mut l = label.clone();
                    l.push(c);
                    stack.push((n, l));
                }
            }
            out
        }

        fn terminal_labels(&self) -> BTreeSet<Vec<u32>> {
            let mut out = BTreeSet::new();
            let mut stack = vec![(0usize, Vec::new())];
            while let Some((v, label)) = stack.pop() {
                if self.terminal[v] {
                    out.insert(label.clone());
                }
                for (&c, &n) in &self.children[v] {
                    let mut l = label.clone();
                    l.push(c);
                    stack.push((n, l));
                }
            }
            out
        }
    }

    fn tree_explicit_labels(tree: &SuffixTree) -> BTreeSet<Vec<u32>> {
        (0..tree.node_count() as u32).map(|v| tree.path_symbols(v)).collect()
    }

    fn tree_terminal_labels(tree: &SuffixTree) -> BTreeSet<Vec<u32>> {
        (0..tree.node_count() as u32)
            .filter(|&v| tree.is_leaf(v))
            .map(|v| tree.path_symbols(v))
            .collect()
    }

    fn assert_structure_matches(texts: &[&[u8]]) {
        let tree = SuffixTree::build_generalized(texts).unwrap();
        let naive = NaiveTrie::build(texts);
        assert_eq!(tree_terminal_labels(&tree), naive.terminal_labels(), "terminals {texts:?}");
        assert_eq!(tree_explicit_labels(&tree), naive.explicit_labels(), "explicit {texts:?}");
        // word depths strictly increase along every root path
        for v in 1..tree.node_count() as u32 {
            let p = tree.parent(v);
            assert!(tree.depth(v) > tree.depth(p));
            assert_eq!(tree.path_symbols(v).len(), tree.depth(v) as usize);
        }
        // suffix links of branching nodes drop exactly the first symbol
        for v in 1..tree.node_count() as u32 {
            if tree.is_leaf(v) {
                continue;
            }
            let l = tree.suffix_link(v);
            assert_ne!(l, NIL, "internal node without suffix link");
            let lab = tree.path_symbols(v);
            assert_eq!(tree.path_symbols(l), lab[1..].to_vec());
        }
    }

    #[test]
    fn leaf_count_equals_suffix_count() {
        let tree = SuffixTree::build(b"abaab").unwrap();
        let leaves = (0..tree.node_count() as u32).filter(|&v| tree.is_leaf(v)).count();
        assert_eq!(leaves, 6); // five content suffixes plus the terminator
    }

    #[test]
    fn unary_text_structure() {
        let tree = SuffixTree::build(b"aaaa").unwrap();
        let naive = NaiveTrie::build(&[b"aaaa"]);
        assert_eq!(tree_explicit_labels(&tree), naive.explicit_labels());
        let locus = tree.locus_of_word(b"aaa").unwrap();
        assert_eq!(locus.depth, 3);
    }

    #[test]
    fn empty_text_rejected() {
        assert!(SuffixTree::build(b"").is_err());
        assert!(SuffixTree::build_generalized(&[b"ab", b""]).is_err());
    }

    #[test]
    fn generalized_terminal_labels() {
        let tree = SuffixTree::build_generalized(&[b"aaa", b"bb"]).unwrap();
        let mut labels: Vec<(usize, usize)> = (0..tree.node_count() as u32)
            .filter(|&v| tree.is_leaf(v))
            .map(|v| tree.terminal_label(v))
            .collect();
        labels.sort();
        assert_eq!(labels, vec![(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2)]);
    }

    #[test]
    fn generalized_single_matches_plain_build() {
        let a = SuffixTree::build(b"ab").unwrap();
        let b = SuffixTree::build_generalized(&[b"ab"]).unwrap();
        assert_eq!(tree_explicit_labels(&a), tree_explicit_labels(&b));
    }

    #[test]
    fn generalized_occurrences_cross_texts() {
        let tree = SuffixTree::build_generalized(&[b"aaa", b"bb", b"abba"]).unwrap();
        let locus = tree.locus_of_word(b"bb").unwrap();
        let mut starts = Vec::new();
        tree.subtree_leaf_starts(locus.node, &mut starts);
        let mut texts: Vec<usize> =
            starts.iter().map(|&s| tree.text_bounds.partition_point(|&b| b <= s)).collect();
        texts.sort();
        assert_eq!(texts, vec![1, 2]);
    }

    #[test]
    fn spell_cases() {
        let tree = SuffixTree::build(b"abaab").unwrap();
        let ab = tree.locus_of_word(b"ab").unwrap();
        let aba = tree.spell(ab, b'a').unwrap();
        assert_eq!(aba.depth, 3);
        assert!(tree.spell(ab, b'b').is_none(), "abb is not a factor");
        let a = tree.spell(tree.root_locus(), b'a').unwrap();
        assert_eq!(a.depth, 1);
    }

    #[test]
    fn aggregates_match_naive_scan() {
        let text = b"abab";
        let tree = SuffixTree::build(text).unwrap();
        let agg = tree.compute_aggregates();
        let locus = tree.locus_of_word(b"ab").unwrap();
        assert_eq!(agg.min_start[locus.node as usize], 0);
        assert_eq!(agg.max_start[locus.node as usize], 2);
        // leaves are their own aggregate
        for v in 0..tree.node_count() as u32 {
            if tree.is_leaf(v) {
                let s = tree.suffix_start(v) as u32;
                assert_eq!(agg.min_start[v as usize], s);
                assert_eq!(agg.max_start[v as usize], s);
            }
        }
        // root spans all suffixes
        assert_eq!(agg.min_start[0], 0);
        assert_eq!(agg.max_start[0], text.len() as u32); // terminator suffix
    }

    #[test]
    fn locate_patterns() {
        let tree = SuffixTree::build(b"bbaaab").unwrap();
        let occs = tree.locate_prefix_free_patterns(&[b"aaa", b"bb"]);
        assert_eq!(occs, vec![vec![2], vec![0]]);
        let occs = tree.locate_prefix_free_patterns(&[b"ba"]);
        assert_eq!(occs, vec![vec![1]]);
        let occs = tree.locate_prefix_free_patterns(&[b"abab"]);
        assert_eq!(occs, vec![Vec::<u32>::new()]);
        let empty: Vec<&[u8]> = Vec::new();
        assert!(tree.locate_prefix_free_patterns(&empty).is_empty());
    }

    #[test]
    fn random_words_match_naive_trie() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..120 {
            let letters: &[u8] = if trial % 3 == 0 { b"ab" } else { b"abcd" };
            let len = (next() % 200 + 1) as usize;
            let text: Vec<u8> =
                (0..len).map(|_| letters[(next() % letters.len() as u64) as usize]).collect();
            assert_structure_matches(&[&text]);
        }
    }

    #[test]
    fn random_generalized_match_naive_trie() {
        let mut state = 0xda3e39cb94b95bdbu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let letters: &[u8] = b"ab";
            let count = (next() % 4 + 1) as usize;
            let texts: Vec<Vec<u8>> = (0..count)
                .map(|_| {
                    let len = (next() % 30 + 1) as usize;
                    (0..len).map(|_| letters[(next() % 2) as usize]).collect()
                })
                .collect();
            let refs: Vec<&[u8]> = texts.iter().map(|t| t.as_slice()).collect();
            assert_structure_matches(&refs);
        }
    }

    #[test]
    fn dot_dump_renders() {
        let tree = SuffixTree::build(b"ab").unwrap();
        let dot = tree.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("$0"));
    }
}
