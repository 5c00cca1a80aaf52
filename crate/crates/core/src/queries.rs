//! Matching statistics and batched weighted ancestor queries.

use crate::error::{AntidictError, Result};
use crate::suffix_tree::{Locus, SuffixTree, NIL};

/// Per-position longest-match lengths of a word against an indexed text,
/// with one witness occurrence each: `entries[i] = (f_i, p_i)` where
/// `x[i..i+f_i]` is the longest prefix of `x[i..]` occurring in the text
/// and `p_i` is a starting position of one such occurrence (0 when
/// `f_i = 0`).
#[derive(Debug, Clone)]
pub struct MatchingStatistics {
    pub entries: Vec<(u32, u32)>,
}

/// A node and a target word-depth `w <= D(node)`; the answer is the
/// highest ancestor-or-self with depth at least `w`, i.e. the locus of the
/// length-`w` prefix of the node's path-label.
#[derive(Debug, Clone, Copy)]
pub struct WeightedAncestorQuery {
    pub node: u32,
    pub target_weight: u32,
}

/// Computes the matching statistics of `x` against the tree in time
/// linear in `|x|`: extend the current match letter by letter, and between
/// positions drop the leading letter by a suffix-link hop followed by a
/// skip-count descent.
pub fn matching_statistics(x: &[u8], tree: &SuffixTree) -> MatchingStatistics {
    matching_statistics_with_loci(x, tree).0
}

/// As [`matching_statistics`], also returning the locus of each match for
/// callers that need to inspect the matched path.
pub(crate) fn matching_statistics_with_loci(
    x: &[u8],
    tree: &SuffixTree,
) -> (MatchingStatistics, Vec<Locus>) {
    let n = x.len();
    let mut entries = Vec::with_capacity(n);
    let mut loci = Vec::with_capacity(n);
    let mut point = tree.root_locus();
    for i in 0..n {
        // invariant: point is the locus of x[i..i+point.depth)
        while (i + point.depth as usize) < n {
            match tree.spell(point, x[i + point.depth as usize]) {
                Some(next) => point = next,
                None => break,
            }
        }
        let witness =
            if point.depth == 0 { 0 } else { tree.sample_start[point.node as usize] };
        entries.push((point.depth, witness));
        loci.push(point);
        point = drop_leading(tree, point);
    }
    (MatchingStatistics { entries }, loci)
}

// Locus of the word minus its first letter, via suffix link and
// skip-count re-descent.
fn drop_leading(tree: &SuffixTree, point: Locus) -> Locus {
    let d = point.depth;
    if d <= 1 {
        return tree.root_locus();
    }
    let v = &tree.nodes[point.node as usize];
    let p = v.parent;
    let p_depth = tree.nodes[p as usize].depth;
    let edge_taken = d - p_depth;
    let (base, mut pos, mut rem) = if p == tree.root() {
        (tree.root(), v.start as usize + 1, (d - 1) as usize)
    } else {
        let link = tree.nodes[p as usize].slink;
        debug_assert_ne!(link, NIL, "internal nodes carry suffix links");
        (link, v.start as usize, edge_taken as usize)
    };
    let mut cur = base;
    while rem > 0 {
        let child = tree.child_of(cur, tree.syms[pos]);
        debug_assert_ne!(child, NIL, "dropped word must remain a factor");
        let c = &tree.nodes[child as usize];
        let elen = (c.end - c.start) as usize;
        if rem >= elen {
            cur = child;
            pos += elen;
            rem -= elen;
        } else {
            return Locus { node: child, depth: d - 1 };
        }
    }
    Locus { node: cur, depth: d - 1 }
}

/// Answers all weighted ancestor queries off-line: queries are bucketed by
/// node and resolved during one Euler tour, each by a binary search on the
/// strictly-increasing depths of the current root path.
pub fn batch_weighted_ancestors(
    tree: &SuffixTree,
    queries: &[WeightedAncestorQuery],
) -> Result<Vec<Locus>> {
    for q in queries {
        let nd = tree.depth(q.node);
        if q.target_weight < 1 || q.target_weight > nd {
            return Err(AntidictError::WeightOutOfRange { target: q.target_weight, node_depth: nd });
        }
    }
    // bucket query indices by node (CSR layout)
    let n = tree.node_count();
    let mut counts = vec![0u32; n + 1];
    for q in queries {
        counts[q.node as usize + 1] += 1;
    }
    for i in 0..n {
        counts[i + 1] += counts[i];
    }
    let mut bucket = vec![0u32; queries.len()];
    let mut cursor: Vec<u32> = counts.clone();
    for (qi, q) in queries.iter().enumerate() {
        bucket[cursor[q.node as usize] as usize] = qi as u32;
        cursor[q.node as usize] += 1;
    }

    let mut answers = vec![Locus { node: NIL, depth: 0 }; queries.len()];
    let mut path: Vec<u32> = Vec::new();
    enum Frame {
        Enter(u32),
        Exit,
    }
    let mut stack = vec![Frame::Enter(tree.root())];
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Enter(v) => {
                path.push(v);
                let (lo, hi) = (counts[v as usize] as usize, counts[v as usize + 1] as usize);
                for &qi in &bucket[lo..hi] {
                    let w = queries[qi as usize].target_weight;
                    let idx = path.partition_point(|&u| tree.depth(u) < w);
                    debug_assert!(idx < path.len());
                    answers[qi as usize] = Locus { node: path[idx], depth: w };
                }
                stack.push(Frame::Exit);
                let mut c = tree.nodes[v as usize].child;
                while c != NIL {
                    stack.push(Frame::Enter(c));
                    c = tree.nodes[c as usize].sib;
                }
                let mut c = tree.nodes[v as usize].schild;
                while c != NIL {
                    stack.push(Frame::Enter(c));
                    c = tree.nodes[c as usize].sib;
                }
            }
            Frame::Exit => {
                path.pop();
            }
        }
    }
    Ok(answers)
}

/// Reference implementation: walk parent pointers. Kept for differential
/// testing against the batched version.
pub fn weighted_ancestor_walk(tree: &SuffixTree, node: u32, target_weight: u32) -> Result<Locus> {
    let nd = tree.depth(node);
    if target_weight < 1 || target_weight > nd {
        return Err(AntidictError::WeightOutOfRange { target: target_weight, node_depth: nd });
    }
    let mut u = node;
    loop {
        let p = tree.parent(u);
        if p == NIL || tree.depth(p) < target_weight {
            break;
        }
        u = p;
    }
    Ok(Locus { node: u, depth: target_weight })
}

/// Locus of the factor `text[i..=j]`, found through the terminal of
/// suffix `i` and a weighted ancestor query at depth `j - i + 1`.
pub fn locate_factor_locus(tree: &SuffixTree, i: usize, j: usize) -> Result<Locus> {
    if i > j || j >= tree.syms.len() {
        return Err(AntidictError::IndexOutOfRange { i1: i, i2: j, len: tree.syms.len() });
    }
    let leaf = tree.leaf_for_suffix(i);
    weighted_ancestor_walk(tree, leaf, (j - i + 1) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ms(x: &[u8], y: &[u8]) -> Vec<usize> {
        (0..x.len())
            .map(|i| {
                let mut best = 0;
                for f in (0..=x.len() - i).rev() {
                    let pat = &x[i..i + f];
                    if f == 0 || y.windows(f).any(|w| w == pat) {
                        best = f;
                        break;
                    }
                }
                best
            })
            .collect()
    }

    #[test]
    fn ms_example() {
        let tree = SuffixTree::build(b"bbaaab").unwrap();
        let ms = matching_statistics(b"aba", &tree);
        let f: Vec<u32> = ms.entries.iter().map(|e| e.0).collect();
        assert_eq!(f, brute_ms(b"aba", b"bbaaab").iter().map(|&v| v as u32).collect::<Vec<_>>());
        assert_eq!(f, vec![2, 2, 1]); // "ab" at 4, "ba" at 1, "a" anywhere
        for (i, &(f, p)) in ms.entries.iter().enumerate() {
            let m = &b"aba"[i..i + f as usize];
            assert_eq!(&b"bbaaab"[p as usize..p as usize + f as usize], m);
        }
    }

    #[test]
    fn ms_self_match() {
        let y = b"abaabbab";
        let tree = SuffixTree::build(y).unwrap();
        let ms = matching_statistics(y, &tree);
        for (i, &(f, p)) in ms.entries.iter().enumerate() {
            assert_eq!(f as usize, y.len() - i);
            // any witness occurrence is acceptable
            assert_eq!(&y[p as usize..p as usize + f as usize], &y[i..i + f as usize]);
        }
    }

    #[test]
    fn ms_disjoint_alphabet() {
        let tree = SuffixTree::build(b"aaa").unwrap();
        let ms = matching_statistics(b"bbb", &tree);
        assert!(ms.entries.iter().all(|&(f, _)| f == 0));
    }

    #[test]
    fn ms_matches_brute_force() {
        let mut state = 0xc0ffee123456789u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..200 {
            let letters: &[u8] = if trial % 2 == 0 { b"ab" } else { b"abc" };
            let ylen = (next() % 100 + 1) as usize;
            let xlen = (next() % 100 + 1) as usize;
            let y: Vec<u8> =
                (0..ylen).map(|_| letters[(next() % letters.len() as u64) as usize]).collect();
            let x: Vec<u8> =
                (0..xlen).map(|_| letters[(next() % letters.len() as u64) as usize]).collect();
            let tree = SuffixTree::build(&y).unwrap();
            let ms = matching_statistics(&x, &tree);
            let expect = brute_ms(&x, &y);
            for (i, &(f, p)) in ms.entries.iter().enumerate() {
                assert_eq!(f as usize, expect[i], "x={x:?} y={y:?} i={i}");
                if f > 0 {
                    assert_eq!(
                        &y[p as usize..p as usize + f as usize],
                        &x[i..i + f as usize],
                        "witness"
                    );
                }
            }
            // one-letter-drop property
            for w in ms.entries.windows(2) {
                assert!(w[1].0 + 1 >= w[0].0);
            }
        }
    }

    #[test]
    fn ms_against_generalized_tree() {
        let tree = SuffixTree::build_generalized(&[b"abba", b"bab"]).unwrap();
        let ms = matching_statistics(b"abab", &tree);
        let f: Vec<u32> = ms.entries.iter().map(|e| e.0).collect();
        // longest factors of {abba, bab} starting at each position of "abab"
        assert_eq!(f, vec![2, 3, 2, 1]);
    }

    #[test]
    fn weighted_ancestor_examples() {
        let tree = SuffixTree::build(b"abaab").unwrap();
        let leaf = tree.leaf_for_suffix(0);
        let locus =
            batch_weighted_ancestors(&tree, &[WeightedAncestorQuery { node: leaf, target_weight: 3 }])
                .unwrap()[0];
        assert_eq!(locus.depth, 3);
        assert_eq!(&tree.path_symbols(locus.node)[..3], &[b'a' as u32, b'b' as u32, b'a' as u32]);

        // target equal to the node depth answers the node itself
        let d = tree.depth(leaf);
        let locus = weighted_ancestor_walk(&tree, leaf, d).unwrap();
        assert_eq!((locus.node, locus.depth), (leaf, d));

        let tree = SuffixTree::build(b"aaaa").unwrap();
        let leaf = tree.leaf_for_suffix(0);
        let locus = weighted_ancestor_walk(&tree, leaf, 2).unwrap();
        assert_eq!(locus.depth, 2);
        assert_eq!(&tree.path_symbols(locus.node)[..2], &[b'a' as u32; 2]);
    }

    #[test]
    fn weighted_ancestor_rejects_bad_weight() {
        let tree = SuffixTree::build(b"ab").unwrap();
        let leaf = tree.leaf_for_suffix(0);
        let d = tree.depth(leaf);
        assert!(weighted_ancestor_walk(&tree, leaf, d + 1).is_err());
        assert!(
            batch_weighted_ancestors(&tree, &[WeightedAncestorQuery { node: leaf, target_weight: 0 }])
                .is_err()
        );
    }

    #[test]
    fn batch_matches_walk_on_random_trees() {
        let mut state = 0xfeedface0badf00du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let len = (next() % 120 + 2) as usize;
            let text: Vec<u8> = (0..len).map(|_| b"ab"[(next() % 2) as usize]).collect();
            let tree = SuffixTree::build(&text).unwrap();
            let mut queries = Vec::new();
            for _ in 0..100 {
                let node = (next() % tree.node_count() as u64) as u32;
                if node == tree.root() {
                    continue;
                }
                let d = tree.depth(node);
                let w = (next() % d as u64) as u32 + 1;
                queries.push(WeightedAncestorQuery { node, target_weight: w });
            }
            let batch = batch_weighted_ancestors(&tree, &queries).unwrap();
            for (q, a) in queries.iter().zip(&batch) {
                let walk = weighted_ancestor_walk(&tree, q.node, q.target_weight).unwrap();
                assert_eq!((a.node, a.depth), (walk.node, walk.depth));
                // the answer lies on the root path of the queried node
                let mut u = q.node;
                let mut on_path = false;
                while u != NIL {
                    if u == a.node {
                        on_path = true;
                        break;
                    }
                    u = tree.parent(u);
                }
                assert!(on_path);
            }
        }
    }

    #[test]
    fn locate_factor_examples() {
        let tree = SuffixTree::build(b"abaab").unwrap();
        let locus = locate_factor_locus(&tree, 1, 3).unwrap();
        assert_eq!(locus.depth, 3);
        assert_eq!(
            &tree.path_symbols(locus.node)[..3],
            &[b'b' as u32, b'a' as u32, b'a' as u32]
        );
        let locus = locate_factor_locus(&tree, 2, 2).unwrap();
        assert_eq!(locus.depth, 1);
        let locus = locate_factor_locus(&tree, 0, 4).unwrap();
        assert_eq!(locus.depth, 5);
        assert!(locate_factor_locus(&tree, 3, 10).is_err());
    }
}
