//! Sets of matches and Chen's bijection with labeled plane trees.
//!
//! For a tree on [n+1] the alphabet is `1, …, n+1` together with the starred
//! labels `(n+2)*, …, (2n)*`. A match is a two-vertex tree `root>leaf`.
//!
//! Decoding glues the n matches into one tree by consuming the starred labels
//! in increasing order. At step `s*`, let T be the *complete* tree (unstarred
//! root, no starred leaf) whose root label is smallest. If `s*` is the root of
//! a match-like tree R, the child of R becomes the last child of T's root;
//! otherwise T is grafted onto the leaf `s*`. Encoding runs these steps
//! backwards. Each backward step only ever touches the last child of some
//! root, so the candidate preimages are few and a short backtracking search
//! finds the unique one.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits;
use crate::trees::{LabeledTree, PlaneTree};

/// Field order gives the canonical ordering: unstarred before starred, then by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub starred: bool,
    pub value: u32,
}

impl Label {
    pub fn plain(value: u32) -> Self {
        Label { starred: false, value }
    }

    pub fn star(value: u32) -> Self {
        Label { starred: true, value }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.starred { "*" } else { "" })
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, starred) = match s.strip_suffix('*') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let value = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad label `{s}`")))?;
        Ok(Label { starred, value })
    }
}

/// The standard alphabet for trees on [n+1].
pub fn alphabet(n: u32) -> Vec<Label> {
    let mut out: Vec<Label> = (1..=n + 1).map(Label::plain).collect();
    out.extend((n + 2..=2 * n).map(Label::star));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchSet {
    matches: BTreeSet<(Label, Label)>,
}

impl MatchSet {
    /// Validates that the pairs use the standard alphabet exactly once.
    pub fn new(pairs: impl IntoIterator<Item = (Label, Label)>) -> Result<Self> {
        let matches: BTreeSet<(Label, Label)> = pairs.into_iter().collect();
        let n = matches.len() as u32;
        if n == 0 {
            return Err(Error::invalid("a match set needs at least one match"));
        }
        let mut used: Vec<Label> = matches.iter().flat_map(|(r, l)| [*r, *l]).collect();
        used.sort();
        if used != alphabet(n) {
            return Err(Error::invalid(format!(
                "labels of {} do not form the alphabet for n={n}",
                MatchSet { matches }
            )));
        }
        Ok(MatchSet { matches })
    }

    pub fn n(&self) -> u32 {
        self.matches.len() as u32
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Label, Label)> {
        self.matches.iter()
    }

    pub fn unstarred_roots(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.matches.iter().filter(|(r, _)| !r.starred).map(|(r, _)| r.value).collect();
        v.sort();
        v
    }

    pub fn unstarred_leaves(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.matches.iter().filter(|(_, l)| !l.starred).map(|(_, l)| l.value).collect();
        v.sort();
        v
    }
}

impl fmt::Display for MatchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.matches.iter().map(|(r, l)| format!("{r}>{l}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MatchSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for tok in s.split(',') {
            let (r, l) = tok
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("bad match `{tok}`")))?;
            pairs.push((r.parse()?, l.parse()?));
        }
        MatchSet::new(pairs)
    }
}

/// Every partition of the alphabet into n ordered pairs; there are (2n)!/n!.
pub fn enum_match_sets(n: u32) -> Result<Vec<MatchSet>> {
    if n == 0 {
        return Err(Error::invalid("match sets need n >= 1"));
    }
    limits::check("match set size", n as usize, limits::MATCH_SETS)?;
    fn go(rest: &[Label], acc: &mut Vec<(Label, Label)>, out: &mut Vec<MatchSet>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(MatchSet {
                matches: acc.iter().copied().collect(),
            });
            return;
        };
        for j in 0..tail.len() {
            let other = tail[j];
            let remaining: Vec<Label> = tail[..j].iter().chain(&tail[j + 1..]).copied().collect();
            for pair in [(first, other), (other, first)] {
                acc.push(pair);
                go(&remaining, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&alphabet(n), &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Node {
    label: Label,
    children: Vec<Node>,
}

impl Node {
    fn leaf(label: Label) -> Self {
        Node {
            label,
            children: Vec::new(),
        }
    }

    fn has_starred_leaf(&self) -> bool {
        if self.children.is_empty() {
            self.label.starred
        } else {
            self.children.iter().any(Node::has_starred_leaf)
        }
    }

    fn is_complete(&self) -> bool {
        !self.label.starred && !self.has_starred_leaf()
    }

    /// Replaces the leaf carrying `label` by `graft`. Returns the graft back if
    /// the leaf is not in this subtree.
    fn graft_at(&mut self, label: Label, graft: Node) -> Option<Node> {
        let mut graft = Some(graft);
        for child in &mut self.children {
            if child.children.is_empty() && child.label == label {
                *child = graft.take().unwrap();
                return None;
            }
            graft = child.graft_at(label, graft.take().unwrap());
            graft.as_ref()?;
        }
        graft
    }

    fn from_labeled(tree: &LabeledTree) -> Self {
        fn build(v: usize, kids: &[Vec<usize>], labels: &[u32]) -> Node {
            Node {
                label: Label::plain(labels[v]),
                children: kids[v].iter().map(|&c| build(c, kids, labels)).collect(),
            }
        }
        build(0, &tree.shape.children(), &tree.labels)
    }

    fn to_labeled(&self) -> Result<LabeledTree> {
        fn walk(node: &Node, word: &mut String, labels: &mut Vec<u32>) -> Result<()> {
            if node.label.starred {
                return Err(Error::invalid(format!("starred label {} left in tree", node.label)));
            }
            labels.push(node.label.value);
            for c in &node.children {
                word.push('(');
                walk(c, word, labels)?;
                word.push(')');
            }
            Ok(())
        }
        let mut word = String::new();
        let mut labels = Vec::new();
        walk(self, &mut word, &mut labels)?;
        LabeledTree::new(PlaneTree::from_word(&word)?, labels)
    }
}

fn min_complete(forest: &[Node]) -> Option<usize> {
    forest
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_complete())
        .min_by_key(|(_, t)| t.label.value)
        .map(|(i, _)| i)
}

/// One gluing step with the starred label `s*`.
fn glue(mut forest: Vec<Node>, s: u32) -> Result<Vec<Node>> {
    let lab = Label::star(s);
    let ti = min_complete(&forest)
        .ok_or_else(|| Error::invalid(format!("no complete tree before step {lab}")))?;
    let t = forest.remove(ti);
    if let Some(ri) = forest.iter().position(|x| x.label == lab) {
        let r = forest.remove(ri);
        let mut merged = t;
        merged.children.extend(r.children);
        forest.push(merged);
        return Ok(forest);
    }
    let mut graft = Some(t);
    for tree in &mut forest {
        graft = tree.graft_at(lab, graft.take().unwrap());
        if graft.is_none() {
            return Ok(forest);
        }
    }
    Err(Error::invalid(format!("label {lab} does not occur in the forest")))
}

pub fn chen_decode(ms: &MatchSet) -> Result<LabeledTree> {
    MatchSet::new(ms.matches.iter().copied())?;
    let n = ms.n();
    let mut forest: Vec<Node> = ms
        .pairs()
        .map(|(r, l)| Node {
            label: *r,
            children: vec![Node::leaf(*l)],
        })
        .collect();
    for s in n + 2..=2 * n {
        forest = glue(forest, s)?;
    }
    debug_assert_eq!(forest.len(), 1);
    forest[0].to_labeled()
}

/// Forests that `glue(_, s)` maps to `forest`.
fn preimages(forest: &[Node], s: u32) -> Vec<Vec<Node>> {
    let lab = Label::star(s);
    let mut out = Vec::new();
    for (xi, x) in forest.iter().enumerate() {
        let Some(last) = x.children.last() else {
            continue;
        };
        let others = || -> Vec<Node> {
            forest
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != xi)
                .map(|(_, t)| t.clone())
                .collect()
        };
        // T was grafted at the leaf s*.
        if !last.children.is_empty() && last.is_complete() {
            let mut p = x.clone();
            *p.children.last_mut().unwrap() = Node::leaf(lab);
            let mut pre = others();
            pre.push(p);
            pre.push(last.clone());
            if min_complete(&pre) == Some(pre.len() - 1) {
                out.push(pre);
            }
        }
        // The child of s* was appended to T's root.
        if !x.label.starred && x.children.len() >= 2 {
            let mut t = x.clone();
            let child = t.children.pop().unwrap();
            if t.is_complete() {
                let mut pre = others();
                pre.push(t);
                pre.push(Node {
                    label: lab,
                    children: vec![child],
                });
                if min_complete(&pre) == Some(pre.len() - 2) {
                    out.push(pre);
                }
            }
        }
    }
    out
}

fn unglue(forest: Vec<Node>, s: u32, n: u32) -> Option<Vec<Node>> {
    if s < n + 2 {
        let all_matches = forest
            .iter()
            .all(|t| t.children.len() == 1 && t.children[0].children.is_empty());
        return all_matches.then_some(forest);
    }
    preimages(&forest, s)
        .into_iter()
        .find_map(|pre| unglue(pre, s - 1, n))
}

pub fn chen_encode(tree: &LabeledTree) -> Result<MatchSet> {
    let n = tree.shape.edges() as u32;
    if n == 0 {
        return Err(Error::invalid("the bijection needs a tree with at least one edge"));
    }
    let mut sorted = tree.labels.clone();
    sorted.sort();
    if sorted != (1..=n + 1).collect::<Vec<u32>>() {
        return Err(Error::invalid(format!("tree {tree} is not labeled by [{}]", n + 1)));
    }
    let forest = unglue(vec![Node::from_labeled(tree)], 2 * n, n)
        .ok_or_else(|| Error::invalid(format!("no match set decodes to {tree}")))?;
    MatchSet::new(forest.into_iter().map(|t| (t.label, t.children[0].label)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::factorial;
    use crate::trees::enum_labeled_trees;
    use std::collections::HashSet;

    const GOLDEN_CHI: &str = "3>14*,4>9,8>17*,10>2,11>5,13*>6,15*>19*,16*>1,18*>12*,20*>7";

    fn golden_tree() -> LabeledTree {
        // 3(10(2,6), 8(11(5,1), 4(9)), 7)
        LabeledTree::new(
            PlaneTree::from_word("(()())((()())(()))()").unwrap(),
            vec![3, 10, 2, 6, 8, 11, 5, 1, 4, 9, 7],
        )
        .unwrap()
    }

    #[test]
    fn single_edges() {
        let t12 = LabeledTree::new(PlaneTree::from_word("()").unwrap(), vec![1, 2]).unwrap();
        let t21 = LabeledTree::new(PlaneTree::from_word("()").unwrap(), vec![2, 1]).unwrap();
        assert_eq!(chen_encode(&t12).unwrap().to_string(), "1>2");
        assert_eq!(chen_encode(&t21).unwrap().to_string(), "2>1");
        assert_eq!(chen_decode(&"1>2".parse().unwrap()).unwrap(), t12);
    }

    #[test]
    fn golden_pair() {
        let chi: MatchSet = GOLDEN_CHI.parse().unwrap();
        assert_eq!(chi.to_string(), GOLDEN_CHI);
        assert_eq!(chen_decode(&chi).unwrap(), golden_tree());
        assert_eq!(chen_encode(&golden_tree()).unwrap(), chi);
    }

    #[test]
    fn match_set_counts() {
        assert_eq!(enum_match_sets(1).unwrap().len(), 2);
        assert_eq!(enum_match_sets(2).unwrap().len(), 12);
        assert_eq!(enum_match_sets(3).unwrap().len(), 120);
        for n in 1..=4u32 {
            let sets = enum_match_sets(n).unwrap();
            let distinct: HashSet<_> = sets.iter().collect();
            assert_eq!(distinct.len(), sets.len());
            let expected = factorial(2 * n as u64) / factorial(n as u64);
            assert_eq!(num_bigint::BigInt::from(sets.len()), expected);
        }
    }

    #[test]
    fn encode_after_decode_small() {
        for n in 1..=4 {
            for ms in enum_match_sets(n).unwrap() {
                let t = chen_decode(&ms).unwrap();
                assert_eq!(chen_encode(&t).unwrap(), ms);
            }
        }
    }

    #[test]
    fn decode_after_encode_small() {
        for n in 1..=4 {
            for t in enum_labeled_trees(n).unwrap() {
                let ms = chen_encode(&t).unwrap();
                assert_eq!(ms.unstarred_roots(), t.internal_labels());
                assert_eq!(ms.unstarred_leaves(), t.leaf_labels());
                assert_eq!(chen_decode(&ms).unwrap(), t);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!("1>2,3>4".parse::<MatchSet>().is_err());
        assert!("1>3*".parse::<MatchSet>().is_err());
        assert!("1>2,3>5*".parse::<MatchSet>().is_err());
        let bad = LabeledTree::new(PlaneTree::from_word("()").unwrap(), vec![1, 3]).unwrap();
        assert!(chen_encode(&bad).is_err());
    }
}
