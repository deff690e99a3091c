//! Plane trees as Dyck words, labeled and colored variants, and the two
//! counting engines for Γ_{n,x,q}: explicit enumeration and per-shape counting.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial_int, factorial, int_to_rat, parse_rational, pow_i, Rational};
use crate::limits;

/// An unlabeled plane tree, stored as its balanced-parenthesis word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneTree {
    word: String,
}

impl PlaneTree {
    pub fn from_word(word: &str) -> Result<Self> {
        let mut depth = 0i64;
        for ch in word.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => return Err(Error::Parse(format!("`{word}` is not a parenthesis word"))),
            }
            if depth < 0 {
                return Err(Error::Parse(format!("`{word}` is unbalanced")));
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("`{word}` is unbalanced")));
        }
        Ok(PlaneTree {
            word: word.to_string(),
        })
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn edges(&self) -> usize {
        self.word.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.edges() + 1
    }

    /// Children of every vertex, vertices numbered in preorder with the root at 0.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut kids = vec![Vec::new(); self.vertex_count()];
        let mut stack = vec![0usize];
        let mut next = 1;
        for ch in self.word.bytes() {
            if ch == b'(' {
                kids[*stack.last().unwrap()].push(next);
                stack.push(next);
                next += 1;
            } else {
                stack.pop();
            }
        }
        kids
    }

    /// Leaf flags in preorder. A lone root counts as a leaf.
    pub fn leaf_mask(&self) -> Vec<bool> {
        self.children().iter().map(Vec::is_empty).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_mask().iter().filter(|l| **l).count()
    }

    pub fn internal_count(&self) -> usize {
        self.vertex_count() - self.leaf_count()
    }

    /// Builds the word of a tree given children lists, starting at `root`.
    pub fn from_children(children: &[Vec<usize>], root: usize) -> Self {
        fn walk(children: &[Vec<usize>], v: usize, out: &mut String) {
            for &c in &children[v] {
                out.push('(');
                walk(children, c, out);
                out.push(')');
            }
        }
        let mut word = String::new();
        walk(children, root, &mut word);
        PlaneTree { word }
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, ".")
        } else {
            write!(f, "{}", self.word)
        }
    }
}

fn unchecked_plane_trees(edges: usize) -> Vec<PlaneTree> {
    fn go(open: usize, close: usize, edges: usize, word: &mut String, out: &mut Vec<PlaneTree>) {
        if close == edges {
            out.push(PlaneTree { word: word.clone() });
            return;
        }
        if open < edges {
            word.push('(');
            go(open + 1, close, edges, word, out);
            word.pop();
        }
        if close < open {
            word.push(')');
            go(open, close + 1, edges, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, edges, &mut String::with_capacity(2 * edges), &mut out);
    out
}

/// Every plane tree with the given number of edges, in lexicographic order of
/// the word with `(` before `)`.
pub fn enum_plane_trees(edges: usize) -> Result<Vec<PlaneTree>> {
    limits::check("plane tree edges", edges, limits::PLANE_EDGES)?;
    Ok(unchecked_plane_trees(edges))
}

/// A plane tree with distinct labels, listed in preorder.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledTree {
    pub shape: PlaneTree,
    pub labels: Vec<u32>,
}

impl LabeledTree {
    pub fn new(shape: PlaneTree, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != shape.vertex_count() {
            return Err(Error::invalid(format!(
                "{} labels for a tree with {} vertices",
                labels.len(),
                shape.vertex_count()
            )));
        }
        if labels.iter().sorted().dedup().count() != labels.len() {
            return Err(Error::invalid("labels must be distinct"));
        }
        Ok(LabeledTree { shape, labels })
    }

    pub fn internal_labels(&self) -> Vec<u32> {
        self.partition_labels(false)
    }

    pub fn leaf_labels(&self) -> Vec<u32> {
        self.partition_labels(true)
    }

    fn partition_labels(&self, leaves: bool) -> Vec<u32> {
        self.shape
            .leaf_mask()
            .iter()
            .zip(&self.labels)
            .filter(|(l, _)| **l == leaves)
            .map(|(_, v)| *v)
            .sorted()
            .collect()
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape)?;
        for l in &self.labels {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// All plane trees on the label set [edges+1]: shapes times label permutations.
pub fn enum_labeled_trees(edges: usize) -> Result<Vec<LabeledTree>> {
    limits::check("labeled tree edges", edges, limits::MATCH_SETS)?;
    let mut out = Vec::new();
    for shape in unchecked_plane_trees(edges) {
        for perm in (1..=edges as u32 + 1).permutations(edges + 1) {
            out.push(LabeledTree {
                shape: shape.clone(),
                labels: perm,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Uncolored,
    Y,
    N,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TreeStatistics {
    pub internal_count: usize,
    pub y_leaf_count: usize,
    pub n_leaf_count: usize,
    pub uncolored_leaf_count: usize,
}

/// A member of Γ_{n,x,q}: labels and leaf colors in preorder.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredLabeledTree {
    pub tree: LabeledTree,
    pub colors: Vec<Color>,
}

impl ColoredLabeledTree {
    pub fn stats(&self) -> TreeStatistics {
        let mut s = TreeStatistics::default();
        for (leaf, c) in self.tree.shape.leaf_mask().iter().zip(&self.colors) {
            match (leaf, c) {
                (false, _) => s.internal_count += 1,
                (true, Color::Y) => s.y_leaf_count += 1,
                (true, Color::N) => s.n_leaf_count += 1,
                (true, Color::Uncolored) => s.uncolored_leaf_count += 1,
            }
        }
        s
    }

    /// Checks the defining conditions of Γ_{n,x,q}.
    pub fn check_membership(&self, x: u32, q: u32) -> Result<()> {
        let mask = self.tree.shape.leaf_mask();
        for ((leaf, label), color) in mask.iter().zip(&self.tree.labels).zip(&self.colors) {
            let ok = if *label <= q {
                *leaf && *color == Color::Uncolored
            } else if *label <= q + x {
                !*leaf && *color == Color::Uncolored
            } else if *leaf {
                *color != Color::Uncolored
            } else {
                *color == Color::Uncolored
            };
            if !ok {
                return Err(Error::invalid(format!("{self}: vertex {label} breaks the Γ rules")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ColoredLabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tree.shape)?;
        for (l, c) in self.tree.labels.iter().zip(&self.colors) {
            match c {
                Color::Uncolored => write!(f, " {l}")?,
                Color::Y => write!(f, " {l}:Y")?,
                Color::N => write!(f, " {l}:N")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ColoredLabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let word = parts.next().ok_or_else(|| Error::Parse("empty tree".into()))?;
        let shape = PlaneTree::from_word(if word == "." { "" } else { word })?;
        let mut labels = Vec::new();
        let mut colors = Vec::new();
        for tok in parts {
            let (num, color) = match tok.split_once(':') {
                None => (tok, Color::Uncolored),
                Some((num, "Y")) => (num, Color::Y),
                Some((num, "N")) => (num, Color::N),
                Some(_) => return Err(Error::Parse(format!("bad vertex token `{tok}`"))),
            };
            labels.push(num.parse().map_err(|_| Error::Parse(format!("bad label `{num}`")))?);
            colors.push(color);
        }
        Ok(ColoredLabeledTree {
            tree: LabeledTree::new(shape, labels)?,
            colors,
        })
    }
}

fn check_gamma_size(n: u32, x: u32, q: u32) -> Result<()> {
    let size = (n + x + q) as usize;
    if size < 2 {
        return Err(Error::invalid("Γ_{n,x,q} needs n + x + q >= 2"));
    }
    limits::check("Γ size n+x+q", size, limits::GAMMA_SIZE)
}

/// Visits every member of Γ_{n,x,q}. The tree passed in is reused between calls.
fn for_each_gamma(n: u32, x: u32, q: u32, mut visit: impl FnMut(&ColoredLabeledTree)) {
    let size = (n + x + q) as usize;
    for shape in unchecked_plane_trees(size - 1) {
        let mask = shape.leaf_mask();
        for perm in (1..=size as u32).permutations(size) {
            let allowed = perm.iter().zip(&mask).all(|(&label, &leaf)| {
                if label <= q {
                    leaf
                } else if label <= q + x {
                    !leaf
                } else {
                    true
                }
            });
            if !allowed {
                continue;
            }
            let colorable: Vec<usize> = (0..size).filter(|&v| mask[v] && perm[v] > q).collect();
            let mut tree = ColoredLabeledTree {
                tree: LabeledTree {
                    shape: shape.clone(),
                    labels: perm.clone(),
                },
                colors: vec![Color::Uncolored; size],
            };
            for bits in 0..1u64 << colorable.len() {
                for (i, &v) in colorable.iter().enumerate() {
                    tree.colors[v] = if bits >> i & 1 == 1 { Color::N } else { Color::Y };
                }
                visit(&tree);
            }
        }
    }
}

/// Every member of Γ_{n,x,q}, in shape order, then label order, then coloring.
pub fn gamma_enumerate(n: u32, x: u32, q: u32) -> Result<Vec<ColoredLabeledTree>> {
    check_gamma_size(n, x, q)?;
    let mut out = Vec::new();
    for_each_gamma(n, x, q, |t| out.push(t.clone()));
    Ok(out)
}

/// Members of Γ_{n,x,q} with `|int| + |lev_Y| = k + x`:
/// `C(n,k) C(k+n+x+q-2, n+q-1) (n+x+q-1)!`.
pub fn gamma_count_formula(n: u32, x: u32, q: u32, k: u32) -> BigInt {
    let (n, x, q, k) = (n as i64, x as i64, q as i64, k as i64);
    if n + x + q == 0 {
        return BigInt::zero();
    }
    binomial_int(n, k) * binomial_int(k + n + x + q - 2, n + q - 1) * factorial((n + x + q - 1) as u64)
}

/// Explicit counts of Γ_{n,x,q} split by `k = |int| + |lev_Y| - x`, entry k
/// of the returned vector. Results are cached, since every k needs the full pass.
pub fn gamma_profile(n: u32, x: u32, q: u32) -> Result<Vec<BigInt>> {
    type Cache = Mutex<HashMap<(u32, u32, u32), Vec<BigInt>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    check_gamma_size(n, x, q)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("profile cache").get(&(n, x, q)) {
        return Ok(hit.clone());
    }
    let mut counts = vec![0u64; n as usize + 1];
    for_each_gamma(n, x, q, |t| {
        let s = t.stats();
        let k = (s.internal_count + s.y_leaf_count) as i64 - x as i64;
        counts[k as usize] += 1;
    });
    let profile: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    cache.lock().expect("profile cache").insert((n, x, q), profile.clone());
    Ok(profile)
}

/// Constraint on `|int(T)| + |lev_Y(T)| - x`, the index k of the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatFilter {
    All,
    Equal(u32),
    AtMost(u32),
    Congruent { modulus: u32, residue: u32 },
}

impl StatFilter {
    fn admits(&self, k: i64) -> bool {
        match *self {
            StatFilter::All => true,
            StatFilter::Equal(e) => k == e as i64,
            StatFilter::AtMost(b) => k <= b as i64,
            StatFilter::Congruent { modulus, residue } => k.rem_euclid(modulus as i64) == residue as i64,
        }
    }
}

/// Weight of a tree as a function of its number of N-leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Unit,
    Sign,
    ZPower(Rational),
}

impl Weight {
    fn of(&self, n_leaves: usize) -> Rational {
        match self {
            Weight::Unit => Rational::one(),
            Weight::Sign => {
                if n_leaves.is_multiple_of(2) {
                    Rational::one()
                } else {
                    -Rational::one()
                }
            }
            Weight::ZPower(z) => pow_i(z, n_leaves as i64).expect("nonnegative exponent"),
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// `unit`, `sign`, or `z=<rational>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Weight::Unit),
            "sign" => Ok(Weight::Sign),
            _ => match s.strip_prefix("z=") {
                Some(v) => Ok(Weight::ZPower(parse_rational(v)?)),
                None => Err(Error::invalid(format!(
                    "unknown weight `{s}` (expected unit, sign or z=<value>)"
                ))),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Explicit,
    ShapeWeighted,
}

fn falling(m: usize, k: usize) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    ((m - k + 1)..=m).fold(BigInt::one(), |acc, v| acc * v)
}

/// Weighted count of the members of Γ_{n,x,q} admitted by `filter`.
///
/// The shape-weighted engine runs over shapes only. A shape with `I` internal
/// vertices and `L` leaves carries `P(L,q) · P(I,x) · n!` labelings, and the
/// colorings of its `L - q` free leaves are grouped by their number of Y-leaves.
pub fn gamma_count_weighted(
    n: u32,
    x: u32,
    q: u32,
    filter: StatFilter,
    weight: &Weight,
    mode: CountMode,
) -> Result<Rational> {
    let x_i = x as i64;
    match mode {
        CountMode::Explicit => {
            check_gamma_size(n, x, q)?;
            let mut total = Rational::zero();
            for_each_gamma(n, x, q, |t| {
                let s = t.stats();
                if filter.admits((s.internal_count + s.y_leaf_count) as i64 - x_i) {
                    total += weight.of(s.n_leaf_count);
                }
            });
            Ok(total)
        }
        CountMode::ShapeWeighted => {
            let size = (n + x + q) as usize;
            if size < 2 {
                return Err(Error::invalid("Γ_{n,x,q} needs n + x + q >= 2"));
            }
            let mut total = Rational::zero();
            for (leaves, shapes) in leaf_count_distribution(size - 1)? {
                let internal = size - leaves;
                let labelings = falling(leaves, q as usize) * falling(internal, x as usize) * factorial(n as u64);
                if labelings.is_zero() {
                    continue;
                }
                let free = leaves - q as usize;
                let mut colorings = Rational::zero();
                for y in 0..=free {
                    if filter.admits((internal + y) as i64 - x_i) {
                        colorings += int_to_rat(&binomial_int(free as i64, y as i64)) * weight.of(free - y);
                    }
                }
                total += int_to_rat(&(labelings * shapes)) * colorings;
            }
            Ok(total)
        }
    }
}

/// Number of shapes with each leaf count.
pub fn leaf_count_distribution(edges: usize) -> Result<BTreeMap<usize, BigInt>> {
    let mut out = BTreeMap::new();
    for t in enum_plane_trees(edges)? {
        *out.entry(t.leaf_count()).or_insert_with(BigInt::zero) += 1;
    }
    Ok(out)
}

/// Plane trees with bicolored leaves: Σ over shapes of 2^{leaves}.
pub fn bicolored_tree_count(edges: usize) -> Result<BigInt> {
    limits::check("bicolored tree edges", edges, limits::BICOLORED_EDGES)?;
    Ok(unchecked_plane_trees(edges)
        .iter()
        .map(|t| BigInt::one() << t.leaf_count())
        .sum())
}

/// Plane trees with bicolored leaves and an unordered pair of marked internal
/// vertices: Σ over shapes of C(internal, 2) · 2^{leaves}.
pub fn marked_bicolored_count(edges: usize) -> Result<BigInt> {
    if edges == 0 {
        return Err(Error::invalid("marked trees need at least one edge"));
    }
    limits::check("marked tree edges", edges, limits::MARKED_EDGES)?;
    Ok(unchecked_plane_trees(edges)
        .iter()
        .map(|t| binomial_int(t.internal_count() as i64, 2) << t.leaf_count())
        .sum())
}
