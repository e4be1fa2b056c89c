//! Multi-level (m-shot) subspace codes: partition trees of a subspace
//! alphabet along a subgroup series, component-code validation and assembly.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::group_action::FiniteGroup;
use crate::gu_partition::{fast_min_distance, PartitionError};
use crate::orbit_code::{generate_orbit, OrbitError};
use crate::subspace::{Subspace, SubspaceError};

/// Largest number of assembled codewords or component codewords.
pub const MULTISHOT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultishotError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabet is not closed under the group action")]
    NotClosed,
    #[error("orbits at level {level} have unequal sizes {sizes:?}")]
    UnequalOrbitSizes { level: usize, sizes: Vec<usize> },
    #[error("subgroup series is not nested at position {0}")]
    SeriesNotNested(usize),
    #[error("subgroup series is empty")]
    EmptySeries,
    #[error("level {level} out of range (tree has levels 0..={max})")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("tree is not nested at level {0}")]
    NotNested(usize),
    #[error("invalid path {0:?}")]
    BadPath(Vec<usize>),
    #[error("expected {expected} component codes, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("component {level} has alphabet {got}, the tree branches into {expected}")]
    AlphabetMismatch { level: usize, expected: usize, got: usize },
    #[error("component codes have different lengths")]
    LengthMismatch,
    #[error("codeword {0:?} is not a word of the declared length and alphabet")]
    BadCodeword(Vec<usize>),
    #[error("component code is empty")]
    EmptyCode,
    #[error("component codes do not meet the design distance")]
    NotValid,
    #[error("more than {0} codewords")]
    CapExceeded(usize),
    #[error("tuples have lengths {0} and {1}")]
    TupleLength(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Group(#[from] crate::group_action::GroupError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// A distance that is infinite for sets with fewer than two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntraDistance {
    Finite(u32),
    Unbounded,
}

impl IntraDistance {
    pub fn times(self, other: IntraDistance) -> IntraDistance {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a * b),
            _ => Self::Unbounded,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Self::Finite(a) => Some(a),
            Self::Unbounded => None,
        }
    }

    fn from_min(m: Option<u32>) -> Self {
        m.map_or(Self::Unbounded, Self::Finite)
    }
}

impl fmt::Display for IntraDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(a) => write!(f, "{a}"),
            Self::Unbounded => write!(f, "inf"),
        }
    }
}

impl Serialize for IntraDistance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(a) => s.serialize_u32(*a),
            Self::Unbounded => s.serialize_str("inf"),
        }
    }
}

/// `Σ_i d_S(U_i, V_i)`.
pub fn extended_distance(u: &[Subspace], v: &[Subspace]) -> Result<u32, MultishotError> {
    if u.len() != v.len() {
        return Err(MultishotError::TupleLength(u.len(), v.len()));
    }
    let mut total = 0;
    for (a, b) in u.iter().zip(v) {
        total += crate::subspace::subspace_distance(a, b)?;
    }
    Ok(total)
}

/// Orbits of `group` on `alphabet`, each sorted, ordered by smallest member.
pub fn orbits(group: &FiniteGroup, alphabet: &[Subspace]) -> Result<Vec<Vec<Subspace>>, MultishotError> {
    let set: HashSet<&Subspace> = alphabet.iter().collect();
    split_orbits(group, alphabet, &set)
}

fn split_orbits(
    group: &FiniteGroup,
    points: &[Subspace],
    closure: &HashSet<&Subspace>,
) -> Result<Vec<Vec<Subspace>>, MultishotError> {
    let mut sorted: Vec<&Subspace> = points.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut out = Vec::new();
    for p in sorted {
        if seen.contains(p) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for g in group.elements() {
            let img = group.act(g, p)?;
            if !closure.contains(&img) {
                return Err(MultishotError::NotClosed);
            }
            orbit.insert(img);
        }
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    /// Sorted members; the first is the node's representative.
    pub members: Vec<Subspace>,
    pub parent: Option<usize>,
    /// Position among the parent's children (the edge label).
    pub label: usize,
    pub children: Vec<usize>,
    /// Index of the level-1 ancestor (the congruence class).
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct TreeLevel {
    /// Order of the group whose orbits form this level, `None` for the root and appended leaves.
    pub group_order: Option<usize>,
    pub nodes: Vec<TreeNode>,
    /// Children per node of the previous level, when constant.
    pub branching: Option<usize>,
    /// Nodes of the previous level split into equally many children of equal size.
    pub nested: bool,
}

#[derive(Debug, Clone)]
pub struct PartitionTree {
    series: Vec<Arc<FiniteGroup>>,
    levels: Vec<TreeLevel>,
}

/// Builds `Γ_0 = S`, `Γ_1` = orbits of `series[0]`, `Γ_l` = orbits of
/// `series[l−1]` inside each `Γ_{l−1}` node, and a singleton leaf level if
/// the last group level is not already one.
pub fn build_alphabet_partition(alphabet: &[Subspace], series: &[FiniteGroup]) -> Result<PartitionTree, MultishotError> {
    if alphabet.is_empty() {
        return Err(MultishotError::EmptyAlphabet);
    }
    if series.is_empty() {
        return Err(MultishotError::EmptySeries);
    }
    for (i, w) in series.windows(2).enumerate() {
        if !w[1].is_subgroup_of(&w[0]) {
            return Err(MultishotError::SeriesNotNested(i + 1));
        }
    }
    let closure: HashSet<&Subspace> = alphabet.iter().collect();
    let mut root: Vec<Subspace> = alphabet.to_vec();
    root.sort();
    root.dedup();
    let mut levels = vec![TreeLevel {
        group_order: None,
        nodes: vec![TreeNode {
            members: root,
            parent: None,
            label: 0,
            children: Vec::new(),
            class: 0,
        }],
        branching: Some(1),
        nested: true,
    }];
    for (gi, g) in series.iter().enumerate() {
        let level = split_level(&mut levels, Some(g.order()), |members| split_orbits(g, members, &closure))?;
        if gi == 0 {
            let sizes: BTreeSet<usize> = level.nodes.iter().map(|n| n.members.len()).collect();
            if sizes.len() > 1 {
                return Err(MultishotError::UnequalOrbitSizes {
                    level: 1,
                    sizes: sizes.into_iter().collect(),
                });
            }
        }
        let done = level.nodes.iter().all(|n| n.members.len() == 1);
        levels.push(level);
        if done {
            break;
        }
    }
    if levels.last().unwrap().nodes.iter().any(|n| n.members.len() > 1) {
        let leaves = split_level(&mut levels, None, |members| Ok(members.iter().map(|m| vec![m.clone()]).collect()))?;
        levels.push(leaves);
    }
    Ok(PartitionTree {
        series: series.iter().cloned().map(Arc::new).collect(),
        levels,
    })
}

fn split_level(
    levels: &mut [TreeLevel],
    group_order: Option<usize>,
    mut split: impl FnMut(&[Subspace]) -> Result<Vec<Vec<Subspace>>, MultishotError>,
) -> Result<TreeLevel, MultishotError> {
    let depth = levels.len();
    let prev = levels.last_mut().unwrap();
    let mut nodes = Vec::new();
    for (pi, parent) in prev.nodes.iter_mut().enumerate() {
        let parts = split(&parent.members)?;
        for (label, members) in parts.into_iter().enumerate() {
            parent.children.push(nodes.len());
            let class = if depth == 1 { nodes.len() } else { parent.class };
            nodes.push(TreeNode {
                members,
                parent: Some(pi),
                label,
                children: Vec::new(),
                class,
            });
        }
    }
    let counts: BTreeSet<usize> = prev.nodes.iter().map(|n| n.children.len()).collect();
    let sizes: BTreeSet<usize> = nodes.iter().map(|n: &TreeNode| n.members.len()).collect();
    let nested = counts.len() == 1 && sizes.len() == 1;
    Ok(TreeLevel {
        group_order,
        nodes,
        branching: if counts.len() == 1 { counts.into_iter().next() } else { None },
        nested,
    })
}

/// How the structured count of one representative subset is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Reduced search with the deepest nontrivial proper subgroup of the series, else `Profile`.
    Auto,
    /// Distances from one point to the rest of its subset.
    Profile,
    /// Reduced search with `H = series[i]`.
    Reduced(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelDistance {
    pub level: usize,
    pub distance: IntraDistance,
    pub subsets: usize,
    pub subset_size: usize,
    /// Number of congruence classes with one representative scanned each.
    pub representatives: usize,
    pub fast_computations: usize,
    pub naive_computations: usize,
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

impl PartitionTree {
    pub fn levels(&self) -> &[TreeLevel] {
        &self.levels
    }

    /// `L`, the leaf level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn series(&self) -> &[Arc<FiniteGroup>] {
        &self.series
    }

    pub fn alphabet(&self) -> &[Subspace] {
        &self.levels[0].nodes[0].members
    }

    /// `p_l`, the number of children of each `Γ_{l−1}` node.
    pub fn branching(&self, level: usize) -> Option<usize> {
        self.levels.get(level).filter(|_| level > 0)?.branching
    }

    pub fn is_nested_to(&self, level: usize) -> bool {
        self.levels.iter().take(level + 1).all(|l| l.nested)
    }

    /// Node reached from the root by the edge labels `path`.
    pub fn node_at_path(&self, path: &[usize]) -> Result<&TreeNode, MultishotError> {
        if path.len() > self.depth() {
            return Err(MultishotError::BadPath(path.to_vec()));
        }
        let mut node = &self.levels[0].nodes[0];
        for (l, &a) in path.iter().enumerate() {
            let idx = *node.children.get(a).ok_or_else(|| MultishotError::BadPath(path.to_vec()))?;
            node = &self.levels[l + 1].nodes[idx];
        }
        Ok(node)
    }

    pub fn intrasubset_distance(&self, level: usize) -> Result<LevelDistance, MultishotError> {
        self.intrasubset_distance_with(level, CountMode::Auto)
    }

    /// `d_S(Γ_l)` with the structured (one representative per level-1 class)
    /// and naive (all pairs of every subset) computation counts.
    pub fn intrasubset_distance_with(&self, level: usize, mode: CountMode) -> Result<LevelDistance, MultishotError> {
        let lv = self.levels.get(level).ok_or(MultishotError::LevelOutOfRange {
            level,
            max: self.depth(),
        })?;
        let subsets = lv.nodes.len();
        let subset_size = lv.nodes.iter().map(|n| n.members.len()).max().unwrap_or(0);
        let naive = lv.nodes.iter().map(|n| choose2(n.members.len())).sum();
        if subset_size < 2 {
            return Ok(LevelDistance {
                level,
                distance: IntraDistance::Unbounded,
                subsets,
                subset_size,
                representatives: 0,
                fast_computations: 0,
                naive_computations: naive,
            });
        }
        if level == 0 {
            return Ok(self.root_distance(naive));
        }
        let group = &self.series[level - 1];
        let mut reps: Vec<&TreeNode> = Vec::new();
        let mut seen = BTreeSet::new();
        for n in &lv.nodes {
            if seen.insert(n.class) {
                reps.push(n);
            }
        }
        let h = match mode {
            CountMode::Profile => None,
            CountMode::Reduced(i) => Some(self.series.get(i).ok_or(MultishotError::SeriesNotNested(i))?.clone()),
            CountMode::Auto => self.series[level..]
                .iter()
                .rev()
                .find(|g| g.order() > 1 && g.order() < group.order())
                .cloned(),
        };
        let mut best: Option<u32> = None;
        let mut fast = 0;
        for n in &reps {
            let v = &n.members[0];
            let (d, c) = match &h {
                Some(h) => {
                    let code = generate_orbit(group, v)?;
                    let r = fast_min_distance(&code, h)?;
                    (Some(r.min_distance), r.computations)
                }
                None => (n.members[1..].iter().map(|w| v.dist(w)).min(), n.members.len() - 1),
            };
            fast += c;
            best = match (best, d) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        Ok(LevelDistance {
            level,
            distance: IntraDistance::from_min(best),
            subsets,
            subset_size,
            representatives: reps.len(),
            fast_computations: fast,
            naive_computations: naive,
        })
    }

    fn root_distance(&self, naive: usize) -> LevelDistance {
        // every pair can be moved by the top group so that its first point is a class representative
        let all = self.alphabet();
        let mut best = None;
        let mut fast = 0;
        for n in &self.levels[1].nodes {
            let v = &n.members[0];
            for w in all.iter().filter(|w| *w != v) {
                fast += 1;
                let d = v.dist(w);
                best = Some(best.map_or(d, |b: u32| b.min(d)));
            }
        }
        LevelDistance {
            level: 0,
            distance: IntraDistance::from_min(best),
            subsets: 1,
            subset_size: all.len(),
            representatives: self.levels[1].nodes.len(),
            fast_computations: fast,
            naive_computations: naive,
        }
    }

    /// Smallest `l` with `d_S(Γ_l) ≥ d`.
    pub fn first_level_reaching(&self, d: u32) -> Result<usize, MultishotError> {
        for l in 0..=self.depth() {
            if self.intrasubset_distance(l)?.distance >= IntraDistance::Finite(d) {
                return Ok(l);
            }
        }
        Ok(self.depth())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentCode {
    pub alphabet: usize,
    pub length: usize,
    pub codewords: Vec<Vec<usize>>,
    pub min_hamming: IntraDistance,
}

fn hamming(a: &[usize], b: &[usize]) -> u32 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
}

impl ComponentCode {
    pub fn new(alphabet: usize, length: usize, words: Vec<Vec<usize>>) -> Result<Self, MultishotError> {
        if words.is_empty() {
            return Err(MultishotError::EmptyCode);
        }
        if words.len() > MULTISHOT_CAP {
            return Err(MultishotError::CapExceeded(MULTISHOT_CAP));
        }
        for w in &words {
            if w.len() != length || w.iter().any(|&s| s >= alphabet) {
                return Err(MultishotError::BadCodeword(w.clone()));
            }
        }
        let mut codewords = words;
        codewords.sort();
        codewords.dedup();
        let mut best = None;
        for (i, a) in codewords.iter().enumerate() {
            for b in &codewords[i + 1..] {
                let d = hamming(a, b);
                best = Some(best.map_or(d, |x: u32| x.min(d)));
            }
        }
        Ok(Self {
            alphabet,
            length,
            codewords,
            min_hamming: IntraDistance::from_min(best),
        })
    }

    /// All `p^m` words.
    pub fn full(alphabet: usize, length: usize) -> Result<Self, MultishotError> {
        let total = (alphabet as u128).pow(length as u32);
        if total > MULTISHOT_CAP as u128 {
            return Err(MultishotError::CapExceeded(MULTISHOT_CAP));
        }
        Self::new(alphabet, length, all_words(alphabet, length, total as usize))
    }

    pub fn repetition(alphabet: usize, length: usize) -> Result<Self, MultishotError> {
        Self::new(alphabet, length, (0..alphabet).map(|a| vec![a; length]).collect())
    }

    /// Words whose symbols sum to 0 modulo `p`.
    pub fn single_parity(alphabet: usize, length: usize) -> Result<Self, MultishotError> {
        let total = (alphabet as u128).pow(length as u32);
        if total > MULTISHOT_CAP as u128 {
            return Err(MultishotError::CapExceeded(MULTISHOT_CAP));
        }
        let words = all_words(alphabet, length, total as usize)
            .into_iter()
            .filter(|w| w.iter().sum::<usize>() % alphabet.max(1) == 0)
            .collect();
        Self::new(alphabet, length, words)
    }

    /// One codeword per line, symbols separated by commas or whitespace; `#` starts a comment.
    pub fn parse(alphabet: usize, text: &str) -> Result<Self, MultishotError> {
        let mut words = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let w = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| MultishotError::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            words.push(w);
        }
        let length = words.first().map_or(0, Vec::len);
        Self::new(alphabet, length, words)
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

fn all_words(alphabet: usize, length: usize, total: usize) -> Vec<Vec<usize>> {
    (0..total)
        .map(|mut x| {
            let mut w = vec![0; length];
            for s in w.iter_mut().rev() {
                *s = x % alphabet;
                x /= alphabet;
            }
            w
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Validation {
    /// `L'`.
    pub levels: usize,
    pub valid: bool,
    /// `d_S(Γ_{l−1}) · d_H(𝔠_l)` for `l = 1..=L'`.
    pub products: Vec<IntraDistance>,
}

/// Checks `min_l d_S(Γ_{l−1})·d_H(𝔠_l) ≥ d` for `l ≤ L'`.
pub fn validate_component_codes(
    tree: &PartitionTree,
    components: &[ComponentCode],
    d: u32,
) -> Result<Validation, MultishotError> {
    let lp = tree.first_level_reaching(d)?;
    if components.len() != lp {
        return Err(MultishotError::ComponentCount {
            expected: lp,
            got: components.len(),
        });
    }
    if !tree.is_nested_to(lp) {
        let bad = (0..=lp).find(|&l| !tree.levels[l].nested).unwrap();
        return Err(MultishotError::NotNested(bad));
    }
    if components.windows(2).any(|w| w[0].length != w[1].length) {
        return Err(MultishotError::LengthMismatch);
    }
    let mut products = Vec::new();
    for (i, c) in components.iter().enumerate() {
        let l = i + 1;
        let p = tree.branching(l).ok_or(MultishotError::NotNested(l - 1))?;
        if c.alphabet != p {
            return Err(MultishotError::AlphabetMismatch {
                level: l,
                expected: p,
                got: c.alphabet,
            });
        }
        products.push(tree.intrasubset_distance(l - 1)?.distance.times(c.min_hamming));
    }
    let valid = products.iter().all(|p| *p >= IntraDistance::Finite(d));
    Ok(Validation {
        levels: lp,
        valid,
        products,
    })
}

#[derive(Debug, Clone)]
pub struct MultishotCodeword {
    /// Row `l` of the array `A` is the chosen codeword of `𝔠_{l+1}`.
    pub array: Vec<Vec<usize>>,
    pub shots: Vec<Subspace>,
}

#[derive(Debug, Clone)]
pub struct MultishotCode {
    pub m: usize,
    pub design_distance: u32,
    pub levels: usize,
    pub codewords: Vec<MultishotCodeword>,
}

/// Every choice of one codeword per component, mapped column by column to the
/// representative of the `Γ_{L'}` node on its path.
pub fn assemble(tree: &PartitionTree, components: &[ComponentCode], d: u32) -> Result<MultishotCode, MultishotError> {
    let v = validate_component_codes(tree, components, d)?;
    if !v.valid {
        return Err(MultishotError::NotValid);
    }
    let m = components.first().map_or(1, |c| c.length);
    let total = components.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()).filter(|&t| t <= MULTISHOT_CAP));
    let Some(total) = total else {
        return Err(MultishotError::CapExceeded(MULTISHOT_CAP));
    };
    let mut codewords = Vec::with_capacity(total);
    for mut x in 0..total {
        let mut choice = vec![0; components.len()];
        for (slot, c) in choice.iter_mut().zip(components).rev() {
            *slot = x % c.len();
            x /= c.len();
        }
        let array: Vec<Vec<usize>> = choice.iter().zip(components).map(|(&i, c)| c.codewords[i].clone()).collect();
        let shots = (0..m)
            .map(|col| {
                let path: Vec<usize> = array.iter().map(|row| row[col]).collect();
                tree.node_at_path(&path).map(|n| n.members[0].clone())
            })
            .collect::<Result<Vec<_>, _>>()?;
        codewords.push(MultishotCodeword { array, shots });
    }
    Ok(MultishotCode {
        m,
        design_distance: d,
        levels: v.levels,
        codewords,
    })
}

impl MultishotCode {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Minimum extended distance over all pairs, `None` for a single codeword.
    pub fn min_extended_distance(&self) -> Result<Option<u32>, MultishotError> {
        let mut best = None;
        for (i, a) in self.codewords.iter().enumerate() {
            for b in &self.codewords[i + 1..] {
                let d = extended_distance(&a.shots, &b.shots)?;
                best = Some(best.map_or(d, |x: u32| x.min(d)));
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldSpec;
    use crate::group_action::Ambient;
    use crate::subspace::enumerate_grassmannian;
    use proptest::prelude::*;

    fn gf16() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1, 4, &[1, 1, 0, 0, 1]).unwrap()
    }

    fn scalar(fs: &Arc<FieldSpec>, order: u32) -> FiniteGroup {
        FiniteGroup::scalar_subgroup(Ambient::field(fs.clone()), order).unwrap()
    }

    fn toy() -> PartitionTree {
        let fs = gf16();
        let all: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2).unwrap().collect();
        let orbs = orbits(&scalar(&fs, 15), &all).unwrap();
        let alphabet = orbs.into_iter().find(|o| o.len() == 15).unwrap();
        build_alphabet_partition(&alphabet, &[scalar(&fs, 15), scalar(&fs, 5), scalar(&fs, 1)]).unwrap()
    }

    #[test]
    fn extended_distance_basics() {
        let fs = gf16();
        let all: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2).unwrap().collect();
        let (a, b, c) = (&all[0], &all[1], &all[34]);
        assert_eq!(extended_distance(&[a.clone(), b.clone()], &[a.clone(), b.clone()]).unwrap(), 0);
        let d1 = a.dist(c);
        let d2 = b.dist(a);
        assert_eq!(extended_distance(&[a.clone(), b.clone()], &[c.clone(), a.clone()]).unwrap(), d1 + d2);
        assert_eq!(
            extended_distance(&[a.clone()], &[a.clone(), b.clone()]),
            Err(MultishotError::TupleLength(1, 2))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn extended_distance_is_metric(i in proptest::collection::vec(0usize..35, 6)) {
            let fs = gf16();
            let all: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2).unwrap().collect();
            let t = |k: usize| vec![all[i[2 * k]].clone(), all[i[2 * k + 1]].clone()];
            let (u, v, w) = (t(0), t(1), t(2));
            let uv = extended_distance(&u, &v).unwrap();
            prop_assert_eq!(uv, extended_distance(&v, &u).unwrap());
            prop_assert!(uv <= extended_distance(&u, &w).unwrap() + extended_distance(&w, &v).unwrap());
            prop_assert_eq!(uv == 0, u == v);
        }
    }

    #[test]
    fn toy_tree_shape() {
        let t = toy();
        let shape: Vec<(usize, usize)> = t.levels().iter().map(|l| (l.nodes.len(), l.nodes[0].members.len())).collect();
        assert_eq!(shape, vec![(1, 15), (1, 15), (3, 5), (15, 1)]);
        assert_eq!(t.depth(), 3);
        assert_eq!((t.branching(1), t.branching(2), t.branching(3)), (Some(1), Some(3), Some(5)));
        assert!(t.is_nested_to(3));
        assert_eq!(t.intrasubset_distance(3).unwrap().distance, IntraDistance::Unbounded);
        assert!(matches!(t.intrasubset_distance(4), Err(MultishotError::LevelOutOfRange { .. })));
        for l in 0..=3 {
            let d = t.intrasubset_distance(l).unwrap();
            let brute = t.levels()[l]
                .nodes
                .iter()
                .flat_map(|n| n.members.iter().enumerate().flat_map(move |(i, a)| n.members[i + 1..].iter().map(move |b| a.dist(b))))
                .min();
            assert_eq!(d.distance, IntraDistance::from_min(brute));
        }
        let leaf = t.node_at_path(&[0, 2, 4]).unwrap();
        assert_eq!(leaf.members.len(), 1);
        assert!(t.node_at_path(&[0, 3]).is_err());
    }

    #[test]
    fn toy_assemblies_meet_design_distance() {
        let t = toy();
        let mut checked = 0;
        for d in [2u32, 4, 6, 8] {
            let lp = t.first_level_reaching(d).unwrap();
            for m in 1..=3usize {
                let kinds = 3usize.pow(lp as u32);
                for k in 0..kinds {
                    let comps: Vec<ComponentCode> = (1..=lp)
                        .map(|l| {
                            let p = t.branching(l).unwrap();
                            match (k / 3usize.pow(l as u32 - 1)) % 3 {
                                0 => ComponentCode::full(p, m),
                                1 => ComponentCode::repetition(p, m),
                                _ => ComponentCode::single_parity(p, m),
                            }
                            .unwrap()
                        })
                        .collect();
                    let v = validate_component_codes(&t, &comps, d).unwrap();
                    if !v.valid {
                        assert!(matches!(assemble(&t, &comps, d), Err(MultishotError::NotValid)));
                        continue;
                    }
                    let code = assemble(&t, &comps, d).unwrap();
                    assert_eq!(code.len(), comps.iter().map(|c| c.len()).product::<usize>());
                    if let Some(md) = code.min_extended_distance().unwrap() {
                        assert!(md >= d);
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 5);
    }

    #[test]
    fn validation_rules() {
        let t = toy();
        let d0 = t.intrasubset_distance(0).unwrap().distance.finite().unwrap();
        let lp = t.first_level_reaching(2 * d0).unwrap();
        assert!(lp >= 2);
        let undersized: Vec<ComponentCode> = (1..=lp).map(|l| ComponentCode::full(t.branching(l).unwrap(), 2).unwrap()).collect();
        assert!(!validate_component_codes(&t, &undersized, 2 * d0).unwrap().valid);
        let wrong = vec![ComponentCode::full(2, 2).unwrap(); lp];
        assert!(matches!(
            validate_component_codes(&t, &wrong, 2 * d0),
            Err(MultishotError::AlphabetMismatch { .. })
        ));
        assert!(matches!(
            validate_component_codes(&t, &[], 2 * d0),
            Err(MultishotError::ComponentCount { .. })
        ));
    }

    #[test]
    fn single_shot_full_codes_hit_level_representatives() {
        let t = toy();
        for d in 1..=6 {
            let lp = t.first_level_reaching(d).unwrap();
            let comps: Vec<ComponentCode> = (1..=lp).map(|l| ComponentCode::full(t.branching(l).unwrap(), 1).unwrap()).collect();
            let v = validate_component_codes(&t, &comps, d).unwrap();
            match assemble(&t, &comps, d) {
                Ok(code) => {
                    assert!(v.valid);
                    let shots: BTreeSet<&Subspace> = code.codewords.iter().map(|c| &c.shots[0]).collect();
                    let reps: BTreeSet<&Subspace> = t.levels()[lp].nodes.iter().map(|n| &n.members[0]).collect();
                    assert_eq!(shots, reps);
                }
                Err(e) => {
                    assert!(!v.valid);
                    assert_eq!(e, MultishotError::NotValid);
                }
            }
        }
    }

    #[test]
    fn component_codes() {
        let f = ComponentCode::full(3, 2).unwrap();
        assert_eq!((f.len(), f.min_hamming), (9, IntraDistance::Finite(1)));
        let r = ComponentCode::repetition(3, 4).unwrap();
        assert_eq!((r.len(), r.min_hamming), (3, IntraDistance::Finite(4)));
        let p = ComponentCode::single_parity(3, 3).unwrap();
        assert_eq!((p.len(), p.min_hamming), (9, IntraDistance::Finite(2)));
        assert_eq!(ComponentCode::repetition(1, 3).unwrap().min_hamming, IntraDistance::Unbounded);
        let parsed = ComponentCode::parse(2, "0,0,0\n1 1 1 # comment\n").unwrap();
        assert_eq!(parsed.min_hamming, IntraDistance::Finite(3));
        assert!(matches!(ComponentCode::parse(2, "0,2"), Err(MultishotError::BadCodeword(_))));
        assert_eq!(IntraDistance::Finite(3).times(IntraDistance::Unbounded), IntraDistance::Unbounded);
        assert_eq!(serde_json::to_string(&IntraDistance::Unbounded).unwrap(), "\"inf\"");
    }

    #[test]
    fn unequal_orbits_and_closure() {
        let fs = gf16();
        let all: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2).unwrap().collect();
        assert!(matches!(
            build_alphabet_partition(&all, &[scalar(&fs, 15)]),
            Err(MultishotError::UnequalOrbitSizes { level: 1, .. })
        ));
        assert_eq!(
            build_alphabet_partition(&all[..3], &[scalar(&fs, 15)]).unwrap_err(),
            MultishotError::NotClosed
        );
    }
}
