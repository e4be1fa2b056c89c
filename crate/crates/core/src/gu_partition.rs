//! Geometrically uniform partitions `C_{G/H}(V)` of orbit codes, distance
//! multisets, profile polynomials and the reduced minimum-distance search.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::group_action::{cosets, FiniteGroup, GroupElement, GroupError};
use crate::orbit_code::{DistanceMultiset, OrbitCode, OrbitError};
use crate::subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("subgroup is not contained in the code's group")]
    NotSubgroup,
    #[error("subgroup is not normal in the non-Abelian code group")]
    NotNormal,
    #[error("the two sets overlap")]
    Overlap,
    #[error("{0} is not an element of the code's group")]
    InvalidCosetRep(String),
    #[error("subcode index {index} out of range (t = {t})")]
    BadIndex { index: usize, t: usize },
    #[error("series is not nested at position {0}")]
    NotNested(usize),
    #[error("series is empty")]
    EmptySeries,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

#[derive(Debug, Clone)]
pub struct Subcode {
    /// `g_i` with `g_1` the identity.
    pub representative: GroupElement,
    /// `g_i V`.
    pub point: Subspace,
    /// `C_H(g_i V)` in canonical order.
    pub codewords: Vec<Subspace>,
}

#[derive(Debug, Clone)]
pub struct GUPartition {
    code: OrbitCode,
    subgroup: FiniteGroup,
    subcodes: Vec<Subcode>,
    index: usize,
    member: HashMap<Subspace, usize>,
}

/// Splits `code` into the subcodes `C_H(g_i V)` over the cosets `g_i H`.
///
/// Cosets whose subcodes coincide (possible when the stabilizer of `V` is not
/// inside `H`) are merged, keeping the first representative.
pub fn partition(code: &OrbitCode, h: &FiniteGroup) -> Result<GUPartition, PartitionError> {
    let g = code.group();
    if !h.is_subgroup_of(g) {
        return Err(PartitionError::NotSubgroup);
    }
    if !g.is_abelian() && !h.is_normal_in(g) {
        return Err(PartitionError::NotNormal);
    }
    let cs = cosets(g, h)?;
    let index = cs.len();
    let mut subcodes: Vec<Subcode> = Vec::new();
    let mut member: HashMap<Subspace, usize> = HashMap::new();
    for c in cs {
        let point = g.act(&c.representative, code.initial())?;
        if member.contains_key(&point) {
            continue;
        }
        let words: BTreeSet<Subspace> = c
            .elements
            .iter()
            .map(|x| g.act(x, code.initial()))
            .collect::<Result<_, _>>()?;
        let id = subcodes.len();
        for w in &words {
            member.insert(w.clone(), id);
        }
        subcodes.push(Subcode {
            representative: c.representative,
            point,
            codewords: words.into_iter().collect(),
        });
    }
    Ok(GUPartition {
        code: code.clone(),
        subgroup: h.clone(),
        subcodes,
        index,
        member,
    })
}

impl GUPartition {
    pub fn code(&self) -> &OrbitCode {
        &self.code
    }

    pub fn subgroup(&self) -> &FiniteGroup {
        &self.subgroup
    }

    pub fn subcodes(&self) -> &[Subcode] {
        &self.subcodes
    }

    /// Number of distinct subcodes.
    pub fn t(&self) -> usize {
        self.subcodes.len()
    }

    /// `|G/H|`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Index of the subcode containing `s`.
    pub fn subcode_of(&self, s: &Subspace) -> Option<usize> {
        self.member.get(s).copied()
    }

    pub fn subsets(&self) -> Vec<Vec<Subspace>> {
        self.subcodes.iter().map(|s| s.codewords.clone()).collect()
    }

    /// Subcode holding `g^{-1}·V` for the representative `g` of subcode `i`.
    pub fn inverse_partner(&self, i: usize) -> Result<usize, PartitionError> {
        let g = self.code.group();
        let inv = g.inverse(&self.subcodes[i].representative)?;
        let p = g.act(&inv, self.code.initial())?;
        Ok(self.subcode_of(&p).expect("orbit point lies in some subcode"))
    }

    /// `F(w, g, C_H(V_i))`: the distances between `C_H(V_i)` and `C_H(g V_i)` over all pairs.
    pub fn profile_polynomial(&self, g: &GroupElement, i: usize) -> Result<DistanceMultiset, PartitionError> {
        let grp = self.code.group();
        if !grp.contains(g) {
            return Err(PartitionError::InvalidCosetRep(g.to_string()));
        }
        let src = self.subcodes.get(i).ok_or(PartitionError::BadIndex { index: i, t: self.t() })?;
        let moved = grp.act(g, &src.point)?;
        let j = self.subcode_of(&moved).expect("orbit point lies in some subcode");
        Ok(cross_distances(&src.codewords, &self.subcodes[j].codewords))
    }

    pub fn is_fair(&self) -> bool {
        is_fair(&self.subsets())
    }

    /// `F(w, g_i, C_H(g_j V))` is independent of `j` for every representative `g_i`.
    pub fn is_strongly_homogeneous(&self) -> Result<bool, PartitionError> {
        for s in &self.subcodes {
            let first = self.profile_polynomial(&s.representative, 0)?;
            for j in 1..self.t() {
                if self.profile_polynomial(&s.representative, j)? != first {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn cross_distances(a: &[Subspace], b: &[Subspace]) -> DistanceMultiset {
    a.iter().flat_map(|x| b.iter().map(move |y| x.dist(y))).collect()
}

/// `D_S(B)` over unordered pairs.
pub fn intradistance(b: &[Subspace]) -> DistanceMultiset {
    let mut m = DistanceMultiset::new();
    for (i, x) in b.iter().enumerate() {
        for y in &b[i + 1..] {
            m.add(x.dist(y));
        }
    }
    m
}

/// `D_S(B1, B2)` for disjoint sets.
pub fn interdistance(b1: &[Subspace], b2: &[Subspace]) -> Result<DistanceMultiset, PartitionError> {
    let s1: BTreeSet<&Subspace> = b1.iter().collect();
    if b2.iter().any(|y| s1.contains(y)) {
        return Err(PartitionError::Overlap);
    }
    Ok(cross_distances(b1, b2))
}

/// Distinct subsets of equal size with equal intradistance multisets.
pub fn is_fair(subsets: &[Vec<Subspace>]) -> bool {
    let Some(first) = subsets.first() else {
        return true;
    };
    let distinct: BTreeSet<BTreeSet<&Subspace>> = subsets.iter().map(|s| s.iter().collect()).collect();
    if distinct.len() != subsets.len() || subsets.iter().any(|s| s.len() != first.len()) {
        return false;
    }
    let d0 = intradistance(first);
    subsets[1..].iter().all(|s| intradistance(s) == d0)
}

#[derive(Debug, Clone, Serialize)]
pub struct FastMinDistance {
    pub min_distance: u32,
    /// `min_{i ∈ I} D_S({V}, C_H(g_i V))`.
    pub cross_coset_min: Option<u32>,
    /// `min D_S({V}, C_H(V))`, when it had to be evaluated.
    pub intra_min: Option<u32>,
    /// One representative per inverse pair of nontrivial subcodes.
    pub representatives: Vec<String>,
    /// `Σ_{i ∈ I} |C_H(g_i V)|`.
    pub computations: usize,
    pub intra_computations: usize,
    pub naive_computations: usize,
    pub fallback: bool,
}

/// Minimum distance from `V` to one subcode of each inverse pair of cosets.
///
/// The distances inside `C_H(V)` are checked as well (unless the cross-coset
/// minimum is already 2), since they need not be covered by the cross-coset
/// values; they are counted separately in `intra_computations`. Non-Abelian
/// groups fall back to the naive scan.
pub fn fast_min_distance(code: &OrbitCode, h: &FiniteGroup) -> Result<FastMinDistance, PartitionError> {
    let naive = code.len().saturating_sub(1);
    if code.len() < 2 {
        return Err(OrbitError::Singleton.into());
    }
    if !code.group().is_abelian() {
        log::warn!("code group is not Abelian; using the naive minimum-distance scan");
        return Ok(FastMinDistance {
            min_distance: code.min_distance_naive()?,
            cross_coset_min: None,
            intra_min: None,
            representatives: Vec::new(),
            computations: naive,
            intra_computations: 0,
            naive_computations: naive,
            fallback: true,
        });
    }
    let part = partition(code, h)?;
    let v = code.initial();
    let mut reps = Vec::new();
    let mut cross: Option<u32> = None;
    let mut computations = 0;
    for i in 1..part.t() {
        let j = part.inverse_partner(i)?;
        if j != i && part.subcodes[j].representative < part.subcodes[i].representative {
            continue;
        }
        let s = &part.subcodes[i];
        reps.push(s.representative.to_string());
        computations += s.codewords.len();
        let m = s.codewords.iter().map(|c| v.dist(c)).min();
        cross = cross.min(m).or(cross).or(m);
    }
    let mut intra_min = None;
    let mut intra_computations = 0;
    if cross != Some(2) {
        let own = &part.subcodes[0].codewords;
        intra_computations = own.len() - 1;
        intra_min = own.iter().filter(|c| *c != v).map(|c| v.dist(c)).min();
    }
    let min_distance = [cross, intra_min].into_iter().flatten().min().expect("at least two codewords");
    Ok(FastMinDistance {
        min_distance,
        cross_coset_min: cross,
        intra_min,
        representatives: reps,
        computations,
        intra_computations,
        naive_computations: naive,
        fallback: false,
    })
}

/// `⌊(r−1)/2⌋ · s/(q−1)` for `q^n − 1 = r·s`, or `None` when the divisions are not exact.
pub fn reduced_count_formula(q: u64, n: u32, r: u64) -> Option<u64> {
    let total = q.pow(n) - 1;
    if r == 0 || total % r != 0 {
        return None;
    }
    let s = total / r;
    if s % (q - 1) != 0 {
        return None;
    }
    Some((r - 1) / 2 * (s / (q - 1)))
}

#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub group_order: usize,
    pub subsets: Vec<Vec<Subspace>>,
}

#[derive(Debug, Clone)]
pub struct ChainPartition {
    pub levels: Vec<ChainLevel>,
}

/// Successive partitions of `code` along a nested series of subgroups.
pub fn chain_partition(code: &OrbitCode, series: &[FiniteGroup]) -> Result<ChainPartition, PartitionError> {
    if series.is_empty() {
        return Err(PartitionError::EmptySeries);
    }
    for (i, w) in series.windows(2).enumerate() {
        if !w[1].is_subgroup_of(&w[0]) {
            return Err(PartitionError::NotNested(i + 1));
        }
    }
    let mut levels: Vec<ChainLevel> = Vec::new();
    for h in series {
        let p = partition(code, h)?;
        let subsets = p.subsets();
        if let Some(prev) = levels.last() {
            let refines = subsets.iter().all(|s| {
                prev.subsets.iter().any(|big| s.iter().all(|x| big.binary_search(x).is_ok()))
            });
            if !refines {
                return Err(PartitionError::NotNested(levels.len()));
            }
        }
        levels.push(ChainLevel {
            group_order: h.order(),
            subsets,
        });
    }
    Ok(ChainPartition { levels })
}

impl ChainPartition {
    pub fn is_fair_chain(&self) -> bool {
        self.levels.iter().all(|l| is_fair(&l.subsets))
    }
}

pub fn is_fair_chain(levels: &[Vec<Vec<Subspace>>]) -> bool {
    levels.iter().all(|l| is_fair(l))
}
