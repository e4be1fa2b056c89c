//! Orbit codes `C_G(V) = {Vg : g ∈ G}` with stabilizers, minimum distances,
//! distance profiles, spread codes and Voronoi regions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::finite_field::FieldSpec;
use crate::group_action::{Ambient, FiniteGroup, GroupElement, GroupError};
use crate::subspace::{Subspace, SubspaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("a code with a single codeword has no minimum distance")]
    Singleton,
    #[error("subspace is not a codeword")]
    NotCodeword,
    #[error("{r} does not divide {n}")]
    SpreadDivisibility { r: usize, n: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

/// Multiset of subspace distances, `distance → multiplicity`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DistanceMultiset(pub BTreeMap<u32, usize>);

/// Distances from one codeword to all the others.
pub type DistanceProfile = DistanceMultiset;

impl DistanceMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, d: u32) {
        *self.0.entry(d).or_default() += 1;
    }

    pub fn merge(&mut self, other: &Self) {
        for (&d, &c) in &other.0 {
            *self.0.entry(d).or_default() += c;
        }
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn min_distance(&self) -> Option<u32> {
        self.0.keys().next().copied()
    }

    pub fn get(&self, d: u32) -> usize {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }

    pub fn from_pairs(pairs: &[(u32, usize)]) -> Self {
        Self(pairs.iter().copied().filter(|&(_, c)| c > 0).collect())
    }
}

impl FromIterator<u32> for DistanceMultiset {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut m = Self::new();
        for d in iter {
            m.add(d);
        }
        m
    }
}

/// Written as a polynomial in `w`, e.g. `7w^2 + 14w^4 + 28w^6`.
impl fmt::Display for DistanceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.iter().map(|(d, c)| format!("{c}w^{d}")).collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub d: Option<u32>,
    pub k: usize,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "({}, {}, {}, {})", self.n, self.m, d, self.k),
            None => write!(f, "({}, {}, -, {})", self.n, self.m, self.k),
        }
    }
}

#[derive(Clone)]
pub struct OrbitCode {
    initial: Subspace,
    group: Arc<FiniteGroup>,
    codewords: Vec<Subspace>,
    transporter: Vec<usize>,
    stabilizer: FiniteGroup,
}

impl fmt::Debug for OrbitCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitCode({} codewords of dim {})", self.len(), self.dim())
    }
}

/// The orbit of `v` under `group`, with its stabilizer.
pub fn generate_orbit(group: &Arc<FiniteGroup>, v: &Subspace) -> Result<OrbitCode, OrbitError> {
    let mut first_hit: HashMap<Subspace, usize> = HashMap::new();
    let mut stab = Vec::new();
    for (i, g) in group.elements().iter().enumerate() {
        let w = group.act(g, v)?;
        if w == *v {
            stab.push(g.clone());
        }
        first_hit.entry(w).or_insert(i);
    }
    let mut pairs: Vec<(Subspace, usize)> = first_hit.into_iter().collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let (codewords, transporter) = pairs.into_iter().unzip();
    let stabilizer = FiniteGroup::from_closed(group.ambient().clone(), group.family(), stab);
    Ok(OrbitCode {
        initial: v.clone(),
        group: group.clone(),
        codewords,
        transporter,
        stabilizer,
    })
}

impl OrbitCode {
    pub fn initial(&self) -> &Subspace {
        &self.initial
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ambient(&self) -> &Ambient {
        self.group.ambient()
    }

    /// Codewords in canonical order.
    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.initial.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.initial.ambient_dim()
    }

    pub fn stabilizer(&self) -> &FiniteGroup {
        &self.stabilizer
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.codewords.binary_search(s).ok()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.index_of(s).is_some()
    }

    /// A group element taking the initial subspace to `c`.
    pub fn transporter(&self, c: &Subspace) -> Result<&GroupElement, OrbitError> {
        let i = self.index_of(c).ok_or(OrbitError::NotCodeword)?;
        Ok(&self.group.elements()[self.transporter[i]])
    }

    /// `d = min_{c ≠ V} d_S(V, c)`, valid for any orbit code since `G` acts by isometries.
    pub fn min_distance_naive(&self) -> Result<u32, OrbitError> {
        self.codewords
            .iter()
            .filter(|c| **c != self.initial)
            .map(|c| self.initial.dist(c))
            .min()
            .ok_or(OrbitError::Singleton)
    }

    /// Minimum over all unordered codeword pairs.
    pub fn min_distance_exhaustive(&self) -> Result<u32, OrbitError> {
        min_pairwise_distance(&self.codewords, 1).ok_or(OrbitError::Singleton)
    }

    /// Exhaustive minimum with the outer loop split across `threads` workers.
    pub fn min_distance_exhaustive_par(&self, threads: usize) -> Result<u32, OrbitError> {
        min_pairwise_distance(&self.codewords, threads).ok_or(OrbitError::Singleton)
    }

    pub fn parameters(&self) -> CodeParameters {
        CodeParameters {
            n: self.ambient_dim(),
            m: self.len(),
            d: self.min_distance_naive().ok(),
            k: self.dim(),
        }
    }

    pub fn distance_profile(&self, c: &Subspace) -> Result<DistanceProfile, OrbitError> {
        distance_profile(&self.codewords, c)
    }

    pub fn voronoi_region(&self, ambient: &[Subspace], c: &Subspace, mode: VoronoiMode) -> Result<Vec<Subspace>, OrbitError> {
        voronoi_region(&self.codewords, ambient, c, mode)
    }
}

/// Minimum distance over unordered pairs of a list, `None` below two elements.
pub fn min_pairwise_distance(words: &[Subspace], threads: usize) -> Option<u32> {
    let scan = |rows: &mut dyn Iterator<Item = usize>| {
        let mut best: Option<u32> = None;
        for i in rows {
            for w in &words[i + 1..] {
                let d = words[i].dist(w);
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    };
    let threads = threads.max(1);
    if threads == 1 || words.len() < 64 {
        return scan(&mut (0..words.len()));
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| s.spawn(move || scan(&mut (t..words.len()).step_by(threads))))
            .collect();
        handles.into_iter().filter_map(|h| h.join().expect("worker panicked")).min()
    })
}

pub fn distance_profile(codewords: &[Subspace], c: &Subspace) -> Result<DistanceProfile, OrbitError> {
    if !codewords.contains(c) {
        return Err(OrbitError::NotCodeword);
    }
    Ok(codewords.iter().filter(|w| *w != c).map(|w| c.dist(w)).collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum VoronoiMode {
    /// `{x : d(c, x) = min_{c2 ∈ C} d(c2, x)}`, ties included.
    #[default]
    Literal,
    /// Like `Literal`, with the minimum taken over codewords other than `x` itself.
    ExcludeSelf,
}

pub fn voronoi_region(
    codewords: &[Subspace],
    ambient: &[Subspace],
    c: &Subspace,
    mode: VoronoiMode,
) -> Result<Vec<Subspace>, OrbitError> {
    if !codewords.contains(c) {
        return Err(OrbitError::NotCodeword);
    }
    let region = ambient
        .iter()
        .filter(|x| {
            let best = codewords
                .iter()
                .filter(|c2| mode == VoronoiMode::Literal || *c2 != *x)
                .map(|c2| c2.dist(x))
                .min();
            best.is_some_and(|b| c.dist(x) == b)
        })
        .cloned()
        .collect();
    Ok(region)
}

/// Orbit of the subfield `F_{q^r}` under `⟨α⟩`.
pub fn spread_code(field: Arc<FieldSpec>, r: usize) -> Result<OrbitCode, OrbitError> {
    let n = field.degree();
    if r == 0 || n % r != 0 {
        return Err(OrbitError::SpreadDivisibility { r, n });
    }
    let q = field.base().order();
    let step = field.multiplicative_order() / (q.pow(r as u32) - 1);
    let exps: Vec<u32> = (0..r as u32).map(|t| t * step).collect();
    // for r = 1 the subfield is F_q = span{1}
    let v = Subspace::from_field_elements(&field, &exps)?;
    let group = Arc::new(FiniteGroup::scalar_subgroup(
        Ambient::field(field.clone()),
        field.multiplicative_order(),
    )?);
    generate_orbit(&group, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_action::DEFAULT_GROUP_CAP;
    use crate::subspace::enumerate_grassmannian;

    fn cyclic(fs: &Arc<FieldSpec>) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::scalar_subgroup(Ambient::field(fs.clone()), fs.multiplicative_order()).unwrap())
    }

    fn gf64() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1, 6, &[1, 1, 0, 0, 0, 0, 1]).unwrap()
    }

    fn gf16() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1, 4, &[1, 1, 0, 0, 1]).unwrap()
    }

    fn check_orbit_invariants(code: &OrbitCode) {
        assert_eq!(code.len() * code.stabilizer().order(), code.group().order());
        assert!(code.codewords().iter().all(|c| c.dim() == code.dim()));
        if code.len() > 1 {
            let d = code.min_distance_naive().unwrap();
            assert_eq!(d, code.min_distance_exhaustive().unwrap());
            assert_eq!(d % 2, 0);
            assert!(d as usize <= 2 * code.dim());
        }
        let dp = code.distance_profile(code.initial()).unwrap();
        assert_eq!(dp.total(), code.len() - 1);
        for c in code.codewords() {
            assert_eq!(code.distance_profile(c).unwrap(), dp);
        }
    }

    #[test]
    fn cyclic_sixty_three_code() {
        let fs = gf64();
        let v = Subspace::from_field_elements(&fs, &[1, 8, 12, 26, 27, 32, 35]).unwrap();
        assert_eq!(v.dim(), 3);
        let code = generate_orbit(&cyclic(&fs), &v).unwrap();
        assert_eq!(
            code.parameters(),
            CodeParameters {
                n: 6,
                m: 63,
                d: Some(4),
                k: 3
            }
        );
        assert_eq!(code.stabilizer().order(), 1);
        check_orbit_invariants(&code);
    }

    #[test]
    fn trivial_group_gives_singleton() {
        let fs = gf64();
        let v = Subspace::from_field_elements(&fs, &[0, 1, 2]).unwrap();
        let g = Arc::new(FiniteGroup::generate(Ambient::field(fs), &[], DEFAULT_GROUP_CAP).unwrap());
        let code = generate_orbit(&g, &v).unwrap();
        assert_eq!(code.codewords(), &[v]);
        assert_eq!(code.min_distance_naive(), Err(OrbitError::Singleton));
        assert_eq!(code.parameters().d, None);
    }

    #[test]
    fn subfield_orbit_in_gf16() {
        let fs = gf16();
        let v3 = Subspace::from_field_elements(&fs, &[0, 5, 10]).unwrap();
        let code = generate_orbit(&cyclic(&fs), &v3).unwrap();
        assert_eq!(code.len(), 5);
        let stab: Vec<_> = code.stabilizer().elements().to_vec();
        assert_eq!(
            stab,
            vec![GroupElement::FieldScalar(0), GroupElement::FieldScalar(5), GroupElement::FieldScalar(10)]
        );
        check_orbit_invariants(&code);
    }

    #[test]
    fn three_orbits_cover_g2_4_2() {
        let fs = gf16();
        let g = cyclic(&fs);
        let sizes: Vec<usize> = [[0u32, 1, 4], [0, 2, 8], [0, 5, 10]]
            .iter()
            .map(|e| generate_orbit(&g, &Subspace::from_field_elements(&fs, e).unwrap()).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![15, 15, 5]);
    }

    #[test]
    fn stabilizers_are_subgroups() {
        let fs = gf64();
        let g = cyclic(&fs);
        for v in enumerate_grassmannian(fs.base().clone(), 6, 3).unwrap().step_by(70).take(20) {
            let code = generate_orbit(&g, &v).unwrap();
            let st = code.stabilizer();
            for a in st.elements() {
                for b in st.elements() {
                    assert!(st.contains(&st.compose(a, b).unwrap()));
                }
            }
            check_orbit_invariants(&code);
        }
        let f8 = Subspace::from_field_elements(&fs, &[0, 9, 18]).unwrap();
        let code = generate_orbit(&g, &f8).unwrap();
        assert_eq!(code.stabilizer().order(), 7);
    }

    #[test]
    fn spread_codes() {
        let s = spread_code(gf64(), 3).unwrap();
        assert_eq!(s.len(), 9);
        for (i, a) in s.codewords().iter().enumerate() {
            for b in &s.codewords()[i + 1..] {
                assert_eq!(a.dist(b), 6);
            }
        }
        let s4 = spread_code(gf16(), 2).unwrap();
        assert_eq!(s4.len(), 5);
        assert_eq!(s4.min_distance_exhaustive().unwrap(), 4);
        let whole = spread_code(gf16(), 4).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(spread_code(gf64(), 4).unwrap_err(), OrbitError::SpreadDivisibility { r: 4, n: 6 });
        let lines = spread_code(gf16(), 1).unwrap();
        assert_eq!(lines.len(), 15);
    }

    /// The (6,63,4,3) code checked with a parallel scan.
    #[test]
    fn parallel_exhaustive_matches() {
        let fs = gf64();
        let v = Subspace::from_field_elements(&fs, &[1, 8, 12, 26, 27, 32, 35]).unwrap();
        let code = generate_orbit(&cyclic(&fs), &v).unwrap();
        assert_eq!(code.min_distance_exhaustive_par(4).unwrap(), 4);
    }

    #[test]
    fn voronoi_regions() {
        let fs = gf16();
        let g = cyclic(&fs);
        let ambient: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2).unwrap().collect();
        let v1 = Subspace::from_field_elements(&fs, &[0, 1, 4]).unwrap();
        let code = generate_orbit(&g, &v1).unwrap();

        let single = generate_orbit(
            &Arc::new(FiniteGroup::generate(Ambient::field(fs.clone()), &[], 10).unwrap()),
            &v1,
        )
        .unwrap();
        assert_eq!(single.voronoi_region(&ambient, &v1, VoronoiMode::Literal).unwrap().len(), 35);

        let region = code.voronoi_region(&ambient, &v1, VoronoiMode::Literal).unwrap();
        assert!(region.contains(&v1));
        let others: Vec<_> = region.iter().filter(|x| code.contains(x) && **x != v1).collect();
        assert!(others.is_empty());

        let sym = GroupElement::FieldScalar(11);
        let image = g.act(&sym, &v1).unwrap();
        let mut moved: Vec<Subspace> = region.iter().map(|x| g.act(&sym, x).unwrap()).collect();
        moved.sort();
        let mut target = code.voronoi_region(&ambient, &image, VoronoiMode::Literal).unwrap();
        target.sort();
        assert_eq!(moved, target);

        assert_eq!(
            code.voronoi_region(&ambient, &Subspace::from_field_elements(&fs, &[0, 5, 10]).unwrap(), VoronoiMode::Literal),
            Err(OrbitError::NotCodeword)
        );
    }

    #[test]
    fn distance_multiset_display() {
        let m = DistanceMultiset::from_pairs(&[(2, 7), (4, 14), (6, 28)]);
        assert_eq!(m.to_string(), "7w^2 + 14w^4 + 28w^6");
        assert_eq!(m.total(), 49);
        assert_eq!(m.min_distance(), Some(2));
    }

    #[test]
    fn two_codeword_profile() {
        let fs = gf16();
        let v = Subspace::from_field_elements(&fs, &[0, 1, 4]).unwrap();
        let g = Arc::new(FiniteGroup::scalar_subgroup(Ambient::field(fs.clone()), 15).unwrap());
        let full = generate_orbit(&g, &v).unwrap();
        let pair = [full.codewords()[0].clone(), full.codewords()[1].clone()];
        let dp = distance_profile(&pair, &pair[0]).unwrap();
        assert_eq!(dp.total(), 1);
    }
}
