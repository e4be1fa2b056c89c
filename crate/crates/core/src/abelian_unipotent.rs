//! Abelian orbit codes from the unipotent group `{[[I, H], [0, I]]}` with the
//! displacement blocks `H` drawn from a rank-metric code.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::finite_field::{BaseField, FieldError, FieldSpec};
use crate::group_action::{Ambient, Family, FiniteGroup, GroupElement, GroupError, DEFAULT_GROUP_CAP};
use crate::matrix_fq::{MatrixError, MatrixFq};
use crate::orbit_code::{generate_orbit, OrbitCode, OrbitError};
use crate::subspace::Subspace;

pub const RANK_CODE_CAP: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("generator of shape {got:?} is not {r}x{r}")]
    NotSquare { r: usize, got: (usize, usize) },
    #[error("span of size {size} exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("need 1 <= d <= r, got d = {d}, r = {r}")]
    BadDistance { r: usize, d: usize },
    #[error("layout matrix has shape {shape:?} and rank {rank}; need k x 2r of full rank k with split l <= k")]
    BadLayout { shape: (usize, usize), rank: usize },
    #[error("rank-metric code has size {code}, layout needs {layout}")]
    SizeMismatch { code: usize, layout: usize },
    #[error("layout is not of the form [I_r | A]")]
    NotSpecialLayout,
    #[error("n = {0} must be even")]
    OddLength(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// An `F_q`-linear space of `r × r` matrices, listed in full.
#[derive(Debug, Clone)]
pub struct RankMetricCode {
    field: Arc<BaseField>,
    r: usize,
    generators: Vec<MatrixFq>,
    basis: Vec<MatrixFq>,
    codewords: Vec<MatrixFq>,
    min_rank: Option<usize>,
}

/// Spans `generators` and computes the minimum rank of a nonzero codeword.
pub fn build_rank_metric_code(field: Arc<BaseField>, r: usize, generators: &[MatrixFq]) -> Result<RankMetricCode, AbelianError> {
    for g in generators {
        if g.shape() != (r, r) {
            return Err(AbelianError::NotSquare { r, got: g.shape() });
        }
    }
    let basis = independent_subset(&field, r, generators)?;
    let q = field.order() as u128;
    let size = q.pow(basis.len() as u32);
    if size > RANK_CODE_CAP {
        return Err(AbelianError::CapExceeded { size, cap: RANK_CODE_CAP });
    }
    let mut codewords = vec![MatrixFq::zeros(field.clone(), r, r)];
    for b in &basis {
        let prev = codewords.len();
        for c in 1..field.order() as u16 {
            let scaled = b.scale(c);
            for i in 0..prev {
                codewords.push(codewords[i].add(&scaled)?);
            }
        }
    }
    let min_rank = codewords.iter().skip(1).map(MatrixFq::rank).min();
    Ok(RankMetricCode {
        field,
        r,
        generators: generators.to_vec(),
        basis,
        codewords,
        min_rank,
    })
}

/// Greedy maximal independent subset, by rank of the flattened matrices.
fn independent_subset(field: &Arc<BaseField>, r: usize, gens: &[MatrixFq]) -> Result<Vec<MatrixFq>, AbelianError> {
    let mut basis: Vec<MatrixFq> = Vec::new();
    let mut stacked = MatrixFq::zeros(field.clone(), 0, r * r);
    for g in gens {
        let trial = stacked.vstack(&g.flatten())?;
        if trial.rank() > basis.len() {
            stacked = trial;
            basis.push(g.clone());
        }
    }
    Ok(basis)
}

impl RankMetricCode {
    pub fn field(&self) -> &Arc<BaseField> {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn generators(&self) -> &[MatrixFq] {
        &self.generators
    }

    pub fn basis(&self) -> &[MatrixFq] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn codewords(&self) -> &[MatrixFq] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// `d_R`, or `None` for the zero code.
    pub fn min_rank_distance(&self) -> Option<usize> {
        self.min_rank
    }

    pub fn singleton_bound_met(&self) -> bool {
        self.min_rank
            .is_some_and(|d| self.dimension() == self.r * (self.r - d + 1))
    }
}

/// Generators of the Gabidulin code of `r × r` matrices over `F_q` with minimum rank `d`.
///
/// The codewords are the matrices of `x ↦ Σ_{i<r−d+1} f_i x^{q^i}` on `GF(q^r)`
/// with `f_i ∈ GF(q^r)`; row `j` of a matrix holds the image of `α^j`.
pub fn gabidulin_generators(field: Arc<BaseField>, r: usize, d: usize) -> Result<Vec<MatrixFq>, AbelianError> {
    if d == 0 || d > r {
        return Err(AbelianError::BadDistance { r, d });
    }
    let ext = FieldSpec::default_over(field.clone(), r)?;
    let kappa = r - d + 1;
    let mut gens = Vec::with_capacity(kappa * r);
    for i in 0..kappa as u32 {
        for b in 0..r as u32 {
            let mut data = Vec::with_capacity(r * r);
            for j in 0..r as u32 {
                let x = ext.exp_index(j);
                let y = ext.scale_index(ext.frobenius_index(x, i), b);
                data.extend(ext.coords_of_index(y));
            }
            gens.push(MatrixFq::new(field.clone(), r, r, data)?);
        }
    }
    Ok(gens)
}

pub fn gabidulin_code(field: Arc<BaseField>, r: usize, d: usize) -> Result<RankMetricCode, AbelianError> {
    let gens = gabidulin_generators(field.clone(), r, d)?;
    build_rank_metric_code(field, r, &gens)
}

/// A `k × 2r` matrix `[[A, B], [C, D]]` whose top `l` rows form `[A B]`.
#[derive(Debug, Clone)]
pub struct BlockSubspaceLayout {
    matrix: MatrixFq,
    l: usize,
}

impl BlockSubspaceLayout {
    pub fn new(matrix: MatrixFq, l: usize) -> Result<Self, AbelianError> {
        let (k, n) = matrix.shape();
        let rank = matrix.rank();
        if n % 2 == 1 || rank != k || k == 0 || l > k {
            return Err(AbelianError::BadLayout {
                shape: matrix.shape(),
                rank,
            });
        }
        Ok(Self { matrix, l })
    }

    /// Split `l = k`, so `C` and `D` are empty.
    pub fn from_matrix(matrix: MatrixFq) -> Result<Self, AbelianError> {
        let l = matrix.rows();
        Self::new(matrix, l)
    }

    /// `[I_r | A]`.
    pub fn special(a: &MatrixFq) -> Result<Self, AbelianError> {
        let r = a.rows();
        if a.cols() != r {
            return Err(AbelianError::NotSquare { r, got: a.shape() });
        }
        Self::from_matrix(MatrixFq::identity(a.field().clone(), r).hstack(a)?)
    }

    pub fn matrix(&self) -> &MatrixFq {
        &self.matrix
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn r(&self) -> usize {
        self.matrix.cols() / 2
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn a(&self) -> MatrixFq {
        self.matrix.block(0, self.l, 0, self.r())
    }

    pub fn b(&self) -> MatrixFq {
        self.matrix.block(0, self.l, self.r(), 2 * self.r())
    }

    pub fn c(&self) -> MatrixFq {
        self.matrix.block(self.l, self.k(), 0, self.r())
    }

    pub fn d(&self) -> MatrixFq {
        self.matrix.block(self.l, self.k(), self.r(), 2 * self.r())
    }

    /// `[A; C]`.
    pub fn left(&self) -> MatrixFq {
        self.matrix.block(0, self.k(), 0, self.r())
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::span_of(&self.matrix)
    }

    pub fn is_special(&self) -> bool {
        let r = self.r();
        self.k() == r && self.left() == MatrixFq::identity(self.matrix.field().clone(), r)
    }
}

pub fn unipotent_group(rm: &RankMetricCode) -> Result<FiniteGroup, AbelianError> {
    let ambient = Ambient::vector(rm.field.clone(), 2 * rm.r);
    if rm.basis.is_empty() {
        return Ok(FiniteGroup::trivial(ambient, Family::Unipotent));
    }
    let gens: Vec<GroupElement> = rm.basis.iter().cloned().map(GroupElement::Unipotent).collect();
    Ok(FiniteGroup::generate(ambient, &gens, DEFAULT_GROUP_CAP)?)
}

/// Orbit of the layout's row space under `{[[I, H], [0, I]] : H ∈ rm}`.
pub fn construct_code(layout: &BlockSubspaceLayout, rm: &RankMetricCode) -> Result<OrbitCode, AbelianError> {
    if layout.r() != rm.r {
        return Err(AbelianError::SizeMismatch {
            code: rm.r,
            layout: layout.r(),
        });
    }
    let group = Arc::new(unipotent_group(rm)?);
    Ok(generate_orbit(&group, &layout.subspace())?)
}

/// `2·rank([AH; CH])`, an upper bound on `d_S(V, V·[[I, H], [0, I]])`.
pub fn distance_bound(layout: &BlockSubspaceLayout, h: &MatrixFq) -> Result<u32, AbelianError> {
    let ah = layout.a().mul(h)?;
    let ch = layout.c().mul(h)?;
    Ok(2 * ah.vstack(&ch)?.rank() as u32)
}

/// `2·rank(H)`, the exact distance when the layout is `[I_r | A]`.
pub fn exact_distance_special(layout: &BlockSubspaceLayout, h: &MatrixFq) -> Result<u32, AbelianError> {
    if !layout.is_special() {
        return Err(AbelianError::NotSpecialLayout);
    }
    if h.shape() != (layout.r(), layout.r()) {
        return Err(AbelianError::NotSquare {
            r: layout.r(),
            got: h.shape(),
        });
    }
    Ok(2 * h.rank() as u32)
}

/// Basis of `{H : AH = 0, CH = 0}`; every column of `H` lies in the null space of `[A; C]`.
pub fn stabilizer_solution_space(layout: &BlockSubspaceLayout) -> Vec<MatrixFq> {
    let r = layout.r();
    let null = layout.left().null_space();
    let field = layout.matrix.field().clone();
    let mut out = Vec::with_capacity(null.cols() * r);
    for v in 0..null.cols() {
        for col in 0..r {
            let mut h = MatrixFq::zeros(field.clone(), r, r);
            for row in 0..r {
                h.set(row, col, null.get(row, v));
            }
            out.push(h);
        }
    }
    out
}

/// Basis of all `H` with `rs(V·[[I, H], [0, I]]) = rs(V)`.
///
/// The image differs from `V` by the rows of `[0 | LH]` with `L = [A; C]`, so `H`
/// stabilizes `V` exactly when `rs(LH) ⊆ Y = {y : (0, y) ∈ V}`. This contains
/// [`stabilizer_solution_space`] and equals it when `rank L = k`.
pub fn stabilizer_space(layout: &BlockSubspaceLayout) -> Result<Vec<MatrixFq>, AbelianError> {
    let r = layout.r();
    let field = layout.matrix.field().clone();
    let left = layout.left();
    let right = layout.matrix.block(0, layout.k(), r, 2 * r);
    // coefficient vectors c with cL = 0 give the vectors (0, c·R) of V
    let coeffs = left.transpose().null_space().transpose();
    let y = coeffs.mul(&right)?;
    // y ∈ Y  ⇔  y·P = 0
    let p = y.null_space();
    if p.cols() == 0 {
        return Ok(unit_matrices(&field, r));
    }
    let units = unit_matrices(&field, r);
    let mut system = MatrixFq::zeros(field.clone(), 0, layout.k() * p.cols());
    for e in &units {
        system = system.vstack(&left.mul(e)?.mul(&p)?.flatten())?;
    }
    // combinations Σ h_e·row_e = 0
    let sol = system.transpose().null_space();
    let mut out = Vec::with_capacity(sol.cols());
    for c in 0..sol.cols() {
        let data = (0..r * r).map(|i| sol.get(i, c)).collect();
        out.push(MatrixFq::new(field.clone(), r, r, data)?);
    }
    Ok(out)
}

fn unit_matrices(field: &Arc<BaseField>, r: usize) -> Vec<MatrixFq> {
    (0..r * r)
        .map(|i| {
            let mut m = MatrixFq::zeros(field.clone(), r, r);
            m.set(i / r, i % r, 1);
            m
        })
        .collect()
}

fn flattened_stack(field: &Arc<BaseField>, r: usize, ms: &[MatrixFq]) -> Result<MatrixFq, AbelianError> {
    ms.iter()
        .try_fold(MatrixFq::zeros(field.clone(), 0, r * r), |acc, m| Ok(acc.vstack(&m.flatten())?))
}

/// Dimension of the stabilizer of the layout inside the group of `rm`; the
/// stabilizer has `q^dim` elements.
pub fn stabilizer_dimension_in(layout: &BlockSubspaceLayout, rm: &RankMetricCode) -> Result<usize, AbelianError> {
    let s = flattened_stack(&rm.field, rm.r, &stabilizer_space(layout)?)?;
    let c = flattened_stack(&rm.field, rm.r, &rm.basis)?;
    let sum = s.vstack(&c)?.rank();
    Ok(s.rank() + c.rank() - sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CardinalityReport {
    pub q: u64,
    pub n: u32,
    /// `q^n`.
    pub abelian: u128,
    /// `n(q^n − 1)/(q − 1)`.
    pub semidirect_bound: u128,
    /// `q − 1 ≥ n`.
    pub condition: bool,
    pub abelian_larger: bool,
}

pub fn cardinality_comparison(q: u64, n: u32) -> Result<CardinalityReport, AbelianError> {
    if n % 2 == 1 {
        return Err(AbelianError::OddLength(n as usize));
    }
    let qn = (q as u128).pow(n);
    let semidirect_bound = n as u128 * (qn - 1) / (q as u128 - 1);
    Ok(CardinalityReport {
        q,
        n,
        abelian: qn,
        semidirect_bound,
        condition: q - 1 >= n as u64,
        abelian_larger: qn > semidirect_bound,
    })
}

/// `p^{r−1} ≤ n − 2k < k < n − k ≤ p^r`, the parameter range of an earlier Abelian construction.
pub fn prior_construction_applies(p: u64, r: u32, n: i64, k: i64) -> bool {
    let lo = p.pow(r.saturating_sub(1)) as i64;
    let hi = p.pow(r) as i64;
    lo <= n - 2 * k && n - 2 * k < k && k < n - k && n - k <= hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32) -> Arc<BaseField> {
        BaseField::prime(p).unwrap()
    }

    fn ternary_generators() -> Vec<MatrixFq> {
        [
            "1,0,0;0,1,0;0,0,0",
            "0,0,0;0,1,0;0,0,1",
            "0,0,1;0,1,0;0,1,0",
            "0,0,2;2,0,0;0,1,0",
            "1,1,2;0,1,2;2,0,1",
            "0,0,0;0,0,1;2,1,1",
        ]
        .iter()
        .map(|s| MatrixFq::parse(f(3), s).unwrap())
        .collect()
    }

    fn ternary_layout() -> BlockSubspaceLayout {
        BlockSubspaceLayout::from_matrix(MatrixFq::parse(f(3), "1,0,0,1,2,0;0,1,0,1,0,0;0,0,1,0,2,1").unwrap()).unwrap()
    }

    fn random_matrix(field: &Arc<BaseField>, r: usize, c: usize, rng: &mut impl Rng) -> MatrixFq {
        let q = field.order() as u16;
        MatrixFq::new(field.clone(), r, c, (0..r * c).map(|_| rng.gen_range(0..q)).collect()).unwrap()
    }

    /// Scalar multiples c·M over the base field.
    fn multiples(m: &MatrixFq) -> Vec<MatrixFq> {
        (0..m.field().order() as u16).map(|c| m.scale(c)).collect()
    }

    #[test]
    fn ternary_rank_code() {
        let rm = build_rank_metric_code(f(3), 3, &ternary_generators()).unwrap();
        assert_eq!(rm.len(), 729);
        assert_eq!(rm.min_rank_distance(), Some(2));
        assert!(rm.singleton_bound_met());
    }

    #[test]
    fn single_generator_codes() {
        let id = MatrixFq::identity(f(2), 3);
        let rm = build_rank_metric_code(f(2), 3, &[id.clone()]).unwrap();
        assert_eq!(rm.codewords(), &[MatrixFq::zeros(f(2), 3, 3), id][..]);
        assert_eq!(rm.min_rank_distance(), Some(3));
        let m = MatrixFq::parse(f(3), "1,1,2;0,1,2;2,0,1").unwrap();
        let rm = build_rank_metric_code(f(3), 3, &[m.clone()]).unwrap();
        assert_eq!(rm.len(), 3);
        assert_eq!(rm.min_rank_distance(), Some(3));
        let mut want = multiples(&m);
        let mut got = rm.codewords().to_vec();
        want.sort();
        got.sort();
        assert_eq!(got, want);
        assert!(matches!(
            build_rank_metric_code(f(3), 2, &[m]),
            Err(AbelianError::NotSquare { .. })
        ));
    }

    #[test]
    fn gabidulin_parameters() {
        let g = gabidulin_code(f(3), 3, 2).unwrap();
        assert_eq!(g.len(), 729);
        assert_eq!(g.min_rank_distance(), Some(2));
        let g = gabidulin_code(f(2), 2, 2).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.min_rank_distance(), Some(2));
        // every nonzero 2x2 codeword is invertible: check by determinant
        for c in &g.codewords()[1..] {
            let det = (c.get(0, 0) * c.get(1, 1) + c.get(0, 1) * c.get(1, 0)) % 2;
            assert_eq!(det, 1);
        }
        assert_eq!(gabidulin_code(f(2), 3, 1).unwrap().len(), 512);
        assert_eq!(gabidulin_code(f(3), 2, 1).unwrap().len(), 81);
        assert_eq!(gabidulin_code(f(2), 3, 3).unwrap().min_rank_distance(), Some(3));
        assert!(gabidulin_generators(f(2), 3, 4).is_err());
        assert!(gabidulin_generators(f(2), 3, 0).is_err());
    }

    #[test]
    fn ternary_orbit_code() {
        let rm = build_rank_metric_code(f(3), 3, &ternary_generators()).unwrap();
        let code = construct_code(&ternary_layout(), &rm).unwrap();
        let p = code.parameters();
        assert_eq!((p.n, p.m, p.d, p.k), (6, 729, Some(4), 3));
        assert_eq!(code.stabilizer().order(), 1);
        assert!(code.group().is_abelian());
        assert_eq!(code.min_distance_naive().unwrap(), 2 * rm.min_rank_distance().unwrap() as u32);
    }

    #[test]
    fn zero_code_gives_single_codeword() {
        let rm = build_rank_metric_code(f(3), 3, &[]).unwrap();
        assert_eq!(rm.len(), 1);
        assert_eq!(rm.min_rank_distance(), None);
        let code = construct_code(&ternary_layout(), &rm).unwrap();
        assert_eq!(code.len(), 1);
        assert_eq!(code.group().family(), Family::Unipotent);
    }

    #[test]
    fn binary_two_by_two_instance() {
        let a = MatrixFq::parse(f(2), "1,1;0,1").unwrap();
        let layout = BlockSubspaceLayout::special(&a).unwrap();
        let rm = gabidulin_code(f(2), 2, 2).unwrap();
        let code = construct_code(&layout, &rm).unwrap();
        let p = code.parameters();
        assert_eq!((p.n, p.m, p.d, p.k), (4, 4, Some(4), 2));
        assert_eq!(code.min_distance_exhaustive().unwrap(), 4);
    }

    #[test]
    fn special_layout_distance_is_twice_rank() {
        let layout = ternary_layout();
        assert!(layout.is_special());
        let amb = Ambient::vector(f(3), 6);
        let v = layout.subspace();
        let rm = build_rank_metric_code(f(3), 3, &ternary_generators()).unwrap();
        for h in rm.codewords() {
            let w = amb.act(&GroupElement::Unipotent(h.clone()), &v).unwrap();
            assert_eq!(v.dist(&w), exact_distance_special(&layout, h).unwrap());
        }
        let h5 = &ternary_generators()[4];
        assert_eq!(exact_distance_special(&layout, h5).unwrap(), 6);
        assert_eq!(exact_distance_special(&layout, &MatrixFq::zeros(f(3), 3, 3)).unwrap(), 0);
    }

    #[test]
    fn general_bound_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in [2, 3] {
            let field = f(p);
            let mut done = 0;
            while done < 200 {
                let r = rng.gen_range(1..4);
                let k = rng.gen_range(1..=2 * r);
                let m = random_matrix(&field, k, 2 * r, &mut rng);
                let Ok(layout) = BlockSubspaceLayout::new(m, rng.gen_range(0..=k)) else {
                    continue;
                };
                let h = random_matrix(&field, r, r, &mut rng);
                let amb = Ambient::vector(field.clone(), 2 * r);
                let v = layout.subspace();
                let w = amb.act(&GroupElement::Unipotent(h.clone()), &v).unwrap();
                assert!(v.dist(&w) <= distance_bound(&layout, &h).unwrap());
                done += 1;
            }
        }
    }

    #[test]
    fn stabilizer_spaces() {
        assert!(stabilizer_solution_space(&ternary_layout()).is_empty());
        let zero_left = BlockSubspaceLayout::from_matrix(MatrixFq::parse(f(2), "0,0,1,0;0,0,0,1").unwrap()).unwrap();
        let t = stabilizer_solution_space(&zero_left);
        assert_eq!(t.len(), 4);
        assert_eq!(stabilizer_space(&zero_left).unwrap().len(), 4);
        assert!(stabilizer_space(&ternary_layout()).unwrap().is_empty());
        let rm = gabidulin_code(f(2), 2, 1).unwrap();
        assert_eq!(stabilizer_dimension_in(&zero_left, &rm).unwrap(), 4);
        assert_eq!(construct_code(&zero_left, &rm).unwrap().len(), 1);
    }

    #[test]
    fn orbit_stabilizer_on_random_layouts() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let field = f(2);
        let rm = gabidulin_code(field.clone(), 3, 1).unwrap();
        let q = field.order() as usize;
        let mut done = 0;
        while done < 20 {
            let k = rng.gen_range(1..=4);
            let Ok(layout) = BlockSubspaceLayout::from_matrix(random_matrix(&field, k, 6, &mut rng)) else {
                continue;
            };
            let code = construct_code(&layout, &rm).unwrap();
            let s = stabilizer_dimension_in(&layout, &rm).unwrap();
            assert_eq!(code.stabilizer().order(), q.pow(s as u32));
            let tilde = stabilizer_solution_space(&layout);
            let exact = stabilizer_space(&layout).unwrap();
            assert!(tilde.len() <= exact.len());
            if layout.left().rank() == layout.k() {
                assert_eq!(tilde.len(), exact.len());
            }
            assert_eq!(code.len() * code.stabilizer().order(), rm.len());
            done += 1;
        }
    }

    #[test]
    fn group_is_abelian() {
        let rm = build_rank_metric_code(f(3), 3, &ternary_generators()).unwrap();
        let g = unipotent_group(&rm).unwrap();
        assert!(g.is_abelian());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = &g.elements()[rng.gen_range(0..g.order())];
            let b = &g.elements()[rng.gen_range(0..g.order())];
            assert_eq!(g.compose(a, b).unwrap(), g.compose(b, a).unwrap());
        }
    }

    #[test]
    fn cardinality_reports() {
        let r = cardinality_comparison(7, 6).unwrap();
        assert_eq!((r.abelian, r.semidirect_bound, r.condition, r.abelian_larger), (117649, 117648, true, true));
        let r = cardinality_comparison(2, 6).unwrap();
        assert_eq!((r.abelian, r.semidirect_bound, r.condition, r.abelian_larger), (64, 378, false, false));
        assert!(cardinality_comparison(3, 5).is_err());
    }

    #[test]
    fn prior_construction_predicate() {
        // 1 <= 1 < 2 < 3 <= 3
        assert!(prior_construction_applies(3, 1, 5, 2));
        assert!(!prior_construction_applies(2, 2, 7, 3));
        assert!(!prior_construction_applies(3, 1, 6, 3));
    }
}
