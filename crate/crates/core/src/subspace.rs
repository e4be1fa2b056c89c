//! Points of the Grassmannian in canonical (rref) form, the subspace metric and
//! small-parameter Grassmannian enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_field::{BaseField, FieldError, FieldSpec};
use crate::matrix_fq::{MatrixError, MatrixFq};

/// Largest Grassmannian that [`enumerate_grassmannian`] will list.
pub const ENUMERATION_CAP: u128 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("the span is zero-dimensional")]
    ZeroDimensional,
    #[error("ambient mismatch: F_{left_q}^{left_n} vs F_{right_q}^{right_n}")]
    AmbientMismatch {
        left_n: usize,
        left_q: u32,
        right_n: usize,
        right_q: u32,
    },
    #[error("need 0 <= k <= n, got k = {k}, n = {n}")]
    BadDimension { n: usize, k: usize },
    #[error("|G_{q}({n},{k})| = {size} exceeds the enumeration cap {cap}")]
    CapExceeded {
        n: usize,
        k: usize,
        q: u32,
        size: u128,
        cap: u128,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A subspace of `F_q^n` stored as its `k × n` reduced row echelon basis.
#[derive(Clone)]
pub struct Subspace {
    n: usize,
    basis: MatrixFq,
}

impl Subspace {
    /// Row space of `m`; errors when the span is `{0}`.
    pub fn from_matrix(m: &MatrixFq) -> Result<Self, SubspaceError> {
        let s = Self::span_of(m);
        if s.dim() == 0 {
            return Err(SubspaceError::ZeroDimensional);
        }
        Ok(s)
    }

    /// Row space of `m`, allowing the zero subspace.
    pub fn span_of(m: &MatrixFq) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let basis = r.block(0, pivots.len(), 0, m.cols());
        Self { n: m.cols(), basis }
    }

    pub fn from_rows<R: AsRef<[u16]>>(field: Arc<BaseField>, rows: &[R]) -> Result<Self, SubspaceError> {
        Self::from_matrix(&MatrixFq::from_rows(field, rows)?)
    }

    pub fn zero(field: Arc<BaseField>, n: usize) -> Self {
        Self {
            n,
            basis: MatrixFq::zeros(field, 0, n),
        }
    }

    pub fn whole(field: Arc<BaseField>, n: usize) -> Self {
        Self {
            n,
            basis: MatrixFq::identity(field, n),
        }
    }

    /// Span of `α^e` for each listed exponent, as vectors over the base field.
    pub fn from_field_elements(field: &FieldSpec, exponents: &[u32]) -> Result<Self, SubspaceError> {
        let rows: Vec<Vec<u16>> = exponents
            .iter()
            .map(|&e| field.coords_of_index(field.exp_index(e)))
            .collect();
        if rows.is_empty() {
            return Err(SubspaceError::ZeroDimensional);
        }
        Self::from_rows(field.base().clone(), &rows)
    }

    /// Span of field elements given by their raw indices.
    pub fn from_field_indices(field: &FieldSpec, indices: &[u32]) -> Result<Self, SubspaceError> {
        let rows: Vec<Vec<u16>> = indices.iter().map(|&i| field.coords_of_index(i)).collect();
        if rows.is_empty() {
            return Err(SubspaceError::ZeroDimensional);
        }
        Self::from_rows(field.base().clone(), &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn field(&self) -> &Arc<BaseField> {
        self.basis.field()
    }

    pub fn same_ambient(&self, other: &Self) -> bool {
        self.n == other.n && self.field() == other.field()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), SubspaceError> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(SubspaceError::AmbientMismatch {
                left_n: self.n,
                left_q: self.field().order(),
                right_n: other.n,
                right_q: other.field().order(),
            })
        }
    }

    /// `d_S(self, other)`; the caller guarantees a common ambient space.
    pub fn dist(&self, other: &Self) -> u32 {
        debug_assert!(self.same_ambient(other));
        if self == other {
            return 0;
        }
        let stacked = self.basis.vstack(&other.basis).expect("same ambient");
        (2 * stacked.rank() - self.dim() - other.dim()) as u32
    }

    pub fn sum(&self, other: &Self) -> Result<Self, SubspaceError> {
        self.check_ambient(other)?;
        Ok(Self::span_of(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersection_dim(&self, other: &Self) -> Result<usize, SubspaceError> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    pub fn contains_vector(&self, v: &[u16]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let row = MatrixFq::from_raw(self.field().clone(), 1, self.n, v.to_vec());
        self.basis.vstack(&row).expect("same width").rank() == self.dim()
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.sum(other).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    /// `rs(V · M)`.
    pub fn apply_matrix(&self, m: &MatrixFq) -> Result<Self, SubspaceError> {
        Ok(Self::span_of(&self.basis.mul(m)?))
    }

    /// Re-spans the images of the basis rows under `f`.
    pub fn map_rows(&self, mut f: impl FnMut(&[u16]) -> Vec<u16>) -> Self {
        let mut data = Vec::with_capacity(self.basis.data().len());
        for i in 0..self.dim() {
            data.extend(f(self.basis.row(i)));
        }
        Self::span_of(&MatrixFq::from_raw(self.field().clone(), self.dim(), self.n, data))
    }

    /// Every vector of the subspace, zero first.
    pub fn vectors(&self) -> Vec<Vec<u16>> {
        let f = self.field();
        let q = f.order() as usize;
        let k = self.dim();
        let total = q.pow(k as u32);
        let mut out = Vec::with_capacity(total);
        for combo in 0..total {
            let mut c = combo;
            let mut v = vec![0u16; self.n];
            for i in 0..k {
                let coef = (c % q) as u16;
                c /= q;
                if coef == 0 {
                    continue;
                }
                for (j, vj) in v.iter_mut().enumerate() {
                    *vj = f.add(*vj, f.mul(coef, self.basis.get(i, j)));
                }
            }
            out.push(v);
        }
        out
    }

    /// Sorted exponents `e` with `α^e` in the subspace (zero omitted).
    pub fn field_exponents(&self, field: &FieldSpec) -> Vec<u32> {
        let mut exps: Vec<u32> = self
            .vectors()
            .iter()
            .filter_map(|v| field.log_index(field.index_of_coords(v)))
            .collect();
        exps.sort_unstable();
        exps
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            n: self.n,
            k: self.dim(),
            q: self.field().order(),
            rows: self.basis.row_vecs(),
        }
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.basis).cmp(&(other.n, &other.basis))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rs[{}]", self.basis)
    }
}

/// `d_S(V, W) = 2·rank([V; W]) − dim V − dim W`.
pub fn subspace_distance(v: &Subspace, w: &Subspace) -> Result<u32, SubspaceError> {
    v.check_ambient(w)?;
    Ok(v.dist(w))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub rows: Vec<Vec<u16>>,
}

impl SubspaceJson {
    pub fn to_subspace(&self, field: Arc<BaseField>) -> Result<Subspace, SubspaceError> {
        if field.order() != self.q {
            return Err(SubspaceError::Field(FieldError::Descriptor(format!(
                "subspace declares q = {} but the field has order {}",
                self.q,
                field.order()
            ))));
        }
        let m = if self.rows.is_empty() {
            MatrixFq::zeros(field, 0, self.n)
        } else {
            MatrixFq::from_rows(field, &self.rows)?
        };
        if m.cols() != self.n {
            return Err(SubspaceError::BadDimension { n: self.n, k: self.k });
        }
        let s = Subspace::span_of(&m);
        if s.dim() != self.k {
            return Err(SubspaceError::BadDimension { n: self.n, k: self.k });
        }
        Ok(s)
    }
}

/// `{field, exponents}` form listing nonzero elements `α^e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSubspaceJson {
    pub field: String,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussianBinomial {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub value: u128,
}

impl GaussianBinomial {
    pub fn new(n: usize, k: usize, q: u32) -> Result<Self, SubspaceError> {
        Ok(Self {
            n,
            k,
            q,
            value: gaussian_binomial(n, k, q)?,
        })
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> Result<u128, SubspaceError> {
    if k > n {
        return Err(SubspaceError::BadDimension { n, k });
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((k - i) as u32) - 1;
    }
    Ok(num / den)
}

/// Lists `G_q(n,k)` ordered by pivot set (lexicographic), then by free entries.
pub fn enumerate_grassmannian(field: Arc<BaseField>, n: usize, k: usize) -> Result<GrassmannianIter, SubspaceError> {
    let size = gaussian_binomial(n, k, field.order())?;
    if size > ENUMERATION_CAP {
        return Err(SubspaceError::CapExceeded {
            n,
            k,
            q: field.order(),
            size,
            cap: ENUMERATION_CAP,
        });
    }
    let mut it = GrassmannianIter {
        field,
        n,
        k,
        pivots: (0..k).collect(),
        free: Vec::new(),
        counter: Vec::new(),
        done: false,
    };
    it.reset_free();
    Ok(it)
}

pub struct GrassmannianIter {
    field: Arc<BaseField>,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u16>,
    done: bool,
}

impl GrassmannianIter {
    fn reset_free(&mut self) {
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((i, c));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < n - k + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        true
    }

    fn advance(&mut self) {
        let q = self.field.order() as u16;
        // free entries count in base q with the first free entry most significant
        for d in self.counter.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for GrassmannianIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut m = MatrixFq::zeros(self.field.clone(), self.k, self.n);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, 1);
        }
        for (&(i, c), &v) in self.free.iter().zip(&self.counter) {
            m.set(i, c, v);
        }
        let out = Subspace { n: self.n, basis: m };
        if self.k == 0 {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}
