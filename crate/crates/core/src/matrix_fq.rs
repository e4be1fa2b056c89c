//! Dense matrices over a [`BaseField`].
//!
//! Row vectors act on the right throughout the crate: a subspace is the row space
//! of a matrix `V` and a linear map `M` sends it to the row space of `V · M`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::finite_field::BaseField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("matrix is singular")]
    Singular,
    #[error("entry {value} is outside F_{q}")]
    OutOfRange { value: u32, q: u32 },
    #[error("expected {expected} entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("matrices are over different fields")]
    MixedFields,
    #[error("malformed matrix literal `{0}`")]
    Parse(String),
}

#[derive(Clone)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<u16>,
    field: Arc<BaseField>,
}

impl MatrixFq {
    pub fn new(field: Arc<BaseField>, rows: usize, cols: usize, data: Vec<u16>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::BadLength {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v as u32)) {
            return Err(MatrixError::OutOfRange {
                value: bad as u32,
                q: field.order(),
            });
        }
        Ok(Self { rows, cols, data, field })
    }

    pub(crate) fn from_raw(field: Arc<BaseField>, rows: usize, cols: usize, data: Vec<u16>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data, field }
    }

    pub fn zeros(field: Arc<BaseField>, rows: usize, cols: usize) -> Self {
        Self::from_raw(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: Arc<BaseField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<R: AsRef<[u16]>>(field: Arc<BaseField>, rows: &[R]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MatrixError::BadLength {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// Parses the literal format `1,0,0;0,1,0` (rows separated by `;`).
    pub fn parse(field: Arc<BaseField>, literal: &str) -> Result<Self, MatrixError> {
        let bad = || MatrixError::Parse(literal.to_string());
        let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let rows = compact
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| e.parse::<u16>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(field, &rows).map_err(|e| match e {
            MatrixError::BadLength { .. } => bad(),
            other => other,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> &Arc<BaseField> {
        &self.field
    }

    pub fn data(&self) -> &[u16] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u16>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_field(&self, other: &Self) -> Result<(), MatrixError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::MixedFields)
        }
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(u16, u16) -> u16) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(MatrixError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_raw(self.field.clone(), self.rows, self.cols, data))
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        let f = self.field.clone();
        self.zip_with(other, "add", move |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        let f = self.field.clone();
        self.zip_with(other, "sub", move |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|&a| self.field.neg(a)).collect();
        Self::from_raw(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u16) -> Self {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Self::from_raw(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = &self.field;
        let mut out = vec![0u16; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out[idx] = f.add(out[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(Self::from_raw(self.field.clone(), self.rows, other.cols, out))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(MatrixError::ShapeMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self::from_raw(self.field.clone(), self.rows + other.rows, cols, data))
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(MatrixError::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self::from_raw(self.field.clone(), self.rows, cols, data))
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            data.extend_from_slice(&self.row(i)[c0..c1]);
        }
        Self::from_raw(self.field.clone(), r1 - r0, c1 - c0, data)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    m.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    /// Rank by forward elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let cols = self.cols;
        let mut m = self.data.clone();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m[r * cols + c]).expect("pivot is nonzero");
            for i in r + 1..self.rows {
                let factor = f.mul(m[i * cols + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    m[i * cols + j] = f.sub(m[i * cols + j], f.mul(factor, m[r * cols + j]));
                }
            }
            r += 1;
        }
        r
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.shape()));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.field.clone(), n))?;
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        Ok(r.block(0, n, n, 2 * n))
    }

    /// Basis of `{x : self · x = 0}` as the columns of a `cols × nullity` matrix.
    pub fn null_space(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.field.clone(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        basis
    }

    /// All entries as one row vector (row-major).
    pub fn flatten(&self) -> Self {
        Self::from_raw(self.field.clone(), 1, self.rows * self.cols, self.data.clone())
    }
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && *self.field == *other.field
    }
}

impl Eq for MatrixFq {}

impl Hash for MatrixFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for MatrixFq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatrixFq {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] over {:?}", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(field: &Arc<BaseField>, rows: usize, cols: usize, rng: &mut impl Rng) -> MatrixFq {
        let q = field.order() as u16;
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
        MatrixFq::new(field.clone(), rows, cols, data).unwrap()
    }

    /// Rank of a matrix over a prime field by counting the span of its rows.
    fn rank_by_span(m: &MatrixFq) -> usize {
        let p = m.field().order() as usize;
        let mut span = std::collections::HashSet::new();
        let k = m.rows();
        for combo in 0..p.pow(k as u32) {
            let mut c = combo;
            let mut v = vec![0usize; m.cols()];
            for i in 0..k {
                let coef = c % p;
                c /= p;
                for (j, vj) in v.iter_mut().enumerate() {
                    *vj = (*vj + coef * m.get(i, j) as usize) % p;
                }
            }
            span.insert(v);
        }
        // |span| = p^rank
        let mut rank = 0;
        let mut size = 1;
        while size < span.len() {
            size *= p;
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        let f3 = BaseField::prime(3).unwrap();
        assert_eq!(MatrixFq::identity(f3.clone(), 3).rank(), 3);
        let h5 = MatrixFq::parse(f3.clone(), "1,1,2;0,1,2;2,0,1").unwrap();
        assert_eq!(rank_by_span(&h5), 3);
        assert_eq!(h5.rank(), 3);
        assert_eq!(MatrixFq::zeros(f3, 3, 3).rank(), 0);
    }

    #[test]
    fn rank_agrees_with_span_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3, 5] {
            let f = BaseField::prime(p).unwrap();
            for _ in 0..30 {
                let m = random(&f, rng.gen_range(1..4), rng.gen_range(1..5), &mut rng);
                assert_eq!(m.rank(), rank_by_span(&m), "{m:?}");
                assert_eq!(m.rank(), m.rref_with_pivots().1.len());
            }
        }
    }

    #[test]
    fn inverse_of_random_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2, 3] {
            let f = BaseField::prime(p).unwrap();
            let mut found = 0;
            while found < 100 {
                let m = random(&f, 4, 4, &mut rng);
                match m.inverse() {
                    Ok(inv) => {
                        assert_eq!(m.mul(&inv).unwrap(), MatrixFq::identity(f.clone(), 4));
                        assert_eq!(inv.mul(&m).unwrap(), MatrixFq::identity(f.clone(), 4));
                        found += 1;
                    }
                    Err(e) => {
                        assert_eq!(e, MatrixError::Singular);
                        assert!(m.rank() < 4);
                    }
                }
            }
        }
    }

    #[test]
    fn null_space_edges() {
        let f3 = BaseField::prime(3).unwrap();
        assert_eq!(MatrixFq::identity(f3.clone(), 3).null_space().cols(), 0);
        let z = MatrixFq::zeros(f3.clone(), 3, 3).null_space();
        assert_eq!(z.shape(), (3, 3));
        assert_eq!(z.rank(), 3);
    }

    #[test]
    fn rank_nullity_and_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2, 3, 7] {
            let f = BaseField::prime(p).unwrap();
            for _ in 0..100 {
                let m = random(&f, rng.gen_range(1..5), rng.gen_range(1..6), &mut rng);
                let ns = m.null_space();
                assert_eq!(ns.cols() + m.rank(), m.cols());
                if ns.cols() > 0 {
                    assert!(m.mul(&ns).unwrap().is_zero());
                    assert_eq!(ns.rank(), ns.cols());
                }
            }
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = BaseField::prime(5).unwrap();
        for _ in 0..50 {
            let m = random(&f, 3, 5, &mut rng);
            let r = m.rref();
            assert_eq!(r.rref(), r);
        }
    }

    #[test]
    fn transpose_preserves_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = BaseField::prime(3).unwrap();
        for _ in 0..100 {
            let m = random(&f, rng.gen_range(1..6), rng.gen_range(1..6), &mut rng);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn stacked_rank_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for p in [2, 3] {
            let f = BaseField::prime(p).unwrap();
            for _ in 0..200 {
                let (r, c) = (rng.gen_range(1..4), rng.gen_range(1..5));
                let x = random(&f, r, c, &mut rng);
                let y = random(&f, r, c, &mut rng);
                let lhs = x.vstack(&y).unwrap().rank();
                let rhs = y.sub(&x).unwrap().rank() + x.rank().min(y.rank());
                assert!(lhs <= rhs);
            }
        }
    }

    #[test]
    fn shape_errors() {
        let f = BaseField::prime(2).unwrap();
        let a = MatrixFq::zeros(f.clone(), 2, 3);
        assert!(matches!(a.mul(&a), Err(MatrixError::ShapeMismatch { .. })));
        assert!(matches!(a.inverse(), Err(MatrixError::NotSquare(_))));
        assert!(matches!(MatrixFq::parse(f.clone(), "1,0;1"), Err(MatrixError::Parse(_))));
        assert!(matches!(MatrixFq::parse(f, "1,2"), Err(MatrixError::OutOfRange { .. })));
    }

    #[test]
    fn literal_round_trip() {
        let f = BaseField::prime(3).unwrap();
        let m = MatrixFq::parse(f.clone(), "1,0,0;0,1,0").unwrap();
        assert_eq!(m.to_string(), "1,0,0;0,1,0");
        assert_eq!(MatrixFq::parse(f, &m.to_string()).unwrap(), m);
    }
}
