//! Group elements acting on subspaces, finite groups generated by them, cosets
//! and composition series of cyclic groups.
//!
//! `compose(g1, g2)` is "apply `g1`, then `g2`", so that
//! `act(g2, act(g1, V)) = act(compose(g1, g2), V)`.
//!
//! The semilinear element `Semilinear(i, j)` sends `x ↦ σ^j(x)·α^i` with
//! `σ(x) = x^q`. Composing gives
//! `(i1, j1)·(i2, j2) = (i1·q^{j2} + i2 mod q^n−1, j1 + j2 mod n)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::finite_field::{BaseField, FieldSpec};
use crate::matrix_fq::{MatrixError, MatrixFq};
use crate::subspace::{Subspace, SubspaceError};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("this element needs an extension field GF(q^n) attached to the ambient space")]
    NoExtensionField,
    #[error("expected a {expected} matrix, got {got:?}")]
    BadShape { expected: String, got: (usize, usize) },
    #[error("general linear generator is singular")]
    Singular,
    #[error("unipotent elements need an even ambient dimension, got {0}")]
    OddDimension(usize),
    #[error("group closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("element {element} has no representation in the {family:?} family")]
    NotInFamily { element: String, family: Family },
    #[error("subgroup is not contained in the group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group order must exceed 1, got {0}")]
    BadOrder(u64),
    #[error("invalid series: {0}")]
    BadSeries(String),
    #[error("malformed generator spec `{0}`")]
    Parse(String),
    #[error("ambient mismatch: subspace in F^{got}, group acts on F^{expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    GeneralLinear(MatrixFq),
    /// Multiplication by `α^i`.
    FieldScalar(u32),
    /// `x ↦ σ^j(x)·α^i`.
    Semilinear(u32, u32),
    /// `[[I, H], [0, I]]`, sending `(x, y) ↦ (x, xH + y)`.
    Unipotent(MatrixFq),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    Scalar,
    Semilinear,
    Unipotent,
    GeneralLinear,
}

impl GroupElement {
    pub fn family(&self) -> Family {
        match self {
            Self::GeneralLinear(_) => Family::GeneralLinear,
            Self::FieldScalar(_) => Family::Scalar,
            Self::Semilinear(..) => Family::Semilinear,
            Self::Unipotent(_) => Family::Unipotent,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GeneralLinear(m) => write!(f, "gl:{m}"),
            Self::FieldScalar(i) => write!(f, "scalar:{i}"),
            Self::Semilinear(i, j) => write!(f, "semilinear:{i},{j}"),
            Self::Unipotent(h) => write!(f, "unipotent:{h}"),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The space `F_q^n` that group elements act on, optionally identified with `GF(q^n)`.
#[derive(Clone, Debug)]
pub struct Ambient {
    base: Arc<BaseField>,
    n: usize,
    ext: Option<Arc<FieldSpec>>,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.base == other.base && self.ext == other.ext
    }
}

impl Ambient {
    pub fn field(fs: Arc<FieldSpec>) -> Self {
        Self {
            base: fs.base().clone(),
            n: fs.degree(),
            ext: Some(fs),
        }
    }

    pub fn vector(base: Arc<BaseField>, n: usize) -> Self {
        Self { base, n, ext: None }
    }

    pub fn base(&self) -> &Arc<BaseField> {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ext(&self) -> Option<&Arc<FieldSpec>> {
        self.ext.as_ref()
    }

    fn ext_or_err(&self) -> Result<&FieldSpec, GroupError> {
        self.ext.as_deref().ok_or(GroupError::NoExtensionField)
    }

    fn half(&self) -> Result<usize, GroupError> {
        if self.n % 2 == 1 {
            Err(GroupError::OddDimension(self.n))
        } else {
            Ok(self.n / 2)
        }
    }

    pub fn identity(&self, family: Family) -> GroupElement {
        match family {
            Family::Scalar => GroupElement::FieldScalar(0),
            Family::Semilinear => GroupElement::Semilinear(0, 0),
            Family::Unipotent => GroupElement::Unipotent(MatrixFq::zeros(self.base.clone(), self.n / 2, self.n / 2)),
            Family::GeneralLinear => GroupElement::GeneralLinear(MatrixFq::identity(self.base.clone(), self.n)),
        }
    }

    /// Checks shapes and invertibility and reduces exponents.
    pub fn validate(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        match g {
            GroupElement::FieldScalar(i) => {
                let fs = self.ext_or_err()?;
                Ok(GroupElement::FieldScalar(i % fs.multiplicative_order()))
            }
            GroupElement::Semilinear(i, j) => {
                let fs = self.ext_or_err()?;
                Ok(GroupElement::Semilinear(i % fs.multiplicative_order(), j % self.n as u32))
            }
            GroupElement::Unipotent(h) => {
                let r = self.half()?;
                if h.shape() != (r, r) {
                    return Err(GroupError::BadShape {
                        expected: format!("{r}x{r}"),
                        got: h.shape(),
                    });
                }
                Ok(GroupElement::Unipotent(h))
            }
            GroupElement::GeneralLinear(m) => {
                if m.shape() != (self.n, self.n) {
                    return Err(GroupError::BadShape {
                        expected: format!("{0}x{0}", self.n),
                        got: m.shape(),
                    });
                }
                if m.rank() < self.n {
                    return Err(GroupError::Singular);
                }
                Ok(GroupElement::GeneralLinear(m))
            }
        }
    }

    /// Matrix `M` of `g` in the row-vector convention `x ↦ x·M`.
    ///
    /// Row `b` holds the image of the basis vector `e_b`, which is `α^b` when the
    /// ambient space is `GF(q^n)`.
    pub fn to_matrix(&self, g: &GroupElement) -> Result<MatrixFq, GroupError> {
        match g {
            GroupElement::GeneralLinear(m) => Ok(m.clone()),
            GroupElement::FieldScalar(i) => self.semilinear_matrix(*i, 0),
            GroupElement::Semilinear(i, j) => self.semilinear_matrix(*i, *j),
            GroupElement::Unipotent(h) => {
                let r = self.half()?;
                let mut m = MatrixFq::identity(self.base.clone(), self.n);
                for a in 0..r {
                    for b in 0..r {
                        m.set(a, r + b, h.get(a, b));
                    }
                }
                Ok(m)
            }
        }
    }

    fn semilinear_matrix(&self, i: u32, j: u32) -> Result<MatrixFq, GroupError> {
        let fs = self.ext_or_err()?;
        let mut data = Vec::with_capacity(self.n * self.n);
        for b in 0..self.n as u32 {
            let img = fs.scale_index(fs.frobenius_index(fs.exp_index(b), j), i);
            data.extend(fs.coords_of_index(img));
        }
        Ok(MatrixFq::from_raw(self.base.clone(), self.n, self.n, data))
    }

    /// Companion matrix of the defining polynomial, which realizes `x ↦ x·α`.
    pub fn companion_matrix(&self) -> Result<MatrixFq, GroupError> {
        self.semilinear_matrix(1, 0)
    }

    /// Re-expresses `g` inside `family` when possible.
    pub fn coerce(&self, g: &GroupElement, family: Family) -> Result<GroupElement, GroupError> {
        let fail = || GroupError::NotInFamily {
            element: g.to_string(),
            family,
        };
        match (g, family) {
            (_, f) if g.family() == f => Ok(g.clone()),
            (_, Family::GeneralLinear) => Ok(GroupElement::GeneralLinear(self.to_matrix(g)?)),
            (GroupElement::FieldScalar(i), Family::Semilinear) => Ok(GroupElement::Semilinear(*i, 0)),
            (GroupElement::Semilinear(i, 0), Family::Scalar) => Ok(GroupElement::FieldScalar(*i)),
            (GroupElement::GeneralLinear(m), Family::Unipotent) => {
                let r = self.half()?;
                let candidate = GroupElement::Unipotent(m.block(0, r, r, 2 * r));
                if self.to_matrix(&candidate)? == *m {
                    Ok(candidate)
                } else {
                    Err(fail())
                }
            }
            _ => Err(fail()),
        }
    }

    fn join(a: Family, b: Family) -> Family {
        match (a, b) {
            _ if a == b => a,
            (Family::Scalar, Family::Semilinear) | (Family::Semilinear, Family::Scalar) => Family::Semilinear,
            _ => Family::GeneralLinear,
        }
    }

    pub fn compose(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement, GroupError> {
        use GroupElement::*;
        let family = Self::join(g1.family(), g2.family());
        let (a, b) = (self.coerce(g1, family)?, self.coerce(g2, family)?);
        Ok(match (&a, &b) {
            (FieldScalar(i1), FieldScalar(i2)) => {
                let m = self.ext_or_err()?.multiplicative_order() as u64;
                FieldScalar(((*i1 as u64 + *i2 as u64) % m) as u32)
            }
            (Semilinear(i1, j1), Semilinear(i2, j2)) => {
                let fs = self.ext_or_err()?;
                let m = fs.multiplicative_order() as u64;
                let i = (*i1 as u64 * fs.pow_q_mod(*j2) + *i2 as u64) % m;
                Semilinear(i as u32, (j1 + j2) % self.n as u32)
            }
            (Unipotent(h1), Unipotent(h2)) => Unipotent(h1.add(h2)?),
            (GeneralLinear(m1), GeneralLinear(m2)) => GeneralLinear(m1.mul(m2)?),
            _ => unreachable!("coerced to a common family"),
        })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        use GroupElement::*;
        Ok(match g {
            FieldScalar(i) => {
                let m = self.ext_or_err()?.multiplicative_order();
                FieldScalar((m - i % m) % m)
            }
            Semilinear(i, j) => {
                let fs = self.ext_or_err()?;
                let m = fs.multiplicative_order() as u64;
                let jj = (self.n as u32 - j % self.n as u32) % self.n as u32;
                let ii = (m - (*i as u64 * fs.pow_q_mod(jj)) % m) % m;
                Semilinear(ii as u32, jj)
            }
            Unipotent(h) => Unipotent(h.neg()),
            GeneralLinear(m) => GeneralLinear(m.inverse().map_err(|_| GroupError::Singular)?),
        })
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        match g {
            GroupElement::FieldScalar(i) => *i == 0,
            GroupElement::Semilinear(i, j) => *i == 0 && *j == 0,
            GroupElement::Unipotent(h) => h.is_zero(),
            GroupElement::GeneralLinear(m) => *m == MatrixFq::identity(self.base.clone(), self.n),
        }
    }

    pub fn act(&self, g: &GroupElement, v: &Subspace) -> Result<Subspace, GroupError> {
        if v.ambient_dim() != self.n || v.field() != &self.base {
            return Err(GroupError::AmbientMismatch {
                expected: self.n,
                got: v.ambient_dim(),
            });
        }
        match g {
            GroupElement::FieldScalar(i) => self.act_semilinear(*i, 0, v),
            GroupElement::Semilinear(i, j) => self.act_semilinear(*i, *j, v),
            _ => Ok(v.apply_matrix(&self.to_matrix(g)?)?),
        }
    }

    fn act_semilinear(&self, i: u32, j: u32, v: &Subspace) -> Result<Subspace, GroupError> {
        let fs = self.ext_or_err()?;
        Ok(v.map_rows(|row| {
            let x = fs.index_of_coords(row);
            fs.coords_of_index(fs.scale_index(fs.frobenius_index(x, j), i))
        }))
    }

    /// Parses `scalar:9`, `semilinear:1,1`, `unipotent:<matrix>` or `gl:<matrix>`.
    pub fn parse_generator(&self, spec: &str) -> Result<GroupElement, GroupError> {
        let bad = || GroupError::Parse(spec.to_string());
        let (kind, rest) = spec.trim().split_once(':').ok_or_else(bad)?;
        let g = match kind.trim() {
            "scalar" => GroupElement::FieldScalar(rest.trim().parse().map_err(|_| bad())?),
            "semilinear" => {
                let (i, j) = rest.split_once(',').ok_or_else(bad)?;
                GroupElement::Semilinear(i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?)
            }
            "unipotent" => GroupElement::Unipotent(MatrixFq::parse(self.base.clone(), rest)?),
            "gl" => GroupElement::GeneralLinear(MatrixFq::parse(self.base.clone(), rest)?),
            _ => return Err(bad()),
        };
        self.validate(g)
    }
}

/// A finite group given by generators and listed in breadth-first order from the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    ambient: Ambient,
    family: Family,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, generators {:?})", self.order(), self.generators)
    }
}

impl FiniteGroup {
    pub fn generate(ambient: Ambient, generators: &[GroupElement], cap: usize) -> Result<Self, GroupError> {
        let gens = generators
            .iter()
            .map(|g| ambient.validate(g.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let family = gens
            .iter()
            .map(GroupElement::family)
            .reduce(Ambient::join)
            .unwrap_or(if ambient.ext.is_some() { Family::Scalar } else { Family::GeneralLinear });
        let gens = gens
            .iter()
            .map(|g| ambient.coerce(g, family))
            .collect::<Result<Vec<_>, _>>()?;
        let identity = ambient.identity(family);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let c = ambient.compose(&elements[i], g)?;
                if !index.contains_key(&c) {
                    if elements.len() == cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(c.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(c);
                }
            }
        }
        Ok(Self {
            ambient,
            family,
            generators: gens,
            elements,
            index,
        })
    }

    pub fn trivial(ambient: Ambient, family: Family) -> Self {
        let identity = ambient.identity(family);
        Self {
            ambient,
            family,
            generators: Vec::new(),
            elements: vec![identity.clone()],
            index: HashMap::from([(identity, 0)]),
        }
    }

    /// The cyclic subgroup of `⟨α⟩` of the given order.
    pub fn scalar_subgroup(ambient: Ambient, order: u32) -> Result<Self, GroupError> {
        let m = ambient.ext_or_err()?.multiplicative_order();
        if order == 0 || m % order != 0 {
            return Err(GroupError::BadSeries(format!("{order} does not divide {m}")));
        }
        Self::generate(ambient, &[GroupElement::FieldScalar(m / order)], DEFAULT_GROUP_CAP)
    }

    /// Builds a group from a list already known to be closed, keeping its order.
    pub(crate) fn from_closed(ambient: Ambient, family: Family, elements: Vec<GroupElement>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Self {
            ambient,
            family,
            generators: elements.iter().skip(1).cloned().collect(),
            elements,
            index,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elements[0]
    }

    /// Position of `g` in the element list.
    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        if let Some(&i) = self.index.get(g) {
            return Some(i);
        }
        match self.ambient.coerce(g, self.family) {
            Ok(c) => self.index.get(&c).copied(),
            Err(_) => {
                let m = self.ambient.to_matrix(g).ok()?;
                self.elements
                    .iter()
                    .position(|e| self.ambient.to_matrix(e).map(|x| x == m).unwrap_or(false))
            }
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.position(g).is_some()
    }

    pub fn compose(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement, GroupError> {
        self.ambient.compose(g1, g2)
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.ambient.inverse(g)
    }

    pub fn act(&self, g: &GroupElement, v: &Subspace) -> Result<Subspace, GroupError> {
        self.ambient.act(g, v)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(a, x)| {
            gens[a + 1..]
                .iter()
                .all(|y| self.compose(x, y).ok() == self.compose(y, x).ok())
        })
    }

    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.ambient == g.ambient && self.elements.iter().all(|e| g.contains(e))
    }

    /// `g⁻¹ h g ∈ self` for generators `h` of `self` and `g` of `parent`.
    pub fn is_normal_in(&self, parent: &FiniteGroup) -> bool {
        if !self.is_subgroup_of(parent) {
            return false;
        }
        parent.generators.iter().all(|g| {
            let Ok(gi) = self.inverse(g) else { return false };
            self.generators.iter().all(|h| {
                self.compose(&gi, h)
                    .and_then(|x| self.compose(&x, g))
                    .map(|c| self.contains(&c))
                    .unwrap_or(false)
            })
        })
    }

    /// All generators fix `v`.
    pub fn is_invariant(&self, v: &Subspace) -> Result<bool, GroupError> {
        for g in &self.generators {
            if self.act(g, v)? != *v {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone)]
pub struct Coset {
    pub representative: GroupElement,
    pub elements: Vec<GroupElement>,
}

/// Left cosets `gH`, with representatives taken in `g`'s element order (identity first).
pub fn cosets(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Coset>, GroupError> {
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup);
    }
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for (i, rep) in g.elements().iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut elements = Vec::with_capacity(h.order());
        for x in h.elements() {
            let c = g.compose(rep, x)?;
            let pos = g.position(&c).ok_or(GroupError::NotSubgroup)?;
            assigned[pos] = true;
            elements.push(g.elements()[pos].clone());
        }
        out.push(Coset {
            representative: rep.clone(),
            elements,
        });
    }
    Ok(out)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Subgroup orders `order > … > 1` of a composition series of a cyclic group.
///
/// Indices are taken smallest prime first unless `prime_order` lists them.
pub fn composition_series_cyclic(order: u64, prime_order: Option<&[u64]>) -> Result<Vec<u64>, GroupError> {
    if order <= 1 {
        return Err(GroupError::BadOrder(order));
    }
    let primes = prime_factors(order);
    let indices = match prime_order {
        None => primes,
        Some(custom) => {
            let mut a = custom.to_vec();
            let mut b = primes;
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(GroupError::BadSeries(format!(
                    "indices {custom:?} are not the prime factors of {order}"
                )));
            }
            custom.to_vec()
        }
    };
    let mut chain = vec![order];
    let mut cur = order;
    for p in indices {
        cur /= p;
        chain.push(cur);
    }
    Ok(chain)
}

/// The subgroups of `⟨α⟩` along a chain of orders.
pub fn scalar_series(ambient: &Ambient, orders: &[u64]) -> Result<Vec<FiniteGroup>, GroupError> {
    let mut seen = HashSet::new();
    orders
        .iter()
        .map(|&d| {
            if !seen.insert(d) {
                return Err(GroupError::BadSeries(format!("repeated order {d}")));
            }
            FiniteGroup::scalar_subgroup(ambient.clone(), d as u32)
        })
        .collect()
}
