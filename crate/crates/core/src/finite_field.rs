//! Table-driven arithmetic in small finite fields.
//!
//! [`BaseField`] is the coefficient field `F_q`, `q = p^t`, whose elements are
//! encoded as integers `0..q` (base-`p` digits are the coordinates over `F_p`).
//! [`FieldSpec`] is the extension `GF(q^n) = F_q[x]/<p(x)>` for a primitive
//! polynomial `p(x)`. Every element of the extension is kept in two forms at once:
//! its coordinate vector over the polynomial basis `{1, α, ..., α^(n-1)}` and its
//! discrete logarithm to the base `α`. Both tables are built eagerly, which is
//! cheap for the field sizes supported here (at most 729 elements).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Characteristics accepted by the constructors.
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// Largest field order (for both base fields and extensions).
pub const MAX_FIELD_ORDER: u64 = 729;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is not supported (expected one of 2, 3, 5, 7)")]
    UnsupportedPrime(u32),
    #[error("field of order {order} exceeds the supported maximum of {MAX_FIELD_ORDER}")]
    TooLarge { order: u64 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("expected {expected} polynomial coefficients, got {got}")]
    BadPolynomialLength { expected: usize, got: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("value {value} is outside the base field of order {q}")]
    OutOfRange { value: u32, q: u32 },
    #[error("polynomial is reducible over F_{q}")]
    Reducible { q: u32 },
    #[error("polynomial is irreducible but not primitive: root has order {order}, expected {expected}")]
    NotPrimitive { order: u32, expected: u32 },
    #[error("no primitive polynomial of degree {degree} over F_{q}")]
    NoPrimitive { q: u32, degree: usize },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("coordinate vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("malformed field descriptor `{0}`")]
    Descriptor(String),
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn checked_order(q: u64, n: usize) -> Result<u64, FieldError> {
    let mut order: u64 = 1;
    for _ in 0..n {
        order = order.saturating_mul(q);
        if order > MAX_FIELD_ORDER {
            return Err(FieldError::TooLarge { order });
        }
    }
    Ok(order)
}

/// The coefficient field `F_q` with `q = p^t`.
#[derive(Clone)]
pub struct BaseField {
    p: u16,
    t: u32,
    q: u16,
    /// Defining polynomial over `F_p` (low to high, monic) when `t > 1`.
    modulus: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl BaseField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Arc<Self>, FieldError> {
        Self::new(p, 1)
    }

    /// `F_{p^t}`. For `t > 1` the field is built over the first primitive
    /// polynomial of degree `t` over `F_p` in coefficient order.
    pub fn new(p: u32, t: u32) -> Result<Arc<Self>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(FieldError::UnsupportedPrime(p));
        }
        if t == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = checked_order(p as u64, t as usize)? as u16;
        let prime = Arc::new(Self::prime_tables(p as u16));
        if t == 1 {
            return Ok(prime);
        }
        let modulus = find_primitive_polynomial(&prime, t as usize)?;
        let ext = FieldSpec::build(prime.clone(), modulus.clone())?;
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            for b in 0..qs {
                add[a * qs + b] = ext.add_index(a as u32, b as u32) as u16;
                mul[a * qs + b] = ext.mul_index(a as u32, b as u32) as u16;
            }
            neg[a] = ext.neg_index(a as u32) as u16;
            if a != 0 {
                inv[a] = ext.inv_index(a as u32) as u16;
            }
        }
        Ok(Arc::new(Self {
            p: p as u16,
            t,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }))
    }

    fn prime_tables(p: u16) -> Self {
        let ps = p as usize;
        let mut add = vec![0u16; ps * ps];
        let mut mul = vec![0u16; ps * ps];
        let mut neg = vec![0u16; ps];
        let mut inv = vec![0u16; ps];
        for a in 0..ps {
            for b in 0..ps {
                add[a * ps + b] = ((a + b) % ps) as u16;
                mul[a * ps + b] = ((a * b) % ps) as u16;
                if a * b % ps == 1 {
                    inv[a] = b as u16;
                }
            }
            neg[a] = ((ps - a) % ps) as u16;
        }
        Self {
            p,
            t: 1,
            q: p,
            modulus: Vec::new(),
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.t
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn contains(&self, value: u32) -> bool {
        value < self.q as u32
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut acc = 1u16;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius `a ↦ a^p` of the base field.
    pub fn frobenius(&self, a: u16) -> u16 {
        self.pow(a, self.p as u64)
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.t == other.t && self.modulus == other.modulus
    }
}

impl Eq for BaseField {}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

// Dense polynomials over a base field, low degree first, no trailing zeros
// except for the zero polynomial which is empty.

fn poly_trim(mut a: Vec<u16>) -> Vec<u16> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(field: &BaseField, a: &[u16], m: &[u16]) -> Vec<u16> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let v = field.mul(lead, c);
            r[shift + i] = field.sub(r[shift + i], v);
        }
        r = poly_trim(r);
    }
    r
}

fn monic_polys(q: u32, degree: usize) -> impl Iterator<Item = Vec<u16>> {
    let count = (q as u64).pow(degree as u32);
    (0..count).map(move |mut e| {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push((e % q as u64) as u16);
            e /= q as u64;
        }
        c.push(1);
        c
    })
}

/// Whether the monic polynomial `poly` (degree ≥ 1) is irreducible over `field`,
/// by trial division with every monic polynomial of degree at most half.
pub fn is_irreducible(field: &BaseField, poly: &[u16]) -> bool {
    let degree = poly.len() - 1;
    (1..=degree / 2).all(|d| {
        monic_polys(field.order(), d).all(|divisor| !poly_rem(field, poly, &divisor).is_empty())
    })
}

/// First primitive monic polynomial of the given degree (coefficients read as
/// base-`q` digits, constant term least significant).
pub fn find_primitive_polynomial(field: &Arc<BaseField>, degree: usize) -> Result<Vec<u16>, FieldError> {
    if degree == 0 {
        return Err(FieldError::ZeroDegree);
    }
    checked_order(field.order() as u64, degree)?;
    monic_polys(field.order(), degree)
        .find(|poly| FieldSpec::build(field.clone(), poly.clone()).is_ok())
        .ok_or(FieldError::NoPrimitive {
            q: field.order(),
            degree,
        })
}

/// The extension field `GF(q^n) = F_q[x]/<p(x)>` for a primitive `p(x)`.
pub struct FieldSpec {
    base: Arc<BaseField>,
    n: usize,
    modulus: Vec<u16>,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FieldSpec {
    /// Builds `GF(q^n)` with `q = p^t` from the coefficients `c_0, ..., c_n` of a
    /// monic primitive polynomial over `F_q`.
    pub fn new(p: u32, t: u32, n: usize, coeffs: &[u32]) -> Result<Arc<Self>, FieldError> {
        let base = BaseField::new(p, t)?;
        Self::over(base, n, coeffs)
    }

    /// Same as [`FieldSpec::new`] over an existing base field.
    pub fn over(base: Arc<BaseField>, n: usize, coeffs: &[u32]) -> Result<Arc<Self>, FieldError> {
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if coeffs.len() != n + 1 {
            return Err(FieldError::BadPolynomialLength {
                expected: n + 1,
                got: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| !base.contains(c)) {
            return Err(FieldError::OutOfRange {
                value: bad,
                q: base.order(),
            });
        }
        if coeffs[n] != 1 {
            return Err(FieldError::NotMonic);
        }
        let modulus: Vec<u16> = coeffs.iter().map(|&c| c as u16).collect();
        checked_order(base.order() as u64, n)?;
        if !is_irreducible(&base, &modulus) {
            return Err(FieldError::Reducible { q: base.order() });
        }
        Self::build(base, modulus).map(Arc::new)
    }

    /// `GF(q^n)` over the prime-power base field with the first primitive polynomial.
    pub fn default_for(p: u32, t: u32, n: usize) -> Result<Arc<Self>, FieldError> {
        let base = BaseField::new(p, t)?;
        Self::default_over(base, n)
    }

    pub fn default_over(base: Arc<BaseField>, n: usize) -> Result<Arc<Self>, FieldError> {
        let modulus = find_primitive_polynomial(&base, n)?;
        Self::build(base, modulus).map(Arc::new)
    }

    /// Builds the exp/log tables; fails unless the root of `modulus` generates the
    /// whole multiplicative group.
    fn build(base: Arc<BaseField>, modulus: Vec<u16>) -> Result<Self, FieldError> {
        let n = modulus.len() - 1;
        let q = base.order();
        let order = checked_order(q as u64, n)? as u32;
        let group_order = order - 1;
        let mut exp = Vec::with_capacity(group_order as usize);
        let mut log = vec![NO_LOG; order as usize];
        let mut coords = vec![0u16; n];
        coords[0] = 1;
        for i in 0..group_order {
            let idx = encode(&coords, q);
            if log[idx as usize] != NO_LOG {
                return Err(FieldError::NotPrimitive {
                    order: i,
                    expected: group_order,
                });
            }
            log[idx as usize] = i;
            exp.push(idx);
            // multiply by x and reduce with x^n = -(c_0 + ... + c_{n-1} x^{n-1})
            let carry = coords[n - 1];
            for j in (1..n).rev() {
                coords[j] = coords[j - 1];
            }
            coords[0] = 0;
            if carry != 0 {
                for j in 0..n {
                    let v = base.mul(carry, modulus[j]);
                    coords[j] = base.sub(coords[j], v);
                }
            }
        }
        if encode(&coords, q) != 1 {
            // the sequence did not close up: cannot happen for a field, but a
            // reducible modulus with a zero constant term ends here
            return Err(FieldError::NotPrimitive {
                order: 0,
                expected: group_order,
            });
        }
        Ok(Self {
            base,
            n,
            modulus,
            order,
            exp,
            log,
        })
    }

    pub fn base(&self) -> &Arc<BaseField> {
        &self.base
    }

    /// Extension degree `n`.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// `q^n`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `q^n - 1`, the order of `α`.
    pub fn multiplicative_order(&self) -> u32 {
        self.order - 1
    }

    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// Reduces an integer exponent modulo `q^n - 1`.
    pub fn reduce_exponent(&self, e: i64) -> u32 {
        e.rem_euclid(self.multiplicative_order() as i64) as u32
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement { field: self, index: 0 }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement { field: self, index: 1 }
    }

    pub fn alpha(&self) -> FieldElement<'_> {
        self.alpha_pow(1)
    }

    /// `α^e` for any integer exponent.
    pub fn alpha_pow(&self, e: i64) -> FieldElement<'_> {
        FieldElement {
            field: self,
            index: self.exp[self.reduce_exponent(e) as usize],
        }
    }

    /// Element with the given coordinates over `{1, α, ..., α^(n-1)}`.
    pub fn from_coords(&self, coords: &[u16]) -> Result<FieldElement<'_>, FieldError> {
        if coords.len() != self.n {
            return Err(FieldError::WrongLength {
                expected: self.n,
                got: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|&&c| !self.base.contains(c as u32)) {
            return Err(FieldError::OutOfRange {
                value: bad as u32,
                q: self.base.order(),
            });
        }
        Ok(FieldElement {
            field: self,
            index: encode(coords, self.base.order()),
        })
    }

    /// Every element, zero first, then `α^0, α^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> {
        std::iter::once(self.zero()).chain(self.exp.iter().map(move |&index| FieldElement { field: self, index }))
    }

    // Raw index arithmetic. An index is the base-q integer formed by the coordinates.

    pub fn coords_of_index(&self, index: u32) -> Vec<u16> {
        let q = self.base.order();
        let mut v = Vec::with_capacity(self.n);
        let mut e = index;
        for _ in 0..self.n {
            v.push((e % q) as u16);
            e /= q;
        }
        v
    }

    pub fn index_of_coords(&self, coords: &[u16]) -> u32 {
        encode(coords, self.base.order())
    }

    /// Discrete log of a nonzero index.
    #[inline]
    pub fn log_index(&self, index: u32) -> Option<u32> {
        let l = self.log[index as usize];
        (l != NO_LOG).then_some(l)
    }

    #[inline]
    pub fn exp_index(&self, e: u32) -> u32 {
        self.exp[(e % self.multiplicative_order()) as usize]
    }

    pub fn add_index(&self, a: u32, b: u32) -> u32 {
        let q = self.base.order();
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let s = self.base.add((a % q) as u16, (b % q) as u16) as u32;
            out += s * place;
            place *= q;
            a /= q;
            b /= q;
        }
        out
    }

    pub fn neg_index(&self, a: u32) -> u32 {
        let q = self.base.order();
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += self.base.neg((a % q) as u16) as u32 * place;
            place *= q;
            a /= q;
        }
        out
    }

    pub fn mul_index(&self, a: u32, b: u32) -> u32 {
        match (self.log_index(a), self.log_index(b)) {
            (Some(la), Some(lb)) => self.exp_index(la + lb),
            _ => 0,
        }
    }

    pub fn inv_index(&self, a: u32) -> u32 {
        let l = self.log_index(a).expect("inverse of zero");
        let m = self.multiplicative_order();
        self.exp_index((m - l) % m)
    }

    /// Index of `a · α^e`.
    #[inline]
    pub fn scale_index(&self, a: u32, e: u32) -> u32 {
        match self.log_index(a) {
            Some(l) => self.exp_index((l as u64 + e as u64) as u32 % self.multiplicative_order()),
            None => 0,
        }
    }

    /// Index of `a^(q^j)`.
    #[inline]
    pub fn frobenius_index(&self, a: u32, j: u32) -> u32 {
        match self.log_index(a) {
            Some(l) => {
                let m = self.multiplicative_order() as u64;
                let qj = self.pow_q_mod(j);
                self.exp_index(((l as u64 * qj) % m) as u32)
            }
            None => 0,
        }
    }

    /// `q^j mod (q^n - 1)`.
    pub fn pow_q_mod(&self, j: u32) -> u64 {
        let m = self.multiplicative_order() as u64;
        if m == 1 {
            return 0;
        }
        let q = self.base.order() as u64;
        // q^n ≡ 1, so only j mod n matters
        (0..j as usize % self.n).fold(1, |acc, _| acc * q % m)
    }

    /// The descriptor `gf(p,t,n,[c0,...,cn])`.
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!(
            "gf({},{},{},[{}])",
            self.base.characteristic(),
            self.base.degree(),
            self.n,
            coeffs.join(",")
        )
    }
}

fn encode(coords: &[u16], q: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * q + c as u32)
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.base == other.base && self.modulus == other.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// Parses `gf(p,t,n,[c0,c1,...,cn])`, coefficients low to high degree.
pub fn parse_descriptor(s: &str) -> Result<Arc<FieldSpec>, FieldError> {
    let bad = || FieldError::Descriptor(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("gf(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let open = inner.find('[').ok_or_else(bad)?;
    let head: Vec<&str> = inner[..open].trim_end_matches(',').split(',').collect();
    let list = inner[open..]
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(bad)?;
    if head.len() != 3 {
        return Err(bad());
    }
    let p: u32 = head[0].parse().map_err(|_| bad())?;
    let t: u32 = head[1].parse().map_err(|_| bad())?;
    let n: usize = head[2].parse().map_err(|_| bad())?;
    let coeffs = list
        .split(',')
        .map(|c| c.parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    FieldSpec::new(p, t, n, &coeffs)
}

/// Parsed form of a field descriptor, for use in configuration structs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor(pub Arc<FieldSpec>);

impl FromStr for Descriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_descriptor(s).map(Descriptor)
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldSpec,
    index: u32,
}

impl<'f> FieldElement<'f> {
    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    /// Discrete log to the base `α`, `None` for zero.
    pub fn exponent(&self) -> Option<u32> {
        self.field.log_index(self.index)
    }

    pub fn to_coords(&self) -> Vec<u16> {
        self.field.coords_of_index(self.index)
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn try_add(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(&other)?;
        Ok(Self {
            field: self.field,
            index: self.field.add_index(self.index, other.index),
        })
    }

    pub fn try_sub(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(&other)?;
        let neg = self.field.neg_index(other.index);
        Ok(Self {
            field: self.field,
            index: self.field.add_index(self.index, neg),
        })
    }

    pub fn try_mul(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(&other)?;
        Ok(Self {
            field: self.field,
            index: self.field.mul_index(self.index, other.index),
        })
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(Self {
            field: self.field,
            index: self.field.inv_index(self.index),
        })
    }

    /// `self^e`; `0^0 = 1`.
    pub fn pow(self, e: u64) -> Self {
        let index = match self.exponent() {
            _ if e == 0 => 1,
            None => 0,
            Some(l) => {
                let m = self.field.multiplicative_order() as u64;
                self.field.exp_index(((l as u64 * (e % m)) % m) as u32)
            }
        };
        Self { field: self.field, index }
    }

    /// `self^(q^j)`.
    pub fn frobenius(self, j: u32) -> Self {
        Self {
            field: self.field,
            index: self.field.frobenius_index(self.index, j),
        }
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u32> {
        let l = self.exponent()?;
        let m = self.field.multiplicative_order();
        Some(m / gcd(m, l))
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.index == other.index
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            None => f.write_str("0"),
            Some(e) => write!(f, "α^{e}"),
        }
    }
}

impl<'f> Add for FieldElement<'f> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("field elements from different fields")
    }
}

impl<'f> Sub for FieldElement<'f> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("field elements from different fields")
    }
}

impl<'f> Mul for FieldElement<'f> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("field elements from different fields")
    }
}

impl<'f> Neg for FieldElement<'f> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            field: self.field,
            index: self.field.neg_index(self.index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf64() -> Arc<FieldSpec> {
        FieldSpec::new(2, 1, 6, &[1, 1, 0, 0, 0, 0, 1]).unwrap()
    }

    /// Trial division over F_2[x] with bit-packed polynomials, independent of the
    /// table machinery.
    fn f2_has_factor(poly: u32) -> bool {
        let deg = |p: u32| 31 - p.leading_zeros();
        let rem = |mut a: u32, b: u32| {
            while a != 0 && deg(a) >= deg(b) {
                a ^= b << (deg(a) - deg(b));
            }
            a
        };
        (2u32..(1 << (deg(poly) / 2 + 1))).any(|d| deg(d) >= 1 && rem(poly, d) == 0)
    }

    #[test]
    fn builds_reference_fields() {
        let f = gf64();
        assert_eq!(f.order(), 64);
        let f16 = FieldSpec::new(2, 1, 4, &[1, 1, 0, 0, 1]).unwrap();
        assert_eq!(f16.order(), 16);
    }

    #[test]
    fn rejects_reducible_and_non_primitive() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(f2_has_factor(0b10101));
        assert_eq!(
            FieldSpec::new(2, 1, 4, &[1, 0, 1, 0, 1]).unwrap_err(),
            FieldError::Reducible { q: 2 }
        );
        // x^4 + x^3 + x^2 + x + 1 is irreducible, its root has order 5
        assert!(!f2_has_factor(0b11111));
        assert_eq!(
            FieldSpec::new(2, 1, 4, &[1, 1, 1, 1, 1]).unwrap_err(),
            FieldError::NotPrimitive { order: 5, expected: 15 }
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(BaseField::prime(4).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(BaseField::prime(11).unwrap_err(), FieldError::UnsupportedPrime(11));
        assert!(matches!(FieldSpec::default_for(2, 1, 10), Err(FieldError::TooLarge { .. })));
        assert_eq!(FieldSpec::new(2, 1, 2, &[1, 1, 0]).unwrap_err(), FieldError::NotMonic);
        assert_eq!(
            FieldSpec::new(2, 1, 2, &[1, 1]).unwrap_err(),
            FieldError::BadPolynomialLength { expected: 3, got: 2 }
        );
        assert_eq!(
            FieldSpec::new(3, 1, 2, &[2, 3, 1]).unwrap_err(),
            FieldError::OutOfRange { value: 3, q: 3 }
        );
    }

    #[test]
    fn defining_relation_and_order() {
        let f = gf64();
        assert_eq!(f.alpha_pow(6).to_coords(), vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(f.alpha_pow(6), f.alpha() + f.one());
        assert_eq!(f.alpha().multiplicative_order(), Some(63));
    }

    #[test]
    fn inverses_of_random_elements() {
        let f = gf64();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = f.alpha_pow(rng.gen_range(0..63));
            assert_eq!(a * a.inv().unwrap(), f.one());
        }
        assert_eq!(f.zero().inv().unwrap_err(), FieldError::ZeroInverse);
    }

    #[test]
    fn frobenius_properties() {
        let f = gf64();
        assert_eq!(f.alpha().frobenius(1), f.alpha_pow(2));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = f.from_coords(&(0..6).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>()).unwrap();
            let b = f.from_coords(&(0..6).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>()).unwrap();
            assert_eq!(a.frobenius(6), a);
            assert_eq!((a + b).frobenius(1), a.frobenius(1) + b.frobenius(1));
            assert_eq!((a * b).frobenius(1), a.frobenius(1) * b.frobenius(1));
        }
    }

    #[test]
    fn frobenius_is_linear_over_base_field() {
        let f = FieldSpec::default_for(3, 1, 3).unwrap();
        let base = f.base().clone();
        for a in f.elements() {
            for c in 0..3u16 {
                let scaled: Vec<u16> = a.to_coords().iter().map(|&x| base.mul(x, c)).collect();
                let ca = f.from_coords(&scaled).unwrap();
                let lhs: Vec<u16> = ca.frobenius(1).to_coords();
                let rhs: Vec<u16> = a.frobenius(1).to_coords().iter().map(|&x| base.mul(x, c)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn coordinate_round_trip_exhaustive() {
        for (p, n) in [(2, 6), (3, 6), (5, 4), (7, 3), (3, 3)] {
            let f = FieldSpec::default_for(p, 1, n).unwrap();
            for a in f.elements() {
                assert_eq!(f.from_coords(&a.to_coords()).unwrap(), a);
                if let Some(e) = a.exponent() {
                    assert_eq!(f.alpha_pow(e as i64), a);
                    assert_eq!(a.pow(f.multiplicative_order() as u64), f.one());
                }
            }
        }
        let f = gf64();
        assert_eq!(f.zero().to_coords(), vec![0; 6]);
        assert_eq!(f.from_coords(&f.alpha_pow(17).to_coords()).unwrap(), f.alpha_pow(17));
        assert!(matches!(f.from_coords(&[1, 0]), Err(FieldError::WrongLength { .. })));
        assert!(matches!(f.from_coords(&[2, 0, 0, 0, 0, 0]), Err(FieldError::OutOfRange { .. })));
    }

    #[test]
    fn prime_power_base_field() {
        let f4 = BaseField::new(2, 2).unwrap();
        assert_eq!(f4.order(), 4);
        for a in 1..4u16 {
            assert_eq!(f4.mul(a, f4.inv(a).unwrap()), 1);
            assert_eq!(f4.add(a, a), 0);
        }
        // GF(16) as a quadratic extension of F_4
        let f = FieldSpec::default_over(f4, 2).unwrap();
        assert_eq!(f.order(), 16);
        assert_eq!(f.alpha().multiplicative_order(), Some(15));
        assert_eq!(f.alpha().frobenius(2), f.alpha());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = gf64();
        let b = FieldSpec::default_for(2, 1, 4).unwrap();
        assert_eq!(a.one().try_add(b.one()).unwrap_err(), FieldError::MixedFields);
    }

    #[test]
    fn descriptor_round_trip() {
        let f = parse_descriptor("gf(2,1,6,[1,1,0,0,0,0,1])").unwrap();
        assert_eq!(f.descriptor(), "gf(2,1,6,[1,1,0,0,0,0,1])");
        assert_eq!(*f, *gf64());
        assert!(matches!(parse_descriptor("gf(2,1,6)"), Err(FieldError::Descriptor(_))));
        assert!(matches!(parse_descriptor("gf(2, 1, 4, [1,0,1,0,1])"), Err(FieldError::Reducible { .. })));
    }

    #[test]
    fn default_polynomials_match_common_choices() {
        assert_eq!(FieldSpec::default_for(2, 1, 6).unwrap().modulus(), &[1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(FieldSpec::default_for(2, 1, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }
}
