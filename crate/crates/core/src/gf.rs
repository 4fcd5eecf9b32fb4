//! Exact arithmetic in GF(p^k) using a polynomial basis.
//!
//! Elements are stored as a single `u64` code: the base-p digit expansion
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, where `c_i` is the coefficient of
//! `x^i`. Codes order lexicographically by `(c_{k-1}, ..., c_0)`, which is
//! what the canonical modulus search relies on.
//!
//! Fields of characteristic 3 and odd degree `2n + 1` additionally carry
//! the automorphism `theta: x -> x^(3^n)` and exponents of the shape
//! `a + b * 3^n` ([`ThetaExponent`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbers::{factor_u64, is_prime_u64};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{k}) is too large: at most 64-bit fields are supported")]
    TooLarge { p: u64, k: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("theta needs a field GF(3^(2n+1)), got GF({p}^{k})")]
    NotReeField { p: u64, k: u32 },
    #[error("zero raised to the non-positive exponent {0}")]
    ZeroPower(i128),
    #[error("modulus {0:?} is not a monic irreducible polynomial of the stated degree")]
    BadModulus(Vec<u64>),
    #[error("digit {digit} is out of range for characteristic {p}")]
    DigitOutOfRange { digit: u64, p: u64 },
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, GfError>;

/// Fields up to this size get log/antilog tables for multiplication.
const TABLE_LIMIT: u128 = 1 << 16;
/// Fields up to this size also get a full addition table.
const ADD_TABLE_LIMIT: u128 = 729;

struct Tables {
    exp: Vec<u64>,
    log: Vec<u64>,
    add: Option<Vec<u32>>,
}

/// A finite field GF(p^k) together with its defining modulus.
pub struct Field {
    p: u64,
    k: u32,
    size: u128,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.p == other.p && self.k == other.k && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl Clone for Field {
    fn clone(&self) -> Self {
        Field::build(self.p, self.k, self.modulus.clone())
    }
}

/// Serializable description of a field: `{"p": .., "k": .., "modulus": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
}

/// Wire format of a single element, with its field inlined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
    pub coeffs: Vec<u64>,
}

fn field_size(p: u64, k: u32) -> Option<u128> {
    let mut size: u128 = 1;
    for _ in 0..k {
        size = size.checked_mul(p as u128)?;
        if size > 1u128 << 64 {
            return None;
        }
    }
    Some(size)
}

impl Field {
    /// GF(p^k) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        Self::check_params(p, k)?;
        let size = field_size(p, k).ok_or(GfError::TooLarge { p, k })?;
        let modulus = (0..size)
            .map(|code| {
                let mut poly = digits(code as u64, p, k as usize);
                poly.push(1);
                poly
            })
            .find(|poly| poly::is_irreducible(poly, p))
            .expect("an irreducible polynomial exists in every degree");
        Ok(Field::build(p, k, modulus))
    }

    /// GF(p^k) with an explicit modulus, given constant term first and including the leading 1.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field> {
        if modulus.len() < 2 {
            return Err(GfError::ZeroDegree);
        }
        let k = (modulus.len() - 1) as u32;
        Self::check_params(p, k)?;
        field_size(p, k).ok_or(GfError::TooLarge { p, k })?;
        if let Some(&digit) = modulus.iter().find(|&&c| c >= p) {
            return Err(GfError::DigitOutOfRange { digit, p });
        }
        if modulus[k as usize] != 1 || !poly::is_irreducible(&modulus, p) {
            return Err(GfError::BadModulus(modulus));
        }
        Ok(Field::build(p, k, modulus))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        if spec.modulus.len() != spec.k as usize + 1 {
            return Err(GfError::WrongLength {
                expected: spec.k as usize + 1,
                got: spec.modulus.len(),
            });
        }
        Field::with_modulus(spec.p, spec.modulus.clone())
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
    }

    fn check_params(p: u64, k: u32) -> Result<()> {
        if !is_prime_u64(p) {
            return Err(GfError::NotPrime(p));
        }
        if k == 0 {
            return Err(GfError::ZeroDegree);
        }
        Ok(())
    }

    fn build(p: u64, k: u32, modulus: Vec<u64>) -> Field {
        let size = field_size(p, k).expect("size checked by caller");
        let mut field = Field {
            p,
            k,
            size,
            modulus,
            tables: None,
        };
        if size <= TABLE_LIMIT {
            field.tables = Some(field.make_tables());
        }
        field
    }

    fn make_tables(&self) -> Tables {
        let q = self.size as u64;
        let order = q - 1;
        let primes: Vec<u64> = factor_u64(order).into_iter().map(|(r, _)| r).collect();
        let gen = (1..q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&r| self.pow_code_slow(g, (order / r) as u128) != 1)
            })
            .expect("the multiplicative group is cyclic");
        let mut exp = vec![0u64; order as usize];
        let mut log = vec![0u64; q as usize];
        let mut acc = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u64;
            acc = self.mul_code_slow(acc, gen);
        }
        let add = (self.size <= ADD_TABLE_LIMIT).then(|| {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = self.add_code_slow(a, b) as u32;
                }
            }
            table
        });
        Tables { exp, log, add }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Number of elements, `p^k`.
    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `Some(n)` when this field is GF(3^(2n+1)).
    pub fn ree_n(&self) -> Option<u32> {
        (self.p == 3 && self.k % 2 == 1).then_some((self.k - 1) / 2)
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            code: 0,
        }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            code: 1,
        }
    }

    /// The class of `x`; for `k = 1` this is the residue 0 (the modulus is `x - c`).
    pub fn generator(&self) -> FieldElement<'_> {
        if self.k == 1 {
            let root = (self.p - self.modulus[0]) % self.p;
            self.element_from_code(root)
        } else {
            self.element_from_code(self.p)
        }
    }

    /// Image of an integer under `Z -> GF(p)`.
    pub fn from_int(&self, value: i64) -> FieldElement<'_> {
        let r = (value as i128).rem_euclid(self.p as i128) as u64;
        self.element_from_code(r)
    }

    /// Element from coefficients, constant term first; missing high digits are zero.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement<'_>> {
        if coeffs.len() > self.k as usize {
            return Err(GfError::WrongLength {
                expected: self.k as usize,
                got: coeffs.len(),
            });
        }
        let mut code: u128 = 0;
        let mut place: u128 = 1;
        for &c in coeffs {
            if c >= self.p {
                return Err(GfError::DigitOutOfRange {
                    digit: c,
                    p: self.p,
                });
            }
            code += c as u128 * place;
            place *= self.p as u128;
        }
        Ok(self.element_from_code(code as u64))
    }

    pub fn element_from_code(&self, code: u64) -> FieldElement<'_> {
        debug_assert!((code as u128) < self.size);
        FieldElement { field: self, code }
    }

    pub fn from_json(&self, json: &ElementJson) -> Result<FieldElement<'_>> {
        if json.p != self.p || json.k != self.k || json.modulus != self.modulus {
            return Err(GfError::FieldMismatch);
        }
        self.element(&json.coeffs)
    }

    /// All elements in code order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..self.size).map(move |c| self.element_from_code(c as u64))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement<'_> {
        let code = rng.gen_range(0..self.size) as u64;
        self.element_from_code(code)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement<'_> {
        let code = rng.gen_range(1..self.size) as u64;
        self.element_from_code(code)
    }

    // Raw code arithmetic. Matrix kernels work on codes directly.

    #[inline]
    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        if let Some(Tables { add: Some(t), .. }) = &self.tables {
            return t[(a * self.size as u64 + b) as usize] as u64;
        }
        self.add_code_slow(a, b)
    }

    fn add_code_slow(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as u128;
        let (mut a, mut b) = (a as u128, b as u128);
        let mut out: u128 = 0;
        let mut place: u128 = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u64
    }

    #[inline]
    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u128;
        let mut a = a as u128;
        let mut out: u128 = 0;
        let mut place: u128 = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out as u64
    }

    #[inline]
    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    #[inline]
    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let order = self.size as u64 - 1;
            let mut e = t.log[a as usize] + t.log[b as usize];
            if e >= order {
                e -= order;
            }
            return t.exp[e as usize];
        }
        self.mul_code_slow(a, b)
    }

    fn mul_code_slow(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let x = digits(a, self.p, k);
        let y = digits(b, self.p, k);
        let prod = poly::mul(&x, &y, self.p);
        let rem = poly::rem(&prod, &self.modulus, self.p);
        undigits(&rem, self.p)
    }

    fn inv_code(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        let x = digits(a, self.p, self.k as usize);
        let inv = poly::inv_mod(&x, &self.modulus, self.p);
        Ok(undigits(&inv, self.p))
    }

    fn pow_code_slow(&self, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_code_slow(acc, base);
            }
            base = self.mul_code_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn pow_code(&self, a: u64, e: u128) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let order = self.size - 1;
            let idx = (t.log[a as usize] as u128 * (e % order)) % order;
            return t.exp[idx as usize];
        }
        let mut base = a;
        let mut acc = 1u64;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_code(acc, base);
            }
            base = self.mul_code(base, base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

/// Base-p digits of `code`, constant term first, padded to `len`.
pub(crate) fn digits(code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    let mut c = code as u128;
    for _ in 0..len {
        out.push((c % p as u128) as u64);
        c /= p as u128;
    }
    out
}

fn undigits(coeffs: &[u64], p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| acc * p as u128 + c as u128) as u64
}

/// Exponent `a + b * 3^n`, evaluated in GF(3^(2n+1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaExponent {
    pub a: i64,
    pub b: i64,
}

impl ThetaExponent {
    pub const ONE: ThetaExponent = ThetaExponent { a: 1, b: 0 };
    pub const THETA: ThetaExponent = ThetaExponent { a: 0, b: 1 };
    pub const THREE_THETA: ThetaExponent = ThetaExponent { a: 0, b: 3 };
    pub const THETA_PLUS_ONE: ThetaExponent = ThetaExponent { a: 1, b: 1 };
    pub const TWO_THETA_PLUS_ONE: ThetaExponent = ThetaExponent { a: 1, b: 2 };
    pub const THREE_THETA_PLUS_ONE: ThetaExponent = ThetaExponent { a: 1, b: 3 };
    pub const THREE_THETA_PLUS_TWO: ThetaExponent = ThetaExponent { a: 2, b: 3 };

    pub const fn new(a: i64, b: i64) -> Self {
        ThetaExponent { a, b }
    }

    /// The integer `a + b * 3^n`.
    pub fn evaluate(&self, n: u32) -> i128 {
        self.a as i128 + self.b as i128 * 3i128.pow(n)
    }
}

impl fmt::Display for ThetaExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "θ"),
            (0, b) => write!(f, "{b}θ"),
            (a, 1) => write!(f, "θ{a:+}"),
            (a, b) => write!(f, "{b}θ{a:+}"),
        }
    }
}

/// An element of a [`Field`].
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    code: u64,
}

impl<'f> FieldElement<'f> {
    pub fn field(&self) -> &'f Field {
        self.field
    }

    /// Base-p digit code, `sum c_i p^i`.
    pub fn code(&self) -> u64 {
        self.code
    }

    /// Coefficients in the polynomial basis, constant term first, length `k`.
    pub fn coeffs(&self) -> Vec<u64> {
        digits(self.code, self.field.p, self.field.k as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn same_field(&self, other: &FieldElement<'_>) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn checked_add(self, rhs: FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(&rhs)?;
        Ok(self.with_code(self.field.add_code(self.code, rhs.code)))
    }

    pub fn checked_sub(self, rhs: FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(&rhs)?;
        Ok(self.with_code(self.field.sub_code(self.code, rhs.code)))
    }

    pub fn checked_mul(self, rhs: FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(&rhs)?;
        Ok(self.with_code(self.field.mul_code(self.code, rhs.code)))
    }

    pub fn inv(self) -> Result<FieldElement<'f>> {
        Ok(self.with_code(self.field.inv_code(self.code)?))
    }

    /// `self^e` for a non-negative exponent; `0^0 = 1` here, unlike [`Self::pow_theta`].
    pub fn pow(self, e: u128) -> FieldElement<'f> {
        self.with_code(self.field.pow_code(self.code, e))
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(self) -> FieldElement<'f> {
        self.pow(self.field.p as u128)
    }

    /// `x^(3^n)` in GF(3^(2n+1)), by `n` successive cubings.
    pub fn theta(self) -> Result<FieldElement<'f>> {
        let n = self.ree_n()?;
        Ok((0..n).fold(self, |x, _| x.frobenius()))
    }

    /// `x^a * (x^(3^n))^b`. Zero maps to zero for positive total exponents.
    pub fn pow_theta(self, e: ThetaExponent) -> Result<FieldElement<'f>> {
        let n = self.ree_n()?;
        let total = e.evaluate(n);
        if self.is_zero() {
            return if total > 0 {
                Ok(self)
            } else {
                Err(GfError::ZeroPower(total))
            };
        }
        let order = (self.field.size - 1) as i128;
        let reduced = total.rem_euclid(order) as u128;
        Ok(self.pow(reduced))
    }

    fn ree_n(&self) -> Result<u32> {
        self.field.ree_n().ok_or(GfError::NotReeField {
            p: self.field.p,
            k: self.field.k,
        })
    }

    fn with_code(self, code: u64) -> FieldElement<'f> {
        FieldElement {
            field: self.field,
            code,
        }
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            p: self.field.p,
            k: self.field.k,
            modulus: self.field.modulus.clone(),
            coeffs: self.coeffs(),
        }
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field == other.field
    }
}

impl Eq for FieldElement<'_> {}

impl std::hash::Hash for FieldElement<'_> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement<'_> {
    /// Polynomial notation in `x`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.code == 0 {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'f> $trait for FieldElement<'f> {
            type Output = FieldElement<'f>;

            fn $method(self, rhs: FieldElement<'f>) -> FieldElement<'f> {
                self.$checked(rhs)
                    .expect("arithmetic on elements of distinct fields")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<'f> Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;

    fn neg(self) -> FieldElement<'f> {
        self.with_code(self.field.neg_code(self.code))
    }
}

/// Dense polynomials over GF(p), constant term first.
pub(crate) mod poly {
    use crate::numbers::factor_u64;

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv_mod_p(a: u64, p: u64) -> u64 {
        // Fermat; p is prime.
        let mut base = a % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, p);
            }
            base = mulmod(base, base, p);
            e >>= 1;
        }
        acc
    }

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                ((x as u128 + p as u128 - y as u128) % p as u128) as u64
            })
            .collect();
        trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = degree(b).expect("division by the zero polynomial");
        let lead_inv = inv_mod_p(b[db], p);
        let mut rem = trim(a.to_vec());
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0u64; rem.len() - db];
        while let Some(dr) = degree(&rem) {
            if dr < db {
                break;
            }
            let c = mulmod(rem[dr], lead_inv, p);
            let shift = dr - db;
            quot[shift] = c;
            for (i, &bc) in b.iter().enumerate().take(db + 1) {
                let t = mulmod(c, bc, p);
                rem[i + shift] =
                    ((rem[i + shift] as u128 + p as u128 - t as u128) % p as u128) as u64;
            }
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    /// Remainder, padded with zeros to the modulus degree.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let k = m.len() - 1;
        let (_, mut r) = divrem(a, m, p);
        r.resize(k, 0);
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Inverse of `a` modulo the irreducible `m` by the extended Euclidean algorithm.
    pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since m is irreducible and a != 0.
        let c = inv_mod_p(r0[0], p);
        let inv = s0.iter().map(|&x| mulmod(x, c, p)).collect::<Vec<_>>();
        rem(&inv, m, p)
    }

    fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test: `m` (monic, degree k) is irreducible iff `x^(p^k) = x mod m`
    /// and `gcd(x^(p^(k/r)) - x, m) = 1` for every prime `r | k`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = match degree(m) {
            Some(k) if k >= 1 => k,
            _ => return false,
        };
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        // frob[j] = x^(p^j) mod m
        let mut frob = vec![rem(&x, m, p)];
        for j in 0..k {
            let next = powmod(&frob[j], p as u128, m, p);
            frob.push(next);
        }
        if trim(frob[k].clone()) != x {
            return false;
        }
        factor_u64(k as u64).into_iter().all(|(r, _)| {
            let diff = sub(&frob[k / r as usize], &x, p);
            let g = gcd(&diff, m, p);
            degree(&g) == Some(0)
        })
    }
}
