//! The G₂ root system, its 7×7 root elements, and square matrices over GF(q).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::gf::{Field, FieldElement, FieldSpec, ThetaExponent};
use crate::numbers::factorize;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PositiveRoot {
    A,
    B,
    APlusB,
    TwoAPlusB,
    ThreeAPlusB,
    ThreeAPlusTwoB,
}

impl PositiveRoot {
    pub const ALL: [PositiveRoot; 6] = [
        PositiveRoot::A,
        PositiveRoot::B,
        PositiveRoot::APlusB,
        PositiveRoot::TwoAPlusB,
        PositiveRoot::ThreeAPlusB,
        PositiveRoot::ThreeAPlusTwoB,
    ];

    fn label(self) -> &'static str {
        match self {
            PositiveRoot::A => "a",
            PositiveRoot::B => "b",
            PositiveRoot::APlusB => "a+b",
            PositiveRoot::TwoAPlusB => "2a+b",
            PositiveRoot::ThreeAPlusB => "3a+b",
            PositiveRoot::ThreeAPlusTwoB => "3a+2b",
        }
    }
}

/// `(coefficient, row, column)` triples, 1-based.
type Entries = &'static [(i64, usize, usize)];

/// A root of G₂: a positive root with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub base: PositiveRoot,
    pub negative: bool,
}

impl Root {
    pub const A: Root = Root::pos(PositiveRoot::A);
    pub const B: Root = Root::pos(PositiveRoot::B);
    pub const A_PLUS_B: Root = Root::pos(PositiveRoot::APlusB);
    pub const TWO_A_PLUS_B: Root = Root::pos(PositiveRoot::TwoAPlusB);
    pub const THREE_A_PLUS_B: Root = Root::pos(PositiveRoot::ThreeAPlusB);
    pub const THREE_A_PLUS_TWO_B: Root = Root::pos(PositiveRoot::ThreeAPlusTwoB);

    pub const fn pos(base: PositiveRoot) -> Root {
        Root {
            base,
            negative: false,
        }
    }

    /// All twelve roots, positive ones first.
    pub fn all() -> impl Iterator<Item = Root> {
        PositiveRoot::ALL
            .into_iter()
            .map(Root::pos)
            .chain(PositiveRoot::ALL.into_iter().map(|b| -Root::pos(b)))
    }

    /// Squared length: 1 for the short roots a, a+b, 2a+b and 3 for the long ones.
    pub fn sq_length(self) -> u32 {
        match self.base {
            PositiveRoot::A | PositiveRoot::APlusB | PositiveRoot::TwoAPlusB => 1,
            _ => 3,
        }
    }

    /// The length-swapping symmetry: a <-> b, a+b <-> 3a+b, 2a+b <-> 3a+2b.
    pub fn bar(self) -> Root {
        use PositiveRoot::*;
        let base = match self.base {
            A => B,
            B => A,
            APlusB => ThreeAPlusB,
            ThreeAPlusB => APlusB,
            TwoAPlusB => ThreeAPlusTwoB,
            ThreeAPlusTwoB => TwoAPlusB,
        };
        Root {
            base,
            negative: self.negative,
        }
    }

    pub fn label(self) -> String {
        if self.negative {
            // -a-b rather than -(a+b)
            let mut s = String::from("-");
            s.push_str(&self.base.label().replace('+', "-"));
            s
        } else {
            self.base.label().to_string()
        }
    }

    /// Nonzero entries of the root element: `x(t) = e + t*N + t^2*M`, as
    /// `(coefficient, row, column)` with 1-based indices.
    ///
    /// The a and 2a+b subgroups (and their opposites) are normalized with the
    /// opposite sign to the other four; with this choice α, β, γ are σ-fixed
    /// and satisfy the unipotent product law. Each negative root element is
    /// exp of the sl₂-partner of its positive root's nilpotent.
    fn entries(self) -> (Entries, Entries) {
        use PositiveRoot::*;
        match (self.base, self.negative) {
            (A, false) => (
                &[(-1, 6, 7), (-2, 4, 5), (1, 3, 4), (1, 1, 2)],
                &[(-1, 3, 5)],
            ),
            (B, false) => (&[(1, 5, 6), (-1, 2, 3)], &[]),
            (A, true) => (
                &[(-1, 7, 6), (-1, 5, 4), (2, 4, 3), (1, 2, 1)],
                &[(-1, 5, 3)],
            ),
            (B, true) => (&[(1, 6, 5), (-1, 3, 2)], &[]),
            (APlusB, false) => (
                &[(1, 1, 3), (-1, 2, 4), (2, 4, 6), (-1, 5, 7)],
                &[(-1, 2, 6)],
            ),
            (ThreeAPlusB, false) => (&[(1, 1, 5), (-1, 3, 7)], &[]),
            (APlusB, true) => (
                &[(1, 3, 1), (-2, 4, 2), (1, 6, 4), (-1, 7, 5)],
                &[(-1, 6, 2)],
            ),
            (ThreeAPlusB, true) => (&[(1, 5, 1), (-1, 7, 3)], &[]),
            (TwoAPlusB, false) => (
                &[(-2, 4, 7), (-1, 3, 6), (1, 2, 5), (1, 1, 4)],
                &[(-1, 1, 7)],
            ),
            (ThreeAPlusTwoB, false) => (&[(1, 2, 7), (-1, 1, 6)], &[]),
            (TwoAPlusB, true) => (
                &[(-1, 7, 4), (-1, 6, 3), (1, 5, 2), (2, 4, 1)],
                &[(-1, 7, 1)],
            ),
            (ThreeAPlusTwoB, true) => (&[(1, 7, 2), (-1, 6, 1)], &[]),
        }
    }
}

impl std::ops::Neg for Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root {
            base: self.base,
            negative: !self.negative,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Root> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Root::all()
            .find(|r| {
                r.label() == compact || (r.negative && format!("-({})", r.base.label()) == compact)
            })
            .ok_or_else(|| Error::UnknownRoot(s.to_string()))
    }
}

/// A square matrix over a finite field, entries stored as field codes, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<'f> {
    field: &'f Field,
    dim: usize,
    data: Vec<u64>,
}

/// The 7×7 matrices carrying root elements and Ree generators.
pub type Matrix7<'f> = Matrix<'f>;

impl<'f> Matrix<'f> {
    pub fn identity(field: &'f Field, dim: usize) -> Matrix<'f> {
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1;
        }
        Matrix { field, dim, data }
    }

    pub fn zero(field: &'f Field, dim: usize) -> Matrix<'f> {
        Matrix {
            field,
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn from_rows(rows: &[Vec<FieldElement<'f>>]) -> Result<Matrix<'f>> {
        let dim = rows.len();
        let field = rows
            .first()
            .and_then(|r| r.first())
            .map(|e| e.field())
            .ok_or_else(|| Error::Input("empty matrix".into()))?;
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(e.code());
            }
        }
        Ok(Matrix { field, dim, data })
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement<'f> {
        self.field
            .element_from_code(self.data[row * self.dim + col])
    }

    pub fn set(&mut self, row: usize, col: usize, value: FieldElement<'f>) {
        assert!(value.field() == self.field, "entry from a different field");
        self.data[row * self.dim + col] = value.code();
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement<'f>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(idx, &c)| c == u64::from(idx / self.dim == idx % self.dim))
    }

    /// Exactly one nonzero entry in each row and each column.
    pub fn is_monomial(&self) -> bool {
        let n = self.dim;
        let row_ok = (0..n).all(|i| (0..n).filter(|&j| self.data[i * n + j] != 0).count() == 1);
        let col_ok = (0..n).all(|j| (0..n).filter(|&i| self.data[i * n + j] != 0).count() == 1);
        row_ok && col_ok
    }

    fn check_compatible(&self, other: &Matrix<'_>) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Matrix<'_>) -> Result<Matrix<'f>> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Matrix<'_>) -> Matrix<'f> {
        let n = self.dim;
        let f = self.field;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        let idx = i * n + j;
                        data[idx] = f.add_code(data[idx], f.mul_code(a, b));
                    }
                }
            }
        }
        Matrix {
            field: f,
            dim: n,
            data,
        }
    }

    pub fn pow(&self, e: &BigUint) -> Matrix<'f> {
        let mut acc = Matrix::identity(self.field, self.dim);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_unchecked(&acc);
            if e.bit(i) {
                acc = acc.mul_unchecked(self);
            }
        }
        acc
    }

    /// Row reduction; returns the determinant and, when it is nonzero, the inverse.
    fn eliminate(&self) -> (FieldElement<'f>, Option<Matrix<'f>>) {
        let n = self.dim;
        let f = self.field;
        let mut a = self.data.clone();
        let mut inv = Matrix::identity(f, n).data;
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return (f.zero(), None);
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
                det = f.neg_code(det);
            }
            let pv = a[col * n + col];
            det = f.mul_code(det, pv);
            let pinv = f
                .element_from_code(pv)
                .inv()
                .expect("pivot is nonzero")
                .code();
            for j in 0..n {
                a[col * n + j] = f.mul_code(a[col * n + j], pinv);
                inv[col * n + j] = f.mul_code(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let s = f.mul_code(factor, a[col * n + j]);
                    a[r * n + j] = f.sub_code(a[r * n + j], s);
                    let t = f.mul_code(factor, inv[col * n + j]);
                    inv[r * n + j] = f.sub_code(inv[r * n + j], t);
                }
            }
        }
        (
            f.element_from_code(det),
            Some(Matrix {
                field: f,
                dim: n,
                data: inv,
            }),
        )
    }

    pub fn det(&self) -> FieldElement<'f> {
        self.eliminate().0
    }

    pub fn inv(&self) -> Result<Matrix<'f>> {
        self.eliminate().1.ok_or(Error::Singular)
    }

    /// Least `k >= 1` with `A^k = 1`, given that `k` divides `bound`.
    ///
    /// Starts from `bound` and strips prime factors while the power stays trivial.
    pub fn order(&self, bound: &BigUint) -> Result<BigUint> {
        if bound.is_zero() || !self.pow(bound).is_identity() {
            return Err(Error::OrderDoesNotDivide {
                bound: bound.clone(),
            });
        }
        let mut order = bound.clone();
        for (p, e) in factorize(bound)? {
            for _ in 0..e {
                let candidate = &order / &p;
                if self.pow(&candidate).is_identity() {
                    order = candidate;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }

    /// Row-major base-p digit bytes; injective on matrices over one field.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let p = self.field.characteristic();
        let k = self.field.degree() as usize;
        let wide = p > 256;
        let mut out = Vec::with_capacity(self.data.len() * k * if wide { 8 } else { 1 });
        for &code in &self.data {
            let mut c = code as u128;
            for _ in 0..k {
                let d = (c % p as u128) as u64;
                c /= p as u128;
                if wide {
                    out.extend_from_slice(&d.to_le_bytes());
                } else {
                    out.push(d as u8);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            field: self.field.spec(),
            rows: self
                .rows()
                .iter()
                .map(|r| r.iter().map(|e| e.coeffs()).collect())
                .collect(),
        }
    }

    /// Rows of digit lists, checked against `field`.
    pub fn from_digit_rows(field: &'f Field, rows: &[Vec<Vec<u64>>]) -> Result<Matrix<'f>> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|d| field.element(d))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if rows.is_empty() {
            return Err(Error::Input("empty matrix".into()));
        }
        Matrix::from_rows(&rows)
    }
}

impl<'f> std::ops::Mul for &Matrix<'f> {
    type Output = Matrix<'f>;

    fn mul(self, rhs: &Matrix<'f>) -> Matrix<'f> {
        self.checked_mul(rhs).expect("incompatible matrices")
    }
}

impl fmt::Debug for Matrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} [", self.field)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

/// `{"field": {...}, "rows": [[digits, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldSpec,
    pub rows: Vec<Vec<Vec<u64>>>,
}

/// The root element `x_ι(t)`.
pub fn root_element<'f>(root: Root, t: FieldElement<'f>) -> Matrix7<'f> {
    let field = t.field();
    let mut m = Matrix::identity(field, 7);
    let (linear, quadratic) = root.entries();
    let t2 = t * t;
    for &(c, i, j) in linear {
        let v = field.from_int(c) * t;
        m.set(i - 1, j - 1, m.get(i - 1, j - 1) + v);
    }
    for &(c, i, j) in quadratic {
        let v = field.from_int(c) * t2;
        m.set(i - 1, j - 1, m.get(i - 1, j - 1) + v);
    }
    m
}

/// Whether `x_ι(s) x_ι(t) = x_ι(s + t)`.
pub fn one_parameter_check(root: Root, s: FieldElement<'_>, t: FieldElement<'_>) -> bool {
    let lhs = &root_element(root, s) * &root_element(root, t);
    lhs == root_element(root, s + t)
}

/// `x_ι(t) x_{-ι}(-1/t) x_ι(t)`.
pub fn weyl_element<'f>(root: Root, t: FieldElement<'f>) -> Result<Matrix7<'f>> {
    weyl_word(root, t)?.evaluate()
}

pub fn weyl_word<'f>(root: Root, t: FieldElement<'f>) -> Result<RootWord<'f>> {
    if t.is_zero() {
        return Err(Error::ZeroWeylParameter);
    }
    let minus_inv = -t.inv()?;
    RootWord::from_letters(t.field(), vec![(root, t), (-root, minus_inv), (root, t)])
}

/// A formal product of root elements over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct RootWord<'f> {
    field: &'f Field,
    letters: Vec<(Root, FieldElement<'f>)>,
}

impl<'f> RootWord<'f> {
    pub fn new(field: &'f Field) -> RootWord<'f> {
        RootWord {
            field,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(
        field: &'f Field,
        letters: Vec<(Root, FieldElement<'f>)>,
    ) -> Result<RootWord<'f>> {
        if letters.iter().any(|(_, t)| t.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(RootWord { field, letters })
    }

    pub fn letters(&self) -> &[(Root, FieldElement<'f>)] {
        &self.letters
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn push(&mut self, root: Root, t: FieldElement<'f>) -> Result<()> {
        if t.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        self.letters.push((root, t));
        Ok(())
    }

    /// Concatenation.
    pub fn then(mut self, other: &RootWord<'f>) -> Result<RootWord<'f>> {
        if other.field != self.field {
            return Err(Error::FieldMismatch);
        }
        self.letters.extend_from_slice(&other.letters);
        Ok(self)
    }

    /// The product of the letters' root elements, left to right.
    pub fn evaluate(&self) -> Result<Matrix7<'f>> {
        Ok(self
            .letters
            .iter()
            .fold(Matrix::identity(self.field, 7), |acc, &(r, t)| {
                acc.mul_unchecked(&root_element(r, t))
            }))
    }

    pub fn to_json(&self) -> Vec<LetterJson> {
        self.letters
            .iter()
            .map(|(r, t)| LetterJson {
                root: r.label(),
                t: t.coeffs(),
            })
            .collect()
    }

    pub fn from_json(field: &'f Field, letters: &[LetterJson]) -> Result<RootWord<'f>> {
        let letters = letters
            .iter()
            .map(|l| Ok((l.root.parse::<Root>()?, field.element(&l.t)?)))
            .collect::<Result<Vec<_>>>()?;
        RootWord::from_letters(field, letters)
    }
}

impl fmt::Debug for RootWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RootWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(r, t)| format!("x_{{{r}}}({t})"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One letter of a root word: `{"root": "a+b", "t": [digits]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterJson {
    pub root: String,
    pub t: Vec<u64>,
}

/// `σ` on a formal word: `(ι, t) -> (bar ι, t^(θ·|bar ι|²))`.
pub fn sigma_word<'f>(word: &RootWord<'f>) -> Result<RootWord<'f>> {
    let letters = word
        .letters
        .iter()
        .map(|&(r, t)| {
            let image = r.bar();
            let e = ThetaExponent::new(0, image.sq_length() as i64);
            Ok((image, t.pow_theta(e)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RootWord {
        field: word.field,
        letters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(k: u32) -> Field {
        Field::new(3, k).unwrap()
    }

    #[test]
    fn x_b_matches_display() {
        let f = gf(3);
        let t = f.generator();
        let m = root_element(Root::B, t);
        let mut expected = Matrix::identity(&f, 7);
        expected.set(4, 5, t);
        expected.set(1, 2, -t);
        assert_eq!(m, expected);
    }

    #[test]
    fn zero_parameter_is_identity() {
        let f = gf(3);
        for r in Root::all() {
            assert!(root_element(r, f.zero()).is_identity(), "{r}");
        }
    }

    #[test]
    fn root_elements_have_determinant_one() {
        let f1 = gf(1);
        for r in Root::all() {
            for t in f1.elements() {
                assert!(root_element(r, t).det().is_one(), "{r} {t}");
            }
        }
        let f3 = gf(3);
        for r in Root::all() {
            for t in f3.elements() {
                assert!(root_element(r, t).det().is_one(), "{r} {t}");
            }
        }
    }

    #[test]
    fn one_parameter_subgroups() {
        let f1 = gf(1);
        for r in Root::all() {
            for s in f1.elements() {
                for t in f1.elements() {
                    assert!(one_parameter_check(r, s, t), "{r} {s} {t}");
                }
            }
        }
        let f3 = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for r in Root::all() {
            for _ in 0..40 {
                let (s, t) = (f3.random(&mut rng), f3.random(&mut rng));
                assert!(one_parameter_check(r, s, t), "{r} {s} {t}");
            }
        }
        for t in f3.elements() {
            assert!((&root_element(Root::A, t) * &root_element(Root::A, -t)).is_identity());
        }
    }

    #[test]
    fn weyl_elements() {
        let f1 = gf(1);
        let one = f1.one();
        let w = weyl_element(Root::A_PLUS_B, one).unwrap();
        assert!(w.is_monomial());
        for r in Root::all() {
            let w = weyl_element(r, one).unwrap();
            let w_inv = weyl_element(r, -one).unwrap();
            assert!(w.is_monomial(), "{r}");
            assert!((&w * &w_inv).is_identity(), "{r}");
            assert!(w.det().is_one(), "{r}");
        }
        assert!(weyl_element(Root::THREE_A_PLUS_B, one)
            .unwrap()
            .det()
            .is_one());
        assert!(weyl_element(Root::A, one).unwrap().det().is_one());
        assert!(matches!(
            weyl_element(Root::A, f1.zero()),
            Err(Error::ZeroWeylParameter)
        ));
        let f3 = gf(3);
        for r in Root::all() {
            for t in f3.elements().skip(1) {
                assert!(weyl_element(r, t).unwrap().is_monomial(), "{r} {t}");
            }
        }
    }

    #[test]
    fn bar_rules() {
        assert_eq!(Root::A.bar(), Root::B);
        assert_eq!(Root::A_PLUS_B.bar(), Root::THREE_A_PLUS_B);
        assert_eq!(Root::TWO_A_PLUS_B.bar(), Root::THREE_A_PLUS_TWO_B);
        assert_eq!((-Root::A_PLUS_B).bar(), -Root::THREE_A_PLUS_B);
        for r in Root::all() {
            assert_eq!(r.bar().bar(), r);
            assert_eq!((-r).bar(), -r.bar());
            assert_ne!(r.sq_length(), r.bar().sq_length());
        }
    }

    #[test]
    fn root_labels_round_trip() {
        for r in Root::all() {
            assert_eq!(r.label().parse::<Root>().unwrap(), r);
        }
        assert_eq!("-(a+b)".parse::<Root>().unwrap(), -Root::A_PLUS_B);
        assert!("c".parse::<Root>().is_err());
    }

    #[test]
    fn sigma_on_single_letters() {
        let f = gf(3);
        for t in f.elements() {
            let tt = t.theta().unwrap();
            let w = RootWord::from_letters(&f, vec![(Root::A, tt)]).unwrap();
            let img = sigma_word(&w).unwrap();
            assert_eq!(img.letters(), &[(Root::B, t)]);
            let w = RootWord::from_letters(&f, vec![(Root::B, t)]).unwrap();
            assert_eq!(sigma_word(&w).unwrap().letters(), &[(Root::A, tt)]);
            for r in Root::all() {
                let w = RootWord::from_letters(&f, vec![(r, t)]).unwrap();
                assert_eq!(sigma_word(&sigma_word(&w).unwrap()).unwrap(), w);
            }
        }
    }

    #[test]
    fn matrix_inverse_and_det() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let word =
            RootWord::from_letters(&f, Root::all().map(|r| (r, f.random(&mut rng))).collect())
                .unwrap();
        let m = word.evaluate().unwrap();
        assert!(m.det().is_one());
        let inv = m.inv().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(matches!(Matrix::zero(&f, 7).inv(), Err(Error::Singular)));
        assert!(Matrix::zero(&f, 3).det().is_zero());
    }

    #[test]
    fn orders() {
        let f = gf(1);
        let id = Matrix::identity(&f, 7);
        assert_eq!(id.order(&BigUint::from(1512u32)).unwrap(), BigUint::one());
        let x = root_element(Root::B, f.one());
        assert_eq!(x.order(&BigUint::from(9u32)).unwrap(), BigUint::from(3u32));
        assert!(matches!(
            x.order(&BigUint::from(2u32)),
            Err(Error::OrderDoesNotDivide { .. })
        ));
    }

    #[test]
    fn matrix_json_round_trip() {
        let f = gf(3);
        let m = root_element(Root::A, f.generator());
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.field, f.spec());
        assert_eq!(Matrix::from_digit_rows(&f, &back.rows).unwrap(), m);
    }

    #[test]
    fn word_json_round_trip() {
        let f = gf(3);
        let w = weyl_word(Root::A_PLUS_B, f.generator()).unwrap();
        let text = serde_json::to_string(&w.to_json()).unwrap();
        let back: Vec<LetterJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(RootWord::from_json(&f, &back).unwrap(), w);
    }
}
