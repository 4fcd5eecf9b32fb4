//! Generators of ²G₂(q) and the Sylow 3-subgroup `{α(t)β(u)γ(v)}`.
//!
//! Words are built from root elements with exponents evaluated through
//! [`FieldElement::pow_theta`]. The unipotent triple calculus works directly
//! on `(t, u, v)` with the closed product and cube laws; the matrix path
//! ([`ReeContext::unipotent_matrix`]) stays available as an oracle.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::chevalley::{sigma_word, weyl_word, Matrix7, Root, RootWord};
use crate::exec::Execution;
use crate::gf::{Field, FieldElement, ThetaExponent};
use crate::numbers::ReeParams;
use crate::{Error, Result};

/// Largest q for which the unipotent census may enumerate all q³ triples.
pub const EXHAUSTIVE_UNIPOTENT_LIMIT: u64 = 27;

/// A Ree field GF(3^(2n+1)) with its parameters.
#[derive(Debug)]
pub struct ReeContext {
    params: ReeParams,
    field: Field,
}

impl ReeContext {
    pub fn new(n: u32) -> Result<ReeContext> {
        Ok(ReeContext {
            params: ReeParams::from_n(n),
            field: Field::new(3, 2 * n + 1)?,
        })
    }

    pub fn from_params(params: &ReeParams) -> Result<ReeContext> {
        ReeContext::new(params.n)
    }

    pub fn params(&self) -> &ReeParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn q(&self) -> u64 {
        self.field.size() as u64
    }

    /// q = 3 lies below the range q >= 27 of the structural results; formulas still evaluate.
    pub fn is_small(&self) -> bool {
        self.params.n == 0
    }

    fn pw<'f>(&self, t: FieldElement<'f>, e: ThetaExponent) -> FieldElement<'f> {
        t.pow_theta(e)
            .expect("positive exponents are defined at zero")
    }

    /// `α(t) = x_a(t^θ) x_b(t) x_{a+b}(t^(θ+1)) x_{2a+b}(t^(2θ+1))`.
    pub fn alpha<'f>(&'f self, t: FieldElement<'f>) -> RootWord<'f> {
        self.word(vec![
            (Root::A, self.pw(t, ThetaExponent::THETA)),
            (Root::B, t),
            (Root::A_PLUS_B, self.pw(t, ThetaExponent::THETA_PLUS_ONE)),
            (
                Root::TWO_A_PLUS_B,
                self.pw(t, ThetaExponent::TWO_THETA_PLUS_ONE),
            ),
        ])
    }

    /// `β(t) = x_{a+b}(t^θ) x_{3a+b}(t)`.
    pub fn beta<'f>(&'f self, t: FieldElement<'f>) -> RootWord<'f> {
        self.word(vec![
            (Root::A_PLUS_B, self.pw(t, ThetaExponent::THETA)),
            (Root::THREE_A_PLUS_B, t),
        ])
    }

    /// `γ(t) = x_{2a+b}(t^θ) x_{3a+2b}(t)`.
    pub fn gamma<'f>(&'f self, t: FieldElement<'f>) -> RootWord<'f> {
        self.word(vec![
            (Root::TWO_A_PLUS_B, self.pw(t, ThetaExponent::THETA)),
            (Root::THREE_A_PLUS_TWO_B, t),
        ])
    }

    /// `τ = π_{a+b}(1) π_{3a+b}(1)`, each `π` expanded as a three-letter Weyl word.
    pub fn tau(&self) -> RootWord<'_> {
        let one = self.field.one();
        let first = weyl_word(Root::A_PLUS_B, one).expect("1 is invertible");
        let second = weyl_word(Root::THREE_A_PLUS_B, one).expect("1 is invertible");
        first.then(&second).expect("same field")
    }

    fn word<'f>(&'f self, letters: Vec<(Root, FieldElement<'f>)>) -> RootWord<'f> {
        RootWord::from_letters(&self.field, letters).expect("letters come from the context field")
    }

    /// Whether `w` and `σ(w)` evaluate to the same matrix.
    pub fn sigma_fixed(&self, w: &RootWord<'_>) -> Result<bool> {
        if w.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(sigma_word(w)?.evaluate()? == w.evaluate()?)
    }

    pub fn triple<'f>(
        &'f self,
        t: FieldElement<'f>,
        u: FieldElement<'f>,
        v: FieldElement<'f>,
    ) -> UnipotentTriple<'f> {
        UnipotentTriple { t, u, v }
    }

    pub fn unipotent_identity(&self) -> UnipotentTriple<'_> {
        let z = self.field.zero();
        UnipotentTriple { t: z, u: z, v: z }
    }

    /// `α(t) β(u) γ(v)` as a matrix.
    pub fn unipotent_matrix<'f>(&'f self, x: &UnipotentTriple<'f>) -> Matrix7<'f> {
        let word = self
            .alpha(x.t)
            .then(&self.beta(x.u))
            .and_then(|w| w.then(&self.gamma(x.v)))
            .expect("same field");
        word.evaluate().expect("words over one field evaluate")
    }

    /// `x(t₁,u₁,v₁) x(t₂,u₂,v₂) = x(t₁+t₂, u₁+u₂-t₁t₂^(3θ),
    /// v₁+v₂-t₂u₁+t₁t₂^(3θ+1)-t₁²t₂^(3θ))`.
    pub fn unipotent_mul<'f>(
        &'f self,
        x1: &UnipotentTriple<'f>,
        x2: &UnipotentTriple<'f>,
    ) -> UnipotentTriple<'f> {
        let t2_3th = self.pw(x2.t, ThetaExponent::THREE_THETA);
        let t2_3th1 = self.pw(x2.t, ThetaExponent::THREE_THETA_PLUS_ONE);
        UnipotentTriple {
            t: x1.t + x2.t,
            u: x1.u + x2.u - x1.t * t2_3th,
            v: x1.v + x2.v - x2.t * x1.u + x1.t * t2_3th1 - x1.t * x1.t * t2_3th,
        }
    }

    /// `x(t,u,v)³ = x(0, 0, -t^(3θ+2))` in characteristic 3.
    pub fn unipotent_cube<'f>(&'f self, x: &UnipotentTriple<'f>) -> UnipotentTriple<'f> {
        let z = self.field.zero();
        UnipotentTriple {
            t: z,
            u: z,
            v: -self.pw(x.t, ThetaExponent::THREE_THETA_PLUS_TWO),
        }
    }

    /// 1, 3 or 9, read off from the cube law.
    pub fn unipotent_order(&self, x: &UnipotentTriple<'_>) -> u32 {
        if x.is_identity() {
            1
        } else if x.t.is_zero() {
            // the cube (0, 0, -0^(3θ+2)) is trivial
            3
        } else {
            9
        }
    }

    /// Order histogram of the Sylow 3-subgroup.
    pub fn unipotent_census(&self, mode: CensusMode) -> Result<BTreeMap<u32, BigUint>> {
        match mode {
            CensusMode::ClosedForm => {
                let q = &self.params.q;
                let q2 = q * q;
                Ok(BTreeMap::from([
                    (1, BigUint::from(1u32)),
                    (3, &q2 - 1u32),
                    (9, q * &q2 - &q2),
                ]))
            }
            CensusMode::Exhaustive(exec) => {
                if self.q() > EXHAUSTIVE_UNIPOTENT_LIMIT {
                    return Err(Error::CensusTooLarge(self.params.q.clone()));
                }
                let q = self.q();
                let slices = exec.map_range(0..q, |tc| {
                    let mut counts = [0u64; 3];
                    let t = self.field.element_from_code(tc);
                    for uc in 0..q {
                        for vc in 0..q {
                            let x = UnipotentTriple {
                                t,
                                u: self.field.element_from_code(uc),
                                v: self.field.element_from_code(vc),
                            };
                            let slot = match self.unipotent_order(&x) {
                                1 => 0,
                                3 => 1,
                                _ => 2,
                            };
                            counts[slot] += 1;
                        }
                    }
                    counts
                });
                let mut total = [0u64; 3];
                for s in slices {
                    for i in 0..3 {
                        total[i] += s[i];
                    }
                }
                Ok(BTreeMap::from([
                    (1, BigUint::from(total[0])),
                    (3, BigUint::from(total[1])),
                    (9, BigUint::from(total[2])),
                ]))
            }
        }
    }

    /// Every triple `(t, u, v)` in code order; `q³` items.
    pub fn all_triples(&self) -> impl Iterator<Item = UnipotentTriple<'_>> + '_ {
        let q = self.q();
        (0..q * q * q).map(move |i| {
            let f = &self.field;
            UnipotentTriple {
                t: f.element_from_code(i / (q * q)),
                u: f.element_from_code((i / q) % q),
                v: f.element_from_code(i % q),
            }
        })
    }
}

/// How [`ReeContext::unipotent_census`] obtains its counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Enumerate all q³ triples (q <= 27).
    Exhaustive(Execution),
    /// `{1: 1, 3: q²-1, 9: q³-q²}`, valid for every q.
    ClosedForm,
}

/// Coordinates of `α(t) β(u) γ(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnipotentTriple<'f> {
    pub t: FieldElement<'f>,
    pub u: FieldElement<'f>,
    pub v: FieldElement<'f>,
}

impl UnipotentTriple<'_> {
    pub fn is_identity(&self) -> bool {
        self.t.is_zero() && self.u.is_zero() && self.v.is_zero()
    }
}
