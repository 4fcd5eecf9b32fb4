//! Exact integer utilities and the order tables of ²G₂(q).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumbersError {
    #[error("expected a positive integer")]
    NonPositive,
    #[error("q must be an odd power of 3, got {0}")]
    NotOddPowerOfThree(BigUint),
    #[error(
        "q = 3 is outside the theorem range (q >= 27); pass the small-q override to evaluate it"
    )]
    SmallQ,
    #[error("could not factor {0}: cofactor exceeds 64 bits")]
    Unfactorable(BigUint),
}

pub type Result<T> = std::result::Result<T, NumbersError>;

const TRIAL_LIMIT: u64 = 1_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                (i * i..n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u64))
            .collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn push_factors_u64(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(n).or_default() += 1;
        return;
    }
    let d = pollard_rho(n);
    push_factors_u64(d, out);
    push_factors_u64(n / d, out);
}

/// Prime factorization of a 64-bit integer as (prime, exponent) pairs, ascending.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out = BTreeMap::new();
    let mut m = n;
    for &p in small_primes().iter().take(1000) {
        if p * p > m {
            break;
        }
        while m.is_multiple_of(p) {
            *out.entry(p).or_default() += 1;
            m /= p;
        }
    }
    push_factors_u64(m, &mut out);
    out.into_iter().collect()
}

/// Prime-power map of `n >= 1`: trial division by primes below 10^6, then
/// Pollard rho on a cofactor that fits in 64 bits.
pub fn factorize(n: &BigUint) -> Result<BTreeMap<BigUint, u32>> {
    if n.is_zero() {
        return Err(NumbersError::NonPositive);
    }
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    if !m.is_one() {
        let limit = BigUint::from(TRIAL_LIMIT);
        if m < &limit * &limit {
            // no factor below the trial limit, so m is prime
            *out.entry(m).or_default() += 1;
        } else if let Some(small) = m.to_u64() {
            for (p, e) in factor_u64(small) {
                *out.entry(BigUint::from(p)).or_default() += e;
            }
        } else {
            return Err(NumbersError::Unfactorable(m));
        }
    }
    Ok(out)
}

/// The set of prime divisors of `n`.
pub fn prime_divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    Ok(factorize(n)?.into_keys().collect())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut out = vec![BigUint::one()];
    for (p, e) in factorize(n)? {
        let current = out.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            out.extend(current.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    Ok(out)
}

pub fn totient(n: &BigUint) -> Result<BigUint> {
    let mut phi = BigUint::one();
    for (p, e) in factorize(n)? {
        phi *= &p - 1u32;
        phi *= p.pow(e - 1);
    }
    Ok(phi)
}

/// Largest divisor of `order` that is coprime to `n`.
pub fn coprime_part(order: &BigUint, n: &BigUint) -> BigUint {
    let mut m = order.clone();
    loop {
        let g = m.gcd(n);
        if g.is_one() {
            return m;
        }
        m /= g;
    }
}

/// Parameters of ²G₂(q): `q = 3^(2n+1)` and `sqrt(3q) = 3^(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReeParams {
    pub n: u32,
    pub q: BigUint,
    pub root3q: BigUint,
}

impl ReeParams {
    pub fn from_n(n: u32) -> ReeParams {
        ReeParams {
            n,
            q: BigUint::from(3u32).pow(2 * n + 1),
            root3q: BigUint::from(3u32).pow(n + 1),
        }
    }

    /// Accepts only odd powers of 3, by exact powering. `q = 3` needs `allow_small`.
    pub fn from_q(q: &BigUint, allow_small: bool) -> Result<ReeParams> {
        let three = BigUint::from(3u32);
        let mut power = BigUint::one();
        let mut e = 0u32;
        while &power < q {
            power *= &three;
            e += 1;
        }
        if &power != q || e.is_multiple_of(2) {
            return Err(NumbersError::NotOddPowerOfThree(q.clone()));
        }
        let params = ReeParams::from_n((e - 1) / 2);
        if params.n == 0 && !allow_small {
            return Err(NumbersError::SmallQ);
        }
        Ok(params)
    }

    pub fn from_q_u64(q: u64, allow_small: bool) -> Result<ReeParams> {
        Self::from_q(&BigUint::from(q), allow_small)
    }

    /// `q - sqrt(3q) + 1`, the order of H₃.
    pub fn minus_torus(&self) -> BigUint {
        &self.q + 1u32 - &self.root3q
    }

    /// `q + sqrt(3q) + 1`, the order of H₄.
    pub fn plus_torus(&self) -> BigUint {
        &self.q + 1u32 + &self.root3q
    }

    /// `(q - 1) / 2`, odd.
    pub fn half_q_minus_one(&self) -> BigUint {
        (&self.q - 1u32) >> 1
    }

    /// `(q + 1) / 4`, odd.
    pub fn quarter_q_plus_one(&self) -> BigUint {
        (&self.q + 1u32) >> 2
    }

    pub fn q_cubed(&self) -> BigUint {
        self.q.pow(3)
    }
}

/// `q^3 (q^3 + 1)(q - 1)`, checked against `|R₂| |R₃| |H₁| |H₂| |H₃| |H₄|`.
pub fn group_order(params: &ReeParams) -> BigUint {
    let q = &params.q;
    let closed = q.pow(3) * (q.pow(3) + 1u32) * (q - 1u32);
    let factored = group_order_factored(params);
    assert_eq!(
        closed, factored,
        "closed form and Sylow/Hall product disagree"
    );
    closed
}

/// The six-factor product `|R₂| |R₃| |H₁| |H₂| |H₃| |H₄|`.
pub fn group_order_factored(params: &ReeParams) -> BigUint {
    let (h1, h2, h3, h4) = hall_orders(params);
    BigUint::from(8u32) * params.q_cubed() * h1 * h2 * h3 * h4
}

/// Orders of the cyclic Hall subgroups H₁..H₄.
pub fn hall_orders(params: &ReeParams) -> (BigUint, BigUint, BigUint, BigUint) {
    (
        params.half_q_minus_one(),
        params.quarter_q_plus_one(),
        params.minus_torus(),
        params.plus_torus(),
    )
}

/// Subgroup orders of ²G₂(q) read off from the structure of its local subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderTable {
    pub q: BigUint,
    pub group: BigUint,
    pub hall: [BigUint; 4],
    pub normalizer_r3: BigUint,
    pub normalizer_r2: BigUint,
    pub centralizer_involution: BigUint,
    pub normalizer_h1: BigUint,
    pub centralizer_h1: BigUint,
    pub normalizer_h2: BigUint,
    pub centralizer_h2: BigUint,
    pub normalizer_h3: BigUint,
    pub normalizer_h4: BigUint,
    /// Maximal subgroups up to conjugacy, as (description, order).
    pub maximal: Vec<(String, BigUint)>,
}

pub fn order_table(params: &ReeParams) -> OrderTable {
    let q = &params.q;
    let (h1, h2, h3, h4) = hall_orders(params);
    let normalizer_r3 = params.q_cubed() * (q - 1u32);
    let centralizer_involution = q * (q * q - 1u32);
    let normalizer_h2 = BigUint::from(6u32) * (q + 1u32);
    let normalizer_h3 = BigUint::from(6u32) * &h3;
    let normalizer_h4 = BigUint::from(6u32) * &h4;

    let mut maximal = vec![
        ("N(R3) = q^3:C_(q-1)".to_string(), normalizer_r3.clone()),
        (
            "C(z) = 2 x L2(q)".to_string(),
            centralizer_involution.clone(),
        ),
        (
            "N(H2) = (2^2 x C_((q+1)/2)):3".to_string(),
            normalizer_h2.clone(),
        ),
        (
            "N(H3) = C_(q-sqrt(3q)+1):6".to_string(),
            normalizer_h3.clone(),
        ),
        (
            "N(H4) = C_(q+sqrt(3q)+1):6".to_string(),
            normalizer_h4.clone(),
        ),
    ];
    let degree = 2 * params.n + 1;
    if degree > 1 {
        for (r, _) in factor_u64(degree as u64) {
            let sub = ReeParams::from_n((degree / r as u32 - 1) / 2);
            maximal.push((format!("2G2({})", sub.q), group_order(&sub)));
        }
    }

    OrderTable {
        q: q.clone(),
        group: group_order(params),
        hall: [h1, h2.clone(), h3, h4],
        normalizer_r3,
        normalizer_r2: BigUint::from(168u32),
        centralizer_involution,
        normalizer_h1: BigUint::from(2u32) * (q - 1u32),
        centralizer_h1: q - 1u32,
        normalizer_h2,
        centralizer_h2: q + 1u32,
        normalizer_h3,
        normalizer_h4,
        maximal,
    }
}

impl OrderTable {
    /// Every named subgroup order, for divisibility sweeps.
    pub fn entries(&self) -> Vec<(String, &BigUint)> {
        let mut out = vec![
            ("|H1|".to_string(), &self.hall[0]),
            ("|H2|".to_string(), &self.hall[1]),
            ("|H3|".to_string(), &self.hall[2]),
            ("|H4|".to_string(), &self.hall[3]),
            ("|N(R3)|".to_string(), &self.normalizer_r3),
            ("|N(R2)|".to_string(), &self.normalizer_r2),
            ("|C(z)|".to_string(), &self.centralizer_involution),
            ("|N(H1)|".to_string(), &self.normalizer_h1),
            ("|C(H1)|".to_string(), &self.centralizer_h1),
            ("|N(H2)|".to_string(), &self.normalizer_h2),
            ("|C(H2)|".to_string(), &self.centralizer_h2),
            ("|N(H3)|".to_string(), &self.normalizer_h3),
            ("|N(H4)|".to_string(), &self.normalizer_h4),
        ];
        out.extend(self.maximal.iter().map(|(name, o)| (name.clone(), o)));
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: serde_json::Map<String, Value> = self
            .entries()
            .into_iter()
            .map(|(k, v)| (k, Value::String(v.to_string())))
            .collect();
        json!({
            "q": self.q.to_string(),
            "order": self.group.to_string(),
            "subgroups": entries,
        })
    }
}
