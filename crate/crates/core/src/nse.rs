//! Element orders of ²G₂(q) and the number of elements of each order.
//!
//! The closed forms are evaluated with exact big-integer arithmetic. Every
//! division is checked for a zero remainder and every spectrum member must
//! land in exactly one family; either failure is reported as
//! [`Error::Formula`], since it can only come from a wrong formula.
//!
//! The counting helpers (`order_type`, `multiples_count`, the Frobenius and
//! Weisner checks) work on any [`Histogram`], so the census module reuses
//! them for brute-force data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::numbers::{coprime_part, divisors, group_order, totient, ReeParams};
use crate::{Error, Histogram, Result};

/// The value families A₁..A₈ that partition nse(²G₂(q)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A1,
        Family::A2,
        Family::A3,
        Family::A4,
        Family::A5,
        Family::A6,
        Family::A7,
        Family::A8,
    ];

    pub fn index(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.index())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Input(format!("unknown family {s:?}")))
    }
}

/// A divisor-closed set of element orders.
pub type Spectrum = BTreeSet<BigUint>;

fn big(n: u32) -> BigUint {
    BigUint::from(n)
}

/// Divisors of 6, 9, q-1, (q+1)/2 and q ± sqrt(3q) + 1.
pub fn spectrum(params: &ReeParams) -> Result<Spectrum> {
    let q = &params.q;
    let sources = [
        big(6),
        big(9),
        q - 1u32,
        (q + 1u32) >> 1,
        params.minus_torus(),
        params.plus_torus(),
    ];
    let mut out = Spectrum::new();
    for s in &sources {
        out.extend(divisors(s)?);
    }
    Ok(out)
}

/// Count and family label of one element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NseEntry {
    pub count: BigUint,
    pub family: Family,
}

/// Closed-form counts `m_i` for every `i` in the spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NseMap {
    pub params: ReeParams,
    pub entries: BTreeMap<BigUint, NseEntry>,
}

fn exact_div(num: BigUint, den: u32, what: &str) -> Result<BigUint> {
    let (quot, rem) = num.div_rem(&big(den));
    if !rem.is_zero() {
        return Err(Error::Formula(format!(
            "{what}: division by {den} is not exact"
        )));
    }
    Ok(quot)
}

fn divides(d: &BigUint, n: &BigUint) -> bool {
    (n % d).is_zero()
}

pub fn nse_map(params: &ReeParams) -> Result<NseMap> {
    let q = &params.q;
    let q2 = q * q;
    let q3 = &q2 * q;
    let q_minus_1 = q - 1u32;
    let q3_plus_1 = &q3 + 1u32;
    let q2_minus_q_plus_1 = &q2 - q + 1u32;
    let quarter = params.quarter_q_plus_one();
    let minus_torus = params.minus_torus();
    let plus_torus = params.plus_torus();

    let mut entries = BTreeMap::new();
    for i in spectrum(params)? {
        let two = big(2);
        let mut hits: Vec<(Family, BigUint)> = Vec::new();
        if i.is_one() {
            hits.push((Family::A1, BigUint::one()));
        }
        if i == two {
            hits.push((Family::A2, &q2 * &q2_minus_q_plus_1));
        }
        if i == big(3) {
            hits.push((Family::A3, (&q2 - 1u32) * &q3_plus_1));
        }
        if i == big(6) || i == big(9) {
            hits.push((Family::A4, &q2 * &q_minus_1 * &q3_plus_1));
        }
        if i > two && divides(&i, &q_minus_1) {
            let num = totient(&i)? * &q3 * &q3_plus_1;
            hits.push((Family::A5, exact_div(num, 2, "m_i, i | q-1")?));
        }
        if i > BigUint::one() && divides(&i, &quarter) {
            let num = totient(&i)? * &q3 * &q_minus_1 * &q2_minus_q_plus_1;
            hits.push((Family::A6, exact_div(num, 6, "m_i, i | (q+1)/4")?));
        }
        if i.is_even() {
            let j = &i >> 1;
            if j > BigUint::one() && divides(&j, &quarter) {
                let num = totient(&j)? * &q3 * &q_minus_1 * &q2_minus_q_plus_1;
                hits.push((Family::A6, exact_div(num, 2, "m_2j, j | (q+1)/4")?));
            }
        }
        if i > BigUint::one() && divides(&i, &plus_torus) {
            let num = totient(&i)? * &q3 * (&q2 - 1u32) * &minus_torus;
            hits.push((Family::A7, exact_div(num, 6, "m_i, i | q+sqrt(3q)+1")?));
        }
        if i > BigUint::one() && divides(&i, &minus_torus) {
            let num = totient(&i)? * &q3 * (&q2 - 1u32) * &plus_torus;
            hits.push((Family::A8, exact_div(num, 6, "m_i, i | q-sqrt(3q)+1")?));
        }
        match hits.len() {
            1 => {
                let (family, count) = hits.pop().expect("one hit");
                entries.insert(i, NseEntry { count, family });
            }
            0 => return Err(Error::Formula(format!("order {i} matches no family"))),
            _ => {
                let fams: Vec<String> = hits.iter().map(|(f, _)| f.to_string()).collect();
                return Err(Error::Formula(format!(
                    "order {i} matches several families: {}",
                    fams.join(", ")
                )));
            }
        }
    }
    Ok(NseMap {
        params: params.clone(),
        entries,
    })
}

/// Sum of `m_i` over orders `i` dividing `n`: the size of `{x : x^n = 1}`.
pub fn order_type(hist: &Histogram, n: &BigUint) -> BigUint {
    hist.iter()
        .filter(|(i, _)| divides(i, n))
        .map(|(_, m)| m)
        .sum()
}

/// Number of elements whose order is a multiple of `n`.
pub fn multiples_count(hist: &Histogram, n: &BigUint) -> BigUint {
    hist.iter()
        .filter(|(i, _)| divides(n, i))
        .map(|(_, m)| m)
        .sum()
}

/// `n` divides the number of solutions of `x^n = 1`.
pub fn frobenius_holds(hist: &Histogram, n: &BigUint) -> bool {
    divides(n, &order_type(hist, n))
}

/// The count of elements with order divisible by `n` is zero or a multiple of
/// the largest divisor of `order` coprime to `n`.
pub fn weisner_holds(hist: &Histogram, n: &BigUint, order: &BigUint) -> bool {
    let f = multiples_count(hist, n);
    f.is_zero() || divides(&coprime_part(order, n), &f)
}

impl NseMap {
    pub fn histogram(&self) -> Histogram {
        self.entries
            .iter()
            .map(|(i, e)| (i.clone(), e.count.clone()))
            .collect()
    }

    pub fn spectrum(&self) -> Spectrum {
        self.entries.keys().cloned().collect()
    }

    pub fn count(&self, i: u64) -> Option<&BigUint> {
        self.entries.get(&BigUint::from(i)).map(|e| &e.count)
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().map(|e| &e.count).sum()
    }

    pub fn group_order(&self) -> BigUint {
        group_order(&self.params)
    }

    pub fn order_type(&self, n: &BigUint) -> BigUint {
        order_type(&self.histogram(), n)
    }

    /// `f(n)`: elements whose order is a multiple of `n`.
    pub fn f(&self, n: &BigUint) -> BigUint {
        multiples_count(&self.histogram(), n)
    }

    /// `f_t(n)` for each family; the values sum to `f(n)`.
    pub fn f_families(&self, n: &BigUint) -> BTreeMap<Family, BigUint> {
        let mut out: BTreeMap<Family, BigUint> =
            Family::ALL.iter().map(|&f| (f, BigUint::zero())).collect();
        for (i, e) in &self.entries {
            if divides(n, i) {
                *out.get_mut(&e.family).expect("all families present") += &e.count;
            }
        }
        out
    }

    pub fn weisner_check(&self, n: &BigUint, order: &BigUint) -> bool {
        weisner_holds(&self.histogram(), n, order)
    }

    /// Orders `i > 2` dividing `(q+1)/2` or `q ∓ sqrt(3q) + 1` whose count is not a multiple of `q³`.
    pub fn q3_divisibility_failures(&self) -> Vec<BigUint> {
        let q3 = self.params.q_cubed();
        let half = (&self.params.q + 1u32) >> 1;
        let minus = self.params.minus_torus();
        let plus = self.params.plus_torus();
        self.entries
            .iter()
            .filter(|(i, _)| {
                **i > big(2) && (divides(i, &half) || divides(i, &minus) || divides(i, &plus))
            })
            .filter(|(_, e)| !divides(&q3, &e.count))
            .map(|(i, _)| i.clone())
            .collect()
    }

    pub fn q3_divisibility_check(&self) -> bool {
        self.q3_divisibility_failures().is_empty()
    }

    pub fn nse_set(&self) -> NseSet {
        let mut by_count: BTreeMap<&BigUint, Vec<BigUint>> = BTreeMap::new();
        for (i, e) in &self.entries {
            by_count.entry(&e.count).or_default().push(i.clone());
        }
        let coincidences = by_count
            .iter()
            .filter(|(_, orders)| orders.len() > 1)
            .map(|(c, orders)| Coincidence {
                count: (*c).clone(),
                orders: orders.clone(),
            })
            .collect();
        NseSet {
            values: by_count.keys().map(|c| (*c).clone()).collect(),
            coincidences,
        }
    }

    pub fn to_json(&self, families: bool) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(i, e)| {
                let mut v = json!({ "order": i.to_string(), "count": e.count.to_string() });
                if families {
                    v["family"] = Value::String(e.family.to_string());
                }
                v
            })
            .collect();
        json!({
            "q": self.params.q.to_string(),
            "group_order": self.group_order().to_string(),
            "entries": entries,
        })
    }

    pub fn to_tsv(&self, families: bool) -> String {
        let mut out = String::from(if families {
            "order\tcount\tfamily\n"
        } else {
            "order\tcount\n"
        });
        for (i, e) in &self.entries {
            if families {
                out.push_str(&format!("{i}\t{}\t{}\n", e.count, e.family));
            } else {
                out.push_str(&format!("{i}\t{}\n", e.count));
            }
        }
        out
    }
}

/// Distinct values of `m_i`, with the orders that share a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NseSet {
    pub values: BTreeSet<BigUint>,
    pub coincidences: Vec<Coincidence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coincidence {
    pub count: BigUint,
    pub orders: Vec<BigUint>,
}

impl NseSet {
    /// How many map entries disappeared when collapsing to a set.
    pub fn collapsed(&self) -> usize {
        self.coincidences.iter().map(|c| c.orders.len() - 1).sum()
    }

    pub fn shares_count(&self, a: u64, b: u64) -> bool {
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        self.coincidences
            .iter()
            .any(|c| c.orders.contains(&a) && c.orders.contains(&b))
    }
}

/// Arithmetic facts the family assignment relies on: (description, holds).
pub fn structural_checks(params: &ReeParams) -> Vec<(String, bool)> {
    let q = &params.q;
    let six = big(6);
    let three = big(3);
    vec![
        ("(q-1)/2 is odd".into(), params.half_q_minus_one().is_odd()),
        (
            "(q+1)/4 is odd".into(),
            params.quarter_q_plus_one().is_odd(),
        ),
        (
            "sqrt(3q)^2 = 3q".into(),
            &params.root3q * &params.root3q == q * 3u32,
        ),
        ("gcd(q-1, 3) = 1".into(), (q - 1u32).gcd(&three).is_one()),
        ("gcd(q+1, 3) = 1".into(), (q + 1u32).gcd(&three).is_one()),
        (
            "gcd(q-sqrt(3q)+1, 6) = 1".into(),
            params.minus_torus().gcd(&six).is_one(),
        ),
        (
            "gcd(q+sqrt(3q)+1, 6) = 1".into(),
            params.plus_torus().gcd(&six).is_one(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn q27() -> NseMap {
        nse_map(&ReeParams::from_n(1)).unwrap()
    }

    #[test]
    fn spectrum_q27() {
        let s = spectrum(&ReeParams::from_n(1)).unwrap();
        let expect: Spectrum = [1u64, 2, 3, 6, 7, 9, 13, 14, 19, 26, 37].map(b).into();
        assert_eq!(s, expect);
        assert!(!s.contains(&b(91)));
    }

    #[test]
    fn spectrum_is_divisor_closed() {
        for n in 0..=4 {
            let s = spectrum(&ReeParams::from_n(n)).unwrap();
            for m in [1u64, 2, 3, 6, 9] {
                assert!(s.contains(&b(m)));
            }
            for i in &s {
                for d in divisors(i).unwrap() {
                    assert!(s.contains(&d), "n={n}: {d} | {i}");
                }
            }
        }
    }

    #[test]
    fn counts_q27() {
        let m = q27();
        assert_eq!(m.count(2).unwrap(), &b(512487));
        assert_eq!(m.count(2).unwrap(), &(b(729) * b(703)));
        assert_eq!(m.count(7).unwrap(), &(b(19683) * b(26) * b(703)));
        assert_eq!(m.count(14).unwrap(), &(b(3) * m.count(7).unwrap()));
        assert_eq!(m.entries[&b(7)].family, Family::A6);
        assert_eq!(m.entries[&b(14)].family, Family::A6);
        assert_eq!(m.entries[&b(19)].family, Family::A8);
        assert_eq!(m.entries[&b(37)].family, Family::A7);
        assert_eq!(m.entries[&b(26)].family, Family::A5);
        assert_eq!(m.entries[&b(6)].family, Family::A4);
    }

    #[test]
    fn m6_formula_matches_involution_times_order_three() {
        // m_6 = m_2 * (q² - 1) for every q
        for n in 1..=3 {
            let p = ReeParams::from_n(n);
            let m = nse_map(&p).unwrap();
            let q2m1 = &p.q * &p.q - 1u32;
            assert_eq!(m.count(6).unwrap(), &(m.count(2).unwrap() * q2m1));
            assert_eq!(m.count(6), m.count(9));
        }
    }

    #[test]
    fn even_divisors_of_q_minus_1_reconcile() {
        // m_2j = m_j for j | (q-1)/2 because φ(2j) = φ(j) for odd j
        for n in 1..=3 {
            let p = ReeParams::from_n(n);
            let m = nse_map(&p).unwrap();
            for j in divisors(&p.half_q_minus_one()).unwrap().into_iter().skip(1) {
                assert_eq!(m.entries[&j].count, m.entries[&(&j * 2u32)].count);
            }
        }
    }

    #[test]
    fn mass_identity() {
        for n in 0..=4 {
            let p = ReeParams::from_n(n);
            assert_eq!(nse_map(&p).unwrap().total(), group_order(&p), "n={n}");
        }
    }

    #[test]
    fn totient_and_parity() {
        for n in 1..=3 {
            let m = nse_map(&ReeParams::from_n(n)).unwrap();
            for (i, e) in &m.entries {
                assert!(divides(&totient(i).unwrap(), &e.count));
                if *i > b(2) {
                    assert!(e.count.is_even());
                }
            }
        }
    }

    #[test]
    fn nse_set_coincidences() {
        let set = q27().nse_set();
        assert!(set.shares_count(6, 9));
        assert!(set.shares_count(13, 26));
        assert_eq!(set.values.len(), q27().entries.len() - set.collapsed());
    }

    #[test]
    fn order_type_examples() {
        let h = q27().histogram();
        assert_eq!(order_type(&h, &b(1)), b(1));
        assert_eq!(order_type(&h, &b(2)), b(512488));
        assert!(frobenius_holds(&h, &b(2)));
        let m = q27();
        let six = b(1) + m.count(2).unwrap() + m.count(3).unwrap() + m.count(6).unwrap();
        assert_eq!(order_type(&h, &b(6)), six);
        assert!(divides(&b(6), &six));
    }

    #[test]
    fn frobenius_over_all_divisors_q27() {
        let m = q27();
        let h = m.histogram();
        let divs = divisors(&m.group_order()).unwrap();
        assert_eq!(divs.len(), 640);
        for n in &divs {
            assert!(frobenius_holds(&h, n), "n={n}");
        }
    }

    #[test]
    fn f_examples() {
        let m = q27();
        assert_eq!(m.f(&b(1)), m.group_order());
        let fam = m.f_families(&b(19));
        assert_eq!(m.f(&b(19)), *m.count(19).unwrap());
        for (f, v) in &fam {
            if *f == Family::A8 {
                assert_eq!(v, m.count(19).unwrap());
            } else {
                assert!(v.is_zero());
            }
        }
        let even =
            m.count(2).unwrap() + m.count(6).unwrap() + m.count(14).unwrap() + m.count(26).unwrap();
        assert_eq!(m.f(&b(2)), even);
        for n in 1..60u64 {
            let fam = m.f_families(&b(n));
            let total: BigUint = fam.values().sum();
            assert_eq!(total, m.f(&b(n)));
            if n >= 3 {
                assert!(fam[&Family::A1].is_zero() && fam[&Family::A2].is_zero());
            }
        }
    }

    #[test]
    fn weisner_q27() {
        let m = q27();
        let order = m.group_order();
        assert!(m.weisner_check(&b(19), &order));
        assert_eq!(
            m.f(&b(19)),
            b(18) * m.params.q_cubed() * (b(729) - 1u32) * b(37) / b(6)
        );
        assert!(m.weisner_check(&b(1), &order));
        for n in divisors(&order).unwrap() {
            assert!(m.weisner_check(&n, &order), "n={n}");
        }
    }

    #[test]
    fn q3_divisibility() {
        let m = q27();
        let q3 = b(19683);
        for i in [7u64, 14, 37, 19] {
            assert!(divides(&q3, m.count(i).unwrap()), "i={i}");
        }
        assert!(m.q3_divisibility_check());
        assert!(nse_map(&ReeParams::from_n(2))
            .unwrap()
            .q3_divisibility_check());
    }

    #[test]
    fn structural_facts() {
        for n in 0..=5 {
            for (name, ok) in structural_checks(&ReeParams::from_n(n)) {
                assert!(ok, "n={n}: {name}");
            }
        }
    }

    #[test]
    fn small_q_evaluates() {
        let p = ReeParams::from_n(0);
        let m = nse_map(&p).unwrap();
        assert_eq!(m.total(), b(1512));
        let keys: Vec<u64> = m.entries.keys().map(|k| k.try_into().unwrap()).collect();
        assert_eq!(keys, vec![1, 2, 3, 6, 7, 9]);
    }

    #[test]
    fn json_and_tsv_agree() {
        let m = q27();
        let json = m.to_json(true);
        let tsv = m.to_tsv(true);
        let rows: Vec<&str> = tsv.lines().skip(1).collect();
        let entries = json["entries"].as_array().unwrap();
        assert_eq!(rows.len(), entries.len());
        for (row, e) in rows.iter().zip(entries) {
            let cells: Vec<&str> = row.split('\t').collect();
            assert_eq!(cells[0], e["order"].as_str().unwrap());
            assert_eq!(cells[1], e["count"].as_str().unwrap());
            assert_eq!(cells[2], e["family"].as_str().unwrap());
        }
    }
}
