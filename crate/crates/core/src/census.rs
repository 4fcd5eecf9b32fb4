//! Brute-force oracle: close a set of matrices under multiplication, then
//! count element orders.
//!
//! Elements are deduplicated by [`Matrix::canonical_bytes`]. Each BFS layer
//! multiplies the frontier by every generator (in parallel when enabled) and
//! merges sequentially, so the final element set does not depend on the
//! schedule.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::chevalley::Matrix;
use crate::exec::Execution;
use crate::gf::{Field, FieldSpec};
use crate::nse::{frobenius_holds, order_type, weisner_holds, NseMap, Spectrum};
use crate::numbers::{divisors, totient};
use crate::prime_graph::{graph_from_spectrum, PrimeGraph};
use crate::ree::ReeContext;
use crate::{Error, Histogram, Result};

/// Hard cap on closure size.
pub const MAX_GROUP_SIZE: usize = 10_000_000;
pub const MAX_DIMENSION: usize = 8;

type DigitMatrix = Vec<Vec<Vec<u64>>>;

/// `{"field": {...}, "generators": [rows of digit lists, ...], "bound": n?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInputJson {
    pub field: FieldSpec,
    pub generators: Vec<DigitMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

/// Generators over one field, stored as digit rows so the input owns its field.
#[derive(Debug, Clone)]
pub struct GroupInput {
    field: Field,
    generators: Vec<DigitMatrix>,
    bound: usize,
}

impl GroupInput {
    pub fn from_matrices(gens: &[Matrix<'_>]) -> Result<GroupInput> {
        let first = gens
            .first()
            .ok_or_else(|| Error::Input("no generators".into()))?;
        let json = GroupInputJson {
            field: first.field().spec(),
            generators: gens.iter().map(|g| g.to_json().rows).collect(),
            bound: None,
        };
        if gens.iter().any(|g| g.field() != first.field()) {
            return Err(Error::FieldMismatch);
        }
        GroupInput::from_json(&json)
    }

    pub fn from_json(json: &GroupInputJson) -> Result<GroupInput> {
        let field = Field::from_spec(&json.field)?;
        if json.generators.is_empty() {
            return Err(Error::Input("no generators".into()));
        }
        let bound = json.bound.unwrap_or(MAX_GROUP_SIZE).min(MAX_GROUP_SIZE);
        let input = GroupInput {
            field,
            generators: json.generators.clone(),
            bound,
        };
        let gens = input.generators()?;
        let dim = gens[0].dim();
        for g in &gens {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(dim, g.dim()));
            }
            if g.det().is_zero() {
                return Err(Error::Singular);
            }
        }
        if dim > MAX_DIMENSION {
            return Err(Error::Input(format!(
                "dimension {dim} exceeds {MAX_DIMENSION}"
            )));
        }
        Ok(input)
    }

    pub fn parse(text: &str) -> Result<GroupInput> {
        let json: GroupInputJson =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        GroupInput::from_json(&json)
    }

    pub fn to_json(&self) -> GroupInputJson {
        GroupInputJson {
            field: self.field.spec(),
            generators: self.generators.clone(),
            bound: (self.bound != MAX_GROUP_SIZE).then_some(self.bound),
        }
    }

    pub fn with_bound(mut self, bound: usize) -> GroupInput {
        self.bound = bound.min(MAX_GROUP_SIZE);
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn generators(&self) -> Result<Vec<Matrix<'_>>> {
        self.generators
            .iter()
            .map(|rows| Matrix::from_digit_rows(&self.field, rows))
            .collect()
    }

    /// Hex SHA-256 of the field spec followed by each generator's canonical bytes.
    pub fn generators_sha(&self) -> Result<String> {
        let mut h = Sha256::new();
        let spec = self.field.spec();
        h.update(spec.p.to_le_bytes());
        h.update(spec.k.to_le_bytes());
        for d in &spec.modulus {
            h.update(d.to_le_bytes());
        }
        for g in self.generators()? {
            h.update((g.dim() as u64).to_le_bytes());
            h.update(g.canonical_bytes());
        }
        Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
    }
}

/// All elements of the group generated by `input`, sorted by canonical bytes.
pub fn closure<'f>(input: &'f GroupInput, exec: Execution) -> Result<Vec<Matrix<'f>>> {
    let gens = input.generators()?;
    let identity = Matrix::identity(&input.field, gens[0].dim());
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(identity.canonical_bytes());
    let mut elements = vec![identity.clone()];
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let products = exec.map_slice(&frontier, |m| {
            gens.iter()
                .map(|g| {
                    let p = m * g;
                    (p.canonical_bytes(), p)
                })
                .collect::<Vec<_>>()
        });
        let mut next = Vec::new();
        for (bytes, m) in products.into_iter().flatten() {
            if seen.insert(bytes) {
                if elements.len() >= input.bound {
                    return Err(Error::GroupTooLarge { bound: input.bound });
                }
                elements.push(m.clone());
                next.push(m);
            }
        }
        frontier = next;
    }
    elements.sort_by_cached_key(|m| m.canonical_bytes());
    Ok(elements)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub order: BigUint,
    pub histogram: Histogram,
    pub spectrum: Spectrum,
    pub nse: BTreeSet<BigUint>,
    pub prime_graph: PrimeGraph,
    pub generators_sha: String,
}

/// Divisor closure of the histogram keys.
fn divisor_closure(keys: impl IntoIterator<Item = BigUint>) -> Result<Spectrum> {
    let mut out = Spectrum::new();
    for k in keys {
        out.extend(divisors(&k)?);
    }
    Ok(out)
}

impl CensusResult {
    pub fn from_histogram(histogram: Histogram, generators_sha: String) -> Result<CensusResult> {
        let order: BigUint = histogram.values().sum();
        let spectrum = divisor_closure(histogram.keys().cloned())?;
        let prime_graph = graph_from_spectrum(&spectrum, &order)?;
        Ok(CensusResult {
            nse: histogram.values().cloned().collect(),
            order,
            histogram,
            spectrum,
            prime_graph,
            generators_sha,
        })
    }

    pub fn count(&self, i: u64) -> BigUint {
        self.histogram
            .get(&BigUint::from(i))
            .cloned()
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        let hist: Map<String, Value> = self
            .histogram
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
            .collect();
        json!({
            "order": self.order.to_string(),
            "histogram": hist,
            "spectrum": self.spectrum.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "nse": self.nse.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "generators_sha": self.generators_sha,
        })
    }

    pub fn from_json(v: &Value) -> Result<CensusResult> {
        let hist = v
            .get("histogram")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Input("census JSON needs a histogram object".into()))?;
        let mut histogram = Histogram::new();
        for (k, c) in hist {
            histogram.insert(parse_dec(k)?, parse_dec_value(c)?);
        }
        let sha = v
            .get("generators_sha")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string();
        let result = CensusResult::from_histogram(histogram, sha)?;
        if let Some(order) = v.get("order") {
            if parse_dec_value(order)? != result.order {
                return Err(Error::Input(
                    "order does not match the histogram sum".into(),
                ));
            }
        }
        Ok(result)
    }
}

fn parse_dec(s: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| Error::Input(format!("not a decimal integer: {s:?}")))
}

fn parse_dec_value(v: &Value) -> Result<BigUint> {
    match v {
        Value::String(s) => parse_dec(s),
        Value::Number(n) => parse_dec(&n.to_string()),
        _ => Err(Error::Input(format!("expected a decimal string, got {v}"))),
    }
}

pub fn census(input: &GroupInput, exec: Execution) -> Result<CensusResult> {
    let elements = closure(input, exec)?;
    let order = BigUint::from(elements.len());
    let orders = exec.map_slice(&elements, |m| m.order(&order));
    let mut histogram = Histogram::new();
    for o in orders {
        *histogram.entry(o?).or_default() += 1u32;
    }
    CensusResult::from_histogram(histogram, input.generators_sha()?)
}

/// Order and nse data for a type comparison; the histogram enables the
/// order-type check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeData {
    pub order: BigUint,
    pub nse: BTreeSet<BigUint>,
    pub histogram: Option<Histogram>,
}

impl From<&CensusResult> for TypeData {
    fn from(c: &CensusResult) -> TypeData {
        TypeData {
            order: c.order.clone(),
            nse: c.nse.clone(),
            histogram: Some(c.histogram.clone()),
        }
    }
}

impl From<&NseMap> for TypeData {
    fn from(m: &NseMap) -> TypeData {
        TypeData {
            order: m.group_order(),
            nse: m.nse_set().values,
            histogram: Some(m.histogram()),
        }
    }
}

impl TypeData {
    /// Accepts census JSON or `nse --json` output.
    pub fn from_json(v: &Value) -> Result<TypeData> {
        if v.get("histogram").is_some() {
            return Ok(TypeData::from(&CensusResult::from_json(v)?));
        }
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("expected census or nse JSON".into()))?;
        let mut histogram = Histogram::new();
        for e in entries {
            let (Some(i), Some(c)) = (e.get("order"), e.get("count")) else {
                return Err(Error::Input("nse entry needs order and count".into()));
            };
            histogram.insert(parse_dec_value(i)?, parse_dec_value(c)?);
        }
        let order = match v.get("group_order") {
            Some(o) => parse_dec_value(o)?,
            None => histogram.values().sum(),
        };
        Ok(TypeData {
            order,
            nse: histogram.values().cloned().collect(),
            histogram: Some(histogram),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Order {
        a: BigUint,
        b: BigUint,
    },
    /// An nse value present in exactly one side.
    NseValue {
        value: BigUint,
        in_a: bool,
    },
    /// First `n` (ascending divisor of the order) where `|G(n)|` differs.
    OrderType {
        n: BigUint,
        a: BigUint,
        b: BigUint,
    },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Order { a, b } => write!(f, "order {a} != {b}"),
            Witness::NseValue { value, in_a } => {
                let side = if *in_a { "first" } else { "second" };
                write!(f, "nse value {value} only in the {side} group")
            }
            Witness::OrderType { n, a, b } => write!(f, "|G({n})| = {a} vs {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Equal orders and equal nse sets.
    pub same: bool,
    /// `Some(true)` when both histograms exist and agree on `|G(n)|` for every divisor n of the order.
    pub order_type_equal: Option<bool>,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        if self.same {
            "SAME"
        } else {
            "DIFFERENT"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.label(),
            "order_type_equal": self.order_type_equal,
            "witness": self.witness.as_ref().map(|w| w.to_string()),
        })
    }
}

pub fn compare_type(a: &TypeData, b: &TypeData) -> Result<Verdict> {
    if a.order != b.order {
        return Ok(Verdict {
            same: false,
            order_type_equal: None,
            witness: Some(Witness::Order {
                a: a.order.clone(),
                b: b.order.clone(),
            }),
        });
    }
    let nse_witness = a
        .nse
        .symmetric_difference(&b.nse)
        .next()
        .map(|v| Witness::NseValue {
            value: v.clone(),
            in_a: a.nse.contains(v),
        });
    let mut type_witness = None;
    let order_type_equal = match (&a.histogram, &b.histogram) {
        (Some(ha), Some(hb)) => {
            for n in divisors(&a.order)? {
                let (ta, tb) = (order_type(ha, &n), order_type(hb, &n));
                if ta != tb {
                    type_witness = Some(Witness::OrderType { n, a: ta, b: tb });
                    break;
                }
            }
            Some(type_witness.is_none())
        }
        _ => None,
    };
    Ok(Verdict {
        same: nse_witness.is_none(),
        order_type_equal,
        witness: nse_witness.or(type_witness),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn violations(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

/// Mass, totient, parity, Frobenius and Weisner checks on a histogram of a group of order `order`.
pub fn validate_histogram(hist: &Histogram, order: &BigUint) -> Result<Report> {
    let mut r = Report::default();
    let total: BigUint = hist.values().sum();
    r.push(format!("sum of counts = {order}"), &total == order);
    for (i, m) in hist {
        let divides_order = !i.is_zero() && (order % i).is_zero();
        r.push(format!("{i} divides |G|"), divides_order);
        r.push(format!("phi({i}) | m_{i}"), (m % totient(i)?).is_zero());
        if *i > BigUint::from(2u32) {
            r.push(format!("2 | m_{i}"), (m % 2u32).is_zero());
        }
    }
    r.push(
        "m_1 = 1",
        hist.get(&BigUint::one()) == Some(&BigUint::one()),
    );
    for n in divisors(order)? {
        r.push(format!("frobenius n={n}"), frobenius_holds(hist, &n));
        r.push(format!("weisner n={n}"), weisner_holds(hist, &n, order));
    }
    Ok(r)
}

pub fn validate(c: &CensusResult) -> Result<Report> {
    let mut r = validate_histogram(&c.histogram, &c.order)?;
    r.push(
        "spectrum is the divisor closure of the histogram keys",
        divisor_closure(c.histogram.keys().cloned())? == c.spectrum,
    );
    r.push(
        "prime graph matches the spectrum",
        graph_from_spectrum(&c.spectrum, &c.order)? == c.prime_graph,
    );
    Ok(r)
}

/// `α(1), β(1), γ(1), τ` as matrices.
pub fn ree_generators(ctx: &ReeContext) -> Result<Vec<Matrix<'_>>> {
    let one = ctx.field().one();
    [ctx.alpha(one), ctx.beta(one), ctx.gamma(one), ctx.tau()]
        .iter()
        .map(|w| w.evaluate())
        .collect()
}

pub fn ree_input(ctx: &ReeContext) -> Result<GroupInput> {
    GroupInput::from_matrices(&ree_generators(ctx)?)
}

/// SL(2, 2^k): diag(g, g⁻¹), the upper unitriangular [[1,1],[0,1]] and the
/// swap [[0,1],[1,0]]. The first two only generate a Borel subgroup.
pub fn sl2_char2_input(k: u32) -> Result<GroupInput> {
    let f = Field::new(2, k)?;
    let g = f.generator();
    let (z, o) = (f.zero(), f.one());
    let gens = [
        Matrix::from_rows(&[vec![g, z], vec![z, g.inv()?]])?,
        Matrix::from_rows(&[vec![o, o], vec![z, o]])?,
        Matrix::from_rows(&[vec![z, o], vec![o, z]])?,
    ];
    GroupInput::from_matrices(&gens)
}

/// Companion matrix of the monic polynomial with `coeffs` (constant term first,
/// leading 1 included) over GF(p).
pub fn companion_input(p: u64, coeffs: &[u64]) -> Result<GroupInput> {
    let f = Field::new(p, 1)?;
    let d = coeffs
        .len()
        .checked_sub(1)
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Input("companion matrix needs a polynomial of degree >= 1".into()))?;
    if coeffs[d] % p != 1 {
        return Err(Error::Input(
            "companion matrix needs a monic polynomial".into(),
        ));
    }
    let mut m = Matrix::zero(&f, d);
    for i in 1..d {
        m.set(i, i - 1, f.one());
    }
    for (i, &c) in coeffs[..d].iter().enumerate() {
        m.set(i, d - 1, -f.from_int(c as i64));
    }
    GroupInput::from_matrices(&[m])
}

/// The 1×1 matrix `[x]` over GF(p^k); cyclic of order `ord(x)`.
pub fn scalar_generator_input(p: u64, k: u32) -> Result<GroupInput> {
    let f = Field::new(p, k)?;
    let m = Matrix::from_rows(&[vec![f.generator()]])?;
    GroupInput::from_matrices(&[m])
}

/// Orders of the q³ matrices `α(t)β(u)γ(v)` computed on the matrices
/// themselves (q <= 27).
pub fn unipotent_matrix_histogram(
    ctx: &ReeContext,
    exec: Execution,
) -> Result<BTreeMap<u32, BigUint>> {
    if ctx.q() > crate::ree::EXHAUSTIVE_UNIPOTENT_LIMIT {
        return Err(Error::CensusTooLarge(ctx.params().q.clone()));
    }
    let nine = BigUint::from(9u32);
    let triples: Vec<_> = ctx.all_triples().collect();
    let orders = exec.map_slice(&triples, |x| ctx.unipotent_matrix(x).order(&nine));
    let mut out = BTreeMap::new();
    for o in orders {
        let o: u32 = o?.try_into().expect("order divides 9");
        *out.entry(o).or_insert_with(BigUint::zero) += 1u32;
    }
    Ok(out)
}
