//! Prime graphs: vertices are the primes dividing |G|, and u ~ v when G has
//! an element of order uv.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use petgraph::dot::{Config, Dot};
use petgraph::graph::UnGraph;
use petgraph::unionfind::UnionFind;
use serde_json::{json, Value};

use crate::nse::{spectrum, Spectrum};
use crate::numbers::{factorize, group_order, prime_divisors, ReeParams};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGraph {
    pub order: BigUint,
    pub vertices: BTreeSet<BigUint>,
    /// Unordered pairs stored as (smaller, larger).
    pub edges: BTreeSet<(BigUint, BigUint)>,
}

fn is_divisor_closed(s: &Spectrum) -> Result<bool> {
    for m in s {
        for p in prime_divisors(m)? {
            if !s.contains(&(m / &p)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Edges {u,v} such that u·v divides some member of `s`.
fn edges_by_division(
    s: &Spectrum,
    order: &BigUint,
    vertices: &BTreeSet<BigUint>,
) -> Result<BTreeSet<(BigUint, BigUint)>> {
    let mut edges = BTreeSet::new();
    for m in s {
        let primes = prime_divisors(m)?;
        if let Some(p) = primes.iter().find(|p| !vertices.contains(*p)) {
            return Err(Error::SpectrumInconsistent {
                member: m.clone(),
                prime: p.clone(),
            });
        }
        debug_assert!(primes.iter().all(|p| (order % p) == BigUint::ZERO));
        for (i, u) in primes.iter().enumerate() {
            for v in &primes[i + 1..] {
                edges.insert((u.clone(), v.clone()));
            }
        }
    }
    Ok(edges)
}

/// Edges {u,v} with u·v literally in `s`.
pub fn edges_by_membership(
    s: &Spectrum,
    vertices: &BTreeSet<BigUint>,
) -> BTreeSet<(BigUint, BigUint)> {
    let vs: Vec<&BigUint> = vertices.iter().collect();
    let mut edges = BTreeSet::new();
    for (i, u) in vs.iter().enumerate() {
        for v in &vs[i + 1..] {
            if s.contains(&(*u * *v)) {
                edges.insert(((*u).clone(), (*v).clone()));
            }
        }
    }
    edges
}

pub fn graph_from_spectrum(s: &Spectrum, order: &BigUint) -> Result<PrimeGraph> {
    let vertices: BTreeSet<BigUint> = prime_divisors(order)?.into_iter().collect();
    let edges = edges_by_division(s, order, &vertices)?;
    if is_divisor_closed(s)? {
        assert_eq!(
            edges,
            edges_by_membership(s, &vertices),
            "adjacency tests disagree on a divisor-closed spectrum"
        );
    }
    Ok(PrimeGraph {
        order: order.clone(),
        vertices,
        edges,
    })
}

pub fn ree_graph(params: &ReeParams) -> Result<PrimeGraph> {
    graph_from_spectrum(&spectrum(params)?, &group_order(params))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub primes: BTreeSet<BigUint>,
    /// Product of the full p-parts of |G| over `primes`.
    pub order_component: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// `parts[0]` holds 2 (or the smallest prime for odd order); the rest
    /// are sorted by smallest prime.
    pub parts: Vec<Component>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn prime_sets(&self) -> Vec<Vec<u64>> {
        self.parts
            .iter()
            .map(|c| {
                c.primes
                    .iter()
                    .map(|p| p.try_into().expect("small prime"))
                    .collect()
            })
            .collect()
    }

    pub fn order_components(&self) -> Vec<BigUint> {
        self.parts
            .iter()
            .map(|c| c.order_component.clone())
            .collect()
    }
}

impl PrimeGraph {
    pub fn has_edge(&self, u: u64, v: u64) -> bool {
        let (u, v) = (BigUint::from(u.min(v)), BigUint::from(u.max(v)));
        self.edges.contains(&(u, v))
    }

    pub fn components(&self) -> Result<Components> {
        let verts: Vec<&BigUint> = self.vertices.iter().collect();
        let index: BTreeMap<&BigUint, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::<usize>::new(verts.len());
        for (u, v) in &self.edges {
            uf.union(index[u], index[v]);
        }
        let mut groups: BTreeMap<usize, BTreeSet<BigUint>> = BTreeMap::new();
        for (i, v) in verts.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().insert((*v).clone());
        }
        let factors = factorize(&self.order)?;
        // Vertices are sorted, so ordering by smallest prime puts 2 (or the
        // smallest prime) first.
        let mut parts: Vec<Component> = groups
            .into_values()
            .map(|primes| {
                let order_component = primes
                    .iter()
                    .map(|p| p.pow(factors[p]))
                    .fold(BigUint::one(), |a, b| a * b);
                Component {
                    primes,
                    order_component,
                }
            })
            .collect();
        parts.sort_by(|a, b| a.primes.first().cmp(&b.primes.first()));
        Ok(Components { parts })
    }

    pub fn to_json(&self) -> Result<Value> {
        let comps = self.components()?;
        Ok(json!({
            "order": self.order.to_string(),
            "vertices": self.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(u, v)| vec![u.to_string(), v.to_string()]).collect::<Vec<_>>(),
            "components": comps.parts.iter().map(|c| json!({
                "primes": c.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "order_component": c.order_component.to_string(),
            })).collect::<Vec<_>>(),
        }))
    }

    pub fn to_dot(&self) -> String {
        let mut g = UnGraph::<String, &str>::new_undirected();
        let nodes: BTreeMap<&BigUint, _> = self
            .vertices
            .iter()
            .map(|v| (v, g.add_node(v.to_string())))
            .collect();
        for (u, v) in &self.edges {
            g.add_edge(nodes[u], nodes[v], "");
        }
        format!("{}", Dot::with_config(&g, &[Config::EdgeNoLabel]))
    }
}

fn primes_of(n: &BigUint) -> Result<BTreeSet<BigUint>> {
    Ok(prime_divisors(n)?.into_iter().collect())
}

/// The two Hall tori H₃, H₄ are isolated from everything else and the graph
/// has at least three components.
pub fn isolation_check(params: &ReeParams) -> Result<bool> {
    let g = ree_graph(params)?;
    let q = &params.q;
    let base = &params.q_cubed() * (q * q - 1u32);
    let minus = primes_of(&params.minus_torus())?;
    let plus = primes_of(&params.plus_torus())?;
    let rest_of_minus = primes_of(&(&base * params.plus_torus()))?;
    let rest_of_plus = primes_of(&(&base * params.minus_torus()))?;
    let joined = |a: &BTreeSet<BigUint>, b: &BTreeSet<BigUint>| {
        g.edges
            .iter()
            .any(|(u, v)| (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u)))
    };
    Ok(!joined(&minus, &rest_of_minus)
        && !joined(&plus, &rest_of_plus)
        && g.components()?.count() >= 3)
}

/// Each torus order's primes form a clique, since the torus order itself is in the spectrum.
pub fn tori_are_cliques(params: &ReeParams) -> Result<bool> {
    let g = ree_graph(params)?;
    for t in [params.minus_torus(), params.plus_torus()] {
        let ps: Vec<BigUint> = prime_divisors(&t)?;
        for (i, u) in ps.iter().enumerate() {
            for v in &ps[i + 1..] {
                if !(t.is_multiple_of(&(u * v)) && g.edges.contains(&(u.clone(), v.clone()))) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn spec(xs: &[u64]) -> Spectrum {
        xs.iter().map(|&x| b(x)).collect()
    }

    #[test]
    fn trivial_group() {
        let g = graph_from_spectrum(&spec(&[1]), &b(1)).unwrap();
        assert!(g.vertices.is_empty() && g.edges.is_empty());
        assert_eq!(g.components().unwrap().count(), 0);
    }

    #[test]
    fn q27_edges() {
        let g = ree_graph(&ReeParams::from_n(1)).unwrap();
        assert!(g.has_edge(2, 3) && g.has_edge(2, 7) && g.has_edge(2, 13));
        assert!(!g.has_edge(3, 7));
        assert_eq!(g.edges.len(), 3);
        for p in [19, 37] {
            assert!(g.edges.iter().all(|(u, v)| *u != b(p) && *v != b(p)));
        }
    }

    #[test]
    fn q27_components() {
        let c = ree_graph(&ReeParams::from_n(1))
            .unwrap()
            .components()
            .unwrap();
        assert_eq!(c.prime_sets(), vec![vec![2, 3, 7, 13], vec![19], vec![37]]);
        let n1 = b(8) * b(3).pow(9) * b(7) * b(13);
        assert_eq!(c.order_components(), vec![n1, b(19), b(37)]);
    }

    #[test]
    fn q243_components() {
        let c = ree_graph(&ReeParams::from_n(2))
            .unwrap()
            .components()
            .unwrap();
        assert_eq!(
            c.prime_sets(),
            vec![vec![2, 3, 11, 61], vec![7, 31], vec![271]]
        );
    }

    #[test]
    fn order_components_multiply_to_order() {
        for n in 0..=3 {
            let p = ReeParams::from_n(n);
            let c = ree_graph(&p).unwrap().components().unwrap();
            let prod: BigUint = c.order_components().iter().product();
            assert_eq!(prod, group_order(&p));
            let all: BTreeSet<BigUint> = c.parts.iter().flat_map(|x| x.primes.clone()).collect();
            assert_eq!(
                all.len(),
                c.parts.iter().map(|x| x.primes.len()).sum::<usize>()
            );
        }
    }

    #[test]
    fn isolation() {
        for n in 1..=3 {
            assert!(isolation_check(&ReeParams::from_n(n)).unwrap(), "n={n}");
            assert!(tori_are_cliques(&ReeParams::from_n(n)).unwrap());
        }
    }

    #[test]
    fn maximal_elements_give_same_graph() {
        let p = ReeParams::from_n(1);
        let order = group_order(&p);
        let full = graph_from_spectrum(&spectrum(&p).unwrap(), &order).unwrap();
        let maxes = graph_from_spectrum(&spec(&[6, 9, 14, 19, 26, 37]), &order).unwrap();
        assert_eq!(full, maxes);
    }

    #[test]
    fn inconsistent_spectrum_rejected() {
        let err = graph_from_spectrum(&spec(&[1, 5]), &b(12)).unwrap_err();
        assert!(matches!(err, Error::SpectrumInconsistent { .. }));
    }

    #[test]
    fn odd_order_first_component() {
        let g = graph_from_spectrum(&spec(&[1, 3, 5, 7]), &b(105)).unwrap();
        let c = g.components().unwrap();
        assert_eq!(c.prime_sets(), vec![vec![3], vec![5], vec![7]]);
    }

    #[test]
    fn dot_output() {
        let dot = ree_graph(&ReeParams::from_n(1)).unwrap().to_dot();
        assert!(dot.starts_with("graph {"));
        assert_eq!(dot.matches("--").count(), 3);
    }
}
