//! The invariant battery behind `ree-kit verify`.

use num_bigint::BigUint;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::census::{validate_histogram, Report};
use crate::nse::{nse_map, structural_checks};
use crate::numbers::{divisors, group_order, group_order_factored, totient, ReeParams};
use crate::prime_graph::{isolation_check, ree_graph, tori_are_cliques};
use crate::ree::ReeContext;
use crate::Result;

pub const DEFAULT_SEED: u64 = 0x5eed_2a62;

/// Largest n for which the battery also builds the field and samples matrices.
pub const MATRIX_SAMPLING_MAX_N: u32 = 4;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            samples: 64,
        }
    }
}

pub fn battery(params: &ReeParams, opts: VerifyOptions) -> Result<Report> {
    let mut r = Report::default();
    let order = group_order(params);
    r.push("|G| product form", order == group_order_factored(params));
    for (name, ok) in structural_checks(params) {
        r.push(name, ok);
    }

    let map = nse_map(params)?;
    let hist = map.histogram();
    r.push("sum of m_i = |G|", map.total() == order);
    for (i, e) in &map.entries {
        r.push(
            format!("phi({i}) | m_{i}"),
            e.count.is_multiple_of(&totient(i)?),
        );
    }
    // Frobenius and Weisner over every divisor of |G|.
    r.extend(validate_histogram(&hist, &order)?);
    r.push("q^3 | m_i on the tori", map.q3_divisibility_check());
    let spec = map.spectrum();
    r.push(
        "spectrum divisor-closed",
        spec.iter().all(|i| {
            divisors(i)
                .map(|ds| ds.iter().all(|d| spec.contains(d)))
                .unwrap_or(false)
        }),
    );

    let graph = ree_graph(params)?;
    let comps = graph.components()?;
    let prod: BigUint = comps.order_components().iter().product();
    r.push("order components multiply to |G|", prod == order);
    r.push("torus primes form cliques", tori_are_cliques(params)?);
    // q = 3 has only two components; isolation is a statement about q >= 27
    if params.n > 0 {
        r.push("prime graph isolation", isolation_check(params)?);
    }

    if params.n <= MATRIX_SAMPLING_MAX_N {
        r.extend(matrix_sampling(params, opts)?);
    }
    Ok(r)
}

/// Random checks of the closed product and cube laws against 7×7 matrices,
/// and σ-invariance of the generators.
pub fn matrix_sampling(params: &ReeParams, opts: VerifyOptions) -> Result<Report> {
    let ctx = ReeContext::from_params(params)?;
    let f = ctx.field();
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let (mut prod_bad, mut cube_bad, mut sigma_bad) = (0usize, 0usize, 0usize);
    let nine = BigUint::from(9u32);
    for _ in 0..opts.samples {
        let x = ctx.triple(f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        let y = ctx.triple(f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        let (mx, my) = (ctx.unipotent_matrix(&x), ctx.unipotent_matrix(&y));
        if ctx.unipotent_matrix(&ctx.unipotent_mul(&x, &y)) != &mx * &my {
            prod_bad += 1;
        }
        let cube = &(&mx * &mx) * &mx;
        if ctx.unipotent_matrix(&ctx.unipotent_cube(&x)) != cube {
            cube_bad += 1;
        }
        let ord = mx.order(&nine)?;
        if ord != BigUint::from(ctx.unipotent_order(&x)) {
            cube_bad += 1;
        }
        let t = f.random(&mut rng);
        for w in [ctx.alpha(t), ctx.beta(t), ctx.gamma(t)] {
            if !ctx.sigma_fixed(&w)? {
                sigma_bad += 1;
            }
        }
    }
    let mut r = Report::default();
    r.push(
        format!("product law on {} random pairs", opts.samples),
        prod_bad == 0,
    );
    r.push(
        format!("cube law and orders on {} samples", opts.samples),
        cube_bad == 0,
    );
    r.push(
        format!("sigma fixes alpha, beta, gamma on {} samples", opts.samples),
        sigma_bad == 0,
    );
    r.push("sigma fixes tau", ctx.sigma_fixed(&ctx.tau())?);
    r.push(
        "generators have determinant 1",
        crate::census::ree_generators(&ctx)?
            .iter()
            .all(|g| g.det().is_one()),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes_small_cases() {
        for n in 0..=2 {
            let r = battery(&ReeParams::from_n(n), VerifyOptions::default()).unwrap();
            assert!(r.all_passed(), "n={n}: {:?}", r.violations());
        }
    }
}
