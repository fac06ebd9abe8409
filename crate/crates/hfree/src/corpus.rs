//! Seeded random instances for tests and verification runs.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cnf::{CnfFormula, Lit};
use crate::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exact 3-CNF over `variables >= 3` variables: each clause has three
/// distinct variables with random signs.
pub fn random_exact_3cnf(rng: &mut impl Rng, variables: usize, clauses: usize) -> CnfFormula {
    assert!(variables >= 3, "exact 3-CNF needs at least three variables");
    let clauses = (0..clauses)
        .map(|_| {
            let mut vars = sample(rng, variables, 3).into_vec();
            vars.sort_unstable();
            vars.into_iter().map(|v| Lit { var: v, positive: rng.gen() }).collect()
        })
        .collect();
    CnfFormula::new(variables, clauses)
}

/// Erdős–Rényi graph: each pair is an edge with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
