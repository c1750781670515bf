//! Ground truth independent of the solvers: exhaustive search for `γ_w`,
//! `ρ_w` and `γ^i_w`, an exact rational LP for the fractional relaxations,
//! and neighborhood-matrix diagnostics.

mod brute;
mod matrix;
pub mod simplex;

use num::{BigRational, Zero};
use thiserror::Error;

use crate::graph::{Vertex, WeightedGraph};

pub use brute::{
    brute_gamma, brute_gamma_i, brute_rho, maximal_independent_sets, min_dominating_cost,
};
pub use matrix::{
    det, has_consecutive_ones, is_unimodular_minor, neighborhood_matrix, NeighborhoodMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {vertices} vertices, oracle cap is {cap}")]
    InstanceTooLarge { vertices: usize, cap: usize },
    #[error("LP internal error: {0}")]
    LpInternalError(String),
    #[error("order is not a permutation of the vertex set")]
    BadPermutation,
}

/// Size cap for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices: 10 }
    }
}

impl OracleLimits {
    pub fn with_cap(max_vertices: usize) -> Self {
        OracleLimits { max_vertices }
    }
}

fn check_size(g: &WeightedGraph, limits: OracleLimits) -> Result<(), OracleError> {
    // bitmask width bounds every cap
    let cap = limits.max_vertices.min(64);
    if g.len() > cap {
        Err(OracleError::InstanceTooLarge {
            vertices: g.len(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Optimal values of the packing program (max `Σ w g`, `g[N(v)] <= 1`) and
/// the covering program (min `|f|`, `f[N(v)] >= w(v)`), solved separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolution {
    pub gamma_star: BigRational,
    pub rho_star: BigRational,
    /// Packing solution `g`.
    pub primal: Vec<BigRational>,
    /// Covering solution `f`.
    pub dual: Vec<BigRational>,
}

pub fn solve_fractional(
    g: &WeightedGraph,
    limits: OracleLimits,
) -> Result<FractionalSolution, OracleError> {
    use simplex::{solve, Constraint, LinearProgram, LpOutcome, Relation};

    check_size(g, limits)?;
    let n = g.len();
    let q = |x: u64| BigRational::from_integer(x.into());
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|u| q(u64::from(u == v || g.are_adjacent(u, v))))
                .collect()
        })
        .collect();
    let weights: Vec<BigRational> = g.weights().iter().map(|&w| q(w)).collect();

    let packing = LinearProgram {
        objective: weights.clone(),
        constraints: rows
            .iter()
            .map(|r| Constraint {
                coeffs: r.clone(),
                relation: Relation::Le,
                rhs: q(1),
            })
            .collect(),
        maximize: true,
    };
    let covering = LinearProgram {
        objective: vec![q(1); n],
        constraints: rows
            .iter()
            .zip(&weights)
            .map(|(r, w)| Constraint {
                coeffs: r.clone(),
                relation: Relation::Ge,
                rhs: w.clone(),
            })
            .collect(),
        maximize: false,
    };

    let (rho_star, primal) = match solve(&packing) {
        LpOutcome::Optimal { value, x } => (value, x),
        other => {
            return Err(OracleError::LpInternalError(format!(
                "packing LP: {other:?}"
            )))
        }
    };
    let (gamma_star, dual) = match solve(&covering) {
        LpOutcome::Optimal { value, x } => (value, x),
        other => {
            return Err(OracleError::LpInternalError(format!(
                "covering LP: {other:?}"
            )))
        }
    };

    let lhs = |x: &[BigRational], v: Vertex| -> BigRational {
        (0..n)
            .filter(|&u| !rows[v][u].is_zero())
            .map(|u| x[u].clone())
            .sum()
    };
    for v in 0..n {
        let negative = primal[v] < BigRational::zero() || dual[v] < BigRational::zero();
        if negative || lhs(&primal, v) > q(1) || lhs(&dual, v) < weights[v] {
            return Err(OracleError::LpInternalError(format!(
                "infeasible LP solution at vertex {v}"
            )));
        }
    }
    if gamma_star != rho_star {
        return Err(OracleError::LpInternalError(format!(
            "duality gap: covering {gamma_star} vs packing {rho_star}"
        )));
    }
    Ok(FractionalSolution {
        gamma_star,
        rho_star,
        primal,
        dual,
    })
}
