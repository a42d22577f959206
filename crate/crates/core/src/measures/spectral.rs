//! Spectral sensitivity λ(f) = ‖A_f‖, the largest eigenvalue of the
//! sensitivity graph's adjacency matrix.
//!
//! The graph is bipartite, so its spectrum is symmetric (±λ pairs). The
//! iterative solvers therefore run power iteration on A², whose top
//! eigenvalue is λ² with no sign ambiguity, and report √ρ for the Rayleigh
//! quotient ρ. Dense solves go through a symmetric eigendecomposition of each
//! connected component; the adjacency matrix is their direct sum.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, TruthTable};
use crate::measures::graph::{two_layer_star_edges, LocalGraph, SensitivityGraph};
use crate::measures::sensitivity::check_cap;

pub const DENSE_CAP: usize = 13;
pub const ITERATIVE_CAP: usize = 26;
/// Largest single component the dense method will decompose.
pub const DENSE_BLOCK_CAP: usize = 4096;
/// Components up to this size are solved densely by the component-wise
/// method; larger ones iteratively.
pub const SMALL_BLOCK: usize = 64;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

// Fixed reduction chunk, so sums do not depend on the thread count.
const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    Dense,
    MatrixFree,
    ComponentWise,
    Analytic,
}

impl std::str::FromStr for SpectralMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(SpectralMethod::Dense),
            "matfree" | "matrix-free" => Ok(SpectralMethod::MatrixFree),
            "components" | "component-wise" => Ok(SpectralMethod::ComponentWise),
            "analytic" => Ok(SpectralMethod::Analytic),
            _ => Err(Error::Parse(format!("unknown spectral method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    /// Relative change of the Rayleigh quotient, and the eigen-residual
    /// bound relative to max(1, λ).
    pub tolerance: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralResult {
    pub value: f64,
    pub method: SpectralMethod,
    /// ‖A u − λ u‖ for the returned unit eigenvector estimate; 0 for exact
    /// methods.
    pub residual: f64,
    pub iterations: usize,
}

/// λ(f) for a table using the requested method.
pub fn spectral_sensitivity(
    table: &TruthTable,
    method: SpectralMethod,
    options: &SpectralOptions,
) -> Result<SpectralResult> {
    match method {
        SpectralMethod::Dense => dense(table),
        SpectralMethod::MatrixFree => matrix_free(table, options),
        SpectralMethod::ComponentWise => component_wise(table, options),
        SpectralMethod::Analytic => Err(Error::InvalidParameter(
            "the analytic method needs a construction, not a table".into(),
        )),
    }
}

/// λ(f) for a function: `Analytic` reads the construction's predicted λ²,
/// every other method materializes first.
pub fn spectral_sensitivity_of(
    f: &BooleanFunction,
    method: SpectralMethod,
    options: &SpectralOptions,
) -> Result<SpectralResult> {
    if method == SpectralMethod::Analytic {
        let lambda_sq = f
            .meta()
            .and_then(|m| m.predicted_lambda_sq)
            .ok_or_else(|| Error::InvalidParameter("function carries no predicted λ".into()))?;
        return Ok(SpectralResult {
            value: (lambda_sq as f64).sqrt(),
            method,
            residual: 0.0,
            iterations: 0,
        });
    }
    let cap = match method {
        SpectralMethod::Dense => DENSE_CAP,
        _ => ITERATIVE_CAP,
    };
    check_cap("spectral sensitivity", f.arity(), cap)?;
    spectral_sensitivity(&f.materialize()?, method, options)
}

fn dense(table: &TruthTable) -> Result<SpectralResult> {
    check_cap("dense spectral sensitivity", table.arity(), DENSE_CAP)?;
    let graph = SensitivityGraph::new(table.clone());
    let comps = graph.components();
    if let Some(big) = comps.iter().map(<[u64]>::len).max() {
        if big > DENSE_BLOCK_CAP {
            return Err(Error::CapExceeded {
                what: "dense eigensolve block size",
                arity: big,
                cap: DENSE_BLOCK_CAP,
            });
        }
    }
    let blocks: Vec<&[u64]> = comps.iter().collect();
    let value = blocks
        .par_iter()
        .map(|c| dense_norm(&graph.local(c)))
        .reduce(|| 0.0, f64::max);
    Ok(SpectralResult {
        value,
        method: SpectralMethod::Dense,
        residual: 0.0,
        iterations: 0,
    })
}

/// Spectral norm of a small graph by full symmetric eigendecomposition.
pub fn dense_norm(graph: &LocalGraph) -> f64 {
    let n = graph.len();
    if n == 0 {
        return 0.0;
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (a, list) in graph.adjacency.iter().enumerate() {
        for &b in list {
            m[(a, b)] = 1.0;
        }
    }
    m.symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, e| acc.max(e.abs()))
}

/// Power iteration on A² over the whole hypercube, never forming A.
fn matrix_free(table: &TruthTable, options: &SpectralOptions) -> Result<SpectralResult> {
    check_cap("matrix-free spectral sensitivity", table.arity(), ITERATIVE_CAP)?;
    let n = table.arity();
    let apply = |v: &[f64], out: &mut [f64]| {
        out.par_iter_mut().enumerate().for_each(|(x, o)| {
            let x = x as u64;
            let b = table.get(x);
            let mut acc = 0.0;
            for i in 0..n {
                let y = x ^ (1 << i);
                if table.get(y) != b {
                    acc += v[y as usize];
                }
            }
            *o = acc;
        });
    };
    let r = power_iteration(table.len() as usize, apply, options)?;
    Ok(SpectralResult {
        method: SpectralMethod::MatrixFree,
        ..r
    })
}

/// λ as the maximum over connected components, each solved densely when
/// small and by power iteration otherwise.
fn component_wise(table: &TruthTable, options: &SpectralOptions) -> Result<SpectralResult> {
    check_cap("component-wise spectral sensitivity", table.arity(), ITERATIVE_CAP)?;
    let graph = SensitivityGraph::new(table.clone());
    let comps = graph.components();
    let blocks: Vec<&[u64]> = comps.iter().collect();
    let results = blocks
        .par_iter()
        .map(|c| {
            let local = graph.local(c);
            if local.len() <= SMALL_BLOCK {
                Ok(SpectralResult {
                    value: dense_norm(&local),
                    method: SpectralMethod::ComponentWise,
                    residual: 0.0,
                    iterations: 0,
                })
            } else {
                local_power_iteration(&local, options)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = SpectralResult {
        value: 0.0,
        method: SpectralMethod::ComponentWise,
        residual: 0.0,
        iterations: 0,
    };
    for r in results {
        if r.value > out.value {
            out.value = r.value;
            out.residual = r.residual;
        }
        out.iterations += r.iterations;
    }
    Ok(out)
}

/// Power iteration on an explicit adjacency list.
pub fn local_power_iteration(graph: &LocalGraph, options: &SpectralOptions) -> Result<SpectralResult> {
    let apply = |v: &[f64], out: &mut [f64]| {
        for (o, list) in out.iter_mut().zip(&graph.adjacency) {
            *o = list.iter().map(|&b| v[b]).sum();
        }
    };
    let r = power_iteration(graph.len(), apply, options)?;
    Ok(SpectralResult {
        method: SpectralMethod::ComponentWise,
        ..r
    })
}

/// Power iteration on A² for a symmetric operator `apply` (out = A v).
///
/// With v a unit vector, w = A v and z = A w, the Rayleigh quotient of A² is
/// ρ = ‖w‖². For λ = √ρ, u± = w ± λv satisfy A u± ∓ λ u± = z − ρ v, which
/// gives the reported residual for whichever of u± is longer. Iteration
/// stops once ρ changes by at most `tolerance` relative and that residual
/// is at most `tolerance · max(1, λ)`.
pub fn power_iteration<F>(dim: usize, apply: F, options: &SpectralOptions) -> Result<SpectralResult>
where
    F: Fn(&[f64], &mut [f64]),
{
    if dim == 0 {
        return Ok(zero_result());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut v: Vec<f64> = (0..dim).map(|_| rng.random_range(0.5..1.5)).collect();
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    let mut w = vec![0.0; dim];
    let mut z = vec![0.0; dim];
    let mut previous: Option<f64> = None;
    let mut residual = f64::INFINITY;
    for iteration in 1..=options.max_iterations {
        apply(&v, &mut w);
        let rho = dot(&w, &w);
        if rho == 0.0 {
            return Ok(SpectralResult {
                iterations: iteration,
                ..zero_result()
            });
        }
        apply(&w, &mut z);
        let lambda = rho.sqrt();
        let vw = dot(&v, &w);
        let u_len = (2.0 * rho + 2.0 * lambda * vw.abs()).sqrt();
        let diff: Vec<f64> = z.iter().zip(&v).map(|(a, b)| a - rho * b).collect();
        residual = dot(&diff, &diff).sqrt() / u_len;
        let settled = previous.is_some_and(|p| (rho - p).abs() <= options.tolerance * rho);
        if settled && residual <= options.tolerance * lambda.max(1.0) {
            return Ok(SpectralResult {
                value: lambda,
                method: SpectralMethod::MatrixFree,
                residual,
                iterations: iteration,
            });
        }
        previous = Some(rho);
        let zn = dot(&z, &z).sqrt();
        v.iter_mut().zip(&z).for_each(|(a, b)| *a = b / zn);
    }
    Err(Error::NoConvergence {
        iterations: options.max_iterations,
        residual,
    })
}

fn zero_result() -> SpectralResult {
    SpectralResult {
        value: 0.0,
        method: SpectralMethod::MatrixFree,
        residual: 0.0,
        iterations: 0,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    if a.len() <= CHUNK {
        return a.iter().zip(b).map(|(x, y)| x * y).sum();
    }
    let partial: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q).sum())
        .collect();
    partial.iter().sum()
}

/// λ of the two-layer star with center degree s₀ and first-layer degree s₁:
/// √(s₀ + s₁ − 1).
pub fn two_layer_star_lambda(s0: u64, s1: u64) -> Result<f64> {
    if s0 == 0 || s1 == 0 {
        return Err(Error::InvalidParameter(format!(
            "two-layer star needs s0, s1 >= 1, got ({s0}, {s1})"
        )));
    }
    Ok(((s0 + s1 - 1) as f64).sqrt())
}

/// Dense spectral norm of the explicit two-layer star graph.
pub fn two_layer_star_dense(s0: usize, s1: usize) -> f64 {
    let (v, edges) = two_layer_star_edges(s0, s1);
    dense_norm(&LocalGraph::from_edges(v, &edges))
}
