use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::TruthTable;
use crate::measures::graph::SensitivityGraph;
use crate::measures::spectral::{spectral_sensitivity, SpectralMethod, SpectralOptions};
use crate::measures::{degree, s, s0, s1};
use crate::verify::{timed, ClaimResult, Comparison};

/// log₂ n − log₂ log₂ n + 2, defined for n ≥ 2.
fn simon_bound(n: usize) -> f64 {
    let l = (n as f64).log2();
    l - l.log2() + 2.0
}

/// (s₀, s₁) for a table held in a single word.
fn small_sensitivities(n: usize, bits: u64) -> (u32, u32) {
    let mut best = [0u32; 2];
    for x in 0..1u64 << n {
        let v = (bits >> x) & 1;
        let sx = (0..n).filter(|&i| (bits >> (x ^ (1 << i))) & 1 != v).count() as u32;
        best[v as usize] = best[v as usize].max(sx);
    }
    (best[0], best[1])
}

#[derive(Clone, Debug)]
pub struct SimonOutcome {
    pub n: usize,
    pub bound: f64,
    pub tables: u64,
    pub nondegenerate: u64,
    pub min_sum: u32,
    /// The smallest-index table attaining `min_sum`.
    pub minimizer: TruthTable,
    /// Non-degenerate functions with s(f) > log n.
    pub branch_cases: u64,
    pub branch_violations: u64,
    pub violations: u64,
    pub claims: Vec<ClaimResult>,
}

#[derive(Clone, Copy, Default)]
struct SimonAcc {
    nondegenerate: u64,
    best: Option<(u32, u64)>,
    branch_cases: u64,
    branch_violations: u64,
    violations: u64,
}

impl SimonAcc {
    fn merge(self, o: SimonAcc) -> SimonAcc {
        SimonAcc {
            nondegenerate: self.nondegenerate + o.nondegenerate,
            best: match (self.best, o.best) {
                (None, b) | (b, None) => b,
                (Some(a), Some(b)) => Some(a.min(b)),
            },
            branch_cases: self.branch_cases + o.branch_cases,
            branch_violations: self.branch_violations + o.branch_violations,
            violations: self.violations + o.violations,
        }
    }
}

/// Checks s₀(f) + s₁(f) ≥ log n − log log n + 2 over every function that
/// depends on all of its n ∈ {2, 3, 4} variables.
pub fn verify_simon(n: usize) -> Result<SimonOutcome> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "exhaustive enumeration needs 2 ≤ n ≤ 4, got {n}"
        )));
    }
    let bound = simon_bound(n);
    let log_n = (n as f64).log2();
    let tables = 1u64 << (1 << n);
    let (acc, ms) = timed(|| {
        (0..tables)
            .into_par_iter()
            .fold(SimonAcc::default, |mut acc, bits| {
                let t = TruthTable::from_words(n, vec![bits]).expect("one word");
                if !t.is_nondegenerate() {
                    return acc;
                }
                let (a, b) = small_sensitivities(n, bits);
                let sum = a + b;
                acc.nondegenerate += 1;
                acc.best = Some(acc.best.map_or((sum, bits), |b| b.min((sum, bits))));
                let ok = f64::from(sum) >= bound;
                acc.violations += u64::from(!ok);
                if f64::from(a.max(b)) > log_n {
                    acc.branch_cases += 1;
                    acc.branch_violations += u64::from(!ok);
                }
                acc
            })
            .reduce(SimonAcc::default, SimonAcc::merge)
    });
    let (min_sum, min_bits) = acc.best.expect("parity is non-degenerate");
    let minimizer = TruthTable::from_words(n, vec![min_bits])?;
    let claims = vec![
        ClaimResult::new(format!("sum_bound.n{n}"), Comparison::Ge, bound, f64::from(min_sum), 0.0)
            .with_runtime(ms)
            .with_note(format!(
                "minimum of s0+s1 over {} non-degenerate of {tables} tables, attained by {}; {} violations",
                acc.nondegenerate,
                minimizer.to_hex(),
                acc.violations
            )),
        ClaimResult::exact(format!("sum_bound.n{n}.branch"), 0, acc.branch_violations).with_note(format!(
            "{} functions with s(f) > log n",
            acc.branch_cases
        )),
    ];
    Ok(SimonOutcome {
        n,
        bound,
        tables,
        nondegenerate: acc.nondegenerate,
        min_sum,
        minimizer,
        branch_cases: acc.branch_cases,
        branch_violations: acc.branch_violations,
        violations: acc.violations,
        claims,
    })
}

/// An induced subgraph of the n-cube together with its minimum degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphWitness {
    pub n: usize,
    pub vertices: Vec<u64>,
    pub min_degree: u32,
}

type VertexSet = [u64; 4];

const SUBGRAPH_CAP: usize = 8;

fn contains(set: &VertexSet, v: u64) -> bool {
    (set[(v >> 6) as usize] >> (v & 63)) & 1 == 1
}

/// Minimum degree of the subgraph of the n-cube induced by `vertices`;
/// `None` for the empty set.
pub fn min_degree(n: usize, vertices: &[u64]) -> Option<u32> {
    assert!(n <= SUBGRAPH_CAP, "vertex sets are limited to the 8-cube");
    let mut set = [0u64; 4];
    for &v in vertices {
        set[(v >> 6) as usize] |= 1 << (v & 63);
    }
    set_min_degree(n, &set).map(|(md, _)| md)
}

/// (minimum degree, vertex count)
fn set_min_degree(n: usize, set: &VertexSet) -> Option<(u32, u32)> {
    let mut md = u32::MAX;
    let mut size = 0;
    for (w, &word) in set.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let v = (w as u64) << 6 | u64::from(bits.trailing_zeros());
            bits &= bits - 1;
            size += 1;
            let d = (0..n).filter(|&i| contains(set, v ^ (1 << i))).count() as u32;
            md = md.min(d);
        }
    }
    (size > 0).then_some((md, size))
}

#[derive(Clone, Copy, Default)]
struct SubgraphAcc {
    checked: u64,
    violations: u64,
    /// smallest |V| / 2^md seen, as (|V|, md)
    tightest: Option<(u32, u32)>,
    /// (md, |V|, set) maximizing md, then minimizing |V|, then the set
    witness: Option<(u32, u32, VertexSet)>,
}

impl SubgraphAcc {
    fn add(mut self, n: usize, set: VertexSet) -> Self {
        let Some((md, size)) = set_min_degree(n, &set) else {
            return self;
        };
        self.checked += 1;
        self.violations += u64::from(u64::from(size) < 1u64 << md);
        let ratio = |(v, d): (u32, u32)| f64::from(v) / 2f64.powi(d as i32);
        if self.tightest.is_none_or(|t| ratio((size, md)) < ratio(t)) {
            self.tightest = Some((size, md));
        }
        self.witness = pick_witness(self.witness, Some((md, size, set)));
        self
    }

    fn merge(self, o: SubgraphAcc) -> SubgraphAcc {
        let ratio = |(v, d): (u32, u32)| f64::from(v) / 2f64.powi(d as i32);
        SubgraphAcc {
            checked: self.checked + o.checked,
            violations: self.violations + o.violations,
            tightest: match (self.tightest, o.tightest) {
                (None, t) | (t, None) => t,
                (Some(a), Some(b)) => Some(if ratio(b) < ratio(a) { b } else { a }),
            },
            witness: pick_witness(self.witness, o.witness),
        }
    }
}

fn pick_witness(
    a: Option<(u32, u32, VertexSet)>,
    b: Option<(u32, u32, VertexSet)>,
) -> Option<(u32, u32, VertexSet)> {
    match (a, b) {
        (None, w) | (w, None) => w,
        (Some(a), Some(b)) => {
            let key = |w: &(u32, u32, VertexSet)| (std::cmp::Reverse(w.0), w.1, w.2);
            Some(if key(&b) < key(&a) { b } else { a })
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubgraphOutcome {
    pub checked: u64,
    pub violations: u64,
    /// The checked subgraph of largest minimum degree.
    pub witness: SubgraphWitness,
    pub claims: Vec<ClaimResult>,
}

/// Checks |V| ≥ 2^{md(G)} for induced subgraphs of the n-cube, n ≤ 8:
/// every non-empty vertex set when n ≤ 4, plus `samples` random sets.
///
/// Random sets draw an inclusion probability per sample so that dense,
/// high-degree subgraphs are exercised as well as sparse ones.
pub fn verify_subgraph_lemma(n: usize, samples: u64, seed: u64) -> Result<SubgraphOutcome> {
    if n == 0 || n > SUBGRAPH_CAP {
        return Err(Error::CapExceeded {
            what: "subgraph lemma",
            arity: n,
            cap: SUBGRAPH_CAP,
        });
    }
    let mut claims = Vec::new();
    let mut total = SubgraphAcc::default();
    let ratio_of = |acc: &SubgraphAcc| {
        acc.tightest
            .map_or(f64::INFINITY, |(v, d)| f64::from(v) / 2f64.powi(d as i32))
    };

    if n <= 4 {
        let (acc, ms) = timed(|| {
            (1u64..1 << (1 << n))
                .into_par_iter()
                .fold(SubgraphAcc::default, |acc, bits| acc.add(n, [bits, 0, 0, 0]))
                .reduce(SubgraphAcc::default, SubgraphAcc::merge)
        });
        claims.push(
            ClaimResult::new(format!("subgraph.n{n}.exhaustive"), Comparison::Ge, 1.0, ratio_of(&acc), 0.0)
                .with_runtime(ms)
                .with_note(format!(
                    "min |V|/2^md over {} non-empty vertex sets; {} violations",
                    acc.checked, acc.violations
                )),
        );
        total = total.merge(acc);
    }

    if samples > 0 {
        const CHUNK: u64 = 1024;
        let vertices = 1u64 << n;
        let (acc, ms) = timed(|| {
            (0..samples.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let mut acc = SubgraphAcc::default();
                    for _ in 0..CHUNK.min(samples - c * CHUNK) {
                        let p: f64 = rng.random_range(0.02..1.0);
                        let mut set = [0u64; 4];
                        for v in 0..vertices {
                            if rng.random_bool(p) {
                                set[(v >> 6) as usize] |= 1 << (v & 63);
                            }
                        }
                        if set == [0; 4] {
                            let v = rng.random_range(0..vertices);
                            set[(v >> 6) as usize] |= 1 << (v & 63);
                        }
                        acc = acc.add(n, set);
                    }
                    acc
                })
                .reduce(SubgraphAcc::default, SubgraphAcc::merge)
        });
        claims.push(
            ClaimResult::new(format!("subgraph.n{n}.random"), Comparison::Ge, 1.0, ratio_of(&acc), 0.0)
                .with_runtime(ms)
                .with_note(format!(
                    "min |V|/2^md over {} random vertex sets (seed {seed:#x}); {} violations",
                    acc.checked, acc.violations
                )),
        );
        total = total.merge(acc);
    }

    let (md, _, set) = total.witness.ok_or_else(|| {
        Error::InvalidParameter("no vertex sets checked; pass samples > 0 for n > 4".into())
    })?;
    let vertices = (0..1u64 << n).filter(|&v| contains(&set, v)).collect();
    Ok(SubgraphOutcome {
        checked: total.checked,
        violations: total.violations,
        witness: SubgraphWitness {
            n,
            vertices,
            min_degree: md,
        },
        claims,
    })
}

/// |E(G_f)| ≤ s(f) · 2^{n−1}
pub fn verify_edge_bound(table: &TruthTable) -> ClaimResult {
    let n = table.arity();
    let ((edges, bound), ms) = timed(|| {
        let edges = SensitivityGraph::new(table.clone()).edge_count();
        (edges, u64::from(s(table).value) << (n - 1))
    });
    ClaimResult::new("edges.bound", Comparison::Le, bound as f64, edges as f64, 0.0).with_runtime(ms)
}

/// √s(f) ≤ λ(f) ≤ √(s₀(f)s₁(f)) and deg(f) ≤ λ(f)², each within `tol`.
pub fn verify_lemma_chain(
    table: &TruthTable,
    tol: f64,
    method: SpectralMethod,
    options: &SpectralOptions,
) -> Result<Vec<ClaimResult>> {
    let (values, ms) = timed(|| -> Result<_> {
        let lambda = spectral_sensitivity(table, method, options)?.value;
        Ok((s0(table).value, s1(table).value, degree(table)?, lambda))
    });
    let (a, b, deg, lambda) = values?;
    let sens = f64::from(a.max(b));
    let note = format!("s0={a} s1={b} deg={deg} lambda={lambda:.9}");
    Ok(vec![
        ClaimResult::new("chain.sqrt_s", Comparison::Ge, sens.sqrt(), lambda, tol)
            .with_runtime(ms)
            .with_note(note),
        ClaimResult::new(
            "chain.lambda_sqrt_s0s1",
            Comparison::Le,
            (f64::from(a) * f64::from(b)).sqrt(),
            lambda,
            tol,
        ),
        ClaimResult::new("chain.degree", Comparison::Le, lambda * lambda, deg as f64, tol),
    ])
}

/// `count` uniformly random tables of arity n. The stream is selected by n,
/// so each arity's sample does not depend on which other arities are drawn.
pub fn random_functions(n: usize, count: usize, seed: u64) -> Result<Vec<TruthTable>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let words = (1usize << n).div_ceil(64);
    (0..count)
        .map(|_| TruthTable::from_words(n, (0..words).map(|_| rng.random()).collect()))
        .collect()
}

/// The lemma chain over `count` seeded random functions per arity, plus the
/// empirical minimum degree among the non-degenerate ones.
pub fn verify_lemma_chain_random(
    arities: &[usize],
    count: usize,
    seed: u64,
    tol: f64,
    options: &SpectralOptions,
) -> Result<Vec<ClaimResult>> {
    let mut claims = Vec::new();
    for &n in arities {
        let tables = random_functions(n, count, seed)?;
        let (outcomes, ms) = timed(|| {
            tables
                .par_iter()
                .map(|t| {
                    let chain = verify_lemma_chain(t, tol, SpectralMethod::ComponentWise, options);
                    let nondegenerate_degree = t
                        .is_nondegenerate()
                        .then(|| degree(t))
                        .transpose();
                    (chain, nondegenerate_degree)
                })
                .collect::<Vec<_>>()
        });
        let mut violations = 0u64;
        let mut errors = Vec::new();
        let mut min_degree: Option<usize> = None;
        let mut nondegenerate = 0;
        for (i, (chain, deg)) in outcomes.into_iter().enumerate() {
            match chain {
                Ok(c) => violations += c.iter().filter(|c| !c.passed()).count() as u64,
                Err(e) => errors.push(format!("function {i}: {e}")),
            }
            if let Some(d) = deg? {
                nondegenerate += 1;
                min_degree = Some(min_degree.map_or(d, |m| m.min(d)));
            }
        }
        let mut chain = ClaimResult::exact(
            format!("chain.n{n}"),
            0,
            violations + errors.len() as u64,
        )
        .with_runtime(ms)
        .with_note(format!("{count} functions, seed {seed:#x}"));
        if !errors.is_empty() {
            chain = chain.with_note(errors.join("; "));
        }
        claims.push(chain);
        let floor = match min_degree {
            Some(d) => ClaimResult::new(format!("degree_min.n{n}"), Comparison::Ge, 1.0, d as f64, 0.0)
                .with_note(format!(
                    "empirical minimum degree {d} over {nondegenerate} non-degenerate functions; log n = {:.3}",
                    (n as f64).log2()
                )),
            None => ClaimResult::flag(format!("degree_min.n{n}"), false)
                .with_note("no non-degenerate function in the sample"),
        };
        claims.push(floor);
    }
    Ok(claims)
}
