use std::collections::BTreeMap;
use std::fmt;

use crate::constructions::{desensitize, haf, maf, tradeoff, tradeoff_predictions};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, CertificateCollection, PartialAssignment, TruthTable};
use crate::measures::graph::{ComponentShape, SensitivityGraph};
use crate::measures::spectral::{spectral_sensitivity, SpectralMethod, SpectralOptions, DENSE_CAP};
use crate::measures::unambiguous::{uc1, UcOutcome, DEFAULT_UC_NODE_BUDGET, UC_CAP};
use crate::measures::{degree, min_b_sensitivity, s, s0, s1};
use crate::verify::{timed, verify_lemma_chain, ClaimResult, Comparison};

/// Largest arity whose sensitivity graph is split into components here.
const CENSUS_CAP: usize = 24;
const DESENS_CAP: usize = 20;

fn method_for(arity: usize) -> SpectralMethod {
    if arity <= DENSE_CAP {
        SpectralMethod::Dense
    } else {
        SpectralMethod::ComponentWise
    }
}

fn lambda_claim(
    id: &str,
    table: &TruthTable,
    predicted: f64,
    tol: f64,
    options: &SpectralOptions,
) -> Result<ClaimResult> {
    let method = method_for(table.arity());
    let (r, ms) = timed(|| spectral_sensitivity(table, method, options));
    let r = r?;
    Ok(ClaimResult::new(id, Comparison::WithinTol, predicted, r.value, tol)
        .with_runtime(ms)
        .with_note(format!(
            "{} method, residual {:.2e}, {} iterations",
            serde_json::to_value(r.method).expect("method serializes").as_str().unwrap_or_default(),
            r.residual,
            r.iterations
        )))
}

fn materialize_timed(f: &BooleanFunction) -> Result<(TruthTable, f64)> {
    let (t, ms) = timed(|| f.materialize());
    Ok((t?, ms))
}

/// haf_r: arity, non-degeneracy, s₀ = 1, s₁ = 2^r with every 1-input that
/// sensitive, and λ = √s₁. r ∈ {2, 3}.
pub fn verify_theorem1(r: u32, tol: f64, options: &SpectralOptions) -> Result<Vec<ClaimResult>> {
    if !(2..=3).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "the haf check runs for r in {{2, 3}}, got {r}"
        )));
    }
    let f = haf(r)?;
    let (t, build_ms) = materialize_timed(&f)?;
    let k = (1u64 << r) - u64::from(r) - 1;
    let codeword = (1u64 << r) - 1;
    let n = f.arity() as u64;
    let s1_pred = 1u64 << r;

    let (nondeg, nd_ms) = timed(|| t.is_nondegenerate());
    let ((a, b, low), s_ms) = timed(|| (s0(&t), s1(&t), min_b_sensitivity(&t, true)));
    Ok(vec![
        ClaimResult::exact("haf.arity", codeword + (1 << k), n).with_runtime(build_ms),
        ClaimResult::new("haf.arity_bound", Comparison::Ge, (1u64 << k) as f64, n as f64, 0.0),
        ClaimResult::flag("haf.nondegenerate", nondeg).with_runtime(nd_ms),
        ClaimResult::exact("haf.s0", 1, u64::from(a.value)).with_runtime(s_ms),
        ClaimResult::exact("haf.s1", s1_pred, u64::from(b.value))
            .with_note("equality checked; the bound only asks for s1 <= 2^r"),
        ClaimResult::exact("haf.s1_uniform", s1_pred, u64::from(low.value))
            .with_note("minimum sensitivity over 1-inputs"),
        lambda_claim("haf.lambda", &t, (s1_pred as f64).sqrt(), tol, options)?,
    ])
}

/// Count of sensitivity-graph components by shape.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentCensus(pub BTreeMap<ComponentShape, u64>);

impl ComponentCensus {
    pub fn of(table: &TruthTable) -> Result<Self> {
        if table.arity() > CENSUS_CAP {
            return Err(Error::CapExceeded {
                what: "component census",
                arity: table.arity(),
                cap: CENSUS_CAP,
            });
        }
        let graph = SensitivityGraph::new(table.clone());
        let mut counts = BTreeMap::new();
        for c in graph.components().iter() {
            *counts.entry(graph.local(c).shape()).or_insert(0) += 1;
        }
        Ok(ComponentCensus(counts))
    }

    pub fn count(&self, pred: impl Fn(&ComponentShape) -> bool) -> u64 {
        self.0.iter().filter(|(k, _)| pred(k)).map(|(_, v)| v).sum()
    }

    /// Largest λ² among the star-shaped components, from their shapes.
    pub fn max_lambda_sq(&self) -> Option<u64> {
        self.0
            .keys()
            .filter_map(|shape| match *shape {
                ComponentShape::Star { center_degree } => Some(center_degree as u64),
                ComponentShape::TwoLayerStar {
                    center_degree,
                    layer_degree,
                } => Some((center_degree + layer_degree - 1) as u64),
                ComponentShape::Other => None,
            })
            .max()
    }
}

impl fmt::Display for ComponentCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(shape, count)| match shape {
                ComponentShape::Star { center_degree } => format!("star({center_degree}) x{count}"),
                ComponentShape::TwoLayerStar {
                    center_degree,
                    layer_degree,
                } => format!("two-layer({center_degree},{layer_degree}) x{count}"),
                ComponentShape::Other => format!("other x{count}"),
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// chaf(as) ∘' ¬chaf(bs): s₀, s₁ against the closed forms, λ against
/// √(s₀ + s₁ − 1), and the component census (stars and two-layer stars only).
pub fn verify_tradeoff(
    outer: &[u32],
    inner: &[u32],
    tol: f64,
    options: &SpectralOptions,
) -> Result<Vec<ClaimResult>> {
    let pred = tradeoff_predictions(outer, inner)?;
    let f = tradeoff(outer, inner)?;
    let (t, build_ms) = materialize_timed(&f)?;
    let ((a, b), s_ms) = timed(|| (s0(&t).value, s1(&t).value));
    let mut claims = vec![
        ClaimResult::exact("tradeoff.arity", pred.arity.map_or(u64::MAX, |a| a as u64), f.arity() as u64)
            .with_runtime(build_ms),
        ClaimResult::exact("tradeoff.s0", pred.s0, u64::from(a)).with_runtime(s_ms),
        ClaimResult::exact("tradeoff.s1", pred.s1, u64::from(b)),
        lambda_claim("tradeoff.lambda", &t, (pred.lambda_sq as f64).sqrt(), tol, options)?,
    ];

    let (census, ms) = timed(|| ComponentCensus::of(&t));
    let census = census?;
    let other = census.count(|s| *s == ComponentShape::Other);
    let layered = census.count(|s| matches!(s, ComponentShape::TwoLayerStar { .. }));
    claims.push(
        ClaimResult::exact("tradeoff.census.other", 0, other)
            .with_runtime(ms)
            .with_note(census.to_string()),
    );
    claims.push(if inner.is_empty() {
        ClaimResult::exact("tradeoff.census.two_layer", 0, layered)
    } else {
        ClaimResult::new("tradeoff.census.two_layer", Comparison::Ge, 1.0, layered as f64, 0.0)
    });
    claims.push(ClaimResult::exact(
        "tradeoff.census.max_lambda_sq",
        pred.lambda_sq,
        census.max_lambda_sq().unwrap_or(0),
    ));
    Ok(claims)
}

/// f′ from f and an unambiguous 1-certificate collection S: s₀(f′) = 1,
/// s₁(f′) = 3·max codim(S), UC₁(f′) ≤ 3·max codim(S) and λ(f′) = √s₁(f′).
/// Against UC₁(f): equality when S is optimal, s₁(f′) ≥ 3·UC₁(f) otherwise.
pub fn verify_desensitization(
    f: &BooleanFunction,
    certificates: &CertificateCollection,
    tol: f64,
    options: &SpectralOptions,
) -> Result<Vec<ClaimResult>> {
    if 3 * f.arity() > DESENS_CAP {
        return Err(Error::CapExceeded {
            what: "desensitization check",
            arity: 3 * f.arity(),
            cap: DESENS_CAP,
        });
    }
    let g = desensitize(f, certificates)?;
    let (t, build_ms) = materialize_timed(&g)?;
    let width = certificates.max_codim() as u64;
    let ((a, b), s_ms) = timed(|| (s0(&t).value, s1(&t).value));
    let mut claims = vec![
        ClaimResult::exact("desens.s0", 1, u64::from(a)).with_runtime(build_ms + s_ms),
        ClaimResult::exact("desens.s1", 3 * width, u64::from(b)),
    ];

    if f.arity() <= UC_CAP {
        let (uc, ms) = timed(|| uc1(&f.materialize()?, DEFAULT_UC_NODE_BUDGET));
        match uc? {
            UcOutcome::Exact { value, .. } => {
                let value = value as u64;
                let claim = if value == width {
                    ClaimResult::exact("desens.s1_3uc1", 3 * value, u64::from(b))
                } else {
                    ClaimResult::new("desens.s1_3uc1", Comparison::Ge, (3 * value) as f64, f64::from(b), 0.0)
                        .with_note("S is not an optimal collection")
                };
                claims.push(claim.with_runtime(ms).with_note(format!("UC1(f) = {value}")));
            }
            UcOutcome::Exhausted { lower, upper } => claims.push(
                ClaimResult::flag("desens.s1_3uc1", false)
                    .with_note(format!("UC1(f) search exhausted between {lower} and {upper}")),
            ),
        }
    }
    if t.arity() <= UC_CAP {
        let (uc, ms) = timed(|| uc1(&t, DEFAULT_UC_NODE_BUDGET));
        if let Some(v) = uc?.value() {
            claims.push(
                ClaimResult::new("desens.uc1", Comparison::Le, (3 * width) as f64, v as f64, 0.0)
                    .with_runtime(ms),
            );
        }
    }
    claims.push(lambda_claim("desens.lambda", &t, ((3 * width) as f64).sqrt(), tol, options)?);
    Ok(claims)
}

/// maf_k, k ∈ {2, 3, 4}: deg ≥ k by exact Möbius transform, also on the
/// restriction with every data bit 0; s = ⌈k/2⌉ + 1; and the lemma chain.
pub fn verify_maf_proposition(k: usize, tol: f64, options: &SpectralOptions) -> Result<Vec<ClaimResult>> {
    if !(2..=4).contains(&k) {
        return Err(Error::InvalidParameter(format!("maf is checked for k in 2..=4, got {k}")));
    }
    let f = maf(k)?;
    let (t, build_ms) = materialize_timed(&f)?;
    let (deg, deg_ms) = timed(|| degree(&t));
    let entries: Vec<Option<bool>> = (0..f.arity()).map(|i| (i >= k).then_some(false)).collect();
    let restricted = f.restrict(&PartialAssignment::from_entries(&entries))?.materialize()?;
    let mut claims = vec![
        ClaimResult::new(format!("maf.k{k}.degree"), Comparison::Ge, k as f64, deg? as f64, 0.0)
            .with_runtime(build_ms + deg_ms),
        ClaimResult::new(
            format!("maf.k{k}.restricted_degree"),
            Comparison::Ge,
            k as f64,
            degree(&restricted)? as f64,
            0.0,
        )
        .with_note(format!("data bits fixed to 0, table {}", restricted.to_hex())),
        ClaimResult::exact(format!("maf.k{k}.s"), k.div_ceil(2) as u64 + 1, u64::from(s(&t).value)),
    ];
    for c in verify_lemma_chain(&t, tol, method_for(t.arity()), options)? {
        claims.push(ClaimResult {
            id: format!("maf.k{k}.{}", c.id),
            ..c
        });
    }
    Ok(claims)
}
