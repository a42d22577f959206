use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, TruthTable};
use crate::measures::certificate::{certificate_complexity_b, CERTIFICATE_CAP};
use crate::measures::degree::degree;
use crate::measures::sensitivity::{s, s0, s1, Extremum};
use crate::measures::spectral::{
    spectral_sensitivity, spectral_sensitivity_of, SpectralMethod, SpectralOptions, DENSE_CAP,
    ITERATIVE_CAP,
};
use crate::measures::unambiguous::{uc1, UcOutcome, UC_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    S0,
    S1,
    S,
    Degree,
    Lambda,
    C0,
    C1,
    Uc1,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::S0 => "s0",
            Measure::S1 => "s1",
            Measure::S => "s",
            Measure::Degree => "deg",
            Measure::Lambda => "lambda",
            Measure::C0 => "c0",
            Measure::C1 => "c1",
            Measure::Uc1 => "uc1",
        }
    }

    /// Parses a comma-separated list such as `s0,s1,lambda`.
    pub fn parse_list(list: &str) -> Result<Vec<Measure>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "s0" => Measure::S0,
            "s1" => Measure::S1,
            "s" => Measure::S,
            "deg" | "degree" => Measure::Degree,
            "lambda" => Measure::Lambda,
            "c0" => Measure::C0,
            "c1" => Measure::C1,
            "uc1" => Measure::Uc1,
            _ => return Err(Error::Parse(format!("unknown measure {s:?}"))),
        })
    }
}

/// Per-method arity limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub materialize: usize,
    pub dense: usize,
    pub iterative: usize,
    pub certificate: usize,
    pub uc: usize,
    pub uc_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            materialize: crate::function::DEFAULT_MATERIALIZE_CAP,
            dense: DENSE_CAP,
            iterative: ITERATIVE_CAP,
            certificate: CERTIFICATE_CAP,
            uc: UC_CAP,
            uc_nodes: crate::measures::unambiguous::DEFAULT_UC_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureEntry {
    pub name: String,
    /// `ok`, `skipped: cap`, `exhausted` or `error: …`.
    pub status: String,
    pub value: Value,
    pub exact: bool,
    /// Input attaining the value, in variable order x₁ … x_n.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<SpectralMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl MeasureEntry {
    fn ok(name: &str, value: Value, exact: bool) -> Self {
        MeasureEntry {
            name: name.to_string(),
            status: "ok".into(),
            value,
            exact,
            witness: None,
            certificate: None,
            method: None,
            residual: None,
            iterations: None,
        }
    }

    fn skipped(name: &str, status: String) -> Self {
        MeasureEntry {
            status,
            ..MeasureEntry::ok(name, Value::Null, false)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub arity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub measures: Vec<MeasureEntry>,
}

impl MeasureReport {
    pub fn get(&self, name: &str) -> Option<&MeasureEntry> {
        self.measures.iter().find(|m| m.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Computes the requested measures. Anything over its cap is reported as
/// `skipped: cap` rather than failing the whole report.
pub fn measure(
    f: &BooleanFunction,
    measures: &[Measure],
    method: SpectralMethod,
    options: &SpectralOptions,
    caps: &Caps,
) -> MeasureReport {
    let n = f.arity();
    let table = if n <= caps.materialize {
        f.materialize_with_cap(caps.materialize).ok()
    } else {
        None
    };
    let entries = measures
        .iter()
        .map(|&m| match (m, &table) {
            (Measure::Lambda, _) if method == SpectralMethod::Analytic => {
                match spectral_sensitivity_of(f, method, options) {
                    Ok(r) => lambda_entry(r.value, r),
                    Err(e) => MeasureEntry::skipped(m.name(), format!("error: {e}")),
                }
            }
            (_, None) => MeasureEntry::skipped(m.name(), "skipped: cap".into()),
            (_, Some(t)) => measure_table(t, m, method, options, caps),
        })
        .collect();
    MeasureReport {
        arity: n,
        family: f.meta().map(|m| m.family.clone()),
        measures: entries,
    }
}

fn measure_table(
    t: &TruthTable,
    m: Measure,
    method: SpectralMethod,
    options: &SpectralOptions,
    caps: &Caps,
) -> MeasureEntry {
    let n = t.arity();
    let name = m.name();
    let sens = |e: Extremum| MeasureEntry {
        witness: e.witness.map(|x| variable_order(x, n)),
        ..MeasureEntry::ok(name, json!(e.value), true)
    };
    match m {
        Measure::S0 => sens(s0(t)),
        Measure::S1 => sens(s1(t)),
        Measure::S => sens(s(t)),
        Measure::Degree => match degree(t) {
            Ok(d) => MeasureEntry::ok(name, json!(d), true),
            Err(e) => MeasureEntry::skipped(name, format!("error: {e}")),
        },
        Measure::Lambda => {
            let cap = if method == SpectralMethod::Dense {
                caps.dense
            } else {
                caps.iterative
            };
            if n > cap {
                return MeasureEntry::skipped(name, "skipped: cap".into());
            }
            match spectral_sensitivity(t, method, options) {
                Ok(r) => lambda_entry(r.value, r),
                Err(Error::CapExceeded { .. }) => MeasureEntry::skipped(name, "skipped: cap".into()),
                Err(e) => MeasureEntry::skipped(name, format!("error: {e}")),
            }
        }
        Measure::C0 | Measure::C1 => {
            if n > caps.certificate {
                return MeasureEntry::skipped(name, "skipped: cap".into());
            }
            let b = m == Measure::C1;
            match certificate_complexity_b(t, b) {
                Ok(Some((c, x, p))) => MeasureEntry {
                    witness: Some(variable_order(x, n)),
                    certificate: Some(p.to_string()),
                    ..MeasureEntry::ok(name, json!(c), true)
                },
                Ok(None) => MeasureEntry::ok(name, json!(0), true),
                Err(e) => MeasureEntry::skipped(name, format!("error: {e}")),
            }
        }
        Measure::Uc1 => {
            if n > caps.uc {
                return MeasureEntry::skipped(name, "skipped: cap".into());
            }
            match uc1(t, caps.uc_nodes) {
                Ok(UcOutcome::Exact { value, collection }) => MeasureEntry {
                    certificate: Some(
                        collection
                            .certificates
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(","),
                    ),
                    ..MeasureEntry::ok(name, json!(value), true)
                },
                Ok(UcOutcome::Exhausted { lower, upper }) => MeasureEntry {
                    status: "exhausted".into(),
                    value: json!({ "lower": lower, "upper": upper }),
                    ..MeasureEntry::ok(name, Value::Null, false)
                },
                Err(e) => MeasureEntry::skipped(name, format!("error: {e}")),
            }
        }
    }
}

fn lambda_entry(value: f64, r: crate::measures::spectral::SpectralResult) -> MeasureEntry {
    let exact = matches!(r.method, SpectralMethod::Dense | SpectralMethod::Analytic);
    MeasureEntry {
        method: Some(r.method),
        residual: Some(r.residual),
        iterations: Some(r.iterations),
        ..MeasureEntry::ok("lambda", json!(value), exact)
    }
}

fn variable_order(x: u64, n: usize) -> String {
    (0..n).map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::haf;

    #[test]
    fn haf2_report() {
        let r = measure(
            &haf(2).unwrap(),
            &Measure::parse_list("s0,s1,lambda,deg,c1,uc1").unwrap(),
            SpectralMethod::Dense,
            &SpectralOptions::default(),
            &Caps::default(),
        );
        assert_eq!(r.get("s0").unwrap().value, json!(1));
        assert_eq!(r.get("s1").unwrap().value, json!(4));
        assert_eq!(r.get("s1").unwrap().witness.as_deref(), Some("00010"));
        let lambda = r.get("lambda").unwrap().value.as_f64().unwrap();
        assert!((lambda - 2.0).abs() < 1e-9);
        assert_eq!(r.get("c1").unwrap().value, json!(4));
        assert_eq!(r.get("uc1").unwrap().value, json!(4));
        let json = r.to_json();
        assert!(json.find("\"arity\"").unwrap() < json.find("\"measures\"").unwrap());
    }

    #[test]
    fn caps_produce_skips() {
        let r = measure(
            &haf(4).unwrap(),
            &[Measure::S0, Measure::Lambda],
            SpectralMethod::Dense,
            &SpectralOptions::default(),
            &Caps::default(),
        );
        assert!(r.measures.iter().all(|m| m.status == "skipped: cap"));
        let r = measure(
            &haf(4).unwrap(),
            &[Measure::Lambda],
            SpectralMethod::Analytic,
            &SpectralOptions::default(),
            &Caps::default(),
        );
        assert!((r.measures[0].value.as_f64().unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn witnesses_attain_values() {
        let f = BooleanFunction::from_fn(6, |x| x.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 62 == 0).unwrap();
        let t = f.materialize().unwrap();
        let r = measure(&f, &[Measure::S0, Measure::S1, Measure::S], SpectralMethod::Dense, &SpectralOptions::default(), &Caps::default());
        for e in &r.measures {
            let w = e.witness.as_ref().unwrap();
            let x = w.chars().enumerate().fold(0u64, |acc, (i, c)| acc | (u64::from(c == '1') << i));
            assert_eq!(json!(t.sensitivity_at(x)), e.value);
        }
    }

    #[test]
    fn unknown_measure_rejected() {
        assert!(Measure::parse_list("s0,bs").is_err());
    }
}
