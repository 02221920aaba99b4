//! Structured run reports and the JSON fragments shared by the command line and the C interface.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::decomp;
use crate::embed::{self, EmbeddingWitness};
use crate::error::Result;
use crate::lattice::FiniteLattice;
use crate::laws;
use crate::variety;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub results: Value,
    pub violations: Vec<Value>,
    pub timing: Option<Timing>,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str, input: Option<String>, results: Value, violations: Vec<Value>) -> Report {
        Report {
            command: command.to_string(),
            input,
            results,
            violations,
            timing: None,
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Indented `key: value` text for people.
    pub fn to_pretty(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        render(&v, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|i| i.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn lattice_json(l: &FiniteLattice) -> Value {
    json!({
        "name": l.display_name(),
        "size": l.len(),
        "hash": l.canonical_form().hash_hex(),
    })
}

pub fn law_profile_json(l: &FiniteLattice) -> Value {
    let p = laws::law_profile(l);
    let cx = |c: Option<Vec<String>>| c.map_or(Value::Null, |v| json!(v));
    json!({
        "lattice": lattice_json(l),
        "whitman": p.whitman,
        "sd_join": p.sd_join,
        "sd_meet": p.sd_meet,
        "semidistributive": p.sd_join && p.sd_meet,
        "distributive": p.distributive,
        "modular": p.modular,
        "doubly_reducible": l.names(p.doubly_reducible.iter().copied()),
        "length": p.length,
        "free_sublattice_finite": p.free_sublattice_finite,
        "length_bound_holds": laws::dilworth_bound_holds(l),
        "counterexamples": {
            "whitman": cx(laws::whitman_counterexample(l).map(|c| l.names(c))),
            "sd_join": cx(laws::sd_join_counterexample(l).map(|c| l.names(c))),
            "sd_meet": cx(laws::sd_meet_counterexample(l).map(|c| l.names(c))),
            "modular": cx(laws::modular_counterexample(l).map(|c| l.names(c))),
        },
    })
}

pub fn partition_json(l: &FiniteLattice, p: &decomp::DistributivePartition) -> Value {
    json!(p.labelled(l))
}

pub fn dec_json(l: &FiniteLattice, all_witnesses: bool) -> Result<Value> {
    let d = decomp::dec(l)?;
    let mut m = Map::new();
    m.insert("lattice".into(), lattice_json(l));
    m.insert("dec".into(), json!(d.value));
    if all_witnesses {
        let all = decomp::minimum_distributive_partitions(l)?;
        m.insert("minimum_partitions".into(), json!(all.len()));
        m.insert("witnesses".into(), Value::Array(all.iter().map(|p| partition_json(l, p)).collect()));
    } else {
        m.insert("witness".into(), partition_json(l, &d.witness));
    }
    if laws::distributive(l) {
        let gj = decomp::gj_classify(l)?.map(|g| {
            g.blocks
                .iter()
                .map(|b| json!({ "shape": b.shape, "elements": l.names(b.elements.iter().copied()) }))
                .collect::<Vec<_>>()
        });
        m.insert("linear_sum_blocks".into(), json!(gj));
    }
    Ok(Value::Object(m))
}

pub fn witness_json(w: &EmbeddingWitness) -> Value {
    let map: Map<String, Value> = w.label_pairs().into_iter().map(|(a, b)| (a, Value::String(b))).collect();
    Value::Object(map)
}

fn factor_kind(f: &FiniteLattice) -> &'static str {
    match f.len() {
        1 => "1",
        2 => "2",
        5 if !laws::modular(f) => "N5",
        _ => "other",
    }
}

/// Variety membership with its certificate and the forbidden-sublattice cross-check.
pub fn variety_json(l: &FiniteLattice, budget: u64) -> Result<(Value, bool)> {
    let cert = variety::in_n5_variety(l)?;
    let hits = embed::contains_forbidden(l, &embed::profile("n-full")?, budget)?;
    let consistent = !(cert.member && !hits.is_empty());
    let factors: Vec<Value> = cert
        .factors
        .iter()
        .map(|f| json!({ "kind": factor_kind(f), "size": f.len(), "hash": f.canonical_form().hash_hex(), "elements": f.labels() }))
        .collect();
    let v = json!({
        "lattice": lattice_json(l),
        "member": cert.member,
        "si_factors": factors,
        "offending_factor": cert.offending.as_ref().map(|f| json!({ "size": f.len(), "hash": f.canonical_form().hash_hex() })),
        "forbidden_sublattices": hits.iter().map(|(n, w)| json!({ "pattern": n, "map": witness_json(w) })).collect::<Vec<_>>(),
        "consistent": consistent,
    });
    Ok((v, consistent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get;

    #[test]
    fn pretty_rendering() {
        let r = Report::new("check", Some("x".into()), json!({"a": true, "b": [1, 2], "c": {"d": null}}), vec![]);
        let text = r.to_pretty();
        assert!(text.contains("command: check\n"));
        assert!(text.contains("  a: yes\n"));
        assert!(text.contains("  b: [1, 2]\n"));
        assert!(text.contains("    d: -\n"));
        assert!(text.contains("timing: -\n"));
    }

    #[test]
    fn variety_fragment() {
        let (v, ok) = variety_json(&get("N5").unwrap(), embed::DEFAULT_BUDGET).unwrap();
        assert!(ok);
        assert_eq!(v["member"], json!(true));
        let kinds: Vec<&Value> = v["si_factors"].as_array().unwrap().iter().map(|f| &f["kind"]).collect();
        assert!(kinds.contains(&&json!("N5")));
        let (v, ok) = variety_json(&get("M3").unwrap(), embed::DEFAULT_BUDGET).unwrap();
        assert!(ok);
        assert_eq!(v["member"], json!(false));
        assert_eq!(v["forbidden_sublattices"][0]["pattern"], json!("M3"));
    }

    #[test]
    fn dec_fragment() {
        let v = dec_json(&get("N5").unwrap(), true).unwrap();
        assert_eq!(v["dec"], json!(3));
        assert_eq!(v["minimum_partitions"], json!(7));
        let v = dec_json(&get("B3").unwrap(), false).unwrap();
        assert_eq!(v["dec"], json!(1));
        assert_eq!(v["linear_sum_blocks"][0]["shape"], json!("boolean3"));
    }
}
