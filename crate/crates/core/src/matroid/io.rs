//! JSON matroid files.
//!
//! ```json
//! {"type":"uniform","rank":2,"size":4}
//! {"type":"graphic","vertices":4,"edges":[[0,1],[1,2]]}
//! {"type":"linear","field":3,"matrix":[[1,0,1],[0,1,2]]}
//! {"type":"relax","base":{...},"set":[0,2]}
//! {"type":"minor","base":{...},"contract":[1],"delete":[3]}
//! {"type":"dual","base":{...}}
//! ```
//!
//! Sets in `relax` and `minor` name elements by the base's labels. Any
//! object may carry `"labels": [...]` to relabel the result.

use serde_json::{json, Value};

use super::{Backend, Matroid, MinorSpec, Transform};
use crate::error::{Error, Result};
use crate::subset::GroundSubset;

pub fn from_json_str(text: &str) -> Result<Matroid> {
    from_json(&serde_json::from_str(text)?)
}

pub fn from_json(value: &Value) -> Result<Matroid> {
    let obj = value.as_object().ok_or_else(|| bad("matroid must be a JSON object"))?;
    let kind = obj.get("type").and_then(Value::as_str).ok_or_else(|| bad("missing \"type\""))?;
    let m = match kind {
        "uniform" => Matroid::uniform(uint(obj.get("rank"), "rank")?, uint(obj.get("size"), "size")?)?,
        "graphic" => {
            let vertices = uint(obj.get("vertices"), "vertices")?;
            let edges = array(obj.get("edges"), "edges")?
                .iter()
                .map(|e| match e.as_array().map(Vec::as_slice) {
                    Some([u, v]) => Ok((uint(Some(u), "edge end")?, uint(Some(v), "edge end")?)),
                    _ => Err(bad("edges must be [u, v] pairs")),
                })
                .collect::<Result<Vec<_>>>()?;
            Matroid::graphic(vertices, edges)?
        }
        "linear" => {
            let field = uint(obj.get("field"), "field")?;
            let matrix = array(obj.get("matrix"), "matrix")?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| bad("matrix rows must be arrays"))?
                        .iter()
                        .map(|x| uint(Some(x), "matrix entry").map(|v| v.min(255) as u8))
                        .collect::<Result<Vec<u8>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Matroid::linear(field.min(255) as u8, matrix)?
        }
        "relax" => {
            let base = from_json(obj.get("base").ok_or_else(|| bad("missing \"base\""))?)?;
            let set = labels_set(&base, obj.get("set"), "set")?;
            base.relax(set)?
        }
        "minor" => {
            let base = from_json(obj.get("base").ok_or_else(|| bad("missing \"base\""))?)?;
            let contract = match obj.get("contract") {
                Some(v) => labels_set(&base, Some(v), "contract")?,
                None => base.empty_set(),
            };
            let delete = match obj.get("delete") {
                Some(v) => labels_set(&base, Some(v), "delete")?,
                None => base.empty_set(),
            };
            base.minor(&MinorSpec::new(contract, delete)?)?
        }
        "dual" => from_json(obj.get("base").ok_or_else(|| bad("missing \"base\""))?)?.dual(),
        other => return Err(bad(&format!("unknown matroid type {other:?}"))),
    };
    match obj.get("labels") {
        None => Ok(m),
        Some(v) => {
            let labels = array(Some(v), "labels")?
                .iter()
                .map(|x| uint(Some(x), "label").and_then(|l| u32::try_from(l).map_err(|_| bad("label too large"))))
                .collect::<Result<Vec<_>>>()?;
            m.with_labels(labels)
        }
    }
}

/// Serialize back to the file format. Reloading gives an equal matroid with
/// the same labels.
pub fn to_json(m: &Matroid) -> Value {
    let mut v = match m.parent() {
        None => match m.backend() {
            Backend::Uniform { rank, size } => json!({"type": "uniform", "rank": rank, "size": size}),
            Backend::Graphic { vertices, edges } => json!({
                "type": "graphic",
                "vertices": vertices,
                "edges": edges.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
            }),
            Backend::Linear { field, matrix } => json!({"type": "linear", "field": field, "matrix": matrix}),
            Backend::Relaxed { base, set } => json!({
                "type": "relax",
                "base": to_json(base),
                "set": base.labels_of(*set),
            }),
        },
        Some((parent, Transform::Dual)) => json!({"type": "dual", "base": to_json(parent)}),
        Some((parent, Transform::Contract(c))) => json!({
            "type": "minor",
            "base": to_json(parent),
            "contract": parent.labels_of(*c),
            "delete": [],
        }),
        Some((parent, Transform::Delete(d))) => json!({
            "type": "minor",
            "base": to_json(parent),
            "contract": [],
            "delete": parent.labels_of(*d),
        }),
    };
    let natural = match m.parent() {
        Some((parent, _)) => {
            let (retained, _) = retained_labels(parent, m);
            retained
        }
        None => natural_labels(m),
    };
    if m.labels() != natural.as_slice() {
        v["labels"] = json!(m.labels());
    }
    v
}

/// Labels a freshly loaded child would carry, and whether they match.
fn retained_labels(parent: &Matroid, child: &Matroid) -> (Vec<u32>, bool) {
    let labels = match child.parent() {
        Some((_, Transform::Contract(s))) | Some((_, Transform::Delete(s))) => parent.labels_of(s.complement()),
        _ => parent.labels().to_vec(),
    };
    let same = labels == child.labels();
    (labels, same)
}

fn natural_labels(m: &Matroid) -> Vec<u32> {
    match m.backend() {
        Backend::Relaxed { base, .. } => base.labels().to_vec(),
        _ => (0..m.size() as u32).collect(),
    }
}

pub fn minor_spec_to_json(host: &Matroid, spec: &MinorSpec) -> Value {
    json!({"contract": host.labels_of(spec.contract), "delete": host.labels_of(spec.delete)})
}

pub fn minor_spec_from_json(host: &Matroid, value: &Value) -> Result<MinorSpec> {
    let contract = labels_set(host, value.get("contract"), "contract")?;
    let delete = labels_set(host, value.get("delete"), "delete")?;
    MinorSpec::new(contract, delete)
}

pub fn subset_to_json(host: &Matroid, set: GroundSubset) -> Value {
    json!(host.labels_of(set))
}

fn labels_set(host: &Matroid, value: Option<&Value>, what: &str) -> Result<GroundSubset> {
    let labels = array(value, what)?
        .iter()
        .map(|x| uint(Some(x), what).and_then(|l| u32::try_from(l).map_err(|_| bad("label too large"))))
        .collect::<Result<Vec<_>>>()?;
    host.subset_from_labels(&labels)
}

fn uint(value: Option<&Value>, what: &str) -> Result<usize> {
    value
        .and_then(Value::as_u64)
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| bad(&format!("\"{what}\" must be a nonnegative integer")))
}

fn array<'a>(value: Option<&'a Value>, what: &str) -> Result<&'a Vec<Value>> {
    value.and_then(Value::as_array).ok_or_else(|| bad(&format!("\"{what}\" must be an array")))
}

fn bad(msg: &str) -> Error {
    Error::InvalidInput(msg.to_string())
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    #[test]
    fn parse_each_kind() {
        let u = from_json_str(r#"{"type":"uniform","rank":2,"size":4}"#).unwrap();
        assert_eq!(u, Matroid::uniform(2, 4).unwrap());
        let g = from_json_str(r#"{"type":"graphic","vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(g, Matroid::uniform(2, 3).unwrap());
        let l = from_json_str(r#"{"type":"linear","field":2,"matrix":[[1,0,1],[0,1,1]]}"#).unwrap();
        assert_eq!(l, Matroid::uniform(2, 3).unwrap());
        let m = from_json_str(
            r#"{"type":"minor","base":{"type":"uniform","rank":3,"size":6},"contract":[2,3],"delete":[4,5]}"#,
        )
        .unwrap();
        assert_eq!(m, Matroid::uniform(1, 2).unwrap());
        let d = from_json_str(r#"{"type":"dual","base":{"type":"uniform","rank":1,"size":3}}"#).unwrap();
        assert_eq!(d, Matroid::uniform(2, 3).unwrap());
    }

    #[test]
    fn relax_file_builds_u24() {
        let text = r#"{"type":"relax","base":{"type":"graphic","vertices":3,
            "edges":[[0,1],[1,2],[0,2],[2,1]]},"set":[1,3]}"#;
        assert_eq!(from_json_str(text).unwrap(), Matroid::uniform(2, 4).unwrap());
    }

    #[test]
    fn malformed_files_rejected() {
        assert!(from_json_str("[]").is_err());
        assert!(from_json_str(r#"{"type":"uniform","rank":5,"size":4}"#).is_err());
        assert!(from_json_str(r#"{"type":"linear","field":5,"matrix":[[1]]}"#).is_err());
        assert!(from_json_str(r#"{"type":"graphic","vertices":2,"edges":[[0,2]]}"#).is_err());
        assert!(from_json_str(r#"{"type":"blob"}"#).is_err());
        assert!(from_json_str(r#"{"type":"uniform","rank":1,"size":30}"#).is_err());
    }

    #[test]
    fn round_trip_preserves_labels() {
        let w = named::whirl(3).unwrap();
        let spec = MinorSpec::new(w.subset(&[1]).unwrap(), w.subset(&[4]).unwrap()).unwrap();
        let m = w.dual().minor(&spec).unwrap();
        let back = from_json(&to_json(&m)).unwrap();
        assert_eq!(back.labels(), m.labels());
        assert_eq!(back, m);
        let relabeled = Matroid::uniform(2, 3).unwrap().with_labels(vec![7, 3, 5]).unwrap();
        let back = from_json(&to_json(&relabeled)).unwrap();
        assert_eq!(back.labels(), &[7, 3, 5]);
    }

    #[test]
    fn minor_spec_round_trip() {
        let u = Matroid::uniform(3, 6).unwrap();
        let spec = MinorSpec::new(u.subset(&[2, 3]).unwrap(), u.subset(&[4]).unwrap()).unwrap();
        assert_eq!(minor_spec_from_json(&u, &minor_spec_to_json(&u, &spec)).unwrap(), spec);
    }
}
