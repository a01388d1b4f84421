//! JSON serialization of algebras:
//! {"dim":d, "labels":[...], "unit":[...], "trace":[...], "ch_degree":n,
//!  "structure":\[\[i,j,k,scalar\],...\], "field":"Q"|"cyc:L"|"C64"}
//!
//! Scalar entries may be written as plain integers, "p/q" strings, or
//! the full tagged objects; indices are 0-based. Rational entries are
//! promoted into the declared field.

use serde_json::{json, Value};

use crate::arith::{scalar_from_json_value, Scalar, ScalarTag};
use crate::error::{Error, Result};

use super::algebra::FiniteTraceAlgebra;

fn parse_field(s: &str) -> Result<ScalarTag> {
    match s {
        "Q" => Ok(ScalarTag::Rat),
        "C64" => Ok(ScalarTag::C64),
        other => {
            if let Some(ell) = other.strip_prefix("cyc:") {
                let ell: u32 = ell
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad conductor in field {other:?}")))?;
                Ok(ScalarTag::Cyc(ell))
            } else {
                Err(Error::Parse(format!("unknown field {other:?}")))
            }
        }
    }
}

pub fn algebra_to_json(a: &FiniteTraceAlgebra) -> Value {
    let structure: Vec<Value> = a
        .structure_entries()
        .into_iter()
        .map(|(i, j, k, c)| json!([i, j, k, serde_json::to_value(&c).unwrap()]))
        .collect();
    json!({
        "dim": a.dim(),
        "labels": a.labels(),
        "unit": a.unit(),
        "trace": a.trace_vec(),
        "ch_degree": a.ch_degree(),
        "structure": structure,
        "field": a.tag().to_string(),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<FiniteTraceAlgebra> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("algebra file must be a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing dim".into()))? as usize;
    let field = parse_field(
        obj.get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing field".into()))?,
    )?;
    let labels: Vec<String> = match obj.get("labels") {
        Some(Value::Array(ls)) => ls
            .iter()
            .map(|l| {
                l.as_str()
                    .map(String::from)
                    .ok_or_else(|| Error::Parse("labels must be strings".into()))
            })
            .collect::<Result<_>>()?,
        None => (0..dim).map(|i| format!("e{i}")).collect(),
        _ => return Err(Error::Parse("labels must be an array".into())),
    };
    if labels.len() != dim {
        return Err(Error::Parse("labels length differs from dim".into()));
    }
    let scalar_list = |key: &str| -> Result<Vec<Scalar>> {
        let arr = obj
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("missing array {key:?}")))?;
        arr.iter()
            .map(|x| scalar_from_json_value(x)?.promote(field))
            .collect()
    };
    let unit = scalar_list("unit")?;
    let trace = scalar_list("trace")?;
    let ch_degree = obj
        .get("ch_degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing ch_degree".into()))? as usize;
    let structure_arr = obj
        .get("structure")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing structure".into()))?;
    let mut structure = Vec::with_capacity(structure_arr.len());
    for entry in structure_arr {
        let quad = entry
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Parse("structure entries must be [i,j,k,scalar]".into()))?;
        let idx = |p: usize| -> Result<usize> {
            quad[p]
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse("structure indices must be integers".into()))
        };
        structure.push((
            idx(0)?,
            idx(1)?,
            idx(2)?,
            scalar_from_json_value(&quad[3])?.promote(field)?,
        ));
    }
    FiniteTraceAlgebra::new(labels, structure, unit, trace, ch_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace_algebra::standard::matrix_algebra;

    #[test]
    fn json_round_trip() {
        let a = matrix_algebra(2);
        let v = algebra_to_json(&a);
        let b = algebra_from_json(&v).unwrap();
        assert_eq!(a.dim(), b.dim());
        assert_eq!(a.ch_degree(), b.ch_degree());
        assert!(b.check_axioms().passed());
        assert_eq!(a.structure_entries().len(), b.structure_entries().len());
    }

    #[test]
    fn cyclotomic_field_algebra_round_trip() {
        // ℚ(ε)[x]/(x²) with the regular trace, declared over cyc:3:
        // rational shorthand entries promote into the field, the axioms
        // pass with mixed-tag comparisons, and the radical is span{x}
        let v = serde_json::json!({
            "dim": 2,
            "labels": ["1", "x"],
            "unit": [1, 0],
            "trace": [2, 0],
            "ch_degree": 2,
            "structure": [[0,0,0,1],[0,1,1,1],[1,0,1,1]],
            "field": "cyc:3",
        });
        let a = algebra_from_json(&v).unwrap();
        assert_eq!(a.tag(), crate::arith::ScalarTag::Cyc(3));
        assert!(a.check_axioms().passed());
        let rad = crate::trace_algebra::radical(&a).unwrap();
        assert_eq!(rad.len(), 1);
        assert!(rad[0][0].is_zero() && !rad[0][1].is_zero());
    }

    #[test]
    fn shorthand_scalars_accepted() {
        let v = serde_json::json!({
            "dim": 2,
            "labels": ["1", "x"],
            "unit": [1, 0],
            "trace": ["2", "0"],
            "ch_degree": 2,
            "structure": [[0,0,0,1],[0,1,1,1],[1,0,1,1]],
            "field": "Q",
        });
        let a = algebra_from_json(&v).unwrap();
        assert!(a.check_axioms().passed());
    }
}
