//! `{"vars": m, "degree": k, "components": {"i1,i2": "<polynomial>"}}`

use serde_json::{json, Map, Value};

use super::{index_set, indices, PolyForm};
use crate::error::{Error, Result};
use crate::mpoly::parse_poly;
use crate::scalar::Rational;

pub fn form_to_json(form: &PolyForm<Rational>) -> Value {
    let mut comps = Map::new();
    for (s, f) in form.components() {
        let key: Vec<String> = indices(*s).iter().map(|i| i.to_string()).collect();
        comps.insert(key.join(","), Value::String(f.to_string()));
    }
    json!({
        "vars": form.nvars(),
        "degree": form.degree(),
        "components": comps,
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("missing or non-integer field '{key}'")))
}

pub fn form_from_json(v: &Value) -> Result<PolyForm<Rational>> {
    let nvars = get_usize(v, "vars")?;
    let degree = get_usize(v, "degree")?;
    if nvars == 0 || nvars > crate::mpoly::MAX_VARS {
        return Err(bad(format!("unsupported variable count {nvars}")));
    }
    if degree > nvars {
        return Err(bad("degree exceeds variable count"));
    }
    let comps = v
        .get("components")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing object field 'components'"))?;
    let mut form = PolyForm::zero(nvars, degree);
    for (key, text) in comps {
        let ids: Vec<usize> = if key.trim().is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(format!("bad component key '{key}'")))?
        };
        if ids.len() != degree
            || ids.iter().any(|&i| i >= nvars)
            || ids.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(bad(format!("component key '{key}' is not an increasing {degree}-tuple")));
        }
        let text = text
            .as_str()
            .ok_or_else(|| bad(format!("component '{key}' is not a string")))?;
        let f = parse_poly(text, nvars)?;
        let set = index_set(&ids);
        let cur = form.component(set);
        form.set(set, &cur + &f);
    }
    Ok(form)
}
