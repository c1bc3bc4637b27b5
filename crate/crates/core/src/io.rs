//! JSON documents: form parameters, forms, sub-forms and morphisms.
//!
//! A document is an object with a `parameter` (an object, or one of the
//! names `param:trivial`, `param:trivial:1`, `param:trivial:-1`,
//! `param:z2`) and a `form`. Groups are lists of invariant factors in
//! normal form (`0` for a copy of `Z`), elements are coordinate lists.
//! Integers may be JSON numbers or decimal strings.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::{FgAbGroup, GroupHom};
use crate::hpair::{HMap, HPair};
use crate::linalg::IntMatrix;
use crate::wall::{FormParameter, SubWallForm, WallForm, WallMorphism};

/// Parsing context: the file name and the JSON path of the current value.
#[derive(Clone, Debug)]
pub struct Ctx<'a> {
    file: &'a str,
    path: String,
}

impl<'a> Ctx<'a> {
    pub fn new(file: &'a str) -> Self {
        Ctx {
            file,
            path: String::new(),
        }
    }

    fn at(&self, key: &str) -> Ctx<'a> {
        let path = if self.path.is_empty() { key.to_string() } else { format!("{}.{key}", self.path) };
        Ctx { file: self.file, path }
    }

    fn idx(&self, i: usize) -> Ctx<'a> {
        Ctx {
            file: self.file,
            path: format!("{}[{i}]", self.path),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: format!("{}:{}", self.file, if self.path.is_empty() { "$" } else { &self.path }),
            message: msg.into(),
        }
    }

    fn get<'v>(&self, v: &'v Value, key: &str) -> Result<&'v Value> {
        v.get(key).ok_or_else(|| self.err(format!("missing field `{key}`")))
    }
}

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

pub fn elem_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn elems_to_json(vs: &[Vec<BigInt>]) -> Value {
    Value::Array(vs.iter().map(|v| elem_to_json(v)).collect())
}

pub fn group_to_json(g: &FgAbGroup) -> Value {
    elem_to_json(g.factors())
}

fn parse_int(v: &Value, cx: &Ctx) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(cx.err("expected an integer"))
            }
        }
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| cx.err(format!("`{s}` is not an integer"))),
        _ => Err(cx.err("expected an integer")),
    }
}

fn parse_array<'v>(v: &'v Value, cx: &Ctx) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| cx.err("expected an array"))
}

fn parse_ints(v: &Value, cx: &Ctx) -> Result<Vec<BigInt>> {
    parse_array(v, cx)?.iter().enumerate().map(|(i, x)| parse_int(x, &cx.idx(i))).collect()
}

/// An element with exactly `n` coordinates.
pub fn parse_element(v: &Value, n: usize, cx: &Ctx) -> Result<Vec<BigInt>> {
    let e = parse_ints(v, cx)?;
    if e.len() != n {
        return Err(cx.err(format!("expected {n} coordinates, found {}", e.len())));
    }
    Ok(e)
}

pub fn parse_elements(v: &Value, n: usize, cx: &Ctx) -> Result<Vec<Vec<BigInt>>> {
    parse_array(v, cx)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_element(x, n, &cx.idx(i)))
        .collect()
}

fn parse_group(v: &Value, cx: &Ctx) -> Result<FgAbGroup> {
    FgAbGroup::new(parse_ints(v, cx)?).map_err(|e| cx.err(e.to_string()))
}

fn parse_tau(v: &Value, nm: usize, dh: usize, np: usize, cx: &Ctx) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let rows = parse_array(v, cx)?;
    if rows.len() != nm {
        return Err(cx.err(format!("expected {nm} rows, found {}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let r = parse_elements(r, np, &cx.idx(i))?;
            if r.len() != dh {
                return Err(cx.idx(i).err(format!("expected {dh} entries, found {}", r.len())));
            }
            Ok(r)
        })
        .collect()
}

fn parse_named_parameter(name: &str, h: &FgAbGroup, cx: &Ctx) -> Result<FormParameter> {
    match name {
        "param:trivial" | "param:trivial:-1" => Ok(FormParameter::trivial(h, -1)),
        "param:trivial:1" | "param:trivial:+1" => Ok(FormParameter::trivial(h, 1)),
        "param:z2" => Ok(FormParameter::z2()),
        _ => Err(cx.err(format!("unknown named parameter `{name}`"))),
    }
}

/// Parses a parameter given `H` (needed by the trivial parameter).
pub fn parse_parameter(v: &Value, h: &FgAbGroup, cx: &Ctx) -> Result<FormParameter> {
    if let Some(name) = v.as_str() {
        return parse_named_parameter(name, h, cx);
    }
    let gm = parse_group(cx.get(v, "G_minus")?, &cx.at("G_minus"))?;
    let gp = parse_group(cx.get(v, "G_plus")?, &cx.at("G_plus"))?;
    let tau = match v.get("tau_G") {
        Some(t) => parse_tau(t, gm.ngens(), h.ngens(), gp.ngens(), &cx.at("tau_G"))?,
        None => vec![vec![gp.zero(); h.ngens()]; gm.ngens()],
    };
    let g = HPair::new(h.clone(), gm, gp.clone(), tau).map_err(|e| cx.at("tau_G").err(e.to_string()))?;
    let partial_cols = parse_elements(cx.get(v, "partial")?, gp.ngens(), &cx.at("partial"))?;
    let partial = GroupHom::from_columns(h.clone(), gp.clone(), &partial_cols).map_err(|e| cx.at("partial").err(e.to_string()))?;
    let pi_cols = parse_elements(cx.get(v, "pi")?, h.ngens(), &cx.at("pi"))?;
    let pi = GroupHom::from_columns(gp, h.clone(), &pi_cols).map_err(|e| cx.at("pi").err(e.to_string()))?;
    let eps = parse_int(cx.get(v, "epsilon")?, &cx.at("epsilon"))?
        .to_i8()
        .ok_or_else(|| cx.at("epsilon").err("epsilon must be 1 or -1"))?;
    FormParameter::new(g, partial, pi, eps).map_err(|e| cx.err(e.to_string()))
}

pub fn parameter_to_json(p: &FormParameter) -> Value {
    let g = p.g();
    json!({
        "G_minus": group_to_json(g.minus()),
        "G_plus": group_to_json(g.plus()),
        "tau_G": tau_to_json(g),
        "partial": hom_columns(p.partial()),
        "pi": hom_columns(p.pi()),
        "epsilon": p.epsilon(),
    })
}

fn hom_columns(f: &GroupHom) -> Value {
    elems_to_json(&f.matrix().columns())
}

fn tau_to_json(p: &HPair) -> Value {
    Value::Array(p.tau_table().iter().map(|r| elems_to_json(r)).collect())
}

/// Parses the form object without checking the axioms.
pub fn parse_form_unchecked(v: &Value, param: &FormParameter, cx: &Ctx) -> Result<WallForm> {
    let h = parse_group(cx.get(v, "H")?, &cx.at("H"))?;
    let minus = parse_group(cx.get(v, "minus")?, &cx.at("minus"))?;
    let plus = parse_group(cx.get(v, "plus")?, &cx.at("plus"))?;
    let (nm, np, dh) = (minus.ngens(), plus.ngens(), h.ngens());
    let tau = parse_tau(cx.get(v, "tau")?, nm, dh, np, &cx.at("tau"))?;
    let pair = HPair::new(h.clone(), minus, plus, tau).map_err(|e| cx.at("tau").err(e.to_string()))?;
    let lcx = cx.at("lambda");
    let rows = parse_array(cx.get(v, "lambda")?, &lcx)?;
    if rows.len() != nm {
        return Err(lcx.err(format!("expected {nm} rows, found {}", rows.len())));
    }
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_element(r, np, &lcx.idx(i)))
        .collect::<Result<_>>()?;
    let lambda = IntMatrix::from_rows(np, &rows);
    let mcx = cx.at("mu");
    let mrows = parse_array(cx.get(v, "mu")?, &mcx)?;
    if mrows.len() != np {
        return Err(mcx.err(format!("expected {np} rows, found {}", mrows.len())));
    }
    let mu = mrows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let r = parse_elements(r, dh, &mcx.idx(i))?;
            if r.len() != np {
                return Err(mcx.idx(i).err(format!("expected {np} entries, found {}", r.len())));
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = param.g();
    let am = match v.get("alpha_minus") {
        Some(a) => parse_elements(a, g.minus().ngens(), &cx.at("alpha_minus"))?,
        None => vec![g.minus().zero(); nm],
    };
    let ap = match v.get("alpha_plus") {
        Some(a) => parse_elements(a, g.plus().ngens(), &cx.at("alpha_plus"))?,
        None => vec![g.plus().zero(); np],
    };
    WallForm::unchecked(pair, lambda, mu, am, ap, param.clone()).map_err(|e| cx.err(e.to_string()))
}

pub fn form_to_json(w: &WallForm) -> Value {
    json!({
        "H": group_to_json(w.h()),
        "minus": group_to_json(w.minus()),
        "plus": group_to_json(w.plus()),
        "tau": tau_to_json(w.pair()),
        "lambda": Value::Array(w.lambda_matrix().to_rows().iter().map(|r| elem_to_json(r)).collect()),
        "mu": Value::Array(w.mu_table().iter().map(|r| elems_to_json(r)).collect()),
        "alpha_minus": elems_to_json(w.alpha_minus_values()),
        "alpha_plus": elems_to_json(w.alpha_plus_values()),
    })
}

/// `{"parameter": …, "form": …}`.
pub fn document_to_json(w: &WallForm) -> Value {
    json!({
        "parameter": parameter_to_json(w.param()),
        "form": form_to_json(w),
    })
}

/// A parsed input document; `form` is not yet validated.
#[derive(Clone, Debug)]
pub struct Document {
    pub file: String,
    pub value: Value,
    pub param: FormParameter,
    pub form: WallForm,
}

impl Document {
    pub fn ctx(&self) -> Ctx<'_> {
        Ctx::new(&self.file)
    }

    /// The validated form.
    pub fn validated(&self) -> Result<Arc<WallForm>> {
        self.form.validate()?;
        Ok(Arc::new(self.form.clone()))
    }

    pub fn field(&self, key: &str) -> Option<&Value> {
        self.value.get(key)
    }

    /// Another form in the same document sharing the parameter.
    pub fn other_form(&self, key: &str) -> Result<Arc<WallForm>> {
        let cx = self.ctx();
        let v = cx.get(&self.value, key)?;
        let w = parse_form_unchecked(v, &self.param, &cx.at(key))?;
        w.validate()?;
        Ok(Arc::new(w))
    }
}

pub fn parse_document(text: &str, file: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: format!("{file}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let cx = Ctx::new(file);
    let fv = cx.get(&value, "form")?;
    let fcx = cx.at("form");
    let h = parse_group(fcx.get(fv, "H")?, &fcx.at("H"))?;
    let param = parse_parameter(cx.get(&value, "parameter")?, &h, &cx.at("parameter"))?;
    if param.h() != &h {
        return Err(cx.at("parameter").err("parameter and form use different groups H"));
    }
    let form = parse_form_unchecked(fv, &param, &fcx)?;
    Ok(Document {
        file: file.to_string(),
        value,
        param,
        form,
    })
}

/// `{"minus": [elements], "plus": [elements]}` as a sub-form.
pub fn parse_sub_form(v: &Value, w: &Arc<WallForm>, cx: &Ctx) -> Result<SubWallForm> {
    let m = parse_elements(cx.get(v, "minus")?, w.minus().ngens(), &cx.at("minus"))?;
    let p = parse_elements(cx.get(v, "plus")?, w.plus().ngens(), &cx.at("plus"))?;
    SubWallForm::new(w.clone(), m, p).map_err(|e| cx.err(e.to_string()))
}

/// `{"a": [elements of M-], "b": [elements of M+]}` as a morphism `W^k → M`.
pub fn parse_standard_morphism(v: &Value, w: &Arc<WallForm>, cx: &Ctx) -> Result<WallMorphism> {
    let xs = parse_elements(cx.get(v, "a")?, w.minus().ngens(), &cx.at("a"))?;
    let ys = parse_elements(cx.get(v, "b")?, w.plus().ngens(), &cx.at("b"))?;
    if xs.len() != ys.len() {
        return Err(cx.err("`a` and `b` must have the same length"));
    }
    WallMorphism::from_standard(w.clone(), &xs, &ys)
}

/// `{"minus_images": […], "plus_images": […]}` between two given forms.
pub fn parse_morphism(v: &Value, src: &Arc<WallForm>, dst: &Arc<WallForm>, cx: &Ctx) -> Result<WallMorphism> {
    let m = parse_elements(cx.get(v, "minus_images")?, dst.minus().ngens(), &cx.at("minus_images"))?;
    let p = parse_elements(cx.get(v, "plus_images")?, dst.plus().ngens(), &cx.at("plus_images"))?;
    WallMorphism::from_images(src.clone(), dst.clone(), &m, &p)
}

/// An H-map into a probe: `{"nu": 0, "plus": [ints]}` or
/// `{"nu": 1, "minus": [ints], "plus": [elements of H]}`, listing values on generators.
pub fn parse_probe_map(v: &Value, w: &WallForm, cx: &Ctx) -> Result<(u8, HMap)> {
    let nu = parse_int(cx.get(v, "nu")?, &cx.at("nu"))?;
    let (nm, np, dh) = (w.minus().ngens(), w.plus().ngens(), w.h().ngens());
    let (nu, minus, plus) = if nu == BigInt::from(0) {
        let p = parse_element(cx.get(v, "plus")?, np, &cx.at("plus"))?;
        (0u8, IntMatrix::zeros(0, nm), IntMatrix::from_vec(1, np, p))
    } else if nu == BigInt::from(1) {
        let m = parse_element(cx.get(v, "minus")?, nm, &cx.at("minus"))?;
        let pcx = cx.at("plus");
        let cols = parse_elements(cx.get(v, "plus")?, dh, &pcx)?;
        if cols.len() != np {
            return Err(pcx.err(format!("expected {np} values, found {}", cols.len())));
        }
        (1u8, IntMatrix::from_vec(1, nm, m), IntMatrix::from_columns(dh, &cols))
    } else {
        return Err(cx.at("nu").err("nu must be 0 or 1"));
    };
    let probe = HPair::probe(nu, w.h());
    let f = HMap::from_matrices(w.pair(), &probe, minus, plus).map_err(|e| cx.err(e.to_string()))?;
    Ok((nu, f))
}

pub fn morphism_to_json(f: &WallMorphism) -> Value {
    let s = f.source();
    let mut m = Map::new();
    if let Some(k) = s.standard_rank() {
        let (xs, ys) = f.standard_images();
        m.insert("source_rank".into(), json!(k));
        m.insert("a".into(), elems_to_json(&xs));
        m.insert("b".into(), elems_to_json(&ys));
    } else {
        m.insert("source".into(), form_to_json(s));
    }
    let mi: Vec<Vec<BigInt>> = (0..s.minus().ngens()).map(|i| f.hmap().minus().image_of_generator(i)).collect();
    let pi: Vec<Vec<BigInt>> = (0..s.plus().ngens()).map(|j| f.hmap().plus().image_of_generator(j)).collect();
    m.insert("minus_images".into(), elems_to_json(&mi));
    m.insert("plus_images".into(), elems_to_json(&pi));
    Value::Object(m)
}

pub fn sub_form_to_json(s: &SubWallForm) -> Value {
    json!({
        "minus": elems_to_json(s.minus_gens()),
        "plus": elems_to_json(s.plus_gens()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_standard() {
        for p in [FormParameter::trivial(&FgAbGroup::from_i64(&[2, 4]).unwrap(), -1), FormParameter::z2()] {
            let w = WallForm::standard(2, &p).unwrap();
            let text = serde_json::to_string(&document_to_json(&w)).unwrap();
            let d = parse_document(&text, "mem").unwrap();
            assert_eq!(d.form, w);
        }
    }

    #[test]
    fn named_parameters() {
        let text = r#"{"parameter": "param:trivial", "form": {"H": [], "minus": [0], "plus": [0],
            "tau": [[]], "lambda": [[1]], "mu": [[[]]]}}"#;
        let d = parse_document(text, "mem").unwrap();
        assert!(d.validated().is_ok());
        assert_eq!(d.param.epsilon(), -1);
    }

    #[test]
    fn errors_carry_paths() {
        let text = r#"{"parameter": "param:trivial", "form": {"H": [], "minus": [0], "plus": [0],
            "tau": [[]], "lambda": [[1, 2]], "mu": [[[]]]}}"#;
        match parse_document(text, "f.json") {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "f.json:form.lambda[0]"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_document("{", "f.json"), Err(Error::Parse { .. })));
    }
}
