//! JSON formats for specs, elements, polynomial maps and morphisms.
//!
//! Basis labels are 1-based `[level, index]` pairs, coefficients are strings
//! `"p/q"` (bare JSON integers are accepted on input). Output is canonical:
//! object keys sorted, so identical inputs serialize byte for byte the same.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::duality::{AlgebraMorphism, GroupHom};
use crate::exact::{format_rational, parse_rational, MultiPoly, Rational};
use crate::group::{Group, GroupElement};
use crate::lie::{LieAlgebraSpec, SparseVec};
use crate::polymap::{PolyMap, TensorPolyMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Format(String),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Format(msg.into()))
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical(v: &Value) -> String {
    // serde_json's default map is ordered, so a round trip through Value sorts keys
    let mut s = serde_json::to_string_pretty(v).expect("Value always serializes");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| IoError::Format(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => bad(format!("expected a rational \"p/q\", found {v}")),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, IoError> {
    v.get(key).ok_or_else(|| IoError::Format(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| IoError::Format(format!("\"{what}\" must be an array")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize, IoError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| IoError::Format(format!("\"{what}\" must be a non-negative integer")))
}

fn label_of(v: &Value, spec: &LieAlgebraSpec, what: &str) -> Result<usize, IoError> {
    let a = array(v, what)?;
    if a.len() != 2 {
        return bad(format!("\"{what}\" must be a [level, index] pair"));
    }
    let (l, i) = (usize_of(&a[0], what)?, usize_of(&a[1], what)?);
    spec.index_of(l, i).map_err(|e| IoError::Format(e.to_string()))
}

fn label_json(spec: &LieAlgebraSpec, a: usize) -> Value {
    let l = spec.label(a);
    json!([l.level, l.index])
}

/// Parses a spec file. A pair given in one order only gets the negated
/// transpose; if both orders are present both are stored as written, so
/// validation can report an antisymmetry failure.
pub fn spec_from_json(v: &Value) -> Result<LieAlgebraSpec, IoError> {
    let class = usize_of(field(v, "class")?, "class")?;
    let ranks = array(field(v, "ranks")?, "ranks")?
        .iter()
        .map(|r| usize_of(r, "ranks"))
        .collect::<Result<Vec<_>, _>>()?;
    if ranks.len() != class {
        return bad(format!("class is {class} but {} ranks are given", ranks.len()));
    }
    if ranks.contains(&0) {
        return bad("ranks must be positive");
    }
    let mut spec = LieAlgebraSpec::with_ranks(ranks);
    let mut given: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    let brackets = match v.get("brackets") {
        None => Vec::new(),
        Some(b) => array(b, "brackets")?.clone(),
    };
    for b in &brackets {
        let a = label_of(field(b, "left")?, &spec, "left")?;
        let c = label_of(field(b, "right")?, &spec, "right")?;
        let mut out = Vec::new();
        for t in array(field(b, "result")?, "result")? {
            out.push((label_of(field(t, "basis")?, &spec, "basis")?, rational_from_json(field(t, "coeff")?)?));
        }
        if given.insert((a, c), out).is_some() {
            return bad(format!("bracket {} {} given twice", spec.label(a), spec.label(c)));
        }
    }
    for ((a, c), out) in &given {
        if given.contains_key(&(*c, *a)) || a == c {
            spec.set_raw(*a, *c, out.clone());
        } else {
            spec.set_bracket(*a, *c, out.clone());
        }
    }
    Ok(spec)
}

pub fn spec_to_json(spec: &LieAlgebraSpec) -> Value {
    let n = spec.dim();
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let v = spec.bracket_basis(a, b);
            if v.is_empty() {
                continue;
            }
            let result: Vec<Value> =
                v.iter().map(|(k, c)| json!({"basis": label_json(spec, *k), "coeff": rational_json(c)})).collect();
            brackets.push(json!({"left": label_json(spec, a), "right": label_json(spec, b), "result": result}));
        }
    }
    json!({"class": spec.class(), "ranks": spec.ranks(), "brackets": brackets})
}

/// Content hash: SHA-256 of the compact canonical encoding.
pub fn spec_hash(spec: &LieAlgebraSpec) -> String {
    sha256_hex(serde_json::to_string(&spec_to_json(spec)).expect("Value always serializes").as_bytes())
}

pub fn coords_json(c: &[Rational]) -> Value {
    Value::Array(c.iter().map(rational_json).collect())
}

pub fn element_from_json(group: &Group, v: &Value) -> Result<GroupElement, IoError> {
    let coords = array(field(v, "coords")?, "coords")?
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    group.element(coords).map_err(|e| IoError::Format(e.to_string()))
}

pub fn element_to_json(g: &GroupElement) -> Value {
    json!({"coords": coords_json(g.coords())})
}

fn terms_json(p: &MultiPoly) -> Value {
    Value::Array(p.terms().map(|(m, c)| json!({"exps": m.exps(), "coeff": rational_json(c)})).collect())
}

fn terms_from_json(v: &Value, nvars: usize) -> Result<Vec<(Vec<u32>, Rational)>, IoError> {
    let mut out = Vec::new();
    for t in array(field(v, "terms")?, "terms")? {
        let exps = array(field(t, "exps")?, "exps")?
            .iter()
            .map(|e| usize_of(e, "exps").map(|x| x as u32))
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != nvars {
            return bad(format!("exponent vector of length {} for {nvars} coordinates", exps.len()));
        }
        out.push((exps, rational_from_json(field(t, "coeff")?)?));
    }
    Ok(out)
}

/// Reads a polynomial map on `group`. The `"group"` hash, when present, must
/// match the group's spec.
pub fn polymap_from_json(group: &Group, v: &Value) -> Result<PolyMap, IoError> {
    if let Some(h) = v.get("group") {
        if h.as_str() != Some(spec_hash(group.spec()).as_str()) {
            return bad("polynomial map belongs to a different group (hash mismatch)");
        }
    }
    let terms = terms_from_json(v, group.dim())?;
    let body = MultiPoly::from_terms(group.coord_vars(), terms).map_err(|e| IoError::Format(e.to_string()))?;
    PolyMap::new(group, body).map_err(|e| IoError::Format(e.to_string()))
}

pub fn polymap_to_json(p: &PolyMap) -> Value {
    json!({"group": spec_hash(p.group().spec()), "terms": terms_json(p.body())})
}

/// Terms split into left and right exponent vectors.
pub fn tensor_to_json(t: &TensorPolyMap) -> Value {
    let n = t.left().dim();
    let terms: Vec<Value> = t
        .body()
        .terms()
        .map(|(m, c)| json!({"left": &m.exps()[..n], "right": &m.exps()[n..], "coeff": rational_json(c)}))
        .collect();
    json!({"left_group": spec_hash(t.left().spec()), "right_group": spec_hash(t.right().spec()), "terms": terms})
}

pub fn hom_to_json(phi: &GroupHom) -> Value {
    json!({
        "source": spec_hash(phi.source().spec()),
        "target": spec_hash(phi.target().spec()),
        "generator_images": phi.generator_images().iter().map(|g| coords_json(g.coords())).collect::<Vec<_>>(),
    })
}

/// Reads `{"generator_images": [[..], ..]}` between the given groups.
pub fn hom_from_json(source: &Group, target: &Group, v: &Value) -> Result<GroupHom, IoError> {
    let images = array(field(v, "generator_images")?, "generator_images")?
        .iter()
        .map(|c| element_from_json(target, &json!({"coords": c})))
        .collect::<Result<Vec<_>, _>>()?;
    GroupHom::new(source, target, images).map_err(|e| IoError::Format(e.to_string()))
}

/// A morphism file: `Ψ : Pol_D(source) → Pol(target)` given by the images
/// of the coordinate functions, extended multiplicatively, optionally with
/// explicit overrides for individual basis monomials.
///
/// `{"source": spec, "target": spec, "degree": D,
///   "zeta_images": [polymap, ..], "overrides": [{"exps": [..], "image": polymap}]}`
pub fn morphism_from_json(v: &Value) -> Result<AlgebraMorphism, IoError> {
    let source = group_of(field(v, "source")?)?;
    let target = group_of(field(v, "target")?)?;
    let degree = usize_of(field(v, "degree")?, "degree")? as u32;
    let zeta = array(field(v, "zeta_images")?, "zeta_images")?
        .iter()
        .map(|p| polymap_from_json(&target, p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut psi = AlgebraMorphism::from_zeta_images(&source, &target, degree, zeta)
        .map_err(|e| IoError::Format(e.to_string()))?;
    if let Some(o) = v.get("overrides") {
        for item in array(o, "overrides")? {
            let exps = array(field(item, "exps")?, "exps")?
                .iter()
                .map(|e| usize_of(e, "exps").map(|x| x as u32))
                .collect::<Result<Vec<_>, _>>()?;
            let image = polymap_from_json(&target, field(item, "image")?)?;
            psi = psi.with_image(&exps, image).map_err(|e| IoError::Format(e.to_string()))?;
        }
    }
    Ok(psi)
}

pub fn morphism_to_json(psi: &AlgebraMorphism) -> Value {
    let zeta: Vec<Value> = (0..psi.source().dim())
        .map(|a| {
            let mut e = vec![0u32; psi.source().dim()];
            e[a] = 1;
            match psi.image_of(&e) {
                Some(p) => polymap_to_json(p),
                None => polymap_to_json(&PolyMap::zero(psi.target())),
            }
        })
        .collect();
    json!({
        "source": spec_to_json(psi.source().spec()),
        "target": spec_to_json(psi.target().spec()),
        "degree": psi.degree(),
        "zeta_images": zeta,
    })
}

fn group_of(v: &Value) -> Result<Group, IoError> {
    Group::new(spec_from_json(v)?).map_err(|e| IoError::Format(e.to_string()))
}

/// Sorted-key object from pairs; convenience for report building.
pub fn object<I: IntoIterator<Item = (String, Value)>>(pairs: I) -> Value {
    Value::Object(pairs.into_iter().collect::<Map<String, Value>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::rat;
    use crate::lie::validate;

    #[test]
    fn spec_roundtrip_is_lossless() {
        for spec in [corpus::heisenberg(), corpus::unitriangular(4), corpus::free(2, 3), corpus::abelian(3)] {
            let v = spec_to_json(&spec);
            let back = spec_from_json(&v).unwrap();
            assert_eq!(back, spec);
            assert_eq!(canonical(&spec_to_json(&back)), canonical(&v));
            assert_eq!(spec_hash(&back), spec_hash(&spec));
        }
    }

    #[test]
    fn heisenberg_file() {
        let text = r#"{"class": 2, "ranks": [2, 1],
            "brackets": [{"left": [1,1], "right": [1,2], "result": [{"basis": [2,1], "coeff": "1"}]}]}"#;
        let spec = spec_from_json(&parse_json(text).unwrap()).unwrap();
        assert_eq!(spec, corpus::heisenberg());
        assert!(validate(&spec).all_passed());
    }

    #[test]
    fn both_orders_kept_as_given() {
        let text = r#"{"class": 2, "ranks": [2, 1], "brackets": [
            {"left": [1,1], "right": [1,2], "result": [{"basis": [2,1], "coeff": "1"}]},
            {"left": [1,2], "right": [1,1], "result": [{"basis": [2,1], "coeff": "1"}]}]}"#;
        let spec = spec_from_json(&parse_json(text).unwrap()).unwrap();
        let r = validate(&spec);
        assert!(!r.antisymmetry.passed);
    }

    #[test]
    fn input_errors() {
        assert!(matches!(parse_json("{"), Err(IoError::Json(_))));
        for text in [
            r#"{"ranks": [2]}"#,
            r#"{"class": 2, "ranks": [2]}"#,
            r#"{"class": 1, "ranks": [2], "brackets": [{"left": [1,3], "right": [1,1], "result": []}]}"#,
            r#"{"class": 1, "ranks": [2], "brackets": [{"left": [1,1], "right": [1,2], "result": [{"basis": [1,1], "coeff": "1/0"}]}]}"#,
        ] {
            assert!(matches!(spec_from_json(&parse_json(text).unwrap()), Err(IoError::Format(_))), "{text}");
        }
    }

    #[test]
    fn polymap_and_element_roundtrip() {
        let g = Group::new(corpus::heisenberg()).unwrap();
        let p = PolyMap::zeta_at(&g, 2).scale(&rat(-3, 2)).add(&PolyMap::one(&g)).unwrap();
        let v = polymap_to_json(&p);
        assert_eq!(polymap_from_json(&g, &v).unwrap(), p);
        let e = g.element(vec![rat(1, 2), rat(0, 1), rat(-7, 1)]).unwrap();
        assert_eq!(element_from_json(&g, &element_to_json(&e)).unwrap(), e);
        let other = Group::new(corpus::abelian(3)).unwrap();
        assert!(polymap_from_json(&other, &v).is_err());
    }

    #[test]
    fn morphism_roundtrip() {
        let g = Group::new(corpus::heisenberg()).unwrap();
        let psi = AlgebraMorphism::identity(&g, 2);
        let back = morphism_from_json(&morphism_to_json(&psi)).unwrap();
        assert_eq!(back, psi);
    }

    #[test]
    fn hom_roundtrip() {
        let g = Group::new(corpus::heisenberg()).unwrap();
        let phi = GroupHom::identity(&g);
        let v = hom_to_json(&phi);
        assert_eq!(hom_from_json(&g, &g, &v).unwrap().generator_images(), phi.generator_images());
    }
}
