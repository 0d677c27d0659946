//! JSON formats for diagrams, chains, algebras, tensors and Hochschild chains.
//!
//! Integers that fit in `i64` are written as JSON numbers and larger ones as
//! decimal strings; rationals that are not integers are strings `"p/q"`.
//! Parsers accept either form. Error locations are JSON pointers.
//!
//! Diagram: `{"signature":{"n_loops","m_in","n_white","m_out"},"valences":[..],
//! "blocks":[{"points":[["slot",i,t]|["leaf",l]],"genus":g}],"loops":[{"base":l,"word":[[i,t,±1]]}]}`.
//! Chain: `{"signature":..,"terms":[{"coefficient":k,"diagram":..}]}`.
//! Algebra: `{"name","dim","unit":[..],"counit":[..]|null,"mult":[[i,j,k,c]],"comult":[[i,j,k,c]]}`
//! with `e_i e_j = Σ c e_k` and `Δ(e_i) = Σ c e_j ⊗ e_k`, basis indices from 0.
//! Tensor: `{"arity":n,"terms":[[[i_1,..,i_n],c]]}`.
//! Hochschild chain: `{"parts":[{"profile":{"degrees":[..],"m":m},"value":tensor}]}`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::chain::Chain;
use crate::diagram::{Block, CommDiagram, Loop, LoopedDiagram, Point, Seg, Signature};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusAlgebra;
use crate::hochschild::{HochschildElement, HochschildSum, Profile};
use crate::tensor::{TensorElement, Q};

fn err(at: &str, message: impl Into<String>) -> Error {
    Error::Parse { location: if at.is_empty() { "/".into() } else { at.into() }, message: message.into() }
}

fn field<'a>(v: &'a Value, at: &str, key: &str) -> Result<&'a Value> {
    v.as_object().ok_or_else(|| err(at, "expected an object"))?.get(key).ok_or_else(|| err(at, format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(at, "expected an array"))
}

fn index(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| err(at, "expected a non-negative integer"))
}

fn indices(v: &Value, at: &str) -> Result<Vec<usize>> {
    array(v, at)?.iter().enumerate().map(|(i, x)| index(x, &format!("{at}/{i}"))).collect()
}

pub fn bigint_to_json(k: &BigInt) -> Value {
    match k.to_i64() {
        Some(x) => json!(x),
        None => json!(k.to_string()),
    }
}

pub fn bigint_from_json(v: &Value, at: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| err(at, "expected an integer")),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| err(at, format!("bad integer \"{s}\""))),
        _ => Err(err(at, "expected an integer")),
    }
}

pub fn rational_to_json(c: &Q) -> Value {
    if c.denom().is_one() {
        bigint_to_json(c.numer())
    } else {
        json!(c.to_string())
    }
}

pub fn rational_from_json(v: &Value, at: &str) -> Result<Q> {
    match v {
        Value::String(s) if s.contains('/') => {
            let (p, q) = s.split_once('/').expect("contains a slash");
            let p: BigInt = p.trim().parse().map_err(|_| err(at, format!("bad rational \"{s}\"")))?;
            let q: BigInt = q.trim().parse().map_err(|_| err(at, format!("bad rational \"{s}\"")))?;
            if q.is_zero() {
                return Err(err(at, "zero denominator"));
            }
            Ok(Q::new(p, q))
        }
        _ => bigint_from_json(v, at).map(Q::from_integer),
    }
}

fn read(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

pub fn signature_to_json(s: &Signature) -> Value {
    json!({"n_loops": s.n_loops, "m_in": s.m_in, "n_white": s.n_white, "m_out": s.m_out})
}

pub fn signature_from_json(v: &Value, at: &str) -> Result<Signature> {
    let get = |k: &str| index(field(v, at, k)?, &format!("{at}/{k}"));
    Ok(Signature::new(get("n_loops")?, get("m_in")?, get("n_white")?, get("m_out")?))
}

pub fn diagram_to_json(d: &LoopedDiagram) -> Value {
    let blocks: Vec<Value> = d
        .diagram
        .blocks
        .iter()
        .map(|b| {
            let pts: Vec<Value> = b
                .points
                .iter()
                .map(|p| match *p {
                    Point::Slot(i, t) => json!(["slot", i, t]),
                    Point::Leaf(l) => json!(["leaf", l]),
                })
                .collect();
            json!({"points": pts, "genus": b.genus})
        })
        .collect();
    let loops: Vec<Value> = d
        .loops
        .iter()
        .map(|l| {
            let word: Vec<Value> =
                l.word.iter().map(|s| json!([s.vertex, s.index, if s.positive { 1 } else { -1 }])).collect();
            json!({"base": l.base, "word": word})
        })
        .collect();
    json!({
        "signature": signature_to_json(&d.sig()),
        "valences": d.diagram.valences,
        "blocks": blocks,
        "loops": loops,
    })
}

fn point_from_json(v: &Value, at: &str) -> Result<Point> {
    let a = array(v, at)?;
    match (a.first().and_then(|k| k.as_str()), a.len()) {
        (Some("slot"), 3) => Ok(Point::Slot(index(&a[1], &format!("{at}/1"))?, index(&a[2], &format!("{at}/2"))?)),
        (Some("leaf"), 2) => Ok(Point::Leaf(index(&a[1], &format!("{at}/1"))?)),
        _ => Err(err(at, "expected [\"slot\", i, t] or [\"leaf\", l]")),
    }
}

fn seg_from_json(v: &Value, at: &str) -> Result<Seg> {
    let a = array(v, at)?;
    if a.len() != 3 {
        return Err(err(at, "expected [vertex, segment, ±1]"));
    }
    let (i, t) = (index(&a[0], &format!("{at}/0"))?, index(&a[1], &format!("{at}/1"))?);
    match a[2].as_i64() {
        Some(1) => Ok(Seg::pos(i, t)),
        Some(-1) => Ok(Seg::neg(i, t)),
        _ => Err(err(&format!("{at}/2"), "orientation must be 1 or -1")),
    }
}

/// Parses and validates a looped diagram.
pub fn diagram_from_json(v: &Value, at: &str) -> Result<LoopedDiagram> {
    let sig = signature_from_json(field(v, at, "signature")?, &format!("{at}/signature"))?;
    let valences = indices(field(v, at, "valences")?, &format!("{at}/valences"))?;
    let mut blocks = Vec::new();
    for (b, x) in array(field(v, at, "blocks")?, &format!("{at}/blocks"))?.iter().enumerate() {
        let here = format!("{at}/blocks/{b}");
        let points = array(field(x, &here, "points")?, &format!("{here}/points"))?
            .iter()
            .enumerate()
            .map(|(p, y)| point_from_json(y, &format!("{here}/points/{p}")))
            .collect::<Result<Vec<_>>>()?;
        let genus = index(field(x, &here, "genus")?, &format!("{here}/genus"))?;
        blocks.push(Block::new(points, genus));
    }
    let mut loops = Vec::new();
    for (l, x) in array(field(v, at, "loops")?, &format!("{at}/loops"))?.iter().enumerate() {
        let here = format!("{at}/loops/{l}");
        let base = index(field(x, &here, "base")?, &format!("{here}/base"))?;
        let word = array(field(x, &here, "word")?, &format!("{here}/word"))?
            .iter()
            .enumerate()
            .map(|(w, y)| seg_from_json(y, &format!("{here}/word/{w}")))
            .collect::<Result<Vec<_>>>()?;
        loops.push(Loop::new(base, word));
    }
    if valences.len() != sig.n_white {
        return Err(err(&format!("{at}/valences"), format!("{} valences for {} white vertices", valences.len(), sig.n_white)));
    }
    let diagram = CommDiagram::new(sig, valences, blocks);
    // Point checks come before partition checks so that a bad index is reported as such.
    for b in &diagram.blocks {
        for p in &b.points {
            if let Point::Slot(i, t) = *p {
                if i == 0 || i > sig.n_white || t == 0 || t > diagram.valences[i - 1] {
                    return Err(err(&format!("{at}/blocks"), format!("slot ({i}, {t}) does not exist")));
                }
            }
        }
    }
    for (l, lp) in loops.iter().enumerate() {
        for (w, s) in lp.word.iter().enumerate() {
            if s.vertex == 0 || s.vertex > sig.n_white || s.index == 0 || s.index > diagram.valences[s.vertex - 1] {
                return Err(err(
                    &format!("{at}/loops/{l}/word/{w}"),
                    format!("segment ({}, {}) does not exist", s.vertex, s.index),
                ));
            }
        }
    }
    LoopedDiagram::new(diagram, loops)
}

pub fn chain_to_json(sig: Signature, c: &Chain) -> Value {
    let terms: Vec<Value> =
        c.iter().map(|(d, k)| json!({"coefficient": bigint_to_json(k), "diagram": diagram_to_json(d)})).collect();
    json!({"signature": signature_to_json(&sig), "terms": terms})
}

pub fn chain_from_json(v: &Value, at: &str) -> Result<(Signature, Chain)> {
    let sig = signature_from_json(field(v, at, "signature")?, &format!("{at}/signature"))?;
    let mut c = Chain::zero();
    for (i, t) in array(field(v, at, "terms")?, &format!("{at}/terms"))?.iter().enumerate() {
        let here = format!("{at}/terms/{i}");
        let k = bigint_from_json(field(t, &here, "coefficient")?, &format!("{here}/coefficient"))?;
        let d = diagram_from_json(field(t, &here, "diagram")?, &format!("{here}/diagram"))?;
        if d.sig() != sig {
            return Err(err(&format!("{here}/diagram/signature"), "term signature differs from the chain signature"));
        }
        c.add_term(d, k);
    }
    Ok((sig, c))
}

/// Reads either a chain or a single diagram (as a chain with coefficient 1).
pub fn chain_or_diagram_from_json(v: &Value) -> Result<(Signature, Chain)> {
    if v.get("terms").is_some() {
        chain_from_json(v, "")
    } else {
        let d = diagram_from_json(v, "")?;
        Ok((d.sig(), Chain::from_diagram(d)))
    }
}

pub fn algebra_to_json(a: &FrobeniusAlgebra) -> Value {
    let mut mult = Vec::new();
    for (i, row) in a.mult.iter().enumerate() {
        for (j, entries) in row.iter().enumerate() {
            for (k, c) in entries {
                mult.push(json!([i, j, k, rational_to_json(c)]));
            }
        }
    }
    let mut comult = Vec::new();
    for (i, entries) in a.comult.iter().enumerate() {
        for (j, k, c) in entries {
            comult.push(json!([i, j, k, rational_to_json(c)]));
        }
    }
    let vector = |v: &[Q]| Value::Array(v.iter().map(rational_to_json).collect());
    json!({
        "name": a.name,
        "dim": a.dim,
        "unit": vector(&a.unit),
        "counit": a.counit.as_deref().map_or(Value::Null, vector),
        "mult": mult,
        "comult": comult,
    })
}

fn vector_from_json(v: &Value, at: &str, dim: usize) -> Result<Vec<Q>> {
    let a = array(v, at)?;
    if a.len() != dim {
        return Err(err(at, format!("expected {dim} entries, found {}", a.len())));
    }
    a.iter().enumerate().map(|(i, x)| rational_from_json(x, &format!("{at}/{i}"))).collect()
}

fn quadruples(v: &Value, at: &str, dim: usize) -> Result<Vec<(usize, usize, usize, Q)>> {
    let mut out = Vec::new();
    for (n, x) in array(v, at)?.iter().enumerate() {
        let here = format!("{at}/{n}");
        let a = array(x, &here)?;
        if a.len() != 4 {
            return Err(err(&here, "expected [i, j, k, c]"));
        }
        let i = index(&a[0], &format!("{here}/0"))?;
        let j = index(&a[1], &format!("{here}/1"))?;
        let k = index(&a[2], &format!("{here}/2"))?;
        if i >= dim || j >= dim || k >= dim {
            return Err(err(&here, format!("basis index out of range for dimension {dim}")));
        }
        out.push((i, j, k, rational_from_json(&a[3], &format!("{here}/3"))?));
    }
    Ok(out)
}

pub fn algebra_from_json(v: &Value, at: &str) -> Result<FrobeniusAlgebra> {
    let name = field(v, at, "name")?.as_str().ok_or_else(|| err(&format!("{at}/name"), "expected a string"))?.to_string();
    let dim = index(field(v, at, "dim")?, &format!("{at}/dim"))?;
    let unit = vector_from_json(field(v, at, "unit")?, &format!("{at}/unit"), dim)?;
    let counit = match v.get("counit") {
        None | Some(Value::Null) => None,
        Some(c) => Some(vector_from_json(c, &format!("{at}/counit"), dim)?),
    };
    let mut mult: Vec<Vec<Vec<(usize, Q)>>> = vec![vec![Vec::new(); dim]; dim];
    for (i, j, k, c) in quadruples(field(v, at, "mult")?, &format!("{at}/mult"), dim)? {
        if !c.is_zero() {
            mult[i][j].push((k, c));
        }
    }
    let mut comult: Vec<Vec<(usize, usize, Q)>> = vec![Vec::new(); dim];
    for (i, j, k, c) in quadruples(field(v, at, "comult")?, &format!("{at}/comult"), dim)? {
        if !c.is_zero() {
            comult[i].push((j, k, c));
        }
    }
    for row in &mut mult {
        for e in row.iter_mut() {
            e.sort();
        }
    }
    for e in &mut comult {
        e.sort();
    }
    Ok(FrobeniusAlgebra { name, dim, mult, unit, comult, counit })
}

pub fn tensor_to_json(t: &TensorElement) -> Value {
    let terms: Vec<Value> = t.terms.iter().map(|(idx, c)| json!([idx, rational_to_json(c)])).collect();
    json!({"arity": t.arity, "terms": terms})
}

pub fn tensor_from_json(v: &Value, at: &str) -> Result<TensorElement> {
    let arity = index(field(v, at, "arity")?, &format!("{at}/arity"))?;
    let mut t = TensorElement::zero(arity);
    for (n, x) in array(field(v, at, "terms")?, &format!("{at}/terms"))?.iter().enumerate() {
        let here = format!("{at}/terms/{n}");
        let a = array(x, &here)?;
        if a.len() != 2 {
            return Err(err(&here, "expected [indices, coefficient]"));
        }
        let idx = indices(&a[0], &format!("{here}/0"))?;
        if idx.len() != arity {
            return Err(err(&format!("{here}/0"), format!("expected {arity} indices, found {}", idx.len())));
        }
        t.add_term(idx, rational_from_json(&a[1], &format!("{here}/1"))?);
    }
    Ok(t)
}

pub fn profile_to_json(p: &Profile) -> Value {
    json!({"degrees": p.degrees, "m": p.m})
}

pub fn profile_from_json(v: &Value, at: &str) -> Result<Profile> {
    Ok(Profile::new(indices(field(v, at, "degrees")?, &format!("{at}/degrees"))?, index(field(v, at, "m")?, &format!("{at}/m"))?))
}

/// Parses the command-line form `j1,j2,…/m`, e.g. `2,1/0` or `/1`.
pub fn parse_profile(s: &str) -> Result<Profile> {
    let bad = || err("--profile", format!("expected j1,j2,…/m, found \"{s}\""));
    let (js, m) = s.split_once('/').ok_or_else(bad)?;
    let degrees = if js.trim().is_empty() {
        Vec::new()
    } else {
        js.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
    };
    Ok(Profile::new(degrees, m.trim().parse().map_err(|_| bad())?))
}

pub fn hochschild_to_json(s: &HochschildSum) -> Value {
    let parts: Vec<Value> =
        s.elements().map(|h| json!({"profile": profile_to_json(&h.profile), "value": tensor_to_json(&h.value)})).collect();
    json!({"parts": parts})
}

pub fn hochschild_from_json(v: &Value, at: &str) -> Result<HochschildSum> {
    let mut out = HochschildSum::default();
    for (n, x) in array(field(v, at, "parts")?, &format!("{at}/parts"))?.iter().enumerate() {
        let here = format!("{at}/parts/{n}");
        let p = profile_from_json(field(x, &here, "profile")?, &format!("{here}/profile"))?;
        let t = tensor_from_json(field(x, &here, "value")?, &format!("{here}/value"))?;
        let h = HochschildElement::new(p, t).map_err(|e| err(&here, e.to_string()))?;
        out.add(&h.profile, &h.value, &Q::one());
    }
    Ok(out)
}

pub fn parse_diagram(text: &str) -> Result<LoopedDiagram> {
    diagram_from_json(&read(text)?, "")
}

pub fn parse_chain(text: &str) -> Result<(Signature, Chain)> {
    chain_or_diagram_from_json(&read(text)?)
}

pub fn parse_algebra(text: &str) -> Result<FrobeniusAlgebra> {
    algebra_from_json(&read(text)?, "")
}

pub fn parse_tensor(text: &str) -> Result<TensorElement> {
    tensor_from_json(&read(text)?, "")
}

pub fn parse_value(text: &str) -> Result<Value> {
    read(text)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Wraps named fields into one object, for reports.
pub fn object(fields: Vec<(&str, Value)>) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
