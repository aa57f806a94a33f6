//! Reading elements of `H(n)` and writing results as JSON.
//!
//! An element is either a bare expression (the component count comes from
//! the command line) or a JSON object with `n` and one of `expr`,
//! `normal_form` (four strands, exponents keyed `"12"` .. `"1324"`) or `mu`
//! (Milnor invariants keyed by index strings such as `"123"` or `"1,2,3"`).

use std::collections::BTreeMap;

use linkhom_core::hlink::{h4_realize, H4NormalForm, HExpr, LongitudeTuple, MilnorVector, H4_KEYS};
use linkhom_core::nh::h4_to_milnor;
use linkhom_core::nh::BoundReport;
use linkhom_core::rf::WordDisplay;
use linkhom_core::synthesis::{CrossingMove, DeltaMove, Move, MoveSequence};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Number, Value};

use crate::parse::{format_hword, parse_hlink, parse_rf};
use crate::CliError;

/// A parsed input.
#[derive(Clone, Debug)]
pub enum Element {
    /// A concrete string link, with the expression it came from if any.
    Tuple(LongitudeTuple, Option<HExpr>),
    /// Only the invariants are known.
    Invariants(MilnorVector),
}

impl Element {
    pub fn n(&self) -> usize {
        match self {
            Element::Tuple(t, _) => t.n(),
            Element::Invariants(v) => v.n,
        }
    }

    pub fn milnor(&self) -> MilnorVector {
        match self {
            Element::Tuple(t, _) => t.milnor(),
            Element::Invariants(v) => v.clone(),
        }
    }

    /// The string link itself; invariants alone identify one only for
    /// four strands.
    pub fn tuple(&self) -> Result<LongitudeTuple, CliError> {
        match self {
            Element::Tuple(t, _) => Ok(t.clone()),
            Element::Invariants(v) if v.n == 4 => {
                Ok(h4_realize(&linkhom_core::nh::h4_from_milnor(v)?)?)
            }
            Element::Invariants(_) => Err(CliError::Domain(
                "this command needs an expression or a four-strand normal form".into(),
            )),
        }
    }
}

/// Exact JSON number for a big integer.
pub fn num(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer"))
}

fn bigint(v: &Value, what: &str) -> Result<BigInt, CliError> {
    let text = match v {
        Value::Number(x) => x.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(CliError::Parse(format!("{} must be an integer", what))),
    };
    text.parse()
        .map_err(|_| CliError::Parse(format!("{} must be an integer, got {}", what, text)))
}

fn index_key(key: &str, n: usize) -> Result<Vec<u8>, CliError> {
    let parts: Vec<usize> = if key.contains(',') {
        key.split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Parse(format!("bad invariant key '{}'", key)))?
    } else if key.chars().all(|c| c.is_ascii_digit()) && n <= 9 {
        key.bytes().map(|b| (b - b'0') as usize).collect()
    } else {
        return Err(CliError::Parse(format!(
            "bad invariant key '{}' (use comma-separated indices when n > 9)",
            key
        )));
    };
    let mut seen = vec![false; n + 1];
    for &i in &parts {
        if i == 0 || i > n || seen[i] {
            return Err(CliError::Parse(format!(
                "invariant key '{}' needs distinct indices in 1..={}",
                key, n
            )));
        }
        seen[i] = true;
    }
    if parts.len() < 2 {
        return Err(CliError::Parse(format!(
            "invariant key '{}' is too short",
            key
        )));
    }
    Ok(parts.into_iter().map(|i| i as u8).collect())
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| CliError::Parse(format!("{} must be a JSON object", what)))
}

pub fn normal_form_from_json(v: &Value) -> Result<H4NormalForm, CliError> {
    let mut nf = H4NormalForm::zero();
    for (key, value) in object(v, "normal_form")? {
        let x = bigint(value, key)?;
        nf.set(key, x)
            .map_err(|_| CliError::Parse(format!("unknown normal form key '{}'", key)))?;
    }
    Ok(nf)
}

pub fn normal_form_json(nf: &H4NormalForm) -> Value {
    let mut m = Map::new();
    for (t, key) in H4_KEYS.iter().enumerate() {
        m.insert(key.to_string(), num(&nf.a[t]));
    }
    Value::Object(m)
}

/// Reads an element; `n` is required for bare expressions and must agree
/// with a JSON `n` when both are given.
pub fn read_element(text: &str, n: Option<usize>) -> Result<Element, CliError> {
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        let n = n.ok_or_else(|| CliError::Parse("--n is required for a bare expression".into()))?;
        let e = parse_hlink(trimmed, n)?;
        return Ok(Element::Tuple(LongitudeTuple::from_expr(&e, n)?, Some(e)));
    }
    let v: Value = serde_json::from_str(trimmed)
        .map_err(|e| CliError::Parse(format!("invalid JSON: {}", e)))?;
    let obj = object(&v, "input")?;
    let size = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Parse("input object needs an integer field 'n'".into()))?
        as usize;
    if let Some(m) = n {
        if m != size {
            return Err(CliError::Parse(format!(
                "--n {} disagrees with n = {} in the input",
                m, size
            )));
        }
    }
    if let Some(expr) = obj.get("expr") {
        let s = expr
            .as_str()
            .ok_or_else(|| CliError::Parse("'expr' must be a string".into()))?;
        let e = parse_hlink(s, size)?;
        return Ok(Element::Tuple(
            LongitudeTuple::from_expr(&e, size)?,
            Some(e),
        ));
    }
    if let Some(nf) = obj.get("normal_form") {
        if size != 4 {
            return Err(CliError::Parse("a normal form needs n = 4".into()));
        }
        let nf = normal_form_from_json(nf)?;
        return Ok(match h4_realize(&nf) {
            Ok(t) => Element::Tuple(t, Some(nf.to_expr())),
            Err(_) => Element::Invariants(h4_to_milnor(&nf)),
        });
    }
    if let Some(mu) = obj.get("mu") {
        let mut vec = MilnorVector::new(size);
        for (key, value) in object(mu, "mu")? {
            vec.set(&index_key(key, size)?, bigint(value, key)?);
        }
        return Ok(Element::Invariants(vec));
    }
    Err(CliError::Parse(
        "input object needs one of 'expr', 'normal_form' or 'mu'".into(),
    ))
}

pub fn bound_json(r: &BoundReport) -> Value {
    json!({
        "lower": num(&r.lower),
        "upper": r.upper.as_ref().map(num),
        "exact": r.exact.as_ref().map(num),
        "lower_source": r.lower_source,
        "upper_source": r.upper_source,
    })
}

/// Serialized form of one move; words use the expression syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MoveJson {
    Crossing {
        pair: [u8; 2],
        sign: i8,
        conjugator: String,
    },
    Delta {
        apex: u8,
        i: u8,
        j: u8,
        sign: i8,
        witness: String,
        conjugator: String,
    },
}

impl MoveJson {
    pub fn from_move(m: &Move, n: usize) -> Self {
        match m {
            Move::Crossing(c) => MoveJson::Crossing {
                pair: [c.pair.0, c.pair.1],
                sign: c.sign,
                conjugator: format_hword(&c.conjugator, n),
            },
            Move::Delta(d) => MoveJson::Delta {
                apex: d.apex,
                i: d.i,
                j: d.j,
                sign: d.sign,
                witness: WordDisplay(&d.witness).to_string(),
                conjugator: format_hword(&d.conjugator, n),
            },
        }
    }

    pub fn to_move(&self, n: usize) -> Result<Move, CliError> {
        let sign_ok = |s: i8| {
            if s == 1 || s == -1 {
                Ok(())
            } else {
                Err(CliError::Parse(format!(
                    "move sign must be 1 or -1, got {}",
                    s
                )))
            }
        };
        match self {
            MoveJson::Crossing {
                pair,
                sign,
                conjugator,
            } => {
                sign_ok(*sign)?;
                Ok(Move::Crossing(CrossingMove {
                    pair: linkhom_core::hlink::Pair::new(pair[0], pair[1], n)?,
                    sign: *sign,
                    conjugator: parse_hlink(conjugator, n)?.to_word(),
                }))
            }
            MoveJson::Delta {
                apex,
                i,
                j,
                sign,
                witness,
                conjugator,
            } => {
                sign_ok(*sign)?;
                let apex_ok = (3..=n).contains(&(*apex as usize));
                if !apex_ok || *i == 0 || *j == 0 || *i >= *apex || *j >= *apex || i == j {
                    return Err(CliError::Parse(format!(
                        "Delta move needs distinct i, j below the apex {} <= {}",
                        apex, n
                    )));
                }
                Ok(Move::Delta(DeltaMove {
                    apex: *apex,
                    i: *i,
                    j: *j,
                    sign: *sign,
                    witness: parse_rf(witness, *apex as usize - 1)?.to_word(),
                    conjugator: parse_hlink(conjugator, n)?.to_word(),
                }))
            }
        }
    }
}

pub fn sequence_json(seq: &MoveSequence, bound: Option<&BigInt>, verified: bool) -> Value {
    let moves: Vec<MoveJson> = seq
        .moves
        .iter()
        .map(|m| MoveJson::from_move(m, seq.target.n()))
        .collect();
    let mut counts = Map::new();
    for (p, c) in seq.pair_counts() {
        counts.insert(format!("{},{}", p.0, p.1), json!(c));
    }
    json!({
        "n": seq.target.n(),
        "length": seq.len(),
        "bound": bound.map(num),
        "verified": verified,
        "pair_counts": counts,
        "moves": moves,
    })
}

/// Reads the `moves` array written by [`sequence_json`].
pub fn read_moves(text: &str, n: usize) -> Result<Vec<Move>, CliError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {}", e)))?;
    let list = match &v {
        Value::Array(_) => v.clone(),
        Value::Object(o) => o
            .get("moves")
            .cloned()
            .ok_or_else(|| CliError::Parse("sequence object needs a 'moves' array".into()))?,
        _ => {
            return Err(CliError::Parse(
                "expected a move array or sequence object".into(),
            ))
        }
    };
    let parsed: Vec<MoveJson> = serde_json::from_value(list)
        .map_err(|e| CliError::Parse(format!("invalid move: {}", e)))?;
    parsed.iter().map(|m| m.to_move(n)).collect()
}

/// Nonzero weights keyed `"u-v"` with vertices numbered from 1.
pub fn graph_json(g: &linkhom_core::extremal::WeightedGraph) -> Value {
    let mut m = Map::new();
    for (i, j, w) in g.edges() {
        if w > 0 {
            m.insert(format!("{}-{}", i + 1, j + 1), json!(w));
        }
    }
    json!({ "n": g.n(), "weights": m })
}

pub fn graph_dot(g: &linkhom_core::extremal::WeightedGraph) -> String {
    let mut out = String::from("graph witness {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {};\n", v + 1));
    }
    for (i, j, w) in g.edges() {
        if w > 0 {
            out.push_str(&format!(
                "  {} -- {} [label={}, penwidth={}];\n",
                i + 1,
                j + 1,
                w,
                w
            ));
        }
    }
    out.push_str("}\n");
    out
}

/// Linking numbers and triple invariants on increasing indices, keyed by
/// index strings.
pub fn milnor_json(v: &MilnorVector) -> Value {
    let key = |k: &[u8]| {
        let parts: Vec<String> = k.iter().map(|i| i.to_string()).collect();
        parts.join(if v.n <= 9 { "" } else { "," })
    };
    let ordered: BTreeMap<(usize, Vec<u8>), &BigInt> =
        v.mu.iter()
            .filter(|(k, _)| k.len() <= 3 && k.windows(2).all(|p| p[0] < p[1]))
            .map(|(k, x)| ((k.len(), k.clone()), x))
            .collect();
    let mut m = Map::new();
    for ((_, k), x) in ordered {
        m.insert(key(&k), num(x));
    }
    Value::Object(m)
}
