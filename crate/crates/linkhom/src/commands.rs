//! One function per subcommand; each returns the text to print.

use linkhom_core::extremal::{
    degree_bound_witness, min_k_subgraph_weight, phi4_formula, phi4_witness, total_weight,
    SearchStatus,
};
use linkhom_core::hlink::{h4_normalize, maximal_four, maximal_sublinks_expr, triple_expr, HExpr};
use linkhom_core::nh::{
    h4_from_milnor, lambda, maximal_excess, ndelta_bounds, nh_bounds, nh_exact_3, nh_exact_4,
    nh_row_4, q_count, BoundReport, SRC_EXACT_3,
};
use linkhom_core::rf::expand;
use linkhom_core::synthesis::{synthesize_crossings, synthesize_delta, verify_moves, MoveSequence};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::element::{
    bound_json, graph_dot, graph_json, milnor_json, normal_form_json, num, read_element,
    read_moves, Element,
};
use crate::parse::{format_hlink, parse_rf};
use crate::search::{solve, Budget};
use crate::{CliError, Output, EXIT_BUDGET};

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// The expansion of an `RF(m)` expression.
pub fn expand_cmd(text: &str, m: usize) -> Result<Output, CliError> {
    let e = parse_rf(text.trim(), m)?;
    Ok(Output::ok(expand(&e, m)?.to_string()))
}

/// Four-strand normal form exponents.
pub fn normalize4(text: &str, n: Option<usize>) -> Result<Output, CliError> {
    let el = read_element(text, n.or(Some(4)))?;
    if el.n() != 4 {
        return Err(CliError::Domain(format!(
            "normal forms need 4 strands, got {}",
            el.n()
        )));
    }
    let nf = match &el {
        Element::Tuple(t, _) => h4_normalize(t)?,
        Element::Invariants(v) => h4_from_milnor(v)?,
    };
    Ok(Output::ok(pretty(&normal_form_json(&nf))))
}

fn exact_report(value: BigInt, source: &'static str) -> BoundReport {
    BoundReport {
        lower: value.clone(),
        upper: Some(value.clone()),
        exact: Some(value),
        lower_source: source,
        upper_source: source,
    }
}

/// Exact trivializing number when known, bounds otherwise.
pub fn nh(text: &str, n: Option<usize>) -> Result<Output, CliError> {
    let el = read_element(text, n)?;
    let v = el.milnor();
    let mut out = json!({ "n": el.n() });
    let report = match el.n() {
        3 => exact_report(nh_exact_3(&v)?, SRC_EXACT_3),
        4 => {
            let nf = h4_from_milnor(&v)?;
            let value = nh_exact_4(&nf);
            out["normal_form"] = normal_form_json(&nf);
            out["maximal"] = json!(maximal_excess(&nf));
            if let Some((row, _)) = nh_row_4(&nf) {
                out["row"] = json!(format!("{:?}", row));
            }
            exact_report(value, linkhom_core::nh::SRC_EXACT_4)
        }
        _ => nh_bounds(&el.tuple()?)?,
    };
    out["nh"] = report.exact.as_ref().map(num).unwrap_or(Value::Null);
    out["bounds"] = bound_json(&report);
    Ok(Output::ok(pretty(&out)))
}

/// Bounds on both trivializing numbers, with their sources.
pub fn bounds(text: &str, n: Option<usize>) -> Result<Output, CliError> {
    let el = read_element(text, n)?;
    let v = el.milnor();
    let crossing = nh_bounds(&el.tuple()?)?;
    let out = json!({
        "n": el.n(),
        "invariants": milnor_json(&v),
        "nh": bound_json(&crossing),
        "ndelta": bound_json(&ndelta_bounds(&v)),
    });
    Ok(Output::ok(pretty(&out)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MoveKind {
    Crossing,
    Delta,
}

/// An explicit move sequence, checked against the target.
pub fn synthesize(text: &str, n: Option<usize>, kind: MoveKind) -> Result<Output, CliError> {
    let t = read_element(text, n)?.tuple()?;
    let v = t.milnor();
    let (seq, bound): (MoveSequence, Option<BigInt>) = match kind {
        MoveKind::Crossing => {
            let seq = synthesize_crossings(&t)?;
            (seq, Some(lambda(&v) + 2 * q_count(&v, t.n())))
        }
        MoveKind::Delta => {
            let seq = synthesize_delta(&t)?;
            (seq, ndelta_bounds(&v).upper)
        }
    };
    let verified = verify_moves(&t, &seq);
    let mut out = crate::element::sequence_json(&seq, bound.as_ref(), verified);
    out["kind"] = json!(match kind {
        MoveKind::Crossing => "crossing",
        MoveKind::Delta => "delta",
    });
    Ok(Output {
        text: pretty(&out),
        code: if verified { 0 } else { 1 },
    })
}

/// Checks a stored move sequence against a target element.
pub fn verify(text: &str, n: Option<usize>, sequence: &str) -> Result<Output, CliError> {
    let t = read_element(text, n)?.tuple()?;
    let moves = read_moves(sequence, t.n())?;
    let seq = MoveSequence {
        target: t.clone(),
        moves,
    };
    let verified = verify_moves(&t, &seq);
    Ok(Output {
        text: pretty(&json!({ "verified": verified, "length": seq.len() })),
        code: if verified { 0 } else { 1 },
    })
}

/// `φ(n, k, w)` with witness.
pub fn phi(n: usize, k: usize, w: u64, budget: Budget, threads: usize) -> Result<Output, CliError> {
    let solved = solve(n, k, w, budget, threads)?;
    let r = &solved.result;
    let status = match r.status {
        SearchStatus::ProvenOptimal => "proven_optimal",
        SearchStatus::BudgetExhausted => "budget_exhausted",
    };
    let out = json!({
        "n": n,
        "k": k,
        "w": w,
        "value": r.value,
        "lower_bound": r.lower_bound,
        "status": status,
        "nodes": solved.nodes,
        "witness": graph_json(&r.witness),
    });
    Ok(Output {
        text: pretty(&out),
        code: if r.status == SearchStatus::ProvenOptimal {
            0
        } else {
            EXIT_BUDGET
        },
    })
}

/// The explicit member of `Φ(n, 4, 3)` of weight `⌈n(n−2)/3⌉`.
pub fn witness(n: usize, dot: bool) -> Result<Output, CliError> {
    let g = phi4_witness(n)?;
    if dot {
        return Ok(Output::ok(graph_dot(&g).trim_end().to_string()));
    }
    let mut out = graph_json(&g);
    out["total_weight"] = json!(total_weight(&g));
    out["formula"] = json!(phi4_formula(n)?);
    out["min_4_subgraph_weight"] = json!(min_k_subgraph_weight(&g, 4)?);
    if n >= 5 {
        let v = degree_bound_witness(&g)?;
        out["high_degree_vertex"] = json!({ "vertex": v + 1, "degree": g.degree(v) });
    }
    Ok(Output::ok(pretty(&out)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// The Borromean string link.
    Borromean,
    /// Four strands, unlinked, needing six crossing changes.
    MaximalFour,
    /// Every four-strand sublink is the maximal four-strand element.
    MaximalSublinks,
}

/// A named element as an input object for the other commands.
pub fn examples(family: Family, n: Option<usize>) -> Result<Output, CliError> {
    let (size, e): (usize, HExpr) = match family {
        Family::Borromean => (n.unwrap_or(3), triple_expr(1, 2, 3)),
        Family::MaximalFour => (n.unwrap_or(4), maximal_four().to_expr()),
        Family::MaximalSublinks => {
            let size = n.unwrap_or(5);
            (size, maximal_sublinks_expr(size)?)
        }
    };
    let min = match family {
        Family::Borromean => 3,
        _ => 4,
    };
    if size < min || size > linkhom_core::rf::MAX_RANK {
        return Err(CliError::Domain(format!(
            "this family needs {} <= n <= {}",
            min,
            linkhom_core::rf::MAX_RANK
        )));
    }
    Ok(Output::ok(pretty(
        &json!({ "n": size, "expr": format_hlink(&e, size) }),
    )))
}
