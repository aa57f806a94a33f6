//! Exact homotopy trivializing number of four-strand string links.
//!
//! The value is read off the exponent vector by a table of rows keyed by the
//! linking pattern. Rows assume a normalized pattern, so every relabeling of
//! the strands and every choice of orientations is tried. Images are built
//! in the group itself, by exchanging adjacent strands and by
//! reversing the last strand, and must all agree.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use once_cell::race::OnceBox;

use super::table::{binomials, milnor_table};
use crate::hlink::{
    reverse_last_exponents, swap_exponents, H4NormalForm, A1234, A1324, H4_PAIRS, H4_TRIPLES,
};
use crate::int::{in_ideal_generic, small, Int};

const A12: usize = 0;
const A13: usize = 1;
const A14: usize = 2;
const A23: usize = 3;
const A34: usize = 5;
const A123: usize = 6;
const A124: usize = 7;
const A134: usize = 8;
const A234: usize = 9;

/// Classification rows, named by the linking pattern they cover.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Row {
    ZeroLinking,
    SingleLinkingOne,
    SingleLinkingTwo,
    SingleLinkingLarge,
    DisjointOneOne,
    DisjointTwoOne,
    DisjointTwoTwo,
    DisjointLarge,
    Adjacent,
    PathOrTriangle,
    Star,
}

/// An evaluation of one symmetry image.
#[derive(Clone, Debug)]
pub(crate) struct ImageValue {
    /// Original strand at each position.
    pub sigma: [u8; 4],
    /// Bit `k` set when position `k + 1` is reversed.
    pub mask: u8,
    pub row: Row,
    pub value: BigInt,
}

fn odd<T: Int>(x: &T) -> bool {
    x.is_odd()
}

/// Applies the row covering the linking pattern of `a`, if any.
pub(crate) fn classify<T: Int>(a: &[T; 12]) -> Option<(Row, T)> {
    let lambda = a[..6].iter().fold(T::zero(), |acc, x| acc + x.abs());
    let z = |v: usize| a[v].is_zero();
    let ideal = |x: &T, gens: &[usize]| {
        let g: Vec<T> = gens.iter().map(|&v| a[v].clone()).collect();
        in_ideal_generic(x, &g)
    };
    let sum_top = a[A1234].clone() + a[A1324].clone();
    let triples = [A123, A124, A134, A234];

    if lambda.is_zero() {
        if a.iter().all(|x| x.is_zero()) {
            return Some((Row::ZeroLinking, T::zero()));
        }
        let two = (ideal(&a[A1324], &[A123, A124]) && z(A134) && z(A234))
            || (ideal(&a[A1234], &[A123, A134]) && z(A124) && z(A234))
            || (ideal(&sum_top, &[A124, A134]) && z(A123) && z(A234))
            || (ideal(&sum_top, &[A123, A234]) && z(A124) && z(A134))
            || (ideal(&a[A1234], &[A124, A234]) && z(A123) && z(A134))
            || (ideal(&a[A1324], &[A134, A234]) && z(A123) && z(A124));
        if two {
            return Some((Row::ZeroLinking, small(2)));
        }
        let four = triples.iter().any(|&v| z(v))
            || ideal(&a[A1324], &triples)
            || ideal(&a[A1234], &triples)
            || ideal(&sum_top, &triples);
        return Some((Row::ZeroLinking, small(if four { 4 } else { 6 })));
    }

    // paths and triangles need no normalization of the heaviest pair
    let path = !z(A12) && !z(A23) && !z(A34);
    let triangle = !z(A12) && !z(A13) && !z(A23);
    if path || triangle {
        return Some((Row::PathOrTriangle, lambda));
    }

    let lk12 = &a[A12];
    if !lk12.is_positive() || a[..6].iter().any(|x| x.abs() > *lk12) {
        return None;
    }
    let nonzero: Vec<usize> = (0..6).filter(|&v| !z(v)).collect();
    let plus = |k: i64| lambda.clone() + small(k);

    if nonzero.len() == 1 {
        let a1324 = &a[A1324];
        if lk12.is_one() {
            let shifted = a1324.clone() + a[A123].clone() * a[A124].clone();
            let value = if z(A134) && z(A234) && shifted.is_zero() {
                1
            } else if z(A134) || z(A234) || ideal(&shifted, &[A134, A234]) {
                3
            } else {
                5
            };
            return Some((Row::SingleLinkingOne, small(value)));
        }
        if *lk12 == small(2) {
            let value = if z(A134) && z(A234) && (odd(&a[A123]) || odd(&a[A124]) || !odd(a1324)) {
                2
            } else if z(A134) || z(A234) || triples.iter().any(|&v| odd(&a[v])) || !odd(a1324) {
                4
            } else {
                6
            };
            return Some((Row::SingleLinkingTwo, small(value)));
        }
        let value = if z(A134) && z(A234) { plus(0) } else { plus(2) };
        return Some((Row::SingleLinkingLarge, value));
    }

    let only = |set: &[usize]| nonzero.as_slice() == set;
    if only(&[A12, A34]) {
        let lk34 = a[A34].clone();
        if !lk34.is_positive() {
            return None;
        }
        let one = T::one();
        let two: T = small(2);
        if lk12.is_one() {
            let target = -(a[A123].clone() * a[A124].clone()) - a[A134].clone() * a[A234].clone();
            let value = if a[A1324] == target { 2 } else { 4 };
            return Some((Row::DisjointOneOne, small(value)));
        }
        if *lk12 == two && lk34 == one {
            let parity = a[A1324].clone() + a[A134].clone() * a[A234].clone();
            let value = if !odd(&parity) || odd(&a[A123]) || odd(&a[A124]) {
                3
            } else {
                5
            };
            return Some((Row::DisjointTwoOne, small(value)));
        }
        if *lk12 == two && lk34 == two {
            let low = triples.iter().any(|&v| odd(&a[v])) || !odd(&a[A1324]);
            return Some((Row::DisjointTwoTwo, if low { plus(0) } else { plus(2) }));
        }
        if *lk12 >= small(3) {
            return Some((Row::DisjointLarge, plus(0)));
        }
        return None;
    }
    if only(&[A12, A13]) {
        return Some((Row::Adjacent, if z(A234) { plus(0) } else { plus(2) }));
    }
    if only(&[A12, A13, A14]) {
        return Some((Row::Star, if z(A234) { plus(0) } else { plus(2) }));
    }
    None
}

/// Normal-form exponents with the given invariants, `mu` in table order.
///
/// Pairs are read directly; each triple and top exponent is its own
/// invariant corrected by the contribution of the lower layers.
pub(crate) fn normal_form_from_mu(mu: &[BigInt]) -> [BigInt; 12] {
    let table = milnor_table();
    let get = |key: &[u8]| mu[table.index(key).expect("key")].clone();
    let mut a: [BigInt; 12] = Default::default();
    for (v, &(i, j)) in H4_PAIRS.iter().enumerate() {
        a[v] = get(&[i, j]);
    }
    let pairs = binomials(&a);
    for (s, &(i, j, k)) in H4_TRIPLES.iter().enumerate() {
        let t = table.index(&[i, j, k]).expect("key");
        a[6 + s] = table.eval(t, &pairs) - get(&[i, j, k]);
    }
    let bin = binomials(&a);
    let top = |key: &[u8]| get(key) - table.eval(table.index(key).expect("key"), &bin);
    a[A1234] = top(&[1, 2, 3, 4]);
    a[A1324] = top(&[1, 3, 2, 4]);
    a
}

/// Symmetry state: position `k` holds original strand `comps[k]`, reversed
/// when bit `k` of `mask` is set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct State {
    comps: [u8; 4],
    mask: u8,
}

/// One step of the traversal: the image at `parent` followed by `op`
/// (a swap at position `op + 1`, or `3` for reversing the last strand).
struct Step {
    parent: usize,
    op: usize,
    state: State,
}

static PLAN: OnceBox<Vec<Step>> = OnceBox::new();

/// Breadth-first order of all 384 states from the identity.
fn plan() -> &'static [Step] {
    PLAN.get_or_init(|| {
        let start = State {
            comps: [1, 2, 3, 4],
            mask: 0,
        };
        let mut steps = alloc::vec![Step {
            parent: 0,
            op: usize::MAX,
            state: start,
        }];
        let mut next = 0;
        while next < steps.len() {
            let state = steps[next].state;
            for op in 0..4 {
                let mut s = state;
                if op < 3 {
                    s.comps.swap(op, op + 1);
                    let (b0, b1) = ((s.mask >> op) & 1, (s.mask >> (op + 1)) & 1);
                    s.mask = (s.mask & !(0b11 << op)) | (b1 << op) | (b0 << (op + 1));
                } else {
                    s.mask ^= 0b1000;
                }
                if !steps.iter().any(|t| t.state == s) {
                    steps.push(Step {
                        parent: next,
                        op,
                        state: s,
                    });
                }
            }
            next += 1;
        }
        debug_assert_eq!(steps.len(), 384);
        Box::new(steps)
    })
}

fn images_of<T: Int>(a: &[T; 12]) -> Vec<[T; 12]> {
    let mut out: Vec<[T; 12]> = Vec::with_capacity(384);
    for step in plan() {
        let img = match step.op {
            usize::MAX => a.clone(),
            3 => reverse_last_exponents(&out[step.parent]),
            op => swap_exponents(&out[step.parent], op + 1),
        };
        out.push(img);
    }
    out
}

/// Every relabeling and reorientation of `nf`, reached by adjacent swaps and
/// reversals of the last strand.
#[cfg(test)]
pub(crate) fn geometric_images(nf: &H4NormalForm) -> Vec<([u8; 4], u8, H4NormalForm)> {
    plan()
        .iter()
        .zip(images_of(&nf.a))
        .map(|(step, a)| (step.state.comps, step.state.mask, H4NormalForm { a }))
        .collect()
}

fn evaluate_generic<T: Int>(a: &[T; 12], to_big: impl Fn(T) -> BigInt) -> Vec<ImageValue> {
    plan()
        .iter()
        .zip(images_of(a))
        .filter_map(|(step, img)| {
            classify(&img).map(|(row, value)| ImageValue {
                sigma: step.state.comps,
                mask: step.state.mask,
                row,
                value: to_big(value),
            })
        })
        .collect()
}

/// Evaluates every symmetry image covered by a row.
pub(crate) fn evaluate_images(nf: &H4NormalForm) -> Vec<ImageValue> {
    let bound = BigInt::from(1i64 << 16);
    let narrow: Option<[i128; 12]> =
        nf.a.iter()
            .all(|x| x.abs() < bound)
            .then(|| core::array::from_fn(|s| nf.a[s].to_i128().expect("bounded")));
    match narrow {
        Some(a) => evaluate_generic(&a, BigInt::from),
        None => evaluate_generic(&nf.a, |x| x),
    }
}

/// Homotopy trivializing number of the closure of a four-strand normal form.
///
/// # Panics
///
/// Panics if two symmetry images are classified differently.
pub fn nh_exact_4(nf: &H4NormalForm) -> BigInt {
    let values = evaluate_images(nf);
    let first = values
        .first()
        .expect("some symmetry image is covered by a row");
    for v in &values {
        assert!(
            v.value == first.value,
            "symmetry images disagree for {:?}: {:?} gives {} but {:?} gives {}",
            nf.a,
            (first.sigma, first.mask, first.row),
            first.value,
            (v.sigma, v.mask, v.row),
            v.value
        );
    }
    let lambda: BigInt = nf.a[..6].iter().map(|x| x.abs()).sum();
    let excess = &first.value - lambda;
    assert!(
        !excess.is_negative() && excess <= BigInt::from(6) && excess.is_even(),
        "excess {} for {:?}",
        excess,
        nf.a
    );
    first.value.clone()
}

/// The row and value used for the identity image, when it is covered.
pub fn nh_row_4(nf: &H4NormalForm) -> Option<(Row, BigInt)> {
    classify(&nf.a)
}

/// True iff the excess `n_h − Λ` is maximal (6): linking vanishes, every
/// triple exponent is nonzero, and none of `a1234`, `a1324`, `a1234 + a1324`
/// lies in the ideal of the triple exponents.
pub fn maximal_excess(nf: &H4NormalForm) -> bool {
    let a = &nf.a;
    let triples = &a[A123..=A234];
    let sum = &a[A1234] + &a[A1324];
    a[..6].iter().all(|x| x.is_zero())
        && triples.iter().all(|x| !x.is_zero())
        && !in_ideal_generic(&a[A1234], triples)
        && !in_ideal_generic(&a[A1324], triples)
        && !in_ideal_generic(&sum, triples)
}

/// Shortcut rules stated without the full tables. Returns the predicted
/// value when one of them applies; `strong_disjoint` marks the rule
/// "`|lk12| ≥ 2` and `lk34 ≠ 0` gives `Λ`", which the full tables contradict
/// for `(2,1)` and `(2,2)` patterns.
pub fn shortcut_prediction(nf: &H4NormalForm) -> Option<(BigInt, bool)> {
    let a = &nf.a;
    let lambda: BigInt = a[..6].iter().map(|x| x.abs()).sum();
    let nz = |v: usize| !a[v].is_zero();
    if maximal_excess(nf) {
        return Some((lambda + 6, false));
    }
    let nonzero = (0..6).filter(|&v| nz(v)).count();
    if (nz(A12) && nz(A23) && nz(A34)) || nonzero >= 4 {
        return Some((lambda, false));
    }
    if a[A12].abs() >= BigInt::from(2) && nz(A34) {
        return Some((lambda, true));
    }
    None
}
