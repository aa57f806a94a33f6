//! Explicit crossing-change and Delta-move sequences.
//!
//! A sequence represents its target as a product of conjugates
//! `W⁻¹ D W`, one per move, where `D` is a clasp `x_{ij}^{±1}` for a crossing
//! change or `φ_N([r x_i r⁻¹, x_j])^{±1}` for a Delta move. Removing one
//! factor from such a product is realized by one move, so the length of a
//! verified sequence bounds the trivializing number.
//!
//! Targets are split as `T = φ(S) · s(T')` with `T'` the first `n − 1`
//! strands; `S ∈ RF(n−1)` is rewritten into generator powers and
//! commutators, and `T'` is handled recursively.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::hlink::{phi_word, HLetter, HWord, LongitudeTuple, Pair};
use crate::rf::{
    canonical_word, invert_word, reduce_word, rewrite_delta_form, rewrite_generators_commutators,
    ReducedPolynomial, RfExpr, RfLetter, RfWord, Side,
};
use crate::{Error, Result};

/// One crossing change between strands `pair.0` and `pair.1`, removing the
/// factor `W⁻¹ x_pair^sign W`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossingMove {
    pub pair: Pair,
    pub sign: i8,
    pub conjugator: HWord,
}

/// One Delta move, removing `W⁻¹ φ_apex([r x_i r⁻¹, x_j])^sign W`, where
/// `φ_apex` sends `x_k` to `x_{k,apex}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaMove {
    pub apex: u8,
    pub i: u8,
    pub j: u8,
    pub sign: i8,
    /// `r`, a word in `x_1 .. x_{apex-1}`.
    pub witness: RfWord,
    pub conjugator: HWord,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Move {
    Crossing(CrossingMove),
    Delta(DeltaMove),
}

impl Move {
    /// The unconjugated factor `D`.
    pub fn core_word(&self) -> HWord {
        match self {
            Move::Crossing(c) => alloc::vec![HLetter::new(c.pair, c.sign)],
            Move::Delta(d) => {
                let mut a = d.witness.clone();
                a.push(RfLetter::new(d.i, 1));
                a.extend(invert_word(&d.witness));
                let xj = RfLetter::new(d.j, 1);
                // [a, x_j] = a⁻¹ x_j⁻¹ a x_j
                let mut c = invert_word(&a);
                c.push(xj.inverse());
                c.extend_from_slice(&a);
                c.push(xj);
                if d.sign < 0 {
                    c = invert_word(&c);
                }
                phi_word(&reduce_word(&c), d.apex as usize)
            }
        }
    }

    pub fn conjugator(&self) -> &HWord {
        match self {
            Move::Crossing(c) => &c.conjugator,
            Move::Delta(d) => &d.conjugator,
        }
    }

    fn conjugator_mut(&mut self) -> &mut HWord {
        match self {
            Move::Crossing(c) => &mut c.conjugator,
            Move::Delta(d) => &mut d.conjugator,
        }
    }

    /// `W⁻¹ D W` as a word.
    pub fn factor_word(&self) -> HWord {
        let w = self.conjugator();
        let mut out = invert_word(w);
        out.extend(self.core_word());
        out.extend_from_slice(w);
        reduce_word(&out)
    }

    /// Replaces `W` by `W · v`.
    fn conjugate_by(&mut self, v: &[HLetter]) {
        let w = self.conjugator_mut();
        w.extend_from_slice(v);
        *w = reduce_word(w);
    }

    /// Ordering key: the strands involved, smallest first.
    pub fn strands(&self) -> (u8, u8, u8) {
        match self {
            Move::Crossing(c) => (c.pair.0, c.pair.1, 0),
            Move::Delta(d) => {
                let mut s = [d.i, d.j, d.apex];
                s.sort_unstable();
                (s[0], s[1], s[2])
            }
        }
    }
}

/// Moves whose stacked factors equal `target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveSequence {
    pub target: LongitudeTuple,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Number of crossing changes between each pair of strands.
    pub fn pair_counts(&self) -> BTreeMap<Pair, usize> {
        let mut out = BTreeMap::new();
        for m in &self.moves {
            if let Move::Crossing(c) = m {
                *out.entry(c.pair).or_insert(0) += 1;
            }
        }
        out
    }
}

fn crossing(pair: Pair, sign: i8, conjugator: HWord) -> Move {
    Move::Crossing(CrossingMove {
        pair,
        sign,
        conjugator,
    })
}

fn small(e: &BigInt) -> Result<i64> {
    e.to_i64()
        .ok_or_else(|| Error::InvalidParameter(alloc::format!("exponent {} too large", e)))
}

/// The element `S ∈ RF(n−1)` with `φ(S) = p`, for `p` in the kernel of
/// deleting strand `n`.
///
/// The last longitude of `φ(S)` is the image of `S` under
/// `x_i ↦ u_i⁻¹ x_i u_i`, `u_i = x_{i+1} .. x_{n−1}`; this map is undone
/// on the expansion before a word is read off.
pub fn phi_preimage(p: &LongitudeTuple) -> Result<RfWord> {
    let n = p.n();
    if n < 2 {
        return Ok(Vec::new());
    }
    let m = n - 1;
    // v_i = V_i x_i V_i⁻¹ with V_i = v_{i+1} .. v_m
    let mut images = alloc::vec![ReducedPolynomial::zero(m)?; m];
    let mut tail = ReducedPolynomial::one(m)?;
    for i in (1..=m).rev() {
        let v = &tail.mul_letter(i as u8, 1) * &tail.inverse()?;
        tail = &v * &tail;
        images[i - 1] = &v - &ReducedPolynomial::one(m)?;
    }
    let last = p.longitude(n).with_rank(m)?;
    let s = last.substitute(&images)?;
    let word = canonical_word(&s)?;
    debug_assert!(crate::hlink::phi(&word, n)? == *p);
    Ok(word)
}

/// Splits `t` as `φ(S) · s(t')`, returning `φ(S)` and `t'`.
fn split_last(t: &LongitudeTuple) -> Result<(LongitudeTuple, LongitudeTuple)> {
    let rest = t.delete_component(t.n())?;
    let lifted = rest.add_trivial()?;
    Ok((t.stack(&lifted.invert()?)?, rest))
}

fn commutator_word(a: &[HLetter], b: &[HLetter]) -> HWord {
    let mut out = invert_word(a);
    out.extend(invert_word(b));
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    reduce_word(&out)
}

/// Crossing changes for `φ(S)`: `|α_k|` moves per strand `k`, plus two when
/// `α_k = 0` and the commutator `z_k` is nontrivial.
fn phi_block_crossings(p: &LongitudeTuple) -> Result<Vec<Move>> {
    let n = p.n();
    let m = n - 1;
    let s = phi_preimage(p)?;
    let form = rewrite_generators_commutators(&RfExpr::from_word(&s), m)?;
    let mut acc: Vec<Move> = Vec::new();
    for k in 1..=m {
        let alpha = small(&form.alphas[k - 1])?;
        let x = Pair(k as u8, n as u8);
        let xw = [HLetter::new(x, 1)];
        let (side, omega) = match form.z.get(k - 1) {
            Some((side, omega)) => (*side, phi_word(omega, n)),
            None => (Side::Left, Vec::new()),
        };
        let sign = if alpha < 0 { -1 } else { 1 };
        let mut block = Vec::new();
        let z = if omega.is_empty() {
            block.extend((0..alpha.unsigned_abs()).map(|_| crossing(x, sign, Vec::new())));
            Vec::new()
        } else {
            if alpha == 0 {
                // [ω, x] = (ω⁻¹ x⁻¹ ω) · x
                block.push(crossing(x, -1, omega.clone()));
                block.push(crossing(x, 1, Vec::new()));
            } else {
                // x^α [x, ω] = x^{α−1} ω⁻¹ x ω and x^α [ω, x] = x^{α+1} ω⁻¹ x⁻¹ ω
                debug_assert_eq!(side == Side::Right, alpha > 0);
                let plain = alpha.unsigned_abs() - 1;
                block.extend((0..plain).map(|_| crossing(x, sign, Vec::new())));
                block.push(crossing(x, sign, omega.clone()));
            }
            match side {
                Side::Left => commutator_word(&omega, &xw),
                Side::Right => commutator_word(&xw, &omega),
            }
        };
        // P_k · B · z_k = (P_k z_k) · z_k⁻¹ B z_k
        for mv in &mut acc {
            mv.conjugate_by(&z);
        }
        block.append(&mut acc);
        acc = block;
    }
    Ok(acc)
}

/// Crossing changes undoing `t`, at most `Λ + 2Q` of them for the given
/// strand order.
pub fn synthesize_crossings(t: &LongitudeTuple) -> Result<MoveSequence> {
    let mut moves = Vec::new();
    let mut current = t.clone();
    while current.n() > 1 {
        let (p, rest) = split_last(&current)?;
        moves.extend(phi_block_crossings(&p)?);
        current = rest;
    }
    Ok(MoveSequence {
        target: t.clone(),
        moves,
    })
}

/// Two crossing changes for `t = [W, x_g]`: `(W⁻¹ x_g⁻¹ W) · x_g`.
pub fn commutator_moves(t: &LongitudeTuple, w: &[HLetter], g: Pair) -> MoveSequence {
    MoveSequence {
        target: t.clone(),
        moves: alloc::vec![crossing(g, -1, reduce_word(w)), crossing(g, 1, Vec::new())],
    }
}

fn delta(apex: usize, i: u8, j: u8, sign: i8, witness: RfWord, conjugator: HWord) -> Move {
    Move::Delta(DeltaMove {
        apex: apex as u8,
        i,
        j,
        sign,
        witness,
        conjugator,
    })
}

/// Delta moves for an unlinked `φ(S)`: `|β|` per central commutator power
/// and two per double commutator.
fn phi_block_delta(p: &LongitudeTuple) -> Result<Vec<Move>> {
    let n = p.n();
    let m = n - 1;
    let s = phi_preimage(p)?;
    let form = rewrite_delta_form(&RfExpr::from_word(&s), m)?;
    debug_assert!(form.alphas.iter().all(|a| a.is_zero()));
    let mut out = Vec::new();
    for (&(i, j), beta) in &form.betas {
        // [x_j, x_i]^β
        let sign = if beta.is_negative() { -1 } else { 1 };
        for _ in 0..small(beta)?.unsigned_abs() {
            out.push(delta(n, j, i, sign, Vec::new(), Vec::new()));
        }
    }
    for (&(i, j), omega) in &form.omegas {
        if omega.is_empty() {
            continue;
        }
        // [[ω, x_i], x_j] = x_i⁻¹ a [a, x_j]⁻¹ a⁻¹ x_i · [x_i, x_j], a = ω⁻¹ x_i ω
        let r = invert_word(omega);
        let mut a = r.clone();
        a.push(RfLetter::new(i, 1));
        a.extend_from_slice(omega);
        let mut w = invert_word(&a);
        w.push(RfLetter::new(i, 1));
        out.push(delta(n, i, j, -1, r, phi_word(&reduce_word(&w), n)));
        out.push(delta(n, i, j, 1, Vec::new(), Vec::new()));
    }
    Ok(out)
}

/// Delta moves undoing an unlinked `t`, at most
/// `Λ₃ + (2/3)(n−1)(n−2)(n−3)` of them.
pub fn synthesize_delta(t: &LongitudeTuple) -> Result<MoveSequence> {
    let n = t.n();
    for i in 1..=n {
        for j in i + 1..=n {
            if !t.linking(i, j).is_zero() {
                return Err(Error::NonzeroLinking);
            }
        }
    }
    let mut moves = Vec::new();
    let mut current = t.clone();
    while current.n() > 2 {
        let (p, rest) = split_last(&current)?;
        moves.extend(phi_block_delta(&p)?);
        current = rest;
    }
    Ok(MoveSequence {
        target: t.clone(),
        moves,
    })
}

/// `W⁻¹ D W` as a tuple on `n` strands.
pub fn move_element(m: &Move, n: usize) -> Result<LongitudeTuple> {
    let w = LongitudeTuple::from_word(m.conjugator(), n)?;
    let d = LongitudeTuple::from_word(&m.core_word(), n)?;
    w.invert()?.stack(&d)?.stack(&w)
}

/// Stacked product of the factors of `moves`.
pub fn moves_product(moves: &[Move], n: usize) -> Result<LongitudeTuple> {
    let mut acc = LongitudeTuple::trivial(n)?;
    for m in moves {
        acc = acc.stack(&move_element(m, n)?)?;
    }
    Ok(acc)
}

/// True iff the factors of `seq` multiply to `t`.
pub fn verify_moves(t: &LongitudeTuple, seq: &MoveSequence) -> bool {
    moves_product(&seq.moves, t.n()).is_ok_and(|p| p == *t)
}

/// Exchanges the moves at `position` and `position + 1`; the move pushed
/// right is conjugated by the other's factor so the product is unchanged.
pub fn reorder_moves(seq: &MoveSequence, position: usize) -> Result<MoveSequence> {
    if position + 1 >= seq.moves.len() {
        return Err(Error::BadPosition {
            position,
            len: seq.moves.len(),
        });
    }
    let mut out = seq.clone();
    let next = out.moves[position + 1].clone();
    let mut moved = out.moves[position].clone();
    moved.conjugate_by(&next.factor_word());
    out.moves[position] = next;
    out.moves[position + 1] = moved;
    Ok(out)
}

/// Sorts by [`Move::strands`] using adjacent exchanges.
pub fn sort_moves(seq: &MoveSequence) -> Result<MoveSequence> {
    let mut out = seq.clone();
    let len = out.moves.len();
    for pass in 0..len {
        for p in 0..len.saturating_sub(pass + 1) {
            if out.moves[p].strands() > out.moves[p + 1].strands() {
                out = reorder_moves(&out, p)?;
            }
        }
    }
    Ok(out)
}
