//! Constructive rewriting of `RF(m)` elements into generator powers times
//! commutators with generators.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::commutator::nice_factors;
use super::graded::decompose_graded_poly;
use super::{expand, nice_product, ReducedPolynomial, RfExpr, RfWord};
use crate::Result;

/// Which way round a commutator with `x_k` is written.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `[ω, x_k]`
    Left,
    /// `[x_k, ω]`
    Right,
}

/// `w = x_m^{α_m} .. x_1^{α_1} z_1 .. z_{m-1}` with `z_k` a commutator of
/// `ω_k` and `x_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewrittenForm {
    pub rank: usize,
    /// `alphas[k-1] = α_k`, the exponent sum of `x_k`.
    pub alphas: Vec<BigInt>,
    /// `z[k-1]` describes `z_k` for `k < m`.
    pub z: Vec<(Side, RfWord)>,
}

/// `w = ∏ x_i^{α_i} ∏_{i<j} [x_j,x_i]^{β_ij} ∏ [[ω_ij, x_i], x_j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaForm {
    pub rank: usize,
    pub alphas: Vec<BigInt>,
    /// Keyed by `(i, j)` with `i < j`; the exponent of `[x_j, x_i]`.
    pub betas: BTreeMap<(u8, u8), BigInt>,
    /// Keyed by `(i, j)` with `i != j`, both below `m`.
    pub omegas: BTreeMap<(u8, u8), RfWord>,
}

fn exponent(e: &BigInt) -> i64 {
    e.to_i64().expect("exponent exceeds 64 bits")
}

fn repeat(word: &RfWord, times: usize, out: &mut RfWord) {
    for _ in 0..times {
        out.extend_from_slice(word);
    }
}

impl RewrittenForm {
    /// The product as an expression.
    pub fn reassemble(&self) -> RfExpr {
        let mut items = Vec::new();
        for k in (1..=self.rank).rev() {
            let a = &self.alphas[k - 1];
            if !a.is_zero() {
                items.push(RfExpr::Gen(k as u8, exponent(a)));
            }
        }
        for (k, (side, omega)) in self.z.iter().enumerate() {
            if let Some(c) = self.z_expr(k + 1, *side, omega) {
                items.push(c);
            }
        }
        RfExpr::Product(items)
    }

    fn z_expr(&self, k: usize, side: Side, omega: &RfWord) -> Option<RfExpr> {
        if omega.is_empty() {
            return None;
        }
        let w = RfExpr::from_word(omega);
        let x = RfExpr::gen(k as u8);
        Some(match side {
            Side::Left => RfExpr::commutator(w, x),
            Side::Right => RfExpr::commutator(x, w),
        })
    }

    /// `z_k` as an expression (the identity when `ω_k` is empty).
    pub fn z_k(&self, k: usize) -> RfExpr {
        let (side, omega) = &self.z[k - 1];
        self.z_expr(k, *side, omega)
            .unwrap_or(RfExpr::Product(Vec::new()))
    }
}

impl DeltaForm {
    pub fn reassemble(&self) -> RfExpr {
        let mut items = Vec::new();
        for (k, a) in self.alphas.iter().enumerate() {
            if !a.is_zero() {
                items.push(RfExpr::Gen(k as u8 + 1, exponent(a)));
            }
        }
        for (&(i, j), b) in &self.betas {
            if !b.is_zero() {
                items.push(RfExpr::power(
                    RfExpr::commutator(RfExpr::gen(j), RfExpr::gen(i)),
                    exponent(b),
                ));
            }
        }
        for (&(i, j), w) in &self.omegas {
            if !w.is_empty() {
                items.push(Self::omega_factor(i, j, w));
            }
        }
        RfExpr::Product(items)
    }

    /// `[[ω, x_i], x_j]`.
    pub fn omega_factor(i: u8, j: u8, omega: &RfWord) -> RfExpr {
        RfExpr::commutator(
            RfExpr::commutator(RfExpr::from_word(omega), RfExpr::gen(i)),
            RfExpr::gen(j),
        )
    }
}

fn degree_one(target: &ReducedPolynomial, m: usize) -> Vec<BigInt> {
    (1..=m as u8).map(|k| target.coeff_of(&[k])).collect()
}

/// Rewrites `w` as generator powers followed by one commutator with each of
/// `x_1 .. x_{m-1}`; the side is left when `α_k ≤ 0`, right otherwise.
pub fn rewrite_generators_commutators(w: &RfExpr, m: usize) -> Result<RewrittenForm> {
    let target = expand(w, m)?;
    let alphas = degree_one(&target, m);
    let z = (1..m)
        .map(|k| {
            let side = if alphas[k - 1].is_positive() {
                Side::Right
            } else {
                Side::Left
            };
            (side, Vec::new())
        })
        .collect();
    let mut form = RewrittenForm { rank: m, alphas, z };
    for _ in 0..=m {
        let current = expand(&form.reassemble(), m)?;
        let rem = &current.inverse()? * &target;
        let Some(d) = rem.lowest_degree() else {
            return Ok(form);
        };
        assert!(d >= 2, "abelianization mismatch");
        for (c, e) in decompose_graded_poly(&rem, d)? {
            let base = if e.is_negative() { c.inverse() } else { c };
            let times = e.abs().to_usize().expect("coefficient fits in memory");
            for (dd, k) in nice_product(&base, m)? {
                let (side, omega) = &mut form.z[k as usize - 1];
                let piece = match side {
                    // [ω d, x] ~ [ω, x][d, x]
                    Side::Left => dd.to_word(),
                    // [d, x] = [x, d]^-1 ~ [x, d^-1]
                    Side::Right => dd.inverse().to_word(),
                };
                repeat(&piece, times, omega);
            }
        }
    }
    assert!(
        expand(&form.reassemble(), m)? == target,
        "rewriting did not converge"
    );
    Ok(form)
}

/// Rewrites `w` as generator powers, commutators `[x_j, x_i]` and double
/// commutators `[[ω_ij, x_i], x_j]` with `i, j < m`.
pub fn rewrite_delta_form(w: &RfExpr, m: usize) -> Result<DeltaForm> {
    let target = expand(w, m)?;
    let mut form = DeltaForm {
        rank: m,
        alphas: degree_one(&target, m),
        betas: BTreeMap::new(),
        omegas: BTreeMap::new(),
    };
    for round in 0..=m + 1 {
        let current = expand(&form.reassemble(), m)?;
        let rem = &current.inverse()? * &target;
        let Some(d) = rem.lowest_degree() else {
            return Ok(form);
        };
        assert!(
            d >= 2 && (round == 0 || d >= 3),
            "rewriting stalled at degree {}",
            d
        );
        for (c, e) in decompose_graded_poly(&rem, d)? {
            if d == 2 {
                let j = c.halves().unwrap().0.as_leaf().unwrap().gen;
                let i = c.halves().unwrap().1.as_leaf().unwrap().gen;
                *form.betas.entry((i, j)).or_default() += e;
                continue;
            }
            let base = if e.is_negative() { c.inverse() } else { c };
            let times = e.abs().to_usize().expect("coefficient fits in memory");
            for (dd, outer) in nice_product(&base, m)? {
                for (e2, inner) in nice_factors(&dd, m as u8) {
                    if inner == outer {
                        continue;
                    }
                    let omega = form.omegas.entry((inner, outer)).or_default();
                    repeat(&e2.to_word(), times, omega);
                }
            }
        }
        form.betas.retain(|_, b| !b.is_zero());
    }
    assert!(
        expand(&form.reassemble(), m)? == target,
        "rewriting did not converge"
    );
    Ok(form)
}
