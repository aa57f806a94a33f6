//! The reduced free group `RF(m)`.
//!
//! Elements are compared through their faithful expansion
//! `x_i -> 1 + X_i` into [`ReducedPolynomial`].

mod commutator;
mod expr;
mod graded;
mod poly;
mod rewrite;

pub use commutator::{nice_product, ElementaryCommutator};
pub use expr::{
    invert_word, reduce_word, write_word, Generator, GroupExpr, GroupModel, Letter, WordDisplay,
};
pub use graded::{canonical_word, decompose_graded, decompose_graded_poly, lie_polynomial};
pub use poly::{Monomial, ReducedPolynomial, MAX_RANK};
pub use rewrite::{
    rewrite_delta_form, rewrite_generators_commutators, DeltaForm, RewrittenForm, Side,
};

pub(crate) use poly::check_index;

use alloc::vec::Vec;

use crate::Result;

/// Expression over `RF(m)` generators.
pub type RfExpr = GroupExpr<u8>;
/// Letter over `RF(m)` generators.
pub type RfLetter = Letter<u8>;
/// Word over `RF(m)` generators.
pub type RfWord = Vec<RfLetter>;

/// Evaluates expressions to expansions in rank `m`.
#[derive(Clone, Copy, Debug)]
pub struct Expansion {
    pub rank: usize,
}

impl GroupModel<u8> for Expansion {
    type Value = ReducedPolynomial;

    fn identity(&mut self) -> Result<ReducedPolynomial> {
        ReducedPolynomial::one(self.rank)
    }

    fn generator_power(&mut self, g: u8, e: i64) -> Result<ReducedPolynomial> {
        check_index(g as usize, self.rank)?;
        let one = ReducedPolynomial::one(self.rank)?;
        let gen = ReducedPolynomial::from_terms(self.rank, [(alloc::vec![g], e)])?;
        Ok(&one + &gen)
    }

    fn mul(&mut self, a: &ReducedPolynomial, b: &ReducedPolynomial) -> Result<ReducedPolynomial> {
        a.try_mul(b)
    }

    fn inverse(&mut self, a: &ReducedPolynomial) -> Result<ReducedPolynomial> {
        a.inverse()
    }

    fn pow(&mut self, a: &ReducedPolynomial, e: i64) -> Result<ReducedPolynomial> {
        a.pow(e)
    }
}

/// Expansion of an expression in rank `m`.
pub fn expand(e: &RfExpr, m: usize) -> Result<ReducedPolynomial> {
    e.evaluate(&mut Expansion { rank: m })
}

/// Expansion of a letter sequence in rank `m`.
pub fn expand_word(word: &[RfLetter], m: usize) -> Result<ReducedPolynomial> {
    let mut p = ReducedPolynomial::one(m)?;
    for l in word {
        check_index(l.gen as usize, m)?;
        p = p.mul_letter(l.gen, l.sign as i32);
    }
    Ok(p)
}

/// Equality in `RF(m)`.
pub fn rf_equal(a: &RfExpr, b: &RfExpr, m: usize) -> Result<bool> {
    Ok(expand(a, m)? == expand(b, m)?)
}

/// Largest `p` with the element in the `p`-th lower central subgroup;
/// `m + 1` for the identity.
pub fn lcs_weight(w: &RfExpr, m: usize) -> Result<usize> {
    Ok(poly_weight(&expand(w, m)?))
}

/// [`lcs_weight`] read off an expansion.
pub fn poly_weight(p: &ReducedPolynomial) -> usize {
    p.lowest_degree().unwrap_or(p.rank() + 1)
}
