//! Named example elements of `H(n)`.

use alloc::vec::Vec;

use super::h4::H4NormalForm;
use super::tuple::{HExpr, LongitudeTuple, Pair};
use crate::{Error, Result};

fn x(i: u8, j: u8) -> HExpr {
    HExpr::gen(Pair(i, j))
}

/// `x_{ijk} = [x_{ik}, x_{ij}]` for `i < j < k`.
pub fn triple_expr(i: u8, j: u8, k: u8) -> HExpr {
    HExpr::commutator(x(i, k), x(i, j))
}

/// `x_{ijkl} = [[x_{il}, x_{ik}], x_{ij}]`, with `j` and `k` in either order.
pub fn quadruple_expr(i: u8, j: u8, k: u8, l: u8) -> HExpr {
    HExpr::commutator(HExpr::commutator(x(i, l), x(i, k)), x(i, j))
}

/// The Borromean string link `x_123`.
pub fn borromean() -> LongitudeTuple {
    LongitudeTuple::from_expr(&triple_expr(1, 2, 3), 3).expect("three strands")
}

/// A four-strand normal form with vanishing linking and the largest
/// possible excess: all triples 3, both top exponents 1.
pub fn maximal_four() -> H4NormalForm {
    H4NormalForm::from_i64([0, 0, 0, 0, 0, 0, 3, 3, 3, 3, 1, 1])
}

/// `∏ x_{ijk}^3 · ∏ x_{ijkl} · ∏ x_{ikjl}` over all increasing indices:
/// unlinked, and every four-strand sublink is a copy of [`maximal_four`].
pub fn maximal_sublinks(n: usize) -> Result<LongitudeTuple> {
    LongitudeTuple::from_expr(&maximal_sublinks_expr(n)?, n)
}

/// The expression evaluated by [`maximal_sublinks`].
pub fn maximal_sublinks_expr(n: usize) -> Result<HExpr> {
    if !(4..=crate::rf::MAX_RANK).contains(&n) {
        return Err(Error::InvalidParameter(alloc::format!(
            "need 4 <= n <= {}, got {}",
            crate::rf::MAX_RANK,
            n
        )));
    }
    let n8 = n as u8;
    let mut items = Vec::new();
    for i in 1..=n8 {
        for j in i + 1..=n8 {
            for k in j + 1..=n8 {
                items.push(HExpr::power(triple_expr(i, j, k), 3));
            }
        }
    }
    let mut quads = Vec::new();
    for i in 1..=n8 {
        for j in i + 1..=n8 {
            for k in j + 1..=n8 {
                for l in k + 1..=n8 {
                    quads.push((i, j, k, l));
                }
            }
        }
    }
    items.extend(quads.iter().map(|&(i, j, k, l)| quadruple_expr(i, j, k, l)));
    items.extend(quads.iter().map(|&(i, j, k, l)| quadruple_expr(i, k, j, l)));
    Ok(HExpr::Product(items))
}
