//! Decomposition along the lower central series.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{expand, ElementaryCommutator, Monomial, ReducedPolynomial, RfExpr, RfLetter, RfWord};
use crate::{Error, Result};

/// Degree-`k` leading term of the left-normed commutator `[[x_first, x_{r_1}], ..]`.
pub fn lie_polynomial(first: u8, rest: &[u8], m: usize) -> Result<ReducedPolynomial> {
    let mut l = ReducedPolynomial::from_terms(m, [(alloc::vec![first], 1)])?;
    for &i in rest {
        let right = &l.mul_letter(i, 1) - &l;
        let left = &l.letter_mul(i, 1) - &l;
        l = &right - &left;
    }
    Ok(l)
}

/// Basis coordinates of the degree-`p` layer of a group element's expansion.
///
/// The basis consists of left-normed commutators `[[x_j, x_{i_1}], .., x_{i_{p-1}}]`
/// where `j` is the maximum of a `p`-subset and `(i_1..)` permutes the rest.
/// Requires every positive-degree term of `w` below `p` to vanish.
pub fn decompose_graded_poly(
    w: &ReducedPolynomial,
    p: usize,
) -> Result<Vec<(ElementaryCommutator, BigInt)>> {
    let m = w.rank();
    if p == 0 {
        return Err(Error::InvalidParameter(
            "graded layer must be positive".into(),
        ));
    }
    if let Some(d) = w.lowest_degree() {
        if d < p {
            return Err(Error::WeightTooLow {
                required: p,
                actual: d,
            });
        }
    }
    let layer = w.homogeneous_part(p);
    // group monomials by index set
    let mut blocks: BTreeMap<u16, Vec<(Monomial, BigInt)>> = BTreeMap::new();
    for (mono, c) in layer.terms() {
        blocks
            .entry(mono.mask())
            .or_default()
            .push((*mono, c.clone()));
    }
    let mut out = Vec::new();
    for (mask, terms) in blocks {
        let top = (1..16u8)
            .rev()
            .find(|&i| mask & (1 << i) != 0)
            .expect("nonempty block");
        let mut block_sum = ReducedPolynomial::zero(m)?;
        // the basis element for (top, perm) is the unique one whose leading
        // term contains X_top X_perm; everything else starting with X_top is 0
        for (mono, c) in &terms {
            if mono.get(0) != top {
                continue;
            }
            let rest: Vec<u8> = mono.indices().skip(1).collect();
            let lie = lie_polynomial(top, &rest, m)?;
            block_sum = &block_sum + &lie.scale(c);
            out.push((ElementaryCommutator::left_normed(top, &rest), c.clone()));
        }
        let block = ReducedPolynomial::from_terms(
            m,
            terms.into_iter().map(|(mono, c)| (mono.to_vec(), c)),
        )?;
        assert_eq!(
            block_sum, block,
            "degree-{} block is not spanned by left-normed commutators; input is not a group element",
            p
        );
    }
    Ok(out)
}

/// Basis coordinates of `w` modulo the `(p+1)`-st lower central subgroup,
/// given that `w` lies in the `p`-th.
pub fn decompose_graded(
    w: &RfExpr,
    p: usize,
    m: usize,
) -> Result<Vec<(ElementaryCommutator, BigInt)>> {
    decompose_graded_poly(&expand(w, m)?, p)
}

/// Word for `c^e`.
pub(crate) fn power_word(c: &ElementaryCommutator, e: &BigInt) -> RfWord {
    let base = if e.is_negative() {
        c.inverse().to_word()
    } else {
        c.to_word()
    };
    let k = e.abs().to_usize().expect("exponent fits in memory");
    let mut out = Vec::with_capacity(base.len() * k);
    for _ in 0..k {
        out.extend_from_slice(&base);
    }
    out
}

/// A word whose expansion is `p`, built by peeling one lower central layer at a time.
///
/// `p` must be the expansion of a group element.
pub fn canonical_word(p: &ReducedPolynomial) -> Result<RfWord> {
    if !p.is_unipotent() {
        return Err(Error::NotUnit);
    }
    let m = p.rank();
    let mut word: Vec<RfLetter> = Vec::new();
    let mut current = ReducedPolynomial::one(m)?;
    for _ in 0..=m {
        let rem = &current.inverse()? * p;
        let Some(d) = rem.lowest_degree() else {
            return Ok(word);
        };
        for (c, e) in decompose_graded_poly(&rem, d)? {
            if e.is_zero() {
                continue;
            }
            let piece = power_word(&c, &e);
            for l in &piece {
                current = current.mul_letter(l.gen, l.sign as i32);
            }
            word.extend(piece);
        }
    }
    assert!(current == *p, "layer peeling failed to converge");
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rf::{expand_word, RfExpr};
    use alloc::string::ToString;
    use alloc::vec;

    fn x(i: u8) -> RfExpr {
        RfExpr::gen(i)
    }

    #[test]
    fn already_sorted_product() {
        let w = RfExpr::Product(vec![
            RfExpr::commutator(x(2), x(1)),
            RfExpr::commutator(x(3), x(1)),
        ]);
        let d = decompose_graded(&w, 2, 3).unwrap();
        let got: Vec<_> = d.iter().map(|(c, e)| (c.to_string(), e.clone())).collect();
        assert_eq!(
            got,
            vec![
                ("[x2,x1]".to_string(), BigInt::from(1)),
                ("[x3,x1]".to_string(), BigInt::from(1))
            ]
        );
    }

    #[test]
    fn reversed_commutator_has_negative_coordinate() {
        let d = decompose_graded(&RfExpr::commutator(x(1), x(2)), 2, 2).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0.to_string(), "[x2,x1]");
        assert_eq!(d[0].1, BigInt::from(-1));
    }

    #[test]
    fn identity_decomposes_to_nothing() {
        assert!(decompose_graded(&RfExpr::Product(vec![]), 2, 3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn weight_precondition() {
        assert_eq!(
            decompose_graded(&x(1), 2, 3),
            Err(Error::WeightTooLow {
                required: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn canonical_word_reproduces_expansion() {
        let e = RfExpr::Product(vec![
            RfExpr::Gen(3, 2),
            RfExpr::commutator(x(1), RfExpr::commutator(x(2), x(4))),
            RfExpr::Gen(1, -1),
            x(2),
        ]);
        let p = expand(&e, 4).unwrap();
        let w = canonical_word(&p).unwrap();
        assert_eq!(expand_word(&w, 4).unwrap(), p);
    }
}
