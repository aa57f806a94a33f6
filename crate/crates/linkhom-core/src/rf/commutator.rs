//! Elementary commutators and their graded rewriting.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use super::{expand, RfExpr, RfLetter, RfWord};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Node {
    Leaf(RfLetter),
    Bracket(Box<ElementaryCommutator>, Box<ElementaryCommutator>),
}

/// A bracket tree whose leaves are generators or their inverses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementaryCommutator {
    node: Node,
    weight: usize,
    /// Leaf count per generator index.
    multiplicity: [u8; 16],
}

impl ElementaryCommutator {
    /// `x_i^sign` as a weight-1 commutator.
    pub fn leaf(i: u8, sign: i8) -> Self {
        assert!((1..=15).contains(&i), "generator index out of range");
        let mut multiplicity = [0u8; 16];
        multiplicity[i as usize] = 1;
        ElementaryCommutator {
            node: Node::Leaf(RfLetter::new(i, sign)),
            weight: 1,
            multiplicity,
        }
    }

    /// `[a, b]`.
    pub fn bracket(a: ElementaryCommutator, b: ElementaryCommutator) -> Self {
        let mut multiplicity = a.multiplicity;
        for (m, n) in multiplicity.iter_mut().zip(b.multiplicity.iter()) {
            *m = m.saturating_add(*n);
        }
        ElementaryCommutator {
            weight: a.weight + b.weight,
            multiplicity,
            node: Node::Bracket(Box::new(a), Box::new(b)),
        }
    }

    /// Left-normed `[[..[x_{j}, x_{i_1}], ..], x_{i_k}]`.
    pub fn left_normed(first: u8, rest: &[u8]) -> Self {
        rest.iter().fold(Self::leaf(first, 1), |acc, &i| {
            Self::bracket(acc, Self::leaf(i, 1))
        })
    }

    /// Number of leaves.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Number of leaves carrying index `i`.
    pub fn multiplicity(&self, i: u8) -> usize {
        self.multiplicity.get(i as usize).copied().unwrap_or(0) as usize
    }

    pub fn contains(&self, i: u8) -> bool {
        self.multiplicity(i) > 0
    }

    /// Largest generator index occurring.
    pub fn max_index(&self) -> u8 {
        (1..16u8).rev().find(|&i| self.contains(i)).unwrap_or(0)
    }

    /// The leaf letter, if this is a weight-1 commutator.
    pub fn as_leaf(&self) -> Option<RfLetter> {
        match &self.node {
            Node::Leaf(l) => Some(*l),
            Node::Bracket(..) => None,
        }
    }

    /// The two halves, if this is a bracket.
    pub fn halves(&self) -> Option<(&ElementaryCommutator, &ElementaryCommutator)> {
        match &self.node {
            Node::Leaf(_) => None,
            Node::Bracket(a, b) => Some((a, b)),
        }
    }

    /// Exact group inverse, again elementary: `[a,b]^-1 = [b,a]`.
    pub fn inverse(&self) -> Self {
        match &self.node {
            Node::Leaf(l) => Self::leaf(l.gen, -l.sign),
            Node::Bracket(a, b) => Self::bracket((**b).clone(), (**a).clone()),
        }
    }

    pub fn to_expr(&self) -> RfExpr {
        match &self.node {
            Node::Leaf(l) => RfExpr::Gen(l.gen, l.sign as i64),
            Node::Bracket(a, b) => RfExpr::commutator(a.to_expr(), b.to_expr()),
        }
    }

    pub fn to_word(&self) -> RfWord {
        self.to_expr().to_word()
    }
}

impl fmt::Display for ElementaryCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Leaf(l) => write!(f, "{}", l),
            Node::Bracket(a, b) => write!(f, "[{},{}]", a, b),
        }
    }
}

/// Rewrites `c` modulo the next lower central term as a product of
/// commutators `[c_j, x_{i_j}]` with every `i_j < m` and `wt(c_j) = wt(c) - 1`.
///
/// Fails for weight below 2 and for commutators that are trivial in `RF(m)`.
pub fn nice_product(c: &ElementaryCommutator, m: usize) -> Result<Vec<(ElementaryCommutator, u8)>> {
    if c.weight() < 2 {
        return Err(Error::WeightBelowTwo);
    }
    if c.max_index() as usize > m {
        return Err(Error::IndexOutOfRange {
            index: c.max_index() as usize,
            rank: m,
        });
    }
    let full = expand(&c.to_expr(), m)?;
    if full.is_one() {
        return Err(Error::TrivialCommutator(m));
    }
    let factors = nice_factors(c, m as u8);
    let product = RfExpr::Product(
        factors
            .iter()
            .map(|(d, i)| RfExpr::commutator(d.to_expr(), RfExpr::gen(*i)))
            .collect(),
    );
    let w = c.weight();
    let lhs = full.homogeneous_part(w);
    let rhs = expand(&product, m)?;
    assert!(
        rhs.lowest_degree().is_none_or(|d| d >= w) && rhs.homogeneous_part(w) == lhs,
        "graded rewriting of {} disagrees with its source",
        c
    );
    Ok(factors)
}

/// Same rewriting without validation; trivial inputs may yield any product
/// that is trivial modulo the next lower central term.
pub(crate) fn nice_factors(c: &ElementaryCommutator, m: u8) -> Vec<(ElementaryCommutator, u8)> {
    let Some((a, b)) = c.halves() else {
        return Vec::new();
    };
    if a.contains(m) && b.contains(m) {
        return Vec::new();
    }
    if a.contains(m) {
        // [a,b] = [b,a]^-1, congruent to [b^-1, a]
        let mut out = Vec::new();
        factors_with_clean_left(&b.inverse(), a, &mut out);
        out
    } else {
        let mut out = Vec::new();
        factors_with_clean_left(a, b, &mut out);
        out
    }
}

/// Factors of `[a, b]` where `x_m` does not occur in `a`; induction on `wt(a)`.
fn factors_with_clean_left(
    a: &ElementaryCommutator,
    b: &ElementaryCommutator,
    out: &mut Vec<(ElementaryCommutator, u8)>,
) {
    match (a.as_leaf(), a.halves()) {
        (Some(l), _) => {
            if l.sign > 0 {
                out.push((b.inverse(), l.gen));
            } else {
                out.push((b.clone(), l.gen));
            }
        }
        (None, Some((alpha, beta))) => {
            let mut inner = Vec::new();
            factors_with_clean_left(alpha, beta, &mut inner);
            for (aj, ij) in inner {
                // [[a_j, x], b] = [[b, x], a_j] [[a_j, b], x] and [[b,x],a_j] ~ [a_j^-1, [b,x]]
                let bx =
                    ElementaryCommutator::bracket(b.clone(), ElementaryCommutator::leaf(ij, 1));
                factors_with_clean_left(&aj.inverse(), &bx, out);
                out.push((ElementaryCommutator::bracket(aj, b.clone()), ij));
            }
        }
        (None, None) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rf::expand;
    use alloc::string::ToString;

    type Ec = ElementaryCommutator;

    fn product_expr(f: &[(Ec, u8)]) -> RfExpr {
        RfExpr::Product(
            f.iter()
                .map(|(d, i)| RfExpr::commutator(d.to_expr(), RfExpr::gen(*i)))
                .collect(),
        )
    }

    #[test]
    fn weight_and_multiplicity() {
        let c = Ec::bracket(Ec::left_normed(3, &[1]), Ec::leaf(1, -1));
        assert_eq!(c.weight(), 3);
        assert_eq!(c.multiplicity(1), 2);
        assert_eq!(c.multiplicity(3), 1);
        assert!(!c.contains(2));
        assert_eq!(c.to_string(), "[[x3,x1],x1^-1]");
    }

    #[test]
    fn inverse_is_exact() {
        let c = Ec::bracket(Ec::left_normed(2, &[1]), Ec::leaf(3, -1));
        let prod = RfExpr::Product(alloc::vec![c.to_expr(), c.inverse().to_expr()]);
        assert!(expand(&prod, 3).unwrap().is_one());
    }

    #[test]
    fn weight_two_with_top_generator() {
        let c = Ec::left_normed(1, &[4]);
        let f = nice_product(&c, 4).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.to_string(), "x4^-1");
        assert_eq!(f[0].1, 1);
    }

    #[test]
    fn weight_three_example() {
        let c = Ec::left_normed(1, &[2, 3]);
        let f = nice_product(&c, 3).unwrap();
        assert!(f.iter().all(|(d, i)| *i < 3 && d.weight() == 2));
        let lhs = expand(&c.to_expr(), 3).unwrap();
        let rhs = expand(&product_expr(&f), 3).unwrap();
        assert_eq!(lhs.homogeneous_part(3), rhs.homogeneous_part(3));
        // agrees with the product [[x3,x2],x1][[x1,x3],x2]
        let reference = RfExpr::Product(alloc::vec![
            Ec::left_normed(3, &[2, 1]).to_expr(),
            Ec::left_normed(1, &[3, 2]).to_expr(),
        ]);
        assert_eq!(expand(&reference, 3).unwrap(), lhs);
    }

    #[test]
    fn commutators_without_the_top_generator_terminate() {
        let c = Ec::left_normed(1, &[2, 3]);
        let f = nice_product(&c, 5).unwrap();
        assert!(f.iter().all(|(_, i)| *i < 5));
    }

    #[test]
    fn rejects_trivial_and_light_inputs() {
        let heavy = Ec::left_normed(1, &[2, 3, 1]);
        assert_eq!(nice_product(&heavy, 3), Err(Error::TrivialCommutator(3)));
        assert_eq!(nice_product(&Ec::leaf(1, 1), 3), Err(Error::WeightBelowTwo));
        let both = Ec::bracket(Ec::left_normed(3, &[1]), Ec::left_normed(3, &[2]));
        assert_eq!(nice_product(&both, 3), Err(Error::TrivialCommutator(3)));
    }
}
